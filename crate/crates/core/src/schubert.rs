//! Classical Schubert calculus on Gr(s, r).
//!
//! Partitions use the codimension convention: the subset `J` of `[r]` maps to
//! `lambda_k = r - s + k - J_k`, so `|lambda| = s(r - s) - dim(J)`.

use std::collections::BTreeMap;
use std::fmt;

use num::{BigInt, Zero};

use crate::{Error, Result};

/// A size-`s` subset of `{1, ..., r}`, stored increasing and 1-based.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SchubertIndex {
    r: usize,
    set: Vec<usize>,
}

impl SchubertIndex {
    pub fn new(r: usize, set: Vec<usize>) -> Result<Self> {
        let s = set.len();
        if s == 0 || s >= r {
            return Err(Error::InvalidIndex(format!("need 1 <= s <= r-1, got s={s}, r={r}")));
        }
        if set[0] < 1 || set[s - 1] > r || set.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidIndex(format!("{set:?} is not strictly increasing in [1, {r}]")));
        }
        Ok(SchubertIndex { r, set })
    }

    /// The first `s` elements `{1, ..., s}`.
    pub fn initial(s: usize, r: usize) -> Result<Self> {
        Self::new(r, (1..=s).collect())
    }

    /// All size-`s` subsets of `[r]` in lexicographic order.
    pub fn all(s: usize, r: usize) -> Vec<SchubertIndex> {
        let mut out = Vec::new();
        if s == 0 || s >= r {
            return out;
        }
        let mut cur: Vec<usize> = (1..=s).collect();
        loop {
            out.push(SchubertIndex { r, set: cur.clone() });
            let mut k = s;
            while k > 0 && cur[k - 1] == r - s + k {
                k -= 1;
            }
            if k == 0 {
                return out;
            }
            cur[k - 1] += 1;
            for m in k..s {
                cur[m] = cur[m - 1] + 1;
            }
        }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.set.len()
    }

    pub fn elements(&self) -> &[usize] {
        &self.set
    }

    pub fn contains(&self, j: usize) -> bool {
        self.set.binary_search(&j).is_ok()
    }

    /// `[r] \ J`.
    pub fn complement(&self) -> SchubertIndex {
        let set = (1..=self.r).filter(|j| !self.contains(*j)).collect();
        SchubertIndex { r: self.r, set }
    }

    pub fn dim(&self) -> usize {
        schubert_dim(self)
    }

    pub fn to_partition(&self) -> Partition {
        subset_to_partition(self)
    }
}

impl fmt::Display for SchubertIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.set.iter().map(|j| j.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

/// A weakly decreasing sequence of nonnegative integers; trailing zeros are dropped.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition(Vec<u32>);

impl Partition {
    pub fn new(mut parts: Vec<u32>) -> Result<Self> {
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::InvalidPartition(format!("{parts:?} is not weakly decreasing")));
        }
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    /// The `s x w` rectangle.
    pub fn rectangle(s: usize, w: u32) -> Self {
        if w == 0 {
            Partition::empty()
        } else {
            Partition(vec![w; s])
        }
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    /// Part `k` (0-based), zero past the end.
    pub fn part(&self, k: usize) -> u32 {
        self.0.get(k).copied().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn size(&self) -> u32 {
        self.0.iter().sum()
    }

    /// Fits in `rows x width`.
    pub fn fits(&self, rows: usize, width: u32) -> bool {
        self.0.len() <= rows && self.part(0) <= width
    }

    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && other.0.iter().enumerate().all(|(k, &p)| p <= self.0[k])
    }

    pub fn conjugate(&self) -> Partition {
        let w = self.part(0) as usize;
        let parts = (0..w).map(|c| self.0.iter().filter(|&&p| p as usize > c).count() as u32).collect();
        Partition(parts)
    }

    /// Inverse of [`subset_to_partition`] for a partition in the `s x (r-s)` box.
    pub fn to_index(&self, s: usize, r: usize) -> Result<SchubertIndex> {
        if s == 0 || s >= r || !self.fits(s, (r - s) as u32) {
            return Err(Error::InvalidPartition(format!("{self} is not in the {s}x{} box", r.saturating_sub(s))));
        }
        let set = (1..=s).map(|k| r - s + k - self.part(k - 1) as usize).collect();
        SchubertIndex::new(r, set)
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

impl std::str::FromStr for Partition {
    type Err = Error;

    /// Accepts `"(2,1)"`, `"2,1"`, `"()"` and `"0"`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')').trim();
        if t.is_empty() {
            return Ok(Partition::empty());
        }
        let parts = t
            .split(',')
            .map(|p| p.trim().parse::<u32>().map_err(|_| Error::Parse(format!("bad partition `{s}`"))))
            .collect::<Result<Vec<_>>>()?;
        Partition::new(parts)
    }
}

pub fn subset_to_partition(j: &SchubertIndex) -> Partition {
    let (r, s) = (j.r, j.s());
    let parts = (1..=s).map(|k| (r - s + k - j.set[k - 1]) as u32).collect();
    Partition::new(parts).expect("increasing subsets give decreasing partitions")
}

pub fn schubert_dim(j: &SchubertIndex) -> usize {
    j.set.iter().enumerate().map(|(k, &jk)| jk - (k + 1)).sum()
}

/// `lambda_k -> (r - s) - lambda_{s+1-k}`.
pub fn poincare_dual(lambda: &Partition, s: usize, r: usize) -> Result<Partition> {
    let w = r.checked_sub(s).filter(|_| s >= 1).ok_or_else(|| Error::InvalidPartition(format!("bad box s={s}, r={r}")))? as u32;
    if !lambda.fits(s, w) {
        return Err(Error::InvalidPartition(format!("{lambda} is not in the {s}x{w} box")));
    }
    Partition::new((0..s).map(|k| w - lambda.part(s - 1 - k)).collect())
}

/// All partitions in the `rows x width` box, ordered by size then lexicographically.
pub fn partitions_in_box(rows: usize, width: u32) -> Vec<Partition> {
    fn rec(rows: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        out.push(Partition::new(cur.clone()).unwrap());
        if cur.len() == rows {
            return;
        }
        for p in 1..=max {
            cur.push(p);
            rec(rows, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(rows, width, &mut Vec::new(), &mut out);
    out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.cmp(b)));
    out
}

/// Partitions of `n` with at most `rows` parts, each at most `width`.
pub fn partitions_of(n: u32, rows: usize, width: u32) -> Vec<Partition> {
    fn rec(left: u32, rows: usize, max: u32, cur: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if left == 0 {
            out.push(Partition(cur.clone()));
            return;
        }
        if cur.len() == rows {
            return;
        }
        for p in (1..=max.min(left)).rev() {
            cur.push(p);
            rec(left - p, rows, p, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, rows, width, &mut Vec::new(), &mut out);
    out
}

/// Littlewood-Richardson coefficient `c^nu_{lambda mu}`, by counting LR skew
/// tableaux of shape `nu / lambda` and content `mu`.
///
/// Cells are filled in reverse reading order (rows top to bottom, each row
/// right to left), so the lattice condition is checked as the word is built.
pub fn lr_coefficient(lambda: &Partition, mu: &Partition, nu: &Partition) -> u64 {
    if lambda.size() + mu.size() != nu.size() || !nu.contains(lambda) || !nu.contains(mu) {
        return 0;
    }
    if mu.is_empty() {
        return 1;
    }
    let rows = nu.len();
    let mut cells = Vec::new();
    for i in 0..rows {
        for j in (lambda.part(i)..nu.part(i)).rev() {
            cells.push((i, j as usize));
        }
    }
    let width = nu.part(0) as usize;
    let mut grid = vec![vec![0u32; width]; rows];
    let mut counts = vec![0u32; mu.len() + 1];
    let content: Vec<u32> = std::iter::once(0).chain(mu.parts().iter().copied()).collect();
    let mut total = 0;
    fill(0, &cells, lambda, nu, &content, &mut grid, &mut counts, &mut total);
    total
}

#[allow(clippy::too_many_arguments)]
fn fill(
    idx: usize,
    cells: &[(usize, usize)],
    lambda: &Partition,
    nu: &Partition,
    content: &[u32],
    grid: &mut [Vec<u32>],
    counts: &mut [u32],
    total: &mut u64,
) {
    if idx == cells.len() {
        *total += 1;
        return;
    }
    let (i, j) = cells[idx];
    // Rows weakly increase left to right; we walk right to left.
    let hi = if j + 1 < nu.part(i) as usize { grid[i][j + 1] } else { u32::MAX };
    // Columns strictly increase downward.
    let lo = if i > 0 && j >= lambda.part(i - 1) as usize { grid[i - 1][j] + 1 } else { 1 };
    let top = (content.len() as u32 - 1).min(hi).min(i as u32 + 1);
    for v in lo..=top {
        let vi = v as usize;
        if counts[vi] >= content[vi] {
            continue;
        }
        if vi > 1 && counts[vi] + 1 > counts[vi - 1] {
            continue;
        }
        counts[vi] += 1;
        grid[i][j] = v;
        fill(idx + 1, cells, lambda, nu, content, grid, counts, total);
        counts[vi] -= 1;
    }
    grid[i][j] = 0;
}

/// `s_lambda * s_mu` restricted to partitions with at most `rows` parts
/// (no width bound).
pub fn lr_product(lambda: &Partition, mu: &Partition, rows: usize) -> Vec<(Partition, u64)> {
    let n = lambda.size() + mu.size();
    let cap = mu.part(0);
    let rows = rows.min(lambda.len() + mu.len());
    let mut out = Vec::new();
    let mut cur = Vec::new();
    candidates(lambda, cap, rows, n, u32::MAX, &mut cur, &mut |nu| {
        let c = lr_coefficient(lambda, mu, nu);
        if c > 0 {
            out.push((nu.clone(), c));
        }
    });
    out
}

/// Partitions `nu` of `n` containing `lambda`, with `nu_i <= lambda_i + cap`.
fn candidates(lambda: &Partition, cap: u32, rows: usize, left: u32, max: u32, cur: &mut Vec<u32>, f: &mut dyn FnMut(&Partition)) {
    let i = cur.len();
    let need: u32 = (i..rows).map(|k| lambda.part(k)).sum();
    if left < need {
        return;
    }
    if left == 0 {
        f(&Partition(cur.clone()));
        return;
    }
    if i == rows {
        return;
    }
    let lo = lambda.part(i).max(1);
    let hi = max.min(lambda.part(i) + cap).min(left);
    for p in (lo..=hi).rev() {
        cur.push(p);
        candidates(lambda, cap, rows, left - p, p, cur, f);
        cur.pop();
    }
}

/// An integer combination of Schubert classes of one Grassmannian.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CohomologyClass {
    s: usize,
    r: usize,
    terms: BTreeMap<Partition, BigInt>,
}

impl CohomologyClass {
    pub fn zero(s: usize, r: usize) -> Self {
        CohomologyClass { s, r, terms: BTreeMap::new() }
    }

    /// The Schubert class `sigma_lambda`.
    pub fn schubert(lambda: Partition, s: usize, r: usize) -> Result<Self> {
        if s == 0 || s >= r || !lambda.fits(s, (r - s) as u32) {
            return Err(Error::InvalidPartition(format!("{lambda} is not in the box of Gr({s},{r})")));
        }
        let mut c = Self::zero(s, r);
        c.terms.insert(lambda, BigInt::from(1));
        Ok(c)
    }

    pub fn unit(s: usize, r: usize) -> Result<Self> {
        Self::schubert(Partition::empty(), s, r)
    }

    pub fn grassmannian(&self) -> (usize, usize) {
        (self.s, self.r)
    }

    pub fn terms(&self) -> &BTreeMap<Partition, BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, lambda: &Partition) -> BigInt {
        self.terms.get(lambda).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, lambda: Partition, c: BigInt) {
        let e = self.terms.entry(lambda).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if (self.s, self.r) != (other.s, other.r) {
            return Err(Error::IncompatibleGrassmannian(self.s, self.r, other.s, other.r));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        let mut out = self.clone();
        for (p, c) in &other.terms {
            out.add_term(p.clone(), c.clone());
        }
        Ok(out)
    }
}

/// Cup product; terms outside the box are discarded.
pub fn cup_product(a: &CohomologyClass, b: &CohomologyClass) -> Result<CohomologyClass> {
    a.check_same(b)?;
    let (s, r) = (a.s, a.r);
    let w = (r - s) as u32;
    let mut out = CohomologyClass::zero(s, r);
    for (la, ca) in &a.terms {
        for (lb, cb) in &b.terms {
            for (nu, c) in lr_product(la, lb, s) {
                if nu.fits(s, w) {
                    out.add_term(nu, ca * cb * BigInt::from(c));
                }
            }
        }
    }
    Ok(out)
}
