//! Parabolic weights, slopes, smallness, the weight/divisor dictionary and the
//! effectiveness test.

use std::collections::HashMap;
use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use crate::quantum::gw_one_types;
use crate::rational::int;
use crate::schubert::SchubertIndex;
use crate::{Error, Result};

/// Normalized weights `a_j^i`, one row `(a_1, ..., a_{r-1})` per marked point;
/// `a_r = 0` is implicit.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ParabolicWeight {
    r: usize,
    rows: Vec<Vec<BigRational>>,
}

impl ParabolicWeight {
    /// Interior weight: `1 > a_1 > ... > a_{r-1} > 0` on every row.
    pub fn new(r: usize, rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let w = Self::formal(r, rows)?;
        for (i, row) in w.rows.iter().enumerate() {
            if row.first().is_some_and(|a| *a >= BigRational::one()) {
                return Err(Error::InvalidWeight(format!("row {} has a_1 >= 1", i + 1)));
            }
        }
        Ok(w)
    }

    /// Strictly decreasing positive rows with no upper bound. Used as the base
    /// of a scaling path, which may start outside the unit cube.
    pub fn formal(r: usize, rows: Vec<Vec<BigRational>>) -> Result<Self> {
        if r == 0 || rows.is_empty() {
            return Err(Error::InvalidWeight(format!("need r >= 1 and n >= 1 (r={r}, n={})", rows.len())));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != r - 1 {
                return Err(Error::InvalidWeight(format!("row {} has {} entries, expected {}", i + 1, row.len(), r - 1)));
            }
            if row.windows(2).any(|p| p[0] <= p[1]) || row.last().is_some_and(|a| !a.is_positive()) {
                return Err(Error::InvalidWeight(format!("row {} is not strictly decreasing to a positive a_(r-1)", i + 1)));
            }
        }
        Ok(ParabolicWeight { r, rows })
    }

    /// Same weight on every point.
    pub fn symmetric(r: usize, n: usize, row: Vec<BigRational>) -> Result<Self> {
        Self::new(r, vec![row; n])
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    /// `a_j^i` with 0-based point `i` and 1-based step `j`; zero for `j = r`.
    pub fn entry(&self, i: usize, j: usize) -> BigRational {
        if j == self.r {
            BigRational::zero()
        } else {
            self.rows[i][j - 1].clone()
        }
    }

    /// `sum_{j in J} a_j^i`.
    pub fn sum_over(&self, i: usize, set: &SchubertIndex) -> BigRational {
        set.elements().iter().map(|&j| self.entry(i, j)).sum()
    }

    /// `|a|`.
    pub fn total(&self) -> BigRational {
        self.rows.iter().flatten().sum()
    }

    /// `c * a`, unchecked beyond strict decrease.
    pub fn scaled(&self, c: &BigRational) -> ParabolicWeight {
        let rows = self.rows.iter().map(|row| row.iter().map(|a| a * c).collect()).collect();
        ParabolicWeight { r: self.r, rows }
    }

    pub fn is_interior(&self) -> bool {
        self.rows.iter().all(|row| row.first().is_none_or(|a| *a < BigRational::one()))
    }

    /// Interior check that also enforces `a_1 < 1`; `formal` weights may fail it.
    pub fn into_interior(self) -> Result<Self> {
        Self::new(self.r, self.rows)
    }

    /// `(1 - t) self + t other`.
    pub fn lerp(&self, other: &ParabolicWeight, t: &BigRational) -> ParabolicWeight {
        let s = BigRational::one() - t;
        let rows = self.rows.iter().zip(&other.rows).map(|(x, y)| x.iter().zip(y).map(|(a, b)| a * &s + b * t).collect()).collect();
        ParabolicWeight { r: self.r, rows }
    }
}

impl fmt::Display for ParabolicWeight {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> =
            self.rows.iter().map(|row| format!("({})", row.iter().map(crate::rational::format).collect::<Vec<_>>().join(","))).collect();
        write!(f, "[{}]", rows.join(" "))
    }
}

/// Subtracts `a_r^i` from every row. Raw rows have `r` entries.
pub fn normalize(r: usize, raw: Vec<Vec<BigRational>>) -> Result<ParabolicWeight> {
    let mut rows = Vec::with_capacity(raw.len());
    for (i, row) in raw.into_iter().enumerate() {
        if row.len() != r {
            return Err(Error::InvalidWeight(format!("raw row {} has {} entries, expected {r}", i + 1, row.len())));
        }
        if row.windows(2).any(|p| p[0] <= p[1]) {
            return Err(Error::InvalidWeight(format!("raw row {} is not strictly decreasing", i + 1)));
        }
        let last = row[r - 1].clone();
        rows.push(row[..r - 1].iter().map(|a| a - &last).collect());
    }
    ParabolicWeight::new(r, rows)
}

/// `(deg + |a|) / r`.
pub fn slope_total(w: &ParabolicWeight, deg: i64) -> BigRational {
    (int(deg) + w.total()) / int(w.r as i64)
}

/// `(d + sum_i sum_{j in J^i} a_j^i) / s`.
pub fn slope_sub(w: &ParabolicWeight, s: usize, d: i64, subsets: &[SchubertIndex]) -> Result<BigRational> {
    check_subsets(w.r, w.n(), s, subsets)?;
    let sum: BigRational = subsets.iter().enumerate().map(|(i, j)| w.sum_over(i, j)).sum();
    Ok((int(d) + sum) / int(s as i64))
}

pub(crate) fn check_subsets(r: usize, n: usize, s: usize, subsets: &[SchubertIndex]) -> Result<()> {
    if subsets.len() != n {
        return Err(Error::InvalidWall(format!("{} subsets for {n} points", subsets.len())));
    }
    if let Some(j) = subsets.iter().find(|j| j.s() != s || j.r() != r) {
        return Err(Error::InvalidWall(format!("subset {j} is not a {s}-subset of [{r}]")));
    }
    Ok(())
}

/// `d_j^i = a_j^i - a_{j+1}^i`, with `a_r = 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DifferenceData {
    r: usize,
    rows: Vec<Vec<BigRational>>,
}

impl DifferenceData {
    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    /// `|d|_j = sum_i d_j^i`, 1-based `j`.
    pub fn column_total(&self, j: usize) -> BigRational {
        self.rows.iter().map(|row| row[j - 1].clone()).sum()
    }

    /// `|a|_j = sum_{k >= j} |d|_k`.
    pub fn tail_total(&self, j: usize) -> BigRational {
        (j..self.r).map(|k| self.column_total(k)).sum()
    }

    /// `sum_j j |d|_j`, which equals `|a|`.
    pub fn weighted_total(&self) -> BigRational {
        (1..self.r).map(|j| int(j as i64) * self.column_total(j)).sum()
    }

    /// Rebuilds the weight by summing from the right.
    pub fn reconstruct(&self) -> Result<ParabolicWeight> {
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc = BigRational::zero();
                let mut out: Vec<BigRational> = row
                    .iter()
                    .rev()
                    .map(|d| {
                        acc += d;
                        acc.clone()
                    })
                    .collect();
                out.reverse();
                out
            })
            .collect();
        ParabolicWeight::new(self.r, rows)
    }
}

pub fn difference_data(w: &ParabolicWeight) -> DifferenceData {
    let rows = (0..w.n()).map(|i| (1..w.r).map(|j| w.entry(i, j) - w.entry(i, j + 1)).collect()).collect();
    DifferenceData { r: w.r, rows }
}

/// For every `1 <= s <= r-1`:
/// `sum_{j<=s} j(r-s)|d|_j + sum_{j>s} s(r-j)|d|_j <= r`.
pub fn is_small(w: &ParabolicWeight) -> bool {
    let dd = difference_data(w);
    let r = w.r as i64;
    let cols: Vec<BigRational> = (1..w.r).map(|j| dd.column_total(j)).collect();
    (1..r).all(|s| {
        let lhs: BigRational = (1..r)
            .map(|j| {
                let coeff = if j <= s { j * (r - s) } else { s * (r - j) };
                int(coeff) * &cols[(j - 1) as usize]
            })
            .sum();
        lhs <= int(r)
    })
}

/// The same criterion written as `r sum_{j=1}^{s} |a|_j - s|a| <= r`.
pub fn is_small_equivalent(w: &ParabolicWeight) -> bool {
    let dd = difference_data(w);
    let r = w.r as i64;
    let total = w.total();
    let tails: Vec<BigRational> = (1..w.r).map(|j| dd.tail_total(j)).collect();
    (1..r).all(|s| {
        let head: BigRational = tails[..s as usize].iter().sum();
        int(r) * head - int(s) * &total <= int(r)
    })
}

/// Divisor class `(level, lambda^1, ..., lambda^n)` with `r - 1` parts per point.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DivisorClass {
    r: usize,
    level: i64,
    lambdas: Vec<Vec<i64>>,
}

impl DivisorClass {
    pub fn new(r: usize, level: i64, lambdas: Vec<Vec<i64>>) -> Result<Self> {
        if r < 2 || lambdas.is_empty() {
            return Err(Error::InvalidDivisor(format!("need r >= 2 and n >= 1 (r={r}, n={})", lambdas.len())));
        }
        for (i, lam) in lambdas.iter().enumerate() {
            if lam.len() != r - 1 {
                return Err(Error::InvalidDivisor(format!("lambda^{} has {} parts, expected {}", i + 1, lam.len(), r - 1)));
            }
            if lam.windows(2).any(|p| p[0] < p[1]) || lam.last().is_some_and(|x| *x < 0) {
                return Err(Error::InvalidDivisor(format!("lambda^{} is not a partition", i + 1)));
            }
        }
        Ok(DivisorClass { r, level, lambdas })
    }

    /// The theta divisor: level one, every partition empty.
    pub fn theta(r: usize, n: usize) -> Self {
        DivisorClass { r, level: 1, lambdas: vec![vec![0; r - 1]; n] }
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn n(&self) -> usize {
        self.lambdas.len()
    }

    pub fn level(&self) -> i64 {
        self.level
    }

    pub fn lambdas(&self) -> &[Vec<i64>] {
        &self.lambdas
    }

    /// `lambda_j^i` with 1-based `j`, zero for `j = r`.
    pub fn entry(&self, i: usize, j: usize) -> i64 {
        if j == self.r {
            0
        } else {
            self.lambdas[i][j - 1]
        }
    }

    pub fn total(&self) -> i64 {
        self.lambdas.iter().flatten().sum()
    }
}

/// `l` = least common denominator, `lambda = l a`.
pub fn pauly_divisor(w: &ParabolicWeight) -> Result<DivisorClass> {
    let overflow = || Error::Overflow(w.to_string());
    let level = w.rows.iter().flatten().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
    let lambdas = w
        .rows
        .iter()
        .map(|row| row.iter().map(|a| (a * &level).to_integer().to_i64().ok_or_else(overflow)).collect())
        .collect::<Result<_>>()?;
    Ok(DivisorClass { r: w.r, level: level.to_i64().ok_or_else(overflow)?, lambdas })
}

/// `a_j^i = lambda_j^i / l`. Needs `l > lambda_1^i` everywhere and strictly
/// decreasing positive partitions; anything else sits on a facet.
pub fn pauly_weight(d: &DivisorClass) -> Result<ParabolicWeight> {
    for (i, lam) in d.lambdas.iter().enumerate() {
        if d.level <= lam[0] {
            return Err(Error::BoundaryDivisor { point: i + 1, level: d.level, lambda1: lam[0] });
        }
    }
    let l = int(d.level);
    let rows = d.lambdas.iter().map(|lam| lam.iter().map(|x| int(*x) / &l).collect()).collect();
    ParabolicWeight::new(d.r, rows)
}

/// `n r(r-1)/2 - r^2 + 1`.
pub fn moduli_dimension(r: usize, n: usize) -> i64 {
    let (r, n) = (r as i64, n as i64);
    n * r * (r - 1) / 2 - r * r + 1
}

/// Result of [`is_effective`]. `violation` holds `(s, d, J^1..J^n)` for the
/// first failing inequality; `bounded` is set when a user bound cut the search
/// short of the degree forced by the dimension constraint.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EffectivityCertificate {
    pub effective: bool,
    pub violation: Option<(usize, i64, Vec<SchubertIndex>)>,
    pub bounded: bool,
}

/// True iff `slope_sub <= slope_total` for every `(s, d <= 0, J)` whose
/// invariant `<omega_{J^1}, ..., omega_{J^n}>_{-d}` on Gr(s, r) is one.
pub fn is_effective(w: &ParabolicWeight, dmax: Option<u32>) -> EffectivityCertificate {
    effectivity(w.r, &w.rows, dmax, false)
}

/// Strict version: every inequality holds strictly.
pub fn is_strictly_effective(w: &ParabolicWeight) -> EffectivityCertificate {
    effectivity(w.r, &w.rows, None, true)
}

/// Shared engine over raw rows (`r - 1` entries, `a_r = 0`). Rows need not be
/// interior, which lets the same code check induced weights of wall factors.
pub(crate) fn effectivity(r: usize, rows: &[Vec<BigRational>], dmax: Option<u32>, strict: bool) -> EffectivityCertificate {
    let n = rows.len();
    let mut cert = EffectivityCertificate { effective: true, violation: None, bounded: false };
    if r < 2 || n < 3 {
        return cert;
    }
    // Clear denominators once; everything below is integer arithmetic.
    let den = rows.iter().flatten().fold(BigInt::one(), |acc, a| acc.lcm(a.denom()));
    let scaled: Vec<Vec<BigInt>> = rows
        .iter()
        .map(|row| {
            let mut v: Vec<BigInt> = row.iter().map(|a| (a * &den).to_integer()).collect();
            v.push(BigInt::zero());
            v
        })
        .collect();
    let total: BigInt = scaled.iter().flatten().sum();
    for s in 1..r {
        let subsets = SchubertIndex::all(s, r);
        let values: Vec<Vec<BigInt>> =
            scaled.iter().map(|row| subsets.iter().map(|j| j.elements().iter().map(|&k| row[k - 1].clone()).sum()).collect()).collect();
        let forced = ((n - 1) * s * (r - s) / r) as u32;
        if dmax.is_some_and(|m| m < forced) {
            cert.bounded = true;
        }
        let bound = BigInt::from(s) * &total;
        for ty in gw_one_types(s, r, n).iter() {
            if dmax.is_some_and(|m| ty.degree > m) {
                continue;
            }
            let (best, choice) = best_assignment(&values, &ty.counts);
            // r (d + S) <= s |a|, everything scaled by `den`.
            let lhs = BigInt::from(r) * (best - BigInt::from(ty.degree) * &den);
            let bad = if strict { lhs >= bound } else { lhs > bound };
            if bad {
                cert.effective = false;
                let js = choice.into_iter().map(|t| subsets[t].clone()).collect();
                cert.violation = Some((s, -(ty.degree as i64), js));
                return cert;
            }
        }
    }
    cert
}

/// Maximizes `sum_i values[i][t_i]` over assignments of types to points
/// using type `t` exactly `counts[t]` times. Returns the optimum and one
/// optimal assignment.
fn best_assignment(values: &[Vec<BigInt>], counts: &[u32]) -> (BigInt, Vec<usize>) {
    let n = values.len();
    let mut memo: HashMap<Vec<u32>, (BigInt, usize)> = HashMap::new();
    fn go(i: usize, left: &mut Vec<u32>, values: &[Vec<BigInt>], memo: &mut HashMap<Vec<u32>, (BigInt, usize)>) -> BigInt {
        if i == values.len() {
            return BigInt::zero();
        }
        if let Some((v, _)) = memo.get(left.as_slice()) {
            return v.clone();
        }
        let mut best: Option<(BigInt, usize)> = None;
        for t in 0..left.len() {
            if left[t] == 0 {
                continue;
            }
            left[t] -= 1;
            let v = &values[i][t] + go(i + 1, left, values, memo);
            left[t] += 1;
            if best.as_ref().is_none_or(|(b, _)| v > *b) {
                best = Some((v, t));
            }
        }
        let best = best.expect("counts sum to the number of points");
        memo.insert(left.clone(), best.clone());
        best.0
    }
    let mut left = counts.to_vec();
    let value = go(0, &mut left, values, &mut memo);
    let mut choice = Vec::with_capacity(n);
    let mut left = counts.to_vec();
    for _ in 0..n {
        let t = memo[&left].1;
        choice.push(t);
        left[t] -= 1;
    }
    (value, choice)
}

/// Whether semistable parabolic bundles of rank `rank` and degree `degree`
/// exist for the given raw weights (each row has `rank` strictly decreasing
/// entries spanning less than one).
///
/// Elementary transformations at the first point lower the degree by one and
/// rotate that row to `(b_rank + 1, b_1, ..., b_{rank-1})` without changing
/// any slope comparison; twisting by a line bundle shifts the degree by
/// `rank`. Together they reduce to degree zero.
pub fn semistable_exists(rank: usize, degree: i64, rows: &[Vec<BigRational>]) -> bool {
    if rank <= 1 {
        return true;
    }
    let k = degree.rem_euclid(rank as i64) as usize;
    let mut rows = rows.to_vec();
    for _ in 0..k {
        let row = &mut rows[0];
        let last = row.pop().expect("rank >= 2") + BigRational::one();
        row.insert(0, last);
    }
    let normalized: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|row| {
            let last = row[rank - 1].clone();
            row[..rank - 1].iter().map(|a| a - &last).collect()
        })
        .collect();
    effectivity(rank, &normalized, None, false).effective
}

/// GIT semistability of a torus-fixed configuration: point `i` carries the
/// flag spanned by `e_{perm_i(1)}, e_{perm_i(2)}, ...`. For these, checking
/// the coordinate subspaces suffices. Such a configuration is fixed by the
/// diagonal torus, so it is never stable; semistability is the real question.
pub fn torus_fixed_semistable(w: &ParabolicWeight, perms: &[Vec<usize>]) -> Result<bool> {
    let r = w.r;
    if perms.len() != w.n() {
        return Err(Error::InvalidWeight(format!("{} flags for {} points", perms.len(), w.n())));
    }
    for p in perms {
        let mut sorted = p.clone();
        sorted.sort_unstable();
        if sorted != (1..=r).collect::<Vec<_>>() {
            return Err(Error::InvalidWeight(format!("{p:?} is not a permutation of 1..{r}")));
        }
    }
    let total = w.total();
    for mask in 1u32..(1 << r) - 1 {
        let size = mask.count_ones() as i64;
        let mut sum = BigRational::zero();
        for (i, p) in perms.iter().enumerate() {
            for (pos, &e) in p.iter().enumerate() {
                if mask & (1 << (e - 1)) != 0 {
                    sum += w.entry(i, pos + 1);
                }
            }
        }
        if sum * int(r as i64) > &total * int(size) {
            return Ok(false);
        }
    }
    Ok(true)
}
