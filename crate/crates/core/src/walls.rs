//! Walls `Delta(s, d, J)` in weight space and their enumeration along
//! scaling rays and segments.
//!
//! A wall is the hyperplane `r(d + sum_i sum_{j in J^i} a_j^i) = s|a|`. Its
//! residual is the left side minus the right side; negative residual is the
//! minus side. A hyperplane only counts as a wall where something actually
//! changes: both factors of the center must carry semistable bundles and the
//! extension spaces must have the right dimensions (see [`Wall::is_active`]).

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num::{BigInt, BigRational, Integer, One, Signed, ToPrimitive, Zero};

use crate::rational::int;
use crate::schubert::SchubertIndex;
use crate::weights::{check_subsets, moduli_dimension, semistable_exists, ParabolicWeight};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Wall {
    r: usize,
    s: usize,
    d: i64,
    subsets: Vec<SchubertIndex>,
}

impl Wall {
    pub fn new(r: usize, s: usize, d: i64, subsets: Vec<SchubertIndex>) -> Result<Self> {
        if s == 0 || s >= r {
            return Err(Error::InvalidWall(format!("need 1 <= s <= r-1, got s={s}, r={r}")));
        }
        check_subsets(r, subsets.len(), s, &subsets)?;
        Ok(Wall { r, s, d, subsets })
    }

    /// `Delta(s, d, n[s])`: every point uses `{1, ..., s}`.
    pub fn initial(r: usize, n: usize, s: usize, d: i64) -> Result<Self> {
        let j = SchubertIndex::initial(s, r)?;
        Self::new(r, s, d, vec![j; n])
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn d(&self) -> i64 {
        self.d
    }

    pub fn n(&self) -> usize {
        self.subsets.len()
    }

    pub fn subsets(&self) -> &[SchubertIndex] {
        &self.subsets
    }

    /// `Delta(r - s, -d, J^c)`: the same hyperplane seen from the quotient.
    pub fn complement(&self) -> Wall {
        Wall { r: self.r, s: self.r - self.s, d: -self.d, subsets: self.subsets.iter().map(SchubertIndex::complement).collect() }
    }

    /// `r(d + sum_i sum_{j in J^i} a_j^i) - s|a|`.
    pub fn residual(&self, w: &ParabolicWeight) -> Result<BigRational> {
        if w.r() != self.r || w.n() != self.n() {
            return Err(Error::InvalidWall(format!(
                "wall for (r={}, n={}) against weight for (r={}, n={})",
                self.r,
                self.n(),
                w.r(),
                w.n()
            )));
        }
        let sum: BigRational = self.subsets.iter().enumerate().map(|(i, j)| w.sum_over(i, j)).sum();
        Ok(int(self.r as i64) * (int(self.d) + sum) - int(self.s as i64) * w.total())
    }

    /// Representative with `d < 0`; for `d = 0`, the one with `s < r - s`,
    /// and for `s = r - s` the lexicographically smaller subset list.
    pub fn canonical(&self) -> Wall {
        let c = self.complement();
        let keep = match self.d.cmp(&0) {
            Ordering::Less => true,
            Ordering::Greater => false,
            Ordering::Equal => match (2 * self.s).cmp(&self.r) {
                Ordering::Less => true,
                Ordering::Greater => false,
                Ordering::Equal => self.subsets <= c.subsets,
            },
        };
        if keep {
            self.clone()
        } else {
            c
        }
    }

    pub fn is_canonical(&self) -> bool {
        self.canonical() == *self
    }

    /// `sum_i dim omega_{J^i}`.
    pub fn schubert_dim_total(&self) -> i64 {
        self.subsets.iter().map(|j| j.dim() as i64).sum()
    }

    /// Dimension count `(dim M, dim Y, ext-, ext+)` for this orientation,
    /// where `ext-` is the extension dimension on the minus side:
    /// `-dr - s(r-s) + sum_i dim omega_{J^i}`, and `ext+` closes the identity
    /// `ext- + ext+ = dim M - dim Y + 1`.
    pub fn center_dimensions(&self) -> (i64, i64, i64, i64) {
        let (r, s, n) = (self.r as i64, self.s as i64, self.n());
        let dim_m = moduli_dimension(self.r, n);
        let dim_y = moduli_dimension(self.s, n) + moduli_dimension(self.r - self.s, n);
        let ext_minus = -self.d * r - s * (r - s) + self.schubert_dim_total();
        let ext_plus = dim_m - dim_y + 1 - ext_minus;
        (dim_m, dim_y, ext_minus, ext_plus)
    }

    /// Induced weights on the destabilizing subbundle and on the quotient:
    /// rows `(a_j^i)_{j in J^i}` and `(a_j^i)_{j not in J^i}`.
    pub fn induced_rows(&self, w: &ParabolicWeight) -> (Vec<Vec<BigRational>>, Vec<Vec<BigRational>>) {
        let mut sub = Vec::with_capacity(self.n());
        let mut quot = Vec::with_capacity(self.n());
        for (i, j) in self.subsets.iter().enumerate() {
            sub.push(j.elements().iter().map(|&k| w.entry(i, k)).collect());
            quot.push(j.complement().elements().iter().map(|&k| w.entry(i, k)).collect());
        }
        (sub, quot)
    }

    /// Whether crossing this hyperplane at `w` (which must lie on it) changes
    /// the moduli space: both extension dimensions are nonnegative with at
    /// least one positive, and both factors `M(s, d, b)` and `M(r-s, -d, c)`
    /// are nonempty for the induced weights.
    pub fn is_active(&self, w: &ParabolicWeight) -> bool {
        let (_, _, em, ep) = self.center_dimensions();
        if em < 0 || ep < 0 || em.max(ep) < 1 {
            return false;
        }
        let (sub, quot) = self.induced_rows(w);
        semistable_exists(self.s, self.d, &sub) && semistable_exists(self.r - self.s, -self.d, &quot)
    }
}

impl fmt::Display for Wall {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let js: Vec<String> = self.subsets.iter().map(|j| j.to_string()).collect();
        write!(f, "Delta({},{},[{}])", self.s, self.d, js.join(" "))
    }
}

/// `a(c) = c * base` for `0 < c <= c_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScalingPath {
    base: ParabolicWeight,
    c_max: BigRational,
}

impl ScalingPath {
    /// The base may be formal (entries at or above one) as long as `a(c_max)`
    /// is interior.
    pub fn new(base: ParabolicWeight, c_max: BigRational) -> Result<Self> {
        if !c_max.is_positive() {
            return Err(Error::InvalidWeight("c_max must be positive".into()));
        }
        base.scaled(&c_max).into_interior()?;
        Ok(ScalingPath { base, c_max })
    }

    pub fn base(&self) -> &ParabolicWeight {
        &self.base
    }

    pub fn c_max(&self) -> &BigRational {
        &self.c_max
    }

    pub fn at(&self, c: &BigRational) -> ParabolicWeight {
        self.base.scaled(c)
    }
}

/// Walls met at one parameter value. More than one wall means the crossing
/// is not simple.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WallCrossing {
    pub param: BigRational,
    pub walls: Vec<Wall>,
}

impl WallCrossing {
    pub fn is_simple(&self) -> bool {
        self.walls.len() == 1
    }
}

/// Candidate bound `|d| <= n s`, optionally tightened by the caller.
pub fn degree_bound(n: usize, s: usize, dmax: Option<u32>) -> i64 {
    let b = (n * s) as i64;
    dmax.map_or(b, |m| b.min(m as i64))
}

/// True when `dmax` cuts below the derived bound for some rank.
pub fn is_bounded_search(r: usize, n: usize, dmax: Option<u32>) -> bool {
    dmax.is_some_and(|m| (m as usize) < n * (r - 1))
}

/// Per-point values `r * sum_{j in J} a_j^i - s * |a^i|` for every `s`-subset,
/// cleared of denominators. A wall's residual is `r d den` plus the sum of
/// the chosen values.
struct PointTable {
    r: usize,
    s: usize,
    subsets: Vec<SchubertIndex>,
    values: Vec<Vec<BigInt>>,
    /// Per point, subset indices by decreasing value.
    order: Vec<Vec<usize>>,
    max_rest: Vec<BigInt>,
    min_rest: Vec<BigInt>,
}

impl PointTable {
    fn new(r: usize, s: usize, values: Vec<Vec<BigInt>>) -> Self {
        let n = values.len();
        let mut max_rest = vec![BigInt::zero(); n + 1];
        let mut min_rest = vec![BigInt::zero(); n + 1];
        for i in (0..n).rev() {
            max_rest[i] = &max_rest[i + 1] + values[i].iter().max().unwrap();
            min_rest[i] = &min_rest[i + 1] + values[i].iter().min().unwrap();
        }
        let order = values
            .iter()
            .map(|row| {
                let mut idx: Vec<usize> = (0..row.len()).collect();
                idx.sort_by(|&a, &b| row[b].cmp(&row[a]).then(a.cmp(&b)));
                idx
            })
            .collect();
        PointTable { r, s, subsets: SchubertIndex::all(s, r), values, order, max_rest, min_rest }
    }

    fn for_weight(w: &ParabolicWeight, s: usize, den: &BigInt) -> Self {
        let r = w.r();
        let subsets = SchubertIndex::all(s, r);
        let values = (0..w.n())
            .map(|i| {
                let row_total: BigRational = w.rows()[i].iter().sum();
                subsets.iter().map(|j| ((int(r as i64) * w.sum_over(i, j) - int(s as i64) * &row_total) * den).to_integer()).collect()
            })
            .collect();
        Self::new(r, s, values)
    }

    fn wall(&self, d: i64, choice: &[usize]) -> Wall {
        Wall { r: self.r, s: self.s, d, subsets: choice.iter().map(|&k| self.subsets[k].clone()).collect() }
    }

    fn sum(&self, choice: &[usize]) -> BigInt {
        choice.iter().enumerate().map(|(i, &k)| &self.values[i][k]).sum()
    }

    /// Every full choice over points `range`, with its sum.
    fn products(&self, range: std::ops::Range<usize>) -> Vec<(BigInt, Vec<usize>)> {
        let mut out = vec![(BigInt::zero(), Vec::new())];
        for i in range {
            out = out
                .into_iter()
                .flat_map(|(acc, choice)| {
                    self.values[i].iter().enumerate().map(move |(k, v)| {
                        let mut c = choice.clone();
                        c.push(k);
                        (&acc + v, c)
                    })
                })
                .collect();
        }
        out
    }

    /// Every choice whose sum equals one of `targets`, tagged by target
    /// index. Meets in the middle so the cost is roughly the square root of
    /// the number of choices.
    fn exact(&self, targets: &[BigInt]) -> Vec<(usize, Vec<usize>)> {
        let n = self.values.len();
        let h = n / 2;
        let mut right: HashMap<BigInt, Vec<Vec<usize>>> = HashMap::new();
        for (sum, choice) in self.products(h..n) {
            right.entry(sum).or_default().push(choice);
        }
        let mut out = Vec::new();
        for (sum, left) in self.products(0..h) {
            for (t, target) in targets.iter().enumerate() {
                if let Some(rest) = right.get(&(target - &sum)) {
                    for tail in rest {
                        let mut c = left.clone();
                        c.extend_from_slice(tail);
                        out.push((t, c));
                    }
                }
            }
        }
        out.sort();
        out
    }
}

trait Visit {
    /// Whether to descend, given the least and greatest completed sums.
    fn keep(&mut self, lo: &BigInt, hi: &BigInt) -> bool;
    fn leaf(&mut self, t: &PointTable, choice: &[usize], sum: &BigInt);
}

/// Depth-first walk over subset choices, largest values first.
fn walk(t: &PointTable, v: &mut impl Visit) {
    fn rec(t: &PointTable, i: usize, acc: &BigInt, choice: &mut Vec<usize>, v: &mut impl Visit) {
        if !v.keep(&(acc + &t.min_rest[i]), &(acc + &t.max_rest[i])) {
            return;
        }
        if i == t.values.len() {
            v.leaf(t, choice, acc);
            return;
        }
        for &k in &t.order[i] {
            choice.push(k);
            rec(t, i + 1, &(acc + &t.values[i][k]), choice, v);
            choice.pop();
        }
    }
    rec(t, 0, &BigInt::zero(), &mut Vec::new(), v);
}

fn common_denominator(ws: &[&ParabolicWeight]) -> BigInt {
    ws.iter().flat_map(|w| w.rows().iter().flatten()).fold(BigInt::one(), |acc, a| acc.lcm(a.denom()))
}

fn group(mut found: Vec<(BigRational, Wall)>) -> Vec<WallCrossing> {
    found.sort();
    let mut out: Vec<WallCrossing> = Vec::new();
    for (c, w) in found {
        match out.last_mut() {
            Some(last) if last.param == c => last.walls.push(w),
            _ => out.push(WallCrossing { param: c, walls: vec![w] }),
        }
    }
    out
}

/// Collects scaling crossings up to `c_max`; with `first_only`, tightens the
/// cap to the best crossing found so far.
struct ScalingSearch<'a> {
    path: &'a ScalingPath,
    rden: BigInt,
    bound: i64,
    cap: BigRational,
    first_only: bool,
    found: Vec<(BigRational, Wall)>,
}

impl Visit for ScalingSearch<'_> {
    fn keep(&mut self, _: &BigInt, hi: &BigInt) -> bool {
        // Crossing at c = k r den / S; k = 1 gives the least c.
        hi.is_positive() && BigRational::from_integer(hi.clone()) * &self.cap >= BigRational::from_integer(self.rden.clone())
    }

    fn leaf(&mut self, t: &PointTable, choice: &[usize], sum: &BigInt) {
        for k in 1..=self.bound {
            let c = BigRational::new(&self.rden * k, sum.clone());
            if c > self.cap {
                break;
            }
            let wall = t.wall(-k, choice);
            if wall.is_active(&self.path.at(&c)) {
                if self.first_only {
                    if c < self.cap {
                        self.found.clear();
                        self.cap = c.clone();
                    }
                    self.found.push((c, wall));
                    break;
                }
                self.found.push((c, wall));
            }
        }
    }
}

fn scaling_search(path: &ScalingPath, dmax: Option<u32>, first_only: bool) -> Result<Vec<WallCrossing>> {
    let base = path.base();
    let (r, n) = (base.r(), base.n());
    if let Some(w) = walls_through_degrees(base, &[0], dmax).into_iter().next() {
        return Err(Error::DegenerateBase(w.to_string()));
    }
    let den = common_denominator(&[base]);
    let mut search =
        ScalingSearch { path, rden: BigInt::from(r) * &den, bound: 0, cap: path.c_max().clone(), first_only, found: Vec::new() };
    for s in 1..r {
        let table = PointTable::for_weight(base, s, &den);
        search.bound = degree_bound(n, s, dmax);
        walk(&table, &mut search);
    }
    Ok(group(search.found))
}

/// Every active wall met by `a(c)`, `0 < c <= c_max`, sorted by `c`, with
/// simultaneous walls grouped. Walls with `d = 0` contain the whole ray or
/// miss it, so they never appear; a base on such a wall is degenerate. Each
/// wall is reported with `d < 0`, which puts its minus side before the
/// crossing.
pub fn scaling_walls(path: &ScalingPath, dmax: Option<u32>) -> Result<Vec<WallCrossing>> {
    scaling_search(path, dmax, false)
}

/// The first scaling wall, which must be `Delta(1, -1, n[1])` or
/// `Delta(r-1, -1, n[r-1])`. Searches branch-and-bound, so it stays cheap
/// where the full wall list is huge.
pub fn first_wall(path: &ScalingPath) -> Result<(BigRational, Wall)> {
    let first = scaling_search(path, None, true)?.into_iter().next().ok_or(Error::NoneFound)?;
    if !first.is_simple() {
        return Err(Error::PerturbationRequired(crate::rational::format(&first.param)));
    }
    let wall = first.walls.into_iter().next().unwrap();
    let (r, n) = (wall.r(), wall.n());
    let expected = [Wall::initial(r, n, 1, -1)?, Wall::initial(r, n, r - 1, -1)?];
    if !expected.contains(&wall) {
        return Err(Error::UnexpectedFirstWall(wall.to_string()));
    }
    Ok((first.param, wall))
}

/// Leaves of the difference table that can still cross from minus to plus.
struct SegmentSearch {
    leaves: Vec<Vec<usize>>,
}

impl Visit for SegmentSearch {
    fn keep(&mut self, _: &BigInt, hi: &BigInt) -> bool {
        hi.is_positive()
    }

    fn leaf(&mut self, _: &PointTable, choice: &[usize], _: &BigInt) {
        self.leaves.push(choice.to_vec());
    }
}

/// Every active wall crossed by `(1 - t) w0 + t w1`, `0 <= t <= 1`, sorted by
/// `t`. Each wall is oriented so `w0` is on its minus side. Unlike scaling,
/// walls with `d = 0` do show up here.
pub fn segment_walls(w0: &ParabolicWeight, w1: &ParabolicWeight, dmax: Option<u32>) -> Result<Vec<WallCrossing>> {
    let (r, n) = (w0.r(), w0.n());
    if w1.r() != r || w1.n() != n {
        return Err(Error::InvalidWeight("segment endpoints have different shapes".into()));
    }
    if w0 == w1 {
        return Ok(Vec::new());
    }
    for w in [w0, w1] {
        if let Some(wall) = walls_through(w, dmax)?.into_iter().next() {
            return Err(Error::DegenerateBase(wall.to_string()));
        }
    }
    let den = common_denominator(&[w0, w1]);
    let rden = BigInt::from(r) * &den;
    let mut found = Vec::new();
    for s in 1..r {
        let t0 = PointTable::for_weight(w0, s, &den);
        let t1 = PointTable::for_weight(w1, s, &den);
        let diff =
            PointTable::new(r, s, t0.values.iter().zip(&t1.values).map(|(a, b)| a.iter().zip(b).map(|(x, y)| y - x).collect()).collect());
        let bound = degree_bound(n, s, dmax);
        let mut search = SegmentSearch { leaves: Vec::new() };
        walk(&diff, &mut search);
        for choice in search.leaves {
            let (x0, x1) = (t0.sum(&choice), t1.sum(&choice));
            // Residual at t is d r den + x_t; need it negative at 0, positive at 1.
            let lo: BigInt = (-&x1).div_floor(&rden) + 1;
            let hi: BigInt = (-&x0 - BigInt::one()).div_floor(&rden);
            let lo = lo.max(BigInt::from(-bound)).to_i64().unwrap();
            let hi = hi.min(BigInt::from(bound)).to_i64().unwrap();
            for d in lo..=hi {
                let r0 = &rden * d + &x0;
                let r1 = &rden * d + &x1;
                let t = BigRational::new(-r0.clone(), r1 - r0);
                let wall = t0.wall(d, &choice);
                if wall.is_active(&w0.lerp(w1, &t)) {
                    found.push((t, wall));
                }
            }
        }
    }
    Ok(group(found))
}

/// Active walls containing `w`, in canonical form and sorted.
pub fn walls_through(w: &ParabolicWeight, dmax: Option<u32>) -> Result<Vec<Wall>> {
    let bound = degree_bound(w.n(), w.r() - 1, dmax);
    let ks: Vec<i64> = (0..=bound).collect();
    Ok(walls_through_degrees(w, &ks, dmax))
}

/// Active canonical walls with `d = -k` for `k` in `ks` containing `w`.
fn walls_through_degrees(w: &ParabolicWeight, ks: &[i64], dmax: Option<u32>) -> Vec<Wall> {
    let (r, n) = (w.r(), w.n());
    let den = common_denominator(&[w]);
    let mut out = Vec::new();
    for s in 1..r {
        let bound = degree_bound(n, s, dmax);
        let ks: Vec<i64> = ks.iter().copied().filter(|&k| k <= bound).collect();
        let table = PointTable::for_weight(w, s, &den);
        let targets: Vec<BigInt> = ks.iter().map(|&k| BigInt::from(k * r as i64) * &den).collect();
        for (t, choice) in table.exact(&targets) {
            let wall = table.wall(-ks[t], &choice);
            if wall.is_canonical() && wall.is_active(w) {
                out.push(wall);
            }
        }
    }
    out.sort();
    out
}
