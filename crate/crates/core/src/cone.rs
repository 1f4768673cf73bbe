//! The effective cone in divisor coordinates `(l, lambda^1, ..., lambda^n)`,
//! the projective model attached to a divisor, and the (anti)canonical
//! classes.
//!
//! Every inequality is stored as an integer linear form that is `>= 0` on the
//! cone.

use std::fmt;

use num::{BigInt, BigRational, One};

use crate::crossing::{is_boundary_count, is_dominant, no_blowdown_certificate, CrossingKind, DominanceTrace};
use crate::quantum::{gw_invariant, gw_one_types};
use crate::rational::{frac, int};
use crate::schubert::SchubertIndex;
use crate::walls::{walls_through, Wall};
use crate::weights::{normalize, pauly_weight, DivisorClass, ParabolicWeight};
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum InequalityKind {
    /// `lambda_j >= lambda_{j+1}` at `point` (0-based), `step` 1-based, with
    /// `lambda_r = 0`.
    Ordering { point: usize, step: usize },
    /// `lambda_1 <= l` at `point`.
    Level { point: usize },
    /// `r(d l + sum_i sum_{j in J^i} lambda_j^i) <= s sum lambda`, certified by
    /// a Gromov-Witten invariant equal to one.
    Gw { s: usize, d: i64, subsets: Vec<SchubertIndex>, invariant: BigInt },
}

impl InequalityKind {
    pub fn tag(&self) -> &'static str {
        match self {
            InequalityKind::Ordering { .. } => "ordering",
            InequalityKind::Level { .. } => "level",
            InequalityKind::Gw { .. } => "gw",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConeInequality {
    pub kind: InequalityKind,
    pub level_coeff: i64,
    /// Coefficient of `lambda_j^i` at `[i][j - 1]`.
    pub lambda_coeffs: Vec<Vec<i64>>,
}

impl ConeInequality {
    fn blank(kind: InequalityKind, r: usize, n: usize) -> Self {
        ConeInequality { kind, level_coeff: 0, lambda_coeffs: vec![vec![0; r - 1]; n] }
    }

    pub fn ordering(r: usize, n: usize, point: usize, step: usize) -> Self {
        let mut ineq = Self::blank(InequalityKind::Ordering { point, step }, r, n);
        ineq.lambda_coeffs[point][step - 1] = 1;
        if step < r - 1 {
            ineq.lambda_coeffs[point][step] = -1;
        }
        ineq
    }

    pub fn level(r: usize, n: usize, point: usize) -> Self {
        let mut ineq = Self::blank(InequalityKind::Level { point }, r, n);
        ineq.level_coeff = 1;
        ineq.lambda_coeffs[point][0] = -1;
        ineq
    }

    /// `s sum lambda - r(d l + sum_i sum_{j in J^i} lambda_j^i) >= 0`.
    pub fn gw(r: usize, s: usize, d: i64, subsets: Vec<SchubertIndex>, invariant: BigInt) -> Self {
        let (ri, si) = (r as i64, s as i64);
        let lambda_coeffs = subsets.iter().map(|j| (1..r).map(|k| si - if j.contains(k) { ri } else { 0 }).collect()).collect();
        ConeInequality { kind: InequalityKind::Gw { s, d, subsets, invariant }, level_coeff: -ri * d, lambda_coeffs }
    }

    pub fn evaluate(&self, d: &DivisorClass) -> i64 {
        let lam: i64 = self.lambda_coeffs.iter().zip(d.lambdas()).map(|(c, l)| c.iter().zip(l).map(|(a, b)| a * b).sum::<i64>()).sum();
        self.level_coeff * d.level() + lam
    }
}

impl fmt::Display for ConeInequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.kind {
            InequalityKind::Ordering { point, step } => write!(f, "ordering at point {} step {}", point + 1, step),
            InequalityKind::Level { point } => write!(f, "level at point {}", point + 1),
            InequalityKind::Gw { s, d, subsets, .. } => {
                let js: Vec<String> = subsets.iter().map(|j| j.to_string()).collect();
                write!(f, "gw ({}, {}, [{}])", s, d, js.join(" "))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeDescription {
    pub r: usize,
    pub n: usize,
    pub inequalities: Vec<ConeInequality>,
    /// `dmax` cut the facet search below the degree forced by dimension.
    pub bounded: bool,
}

/// Every ordering of a multiset given by `counts`, lexicographically.
fn arrangements(counts: &[u32]) -> Vec<Vec<usize>> {
    fn rec(counts: &mut [u32], left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if left == 0 {
            out.push(cur.clone());
            return;
        }
        for t in 0..counts.len() {
            if counts[t] > 0 {
                counts[t] -= 1;
                cur.push(t);
                rec(counts, left - 1, cur, out);
                cur.pop();
                counts[t] += 1;
            }
        }
    }
    let mut counts = counts.to_vec();
    let left = counts.iter().sum::<u32>() as usize;
    let mut out = Vec::new();
    rec(&mut counts, left, &mut Vec::new(), &mut out);
    out
}

/// H-representation: `n(r-1)` ordering, `n` level and one gw inequality per
/// `(s, d <= 0, J)` whose Gromov-Witten invariant is one.
pub fn effective_cone(r: usize, n: usize, dmax: Option<u32>) -> Result<ConeDescription> {
    if n <= 2 * r {
        return Err(Error::NotAboveTwiceRank { r, n });
    }
    let mut inequalities = Vec::new();
    for i in 0..n {
        for j in 1..r {
            inequalities.push(ConeInequality::ordering(r, n, i, j));
        }
    }
    for i in 0..n {
        inequalities.push(ConeInequality::level(r, n, i));
    }
    let mut gw = Vec::new();
    for s in 1..r {
        let subsets = SchubertIndex::all(s, r);
        for ty in gw_one_types(s, r, n).iter() {
            if dmax.is_some_and(|m| ty.degree > m) {
                continue;
            }
            for arr in arrangements(&ty.counts) {
                let js = arr.into_iter().map(|t| subsets[t].clone()).collect();
                gw.push(ConeInequality::gw(r, s, -(ty.degree as i64), js, BigInt::one()));
            }
        }
    }
    gw.sort_by(|a, b| (&a.lambda_coeffs, a.level_coeff, &a.kind).cmp(&(&b.lambda_coeffs, b.level_coeff, &b.kind)));
    gw.dedup_by(|a, b| a.lambda_coeffs == b.lambda_coeffs && a.level_coeff == b.level_coeff);
    gw.sort_by(|a, b| a.kind.cmp(&b.kind));
    inequalities.extend(gw);
    Ok(ConeDescription { r, n, inequalities, bounded: dmax.is_some_and(|m| (m as usize) < n * (r - 1)) })
}

/// Recomputes the invariant behind a gw inequality from scratch.
pub fn verify_certificate(r: usize, ineq: &ConeInequality) -> Result<bool> {
    let InequalityKind::Gw { s, d, subsets, .. } = &ineq.kind else {
        return Ok(true);
    };
    let classes: Vec<_> = subsets.iter().map(SchubertIndex::to_partition).collect();
    Ok(gw_invariant(&classes, (-d) as u32, *s, r)? == BigInt::one())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Membership {
    pub inside: bool,
    /// First inequality that fails (weakly, or strictly for the strict test).
    pub violated: Option<ConeInequality>,
}

/// Weak or strict membership of `d` in `cone`.
pub fn contains(d: &DivisorClass, cone: &ConeDescription, strict: bool) -> Result<Membership> {
    if d.r() != cone.r || d.n() != cone.n {
        return Err(Error::InvalidDivisor(format!("divisor for (r={}, n={}) against cone for (r={}, n={})", d.r(), d.n(), cone.r, cone.n)));
    }
    let violated = cone.inequalities.iter().find(|ineq| {
        let v = ineq.evaluate(d);
        v < 0 || (strict && v == 0)
    });
    Ok(Membership { inside: violated.is_none(), violated: violated.cloned() })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ModelDescriptor {
    /// The moduli space for the chamber weight `weight`.
    Interior { weight: ParabolicWeight },
    /// Interior divisor on one or more walls: the model is the contraction
    /// shared by the adjacent chambers.
    SharedContraction { walls: Vec<Wall> },
    /// `M(s, sub_degree, sub) x M(r-s, -sub_degree, quot)`.
    Product { s: usize, sub_degree: i64, sub: ParabolicWeight, quot: ParabolicWeight },
    /// Forgets the `step`-th flag at `point` (0-based); rows are `lambda / l`.
    PartialFlag { point: usize, step: usize, rows: Vec<Vec<BigRational>> },
    /// Degree `-1` moduli with the flag at `point` of type `(2, ..., r-1)`.
    DegreeShift { point: usize, rows: Vec<Vec<BigRational>> },
}

impl ModelDescriptor {
    pub fn tag(&self) -> &'static str {
        match self {
            ModelDescriptor::Interior { .. } => "interior",
            ModelDescriptor::SharedContraction { .. } => "wall-divisor",
            ModelDescriptor::Product { .. } => "product",
            ModelDescriptor::PartialFlag { .. } => "partial-flag",
            ModelDescriptor::DegreeShift { .. } => "degree-shift",
        }
    }
}

fn scaled_rows(d: &DivisorClass) -> Vec<Vec<BigRational>> {
    let l = int(d.level());
    d.lambdas().iter().map(|row| row.iter().map(|x| int(*x) / &l).collect()).collect()
}

/// Model of a divisor in the cone: the chamber's moduli space in the
/// interior, and the facet's model on exactly one facet. Corners are not
/// supported.
pub fn projective_model(d: &DivisorClass, cone: &ConeDescription) -> Result<ModelDescriptor> {
    let m = contains(d, cone, false)?;
    if let Some(v) = m.violated {
        return Err(Error::OutsideCone(v.to_string()));
    }
    let tight: Vec<&ConeInequality> = cone.inequalities.iter().filter(|i| i.evaluate(d) == 0).collect();
    let r = d.r();
    match tight.as_slice() {
        [] => {
            let weight = pauly_weight(d)?;
            let walls = walls_through(&weight, None)?;
            if walls.is_empty() {
                Ok(ModelDescriptor::Interior { weight })
            } else {
                Ok(ModelDescriptor::SharedContraction { walls })
            }
        }
        [one] => match &one.kind {
            InequalityKind::Ordering { point, step } => {
                Ok(ModelDescriptor::PartialFlag { point: *point, step: *step, rows: scaled_rows(d) })
            }
            InequalityKind::Level { point } => {
                let mut rows = scaled_rows(d);
                let last = rows[*point][r - 2].clone();
                let shifted: Vec<BigRational> = rows[*point][..r - 2].iter().map(|a| a - &last).collect();
                rows[*point] = shifted;
                Ok(ModelDescriptor::DegreeShift { point: *point, rows })
            }
            InequalityKind::Gw { s, d: deg, subsets, .. } => {
                let l = int(d.level());
                let entry = |i: usize, j: usize| int(d.entry(i, j)) / &l;
                let sub_rows = subsets.iter().enumerate().map(|(i, js)| js.elements().iter().map(|&j| entry(i, j)).collect()).collect();
                let quot_rows =
                    subsets.iter().enumerate().map(|(i, js)| js.complement().elements().iter().map(|&j| entry(i, j)).collect()).collect();
                Ok(ModelDescriptor::Product { s: *s, sub_degree: -deg, sub: normalize(*s, sub_rows)?, quot: normalize(r - s, quot_rows)? })
            }
        },
        many => Err(Error::CornerNotSupported(many.len())),
    }
}

/// `2 rho = (2(r-1), ..., 4, 2)`.
fn twice_rho(r: usize) -> Vec<i64> {
    (1..r).map(|j| 2 * (r - j) as i64).collect()
}

/// Anticanonical class of the GIT quotient of `n` full flag varieties:
/// level `(r-1)n`, every point `2 rho`.
pub fn canonical_git_class(r: usize, n: usize) -> Result<DivisorClass> {
    if n <= 2 * r {
        return Err(Error::NotAboveTwiceRank { r, n });
    }
    DivisorClass::new(r, ((r - 1) * n) as i64, vec![twice_rho(r); n])
}

/// Anticanonical class of the moduli space: level `2r`, every point `2 rho`.
/// Its weight is `(1/r)(r-1, ..., 1)` on every point.
pub fn anticanonical_class(r: usize, n: usize) -> Result<DivisorClass> {
    if n <= 2 * r {
        return Err(Error::NotAboveTwiceRank { r, n });
    }
    DivisorClass::new(r, 2 * r as i64, vec![twice_rho(r); n])
}

/// `(1/r)(r-1, ..., 1)` on every point.
pub fn anticanonical_weight(r: usize, n: usize) -> Result<ParabolicWeight> {
    ParabolicWeight::symmetric(r, n, (1..r).map(|j| frac((r - j) as i64, r as i64)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeakFanoReport {
    pub r: usize,
    pub n: usize,
    /// The general weight near the anticanonical one actually traced.
    pub weight: ParabolicWeight,
    pub trace: DominanceTrace,
    pub blow_downs: usize,
    pub boundary_walls: usize,
    /// `(s, d, certificate holds)` for every distinct pair on the trace.
    pub certificates: Vec<(usize, i64, bool)>,
    pub expected_rho: i64,
}

impl WeakFanoReport {
    pub fn passes(&self) -> bool {
        self.trace.dominant
            && self.blow_downs == 0
            && self.boundary_walls == 0
            && self.trace.final_rho == self.expected_rho
            && self.certificates.iter().all(|c| c.2)
    }
}

/// Nudges the anticanonical weight off every wall, keeping it in a chamber
/// adjacent to it. At the anticanonical weight every wall residual is a
/// multiple of 1/2, so moving each residual by less than 1/4 keeps every
/// nonzero sign; that needs `2r sum |delta| < 1/4`.
///
/// Offsets are `1 / (16 r E p)` for distinct primes `p > 1000` (`E` entries),
/// so no two walls can meet the new ray at the same point through a small
/// integer relation among offsets. `attempt` shifts the primes.
pub fn perturbed_anticanonical(r: usize, n: usize, attempt: u32) -> Result<ParabolicWeight> {
    let base = anticanonical_weight(r, n)?;
    let entries = n * (r - 1);
    let primes = primes_above(1000 + 200 * attempt as u64, entries);
    let scale = BigInt::from(16 * r * entries);
    let rows = base
        .rows()
        .iter()
        .enumerate()
        .map(|(i, row)| {
            row.iter().enumerate().map(|(j, a)| a + BigRational::new(BigInt::one(), &scale * primes[i * (r - 1) + j])).collect()
        })
        .collect();
    ParabolicWeight::new(r, rows)
}

fn primes_above(start: u64, count: usize) -> Vec<u64> {
    let is_prime = |p: u64| p >= 2 && (2..).take_while(|q| q * q <= p).all(|q| !p.is_multiple_of(q));
    (start + 1..).filter(|&p| is_prime(p)).take(count).collect()
}

const PERTURBATION_ATTEMPTS: u32 = 12;

/// Runs the dominance trace from a general weight next to the anticanonical
/// one and collects the weak Fano evidence.
pub fn weak_fano_report(r: usize, n: usize) -> Result<WeakFanoReport> {
    if n <= 2 * r {
        return Err(Error::NotAboveTwiceRank { r, n });
    }
    let mut last_err = None;
    for attempt in 0..PERTURBATION_ATTEMPTS {
        let weight = perturbed_anticanonical(r, n, attempt)?;
        match is_dominant(&weight, None) {
            Ok(trace) => return Ok(summarize(r, n, weight, trace)),
            Err(e @ (Error::PerturbationRequired(_) | Error::DegenerateBase(_))) => last_err = Some(e),
            Err(e) => return Err(e),
        }
    }
    Err(last_err.unwrap())
}

fn summarize(r: usize, n: usize, weight: ParabolicWeight, trace: DominanceTrace) -> WeakFanoReport {
    let mut certificates: Vec<(usize, i64, bool)> = trace
        .steps
        .iter()
        .map(|(_, rep)| (rep.wall.s(), rep.wall.d(), no_blowdown_certificate(r, n, rep.wall.s(), rep.wall.d())))
        .collect();
    certificates.sort();
    certificates.dedup();
    let boundary_walls = trace.steps.iter().filter(|(_, rep)| rep.kind == CrossingKind::Boundary || is_boundary_count(&rep.wall)).count();
    WeakFanoReport {
        r,
        n,
        weight,
        blow_downs: trace.blow_downs(),
        boundary_walls,
        certificates,
        expected_rho: ((r - 1) * n + 1) as i64,
        trace,
    }
}
