//! What happens to the moduli space when a weight crosses a single wall, and
//! the Picard-number bookkeeping along a scaling path.
//!
//! At a simple wall the strictly semistable locus `Y` is a product of two
//! smaller moduli spaces. On the minus side the destabilized locus `Y-` is a
//! projective bundle over `Y` with fibre `P(Ext^1)` of dimension `ext- - 1`,
//! and symmetrically on the plus side.

use std::fmt;

use num::BigRational;

use crate::walls::{scaling_walls, walls_through, ScalingPath, Wall};
use crate::weights::{moduli_dimension, ParabolicWeight};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Minus,
    Plus,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::Minus => Side::Plus,
            Side::Plus => Side::Minus,
        }
    }
}

/// Which factor of the splitting `E = E+ (+) E-` a degree list describes:
/// the destabilizing subbundle (degrees `<= 0`) or the quotient (`>= 0`).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Factor {
    Sub,
    Quot,
}

/// Degrees of a direct sum of line bundles, sorted increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SplittingType {
    degrees: Vec<i64>,
}

impl SplittingType {
    pub fn new(mut degrees: Vec<i64>, factor: Factor) -> Result<Self> {
        let bad = match factor {
            Factor::Sub => degrees.iter().any(|&e| e > 0),
            Factor::Quot => degrees.iter().any(|&e| e < 0),
        };
        if bad || degrees.is_empty() {
            return Err(Error::SplittingSign(format!("{degrees:?} as {factor:?}")));
        }
        degrees.sort_unstable();
        Ok(SplittingType { degrees })
    }

    pub fn degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn rank(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self) -> i64 {
        self.degrees.iter().sum()
    }

    pub fn is_balanced(&self) -> bool {
        self.degrees.last().unwrap() - self.degrees.first().unwrap() <= 1
    }
}

/// The balanced splitting of rank `s` and degree `d`.
pub fn generic_splitting(s: usize, d: i64, factor: Factor) -> Result<SplittingType> {
    if s == 0 {
        return Err(Error::SplittingSign("rank 0".into()));
    }
    let q = d.div_euclid(s as i64);
    let extra = d.rem_euclid(s as i64) as usize;
    let degrees = (0..s).map(|k| if k < extra { q + 1 } else { q }).collect();
    SplittingType::new(degrees, factor)
}

/// `dim Hom(E+ (x) O(-(n-2)), E-)` summed over line-bundle pairs: each pair
/// `(f, e)` contributes `h^0(O(e - f + n - 2)) = e - f + n - 1`. Requires
/// `e - f + n - 2 >= -1` throughout, where the count is exact.
pub fn hom_dimension(sub: &SplittingType, quot: &SplittingType, n: usize) -> Result<i64> {
    let n = n as i64;
    let mut total = 0;
    for f in &sub.degrees {
        for e in &quot.degrees {
            let term = e - f + n - 2;
            if term < -1 {
                return Err(Error::NTooSmall { n: n as usize, term });
            }
            total += term + 1;
        }
    }
    Ok(total)
}

/// `dim Ext^1` on the minus side of `wall` for the given splitting of the
/// center: `hom - n s(r-s) + sum_i dim omega_{J^i}`.
pub fn ext1_dimension(wall: &Wall, sub: &SplittingType, quot: &SplittingType) -> Result<i64> {
    let (r, s, n) = (wall.r(), wall.s(), wall.n());
    if sub.rank() != s || quot.rank() != r - s || sub.degree() != wall.d() || quot.degree() != -wall.d() {
        return Err(Error::InvalidWall(format!("splitting does not match {wall}")));
    }
    let hom = hom_dimension(sub, quot, n)?;
    Ok(hom - (n * s * (r - s)) as i64 + wall.schubert_dim_total())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CrossingKind {
    BlowUp,
    BlowDown,
    Flip,
    Boundary,
    DivisorialIdentity,
}

impl CrossingKind {
    pub fn tag(self) -> &'static str {
        match self {
            CrossingKind::BlowUp => "blow-up",
            CrossingKind::BlowDown => "blow-down",
            CrossingKind::Flip => "flip",
            CrossingKind::Boundary => "boundary",
            CrossingKind::DivisorialIdentity => "divisorial-identity",
        }
    }

    /// Change in Picard number when crossing from minus to plus.
    pub fn rho_change(self) -> i64 {
        match self {
            CrossingKind::BlowUp => 1,
            CrossingKind::BlowDown => -1,
            _ => 0,
        }
    }

    fn reversed(self) -> CrossingKind {
        match self {
            CrossingKind::BlowUp => CrossingKind::BlowDown,
            CrossingKind::BlowDown => CrossingKind::BlowUp,
            k => k,
        }
    }
}

impl fmt::Display for CrossingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossingReport {
    pub wall: Wall,
    pub dim_m: i64,
    pub dim_y: i64,
    pub ext_minus: i64,
    pub ext_plus: i64,
    pub dim_y_minus: i64,
    pub dim_y_plus: i64,
    pub kind: CrossingKind,
    /// Set for boundary walls: the side whose moduli space is empty.
    pub empty_side: Option<Side>,
    /// Dimensions were computed on the balanced-splitting stratum of the center.
    pub generic_stratum: bool,
    pub sub_splitting: SplittingType,
    pub quot_splitting: SplittingType,
}

impl CrossingReport {
    /// The same crossing walked in the opposite direction.
    pub fn reversed(&self, wall: Wall) -> CrossingReport {
        CrossingReport {
            wall,
            ext_minus: self.ext_plus,
            ext_plus: self.ext_minus,
            dim_y_minus: self.dim_y_plus,
            dim_y_plus: self.dim_y_minus,
            kind: self.kind.reversed(),
            empty_side: self.empty_side.map(Side::opposite),
            sub_splitting: self.quot_splitting.clone(),
            quot_splitting: self.sub_splitting.clone(),
            ..self.clone()
        }
    }
}

/// Classification from dimension counts alone. The caller vouches that the
/// wall is active and simple at the crossing point.
pub fn crossing_report(wall: &Wall) -> Result<CrossingReport> {
    if wall.d() > 0 {
        return Ok(crossing_report(&wall.complement())?.reversed(wall.clone()));
    }
    let (r, s, n) = (wall.r(), wall.s(), wall.n());
    let sub = generic_splitting(s, wall.d(), Factor::Sub)?;
    let quot = generic_splitting(r - s, -wall.d(), Factor::Quot)?;
    let ext_minus = ext1_dimension(wall, &sub, &quot)?;
    let dim_m = moduli_dimension(r, n);
    let dim_y = moduli_dimension(s, n) + moduli_dimension(r - s, n);
    let ext_plus = dim_m - dim_y + 1 - ext_minus;
    let (kind, empty_side) = match (ext_minus, ext_plus) {
        (_, 0) => (CrossingKind::Boundary, Some(Side::Plus)),
        (0, _) => (CrossingKind::Boundary, Some(Side::Minus)),
        (1, 1) => (CrossingKind::DivisorialIdentity, None),
        (1, _) => (CrossingKind::BlowUp, None),
        (_, 1) => (CrossingKind::BlowDown, None),
        _ => (CrossingKind::Flip, None),
    };
    Ok(CrossingReport {
        wall: wall.clone(),
        dim_m,
        dim_y,
        ext_minus,
        ext_plus,
        dim_y_minus: dim_y + ext_minus - 1,
        dim_y_plus: dim_y + ext_plus - 1,
        kind,
        empty_side,
        generic_stratum: true,
        sub_splitting: sub,
        quot_splitting: quot,
    })
}

/// Classifies crossing `wall` at `w`, from its negative-residual side to its
/// positive side. `w` must lie on `wall` and on no other active wall.
pub fn classify(wall: &Wall, w: &ParabolicWeight, dmax: Option<u32>) -> Result<CrossingReport> {
    let residual = wall.residual(w)?;
    if residual != BigRational::from_integer(0.into()) {
        return Err(Error::NotOnWall(crate::rational::format(&residual)));
    }
    if !wall.is_active(w) {
        return Err(Error::EmptyCenter(wall.to_string()));
    }
    let through = walls_through(w, dmax)?;
    if through.len() > 1 {
        let names: Vec<String> = through.iter().map(|x| x.to_string()).collect();
        return Err(Error::PerturbationRequired(names.join(", ")));
    }
    crossing_report(wall)
}

/// The Picard-number trace of the scaling path `c * w`, `0 < c <= 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominanceTrace {
    pub dominant: bool,
    pub initial_rho: i64,
    pub final_rho: i64,
    pub steps: Vec<(BigRational, CrossingReport)>,
    /// `dmax` cut the wall search below its derived bound.
    pub bounded: bool,
}

impl DominanceTrace {
    pub fn blow_downs(&self) -> usize {
        self.steps.iter().filter(|(_, r)| r.kind == CrossingKind::BlowDown).count()
    }

    pub fn blow_ups(&self) -> usize {
        self.steps.iter().filter(|(_, r)| r.kind == CrossingKind::BlowUp).count()
    }
}

/// Whether `w` is dominant: its moduli space reaches Picard number
/// `(r-1)n + 1`. Starting from `(r-1)n` near zero weight, every blow-up adds
/// one and every blow-down removes one. A boundary crossing ends the trace
/// with an empty moduli space.
pub fn is_dominant(w: &ParabolicWeight, dmax: Option<u32>) -> Result<DominanceTrace> {
    let (r, n) = (w.r(), w.n());
    if n <= 2 * r {
        return Err(Error::NotAboveTwiceRank { r, n });
    }
    let one = BigRational::from_integer(1.into());
    let path = ScalingPath::new(w.clone(), one.clone())?;
    let initial_rho = ((r - 1) * n) as i64;
    let mut rho = initial_rho;
    let mut steps = Vec::new();
    let mut empty = false;
    for crossing in scaling_walls(&path, dmax)? {
        if !crossing.is_simple() || crossing.param == one {
            let names: Vec<String> = crossing.walls.iter().map(|x| x.to_string()).collect();
            return Err(Error::PerturbationRequired(format!("at c = {}: {}", crate::rational::format(&crossing.param), names.join(", "))));
        }
        let report = crossing_report(&crossing.walls[0])?;
        rho += report.kind.rho_change();
        let boundary = report.kind == CrossingKind::Boundary;
        steps.push((crossing.param, report));
        if boundary {
            empty = true;
            break;
        }
    }
    let dominant = !empty && rho == initial_rho + 1 && steps.iter().any(|(_, s)| s.kind == CrossingKind::BlowUp);
    Ok(DominanceTrace { dominant, initial_rho, final_rho: rho, steps, bounded: crate::walls::is_bounded_search(r, n, dmax) })
}

/// Sign test showing that no wall `Delta(s, d, J)` met along the ray through
/// the anticanonical weight can be a blow-down: a blow-down there would force
/// `c (n s(s-r)/(2r) + (1 + s(r-s))/r) = -(1-c) d` with `c` in `(0, 1]`,
/// whose two sides have opposite signs once the bracket is negative.
pub fn no_blowdown_certificate(r: usize, n: usize, s: usize, d: i64) -> bool {
    if s == 0 || s >= r || d >= 0 {
        return false;
    }
    // Times 2r: n s(s-r) + 2(1 + s(r-s)) < 0.
    let k = (s * (r - s)) as i64;
    2 + k * (2 - n as i64) < 0
}

/// Smallest `n` for which [`no_blowdown_certificate`] holds at this `(r, s)`.
pub fn no_blowdown_threshold(r: usize, s: usize) -> Option<usize> {
    if s == 0 || s >= r {
        return None;
    }
    let k = s * (r - s);
    // n > 2 + 2/k.
    Some(2 + 2 / k + 1)
}

/// `sum_i dim omega_{J^i} = (n-1)s(r-s) + dr`, the dimension count at which
/// a crossing on the anticanonical ray would empty the moduli space.
pub fn is_boundary_count(wall: &Wall) -> bool {
    let (r, s, n) = (wall.r() as i64, wall.s() as i64, wall.n() as i64);
    wall.schubert_dim_total() == (n - 1) * s * (r - s) + wall.d() * r
}
