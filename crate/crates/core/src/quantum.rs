//! Small quantum cohomology of Gr(s, r) and genus-zero Gromov-Witten invariants.
//!
//! Structure constants come from the rim-hook rule: multiply classically with
//! at most `s` rows and no width bound, then strip `r`-rim hooks until the
//! partition fits in the `s x (r - s)` box. Each removed hook contributes a
//! factor `q` and the sign `(-1)^(s - height)`; a reduction that collides
//! kills the term.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num::{BigInt, One, Zero};

use crate::schubert::{lr_product, poincare_dual, Partition, SchubertIndex};
use crate::{Error, Result};

/// Integer combination of `q^d sigma_lambda`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuantumClass {
    s: usize,
    r: usize,
    terms: BTreeMap<(Partition, u32), BigInt>,
}

impl QuantumClass {
    pub fn zero(s: usize, r: usize) -> Self {
        QuantumClass { s, r, terms: BTreeMap::new() }
    }

    /// `q^d sigma_lambda`.
    pub fn monomial(lambda: Partition, d: u32, s: usize, r: usize) -> Result<Self> {
        check_box(&lambda, s, r)?;
        let mut c = Self::zero(s, r);
        c.terms.insert((lambda, d), BigInt::one());
        Ok(c)
    }

    pub fn schubert(lambda: Partition, s: usize, r: usize) -> Result<Self> {
        Self::monomial(lambda, 0, s, r)
    }

    pub fn unit(s: usize, r: usize) -> Result<Self> {
        Self::schubert(Partition::empty(), s, r)
    }

    pub fn grassmannian(&self) -> (usize, usize) {
        (self.s, self.r)
    }

    pub fn terms(&self) -> &BTreeMap<(Partition, u32), BigInt> {
        &self.terms
    }

    pub fn coefficient(&self, lambda: &Partition, d: u32) -> BigInt {
        self.terms.get(&(lambda.clone(), d)).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, lambda: Partition, d: u32, c: BigInt) {
        let key = (lambda, d);
        let e = self.terms.entry(key.clone()).or_default();
        *e += c;
        if e.is_zero() {
            self.terms.remove(&key);
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        same(self, other)?;
        let mut out = self.clone();
        for ((p, d), c) in &other.terms {
            out.add_term(p.clone(), *d, c.clone());
        }
        Ok(out)
    }

    /// Drops every term with q-degree above `max_q`.
    pub fn truncate(&self, max_q: u32) -> Self {
        let terms = self.terms.iter().filter(|((_, d), _)| *d <= max_q).map(|(k, v)| (k.clone(), v.clone())).collect();
        QuantumClass { s: self.s, r: self.r, terms }
    }

    /// The `q^0` part, as a classical class.
    pub fn classical_part(&self) -> crate::schubert::CohomologyClass {
        let mut out = crate::schubert::CohomologyClass::zero(self.s, self.r);
        for ((p, d), c) in &self.terms {
            if *d == 0 {
                out.add_term(p.clone(), c.clone());
            }
        }
        out
    }
}

fn check_box(lambda: &Partition, s: usize, r: usize) -> Result<()> {
    if s == 0 || s >= r || !lambda.fits(s, (r - s) as u32) {
        return Err(Error::InvalidPartition(format!("{lambda} is not in the box of Gr({s},{r})")));
    }
    Ok(())
}

fn same(a: &QuantumClass, b: &QuantumClass) -> Result<()> {
    if (a.s, a.r) != (b.s, b.r) {
        return Err(Error::IncompatibleGrassmannian(a.s, a.r, b.s, b.r));
    }
    Ok(())
}

/// Strips `r`-rim hooks from `nu` (at most `s` rows) until it fits the box.
/// Returns the reduced partition, the number of hooks and the sign, or `None`
/// when the reduction vanishes.
pub fn rim_hook_reduce(nu: &Partition, s: usize, r: usize) -> Option<(Partition, u32, i32)> {
    if nu.len() > s {
        return None;
    }
    // Beta numbers nu_i + s - i, strictly decreasing.
    let mut beta: Vec<i64> = (0..s).map(|i| nu.part(i) as i64 + (s - 1 - i) as i64).collect();
    let r = r as i64;
    let mut hooks = 0u32;
    let mut sign = 1i32;
    while beta[0] >= r {
        let b = beta[0];
        let t = b - r;
        if beta.contains(&t) {
            return None;
        }
        let between = beta.iter().filter(|&&x| x > t && x < b).count() as i64;
        let height = between + 1;
        if (s as i64 - height) % 2 != 0 {
            sign = -sign;
        }
        hooks += 1;
        beta[0] = t;
        beta.sort_unstable_by(|x, y| y.cmp(x));
    }
    let parts = (0..s).map(|i| (beta[i] - (s - 1 - i) as i64) as u32).collect();
    Some((Partition::new(parts).expect("beta numbers decode to a partition"), hooks, sign))
}

type ProductKey = (usize, usize, Partition, Partition);
type ProductTable = HashMap<ProductKey, Arc<Vec<(Partition, u32, i64)>>>;

fn product_cache() -> &'static Mutex<ProductTable> {
    static CACHE: OnceLock<Mutex<ProductTable>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// `sigma_lambda * sigma_mu` on basis classes, memoized.
pub fn basis_product(lambda: &Partition, mu: &Partition, s: usize, r: usize) -> Arc<Vec<(Partition, u32, i64)>> {
    let (a, b) = if lambda <= mu { (lambda, mu) } else { (mu, lambda) };
    let key = (s, r, a.clone(), b.clone());
    if let Some(v) = product_cache().lock().unwrap().get(&key) {
        return v.clone();
    }
    let mut acc: BTreeMap<(Partition, u32), i64> = BTreeMap::new();
    for (nu, c) in lr_product(a, b, s) {
        if let Some((red, d, sign)) = rim_hook_reduce(&nu, s, r) {
            *acc.entry((red, d)).or_default() += sign as i64 * c as i64;
        }
    }
    let v: Arc<Vec<_>> = Arc::new(acc.into_iter().filter(|(_, c)| *c != 0).map(|((p, d), c)| (p, d, c)).collect());
    product_cache().lock().unwrap().insert(key, v.clone());
    v
}

pub fn quantum_product(a: &QuantumClass, b: &QuantumClass) -> Result<QuantumClass> {
    quantum_product_truncated(a, b, u32::MAX)
}

/// Quantum product keeping only terms of q-degree at most `max_q`.
pub fn quantum_product_truncated(a: &QuantumClass, b: &QuantumClass, max_q: u32) -> Result<QuantumClass> {
    same(a, b)?;
    let (s, r) = (a.s, a.r);
    let mut out = QuantumClass::zero(s, r);
    for ((la, da), ca) in &a.terms {
        for ((lb, db), cb) in &b.terms {
            if da + db > max_q {
                continue;
            }
            let coeff = ca * cb;
            for (nu, d, c) in basis_product(la, lb, s, r).iter() {
                let q = da + db + d;
                if q <= max_q {
                    out.add_term(nu.clone(), q, &coeff * BigInt::from(*c));
                }
            }
        }
    }
    Ok(out)
}

/// `<sigma_{lambda^1}, ..., sigma_{lambda^n}>_d` on Gr(s, r).
pub fn gw_invariant(classes: &[Partition], d: u32, s: usize, r: usize) -> Result<BigInt> {
    if classes.len() < 3 {
        return Err(Error::Arity(classes.len()));
    }
    for c in classes {
        check_box(c, s, r)?;
    }
    let total: u32 = classes.iter().map(Partition::size).sum();
    if total as usize != s * (r - s) + d as usize * r {
        return Ok(BigInt::zero());
    }
    let (last, rest) = classes.split_last().unwrap();
    let mut acc = QuantumClass::unit(s, r)?;
    for c in rest {
        acc = quantum_product_truncated(&acc, &QuantumClass::schubert(c.clone(), s, r)?, d)?;
    }
    Ok(acc.coefficient(&poincare_dual(last, s, r)?, d))
}

pub fn gw_is_one(classes: &[Partition], d: u32, s: usize, r: usize) -> Result<bool> {
    Ok(gw_invariant(classes, d, s, r)?.is_one())
}

/// A multiset of Schubert classes with invariant one, recorded as the number
/// of marked points carrying each size-`s` subset of `[r]`.
///
/// `counts` is indexed like [`SchubertIndex::all`]; `degree` is the curve
/// degree, so the matching wall has `d = -degree`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GwOneType {
    pub counts: Vec<u32>,
    pub degree: u32,
}

type TypeTable = HashMap<(usize, usize, usize), Arc<Vec<GwOneType>>>;

fn type_cache() -> &'static Mutex<TypeTable> {
    static CACHE: OnceLock<Mutex<TypeTable>> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// Every way of distributing `n` Schubert classes of Gr(s, r) (up to
/// permuting the points) whose invariant in the forced degree is one.
pub fn gw_one_types(s: usize, r: usize, n: usize) -> Arc<Vec<GwOneType>> {
    if let Some(v) = type_cache().lock().unwrap().get(&(s, r, n)) {
        return v.clone();
    }
    let subsets = SchubertIndex::all(s, r);
    let parts: Vec<Partition> = subsets.iter().map(SchubertIndex::to_partition).collect();
    let box_size = s * (r - s);
    let max_q = (n.saturating_sub(1) * box_size / r) as u32;
    let top = Partition::rectangle(s, (r - s) as u32);
    let mut out = Vec::new();
    let mut counts = vec![0u32; parts.len()];
    let unit = QuantumClass::unit(s, r).expect("valid Grassmannian");
    let ctx = TypeSearch { s, r, box_size, max_q, parts: &parts, top: &top };
    ctx.descend(0, n, 0, unit, &mut counts, &mut out);
    let v = Arc::new(out);
    type_cache().lock().unwrap().insert((s, r, n), v.clone());
    v
}

struct TypeSearch<'a> {
    s: usize,
    r: usize,
    box_size: usize,
    max_q: u32,
    parts: &'a [Partition],
    top: &'a Partition,
}

impl TypeSearch<'_> {
    fn descend(&self, t: usize, left: usize, codim: usize, acc: QuantumClass, counts: &mut Vec<u32>, out: &mut Vec<GwOneType>) {
        if t + 1 == self.parts.len() {
            // The last type takes whatever is left.
            let codim = codim + left * self.parts[t].size() as usize;
            if codim < self.box_size || !(codim - self.box_size).is_multiple_of(self.r) {
                return;
            }
            let degree = ((codim - self.box_size) / self.r) as u32;
            let mut acc = acc;
            let class = QuantumClass::schubert(self.parts[t].clone(), self.s, self.r).unwrap();
            for _ in 0..left {
                acc = quantum_product_truncated(&acc, &class, degree).unwrap();
            }
            if acc.coefficient(self.top, degree).is_one() {
                counts[t] = left as u32;
                out.push(GwOneType { counts: counts.clone(), degree });
                counts[t] = 0;
            }
            return;
        }
        let class = QuantumClass::schubert(self.parts[t].clone(), self.s, self.r).unwrap();
        let mut acc = acc;
        for c in 0..=left {
            if c > 0 {
                acc = quantum_product_truncated(&acc, &class, self.max_q).unwrap();
                if acc.is_zero() {
                    break;
                }
            }
            counts[t] = c as u32;
            self.descend(t + 1, left - c, codim + c * self.parts[t].size() as usize, acc.clone(), counts, out);
        }
        counts[t] = 0;
    }
}
