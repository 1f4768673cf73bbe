mod common;

use parabolic::cone::{
    anticanonical_class, anticanonical_weight, contains, effective_cone, projective_model, verify_certificate, InequalityKind,
};
use parabolic::quantum::gw_invariant;
use parabolic::weights::{is_effective, pauly_divisor, pauly_weight};
use parabolic::{BigInt, DivisorClass, ModelDescriptor, SchubertIndex};
use proptest::prelude::*;
use std::collections::BTreeSet;

/// Coefficient vectors of every gw facet, found by evaluating the invariant on
/// every tuple of subsets and every admissible degree.
fn brute_force_facets(r: usize, n: usize) -> BTreeSet<(i64, Vec<i64>)> {
    let mut out = BTreeSet::new();
    for s in 1..r {
        let all = SchubertIndex::all(s, r);
        let mut idx = vec![0usize; n];
        loop {
            let js: Vec<SchubertIndex> = idx.iter().map(|&k| all[k].clone()).collect();
            let codim: usize = js.iter().map(|j| j.to_partition().size() as usize).sum();
            let top = s * (r - s);
            if codim >= top && (codim - top).is_multiple_of(r) {
                let d = ((codim - top) / r) as u32;
                let classes: Vec<_> = js.iter().map(SchubertIndex::to_partition).collect();
                if gw_invariant(&classes, d, s, r).unwrap() == BigInt::from(1) {
                    let lambda: Vec<i64> =
                        js.iter().flat_map(|j| (1..r).map(move |k| s as i64 - if j.contains(k) { r as i64 } else { 0 })).collect();
                    out.insert((r as i64 * d as i64, lambda));
                }
            }
            let mut k = 0;
            while k < n && idx[k] + 1 == all.len() {
                idx[k] = 0;
                k += 1;
            }
            if k == n {
                break;
            }
            idx[k] += 1;
        }
    }
    out
}

#[test]
fn facets_match_brute_force() {
    for &(r, n) in &[(2, 5), (2, 6), (3, 7)] {
        let cone = effective_cone(r, n, None).unwrap();
        let found: BTreeSet<(i64, Vec<i64>)> = cone
            .inequalities
            .iter()
            .filter(|i| matches!(i.kind, InequalityKind::Gw { .. }))
            .map(|i| (i.level_coeff, i.lambda_coeffs.concat()))
            .collect();
        assert_eq!(found, brute_force_facets(r, n), "r={r} n={n}");
        for ineq in &cone.inequalities {
            assert!(verify_certificate(r, ineq).unwrap());
        }
    }
}

#[test]
fn inequality_counts() {
    assert_eq!(effective_cone(2, 5, None).unwrap().inequalities.len(), 26);
    assert!(effective_cone(2, 4, None).is_err());
}

#[test]
fn anticanonical_is_interior() {
    for &(r, n) in &[(2, 5), (2, 7), (3, 7)] {
        let d = anticanonical_class(r, n).unwrap();
        assert_eq!(pauly_weight(&d).unwrap(), anticanonical_weight(r, n).unwrap());
        let cone = effective_cone(r, n, None).unwrap();
        assert!(contains(&d, &cone, true).unwrap().inside);
    }
}

#[test]
fn five_point_models() {
    let cone = effective_cone(2, 5, None).unwrap();
    let edge = DivisorClass::new(2, 5, vec![vec![4]; 5]).unwrap();
    assert!(matches!(projective_model(&edge, &cone).unwrap(), ModelDescriptor::Product { s: 1, sub_degree: 2, .. }));
    let inside = DivisorClass::new(2, 7, vec![vec![3], vec![3], vec![3], vec![2], vec![2]]).unwrap();
    assert!(matches!(projective_model(&inside, &cone).unwrap(), ModelDescriptor::Interior { .. }));
    let past = DivisorClass::new(2, 100, vec![vec![81]; 5]).unwrap();
    assert!(projective_model(&past, &cone).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn membership_matches_effectivity(w in (5usize..=7).prop_flat_map(|n| common::weight(2, n, 23))) {
        let cone = effective_cone(2, w.n(), None).unwrap();
        let d = pauly_divisor(&w).unwrap();
        prop_assert_eq!(contains(&d, &cone, false).unwrap().inside, is_effective(&w, None).effective);
    }
}
