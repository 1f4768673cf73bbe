#![allow(dead_code)]

use parabolic::rational::frac;
use parabolic::ParabolicWeight;
use proptest::prelude::*;

/// Strictly decreasing rows of `r - 1` values in `(0, 1)` with denominator `den`.
pub fn weight(r: usize, n: usize, den: i64) -> impl Strategy<Value = ParabolicWeight> {
    let row = proptest::sample::subsequence((1..den).collect::<Vec<_>>(), r - 1);
    proptest::collection::vec(row, n).prop_map(move |rows| {
        let rows = rows.into_iter().map(|mut xs| {
            xs.reverse();
            xs.into_iter().map(|x| frac(x, den)).collect()
        });
        ParabolicWeight::new(r, rows.collect()).unwrap()
    })
}

/// A shape `(r, n)` with `r <= max_r`, `n <= max_n`, and a weight of that shape.
pub fn any_weight(max_r: usize, max_n: usize) -> impl Strategy<Value = ParabolicWeight> {
    (2..=max_r, 1..=max_n, 0usize..4).prop_flat_map(|(r, n, k)| weight(r, n, [r as i64 + 1, 12, 60, 997][k]))
}
