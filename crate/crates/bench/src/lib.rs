//! Shared fixtures for the criterion benches.

use parabolic::rational::frac;
use parabolic::walls::ScalingPath;
use parabolic::{ParabolicWeight, Partition, QuantumClass};

/// A general weight with a large prime denominator, fixed per shape so runs
/// are comparable. Rows are spread across `(0, 1/2)`.
pub fn general_weight(r: usize, n: usize) -> ParabolicWeight {
    const P: i64 = 1_000_003;
    let rows = (0..n)
        .map(|i| {
            (1..r)
                .map(|j| {
                    let top = P / 2 - (j as i64) * (P / (2 * r as i64));
                    frac(top - (i as i64 * 7919 + j as i64 * 104_729) % (P / (4 * r as i64)), P)
                })
                .collect()
        })
        .collect();
    ParabolicWeight::new(r, rows).expect("fixture rows are strictly decreasing")
}

/// Scaling path from `general_weight(r, n)` up to `c_max`.
pub fn scaling_path(r: usize, n: usize, c_max: (i64, i64)) -> ScalingPath {
    ScalingPath::new(general_weight(r, n), frac(c_max.0, c_max.1)).expect("fixture path is interior")
}

/// `sigma_1` on Gr(s, r).
pub fn hyperplane(s: usize, r: usize) -> QuantumClass {
    QuantumClass::schubert(Partition::new(vec![1]).unwrap(), s, r).unwrap()
}
