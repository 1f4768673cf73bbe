//! Exact wall-and-chamber computations for moduli spaces of rank `r`, degree 0
//! parabolic bundles on the projective line with `n` marked points.
//!
//! Everything is exact: weights are `BigRational`, Schubert structure constants
//! are `BigInt`. Modules build on each other bottom-up:
//! `schubert` -> `quantum` -> `weights` -> `walls` -> `crossing` -> `cone`.

pub mod cone;
pub mod crossing;
mod error;
pub mod quantum;
pub mod rational;
pub mod schubert;
pub mod walls;
pub mod weights;

pub use cone::{ConeDescription, ConeInequality, InequalityKind, ModelDescriptor};
pub use crossing::{CrossingKind, CrossingReport, Side, SplittingType};
pub use error::{Error, Result};
pub use num::{BigInt, BigRational};
pub use quantum::QuantumClass;
pub use schubert::{CohomologyClass, Partition, SchubertIndex};
pub use walls::{ScalingPath, Wall, WallCrossing};
pub use weights::{DifferenceData, DivisorClass, EffectivityCertificate, ParabolicWeight};
