//! Decides local polynomial convexity at the origin for unions of
//! totally-real planes in C^2.
//!
//! A family of planes through the origin is normalized so the base plane is
//! R^2 and every other plane is M(A) = (A + iI)R^2 for a real 2x2 matrix A.
//! The decision rules are exact sign tests on matrix invariants; every
//! "convex" verdict carries a separation certificate that can be re-verified
//! independently, and an LP-based hull probe provides numerical
//! cross-checks for configurations the rules leave undecided.
//!
//! Module map:
//! - [`scalar`], [`complex`], [`mat2`]: exact arithmetic and spectra.
//! - [`planes`]: plane representations and normal-form extraction.
//! - [`normalform`]: constructive conjugations (rotation form, simultaneous
//!   triangularization, three-plane normal forms) and reduced length.
//! - [`decide`]: the decision pipelines and the Omega classification.
//! - [`certify`]: separation certificates and their verification.
//! - [`hullprobe`] / [`lp`]: the minimax separation oracle.
//! - [`thomas`]: the exact one-parameter counterexample family.
//! - [`json`]: stable JSON encodings for the CLI.

pub mod certify;
pub mod complex;
pub mod decide;
pub mod hullprobe;
pub mod json;
pub mod lp;
pub mod mat2;
pub mod normalform;
pub mod planes;
pub mod scalar;
pub mod thomas;

pub use mat2::{commutator, commutator_det, triple_trace_obstruction, Mat2, Spectrum, SpectrumKind};
pub use planes::{GraphPlane, PlaneSpan, WeinstockFamily};
pub use scalar::{rat, rat_from_str, rint, Rat, Scalar, Sign, Sqrt3};
