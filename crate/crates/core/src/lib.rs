//! Exact point counting for generalized Markoff–Hurwitz equations
//!
//! ```text
//! (a_1 X_1^m + ... + a_n X_n^m + a)^k = b X_1 ... X_n
//! ```
//!
//! over a finite field `F_q`, together with exact (integer-only) checks of
//! the standard estimates for the number of solutions `N`, the number of
//! solutions with all coordinates nonzero `N*`, the diagonal zero-pattern
//! counts, and the projective closure and hyperplane at infinity.
//!
//! The crate is organised bottom-up:
//!
//! - [`field`]: table-driven arithmetic in `F_{p^s}` with a deterministic modulus.
//! - [`poly`]: dense univariate polynomials and distinct-root counting.
//! - [`model`]: one equation instance, its hypotheses, and evaluation of `f`,
//!   its gradient and its homogenization.
//! - [`count`]: naive and fast exact counters, diagonal distributions,
//!   inclusion–exclusion over zero patterns, projective counts.
//! - [`bounds`]: every estimate as an exact integer comparison.
//! - [`geom`]: singular-point enumeration and checks at infinity.
//! - [`harness`]: seeded sweeps and CSV / JSON-lines reports.
//!
//! See the `examples/` directory of this crate for one runnable program per
//! capability.

pub mod bounds;
pub mod count;
mod enumerate;
pub mod error;
pub mod field;
pub mod geom;
pub mod harness;
pub mod model;
pub mod poly;

pub use error::{Error, Result};
pub use field::{Fe, FieldCtx};
pub use model::{InstanceRecord, MHInstance};
pub use poly::UniPoly;
