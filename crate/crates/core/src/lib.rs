//! Algebra of type-2 fuzzy truth values.
//!
//! The truth values of a type-2 fuzzy set are membership functions
//! `[0,1] -> [0,1]` rather than single numbers. This crate implements the
//! desk-scale machinery for working with them:
//!
//! - [`scalar`] — binary operations on the unit interval: a catalog of
//!   t-norms, t-conorms and deliberately broken operations, with exhaustive
//!   grid checks of the t-norm axioms T1–T4.
//! - [`membership`] — exact piecewise-linear-with-jumps membership functions,
//!   their left/right envelopes, normality, convexity (quasiconcavity),
//!   negation, and the witness families used by the axiom harness.
//! - [`orders`] — the meet `⊓`, join `⊔` and the partial orders `⊑` / `⪯`
//!   on membership functions, decided exactly.
//! - [`convolution`] — the lifted operations `(f ⋏ g)(x) = sup { f(y) ⋆ g(z)
//!   : y △ z = x }` with an exact engine for characteristic and neutral
//!   inputs, a grid engine for everything else, and a brute-force oracle.
//! - [`axioms`] — the lifted axiom checks O1–O7 (and O3', O5'), counterexample
//!   witness construction, and the theorem round-trips connecting scalar
//!   axiom failures of `⋆` (or `△`) to lifted failures of `⋏`.
//!
//! All piecewise-function arithmetic is exact (arbitrary-precision rationals),
//! so structural equality of derived functions is meaningful: envelopes are
//! idempotent on the nose, negation is a strict involution, and order
//! decisions never depend on a tolerance. Floating point appears only in the
//! scalar operation layer and the sampling grid.
pub mod axioms;
pub mod convolution;
pub mod error;
pub mod membership;
pub mod orders;
pub mod rat;
pub mod scalar;
pub mod unit;

pub use error::{Error, Result};
pub use membership::MembershipFunction;
pub use scalar::{BinaryOp, OpClass};
pub use unit::UnitValue;
