//! Exact-arithmetic invariants and a citation-carrying decision engine for
//! coherent systems of type (n,d,n+1) on smooth projective curves.
//!
//! The crate has three layers:
//!
//! - [`arith`]: arbitrary-precision integers and normalized rationals; the
//!   whole crate computes through these, with no floating point anywhere.
//! - [`invariants`]: the closed-form formulas — Brill-Noether numbers,
//!   α-slopes, the top critical value α_l, degree bounds, the torsion
//!   stratification of the large-α moduli space, the β = 0 cardinality,
//!   Clifford bounds, extension-count coefficients, the canonical flip, and
//!   exact enumeration of candidate critical values.
//! - [`decision`]: the existence and emptiness theorems as inference rules
//!   behind a common trait, closed to a fixed point over the degree grid,
//!   producing NONEMPTY/EMPTY/OPEN verdicts with full provenance for the
//!   spaces G_L, U, U^s and B, plus the Butler-conjecture and Brill-Noether
//!   reports built on top.

pub mod arith;
pub mod decision;
pub mod error;
pub mod invariants;

pub use arith::{Integer, Rational};
pub use error::DomainError;
