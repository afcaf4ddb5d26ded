//! Error types shared across the library.

use crate::arith::Integer;

/// A precondition of some operation was violated.
///
/// Messages are phrased so the CLI can surface them directly; where a
/// precondition corresponds to a statement in the literature the message
/// names it.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum DomainError {
    #[error("floor_div requires a positive divisor, got {0}")]
    NonPositiveDivisor(Integer),
    #[error("factorial is undefined for negative argument {0}")]
    NegativeFactorial(Integer),
    #[error("rational denominator must be nonzero")]
    ZeroDenominator,
    #[error("rank must be at least 1, got {0}")]
    InvalidRank(Integer),
    #[error("section count must be nonnegative, got {0}")]
    InvalidSections(Integer),
    #[error("genus must be nonnegative, got {0}")]
    NegativeGenus(Integer),
    #[error("curve invariants of genus 0 are not covered here; genus ≥ 1 required")]
    GenusAtLeastOne,
    #[error("f(r) requires r ≥ 1, got {0}")]
    NonPositiveR(Integer),
    #[error("β<0: empty by Prop. 6.1")]
    NegativeBeta,
    #[error("β≠0: the cardinality formula (Thm. 3.1(5)) applies only at β=0, here β={0}")]
    BetaNotZero(Integer),
    #[error("negative factorial argument {0} in the cardinality formula")]
    NegativeFactorialArgument(Integer),
    #[error("no top flip; G(α)=G_L for all α>0 by Theorem 3.1")]
    NoTopFlip,
    #[error("dual span requires degree d > 0, got {0}")]
    NonPositiveDegree(Integer),
    #[error("Ext-pair bound must be nonnegative, got {0}")]
    NegativeBound(Integer),
    #[error("witness subtype violates 0 < n₁ < n or 0 ≤ k₁ ≤ k")]
    InvalidWitness,
    #[error("witness slope does not match the ambient slope at the stated α")]
    WitnessSlopeMismatch,
    #[error("value exceeds the supported integer range of the decision engine")]
    OutOfRange,
}
