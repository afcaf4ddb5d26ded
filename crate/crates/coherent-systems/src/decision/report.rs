//! Derived reports: Butler-conjecture status via the dual-span equivalence,
//! and the Brill-Noether locus reporter.

use num::{Signed, Zero};

use crate::arith::{int, Integer};
use crate::decision::{decide, DecisionError, RuleSet, Status, Target, Verdict};
use crate::error::DomainError;
use crate::invariants::{alpha_l, beta_np1, min_degree_generated, CurveContext};

/// Status of Butler's conjecture for the data (g, n, d).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ButlerVerdict {
    Holds,
    Fails,
    Open,
}

impl std::fmt::Display for ButlerVerdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ButlerVerdict::Holds => f.write_str("holds"),
            ButlerVerdict::Fails => f.write_str("fails"),
            ButlerVerdict::Open => f.write_str("open"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct ButlerStatus {
    pub verdict: ButlerVerdict,
    pub note: String,
    /// The underlying U(n,d,n+1) verdict the equivalence was mapped through.
    pub u_verdict: Verdict,
}

/// Maps the U(n,d,n+1) verdict through the dual-span equivalence: a stable
/// M_{V,ℒ} for some generated (ℒ,V) of type (1,d,n+1) exists iff
/// U(n,d,n+1) ≠ ∅. Attaches the genus-2, d = 2n counterexample note where it
/// applies.
pub fn butler_status(
    ctx: &CurveContext,
    n: &Integer,
    d: &Integer,
    rules_on: &RuleSet,
) -> Result<ButlerStatus, DecisionError> {
    if !d.is_positive() {
        return Err(DomainError::NonPositiveDegree(d.clone()).into());
    }
    let u_verdict = decide(ctx, n, d, Target::U, rules_on)?;
    let (verdict, mut note) = match u_verdict.status {
        Status::Nonempty => (
            ButlerVerdict::Holds,
            "a stable dual span M_{V,L} exists: U(n,d,n+1) ≠ ∅ (Prop. 9.5)".to_string(),
        ),
        Status::Empty => (
            ButlerVerdict::Fails,
            "no generated (L,V) of type (1,d,n+1) has stable dual span: U(n,d,n+1) = ∅ (Prop. 9.5)"
                .to_string(),
        ),
        Status::Open => (
            ButlerVerdict::Open,
            "no rule decides U(n,d,n+1); the dual-span question stays open (Prop. 9.5)".to_string(),
        ),
    };
    if *ctx.genus() == int(2) && *d == int(2) * n {
        note.push_str("; the conjecture fails for g = 2, d = 2n (Remark 9.6)");
    }
    Ok(ButlerStatus {
        verdict,
        note,
        u_verdict,
    })
}

/// Facts about the Brill-Noether locus B(n,d,n+1) that the rules certify.
#[derive(Debug, Clone)]
pub struct BnReport {
    pub beta: Integer,
    pub b_verdict: Verdict,
    /// Whether the Cor. 9.2 hypotheses hold: Petri, g ≥ 2, (g,n) ≠ (2,2),
    /// g+n−[g/(n+1)] ≤ d ≤ g+n.
    pub in_window: bool,
    pub irreducible: Option<bool>,
    pub dim: Option<Integer>,
    pub singular_locus: Option<String>,
    pub projective: Option<bool>,
    /// Present when α_l > 0: the moduli space one critical interval below
    /// the top is non-empty, irreducible and birational to G_L.
    pub birational_note: Option<String>,
    /// The genus-2 exceptional emptiness of B(2,4,3).
    pub empty_note: Option<String>,
}

/// Reports what the encoded results certify about B(n,d,n+1); the report may
/// be partial outside the window.
pub fn bn_report(
    ctx: &CurveContext,
    n: &Integer,
    d: &Integer,
    rules_on: &RuleSet,
) -> Result<BnReport, DecisionError> {
    if n < &int(1) {
        return Err(DomainError::InvalidRank(n.clone()).into());
    }
    let g = ctx.genus();
    let beta = beta_np1(ctx, n, d)?;
    let b_verdict = decide(ctx, n, d, Target::B, rules_on)?;

    let in_window = ctx.is_petri()
        && *g >= int(2)
        && !(*g == int(2) && *n == int(2))
        && *d >= min_degree_generated(ctx, n)?
        && *d <= g + n;

    let (irreducible, dim, singular_locus, projective) = if in_window {
        let k2 = n + int(2);
        // Cor. 9.2(3): projective iff d < g+n, or d = g+n and n does not divide g
        let projective = *d < g + n || !(g % n).is_zero();
        (
            Some(true),
            Some(beta.clone()),
            Some(format!("B({},{},{}) (Thm. 9.1)", n, d, k2)),
            Some(projective),
        )
    } else {
        (None, None, None, None)
    };

    let birational_note = if *n >= int(1) && alpha_l(ctx, n, d)?.is_positive() {
        Some(
            "α_l > 0: G_{L−1} is non-empty, irreducible and birational to G_L (Thm. 5.5)"
                .to_string(),
        )
    } else {
        None
    };

    let empty_note = if *g == int(2) && *n == int(2) && *d == int(4) {
        Some("B(2,4,3) = ∅ (Remark 9.3); ψ maps G_L(2,4,3) into the semistable boundary".into())
    } else {
        None
    };

    Ok(BnReport {
        beta,
        b_verdict,
        in_window,
        irreducible,
        dim,
        singular_locus,
        projective,
        birational_note,
        empty_note,
    })
}
