//! Domain types and closed-form invariants for coherent systems on curves.
//!
//! Houses the Brill-Noether number β, α-slopes, the top-critical-value
//! threshold α_l, degree bounds, the torsion stratification of the large-α
//! moduli space, the β = 0 cardinality formula, Clifford-type section bounds,
//! the extension-count coefficients C_jl with the Ext¹ dimension formula, the
//! canonical destabilizing flip at α_l, and exact enumeration of candidate
//! critical values. Everything is exact: integers are arbitrary precision and
//! slopes are normalized rationals.

use std::collections::BTreeMap;
use std::fmt;

use num::{One, Signed, Zero};

use crate::arith::{ceil_div, factorial, floor_div, int, rational, Integer, Rational};
use crate::error::DomainError;

/// The ambient curve of every formula: its genus plus hypothesis flags.
///
/// `petri` records whether the curve is assumed to be a Petri curve; rules
/// that need that hypothesis consult the flag. The base field is taken to be
/// the complex numbers throughout (informational only).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CurveContext {
    genus: Integer,
    petri: bool,
}

impl CurveContext {
    pub fn new(genus: Integer, petri: bool) -> Result<Self, DomainError> {
        if genus.is_negative() {
            return Err(DomainError::NegativeGenus(genus));
        }
        Ok(CurveContext { genus, petri })
    }

    /// Petri curve of the given genus.
    pub fn petri(genus: i64) -> Result<Self, DomainError> {
        CurveContext::new(int(genus), true)
    }

    pub fn genus(&self) -> &Integer {
        &self.genus
    }

    pub fn is_petri(&self) -> bool {
        self.petri
    }
}

/// The type (n, d, k) of a coherent system: rank, degree, number of sections.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CSType {
    n: Integer,
    d: Integer,
    k: Integer,
}

impl CSType {
    pub fn new(n: Integer, d: Integer, k: Integer) -> Result<Self, DomainError> {
        if n < Integer::one() {
            return Err(DomainError::InvalidRank(n));
        }
        if k.is_negative() {
            return Err(DomainError::InvalidSections(k));
        }
        Ok(CSType { n, d, k })
    }

    /// Convenience constructor from machine integers.
    pub fn of(n: i64, d: i64, k: i64) -> Result<Self, DomainError> {
        CSType::new(int(n), int(d), int(k))
    }

    pub fn rank(&self) -> &Integer {
        &self.n
    }

    pub fn degree(&self) -> &Integer {
        &self.d
    }

    pub fn sections(&self) -> &Integer {
        &self.k
    }
}

impl fmt::Display for CSType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n, self.d, self.k)
    }
}

/// Numerical data of a pair of coherent systems entering the Ext¹ dimension
/// formula: the two types plus user-supplied upper bounds for dim H⁰_jl and
/// dim H²_jl (the sheaf behind H² is represented only through its bound).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtPairData {
    t1: CSType,
    t2: CSType,
    h0_bound: Integer,
    h2_bound: Integer,
}

impl ExtPairData {
    pub fn new(
        t1: CSType,
        t2: CSType,
        h0_bound: Integer,
        h2_bound: Integer,
    ) -> Result<Self, DomainError> {
        if h0_bound.is_negative() {
            return Err(DomainError::NegativeBound(h0_bound));
        }
        if h2_bound.is_negative() {
            return Err(DomainError::NegativeBound(h2_bound));
        }
        Ok(ExtPairData {
            t1,
            t2,
            h0_bound,
            h2_bound,
        })
    }

    pub fn first(&self) -> &CSType {
        &self.t1
    }

    pub fn second(&self) -> &CSType {
        &self.t2
    }

    pub fn h0_bound(&self) -> &Integer {
        &self.h0_bound
    }

    pub fn h2_bound(&self) -> &Integer {
        &self.h2_bound
    }
}

/// An integer witness subtype (n₁, d₁, k₁) whose α-slope meets the ambient
/// slope at some candidate critical value.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubtypeWitness {
    pub n1: Integer,
    pub d1: Integer,
    pub k1: Integer,
}

impl fmt::Display for SubtypeWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.n1, self.d1, self.k1)
    }
}

/// A candidate critical value: an exact rational α > 0 together with every
/// integer witness subtype producing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalValueCandidate {
    alpha: Rational,
    witnesses: Vec<SubtypeWitness>,
}

impl CriticalValueCandidate {
    /// Validating constructor: each witness must satisfy 0 < n₁ < n,
    /// 0 ≤ k₁ ≤ k, and have α-slope exactly equal to the ambient slope at α.
    pub fn new(
        ambient: &CSType,
        alpha: Rational,
        mut witnesses: Vec<SubtypeWitness>,
    ) -> Result<Self, DomainError> {
        if !alpha.is_positive() {
            return Err(DomainError::WitnessSlopeMismatch);
        }
        let ambient_slope = alpha_slope(ambient, &alpha);
        for w in &witnesses {
            if !(w.n1.is_positive() && w.n1 < *ambient.rank())
                || w.k1.is_negative()
                || w.k1 > *ambient.sections()
            {
                return Err(DomainError::InvalidWitness);
            }
            let sub = CSType::new(w.n1.clone(), w.d1.clone(), w.k1.clone())?;
            if alpha_slope(&sub, &alpha) != ambient_slope {
                return Err(DomainError::WitnessSlopeMismatch);
            }
        }
        witnesses.sort();
        witnesses.dedup();
        Ok(CriticalValueCandidate { alpha, witnesses })
    }

    pub fn alpha(&self) -> &Rational {
        &self.alpha
    }

    pub fn witnesses(&self) -> &[SubtypeWitness] {
        &self.witnesses
    }
}

/// One row of the torsion-length stratification of the large-α moduli space.
///
/// `dim` is β for t = 0 and β − t for t ≥ 1; `irreducible` records the
/// strict-inequality criterion t < β/(n+1).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StratumRow {
    pub t: Integer,
    pub dim: Integer,
    pub irreducible: bool,
}

/// Output of [`canonical_flip`]: the canonical destabilizing pair at the top
/// critical value, the value itself, and the flip-locus dimension bound β−1.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalFlip {
    pub type1: CSType,
    pub type2: CSType,
    pub alpha: Rational,
    pub flip_dim_bound: Integer,
}

/// Brill-Noether number β(n,d,k) = n²(g−1) + 1 − k(k − d + n(g−1)).
pub fn beta(ctx: &CurveContext, t: &CSType) -> Integer {
    let g1 = ctx.genus() - int(1);
    let (n, d, k) = (t.rank(), t.degree(), t.sections());
    n * n * &g1 + int(1) - k * (k - d + n * &g1)
}

/// The k = n+1 specialization β(n,d,n+1) = g − (n+1)(n − d + g).
///
/// Agrees with [`beta`] at k = n+1 for all inputs.
pub fn beta_np1(ctx: &CurveContext, n: &Integer, d: &Integer) -> Result<Integer, DomainError> {
    if n < &Integer::one() {
        return Err(DomainError::InvalidRank(n.clone()));
    }
    Ok(ctx.genus() - (n + int(1)) * (n - d + ctx.genus()))
}

/// α-slope μ_α = d/n + α·k/n of a coherent system of type (n,d,k).
pub fn alpha_slope(t: &CSType, alpha: &Rational) -> Rational {
    let n = Rational::from_integer(t.rank().clone());
    let d = Rational::from_integer(t.degree().clone());
    let k = Rational::from_integer(t.sections().clone());
    d / &n + alpha * k / n
}

/// The top-critical-value threshold α_l = d(n−1) − n(n−1+g−[g/n]).
///
/// Also equal to (n−1)(d−g−n) − (g−n[g/n]) and to (n−1)(d−n) − n(g−[g/n]).
pub fn alpha_l(ctx: &CurveContext, n: &Integer, d: &Integer) -> Result<Integer, DomainError> {
    if n < &Integer::one() {
        return Err(DomainError::InvalidRank(n.clone()));
    }
    let g = ctx.genus();
    let fl = floor_div(g, n)?;
    Ok(d * (n - int(1)) - n * (n - int(1) + g - fl))
}

/// Minimum degree g+n−[g/(n+1)] of a generically generated system of type
/// (n,d,n+1) with H⁰(E'*) = 0; equivalently the least d with β ≥ 0.
pub fn min_degree_generated(ctx: &CurveContext, n: &Integer) -> Result<Integer, DomainError> {
    if n < &Integer::one() {
        return Err(DomainError::InvalidRank(n.clone()));
    }
    let g = ctx.genus();
    Ok(g + n - floor_div(g, &(n + int(1)))?)
}

/// f(r) = (g − [g/(r+1)])/r, weakly decreasing in r.
pub fn f_value(ctx: &CurveContext, r: &Integer) -> Result<Rational, DomainError> {
    if !r.is_positive() {
        return Err(DomainError::NonPositiveR(r.clone()));
    }
    let g = ctx.genus();
    let numer = g - floor_div(g, &(r + int(1)))?;
    rational(&numer, r)
}

/// Largest torsion length t₁ = d−g−n+[g/(n+1)] = [β/(n+1)] of the
/// stratification; defined only when β ≥ 0.
pub fn t_max(ctx: &CurveContext, n: &Integer, d: &Integer) -> Result<Integer, DomainError> {
    let b = beta_np1(ctx, n, d)?;
    if b.is_negative() {
        return Err(DomainError::NegativeBeta);
    }
    let g = ctx.genus();
    let t1 = d - g - n + floor_div(g, &(n + int(1)))?;
    debug_assert_eq!(t1, floor_div(&b, &(n + int(1))).unwrap());
    Ok(t1)
}

/// The full stratification table for type (n,d,n+1): rows t = 0..t₁ with
/// dim β for t = 0 and β − t for t ≥ 1, each flagged irreducible exactly
/// when t < β/(n+1) strictly.
pub fn stratification(
    ctx: &CurveContext,
    n: &Integer,
    d: &Integer,
) -> Result<Vec<StratumRow>, DomainError> {
    let b = beta_np1(ctx, n, d)?;
    if b.is_negative() {
        return Err(DomainError::NegativeBeta);
    }
    let t1 = t_max(ctx, n, d)?;
    let np1 = n + int(1);
    let mut rows = Vec::new();
    let mut t = Integer::zero();
    while t <= t1 {
        let dim = if t.is_zero() { b.clone() } else { &b - &t };
        // strict rational comparison t < β/(n+1), cleared of denominators
        let irreducible = &t * &np1 < b;
        rows.push(StratumRow {
            t: t.clone(),
            dim,
            irreducible,
        });
        t += 1;
    }
    Ok(rows)
}

/// Cardinality of the large-α moduli space when β = 0:
/// g!·∏_{i=0}^{n} i!/(g−d+n+i)!.
pub fn cardinality_beta_zero(
    ctx: &CurveContext,
    n: &Integer,
    d: &Integer,
) -> Result<Integer, DomainError> {
    let b = beta_np1(ctx, n, d)?;
    if !b.is_zero() {
        return Err(DomainError::BetaNotZero(b));
    }
    let g = ctx.genus();
    let base = g - d + n;
    if base.is_negative() {
        return Err(DomainError::NegativeFactorialArgument(base));
    }
    let mut numer = factorial(g)?;
    let mut denom = Integer::one();
    let mut i = Integer::zero();
    while i <= *n {
        numer *= factorial(&i)?;
        denom *= factorial(&(&base + &i))?;
        i += 1;
    }
    debug_assert!((&numer % &denom).is_zero());
    Ok(numer / denom)
}

/// Maximum number of sections of a line bundle of degree e on a curve of
/// genus g ≥ 1: 0 for e < 0, [e/2]+1 in the Clifford range 0 ≤ e ≤ 2g−2,
/// and the Riemann-Roch value e−g+1 for e > 2g−2.
pub fn clifford_h0_max(ctx: &CurveContext, e: &Integer) -> Result<Integer, DomainError> {
    let g = ctx.genus();
    if g < &Integer::one() {
        return Err(DomainError::GenusAtLeastOne);
    }
    if e.is_negative() {
        return Ok(Integer::zero());
    }
    if *e <= int(2) * g - int(2) {
        Ok(floor_div(e, &int(2))? + int(1))
    } else {
        Ok(e - g + int(1))
    }
}

/// Extension-count coefficient
/// C_jl = n_j·n_l(g−1) − n_j·d_l + n_l·d_j + k_j·d_l − k_j·n_l(g−1) − k_j·k_l.
///
/// Agrees with the second closed form
/// (k_j−n_j)(d_l−n_l(g−1)) + n_l·d_j − k_j·k_l for all inputs.
pub fn c_coeff(ctx: &CurveContext, tj: &CSType, tl: &CSType) -> Integer {
    let g1 = ctx.genus() - int(1);
    let (nj, dj, kj) = (tj.rank(), tj.degree(), tj.sections());
    let (nl, dl, kl) = (tl.rank(), tl.degree(), tl.sections());
    let first = nj * nl * &g1 - nj * dl + nl * dj + kj * dl - kj * nl * &g1 - kj * kl;
    debug_assert_eq!(first, (kj - nj) * (dl - nl * &g1) + nl * dj - kj * kl);
    first
}

/// dim Ext¹((E_j,V_j),(E_l,V_l)) = C_jl + dim H⁰_jl + dim H²_jl; an upper
/// bound when the H-fields are bounds.
pub fn ext1_dim(ctx: &CurveContext, pair: &ExtPairData) -> Integer {
    c_coeff(ctx, pair.first(), pair.second()) + pair.h0_bound() + pair.h2_bound()
}

/// Degree d₂ = g+n−1−[g/n] of the canonical destabilizing quotient at α_l.
fn canonical_quotient_degree(ctx: &CurveContext, n: &Integer) -> Result<Integer, DomainError> {
    let g = ctx.genus();
    Ok(g + n - int(1) - floor_div(g, n)?)
}

/// The canonical flip at the top critical value, defined when α_l > 0:
/// the destabilizing pair has types (1, d−d₂, 1) and (n−1, d₂, n) with
/// d₂ = g+n−1−[g/n], the two α_l-slopes agree exactly, and the flip loci
/// have dimension at most β−1.
pub fn canonical_flip(
    ctx: &CurveContext,
    n: &Integer,
    d: &Integer,
) -> Result<CanonicalFlip, DomainError> {
    let al = alpha_l(ctx, n, d)?;
    if !al.is_positive() {
        return Err(DomainError::NoTopFlip);
    }
    // α_l > 0 forces n ≥ 2, so both ranks below are valid
    let d2 = canonical_quotient_degree(ctx, n)?;
    let type2 = CSType::new(n - int(1), d2.clone(), n.clone())?;
    let type1 = CSType::new(int(1), d - &d2, int(1))?;
    let alpha = Rational::from_integer(al);
    let k = n + int(1);
    let ambient = CSType::new(n.clone(), d.clone(), k)?;
    debug_assert_eq!(alpha_slope(&type1, &alpha), alpha_slope(&type2, &alpha));
    debug_assert_eq!(alpha_slope(&type1, &alpha), alpha_slope(&ambient, &alpha));
    let flip_dim_bound = beta_np1(ctx, n, d)? - int(1);
    Ok(CanonicalFlip {
        type1,
        type2,
        alpha,
        flip_dim_bound,
    })
}

/// All candidate critical values of type (n, d, n+1), sorted ascending.
///
/// A candidate is a rational α = (n₁d − n·d₁)/(n·k₁ − n₁·k), k = n+1, over
/// witnesses 0 < n₁ < n, 0 ≤ k₁ ≤ n+1 with n·k₁ ≠ n₁·k and d₁ any integer
/// putting α in (0, max(0, α_l)]. Values above α_l are provably not critical,
/// so the enumeration caps there; the output is a superset of the actual
/// critical values and only the top one (α_l itself, which always appears
/// when α_l > 0) is certified actual. All witnesses per value are retained.
pub fn critical_value_candidates(
    ctx: &CurveContext,
    n: &Integer,
    d: &Integer,
) -> Result<Vec<CriticalValueCandidate>, DomainError> {
    if n < &Integer::one() {
        return Err(DomainError::InvalidRank(n.clone()));
    }
    if n.is_one() {
        // rank-1 systems are α-stable for every α > 0: no critical values
        return Ok(Vec::new());
    }
    let cap = alpha_l(ctx, n, d)?;
    if !cap.is_positive() {
        return Ok(Vec::new());
    }
    let k = n + int(1);
    let ambient = CSType::new(n.clone(), d.clone(), k.clone())?;
    let mut by_value: BTreeMap<Rational, Vec<SubtypeWitness>> = BTreeMap::new();

    let mut n1 = Integer::one();
    while n1 < *n {
        let mut k1 = Integer::zero();
        while k1 <= k {
            let disc = n * &k1 - &n1 * &k;
            if !disc.is_zero() {
                let top = &n1 * d; // α = (top − n·d₁)/disc
                let (lo, hi) = if disc.is_positive() {
                    // 0 < α: d₁ < top/n;  α ≤ cap: d₁ ≥ (top − cap·disc)/n
                    let hi = floor_div(&(&top - int(1)), n)?;
                    let lo = ceil_div(&(&top - &cap * &disc), n)?;
                    (lo, hi)
                } else {
                    // 0 < α: d₁ > top/n;  α ≤ cap: d₁ ≤ (top − cap·disc)/n
                    let lo = floor_div(&top, n)? + int(1);
                    let hi = floor_div(&(&top - &cap * &disc), n)?;
                    (lo, hi)
                };
                let mut d1 = lo;
                while d1 <= hi {
                    let alpha = rational(&(&top - n * &d1), &disc)?;
                    debug_assert!(alpha.is_positive());
                    by_value.entry(alpha).or_default().push(SubtypeWitness {
                        n1: n1.clone(),
                        d1: d1.clone(),
                        k1: k1.clone(),
                    });
                    d1 += 1;
                }
            }
            k1 += 1;
        }
        n1 += 1;
    }

    let mut out = Vec::with_capacity(by_value.len());
    for (alpha, witnesses) in by_value {
        out.push(CriticalValueCandidate::new(&ambient, alpha, witnesses)?);
    }
    debug_assert!(
        out.last()
            .map(|c| *c.alpha() == Rational::from_integer(cap.clone()))
            .unwrap_or(false),
        "the top candidate must be α_l"
    );
    Ok(out)
}

/// Type of the dual span M*_{V,ℒ} of a generated coherent system (ℒ, V) of
/// type (1, d, n+1): rank n, degree d, n+1 sections.
pub fn dual_span_type(n: &Integer, d: &Integer) -> Result<CSType, DomainError> {
    if n < &Integer::one() {
        return Err(DomainError::InvalidRank(n.clone()));
    }
    if !d.is_positive() {
        return Err(DomainError::NonPositiveDegree(d.clone()));
    }
    CSType::new(n.clone(), d.clone(), n + int(1))
}

/// Least degree d₀ with U^s(n,d₀,n+1) ≠ ∅ by the direct-sum construction:
/// n(g+3)/2 for odd g, n(g+2)/2 for even g.
pub fn us_existence_degree(ctx: &CurveContext, n: &Integer) -> Result<Integer, DomainError> {
    if n < &Integer::one() {
        return Err(DomainError::InvalidRank(n.clone()));
    }
    let g = ctx.genus();
    let shift = if (g % int(2)).is_zero() { 2 } else { 3 };
    floor_div(&(n * (g + int(shift))), &int(2))
}

/// Threshold d₁ beyond which U(n,d,n+1) ≠ ∅ by elementary transformations:
/// n(g+3)/2 + 1 for odd g; n(g+2)/2 + 1 for even g when
/// n ≤ g!/((g/2)!(g/2+1)!), else n(g+4)/2 + 1.
pub fn u_existence_degree(ctx: &CurveContext, n: &Integer) -> Result<Integer, DomainError> {
    if n < &Integer::one() {
        return Err(DomainError::InvalidRank(n.clone()));
    }
    let g = ctx.genus();
    if (g % int(2)).is_zero() {
        let half = floor_div(g, &int(2))?;
        let bound = factorial(g)? / (factorial(&half)? * factorial(&(&half + int(1)))?);
        let shift = if *n <= bound { 2 } else { 4 };
        Ok(floor_div(&(n * (g + int(shift))), &int(2))? + int(1))
    } else {
        Ok(floor_div(&(n * (g + int(3))), &int(2))? + int(1))
    }
}
