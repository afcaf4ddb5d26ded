//! Shared test support: an independent brute-force oracle for critical
//! values and a few small helpers. The oracle deliberately avoids the
//! library's enumeration path: it scans the whole witness box and keeps the
//! slope-equality solutions, verifying each with an exact big-rational slope
//! computation of its own.

use std::collections::{BTreeMap, BTreeSet};

use coherent_systems::arith::{int, Integer, Rational};

pub type WitnessSet = BTreeSet<(i64, i64, i64)>;
pub type CandidateMap = BTreeMap<(i64, i64), WitnessSet>;

/// μ_α computed from scratch (not via the library).
pub fn slope_of(n: i64, d: i64, k: i64, alpha: &Rational) -> Rational {
    Rational::new(int(d), int(n)) + alpha * Rational::new(int(k), int(n))
}

/// α_l computed from scratch; valid for g ≥ 0, n ≥ 1.
pub fn alpha_l_of(g: i64, n: i64, d: i64) -> i64 {
    d * (n - 1) - n * (n - 1 + g - g / n)
}

/// Brute-force scan over all (n₁, k₁, d₁) with |d₁| ≤ |d| + n·(α_l+1),
/// solving the slope-equality equation for α exactly and keeping solutions
/// in (0, α_l]. Returns reduced (p, q) → witness set.
pub fn brute_force_candidates(g: i64, n: i64, d: i64) -> CandidateMap {
    let mut out = CandidateMap::new();
    if n <= 1 {
        return out;
    }
    let k = n + 1;
    let cap = alpha_l_of(g, n, d).max(0);
    if cap == 0 {
        return out;
    }
    let d1_bound = d.abs() + n * (cap + 1);
    for n1 in 1..n {
        for k1 in 0..=k {
            let den = n * k1 - n1 * k;
            if den == 0 {
                continue;
            }
            for d1 in -d1_bound..=d1_bound {
                let num = n1 * d - n * d1; // slope equality solves to α = num/den
                if num.signum() * den.signum() != 1 {
                    continue; // α ≤ 0
                }
                if num.abs() > cap * den.abs() {
                    continue; // α > α_l
                }
                let alpha = Rational::new(int(num), int(den));
                assert_eq!(
                    slope_of(n1, d1, k1, &alpha),
                    slope_of(n, d, k, &alpha),
                    "oracle solution must satisfy exact slope equality"
                );
                let gcd = num::integer::gcd(num.abs(), den.abs());
                let (mut p, mut q) = (num / gcd, den / gcd);
                if q < 0 {
                    p = -p;
                    q = -q;
                }
                out.entry((p, q)).or_default().insert((n1, d1, k1));
            }
        }
    }
    out
}

/// Converts the library's candidate list into the oracle's representation.
pub fn candidates_as_map(
    list: &[coherent_systems::invariants::CriticalValueCandidate],
) -> CandidateMap {
    let mut out = CandidateMap::new();
    for c in list {
        let p = as_i64(c.alpha().numer());
        let q = as_i64(c.alpha().denom());
        let set: WitnessSet = c
            .witnesses()
            .iter()
            .map(|w| (as_i64(&w.n1), as_i64(&w.d1), as_i64(&w.k1)))
            .collect();
        let prev = out.insert((p, q), set);
        assert!(prev.is_none(), "duplicate α in candidate list");
    }
    out
}

pub fn as_i64(v: &Integer) -> i64 {
    i64::try_from(v).expect("test value fits in i64")
}
