//! Property suites for the closed-form invariants, checked against
//! independent oracles and the identities the formulas must satisfy.

mod common;

use coherent_systems::arith::{int, rat_cmp, rational, Integer, Rational};
use coherent_systems::invariants::*;
use common::{alpha_l_of, as_i64, brute_force_candidates, candidates_as_map, slope_of};
use num::{One, Signed, Zero};
use proptest::prelude::*;

fn petri(g: i64) -> CurveContext {
    CurveContext::petri(g).unwrap()
}

proptest! {
    /// β(n,d,n+1) from the k = n+1 closed form equals the general formula.
    #[test]
    fn beta_specialization_agrees(g in 0i64..=40, n in 1i64..=10, d in -60i64..=60) {
        let ctx = petri(g);
        let t = CSType::of(n, d, n + 1).unwrap();
        prop_assert_eq!(beta_np1(&ctx, &int(n), &int(d)).unwrap(), beta(&ctx, &t));
    }

    /// The three closed forms of α_l agree.
    #[test]
    fn alpha_l_three_forms(g in 0i64..=40, n in 1i64..=10, d in -60i64..=60) {
        let ctx = petri(g);
        let al = alpha_l(&ctx, &int(n), &int(d)).unwrap();
        let floor_gn = g / n;
        let form2 = (n - 1) * (d - g - n) - (g - n * floor_gn);
        let form3 = (n - 1) * (d - n) - n * (g - floor_gn);
        prop_assert_eq!(&al, &int(form2));
        prop_assert_eq!(&al, &int(form3));
    }

    /// β ≥ 0 ⇔ d ≥ g+n−[g/(n+1)] ⇔ (n+1)d ≥ ng + n(n+1).
    #[test]
    fn degree_bound_equivalence(g in 0i64..=40, n in 1i64..=10, d in -60i64..=60) {
        let ctx = petri(g);
        let b = beta_np1(&ctx, &int(n), &int(d)).unwrap();
        let lower = min_degree_generated(&ctx, &int(n)).unwrap();
        prop_assert_eq!(!b.is_negative(), int(d) >= lower);
        prop_assert_eq!(!b.is_negative(), (n + 1) * d >= n * g + n * (n + 1));
    }

    /// t₁ = d−g−n+[g/(n+1)] = [β/(n+1)] whenever β ≥ 0.
    #[test]
    fn t1_identity(g in 0i64..=40, n in 1i64..=10, d in -60i64..=60) {
        let ctx = petri(g);
        let b = beta_np1(&ctx, &int(n), &int(d)).unwrap();
        if !b.is_negative() {
            let t1 = t_max(&ctx, &int(n), &int(d)).unwrap();
            prop_assert_eq!(&t1, &int(d - g - n + g / (n + 1)));
            prop_assert_eq!(
                t1,
                coherent_systems::arith::floor_div(&b, &int(n + 1)).unwrap()
            );
        } else {
            prop_assert!(t_max(&ctx, &int(n), &int(d)).is_err());
        }
    }

    /// f is weakly decreasing in r.
    #[test]
    fn f_monotone(g in 1i64..=60, r in 1i64..=30) {
        let ctx = petri(g);
        let a = f_value(&ctx, &int(r)).unwrap();
        let b = f_value(&ctx, &int(r + 1)).unwrap();
        prop_assert!(rat_cmp(&a, &b) != std::cmp::Ordering::Less);
    }

    /// The two displayed forms of C_jl agree on arbitrary type pairs.
    #[test]
    fn c_coeff_two_forms(
        g in 0i64..=40,
        nj in 1i64..=8, dj in -30i64..=30, kj in 0i64..=9,
        nl in 1i64..=8, dl in -30i64..=30, kl in 0i64..=9,
    ) {
        let ctx = petri(g);
        let tj = CSType::of(nj, dj, kj).unwrap();
        let tl = CSType::of(nl, dl, kl).unwrap();
        let second = (kj - nj) * (dl - nl * (g - 1)) + nl * dj - kj * kl;
        prop_assert_eq!(c_coeff(&ctx, &tj, &tl), int(second));
    }

    /// Rationals constructed from any (p,q) are normalized and compare
    /// structurally.
    #[test]
    fn rational_normalization(p in -400i64..=400, q in -40i64..=40, m in 1i64..=9) {
        prop_assume!(q != 0);
        let a = rational(&int(p), &int(q)).unwrap();
        let b = rational(&int(p * m), &int(q * m)).unwrap();
        prop_assert_eq!(&a, &b);
        prop_assert!(a.denom().is_positive());
        prop_assert!(num::integer::gcd(a.numer().abs(), a.denom().clone()).is_one()
            || a.numer().is_zero());
    }

    /// Stratification rows: t₁+1 rows, dims β, β−1, …, β−t₁, strictly
    /// decreasing, irreducible exactly when t(n+1) < β.
    #[test]
    fn stratification_shape(g in 0i64..=25, n in 1i64..=8, d in 0i64..=60) {
        let ctx = petri(g);
        let b = beta_np1(&ctx, &int(n), &int(d)).unwrap();
        prop_assume!(!b.is_negative());
        let rows = stratification(&ctx, &int(n), &int(d)).unwrap();
        let t1 = t_max(&ctx, &int(n), &int(d)).unwrap();
        prop_assert_eq!(int(rows.len() as i64 - 1), t1.clone());
        for (i, row) in rows.iter().enumerate() {
            prop_assert_eq!(&row.t, &int(i as i64));
            prop_assert_eq!(&row.dim, &(&b - &row.t));
            prop_assert_eq!(row.irreducible, &row.t * int(n + 1) < b);
        }
        // the last row still has positive dimension when β > 0 and t₁ ≥ 1
        if b.is_positive() && !t1.is_zero() {
            prop_assert!(rows.last().unwrap().dim.is_positive());
        }
    }

    /// The canonical flip: slope identity at α_l, the witness shapes, and the
    /// β−1 bound.
    #[test]
    fn canonical_flip_slope_identity(g in 0i64..=30, n in 2i64..=10, d in -20i64..=80) {
        let ctx = petri(g);
        let al = alpha_l(&ctx, &int(n), &int(d)).unwrap();
        if al.is_positive() {
            let flip = canonical_flip(&ctx, &int(n), &int(d)).unwrap();
            let alpha = Rational::from_integer(al);
            prop_assert_eq!(&flip.alpha, &alpha);
            prop_assert_eq!(
                alpha_slope(&flip.type1, &alpha),
                alpha_slope(&flip.type2, &alpha)
            );
            let d2 = g + n - 1 - g / n;
            prop_assert_eq!(flip.type2, CSType::of(n - 1, d2, n).unwrap());
            prop_assert_eq!(flip.type1, CSType::of(1, d - d2, 1).unwrap());
            let b = beta_np1(&ctx, &int(n), &int(d)).unwrap();
            prop_assert_eq!(flip.flip_dim_bound, b - int(1));
        } else {
            prop_assert!(canonical_flip(&ctx, &int(n), &int(d)).is_err());
        }
    }

    /// Closed-form critical-value enumeration equals the brute-force box
    /// scan, witness for witness.
    #[test]
    fn critical_values_match_oracle(g in 0i64..=10, n in 1i64..=5, d in 0i64..=30) {
        let ctx = petri(g);
        let got = critical_value_candidates(&ctx, &int(n), &int(d)).unwrap();
        prop_assert_eq!(candidates_as_map(&got), brute_force_candidates(g, n, d));
    }

    /// Whenever α_l > 0: the top candidate is α_l and one of its witnesses is
    /// the canonical flip subtype (1, d−d₂, 1).
    #[test]
    fn top_candidate_is_alpha_l(g in 0i64..=12, n in 2i64..=6, d in 0i64..=40) {
        let ctx = petri(g);
        let al = alpha_l_of(g, n, d);
        let got = critical_value_candidates(&ctx, &int(n), &int(d)).unwrap();
        if al > 0 {
            let top = got.last().expect("α_l > 0 forces a nonempty candidate list");
            prop_assert_eq!(top.alpha(), &Rational::from_integer(int(al)));
            let d2 = g + n - 1 - g / n;
            prop_assert!(top
                .witnesses()
                .iter()
                .any(|w| w.n1 == int(1) && w.d1 == int(d - d2) && w.k1 == int(1)));
        } else {
            prop_assert!(got.is_empty());
        }
    }

    /// Every enumerated witness is inside the declared bounds and has exact
    /// slope equality at its value.
    #[test]
    fn candidate_witnesses_are_valid(g in 0i64..=10, n in 2i64..=5, d in 0i64..=30) {
        let ctx = petri(g);
        for cand in critical_value_candidates(&ctx, &int(n), &int(d)).unwrap() {
            prop_assert!(cand.alpha().is_positive());
            for w in cand.witnesses() {
                let (n1, d1, k1) = (as_i64(&w.n1), as_i64(&w.d1), as_i64(&w.k1));
                prop_assert!(0 < n1 && n1 < n);
                prop_assert!(0 <= k1 && k1 <= n + 1);
                prop_assert_eq!(
                    slope_of(n1, d1, k1, cand.alpha()),
                    slope_of(n, d, n + 1, cand.alpha())
                );
            }
        }
    }

    /// Cardinality is ≥ 1 wherever defined. β = 0 forces (n+1) | g, so the
    /// β = 0 points are generated directly as g = m(n+1).
    #[test]
    fn cardinality_positive(m in 0i64..=15, n in 1i64..=12) {
        let g = m * (n + 1);
        prop_assume!(g <= 30);
        let d = n * (g + n + 1) / (n + 1);
        let ctx = petri(g);
        let count = cardinality_beta_zero(&ctx, &int(n), &int(d)).unwrap();
        prop_assert!(count >= Integer::one());
    }

    /// Factorials grow without silent overflow at the magnitudes the genus
    /// box reaches.
    #[test]
    fn factorial_magnitude(m in 150i64..=220) {
        let f = coherent_systems::arith::factorial(&int(m)).unwrap();
        let f_prev = coherent_systems::arith::factorial(&int(m - 1)).unwrap();
        prop_assert_eq!(f, f_prev * int(m));
    }
}

#[test]
fn dual_span_is_definitional() {
    for n in 1..=10i64 {
        for d in 1..=30i64 {
            assert_eq!(
                dual_span_type(&int(n), &int(d)).unwrap(),
                CSType::of(n, d, n + 1).unwrap()
            );
        }
    }
    assert!(dual_span_type(&int(3), &int(-1)).is_err());
}

#[test]
fn critical_values_empty_cases() {
    // α_l = 0 and rank 1 both give empty candidate lists
    assert!(critical_value_candidates(&petri(2), &int(2), &int(4))
        .unwrap()
        .is_empty());
    for d in 0..20 {
        assert!(critical_value_candidates(&petri(5), &int(1), &int(d))
            .unwrap()
            .is_empty());
    }
}
