//! Properties of the decision engine: soundness guards, promotion and shift
//! monotonicity, mode monotonicity, provenance completeness, determinism.

use coherent_systems::arith::int;
use coherent_systems::decision::{
    decide, rule_inventory, solve_table, special_emptiness, sweep, Mode, RuleSet, Status, Target,
    Verdict,
};
use coherent_systems::invariants::{beta_np1, CSType, CurveContext};
use num::Signed;
use proptest::prelude::*;

const TARGETS: [Target; 4] = [Target::Gl, Target::U, Target::Us, Target::B];

/// Section/theorem anchors of the rule inventory; every provenance citation
/// must contain one of them.
const ANCHORS: [&str; 21] = [
    "Prop. 6.1",
    "Thm. 3.1",
    "§1",
    "§8",
    "Thm. 8.1",
    "Thm. 8.2",
    "Thm. 8.3",
    "Prop. 6.4",
    "Prop. 6.5",
    "Prop. 6.6",
    "Prop. 6.7",
    "Props. 6.8",
    "Remark 2.2",
    "Remark 2.3",
    "Thm. 7.1",
    "Thm. 7.2",
    "Thm. 7.3",
    "Remark 8.5",
    "Remark 7.5",
    "§6",
    "§9",
];

fn petri(g: i64) -> CurveContext {
    CurveContext::petri(g).unwrap()
}

fn check_provenance(v: &Verdict) {
    if v.status != Status::Open {
        assert!(
            !v.provenance.is_empty(),
            "every NONEMPTY/EMPTY verdict carries at least one citation"
        );
    }
    for step in &v.provenance {
        assert!(
            ANCHORS.iter().any(|a| step.citation.contains(a)),
            "citation lacks an inventory anchor: {}",
            step.citation
        );
    }
}

#[test]
fn soundness_monotonicity_and_provenance_over_box() {
    // moderate box here; the acceptance suite runs the full spec box
    for mode in [Mode::Full, Mode::NoBlanket] {
        let rules = RuleSet::for_mode(mode);
        let full = RuleSet::full();
        for g in 0..=12i64 {
            let ctx = petri(g);
            for n in 1..=6i64 {
                let table = solve_table(&ctx, &int(n), &int(-5), &int(50), &rules).unwrap();
                let full_table = solve_table(&ctx, &int(n), &int(-5), &int(50), &full).unwrap();
                for d in -5..=50i64 {
                    let b = beta_np1(&ctx, &int(n), &int(d)).unwrap();
                    let verdicts: Vec<Verdict> =
                        TARGETS.iter().map(|t| table.verdict_at(*t, d)).collect();
                    for v in &verdicts {
                        check_provenance(v);
                        if b.is_negative() && g >= 2 {
                            assert_ne!(v.status, Status::Nonempty, "g={g} n={n} d={d}");
                        }
                    }
                    // Thm. 3.1: GL is never EMPTY at β ≥ 0 for g ≥ 2
                    if !b.is_negative() && g >= 2 {
                        assert_ne!(table.verdict_at(Target::Gl, d).status, Status::Empty);
                    }
                    // promotion monotonicity
                    if table.verdict_at(Target::U, d).status == Status::Nonempty {
                        assert_eq!(table.verdict_at(Target::Us, d).status, Status::Nonempty);
                        assert_eq!(table.verdict_at(Target::B, d).status, Status::Nonempty);
                    }
                    // shift monotonicity
                    if d + n <= 50 {
                        for t in TARGETS {
                            if table.verdict_at(t, d).status == Status::Nonempty {
                                assert_eq!(
                                    table.verdict_at(t, d + n).status,
                                    Status::Nonempty,
                                    "shift fails at g={g} n={n} d={d} {t}"
                                );
                            }
                        }
                    }
                    // mode monotonicity
                    for t in TARGETS {
                        if table.verdict_at(t, d).status == Status::Nonempty {
                            assert_eq!(full_table.verdict_at(t, d).status, Status::Nonempty);
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn full_mode_has_no_open_cells_for_small_rank() {
    for g in 3..=14i64 {
        let ctx = petri(g);
        for n in 1..=4i64 {
            let table = solve_table(&ctx, &int(n), &int(0), &int(60), &RuleSet::full()).unwrap();
            for d in 0..=60i64 {
                let b = beta_np1(&ctx, &int(n), &int(d)).unwrap();
                if !b.is_negative() {
                    assert_eq!(
                        table.verdict_at(Target::U, d).status,
                        Status::Nonempty,
                        "g={g} n={n} d={d}"
                    );
                }
            }
        }
    }
}

#[test]
fn determinism_repeated_and_concurrent() {
    let rules = RuleSet::full();
    let query = || decide(&petri(5), &int(3), &int(14), Target::U, &rules).unwrap();
    let base = query();
    for _ in 0..3 {
        assert_eq!(base, query());
    }
    let handles: Vec<_> = (0..8)
        .map(|_| {
            std::thread::spawn(|| {
                decide(&petri(5), &int(3), &int(14), Target::U, &RuleSet::full()).unwrap()
            })
        })
        .collect();
    for h in handles {
        assert_eq!(base, h.join().unwrap());
    }
    // sweeps are deterministic too (parallel evaluation, ordered merge)
    let s1 = sweep(true, (0, 8), (1, 5), (0, 30), Target::Us, &rules).unwrap();
    let s2 = sweep(true, (0, 8), (1, 5), (0, 30), Target::Us, &rules).unwrap();
    assert_eq!(s1.len(), s2.len());
    for (a, b) in s1.iter().zip(s2.iter()) {
        assert_eq!((a.genus, a.rank, a.degree), (b.genus, b.rank, b.degree));
        assert_eq!(a.verdict, b.verdict);
        assert_eq!(a.beta, b.beta);
    }
}

#[test]
fn open_cells_report_nearest_exception() {
    // Thm. 8.3 exception at g=3: d = 2n+2
    for n in 5..=8i64 {
        let v = decide(
            &petri(3),
            &int(n),
            &int(2 * n + 2),
            Target::U,
            &RuleSet::full(),
        )
        .unwrap();
        assert_eq!(v.status, Status::Open);
        assert!(v.provenance[0].citation.contains("Thm. 8.3"));
    }
    // Remark 8.5 exceptions at g=4
    let v = decide(&petri(4), &int(6), &int(14), Target::U, &RuleSet::full()).unwrap();
    assert_eq!(v.status, Status::Open);
    assert!(v.provenance[0].citation.contains("Remark 8.5"));
}

#[test]
fn rule_inventory_is_complete() {
    let inv = rule_inventory();
    let ids: Vec<&str> = inv.iter().map(|r| r.id).collect();
    for required in [
        "R-EMPTY-BETA",
        "R-GL",
        "R-RANK1",
        "R-G0",
        "R-G1",
        "R-G2",
        "R-WINDOW",
        "R-BIGG",
        "R-D1",
        "R-MOD",
        "R-TENSOR",
        "R-INTERVAL",
        "R-N234",
        "R-G3HI",
        "R-G45HI",
        "R-SPECIAL",
        "R-EXT",
        "R-PROMOTE-US",
        "R-PROMOTE-B",
    ] {
        assert!(ids.contains(&required), "missing rule {required}");
    }
    for info in &inv {
        assert!(
            ANCHORS.iter().any(|a| info.citation.contains(a)),
            "rule {} citation lacks an anchor",
            info.id
        );
    }
}

#[test]
fn special_fact_is_gated_on_genus_and_type() {
    let t = CSType::of(3, 7, 5).unwrap();
    for g in 3..=10i64 {
        let v = special_emptiness(&petri(g), &t).unwrap();
        assert_eq!(v.status, Status::Empty);
    }
    assert!(special_emptiness(&petri(2), &t).is_none());
    let not_petri = CurveContext::new(int(5), false).unwrap();
    assert!(special_emptiness(&not_petri, &t).is_none());
}

proptest! {
    /// Arbitrary queries in the box never conflict and always carry valid
    /// provenance; repeated evaluation is identical.
    #[test]
    fn decide_total_and_deterministic(
        g in 0i64..=15,
        n in 1i64..=7,
        d in -10i64..=60,
        t in 0usize..4,
        blanket in proptest::bool::ANY,
    ) {
        let rules = if blanket { RuleSet::full() } else { RuleSet::no_blanket() };
        let target = TARGETS[t];
        let v1 = decide(&petri(g), &int(n), &int(d), target, &rules).unwrap();
        let v2 = decide(&petri(g), &int(n), &int(d), target, &rules).unwrap();
        prop_assert_eq!(&v1, &v2);
        check_provenance(&v1);
    }
}
