//! The rule registry: every theorem the engine can cite, one strategy per
//! rule behind a common trait.
//!
//! Rules come in two flavours. Direct rules look at a single (g, n, d) cell
//! and emit NONEMPTY/EMPTY facts (or an OPEN annotation carrying the
//! matching exception citation). Closure rules propagate facts across the degree grid
//! (tensoring by effective line bundles, the mod-±1 elementary
//! transformations, interval filling, and the U→U^s / U→B promotions) and are
//! iterated to a fixed point by the engine.
//!
//! The registry order is fixed; together with ascending-degree iteration it
//! makes verdicts and provenance chains fully deterministic.

use num::{BigInt, One};

use crate::arith::int;
use crate::decision::{CellFact, FactStatus, FactTable, OpenNote, ProvenanceStep, Target};

/// Immutable per-query environment: the curve data and a few derived
/// thresholds, precomputed once per (g, n) grid.
#[derive(Debug, Clone)]
pub(crate) struct Env {
    pub g: i64,
    pub n: i64,
    pub petri: bool,
    /// g+n−[g/(n+1)], the least degree with β ≥ 0.
    pub min_degree: i64,
    /// d₀ of the direct-sum construction (U^s existence).
    pub d0: i128,
    /// d₁ threshold for U existence by elementary transformations.
    pub d1: i128,
}

impl Env {
    pub(crate) fn new(g: i64, n: i64, petri: bool) -> Env {
        let gi = g as i128;
        let ni = n as i128;
        let min_degree = g + n - g / (n + 1);
        let (d0, d1) = if g % 2 == 1 {
            (ni * (gi + 3) / 2, ni * (gi + 3) / 2 + 1)
        } else {
            let shift = if n_at_most_catalan_bound(g, n) { 2 } else { 4 };
            (ni * (gi + 2) / 2, ni * (gi + shift) / 2 + 1)
        };
        Env {
            g,
            n,
            petri,
            min_degree,
            d0,
            d1,
        }
    }

    pub(crate) fn beta(&self, d: i64) -> i128 {
        let (g, n, d) = (self.g as i128, self.n as i128, d as i128);
        (n + 1) * d - n * (g + n + 1)
    }
}

/// Whether n ≤ g!/((g/2)!(g/2+1)!) for even g, evaluated with exact big
/// integers. The bound is the Catalan number C_{g/2}; it is computed
/// incrementally and the loop exits as soon as it exceeds n.
fn n_at_most_catalan_bound(g: i64, n: i64) -> bool {
    debug_assert!(g % 2 == 0 && g >= 0);
    let target = g / 2;
    let n_big = BigInt::from(n);
    let mut c = BigInt::one(); // C_1 = 1 (also C_0 = 1 for g = 0)
    let mut m = 1i64;
    while m < target {
        if c > n_big {
            return true; // Catalan numbers increase, so the bound only grows
        }
        c = c * int(2 * (2 * m + 1)) / int(m + 2);
        m += 1;
    }
    n_big <= c
}

pub(crate) struct RuleOutput {
    pub facts: Vec<CellFact>,
    pub notes: Vec<OpenNote>,
}

impl RuleOutput {
    pub(crate) fn new() -> Self {
        RuleOutput {
            facts: Vec::new(),
            notes: Vec::new(),
        }
    }

    fn fact(
        &mut self,
        target: Target,
        d: i64,
        status: FactStatus,
        rule: &'static str,
        citation: String,
        premises: Vec<String>,
    ) {
        self.facts.push(CellFact {
            target,
            d,
            status,
            chain: vec![ProvenanceStep {
                rule,
                citation,
                premises,
            }],
        });
    }

    fn derived(
        &mut self,
        target: Target,
        d: i64,
        base_chain: &[ProvenanceStep],
        rule: &'static str,
        citation: String,
        premises: Vec<String>,
    ) {
        let mut chain = base_chain.to_vec();
        chain.push(ProvenanceStep {
            rule,
            citation,
            premises,
        });
        self.facts.push(CellFact {
            target,
            d,
            status: FactStatus::Nonempty,
            chain,
        });
    }

    fn note(&mut self, target: Target, d: i64, rule: &'static str, citation: String) {
        self.notes.push(OpenNote {
            target,
            d,
            step: ProvenanceStep {
                rule,
                citation,
                premises: Vec::new(),
            },
        });
    }
}

/// A single inference rule: an id, the citation it carries, and either a
/// per-cell derivation or a grid propagation.
pub(crate) trait Rule: Sync {
    fn id(&self) -> &'static str;
    fn citation(&self) -> &'static str;
    fn direct(&self, _env: &Env, _d: i64, _out: &mut RuleOutput) {}
    fn propagate(&self, _env: &Env, _table: &FactTable, _out: &mut RuleOutput) {}
}

/// Identifier and citation of one registered rule.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleInfo {
    pub id: &'static str,
    pub citation: &'static str,
}

/// The full registry, in application order.
pub(crate) fn registry() -> &'static [&'static dyn Rule] {
    &[
        &Rank1,
        &Genus0,
        &Genus1,
        &Genus2,
        &EmptyBeta,
        &LargeAlpha,
        &Window,
        &BigGenus,
        &DegreeThreshold,
        &N234,
        &ExtensionCount,
        &Genus3High,
        &Genus45High,
        &SpecialFacts,
        &ModPlusMinusOne,
        &Tensor,
        &Interval,
        &PromoteUs,
        &PromoteB,
    ]
}

/// Ids and citations of every registered rule, in application order.
pub fn rule_inventory() -> Vec<RuleInfo> {
    registry()
        .iter()
        .map(|r| RuleInfo {
            id: r.id(),
            citation: r.citation(),
        })
        .collect()
}

const ALL_TARGETS: [Target; 4] = [Target::Gl, Target::U, Target::Us, Target::B];

// ---------------------------------------------------------------------------
// direct rules
// ---------------------------------------------------------------------------

/// n = 1: every coherent system is α-stable, so all four spaces reduce to the
/// classical variety of linear systems, non-empty iff β ≥ 0.
struct Rank1;

impl Rule for Rank1 {
    fn id(&self) -> &'static str {
        "R-RANK1"
    }
    fn citation(&self) -> &'static str {
        "§1: for n = 1 all coherent systems are α-stable and G(α;1,d,2) coincides with the classical variety of linear systems"
    }
    fn direct(&self, env: &Env, d: i64, out: &mut RuleOutput) {
        if env.n != 1 {
            return;
        }
        let b = env.beta(d);
        if b >= 0 {
            for t in ALL_TARGETS {
                out.fact(
                    t,
                    d,
                    FactStatus::Nonempty,
                    self.id(),
                    "§1: classical Brill-Noether existence, G(1,d,2) ≠ ∅ iff β ≥ 0".into(),
                    vec![format!("n = 1"), format!("β = {b} ≥ 0")],
                );
            }
        } else if env.petri || env.g <= 2 {
            // the emptiness direction is the Gieseker-Petri theorem
            for t in ALL_TARGETS {
                out.fact(
                    t,
                    d,
                    FactStatus::Empty,
                    self.id(),
                    "§1: classical Brill-Noether on a Petri curve, G(1,d,2) = ∅ when β < 0".into(),
                    vec![format!("n = 1"), format!("β = {b} < 0")],
                );
            }
        }
    }
}

/// Genus 0: no stable bundles of rank ≥ 2; semistable bundles exist only
/// when n divides d, and then U^s ≠ ∅ iff d ≥ n (equivalently β ≥ 0).
struct Genus0;

impl Rule for Genus0 {
    fn id(&self) -> &'static str {
        "R-G0"
    }
    fn citation(&self) -> &'static str {
        "§8: on genus 0 there exist no stable bundles of rank ≥ 2 and no semistable bundles unless n | d; for n | d, β ≥ 0 is equivalent to d ≥ n"
    }
    fn direct(&self, env: &Env, d: i64, out: &mut RuleOutput) {
        if env.g != 0 || env.n < 2 {
            return;
        }
        let n = env.n;
        out.fact(
            Target::U,
            d,
            FactStatus::Empty,
            self.id(),
            "§8: there exist no stable bundles of rank ≥ 2 on a curve of genus 0".into(),
            vec![format!("g = 0"), format!("n = {n} ≥ 2")],
        );
        if d % n == 0 && d >= n {
            out.fact(
                Target::Us,
                d,
                FactStatus::Nonempty,
                self.id(),
                "§8: for n | d there are α-stable coherent systems; β ≥ 0 is equivalent to d ≥ n"
                    .into(),
                vec![format!("g = 0"), format!("n = {n} divides d = {d}, d ≥ n")],
            );
        } else {
            out.fact(
                Target::Us,
                d,
                FactStatus::Empty,
                self.id(),
                "§8: no semistable bundles on genus 0 unless n | d and d ≥ n".into(),
                vec![format!("g = 0"), format!("n = {n}, d = {d}")],
            );
        }
    }
}

/// Genus 1: U^s ≠ ∅ iff d ≥ n+1; U ≠ ∅ iff additionally gcd(n,d) = 1.
struct Genus1;

impl Rule for Genus1 {
    fn id(&self) -> &'static str {
        "R-G1"
    }
    fn citation(&self) -> &'static str {
        "Thm. 8.1: genus 1, U^s(n,d,n+1) ≠ ∅ iff d ≥ n+1; U(n,d,n+1) ≠ ∅ iff d ≥ n+1 and gcd(n,d) = 1"
    }
    fn direct(&self, env: &Env, d: i64, out: &mut RuleOutput) {
        if env.g != 1 || env.n < 2 {
            return;
        }
        let n = env.n;
        let us_ok = d > n; // d ≥ n+1
        out.fact(
            Target::Us,
            d,
            if us_ok {
                FactStatus::Nonempty
            } else {
                FactStatus::Empty
            },
            self.id(),
            if us_ok {
                "Thm. 8.1: d ≥ n+1".into()
            } else {
                "Thm. 8.1: U^s = ∅ for d < n+1".into()
            },
            vec![format!("g = 1"), format!("d = {d}, n+1 = {}", n + 1)],
        );
        let u_ok = us_ok && num::integer::gcd(n, d) == 1;
        out.fact(
            Target::U,
            d,
            if u_ok {
                FactStatus::Nonempty
            } else {
                FactStatus::Empty
            },
            self.id(),
            if u_ok {
                "Thm. 8.1: d ≥ n+1 and gcd(n,d) = 1".into()
            } else if us_ok {
                "Thm. 8.1: gcd(n,d) ≠ 1, no stable bundles of this slope on genus 1".into()
            } else {
                "Thm. 8.1: U = ∅ for d < n+1".into()
            },
            vec![
                format!("g = 1"),
                format!("gcd({n},{d}) = {}", num::integer::gcd(n, d)),
            ],
        );
    }
}

/// Genus 2: U^s ≠ ∅ iff d ≥ n+2 (equivalently β ≥ 0); U ≠ ∅ iff d ≥ n+2 and
/// d ≠ 2n. Stated for any genus-2 curve, so it fires without the Petri flag.
struct Genus2;

impl Rule for Genus2 {
    fn id(&self) -> &'static str {
        "R-G2"
    }
    fn citation(&self) -> &'static str {
        "Thm. 8.2: genus 2 (no Petri hypothesis in the statement), U^s ≠ ∅ iff d ≥ n+2; U ≠ ∅ iff d ≥ n+2, d ≠ 2n"
    }
    fn direct(&self, env: &Env, d: i64, out: &mut RuleOutput) {
        if env.g != 2 || env.n < 2 {
            return;
        }
        let n = env.n;
        let us_ok = d >= n + 2;
        out.fact(
            Target::Us,
            d,
            if us_ok {
                FactStatus::Nonempty
            } else {
                FactStatus::Empty
            },
            self.id(),
            if us_ok {
                "Thm. 8.2: d ≥ n+2".into()
            } else {
                "Thm. 8.2: U^s = ∅ for d < n+2".into()
            },
            vec![format!("g = 2"), format!("d = {d}, n+2 = {}", n + 2)],
        );
        let (status, text) = if us_ok && d != 2 * n {
            (FactStatus::Nonempty, "Thm. 8.2: d ≥ n+2, d ≠ 2n".into())
        } else if us_ok {
            (FactStatus::Empty, "Thm. 8.2: d ≠ 2n".into())
        } else {
            (FactStatus::Empty, "Thm. 8.2: U = ∅ for d < n+2".into())
        };
        out.fact(
            Target::U,
            d,
            status,
            self.id(),
            text,
            vec![format!("g = 2"), format!("d = {d}, 2n = {}", 2 * n)],
        );
    }
}

/// β < 0 on a Petri curve of genus ≥ 2 forces G(α) = ∅ for every α > 0,
/// hence every target is empty.
struct EmptyBeta;

impl Rule for EmptyBeta {
    fn id(&self) -> &'static str {
        "R-EMPTY-BETA"
    }
    fn citation(&self) -> &'static str {
        "Prop. 6.1: on a Petri curve with β < 0, G(α) = ∅ for all α > 0"
    }
    fn direct(&self, env: &Env, d: i64, out: &mut RuleOutput) {
        if !env.petri || env.g < 2 || env.n < 2 {
            return;
        }
        let b = env.beta(d);
        if b < 0 {
            for t in ALL_TARGETS {
                out.fact(
                    t,
                    d,
                    FactStatus::Empty,
                    self.id(),
                    "Prop. 6.1: β < 0 ⇒ G(α) = ∅ for all α > 0".into(),
                    vec![format!("g = {} ≥ 2, Petri", env.g), format!("β = {b} < 0")],
                );
            }
        }
    }
}

/// Non-emptiness of the large-α space itself: G_L ≠ ∅ iff β ≥ 0 on a Petri
/// curve of genus ≥ 2.
struct LargeAlpha;

impl Rule for LargeAlpha {
    fn id(&self) -> &'static str {
        "R-GL"
    }
    fn citation(&self) -> &'static str {
        "Thm. 3.1(1): G(α) ≠ ∅ if and only if β ≥ 0 (Petri, g ≥ 2)"
    }
    fn direct(&self, env: &Env, d: i64, out: &mut RuleOutput) {
        if !env.petri || env.g < 2 || env.n < 2 {
            return;
        }
        let b = env.beta(d);
        out.fact(
            Target::Gl,
            d,
            if b >= 0 {
                FactStatus::Nonempty
            } else {
                FactStatus::Empty
            },
            self.id(),
            "Thm. 3.1(1): G(α) ≠ ∅ if and only if β ≥ 0".into(),
            vec![format!("g = {} ≥ 2, Petri", env.g), format!("β = {b}")],
        );
    }
}

/// The small-degree window g+n−[g/(n+1)] ≤ d ≤ g+n where U is non-empty.
struct Window;

impl Rule for Window {
    fn id(&self) -> &'static str {
        "R-WINDOW"
    }
    fn citation(&self) -> &'static str {
        "Prop. 6.4: g+n−[g/(n+1)] ≤ d ≤ g+n (and (g,n) ≠ (2,2)) ⇒ U(n,d,n+1) ≠ ∅"
    }
    fn direct(&self, env: &Env, d: i64, out: &mut RuleOutput) {
        if !env.petri || env.g < 3 || env.n < 2 {
            return;
        }
        if env.min_degree <= d && d <= env.g + env.n {
            out.fact(
                Target::U,
                d,
                FactStatus::Nonempty,
                self.id(),
                "Prop. 6.4: g+n−[g/(n+1)] ≤ d ≤ g+n".into(),
                vec![
                    format!("g = {} ≥ 3, Petri", env.g),
                    format!("{} ≤ d = {d} ≤ {}", env.min_degree, env.g + env.n),
                ],
            );
        }
    }
}

/// Large genus relative to the rank: g ≥ n²−1 and β ≥ 0 give U ≠ ∅.
struct BigGenus;

impl Rule for BigGenus {
    fn id(&self) -> &'static str {
        "R-BIGG"
    }
    fn citation(&self) -> &'static str {
        "Prop. 6.5: if g ≥ n²−1 and β ≥ 0 then U(n,d,n+1) ≠ ∅"
    }
    fn direct(&self, env: &Env, d: i64, out: &mut RuleOutput) {
        if !env.petri || env.g < 2 || env.n < 2 {
            return;
        }
        let (g, n) = (env.g as i128, env.n as i128);
        let b = env.beta(d);
        if g >= n * n - 1 && b >= 0 {
            out.fact(
                Target::U,
                d,
                FactStatus::Nonempty,
                self.id(),
                "Prop. 6.5: g ≥ n²−1 and β ≥ 0".into(),
                vec![
                    format!("g = {} ≥ n²−1 = {}", env.g, n * n - 1),
                    format!("β = {b} ≥ 0"),
                ],
            );
        }
    }
}

/// The direct-sum degree d₀ (U^s) and the elementary-transformation
/// threshold d₁ (U); the even-genus branch of d₁ compares n against
/// g!/((g/2)!(g/2+1)!) with exact big integers.
struct DegreeThreshold;

impl Rule for DegreeThreshold {
    fn id(&self) -> &'static str {
        "R-D1"
    }
    fn citation(&self) -> &'static str {
        "Prop. 6.6: U^s(n,d₀,n+1) ≠ ∅ with d₀ = n(g+3)/2 (g odd) or n(g+2)/2 (g even); if d ≥ d₁ then U(n,d,n+1) ≠ ∅"
    }
    fn direct(&self, env: &Env, d: i64, out: &mut RuleOutput) {
        if !env.petri || env.g < 2 || env.n < 2 {
            return;
        }
        if (d as i128) == env.d0 {
            out.fact(
                Target::Us,
                d,
                FactStatus::Nonempty,
                self.id(),
                "Prop. 6.6: U^s(n,d₀,n+1) ≠ ∅".into(),
                vec![format!("d = d₀ = {}", env.d0)],
            );
        }
        if (d as i128) >= env.d1 {
            out.fact(
                Target::U,
                d,
                FactStatus::Nonempty,
                self.id(),
                "Prop. 6.6: if d ≥ d₁ then U(n,d,n+1) ≠ ∅".into(),
                vec![format!("d = {d} ≥ d₁ = {}", env.d1)],
            );
        }
    }
}

/// The wholesale rank-2,3,4 theorems: for g ≥ 3, U ≠ ∅ iff β ≥ 0. Disabled
/// in no-blanket mode, which replays the underlying derivations instead.
struct N234;

impl Rule for N234 {
    fn id(&self) -> &'static str {
        "R-N234"
    }
    fn citation(&self) -> &'static str {
        "Thm. 7.1 / Thm. 7.2 / Thm. 7.3: for g ≥ 3 and n = 2, 3, 4, U(n,d,n+1) ≠ ∅ if and only if β(n,d,n+1) ≥ 0"
    }
    fn direct(&self, env: &Env, d: i64, out: &mut RuleOutput) {
        if !env.petri || env.g < 3 || !(2..=4).contains(&env.n) {
            return;
        }
        let b = env.beta(d);
        if b >= 0 {
            let citation = match env.n {
                2 => "Thm. 7.1: U(2,d,3) ≠ ∅ if and only if β(2,d,3) ≥ 0",
                3 => "Thm. 7.2: U(3,d,4) ≠ ∅ if and only if β(3,d,4) ≥ 0",
                _ => "Thm. 7.3: U(4,d,5) ≠ ∅ if and only if β(4,d,5) ≥ 0",
            };
            out.fact(
                Target::U,
                d,
                FactStatus::Nonempty,
                self.id(),
                citation.into(),
                vec![
                    format!("g = {} ≥ 3, Petri", env.g),
                    format!("n = {} ∈ {{2,3,4}}", env.n),
                    format!("β = {b} ≥ 0"),
                ],
            );
        }
    }
}

/// The combined extension-count criterion for n ≥ 4: in the strict window
/// g+n < d < g+n+g/(n−1) with d/n < 2g/(2n−1)+2, every destabilizing
/// extension family has dimension ≤ β−1, so the generic element of G_L has
/// a stable bundle. (For n ≥ 4 the stated inequalities suffice.)
struct ExtensionCount;

impl Rule for ExtensionCount {
    fn id(&self) -> &'static str {
        "R-EXT"
    }
    fn citation(&self) -> &'static str {
        "Props. 6.8–6.10: for n ≥ 4, g+n < d < g+n+g/(n−1) and d/n < 2g/(2n−1)+2 leave no destabilizing extension filling G_L, so U(n,d,n+1) ≠ ∅"
    }
    fn direct(&self, env: &Env, d: i64, out: &mut RuleOutput) {
        if !env.petri || env.g < 2 || env.n < 4 {
            return;
        }
        let (g, n, di) = (env.g as i128, env.n as i128, d as i128);
        let above = di > g + n;
        // d < g+n+g/(n−1)  ⇔  (d−g−n)(n−1) < g, exactly in integers
        let below = (di - g - n) * (n - 1) < g;
        // d/n < 2g/(2n−1)+2  ⇔  d(2n−1) < 2gn + 2n(2n−1)
        let slope_ok = di * (2 * n - 1) < 2 * g * n + 2 * n * (2 * n - 1);
        if above && below && slope_ok {
            out.fact(
                Target::U,
                d,
                FactStatus::Nonempty,
                self.id(),
                "Props. 6.8–6.10: destabilizing extensions depend on at most β−1 parameters".into(),
                vec![
                    format!("n = {} ≥ 4, Petri", env.n),
                    format!("g+n = {} < d = {d} < g+n+g/(n−1)", env.g + env.n),
                    format!(
                        "d(2n−1) = {} < 2gn+2n(2n−1) = {}",
                        di * (2 * n - 1),
                        2 * g * n + 2 * n * (2 * n - 1)
                    ),
                ],
            );
        }
    }
}

/// Genus 3, n ≥ 5: U ≠ ∅ whenever β ≥ 0 except possibly d = 2n+2, which
/// stays OPEN with the citation attached.
struct Genus3High;

impl Rule for Genus3High {
    fn id(&self) -> &'static str {
        "R-G3HI"
    }
    fn citation(&self) -> &'static str {
        "Thm. 8.3: genus 3, U(n,d,n+1) ≠ ∅ if β ≥ 0, except possibly when n ≥ 5, d = 2n+2"
    }
    fn direct(&self, env: &Env, d: i64, out: &mut RuleOutput) {
        if !env.petri || env.g != 3 || env.n < 5 {
            return;
        }
        if env.beta(d) < 0 {
            return;
        }
        if d == 2 * env.n + 2 {
            out.note(
                Target::U,
                d,
                self.id(),
                format!(
                    "Thm. 8.3: the case n ≥ 5, d = 2n+2 = {d} is a possible exception and remains open"
                ),
            );
        } else {
            out.fact(
                Target::U,
                d,
                FactStatus::Nonempty,
                self.id(),
                "Thm. 8.3: genus 3, β ≥ 0, d ≠ 2n+2".into(),
                vec![
                    format!("g = 3, n = {} ≥ 5", env.n),
                    format!("d = {d} ≠ 2n+2"),
                ],
            );
        }
    }
}

/// Genus 4 and 5, n ≥ 5: the same argument as genus 3 with the explicit
/// exception lists; exceptions stay OPEN with the citation attached.
struct Genus45High;

impl Genus45High {
    fn is_exception(g: i64, n: i64, d: i64) -> bool {
        if g == 4 {
            [2 * n + 2, 2 * n + 3, 3 * n + 2, 3 * n + 3].contains(&d)
        } else if n == 5 {
            [12, 13, 17, 18].contains(&d)
        } else {
            [
                2 * n + 2,
                2 * n + 3,
                2 * n + 4,
                3 * n + 2,
                3 * n + 3,
                3 * n + 4,
            ]
            .contains(&d)
        }
    }
}

impl Rule for Genus45High {
    fn id(&self) -> &'static str {
        "R-G45HI"
    }
    fn citation(&self) -> &'static str {
        "Remark 8.5: g = 4: d = 2n+2, 2n+3, 3n+2, 3n+3; g = 5, n = 5: d = 12,13,17,18; g = 5, n ≥ 6: d = 2n+2..2n+4, 3n+2..3n+4 are the possible exceptions"
    }
    fn direct(&self, env: &Env, d: i64, out: &mut RuleOutput) {
        if !env.petri || !(env.g == 4 || env.g == 5) || env.n < 5 {
            return;
        }
        if env.beta(d) < 0 {
            return;
        }
        if Self::is_exception(env.g, env.n, d) {
            out.note(
                Target::U,
                d,
                self.id(),
                format!(
                    "Remark 8.5: (g,n,d) = ({},{},{d}) is in the listed exception set and remains open",
                    env.g, env.n
                ),
            );
        } else {
            out.fact(
                Target::U,
                d,
                FactStatus::Nonempty,
                self.id(),
                "Remark 8.5: β ≥ 0 outside the listed exception sets".into(),
                vec![
                    format!("g = {} ∈ {{4,5}}, n = {} ≥ 5", env.g, env.n),
                    format!("d = {d} not in the exception list"),
                ],
            );
        }
    }
}

/// Side-fact table for types with k ≠ n+1; see [`crate::decision::special_emptiness`].
/// Holds the fact G(α;3,7,5) = ∅ for all α > 0 on Petri curves of genus ≥ 3.
struct SpecialFacts;

impl Rule for SpecialFacts {
    fn id(&self) -> &'static str {
        "R-SPECIAL"
    }
    fn citation(&self) -> &'static str {
        "Remark 7.5: G(α;3,7,5) = ∅ for all α > 0 and all g ≥ 3 (β(3,7,5) = 17−6g < 0)"
    }
    // no direct facts for k = n+1 queries; consulted through the side table
}

// ---------------------------------------------------------------------------
// closure rules
// ---------------------------------------------------------------------------

/// Elementary transformations of a U-class at a multiple of n: U(n,na,n+1)
/// non-empty gives U(n,d,n+1) non-empty for every d > na with d ≡ ±1 mod n.
struct ModPlusMinusOne;

impl Rule for ModPlusMinusOne {
    fn id(&self) -> &'static str {
        "R-MOD"
    }
    fn citation(&self) -> &'static str {
        "Prop. 6.7: U(n,na,n+1) ≠ ∅ ⇒ U(n,d,n+1) ≠ ∅ for all d > na with d ≡ ±1 mod n"
    }
    fn propagate(&self, env: &Env, table: &FactTable, out: &mut RuleOutput) {
        if !env.petri || env.g < 2 || env.n < 2 {
            return;
        }
        let n = env.n;
        let first_multiple = table.lo() + (n - table.lo().rem_euclid(n)) % n;
        let mut base = first_multiple;
        while base <= table.hi() {
            if let Some(chain) = table.nonempty_chain(Target::U, base) {
                for d in (base + 1)..=table.hi() {
                    let r = d.rem_euclid(n);
                    if r == 1 || r == n - 1 {
                        out.derived(
                            Target::U,
                            d,
                            chain,
                            self.id(),
                            "Prop. 6.7: d ≡ ±1 mod n".into(),
                            vec![
                                format!("U non-empty at d = {base} = n·a"),
                                format!("d = {d} > {base}, d ≡ ±1 mod {n}"),
                            ],
                        );
                    }
                }
            }
            base += n;
        }
    }
}

/// Tensoring with an effective line bundle of degree 1: any non-empty cell
/// stays non-empty after shifting d by n, for every target.
struct Tensor;

impl Rule for Tensor {
    fn id(&self) -> &'static str {
        "R-TENSOR"
    }
    fn citation(&self) -> &'static str {
        "Remark 2.2: tensoring by an effective line bundle preserves (α-)stability and shifts d by n"
    }
    fn propagate(&self, env: &Env, table: &FactTable, out: &mut RuleOutput) {
        let n = env.n;
        for target in ALL_TARGETS {
            for d in table.lo()..=(table.hi() - n) {
                if let Some(chain) = table.nonempty_chain(target, d) {
                    out.derived(
                        target,
                        d + n,
                        chain,
                        self.id(),
                        "Remark 2.2: twist by an effective line bundle of degree 1".into(),
                        vec![format!("{target} non-empty at d = {d}")],
                    );
                }
            }
        }
    }
}

/// A full interval of length n of non-empty degrees propagates upward to
/// every larger degree.
struct Interval;

impl Rule for Interval {
    fn id(&self) -> &'static str {
        "R-INTERVAL"
    }
    fn citation(&self) -> &'static str {
        "Remark 2.3: non-empty for all integers d ∈ [a,b] with b−a ≥ n−1 ⇒ non-empty for all d ≥ a"
    }
    fn propagate(&self, env: &Env, table: &FactTable, out: &mut RuleOutput) {
        let n = env.n;
        for target in ALL_TARGETS {
            let mut run_start: Option<i64> = None;
            for d in table.lo()..=table.hi() {
                if table.nonempty_chain(target, d).is_some() {
                    run_start.get_or_insert(d);
                    let a = run_start.unwrap();
                    if d - a >= n - 1 && d < table.hi() {
                        let chain = table.nonempty_chain(target, a).unwrap();
                        for dd in (d + 1)..=table.hi() {
                            out.derived(
                                target,
                                dd,
                                chain,
                                self.id(),
                                "Remark 2.3: b−a ≥ n−1".into(),
                                vec![format!("{target} non-empty for all d ∈ [{a},{d}]")],
                            );
                        }
                        break;
                    }
                } else {
                    run_start = None;
                }
            }
        }
    }
}

/// Promotion along the inclusion U ⊆ U^s.
struct PromoteUs;

impl Rule for PromoteUs {
    fn id(&self) -> &'static str {
        "R-PROMOTE-US"
    }
    fn citation(&self) -> &'static str {
        "§6: U(n,d,n+1) ⊆ U^s(n,d,n+1)"
    }
    fn propagate(&self, _env: &Env, table: &FactTable, out: &mut RuleOutput) {
        for d in table.lo()..=table.hi() {
            if let Some(chain) = table.nonempty_chain(Target::U, d) {
                out.derived(
                    Target::Us,
                    d,
                    chain,
                    self.id(),
                    "§6: U ⊆ U^s".into(),
                    vec![format!("U non-empty at d = {d}")],
                );
            }
        }
    }
}

/// Promotion from U to the Brill-Noether locus.
struct PromoteB;

impl Rule for PromoteB {
    fn id(&self) -> &'static str {
        "R-PROMOTE-B"
    }
    fn citation(&self) -> &'static str {
        "§9: U(n,d,n+1) ≠ ∅ ⇒ B(n,d,n+1) ≠ ∅"
    }
    fn propagate(&self, _env: &Env, table: &FactTable, out: &mut RuleOutput) {
        for d in table.lo()..=table.hi() {
            if let Some(chain) = table.nonempty_chain(Target::U, d) {
                out.derived(
                    Target::B,
                    d,
                    chain,
                    self.id(),
                    "§9: the bundle of any (E,V) ∈ U is stable with h⁰ ≥ n+1".into(),
                    vec![format!("U non-empty at d = {d}")],
                );
            }
        }
    }
}

/// Exact-big-integer evaluation of the even-genus bound, exposed for tests.
#[cfg(test)]
pub(crate) fn catalan_bound_for_tests(g: i64) -> crate::arith::Integer {
    use crate::arith::factorial;
    let half = int(g / 2);
    factorial(&int(g)).unwrap()
        / (factorial(&half).unwrap() * factorial(&(half.clone() + int(1))).unwrap())
}
