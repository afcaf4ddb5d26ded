//! Knowledge base of the existence and emptiness theorems for coherent
//! systems of type (n,d,n+1), mechanized as citable inference rules with a
//! fixed-point closure over the degree grid.
//!
//! Queries name one of four spaces: the large-α moduli space G_L, the open
//! subsets U (stable underlying bundle) and U^s (α-stable for all α > 0),
//! and the Brill-Noether locus B. Verdicts are NONEMPTY, EMPTY, or OPEN and
//! carry an ordered provenance chain of rule citations; OPEN verdicts carry
//! the nearest matching exception citation when one applies. The engine
//! never extrapolates: a cell no enabled rule reaches stays OPEN.

pub mod report;
pub(crate) mod rules;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num::ToPrimitive;
use rayon::prelude::*;

use crate::arith::{int, Integer};
use crate::error::DomainError;
use crate::invariants::{CSType, CurveContext};

pub use rules::{rule_inventory, RuleInfo};

/// The four spaces a query can name.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Target {
    Gl,
    U,
    Us,
    B,
}

impl fmt::Display for Target {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Target::Gl => "GL",
            Target::U => "U",
            Target::Us => "US",
            Target::B => "B",
        };
        f.write_str(s)
    }
}

impl FromStr for Target {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "gl" => Ok(Target::Gl),
            "u" => Ok(Target::U),
            "us" => Ok(Target::Us),
            "b" => Ok(Target::B),
            other => Err(format!(
                "unknown target '{other}' (expected gl, u, us or b)"
            )),
        }
    }
}

/// Outcome of a query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Nonempty,
    Empty,
    Open,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Status::Nonempty => "NONEMPTY",
            Status::Empty => "EMPTY",
            Status::Open => "OPEN",
        };
        f.write_str(s)
    }
}

/// One link of a provenance chain: the rule that fired, the citation it
/// carries, and the premise facts it consumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProvenanceStep {
    pub rule: &'static str,
    pub citation: String,
    pub premises: Vec<String>,
}

/// A verdict plus the ordered chain of rule citations justifying it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub status: Status,
    pub provenance: Vec<ProvenanceStep>,
}

impl Verdict {
    pub fn rule_ids(&self) -> Vec<&'static str> {
        self.provenance.iter().map(|s| s.rule).collect()
    }

    /// Short human-readable justification: the citation of the decisive step.
    pub fn headline(&self) -> Option<&str> {
        self.provenance.last().map(|s| s.citation.as_str())
    }
}

/// Rule-selection mode: `Full` enables the whole inventory; `NoBlanket`
/// disables the wholesale n ≤ 4 theorems so the underlying derivation rules
/// replay the proofs instead.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mode {
    Full,
    NoBlanket,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Full => f.write_str("full"),
            Mode::NoBlanket => f.write_str("no-blanket"),
        }
    }
}

impl FromStr for Mode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "full" => Ok(Mode::Full),
            "no-blanket" | "noblanket" => Ok(Mode::NoBlanket),
            other => Err(format!(
                "unknown mode '{other}' (expected full or no-blanket)"
            )),
        }
    }
}

/// The set of enabled rule ids, derived from a [`Mode`].
#[derive(Debug, Clone)]
pub struct RuleSet {
    mode: Mode,
    enabled: BTreeSet<&'static str>,
}

impl RuleSet {
    pub fn full() -> RuleSet {
        RuleSet::for_mode(Mode::Full)
    }

    pub fn no_blanket() -> RuleSet {
        RuleSet::for_mode(Mode::NoBlanket)
    }

    pub fn for_mode(mode: Mode) -> RuleSet {
        let mut enabled: BTreeSet<&'static str> =
            rules::registry().iter().map(|r| r.id()).collect();
        if mode == Mode::NoBlanket {
            enabled.remove("R-N234");
        }
        RuleSet { mode, enabled }
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    pub fn is_enabled(&self, id: &str) -> bool {
        self.enabled.contains(id)
    }

    pub fn enabled_ids(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.enabled.iter().copied()
    }
}

impl Default for RuleSet {
    fn default() -> Self {
        RuleSet::full()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum FactStatus {
    Nonempty,
    Empty,
}

#[derive(Debug, Clone)]
pub(crate) struct CellFact {
    pub target: Target,
    pub d: i64,
    pub status: FactStatus,
    pub chain: Vec<ProvenanceStep>,
}

#[derive(Debug, Clone)]
pub(crate) struct OpenNote {
    pub target: Target,
    pub d: i64,
    pub step: ProvenanceStep,
}

/// Errors of the decision engine: violated preconditions, or a rule conflict
/// (both NONEMPTY and EMPTY derivable), which indicates a transcription bug
/// and aborts with both provenance chains.
#[derive(Debug, Clone)]
pub enum DecisionError {
    Domain(DomainError),
    Conflict {
        target: Target,
        rank: i64,
        degree: i64,
        nonempty: Vec<ProvenanceStep>,
        empty: Vec<ProvenanceStep>,
    },
}

impl fmt::Display for DecisionError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DecisionError::Domain(e) => e.fmt(f),
            DecisionError::Conflict {
                target,
                rank,
                degree,
                nonempty,
                empty,
            } => {
                let ne: Vec<&str> = nonempty.iter().map(|s| s.rule).collect();
                let em: Vec<&str> = empty.iter().map(|s| s.rule).collect();
                write!(
                    f,
                    "rule conflict at {target}({rank},{degree},{}): NONEMPTY via [{}] against EMPTY via [{}]",
                    rank + 1,
                    ne.join(" → "),
                    em.join(" → ")
                )
            }
        }
    }
}

impl std::error::Error for DecisionError {}

impl From<DomainError> for DecisionError {
    fn from(e: DomainError) -> Self {
        DecisionError::Domain(e)
    }
}

/// Derived facts for one (g, n) pair over a degree interval, the result of
/// running every enabled direct rule per cell and closing under the
/// propagation rules.
pub struct FactTable {
    env: rules::Env,
    lo: i64,
    hi: i64,
    facts: BTreeMap<(Target, i64), (FactStatus, Vec<ProvenanceStep>)>,
    notes: BTreeMap<(Target, i64), ProvenanceStep>,
}

impl FactTable {
    pub(crate) fn lo(&self) -> i64 {
        self.lo
    }

    pub(crate) fn hi(&self) -> i64 {
        self.hi
    }

    pub(crate) fn nonempty_chain(&self, target: Target, d: i64) -> Option<&[ProvenanceStep]> {
        match self.facts.get(&(target, d)) {
            Some((FactStatus::Nonempty, chain)) => Some(chain),
            _ => None,
        }
    }

    fn absorb(&mut self, fact: CellFact) -> Result<bool, DecisionError> {
        debug_assert!((self.lo..=self.hi).contains(&fact.d));
        match self.facts.get(&(fact.target, fact.d)) {
            None => {
                self.facts
                    .insert((fact.target, fact.d), (fact.status, fact.chain));
                Ok(true)
            }
            Some((existing, chain)) => {
                if *existing == fact.status {
                    return Ok(false); // keep the first derivation
                }
                let (nonempty, empty) = match fact.status {
                    FactStatus::Nonempty => (fact.chain, chain.clone()),
                    FactStatus::Empty => (chain.clone(), fact.chain),
                };
                Err(DecisionError::Conflict {
                    target: fact.target,
                    rank: self.env.n,
                    degree: fact.d,
                    nonempty,
                    empty,
                })
            }
        }
    }

    /// Verdict for one cell of the table.
    pub fn verdict_at(&self, target: Target, d: i64) -> Verdict {
        assert!(
            (self.lo..=self.hi).contains(&d),
            "degree {d} outside the solved grid [{}, {}]",
            self.lo,
            self.hi
        );
        match self.facts.get(&(target, d)) {
            Some((FactStatus::Nonempty, chain)) => Verdict {
                status: Status::Nonempty,
                provenance: chain.clone(),
            },
            Some((FactStatus::Empty, chain)) => Verdict {
                status: Status::Empty,
                provenance: chain.clone(),
            },
            None => Verdict {
                status: Status::Open,
                provenance: self
                    .notes
                    .get(&(target, d))
                    .map(|s| vec![s.clone()])
                    .unwrap_or_default(),
            },
        }
    }
}

fn to_i64(v: &Integer) -> Result<i64, DomainError> {
    v.to_i64().ok_or(DomainError::OutOfRange)
}

/// Builds the fact table for (g, n) covering degrees `d_lo..=d_hi`.
///
/// The closure grid starts at min(d_lo, g+n−[g/(n+1)]) so every base degree
/// a propagation rule could use is present; facts only accumulate over the
/// finite grid, so the fixed point terminates.
pub fn solve_table(
    ctx: &CurveContext,
    n: &Integer,
    d_lo: &Integer,
    d_hi: &Integer,
    rules_on: &RuleSet,
) -> Result<FactTable, DecisionError> {
    if n < &int(1) {
        return Err(DomainError::InvalidRank(n.clone()).into());
    }
    let g = to_i64(ctx.genus())?;
    let n64 = to_i64(n)?;
    let d_lo = to_i64(d_lo)?;
    let d_hi = to_i64(d_hi)?;
    let env = rules::Env::new(g, n64, ctx.is_petri());
    let lo = d_lo.min(env.min_degree);
    let hi = d_hi;
    let mut table = FactTable {
        env,
        lo,
        hi,
        facts: BTreeMap::new(),
        notes: BTreeMap::new(),
    };
    if hi < lo {
        return Ok(table);
    }

    let enabled: Vec<&'static dyn rules::Rule> = rules::registry()
        .iter()
        .copied()
        .filter(|r| rules_on.is_enabled(r.id()))
        .collect();

    // direct rules, one pass over the grid
    let mut out = rules::RuleOutput::new();
    for d in lo..=hi {
        for rule in &enabled {
            rule.direct(&table.env, d, &mut out);
        }
    }
    for fact in out.facts {
        table.absorb(fact)?;
    }
    for note in out.notes {
        table
            .notes
            .entry((note.target, note.d))
            .or_insert(note.step);
    }

    // closure rules to fixed point
    loop {
        let mut changed = false;
        for rule in &enabled {
            let mut out = rules::RuleOutput::new();
            rule.propagate(&table.env, &table, &mut out);
            for fact in out.facts {
                changed |= table.absorb(fact)?;
            }
        }
        if !changed {
            break;
        }
    }
    Ok(table)
}

/// Decides (non)emptiness of the named space for type (n, d, n+1).
pub fn decide(
    ctx: &CurveContext,
    n: &Integer,
    d: &Integer,
    target: Target,
    rules_on: &RuleSet,
) -> Result<Verdict, DecisionError> {
    let table = solve_table(ctx, n, d, d, rules_on)?;
    Ok(table.verdict_at(target, to_i64(d)?))
}

/// One cell of a sweep table.
#[derive(Debug, Clone)]
pub struct SweepRow {
    pub genus: i64,
    pub rank: i64,
    pub degree: i64,
    pub beta: Integer,
    pub verdict: Verdict,
}

/// Evaluates `decide` over inclusive ranges of genus, rank and degree.
///
/// Rows are ordered by (genus, rank, degree); cells are independent and are
/// evaluated in parallel per (genus, rank) grid with a deterministic merge.
pub fn sweep(
    petri: bool,
    genus: (i64, i64),
    rank: (i64, i64),
    degree: (i64, i64),
    target: Target,
    rules_on: &RuleSet,
) -> Result<Vec<SweepRow>, DecisionError> {
    if rank.0 < 1 {
        return Err(DomainError::InvalidRank(int(rank.0)).into());
    }
    if genus.0 < 0 {
        return Err(DomainError::NegativeGenus(int(genus.0)).into());
    }
    let mut grids = Vec::new();
    for g in genus.0..=genus.1 {
        for n in rank.0..=rank.1 {
            grids.push((g, n));
        }
    }
    let rows: Result<Vec<Vec<SweepRow>>, DecisionError> = grids
        .par_iter()
        .map(|&(g, n)| {
            let ctx = CurveContext::new(int(g), petri)?;
            let table = solve_table(&ctx, &int(n), &int(degree.0), &int(degree.1), rules_on)?;
            let mut rows = Vec::new();
            for d in degree.0..=degree.1 {
                rows.push(SweepRow {
                    genus: g,
                    rank: n,
                    degree: d,
                    beta: crate::invariants::beta_np1(&ctx, &int(n), &int(d))?,
                    verdict: table.verdict_at(target, d),
                });
            }
            Ok(rows)
        })
        .collect();
    Ok(rows?.into_iter().flatten().collect())
}

/// The k ≠ n+1 side-fact table: currently the single fact
/// G(α;3,7,5) = ∅ for all α > 0 on a Petri curve of genus ≥ 3.
pub fn special_emptiness(ctx: &CurveContext, t: &CSType) -> Option<Verdict> {
    if ctx.is_petri()
        && *ctx.genus() >= int(3)
        && *t.rank() == int(3)
        && *t.degree() == int(7)
        && *t.sections() == int(5)
    {
        Some(Verdict {
            status: Status::Empty,
            provenance: vec![ProvenanceStep {
                rule: "R-SPECIAL",
                citation: "Remark 7.5: G(α;3,7,5) = ∅ for all α > 0 and all g ≥ 3".into(),
                premises: vec![format!(
                    "β(3,7,5) = 17−6g = {} < 0",
                    int(17) - int(6) * ctx.genus()
                )],
            }],
        })
    } else {
        None
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn petri(g: i64) -> CurveContext {
        CurveContext::petri(g).unwrap()
    }

    fn status(g: i64, n: i64, d: i64, t: Target, rules: &RuleSet) -> Status {
        decide(&petri(g), &int(n), &int(d), t, rules)
            .unwrap()
            .status
    }

    #[test]
    fn spec_decide_examples() {
        let full = RuleSet::full();
        assert_eq!(status(1, 2, 3, Target::U, &full), Status::Nonempty);
        assert_eq!(status(2, 2, 4, Target::U, &full), Status::Empty);
        assert_eq!(status(2, 2, 4, Target::Us, &full), Status::Nonempty);
        assert_eq!(status(3, 5, 12, Target::U, &full), Status::Open);
        for t in [Target::Gl, Target::U, Target::Us, Target::B] {
            assert_eq!(status(3, 3, 5, t, &full), Status::Empty);
        }
        assert_eq!(status(3, 3, 7, Target::U, &full), Status::Nonempty);

        let nb = RuleSet::no_blanket();
        assert_eq!(status(5, 3, 9, Target::U, &nb), Status::Open);
        assert_eq!(status(5, 3, 9, Target::U, &full), Status::Nonempty);
    }

    #[test]
    fn provenance_cites_the_genus2_exception() {
        let v = decide(&petri(2), &int(2), &int(4), Target::U, &RuleSet::full()).unwrap();
        assert_eq!(v.status, Status::Empty);
        assert_eq!(v.rule_ids(), vec!["R-G2"]);
        assert!(v.headline().unwrap().contains("d ≠ 2n"));
    }

    #[test]
    fn open_verdict_carries_exception_citation() {
        let v = decide(&petri(3), &int(5), &int(12), Target::U, &RuleSet::full()).unwrap();
        assert_eq!(v.status, Status::Open);
        assert_eq!(v.provenance.len(), 1);
        assert!(v.provenance[0].citation.contains("Thm. 8.3"));
    }

    #[test]
    fn closure_chain_is_ordered() {
        // g=3, n=3, d=9 in no-blanket mode: window at 6, then tensor to 9
        let v = decide(
            &petri(3),
            &int(3),
            &int(9),
            Target::U,
            &RuleSet::no_blanket(),
        )
        .unwrap();
        assert_eq!(v.status, Status::Nonempty);
        let ids = v.rule_ids();
        assert!(ids.len() >= 2);
        assert_eq!(*ids.first().unwrap(), "R-WINDOW");
        assert_eq!(*ids.last().unwrap(), "R-TENSOR");
    }

    #[test]
    fn genus0_sweep_example() {
        let rows = sweep(true, (0, 0), (3, 3), (1, 9), Target::Us, &RuleSet::full()).unwrap();
        let nonempty: Vec<i64> = rows
            .iter()
            .filter(|r| r.verdict.status == Status::Nonempty)
            .map(|r| r.degree)
            .collect();
        assert_eq!(nonempty, vec![3, 6, 9]);
    }

    #[test]
    fn sweep_order_and_emptiness() {
        let rows = sweep(true, (3, 4), (2, 3), (5, 7), Target::U, &RuleSet::full()).unwrap();
        let keys: Vec<(i64, i64, i64)> = rows.iter().map(|r| (r.genus, r.rank, r.degree)).collect();
        let mut sorted = keys.clone();
        sorted.sort();
        assert_eq!(keys, sorted);
        assert_eq!(rows.len(), 2 * 2 * 3);
        assert!(
            sweep(true, (3, 2), (2, 2), (5, 7), Target::U, &RuleSet::full())
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn no_petri_disables_the_petri_rules() {
        let ctx = CurveContext::new(int(6), false).unwrap();
        let v = decide(&ctx, &int(2), &int(8), Target::Gl, &RuleSet::full()).unwrap();
        assert_eq!(v.status, Status::Open);
        // genus-2 results are stated without the Petri hypothesis
        let ctx = CurveContext::new(int(2), false).unwrap();
        let v = decide(&ctx, &int(2), &int(5), Target::U, &RuleSet::full()).unwrap();
        assert_eq!(v.status, Status::Nonempty);
    }

    #[test]
    fn special_fact_table() {
        let t = CSType::of(3, 7, 5).unwrap();
        let v = special_emptiness(&petri(3), &t).unwrap();
        assert_eq!(v.status, Status::Empty);
        assert!(v.provenance[0].citation.contains("Remark 7.5"));
        assert!(special_emptiness(&petri(2), &t).is_none());
        assert!(special_emptiness(&petri(4), &CSType::of(3, 7, 4).unwrap()).is_none());
    }

    #[test]
    fn rank1_is_classical() {
        let full = RuleSet::full();
        for g in 0..6 {
            for d in -3..10 {
                let b = 2 * d - g - 2;
                for t in [Target::Gl, Target::U, Target::Us, Target::B] {
                    let s = status(g, 1, d, t, &full);
                    assert_eq!(
                        s,
                        if b >= 0 {
                            Status::Nonempty
                        } else {
                            Status::Empty
                        },
                        "g={g} d={d} {t}"
                    );
                }
            }
        }
    }

    #[test]
    fn conflicting_facts_abort_with_both_chains() {
        let mut table = FactTable {
            env: rules::Env::new(4, 2, true),
            lo: 0,
            hi: 10,
            facts: BTreeMap::new(),
            notes: BTreeMap::new(),
        };
        let step = |rule: &'static str| ProvenanceStep {
            rule,
            citation: "Thm. 3.1 (synthetic)".into(),
            premises: vec![],
        };
        table
            .absorb(CellFact {
                target: Target::U,
                d: 5,
                status: FactStatus::Nonempty,
                chain: vec![step("R-A")],
            })
            .unwrap();
        let err = table
            .absorb(CellFact {
                target: Target::U,
                d: 5,
                status: FactStatus::Empty,
                chain: vec![step("R-B")],
            })
            .unwrap_err();
        match &err {
            DecisionError::Conflict {
                nonempty, empty, ..
            } => {
                assert_eq!(nonempty[0].rule, "R-A");
                assert_eq!(empty[0].rule, "R-B");
            }
            other => panic!("expected conflict, got {other:?}"),
        }
        let msg = err.to_string();
        assert!(msg.contains("R-A") && msg.contains("R-B"));
    }

    #[test]
    fn ruleset_modes() {
        let full = RuleSet::full();
        let nb = RuleSet::no_blanket();
        assert!(full.is_enabled("R-N234"));
        assert!(!nb.is_enabled("R-N234"));
        // full ⊇ no_blanket
        for id in nb.enabled_ids() {
            assert!(full.is_enabled(id));
        }
        assert_eq!(Mode::from_str("no-blanket").unwrap(), Mode::NoBlanket);
        assert!(Mode::from_str("half").is_err());
        assert_eq!(Target::from_str("us").unwrap(), Target::Us);
        assert!(Target::from_str("x").is_err());
    }
}
