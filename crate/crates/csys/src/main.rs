//! csys: exact invariants and existence verdicts for coherent systems of
//! type (n,d,n+1) on curves.
//!
//! Every subcommand supports `--format human` (default) and
//! `--format machine`, a byte-stable `key=value` serialization with sorted
//! keys and rationals rendered `p/q`; `sweep` additionally supports
//! `--format csv` with the fixed column order
//! genus,rank,degree,beta,verdict,rule_ids. Exit status: 0 success, 1 usage
//! error, 2 domain error (the message names the violated precondition),
//! 3 rule-conflict consistency error.

use std::fmt::Display;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use coherent_systems::arith::{format_rational, int};
use coherent_systems::decision::report::{bn_report, butler_status};
use coherent_systems::decision::{
    decide, special_emptiness, sweep, DecisionError, Mode, RuleSet, Status, Target, Verdict,
};
use coherent_systems::error::DomainError;
use coherent_systems::invariants::{
    alpha_l, beta, beta_np1, canonical_flip, cardinality_beta_zero, critical_value_candidates,
    stratification, CSType, CurveContext,
};

#[derive(Parser)]
#[command(
    name = "csys",
    version,
    about = "Exact invariants and existence verdicts for coherent systems of type (n,d,n+1)",
    disable_help_subcommand = true
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum FormatArg {
    Human,
    Machine,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum TargetArg {
    Gl,
    U,
    Us,
    B,
}

impl From<TargetArg> for Target {
    fn from(t: TargetArg) -> Target {
        match t {
            TargetArg::Gl => Target::Gl,
            TargetArg::U => Target::U,
            TargetArg::Us => Target::Us,
            TargetArg::B => Target::B,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Full,
    NoBlanket,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Full => Mode::Full,
            ModeArg::NoBlanket => Mode::NoBlanket,
        }
    }
}

#[derive(Args)]
struct Triple {
    /// Genus of the curve
    #[arg(short = 'g', long)]
    genus: i64,
    /// Rank n
    #[arg(short = 'n', long)]
    rank: i64,
    /// Degree d
    #[arg(short = 'd', long)]
    degree: i64,
}

#[derive(Args)]
struct OutputOpts {
    /// Output format
    #[arg(long, value_enum, default_value = "human")]
    format: FormatArg,
    /// Write the primary output to FILE instead of stdout
    #[arg(long, value_name = "FILE")]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct DecisionOpts {
    /// Rule-selection mode
    #[arg(long, value_enum, default_value = "full")]
    mode: ModeArg,
    /// Drop the Petri-curve hypothesis (rules needing it will not fire)
    #[arg(long)]
    no_petri: bool,
}

#[derive(Subcommand)]
enum Cmd {
    /// Brill-Noether number β(n,d,k); k defaults to n+1
    Beta {
        #[command(flatten)]
        triple: Triple,
        /// Number of sections k (defaults to n+1)
        #[arg(short = 'k', long)]
        sections: Option<i64>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Top-critical-value threshold α_l = d(n−1) − n(n−1+g−[g/n])
    AlphaL {
        #[command(flatten)]
        triple: Triple,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Candidate critical values in (0, α_l] with all witnesses
    CriticalValues {
        #[command(flatten)]
        triple: Triple,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Torsion stratification of the large-α moduli space
    Strata {
        #[command(flatten)]
        triple: Triple,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Cardinality of the large-α moduli space when β = 0
    Count {
        #[command(flatten)]
        triple: Triple,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Canonical destabilizing flip at the top critical value
    Flip {
        #[command(flatten)]
        triple: Triple,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// NONEMPTY/EMPTY/OPEN verdict with provenance
    Decide {
        #[command(flatten)]
        triple: Triple,
        /// Space to decide
        #[arg(long, value_enum)]
        target: TargetArg,
        #[command(flatten)]
        decision: DecisionOpts,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Verdict table over genus and degree ranges
    Sweep {
        /// Genus range A..B (inclusive)
        #[arg(long, value_name = "A..B")]
        genus_range: String,
        /// Rank n
        #[arg(short = 'n', long)]
        rank: i64,
        /// Degree range A..B (inclusive)
        #[arg(long, value_name = "A..B")]
        degree_range: String,
        /// Space to decide
        #[arg(long, value_enum)]
        target: TargetArg,
        #[command(flatten)]
        decision: DecisionOpts,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Butler-conjecture status via the dual-span equivalence
    Butler {
        #[command(flatten)]
        triple: Triple,
        #[command(flatten)]
        decision: DecisionOpts,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// What the rules certify about the Brill-Noether locus B(n,d,n+1)
    BnReport {
        #[command(flatten)]
        triple: Triple,
        #[command(flatten)]
        decision: DecisionOpts,
        #[command(flatten)]
        out: OutputOpts,
    },
}

enum AppError {
    Usage(String),
    Domain(DomainError),
    Conflict(DecisionError),
    Io(std::io::Error),
}

impl From<DomainError> for AppError {
    fn from(e: DomainError) -> Self {
        AppError::Domain(e)
    }
}

impl From<DecisionError> for AppError {
    fn from(e: DecisionError) -> Self {
        match e {
            DecisionError::Domain(d) => AppError::Domain(d),
            conflict => AppError::Conflict(conflict),
        }
    }
}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Io(e)
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            eprint!("{e}");
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(AppError::Usage(msg)) => {
            eprintln!("csys: {msg}");
            ExitCode::from(1)
        }
        Err(AppError::Domain(e)) => {
            eprintln!("csys: {e}");
            ExitCode::from(2)
        }
        Err(AppError::Conflict(e)) => {
            eprintln!("csys: {e}");
            ExitCode::from(3)
        }
        Err(AppError::Io(e)) => {
            eprintln!("csys: {e}");
            ExitCode::from(2)
        }
    }
}

/// Accumulates `key=value` rows and renders them sorted; the machine format.
struct Machine {
    rows: Vec<(String, String)>,
}

impl Machine {
    fn new() -> Self {
        Machine { rows: Vec::new() }
    }

    fn kv(&mut self, key: impl Into<String>, value: impl Display) {
        self.rows.push((key.into(), value.to_string()));
    }

    fn render(mut self) -> String {
        self.rows.sort();
        let mut out = String::new();
        for (k, v) in self.rows {
            out.push_str(&k);
            out.push('=');
            out.push_str(&v);
            out.push('\n');
        }
        out
    }
}

fn emit(out: &OutputOpts, content: String) -> Result<(), AppError> {
    match &out.output {
        None => {
            std::io::stdout().write_all(content.as_bytes())?;
            Ok(())
        }
        Some(path) => {
            std::fs::write(path, content)?;
            Ok(())
        }
    }
}

fn reject_csv(out: &OutputOpts) -> Result<(), AppError> {
    if out.format == FormatArg::Csv {
        return Err(AppError::Usage(
            "--format csv is only available for sweep tables".into(),
        ));
    }
    Ok(())
}

fn context(genus: i64, petri: bool) -> Result<CurveContext, AppError> {
    Ok(CurveContext::new(int(genus), petri)?)
}

fn parse_range(s: &str) -> Result<(i64, i64), AppError> {
    let parts: Vec<&str> = s.split("..").collect();
    let err = || AppError::Usage(format!("range '{s}' must have the form A..B (inclusive)"));
    if parts.len() != 2 {
        return Err(err());
    }
    let a: i64 = parts[0].trim().parse().map_err(|_| err())?;
    let b: i64 = parts[1].trim().parse().map_err(|_| err())?;
    Ok((a, b))
}

fn verdict_headline(v: &Verdict) -> String {
    match v.status {
        Status::Open => match v.provenance.first() {
            Some(step) => format!("OPEN ({})", step.citation),
            None => "OPEN (no enabled rule reaches this cell)".into(),
        },
        status => {
            let citations: Vec<&str> = v.provenance.iter().map(|s| s.citation.as_str()).collect();
            format!("{} ({})", status, citations.join(" → "))
        }
    }
}

fn verdict_machine(m: &mut Machine, v: &Verdict) {
    m.kv("verdict", v.status);
    m.kv("rule_ids", v.rule_ids().join(";"));
    for (i, step) in v.provenance.iter().enumerate() {
        m.kv(format!("step.{i:04}.rule"), step.rule);
        m.kv(format!("step.{i:04}.citation"), &step.citation);
        m.kv(format!("step.{i:04}.premises"), step.premises.join("; "));
    }
}

fn run(cli: Cli) -> Result<(), AppError> {
    match cli.cmd {
        Cmd::Beta {
            triple,
            sections,
            out,
        } => {
            reject_csv(&out)?;
            let ctx = context(triple.genus, true)?;
            let k = sections.unwrap_or(triple.rank + 1);
            let t = CSType::of(triple.rank, triple.degree, k)?;
            let value = beta(&ctx, &t);
            let note = special_emptiness(&ctx, &t).map(|v| v.provenance[0].citation.clone());
            let content = match out.format {
                FormatArg::Human => {
                    let mut s = format!("{value}\n");
                    if let Some(note) = &note {
                        s.push_str(&format!("note: {note}\n"));
                    }
                    s
                }
                _ => {
                    let mut m = Machine::new();
                    m.kv("genus", triple.genus);
                    m.kv("rank", triple.rank);
                    m.kv("degree", triple.degree);
                    m.kv("sections", k);
                    m.kv("beta", &value);
                    if let Some(note) = &note {
                        m.kv("note", note);
                    }
                    m.render()
                }
            };
            emit(&out, content)
        }

        Cmd::AlphaL { triple, out } => {
            reject_csv(&out)?;
            let ctx = context(triple.genus, true)?;
            let value = alpha_l(&ctx, &int(triple.rank), &int(triple.degree))?;
            let content = match out.format {
                FormatArg::Human => format!("{value}\n"),
                _ => {
                    let mut m = Machine::new();
                    m.kv("genus", triple.genus);
                    m.kv("rank", triple.rank);
                    m.kv("degree", triple.degree);
                    m.kv("alpha_l", &value);
                    m.render()
                }
            };
            emit(&out, content)
        }

        Cmd::CriticalValues { triple, out } => {
            reject_csv(&out)?;
            let ctx = context(triple.genus, true)?;
            let al = alpha_l(&ctx, &int(triple.rank), &int(triple.degree))?;
            let values = critical_value_candidates(&ctx, &int(triple.rank), &int(triple.degree))?;
            let content = match out.format {
                FormatArg::Human => {
                    let mut s = String::new();
                    if values.is_empty() {
                        s.push_str("no candidate critical values\n");
                    } else {
                        s.push_str("alpha\twitnesses (n1,d1,k1)\n");
                        for c in &values {
                            let ws: Vec<String> =
                                c.witnesses().iter().map(|w| w.to_string()).collect();
                            s.push_str(&format!(
                                "{}\t{}\n",
                                format_rational(c.alpha()),
                                ws.join(" ")
                            ));
                        }
                    }
                    s
                }
                _ => {
                    let mut m = Machine::new();
                    m.kv("genus", triple.genus);
                    m.kv("rank", triple.rank);
                    m.kv("degree", triple.degree);
                    m.kv("alpha_l", &al);
                    m.kv("count", values.len());
                    for (i, c) in values.iter().enumerate() {
                        m.kv(format!("value.{i:04}"), format_rational(c.alpha()));
                        let ws: Vec<String> = c.witnesses().iter().map(|w| w.to_string()).collect();
                        m.kv(format!("value.{i:04}.witnesses"), ws.join(" "));
                    }
                    m.render()
                }
            };
            emit(&out, content)
        }

        Cmd::Strata { triple, out } => {
            reject_csv(&out)?;
            let ctx = context(triple.genus, true)?;
            let b = beta_np1(&ctx, &int(triple.rank), &int(triple.degree))?;
            let rows = stratification(&ctx, &int(triple.rank), &int(triple.degree))?;
            let content = match out.format {
                FormatArg::Human => {
                    let mut s = String::from("t\tdim\tirreducible\n");
                    for r in &rows {
                        s.push_str(&format!(
                            "{}\t{}\t{}\n",
                            r.t,
                            r.dim,
                            if r.irreducible { "yes" } else { "no" }
                        ));
                    }
                    s
                }
                _ => {
                    let mut m = Machine::new();
                    m.kv("genus", triple.genus);
                    m.kv("rank", triple.rank);
                    m.kv("degree", triple.degree);
                    m.kv("beta", &b);
                    m.kv("t1", rows.len() - 1);
                    for (i, r) in rows.iter().enumerate() {
                        m.kv(format!("row.{i:04}.t"), &r.t);
                        m.kv(format!("row.{i:04}.dim"), &r.dim);
                        m.kv(format!("row.{i:04}.irreducible"), r.irreducible);
                    }
                    m.render()
                }
            };
            emit(&out, content)
        }

        Cmd::Count { triple, out } => {
            reject_csv(&out)?;
            let ctx = context(triple.genus, true)?;
            let value = cardinality_beta_zero(&ctx, &int(triple.rank), &int(triple.degree))?;
            let content = match out.format {
                FormatArg::Human => format!("{value}\n"),
                _ => {
                    let mut m = Machine::new();
                    m.kv("genus", triple.genus);
                    m.kv("rank", triple.rank);
                    m.kv("degree", triple.degree);
                    m.kv("beta", 0);
                    m.kv("count", &value);
                    m.render()
                }
            };
            emit(&out, content)
        }

        Cmd::Flip { triple, out } => {
            reject_csv(&out)?;
            let ctx = context(triple.genus, true)?;
            let flip = canonical_flip(&ctx, &int(triple.rank), &int(triple.degree))?;
            let content = match out.format {
                FormatArg::Human => format!(
                    "alpha = {}\ntype1 = {}\ntype2 = {}\nflip_dim_bound = {}\n",
                    format_rational(&flip.alpha),
                    flip.type1,
                    flip.type2,
                    flip.flip_dim_bound
                ),
                _ => {
                    let mut m = Machine::new();
                    m.kv("genus", triple.genus);
                    m.kv("rank", triple.rank);
                    m.kv("degree", triple.degree);
                    m.kv("alpha", format_rational(&flip.alpha));
                    m.kv("type1", &flip.type1);
                    m.kv("type2", &flip.type2);
                    m.kv("flip_dim_bound", &flip.flip_dim_bound);
                    m.render()
                }
            };
            emit(&out, content)
        }

        Cmd::Decide {
            triple,
            target,
            decision,
            out,
        } => {
            reject_csv(&out)?;
            let ctx = context(triple.genus, !decision.no_petri)?;
            let rules = RuleSet::for_mode(decision.mode.into());
            let target: Target = target.into();
            let v = decide(&ctx, &int(triple.rank), &int(triple.degree), target, &rules)?;
            let b = beta_np1(&ctx, &int(triple.rank), &int(triple.degree))?;
            let content = match out.format {
                FormatArg::Human => format!("{}\n", verdict_headline(&v)),
                _ => {
                    let mut m = Machine::new();
                    m.kv("genus", triple.genus);
                    m.kv("rank", triple.rank);
                    m.kv("degree", triple.degree);
                    m.kv("target", target);
                    m.kv("mode", rules.mode());
                    m.kv("petri", !decision.no_petri);
                    m.kv("beta", &b);
                    verdict_machine(&mut m, &v);
                    m.render()
                }
            };
            emit(&out, content)
        }

        Cmd::Sweep {
            genus_range,
            rank,
            degree_range,
            target,
            decision,
            out,
        } => {
            let genus = parse_range(&genus_range)?;
            let degree = parse_range(&degree_range)?;
            let rules = RuleSet::for_mode(decision.mode.into());
            let rows = sweep(
                !decision.no_petri,
                genus,
                (rank, rank),
                degree,
                target.into(),
                &rules,
            )?;
            let content = match out.format {
                FormatArg::Human => {
                    let mut s = String::from("genus\trank\tdegree\tbeta\tverdict\trule_ids\n");
                    for r in &rows {
                        s.push_str(&format!(
                            "{}\t{}\t{}\t{}\t{}\t{}\n",
                            r.genus,
                            r.rank,
                            r.degree,
                            r.beta,
                            r.verdict.status,
                            r.verdict.rule_ids().join(";")
                        ));
                    }
                    s
                }
                _ => {
                    let mut s = String::from("genus,rank,degree,beta,verdict,rule_ids\n");
                    for r in &rows {
                        s.push_str(&format!(
                            "{},{},{},{},{},{}\n",
                            r.genus,
                            r.rank,
                            r.degree,
                            r.beta,
                            r.verdict.status,
                            r.verdict.rule_ids().join(";")
                        ));
                    }
                    s
                }
            };
            emit(&out, content)
        }

        Cmd::Butler {
            triple,
            decision,
            out,
        } => {
            reject_csv(&out)?;
            let ctx = context(triple.genus, !decision.no_petri)?;
            let rules = RuleSet::for_mode(decision.mode.into());
            let s = butler_status(&ctx, &int(triple.rank), &int(triple.degree), &rules)?;
            let content = match out.format {
                FormatArg::Human => format!("{}\n{}\n", s.verdict, s.note),
                _ => {
                    let mut m = Machine::new();
                    m.kv("genus", triple.genus);
                    m.kv("rank", triple.rank);
                    m.kv("degree", triple.degree);
                    m.kv("status", s.verdict);
                    m.kv("note", &s.note);
                    m.kv("u_verdict", s.u_verdict.status);
                    m.render()
                }
            };
            emit(&out, content)
        }

        Cmd::BnReport {
            triple,
            decision,
            out,
        } => {
            reject_csv(&out)?;
            let ctx = context(triple.genus, !decision.no_petri)?;
            let rules = RuleSet::for_mode(decision.mode.into());
            let r = bn_report(&ctx, &int(triple.rank), &int(triple.degree), &rules)?;
            let content = match out.format {
                FormatArg::Human => {
                    let mut s = format!("beta = {}\nB verdict: {}\n", r.beta, r.b_verdict.status);
                    if r.in_window {
                        s.push_str(&format!(
                            "irreducible: yes\ndim = {}\nsingular locus: {}\nprojective: {}\n",
                            r.dim.as_ref().unwrap(),
                            r.singular_locus.as_ref().unwrap(),
                            if r.projective.unwrap() { "yes" } else { "no" }
                        ));
                    }
                    if let Some(note) = &r.birational_note {
                        s.push_str(&format!("{note}\n"));
                    }
                    if let Some(note) = &r.empty_note {
                        s.push_str(&format!("{note}\n"));
                    }
                    s
                }
                _ => {
                    let mut m = Machine::new();
                    m.kv("genus", triple.genus);
                    m.kv("rank", triple.rank);
                    m.kv("degree", triple.degree);
                    m.kv("beta", &r.beta);
                    m.kv("b_verdict", r.b_verdict.status);
                    m.kv("in_window", r.in_window);
                    if let Some(v) = r.irreducible {
                        m.kv("irreducible", v);
                    }
                    if let Some(v) = &r.dim {
                        m.kv("dim", v);
                    }
                    if let Some(v) = &r.singular_locus {
                        m.kv("singular_locus", v);
                    }
                    if let Some(v) = r.projective {
                        m.kv("projective", v);
                    }
                    if let Some(v) = &r.birational_note {
                        m.kv("birational", v);
                    }
                    if let Some(v) = &r.empty_note {
                        m.kv("empty_note", v);
                    }
                    m.render()
                }
            };
            emit(&out, content)
        }
    }
}
