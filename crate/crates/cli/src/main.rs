//! `segre`: stratum and Brill–Noether calculators, witness generators and
//! oracle verifiers for rank-2 bundles on the projective plane.
//!
//! Exit status: 0 on success, 1 when a verification fails or a generator runs
//! out of retries, 2 on malformed input.

mod render;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use render::{Format, Output, Table};
use segre_core::brill_noether::{bn_summary, rho, BnSummary};
use segre_core::harness::{
    admissible_grid, sweep, verify_boundary, verify_formula_ext1, verify_formula_fiber,
    verify_lemma_tool, verify_stratum_dim, verify_weak_bn, SweepSuite, VerificationReport,
};
use segre_core::plane::{h0_ideal, h1_ideal};
use segre_core::strata::{admissible_invariants, StratumReport};
use segre_core::witness::{
    bn_witness, stratum_witness, CheckValue, ProbeReport, WitnessError, DEFAULT_RETRIES,
};
use segre_core::{ChernData, Field, Parity, RngState, WitnessReport, ZeroCycle, DEFAULT_PRIME};

#[derive(Parser)]
#[command(
    name = "segre",
    version,
    about = "Segre-invariant strata of rank-2 bundles on the plane"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct OutputArgs {
    #[arg(long, value_enum, default_value_t = Format::Table)]
    format: Format,
    /// Write the rendered output here and print a one-line summary instead.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ChernArgs {
    #[arg(long, allow_negative_numbers = true)]
    c1: i64,
    #[arg(long, allow_negative_numbers = true)]
    c2: i64,
}

impl ChernArgs {
    fn chern(&self) -> ChernData {
        ChernData::new(self.c1, self.c2)
    }
}

#[derive(Args)]
struct PrimeArg {
    /// Prime for 𝔽_p computations.
    #[arg(long, env = "SEGRE_PRIME", default_value_t = DEFAULT_PRIME)]
    prime: u64,
}

#[derive(Args)]
struct TrialArgs {
    #[arg(long, default_value_t = 10)]
    trials: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[command(flatten)]
    prime: PrimeArg,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldKind {
    Fp,
    Q,
}

#[derive(Clone, Copy, ValueEnum)]
enum ParityArg {
    Even,
    Odd,
}

impl From<ParityArg> for Parity {
    fn from(p: ParityArg) -> Parity {
        match p {
            ParityArg::Even => Parity::Even,
            ParityArg::Odd => Parity::Odd,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Admissible Segre invariants with stratum dimensions.
    Strata {
        #[command(flatten)]
        chern: ChernArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Brill–Noether numbers, section thresholds and dimension bounds.
    Bn {
        #[command(flatten)]
        chern: ChernArgs,
        /// Only print ρ for this number of sections.
        #[arg(long)]
        t: Option<i64>,
        /// Largest t in the ρ table.
        #[arg(long, default_value_t = 5)]
        max_t: i64,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Build and verify an explicit bundle.
    Witness {
        #[command(subcommand)]
        kind: WitnessCommand,
    },
    /// Compare closed forms against rank computations on random cycles.
    Verify {
        #[command(subcommand)]
        suite: VerifyCommand,
    },
    /// h⁰ and h¹ of O(d) twisted by the ideal of a zero-cycle read from JSON.
    H0 {
        #[arg(long, allow_negative_numbers = true)]
        d: i64,
        #[arg(long)]
        points: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Subcommand)]
enum WitnessCommand {
    /// A bundle with the given Segre invariant from a general cycle.
    Stratum {
        #[command(flatten)]
        chern: ChernArgs,
        #[arg(long, allow_negative_numbers = true)]
        s: i64,
        #[arg(long, value_enum, default_value_t = FieldKind::Fp)]
        field: FieldKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        prime: PrimeArg,
        #[arg(long, default_value_t = DEFAULT_RETRIES)]
        retries: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// A stable bundle with many sections from points on a curve.
    Bn {
        #[arg(long, allow_negative_numbers = true)]
        r: i64,
        #[arg(long, allow_negative_numbers = true)]
        k: i64,
        #[arg(long, allow_negative_numbers = true)]
        c2: i64,
        #[arg(long, value_enum, default_value_t = ParityArg::Even)]
        parity: ParityArg,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[command(flatten)]
        prime: PrimeArg,
        #[arg(long, default_value_t = DEFAULT_RETRIES)]
        retries: usize,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct FormulaArgs {
    /// 0 or -1; c2 is taken with this first Chern class.
    #[arg(long, allow_negative_numbers = true, default_value_t = 0)]
    c1: i64,
    #[arg(long, allow_negative_numbers = true)]
    c2: i64,
    #[arg(long, allow_negative_numbers = true)]
    k: i64,
}

#[derive(Subcommand)]
enum VerifyCommand {
    /// Stratum dimension from moduli of cycles and extensions.
    Dims {
        #[command(flatten)]
        chern: ChernArgs,
        #[arg(long, allow_negative_numbers = true)]
        s: i64,
        #[command(flatten)]
        run: TrialArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Dimension of the extension space.
    Ext1 {
        #[command(flatten)]
        formula: FormulaArgs,
        #[command(flatten)]
        run: TrialArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Sections of E(k) on general bundles of the stratum.
    Fiber {
        #[command(flatten)]
        formula: FormulaArgs,
        #[command(flatten)]
        run: TrialArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Deleting a point from a cycle on no degree-d curve leaves one on no degree-(d-2) curve.
    LemmaTool {
        #[command(flatten)]
        run: TrialArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// General bundles have no sections at chi = 0.
    WeakBn {
        #[arg(long, allow_negative_numbers = true)]
        c1: i64,
        #[command(flatten)]
        run: TrialArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Bundles built for an inadmissible invariant never reach it.
    Boundary {
        #[command(flatten)]
        chern: ChernArgs,
        #[arg(long, allow_negative_numbers = true)]
        s: i64,
        #[command(flatten)]
        run: TrialArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Run dims, ext1 or fiber on every admissible (c1 ∈ {0,-1}, c2, k).
    Sweep {
        #[arg(long, value_enum)]
        suite: SweepArg,
        #[arg(long, default_value_t = 4)]
        k_max: i64,
        #[arg(long, default_value_t = 30)]
        c2_max: i64,
        #[command(flatten)]
        run: TrialArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum SweepArg {
    Dims,
    Ext1,
    Fiber,
}

enum CliError {
    /// Malformed or inadmissible input: exit 2.
    Input(String),
    /// A verification or generator failed: exit 1.
    Failed(String),
}

impl From<WitnessError> for CliError {
    fn from(e: WitnessError) -> Self {
        match e {
            WitnessError::Exhausted { .. } => CliError::Failed(e.to_string()),
            WitnessError::Inadmissible(_) | WitnessError::Field(_) => {
                CliError::Input(e.to_string())
            }
        }
    }
}

/// What a command produced: the output, a one-line summary, and whether it succeeded.
struct Done {
    output: Output,
    summary: String,
    ok: bool,
}

fn prime_field(prime: u64) -> Result<Field, CliError> {
    Field::prime(prime).map_err(|e| CliError::Input(e.to_string()))
}

fn branch_condition(c: ChernData, st: &StratumReport) -> String {
    let (r, k) = (c.r(), st.k);
    let (text, value) = match c.parity() {
        Parity::Even => ("r^2+k^2+3k+1", r * r + k * k + 3 * k + 1),
        Parity::Odd => ("r^2-r+k^2+2k", r * r - r + k * k + 2 * k),
    };
    let op = if st.generic_branch { ">" } else { "<=" };
    format!("c2 {op} {text} = {value}")
}

fn cmd_strata(c: ChernData) -> Done {
    let strata = admissible_invariants(c);
    let mut t = Table::new(
        format!("strata of M(2; {}, {})", c.c1, c.c2),
        &["s", "k", "dim", "open", "branch"],
    );
    for st in &strata {
        let open = if st.is_open { "open" } else { "" };
        t.row([
            st.s.to_string(),
            st.k.to_string(),
            st.dim.to_string(),
            open.into(),
            branch_condition(c, st),
        ]);
    }
    Done {
        summary: format!("{} strata for (c1={}, c2={})", strata.len(), c.c1, c.c2),
        output: Output::new(&strata, vec![t]),
        ok: true,
    }
}

#[derive(Serialize)]
struct RhoValue {
    c1: i64,
    c2: i64,
    t: i64,
    rho: i64,
}

fn opt(v: Option<i64>) -> String {
    v.map_or_else(|| "-".into(), |x| x.to_string())
}

fn cmd_bn(c: ChernData, t: Option<i64>, max_t: i64) -> Result<Done, CliError> {
    if let Some(t) = t {
        if t < 0 {
            return Err(CliError::Input(format!("t must be nonnegative, got {t}")));
        }
        let v = RhoValue {
            c1: c.c1,
            c2: c.c2,
            t,
            rho: rho(c, t),
        };
        let mut table = Table::new("Brill-Noether number", &["c1", "c2", "t", "rho"]);
        table.row([v.c1, v.c2, v.t, v.rho]);
        return Ok(Done {
            summary: format!("rho = {}", v.rho),
            output: Output::new(&v, vec![table]),
            ok: true,
        });
    }
    if max_t < 0 {
        return Err(CliError::Input(format!(
            "max-t must be nonnegative, got {max_t}"
        )));
    }
    let b: BnSummary = bn_summary(c, max_t);
    let head = Table::pairs(
        format!("M(2; {}, {})", c.c1, c.c2),
        vec![
            ("moduli_dim", b.moduli_dim.to_string()),
            ("euler_characteristic", b.euler_characteristic.to_string()),
            ("weak_brill_noether", b.weak_brill_noether.to_string()),
        ],
    );
    let mut rho_t = Table::new("rho by number of sections", &["t", "rho"]);
    for r in &b.rho_table {
        rho_t.row([r.t, r.rho]);
    }
    let mut strata = Table::new(
        "sections forced on each stratum",
        &["s", "k", "dim", "min_sections", "rho_at_min_sections"],
    );
    for s in &b.strata {
        strata.row([s.s, s.k, s.dim, s.min_sections, s.rho_at_min_sections]);
    }
    let mut nonempty = Table::new(
        "loci certified nonempty by points on a curve",
        &["k", "s", "t", "rho", "dim_lower_bound", "stratum_nonempty"],
    );
    for n in &b.nonempty {
        nonempty.row([
            n.k.to_string(),
            n.s.to_string(),
            n.t.to_string(),
            n.rho.to_string(),
            opt(n.lower_bound),
            n.nonempty_certified.to_string(),
        ]);
    }
    let summary = format!(
        "dim {} chi {}{}",
        b.moduli_dim,
        b.euler_characteristic,
        if b.weak_brill_noether {
            ", weak Brill-Noether"
        } else {
            ""
        }
    );
    Ok(Done {
        output: Output::new(&b, vec![head, rho_t, strata, nonempty]),
        summary,
        ok: true,
    })
}

fn check_text(v: &CheckValue) -> String {
    match v {
        CheckValue::Bool(b) => b.to_string(),
        CheckValue::Int(i) => i.to_string(),
    }
}

fn witness_done(w: WitnessReport) -> Done {
    let e = &w.bundle;
    let mut pairs = vec![
        ("kind", format!("{:?}", w.kind).to_lowercase()),
        ("c1", w.chern.c1.to_string()),
        ("c2", w.chern.c2.to_string()),
        ("s", w.s.to_string()),
        ("a", e.sub_degree().to_string()),
        ("b", e.quotient_degree().to_string()),
        ("length", e.cycle().len().to_string()),
    ];
    if let Some(t) = w.t {
        pairs.push(("t", t.to_string()));
    }
    if let Some(curve) = &w.curve {
        pairs.push(("curve", curve.clone()));
    }
    pairs.extend([
        ("retries_used", w.retries_used.to_string()),
        ("seed", w.seed.to_string()),
        ("prime", opt(w.prime.map(|p| p as i64))),
    ]);
    let head = Table::pairs("witness", pairs);
    let mut checks = Table::new("checks", &["check", "value"]);
    for (k, v) in &w.checks {
        checks.row([k.clone(), check_text(v)]);
    }
    let mut points = Table::new("cycle", &["point"]);
    for p in e.cycle().points() {
        points.row([p.to_string()]);
    }
    let summary = format!(
        "{:?} witness (a={}, b={}, l={}): segre={}, h0={}, stable={}",
        w.kind,
        e.sub_degree(),
        e.quotient_degree(),
        e.cycle().len(),
        opt(w.check_int("segre_value")),
        opt(w.check_int("h0_value")),
        w.check_bool("stable").unwrap_or(false),
    )
    .to_lowercase();
    Done {
        output: Output::new(&w, vec![head, checks, points]),
        summary,
        ok: w.recheck(),
    }
}

fn report_done(rep: VerificationReport) -> Done {
    let mut pairs: Vec<(&str, String)> = vec![("suite", rep.suite.clone())];
    for (k, v) in &rep.parameters {
        pairs.push((k.as_str(), v.to_string()));
    }
    pairs.extend([
        ("closed_form", rep.closed_form_value.to_string()),
        ("agree", rep.agree.to_string()),
        ("trials", rep.trials.to_string()),
        ("resamples", rep.resamples.to_string()),
        ("seed", rep.seed.to_string()),
    ]);
    let head = Table::pairs(format!("verify {}", rep.suite), pairs);
    let detail_keys: Vec<String> = rep
        .evidence
        .first()
        .map(|e| e.detail.keys().cloned().collect())
        .unwrap_or_default();
    let mut headers = vec!["trial", "length", "resamples", "oracle"];
    headers.extend(detail_keys.iter().map(String::as_str));
    let mut trials = Table::new("trials", &headers);
    for e in &rep.evidence {
        let mut row = vec![
            e.trial.to_string(),
            e.length.to_string(),
            e.resamples.to_string(),
            e.oracle.to_string(),
        ];
        row.extend(detail_keys.iter().map(|k| opt(e.detail.get(k).copied())));
        trials.row(row);
    }
    let label: Vec<String> = std::iter::once(rep.suite.clone())
        .chain(rep.parameters.iter().map(|(k, v)| format!("{k}={v}")))
        .collect();
    let matching = rep
        .oracle_values
        .iter()
        .filter(|&&v| v == rep.closed_form_value)
        .count();
    let summary = format!(
        "{}: {}, closed form {}, {matching}/{} trials match",
        label.join(" "),
        if rep.agree { "agree" } else { "DISAGREE" },
        rep.closed_form_value,
        rep.trials
    );
    Done {
        ok: rep.agree,
        output: Output::new(&rep, vec![head, trials]),
        summary,
    }
}

fn probe_done(rep: ProbeReport) -> Done {
    let head = Table::pairs(
        "boundary probe",
        vec![
            ("c1", rep.chern.c1.to_string()),
            ("c2", rep.chern.c2.to_string()),
            ("s", rep.s.to_string()),
            ("k", rep.k.to_string()),
            ("length", rep.length.to_string()),
            ("trials", rep.trials.to_string()),
            ("max_segre", opt(rep.max_segre)),
            ("passed", rep.passed().to_string()),
        ],
    );
    let mut counts = Table::new("observed invariants", &["segre", "trials"]);
    for (s, n) in &rep.segre_counts {
        counts.row([s.to_string(), n.to_string()]);
    }
    let summary = format!(
        "boundary (c1={}, c2={}, s={}): max invariant {} over {} trials{}",
        rep.chern.c1,
        rep.chern.c2,
        rep.s,
        opt(rep.max_segre),
        rep.trials,
        if rep.passed() { "" } else { ", REACHED s" }
    );
    Done {
        ok: rep.passed(),
        output: Output::new(&rep, vec![head, counts]),
        summary,
    }
}

fn sweep_done(reports: Vec<VerificationReport>) -> Done {
    let mut t = Table::new(
        "sweep",
        &[
            "suite",
            "c1",
            "c2",
            "s",
            "closed_form",
            "oracle",
            "agree",
            "resamples",
        ],
    );
    for r in &reports {
        let mut values = r.oracle_values.clone();
        values.dedup();
        let oracle: Vec<String> = values.iter().map(i64::to_string).collect();
        t.row([
            r.suite.clone(),
            r.parameters["c1"].to_string(),
            r.parameters["c2"].to_string(),
            r.parameters["s"].to_string(),
            r.closed_form_value.to_string(),
            oracle.join(" "),
            r.agree.to_string(),
            r.resamples.to_string(),
        ]);
    }
    let bad = reports.iter().filter(|r| !r.agree).count();
    Done {
        ok: bad == 0,
        summary: format!("{} grid points, {bad} disagreements", reports.len()),
        output: Output::new(&reports, vec![t]),
    }
}

fn formula_parity(f: &FormulaArgs) -> Result<Parity, CliError> {
    match f.c1 {
        0 => Ok(Parity::Even),
        -1 => Ok(Parity::Odd),
        c1 => Err(CliError::Input(format!("c1 must be 0 or -1, got {c1}"))),
    }
}

#[derive(Serialize)]
struct H0Value {
    d: i64,
    length: usize,
    h0: usize,
    h1: usize,
}

fn cmd_h0(d: i64, path: &Path) -> Result<Done, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let z: ZeroCycle = serde_json::from_str(&text)
        .map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let v = H0Value {
        d,
        length: z.len(),
        h0: h0_ideal(d, &z),
        h1: h1_ideal(d, &z),
    };
    let mut t = Table::new(
        "cohomology of O(d) twisted by the ideal of Z",
        &["d", "length", "h0", "h1"],
    );
    t.row([
        v.d.to_string(),
        v.length.to_string(),
        v.h0.to_string(),
        v.h1.to_string(),
    ]);
    Ok(Done {
        summary: format!("h0={} h1={}", v.h0, v.h1),
        output: Output::new(&v, vec![t]),
        ok: true,
    })
}

fn run(command: Command) -> Result<(Done, OutputArgs), CliError> {
    Ok(match command {
        Command::Strata { chern, output } => (cmd_strata(chern.chern()), output),
        Command::Bn {
            chern,
            t,
            max_t,
            output,
        } => (cmd_bn(chern.chern(), t, max_t)?, output),
        Command::H0 { d, points, output } => (cmd_h0(d, &points)?, output),
        Command::Witness { kind } => match kind {
            WitnessCommand::Stratum {
                chern,
                s,
                field,
                seed,
                prime,
                retries,
                output,
            } => {
                let field = match field {
                    FieldKind::Fp => prime_field(prime.prime)?,
                    FieldKind::Q => Field::Rational,
                };
                let w =
                    stratum_witness(chern.chern(), s, field, &mut RngState::new(seed), retries)?;
                (witness_done(w), output)
            }
            WitnessCommand::Bn {
                r,
                k,
                c2,
                parity,
                seed,
                prime,
                retries,
                output,
            } => {
                let w = bn_witness(
                    r,
                    k,
                    c2,
                    parity.into(),
                    prime.prime,
                    &mut RngState::new(seed),
                    retries,
                )?;
                (witness_done(w), output)
            }
        },
        Command::Verify { suite } => match suite {
            VerifyCommand::Dims {
                chern,
                s,
                run,
                output,
            } => {
                let f = prime_field(run.prime.prime)?;
                (
                    report_done(verify_stratum_dim(
                        chern.chern(),
                        s,
                        run.trials,
                        f,
                        run.seed,
                    )?),
                    output,
                )
            }
            VerifyCommand::Ext1 {
                formula,
                run,
                output,
            } => {
                let parity = formula_parity(&formula)?;
                let f = prime_field(run.prime.prime)?;
                let rep =
                    verify_formula_ext1(formula.k, formula.c2, parity, run.trials, f, run.seed)?;
                (report_done(rep), output)
            }
            VerifyCommand::Fiber {
                formula,
                run,
                output,
            } => {
                let parity = formula_parity(&formula)?;
                let f = prime_field(run.prime.prime)?;
                let rep =
                    verify_formula_fiber(formula.k, formula.c2, parity, run.trials, f, run.seed)?;
                (report_done(rep), output)
            }
            VerifyCommand::LemmaTool { run, output } => {
                let f = prime_field(run.prime.prime)?;
                (
                    report_done(verify_lemma_tool(run.trials, f, run.seed)?),
                    output,
                )
            }
            VerifyCommand::WeakBn { c1, run, output } => {
                let f = prime_field(run.prime.prime)?;
                (
                    report_done(verify_weak_bn(c1, run.trials, f, run.seed)?),
                    output,
                )
            }
            VerifyCommand::Boundary {
                chern,
                s,
                run,
                output,
            } => {
                let f = prime_field(run.prime.prime)?;
                (
                    probe_done(verify_boundary(chern.chern(), s, run.trials, f, run.seed)?),
                    output,
                )
            }
            VerifyCommand::Sweep {
                suite,
                k_max,
                c2_max,
                run,
                output,
            } => {
                let f = prime_field(run.prime.prime)?;
                if k_max < 1 {
                    return Err(CliError::Input(format!(
                        "k-max must be at least 1, got {k_max}"
                    )));
                }
                let suite = match suite {
                    SweepArg::Dims => SweepSuite::Dims,
                    SweepArg::Ext1 => SweepSuite::Ext1,
                    SweepArg::Fiber => SweepSuite::Fiber,
                };
                let grid = admissible_grid(1..=k_max, c2_max);
                (
                    sweep_done(sweep(suite, &grid, run.trials, f, run.seed)?),
                    output,
                )
            }
        },
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (done, output) = match run(cli.command) {
        Ok(v) => v,
        Err(CliError::Input(msg)) => {
            eprintln!("error: {msg}");
            return ExitCode::from(2);
        }
        Err(CliError::Failed(msg)) => {
            eprintln!("failed: {msg}");
            return ExitCode::from(1);
        }
    };
    let text = done.output.render(output.format);
    match &output.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("error: {}: {e}", path.display());
                return ExitCode::from(2);
            }
            println!("{} -> {}", done.summary, path.display());
        }
        None => print!("{text}"),
    }
    if done.ok {
        ExitCode::SUCCESS
    } else {
        eprintln!("failed: {}", done.summary);
        ExitCode::from(1)
    }
}
