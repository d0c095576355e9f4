//! `ellcount`: batch front end. Every output line is one `key=value` record.

use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use thiserror::Error;

use ellcount::counting_formulas::{
    assemble, format_rational, n_unweighted, n_weighted, CountError, CountQuery,
};
use ellcount::galois_field::{FieldError, GaloisField};
use ellcount::height_moduli_classes::{zeta_truncation, HeightError, HeightTarget, WeightVector};
use ellcount::p1_sections::{count_minimal_weighted, CountStrategy, SectionError, DEFAULT_BUDGET};
use ellcount::verify::{ledger_sum, minimal_fit, run_grid, Grid};
use ellcount::weierstrass_oracle::{
    census_char2_j0, census_char2_jne0, census_char3_j0, orbit_census, slice_census, CensusFilter,
    CensusOptions, CensusResult, CensusSummary, JStratum, OracleError, DEFAULT_CENSUS_BUDGET,
};

#[derive(Parser)]
#[command(
    name = "ellcount",
    version,
    about = "Exact counts of elliptic curves over F_q(t)"
)]
struct Cli {
    /// Worker threads for censuses.
    #[arg(long, global = true, env = "ELLCOUNT_SHARDS", default_value_t = 1)]
    shards: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Motivic class of a height moduli space.
    Motive {
        /// `P(4,6)`, `P(8)`, `Pdual(4)`, `BQ12`, `BZ` or `BQ24`.
        #[arg(long)]
        target: HeightTarget,
        #[arg(long)]
        height: u64,
        /// Also specialize `L -> q`.
        #[arg(long)]
        q: Option<u64>,
    },
    /// Closed-form counts with bounded height.
    Count(CountArgs),
    #[command(subcommand)]
    Census(CensusCommand),
    /// Height zeta coefficients and an optional rational fit.
    Zeta {
        #[arg(long)]
        target: HeightTarget,
        #[arg(long)]
        trunc: u64,
        #[arg(long)]
        fit: bool,
    },
    /// Cross-layer verification grid.
    Verify {
        #[arg(long, default_value = "default")]
        grid: Grid,
        /// Only these criteria, comma separated.
        #[arg(long, value_delimiter = ',')]
        criteria: Option<Vec<u8>>,
        /// Leave out per-entry timings.
        #[arg(long)]
        no_timing: bool,
    },
}

#[derive(Args)]
struct CountArgs {
    #[arg(long, required_unless_present = "batch")]
    q: Option<u64>,
    #[arg(long, required_unless_present = "batch")]
    m: Option<u64>,
    /// Only the weighted count (also defined at `m = 0`).
    #[arg(long)]
    weighted: bool,
    /// File of `q m` pairs, one per line; `-` reads standard input.
    #[arg(long, conflicts_with_all = ["q", "m"])]
    batch: Option<PathBuf>,
}

#[derive(Subcommand)]
enum CensusCommand {
    /// Minimal weighted linear series on P^1.
    Sections {
        #[arg(long)]
        lambda: WeightVector,
        #[arg(long)]
        n: u64,
        #[arg(long)]
        q: u64,
        #[arg(long, value_enum, default_value = "auto")]
        strategy: Strategy,
        #[arg(long, default_value_t = DEFAULT_BUDGET)]
        budget: u64,
    },
    /// Weierstrass models of heights `0..=n`. Odd characteristic runs in the
    /// `a1 = a3 = 0` slice.
    Weierstrass {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value = "delta_nonzero")]
        filter: CensusFilter,
        #[arg(long, default_value_t = DEFAULT_CENSUS_BUDGET)]
        budget: u64,
    },
    /// Normal forms of one `j`-stratum at height `n`.
    Normalform {
        #[arg(long = "char")]
        characteristic: u32,
        /// Field order; defaults to the characteristic.
        #[arg(long)]
        q: Option<u64>,
        /// `j0`, or `j=<index>` in characteristic 2.
        #[arg(long)]
        stratum: String,
        #[arg(long)]
        n: u64,
        #[arg(long, default_value = "all")]
        filter: CensusFilter,
        #[arg(long, default_value_t = DEFAULT_CENSUS_BUDGET)]
        budget: u64,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Strategy {
    Auto,
    Enumeration,
    InclusionExclusion,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("budget exceeded: {size} > {budget}")]
    Budget { size: String, budget: u64 },
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl From<FieldError> for CliError {
    fn from(e: FieldError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<CountError> for CliError {
    fn from(e: CountError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<HeightError> for CliError {
    fn from(e: HeightError) -> Self {
        CliError::Usage(e.to_string())
    }
}

impl From<SectionError> for CliError {
    fn from(e: SectionError) -> Self {
        match e {
            SectionError::BudgetExceeded { size, budget } => CliError::Budget { size, budget },
            e => CliError::Usage(e.to_string()),
        }
    }
}

impl From<OracleError> for CliError {
    fn from(e: OracleError) -> Self {
        match e {
            OracleError::BudgetExceeded { size, budget } => CliError::Budget { size, budget },
            e => CliError::Usage(e.to_string()),
        }
    }
}

/// Exit status of a command that ran to completion.
enum Outcome {
    Done,
    Mismatch,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match run(cli, &mut out) {
        Ok(Outcome::Done) => ExitCode::SUCCESS,
        Ok(Outcome::Mismatch) => ExitCode::from(2),
        Err(CliError::Budget { size, budget }) => {
            let _ = writeln!(
                out,
                "record=refused reason=budget size={size} budget={budget}"
            );
            ExitCode::from(3)
        }
        Err(e) => {
            let _ = writeln!(out, "record=error message={:?}", e.to_string());
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli, out: &mut impl Write) -> Result<Outcome, CliError> {
    let shards = cli.shards.max(1);
    match cli.command {
        Command::Motive { target, height, q } => {
            let class = target.class(height)?;
            let mut line = format!(
                "record=motive target={target} height={height} class={:?}",
                class.to_string()
            );
            if let Some(q) = q {
                line.push_str(&format!(" q={q} count={}", class.specialize(q)));
            }
            writeln!(out, "{line}")?;
            Ok(Outcome::Done)
        }
        Command::Count(args) => count(args, out),
        Command::Census(c) => census(c, shards, out),
        Command::Zeta { target, trunc, fit } => {
            let series = zeta_truncation(&target, trunc)?;
            for (n, c) in series.iter().enumerate() {
                writeln!(
                    out,
                    "record=zeta target={target} n={n} class={:?}",
                    c.to_string()
                )?;
            }
            if fit {
                match minimal_fit(&series) {
                    Some(fit) => {
                        writeln!(
                            out,
                            "record=fit target={target} trunc={trunc} denominator_degree={} fit={:?}",
                            fit.denominator_degree(),
                            fit.to_string()
                        )?;
                    }
                    None => writeln!(out, "record=fit target={target} trunc={trunc} fit=none")?,
                }
            }
            Ok(Outcome::Done)
        }
        Command::Verify {
            grid,
            criteria,
            no_timing,
        } => {
            let opts = CensusOptions {
                shards,
                ..CensusOptions::default()
            };
            let report = run_grid(grid, criteria.as_deref(), &opts);
            for e in &report.entries {
                writeln!(out, "{}", e.record(!no_timing))?;
            }
            for (c, ok) in report.by_criterion() {
                writeln!(
                    out,
                    "record=criterion criterion={c} verdict={}",
                    if ok { "pass" } else { "fail" }
                )?;
            }
            writeln!(out, "{}", report.summary_record())?;
            Ok(if report.passed() {
                Outcome::Done
            } else {
                Outcome::Mismatch
            })
        }
    }
}

fn count_record(q: u64, m: u64, weighted_only: bool) -> Result<String, CliError> {
    let query = CountQuery::new(q, m)?;
    let weighted = format_rational(&n_weighted(&query));
    if weighted_only {
        return Ok(format!(
            "record=count q={q} m={m} bound={} weighted={weighted}",
            query.bound_display()
        ));
    }
    let unweighted = n_unweighted(&query)?;
    let assembled = assemble(&query)?;
    let verdict = if assembled == BigRational::from_integer(unweighted.clone()) {
        "pass"
    } else {
        "fail"
    };
    Ok(format!(
        "record=count q={q} m={m} bound={} weighted={weighted} unweighted={unweighted} assembled={} verdict={verdict}",
        query.bound_display(),
        format_rational(&assembled)
    ))
}

fn count(args: CountArgs, out: &mut impl Write) -> Result<Outcome, CliError> {
    let Some(path) = args.batch else {
        let (q, m) = (args.q.expect("required"), args.m.expect("required"));
        let line = count_record(q, m, args.weighted)?;
        writeln!(out, "{line}")?;
        return Ok(if line.ends_with("verdict=fail") {
            Outcome::Mismatch
        } else {
            Outcome::Done
        });
    };
    let reader: Box<dyn BufRead> = if path.as_os_str() == "-" {
        Box::new(io::BufReader::new(io::stdin()))
    } else {
        Box::new(io::BufReader::new(std::fs::File::open(&path)?))
    };
    let mut outcome = Outcome::Done;
    let mut errors = 0;
    for (lineno, line) in reader.lines().enumerate() {
        let line = line?;
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let nums: Vec<u64> = line
            .split(|c: char| c.is_whitespace() || c == ',')
            .filter(|t| !t.is_empty())
            .map(str::parse)
            .collect::<Result<_, _>>()
            .map_err(|_| CliError::Usage(format!("line {}: expected `q m`", lineno + 1)))?;
        let [q, m] = nums[..] else {
            return Err(CliError::Usage(format!(
                "line {}: expected `q m`",
                lineno + 1
            )));
        };
        match count_record(q, m, args.weighted) {
            Ok(rec) => {
                if rec.ends_with("verdict=fail") {
                    outcome = Outcome::Mismatch;
                }
                writeln!(out, "{rec}")?;
            }
            Err(CliError::Usage(msg)) => {
                errors += 1;
                writeln!(out, "record=error q={q} m={m} message={msg:?}")?;
            }
            Err(e) => return Err(e),
        }
    }
    if errors > 0 {
        return Err(CliError::Usage(format!("{errors} batch lines failed")));
    }
    Ok(outcome)
}

fn census_record(kind: &str, r: &CensusResult) -> String {
    let s = &r.stratum;
    format!(
        "record=census kind={kind} form={} group={:?} q={} n={} filter={} family={} models={} group_order={} weighted={} orbits={} stabilizer_mass={}",
        s.form,
        s.group,
        s.q,
        s.n,
        s.filter,
        r.family_size,
        r.model_count,
        r.group_order,
        format_rational(&r.weighted),
        r.orbit_count,
        format_rational(&r.stabilizer_mass)
    )
}

fn verdict(a: &str, b: &str) -> &'static str {
    if a == b {
        "pass"
    } else {
        "fail"
    }
}

fn census(cmd: CensusCommand, shards: usize, out: &mut impl Write) -> Result<Outcome, CliError> {
    match cmd {
        CensusCommand::Sections {
            lambda,
            n,
            q,
            strategy,
            budget,
        } => {
            let f = GaloisField::of_order(q)?;
            let strategy = match strategy {
                Strategy::Auto => CountStrategy::Auto,
                Strategy::Enumeration => CountStrategy::Enumeration,
                Strategy::InclusionExclusion => CountStrategy::InclusionExclusion,
            };
            let c = count_minimal_weighted(&lambda, n, &f, strategy, budget)?;
            let weighted = format_rational(&c.weighted);
            let mut line = format!(
                "record=census kind=sections lambda={lambda} q={q} n={n} minimal={} weighted={weighted} enumerated={} inclusion_exclusion={}",
                c.minimal_count, c.enumerated, c.inclusion_exclusion
            );
            let mut outcome = Outcome::Done;
            let target = HeightTarget::from_weights(lambda);
            if let Ok(class) = target.class(n) {
                let motive = class.specialize(q).to_string();
                let v = verdict(&weighted, &motive);
                if v == "fail" {
                    outcome = Outcome::Mismatch;
                }
                line.push_str(&format!(" motive={motive} verdict={v}"));
            }
            writeln!(out, "{line}")?;
            Ok(outcome)
        }
        CensusCommand::Weierstrass {
            q,
            n,
            filter,
            budget,
        } => {
            let f = GaloisField::of_order(q)?;
            let opts = CensusOptions {
                budget,
                shards,
                ..CensusOptions::default()
            };
            let results = (0..=n)
                .map(|k| {
                    if f.characteristic() == 2 {
                        orbit_census(&f, k, filter, &opts)
                    } else {
                        slice_census(&f, k, filter, &opts)
                    }
                })
                .collect::<Result<Vec<_>, _>>()?;
            for r in &results {
                writeln!(out, "{}", census_record("weierstrass", r))?;
            }
            let sum = CensusSummary::of(&results);
            let mut line = format!(
                "record=census_cumulative q={q} heights=0..{n} filter={filter} models={} weighted={} orbits={}",
                sum.model_count,
                format_rational(&sum.weighted),
                sum.orbit_count
            );
            let mut outcome = Outcome::Done;
            let formula_applies =
                filter == CensusFilter::minimal() && n >= 1 && matches!(f.characteristic(), 2 | 3);
            if formula_applies {
                let query = CountQuery::new(q, n)?;
                let fw = format_rational(&n_weighted(&query));
                let fu = n_unweighted(&query)?.to_string();
                let vw = verdict(&fw, &format_rational(&sum.weighted));
                let vu = verdict(&fu, &sum.orbit_count.to_string());
                if vw == "fail" || vu == "fail" {
                    outcome = Outcome::Mismatch;
                }
                line.push_str(&format!(
                    " formula_weighted={fw} formula_unweighted={fu} verdict_weighted={vw} verdict_unweighted={vu}"
                ));
            }
            writeln!(out, "{line}")?;
            Ok(outcome)
        }
        CensusCommand::Normalform {
            characteristic,
            q,
            stratum,
            n,
            filter,
            budget,
        } => {
            let q = q.unwrap_or(characteristic as u64);
            let f = GaloisField::of_order(q)?;
            if f.characteristic() != characteristic {
                return Err(CliError::Usage(format!(
                    "GF({q}) does not have characteristic {characteristic}"
                )));
            }
            let opts = CensusOptions {
                budget,
                shards,
                ..CensusOptions::default()
            };
            let j = match stratum.as_str() {
                "j0" => JStratum::Zero,
                s => match s.strip_prefix("j=").map(str::parse::<u32>) {
                    Some(Ok(v)) if v > 0 && v < f.order() => JStratum::Value(v),
                    _ => return Err(CliError::Usage(format!("unknown stratum {s:?}"))),
                },
            };
            let (result, target, ledger) = match (characteristic, j) {
                (3, JStratum::Zero) => (
                    census_char3_j0(&f, n, filter, &opts)?,
                    HeightTarget::BQ12,
                    (8, 4),
                ),
                (2, JStratum::Zero) => (
                    census_char2_j0(&f, n, filter, &opts)?,
                    HeightTarget::BQ24,
                    (9, 6),
                ),
                (2, JStratum::Value(v)) => (
                    census_char2_jne0(&f, n, f.element(v), filter, &opts)?,
                    HeightTarget::BZ,
                    (2, 1),
                ),
                _ => {
                    return Err(CliError::Usage(format!(
                        "no normal form for {stratum} in characteristic {characteristic}"
                    )))
                }
            };
            let weighted = format_rational(&result.weighted);
            let mut line = census_record("normalform", &result);
            // all normal forms against the ledger sum, minimal ones against the class
            let (layer, expected) = if filter.minimal {
                ("motive", target.class(n)?.specialize(q).to_string())
            } else if filter == CensusFilter::all() {
                ("ledger", ledger_sum(q, n, ledger.0, ledger.1).to_string())
            } else {
                ("none", String::new())
            };
            let mut outcome = Outcome::Done;
            if layer != "none" {
                let v = verdict(&weighted, &expected);
                if v == "fail" {
                    outcome = Outcome::Mismatch;
                }
                line.push_str(&format!(" compare={layer} expected={expected} verdict={v}"));
            }
            writeln!(out, "{line}")?;
            Ok(outcome)
        }
    }
}
