//! Argument parsing and report printing for the `treecut` binary.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;

use treecut::analysis::asymptotic::{asymptotic_prediction, Statistic};
use treecut::analysis::clt::{clt_experiment, clt_exploratory, CLTReport};
use treecut::analysis::constants::{
    alpha_decimal, paths_constant, TotalKind, EULER_GAMMA_DIGITS, LN2_DIGITS, PI_DIGITS, ZETA_PRIME_MINUS_ONE_DIGITS,
};
use treecut::analysis::distribution::{brute_distribution, gf_distribution, Distribution};
use treecut::analysis::report::{gf_factorial_moment, rational_string, to_f64, total_report, MomentReport};
use treecut::ensemble::{enumerate_trees, sample_map, DEFAULT_CAP};
use treecut::exec::Exec;
use treecut::series::moments::moment_value;
use treecut::verify::{find_check, run_all, Context, Limits, CHECKS};
use treecut::{parse_tree, reduce_iter, ReductionMode, Variant};

#[derive(Parser, Debug)]
#[command(name = "treecut", version, about = "Fringe reductions of plane trees")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, global = true, default_value_t = Format::Text)]
    format: Format,
    /// Run on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List all trees of a size in canonical order.
    Enumerate {
        #[arg(long, value_parser = positive)]
        size: usize,
    },
    /// Reduce one tree.
    Reduce {
        #[arg(long)]
        mode: ReductionMode,
        #[arg(long)]
        rounds: usize,
        #[arg(long)]
        tree: String,
    },
    /// Exact distribution of a statistic after r rounds.
    Dist {
        #[command(flatten)]
        cell: Cell,
        #[arg(long, value_enum, default_value_t = DistMethod::Gf)]
        method: DistMethod,
    },
    /// Factorial moment of order d.
    Moments {
        #[command(flatten)]
        cell: Cell,
        #[arg(long, default_value_t = 1, value_parser = positive)]
        order: usize,
        #[arg(long, value_enum, default_value_t = MomentMethod::Closed)]
        method: MomentMethod,
    },
    /// Expected total number of paths or old-path segments.
    Totals {
        #[arg(long, value_parser = parse_kind)]
        kind: TotalKind,
        #[arg(long, value_parser = at_least_two)]
        max_size: usize,
    },
    /// Uniform random trees.
    Sample {
        #[arg(long, value_parser = positive)]
        size: usize,
        #[arg(long)]
        count: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Central-limit experiment.
    Clt {
        #[arg(long)]
        mode: ReductionMode,
        #[arg(long, value_parser = positive)]
        size: usize,
        #[arg(long)]
        rounds: usize,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
    },
    /// Constants used by the expansions.
    Constants,
    /// Cross-check suite; exits with 1 on any failure.
    Verify {
        /// Smaller sizes and orders.
        #[arg(long)]
        quick: bool,
        /// Run only the named checks.
        #[arg(long = "check")]
        checks: Vec<String>,
        /// List the checks and exit.
        #[arg(long)]
        list: bool,
    },
}

#[derive(Args, Debug)]
struct Cell {
    #[arg(long)]
    mode: ReductionMode,
    #[arg(long, value_parser = positive)]
    size: usize,
    #[arg(long)]
    rounds: usize,
    #[arg(long, default_value = "size")]
    variant: Variant,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum DistMethod {
    Brute,
    Gf,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum MomentMethod {
    /// Generating-function row.
    Exact,
    /// Closed moment series.
    Closed,
    /// Asymptotic expansion.
    Asymptotic,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 1 => Ok(n),
        _ => Err(format!("expected a positive integer, got `{s}`")),
    }
}

fn at_least_two(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(n) if n >= 2 => Ok(n),
        _ => Err(format!("expected an integer of at least 2, got `{s}`")),
    }
}

fn parse_kind(s: &str) -> Result<TotalKind, String> {
    s.parse()
}

/// Failure kinds and their exit codes.
enum Failure {
    Usage(String),
    Verification,
    Io(std::io::Error),
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Io(e)
    }
}

impl From<treecut::Error> for Failure {
    fn from(e: treecut::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Out<'a> = &'a mut dyn Write;

fn json<T: Serialize>(out: Out, v: &T) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(|e| Failure::Io(e.into()))?;
    writeln!(out)?;
    Ok(())
}

fn csv_rows(out: Out, header: &[&str], rows: &[Vec<String>]) -> Result<(), Failure> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(header)?;
    for r in rows {
        w.write_record(r)?;
    }
    w.flush()?;
    Ok(())
}

/// Shortest round-trip decimal.
fn float(x: f64) -> String {
    format!("{x:?}")
}

/// Parses `args` (program name first), runs the command, and returns the exit
/// code: 0 on success, 1 when verification fails, 2 on invalid options.
pub fn run<I, T>(args: I, out: Out, err: Out) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(&cli, out) {
        Ok(()) => 0,
        Err(Failure::Usage(m)) => {
            let _ = writeln!(err, "error: {m}");
            2
        }
        Err(Failure::Verification) => 1,
        Err(Failure::Io(e)) => {
            let _ = writeln!(err, "error: {e}");
            2
        }
    }
}

fn dispatch(cli: &Cli, out: Out) -> Result<(), Failure> {
    let exec = if cli.sequential { Exec::Sequential } else { Exec::default() };
    let f = cli.format;
    match &cli.command {
        Command::Enumerate { size } => enumerate(out, f, *size),
        Command::Reduce { mode, rounds, tree } => reduce(out, f, *mode, *rounds, tree),
        Command::Dist { cell, method } => dist(out, f, cell, *method),
        Command::Moments { cell, order, method } => moments(out, f, cell, *order, *method),
        Command::Totals { kind, max_size } => totals(out, f, *kind, *max_size),
        Command::Sample { size, count, seed } => sample(out, f, *size, *count, *seed, exec),
        Command::Clt { mode, size, rounds, samples, seed } => clt(out, f, *mode, *size, *rounds, *samples, *seed, exec),
        Command::Constants => constants(out, f),
        Command::Verify { quick, checks, list } => verify(out, f, *quick, checks, *list, exec),
    }
}

fn enumerate(out: Out, f: Format, n: usize) -> Result<(), Failure> {
    let trees = enumerate_trees(n).map_err(|_| Failure::Usage(format!("enumeration is limited to size {DEFAULT_CAP}")))?;
    match f {
        Format::Json => json(out, &trees.map(|t| t.to_string()).collect::<Vec<_>>()),
        Format::Csv => {
            let rows: Vec<Vec<String>> = trees.map(|t| vec![t.to_string()]).collect();
            csv_rows(out, &["tree"], &rows)
        }
        Format::Text => {
            for t in trees {
                writeln!(out, "{t}")?;
            }
            Ok(())
        }
    }
}

fn reduce(out: Out, f: Format, mode: ReductionMode, rounds: usize, text: &str) -> Result<(), Failure> {
    let tree = parse_tree(text).map_err(|e| Failure::Usage(e.to_string()))?;
    let o = reduce_iter(&tree, mode, rounds);
    let final_tree = o.final_tree.as_ref().map(|t| t.to_string()).unwrap_or_default();
    match f {
        Format::Json => json(out, &o),
        Format::Csv => csv_rows(
            out,
            &["survived", "rounds_applied", "final_size", "final_tree"],
            &[vec![o.survived.to_string(), o.rounds_applied.to_string(), o.final_size.to_string(), final_tree]],
        ),
        Format::Text => {
            writeln!(out, "{}", if o.survived { "survived" } else { "did not survive" })?;
            writeln!(out, "rounds applied: {}", o.rounds_applied)?;
            writeln!(out, "final size: {}", o.final_size)?;
            if o.survived {
                writeln!(out, "final tree: {final_tree}")?;
            }
            Ok(())
        }
    }
}

fn write_distribution(out: Out, f: Format, d: &Distribution) -> Result<(), Failure> {
    match f {
        Format::Json => json(out, d),
        Format::Csv => {
            let rows: Vec<Vec<String>> =
                d.support().into_iter().map(|(k, p)| vec![k.to_string(), rational_string(p)]).collect();
            csv_rows(out, &["value", "mass"], &rows)
        }
        Format::Text => {
            let parts: Vec<String> =
                d.support().into_iter().map(|(k, p)| format!("{k}: {}", rational_string(p))).collect();
            writeln!(out, "{} n={} r={} {}", d.mode, d.n, d.rounds, d.variant)?;
            writeln!(out, "{{{}}}", parts.join(", "))?;
            Ok(())
        }
    }
}

fn dist(out: Out, f: Format, c: &Cell, method: DistMethod) -> Result<(), Failure> {
    let d = match method {
        DistMethod::Brute => brute_distribution(c.mode, c.size, c.rounds, c.variant)?,
        DistMethod::Gf => gf_distribution(c.mode, c.size, c.rounds, c.variant)?,
    };
    write_distribution(out, f, &d)
}

#[derive(Serialize)]
struct MomentLine {
    mode: ReductionMode,
    variant: Variant,
    n: usize,
    rounds: usize,
    order: usize,
    method: &'static str,
    exact: Option<String>,
    value: f64,
}

fn moments(out: Out, f: Format, c: &Cell, d: usize, method: MomentMethod) -> Result<(), Failure> {
    let (exact, value, name): (Option<BigRational>, f64, &str) = match method {
        MomentMethod::Exact => {
            let v = gf_factorial_moment(c.mode, c.variant, d, c.rounds, c.size)?;
            let x = to_f64(&v);
            (Some(v), x, "exact")
        }
        MomentMethod::Closed => {
            let v = moment_value(c.mode, c.variant, d, c.rounds, c.size)?;
            let x = to_f64(&v);
            (Some(v), x, "closed")
        }
        MomentMethod::Asymptotic => {
            let v = asymptotic_prediction(c.mode, c.variant, Statistic::Factorial(d), c.size as f64, c.rounds)?;
            (None, v, "asymptotic")
        }
    };
    let line = MomentLine {
        mode: c.mode,
        variant: c.variant,
        n: c.size,
        rounds: c.rounds,
        order: d,
        method: name,
        exact: exact.as_ref().map(rational_string),
        value,
    };
    match f {
        Format::Json => json(out, &line),
        Format::Csv => csv_rows(
            out,
            &["mode", "variant", "n", "rounds", "order", "method", "exact", "value"],
            &[vec![
                c.mode.to_string(),
                c.variant.to_string(),
                c.size.to_string(),
                c.rounds.to_string(),
                d.to_string(),
                name.into(),
                line.exact.clone().unwrap_or_default(),
                float(value),
            ]],
        ),
        Format::Text => {
            let lhs = format!("E[X^({d})] for {} under {}, n={}, r={}", c.variant, c.mode, c.size, c.rounds);
            match &line.exact {
                Some(e) => writeln!(out, "{lhs} = {e} ~ {}", float(value))?,
                None => writeln!(out, "{lhs} ~ {} (asymptotic)", float(value))?,
            }
            Ok(())
        }
    }
}

fn report_rows(rows: &[MomentReport]) -> Vec<Vec<String>> {
    rows.iter()
        .map(|r| {
            vec![
                r.n.to_string(),
                rational_string(&r.exact_value),
                float(r.exact_float),
                float(r.asymptotic_value),
                float(r.residual),
                float(r.residual_scaled),
            ]
        })
        .collect()
}

fn totals(out: Out, f: Format, kind: TotalKind, max: usize) -> Result<(), Failure> {
    let sizes: Vec<usize> = (2..=max).collect();
    let rows = total_report(kind, &sizes)?;
    let header = ["n", "exact", "exact_float", "asymptotic", "residual", "residual_scaled"];
    match f {
        Format::Json => json(out, &rows),
        Format::Csv => csv_rows(out, &header, &report_rows(&rows)),
        Format::Text => {
            writeln!(out, "expected total {kind}")?;
            writeln!(out, "{}", header.join("\t"))?;
            for r in report_rows(&rows) {
                writeln!(out, "{}", r.join("\t"))?;
            }
            Ok(())
        }
    }
}

fn sample(out: Out, f: Format, n: usize, count: usize, seed: u64, exec: Exec) -> Result<(), Failure> {
    let trees = sample_map(n, count, seed, exec, |t| t.to_string());
    match f {
        Format::Json => json(out, &trees),
        Format::Csv => csv_rows(out, &["tree"], &trees.into_iter().map(|t| vec![t]).collect::<Vec<_>>()),
        Format::Text => {
            for t in trees {
                writeln!(out, "{t}")?;
            }
            Ok(())
        }
    }
}

#[allow(clippy::too_many_arguments)]
fn clt(
    out: Out,
    f: Format,
    mode: ReductionMode,
    n: usize,
    r: usize,
    samples: usize,
    seed: u64,
    exec: Exec,
) -> Result<(), Failure> {
    let rep: CLTReport = if mode == ReductionMode::OldPaths {
        clt_exploratory(n, r, samples, seed, exec)?
    } else {
        clt_experiment(mode, n, r, samples, seed, exec)?
    };
    match f {
        Format::Json => json(out, &rep),
        Format::Csv => csv_rows(
            out,
            &["mode", "n", "rounds", "samples", "seed", "theorem", "mean", "variance", "ks"],
            &[vec![
                mode.to_string(),
                n.to_string(),
                r.to_string(),
                samples.to_string(),
                seed.to_string(),
                rep.theorem.to_string(),
                float(rep.standardized_mean),
                float(rep.standardized_variance),
                float(rep.ks_distance),
            ]],
        ),
        Format::Text => {
            if !rep.theorem {
                writeln!(out, "exploratory: no theorem")?;
            }
            writeln!(out, "{mode} n={n} r={r} samples={samples} seed={seed}")?;
            writeln!(out, "mu = {}, sigma^2 = {}", float(rep.mu), float(rep.sigma2))?;
            writeln!(out, "standardized mean = {}", float(rep.standardized_mean))?;
            writeln!(out, "standardized variance = {}", float(rep.standardized_variance))?;
            writeln!(out, "KS distance = {}", float(rep.ks_distance))?;
            Ok(())
        }
    }
}

fn constants(out: Out, f: Format) -> Result<(), Failure> {
    let c0 = float(paths_constant());
    let entries: Vec<(&str, String)> = vec![
        ("alpha", alpha_decimal(29)),
        ("gamma", EULER_GAMMA_DIGITS.into()),
        ("zeta'(-1)", ZETA_PRIME_MINUS_ONE_DIGITS.into()),
        ("pi", PI_DIGITS.into()),
        ("log 2", LN2_DIGITS.into()),
        ("paths constant", c0),
    ];
    match f {
        Format::Json => {
            let map: serde_json::Map<String, serde_json::Value> =
                entries.into_iter().map(|(k, v)| (k.to_string(), v.into())).collect();
            json(out, &map)
        }
        Format::Csv => csv_rows(
            out,
            &["name", "value"],
            &entries.into_iter().map(|(k, v)| vec![k.to_string(), v]).collect::<Vec<_>>(),
        ),
        Format::Text => {
            for (k, v) in entries {
                writeln!(out, "{k} = {v}")?;
            }
            Ok(())
        }
    }
}

fn verify(out: Out, f: Format, quick: bool, names: &[String], list: bool, exec: Exec) -> Result<(), Failure> {
    if list {
        for c in CHECKS {
            writeln!(out, "{:<28} {}", c.name, c.description)?;
        }
        return Ok(());
    }
    let limits = if quick { Limits::quick() } else { Limits::full() };
    let results = if names.is_empty() {
        run_all(limits, exec)
    } else {
        let cx = Context::new(limits, exec);
        let mut v = Vec::new();
        for n in names {
            let c = find_check(n).ok_or_else(|| Failure::Usage(format!("unknown check `{n}`")))?;
            v.push(c.run(&cx));
        }
        v
    };
    match f {
        Format::Json => json(out, &results)?,
        Format::Csv => csv_rows(
            out,
            &["check", "passed", "detail", "millis"],
            &results
                .iter()
                .map(|r| vec![r.name.to_string(), r.passed.to_string(), r.detail.clone(), r.millis.to_string()])
                .collect::<Vec<_>>(),
        )?,
        Format::Text => {
            for r in &results {
                let tag = if r.passed { "PASS" } else { "FAIL" };
                write!(out, "[{tag}] {} ({} ms)", r.name, r.millis)?;
                if r.passed {
                    writeln!(out)?;
                } else {
                    writeln!(out, ": {}", r.detail)?;
                }
            }
        }
    }
    if results.iter().all(|r| r.passed) {
        Ok(())
    } else {
        Err(Failure::Verification)
    }
}
