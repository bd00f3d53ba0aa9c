//! The `prodfree` command line.
//!
//! Exit codes: 0 when the property holds (or the command simply ran),
//! 1 when a witness or violation was found, 2 on usage or I/O errors.
//! Exact values are printed as `num/den`; only `--format text` adds decimal
//! approximations, marked with `≈`. Timing and node counts go to the
//! `--stats` stream so that regular output is reproducible.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde::Serialize;
use serde_json::json;

use crate::constructions::{
    asymmetric_triple, counting_pathology, greedy_random_productfree, odd_occurrence, GammaSpec, Schedule,
};
use crate::density::{
    profile, upper_asymptotic, upper_banach, DensityProfile, DEFAULT_MIN_WINDOW, DEFAULT_REGULAR_HORIZON,
};
use crate::error::Error;
use crate::productfree::{check_explicit, check_regular, Verdict};
use crate::proofkit::{
    extract_lsequence, phi_level_set, proposition_check, simple_bound_estimate, sweep_windows, WindowPolicy,
};
use crate::report::{approx, parse_rational, rational_string};
use crate::search::{max_productfree, Objective, DEFAULT_NODE_BUDGET};
use crate::sets::{Dfa, LayeredSet, WordSet, DEFAULT_STATE_CAP};
use crate::words::{Alphabet, WordList};

/// Environment variable holding the default search node budget.
pub const BUDGET_ENV: &str = "PRODFREE_BUDGET";

#[derive(Debug, Parser)]
#[command(name = "prodfree", version, about = "Exact analysis of product-free sets of words")]
struct Cli {
    /// Append timing and node counts as JSON lines to this file ("-" for stderr).
    #[arg(long, global = true)]
    stats: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether a set is product-free.
    Check(CheckArgs),
    /// Layer densities and the two limit densities.
    Density(DensityArgs),
    /// Build one of the named example sets.
    #[command(subcommand)]
    Construct(Construct),
    /// Evaluate the chained density inequality for given lengths.
    VerifyProp(VerifyPropArgs),
    /// Extract a length sequence and check the window bound it implies.
    Certify(CertifyArgs),
    /// Exact maximum-density product-free subset of a ball.
    Search(SearchArgs),
    /// Lengths of density above φ and the simple bound.
    PhiLevelset(PhiArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Text,
}

#[derive(Debug, Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Automaton file.
    #[arg(long)]
    dfa: Option<PathBuf>,
    /// Word-list file.
    #[arg(long)]
    set: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct CheckArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Debug, Args)]
struct DensityArgs {
    #[command(flatten)]
    input: Input,
    /// Profile horizon (default: the set's horizon, or 64 for automata).
    #[arg(long)]
    horizon: Option<usize>,
    /// Shortest window for the Banach estimate.
    #[arg(long, default_value_t = DEFAULT_MIN_WINDOW)]
    min_window: usize,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Subcommand)]
enum Construct {
    /// Words with an odd number of symbols from gamma.
    OddOccurrence {
        #[arg(long, default_value = "ab")]
        alphabet: String,
        #[arg(long)]
        gamma: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Words with length in (2^m, 2^m + c] for m >= c.
    Pathology {
        #[arg(long, default_value = "ab")]
        alphabet: String,
        #[arg(long)]
        c: usize,
        /// Defaults to 2^c + c.
        #[arg(long)]
        horizon: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// The sets W, X, Y, Z; prints a JSON summary.
    Asymmetric {
        #[arg(long, default_value = "ab")]
        alphabet: String,
        #[arg(long)]
        n: usize,
        #[arg(long, value_parser = rational_arg)]
        eps: BigRational,
        /// Directory receiving w.words, x.dfa, y.dfa and z.dfa.
        #[arg(long)]
        out_dir: Option<PathBuf>,
    },
    /// Seeded greedy product-free subset of a ball.
    Random {
        #[arg(long, default_value = "ab")]
        alphabet: String,
        #[arg(long)]
        horizon: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long, value_enum, default_value = "uniform")]
        schedule: ScheduleArg,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ScheduleArg {
    Uniform,
    OddFirst,
}

#[derive(Debug, Args)]
struct VerifyPropArgs {
    #[command(flatten)]
    input: Input,
    /// Comma-separated increasing lengths.
    #[arg(long, value_delimiter = ',', required = true)]
    lengths: Vec<usize>,
    #[arg(long)]
    n: usize,
}

#[derive(Debug, Args)]
struct CertifyArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long, value_parser = rational_arg, default_value = "1/10")]
    eps: BigRational,
    #[arg(long)]
    horizon: Option<usize>,
    /// Shortest window scanned during extraction.
    #[arg(long, default_value_t = 8)]
    min_window: usize,
    /// Shortest window in the final bound check.
    #[arg(long, default_value_t = 16)]
    check_window: usize,
}

#[derive(Debug, Args)]
struct SearchArgs {
    #[arg(long)]
    alphabet: String,
    #[arg(long)]
    horizon: usize,
    #[arg(long, default_value = "mean")]
    objective: Objective,
    /// Node budget, e.g. 1e8 (default from PRODFREE_BUDGET, else 1e8).
    #[arg(long, value_parser = budget_arg)]
    budget: Option<u64>,
    /// Write the witness as a word list.
    #[arg(long)]
    witness: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PhiArgs {
    #[command(flatten)]
    input: Input,
    #[arg(long)]
    horizon: Option<usize>,
}

fn rational_arg(s: &str) -> std::result::Result<BigRational, String> {
    parse_rational(s).ok_or_else(|| format!("'{s}' is not a rational like 1/10"))
}

fn budget_arg(s: &str) -> std::result::Result<u64, String> {
    if let Ok(v) = s.parse::<u64>() {
        return if v > 0 { Ok(v) } else { Err("budget must be positive".into()) };
    }
    match s.parse::<f64>() {
        Ok(v) if v.is_finite() && v >= 1.0 && v <= u64::MAX as f64 && v.fract() == 0.0 => Ok(v as u64),
        _ => Err(format!("'{s}' is not a positive integer budget")),
    }
}

/// Failure of a command: usage/I-O problems map to exit code 2.
struct Failure(String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure(e.to_string())
    }
}

type CmdResult = std::result::Result<i32, Failure>;

enum Loaded {
    Dfa(Dfa),
    Set(LayeredSet),
}

impl Loaded {
    fn as_set(&self) -> &dyn WordSet {
        match self {
            Loaded::Dfa(d) => d,
            Loaded::Set(s) => s,
        }
    }

    fn default_horizon(&self) -> usize {
        match self {
            Loaded::Dfa(_) => DEFAULT_REGULAR_HORIZON,
            Loaded::Set(s) => s.horizon(),
        }
    }
}

fn read(path: &Path) -> std::result::Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn write_file(path: &Path, text: &str) -> std::result::Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load(input: &Input, horizon: Option<usize>) -> std::result::Result<Loaded, Failure> {
    let in_file = |path: &Path, e: Error| Failure(format!("{}: {e}", path.display()));
    if let Some(path) = &input.dfa {
        let dfa = Dfa::parse(&read(path)?).map_err(|e| in_file(path, e))?;
        return Ok(Loaded::Dfa(dfa));
    }
    let path = input.set.as_ref().expect("clap enforces one input");
    let list = WordList::parse(&read(path)?).map_err(|e| in_file(path, e))?;
    let set = LayeredSet::from_word_list(&list, horizon).map_err(|e| in_file(path, e))?;
    Ok(Loaded::Set(set))
}

fn json_line<T: Serialize>(out: &mut dyn Write, value: &T) -> std::result::Result<(), Failure> {
    let text = serde_json::to_string(value).map_err(|e| Failure(e.to_string()))?;
    writeln!(out, "{text}").map_err(|e| Failure(e.to_string()))
}

fn emit(out: &mut dyn Write, text: &str) -> std::result::Result<(), Failure> {
    out.write_all(text.as_bytes()).map_err(|e| Failure(e.to_string()))
}

fn exact_text(r: &BigRational) -> String {
    format!("{} (≈ {:.6})", rational_string(r), approx(r))
}

fn check(args: &CheckArgs) -> std::result::Result<(i32, Verdict), Failure> {
    let verdict = match load(&args.input, None)? {
        Loaded::Dfa(d) => check_regular(&d, DEFAULT_STATE_CAP)?,
        Loaded::Set(s) => check_explicit(&s),
    };
    let code = if verdict.is_product_free() { 0 } else { 1 };
    Ok((code, verdict))
}

fn run_check(args: &CheckArgs, out: &mut dyn Write) -> CmdResult {
    let (code, verdict) = check(args)?;
    match (args.format, verdict.witness()) {
        (Format::Json, w) => {
            let witness = w.map(|w| json!({"x": w.x.to_string(), "y": w.y.to_string(), "z": w.z.to_string()}));
            json_line(out, &json!({"product_free": w.is_none(), "witness": witness}))?;
        }
        (_, None) => emit(out, "product-free\n")?,
        (_, Some(w)) => emit(out, &format!("not product-free: {} · {} = {}\n", w.x, w.y, w.z))?,
    }
    Ok(code)
}

fn run_density(args: &DensityArgs, out: &mut dyn Write) -> CmdResult {
    let loaded = load(&args.input, args.horizon)?;
    let h = args.horizon.unwrap_or_else(|| loaded.default_horizon());
    let prof = profile(loaded.as_set(), h)?;
    let asym = upper_asymptotic(&prof);
    let banach = upper_banach(&prof, args.min_window.min(h))?;
    match args.format {
        Format::Csv => emit(out, &prof.to_csv())?,
        Format::Json => json_line(
            out,
            &json!({
                "horizon": h,
                "layers": density_rows(&prof),
                "upper_asymptotic": asym,
                "upper_banach": banach,
            }),
        )?,
        Format::Text => {
            let mut text = String::new();
            for (c, d) in prof.counts().iter().zip(prof.densities()) {
                text += &format!("d({}) = {}/{} = {}\n", c.n, c.count, c.total, exact_text(d));
            }
            for (name, e) in [("upper asymptotic", &asym), ("upper Banach", &banach)] {
                let tag = if e.exact { "exact" } else { "estimate" };
                text += &format!("{name} density: {} [{tag}, horizon {}]\n", exact_text(&e.value), e.horizon);
            }
            emit(out, &text)?;
        }
    }
    Ok(0)
}

fn density_rows(prof: &DensityProfile) -> Vec<serde_json::Value> {
    prof.counts()
        .iter()
        .zip(prof.densities())
        .map(|(c, d)| {
            json!({
                "n": c.n,
                "count": c.count.to_string(),
                "total": c.total.to_string(),
                "density": rational_string(d),
            })
        })
        .collect()
}

fn write_or_print(out: &mut dyn Write, path: &Option<PathBuf>, text: &str) -> std::result::Result<(), Failure> {
    match path {
        Some(p) => write_file(p, text),
        None => emit(out, text),
    }
}

fn run_construct(cmd: &Construct, out: &mut dyn Write) -> CmdResult {
    match cmd {
        Construct::OddOccurrence { alphabet, gamma, out: path } => {
            let a = Alphabet::new(alphabet)?;
            let dfa = odd_occurrence(&a, &GammaSpec::new(&a, gamma)?)?;
            write_or_print(out, path, &dfa.to_text())?;
        }
        Construct::Pathology { alphabet, c, horizon, out: path } => {
            let a = Alphabet::new(alphabet)?;
            let h = horizon.unwrap_or_else(|| (1usize << (*c).min(40)) + c);
            let set = counting_pathology(&a, *c, h)?;
            write_or_print(out, path, &set.to_word_list().to_text())?;
        }
        Construct::Asymmetric { alphabet, n, eps, out_dir } => {
            let a = Alphabet::new(alphabet)?;
            let t = asymmetric_triple(&a, *n, eps, DEFAULT_STATE_CAP)?;
            if let Some(dir) = out_dir {
                fs::create_dir_all(dir).map_err(|e| Failure(format!("{}: {e}", dir.display())))?;
                write_file(&dir.join("w.words"), &t.w.to_word_list().to_text())?;
                write_file(&dir.join("x.dfa"), &t.x.to_text())?;
                write_file(&dir.join("y.dfa"), &t.y.to_text())?;
                write_file(&dir.join("z.dfa"), &t.z.to_text())?;
            }
            let xy_z_empty = t.x.concat(&t.y, DEFAULT_STATE_CAP)?.intersect(&t.z)?.is_empty();
            json_line(
                out,
                &json!({
                    "n": t.n,
                    "epsilon": rational_string(&t.epsilon),
                    "w_size": t.w_size,
                    "w_density": rational_string(&t.w_density()),
                    "within_gap": t.within_gap,
                    "states": {"x": t.x.num_states(), "y": t.y.num_states(), "z": t.z.num_states()},
                    "xy_meets_z": !xy_z_empty,
                }),
            )?;
        }
        Construct::Random {
            alphabet,
            horizon,
            seed,
            schedule,
            out: path,
        } => {
            let a = Alphabet::new(alphabet)?;
            let schedule = match schedule {
                ScheduleArg::Uniform => Schedule::Uniform,
                ScheduleArg::OddFirst => Schedule::OddLengthsFirst,
            };
            let set = greedy_random_productfree(&a, *horizon, *seed, &schedule)?;
            write_or_print(out, path, &set.to_word_list().to_text())?;
        }
    }
    Ok(0)
}

fn run_verify_prop(args: &VerifyPropArgs, out: &mut dyn Write) -> CmdResult {
    let loaded = load(&args.input, Some(args.n))?;
    let report = proposition_check(loaded.as_set(), &args.lengths, args.n)?;
    json_line(out, &report)?;
    Ok(if report.ok { 0 } else { 1 })
}

fn run_certify(args: &CertifyArgs, out: &mut dyn Write) -> CmdResult {
    let loaded = load(&args.input, args.horizon)?;
    let h = args.horizon.unwrap_or_else(|| loaded.default_horizon());
    let set = loaded.as_set();
    let policy = WindowPolicy {
        min_len: args.min_window,
    };
    let ex = extract_lsequence(set, &args.eps, h, policy)?;
    for record in &ex.trace {
        json_line(out, &json!({"window": record}))?;
    }
    json_line(
        out,
        &json!({
            "sequence": ex.sequence,
            "stopped": ex.stopped,
            "stopped_at_stage": ex.stopped_at_stage,
            "meets_target": ex.sequence.meets_target(),
        }),
    )?;
    if ex.sequence.len() == 0 || !ex.sequence.meets_target() {
        return Ok(0);
    }
    let prof = profile(set, h)?;
    let sweep = sweep_windows(&prof, &ex.sequence, args.check_window)?;
    json_line(out, &json!({"certificate": sweep}))?;
    Ok(if sweep.violations.is_empty() { 0 } else { 1 })
}

fn default_budget() -> std::result::Result<u64, Failure> {
    match std::env::var(BUDGET_ENV) {
        Ok(v) => budget_arg(v.trim()).map_err(|e| Failure(format!("{BUDGET_ENV}: {e}"))),
        Err(_) => Ok(DEFAULT_NODE_BUDGET),
    }
}

fn run_search(args: &SearchArgs, out: &mut dyn Write, stats: &mut Vec<serde_json::Value>) -> CmdResult {
    let a = Alphabet::new(&args.alphabet)?;
    let budget = match args.budget {
        Some(b) => b,
        None => default_budget()?,
    };
    let result = max_productfree(&a, args.horizon, args.objective, budget)?;
    stats.push(json!({"nodes": result.nodes, "budget": budget, "proof": result.proof}));
    if let Some(path) = &args.witness {
        write_file(path, &result.best.to_word_list().to_text())?;
    }
    json_line(out, &result.summary())?;
    Ok(0)
}

fn run_phi(args: &PhiArgs, out: &mut dyn Write) -> CmdResult {
    let loaded = load(&args.input, args.horizon)?;
    let h = args.horizon.unwrap_or_else(|| loaded.default_horizon());
    let prof = profile(loaded.as_set(), h)?;
    let level = phi_level_set(&prof);
    let bound = simple_bound_estimate(&prof);
    json_line(out, &json!({"level_set": level, "simple_bound": bound}))?;
    Ok(if level.sum_free { 0 } else { 1 })
}

fn write_stats(path: &Path, err: &mut dyn Write, lines: &[serde_json::Value]) -> std::result::Result<(), Failure> {
    let mut text = String::new();
    for l in lines {
        text += &l.to_string();
        text.push('\n');
    }
    if path == Path::new("-") {
        return emit(err, &text);
    }
    let mut f = fs::OpenOptions::new()
        .create(true)
        .append(true)
        .open(path)
        .map_err(|e| Failure(format!("{}: {e}", path.display())))?;
    f.write_all(text.as_bytes())
        .map_err(|e| Failure(format!("{}: {e}", path.display())))
}

/// Runs the command line `argv` (program name first) and returns the exit
/// code.
pub fn run<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    let started = Instant::now();
    let mut stats = Vec::new();
    let (name, result) = match &cli.command {
        Command::Check(a) => ("check", run_check(a, out)),
        Command::Density(a) => ("density", run_density(a, out)),
        Command::Construct(c) => ("construct", run_construct(c, out)),
        Command::VerifyProp(a) => ("verify-prop", run_verify_prop(a, out)),
        Command::Certify(a) => ("certify", run_certify(a, out)),
        Command::Search(a) => ("search", run_search(a, out, &mut stats)),
        Command::PhiLevelset(a) => ("phi-levelset", run_phi(a, out)),
    };
    let code = match result {
        Ok(code) => code,
        Err(Failure(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    };
    if let Some(path) = &cli.stats {
        let mut line = json!({"command": name, "exit": code, "elapsed_ms": started.elapsed().as_secs_f64() * 1e3});
        if let Some(extra) = stats.first().and_then(|s| s.as_object()) {
            for (k, v) in extra {
                line[k] = v.clone();
            }
        }
        if let Err(Failure(msg)) = write_stats(path, err, &[line]) {
            let _ = writeln!(err, "error: {msg}");
            return 2;
        }
    }
    code
}
