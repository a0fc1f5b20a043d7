//! `ordcomp`: complete posets, solve `T(A) = F`, run the property suites,
//! and generate instances.
//!
//! Exit codes: 0 ok or solvable, 1 unsolvable or a failed check, 2 invalid
//! input, 3 resource cap.

use std::fs;
use std::io::{self, Read, Write};
use std::num::NonZeroUsize;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use ordcomp::checks::{self, SuiteOutcome};
use ordcomp::dot::completion_dot;
use ordcomp::format::{
    parse, CompletionReportJson, EquationJson, MapJson, PosetJson, SolveReportJson, TargetJson,
};
use ordcomp::generators::{self, GeneratorSpec, Instance, Stencil};
use ordcomp::{build_equation, macneille_completion, solve, verify_macneille, CutMap, Limits, Poset, PosetMap, Source};

#[derive(Parser)]
#[command(name = "ordcomp", version, about = "Order completions of finite posets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Write the result here instead of standard output.
    #[arg(long, short, global = true)]
    output: Option<PathBuf>,
    #[command(flatten)]
    caps: Caps,
}

#[derive(Args)]
struct Caps {
    /// Largest poset accepted before exponential work.
    #[arg(long, global = true, default_value = "20")]
    max_arity: NonZeroUsize,
    /// Largest completion built.
    #[arg(long, global = true, default_value = "4096")]
    max_cuts: NonZeroUsize,
}

#[derive(Subcommand)]
enum Command {
    /// Complete a poset and verify the result.
    Complete {
        /// Poset JSON (`-` for standard input).
        #[arg(long)]
        input: PathBuf,
        /// Also write the completion's Hasse diagram as DOT.
        #[arg(long)]
        emit_dot: Option<PathBuf>,
    },
    /// Decide and solve `T(A) = F`.
    Solve {
        /// Equation or map JSON.
        #[arg(long, visible_alias = "input")]
        map: PathBuf,
        /// Target cut: a file, or inline JSON (`["a","b"]`, `{"cut": [...]}`,
        /// `{"principal": "a"}`).
        #[arg(long)]
        target: String,
    },
    /// Run a property suite: cutcalc, macneille, sizes, propa1, lemmaa1,
    /// theorem41, theorem42, or all.
    Check {
        suite: String,
        /// Run on this instance instead of a seeded batch.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long, default_value = "0")]
        seed: u64,
        /// Batch size; each suite has its own default.
        #[arg(long)]
        count: Option<u64>,
    },
    /// Generate an instance.
    Gen(GenArgs),
    /// Write a poset's completion as DOT.
    Export {
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Args)]
struct GenArgs {
    /// chain, antichain, boolean, divisor, random, gridfn, or randeq.
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    k: Option<usize>,
    #[arg(long)]
    m: Option<u64>,
    /// Edge probability in percent.
    #[arg(long, default_value = "30")]
    density: u32,
    #[arg(long, default_value = "0")]
    seed: u64,
    #[arg(long)]
    g: Option<usize>,
    #[arg(long)]
    v: Option<usize>,
    #[arg(long, default_value = "identity")]
    stencil: String,
    #[arg(long)]
    x: Option<usize>,
    #[arg(long)]
    y: Option<usize>,
}

enum Failure {
    Core(ordcomp::Error),
    Input(String),
    UnknownSuite(String),
}

impl From<ordcomp::Error> for Failure {
    fn from(e: ordcomp::Error) -> Self {
        Failure::Core(e)
    }
}

type CliResult<T> = std::result::Result<T, Failure>;

fn read_text(path: &Path) -> CliResult<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| Failure::Input(format!("standard input: {e}")))?;
        return Ok(s);
    }
    fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> CliResult<T> {
    parse(&read_text(path)?).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn read_poset(path: &Path) -> CliResult<Poset> {
    Ok(read_json::<PosetJson>(path)?.to_poset()?)
}

/// Equation files name a `domain`; map files a `source`.
fn read_map(path: &Path) -> CliResult<PosetMap> {
    let value: Value = read_json(path)?;
    let bad = |e: serde_json::Error| Failure::Input(format!("{}: {e}", path.display()));
    if value.get("domain").is_some() {
        Ok(serde_json::from_value::<EquationJson>(value).map_err(bad)?.to_map()?)
    } else {
        Ok(serde_json::from_value::<MapJson>(value).map_err(bad)?.to_map()?)
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum TargetArg {
    Names(Vec<String>),
    Tagged(TargetJson),
}

fn read_target(arg: &str) -> CliResult<TargetJson> {
    let trimmed = arg.trim_start();
    let text = if trimmed.starts_with('[') || trimmed.starts_with('{') {
        arg.to_string()
    } else {
        read_text(Path::new(arg))?
    };
    let target: TargetArg =
        parse(&text).map_err(|e| Failure::Input(format!("target: {e}")))?;
    Ok(match target {
        TargetArg::Names(names) => TargetJson::Cut(names),
        TargetArg::Tagged(t) => t,
    })
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("reports serialize");
    s.push('\n');
    s
}

fn write_out(path: Option<&Path>, text: &str) -> CliResult<()> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Input(format!("{}: {e}", p.display()))),
        None => io::stdout()
            .write_all(text.as_bytes())
            .map_err(|e| Failure::Input(format!("standard output: {e}"))),
    }
}

fn complete(input: &Path, emit_dot: Option<&Path>, limits: &Limits, out: Option<&Path>) -> CliResult<u8> {
    let p = read_poset(input)?;
    let c = macneille_completion(&p, limits)?;
    let report = verify_macneille(&c);
    if let Some(path) = emit_dot {
        write_out(Some(path), &completion_dot(&c))?;
    }
    write_out(out, &to_json(&CompletionReportJson::new(&c, &report)))?;
    Ok(if report.all_pass() { 0 } else { 1 })
}

fn solve_cmd(map: &Path, target: &str, limits: &Limits, out: Option<&Path>) -> CliResult<u8> {
    let map = read_map(map)?;
    let target = read_target(target)?;
    let eq = build_equation(map, limits)?;
    let subset = target.to_subset(eq.codomain())?;
    let report = solve(&eq, &subset)?;
    write_out(out, &to_json(&SolveReportJson::new(&eq, &report)))?;
    Ok(if report.solvable { 0 } else { 1 })
}

const SUITES: [&str; 7] = ["cutcalc", "macneille", "sizes", "propa1", "lemmaa1", "theorem41", "theorem42"];

fn run_suite(name: &str, input: Option<&Path>, seed: u64, count: Option<u64>, limits: &Limits) -> CliResult<SuiteOutcome> {
    let corpus = |default| -> CliResult<Vec<(String, Poset)>> {
        match input {
            Some(path) => Ok(vec![(path.display().to_string(), read_poset(path)?)]),
            None => Ok(checks::standard_corpus(count.unwrap_or(default), seed)?),
        }
    };
    let equations = || -> CliResult<_> {
        match input {
            Some(path) => Ok(vec![(path.display().to_string(), build_equation(read_map(path)?, limits)?)]),
            None => Ok(checks::equation_batch(count.unwrap_or(100), seed, limits)?),
        }
    };
    Ok(match name {
        "cutcalc" => checks::run_cut_calculus(&corpus(200)?, limits),
        "macneille" => checks::run_macneille(&corpus(200)?, limits),
        "sizes" => checks::run_sizes(limits),
        "theorem41" => checks::run_theorem41(&equations()?),
        "theorem42" => checks::run_theorem42(&equations()?),
        "propa1" => {
            let maps = match input {
                Some(path) => vec![(path.display().to_string(), read_map(path)?)],
                None => checks::map_batch(count.unwrap_or(50), seed)?,
            };
            checks::run_prop_a1(&maps, limits)
        }
        "lemmaa1" => match input {
            // Increasing self-maps of the input's completion.
            Some(path) => {
                let p = read_poset(path)?;
                let c = macneille_completion(&p, limits)?;
                let mut out = SuiteOutcome::new("lemmaa1");
                out.record_result("identity", c.len(), checks::lemma_a1(&CutMap::identity(&c)));
                for s in seed..seed + count.unwrap_or(20) {
                    let image = generators::random_increasing_cut_map(&c, &c, s);
                    let result = CutMap::new(&c, &c, image).and_then(|mu| checks::lemma_a1(&mu));
                    out.record_result(&format!("seed {s}"), c.len(), result);
                }
                out
            }
            None => checks::run_lemma_a1(count.unwrap_or(100), seed, limits),
        },
        other => return Err(Failure::UnknownSuite(other.to_string())),
    })
}

/// Suites that accept the kind of instance stored at `path`.
fn suites_for(path: &Path) -> CliResult<Vec<&'static str>> {
    let value: Value = read_json(path)?;
    Ok(if value.get("domain").is_some() {
        vec!["theorem41", "theorem42"]
    } else if value.get("source").is_some() {
        match read_map(path)?.source() {
            Source::Ordered(_) => vec!["propa1", "theorem41", "theorem42"],
            Source::Unordered(_) => vec!["theorem41", "theorem42"],
        }
    } else {
        vec!["cutcalc", "macneille", "lemmaa1"]
    })
}

fn summary(o: &SuiteOutcome) -> String {
    let mut s = format!(
        "{}: {} cases, {} failures, {}\n",
        o.suite,
        o.cases,
        o.failures.len(),
        if o.passed() { "PASS" } else { "FAIL" }
    );
    if let Some(f) = o.minimal_failure() {
        s.push_str(&format!("  minimal counterexample: {} (size {}): {}\n", f.instance, f.size, f.message));
    }
    s
}

fn check(suite: &str, input: Option<&Path>, seed: u64, count: Option<u64>, limits: &Limits, out: Option<&Path>) -> CliResult<u8> {
    let names: Vec<&str> = match (suite, input) {
        ("all", Some(path)) => suites_for(path)?,
        ("all", None) => SUITES.to_vec(),
        (s, _) if SUITES.contains(&s) => vec![s],
        (s, _) => return Err(Failure::UnknownSuite(s.to_string())),
    };
    let mut text = String::new();
    let mut ok = true;
    for name in names {
        let outcome = run_suite(name, input, seed, count, limits)?;
        ok &= outcome.passed();
        text.push_str(&summary(&outcome));
    }
    write_out(out, &text)?;
    Ok(if ok { 0 } else { 1 })
}

fn need<T>(value: Option<T>, flag: &str, family: &str) -> CliResult<T> {
    value.ok_or_else(|| Failure::Core(ordcomp::Error::BadSpec(format!("--{flag} is required for {family}"))))
}

fn gen_spec(a: &GenArgs) -> CliResult<GeneratorSpec> {
    let f = a.family.as_str();
    Ok(match f {
        "chain" => GeneratorSpec::Chain { n: need(a.n, "n", f)? },
        "antichain" => GeneratorSpec::Antichain { n: need(a.n, "n", f)? },
        "boolean" => GeneratorSpec::Boolean { k: need(a.k, "k", f)? },
        "divisor" => GeneratorSpec::Divisor { m: need(a.m, "m", f)? },
        "random" => GeneratorSpec::Random {
            n: need(a.n, "n", f)?,
            density: a.density,
            seed: a.seed,
        },
        "gridfn" => GeneratorSpec::GridFn {
            g: need(a.g, "g", f)?,
            v: need(a.v, "v", f)?,
            stencil: Stencil::parse(&a.stencil)?,
        },
        "randeq" => GeneratorSpec::RandomEquation {
            x: need(a.x, "x", f)?,
            y: need(a.y, "y", f)?,
            density: a.density,
            seed: a.seed,
        },
        other => return Err(Failure::Core(ordcomp::Error::BadSpec(format!("unknown family `{other}`")))),
    })
}

fn gen(a: &GenArgs, out: Option<&Path>) -> CliResult<u8> {
    let text = match generators::generate(&gen_spec(a)?)? {
        Instance::Poset(p) => to_json(&PosetJson::from(&p)),
        Instance::Equation(m) => match m.source() {
            Source::Unordered(_) => to_json(&EquationJson::from(&m)),
            Source::Ordered(_) => to_json(&MapJson::from(&m)),
        },
    };
    write_out(out, &text)?;
    Ok(0)
}

fn export(input: &Path, limits: &Limits, out: Option<&Path>) -> CliResult<u8> {
    let c = macneille_completion(&read_poset(input)?, limits)?;
    write_out(out, &completion_dot(&c))?;
    Ok(0)
}

fn run(cli: &Cli) -> CliResult<u8> {
    let limits = Limits {
        max_arity: cli.caps.max_arity.get(),
        max_cuts: cli.caps.max_cuts.get(),
    };
    let out = cli.output.as_deref();
    match &cli.command {
        Command::Complete { input, emit_dot } => complete(input, emit_dot.as_deref(), &limits, out),
        Command::Solve { map, target } => solve_cmd(map, target, &limits, out),
        Command::Check { suite, input, seed, count } => check(suite, input.as_deref(), *seed, *count, &limits, out),
        Command::Gen(a) => gen(a, out),
        Command::Export { input } => export(input, &limits, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure::Core(e)) => {
            eprintln!("error: {}: {e}", e.kind());
            ExitCode::from(if e.is_resource_cap() { 3 } else { 2 })
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: invalid input: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::UnknownSuite(s)) => {
            eprintln!("error: UnknownSuite: `{s}` (expected one of {}, all)", SUITES.join(", "));
            ExitCode::from(2)
        }
    }
}
