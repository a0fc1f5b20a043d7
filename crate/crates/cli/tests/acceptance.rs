//! Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any
//! criterion fails. Checks are exact set comparisons; there are no numeric
//! tolerances.

use std::path::PathBuf;
use std::process::{Command, ExitCode, Output};
use std::time::Instant;

use ordcomp::checks::{self, SuiteOutcome};
use ordcomp::Limits;
use serde_json::Value;

const RANDOM_POSETS: u64 = 200;
const EQUATIONS: u64 = 100;
const CUT_MAPS: u64 = 100;
const SEED: u64 = 0;

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ordcomp"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn suite(o: &SuiteOutcome) -> Result<String, String> {
    let line = format!("{} cases, {} violations", o.cases, o.failures.len());
    match o.minimal_failure() {
        None => Ok(line),
        Some(f) => Err(format!("{line}; smallest: {} ({})", f.instance, f.message)),
    }
}

fn determinism() -> Result<String, String> {
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    let dot = dir.path().join("c.dot");
    let dot = dot.to_str().unwrap();
    let chain = fixture("chain3.json");
    let antichain = fixture("antichain2.json");
    let identity = fixture("identity.json");
    let constant = fixture("constant.json");
    let commands: Vec<Vec<&str>> = vec![
        vec!["gen", "--family", "chain", "--n", "5"],
        vec!["gen", "--family", "antichain", "--n", "4"],
        vec!["gen", "--family", "boolean", "--k", "3"],
        vec!["gen", "--family", "divisor", "--m", "60"],
        vec!["gen", "--family", "random", "--n", "6", "--seed", "7"],
        vec!["gen", "--family", "gridfn", "--g", "3", "--v", "2", "--stencil", "smooth"],
        vec!["gen", "--family", "randeq", "--x", "5", "--y", "5", "--seed", "11"],
        vec!["complete", "--input", &chain],
        vec!["complete", "--input", &antichain, "--emit-dot", dot],
        vec!["export", "--input", &antichain],
        vec!["solve", "--map", &identity, "--target", r#"{"principal": "b"}"#],
        vec!["solve", "--map", &constant, "--target", r#"{"principal": "c"}"#],
        vec!["check", "all", "--seed", "5", "--count", "5"],
        vec!["check", "lemmaa1", "--input", &antichain],
    ];
    for args in &commands {
        let (a, b) = (run(args), run(args));
        if a.stdout != b.stdout || a.stderr != b.stderr || a.status.code() != b.status.code() {
            return Err(format!("`{}` differs between runs", args.join(" ")));
        }
    }

    // gen → complete, gen → solve over every principal target.
    let mut round_trips = 0;
    for seed in 0..10u64 {
        let p = dir.path().join(format!("p{seed}.json"));
        let p = p.to_str().unwrap();
        let seed_s = seed.to_string();
        run(&["gen", "--family", "random", "--n", "7", "--density", "40", "--seed", &seed_s, "-o", p]);
        let out = run(&["complete", "--input", p]);
        if out.status.code() != Some(0) || serde_json::from_slice::<Value>(&out.stdout).is_err() {
            return Err(format!("gen random seed {seed} does not complete cleanly"));
        }
        let e = dir.path().join(format!("e{seed}.json"));
        let e = e.to_str().unwrap();
        run(&["gen", "--family", "randeq", "--x", "5", "--y", "4", "--seed", &seed_s, "-o", e]);
        let eq: Value = serde_json::from_str(&std::fs::read_to_string(e).map_err(|x| x.to_string())?)
            .map_err(|x| x.to_string())?;
        for y in eq["codomain"]["elements"].as_array().unwrap() {
            let target = serde_json::json!({ "principal": y }).to_string();
            let out = run(&["solve", "--map", e, "--target", &target]);
            let parsed: Result<Value, _> = serde_json::from_slice(&out.stdout);
            let code_ok = match &parsed {
                Ok(r) => out.status.code() == Some(if r["solvable"] == true { 0 } else { 1 }),
                Err(_) => false,
            };
            if !code_ok {
                return Err(format!("randeq seed {seed}, target {y}: bad solve output"));
            }
            round_trips += 1;
        }
    }

    let contract: Vec<(Vec<String>, i32)> = vec![
        (vec!["complete".into(), "--input".into(), chain.clone()], 0),
        (vec!["complete".into(), "--input".into(), fixture("malformed.json")], 2),
        (vec!["complete".into(), "--input".into(), fixture("cycle.json")], 2),
        (vec!["complete".into(), "--input".into(), chain.clone(), "--max-cuts".into(), "2".into()], 3),
        (vec!["solve".into(), "--map".into(), identity.clone(), "--target".into(), fixture("principal_b.json")], 0),
        (vec!["solve".into(), "--map".into(), constant.clone(), "--target".into(), fixture("principal_c.json")], 1),
        (vec!["solve".into(), "--map".into(), constant.clone(), "--target".into(), fixture("not_a_cut.json")], 2),
        (vec!["check".into(), "macneille".into(), "--input".into(), chain.clone()], 0),
        (vec!["check".into(), "unknown".into()], 2),
        (vec!["gen".into(), "--family".into(), "boolean".into(), "--k".into(), "20".into()], 3),
        (vec!["gen".into(), "--family".into(), "nonesuch".into()], 2),
    ];
    for (args, want) in &contract {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let got = run(&args).status.code();
        if got != Some(*want) {
            return Err(format!("`{}` exited {got:?}, expected {want}", args.join(" ")));
        }
    }
    Ok(format!(
        "{} commands byte-identical, {round_trips} round trips, {} exit codes",
        commands.len(),
        contract.len()
    ))
}

fn deviation_flags() -> Result<String, String> {
    let out = run(&[
        "solve",
        "--map",
        &fixture("point_into_antichain.json"),
        "--target",
        &fixture("empty_target.json"),
    ]);
    let r: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let a = &r["assumption_flags"];
    let ok = out.status.code() == Some(1)
        && r["solvable"] == false
        && r["empty_family_flags"]["lower"] == true
        && a["quotient_has_minimum"] == true
        && a["empty_cut_in_quotient_completion"] == false
        && a["empty_cut_in_codomain_completion"] == true
        && a["standing_assumption_holds"] == false;
    if ok {
        Ok("quotient minimum and empty lower family reported".into())
    } else {
        Err(format!("unexpected report: {r}"))
    }
}

fn main() -> ExitCode {
    let started = Instant::now();
    let limits = Limits::default();
    let corpus = checks::standard_corpus(RANDOM_POSETS, SEED).expect("corpus builds");
    let equations = checks::equation_batch(EQUATIONS, SEED, &limits).expect("equations build");

    let criteria: Vec<(&str, Box<dyn Fn() -> Result<String, String> + '_>)> = vec![
        ("cut calculus", Box::new(|| suite(&checks::run_cut_calculus(&corpus, &limits)))),
        ("completion vs oracle", Box::new(|| suite(&checks::run_macneille(&corpus, &limits)))),
        ("closed-form sizes", Box::new(|| suite(&checks::run_sizes(&limits)))),
        ("existence and uniqueness", Box::new(|| suite(&checks::run_theorem41(&equations)))),
        ("global solvability", Box::new(|| suite(&checks::run_theorem42(&equations)))),
        ("extension inequality chain", Box::new(|| suite(&checks::run_lemma_a1(CUT_MAPS, SEED, &limits)))),
        ("cli determinism and exit codes", Box::new(determinism)),
        ("boundary-case diagnostics", Box::new(deviation_flags)),
    ];

    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        match check() {
            Ok(detail) => println!("criterion {} {name}: PASS ({detail})", i + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} {name}: FAIL ({detail})", i + 1);
            }
        }
    }
    println!(
        "acceptance: {} of {} criteria passed in {:.1}s",
        criteria.len() - failed,
        criteria.len(),
        started.elapsed().as_secs_f64()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
