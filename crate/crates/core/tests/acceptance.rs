//! Acceptance gate. Prints one PASS/FAIL line per criterion and exits nonzero
//! if any criterion fails. Runtime limits are part of each criterion.

use std::process::Command;
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde_json::Value;

use knodeldom::lemmas::{run_suite, SuiteConfig, DEFAULT_SAMPLES, DEFAULT_SEED};
use knodeldom::{
    check_power_diff_identity, construct_optimal_tds, gamma_t_formula, is_total_dominating,
    solve_min_total_dominating, KnodelGraph, SolveOptions, Strategy,
};

const SWEEP_MAX: usize = 1_000_000;

struct Verdict {
    passed: bool,
    detail: String,
}

fn verdict(passed: bool, detail: impl Into<String>) -> Verdict {
    Verdict {
        passed,
        detail: detail.into(),
    }
}

fn timed(limit: Option<Duration>, body: impl FnOnce() -> Verdict) -> Verdict {
    let start = Instant::now();
    let v = body();
    let took = start.elapsed();
    match limit {
        Some(l) if took > l => verdict(false, format!("{}; took {took:.1?}, limit {l:?}", v.detail)),
        Some(l) => verdict(v.passed, format!("{}; {took:.1?} of {l:?}", v.detail)),
        None => verdict(v.passed, format!("{}; {took:.1?}", v.detail)),
    }
}

fn exhaustive_matches_formula() -> Verdict {
    let expected = [4, 4, 6, 6, 8, 8, 8, 10, 10];
    let opts = SolveOptions {
        strategy: Strategy::Exhaustive,
        ..SolveOptions::default()
    };
    let mut got = Vec::new();
    for n in (8..=24).step_by(2) {
        let g = KnodelGraph::new(3, n).unwrap();
        match solve_min_total_dominating(&g, &opts) {
            Ok(r) => got.push(r.optimum),
            Err(e) => return verdict(false, format!("n = {n}: {e}")),
        }
    }
    let formula: Vec<usize> = (8..=24).step_by(2).map(|n| gamma_t_formula(n).unwrap()).collect();
    verdict(got == expected && got == formula, format!("optima {got:?}"))
}

fn pruned_matches_formula() -> Verdict {
    let mut notes = Vec::new();
    for below in [false, true] {
        let opts = SolveOptions {
            strategy: Strategy::Pruned,
            exhaust_below_bound: below,
            ..SolveOptions::default()
        };
        for n in (26..=36).step_by(2) {
            let g = KnodelGraph::new(3, n).unwrap();
            match solve_min_total_dominating(&g, &opts) {
                Ok(r) if r.optimum == gamma_t_formula(n).unwrap() => {
                    if !below {
                        notes.push(format!("{n}:{}", r.optimum));
                    }
                }
                Ok(r) => return verdict(false, format!("n = {n}: optimum {} ({:?})", r.optimum, r.certificate)),
                Err(e) => return verdict(false, format!("n = {n}: {e}")),
            }
        }
    }
    verdict(true, format!("optima {} with both certificates", notes.join(" ")))
}

fn construction_sweep() -> Verdict {
    let bad: Vec<usize> = (4..=SWEEP_MAX / 2)
        .into_par_iter()
        .map(|h| 2 * h)
        .filter(|&n| {
            let g = KnodelGraph::new(3, n).unwrap();
            let d = construct_optimal_tds(n).unwrap();
            !(d.len() == gamma_t_formula(n).unwrap() && is_total_dominating(&g, &d).unwrap().holds)
        })
        .collect();
    let count = SWEEP_MAX / 2 - 3;
    verdict(bad.is_empty(), format!("{count} instances, failures {:?}", &bad[..bad.len().min(5)]))
}

fn bound_identity() -> Verdict {
    let bad: Vec<usize> = (8..=SWEEP_MAX)
        .step_by(2)
        .filter(|&n| 2 * n.div_ceil(5) != gamma_t_formula(n).unwrap())
        .collect();
    verdict(bad.is_empty(), format!("failures {:?}", &bad[..bad.len().min(5)]))
}

fn lemma_suite() -> Verdict {
    let cfg = SuiteConfig {
        delta: None,
        n_max: 128,
        exhaustive: true,
        triple_n_max: 64,
        subset_n_max: 40,
        samples: DEFAULT_SAMPLES,
        seed: DEFAULT_SEED,
        override_guard: false,
    };
    match run_suite(&cfg) {
        Ok(r) => {
            let failing: Vec<&str> = r
                .outcomes
                .iter()
                .filter(|o| !o.passed() || o.cases == 0)
                .map(|o| o.lemma.as_str())
                .collect();
            let cases: u64 = r.outcomes.iter().map(|o| o.cases).sum();
            verdict(
                failing.is_empty(),
                format!("{} instances, {cases} cases, failing or unexercised {failing:?}", r.instances),
            )
        }
        Err(e) => verdict(false, e.to_string()),
    }
}

fn power_differences() -> Verdict {
    let mut checked = 0;
    for base in [2, 3] {
        match check_power_diff_identity(base, 12) {
            Ok(r) if r.passed() => checked += r.quadruples_checked,
            Ok(r) => return verdict(false, format!("base {base}: {:?}", r.counterexample)),
            Err(e) => return verdict(false, e.to_string()),
        }
    }
    verdict(true, format!("{checked} quadruples"))
}

fn solve_fields(args: &[&str]) -> Result<String, String> {
    let out = Command::new(env!("CARGO_BIN_EXE_knodeldom"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("{args:?} exited with {}", out.status));
    }
    let report: Value = serde_json::from_slice(&out.stdout).map_err(|e| e.to_string())?;
    let r = &report["result"];
    Ok(serde_json::to_string(&(&r["optimum"], &r["witness"], &r["certificate"])).unwrap())
}

fn thread_determinism() -> Verdict {
    let cases: [&[&str]; 3] = [
        &["solve", "--n", "22", "--strategy", "exhaustive"],
        &["solve", "--n", "36", "--strategy", "pruned"],
        &["solve", "--n", "30", "--strategy", "pruned", "--exhaust-below-bound"],
    ];
    for case in cases {
        let mut seen = Vec::new();
        for threads in ["1", "4"] {
            let mut args = case.to_vec();
            args.extend(["--threads", threads, "--json"]);
            match solve_fields(&args) {
                Ok(s) => seen.push(s),
                Err(e) => return verdict(false, e),
            }
        }
        if seen[0] != seen[1] {
            return verdict(false, format!("{case:?}: {} vs {}", seen[0], seen[1]));
        }
    }
    verdict(true, "3 instances, threads 1 and 4 agree byte for byte")
}

type Criterion = (&'static str, Option<Duration>, fn() -> Verdict);

fn main() {
    let criteria: [Criterion; 7] = [
        ("1 exhaustive solver equals formula, n = 8..24", Some(Duration::from_secs(300)), exhaustive_matches_formula),
        ("2 pruned solver equals formula, n = 26..36", Some(Duration::from_secs(600)), pruned_matches_formula),
        ("3 construction verified, every even n in [8, 10^6]", Some(Duration::from_secs(600)), construction_sweep),
        ("4 2*ceil(n/5) equals formula, every even n in [8, 10^6]", None, bound_identity),
        ("5 structural lemma suite, zero counterexamples", None, lemma_suite),
        ("6 power-difference uniqueness, x in {2,3}, exponents <= 12", None, power_differences),
        ("7 solve output independent of thread count", None, thread_determinism),
    ];
    let mut failed = 0;
    for (name, limit, run) in criteria {
        let v = timed(limit, run);
        println!("{} [{name}] {}", if v.passed { "PASS" } else { "FAIL" }, v.detail);
        failed += usize::from(!v.passed);
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
