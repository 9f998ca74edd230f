//! Subcommand implementations behind the `knodeldom` binary.
//!
//! Each command returns an [`Outcome`] holding the human-readable text, the
//! JSON [`RunReport`] and the exit status, so callers decide what to print.
//! Exit statuses: 0 success, 3 bad input or out-of-domain, 4 resource limit,
//! 5 verification failed. Usage errors (2) are left to the argument parser.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::domination::{
    check, construct_optimal_tds, counting_lower_bound, gamma_t_formula, is_total_dominating,
    DominationKind,
};
use crate::error::{Error, Result};
use crate::graph::{KnodelGraph, Vertex};
use crate::io::{format_vertex_set, parse_vertex_set, write_graph, GraphFormat};
use crate::lemmas::{run_suite, SuiteConfig};
use crate::report::{RunReport, Status};
use crate::solver::{solve, SolveOptions, Strategy, EXHAUSTIVE_GUARD_N, PRUNED_GUARD_N};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_DOMAIN: i32 = 3;
pub const EXIT_RESOURCE: i32 = 4;
pub const EXIT_VERIFICATION_FAILED: i32 = 5;

/// Environment variable that lifts every solver and lemma size guard when set to `1`.
pub const GUARD_OVERRIDE_ENV: &str = "KNODELDOM_GUARD_OVERRIDE";

pub fn guard_override_from_env() -> bool {
    std::env::var(GUARD_OVERRIDE_ENV).is_ok_and(|v| v.trim() == "1")
}

#[derive(Debug, Clone)]
pub struct Outcome {
    pub text: String,
    pub report: RunReport,
    pub exit_code: i32,
}

impl Outcome {
    fn done(command: &str, params: BTreeMap<String, Value>, result: Value, passed: bool, text: String) -> Self {
        let status = if passed { Status::Pass } else { Status::Fail };
        Outcome {
            text,
            report: RunReport::new(command, params, result, status),
            exit_code: if passed { EXIT_OK } else { EXIT_VERIFICATION_FAILED },
        }
    }

    fn failed(command: &str, params: BTreeMap<String, Value>, err: Error) -> Self {
        Outcome {
            text: format!("error: {err}\n"),
            exit_code: err.exit_code(),
            report: RunReport::error(command, params, &err),
        }
    }
}

fn params<const K: usize>(pairs: [(&str, Value); K]) -> BTreeMap<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}

fn names(set: &[Vertex]) -> Vec<String> {
    set.iter().map(Vertex::to_string).collect()
}

fn run(command: &str, p: BTreeMap<String, Value>, body: impl FnOnce(&BTreeMap<String, Value>) -> Result<Outcome>) -> Outcome {
    match body(&p) {
        Ok(out) => out,
        Err(e) => Outcome::failed(command, p, e),
    }
}

/// Serializes `W(delta, n)`; writes to `output` when given, otherwise the
/// graph becomes the text output.
pub fn cmd_gen(delta: u32, n: usize, format: GraphFormat, output: Option<&Path>) -> Outcome {
    let p = params([
        ("delta", delta.into()),
        ("n", n.into()),
        ("format", format!("{format:?}").to_lowercase().into()),
        ("output", output.map(|o| o.display().to_string()).into()),
    ]);
    run("gen", p, |p| {
        let g = KnodelGraph::new(delta, n)?;
        let body = write_graph(&g, format);
        let mut result = json!({
            "delta": delta,
            "n": n,
            "edge_count": g.edge_count(),
        });
        let text = match output {
            Some(path) => {
                std::fs::write(path, &body)
                    .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                result["output"] = path.display().to_string().into();
                format!("wrote {g} ({} edges) to {}\n", g.edge_count(), path.display())
            }
            None => {
                result["content"] = body.clone().into();
                body
            }
        };
        Ok(Outcome::done("gen", p.clone(), result, true, text))
    })
}

/// Builds and checks the closed-form total dominating set of `W(3, n)`.
pub fn cmd_construct(delta: u32, n: usize) -> Outcome {
    let p = params([("delta", delta.into()), ("n", n.into())]);
    run("construct", p, |p| {
        if delta != 3 {
            return Err(Error::OutOfDomain {
                n,
                reason: format!("constructions exist for delta = 3 only, got {delta}"),
            });
        }
        let g = KnodelGraph::new(3, n)?;
        let set = construct_optimal_tds(n)?;
        let formula = gamma_t_formula(n)?;
        let report = is_total_dominating(&g, &set)?;
        let ok = report.holds && set.len() == formula;
        let result = json!({
            "size": set.len(),
            "formula": formula,
            "verified": report.holds,
            "set": names(&set),
            "uncovered": names(&report.uncovered),
        });
        let text = format!(
            "{g}: |D| = {} (formula {formula}), total dominating: {}\nD = {}\n",
            set.len(),
            if report.holds { "yes" } else { "NO" },
            format_vertex_set(&set)
        );
        Ok(Outcome::done("construct", p.clone(), result, ok, text))
    })
}

pub fn cmd_verify(delta: u32, n: usize, set: &str, kind: DominationKind) -> Outcome {
    let p = params([
        ("delta", delta.into()),
        ("n", n.into()),
        ("set", set.into()),
        ("kind", kind.to_string().into()),
    ]);
    run("verify", p, |p| {
        let g = KnodelGraph::new(delta, n)?;
        let d = parse_vertex_set(set)?;
        let r = check(&g, &d, kind)?;
        let result = json!({
            "kind": kind,
            "holds": r.holds,
            "size": d.len(),
            "uncovered": names(&r.uncovered),
        });
        let mut text = format!("{g}: {{{}}} is ", format_vertex_set(&d));
        if r.holds {
            writeln!(text, "{kind}").unwrap();
        } else {
            writeln!(text, "not {kind}; uncovered: {}", format_vertex_set(&r.uncovered)).unwrap();
        }
        Ok(Outcome::done("verify", p.clone(), result, r.holds, text))
    })
}

pub fn cmd_solve(delta: u32, n: usize, kind: DominationKind, opts: &SolveOptions) -> Outcome {
    let p = params([
        ("delta", delta.into()),
        ("n", n.into()),
        ("kind", kind.to_string().into()),
        ("strategy", json!(opts.strategy)),
        ("max_nodes", opts.max_nodes.into()),
        ("threads", opts.threads.into()),
        ("exhaust_below_bound", opts.exhaust_below_bound.into()),
        ("override_guard", opts.override_guard.into()),
    ]);
    run("solve", p, |p| {
        let g = KnodelGraph::new(delta, n)?;
        let r = solve(&g, kind, opts)?;
        let formula = if delta == 3 && kind == DominationKind::TotalDominating {
            Some(gamma_t_formula(n)?)
        } else {
            None
        };
        let result = json!({
            "kind": kind,
            "optimum": r.optimum,
            "witness": names(&r.witness),
            "certificate": r.certificate,
            "nodes_explored": r.nodes_explored,
            "elapsed_us": u64::try_from(r.elapsed.as_micros()).unwrap_or(u64::MAX),
            "formula": formula,
        });
        let symbol = match kind {
            DominationKind::TotalDominating => "gamma_t",
            DominationKind::Dominating => "gamma",
        };
        let mut text = format!("{symbol}({g}) = {} [{}]\n", r.optimum, json!(r.certificate).as_str().unwrap());
        writeln!(text, "witness: {}", format_vertex_set(&r.witness)).unwrap();
        if let Some(f) = formula {
            writeln!(text, "formula: {f}").unwrap();
        }
        writeln!(text, "nodes: {}, elapsed: {} ms", r.nodes_explored, r.elapsed.as_millis()).unwrap();
        let agrees = formula.is_none_or(|f| f == r.optimum);
        Ok(Outcome::done("solve", p.clone(), result, agrees, text))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub n: usize,
    pub residue: usize,
    pub formula: usize,
    pub bound: usize,
    pub construction_size: usize,
    pub construction_verified: bool,
    pub solver_optimum: Option<usize>,
}

impl TableRow {
    pub fn consistent(&self) -> bool {
        self.formula == self.bound
            && self.construction_size == self.formula
            && self.construction_verified
            && self.solver_optimum.is_none_or(|s| s == self.formula)
    }
}

fn within_guard(n: usize, opts: &SolveOptions) -> bool {
    opts.override_guard
        || match opts.strategy {
            Strategy::Exhaustive => n <= EXHAUSTIVE_GUARD_N,
            Strategy::Pruned => n <= PRUNED_GUARD_N,
            Strategy::Construction => true,
        }
}

/// One row per even `n` in `[n_min, n_max]`. With `solve`, rows inside the
/// solver's size guard also carry the exact optimum.
pub fn table_rows(n_min: usize, n_max: usize, solve_with: Option<&SolveOptions>) -> Result<Vec<TableRow>> {
    if n_min < 8 || !n_min.is_multiple_of(2) || !n_max.is_multiple_of(2) || n_max < n_min {
        return Err(Error::OutOfDomain {
            n: if n_min < 8 || !n_min.is_multiple_of(2) { n_min } else { n_max },
            reason: "table bounds must be even with 8 <= n_min <= n_max".into(),
        });
    }
    (n_min..=n_max)
        .step_by(2)
        .map(|n| {
            let g = KnodelGraph::new(3, n)?;
            let set = construct_optimal_tds(n)?;
            let solver_optimum = match solve_with {
                Some(o) if within_guard(n, o) => Some(solve(&g, DominationKind::TotalDominating, o)?.optimum),
                _ => None,
            };
            Ok(TableRow {
                n,
                residue: n % 10,
                formula: gamma_t_formula(n)?,
                bound: counting_lower_bound(n)?,
                construction_size: set.len(),
                construction_verified: is_total_dominating(&g, &set)?.holds,
                solver_optimum,
            })
        })
        .collect()
}

pub fn cmd_table(n_min: usize, n_max: usize, solve_with: Option<&SolveOptions>) -> Outcome {
    let p = params([
        ("n_min", n_min.into()),
        ("n_max", n_max.into()),
        ("solve", solve_with.map(|o| json!(o.strategy)).unwrap_or(Value::Null)),
    ]);
    run("table", p, |p| {
        let rows = table_rows(n_min, n_max, solve_with)?;
        let ok = rows.iter().all(TableRow::consistent);
        let mut text = String::from("n\tn%10\tformula\t2ceil(n/5)\t|D|\tverified\tsolver\n");
        for r in &rows {
            let solved = r.solver_optimum.map_or("-".to_string(), |s| s.to_string());
            writeln!(
                text,
                "{}\t{}\t{}\t{}\t{}\t{}\t{}",
                r.n, r.residue, r.formula, r.bound, r.construction_size, r.construction_verified, solved
            )
            .unwrap();
        }
        Ok(Outcome::done("table", p.clone(), json!({ "rows": rows }), ok, text))
    })
}

pub fn cmd_check_lemmas(cfg: &SuiteConfig) -> Outcome {
    let p = params([
        ("delta", cfg.delta.into()),
        ("n_max", cfg.n_max.into()),
        ("exhaustive", cfg.exhaustive.into()),
        ("triple_n_max", cfg.triple_n_max.into()),
        ("subset_n_max", cfg.subset_n_max.into()),
        ("samples", cfg.samples.into()),
        ("seed", cfg.seed.into()),
        ("override_guard", cfg.override_guard.into()),
    ]);
    run("check-lemmas", p, |p| {
        let report = run_suite(cfg)?;
        let mut text = format!("{} instances\n", report.instances);
        for o in &report.outcomes {
            let mark = if o.passed() { "PASS" } else { "FAIL" };
            writeln!(text, "{mark} {:<32} {:>12} cases", o.lemma, o.cases).unwrap();
            if let Some(c) = &o.counterexample {
                writeln!(
                    text,
                    "     counterexample in W({},{}): {} ({})",
                    c.delta,
                    c.n,
                    format_vertex_set(&c.vertices),
                    c.detail
                )
                .unwrap();
            }
        }
        let result = serde_json::to_value(&report).expect("plain data");
        Ok(Outcome::done("check-lemmas", p.clone(), result, report.passed(), text))
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verify_exit_codes() {
        let ok = cmd_verify(3, 10, "u1,u2,v1,v2", DominationKind::TotalDominating);
        assert_eq!(ok.exit_code, EXIT_OK);
        let bad = cmd_verify(3, 10, "u1,v1", DominationKind::TotalDominating);
        assert_eq!(bad.exit_code, EXIT_VERIFICATION_FAILED);
        assert!(bad.report.result["uncovered"].as_array().unwrap().contains(&json!("v3")));
        let err = cmd_verify(3, 10, "u1,v9", DominationKind::TotalDominating);
        assert_eq!(err.exit_code, EXIT_DOMAIN);
        assert_eq!(err.report.status, Status::Error);
    }

    #[test]
    fn table_examples() {
        let rows = table_rows(8, 12, None).unwrap();
        let short: Vec<_> = rows
            .iter()
            .map(|r| (r.n, r.residue, r.formula, r.bound, r.construction_size, r.construction_verified))
            .collect();
        assert_eq!(short, vec![(8, 8, 4, 4, 4, true), (10, 0, 4, 4, 4, true), (12, 2, 6, 6, 6, true)]);
        assert_eq!(table_rows(20, 20, None).unwrap()[0].formula, 8);
        let o = SolveOptions {
            strategy: Strategy::Exhaustive,
            ..SolveOptions::default()
        };
        let r = &table_rows(14, 14, Some(&o)).unwrap()[0];
        assert_eq!((r.formula, r.solver_optimum), (6, Some(6)));
        assert!(table_rows(7, 12, None).is_err());
        assert!(table_rows(12, 8, None).is_err());
        assert!(table_rows(6, 8, None).is_err());
    }

    #[test]
    fn table_skips_solver_outside_guard() {
        let o = SolveOptions::default();
        let rows = table_rows(40, 42, Some(&o)).unwrap();
        assert_eq!(rows[0].solver_optimum, Some(16));
        assert_eq!(rows[1].solver_optimum, None);
    }

    #[test]
    fn construct_requires_cubic() {
        assert_eq!(cmd_construct(3, 16).exit_code, EXIT_OK);
        assert_eq!(cmd_construct(2, 16).exit_code, EXIT_DOMAIN);
        assert_eq!(cmd_construct(3, 9).exit_code, EXIT_DOMAIN);
    }

    #[test]
    fn solve_resource_errors() {
        let o = SolveOptions {
            strategy: Strategy::Exhaustive,
            ..SolveOptions::default()
        };
        assert_eq!(cmd_solve(3, 30, DominationKind::TotalDominating, &o).exit_code, EXIT_RESOURCE);
        let o = SolveOptions {
            max_nodes: Some(10),
            ..o
        };
        let out = cmd_solve(3, 20, DominationKind::TotalDominating, &o);
        assert_eq!(out.exit_code, EXIT_RESOURCE);
        assert_eq!(out.report.result["error"]["kind"], "incomplete");
    }
}
