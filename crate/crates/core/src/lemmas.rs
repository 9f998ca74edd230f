//! Computational verification suites for the structural properties of Knödel
//! graphs. Each property is checked exhaustively on small instances and on
//! seeded random samples; every outcome keeps the first counterexample found
//! in canonical order (instance `(delta, n)`, then side, then indices).

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::diffset::check_power_diff_identity;
use crate::error::{Error, Result};
use crate::graph::{KnodelGraph, Side, Vertex};
use crate::structure::{
    check_k23_free, common_neighbors, counting_report, predict_intersection,
    unique_intersection_regime, PAIR_GUARD_HALF,
};

pub const DEFAULT_SEED: u64 = 0x6b6e_6f64_656c;
pub const DEFAULT_SAMPLES: usize = 10_000;

pub const POWER_DIFFERENCE: &str = "power-difference-uniqueness";
pub const CYCLIC_SUM: &str = "cyclic-sequence-sum";
pub const DISTANCE_DECOMPOSITION: &str = "index-distance-decomposition";
pub const NONEMPTY_INTERSECTION: &str = "nonempty-intersection";
pub const DOUBLE_INTERSECTION: &str = "double-intersection";
pub const SINGLE_INTERSECTION: &str = "single-intersection";
pub const PREDICTION_CONSISTENCY: &str = "prediction-consistency";
pub const UNIQUE_REGIME: &str = "unique-intersection-regime";
pub const K23_FREE: &str = "k23-free";
pub const DEGREE_SUM: &str = "degree-sum";
pub const GAP_SLACK: &str = "gap-slack-bound";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub delta: u32,
    pub n: usize,
    pub vertices: Vec<Vertex>,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LemmaOutcome {
    pub lemma: String,
    pub cases: u64,
    pub counterexample: Option<Counterexample>,
}

impl LemmaOutcome {
    fn new(lemma: &str) -> Self {
        LemmaOutcome {
            lemma: lemma.to_string(),
            cases: 0,
            counterexample: None,
        }
    }

    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> Counterexample) {
        self.cases += 1;
        if !ok && self.counterexample.is_none() {
            self.counterexample = Some(witness());
        }
    }

    fn merge(&mut self, other: LemmaOutcome) {
        self.cases += other.cases;
        if self.counterexample.is_none() {
            self.counterexample = other.counterexample;
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteConfig {
    /// Restrict to one degree; `None` sweeps every valid degree.
    pub delta: Option<u32>,
    pub n_max: usize,
    pub exhaustive: bool,
    /// Exhaustive triple scans cover `n <= min(n_max, triple_n_max)`.
    pub triple_n_max: usize,
    /// All subsets of size <= 3 are checked for `n <= min(n_max, subset_n_max)`.
    pub subset_n_max: usize,
    pub samples: usize,
    pub seed: u64,
    pub override_guard: bool,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            delta: None,
            n_max: 64,
            exhaustive: false,
            triple_n_max: 64,
            subset_n_max: 40,
            samples: DEFAULT_SAMPLES,
            seed: DEFAULT_SEED,
            override_guard: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteReport {
    pub instances: usize,
    pub outcomes: Vec<LemmaOutcome>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.outcomes.iter().all(LemmaOutcome::passed)
    }

    pub fn outcome(&self, lemma: &str) -> Option<&LemmaOutcome> {
        self.outcomes.iter().find(|o| o.lemma == lemma)
    }
}

/// Per-lemma tallies for one batch of checks.
#[derive(Debug, Clone)]
struct Tally(Vec<LemmaOutcome>);

impl Tally {
    fn new() -> Self {
        Tally(
            [
                POWER_DIFFERENCE,
                CYCLIC_SUM,
                DISTANCE_DECOMPOSITION,
                NONEMPTY_INTERSECTION,
                DOUBLE_INTERSECTION,
                SINGLE_INTERSECTION,
                PREDICTION_CONSISTENCY,
                UNIQUE_REGIME,
                K23_FREE,
                DEGREE_SUM,
                GAP_SLACK,
            ]
            .iter()
            .map(|l| LemmaOutcome::new(l))
            .collect(),
        )
    }

    fn get(&mut self, lemma: &str) -> &mut LemmaOutcome {
        self.0.iter_mut().find(|o| o.lemma == lemma).expect("known lemma")
    }

    fn merge(&mut self, other: Tally) {
        for (mine, theirs) in self.0.iter_mut().zip(other.0) {
            mine.merge(theirs);
        }
    }
}

fn witness(g: &KnodelGraph, vertices: &[Vertex], detail: String) -> Counterexample {
    Counterexample {
        delta: g.delta(),
        n: g.n(),
        vertices: vertices.to_vec(),
        detail,
    }
}

/// Every valid `(delta, n)` with `n <= n_max`, ordered by `(n, delta)`.
pub fn instances(delta: Option<u32>, n_max: usize) -> Vec<KnodelGraph> {
    (2..=n_max)
        .step_by(2)
        .flat_map(|n| (1..=n.ilog2()).map(move |d| (d, n)))
        .filter(|&(d, _)| delta.is_none_or(|want| want == d))
        .map(|(d, n)| KnodelGraph::new(d, n).expect("enumerated parameters are valid"))
        .collect()
}

fn check_pair(g: &KnodelGraph, a: Vertex, b: Vertex, regime: bool, t: &mut Tally) -> Result<()> {
    let count = common_neighbors(g, a, b)?.len();
    let p = predict_intersection(g, a, b)?;
    let pair = [a, b];
    let detail = || {
        format!(
            "|N({a}) ∩ N({b})| = {count}, id in M: {}, half - id in M: {}",
            p.id_in_m, p.co_id_in_m
        )
    };
    t.get(NONEMPTY_INTERSECTION)
        .record((count > 0) == (p.id_in_m || p.co_id_in_m), || witness(g, &pair, detail()));
    t.get(DOUBLE_INTERSECTION)
        .record((count == 2) == (p.id_in_m && p.co_id_in_m), || witness(g, &pair, detail()));
    t.get(SINGLE_INTERSECTION)
        .record((count == 1) == (p.id_in_m != p.co_id_in_m), || witness(g, &pair, detail()));
    t.get(PREDICTION_CONSISTENCY)
        .record(count == p.predicted_count, || witness(g, &pair, detail()));
    if regime {
        let ok = count <= 1 && ((count == 1) == p.id_in_m);
        t.get(UNIQUE_REGIME).record(ok, || witness(g, &pair, detail()));
    }
    Ok(())
}

/// Checks the gap sum, and that for every pair the two arcs of the
/// cyclic-sequence between them sum to `id` and `half - id`.
fn check_sequence(g: &KnodelGraph, set: &[Vertex], t: &mut Tally) -> Result<()> {
    let cs = g.cyclic_sequence(set)?;
    let half = g.half();
    t.get(CYCLIC_SUM).record(cs.sum() == half, || {
        witness(g, set, format!("gaps {:?} sum to {} != {half}", cs.gaps(), cs.sum()))
    });

    let mut sorted = set.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    let k = sorted.len();
    for p in 0..k {
        for q in p + 1..k {
            let id = g.index_distance(sorted[p], sorted[q])?;
            // the run from position p to q and its complement around the cycle
            let inner = cs.run_sum(p, q - p);
            let outer = cs.run_sum(q, k - (q - p));
            let ok = (inner, outer) == (id, half - id) || (inner, outer) == (half - id, id);
            t.get(DISTANCE_DECOMPOSITION).record(ok, || {
                witness(
                    g,
                    &[sorted[p], sorted[q]],
                    format!("id = {id} is not a run of gaps {:?}", cs.gaps()),
                )
            });
        }
    }
    Ok(())
}

fn check_counting(g: &KnodelGraph, set: &[Vertex], t: &mut Tally) -> Result<()> {
    let r = counting_report(g, set)?;
    t.get(DEGREE_SUM).record(r.degree_sum_holds(), || {
        witness(
            g,
            set,
            format!("degree sum {} != delta * |A| = {}", r.degree_sum, r.delta as usize * r.set_size),
        )
    });
    t.get(GAP_SLACK).record(r.gap_bound_holds(), || {
        witness(
            g,
            set,
            format!("{} gaps in M exceed slack {}", r.m_gap_count, r.slack),
        )
    });
    check_sequence(g, set, t)
}

fn exhaustive_pairs(g: &KnodelGraph, override_guard: bool) -> Result<Tally> {
    if g.half() > PAIR_GUARD_HALF && !override_guard {
        return Err(Error::TooLarge(format!(
            "pair enumeration on {g} needs half <= {PAIR_GUARD_HALF}"
        )));
    }
    let mut t = Tally::new();
    let regime = unique_intersection_regime(g);
    for side in [Side::U, Side::V] {
        for i in 1..=g.half() {
            for j in i + 1..=g.half() {
                check_pair(g, Vertex::new(side, i), Vertex::new(side, j), regime, &mut t)?;
            }
        }
    }
    Ok(t)
}

fn exhaustive_triples(g: &KnodelGraph, override_guard: bool) -> Result<Tally> {
    let mut t = Tally::new();
    let r = check_k23_free(g, override_guard)?;
    let outcome = t.get(K23_FREE);
    outcome.cases += r.triples_checked;
    if let Some((triple, common)) = r.counterexample {
        let detail = format!("common neighbours {common:?}");
        outcome.counterexample = Some(witness(g, &triple, detail));
    }
    Ok(t)
}

fn small_subsets(g: &KnodelGraph) -> Result<Tally> {
    let mut t = Tally::new();
    let h = g.half();
    for side in [Side::U, Side::V] {
        let w = |i: usize| Vertex::new(side, i);
        for i in 1..=h {
            check_counting(g, &[w(i)], &mut t)?;
            for j in i + 1..=h {
                check_counting(g, &[w(i), w(j)], &mut t)?;
                for k in j + 1..=h {
                    check_counting(g, &[w(i), w(j), w(k)], &mut t)?;
                }
            }
        }
    }
    Ok(t)
}

/// Picks a uniformly random even `n` in `[2, n_max]` and a valid degree.
fn random_instance(rng: &mut ChaCha8Rng, delta: Option<u32>, n_max: usize) -> Result<KnodelGraph> {
    let n_min = match delta {
        Some(d) => 1usize
            .checked_shl(d)
            .ok_or_else(|| Error::InvalidParameters(format!("delta = {d} too large")))?,
        None => 2,
    };
    if n_min > n_max {
        return Err(Error::InvalidParameters(format!(
            "no valid instance with n <= {n_max} for delta = {delta:?}"
        )));
    }
    let n = 2 * rng.random_range(n_min / 2..=n_max / 2);
    let d = delta.unwrap_or_else(|| rng.random_range(1..=n.ilog2()));
    KnodelGraph::new(d, n)
}

/// Random nonempty one-sided subset. Size is uniform in `[1, min(half, 12)]`;
/// a quarter of draws are a consecutive (wrapping) block of indices.
pub fn random_subset(rng: &mut ChaCha8Rng, g: &KnodelGraph) -> Vec<Vertex> {
    let h = g.half();
    let side = if rng.random_bool(0.5) { Side::U } else { Side::V };
    let size = rng.random_range(1..=h.min(12));
    let mut idx: Vec<usize> = if rng.random_bool(0.25) {
        let start = rng.random_range(0..h);
        (0..size).map(|t| (start + t) % h + 1).collect()
    } else {
        rand::seq::index::sample(rng, h, size)
            .into_iter()
            .map(|i| i + 1)
            .collect()
    };
    idx.sort_unstable();
    idx.into_iter().map(|i| Vertex::new(side, i)).collect()
}

fn distinct_indices(rng: &mut ChaCha8Rng, h: usize, k: usize) -> Vec<usize> {
    rand::seq::index::sample(rng, h, k)
        .into_iter()
        .map(|i| i + 1)
        .collect()
}

fn sampled_pairs_and_triples(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<Tally> {
    let mut t = Tally::new();
    let mut drawn = 0;
    while drawn < cfg.samples {
        let g = random_instance(rng, cfg.delta, cfg.n_max)?;
        let side = if rng.random_bool(0.5) { Side::U } else { Side::V };
        if g.half() < 2 {
            continue;
        }
        drawn += 1;
        let ij = distinct_indices(rng, g.half(), 2);
        let (a, b) = (Vertex::new(side, ij[0]), Vertex::new(side, ij[1]));
        check_pair(&g, a, b, unique_intersection_regime(&g), &mut t)?;

        if g.half() >= 3 {
            let ijk = distinct_indices(rng, g.half(), 3);
            let triple: Vec<Vertex> = ijk.iter().map(|&i| Vertex::new(side, i)).collect();
            let ab = common_neighbors(&g, triple[0], triple[1])?;
            let ac = common_neighbors(&g, triple[0], triple[2])?;
            let shared: Vec<Vertex> = ab.into_iter().filter(|w| ac.contains(w)).collect();
            t.get(K23_FREE).record(shared.len() <= 1, || {
                witness(&g, &triple, format!("common neighbours {shared:?}"))
            });
        }
    }
    Ok(t)
}

fn sampled_subsets(cfg: &SuiteConfig, rng: &mut ChaCha8Rng) -> Result<Tally> {
    let mut t = Tally::new();
    for _ in 0..cfg.samples {
        let g = random_instance(rng, cfg.delta, cfg.n_max)?;
        let set = random_subset(rng, &g);
        check_counting(&g, &set, &mut t)?;
    }
    Ok(t)
}

fn power_differences() -> Result<Tally> {
    let mut t = Tally::new();
    for base in [2u64, 3] {
        let r = check_power_diff_identity(base, 12)?;
        let outcome = t.get(POWER_DIFFERENCE);
        outcome.cases += r.quadruples_checked;
        if let (Some(q), None) = (r.counterexample, &outcome.counterexample) {
            outcome.counterexample = Some(Counterexample {
                delta: 0,
                n: 0,
                vertices: vec![],
                detail: format!("{base}^{} - {base}^{} = {base}^{} - {base}^{}", q[0], q[1], q[2], q[3]),
            });
        }
    }
    Ok(t)
}

/// Runs every property check described by `cfg`.
pub fn run_suite(cfg: &SuiteConfig) -> Result<SuiteReport> {
    if cfg.n_max < 2 {
        return Err(Error::InvalidParameters(format!("n_max = {} must be >= 2", cfg.n_max)));
    }
    let graphs = instances(cfg.delta, cfg.n_max);
    if graphs.is_empty() {
        return Err(Error::InvalidParameters(format!(
            "no valid instance with n <= {} for delta = {:?}",
            cfg.n_max, cfg.delta
        )));
    }

    let mut total = power_differences()?;

    if cfg.exhaustive {
        let per_instance: Vec<Result<Tally>> = graphs
            .par_iter()
            .map(|g| {
                let mut t = exhaustive_pairs(g, cfg.override_guard)?;
                if g.n() <= cfg.triple_n_max {
                    t.merge(exhaustive_triples(g, cfg.override_guard)?);
                }
                if g.n() <= cfg.subset_n_max {
                    t.merge(small_subsets(g)?);
                }
                Ok(t)
            })
            .collect();
        for t in per_instance {
            total.merge(t?);
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
        total.merge(sampled_pairs_and_triples(cfg, &mut rng)?);
    }

    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ 0x5eed);
    total.merge(sampled_subsets(cfg, &mut rng)?);

    Ok(SuiteReport {
        instances: graphs.len(),
        outcomes: total.0,
    })
}
