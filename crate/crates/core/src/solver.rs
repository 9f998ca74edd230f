//! Exact minimum (total) dominating sets.
//!
//! Three strategies share one result type:
//!
//! * `Exhaustive` enumerates every vertex subset by increasing size, in
//!   lexicographic order, with no pruning at all.
//! * `Pruned` solves covering problems by branch and bound. For total
//!   domination the two sides decouple (`D ∩ U` must dominate `V`, `D ∩ V`
//!   must dominate `U`), so target sizes are split into `(s_U, s_V)` and each
//!   side is searched on its own.
//! * `Construction` returns the closed-form set for `W(3,n)` and certifies it
//!   against the counting bound without any search.
//!
//! The reported witness for the two search strategies is the lexicographically
//! least optimum under canonical vertex order, independent of thread count.

use std::str::FromStr;
use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::domination::{
    check, construct_optimal_tds, counting_lower_bound, side_lower_bound, DominationKind,
};
use crate::error::{Error, Result};
use crate::graph::{KnodelGraph, Side, Vertex};

/// Exhaustive mode refuses larger orders unless the guard is overridden.
pub const EXHAUSTIVE_GUARD_N: usize = 24;
/// Pruned mode refuses larger orders unless the guard is overridden.
pub const PRUNED_GUARD_N: usize = 40;
/// Bitmask width; a hard limit even with the guard overridden.
pub const MASK_BITS: usize = 128;

type Mask = u128;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    Exhaustive,
    Pruned,
    Construction,
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Strategy> {
        match s.trim().to_ascii_lowercase().as_str() {
            "exhaustive" | "pure-exhaustive" => Ok(Strategy::Exhaustive),
            "pruned" => Ok(Strategy::Pruned),
            "construction" => Ok(Strategy::Construction),
            other => Err(Error::Parse(format!("unknown strategy {other:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Certificate {
    /// The optimum equals a proven lower bound; smaller sizes were not searched.
    BoundMatched,
    /// The search itself refuted every smaller size.
    Exhausted,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SolveOptions {
    pub strategy: Strategy,
    pub max_nodes: Option<u64>,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
    /// Pruned mode only: search sizes below the counting bound too, so the
    /// certificate comes from the search rather than the bound.
    pub exhaust_below_bound: bool,
    pub override_guard: bool,
}

impl Default for SolveOptions {
    fn default() -> Self {
        SolveOptions {
            strategy: Strategy::Pruned,
            max_nodes: None,
            threads: None,
            exhaust_below_bound: false,
            override_guard: false,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub kind: DominationKind,
    pub optimum: usize,
    pub witness: Vec<Vertex>,
    pub certificate: Certificate,
    /// Approximate under concurrency.
    pub nodes_explored: u64,
    pub elapsed: Duration,
}

/// Shared node counter with an optional hard limit.
struct Budget {
    nodes: AtomicU64,
    limit: Option<u64>,
    exceeded: AtomicBool,
}

impl Budget {
    fn new(limit: Option<u64>) -> Self {
        Budget {
            nodes: AtomicU64::new(0),
            limit,
            exceeded: AtomicBool::new(false),
        }
    }

    /// Counts one node; false once the limit has been passed.
    #[inline]
    fn tick(&self) -> bool {
        let used = self.nodes.fetch_add(1, Ordering::Relaxed) + 1;
        if let Some(limit) = self.limit {
            if used > limit {
                self.exceeded.store(true, Ordering::Relaxed);
                return false;
            }
        }
        !self.exceeded.load(Ordering::Relaxed)
    }

    fn exceeded(&self) -> bool {
        self.exceeded.load(Ordering::Relaxed)
    }

    fn used(&self) -> u64 {
        self.nodes.load(Ordering::Relaxed)
    }

    fn incomplete(&self, lower: usize, upper: Option<usize>) -> Error {
        Error::Incomplete {
            nodes: self.used(),
            lower,
            upper,
        }
    }
}

#[inline]
fn bit(i: usize) -> Mask {
    1 << i
}

fn full_mask(bits: usize) -> Mask {
    if bits == MASK_BITS {
        Mask::MAX
    } else {
        bit(bits) - 1
    }
}

/// Cover `universe` with as few of `sets` as possible.
struct CoverProblem {
    universe: Mask,
    sets: Vec<Mask>,
    /// For each element, the ascending indices of the sets containing it.
    coverers: Vec<Vec<usize>>,
    max_cover: u32,
}

impl CoverProblem {
    fn new(universe_bits: usize, sets: Vec<Mask>) -> Self {
        let coverers = (0..universe_bits)
            .map(|e| (0..sets.len()).filter(|&c| sets[c] & bit(e) != 0).collect())
            .collect();
        let max_cover = sets.iter().map(|s| s.count_ones()).max().unwrap_or(0);
        CoverProblem {
            universe: full_mask(universe_bits),
            sets,
            coverers,
            max_cover,
        }
    }

    #[inline]
    fn hopeless(&self, uncovered: Mask, picks: usize) -> bool {
        uncovered.count_ones() as usize > picks * self.max_cover as usize
    }

    /// Whether at most `picks` sets cover everything. Branches on the lowest
    /// uncovered element and each set that contains it.
    fn feasible(&self, picks: usize, budget: &Budget) -> bool {
        let uncovered = self.universe;
        if uncovered == 0 {
            return true;
        }
        if picks == 0 || self.hopeless(uncovered, picks) || !budget.tick() {
            return false;
        }
        let e = uncovered.trailing_zeros() as usize;
        self.coverers[e]
            .par_iter()
            .any(|&c| self.feasible_from(uncovered & !self.sets[c], picks - 1, budget))
    }

    fn feasible_from(&self, uncovered: Mask, picks: usize, budget: &Budget) -> bool {
        if uncovered == 0 {
            return true;
        }
        if picks == 0 || self.hopeless(uncovered, picks) || !budget.tick() {
            return false;
        }
        let e = uncovered.trailing_zeros() as usize;
        self.coverers[e]
            .iter()
            .any(|&c| self.feasible_from(uncovered & !self.sets[c], picks - 1, budget))
    }

    /// The lexicographically least cover of exactly `picks` sets, assuming no
    /// smaller cover exists.
    fn lex_least(&self, picks: usize, budget: &Budget) -> Option<Vec<usize>> {
        if picks == 0 {
            return (self.universe == 0).then(Vec::new);
        }
        let m = self.sets.len();
        (0..m).into_par_iter().find_map_first(|first| {
            let mut chosen = vec![first];
            self.lex_from(first + 1, self.universe & !self.sets[first], picks - 1, &mut chosen, budget)
                .then_some(chosen)
        })
    }

    fn lex_from(
        &self,
        start: usize,
        uncovered: Mask,
        picks: usize,
        chosen: &mut Vec<usize>,
        budget: &Budget,
    ) -> bool {
        if uncovered == 0 {
            return true;
        }
        if picks == 0 || self.hopeless(uncovered, picks) || !budget.tick() {
            return false;
        }
        // the lowest uncovered element must be covered by some later pick
        let e = uncovered.trailing_zeros() as usize;
        let last = match self.coverers[e].last() {
            Some(&c) if c >= start => c,
            _ => return false,
        };
        for c in start..=last {
            chosen.push(c);
            if self.lex_from(c + 1, uncovered & !self.sets[c], picks - 1, chosen, budget) {
                return true;
            }
            chosen.pop();
            if budget.exceeded() {
                return false;
            }
        }
        false
    }
}

fn in_pool<T: Send>(threads: Option<usize>, job: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(job()),
        Some(t) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(t.max(1))
                .build()
                .map_err(|e| Error::InvalidParameters(format!("thread pool: {e}")))?;
            Ok(pool.install(job))
        }
    }
}

fn guard(g: &KnodelGraph, opts: &SolveOptions, limit: usize, what: &str) -> Result<()> {
    if g.n() > limit && !opts.override_guard {
        return Err(Error::TooLarge(format!(
            "{what} search on {g} is limited to n <= {limit} (override to lift)"
        )));
    }
    Ok(())
}

fn open_masks(g: &KnodelGraph, closed: bool) -> Vec<Mask> {
    g.vertices()
        .map(|w| {
            let other = w.side.opposite();
            let mut m = g
                .neighbors(w)
                .expect("vertex of g")
                .into_iter()
                .fold(0, |acc, x| acc | bit(g.dense_index(Vertex::new(other, x.index))));
            if closed {
                m |= bit(g.dense_index(w));
            }
            m
        })
        .collect()
}

/// Depth-first walk over every `picks`-subset of `masks[start..]` in
/// lexicographic order. No pruning.
fn enumerate(
    masks: &[Mask],
    start: usize,
    picks: usize,
    acc: Mask,
    full: Mask,
    chosen: &mut Vec<usize>,
    budget: &Budget,
) -> bool {
    if picks == 0 {
        return budget.tick() && acc == full;
    }
    for c in start..=masks.len() - picks {
        chosen.push(c);
        if enumerate(masks, c + 1, picks - 1, acc | masks[c], full, chosen, budget) {
            return true;
        }
        chosen.pop();
        if budget.exceeded() {
            return false;
        }
    }
    false
}

fn solve_exhaustive(g: &KnodelGraph, kind: DominationKind, opts: &SolveOptions, budget: &Budget) -> Result<(usize, Vec<Vertex>, Certificate)> {
    guard(g, opts, EXHAUSTIVE_GUARD_N, "exhaustive")?;
    let n = g.n();
    if n > MASK_BITS {
        return Err(Error::TooLarge(format!("exhaustive search needs n <= {MASK_BITS}")));
    }
    let masks = open_masks(g, kind == DominationKind::Dominating);
    let full = full_mask(n);
    for size in 1..=n {
        let found = (0..=n - size).into_par_iter().find_map_first(|first| {
            let mut chosen = vec![first];
            enumerate(&masks, first + 1, size - 1, masks[first], full, &mut chosen, budget)
                .then_some(chosen)
        });
        if budget.exceeded() {
            return Err(budget.incomplete(size, None));
        }
        if let Some(chosen) = found {
            let witness = chosen.into_iter().map(|d| g.from_dense(d)).collect();
            return Ok((size, witness, Certificate::Exhausted));
        }
    }
    unreachable!("the whole vertex set dominates a graph without isolated vertices")
}

/// Sets of `side` covering the opposite side, indexed by 0-based slot.
fn side_problem(g: &KnodelGraph, side: Side) -> CoverProblem {
    let sets = (0..g.half())
        .map(|i| g.neighbor_slots(side, i).fold(0, |acc, s| acc | bit(s)))
        .collect();
    CoverProblem::new(g.half(), sets)
}

/// Memoised per-side feasibility.
struct SideSearch {
    problem: CoverProblem,
    known: Vec<Option<bool>>,
}

impl SideSearch {
    fn feasible(&mut self, picks: usize, budget: &Budget) -> bool {
        if let Some(ans) = self.known[picks] {
            return ans;
        }
        let ans = self.problem.feasible(picks, budget);
        if !budget.exceeded() {
            self.known[picks] = Some(ans);
        }
        ans
    }
}

fn solve_pruned_total(g: &KnodelGraph, opts: &SolveOptions, budget: &Budget) -> Result<(usize, Vec<Vertex>, Certificate)> {
    guard(g, opts, PRUNED_GUARD_N, "pruned")?;
    let half = g.half();
    if half > MASK_BITS {
        return Err(Error::TooLarge(format!("pruned search needs n/2 <= {MASK_BITS}")));
    }
    let cubic = g.delta() == 3;
    let use_bound = cubic && !opts.exhaust_below_bound;
    // below the degree bound the budget prune refutes a size at the root anyway
    let side_lb = if use_bound {
        side_lower_bound(g.n())?
    } else {
        half.div_ceil(g.delta() as usize)
    };
    let upper = if cubic { Some(counting_lower_bound(g.n())?) } else { None };

    let mut sides = [Side::U, Side::V].map(|s| SideSearch {
        problem: side_problem(g, s),
        known: vec![None; half + 1],
    });

    for target in 2 * side_lb..=2 * half {
        for s_u in side_lb..=target - side_lb {
            let s_v = target - s_u;
            if s_u > half || s_v > half {
                continue;
            }
            let ok = sides[0].feasible(s_u, budget) && sides[1].feasible(s_v, budget);
            if budget.exceeded() {
                return Err(budget.incomplete(target, upper));
            }
            if !ok {
                continue;
            }
            // at the least feasible target both sides sit at their own minimum,
            // so this split is the only one and its per-side lex-least parts
            // concatenate to the lex-least optimum
            let mut witness = Vec::with_capacity(target);
            for (search, (side, picks)) in sides.iter().zip([(Side::U, s_u), (Side::V, s_v)]) {
                let chosen = search
                    .problem
                    .lex_least(picks, budget)
                    .ok_or_else(|| budget.incomplete(target, upper))?;
                witness.extend(chosen.into_iter().map(|i| Vertex::new(side, i + 1)));
            }
            let certificate = if use_bound && target == 2 * side_lb {
                Certificate::BoundMatched
            } else {
                Certificate::Exhausted
            };
            return Ok((target, witness, certificate));
        }
    }
    unreachable!("both full sides always form a total dominating set")
}

fn solve_pruned_dominating(g: &KnodelGraph, opts: &SolveOptions, budget: &Budget) -> Result<(usize, Vec<Vertex>, Certificate)> {
    guard(g, opts, PRUNED_GUARD_N, "pruned")?;
    let n = g.n();
    if n > MASK_BITS {
        return Err(Error::TooLarge(format!("pruned domination search needs n <= {MASK_BITS}")));
    }
    let problem = CoverProblem::new(n, open_masks(g, true));
    for size in 1..=n {
        let ok = problem.feasible(size, budget);
        if budget.exceeded() {
            return Err(budget.incomplete(size, None));
        }
        if ok {
            let chosen = problem
                .lex_least(size, budget)
                .ok_or_else(|| budget.incomplete(size, None))?;
            let witness = chosen.into_iter().map(|d| g.from_dense(d)).collect();
            return Ok((size, witness, Certificate::Exhausted));
        }
    }
    unreachable!("the whole vertex set dominates")
}

fn solve_construction(g: &KnodelGraph, kind: DominationKind) -> Result<(usize, Vec<Vertex>, Certificate)> {
    if kind != DominationKind::TotalDominating || g.delta() != 3 {
        return Err(Error::InvalidParameters(
            "the construction strategy covers total domination of W(3,n) only".into(),
        ));
    }
    let witness = construct_optimal_tds(g.n())?;
    let report = check(g, &witness, kind)?;
    if !report.holds || witness.len() != counting_lower_bound(g.n())? {
        return Err(Error::Contract(format!(
            "construction for n = {} failed certification (uncovered {:?})",
            g.n(),
            report.uncovered
        )));
    }
    Ok((witness.len(), witness, Certificate::BoundMatched))
}

pub fn solve(g: &KnodelGraph, kind: DominationKind, opts: &SolveOptions) -> Result<SolveResult> {
    let started = Instant::now();
    let budget = Budget::new(opts.max_nodes);
    let (optimum, witness, certificate) = match opts.strategy {
        Strategy::Construction => solve_construction(g, kind)?,
        Strategy::Exhaustive => in_pool(opts.threads, || solve_exhaustive(g, kind, opts, &budget))??,
        Strategy::Pruned => in_pool(opts.threads, || match kind {
            DominationKind::TotalDominating => solve_pruned_total(g, opts, &budget),
            DominationKind::Dominating => solve_pruned_dominating(g, opts, &budget),
        })??,
    };
    Ok(SolveResult {
        kind,
        optimum,
        witness,
        certificate,
        nodes_explored: budget.used(),
        elapsed: started.elapsed(),
    })
}

/// Minimum total dominating set of `g`.
pub fn solve_min_total_dominating(g: &KnodelGraph, opts: &SolveOptions) -> Result<SolveResult> {
    solve(g, DominationKind::TotalDominating, opts)
}

/// Minimum dominating set of `g`.
pub fn solve_min_dominating(g: &KnodelGraph, opts: &SolveOptions) -> Result<SolveResult> {
    solve(g, DominationKind::Dominating, opts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domination::{gamma_t_formula, is_dominating, is_total_dominating};

    fn g(delta: u32, n: usize) -> KnodelGraph {
        KnodelGraph::new(delta, n).unwrap()
    }

    fn opts(strategy: Strategy) -> SolveOptions {
        SolveOptions {
            strategy,
            ..SolveOptions::default()
        }
    }

    /// Independent reference: brute force over bit patterns, smallest size
    /// first, lexicographically least set of that size.
    fn brute_force(w: &KnodelGraph, kind: DominationKind) -> (usize, Vec<Vertex>) {
        let n = w.n();
        let verts: Vec<Vertex> = w.vertices().collect();
        let mut best: Option<(usize, Vec<Vertex>)> = None;
        for bits in 0u32..(1 << n) {
            let set: Vec<Vertex> = (0..n).filter(|i| bits >> i & 1 == 1).map(|i| verts[i]).collect();
            let holds = match kind {
                DominationKind::TotalDominating => is_total_dominating(w, &set).unwrap().holds,
                DominationKind::Dominating => is_dominating(w, &set).unwrap().holds,
            };
            if holds {
                let better = match &best {
                    None => true,
                    Some((k, b)) => set.len() < *k || (set.len() == *k && set < *b),
                };
                if better {
                    best = Some((set.len(), set));
                }
            }
        }
        best.unwrap()
    }

    #[test]
    fn brute_force_agrees_on_small_graphs() {
        for (d, n) in [(1, 2), (1, 4), (2, 4), (2, 6), (1, 8), (2, 8), (3, 8), (2, 10), (3, 10), (3, 12)] {
            let w = g(d, n);
            for kind in [DominationKind::TotalDominating, DominationKind::Dominating] {
                let (k, set) = brute_force(&w, kind);
                for strategy in [Strategy::Exhaustive, Strategy::Pruned] {
                    let r = solve(&w, kind, &opts(strategy)).unwrap();
                    assert_eq!(r.optimum, k, "{w} {kind} {strategy:?}");
                    assert_eq!(r.witness, set, "{w} {kind} {strategy:?}");
                }
            }
        }
    }

    #[test]
    fn total_examples() {
        let r = solve_min_total_dominating(&g(3, 10), &opts(Strategy::Exhaustive)).unwrap();
        assert_eq!(r.optimum, 4);
        let r = solve_min_total_dominating(&g(3, 14), &opts(Strategy::Exhaustive)).unwrap();
        assert_eq!(r.optimum, 6);
        let r = solve_min_total_dominating(&g(3, 8), &opts(Strategy::Exhaustive)).unwrap();
        assert_eq!(r.optimum, 4);
        assert_eq!(r.witness, vec![Vertex::u(1), Vertex::u(2), Vertex::v(1), Vertex::v(2)]);
        assert_eq!(r.certificate, Certificate::Exhausted);
    }

    #[test]
    fn dominating_examples() {
        let r = solve_min_dominating(&g(1, 2), &opts(Strategy::Exhaustive)).unwrap();
        assert_eq!(r.optimum, 1);
        assert_eq!(r.witness, vec![Vertex::u(1)]);
        let r8 = solve_min_dominating(&g(3, 8), &opts(Strategy::Pruned)).unwrap();
        assert_eq!(r8.optimum, brute_force(&g(3, 8), DominationKind::Dominating).0);
        let r10 = solve_min_dominating(&g(3, 10), &opts(Strategy::Pruned)).unwrap();
        assert!(r10.optimum <= 4);
    }

    #[test]
    fn pruned_certificates() {
        let w = g(3, 20);
        let r = solve_min_total_dominating(&w, &opts(Strategy::Pruned)).unwrap();
        assert_eq!(r.optimum, gamma_t_formula(20).unwrap());
        assert_eq!(r.certificate, Certificate::BoundMatched);

        let o = SolveOptions {
            exhaust_below_bound: true,
            ..opts(Strategy::Pruned)
        };
        let r2 = solve_min_total_dominating(&w, &o).unwrap();
        assert_eq!(r2.certificate, Certificate::Exhausted);
        assert_eq!((r2.optimum, &r2.witness), (r.optimum, &r.witness));

        // other degrees never claim the cubic bound
        let r = solve_min_total_dominating(&g(2, 12), &opts(Strategy::Pruned)).unwrap();
        assert_eq!(r.certificate, Certificate::Exhausted);
    }

    #[test]
    fn construction_strategy() {
        let w = g(3, 1000);
        let r = solve_min_total_dominating(&w, &opts(Strategy::Construction)).unwrap();
        assert_eq!(r.optimum, 400);
        assert_eq!(r.certificate, Certificate::BoundMatched);
        assert!(solve_min_dominating(&w, &opts(Strategy::Construction)).is_err());
        assert!(solve_min_total_dominating(&g(2, 8), &opts(Strategy::Construction)).is_err());
    }

    #[test]
    fn guards() {
        let e = solve_min_total_dominating(&g(3, 26), &opts(Strategy::Exhaustive));
        assert!(matches!(e, Err(Error::TooLarge(_))));
        let e = solve_min_total_dominating(&g(3, 42), &opts(Strategy::Pruned));
        assert!(matches!(e, Err(Error::TooLarge(_))));
        let o = SolveOptions {
            override_guard: true,
            ..opts(Strategy::Pruned)
        };
        assert_eq!(solve_min_total_dominating(&g(3, 42), &o).unwrap().optimum, 18);
        let o = SolveOptions {
            override_guard: true,
            ..opts(Strategy::Exhaustive)
        };
        assert!(matches!(
            solve_min_total_dominating(&g(3, 130), &o),
            Err(Error::TooLarge(_))
        ));
    }

    #[test]
    fn node_limit_reports_incomplete() {
        let o = SolveOptions {
            max_nodes: Some(50),
            ..opts(Strategy::Exhaustive)
        };
        match solve_min_total_dominating(&g(3, 20), &o) {
            Err(Error::Incomplete { lower, upper, .. }) => {
                assert!(lower >= 1);
                assert_eq!(upper, None);
            }
            other => panic!("expected incomplete, got {other:?}"),
        }
    }

    #[test]
    fn thread_count_does_not_change_answer() {
        let w = g(3, 22);
        let mut seen = Vec::new();
        for threads in [1, 3] {
            for strategy in [Strategy::Exhaustive, Strategy::Pruned] {
                let o = SolveOptions {
                    strategy,
                    threads: Some(threads),
                    exhaust_below_bound: true,
                    ..SolveOptions::default()
                };
                let r = solve_min_total_dominating(&w, &o).unwrap();
                seen.push((r.optimum, r.witness, r.certificate));
            }
        }
        assert!(seen.windows(2).all(|p| p[0] == p[1]), "{seen:?}");
    }

    #[test]
    fn strategy_parse() {
        assert_eq!("Pruned".parse::<Strategy>().unwrap(), Strategy::Pruned);
        assert_eq!("pure-exhaustive".parse::<Strategy>().unwrap(), Strategy::Exhaustive);
        assert!("greedy".parse::<Strategy>().is_err());
    }
}
