//! Knödel graphs `W(delta, n)`: construction, structural lemma checks, and
//! exact (total) domination with the closed form for `W(3, n)`.
//!
//! ```
//! use knodeldom::{construct_optimal_tds, gamma_t_formula, is_total_dominating, KnodelGraph};
//!
//! let g = KnodelGraph::new(3, 22).unwrap();
//! let d = construct_optimal_tds(22).unwrap();
//! assert!(is_total_dominating(&g, &d).unwrap().holds);
//! assert_eq!(d.len(), gamma_t_formula(22).unwrap());
//! ```

pub mod commands;
pub mod diffset;
pub mod domination;
pub mod error;
pub mod graph;
pub mod io;
pub mod lemmas;
pub mod report;
pub mod solver;
pub mod structure;

pub use diffset::{check_power_diff_identity, m_set, DifferenceSet, PowerDiffReport};
pub use domination::{
    construct_optimal_tds, counting_lower_bound, gamma_t_formula, is_dominating,
    is_total_dominating, side_lower_bound, DominationKind, DominationReport,
};
pub use error::{Error, Result};
pub use graph::{CyclicSequence, KnodelGraph, Side, Vertex};
pub use report::RunReport;
pub use solver::{
    solve, solve_min_dominating, solve_min_total_dominating, Certificate, SolveOptions,
    SolveResult, Strategy,
};
pub use structure::{
    check_k23_free, common_neighbors, counting_report, predict_intersection,
    unique_intersection_regime, CountingReport, IntersectionPrediction, K23Report,
};
