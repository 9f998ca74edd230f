//! Common-neighbourhood structure of same-side vertex pairs and triples, and the
//! counting identity relating `|N(A)|` to the cyclic-sequence of `A`.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::diffset::m_set;
use crate::error::{Error, Result};
use crate::graph::{KnodelGraph, Side, Vertex};

/// Exhaustive triple checks refuse sides larger than this unless overridden.
pub const TRIPLE_GUARD_HALF: usize = 128;
/// Exhaustive pair checks refuse sides larger than this unless overridden.
pub const PAIR_GUARD_HALF: usize = 512;

/// What the difference set predicts about `|N(a) ∩ N(b)|`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntersectionPrediction {
    pub id_in_m: bool,
    pub co_id_in_m: bool,
    pub predicted_count: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CountingReport {
    pub set_size: usize,
    /// `sum over v in N(A) of |N(v) ∩ A|`.
    pub degree_sum: usize,
    /// `|N(A)|`.
    pub neighborhood_size: usize,
    /// Number of cyclic-sequence gaps that lie in `M(delta)`.
    pub m_gap_count: usize,
    /// `delta * |A| - |N(A)|`.
    pub slack: usize,
    pub delta: u32,
}

impl CountingReport {
    pub fn degree_sum_holds(&self) -> bool {
        self.degree_sum == self.delta as usize * self.set_size
    }

    pub fn gap_bound_holds(&self) -> bool {
        self.m_gap_count <= self.slack
    }
}

/// Result of the K(2,3)-freeness scan.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct K23Report {
    pub triples_checked: u64,
    /// A same-side triple and its (two or more) common neighbours.
    pub counterexample: Option<(Vec<Vertex>, Vec<Vertex>)>,
}

impl K23Report {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

fn distinct_same_side(g: &KnodelGraph, a: Vertex, b: Vertex) -> Result<()> {
    g.check(a)?;
    g.check(b)?;
    if a.side != b.side {
        return Err(Error::Contract(format!("{a} and {b} lie on different sides")));
    }
    if a == b {
        return Err(Error::Contract(format!("pair must be distinct, got {a} twice")));
    }
    Ok(())
}

/// `N(a) ∩ N(b)` for distinct same-side vertices, sorted.
pub fn common_neighbors(g: &KnodelGraph, a: Vertex, b: Vertex) -> Result<Vec<Vertex>> {
    distinct_same_side(g, a, b)?;
    let nb: Vec<usize> = g.neighbor_slots(b.side, b.index - 1).collect();
    let other = a.side.opposite();
    let mut common: Vec<Vertex> = g
        .neighbor_slots(a.side, a.index - 1)
        .filter(|s| nb.contains(s))
        .map(|s| Vertex::new(other, s + 1))
        .collect();
    common.sort_unstable();
    Ok(common)
}

pub fn predict_intersection(g: &KnodelGraph, a: Vertex, b: Vertex) -> Result<IntersectionPrediction> {
    distinct_same_side(g, a, b)?;
    let m = m_set(g.delta());
    let id = g.index_distance(a, b)?;
    let id_in_m = m.contains(id);
    let co_id_in_m = m.contains(g.half() - id);
    Ok(IntersectionPrediction {
        id_in_m,
        co_id_in_m,
        predicted_count: id_in_m as usize + co_id_in_m as usize,
    })
}

/// True iff `delta < log2(half + 2)`, evaluated exactly as `2^delta < half + 2`.
pub fn unique_intersection_regime(g: &KnodelGraph) -> bool {
    // delta <= floor(log2 n) < 64 for any graph that fits in memory
    (1u128 << g.delta()) < g.half() as u128 + 2
}

/// Scans every same-side triple (both sides) for two or more common neighbours.
pub fn check_k23_free(g: &KnodelGraph, override_guard: bool) -> Result<K23Report> {
    let h = g.half();
    if h > TRIPLE_GUARD_HALF && !override_guard {
        return Err(Error::TooLarge(format!(
            "triple enumeration on {g} needs half <= {TRIPLE_GUARD_HALF}, got {h}"
        )));
    }
    let mut checked = 0u64;
    for side in [Side::U, Side::V] {
        let lists: Vec<Vec<usize>> = (0..h)
            .map(|i| {
                let mut l: Vec<usize> = g.neighbor_slots(side, i).collect();
                l.sort_unstable();
                l
            })
            .collect();
        for i in 0..h {
            for j in i + 1..h {
                let ij: Vec<usize> = lists[i]
                    .iter()
                    .copied()
                    .filter(|s| lists[j].binary_search(s).is_ok())
                    .collect();
                if ij.len() < 2 {
                    // no third vertex can push the triple intersection above |ij|
                    checked += (h - j - 1) as u64;
                    continue;
                }
                for k in j + 1..h {
                    checked += 1;
                    let ijk: Vec<usize> = ij
                        .iter()
                        .copied()
                        .filter(|s| lists[k].binary_search(s).is_ok())
                        .collect();
                    if ijk.len() >= 2 {
                        let other = side.opposite();
                        return Ok(K23Report {
                            triples_checked: checked,
                            counterexample: Some((
                                vec![
                                    Vertex::new(side, i + 1),
                                    Vertex::new(side, j + 1),
                                    Vertex::new(side, k + 1),
                                ],
                                ijk.into_iter().map(|s| Vertex::new(other, s + 1)).collect(),
                            )),
                        });
                    }
                }
            }
        }
    }
    Ok(K23Report {
        triples_checked: checked,
        counterexample: None,
    })
}

/// Computes every field of [`CountingReport`] by direct enumeration.
pub fn counting_report(g: &KnodelGraph, set: &[Vertex]) -> Result<CountingReport> {
    let idx = g.one_sided_indices(set)?;
    let side = set[0].side;
    let members: BTreeSet<usize> = idx.iter().map(|i| i - 1).collect();

    let nbhd: BTreeSet<usize> = members
        .iter()
        .flat_map(|&s| g.neighbor_slots(side, s))
        .collect();
    let degree_sum = nbhd
        .iter()
        .map(|&w| {
            g.neighbor_slots(side.opposite(), w)
                .filter(|s| members.contains(s))
                .count()
        })
        .sum();

    let m = m_set(g.delta());
    let sequence = g.cyclic_sequence(set)?;
    let m_gap_count = sequence.gaps().iter().filter(|&&x| m.contains(x)).count();
    let k = idx.len();
    Ok(CountingReport {
        set_size: k,
        degree_sum,
        neighborhood_size: nbhd.len(),
        m_gap_count,
        slack: g.delta() as usize * k - nbhd.len(),
        delta: g.delta(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn graph(delta: u32, n: usize) -> KnodelGraph {
        KnodelGraph::new(delta, n).unwrap()
    }

    #[test]
    fn common_neighbors_examples() {
        let g = graph(3, 8);
        assert_eq!(
            common_neighbors(&g, Vertex::u(1), Vertex::u(2)).unwrap(),
            vec![Vertex::v(1), Vertex::v(2)]
        );

        let g = graph(3, 20);
        assert!(common_neighbors(&g, Vertex::u(1), Vertex::u(6)).unwrap().is_empty());

        let g = graph(3, 12);
        assert_eq!(common_neighbors(&g, Vertex::u(1), Vertex::u(2)).unwrap().len(), 1);
    }

    #[test]
    fn common_neighbors_of_v_side() {
        // N(v_1) = {u_1, u_4, u_2}, N(v_2) = {u_2, u_1, u_3} in W(3,8)
        let g = graph(3, 8);
        assert_eq!(
            common_neighbors(&g, Vertex::v(1), Vertex::v(2)).unwrap(),
            vec![Vertex::u(1), Vertex::u(2)]
        );
    }

    #[test]
    fn common_neighbors_contracts() {
        let g = graph(3, 8);
        assert!(matches!(
            common_neighbors(&g, Vertex::u(1), Vertex::u(1)),
            Err(Error::Contract(_))
        ));
        assert!(matches!(
            common_neighbors(&g, Vertex::u(1), Vertex::v(2)),
            Err(Error::Contract(_))
        ));
        assert!(matches!(
            predict_intersection(&g, Vertex::u(1), Vertex::v(2)),
            Err(Error::Contract(_))
        ));
        assert!(matches!(
            common_neighbors(&g, Vertex::u(1), Vertex::u(9)),
            Err(Error::OutOfRange { .. })
        ));
    }

    #[test]
    fn prediction_examples() {
        let p = predict_intersection(&graph(3, 8), Vertex::u(1), Vertex::u(2)).unwrap();
        assert_eq!((p.id_in_m, p.co_id_in_m, p.predicted_count), (true, true, 2));

        let p = predict_intersection(&graph(3, 20), Vertex::u(1), Vertex::u(6)).unwrap();
        assert_eq!((p.id_in_m, p.co_id_in_m, p.predicted_count), (false, false, 0));

        let g = graph(3, 12);
        let p = predict_intersection(&g, Vertex::u(1), Vertex::u(4)).unwrap();
        assert_eq!((p.id_in_m, p.co_id_in_m, p.predicted_count), (true, true, 2));
        assert_eq!(common_neighbors(&g, Vertex::u(1), Vertex::u(4)).unwrap().len(), 2);
    }

    #[test]
    fn k23_examples() {
        assert!(check_k23_free(&graph(3, 8), false).unwrap().passed());
        assert!(check_k23_free(&graph(3, 30), false).unwrap().passed());
        assert!(check_k23_free(&graph(4, 32), false).unwrap().passed());
        assert!(matches!(check_k23_free(&graph(3, 258), false), Err(Error::TooLarge(_))));
        assert!(check_k23_free(&graph(3, 258), true).unwrap().passed());
    }

    #[test]
    fn regime_examples() {
        // 2^3 = 8 is not below 6 + 2
        let g = graph(3, 12);
        assert!(!unique_intersection_regime(&g));
        assert_eq!(common_neighbors(&g, Vertex::u(1), Vertex::u(4)).unwrap().len(), 2);

        let g = graph(3, 20);
        assert!(unique_intersection_regime(&g));
        for i in 1..=10 {
            for j in i + 1..=10 {
                assert!(common_neighbors(&g, Vertex::u(i), Vertex::u(j)).unwrap().len() <= 1);
            }
        }
        assert!(unique_intersection_regime(&graph(1, 4)));
    }

    #[test]
    fn counting_examples() {
        let g = graph(3, 10);
        let r = counting_report(&g, &[Vertex::u(1), Vertex::u(2)]).unwrap();
        assert_eq!(r.degree_sum, 6);

        let r = counting_report(&g, &[Vertex::u(1)]).unwrap();
        assert_eq!((r.degree_sum, r.neighborhood_size, r.m_gap_count, r.slack), (3, 3, 0, 0));

        // gaps (1,1,1,7); u1->1,2,4 u2->2,3,5 u3->3,4,6 u4->4,5,7 so N(A) = {v1..v7}
        let g = graph(3, 20);
        let a: Vec<Vertex> = (1..=4).map(Vertex::u).collect();
        let r = counting_report(&g, &a).unwrap();
        assert_eq!(r.m_gap_count, 3);
        assert_eq!(r.neighborhood_size, 7);
        assert_eq!(r.slack, 5);
        assert!(r.gap_bound_holds());
        assert!(r.degree_sum_holds());
    }

    #[test]
    fn counting_contracts() {
        let g = graph(3, 10);
        assert!(matches!(counting_report(&g, &[]), Err(Error::Contract(_))));
        assert!(matches!(
            counting_report(&g, &[Vertex::u(1), Vertex::v(1)]),
            Err(Error::Contract(_))
        ));
    }
}
