//! Domination predicates, the closed-form total domination number of `W(3,n)`,
//! the matching constructions and the per-side counting bound.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{KnodelGraph, Vertex};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DominationKind {
    Dominating,
    TotalDominating,
}

impl std::fmt::Display for DominationKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            DominationKind::Dominating => "dominating",
            DominationKind::TotalDominating => "total-dominating",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DominationReport {
    pub kind: DominationKind,
    pub holds: bool,
    /// Every vertex left without a dominator, in canonical order.
    pub uncovered: Vec<Vertex>,
}

/// Fixed-length bitset over side slots `0..len`; bits past `len` stay clear.
struct SlotBits {
    words: Vec<u64>,
    len: usize,
}

impl SlotBits {
    fn new(len: usize) -> Self {
        SlotBits {
            words: vec![0; len.div_ceil(64)],
            len,
        }
    }

    fn set(&mut self, i: usize) {
        self.words[i >> 6] |= 1 << (i & 63);
    }

    fn trim(&mut self) {
        if !self.len.is_multiple_of(64) {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << (self.len % 64)) - 1;
            }
        }
    }

    /// `self |= src` cyclically shifted up by `by`: bit `j` gains bit `(j - by) mod len`.
    fn or_rotated(&mut self, src: &SlotBits, by: usize) {
        let by = by % self.len;
        if by == 0 {
            self.words.iter_mut().zip(&src.words).for_each(|(d, s)| *d |= s);
            return;
        }
        // the low `by` bits wrap around from the top of `src`
        shl_or(&mut self.words, &src.words, by);
        shr_or(&mut self.words, &src.words, self.len - by);
        self.trim();
    }

    fn missing(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(move |(wi, &w)| {
            let lo = wi * 64;
            let valid = (self.len - lo).min(64);
            let mask = if valid == 64 { u64::MAX } else { (1u64 << valid) - 1 };
            let mut m = !w & mask;
            std::iter::from_fn(move || {
                (m != 0).then(|| {
                    let b = m.trailing_zeros() as usize;
                    m &= m - 1;
                    lo + b
                })
            })
        })
    }
}

fn shl_or(dst: &mut [u64], src: &[u64], by: usize) {
    let (ws, bs) = (by / 64, by % 64);
    for i in ws..dst.len() {
        let j = i - ws;
        let mut v = src[j] << bs;
        if bs > 0 && j > 0 {
            v |= src[j - 1] >> (64 - bs);
        }
        dst[i] |= v;
    }
}

fn shr_or(dst: &mut [u64], src: &[u64], by: usize) {
    let (ws, bs) = (by / 64, by % 64);
    for i in 0..dst.len().saturating_sub(ws) {
        let j = i + ws;
        let mut v = src[j] >> bs;
        if bs > 0 && j + 1 < src.len() {
            v |= src[j + 1] << (64 - bs);
        }
        dst[i] |= v;
    }
}

/// Word-parallel coverage: `u_i ~ v_{i + o}` for every offset `o`, so the
/// neighbourhood of `D ∩ U` is the union of `D ∩ U` rotated by each offset
/// (and `D ∩ V` rotated back for the other side).
fn coverage(g: &KnodelGraph, set: &[Vertex], kind: DominationKind) -> Result<DominationReport> {
    let half = g.half();
    let mut members = [SlotBits::new(half), SlotBits::new(half)];
    for &w in set {
        let slot = w.index.wrapping_sub(1);
        if slot >= half {
            return Err(Error::OutOfRange { vertex: w, half });
        }
        members[w.side as usize].set(slot);
    }
    let [in_u, in_v] = &members;
    let mut cover_u = SlotBits::new(half);
    let mut cover_v = SlotBits::new(half);
    for &o in g.offsets() {
        cover_v.or_rotated(in_u, o);
        cover_u.or_rotated(in_v, half - o);
    }
    if kind == DominationKind::Dominating {
        cover_u.or_rotated(in_u, 0);
        cover_v.or_rotated(in_v, 0);
    }
    let uncovered: Vec<Vertex> = cover_u
        .missing()
        .map(|s| Vertex::u(s + 1))
        .chain(cover_v.missing().map(|s| Vertex::v(s + 1)))
        .collect();
    Ok(DominationReport {
        kind,
        holds: uncovered.is_empty(),
        uncovered,
    })
}

/// Every vertex of `g`, members of `set` included, needs a neighbour in `set`.
pub fn is_total_dominating(g: &KnodelGraph, set: &[Vertex]) -> Result<DominationReport> {
    coverage(g, set, DominationKind::TotalDominating)
}

/// Every vertex outside `set` needs a neighbour in `set`.
pub fn is_dominating(g: &KnodelGraph, set: &[Vertex]) -> Result<DominationReport> {
    coverage(g, set, DominationKind::Dominating)
}

pub fn check(g: &KnodelGraph, set: &[Vertex], kind: DominationKind) -> Result<DominationReport> {
    coverage(g, set, kind)
}

fn cubic_domain(n: usize) -> Result<()> {
    if n < 8 || !n.is_multiple_of(2) {
        return Err(Error::OutOfDomain {
            n,
            reason: "W(3,n) exists only for even n >= 8".into(),
        });
    }
    Ok(())
}

/// `gamma_t(W(3,n)) = 4 * ceil(n / 10)`, minus 2 when `n = 2, 4 (mod 10)`.
pub fn gamma_t_formula(n: usize) -> Result<usize> {
    cubic_domain(n)?;
    let base = 4 * n.div_ceil(10);
    Ok(match n % 10 {
        2 | 4 => base - 2,
        _ => base,
    })
}

/// Smallest possible `|D ∩ U|` (equally `|D ∩ V|`) for a total dominating set
/// `D` of `W(3,n)`: `ceil(n / 5)`.
///
/// `D ∩ U` must dominate all `n/2` vertices of `V`. With `s = |D ∩ U|` and `m`
/// gaps of its cyclic-sequence in `M(3) = {1,2,3}`, the remaining `s - m` gaps
/// are at least 4, so `n/2 >= 4(s - m) + m`; the counting bound gives
/// `m <= 3s - n/2`. Together `5s >= n`.
pub fn side_lower_bound(n: usize) -> Result<usize> {
    cubic_domain(n)?;
    Ok(n.div_ceil(5))
}

/// `2 * ceil(n / 5)`, the bound applied to both sides.
pub fn counting_lower_bound(n: usize) -> Result<usize> {
    Ok(2 * side_lower_bound(n)?)
}

/// Optimal total dominating set of `W(3,n)`, sorted canonically.
///
/// Built from `t = n / 10` blocks `{u_{5k+1}, u_{5k+2}, v_{5k+1}, v_{5k+2}}`
/// plus a tail chosen by `n mod 10`:
///
/// | `n mod 10` | tail                                        |
/// |------------|---------------------------------------------|
/// | 0          | none                                        |
/// | 2          | `u_{5t+1}, v_{5t+1}`                        |
/// | 4          | `u_{5t+1}, v_{5t-1}`                        |
/// | 6          | `u_{5t+1}, u_{5t+2}, v_{5t-1}, v_{5t+3}`    |
/// | 8, t = 0   | `u_1, u_3, v_2, v_4`                        |
/// | 8, t >= 1  | `u_{5t+1}, u_{5t+3}, v_{5t+1}, v_{5t+2}`    |
///
/// Each block's two `U` vertices dominate five consecutive `V` vertices and its
/// two `V` vertices dominate `u_{5k-2}..u_{5k+2}`; the tail closes the gap
/// left where the blocks stop.
pub fn construct_optimal_tds(n: usize) -> Result<Vec<Vertex>> {
    cubic_domain(n)?;
    let t = n / 10;
    let c = 5 * t;
    // tails per side, ascending and past every block index
    let (tail_u, tail_v): (&[usize], &[usize]) = match (n % 10, t) {
        (0, _) => (&[], &[]),
        (2, _) => (&[c + 1], &[c + 1]),
        (4, _) => (&[c + 1], &[c - 1]),
        (6, _) => (&[c + 1, c + 2], &[c - 1, c + 3]),
        (8, 0) => (&[1, 3], &[2, 4]),
        (8, _) => (&[c + 1, c + 3], &[c + 1, c + 2]),
        _ => unreachable!("n is even"),
    };
    let mut set = Vec::with_capacity(4 * t + tail_u.len() + tail_v.len());
    for (make, tail) in [(Vertex::u as fn(usize) -> Vertex, tail_u), (Vertex::v, tail_v)] {
        for k in 0..t {
            set.push(make(5 * k + 1));
            set.push(make(5 * k + 2));
        }
        set.extend(tail.iter().map(|&i| make(i)));
    }
    Ok(set)
}
