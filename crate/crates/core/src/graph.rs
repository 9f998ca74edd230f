//! The Knödel graph `W(delta, n)` and the vertex-level primitives built on it.
//!
//! Vertices are labelled `u_1..u_h` and `v_1..v_h` with `h = n / 2`. The vertex
//! `u_i` is adjacent to `v_j` exactly when `j = i + 2^k - 1 (mod h)` for some
//! `k` in `0..delta`. Adjacency is evaluated from that rule on demand; nothing
//! is stored beyond the `delta` offsets `2^k - 1`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the two partite sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Side {
    U,
    V,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::U => Side::V,
            Side::V => Side::U,
        }
    }

    fn letter(self) -> char {
        match self {
            Side::U => 'u',
            Side::V => 'v',
        }
    }
}

/// A vertex `u_i` or `v_i`. Ordering is canonical: every `U` vertex precedes
/// every `V` vertex, then by index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct Vertex {
    pub side: Side,
    /// 1-based index.
    pub index: usize,
}

impl Vertex {
    pub const fn u(index: usize) -> Vertex {
        Vertex { side: Side::U, index }
    }

    pub const fn v(index: usize) -> Vertex {
        Vertex { side: Side::V, index }
    }

    pub const fn new(side: Side, index: usize) -> Vertex {
        Vertex { side, index }
    }
}

impl fmt::Display for Vertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.side.letter(), self.index)
    }
}

impl FromStr for Vertex {
    type Err = Error;

    /// Accepts `u3`, `V12`, ` u 7 `.
    fn from_str(s: &str) -> Result<Vertex> {
        let s = s.trim();
        let mut chars = s.chars();
        let side = match chars.next() {
            Some('u' | 'U') => Side::U,
            Some('v' | 'V') => Side::V,
            _ => return Err(Error::Parse(format!("vertex {s:?} must start with 'u' or 'v'"))),
        };
        let digits = chars.as_str().trim();
        let index: usize = digits
            .parse()
            .map_err(|_| Error::Parse(format!("vertex {s:?} has no valid index")))?;
        if index == 0 {
            return Err(Error::Parse(format!("vertex {s:?}: indices start at 1")));
        }
        Ok(Vertex { side, index })
    }
}

impl TryFrom<String> for Vertex {
    type Error = Error;

    fn try_from(s: String) -> Result<Vertex> {
        s.parse()
    }
}

impl From<Vertex> for String {
    fn from(v: Vertex) -> String {
        v.to_string()
    }
}

/// Gaps between cyclically consecutive indices of a one-sided vertex set.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CyclicSequence {
    gaps: Vec<usize>,
}

impl CyclicSequence {
    pub fn gaps(&self) -> &[usize] {
        &self.gaps
    }

    pub fn len(&self) -> usize {
        self.gaps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gaps.is_empty()
    }

    pub fn sum(&self) -> usize {
        self.gaps.iter().sum()
    }

    /// Sum of `len` consecutive gaps starting at position `start`, wrapping.
    pub fn run_sum(&self, start: usize, len: usize) -> usize {
        let k = self.gaps.len();
        (0..len).map(|t| self.gaps[(start + t) % k]).sum()
    }
}

/// Immutable descriptor of `W(delta, n)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KnodelGraph {
    delta: u32,
    n: usize,
    half: usize,
    offsets: Vec<usize>,
}

impl KnodelGraph {
    pub fn new(delta: u32, n: usize) -> Result<KnodelGraph> {
        if n < 2 || !n.is_multiple_of(2) {
            return Err(Error::InvalidParameters(format!(
                "n = {n} must be even and at least 2"
            )));
        }
        let max_delta = n.ilog2();
        if delta < 1 || delta > max_delta {
            return Err(Error::InvalidParameters(format!(
                "delta = {delta} must lie in [1, floor(log2({n})) = {max_delta}]"
            )));
        }
        let half = n / 2;
        let offsets = (0..delta).map(|k| (1usize << k) - 1).collect();
        Ok(KnodelGraph {
            delta,
            n,
            half,
            offsets,
        })
    }

    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn half(&self) -> usize {
        self.half
    }

    /// The adjacency offsets `2^k - 1`, all strictly below `half`.
    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    pub fn edge_count(&self) -> usize {
        self.delta as usize * self.half
    }

    pub fn contains(&self, w: Vertex) -> bool {
        (1..=self.half).contains(&w.index)
    }

    pub fn check(&self, w: Vertex) -> Result<()> {
        if self.contains(w) {
            Ok(())
        } else {
            Err(Error::OutOfRange {
                vertex: w,
                half: self.half,
            })
        }
    }

    pub fn vertex(&self, side: Side, index: usize) -> Result<Vertex> {
        let w = Vertex::new(side, index);
        self.check(w)?;
        Ok(w)
    }

    /// Reduces an arbitrary integer label to `((x - 1) mod half) + 1`.
    pub fn wrap(&self, side: Side, x: i64) -> Vertex {
        let h = self.half as i64;
        Vertex::new(side, ((x - 1).rem_euclid(h) + 1) as usize)
    }

    /// All vertices in canonical order.
    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.side_vertices(Side::U).chain(self.side_vertices(Side::V))
    }

    pub fn side_vertices(&self, side: Side) -> impl Iterator<Item = Vertex> {
        (1..=self.half).map(move |i| Vertex::new(side, i))
    }

    /// Position of `w` in canonical order, 0-based: `u_i -> i - 1`, `v_j -> half + j - 1`.
    pub fn dense_index(&self, w: Vertex) -> usize {
        match w.side {
            Side::U => w.index - 1,
            Side::V => self.half + w.index - 1,
        }
    }

    pub fn from_dense(&self, d: usize) -> Vertex {
        if d < self.half {
            Vertex::u(d + 1)
        } else {
            Vertex::v(d - self.half + 1)
        }
    }

    /// 0-based opposite-side slots adjacent to the 0-based slot `slot` on `side`.
    /// Order follows `k = 0..delta`.
    #[inline]
    pub(crate) fn neighbor_slots(&self, side: Side, slot: usize) -> impl Iterator<Item = usize> + '_ {
        let h = self.half;
        self.offsets.iter().map(move |&o| match side {
            Side::U => {
                let x = slot + o;
                if x >= h {
                    x - h
                } else {
                    x
                }
            }
            Side::V => {
                if slot >= o {
                    slot - o
                } else {
                    slot + h - o
                }
            }
        })
    }

    /// `N(w)`, listed in order `k = 0..delta`.
    pub fn neighbors(&self, w: Vertex) -> Result<Vec<Vertex>> {
        self.check(w)?;
        let other = w.side.opposite();
        Ok(self
            .neighbor_slots(w.side, w.index - 1)
            .map(|s| Vertex::new(other, s + 1))
            .collect())
    }

    pub fn is_adjacent(&self, a: Vertex, b: Vertex) -> bool {
        if a.side == b.side || !self.contains(a) || !self.contains(b) {
            return false;
        }
        self.neighbor_slots(a.side, a.index - 1)
            .any(|s| s + 1 == b.index)
    }

    /// Cyclic distance between two same-side indices, `min(|i-j|, half-|i-j|)`.
    pub fn index_distance(&self, a: Vertex, b: Vertex) -> Result<usize> {
        self.check(a)?;
        self.check(b)?;
        if a.side != b.side {
            return Err(Error::Contract(format!(
                "index-distance is defined within one side, got {a} and {b}"
            )));
        }
        let d = a.index.abs_diff(b.index);
        Ok(d.min(self.half - d))
    }

    /// The cyclic-sequence of a nonempty one-sided set. Duplicates are ignored.
    pub fn cyclic_sequence(&self, set: &[Vertex]) -> Result<CyclicSequence> {
        let idx = self.one_sided_indices(set)?;
        let k = idx.len();
        let mut gaps: Vec<usize> = idx.windows(2).map(|w| w[1] - w[0]).collect();
        gaps.push(self.half + idx[0] - idx[k - 1]);
        Ok(CyclicSequence { gaps })
    }

    /// Sorted, deduplicated indices of a nonempty set lying on one side.
    pub(crate) fn one_sided_indices(&self, set: &[Vertex]) -> Result<Vec<usize>> {
        let first = set
            .first()
            .ok_or_else(|| Error::Contract("vertex set must be nonempty".into()))?;
        let mut idx = Vec::with_capacity(set.len());
        for &w in set {
            self.check(w)?;
            if w.side != first.side {
                return Err(Error::Contract(format!(
                    "vertex set must lie on one side, found {first} and {w}"
                )));
            }
            idx.push(w.index);
        }
        idx.sort_unstable();
        idx.dedup();
        Ok(idx)
    }

    /// Every edge as `(i, j)` meaning `u_i -- v_j`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut edges: Vec<(usize, usize)> = (0..self.half)
            .flat_map(|i| self.neighbor_slots(Side::U, i).map(move |j| (i + 1, j + 1)))
            .collect();
        edges.sort_unstable();
        edges
    }
}

impl fmt::Display for KnodelGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "W({},{})", self.delta, self.n)
    }
}
