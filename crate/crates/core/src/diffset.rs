//! Differences of distinct powers: the set `M(delta) = {2^a - 2^b : 0 <= b < a < delta}`
//! and the uniqueness property of power differences it relies on.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DifferenceSet {
    delta: u32,
    members: BTreeSet<u64>,
}

impl DifferenceSet {
    pub fn delta(&self) -> u32 {
        self.delta
    }

    pub fn members(&self) -> &BTreeSet<u64> {
        &self.members
    }

    pub fn contains(&self, x: usize) -> bool {
        self.members.contains(&(x as u64))
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn min(&self) -> Option<u64> {
        self.members.first().copied()
    }

    pub fn max(&self) -> Option<u64> {
        self.members.last().copied()
    }
}

/// `M(delta)`. Empty for `delta <= 1`.
///
/// Panics if `delta > 64`; no valid graph on a 64-bit machine gets there.
pub fn m_set(delta: u32) -> DifferenceSet {
    assert!(delta <= 64, "delta = {delta} exceeds the 64-bit range");
    let members = (0..delta)
        .flat_map(|a| (0..a).map(move |b| (1u64 << a) - (1u64 << b)))
        .collect();
    DifferenceSet { delta, members }
}

/// Outcome of the exhaustive power-difference check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PowerDiffReport {
    pub base: u64,
    pub max_exp: u32,
    pub quadruples_checked: u64,
    /// `(a, b, c, d)` with `x^a - x^b = x^c - x^d != 0` but `(a, b) != (c, d)`.
    pub counterexample: Option<[u32; 4]>,
}

impl PowerDiffReport {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Checks every exponent quadruple in `[0, max_exp]^4`: whenever
/// `x^a - x^b = x^c - x^d != 0` it must follow that `a = c` and `b = d`.
pub fn check_power_diff_identity(base: u64, max_exp: u32) -> Result<PowerDiffReport> {
    if base < 2 || max_exp < 1 {
        return Err(Error::Contract(format!(
            "power-difference check needs base >= 2 and max_exp >= 1, got ({base}, {max_exp})"
        )));
    }
    let powers: Vec<i128> = (0..=max_exp)
        .map(|e| (base as i128).checked_pow(e))
        .collect::<Option<_>>()
        .ok_or_else(|| Error::TooLarge(format!("{base}^{max_exp} overflows 128 bits")))?;

    let m = powers.len();
    let mut checked = 0u64;
    for a in 0..m {
        for b in 0..m {
            let lhs = powers[a] - powers[b];
            for c in 0..m {
                for d in 0..m {
                    checked += 1;
                    if lhs != 0 && lhs == powers[c] - powers[d] && (a, b) != (c, d) {
                        return Ok(PowerDiffReport {
                            base,
                            max_exp,
                            quadruples_checked: checked,
                            counterexample: Some([a as u32, b as u32, c as u32, d as u32]),
                        });
                    }
                }
            }
        }
    }
    Ok(PowerDiffReport {
        base,
        max_exp,
        quadruples_checked: checked,
        counterexample: None,
    })
}
