//! Essential regions of the hyperbolas `xy = k`, `k₀ < k < k₀ + 1`.
//!
//! The strip `2 ≤ x`, `y ≥ x` is tiled by unit squares `[n, n+1] × [n′, n′+1]`
//! and, on the diagonal, by the triangles below `y = n + 1` and above `y = x`.
//! A cell is essential when the hyperbola meets it in more than one point; the
//! set of essential cells and their crossing pattern only depend on `k₀ = ⌊k⌋`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum RegionType {
    /// Enters through the left edge, leaves through the bottom.
    T2,
    /// Enters through the top, leaves through the bottom.
    T3,
    /// Enters through the top, leaves through the right edge.
    T5,
    /// Diagonal cell, curve leaves through the diagonal below the top edge.
    T7,
    /// Diagonal cell, curve enters through the top edge.
    T8,
}

impl RegionType {
    pub fn is_diagonal(self) -> bool {
        matches!(self, RegionType::T7 | RegionType::T8)
    }

    /// The coefficient `c` in `d²A/dk² = c/k`.
    pub fn d2_coefficient(self) -> (i64, i64) {
        match self {
            RegionType::T2 => (1, 1),
            RegionType::T3 => (0, 1),
            RegionType::T5 => (-1, 1),
            RegionType::T7 => (1, 2),
            RegionType::T8 => (-1, 2),
        }
    }
}

impl fmt::Display for RegionType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl FromStr for RegionType {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "T2" => Ok(RegionType::T2),
            "T3" => Ok(RegionType::T3),
            "T5" => Ok(RegionType::T5),
            "T7" => Ok(RegionType::T7),
            "T8" => Ok(RegionType::T8),
            _ => Err(Error::Parse(format!("unknown region type {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct RegionIndex {
    pub n: u64,
    pub n_prime: u64,
}

impl RegionIndex {
    pub fn new(n: u64, n_prime: u64) -> Result<Self> {
        if n < 2 || n_prime < n {
            return Err(Error::Argument(format!(
                "cell ({n}, {n_prime}) outside 2 <= n <= n'"
            )));
        }
        Ok(RegionIndex { n, n_prime })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Region {
    #[serde(flatten)]
    pub index: RegionIndex,
    #[serde(rename = "type")]
    pub kind: RegionType,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EssentialRegionSet {
    pub k0: u64,
    pub entries: Vec<Region>,
}

impl EssentialRegionSet {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Region> {
        self.entries.iter()
    }

    pub fn get(&self, n: u64, n_prime: u64) -> Option<RegionType> {
        self.entries
            .binary_search_by_key(&(n, n_prime), |r| (r.index.n, r.index.n_prime))
            .ok()
            .map(|i| self.entries[i].kind)
    }

    pub fn indices(&self) -> Vec<(u64, u64)> {
        self.entries
            .iter()
            .map(|r| (r.index.n, r.index.n_prime))
            .collect()
    }

    pub fn of_type(&self, kind: RegionType) -> Vec<(u64, u64)> {
        self.entries
            .iter()
            .filter(|r| r.kind == kind)
            .map(|r| (r.index.n, r.index.n_prime))
            .collect()
    }
}

/// `⌊√v⌋`.
pub fn isqrt(v: u64) -> u64 {
    v.isqrt()
}

fn push(entries: &mut Vec<Region>, n: u64, n_prime: u64, kind: RegionType) {
    entries.push(Region {
        index: RegionIndex { n, n_prime },
        kind,
    });
}

/// `E_s(k₀)` with its types.
pub fn enumerate_regions(k0: u64) -> Result<EssentialRegionSet> {
    if k0 < 4 {
        return Err(Error::Argument(format!("k0 = {k0} must be at least 4")));
    }
    let s = isqrt(k0);
    let mut entries = Vec::new();
    for n in 2..s {
        let (lo, hi) = (k0 / (n + 1), k0 / n);
        // lo == hi would need k0 < n(n+1) <= k0
        if lo >= hi {
            return Err(Error::Internal(format!(
                "k0 = {k0}, n = {n}: single-cell left-to-right crossing"
            )));
        }
        push(&mut entries, n, lo, RegionType::T5);
        for m in lo + 1..hi {
            push(&mut entries, n, m, RegionType::T3);
        }
        push(&mut entries, n, hi, RegionType::T2);
    }
    let h = k0 / s;
    if h == s {
        push(&mut entries, s, s, RegionType::T7);
    } else {
        push(&mut entries, s, s, RegionType::T8);
        for m in s + 1..h {
            push(&mut entries, s, m, RegionType::T3);
        }
        push(&mut entries, s, h, RegionType::T2);
    }
    Ok(EssentialRegionSet { k0, entries })
}

/// `|E_s(k₀)|` from the counting formula.
pub fn region_count(k0: u64) -> u64 {
    let s = isqrt(k0);
    (2..s).map(|n| k0 / n - k0 / (n + 1) + 1).sum::<u64>() + (k0 / s - s + 1)
}

pub fn regions_equal(k0a: u64, k0b: u64) -> Result<bool> {
    Ok(enumerate_regions(k0a)?.entries == enumerate_regions(k0b)?.entries)
}

/// Intersects `xy = k` with cell `(n, n′)` directly and names the crossing.
///
/// `k` must not be an integer, so the curve misses every lattice point.
/// Returns `None` when the curve meets the cell in at most one point.
pub fn geometric_region_oracle(k: f64, n: u64, n_prime: u64) -> Result<Option<RegionType>> {
    if n < 2 || n_prime < n {
        return Err(Error::Argument(format!(
            "cell ({n}, {n_prime}) outside 2 <= n <= n'"
        )));
    }
    if k.fract() == 0.0 {
        return Err(Error::Argument(format!("k = {k} must not be an integer")));
    }
    let (x0, x1) = (n as f64, n as f64 + 1.0);
    let (y0, y1) = (n_prime as f64, n_prime as f64 + 1.0);
    if n == n_prime {
        // triangle x <= y <= n + 1: the curve crosses the diagonal at √k
        let r = k.sqrt();
        if !(x0 < r && r < x1) {
            return Ok(None);
        }
        return Ok(Some(if k / x0 < y1 {
            RegionType::T7
        } else {
            RegionType::T8
        }));
    }
    // the curve meets the open square iff it passes between its corners
    if !(k / x1 < y1 && k / x0 > y0) {
        return Ok(None);
    }
    let entry = if k / x0 < y1 { "left" } else { "top" };
    let exit = if k / x1 > y0 { "right" } else { "bottom" };
    match (entry, exit) {
        ("left", "bottom") => Ok(Some(RegionType::T2)),
        ("top", "bottom") => Ok(Some(RegionType::T3)),
        ("top", "right") => Ok(Some(RegionType::T5)),
        _ => Err(Error::UnknownRegionShape {
            n,
            n_prime,
            k,
            entry,
            exit,
        }),
    }
}

/// All essential cells found by the oracle for a non-integer `k`, scanning
/// every cell of the strip `2 ≤ n ≤ √k`, `n ≤ n′ ≤ k/n`.
pub fn oracle_regions(k: f64) -> Result<Vec<Region>> {
    let mut out = Vec::new();
    let mut n = 2u64;
    while (n as f64) * (n as f64) < k {
        let top = (k / n as f64).floor() as u64 + 1;
        for m in n..=top {
            if let Some(kind) = geometric_region_oracle(k, n, m)? {
                push(&mut out, n, m, kind);
            }
        }
        n += 1;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use RegionType::*;

    #[test]
    fn seventeen() {
        let e = enumerate_regions(17).unwrap();
        assert_eq!(
            e.indices(),
            vec![(2, 5), (2, 6), (2, 7), (2, 8), (3, 4), (3, 5), (4, 4)]
        );
    }

    #[test]
    fn eighteen_typed() {
        let e = enumerate_regions(18).unwrap();
        assert_eq!(e.of_type(T2), vec![(2, 9), (3, 6)]);
        assert_eq!(e.of_type(T3), vec![(2, 7), (2, 8), (3, 5)]);
        assert_eq!(e.of_type(T5), vec![(2, 6), (3, 4)]);
        assert_eq!(e.of_type(T7), vec![(4, 4)]);
        assert!(e.of_type(T8).is_empty());
    }

    #[test]
    fn four_is_one_triangle() {
        let e = enumerate_regions(4).unwrap();
        assert_eq!(e.entries.len(), 1);
        assert_eq!(e.get(2, 2), Some(T7));
        assert!(enumerate_regions(3).is_err());
    }

    #[test]
    fn equality_across_primes() {
        assert!(regions_equal(18, 19).unwrap());
        assert!(!regions_equal(17, 18).unwrap());
        assert!(regions_equal(30, 30).unwrap());
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(geometric_region_oracle(18.5, 2, 9).unwrap(), Some(T2));
        assert_eq!(geometric_region_oracle(18.5, 2, 6).unwrap(), Some(T5));
        assert_eq!(geometric_region_oracle(18.5, 2, 7).unwrap(), Some(T3));
        assert_eq!(geometric_region_oracle(18.5, 5, 5).unwrap(), None);
        assert_eq!(geometric_region_oracle(18.5, 4, 4).unwrap(), Some(T7));
        assert_eq!(geometric_region_oracle(18.5, 2, 10).unwrap(), None);
        assert_eq!(geometric_region_oracle(21.5, 4, 4).unwrap(), Some(T8));
        assert!(geometric_region_oracle(18.0, 2, 9).is_err());
    }

    #[test]
    fn counting_formula() {
        for k0 in 4..300 {
            assert_eq!(enumerate_regions(k0).unwrap().len() as u64, region_count(k0));
        }
    }

    #[test]
    fn agrees_with_oracle_small() {
        for k0 in 4..120u64 {
            let e = enumerate_regions(k0).unwrap();
            for frac in [0.01, 0.5, 0.99] {
                assert_eq!(oracle_regions(k0 as f64 + frac).unwrap(), e.entries, "k0 = {k0}");
            }
        }
    }

    #[test]
    fn serializes_flat() {
        let e = enumerate_regions(4).unwrap();
        let v = serde_json::to_value(&e).unwrap();
        assert_eq!(
            v,
            serde_json::json!({"k0": 4, "entries": [{"n": 2, "n_prime": 2, "type": "T7"}]})
        );
    }
}
