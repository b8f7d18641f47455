//! Sub-determinant parameters of an integral matrix by brute-force minor
//! enumeration.

use std::collections::BTreeMap;

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{int_det, RationalMatrix};
use crate::polyhedron::binomial;

pub const DEFAULT_MINOR_BUDGET: u128 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubdetProfile {
    /// Largest absolute minor over every computed size.
    pub delta: u64,
    /// Largest absolute entry.
    pub delta1: Option<u64>,
    /// Largest absolute `(n-1) x (n-1)` minor.
    pub delta_nm1: Option<u64>,
    pub per_size: BTreeMap<usize, u64>,
    /// Sizes skipped because the minor budget ran out.
    pub missing_sizes: Vec<usize>,
}

impl SubdetProfile {
    pub fn is_complete(&self) -> bool {
        self.missing_sizes.is_empty()
    }

    /// All computed minors lie in {-1, 0, 1}.
    pub fn is_unimodular_so_far(&self) -> bool {
        self.delta <= 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TuVerdict {
    Unimodular,
    NotUnimodular,
    /// Budget ran out before a witness or a full certificate was found.
    Indeterminate,
}

fn int_entries(a: &RationalMatrix) -> Result<Vec<Vec<i64>>> {
    let rows = a
        .to_int_rows()
        .ok_or_else(|| Error::param("sub-determinants need an integral matrix"))?;
    rows.into_iter()
        .map(|r| {
            r.into_iter()
                .map(|v| v.to_i64().ok_or_else(|| Error::param("matrix entry exceeds 64 bits")))
                .collect()
        })
        .collect()
}

fn minor_count(m: usize, n: usize, k: usize) -> u128 {
    binomial(m, k).saturating_mul(binomial(n, k))
}

/// Largest absolute `k x k` minor.
fn max_minor(a: &[Vec<i64>], k: usize) -> BigInt {
    let (m, n) = (a.len(), a[0].len());
    let row_sets: Vec<Vec<usize>> = (0..m).combinations(k).collect();
    let col_sets: Vec<Vec<usize>> = (0..n).combinations(k).collect();
    row_sets
        .par_iter()
        .map(|rows| {
            let mut best = BigInt::default();
            let mut buf = vec![vec![0i64; k]; k];
            for cols in &col_sets {
                for (bi, &r) in rows.iter().enumerate() {
                    for (bj, &c) in cols.iter().enumerate() {
                        buf[bi][bj] = a[r][c];
                    }
                }
                let d = int_det(&buf).abs();
                if d > best {
                    best = d;
                }
            }
            best
        })
        .max()
        .unwrap_or_default()
}

fn to_u64(v: BigInt) -> Result<u64> {
    v.to_u64().ok_or_else(|| Error::param("sub-determinant exceeds 64 bits"))
}

/// Exact maxima of absolute minors for the requested sizes (all sizes
/// `1..=min(m, n)` by default). Sizes that would push the total number of
/// minors past `budget` are skipped and reported in `missing_sizes`.
pub fn subdet_profile(
    a: &RationalMatrix,
    sizes: Option<&[usize]>,
    budget: u128,
) -> Result<SubdetProfile> {
    let entries = int_entries(a)?;
    let (m, n) = (a.rows(), a.cols());
    let max_k = m.min(n);
    let mut wanted: Vec<usize> = match sizes {
        Some(s) => s.to_vec(),
        None => (1..=max_k).collect(),
    };
    wanted.sort_unstable();
    wanted.dedup();
    if let Some(&bad) = wanted.iter().find(|&&k| k == 0 || k > max_k) {
        return Err(Error::param(format!("minor size {bad} outside 1..={max_k}")));
    }

    let mut per_size = BTreeMap::new();
    let mut missing = Vec::new();
    let mut spent: u128 = 0;
    for k in wanted {
        let cost = minor_count(m, n, k);
        if spent.saturating_add(cost) > budget {
            missing.push(k);
            continue;
        }
        spent += cost;
        per_size.insert(k, to_u64(max_minor(&entries, k))?);
    }

    let delta = per_size.values().copied().max().unwrap_or(0);
    let delta1 = per_size.get(&1).copied();
    // the empty minor has determinant 1
    let delta_nm1 = if n == 1 { Some(1) } else { per_size.get(&(n - 1)).copied() };
    Ok(SubdetProfile { delta, delta1, delta_nm1, per_size, missing_sizes: missing })
}

/// Decide total unimodularity, stopping at the first minor outside {-1, 0, 1}.
pub fn is_totally_unimodular(a: &RationalMatrix, budget: u128) -> Result<TuVerdict> {
    let entries = int_entries(a)?;
    let (m, n) = (a.rows(), a.cols());
    let mut spent: u128 = 0;
    for k in 1..=m.min(n) {
        let cost = minor_count(m, n, k);
        if spent.saturating_add(cost) > budget {
            return Ok(TuVerdict::Indeterminate);
        }
        spent += cost;
        if max_minor(&entries, k) > BigInt::from(1) {
            return Ok(TuVerdict::NotUnimodular);
        }
    }
    Ok(TuVerdict::Unimodular)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> RationalMatrix {
        RationalMatrix::from_i64_rows(rows).unwrap()
    }

    #[test]
    fn cube_is_tu() {
        let a = m(&[
            vec![1, 0, 0],
            vec![0, 1, 0],
            vec![0, 0, 1],
            vec![-1, 0, 0],
            vec![0, -1, 0],
            vec![0, 0, -1],
        ]);
        let p = subdet_profile(&a, None, DEFAULT_MINOR_BUDGET).unwrap();
        assert_eq!((p.delta, p.delta1, p.delta_nm1), (1, Some(1), Some(1)));
        assert!(p.is_complete());
        assert_eq!(is_totally_unimodular(&a, DEFAULT_MINOR_BUDGET).unwrap(), TuVerdict::Unimodular);
    }

    #[test]
    fn small_example() {
        // entries 1, 1, 1, 2 and det 2 + 1 = 3
        let p = subdet_profile(&m(&[vec![1, 1], vec![-1, 2]]), None, DEFAULT_MINOR_BUDGET).unwrap();
        assert_eq!((p.delta, p.delta1, p.delta_nm1), (3, Some(2), Some(2)));
        assert_eq!(p.per_size[&2], 3);
    }

    #[test]
    fn zero_matrix() {
        let p = subdet_profile(&m(&[vec![0, 0], vec![0, 0]]), None, DEFAULT_MINOR_BUDGET).unwrap();
        assert_eq!(p.delta, 0);
    }

    #[test]
    fn single_entry_two() {
        assert_eq!(is_totally_unimodular(&m(&[vec![2]]), 100).unwrap(), TuVerdict::NotUnimodular);
    }

    #[test]
    fn budget_marks_missing_sizes() {
        let a = m(&[vec![1, 2, 0], vec![0, 1, 3], vec![1, 0, 1], vec![2, 2, 2]]);
        // size 1 costs 12, size 2 costs 18, size 3 costs 4
        let p = subdet_profile(&a, None, 20).unwrap();
        assert_eq!(p.missing_sizes, vec![2]);
        assert!(p.per_size.contains_key(&1) && p.per_size.contains_key(&3));
        assert_eq!(p.delta_nm1, None);
        assert_eq!(is_totally_unimodular(&a, 5).unwrap(), TuVerdict::Indeterminate);
        // the entry 2 is a witness found within budget
        assert_eq!(is_totally_unimodular(&a, 12).unwrap(), TuVerdict::NotUnimodular);
    }

    #[test]
    fn size_filter() {
        let a = m(&[vec![1, 1], vec![-1, 2]]);
        let p = subdet_profile(&a, Some(&[2]), 100).unwrap();
        assert_eq!(p.delta, 3);
        assert_eq!(p.delta1, None);
        assert!(subdet_profile(&a, Some(&[3]), 100).is_err());
    }
}
