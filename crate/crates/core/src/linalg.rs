//! Exact rank by fraction-free elimination on sparse rows.

use std::collections::BTreeMap;

use crate::scalar::{GaussianRational, Scalar};

/// An exact integral domain usable by [`rank`].
pub trait EliminationRing: Clone {
    fn is_zero(&self) -> bool;
    fn mul(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multipliers `(α, β)` so that `α·row − β·pivot_row` clears the pivot
    /// column, given pivot entry `pivot` and row entry `entry`. `α` must be nonzero.
    fn multipliers(pivot: &Self, entry: &Self) -> (Self, Self);
}

impl EliminationRing for GaussianRational {
    fn is_zero(&self) -> bool {
        GaussianRational::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn multipliers(pivot: &Self, entry: &Self) -> (Self, Self) {
        (
            GaussianRational::one(),
            entry.checked_div(pivot).expect("nonzero pivot"),
        )
    }
}

impl EliminationRing for Scalar {
    fn is_zero(&self) -> bool {
        Scalar::is_zero(self)
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn multipliers(pivot: &Self, entry: &Self) -> (Self, Self) {
        // Cancel the common factor to keep degrees from growing.
        let g = pivot.gcd(entry);
        let alpha = pivot.div_exact(&g).expect("gcd divides pivot");
        let beta = entry.div_exact(&g).expect("gcd divides entry");
        (alpha, beta)
    }
}

pub type SparseRow<T> = BTreeMap<usize, T>;

/// Rank of the matrix whose rows are given sparsely.
///
/// Only rows with a nonzero entry in the pivot column are touched at each
/// step, so near-monomial matrices eliminate in close to linear time.
pub fn rank<T: EliminationRing>(rows: Vec<SparseRow<T>>) -> usize {
    let mut rows: Vec<SparseRow<T>> = rows
        .into_iter()
        .map(|r| r.into_iter().filter(|(_, v)| !v.is_zero()).collect())
        .filter(|r: &SparseRow<T>| !r.is_empty())
        .collect();
    // column -> rows currently holding a nonzero there
    let mut by_col: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
    for (i, r) in rows.iter().enumerate() {
        for &c in r.keys() {
            by_col.entry(c).or_default().push(i);
        }
    }
    let mut used = vec![false; rows.len()];
    let mut rank = 0;
    while let Some((col, holders)) = by_col.pop_first() {
        let live: Vec<usize> = holders
            .into_iter()
            .filter(|&i| !used[i] && rows[i].contains_key(&col))
            .collect();
        let Some(&pivot_idx) = live.iter().min_by_key(|&&i| rows[i].len()) else {
            continue;
        };
        used[pivot_idx] = true;
        rank += 1;
        let pivot_row = rows[pivot_idx].clone();
        let pivot = pivot_row[&col].clone();
        for &i in live.iter().filter(|&&i| i != pivot_idx) {
            let entry = rows[i][&col].clone();
            let (alpha, beta) = T::multipliers(&pivot, &entry);
            let mut updated = SparseRow::new();
            let keys: Vec<usize> = rows[i].keys().chain(pivot_row.keys()).copied().collect();
            for c in keys {
                if c == col || updated.contains_key(&c) {
                    continue;
                }
                let a = rows[i].get(&c).map(|v| v.mul(&alpha));
                let b = pivot_row.get(&c).map(|v| v.mul(&beta));
                let v = match (a, b) {
                    (Some(a), Some(b)) => a.sub(&b),
                    (Some(a), None) => a,
                    (None, Some(b)) => b.neg(),
                    (None, None) => unreachable!(),
                };
                if !v.is_zero() {
                    updated.insert(c, v);
                }
            }
            for &c in updated.keys() {
                if !rows[i].contains_key(&c) {
                    by_col.entry(c).or_default().push(i);
                }
            }
            rows[i] = updated;
        }
    }
    rank
}

/// Rank of a row-major dense matrix.
pub fn dense_rank<T: EliminationRing>(rows: &[Vec<T>]) -> usize {
    rank(
        rows.iter()
            .map(|r| {
                r.iter()
                    .cloned()
                    .enumerate()
                    .filter(|(_, v)| !v.is_zero())
                    .collect()
            })
            .collect(),
    )
}
