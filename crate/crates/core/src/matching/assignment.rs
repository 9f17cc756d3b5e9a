//! Exact min-cost perfect assignment with forbidden cells.
//!
//! Shortest-augmenting-path Hungarian method with row/column potentials,
//! `O(n^3)`. Costs are exact integers; rational weights are brought to a
//! common denominator before reaching this module.

use std::ops::{Add, Sub};

use num_bigint::BigInt;
use num_traits::Zero;

pub(crate) trait Cost: Clone + Ord + Zero + Add<Output = Self> + Sub<Output = Self> {}

impl Cost for i128 {}
impl Cost for BigInt {}

/// Solves the `n x n` assignment where `cost(r, c)` is `None` for a forbidden
/// cell. Returns the optimum and `row -> column`, or `None` when no perfect
/// assignment avoids the forbidden cells.
///
/// Ties resolve toward the lowest column index, so results are deterministic.
pub(crate) fn solve<T: Cost>(n: usize, cost: impl Fn(usize, usize) -> Option<T>) -> Option<(T, Vec<usize>)> {
    if n == 0 {
        return Some((T::zero(), Vec::new()));
    }
    // 1-based with a sentinel column 0; row_of[j] == 0 means column j is free.
    let mut u = vec![T::zero(); n + 1];
    let mut v = vec![T::zero(); n + 1];
    let mut row_of = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];

    for i in 1..=n {
        row_of[0] = i;
        let mut j0 = 0;
        let mut minv: Vec<Option<T>> = vec![None; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = row_of[j0];
            let mut delta: Option<T> = None;
            let mut j1 = 0;
            for j in 1..=n {
                if used[j] {
                    continue;
                }
                if let Some(c) = cost(i0 - 1, j - 1) {
                    let reduced = c - u[i0].clone() - v[j].clone();
                    if minv[j].as_ref().is_none_or(|m| reduced < *m) {
                        minv[j] = Some(reduced);
                        way[j] = j0;
                    }
                }
                if let Some(m) = &minv[j] {
                    if delta.as_ref().is_none_or(|d| m < d) {
                        delta = Some(m.clone());
                        j1 = j;
                    }
                }
            }
            // No reachable free column: the current row cannot be matched.
            let delta = delta?;
            for j in 0..=n {
                if used[j] {
                    let r = row_of[j];
                    u[r] = u[r].clone() + delta.clone();
                    v[j] = v[j].clone() - delta.clone();
                } else if let Some(m) = minv[j].as_mut() {
                    *m = m.clone() - delta.clone();
                }
            }
            j0 = j1;
            if row_of[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            row_of[j0] = row_of[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }

    let mut assignment = vec![0; n];
    let mut total = T::zero();
    for (c, &row) in row_of.iter().enumerate().skip(1) {
        let r = row - 1;
        assignment[r] = c - 1;
        total = total + cost(r, c - 1).expect("assignment only uses allowed cells");
    }
    Some((total, assignment))
}
