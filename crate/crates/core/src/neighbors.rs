//! Exact brute-force k-nearest-neighbor queries under Euclidean distance.
//!
//! Ordering is by squared distance, then by ascending row index, so results
//! are fully deterministic under ties.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{squared_distance, Matrix};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NeighborList {
    pub query_index: usize,
    pub neighbor_indices: Vec<usize>,
    /// Euclidean distances, non-decreasing.
    pub distances: Vec<f64>,
}

/// `k` nearest rows of `points` to `query`, skipping row `exclude` if given.
/// Returns `(index, squared distance)` pairs in neighbor order.
pub(crate) fn nearest_to(
    points: &Matrix,
    query: &[f64],
    k: usize,
    exclude: Option<usize>,
) -> Vec<(usize, f64)> {
    let mut cand: Vec<(usize, f64)> = (0..points.n_rows())
        .filter(|i| Some(*i) != exclude)
        .map(|i| (i, squared_distance(points.row(i), query)))
        .collect();
    let k = k.min(cand.len());
    let cmp = |a: &(usize, f64), b: &(usize, f64)| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0));
    if k < cand.len() {
        if k == 0 {
            return Vec::new();
        }
        cand.select_nth_unstable_by(k - 1, cmp);
        cand.truncate(k);
    }
    cand.sort_unstable_by(cmp);
    cand
}

fn check(points: &Matrix, k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::Argument("k must be at least 1".into()));
    }
    if points.n_rows() == 0 {
        return Err(Error::Argument("no points to search".into()));
    }
    Ok(())
}

fn to_list(query_index: usize, found: Vec<(usize, f64)>) -> NeighborList {
    let (neighbor_indices, distances) = found.into_iter().map(|(i, d2)| (i, d2.sqrt())).unzip();
    NeighborList {
        query_index,
        neighbor_indices,
        distances,
    }
}

/// The `min(k, n - 1)` nearest rows to row `query_row`, itself excluded.
pub fn knn(points: &Matrix, query_row: usize, k: usize) -> Result<NeighborList> {
    check(points, k)?;
    if query_row >= points.n_rows() {
        return Err(Error::Argument(format!(
            "query row {query_row} out of range for {} points",
            points.n_rows()
        )));
    }
    let found = nearest_to(points, points.row(query_row), k, Some(query_row));
    Ok(to_list(query_row, found))
}

/// Neighbors in `points` for every row of `queries`.
///
/// Nothing is excluded unless `self_indices` maps query `q` to a row of
/// `points` (that row is then skipped for `q`); in particular a bit-identical
/// duplicate of a query is returned as a neighbor.
pub fn knn_cross(
    points: &Matrix,
    queries: &Matrix,
    k: usize,
    self_indices: Option<&[usize]>,
) -> Result<Vec<NeighborList>> {
    check(points, k)?;
    if queries.n_cols() != points.n_cols() {
        return Err(Error::Argument("query and point dimensions differ".into()));
    }
    if let Some(s) = self_indices {
        if s.len() != queries.n_rows() {
            return Err(Error::Argument("one self index per query is required".into()));
        }
    }
    Ok(queries
        .rows()
        .enumerate()
        .map(|(q, row)| {
            let exclude = self_indices.map(|s| s[q]);
            to_list(q, nearest_to(points, row, k, exclude))
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pts(rows: &[[f64; 2]]) -> Matrix {
        Matrix::from_rows(rows).unwrap()
    }

    #[test]
    fn nearest_single() {
        let p = pts(&[[0.0, 0.0], [1.0, 0.0], [5.0, 0.0]]);
        let nl = knn(&p, 0, 1).unwrap();
        assert_eq!(nl.neighbor_indices, vec![1]);
        assert_eq!(nl.distances, vec![1.0]);
    }

    #[test]
    fn tie_broken_by_index() {
        let p = pts(&[[0.0, 0.0], [1.0, 0.0], [-1.0, 0.0]]);
        assert_eq!(knn(&p, 0, 1).unwrap().neighbor_indices, vec![1]);
        let p = pts(&[[0.0, 0.0], [-1.0, 0.0], [1.0, 0.0]]);
        assert_eq!(knn(&p, 0, 1).unwrap().neighbor_indices, vec![1]);
    }

    #[test]
    fn clamps_to_available() {
        let p = pts(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]);
        assert_eq!(knn(&p, 1, 10).unwrap().neighbor_indices, vec![0, 2]);
        let q = pts(&[[0.1, 0.0]]);
        let lists = knn_cross(&p, &q, 10, None).unwrap();
        assert_eq!(lists[0].neighbor_indices, vec![0, 1, 2]);
    }

    #[test]
    fn argument_errors() {
        let p = pts(&[[0.0, 0.0]]);
        assert!(knn(&p, 0, 0).is_err());
        assert!(knn(&Matrix::new(2), 0, 1).is_err());
        assert!(knn(&p, 3, 1).is_err());
        assert!(knn_cross(&Matrix::new(2), &p, 1, None).is_err());
    }

    #[test]
    fn single_point_has_no_neighbors() {
        let p = pts(&[[0.0, 0.0]]);
        assert!(knn(&p, 0, 3).unwrap().neighbor_indices.is_empty());
    }

    #[test]
    fn duplicates_kept_without_self_index() {
        let p = pts(&[[0.0, 0.0], [3.0, 0.0], [0.0, 0.0]]);
        let q = pts(&[[0.0, 0.0]]);
        let free = knn_cross(&p, &q, 2, None).unwrap();
        assert_eq!(free[0].neighbor_indices, vec![0, 2]);
        let selfed = knn_cross(&p, &q, 2, Some(&[0])).unwrap();
        assert_eq!(selfed[0].neighbor_indices, vec![2, 1]);
    }
}
