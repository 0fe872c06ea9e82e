//! Interpolation-based resampling.
//!
//! * [`smote`] grows the minority class with points interpolated between a
//!   minority row and one of its nearest minority neighbors.
//! * [`smute`] shrinks the majority class: each step picks a majority row and
//!   one of its nearest neighbors *in the current (already reduced) set*,
//!   deletes both and inserts one point interpolated between them.
//! * [`csmoute`] splits the class-size gap between the two according to
//!   `ratio` (1 = oversampling only, 0 = undersampling only).
//!
//! Random over- and undersampling ([`ros`], [`rus`]) are provided as
//! baselines. Every synthetic point carries its lineage: the ids of its two
//! parents and the interpolation coefficient.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{squared_distance, Matrix};
use crate::neighbors::nearest_to;
use crate::rng::{Draws, StreamRng};

/// Stream labels; SMOTE and SMUTE never share draws.
pub const SMOTE_STREAM: &str = "smote";
pub const SMUTE_STREAM: &str = "smute";
pub const RUS_STREAM: &str = "rus";
pub const ROS_STREAM: &str = "ros";

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ResampleConfig {
    pub k_smote: usize,
    pub k_smute: usize,
    /// Share of the class-size gap closed by oversampling, in `[0, 1]`.
    pub ratio: f64,
    pub seed: u64,
}

impl ResampleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.k_smote == 0 || self.k_smute == 0 {
            return Err(Error::Argument("neighbor counts must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.ratio) {
            return Err(Error::Argument(format!("ratio {} outside [0, 1]", self.ratio)));
        }
        Ok(())
    }
}

/// One interpolated row: `x1 + r * (x2 - x1)` with `parents = (x1, x2)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Synthetic {
    pub id: usize,
    pub parents: (usize, usize),
    pub r: f64,
}

/// SMOTE output. Rows `0..m` are the input verbatim; synthetic row `t` has
/// id `m + t`. Parent ids index the input rows.
#[derive(Debug, Clone, PartialEq)]
pub struct SmoteOutput {
    pub rows: Matrix,
    pub lineage: Vec<Synthetic>,
}

/// SMUTE output. Input rows have ids `0..m`; synthetics are numbered from
/// `m` in creation order and may themselves be parents of later synthetics.
#[derive(Debug, Clone, PartialEq)]
pub struct SmuteOutput {
    pub rows: Matrix,
    /// Id of each output row.
    pub ids: Vec<usize>,
    pub lineage: Vec<Synthetic>,
    /// Ids deleted, two per step, in deletion order.
    pub removed: Vec<usize>,
    /// Every synthetic row ever created (id `m + t` at row `t`), including
    /// those later merged away.
    pub created: Matrix,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct SmuteOptions {
    /// Draw the second parent from original (non-synthetic) rows only,
    /// falling back to the whole current set when none are left.
    pub originals_only: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ResampleResult {
    pub majority_out: Matrix,
    pub majority_ids: Vec<usize>,
    pub minority_out: Matrix,
    pub minority_lineage: Vec<Synthetic>,
    pub majority_lineage: Vec<Synthetic>,
    pub removed: Vec<usize>,
    pub n_smote: usize,
    pub n_smute: usize,
}

fn interpolate(a: &[f64], b: &[f64], r: f64) -> Vec<f64> {
    a.iter().zip(b).map(|(x1, x2)| x1 + r * (x2 - x1)).collect()
}

/// Appends `n` synthetic minority rows.
pub fn smote<D: Draws>(minority: &Matrix, k: usize, n: usize, rng: &mut D) -> Result<SmoteOutput> {
    if k == 0 {
        return Err(Error::Argument("k must be at least 1".into()));
    }
    let m = minority.n_rows();
    if n > 0 && m < 2 {
        return Err(Error::DegenerateClass(format!(
            "SMOTE needs at least 2 minority rows to interpolate, got {m}"
        )));
    }
    let mut rows = Matrix::with_capacity(minority.n_cols(), m + n);
    for r in minority.rows() {
        rows.push_row(r)?;
    }
    // neighbor lists depend only on the fixed input, so compute each once
    let mut neighbors: Vec<Option<Vec<usize>>> = vec![None; if n > 0 { m } else { 0 }];
    let mut lineage = Vec::with_capacity(n);
    for t in 0..n {
        let x1 = rng.index(m);
        let nn = neighbors[x1].get_or_insert_with(|| {
            nearest_to(minority, minority.row(x1), k, Some(x1))
                .into_iter()
                .map(|(i, _)| i)
                .collect()
        });
        let x2 = nn[rng.index(nn.len())];
        let r = rng.unit();
        let point = interpolate(minority.row(x1), minority.row(x2), r);
        rows.push_row(&point)?;
        lineage.push(Synthetic {
            id: m + t,
            parents: (x1, x2),
            r,
        });
    }
    Ok(SmoteOutput { rows, lineage })
}

/// Removes `n` majority rows net by merging neighbor pairs.
pub fn smute<D: Draws>(majority: &Matrix, k: usize, n: usize, rng: &mut D) -> Result<SmuteOutput> {
    smute_with(majority, k, n, SmuteOptions::default(), rng)
}

pub fn smute_with<D: Draws>(
    majority: &Matrix,
    k: usize,
    n: usize,
    options: SmuteOptions,
    rng: &mut D,
) -> Result<SmuteOutput> {
    if k == 0 {
        return Err(Error::Argument("k must be at least 1".into()));
    }
    let m = majority.n_rows();
    if n > 0 && (m < 2 || n > m - 2) {
        return Err(Error::InfeasibleReduction {
            requested: n,
            available: m,
        });
    }
    // every row ever seen, indexed by id
    let mut pool = majority.clone();
    pool.reserve_rows(n);
    // current set, always sorted by id: survivors keep their order and
    // synthetics are appended with increasing ids
    let mut alive: Vec<usize> = (0..m).collect();
    let mut lineage = Vec::with_capacity(n);
    let mut removed = Vec::with_capacity(2 * n);
    let mut cand: Vec<(usize, f64)> = Vec::with_capacity(m);
    for _ in 0..n {
        let x1 = alive[rng.index(alive.len())];
        let query = pool.row(x1).to_vec();
        cand.clear();
        let restrict = options.originals_only && alive.iter().any(|&i| i != x1 && i < m);
        cand.extend(
            alive
                .iter()
                .filter(|&&i| i != x1 && (!restrict || i < m))
                .map(|&i| (i, squared_distance(pool.row(i), &query))),
        );
        let kk = k.min(cand.len());
        let cmp = |a: &(usize, f64), b: &(usize, f64)| a.1.total_cmp(&b.1).then(a.0.cmp(&b.0));
        if kk < cand.len() {
            cand.select_nth_unstable_by(kk - 1, cmp);
            cand.truncate(kk);
        }
        cand.sort_unstable_by(cmp);
        let x2 = cand[rng.index(kk)].0;
        let r = rng.unit();
        let point = interpolate(&query, pool.row(x2), r);
        let id = pool.n_rows();
        pool.push_row(&point)?;
        alive.retain(|&i| i != x1 && i != x2);
        alive.push(id);
        removed.push(x1);
        removed.push(x2);
        lineage.push(Synthetic {
            id,
            parents: (x1, x2),
            r,
        });
    }
    Ok(SmuteOutput {
        rows: pool.select_rows(&alive),
        created: pool.select_rows(&(m..pool.n_rows()).collect::<Vec<_>>()),
        ids: alive,
        lineage,
        removed,
    })
}

/// Number of synthetic minority rows CSMOUTE creates for a gap of `n`:
/// `round(n * ratio)`, halves rounded away from zero.
pub fn smote_share(n: usize, ratio: f64) -> usize {
    (n as f64 * ratio).round() as usize
}

/// Balances the classes: SMOTE closes `round(n * ratio)` of the gap
/// `n = |majority| - |minority|` and SMUTE the rest.
pub fn csmoute(majority: &Matrix, minority: &Matrix, config: &ResampleConfig) -> Result<ResampleResult> {
    csmoute_with(majority, minority, config, SmuteOptions::default())
}

pub fn csmoute_with(
    majority: &Matrix,
    minority: &Matrix,
    config: &ResampleConfig,
    options: SmuteOptions,
) -> Result<ResampleResult> {
    config.validate()?;
    if majority.n_rows() < minority.n_rows() {
        return Err(Error::Argument(format!(
            "majority ({}) smaller than minority ({})",
            majority.n_rows(),
            minority.n_rows()
        )));
    }
    let n = majority.n_rows() - minority.n_rows();
    let n_smote = smote_share(n, config.ratio);
    let n_smute = n - n_smote;
    let mut smote_rng = StreamRng::derive(config.seed, &[SMOTE_STREAM]);
    let mut smute_rng = StreamRng::derive(config.seed, &[SMUTE_STREAM]);
    let over = smote(minority, config.k_smote, n_smote, &mut smote_rng)?;
    let under = smute_with(majority, config.k_smute, n_smute, options, &mut smute_rng)?;
    Ok(ResampleResult {
        majority_out: under.rows,
        majority_ids: under.ids,
        minority_out: over.rows,
        minority_lineage: over.lineage,
        majority_lineage: under.lineage,
        removed: under.removed,
        n_smote,
        n_smute,
    })
}

/// Random undersampling: keeps `|majority| - n` rows chosen uniformly without
/// replacement, in their original order. Returns the rows and their indices.
pub fn rus<D: Draws>(majority: &Matrix, n: usize, rng: &mut D) -> Result<(Matrix, Vec<usize>)> {
    let m = majority.n_rows();
    if m == 0 || n > m - 1 {
        return Err(Error::InfeasibleReduction {
            requested: n,
            available: m,
        });
    }
    let keep = m - n;
    let mut perm: Vec<usize> = (0..m).collect();
    for i in 0..keep {
        let j = i + rng.index(m - i);
        perm.swap(i, j);
    }
    let mut kept = perm[..keep].to_vec();
    kept.sort_unstable();
    Ok((majority.select_rows(&kept), kept))
}

/// Random oversampling: appends `n` uniformly drawn copies of minority rows.
/// Returns the rows and the source index of each appended copy.
pub fn ros<D: Draws>(minority: &Matrix, n: usize, rng: &mut D) -> Result<(Matrix, Vec<usize>)> {
    let m = minority.n_rows();
    if m == 0 {
        return Err(Error::DegenerateClass("cannot oversample an empty class".into()));
    }
    let sources: Vec<usize> = (0..n).map(|_| rng.index(m)).collect();
    let out = minority.vstack(&minority.select_rows(&sources))?;
    Ok((out, sources))
}

/// A resampling method with fixed parameters that balances the classes.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "method", rename_all = "lowercase")]
pub enum Resampler {
    None,
    Rus,
    Ros,
    Smote { k: usize },
    Smute { k: usize },
    Csmoute { k_smote: usize, k_smute: usize, ratio: f64 },
}

impl Resampler {
    /// Method family name, without parameters.
    pub fn family(&self) -> &'static str {
        match self {
            Resampler::None => "none",
            Resampler::Rus => "rus",
            Resampler::Ros => "ros",
            Resampler::Smote { .. } => "smote",
            Resampler::Smute { .. } => "smute",
            Resampler::Csmoute { .. } => "csmoute",
        }
    }

    /// Resamples the training classes to equal size (or leaves them alone
    /// for [`Resampler::None`]). Returns `(majority, minority)`.
    pub fn apply(
        &self,
        majority: &Matrix,
        minority: &Matrix,
        seed: u64,
        options: SmuteOptions,
    ) -> Result<(Matrix, Matrix)> {
        let gap = majority.n_rows().saturating_sub(minority.n_rows());
        match *self {
            Resampler::None => Ok((majority.clone(), minority.clone())),
            Resampler::Rus => {
                let (maj, _) = rus(majority, gap, &mut StreamRng::derive(seed, &[RUS_STREAM]))?;
                Ok((maj, minority.clone()))
            }
            Resampler::Ros => {
                let (min, _) = ros(minority, gap, &mut StreamRng::derive(seed, &[ROS_STREAM]))?;
                Ok((majority.clone(), min))
            }
            Resampler::Smote { k } => {
                let out = smote(minority, k, gap, &mut StreamRng::derive(seed, &[SMOTE_STREAM]))?;
                Ok((majority.clone(), out.rows))
            }
            Resampler::Smute { k } => {
                let out = smute_with(majority, k, gap, options, &mut StreamRng::derive(seed, &[SMUTE_STREAM]))?;
                Ok((out.rows, minority.clone()))
            }
            Resampler::Csmoute { k_smote, k_smute, ratio } => {
                let config = ResampleConfig {
                    k_smote,
                    k_smute,
                    ratio,
                    seed,
                };
                let out = csmoute_with(majority, minority, &config, options)?;
                Ok((out.majority_out, out.minority_out))
            }
        }
    }
}

impl fmt::Display for Resampler {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Resampler::None | Resampler::Rus | Resampler::Ros => f.write_str(self.family()),
            Resampler::Smote { k } => write!(f, "smote(k={k})"),
            Resampler::Smute { k } => write!(f, "smute(k={k})"),
            Resampler::Csmoute { k_smote, k_smute, ratio } => {
                write!(f, "csmoute(k_smote={k_smote},k_smute={k_smute},ratio={ratio})")
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::ScriptedDraws;

    fn m(rows: &[[f64; 2]]) -> Matrix {
        Matrix::from_rows(rows).unwrap()
    }

    fn random_matrix(rng: &mut StreamRng, n: usize, d: usize) -> Matrix {
        let data = (0..n * d).map(|_| rng.unit() * 10.0 - 5.0).collect();
        Matrix::from_vec(d, data).unwrap()
    }

    #[test]
    fn smote_midpoint() {
        let min = m(&[[0.0, 0.0], [2.0, 2.0]]);
        let mut draws = ScriptedDraws::new(&[0, 0], &[0.5]);
        let out = smote(&min, 1, 1, &mut draws).unwrap();
        assert_eq!(out.rows.n_rows(), 3);
        assert_eq!(out.rows.row(2), &[1.0, 1.0]);
        assert_eq!(out.lineage[0].parents, (0, 1));
    }

    #[test]
    fn smote_zero_is_identity() {
        let min = m(&[[0.0, 1.0], [2.0, 2.0], [3.0, -1.0]]);
        let out = smote(&min, 5, 0, &mut StreamRng::derive(1, &[])).unwrap();
        assert_eq!(out.rows, min);
        assert!(out.lineage.is_empty());
    }

    #[test]
    fn smote_single_row_is_degenerate() {
        let min = m(&[[0.0, 1.0]]);
        let err = smote(&min, 5, 1, &mut StreamRng::derive(1, &[])).unwrap_err();
        assert!(matches!(err, Error::DegenerateClass(_)));
        assert!(smote(&min, 5, 0, &mut StreamRng::derive(1, &[])).is_ok());
    }

    #[test]
    fn smote_preserves_prefix_and_uses_neighbors() {
        let mut g = StreamRng::derive(11, &["data"]);
        let min = random_matrix(&mut g, 20, 2);
        let out = smote(&min, 3, 40, &mut StreamRng::derive(2, &[])).unwrap();
        assert_eq!(out.rows.select_rows(&(0..20).collect::<Vec<_>>()), min);
        for s in &out.lineage {
            let nn = crate::neighbors::knn(&min, s.parents.0, 3).unwrap();
            assert!(nn.neighbor_indices.contains(&s.parents.1));
            assert!((0.0..=1.0).contains(&s.r));
        }
    }

    #[test]
    fn smute_single_merge() {
        let maj = m(&[[0.0, 0.0], [1.0, 0.0], [10.0, 10.0]]);
        let mut draws = ScriptedDraws::new(&[0, 0], &[0.25]);
        let out = smute(&maj, 1, 1, &mut draws).unwrap();
        let mut rows: Vec<Vec<f64>> = out.rows.rows().map(<[f64]>::to_vec).collect();
        rows.sort_by(|a, b| a[0].total_cmp(&b[0]));
        assert_eq!(rows, vec![vec![0.25, 0.0], vec![10.0, 10.0]]);
        assert_eq!(out.removed, vec![0, 1]);
        assert_eq!(out.ids, vec![2, 3]);
    }

    #[test]
    fn smute_zero_is_identity() {
        let maj = m(&[[0.0, 0.0], [1.0, 0.0], [10.0, 10.0]]);
        let out = smute(&maj, 3, 0, &mut StreamRng::derive(1, &[])).unwrap();
        assert_eq!(out.rows, maj);
        assert!(out.removed.is_empty());
    }

    #[test]
    fn smute_output_size() {
        let mut g = StreamRng::derive(5, &["data"]);
        let maj = random_matrix(&mut g, 100, 3);
        let out = smute(&maj, 5, 37, &mut StreamRng::derive(9, &[])).unwrap();
        assert_eq!(out.rows.n_rows(), 63);
        assert_eq!(out.removed.len(), 74);
    }

    #[test]
    fn smute_feasibility_floor() {
        let maj = m(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]);
        let mut rng = StreamRng::derive(1, &[]);
        assert!(smute(&maj, 1, 1, &mut rng).is_ok());
        assert!(matches!(
            smute(&maj, 1, 2, &mut rng),
            Err(Error::InfeasibleReduction { requested: 2, available: 3 })
        ));
        assert!(smute(&maj, 0, 1, &mut rng).is_err());
    }

    #[test]
    fn smute_can_merge_synthetics() {
        // two rows left after one step, the next step must merge the synthetic
        let maj = m(&[[0.0, 0.0], [1.0, 0.0], [4.0, 0.0], [9.0, 0.0]]);
        let out = smute(&maj, 1, 2, &mut StreamRng::derive(4, &[])).unwrap();
        assert_eq!(out.rows.n_rows(), 2);
        let first = out.lineage[0].id;
        let reused = out.lineage[1].parents.0 == first
            || out.lineage[1].parents.1 == first
            || !out.removed.contains(&first);
        assert!(reused);
    }

    #[test]
    fn smute_originals_only_prefers_originals() {
        let mut g = StreamRng::derive(8, &["data"]);
        let maj = random_matrix(&mut g, 30, 2);
        let opts = SmuteOptions { originals_only: true };
        let out = smute_with(&maj, 3, 10, opts, &mut StreamRng::derive(3, &[])).unwrap();
        for s in &out.lineage {
            assert!(s.parents.1 < 30, "second parent {} is synthetic", s.parents.1);
        }
    }

    #[test]
    fn csmoute_split() {
        let mut g = StreamRng::derive(1, &["data"]);
        let maj = random_matrix(&mut g, 100, 2);
        let min = random_matrix(&mut g, 40, 2);
        let cfg = ResampleConfig {
            k_smote: 5,
            k_smute: 5,
            ratio: 0.5,
            seed: 3,
        };
        let out = csmoute(&maj, &min, &cfg).unwrap();
        assert_eq!((out.n_smote, out.n_smute), (30, 30));
        assert_eq!(out.majority_out.n_rows(), 70);
        assert_eq!(out.minority_out.n_rows(), 70);
    }

    #[test]
    fn rounding_half_away_from_zero() {
        assert_eq!(smote_share(5, 0.5), 3);
        assert_eq!(smote_share(1, 0.5), 1);
        assert_eq!(smote_share(60, 0.5), 30);
        assert_eq!(smote_share(7, 0.0), 0);
        assert_eq!(smote_share(7, 1.0), 7);
    }

    #[test]
    fn csmoute_rejects_bad_config() {
        let maj = m(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]);
        let min = m(&[[5.0, 5.0], [6.0, 6.0]]);
        let mut cfg = ResampleConfig {
            k_smote: 1,
            k_smute: 1,
            ratio: 1.5,
            seed: 0,
        };
        assert!(csmoute(&maj, &min, &cfg).is_err());
        cfg.ratio = 0.5;
        cfg.k_smote = 0;
        assert!(csmoute(&maj, &min, &cfg).is_err());
        cfg.k_smote = 1;
        assert!(csmoute(&min, &maj, &cfg).is_err());
    }

    #[test]
    fn rus_basics() {
        let maj = m(&[[0.0, 0.0], [1.0, 0.0], [2.0, 0.0]]);
        let mut rng = StreamRng::derive(1, &[]);
        let (same, kept) = rus(&maj, 0, &mut rng).unwrap();
        assert_eq!(same, maj);
        assert_eq!(kept, vec![0, 1, 2]);
        let (one, kept) = rus(&maj, 2, &mut rng).unwrap();
        assert_eq!(one.n_rows(), 1);
        assert_eq!(one.row(0), maj.row(kept[0]));
        assert!(rus(&maj, 3, &mut rng).is_err());
    }

    #[test]
    fn rus_ten_to_one() {
        let mut g = StreamRng::derive(2, &["data"]);
        let maj = random_matrix(&mut g, 10, 2);
        let (out, kept) = rus(&maj, 9, &mut StreamRng::derive(6, &[])).unwrap();
        assert_eq!(out.n_rows(), 1);
        assert!(maj.rows().any(|r| r == out.row(0)));
        assert_eq!(kept.len(), 1);
    }

    #[test]
    fn ros_basics() {
        let min = m(&[[3.0, 4.0]]);
        let mut rng = StreamRng::derive(1, &[]);
        let (same, _) = ros(&min, 0, &mut rng).unwrap();
        assert_eq!(same, min);
        let (four, _) = ros(&min, 3, &mut rng).unwrap();
        assert_eq!(four.n_rows(), 4);
        assert!(four.rows().all(|r| r == [3.0, 4.0]));
        assert!(ros(&Matrix::new(2), 1, &mut rng).is_err());
    }

    #[test]
    fn resampler_balances() {
        let mut g = StreamRng::derive(3, &["data"]);
        let maj = random_matrix(&mut g, 30, 2);
        let min = random_matrix(&mut g, 8, 2);
        for method in [
            Resampler::Rus,
            Resampler::Ros,
            Resampler::Smote { k: 3 },
            Resampler::Smute { k: 3 },
            Resampler::Csmoute {
                k_smote: 3,
                k_smute: 3,
                ratio: 0.4,
            },
        ] {
            let (a, b) = method.apply(&maj, &min, 1, SmuteOptions::default()).unwrap();
            assert_eq!(a.n_rows(), b.n_rows(), "{method}");
        }
        let (a, b) = Resampler::None.apply(&maj, &min, 1, SmuteOptions::default()).unwrap();
        assert_eq!((a.n_rows(), b.n_rows()), (30, 8));
    }
}
