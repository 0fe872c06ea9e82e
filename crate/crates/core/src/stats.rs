//! Nonparametric comparison of methods over datasets: Wilcoxon signed-rank,
//! Friedman average ranks with Holm post-hoc against a control, Pearson
//! correlation and win/loss/tie counts.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::special::{normal_cdf, chi_square_sf, student_t_two_sided};

/// Largest effective sample size for which the Wilcoxon null distribution is
/// enumerated exactly.
pub const WILCOXON_EXACT_MAX: usize = 20;
pub const WILCOXON_MIN_N: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TestResult {
    pub statistic: f64,
    pub p_value: f64,
    pub n_effective: usize,
}

/// Ranks in ascending order of `values` (smallest gets 1), ties averaged.
pub fn rank_ascending(values: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..values.len()).collect();
    order.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut ranks = vec![0.0; values.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && values[order[j + 1]] == values[order[i]] {
            j += 1;
        }
        // positions i..=j share the mean of ranks i+1..=j+1
        let r = (i + j + 2) as f64 / 2.0;
        for &o in &order[i..=j] {
            ranks[o] = r;
        }
        i = j + 1;
    }
    ranks
}

/// Ranks where the largest value is best and gets rank 1, ties averaged.
pub fn rank_descending(values: &[f64]) -> Vec<f64> {
    let neg: Vec<f64> = values.iter().map(|v| -v).collect();
    rank_ascending(&neg)
}

fn check_finite(name: &str, v: &[f64]) -> Result<()> {
    if v.iter().any(|x| !x.is_finite()) {
        return Err(Error::Argument(format!("{name} contains non-finite values")));
    }
    Ok(())
}

/// Two-sided Wilcoxon signed-rank test on paired samples.
///
/// Zero differences are dropped. The statistic is `min(W+, W-)`. With at most
/// [`WILCOXON_EXACT_MAX`] nonzero differences the p-value is exact (tied
/// ranks included); otherwise a tie-corrected normal approximation is used.
pub fn wilcoxon_signed_rank(a: &[f64], b: &[f64]) -> Result<TestResult> {
    if a.len() != b.len() {
        return Err(Error::Argument(format!("paired samples differ in length: {} vs {}", a.len(), b.len())));
    }
    check_finite("a", a)?;
    check_finite("b", b)?;
    let diffs: Vec<f64> = a.iter().zip(b).map(|(x, y)| x - y).filter(|d| *d != 0.0).collect();
    let n = diffs.len();
    if n == 0 {
        return Ok(TestResult {
            statistic: 0.0,
            p_value: 1.0,
            n_effective: 0,
        });
    }
    if n < WILCOXON_MIN_N {
        return Err(Error::SampleTooSmall {
            got: n,
            needed: WILCOXON_MIN_N,
        });
    }
    let abs: Vec<f64> = diffs.iter().map(|d| d.abs()).collect();
    let ranks = rank_ascending(&abs);
    let w_plus: f64 = diffs.iter().zip(&ranks).filter(|(d, _)| **d > 0.0).map(|(_, r)| r).sum();
    let total = (n * (n + 1)) as f64 / 2.0;
    let w = w_plus.min(total - w_plus);
    let p = if n <= WILCOXON_EXACT_MAX {
        wilcoxon_exact_p(&ranks, w)
    } else {
        wilcoxon_normal_p(&ranks, w)
    };
    Ok(TestResult {
        statistic: w,
        p_value: p,
        n_effective: n,
    })
}

/// `min(1, 2 P(T <= w))` where `T` is the sum of a random subset of `ranks`.
fn wilcoxon_exact_p(ranks: &[f64], w: f64) -> f64 {
    // tied ranks are multiples of 1/2, so doubled ranks are integers
    let doubled: Vec<usize> = ranks.iter().map(|r| (2.0 * r).round() as usize).collect();
    let max: usize = doubled.iter().sum();
    let mut count = vec![0.0f64; max + 1];
    count[0] = 1.0;
    let mut reach = 0;
    for &d in &doubled {
        for s in (0..=reach).rev() {
            if count[s] != 0.0 {
                count[s + d] += count[s];
            }
        }
        reach += d;
    }
    let limit = (2.0 * w).round() as usize;
    let below: f64 = count[..=limit.min(max)].iter().sum();
    let p = 2.0 * below / 2f64.powi(ranks.len() as i32);
    p.min(1.0)
}

fn wilcoxon_normal_p(ranks: &[f64], w: f64) -> f64 {
    let n = ranks.len() as f64;
    let mean = n * (n + 1.0) / 4.0;
    let mut sorted = ranks.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut tie_term = 0.0;
    let mut i = 0;
    while i < sorted.len() {
        let mut j = i;
        while j + 1 < sorted.len() && sorted[j + 1] == sorted[i] {
            j += 1;
        }
        let t = (j - i + 1) as f64;
        tie_term += t * t * t - t;
        i = j + 1;
    }
    let var = n * (n + 1.0) * (2.0 * n + 1.0) / 24.0 - tie_term / 48.0;
    if var <= 0.0 {
        return 1.0;
    }
    let z = (w - mean) / var.sqrt();
    (2.0 * normal_cdf(z)).min(1.0)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FriedmanResult {
    /// Mean rank of each method over datasets (1 = best).
    pub average_ranks: Vec<f64>,
    pub test: TestResult,
}

/// Friedman test on a methods × datasets matrix, larger values better.
pub fn friedman(values: &[Vec<f64>]) -> Result<FriedmanResult> {
    let k = values.len();
    if k < 2 {
        return Err(Error::Argument(format!("Friedman test needs at least 2 methods, got {k}")));
    }
    let n = values[0].len();
    if values.iter().any(|row| row.len() != n) {
        return Err(Error::Argument("methods have different dataset counts".into()));
    }
    if n < 2 {
        return Err(Error::Argument(format!("Friedman test needs at least 2 datasets, got {n}")));
    }
    for row in values {
        check_finite("values", row)?;
    }
    let mut sums = vec![0.0; k];
    for d in 0..n {
        let column: Vec<f64> = values.iter().map(|row| row[d]).collect();
        for (s, r) in sums.iter_mut().zip(rank_descending(&column)) {
            *s += r;
        }
    }
    let average_ranks: Vec<f64> = sums.iter().map(|s| s / n as f64).collect();
    let (kf, nf) = (k as f64, n as f64);
    let sum_sq: f64 = average_ranks.iter().map(|r| r * r).sum();
    let stat = (12.0 * nf / (kf * (kf + 1.0)) * (sum_sq - kf * (kf + 1.0) * (kf + 1.0) / 4.0)).max(0.0);
    Ok(FriedmanResult {
        average_ranks,
        test: TestResult {
            statistic: stat,
            p_value: chi_square_sf(stat, kf - 1.0).clamp(0.0, 1.0),
            n_effective: n,
        },
    })
}

/// Two-sided p-values for each method against `control` from Friedman
/// average ranks: `z = (R_i - R_c) / sqrt(k(k+1) / (6N))`. The control's own
/// entry is 1.
pub fn friedman_control_pvalues(average_ranks: &[f64], n_datasets: usize, control: usize) -> Result<Vec<f64>> {
    let k = average_ranks.len();
    if control >= k {
        return Err(Error::Argument(format!("control index {control} out of range for {k} methods")));
    }
    if n_datasets == 0 {
        return Err(Error::Argument("no datasets".into()));
    }
    let se = (k as f64 * (k as f64 + 1.0) / (6.0 * n_datasets as f64)).sqrt();
    Ok(average_ranks
        .iter()
        .enumerate()
        .map(|(i, r)| {
            if i == control {
                1.0
            } else {
                let z = (r - average_ranks[control]) / se;
                (2.0 * normal_cdf(-z.abs())).min(1.0)
            }
        })
        .collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HolmDecision {
    pub raw: f64,
    pub adjusted: f64,
    pub significant: bool,
}

/// Holm step-down adjustment. Output is in input order.
pub fn holm(p_values: &[f64], alpha: f64) -> Result<Vec<HolmDecision>> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::Argument(format!("alpha {alpha} outside (0, 1)")));
    }
    if p_values.iter().any(|p| !(0.0..=1.0).contains(p)) {
        return Err(Error::Argument("p-values must lie in [0, 1]".into()));
    }
    let m = p_values.len();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| p_values[a].total_cmp(&p_values[b]).then(a.cmp(&b)));
    let mut out = vec![
        HolmDecision {
            raw: 0.0,
            adjusted: 0.0,
            significant: false
        };
        m
    ];
    let mut running: f64 = 0.0;
    for (j, &i) in order.iter().enumerate() {
        let adj = ((m - j) as f64 * p_values[i]).min(1.0);
        running = running.max(adj);
        out[i] = HolmDecision {
            raw: p_values[i],
            adjusted: running,
            significant: running <= alpha,
        };
    }
    Ok(out)
}

/// Pearson correlation with a two-sided t-test; `statistic` is `r`.
pub fn pearson(x: &[f64], y: &[f64]) -> Result<TestResult> {
    if x.len() != y.len() {
        return Err(Error::Argument(format!("samples differ in length: {} vs {}", x.len(), y.len())));
    }
    let n = x.len();
    if n < 3 {
        return Err(Error::SampleTooSmall { got: n, needed: 3 });
    }
    check_finite("x", x)?;
    check_finite("y", y)?;
    let nf = n as f64;
    let mx = x.iter().sum::<f64>() / nf;
    let my = y.iter().sum::<f64>() / nf;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        sxy += (a - mx) * (b - my);
        sxx += (a - mx) * (a - mx);
        syy += (b - my) * (b - my);
    }
    if sxx == 0.0 || syy == 0.0 {
        return Err(Error::Undefined("correlation of a constant sample".into()));
    }
    let r = (sxy / (sxx.sqrt() * syy.sqrt())).clamp(-1.0, 1.0);
    let df = nf - 2.0;
    let p = if r.abs() >= 1.0 {
        0.0
    } else {
        let t = r * (df / (1.0 - r * r)).sqrt();
        student_t_two_sided(t, df).clamp(0.0, 1.0)
    };
    Ok(TestResult {
        statistic: r,
        p_value: p,
        n_effective: n,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct WinLossTie {
    pub wins: usize,
    pub losses: usize,
    pub ties: usize,
}

/// Counts entries where `a` beats, loses to, or ties `b`; `|a - b| <= tolerance`
/// is a tie.
pub fn win_loss_tie(a: &[f64], b: &[f64], tolerance: f64) -> Result<WinLossTie> {
    if a.len() != b.len() {
        return Err(Error::Argument(format!("samples differ in length: {} vs {}", a.len(), b.len())));
    }
    let mut out = WinLossTie::default();
    for (x, y) in a.iter().zip(b) {
        if (x - y).abs() <= tolerance {
            out.ties += 1;
        } else if x > y {
            out.wins += 1;
        } else {
            out.losses += 1;
        }
    }
    Ok(out)
}

/// Averaged metric per method and dataset with per-dataset ranks.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ComparisonTable {
    pub methods: Vec<String>,
    pub datasets: Vec<String>,
    /// `values[method][dataset]`.
    pub values: Vec<Vec<f64>>,
    /// Same shape; 1 = best on that dataset, ties averaged.
    pub ranks: Vec<Vec<f64>>,
}

impl ComparisonTable {
    pub fn new(methods: Vec<String>, datasets: Vec<String>, values: Vec<Vec<f64>>) -> Result<Self> {
        if values.len() != methods.len() || values.iter().any(|r| r.len() != datasets.len()) {
            return Err(Error::Argument("value matrix does not match methods × datasets".into()));
        }
        for row in &values {
            check_finite("values", row)?;
        }
        let mut ranks = vec![vec![0.0; datasets.len()]; methods.len()];
        for d in 0..datasets.len() {
            let column: Vec<f64> = values.iter().map(|r| r[d]).collect();
            for (m, r) in rank_descending(&column).into_iter().enumerate() {
                ranks[m][d] = r;
            }
        }
        Ok(Self {
            methods,
            datasets,
            values,
            ranks,
        })
    }

    pub fn average_ranks(&self) -> Vec<f64> {
        let n = self.datasets.len().max(1) as f64;
        self.ranks.iter().map(|r| r.iter().sum::<f64>() / n).collect()
    }

    pub fn friedman(&self) -> Result<FriedmanResult> {
        friedman(&self.values)
    }

    pub fn method_index(&self, name: &str) -> Option<usize> {
        self.methods.iter().position(|m| m == name)
    }
}
