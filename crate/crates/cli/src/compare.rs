//! Cross-dataset comparison of averaged benchmark results: pairwise
//! Wilcoxon tests, Friedman ranks with Holm-corrected control comparisons,
//! and rank/taxonomy correlations.

use std::collections::BTreeMap;

use csmoute_core::stats::{friedman_control_pvalues, holm, pearson, wilcoxon_signed_rank, win_loss_tie};
use csmoute_core::taxonomy::TypeProportions;
use csmoute_core::{ComparisonTable, Metric, MinorityType};
use log::warn;
use serde::{Deserialize, Serialize};

use crate::benchmark::AverageRow;
use crate::config::{CompareConfig, METHODS};

/// Pairwise comparison of two methods over datasets.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PairRow {
    pub classifier: String,
    pub metric: Metric,
    pub challenger: String,
    pub reference: String,
    pub n_datasets: usize,
    pub wins: usize,
    pub losses: usize,
    pub ties: usize,
    pub statistic: Option<f64>,
    pub p_value: Option<f64>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FriedmanRow {
    pub classifier: String,
    pub metric: Metric,
    pub n_methods: usize,
    pub n_datasets: usize,
    pub statistic: Option<f64>,
    pub p_value: Option<f64>,
}

/// Average rank of a method, compared with the control.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankRow {
    pub classifier: String,
    pub metric: Metric,
    pub method: String,
    pub average_rank: f64,
    pub p_value: Option<f64>,
    pub adjusted_p: Option<f64>,
    pub significant: bool,
    /// "worse" or "better" than the control when significant, else empty.
    pub vs_control: String,
}

/// Control method against one other method.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ControlWltRow {
    pub classifier: String,
    pub metric: Metric,
    pub control: String,
    pub method: String,
    pub control_wins: usize,
    pub control_losses: usize,
    pub ties: usize,
}

/// Correlation between a method's per-dataset rank and the share of one
/// minority type.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrelationRow {
    pub classifier: String,
    pub metric: Metric,
    pub method: String,
    pub minority_type: MinorityType,
    pub n_datasets: usize,
    pub r: Option<f64>,
    pub p_value: Option<f64>,
    pub significant: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct Tables {
    pub pairs: Vec<PairRow>,
    pub friedman: Vec<FriedmanRow>,
    pub ranks: Vec<RankRow>,
    pub control_wlt: Vec<ControlWltRow>,
    pub correlations: Vec<CorrelationRow>,
}

/// Orders method names: known methods in canonical order, then the rest
/// alphabetically.
pub fn method_order(names: impl IntoIterator<Item = String>) -> Vec<String> {
    let mut v: Vec<String> = names.into_iter().collect();
    v.sort_by_key(|m| (METHODS.iter().position(|k| k == m).unwrap_or(METHODS.len()), m.clone()));
    v.dedup();
    v
}

type Group = BTreeMap<String, BTreeMap<String, f64>>;

/// `(classifier, metric) -> method -> dataset -> value`, skipping undefined
/// values.
fn group(averages: &[AverageRow]) -> BTreeMap<(String, &'static str), (Metric, Group)> {
    let mut out: BTreeMap<(String, &'static str), (Metric, Group)> = BTreeMap::new();
    for row in averages {
        let Some(v) = row.value else { continue };
        out.entry((row.classifier.clone(), row.metric.name()))
            .or_insert_with(|| (row.metric, BTreeMap::new()))
            .1
            .entry(row.method.clone())
            .or_default()
            .insert(row.dataset.clone(), v);
    }
    out
}

/// Datasets with a value for every listed method.
fn common_datasets(g: &Group, methods: &[String]) -> Vec<String> {
    let Some(first) = methods.first().and_then(|m| g.get(m)) else {
        return Vec::new();
    };
    first
        .keys()
        .filter(|d| methods.iter().all(|m| g.get(m).is_some_and(|v| v.contains_key(*d))))
        .cloned()
        .collect()
}

fn column(g: &Group, method: &str, datasets: &[String]) -> Vec<f64> {
    datasets.iter().map(|d| g[method][d]).collect()
}

/// Pearson correlation of `ranks` with each type share, in type order.
pub fn correlation_rows(
    classifier: &str,
    metric: Metric,
    method: &str,
    ranks: &[f64],
    proportions: &[TypeProportions],
    alpha: f64,
) -> Vec<CorrelationRow> {
    MinorityType::ALL
        .iter()
        .map(|&t| {
            let share: Vec<f64> = proportions.iter().map(|p| p.get(t)).collect();
            let (r, p) = match pearson(ranks, &share) {
                Ok(res) => (Some(res.statistic), Some(res.p_value)),
                Err(e) => {
                    warn!("{classifier}/{metric}: no correlation for {t}: {e}");
                    (None, None)
                }
            };
            CorrelationRow {
                classifier: classifier.to_string(),
                metric,
                method: method.to_string(),
                minority_type: t,
                n_datasets: ranks.len(),
                r,
                p_value: p,
                significant: p.is_some_and(|p| p <= alpha),
            }
        })
        .collect()
}

/// Builds every comparison table. `taxonomy` maps dataset names to type
/// shares; datasets missing from it are left out of the correlations.
pub fn compare(averages: &[AverageRow], taxonomy: &BTreeMap<String, TypeProportions>, cfg: &CompareConfig) -> Tables {
    let mut t = Tables::default();
    for ((classifier, _), (metric, g)) in group(averages) {
        for [a, b] in &cfg.pairs {
            if !g.contains_key(a) || !g.contains_key(b) {
                warn!("{classifier}/{metric}: pair {a} vs {b} has no results");
                continue;
            }
            let pair = [a.clone(), b.clone()];
            let ds = common_datasets(&g, &pair);
            let (va, vb) = (column(&g, a, &ds), column(&g, b, &ds));
            let wlt = win_loss_tie(&va, &vb, cfg.tie_tolerance).expect("equal lengths");
            let (statistic, p_value, note) = match wilcoxon_signed_rank(&va, &vb) {
                Ok(r) => (Some(r.statistic), Some(r.p_value), String::new()),
                Err(e) => (None, None, e.to_string()),
            };
            t.pairs.push(PairRow {
                classifier: classifier.clone(),
                metric,
                challenger: a.clone(),
                reference: b.clone(),
                n_datasets: ds.len(),
                wins: wlt.wins,
                losses: wlt.losses,
                ties: wlt.ties,
                statistic,
                p_value,
                note,
            });
        }

        let methods = method_order(g.keys().cloned());
        let ds = common_datasets(&g, &methods);
        if methods.len() < 2 || ds.is_empty() {
            continue;
        }
        let values: Vec<Vec<f64>> = methods.iter().map(|m| column(&g, m, &ds)).collect();
        let table = match ComparisonTable::new(methods.clone(), ds.clone(), values) {
            Ok(t) => t,
            Err(e) => {
                warn!("{classifier}/{metric}: {e}");
                continue;
            }
        };
        let avg = table.average_ranks();
        let fr = table.friedman().ok();
        t.friedman.push(FriedmanRow {
            classifier: classifier.clone(),
            metric,
            n_methods: methods.len(),
            n_datasets: ds.len(),
            statistic: fr.as_ref().map(|f| f.test.statistic),
            p_value: fr.as_ref().map(|f| f.test.p_value),
        });

        let control = table.method_index(&cfg.control);
        let mut raw = vec![None; methods.len()];
        let mut adjusted = vec![None; methods.len()];
        let mut significant = vec![false; methods.len()];
        if let Some(c) = control {
            if let Ok(p) = friedman_control_pvalues(&avg, ds.len(), c) {
                let others: Vec<usize> = (0..methods.len()).filter(|&i| i != c).collect();
                let ps: Vec<f64> = others.iter().map(|&i| p[i]).collect();
                if let Ok(h) = holm(&ps, cfg.rank_alpha) {
                    for (&i, d) in others.iter().zip(h) {
                        raw[i] = Some(d.raw);
                        adjusted[i] = Some(d.adjusted);
                        significant[i] = d.significant;
                    }
                }
            }
            for (i, m) in methods.iter().enumerate() {
                if i == c {
                    continue;
                }
                let wlt = win_loss_tie(&table.values[c], &table.values[i], cfg.tie_tolerance).expect("equal lengths");
                t.control_wlt.push(ControlWltRow {
                    classifier: classifier.clone(),
                    metric,
                    control: cfg.control.clone(),
                    method: m.clone(),
                    control_wins: wlt.wins,
                    control_losses: wlt.losses,
                    ties: wlt.ties,
                });
            }
            let with_tax: Vec<usize> = (0..ds.len()).filter(|&d| taxonomy.contains_key(&ds[d])).collect();
            let ranks: Vec<f64> = with_tax.iter().map(|&d| table.ranks[c][d]).collect();
            let props: Vec<TypeProportions> = with_tax.iter().map(|&d| taxonomy[&ds[d]]).collect();
            t.correlations.extend(correlation_rows(
                &classifier,
                metric,
                &cfg.control,
                &ranks,
                &props,
                cfg.correlation_alpha,
            ));
        } else {
            warn!("{classifier}/{metric}: control '{}' has no results", cfg.control);
        }
        for (i, m) in methods.iter().enumerate() {
            let vs_control = match control {
                Some(c) if significant[i] && avg[i] > avg[c] => "worse",
                Some(c) if significant[i] && avg[i] < avg[c] => "better",
                _ => "",
            };
            t.ranks.push(RankRow {
                classifier: classifier.clone(),
                metric,
                method: m.clone(),
                average_rank: avg[i],
                p_value: raw[i],
                adjusted_p: adjusted[i],
                significant: significant[i],
                vs_control: vs_control.to_string(),
            });
        }
    }
    t
}
