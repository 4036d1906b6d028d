//! Model rankings, tie-aware Spearman correlation, and bootstrap stability
//! curves of the correlation as a function of benchmark size.

use std::collections::{BTreeMap, HashSet};

use rand::seq::index;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

pub const DEFAULT_ITERATIONS: usize = 100;

#[derive(Debug, Error, PartialEq)]
pub enum AnalysisError {
    #[error("duplicate model id {0:?} in ranking {1:?}")]
    DuplicateModel(String, String),
    #[error("model sets differ: only in A {only_a:?}, only in B {only_b:?}")]
    MismatchedModels {
        only_a: Vec<String>,
        only_b: Vec<String>,
    },
    #[error("need at least 2 models to correlate, got {0}")]
    TooFewModels(usize),
    #[error("ranks have zero variance; correlation is undefined")]
    ZeroVariance,
    #[error("subset size {size} exceeds the {available} available instances")]
    SubsetTooLarge { size: usize, available: usize },
    #[error("subset sizes must be positive and strictly increasing")]
    BadSizes,
    #[error("models disagree on instance count: {0}")]
    RaggedMatrix(String),
    #[error("every iteration at subset size {0} was degenerate")]
    AllDegenerate(usize),
    #[error("iterations must be positive")]
    NoIterations,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RankingTable {
    pub context: String,
    pub entries: Vec<(String, f64)>,
}

impl RankingTable {
    pub fn new(context: &str, entries: Vec<(String, f64)>) -> Result<Self, AnalysisError> {
        let mut seen = HashSet::new();
        for (id, _) in &entries {
            if !seen.insert(id.as_str()) {
                return Err(AnalysisError::DuplicateModel(id.clone(), context.to_string()));
            }
        }
        Ok(RankingTable {
            context: context.to_string(),
            entries,
        })
    }

    pub fn score(&self, model: &str) -> Option<f64> {
        self.entries.iter().find(|(m, _)| m == model).map(|e| e.1)
    }

    pub fn models(&self) -> impl Iterator<Item = &str> {
        self.entries.iter().map(|(m, _)| m.as_str())
    }

    /// Tie-averaged ranks aligned with `entries`.
    pub fn ranks(&self) -> Vec<f64> {
        rank_with_ties(&self.entries.iter().map(|e| e.1).collect::<Vec<_>>())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CorrelationResult {
    pub rho: f64,
    pub n: usize,
    /// Two-sided large-sample normal approximation, `z = rho * sqrt(n - 1)`.
    pub p_value: Option<f64>,
}

/// Ranks 1..n, ascending; tied values share the mean of their positions.
pub fn rank_with_ties(scores: &[f64]) -> Vec<f64> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]));
    let mut ranks = vec![0.0; scores.len()];
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && scores[order[j + 1]] == scores[order[i]] {
            j += 1;
        }
        // positions i..=j hold ranks i+1..=j+1
        let avg = (i + j) as f64 / 2.0 + 1.0;
        for &k in &order[i..=j] {
            ranks[k] = avg;
        }
        i = j + 1;
    }
    ranks
}

/// Pearson correlation; `None` when either side has zero variance.
pub fn pearson(x: &[f64], y: &[f64]) -> Option<f64> {
    assert_eq!(x.len(), y.len());
    let n = x.len() as f64;
    let mx = x.iter().sum::<f64>() / n;
    let my = y.iter().sum::<f64>() / n;
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for (a, b) in x.iter().zip(y) {
        let (dx, dy) = (a - mx, b - my);
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if sxx == 0.0 || syy == 0.0 {
        return None;
    }
    Some((sxy / (sxx * syy).sqrt()).clamp(-1.0, 1.0))
}

fn normal_two_sided_p(rho: f64, n: usize) -> Option<f64> {
    if n < 3 {
        return None;
    }
    let z = rho.abs() * ((n - 1) as f64).sqrt();
    Some(libm::erfc(z / std::f64::consts::SQRT_2))
}

/// Spearman's rho of two rankings matched by model id.
pub fn spearman(a: &RankingTable, b: &RankingTable) -> Result<CorrelationResult, AnalysisError> {
    let am: BTreeMap<&str, f64> = a.entries.iter().map(|(m, s)| (m.as_str(), *s)).collect();
    let bm: BTreeMap<&str, f64> = b.entries.iter().map(|(m, s)| (m.as_str(), *s)).collect();
    let only_a: Vec<String> = am.keys().filter(|k| !bm.contains_key(*k)).map(|k| k.to_string()).collect();
    let only_b: Vec<String> = bm.keys().filter(|k| !am.contains_key(*k)).map(|k| k.to_string()).collect();
    if !only_a.is_empty() || !only_b.is_empty() {
        return Err(AnalysisError::MismatchedModels { only_a, only_b });
    }
    let n = am.len();
    if n < 2 {
        return Err(AnalysisError::TooFewModels(n));
    }
    // BTreeMap iteration is by id, so the result does not depend on input order.
    let xs: Vec<f64> = am.values().copied().collect();
    let ys: Vec<f64> = bm.values().copied().collect();
    spearman_scores(&xs, &ys)
}

/// Spearman's rho of two aligned score vectors.
pub fn spearman_scores(xs: &[f64], ys: &[f64]) -> Result<CorrelationResult, AnalysisError> {
    let n = xs.len();
    if n < 2 {
        return Err(AnalysisError::TooFewModels(n));
    }
    let rho = pearson(&rank_with_ties(xs), &rank_with_ties(ys)).ok_or(AnalysisError::ZeroVariance)?;
    Ok(CorrelationResult {
        rho,
        n,
        p_value: normal_two_sided_p(rho, n),
    })
}

/// Per-model, per-instance correctness. `None` marks a failed instance, which
/// is left out of that model's accuracy.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorrectnessMatrix {
    pub models: Vec<String>,
    pub rows: Vec<Vec<Option<bool>>>,
}

impl CorrectnessMatrix {
    pub fn new(models: Vec<String>, rows: Vec<Vec<Option<bool>>>) -> Result<Self, AnalysisError> {
        if models.len() != rows.len() {
            return Err(AnalysisError::RaggedMatrix(format!(
                "{} models but {} rows",
                models.len(),
                rows.len()
            )));
        }
        if let Some(first) = rows.first() {
            if let Some((i, r)) = rows.iter().enumerate().find(|(_, r)| r.len() != first.len()) {
                return Err(AnalysisError::RaggedMatrix(format!(
                    "model {:?} has {} instances, expected {}",
                    models[i],
                    r.len(),
                    first.len()
                )));
            }
        }
        let mut seen = HashSet::new();
        for m in &models {
            if !seen.insert(m.as_str()) {
                return Err(AnalysisError::DuplicateModel(m.clone(), "matrix".into()));
            }
        }
        Ok(CorrectnessMatrix { models, rows })
    }

    pub fn instances(&self) -> usize {
        self.rows.first().map_or(0, Vec::len)
    }

    /// Accuracy of model `m` over the given instance indices.
    pub fn accuracy(&self, m: usize, subset: impl IntoIterator<Item = usize>) -> Option<f64> {
        let (mut ok, mut scored) = (0usize, 0usize);
        for i in subset {
            if let Some(c) = self.rows[m][i] {
                scored += 1;
                ok += c as usize;
            }
        }
        (scored > 0).then(|| ok as f64 / scored as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BootstrapOptions {
    pub iterations: usize,
    pub seed: u64,
    /// Classical resampling with replacement instead of subsampling.
    pub with_replacement: bool,
    /// Per-instance WiC correctness; when given, the WiC side is resampled
    /// too instead of staying fixed.
    pub wic_instances: Option<CorrectnessMatrix>,
}

impl Default for BootstrapOptions {
    fn default() -> Self {
        BootstrapOptions {
            iterations: DEFAULT_ITERATIONS,
            seed: 0,
            with_replacement: false,
            wic_instances: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurvePoint {
    pub subset_size: usize,
    pub rho_mean: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    pub used: usize,
    pub skipped: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BootstrapCurve {
    pub points: Vec<CurvePoint>,
    pub iterations: usize,
    pub seed: u64,
    pub with_replacement: bool,
    pub resampled_wic: bool,
}

impl BootstrapCurve {
    pub fn to_csv(&self) -> String {
        let mut out = String::from("subset_size,rho_mean,ci_low,ci_high,used,skipped\n");
        for p in &self.points {
            out.push_str(&format!(
                "{},{:.6},{:.6},{:.6},{},{}\n",
                p.subset_size, p.rho_mean, p.ci_low, p.ci_high, p.used, p.skipped
            ));
        }
        out
    }
}

/// Percentile with linear interpolation between order statistics
/// (`h = (n - 1) q`). `sorted` must be ascending and non-empty.
pub fn percentile(sorted: &[f64], q: f64) -> f64 {
    let h = (sorted.len() - 1) as f64 * q;
    let lo = h.floor() as usize;
    let hi = h.ceil() as usize;
    sorted[lo] + (h - lo as f64) * (sorted[hi] - sorted[lo])
}

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// Seed for one (size, iteration) cell; independent of execution order.
pub fn iteration_seed(seed: u64, size: usize, iteration: usize) -> u64 {
    splitmix64(splitmix64(splitmix64(seed) ^ size as u64) ^ iteration as u64)
}

fn draw<R: Rng>(rng: &mut R, n: usize, m: usize, with_replacement: bool) -> Vec<usize> {
    if with_replacement {
        (0..m).map(|_| rng.random_range(0..n)).collect()
    } else {
        index::sample(rng, n, m).into_vec()
    }
}

/// One rho per (size, iteration); `None` for degenerate draws.
fn iteration_rho(
    matrix: &CorrectnessMatrix,
    wic: &[f64],
    size: usize,
    iteration: usize,
    opts: &BootstrapOptions,
) -> Option<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(iteration_seed(opts.seed, size, iteration));
    let subset = draw(&mut rng, matrix.instances(), size, opts.with_replacement);
    let sb: Option<Vec<f64>> = (0..matrix.models.len())
        .map(|m| matrix.accuracy(m, subset.iter().copied()))
        .collect();
    let wic_scores: Option<Vec<f64>> = match &opts.wic_instances {
        None => Some(wic.to_vec()),
        Some(w) => {
            let n = w.instances();
            let ws = draw(&mut rng, n, size.min(n), opts.with_replacement);
            (0..w.models.len()).map(|m| w.accuracy(m, ws.iter().copied())).collect()
        }
    };
    spearman_scores(&sb?, &wic_scores?).ok().map(|c| c.rho)
}

/// Correlation of per-subset SemBench accuracies against the WiC ranking, for
/// each subset size, summarised as mean and central 95% interval.
pub fn bootstrap_curve(
    matrix: &CorrectnessMatrix,
    wic_ranking: &RankingTable,
    sizes: &[usize],
    opts: &BootstrapOptions,
) -> Result<BootstrapCurve, AnalysisError> {
    if opts.iterations == 0 {
        return Err(AnalysisError::NoIterations);
    }
    if sizes.is_empty() || sizes[0] == 0 || sizes.windows(2).any(|w| w[0] >= w[1]) {
        return Err(AnalysisError::BadSizes);
    }
    let n = matrix.instances();
    if let Some(&size) = sizes.iter().find(|&&s| s > n) {
        return Err(AnalysisError::SubsetTooLarge { size, available: n });
    }
    // Align the WiC side with the matrix's model order.
    let sb_ids: Vec<(String, f64)> = matrix.models.iter().map(|m| (m.clone(), 0.0)).collect();
    spearman_precheck(&RankingTable::new("sembench", sb_ids)?, wic_ranking)?;
    let wic: Vec<f64> = matrix
        .models
        .iter()
        .map(|m| wic_ranking.score(m).expect("checked above"))
        .collect();
    if let Some(w) = &opts.wic_instances {
        if w.models != matrix.models {
            return Err(AnalysisError::RaggedMatrix(
                "WiC instance matrix must list the same models in the same order".into(),
            ));
        }
    }

    let mut points = Vec::with_capacity(sizes.len());
    for &size in sizes {
        let rhos: Vec<Option<f64>> = (0..opts.iterations)
            .into_par_iter()
            .map(|it| iteration_rho(matrix, &wic, size, it, opts))
            .collect();
        let mut ok: Vec<f64> = rhos.iter().flatten().copied().collect();
        if ok.is_empty() {
            return Err(AnalysisError::AllDegenerate(size));
        }
        // Shifted by the first value so a constant sample averages to itself exactly.
        let base = ok[0];
        let mean = base + ok.iter().map(|r| r - base).sum::<f64>() / ok.len() as f64;
        ok.sort_by(f64::total_cmp);
        points.push(CurvePoint {
            subset_size: size,
            rho_mean: mean,
            ci_low: percentile(&ok, 0.025),
            ci_high: percentile(&ok, 0.975),
            used: ok.len(),
            skipped: opts.iterations - ok.len(),
        });
    }
    Ok(BootstrapCurve {
        points,
        iterations: opts.iterations,
        seed: opts.seed,
        with_replacement: opts.with_replacement,
        resampled_wic: opts.wic_instances.is_some(),
    })
}

fn spearman_precheck(a: &RankingTable, b: &RankingTable) -> Result<(), AnalysisError> {
    let am: HashSet<&str> = a.models().collect();
    let bm: HashSet<&str> = b.models().collect();
    if am != bm {
        let mut only_a: Vec<String> = am.difference(&bm).map(|s| s.to_string()).collect();
        let mut only_b: Vec<String> = bm.difference(&am).map(|s| s.to_string()).collect();
        only_a.sort();
        only_b.sort();
        return Err(AnalysisError::MismatchedModels { only_a, only_b });
    }
    if am.len() < 2 {
        return Err(AnalysisError::TooFewModels(am.len()));
    }
    Ok(())
}

/// Evenly spaced sizes `step, 2*step, ...` up to `n`, with `n` itself appended
/// when it is not a multiple of `step`.
pub fn stepped_sizes(start: usize, step: usize, n: usize) -> Vec<usize> {
    let mut sizes: Vec<usize> = (start..=n).step_by(step.max(1)).collect();
    if sizes.last() != Some(&n) && n >= start {
        sizes.push(n);
    }
    sizes
}

#[cfg(test)]
mod tests {
    use super::*;

    fn table(ctx: &str, scores: &[f64]) -> RankingTable {
        RankingTable::new(
            ctx,
            scores
                .iter()
                .enumerate()
                .map(|(i, s)| (format!("m{i}"), *s))
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn ranks() {
        assert_eq!(rank_with_ties(&[10.0, 20.0, 30.0]), [1.0, 2.0, 3.0]);
        assert_eq!(rank_with_ties(&[10.0, 20.0, 20.0]), [1.0, 2.5, 2.5]);
        assert_eq!(rank_with_ties(&[5.0, 5.0, 5.0]), [2.0, 2.0, 2.0]);
        assert_eq!(rank_with_ties(&[3.0, 1.0, 2.0, 1.0]), [4.0, 1.5, 3.0, 1.5]);
    }

    #[test]
    fn identity_and_reversal() {
        let a = table("a", &[1.0, 2.0, 3.0, 4.0]);
        assert_eq!(spearman(&a, &a).unwrap().rho, 1.0);
        let b = table("b", &[4.0, 3.0, 2.0, 1.0]);
        assert_eq!(spearman(&a, &b).unwrap().rho, -1.0);
    }

    #[test]
    fn matched_by_id_not_position() {
        let a = RankingTable::new("a", vec![("x".into(), 1.0), ("y".into(), 2.0), ("z".into(), 3.0)]).unwrap();
        let b = RankingTable::new("b", vec![("z".into(), 30.0), ("x".into(), 10.0), ("y".into(), 20.0)]).unwrap();
        assert_eq!(spearman(&a, &b).unwrap().rho, 1.0);
    }

    #[test]
    fn errors() {
        let a = table("a", &[1.0, 2.0]);
        let c = RankingTable::new("c", vec![("m0".into(), 1.0), ("q".into(), 2.0)]).unwrap();
        match spearman(&a, &c).unwrap_err() {
            AnalysisError::MismatchedModels { only_a, only_b } => {
                assert_eq!(only_a, ["m1"]);
                assert_eq!(only_b, ["q"]);
            }
            e => panic!("{e}"),
        }
        let one = table("one", &[1.0]);
        assert_eq!(spearman(&one, &one).unwrap_err(), AnalysisError::TooFewModels(1));
        let flat = table("flat", &[1.0, 1.0]);
        assert_eq!(spearman(&a, &flat).unwrap_err(), AnalysisError::ZeroVariance);
        assert!(RankingTable::new("d", vec![("x".into(), 1.0), ("x".into(), 2.0)]).is_err());
    }

    #[test]
    fn english_columns() {
        let sb = [70.70, 88.80, 67.00, 87.90, 81.80, 90.90, 86.00, 93.20, 86.90, 93.90, 93.10, 92.70];
        let wic = [60.16, 65.16, 57.36, 65.80, 62.51, 68.25, 64.77, 68.11, 66.83, 70.61, 68.69, 68.65];
        let r = spearman(&table("sb", &sb), &table("wic", &wic)).unwrap();
        // 1 - 6 * 20 / (12 * 143)
        assert!((r.rho - (1.0 - 120.0 / 1716.0)).abs() < 1e-12);
        assert!((r.rho - 0.930).abs() < 0.001);
        assert_eq!(r.n, 12);
        assert!(r.p_value.unwrap() < 0.05);
    }

    #[test]
    fn percentile_interpolates() {
        let v = [1.0, 2.0, 3.0, 4.0, 5.0];
        assert_eq!(percentile(&v, 0.0), 1.0);
        assert_eq!(percentile(&v, 1.0), 5.0);
        assert_eq!(percentile(&v, 0.5), 3.0);
        assert!((percentile(&v, 0.975) - 4.9).abs() < 1e-12);
        assert!((percentile(&v, 0.025) - 1.1).abs() < 1e-12);
        assert_eq!(percentile(&[7.0], 0.3), 7.0);
    }

    fn two_model_fixture(n: usize) -> (CorrectnessMatrix, RankingTable) {
        let m = CorrectnessMatrix::new(
            vec!["good".into(), "bad".into()],
            vec![vec![Some(true); n], vec![Some(false); n]],
        )
        .unwrap();
        let wic = RankingTable::new("wic", vec![("good".into(), 0.7), ("bad".into(), 0.5)]).unwrap();
        (m, wic)
    }

    #[test]
    fn deterministic_fixture_is_flat() {
        let (m, wic) = two_model_fixture(200);
        let sizes = stepped_sizes(50, 50, 200);
        assert_eq!(sizes, [50, 100, 150, 200]);
        let curve = bootstrap_curve(&m, &wic, &sizes, &BootstrapOptions::default()).unwrap();
        assert_eq!(curve.iterations, 100);
        for p in &curve.points {
            assert_eq!((p.rho_mean, p.ci_low, p.ci_high), (1.0, 1.0, 1.0));
            assert_eq!((p.used, p.skipped), (100, 0));
        }
    }

    #[test]
    fn full_size_uses_every_instance() {
        let rows = vec![
            (0..40).map(|i| Some(i % 2 == 0)).collect::<Vec<_>>(),
            (0..40).map(|i| Some(i % 3 == 0)).collect(),
            (0..40).map(|i| Some(i % 5 != 0)).collect(),
        ];
        let m = CorrectnessMatrix::new(vec!["a".into(), "b".into(), "c".into()], rows).unwrap();
        let wic = RankingTable::new("wic", vec![("a".into(), 0.6), ("b".into(), 0.5), ("c".into(), 0.4)]).unwrap();
        let full: Vec<f64> = (0..3).map(|k| m.accuracy(k, 0..40).unwrap()).collect();
        let want = spearman_scores(&full, &[0.6, 0.5, 0.4]).unwrap().rho;
        let curve = bootstrap_curve(&m, &wic, &[10, 40], &BootstrapOptions::default()).unwrap();
        let last = &curve.points[1];
        assert_eq!((last.rho_mean, last.ci_low, last.ci_high), (want, want, want));
    }

    #[test]
    fn same_seed_same_curve() {
        let rows: Vec<Vec<Option<bool>>> = (0..4)
            .map(|k| (0..100).map(|i| Some((i * 7 + k * 13) % (k + 2) != 0)).collect())
            .collect();
        let m = CorrectnessMatrix::new((0..4).map(|k| format!("m{k}")).collect(), rows).unwrap();
        let wic = table("wic", &[0.1, 0.2, 0.3, 0.4]);
        let opts = BootstrapOptions {
            seed: 5,
            ..Default::default()
        };
        let a = bootstrap_curve(&m, &wic, &[20, 50, 100], &opts).unwrap();
        let b = bootstrap_curve(&m, &wic, &[20, 50, 100], &opts).unwrap();
        assert_eq!(a.to_csv(), b.to_csv());
        let c = bootstrap_curve(
            &m,
            &wic,
            &[20, 50, 100],
            &BootstrapOptions {
                seed: 6,
                ..Default::default()
            },
        )
        .unwrap();
        assert_ne!(a.points[0], c.points[0]);
    }

    #[test]
    fn bootstrap_errors() {
        let (m, wic) = two_model_fixture(10);
        let o = BootstrapOptions::default();
        assert!(matches!(
            bootstrap_curve(&m, &wic, &[11], &o),
            Err(AnalysisError::SubsetTooLarge { size: 11, available: 10 })
        ));
        assert_eq!(bootstrap_curve(&m, &wic, &[5, 5], &o).unwrap_err(), AnalysisError::BadSizes);
        assert_eq!(bootstrap_curve(&m, &wic, &[], &o).unwrap_err(), AnalysisError::BadSizes);
        let flat = CorrectnessMatrix::new(
            vec!["good".into(), "bad".into()],
            vec![vec![Some(true); 10], vec![Some(true); 10]],
        )
        .unwrap();
        assert_eq!(
            bootstrap_curve(&flat, &wic, &[5], &o).unwrap_err(),
            AnalysisError::AllDegenerate(5)
        );
        let other = RankingTable::new("wic", vec![("good".into(), 0.7), ("x".into(), 0.5)]).unwrap();
        assert!(matches!(
            bootstrap_curve(&m, &other, &[5], &o),
            Err(AnalysisError::MismatchedModels { .. })
        ));
        assert!(CorrectnessMatrix::new(vec!["a".into()], vec![vec![], vec![]]).is_err());
    }

    #[test]
    fn with_replacement_and_resampled_wic() {
        let (m, wic) = two_model_fixture(30);
        let opts = BootstrapOptions {
            with_replacement: true,
            wic_instances: Some(m.clone()),
            ..Default::default()
        };
        let c = bootstrap_curve(&m, &wic, &[10, 30], &opts).unwrap();
        assert!(c.resampled_wic && c.with_replacement);
        assert!(c.points.iter().all(|p| p.rho_mean == 1.0));
    }

    #[test]
    fn failed_instances_leave_accuracy_denominator() {
        let m = CorrectnessMatrix::new(vec!["a".into()], vec![vec![Some(true), None, Some(false), Some(true)]]).unwrap();
        assert_eq!(m.accuracy(0, 0..4), Some(2.0 / 3.0));
        assert_eq!(m.accuracy(0, [1]), None);
    }

    #[test]
    fn csv_shape() {
        let (m, wic) = two_model_fixture(100);
        let c = bootstrap_curve(&m, &wic, &[50, 100], &BootstrapOptions::default()).unwrap();
        let csv = c.to_csv();
        let lines: Vec<_> = csv.lines().collect();
        assert_eq!(lines[0], "subset_size,rho_mean,ci_low,ci_high,used,skipped");
        assert_eq!(lines[1], "50,1.000000,1.000000,1.000000,100,0");
        assert_eq!(lines.len(), 3);
    }
}
