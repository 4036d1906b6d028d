use std::path::{Path, PathBuf};

use anyhow::{anyhow, Context};
use sembench_core::analysis::{stepped_sizes, AnalysisError};
use sembench_core::benchgen::BenchError;
use sembench_core::lexicon::LexiconError;
use sembench_core::prompting::{load_exemplars, TemplateSet};
use sembench_core::runner::{import_wic, load_wic_jsonl, parse_jsonl, Partial, RunError, WicPairResult};
use sembench_core::{
    bootstrap_curve, build_bench_sets, compute_stats, spearman, BenchParams, BenchSet, BootstrapOptions,
    ChatParams, CorrectnessMatrix, Difficulty, FewShotExemplar, Harness, InstanceResult, Lexicon,
    Prompter, RankingTable, Summary, Variant, WicResult,
};
use serde::{Deserialize, Serialize};

use crate::backends::{self, MockContext};
use crate::config::{require_exists, RunConfig};
use crate::manifest::{self, Recorder};
use crate::{CliError, CliResult, Common, InputContext};

fn parse_difficulties(values: &[String]) -> anyhow::Result<Vec<Difficulty>> {
    let mut out = Vec::new();
    for v in values {
        if v.eq_ignore_ascii_case("all") {
            out.extend(Difficulty::ALL);
        } else {
            out.push(v.parse::<Difficulty>().map_err(|e| anyhow!(e))?);
        }
    }
    let mut seen = Vec::new();
    out.retain(|d| {
        let fresh = !seen.contains(d);
        seen.push(*d);
        fresh
    });
    Ok(out)
}

/// Config file, then flags.
pub fn resolve(c: &Common) -> CliResult<RunConfig> {
    let mut cfg = match &c.config {
        Some(path) => {
            require_exists(path).input()?;
            RunConfig::load(path).input()?
        }
        None => RunConfig::default(),
    };
    if let Some(v) = c.seed {
        cfg.bench.seed = v;
    }
    if !c.difficulty.is_empty() {
        cfg.bench.difficulty = parse_difficulties(&c.difficulty).input()?;
    }
    if let Some(v) = c.shots {
        cfg.shots = v;
    }
    if let Some(v) = &c.model {
        cfg.chat.model = Some(v.clone());
    }
    if let Some(v) = c.threshold {
        cfg.threshold = v;
    }
    if c.mock {
        cfg.mock = true;
    }
    if let Some(v) = &c.out {
        cfg.out = v.clone();
    }
    if let Some(v) = &c.lexicon {
        cfg.lexicon = Some(v.clone());
    }
    if let Some(v) = &c.language {
        cfg.language = v.clone();
    }
    if let Some(v) = &c.exemplars {
        cfg.exemplars = Some(v.clone());
    }
    if let Some(v) = &c.templates {
        cfg.templates = Some(v.clone());
    }
    if let Some(v) = c.concurrency {
        cfg.concurrency = Some(v);
    }
    if let Some(v) = &c.cache_dir {
        cfg.cache_dir = Some(v.clone());
    }
    cfg.validate().input()?;
    Ok(cfg)
}

fn with_pool<T: Send>(cfg: &RunConfig, f: impl FnOnce() -> T + Send) -> CliResult<T> {
    match cfg.concurrency {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .context("cannot start worker pool")?;
            Ok(pool.install(f))
        }
    }
}

fn load_lexicon(cfg: &RunConfig, rec: &mut Recorder) -> CliResult<Lexicon> {
    let path = cfg
        .lexicon
        .as_ref()
        .ok_or_else(|| CliError::Input(anyhow!("no lexicon given: pass --lexicon or set `lexicon` in the config")))?;
    let lex = Lexicon::load(&cfg.language, path).map_err(|e| match e {
        LexiconError::Io { .. } | LexiconError::Parse { .. } | LexiconError::Invalid { .. } => {
            CliError::Input(anyhow!(e).context(format!("cannot load lexicon {}", path.display())))
        }
        other => CliError::Input(anyhow!(other)),
    })?;
    rec.input(path)?;
    rec.lexicon_digest(&lex.source_digest);
    Ok(lex)
}

fn prompter(cfg: &RunConfig, rec: &mut Recorder) -> CliResult<Prompter> {
    let p = Prompter::new(&cfg.language);
    Ok(match &cfg.templates {
        None => p,
        Some(dir) => {
            let set = TemplateSet::from_dir(dir).input()?;
            for name in ["example_system", "example_user", "definition_system", "definition_user"] {
                rec.input(&dir.join(format!("{name}.txt")))?;
            }
            p.with_templates(set)
        }
    })
}

fn exemplars(cfg: &RunConfig, rec: &mut Recorder) -> CliResult<Vec<FewShotExemplar>> {
    match &cfg.exemplars {
        Some(path) => {
            let ex = load_exemplars(path).input()?;
            rec.input(path)?;
            Ok(ex)
        }
        None if cfg.shots > 0 => Err(CliError::Input(anyhow!(
            "{} shots requested but no exemplars given (--exemplars)",
            cfg.shots
        ))),
        None => Ok(Vec::new()),
    }
}

fn model_name(cfg: &RunConfig) -> CliResult<String> {
    cfg.chat
        .model
        .clone()
        .ok_or_else(|| CliError::Input(anyhow!("no model given: pass --model or set [chat] model")))
}

fn pct(x: f64) -> String {
    format!("{:.2}%", 100.0 * x)
}

pub fn lexicon_stats(c: &Common) -> CliResult<()> {
    let cfg = resolve(c)?;
    let mut rec = Recorder::new("lexicon-stats", &cfg, &cfg.out);
    rec.stage("stats");
    let lex = load_lexicon(&cfg, &mut rec)?;
    let stats = compute_stats(&lex).input()?;
    let table = stats.render_table(&cfg.language);
    rec.write("stats.txt", &table)?;
    rec.write_json("stats.json", &stats)?;
    rec.finish()?;
    print!("{table}");
    Ok(())
}

pub fn build(c: &Common, n: Option<usize>, allow_missing_examples: bool) -> CliResult<()> {
    let mut cfg = resolve(c)?;
    if let Some(n) = n {
        cfg.bench.n = n;
    }
    if allow_missing_examples {
        cfg.bench.require_examples = false;
    }
    let mut rec = Recorder::new("build", &cfg, &cfg.out);
    rec.stage("load");
    let lex = load_lexicon(&cfg, &mut rec)?;
    let encoder = backends::embedder(&cfg).input()?;
    rec.stage("build");
    let params = BenchParams {
        n: cfg.bench.n,
        seed: cfg.bench.seed,
        require_examples: cfg.bench.require_examples,
    };
    let sets = with_pool(&cfg, || build_bench_sets(&lex, &params, &cfg.bench.difficulty, encoder.as_ref()))?
        .map_err(|e| match e {
            BenchError::Model(m) => CliError::Runtime(anyhow!(m)),
            other => CliError::Input(anyhow!(other)),
        })?;
    rec.stage("write");
    let mut lines = Vec::new();
    for set in &sets {
        let name = format!("bench.{}.jsonl", set.manifest.difficulty.as_str());
        rec.write(&name, &set.to_jsonl())?;
        lines.push(format!("{name}: {} instances, digest {}", set.instances.len(), set.digest()));
    }
    rec.extra(
        "bench_digests",
        serde_json::json!(sets
            .iter()
            .map(|s| (s.manifest.difficulty.as_str(), s.digest()))
            .collect::<std::collections::BTreeMap<_, _>>()),
    );
    rec.finish()?;
    println!("{}", lines.join("\n"));
    Ok(())
}

fn run_summary_text(s: &Summary, partial: bool) -> String {
    let mut out = String::new();
    let mut row = |k: &str, v: String| out.push_str(&format!("{k:<12} {v}\n"));
    row("model", s.model.clone());
    if let Some(v) = s.variant {
        row("variant", v.to_string());
    }
    if let Some(d) = s.difficulty {
        row("difficulty", d.as_str().to_string());
    }
    if let Some(t) = s.threshold {
        row("threshold", t.to_string());
    }
    row("shots", s.shots.to_string());
    row("items", format!("{} (scored {}, failed {})", s.n, s.scored, s.failed));
    row("accuracy", pct(s.accuracy));
    if let Some(r) = s.word_occurrence_rate {
        row("word in ex.", pct(r));
    }
    if partial {
        row("status", "PARTIAL: failure rate above threshold".into());
    }
    out
}

fn write_run(rec: &mut Recorder, results: &str, summary: &Summary, partial: bool) -> anyhow::Result<String> {
    let text = run_summary_text(summary, partial);
    rec.write("results.jsonl", results)?;
    rec.write_json("summary.json", summary)?;
    rec.write("summary.txt", &text)?;
    Ok(text)
}

fn partial_message(failed: usize, total: usize, max_rate: f64, out: &Path) -> String {
    format!(
        "{failed} of {total} items failed, above the allowed rate {max_rate}; partial results written to {}",
        out.display()
    )
}

pub fn run(c: &Common, bench_path: &Path) -> CliResult<()> {
    let cfg = resolve(c)?;
    let variant = c.variant.unwrap_or(Variant::SbDef);
    let mut rec = Recorder::new("run", &cfg, &cfg.out);
    rec.extra("variant", serde_json::json!(variant));
    rec.stage("load");
    let lex = load_lexicon(&cfg, &mut rec)?;
    let set = BenchSet::load(bench_path).input()?;
    rec.input(bench_path)?;
    set.check_against(&lex).input()?;
    rec.bench_digest(&set.digest());
    let prompter = prompter(&cfg, &mut rec)?;
    let exemplars = exemplars(&cfg, &mut rec)?;
    let model = model_name(&cfg)?;
    let chat = backends::chat(&cfg, &model, &prompter, MockContext::Bench(&lex, &set)).input()?;
    let embedder = backends::embedder(&cfg).input()?;
    let harness = Harness {
        lexicon: &lex,
        prompter: &prompter,
        chat: chat.as_ref(),
        embedder: embedder.as_ref(),
        params: ChatParams::greedy(&model),
        exemplars: &exemplars,
        max_failure_rate: cfg.max_failure_rate,
    };
    rec.stage("evaluate");
    let outcome = with_pool(&cfg, || harness.run_bench(&set, variant, cfg.shots))?;
    rec.stage("write");
    let (run, failure) = match outcome {
        Ok(run) => (run, None),
        Err(RunError::TooManyFailures {
            failed,
            total,
            max_rate,
            partial,
        }) => match *partial {
            Partial::Bench(run) => (run, Some(partial_message(failed, total, max_rate, &cfg.out))),
            Partial::Wic(_) => unreachable!("bench runs return bench partials"),
        },
        Err(e @ (RunError::MissingExample { .. } | RunError::NotEnoughExemplars { .. } | RunError::Prompt(_))) => {
            return Err(CliError::Input(anyhow!(e)))
        }
        Err(e) => return Err(CliError::Runtime(anyhow!(e))),
    };
    if failure.is_some() {
        rec.partial();
    }
    let text = write_run(&mut rec, &run.results_jsonl(), &run.summary(), failure.is_some())?;
    rec.finish()?;
    print!("{text}");
    match failure {
        Some(msg) => Err(CliError::Partial(anyhow!(msg))),
        None => Ok(()),
    }
}

pub fn wic(c: &Common, jsonl: Option<&Path>, original: Option<(PathBuf, PathBuf)>) -> CliResult<()> {
    let cfg = resolve(c)?;
    let mut rec = Recorder::new("wic", &cfg, &cfg.out);
    rec.stage("load");
    let pairs = match (jsonl, &original) {
        (Some(path), _) => {
            let pairs = load_wic_jsonl(path).input()?;
            rec.input(path)?;
            pairs
        }
        (None, Some((data, gold))) => {
            let read = |p: &Path| {
                std::fs::read_to_string(p).with_context(|| format!("cannot read {}", p.display()))
            };
            let pairs = import_wic(&read(data).input()?, &read(gold).input()?).input()?;
            rec.input(data)?;
            rec.input(gold)?;
            pairs
        }
        (None, None) => return Err(CliError::Input(anyhow!("pass --wic or --data with --gold"))),
    };
    if original.is_some() {
        let mut text = String::new();
        for p in &pairs {
            text.push_str(&serde_json::to_string(p).context("serialize pair")?);
            text.push('\n');
        }
        rec.write("pairs.jsonl", &text)?;
    }
    let prompter = prompter(&cfg, &mut rec)?;
    let exemplars = exemplars(&cfg, &mut rec)?;
    let model = model_name(&cfg)?;
    let chat = backends::chat(&cfg, &model, &prompter, MockContext::Wic).input()?;
    let embedder = backends::embedder(&cfg).input()?;
    // WiC never resolves bench instances, so an empty lexicon is enough.
    let lex = Lexicon {
        language: cfg.language.clone(),
        entries: Vec::new(),
        source_digest: String::new(),
    };
    let harness = Harness {
        lexicon: &lex,
        prompter: &prompter,
        chat: chat.as_ref(),
        embedder: embedder.as_ref(),
        params: ChatParams::greedy(&model),
        exemplars: &exemplars,
        max_failure_rate: cfg.max_failure_rate,
    };
    rec.stage("evaluate");
    let outcome = with_pool(&cfg, || harness.run_wic(&pairs, cfg.shots, cfg.threshold))?;
    rec.stage("write");
    let (res, failure): (WicResult, _) = match outcome {
        Ok(r) => (r, None),
        Err(RunError::TooManyFailures {
            failed,
            total,
            max_rate,
            partial,
        }) => match *partial {
            Partial::Wic(r) => (r, Some(partial_message(failed, total, max_rate, &cfg.out))),
            Partial::Bench(_) => unreachable!("WiC runs return WiC partials"),
        },
        Err(e @ (RunError::NotEnoughExemplars { .. } | RunError::Prompt(_) | RunError::BadThreshold(_))) => {
            return Err(CliError::Input(anyhow!(e)))
        }
        Err(e) => return Err(CliError::Runtime(anyhow!(e))),
    };
    if failure.is_some() {
        rec.partial();
    }
    let text = write_run(&mut rec, &res.results_jsonl(), &res.summary(), failure.is_some())?;
    rec.finish()?;
    print!("{text}");
    match failure {
        Some(msg) => Err(CliError::Partial(anyhow!(msg))),
        None => Ok(()),
    }
}

/// The two fields correlation needs; any other summary fields are ignored.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelScore {
    pub model: String,
    pub accuracy: f64,
}

fn summary_files(path: &Path, out: &mut Vec<PathBuf>) -> anyhow::Result<()> {
    if path.is_file() {
        out.push(path.to_path_buf());
        return Ok(());
    }
    require_exists(path)?;
    let mut children: Vec<PathBuf> = std::fs::read_dir(path)
        .with_context(|| format!("cannot list {}", path.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<Result<_, _>>()?;
    children.sort();
    for child in children {
        if child.is_dir() {
            summary_files(&child, out)?;
        } else if child.file_name().is_some_and(|n| n == "summary.json") {
            out.push(child);
        }
    }
    Ok(())
}

/// Reads summary records: a single `{model, accuracy, ...}` object or an
/// array of them per file; directories are searched for `summary.json`.
fn load_scores(paths: &[PathBuf], rec: &mut Recorder) -> CliResult<Vec<ModelScore>> {
    let mut files = Vec::new();
    for p in paths {
        summary_files(p, &mut files).input()?;
    }
    if files.is_empty() {
        return Err(CliError::Input(anyhow!("no summary files found under {paths:?}")));
    }
    let mut scores = Vec::new();
    for f in files {
        let text = std::fs::read_to_string(&f).with_context(|| format!("cannot read {}", f.display())).input()?;
        let value: serde_json::Value = serde_json::from_str(&text)
            .with_context(|| format!("{} is not JSON", f.display()))
            .input()?;
        let parsed = if value.is_array() {
            serde_json::from_value::<Vec<ModelScore>>(value)
        } else {
            serde_json::from_value::<ModelScore>(value).map(|s| vec![s])
        };
        scores.extend(
            parsed
                .with_context(|| format!("{}: expected {{model, accuracy}} records", f.display()))
                .input()?,
        );
        rec.input(&f)?;
    }
    Ok(scores)
}

fn ranking(context: &str, scores: &[ModelScore]) -> CliResult<RankingTable> {
    RankingTable::new(context, scores.iter().map(|s| (s.model.clone(), s.accuracy)).collect()).input()
}

#[derive(Debug, Serialize)]
struct CorrelationRow {
    model: String,
    a: f64,
    b: f64,
    rank_a: f64,
    rank_b: f64,
}

#[derive(Debug, Serialize)]
struct CorrelationReport {
    label_a: String,
    label_b: String,
    rho: f64,
    n: usize,
    p_value: Option<f64>,
    models: Vec<CorrelationRow>,
}

pub fn correlate(c: &Common, a: &[PathBuf], b: &[PathBuf], label_a: &str, label_b: &str) -> CliResult<()> {
    let cfg = resolve(c)?;
    let mut rec = Recorder::new("correlate", &cfg, &cfg.out);
    rec.stage("correlate");
    let ta = ranking(label_a, &load_scores(a, &mut rec)?)?;
    let tb = ranking(label_b, &load_scores(b, &mut rec)?)?;
    let result = spearman(&ta, &tb).map_err(|e| match e {
        AnalysisError::ZeroVariance => CliError::Runtime(anyhow!(e)),
        other => CliError::Input(anyhow!(other)),
    })?;
    let mut models: Vec<&str> = ta.models().collect();
    models.sort_unstable();
    let sa: Vec<f64> = models.iter().map(|m| ta.score(m).expect("shared model")).collect();
    let sb: Vec<f64> = models.iter().map(|m| tb.score(m).expect("shared model")).collect();
    let (ra, rb) = (sembench_core::rank_with_ties(&sa), sembench_core::rank_with_ties(&sb));
    let rows: Vec<CorrelationRow> = models
        .iter()
        .enumerate()
        .map(|(i, m)| CorrelationRow {
            model: m.to_string(),
            a: sa[i],
            b: sb[i],
            rank_a: ra[i],
            rank_b: rb[i],
        })
        .collect();
    let mut csv = String::from("model,a,b,rank_a,rank_b\n");
    for r in &rows {
        csv.push_str(&format!("{},{},{},{},{}\n", csv_field(&r.model), r.a, r.b, r.rank_a, r.rank_b));
    }
    let report = CorrelationReport {
        label_a: label_a.into(),
        label_b: label_b.into(),
        rho: result.rho,
        n: result.n,
        p_value: result.p_value,
        models: rows,
    };
    let mut text = format!(
        "Spearman rho ({label_a} vs {label_b}) = {:.3} over {} models",
        result.rho, result.n
    );
    if let Some(p) = result.p_value {
        text.push_str(&format!(", p ~ {p:.2e} (normal approximation)"));
    }
    text.push('\n');
    rec.write("correlation.csv", &csv)?;
    rec.write_json("correlation.json", &report)?;
    rec.write("summary.txt", &text)?;
    rec.finish()?;
    print!("{text}");
    Ok(())
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub struct BootstrapArgs {
    pub results: Vec<PathBuf>,
    pub wic: Vec<PathBuf>,
    pub sizes: Vec<usize>,
    pub start: usize,
    pub step: usize,
    pub iterations: usize,
    pub with_replacement: bool,
    pub resample_wic: bool,
}

/// A run directory, or its `results.jsonl` with `summary.json` beside it.
fn run_dir(path: &Path) -> PathBuf {
    if path.is_file() {
        path.parent().map(Path::to_path_buf).unwrap_or_default()
    } else {
        path.to_path_buf()
    }
}

fn read_run<T: serde::de::DeserializeOwned>(path: &Path, rec: &mut Recorder) -> CliResult<(Summary, Vec<T>)> {
    let dir = run_dir(path);
    let summary_path = dir.join("summary.json");
    let results_path = dir.join("results.jsonl");
    require_exists(&summary_path).input()?;
    require_exists(&results_path).input()?;
    let summary: Summary = serde_json::from_str(&std::fs::read_to_string(&summary_path).context("read summary")?)
        .with_context(|| format!("invalid summary {}", summary_path.display()))
        .input()?;
    let results: Vec<T> = parse_jsonl(&std::fs::read_to_string(&results_path).context("read results")?)
        .map_err(|e| anyhow!(e).context(format!("invalid results {}", results_path.display())))
        .input()?;
    rec.input(&summary_path)?;
    rec.input(&results_path)?;
    Ok((summary, results))
}

fn bench_matrix(paths: &[PathBuf], rec: &mut Recorder) -> CliResult<(CorrectnessMatrix, Option<String>)> {
    let mut models = Vec::new();
    let mut rows = Vec::new();
    let mut digest: Option<Option<String>> = None;
    for p in paths {
        let (summary, mut results) = read_run::<InstanceResult>(p, rec)?;
        match &digest {
            None => digest = Some(summary.bench_digest.clone()),
            Some(d) if *d != summary.bench_digest => {
                return Err(CliError::Input(anyhow!(
                    "{} was run on a different benchmark than the first run",
                    p.display()
                )))
            }
            Some(_) => {}
        }
        results.sort_by_key(|r| r.instance_index);
        if results.iter().enumerate().any(|(i, r)| r.instance_index != i) {
            return Err(CliError::Input(anyhow!("{}: instance indices are not 0..n", p.display())));
        }
        models.push(summary.model);
        rows.push(results.iter().map(InstanceResult::outcome).collect());
    }
    let m = CorrectnessMatrix::new(models, rows).input()?;
    Ok((m, digest.flatten()))
}

pub fn bootstrap(c: &Common, args: &BootstrapArgs) -> CliResult<()> {
    let cfg = resolve(c)?;
    let mut rec = Recorder::new("bootstrap", &cfg, &cfg.out);
    rec.stage("load");
    let (matrix, bench_digest) = bench_matrix(&args.results, &mut rec)?;
    if let Some(d) = &bench_digest {
        rec.bench_digest(d);
    }
    let (wic_table, wic_matrix) = if args.resample_wic {
        let mut scores = Vec::new();
        let mut rows = Vec::new();
        let mut by_model = std::collections::HashMap::new();
        for p in &args.wic {
            let (s, results) = read_run::<WicPairResult>(p, &mut rec)?;
            scores.push(ModelScore {
                model: s.model.clone(),
                accuracy: s.accuracy,
            });
            by_model.insert(s.model, results);
        }
        for m in &matrix.models {
            let r = by_model
                .get(m)
                .ok_or_else(|| CliError::Input(anyhow!("no WiC run for model {m}")))?;
            rows.push(r.iter().map(|x| x.failure.is_none().then_some(x.correct)).collect());
        }
        let wm = CorrectnessMatrix::new(matrix.models.clone(), rows).input()?;
        (ranking("wic", &scores)?, Some(wm))
    } else {
        (ranking("wic", &load_scores(&args.wic, &mut rec)?)?, None)
    };
    let n = matrix.instances();
    let sizes = if args.sizes.is_empty() {
        stepped_sizes(args.start, args.step, n)
    } else {
        args.sizes.clone()
    };
    let opts = BootstrapOptions {
        iterations: args.iterations,
        seed: cfg.bench.seed,
        with_replacement: args.with_replacement,
        wic_instances: wic_matrix,
    };
    rec.extra(
        "bootstrap",
        serde_json::json!({"sizes": sizes, "iterations": args.iterations, "with_replacement": args.with_replacement, "resample_wic": args.resample_wic}),
    );
    rec.stage("resample");
    let curve = with_pool(&cfg, || bootstrap_curve(&matrix, &wic_table, &sizes, &opts))?.map_err(|e| match e {
        AnalysisError::AllDegenerate(_) | AnalysisError::ZeroVariance => CliError::Runtime(anyhow!(e)),
        other => CliError::Input(anyhow!(other)),
    })?;
    rec.stage("write");
    let csv = curve.to_csv();
    rec.write("curve.csv", &csv)?;
    rec.write_json("curve.json", &curve)?;
    let mut text = format!(
        "{} models, {} instances, {} iterations, seed {}\n",
        matrix.models.len(),
        n,
        curve.iterations,
        curve.seed
    );
    for p in &curve.points {
        text.push_str(&format!(
            "n={:<6} rho={:+.3}  95% CI [{:+.3}, {:+.3}]{}\n",
            p.subset_size,
            p.rho_mean,
            p.ci_low,
            p.ci_high,
            if p.skipped > 0 { format!("  ({} degenerate draws skipped)", p.skipped) } else { String::new() }
        ));
    }
    rec.write("summary.txt", &text)?;
    rec.finish()?;
    print!("{text}");
    Ok(())
}

pub fn verify(dir: &Path) -> CliResult<()> {
    require_exists(dir).input()?;
    let cwd = std::env::current_dir().context("cannot determine working directory")?;
    let m = manifest::verify(dir, &cwd)?;
    println!(
        "{}: {} outputs and {} inputs verified ({} {})",
        dir.display(),
        m.outputs.len(),
        m.inputs.len(),
        m.command,
        match m.status {
            manifest::Status::Complete => "complete",
            manifest::Status::Partial => "partial",
        }
    );
    Ok(())
}
