//! Acceptance criteria, one PASS/FAIL line each. Runs as a plain binary so the
//! lines are printed under `cargo test` without `--nocapture`.

use std::collections::{BTreeMap, HashMap, HashSet};
use std::path::{Path, PathBuf};
use std::process::{Command, Output};
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sembench_core::benchgen::{rank_alternatives, select_distractor};
use sembench_core::modelio::mock::HashEmbedder;
use sembench_core::prompting::{load_exemplars, Message};
use sembench_core::runner::DEFAULT_WIC_THRESHOLD;
use sembench_core::{
    compute_stats, ChatParams, Difficulty, Direction, Embedder, Entry, Harness, Lexicon, ModelError,
    Prompter, Sense, WicInstance, WicLabel,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn root() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../..")
}

fn fixture(name: &str) -> PathBuf {
    root().join("fixtures").join(name)
}

fn sembench(cwd: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sembench"))
        .current_dir(cwd)
        .env_remove("SOURCE_DATE_EPOCH")
        .args(args)
        .output()
        .expect("binary runs")
}

fn ok(cwd: &Path, args: &[&str]) -> Result<String, String> {
    let out = sembench(cwd, args);
    if out.status.success() {
        Ok(String::from_utf8_lossy(&out.stdout).into_owned())
    } else {
        Err(format!(
            "`sembench {}` exited {:?}: {}",
            args.join(" "),
            out.status.code(),
            String::from_utf8_lossy(&out.stderr).trim()
        ))
    }
}

fn read_json(path: &Path) -> Result<serde_json::Value, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// A scratch directory holding a copy of the fixtures, so every path handed
/// to the binary is relative.
fn workspace() -> tempfile::TempDir {
    let dir = tempfile::tempdir().unwrap();
    copy_dir(&root().join("fixtures"), &dir.path().join("fixtures"));
    dir
}

fn copy_dir(from: &Path, to: &Path) {
    std::fs::create_dir_all(to).unwrap();
    for e in std::fs::read_dir(from).unwrap() {
        let e = e.unwrap();
        let target = to.join(e.file_name());
        if e.file_type().unwrap().is_dir() {
            copy_dir(&e.path(), &target);
        } else {
            std::fs::copy(e.path(), target).unwrap();
        }
    }
}

fn scores(name: &str) -> Vec<f64> {
    let v = read_json(&fixture(&format!("table4/{name}.json"))).unwrap();
    v.as_array()
        .unwrap()
        .iter()
        .map(|r| r["accuracy"].as_f64().unwrap())
        .collect()
}

// Reference Spearman: average ranks by counting, then textbook Pearson.
fn reference_spearman(x: &[f64], y: &[f64]) -> f64 {
    let ranks = |v: &[f64]| -> Vec<f64> {
        v.iter()
            .map(|&a| {
                let below = v.iter().filter(|&&b| b < a).count() as f64;
                let equal = v.iter().filter(|&&b| b == a).count() as f64;
                below + (equal + 1.0) / 2.0
            })
            .collect()
    };
    let (rx, ry) = (ranks(x), ranks(y));
    let n = x.len() as f64;
    let (mx, my) = (rx.iter().sum::<f64>() / n, ry.iter().sum::<f64>() / n);
    let (mut sxy, mut sxx, mut syy) = (0.0, 0.0, 0.0);
    for i in 0..x.len() {
        sxy += (rx[i] - mx) * (ry[i] - my);
        sxx += (rx[i] - mx).powi(2);
        syy += (ry[i] - my).powi(2);
    }
    sxy / (sxx * syy).sqrt()
}

fn criterion_1() -> Outcome {
    let ws = workspace();
    let start = Instant::now();
    ok(
        ws.path(),
        &[
            "correlate",
            "--a",
            "fixtures/table4/en_sb.json",
            "--b",
            "fixtures/table4/en_wic.json",
            "--out",
            "corr",
        ],
    )?;
    let secs = start.elapsed().as_secs_f64();
    let rho = read_json(&ws.path().join("corr/correlation.json"))?["rho"]
        .as_f64()
        .ok_or("rho missing")?;
    // Rank-difference form with the squared rank differences summing to 20.
    let closed = 1.0 - 6.0 * 20.0 / (12.0 * (144.0 - 1.0));
    check((rho - 0.930).abs() <= 0.001, || format!("rho {rho}"))?;
    check((rho - closed).abs() < 1e-12, || format!("rho {rho} vs {closed}"))?;
    check(secs < 1.0, || format!("took {secs:.3}s"))?;
    Ok(format!("rho = {rho:.6}, {secs:.3}s"))
}

fn criterion_2() -> Outcome {
    let (sb, wic) = (scores("es_sb"), scores("es_wic"));
    let distinct: HashSet<u64> = wic.iter().map(|v| v.to_bits()).collect();
    check(distinct.len() < wic.len(), || "fixture has no ties".into())?;
    let ws = workspace();
    ok(
        ws.path(),
        &[
            "correlate",
            "--a",
            "fixtures/table4/es_sb.json",
            "--b",
            "fixtures/table4/es_wic.json",
            "--out",
            "corr",
        ],
    )?;
    let rho = read_json(&ws.path().join("corr/correlation.json"))?["rho"]
        .as_f64()
        .ok_or("rho missing")?;
    // The CLI matches models by name; the fixture lists them in the same order.
    let want = reference_spearman(&sb, &wic);
    check((rho - want).abs() < 1e-9, || format!("rho {rho} vs reference {want}"))?;
    Ok(format!("rho = {rho:.10}, reference {want:.10}"))
}

fn trigrams(s: &str) -> HashSet<String> {
    let c: Vec<char> = s.chars().collect();
    c.windows(3).map(|w| w.iter().collect()).collect()
}

fn criterion_3() -> Outcome {
    let lex = Lexicon::load("English", fixture("disjoint.jsonl")).map_err(|e| e.to_string())?;
    let defs: Vec<&str> = lex
        .entries
        .iter()
        .flat_map(|e| e.senses.iter().map(|s| s.definition.as_str()))
        .collect();
    for (i, a) in defs.iter().enumerate() {
        for b in &defs[i + 1..] {
            check(trigrams(a).is_disjoint(&trigrams(b)), || format!("{a} and {b} share a trigram"))?;
        }
    }
    let ws = workspace();
    let start = Instant::now();
    ok(
        ws.path(),
        &[
            "build", "--mock", "--lexicon", "fixtures/disjoint.jsonl", "--n", "100", "--difficulty", "hard",
            "--seed", "3", "--out", "bench",
        ],
    )?;
    let mut seen = Vec::new();
    for (model, want) in [("oracle", 1.0), ("adversary", 0.0)] {
        for variant in ["def", "ex"] {
            let out = format!("runs/{model}-{variant}");
            ok(
                ws.path(),
                &[
                    "run", "--mock", "--lexicon", "fixtures/disjoint.jsonl", "--bench", "bench/bench.hard.jsonl",
                    "--model", model, "--variant", variant, "--out", &out,
                ],
            )?;
            let s = read_json(&ws.path().join(&out).join("summary.json"))?;
            let acc = s["accuracy"].as_f64().ok_or("accuracy missing")?;
            check(s["n"] == 100, || format!("{out}: n = {}", s["n"]))?;
            check(acc == want, || format!("{model} {variant}: accuracy {acc}"))?;
            seen.push(format!("{model}/{variant}={acc}"));
        }
    }
    let secs = start.elapsed().as_secs_f64();
    check(secs < 5.0, || format!("took {secs:.2}s"))?;
    Ok(format!("{} in {secs:.2}s", seen.join(", ")))
}

fn criterion_4() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(20240501);
    let letters: Vec<char> = "abcdefghijklmnopqrstuvwxyz ".chars().collect();
    let text = |rng: &mut ChaCha8Rng| -> String {
        let len = rng.random_range(4..40);
        let s: String = (0..len).map(|_| letters[rng.random_range(0..letters.len())]).collect();
        if s.trim().is_empty() {
            "x".into()
        } else {
            s
        }
    };
    let mut checked = 0;
    for i in 0..1000 {
        let k = rng.random_range(2..8);
        let entry = Entry {
            word: format!("w{i}"),
            senses: (0..k)
                .map(|s| Sense {
                    id: (s + 1).to_string(),
                    pos: "noun".into(),
                    definition: text(&mut rng),
                    example: None,
                })
                .collect(),
        };
        for target in &entry.senses {
            let ranked = rank_alternatives(&entry, &target.id, &HashEmbedder).map_err(|e| e.to_string())?;
            let sim = |d: Difficulty, rng: &mut ChaCha8Rng| {
                let id = select_distractor(&ranked, d, rng).unwrap();
                ranked.iter().find(|(s, _)| *s == id).unwrap().1
            };
            let (easy, mid, hard) = (
                sim(Difficulty::Easy, &mut rng),
                sim(Difficulty::Mid, &mut rng),
                sim(Difficulty::Hard, &mut rng),
            );
            check(easy <= mid && mid <= hard, || {
                format!("{}#{}: easy {easy} mid {mid} hard {hard}", entry.word, target.id)
            })?;
            checked += 1;
        }
    }
    Ok(format!("{checked} targets over 1000 entries"))
}

/// Embeds the two fixed context strings at a chosen angle.
struct Angles(HashMap<&'static str, Vec<f64>>);

impl Embedder for Angles {
    fn backend_id(&self) -> String {
        "angles".into()
    }

    fn embed_raw(&self, text: &str) -> Result<Vec<f64>, ModelError> {
        self.0
            .get(text)
            .cloned()
            .ok_or_else(|| ModelError::InvalidInput(text.into()))
    }
}

fn criterion_5() -> Outcome {
    let mut v = HashMap::new();
    v.insert("base", vec![1.0, 0.0, 0.0, 0.0]);
    // [1, 1, 1, 1] normalizes to [0.5; 4], so its cosine with `base` is exactly 0.5.
    v.insert("s050", vec![1.0, 1.0, 1.0, 1.0]);
    v.insert("s049", vec![0.49, (1.0f64 - 0.49 * 0.49).sqrt(), 0.0, 0.0]);
    v.insert("s051", vec![0.51, (1.0f64 - 0.51 * 0.51).sqrt(), 0.0, 0.0]);
    let angles = Angles(v);
    let pr = Prompter::new("English");
    let echo = sembench_core::modelio::mock::EchoChat::new(pr.clone());
    let lex = Lexicon {
        language: "English".into(),
        entries: Vec::new(),
        source_digest: String::new(),
    };
    let h = Harness {
        lexicon: &lex,
        prompter: &pr,
        chat: &echo,
        embedder: &angles,
        params: ChatParams::greedy("echo"),
        exemplars: &[],
        max_failure_rate: 0.0,
    };
    let pairs: Vec<WicInstance> = ["s049", "s050", "s051"]
        .iter()
        .map(|c| WicInstance {
            word: "bank".into(),
            pos: "noun".into(),
            context1: "base".into(),
            context2: (*c).into(),
            gold: WicLabel::Same,
        })
        .collect();
    let res = h.run_wic(&pairs, 0, DEFAULT_WIC_THRESHOLD).map_err(|e| e.to_string())?;
    let got: Vec<(f64, WicLabel)> = res
        .results
        .iter()
        .map(|r| (r.similarity.unwrap(), r.predicted.unwrap()))
        .collect();
    check(got[1].0 == 0.5, || format!("middle pair has sim {}", got[1].0))?;
    let labels: Vec<WicLabel> = got.iter().map(|g| g.1).collect();
    check(
        labels == [WicLabel::Different, WicLabel::Different, WicLabel::Same],
        || format!("{got:?}"),
    )?;
    Ok(format!(
        "sims {:.4}/{:.4}/{:.4} -> {:?}",
        got[0].0, got[1].0, got[2].0, labels
    ))
}

fn criterion_6() -> Outcome {
    let golden = root().join("crates/core/tests/golden");
    let read = |n: &str| std::fs::read_to_string(golden.join(n)).map_err(|e| format!("{n}: {e}"));
    let pr = Prompter::new("English");
    let ex_prompt = pr
        .render_example_prompt("bank", "noun", "a financial institution")
        .map_err(|e| e.to_string())?;
    let def_prompt = pr
        .render_definition_prompt("bank", "noun", "She deposited money at the bank.")
        .map_err(|e| e.to_string())?;
    for (got, file) in [
        (&ex_prompt.system, "example_system.en.txt"),
        (&ex_prompt.user, "example_user.en.txt"),
        (&def_prompt.system, "definition_system.en.txt"),
        (&def_prompt.user, "definition_user.en.txt"),
    ] {
        check(got.as_bytes() == read(file)?.as_bytes(), || format!("{file} differs"))?;
    }
    let exemplars = load_exemplars(golden.join("exemplars.en.jsonl")).map_err(|e| e.to_string())?;
    let mut lens = Vec::new();
    for (task, dir, stem) in [
        (&ex_prompt, Direction::ExampleFromDef, "example"),
        (&def_prompt, Direction::DefFromExample, "definition"),
    ] {
        for shots in [0, 5] {
            let seq = pr
                .assemble_messages(task, &exemplars[..shots], dir)
                .map_err(|e| e.to_string())?;
            let want: Vec<Message> = serde_json::from_str(&read(&format!("{stem}_{shots}shot.en.json"))?)
                .map_err(|e| e.to_string())?;
            check(seq.messages() == want.as_slice(), || format!("{stem} {shots}-shot differs"))?;
            lens.push(seq.len());
        }
    }
    check(lens == [2, 12, 2, 12], || format!("sequence lengths {lens:?}"))?;
    Ok("4 prompt files and 4 assemblies byte-identical; 5-shot length 12".into())
}

fn write_wic_summaries(dir: &Path) {
    let v = serde_json::json!([
        {"model": "oracle", "accuracy": 0.70},
        {"model": "adversary", "accuracy": 0.55}
    ]);
    std::fs::write(dir.join("wic.json"), v.to_string()).unwrap();
}

fn criterion_7() -> Outcome {
    let ws = workspace();
    let p = ws.path();
    ok(
        p,
        &[
            "build", "--mock", "--lexicon", "fixtures/disjoint.jsonl", "--n", "100", "--difficulty", "rand", "--seed",
            "5", "--out", "bench",
        ],
    )?;
    for m in ["oracle", "adversary"] {
        ok(
            p,
            &[
                "run", "--mock", "--lexicon", "fixtures/disjoint.jsonl", "--bench", "bench/bench.rand.jsonl", "--model",
                m, "--out", &format!("runs/{m}"),
            ],
        )?;
    }
    write_wic_summaries(p);
    for out in ["b1", "b2"] {
        ok(
            p,
            &[
                "bootstrap", "--results", "runs/oracle", "runs/adversary", "--wic", "wic.json", "--seed", "11", "--out",
                out,
            ],
        )?;
    }
    let c1 = std::fs::read(p.join("b1/curve.csv")).map_err(|e| e.to_string())?;
    let c2 = std::fs::read(p.join("b2/curve.csv")).map_err(|e| e.to_string())?;
    check(c1 == c2, || "curve files differ between runs".into())?;
    let curve = read_json(&p.join("b1/curve.json"))?;
    check(curve["iterations"] == 100, || format!("iterations {}", curve["iterations"]))?;
    let points = curve["points"].as_array().ok_or("points missing")?;
    let sizes: Vec<u64> = points.iter().map(|x| x["subset_size"].as_u64().unwrap()).collect();
    check(sizes == [50, 100], || format!("sizes {sizes:?}"))?;
    for pt in points {
        for key in ["rho_mean", "ci_low", "ci_high"] {
            check(pt[key] == 1.0, || format!("{key} = {} at {}", pt[key], pt["subset_size"]))?;
        }
    }
    Ok(format!("sizes {sizes:?}, rho 1.0 with zero-width CI, identical curve files"))
}

fn pipeline(dir: &Path) -> Result<(), String> {
    let lex = "fixtures/disjoint.jsonl";
    ok(
        dir,
        &["build", "--mock", "--lexicon", lex, "--n", "100", "--difficulty", "all", "--seed", "13", "--out", "out/bench"],
    )?;
    let models = ["oracle", "adversary", "noisy-15", "noisy-40", "noisy-70"];
    for variant in ["def", "ex"] {
        for m in models {
            ok(
                dir,
                &[
                    "run", "--mock", "--lexicon", lex, "--bench", "out/bench/bench.mid.jsonl", "--model", m,
                    "--variant", variant, "--shots", "5", "--exemplars", "fixtures/exemplars.en.jsonl", "--seed",
                    "13", "--out", &format!("out/runs/{variant}/{m}"),
                ],
            )?;
        }
    }
    ok(
        dir,
        &[
            "correlate", "--mock", "--a", "out/runs/def", "--b", "out/runs/ex", "--label-a", "sb_def", "--label-b",
            "sb_ex", "--out", "out/correlate",
        ],
    )?;
    let results: Vec<String> = models.iter().map(|m| format!("out/runs/def/{m}")).collect();
    let mut args = vec!["bootstrap", "--mock", "--results"];
    args.extend(results.iter().map(String::as_str));
    args.extend(["--wic", "out/runs/ex", "--seed", "13", "--out", "out/bootstrap"]);
    ok(dir, &args)?;
    Ok(())
}

fn tree(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    fn walk(base: &Path, dir: &Path, out: &mut BTreeMap<String, Vec<u8>>) {
        for e in std::fs::read_dir(dir).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                walk(base, &p, out);
            } else {
                let rel = p.strip_prefix(base).unwrap().to_string_lossy().replace('\\', "/");
                out.insert(rel, std::fs::read(&p).unwrap());
            }
        }
    }
    let mut out = BTreeMap::new();
    walk(dir, dir, &mut out);
    out
}

fn criterion_8() -> Outcome {
    let (a, b) = (workspace(), workspace());
    pipeline(a.path())?;
    pipeline(b.path())?;
    let (ta, tb) = (tree(&a.path().join("out")), tree(&b.path().join("out")));
    check(ta.keys().eq(tb.keys()), || "file sets differ".into())?;
    let differing: Vec<&String> = ta.iter().filter(|(k, v)| tb[*k] != **v).map(|(k, _)| k).collect();
    check(differing.is_empty(), || format!("differing files: {differing:?}"))?;
    // Nothing machine-specific may leak into the outputs.
    let marker = a.path().to_string_lossy().into_owned();
    for (k, v) in &ta {
        check(!String::from_utf8_lossy(v).contains(&marker), || format!("{k} embeds an absolute path"))?;
    }
    for d in ["bench", "runs/def/oracle", "runs/ex/noisy-40", "correlate", "bootstrap"] {
        ok(a.path(), &["verify", &format!("out/{d}")])?;
    }
    let rho = read_json(&a.path().join("out/correlate/correlation.json"))?["rho"].clone();
    Ok(format!("{} files byte-identical, manifests verify, sb_def vs sb_ex rho {rho}", ta.len()))
}

fn criterion_9() -> Outcome {
    let lex = Lexicon::load("English", fixture("toy.jsonl")).map_err(|e| e.to_string())?;
    let stats = compute_stats(&lex).map_err(|e| e.to_string())?;
    // Definitions have 23, 23, 17, 17, 16 and 30 characters: mean 21, population
    // std sqrt(146/6). Examples: 32, 34, 22, 22 and 16.
    let def_std = (146.0f64 / 6.0).sqrt();
    let ex_lens = [32.0f64, 34.0, 22.0, 22.0, 16.0];
    let ex_mean = ex_lens.iter().sum::<f64>() / 5.0;
    let ex_std = (ex_lens.iter().map(|v| (v - ex_mean).powi(2)).sum::<f64>() / 5.0).sqrt();
    let want = format!(
        "Statistic          | English\n\
         Sense density      | 3.00 ± 1.0\n\
         Definition length  | 21.00 ± {def_std:.1}\n\
         Example length     | {ex_mean:.2} ± {ex_std:.1}\n"
    );
    let got = stats.render_table("English");
    check(got == want, || format!("got\n{got}want\n{want}"))?;

    let ws = workspace();
    let cli = ok(ws.path(), &["lexicon-stats", "--lexicon", "fixtures/toy_noex.jsonl", "--out", "stats"])?;
    let last = cli.lines().last().unwrap_or_default();
    check(last == "Example length     | n/a", || format!("last row {last:?}"))?;
    let missing = sembench(ws.path(), &["lexicon-stats", "--lexicon", "fixtures/absent.jsonl"]);
    let err = String::from_utf8_lossy(&missing.stderr);
    check(missing.status.code() == Some(2) && err.contains("fixtures/absent.jsonl"), || {
        format!("missing file: exit {:?}, {err}", missing.status.code())
    })?;
    Ok("mean ± std rows match; n/a for absent examples; missing file exits 2".into())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("Spearman reproduction (English, 0.930 ± 0.001, < 1 s)", criterion_1),
        ("Tie handling (Spanish vs reference within 1e-9)", criterion_2),
        ("Oracle bounds (1.0 / 0.0, both variants, < 5 s)", criterion_3),
        ("Difficulty monotonicity (1000 random entries)", criterion_4),
        ("WiC threshold semantics (0.49 / 0.5 / 0.51)", criterion_5),
        ("Prompt fidelity (golden files, 5-shot = 12 messages)", criterion_6),
        ("Bootstrap determinism and degeneracy", criterion_7),
        ("End-to-end determinism under --mock", criterion_8),
        ("Statistics fidelity (mean ± std, n/a)", criterion_9),
    ];
    let mut failed = 0;
    for (i, (name, f)) in criteria.iter().enumerate() {
        let outcome = std::panic::catch_unwind(f).unwrap_or_else(|p| {
            Err(p
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "panicked".into()))
        });
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {why}", i + 1);
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
