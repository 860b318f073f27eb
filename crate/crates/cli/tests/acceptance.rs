//! End-to-end acceptance criteria. Each criterion prints one PASS/FAIL line;
//! the test fails if any criterion fails.

use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use rand::Rng;
use serde_json::Value;
use tfmn::analysis::emotional_profile;
use tfmn::lexicons::{AntonymLexicon, Emotion, EmotionLexicon};
use tfmn::metrics::{closeness_all, local_clustering};
use tfmn::network::{canonical_pair, normalize_word, Concept};
use tfmn::stats::{configuration_rewire, mann_whitney_u};
use tfmn::{Graph, LayerMode, MultiplexNetwork};

const BIN: &str = env!("CARGO_BIN_EXE_tfmn");

fn data(rel: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/data").join(rel)
}

fn tfmn(args: &[&str]) -> Result<String, String> {
    let out = Command::new(BIN)
        .args(args)
        .env_remove("TFMN_LEXICON_DIR")
        .env("RUST_LOG", "error")
        .output()
        .map_err(|e| e.to_string())?;
    if !out.status.success() {
        return Err(format!("tfmn {args:?} failed: {}", String::from_utf8_lossy(&out.stderr)));
    }
    Ok(String::from_utf8_lossy(&out.stdout).into_owned())
}

fn read_json(p: &Path) -> Result<Value, String> {
    let text = fs::read_to_string(p).map_err(|e| format!("{}: {e}", p.display()))?;
    serde_json::from_str(&text).map_err(|e| e.to_string())
}

fn network(p: &Path) -> Result<MultiplexNetwork, String> {
    MultiplexNetwork::from_json(&fs::read_to_string(p).map_err(|e| e.to_string())?).map_err(|e| e.to_string())
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

type Criterion = fn(&Path) -> Result<String, String>;

fn worked_examples(tmp: &Path) -> Result<String, String> {
    let corpus = tmp.join("examples.tsv");
    fs::write(&corpus, "love\tlove is weakness\ncat\tthe cat sat on the chair\n").map_err(|e| e.to_string())?;
    let out = tmp.join("c1");
    tfmn(&["build", s(&corpus), "--per-document", "--min-words", "1", "--out", s(&out)])?;
    let edges = |id: &str| -> Result<BTreeSet<(String, String)>, String> {
        Ok(network(&out.join(format!("{id}.network.json")))?.syntactic.into_keys().collect())
    };
    let pair = |a: &str, b: &str| canonical_pair(a, b);
    let love = edges("love")?;
    let cat = edges("cat")?;
    check(love == BTreeSet::from([pair("love", "weak")]), || format!("love: {love:?}"))?;
    check(cat == BTreeSet::from([pair("cat", "sit"), pair("sit", "chair")]), || format!("cat: {cat:?}"))?;
    Ok(format!("{love:?} / {cat:?}"))
}

fn build_paragraphs(out: &Path) -> Result<(), String> {
    if out.join("complexity_explained.summary.json").exists() {
        return Ok(());
    }
    let corpus = data("benchmark/complexity_explained.tsv");
    tfmn(&["build", s(&corpus), "--per-document", "--min-words", "1", "--out", s(out)]).map(|_| ())
}

fn paragraph_ids() -> Vec<String> {
    fs::read_to_string(data("benchmark/complexity_explained.tsv"))
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#') && !l.trim().is_empty())
        .map(|l| l.split('\t').next().unwrap().to_string())
        .collect()
}

fn benchmark_structure(tmp: &Path) -> Result<String, String> {
    let out = tmp.join("paragraphs");
    build_paragraphs(&out)?;
    let mut sizes = Vec::new();
    let mut worst_share: f64 = 1.0;
    for id in paragraph_ids() {
        let net = network(&out.join(format!("{id}.network.json")))?;
        let g = Graph::from_network(&net, LayerMode::Aggregate);
        let share = g.largest_component().len() as f64 / g.node_count() as f64;
        worst_share = worst_share.min(share);
        sizes.push(g.node_count() as f64);
    }
    check(sizes.len() == 7, || format!("{} paragraphs", sizes.len()))?;
    let median = tfmn::stats::median(&sizes).unwrap();
    check((29.0..=69.0).contains(&median), || format!("median size {median}"))?;
    check(worst_share >= 0.9, || format!("smallest largest-component share {worst_share:.3}"))?;
    Ok(format!("sizes {sizes:?}, median {median}, min LCC share {worst_share:.2}"))
}

fn reference_top10() -> BTreeMap<String, BTreeSet<String>> {
    let mut out: BTreeMap<String, BTreeSet<String>> = BTreeMap::new();
    for line in fs::read_to_string(data("benchmark/reference_top10.tsv")).unwrap().lines() {
        if line.starts_with('#') || line.trim().is_empty() {
            continue;
        }
        let f: Vec<&str> = line.split('\t').collect();
        out.entry(f[0].to_string()).or_default().insert(normalize_word(f[2]).unwrap());
    }
    out
}

fn ranking_overlap(tmp: &Path) -> Result<String, String> {
    let out = tmp.join("paragraphs");
    build_paragraphs(&out)?;
    let reference = reference_top10();
    let mut hits = Vec::new();
    for id in paragraph_ids() {
        let rank_dir = tmp.join("rank").join(&id);
        tfmn(&["rank", s(&out.join(format!("{id}.network.json"))), "--top-k", "10", "--out", s(&rank_dir)])?;
        let r = read_json(&rank_dir.join("rank.json"))?;
        let ours: BTreeSet<String> = r["ranking"]
            .as_array()
            .unwrap()
            .iter()
            .map(|x| x["stem"].as_str().unwrap().to_string())
            .collect();
        let common = ours.intersection(&reference[&id]).count();
        hits.push((id, common));
    }
    let passing = hits.iter().filter(|(_, c)| *c >= 4).count();
    let detail = hits.iter().map(|(id, c)| format!("{id}={c}")).collect::<Vec<_>>().join(" ");
    check(passing >= 5, || format!("{passing}/7 paragraphs with >= 4 shared stems: {detail}"))?;
    Ok(format!("{passing}/7 paragraphs with >= 4 shared stems ({detail})"))
}

fn topic_relevance(tmp: &Path) -> Result<String, String> {
    let out = tmp.join("bench");
    tfmn(&[
        "benchmark",
        s(&data("benchmark/complexity_explained.tsv")),
        "--topics",
        s(&data("benchmark/topics.tsv")),
        "--oracle",
        s(&data("benchmark/free_associations.tsv")),
        "--realizations",
        "50",
        "--min-words",
        "1",
        "--out",
        s(&out),
    ])?;
    let r = read_json(&out.join("benchmark.json"))?;
    let rel = &r["relevance"];
    let (emp, null) = (rel["empirical_median"].as_f64().unwrap(), rel["null_median"].as_f64().unwrap());
    let p = rel["test"]["p_value"].as_f64().unwrap();
    let n = rel["realization_seeds"].as_array().unwrap().len();
    let detail = format!("empirical median {emp} vs null {null}, U={}, p={p:.4}, {n} realizations", rel["test"]["u"]);
    check(n == 50, || detail.clone())?;
    check(emp < null && p < 0.05, || detail.clone())?;
    Ok(detail)
}

fn planted_structure(tmp: &Path) -> Result<String, String> {
    let out = tmp.join("synthetic");
    let lex = data("lexicons");
    tfmn(&["build", s(&data("synthetic/corpus.tsv")), "--lexicon-dir", s(&lex), "--out", s(&out)])?;
    let net_path = out.join("corpus.network.json");
    let docs = fs::read_to_string(data("synthetic/corpus.tsv")).unwrap();
    let n_docs = docs.lines().filter(|l| !l.starts_with('#')).count();
    check(n_docs == 500, || format!("{n_docs} documents"))?;

    tfmn(&["nulltest", s(&net_path), "--realizations", "50", "--out", s(&out)])?;
    let c = &read_json(&out.join("nulltest.json"))?["clustering"];
    let (emp, mean, sd) = (
        c["empirical"].as_f64().unwrap(),
        c["ensemble_mean"].as_f64().unwrap(),
        c["ensemble_std"].as_f64().unwrap(),
    );
    check(emp - mean > 3.0 * sd, || format!("clustering {emp:.3} vs {mean:.3} ± {sd:.3}"))?;

    let mut hubs = Vec::new();
    let mut negatives = Vec::new();
    for line in fs::read_to_string(data("synthetic/planted.tsv")).unwrap().lines() {
        match line.split_once('\t') {
            Some(("positive_hub", w)) => hubs.push(w.to_string()),
            Some(("negative_concept", w)) => negatives.push(w.to_string()),
            _ => {}
        }
    }
    tfmn(&["aura", s(&net_path), "--target", &hubs.join(","), "--out", s(&out)])?;
    let auras = read_json(&out.join("aura.json"))?;
    let not_positive: Vec<String> = auras["auras"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|a| a["report"]["aura"] != "positive")
        .map(|a| format!("{}={}", a["requested"], a["report"]["aura"]))
        .collect();
    check(auras["unknown_targets"].as_array().unwrap().is_empty(), || "hub missing from network".into())?;
    check(not_positive.is_empty(), || format!("non-positive hub auras: {not_positive:?}"))?;

    let net = network(&net_path)?;
    let g = Graph::from_network(&net, LayerMode::Aggregate);
    let degrees = |words: &[String]| -> Result<Vec<f64>, String> {
        words
            .iter()
            .map(|w| {
                let stem = normalize_word(w).unwrap();
                g.index_of(&stem).map(|i| g.degree(i) as f64).ok_or(format!("{stem} not in network"))
            })
            .collect()
    };
    let (dh, dn) = (degrees(&hubs)?, degrees(&negatives)?);
    let t = mann_whitney_u(&dh, &dn).map_err(|e| e.to_string())?;
    check(t.median1 > t.median2 && t.p_value < 0.05, || format!("{t:?}"))?;
    Ok(format!(
        "clustering {emp:.3} vs {mean:.3} ± {sd:.3} (z={:.1}); hub auras all positive; degree median {} vs {}, p={:.4}",
        (emp - mean) / sd,
        t.median1,
        t.median2,
        t.p_value
    ))
}

fn all_graphs(n: usize) -> impl Iterator<Item = Graph> {
    let pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let m = pairs.len();
    (0u32..1 << m).map(move |mask| {
        let names = (0..n).map(|i| format!("v{i}")).collect();
        Graph::from_edges(names, (0..m).filter(|b| mask >> b & 1 == 1).map(|b| pairs[b]))
    })
}

fn brute_clustering(g: &Graph) -> Vec<f64> {
    let n = g.node_count();
    (0..n)
        .map(|v| {
            let k = g.degree(v);
            if k < 2 {
                return 0.0;
            }
            let mut t = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if g.has_edge(v, a) && g.has_edge(v, b) && g.has_edge(a, b) {
                        t += 1;
                    }
                }
            }
            2.0 * t as f64 / (k * (k - 1)) as f64
        })
        .collect()
}

/// Syntactic and synonym edge lists.
type Layers<'a> = (&'a [(&'a str, &'a str)], &'a [(&'a str, &'a str)]);

fn fixture_network(layers: &[Layers], i: usize) -> MultiplexNetwork {
    let (syn, sym) = layers[i];
    let mut net = MultiplexNetwork::default();
    for (a, b) in syn.iter().chain(sym.iter()) {
        for x in [a, b] {
            net.nodes.entry(x.to_string()).or_insert_with(|| Concept::unlabeled(*x));
        }
    }
    for (a, b) in syn {
        net.syntactic.insert(canonical_pair(a, b), 1);
    }
    for (a, b) in sym {
        net.synonym.insert(canonical_pair(a, b));
    }
    net
}

fn layer_degrees(net: &MultiplexNetwork) -> [BTreeMap<String, usize>; 2] {
    let mut out = [BTreeMap::new(), BTreeMap::new()];
    for (a, b) in net.syntactic.keys() {
        *out[0].entry(a.clone()).or_default() += 1;
        *out[0].entry(b.clone()).or_default() += 1;
    }
    for (a, b) in &net.synonym {
        *out[1].entry(a.clone()).or_default() += 1;
        *out[1].entry(b.clone()).or_default() += 1;
    }
    out
}

fn property_suites(tmp: &Path) -> Result<String, String> {
    // closeness on path, complete and star graphs
    let named = |edges: &[(&str, &str)]| Graph::from_named_edges([], edges.iter().copied());
    let value = |g: &Graph, v: &str| closeness_all(g)[g.index_of(v).unwrap()].unwrap();
    let close = |a: f64, b: f64| (a - b).abs() < 1e-12;
    let path = named(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "e")]);
    let complete = named(&[("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d")]);
    let star = named(&[("h", "a"), ("h", "b"), ("h", "c")]);
    check(
        close(value(&path, "a"), 5.0 / 10.0)
            && close(value(&path, "b"), 5.0 / 7.0)
            && close(value(&path, "c"), 5.0 / 6.0)
            && close(value(&complete, "a"), 4.0 / 3.0)
            && close(value(&star, "h"), 4.0 / 3.0)
            && close(value(&star, "a"), 4.0 / 5.0),
        || "closeness hand values".into(),
    )?;

    // clustering: every labelled graph up to 6 nodes, random ones on 7 and 8
    let mut graphs_checked = 0;
    for n in 1..=6 {
        for g in all_graphs(n) {
            let (a, b) = (local_clustering(&g), brute_clustering(&g));
            check(a.iter().zip(&b).all(|(x, y)| close(*x, *y)), || format!("clustering mismatch on {:?}", g.edges()))?;
            graphs_checked += 1;
        }
    }
    let mut rng = tfmn::seed::rng(8);
    for _ in 0..500 {
        let n = rng.gen_range(7..=8);
        let names = (0..n).map(|i| format!("v{i}")).collect();
        let edges: Vec<(usize, usize)> = (0..n)
            .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
            .filter(|_| rng.gen_bool(0.4))
            .collect();
        let g = Graph::from_edges(names, edges);
        let (a, b) = (local_clustering(&g), brute_clustering(&g));
        check(a.iter().zip(&b).all(|(x, y)| close(*x, *y)), || format!("clustering mismatch on {:?}", g.edges()))?;
        graphs_checked += 1;
    }

    // rewiring: 100 realizations of 5 fixtures
    let fixtures: [Layers; 5] = [
        (&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")], &[("a", "c"), ("b", "d")]),
        (&[("h", "a"), ("h", "b"), ("h", "c"), ("h", "d"), ("a", "b"), ("c", "d")], &[("a", "d")]),
        (
            &[("a", "b"), ("b", "c"), ("a", "c"), ("d", "e"), ("e", "f"), ("d", "f"), ("c", "d")],
            &[("a", "f"), ("b", "e"), ("c", "f")],
        ),
        (&[("a", "b"), ("c", "d"), ("e", "f"), ("g", "h")], &[("a", "c"), ("e", "g"), ("b", "h"), ("d", "f")]),
        (
            &[("a", "b"), ("a", "c"), ("a", "d"), ("b", "c"), ("b", "d"), ("c", "d"), ("d", "e"), ("e", "f"), ("f", "g")],
            &[("g", "a")],
        ),
    ];
    for i in 0..fixtures.len() {
        let net = fixture_network(&fixtures, i);
        for seed in 0..100 {
            let (r, _) = configuration_rewire(&net, seed, 10);
            check(layer_degrees(&r) == layer_degrees(&net) && r.nodes == net.nodes, || {
                format!("fixture {i} seed {seed} changed degrees")
            })?;
        }
    }

    // Mann-Whitney U against pair counting for all sizes up to 8
    let mut samples_checked = 0;
    for n1 in 1..=8 {
        for n2 in 1..=8 {
            for _ in 0..20 {
                let a: Vec<f64> = (0..n1).map(|_| f64::from(rng.gen_range(0..6))).collect();
                let b: Vec<f64> = (0..n2).map(|_| f64::from(rng.gen_range(0..6))).collect();
                let mut pairs = 0.0;
                for x in &a {
                    for y in &b {
                        pairs += if x > y { 1.0 } else if x == y { 0.5 } else { 0.0 };
                    }
                }
                let u = mann_whitney_u(&a, &b).map_err(|e| e.to_string())?.u;
                check(u == pairs, || format!("U {u} vs pair count {pairs} for {a:?} {b:?}"))?;
                samples_checked += 1;
            }
        }
    }

    // negation fixture, in memory and through the CLI
    let emotions = EmotionLexicon::from_entries([
        ("appreci", [Emotion::Joy, Emotion::Trust].into_iter().collect()),
        ("disgust", [Emotion::Disgust].into_iter().collect()),
    ])
    .map_err(|e| e.to_string())?;
    let antonyms = AntonymLexicon::from_pairs([("appreci", "disgust")]);
    let mut net = MultiplexNetwork::default();
    for stem in ["job", "appreci", "not"] {
        let mut c = Concept::unlabeled(stem);
        c.emotions = emotions.emotions(stem);
        net.nodes.insert(stem.into(), c);
    }
    net.syntactic.insert(canonical_pair("job", "appreci"), 1);
    net.syntactic.insert(canonical_pair("appreci", "not"), 1);
    let p = emotional_profile(&net, "job", &emotions, &antonyms).map_err(|e| e.to_string())?;
    let negated = p.contributions.iter().filter(|c| c.negated_from.is_some()).count();
    check(negated == 1 && p.counts[&Emotion::Disgust] == 1 && p.counts[&Emotion::Joy] == 1, || format!("{p:?}"))?;

    let corpus = tmp.join("negation.tsv");
    fs::write(&corpus, "n1\tThe job is appreciation. Appreciation is not joy.\n").map_err(|e| e.to_string())?;
    let out = tmp.join("negation");
    let lex = data("lexicons");
    tfmn(&["build", s(&corpus), "--lexicon-dir", s(&lex), "--min-words", "1", "--out", s(&out)])?;
    tfmn(&["profile", s(&out.join("negation.network.json")), "--target", "job", "--lexicon-dir", s(&lex), "--out", s(&out)])?;
    let prof = &read_json(&out.join("profile.json"))?["profiles"][0]["profile"];
    let from_cli: Vec<&Value> = prof["contributions"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| !c["negated_from"].is_null())
        .collect();
    check(
        from_cli.len() == 1 && from_cli[0]["stem"] == "disgust" && prof["counts"]["disgust"] == 1,
        || format!("cli profile {prof}"),
    )?;

    Ok(format!(
        "closeness hand values; {graphs_checked} clustering graphs; 500 rewires; {samples_checked} U samples; antonym counted once"
    ))
}

fn snapshot(dir: &Path) -> BTreeMap<String, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for entry in fs::read_dir(&d).unwrap() {
            let p = entry.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                let rel = p.strip_prefix(dir).unwrap().display().to_string();
                out.insert(rel, fs::read(&p).unwrap());
            }
        }
    }
    out
}

fn pipeline(out: &Path) -> Result<(), String> {
    let lex = data("lexicons");
    let corpus = data("synthetic/corpus.tsv");
    let conf = out.with_extension("conf");
    fs::write(&conf, format!("seed = 17\nlexicon_dir = {}\nrealizations = 10\n", lex.display())).map_err(|e| e.to_string())?;
    let c = s(&conf);
    tfmn(&["build", s(&corpus), "--config", c, "--out", s(out)])?;
    let net = out.join("corpus.network.json");
    tfmn(&["rank", s(&net), "--config", c, "--out", s(out)])?;
    tfmn(&["aura", s(&net), "--target", "success,bias", "--config", c, "--out", s(out)])?;
    tfmn(&["profile", s(&net), "--target", "success,bias", "--config", c, "--out", s(out)])?;
    tfmn(&["communities", s(&net), "--target", "success", "--config", c, "--out", s(out)])?;
    tfmn(&["nulltest", s(&net), "--config", c, "--out", s(out)])?;
    tfmn(&[
        "benchmark",
        s(&data("benchmark/complexity_explained.tsv")),
        "--topics",
        s(&data("benchmark/topics.tsv")),
        "--oracle",
        s(&data("benchmark/free_associations.tsv")),
        "--config",
        c,
        "--out",
        s(&out.join("bench")),
    ])?;
    tfmn(&["export", s(&net), "--to", "csv", "--config", c, "--out", s(out)])?;
    Ok(())
}

fn determinism(tmp: &Path) -> Result<String, String> {
    let (a, b) = (tmp.join("run_a"), tmp.join("run_b"));
    pipeline(&a)?;
    pipeline(&b)?;
    let (sa, sb) = (snapshot(&a), snapshot(&b));
    check(sa.keys().eq(sb.keys()), || "different file sets".into())?;
    let differing: Vec<&String> = sa.keys().filter(|k| sa[*k] != sb[*k]).collect();
    check(differing.is_empty(), || format!("files differ: {differing:?}"))?;
    Ok(format!("{} files byte-identical across two runs", sa.len()))
}

/// Written to the raw stderr handle so the lines survive test output capture.
fn report(line: &str) {
    let _ = writeln!(std::io::stderr().lock(), "{line}");
}

#[test]
fn acceptance_criteria() {
    let tmp = tempfile::tempdir().unwrap();
    let criteria: [(&str, Criterion, Duration); 7] = [
        ("worked-example fidelity", worked_examples, Duration::from_secs(1)),
        ("benchmark structure", benchmark_structure, Duration::from_secs(30)),
        ("benchmark ranking overlap", ranking_overlap, Duration::from_secs(60)),
        ("topic-relevance null test", topic_relevance, Duration::from_secs(120)),
        ("synthetic planted structure", planted_structure, Duration::from_secs(120)),
        ("property suites", property_suites, Duration::from_secs(60)),
        ("determinism", determinism, Duration::from_secs(300)),
    ];
    let mut failures = Vec::new();
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run(tmp.path());
        let elapsed = start.elapsed();
        let result = result.and_then(|detail| {
            if elapsed > *limit {
                Err(format!("took {elapsed:.2?}, limit {limit:?}; {detail}"))
            } else {
                Ok(detail)
            }
        });
        match result {
            Ok(detail) => report(&format!("PASS {} {name} ({elapsed:.2?}): {detail}", i + 1)),
            Err(e) => {
                report(&format!("FAIL {} {name} ({elapsed:.2?}): {e}", i + 1));
                failures.push(name);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
