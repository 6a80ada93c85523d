use anyhow::{bail, Context};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use richword::acceptance::criteria;
use richword::morphism::{generate as generate_word, Recipe};
use richword::repetition::max_exponent_factor;
use richword::richness::richness_report;
use richword::search::{
    accepted_blocks, binary_run_bound, check_structure_theorem, enumerate_block_tree,
    fig2_exclusions, fig3_elimination, verify_f_claims, verify_table1, BlockTree, SearchConfig,
};
use richword::sturmian::{
    delta_repetition_transfer, rote_check as rote, sturmian_report as sturmian, ContinuedFraction,
};
use richword::word::{Alphabet, Word};
use richword::Morphism;

use crate::report::Report;
use crate::Settings;

/// Words named on the command line, or a prefix of each fallback recipe.
fn inputs(s: &Settings, fallback: &[Recipe], default_len: usize) -> Vec<(String, Word)> {
    if !s.words.is_empty() {
        return s.words.iter().map(|w| (w.to_string(), w.clone())).collect();
    }
    let len = s.length.unwrap_or(default_len);
    let recipes = match &s.recipe {
        Some(r) => vec![r.clone()],
        None => fallback.to_vec(),
    };
    recipes
        .into_iter()
        .map(|r| (format!("{r}[{len}]"), generate_word(&r, len)))
        .collect()
}

pub fn generate(s: &Settings) -> anyhow::Result<Report> {
    let recipe = s.recipe.clone().unwrap_or(Recipe::Fgh);
    let len = s.length.unwrap_or(100);
    let word = generate_word(&recipe, len);
    let mut r = Report::new("generate");
    r.set("recipe", recipe.to_string());
    r.set("length", len);
    r.set("word", &word);
    r.rows.push(vec![word.to_string()]);
    Ok(r)
}

pub fn rich_check(s: &Settings) -> anyhow::Result<Report> {
    if s.words.is_empty() && s.recipe.is_none() {
        bail!("give --word, --input or --recipe");
    }
    let mut r = Report::new("rich-check");
    r.header = vec!["word", "length", "distinct_palindromes", "defect", "first_defect_position"];
    let mut results = Vec::new();
    for (label, w) in inputs(s, &[], 0) {
        let rep = richness_report(&w);
        r.check(rep.is_rich(), || format!("{label} has defect {}", rep.defect));
        r.rows.push(vec![
            label.clone(),
            rep.word_length.to_string(),
            rep.distinct_palindromes.to_string(),
            rep.defect.to_string(),
            rep.first_defect_position.map_or("-".into(), |p| p.to_string()),
        ]);
        results.push(json!({"word": label, "report": rep}));
    }
    r.set("results", results);
    Ok(r)
}

pub fn exponent(s: &Settings) -> anyhow::Result<Report> {
    if s.words.is_empty() && s.recipe.is_none() {
        bail!("give --word, --input or --recipe");
    }
    let mut r = Report::new("exponent");
    r.header = vec!["word", "max_exponent", "start", "period", "length"];
    let mut results = Vec::new();
    let items = inputs(s, &[], 1000);
    for (label, w) in &items {
        let (e, wit) = max_exponent_factor(w).context("exponent of the empty word")?;
        r.rows.push(vec![
            label.clone(),
            e.to_string(),
            wit.start.to_string(),
            wit.period.to_string(),
            wit.length.to_string(),
        ]);
        results.push(json!({
            "word": label,
            "max_exponent": e,
            "witness": {"start": wit.start, "period": wit.period, "length": wit.length},
        }));
    }
    if let [single] = results.as_slice() {
        r.set("max_exponent", &single["max_exponent"]);
        r.set("witness", &single["witness"]);
    } else {
        r.set("results", results);
    }
    Ok(r)
}

fn search_config(s: &Settings) -> anyhow::Result<SearchConfig> {
    Ok(SearchConfig::new(
        s.threshold.clone(),
        s.banned.clone(),
        s.depth_cap,
        Morphism::f(),
    )?)
}

pub fn table1(s: &Settings) -> anyhow::Result<Report> {
    let cfg = search_config(s)?;
    let rows = verify_table1(&cfg);
    let mut r = Report::new("table1");
    r.header = vec!["v", "expected", "got", "witness_extension", "certified"];
    for row in &rows {
        let expected = row.expected.map_or("*".to_string(), |n| n.to_string());
        r.check(row.matches, || {
            format!("{}: expected {expected}, got {} (certified {})", row.v, row.got, row.certified)
        });
        r.rows.push(vec![
            row.v.to_string(),
            expected,
            row.got.to_string(),
            row.witness_extension.as_ref().map_or("-".into(), Word::to_string),
            row.certified.to_string(),
        ]);
    }
    r.set("threshold", &cfg.threshold().to_string());
    r.set("depth_cap", cfg.depth_cap());
    r.set("rows", &rows);
    Ok(r)
}

pub fn run_bound() -> anyhow::Result<Report> {
    let mut r = Report::new("run-bound");
    r.header = vec!["morphism", "length", "witness"];
    let mut results = Vec::new();
    for m in [Morphism::f(), Morphism::g(), Morphism::h()] {
        let b = binary_run_bound(&m)?;
        r.check(b.length == 6, || format!("{}: expected 6, got {}", b.morphism, b.length));
        r.rows.push(vec![b.morphism.clone(), b.length.to_string(), b.witness.to_string()]);
        results.push(b);
    }
    r.set("results", results);
    Ok(r)
}

pub fn lemma_trees(s: &Settings) -> Report {
    let trees: Vec<BlockTree> = match s.tree {
        Some(t) => vec![t],
        None => BlockTree::ALL.to_vec(),
    };
    let mut r = Report::new("lemma-trees");
    r.header = vec!["tree", "leaf", "verdict", "witness", "contexts"];
    let mut out = Vec::new();
    for tree in trees {
        let leaves = enumerate_block_tree(tree);
        let accepted = accepted_blocks(&leaves);
        r.check(accepted == tree.expected_blocks(), || {
            format!("{tree}: accepted {accepted:?}")
        });
        let mut extra = Vec::new();
        if tree == BlockTree::Fig2 {
            extra = fig2_exclusions();
        }
        if tree == BlockTree::Fig3 {
            extra = fig3_elimination();
        }
        for c in extra.iter().filter(|c| !c.holds) {
            r.mismatches.push(format!("{tree}: {}", c.claim));
        }
        for l in &leaves {
            let (kind, witness) = verdict_parts(&l.verdict);
            let contexts = l
                .context_witnesses
                .iter()
                .map(|(ctx, v)| {
                    let (k, w) = verdict_parts(v);
                    format!("{ctx}:{k}({w})")
                })
                .collect::<Vec<_>>()
                .join(",");
            r.rows.push(vec![tree.to_string(), l.leaf_word.to_string(), kind, witness, contexts]);
        }
        out.push(json!({
            "tree": tree,
            "accepted_blocks": accepted,
            "leaves": leaves,
            "extra_checks": extra,
        }));
    }
    r.set("trees", out);
    r
}

fn verdict_parts(v: &richword::search::Verdict) -> (String, String) {
    let kind = serde_json::to_value(v).expect("serializable")["kind"]
        .as_str()
        .unwrap_or_default()
        .to_string();
    (kind, v.witness().map_or("-".into(), Word::to_string))
}

pub fn f_claims() -> Report {
    let checks = verify_f_claims();
    let mut r = Report::new("f-claims");
    r.header = vec!["claim", "holds"];
    for c in &checks {
        r.check(c.holds, || c.claim.clone());
        r.rows.push(vec![c.claim.clone(), c.holds.to_string()]);
    }
    r.set("claims", checks);
    r
}

pub fn structure_check(s: &Settings) -> anyhow::Result<Report> {
    let n_max = s.n_max.unwrap_or(4);
    let mut r = Report::new("structure-check");
    r.header = vec!["word", "n", "branch", "fh_parses", "fgh_parses", "residual_length"];
    let mut results = Vec::new();
    for (label, w) in inputs(s, &[Recipe::Fh, Recipe::Fgh], 5000) {
        match check_structure_theorem(&w, n_max) {
            Ok(rows) => {
                for row in &rows {
                    r.check(row.succeeded(), || format!("{label}: n={} parses on neither branch", row.n));
                    r.rows.push(vec![
                        label.clone(),
                        row.n.to_string(),
                        row.branch.map_or("-".into(), |b| format!("{b:?}")),
                        row.fh_parses.to_string(),
                        row.fgh_parses.to_string(),
                        row.residual.as_ref().map_or("-".into(), |w| w.len().to_string()),
                    ]);
                }
                results.push(json!({"word": label, "rows": rows}));
            }
            Err(e) => {
                r.mismatches.push(format!("{label}: {e}"));
                results.push(json!({"word": label, "error": e.to_string()}));
            }
        }
    }
    r.set("results", results);
    Ok(r)
}

pub fn sturmian_report(s: &Settings) -> anyhow::Result<Report> {
    let k_max = s.n_max.unwrap_or(12).max(2);
    let justin_k_max = k_max.min(6);
    let rows = sturmian(k_max, justin_k_max)?;
    let mut r = Report::new("sturmian-report");
    r.header = vec!["k", "q_k", "E_k", "E_k_decimal", "identity", "justin_check"];
    for row in &rows {
        let expected = if row.k % 2 == 0 { 7 } else { -7 };
        r.check(row.identity_value == expected, || {
            format!("k={}: q-identity gives {}", row.k, row.identity_value)
        });
        r.check(row.justin_check != Some(false), || format!("k={}: Justin bound fails", row.k));
        r.rows.push(vec![
            row.k.to_string(),
            row.q_k.to_string(),
            row.e_k.to_string(),
            format!("{:.12}", row.e_k_decimal),
            row.identity_value.to_string(),
            row.justin_check.map_or("-".into(), |b| b.to_string()),
        ]);
    }
    for pair in rows.windows(2) {
        r.check(pair[1].e_k > pair[0].e_k, || format!("E_{} <= E_{}", pair[1].k, pair[0].k));
    }
    r.set("slope", ContinuedFraction::paper_slope().to_string());
    r.set("rows", rows);
    Ok(r)
}

pub fn rote_check(s: &Settings) -> anyhow::Result<Report> {
    let n_max = s.n_max.unwrap_or(50);
    let mut r = Report::new("rote-check");
    r.header = vec!["word", "n", "complexity", "exact_required", "complement_closed"];
    let mut results = Vec::new();
    for (label, w) in inputs(s, &[Recipe::Fh, Recipe::Fgh], 100_000) {
        if w.as_slice().iter().any(|&x| x > 1) {
            bail!("{label} is not binary");
        }
        let w = Word::new(Alphabet::Binary, w.into_vec())?;
        let report = rote(&w, n_max)?;
        for row in &report.rows {
            r.check(row.passed, || {
                format!("{label}: n={} has C(n)={} (closed: {})", row.n, row.complexity, row.complement_closed)
            });
            r.rows.push(vec![
                label.clone(),
                row.n.to_string(),
                row.complexity.to_string(),
                row.exact_required.to_string(),
                row.complement_closed.to_string(),
            ]);
        }
        results.push(json!({"word": label, "report": report}));
    }
    r.set("results", results);
    Ok(r)
}

pub fn delta_check(s: &Settings) -> anyhow::Result<Report> {
    let mut r = Report::new("delta-check");
    r.header = vec!["word", "repetitions_checked", "counterexamples"];
    let words: Vec<Word> = if s.words.is_empty() {
        let max_len = s.length.unwrap_or(30).max(3);
        let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
        (0..10_000)
            .map(|_| {
                let len = rng.gen_range(3..=max_len);
                Word::new(Alphabet::Binary, (0..len).map(|_| rng.gen_range(0..2u8)).collect())
                    .expect("binary")
            })
            .collect()
    } else {
        s.words.clone()
    };
    let (mut total, mut failures) = (0usize, Vec::new());
    for w in &words {
        let w = Word::new(Alphabet::Binary, w.as_slice().to_vec())
            .with_context(|| format!("{w} is not binary"))?;
        let rep = delta_repetition_transfer(&w)?;
        total += rep.repetitions_checked;
        if !rep.counterexamples.is_empty() {
            r.mismatches.push(format!("{w}: {} counterexamples", rep.counterexamples.len()));
            failures.push(json!({"word": w, "counterexamples": rep.counterexamples}));
        }
        if !s.words.is_empty() {
            r.rows.push(vec![w.to_string(), rep.repetitions_checked.to_string(), rep.counterexamples.len().to_string()]);
        }
    }
    if s.words.is_empty() {
        r.rows.push(vec![
            format!("{} random words (seed {})", words.len(), s.seed),
            total.to_string(),
            failures.len().to_string(),
        ]);
    }
    r.set("words_checked", words.len());
    r.set("repetitions_checked", total);
    r.set("failures", failures);
    Ok(r)
}

pub fn full_verify() -> Report {
    let mut r = Report::new("full-verify");
    r.header = vec!["criterion", "name", "status", "detail"];
    let mut results = Vec::new();
    for c in criteria() {
        let outcome = (c.run)();
        let (status, detail) = match &outcome {
            Ok(d) => ("PASS", d.clone()),
            Err(d) => ("FAIL", d.clone()),
        };
        r.rows.push(vec![c.id.to_string(), c.name.to_string(), status.into(), detail.clone()]);
        results.push(json!({"criterion": c.id, "name": c.name, "status": status, "detail": detail}));
        if outcome.is_err() {
            r.mismatches.push(format!("criterion {} ({}): {detail}", c.id, c.name));
            break;
        }
    }
    r.set("criteria", results);
    r
}
