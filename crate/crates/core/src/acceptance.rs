//! The acceptance suite: fifteen end-to-end checks covering every finite
//! computation the structure and threshold results rest on. Each check
//! returns a one-line detail on success and a diagnostic on failure.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::morphism::{delta, generate, Morphism, Recipe};
use crate::rational::Rational;
use crate::repetition::{is_alpha_free, max_exponent_factor, maximal_repetitions};
use crate::richness::{is_rich, richness_report};
use crate::search::{
    accepted_blocks, binary_run_bound, check_structure_theorem, enumerate_block_tree,
    fig2_exclusions, fig3_elimination, longest_good_extension, verify_table1, BlockTree, Branch,
    ExtensionResult, SearchConfig, Verdict, FORBIDDEN_F, TABLE1,
};
use crate::sturmian::{
    characteristic_prefix, convergents, delta_repetition_transfer, e_k, e_k_limit_bounds,
    justin_check, rote_check, verify_q_identity, ContinuedFraction,
};
use crate::word::{Alphabet, Word};

pub type Outcome = Result<String, String>;

fn t(s: &str) -> Word {
    Word::ternary(s).unwrap()
}

fn within(elapsed: Duration, limit_secs: u64) -> Result<(), String> {
    if elapsed <= Duration::from_secs(limit_secs) {
        Ok(())
    } else {
        Err(format!("took {elapsed:.1?}, limit {limit_secs}s"))
    }
}

fn table1() -> Outcome {
    let start = Instant::now();
    let rows = verify_table1(&SearchConfig::default());
    let elapsed = start.elapsed();
    let mismatches: Vec<String> = rows
        .iter()
        .filter(|r| !r.matches)
        .map(|r| format!("{}: expected {:?}, got {} (certified {})", r.v, r.expected, r.got, r.certified))
        .collect();
    if !mismatches.is_empty() {
        return Err(mismatches.join("; "));
    }
    within(elapsed, 300)?;
    Ok(format!("13/13 rows certified in {elapsed:.1?}"))
}

fn lemma_bound() -> Outcome {
    let start = Instant::now();
    let cfg = SearchConfig::default().with_banned_factors(vec![t("0110")]).unwrap();
    let r = longest_good_extension(&t("212"), &cfg).unwrap();
    let elapsed = start.elapsed();
    if r.outcome != ExtensionResult::LongestGood(21) || !r.certified {
        return Err(format!("got {} (certified {})", r.outcome, r.certified));
    }
    within(elapsed, 30)?;
    Ok(format!("212 -> 21 in {elapsed:.1?}"))
}

fn run_bound() -> Outcome {
    let mut got = Vec::new();
    for m in [Morphism::f(), Morphism::g(), Morphism::h()] {
        let r = binary_run_bound(&m).map_err(|e| e.to_string())?;
        if r.length != 6 {
            return Err(format!("{}: {}", m.name(), r.length));
        }
        got.push(format!("{}={}", m.name(), r.length));
    }
    Ok(got.join(" "))
}

fn threshold_sensitivity() -> Outcome {
    let cfg = SearchConfig::default()
        .with_threshold(Rational::from_integer(3))
        .unwrap()
        .with_depth_cap(200)
        .unwrap();
    let capped: Vec<&str> = TABLE1
        .iter()
        .filter(|(v, _)| {
            matches!(
                longest_good_extension(&t(v), &cfg).unwrap().outcome,
                ExtensionResult::CapExceeded(200)
            )
        })
        .map(|(v, _)| *v)
        .collect();
    if capped.is_empty() {
        Err("no row reached the depth cap".into())
    } else {
        Ok(format!("capped rows: {}", capped.join(",")))
    }
}

fn lemma_trees() -> Outcome {
    let expected_final: [(BlockTree, &[&str]); 3] = [
        (BlockTree::Fig1, &["011", "0121", "012121"]),
        (BlockTree::Fig2, &["01", "02", "022"]),
        (BlockTree::Fig3, &["01", "02", "022"]),
    ];
    let table: Vec<Word> = TABLE1.iter().map(|(v, _)| t(v)).collect();
    let fig2_factors: Vec<Word> = ["00", "11", "12", "21"].iter().map(|s| t(s)).collect();
    let f_set: Vec<Word> = FORBIDDEN_F.iter().map(|s| t(s)).collect();
    let mut summary = Vec::new();
    for (tree, expected) in expected_final {
        let leaves = enumerate_block_tree(tree);
        let mut accepted = accepted_blocks(&leaves);
        if tree == BlockTree::Fig3 {
            if !fig3_elimination().iter().all(|c| c.holds) {
                return Err("fig3: elimination of 0121 failed".into());
            }
            accepted.remove(&t("0121"));
        }
        if tree == BlockTree::Fig2 && !fig2_exclusions().iter().all(|c| c.holds) {
            return Err("fig2: g-image exclusions failed".into());
        }
        let expected: BTreeSet<Word> = expected.iter().map(|s| t(s)).collect();
        if accepted != expected {
            return Err(format!("{tree}: accepted {accepted:?}"));
        }
        let forbidden = match tree {
            BlockTree::Fig1 => &table,
            BlockTree::Fig2 => &fig2_factors,
            BlockTree::Fig3 => &f_set,
        };
        for leaf in &leaves {
            let category_ok = match (&leaf.verdict, tree) {
                (Verdict::AcceptedBlock | Verdict::Cube(_), _) => true,
                (Verdict::NonRich(_), BlockTree::Fig1 | BlockTree::Fig3) => true,
                (Verdict::ForbiddenTable(_), BlockTree::Fig1 | BlockTree::Fig2) => true,
                (Verdict::ForbiddenF(_), BlockTree::Fig3) => true,
                _ => false,
            };
            let witnessed = if leaf.context_witnesses.is_empty() {
                leaf.verdict.recheck(&leaf.leaf_word, forbidden)
            } else {
                leaf.context_witnesses
                    .iter()
                    .all(|(ctx, v)| v.recheck(&ctx.concat(&leaf.leaf_word), forbidden))
            };
            if !category_ok || !witnessed {
                return Err(format!("{tree}: leaf {} has bad witness {:?}", leaf.leaf_word, leaf.verdict));
            }
        }
        summary.push(format!("{tree}: {} leaves", leaves.len()));
    }
    Ok(summary.join(", "))
}

fn richness_at_scale() -> Outcome {
    let mut parts = Vec::new();
    for recipe in [Recipe::Fh, Recipe::Fgh] {
        let w = generate(&recipe, 100_000);
        let start = Instant::now();
        let report = richness_report(&w);
        let elapsed = start.elapsed();
        if report.defect != 0 {
            return Err(format!("{recipe}: defect {}", report.defect));
        }
        within(elapsed, 10)?;
        parts.push(format!("{recipe} defect 0 in {elapsed:.1?}"));
    }
    Ok(parts.join(", "))
}

/// Both words must be 14/5-free. The exponent ladder `E_k` belongs to the
/// slope `[0; 4, 2̄]` of Δ(FGH), so FGH must top out at some `E_k` and attain
/// 13/5 and 34/13. FH is checked against the same formula for its own
/// slope `[0; 2̄]`.
fn fourteen_fifths_freeness() -> Outcome {
    let ladder = |cf: ContinuedFraction| -> Vec<Rational> {
        let table = convergents(&cf, 13);
        (2..=12).map(|k| e_k(&table, k).unwrap()).collect()
    };
    let paper = ladder(ContinuedFraction::paper_slope());
    let pell = ladder(ContinuedFraction::new(vec![0], vec![2]).unwrap());
    let mut parts = Vec::new();
    for (recipe, ladder, required) in [
        (Recipe::Fgh, &paper, vec![Rational::new(13, 5), Rational::new(34, 13)]),
        (Recipe::Fh, &pell, vec![Rational::new(18, 7), Rational::new(45, 17)]),
    ] {
        let w = generate(&recipe, 10_000);
        if !is_alpha_free(&w, &Rational::fourteen_fifths()) {
            return Err(format!("{recipe}: contains a 14/5-power"));
        }
        let (max, _) = max_exponent_factor(&w).unwrap();
        let Some(k) = ladder.iter().position(|e| e == &max) else {
            return Err(format!("{recipe}: max exponent {max} is not on its E_k ladder"));
        };
        let attained: BTreeSet<Rational> = maximal_repetitions(&w, &Rational::from_integer(2))
            .into_iter()
            .map(|r| r.exponent)
            .collect();
        for needed in &required {
            if !attained.contains(needed) {
                return Err(format!("{recipe}: exponent {needed} not attained"));
            }
        }
        parts.push(format!("{recipe} max {max} = E_{}", k + 2));
    }
    Ok(parts.join(", "))
}

fn delta_identities() -> Outcome {
    let (f, g, h, xi, eta) = (Morphism::f(), Morphism::g(), Morphism::h(), Morphism::xi(), Morphism::eta());
    let zero3 = t("0");
    let zero2 = Word::binary("0").unwrap();
    let widen = |w: Word| Word::binary(&w.to_string()).unwrap();
    for n in 0..=12 {
        let hn = h.iterate(n, &zero3).unwrap();
        let xin = xi.iterate(n, &zero2).unwrap();
        let lhs = delta(&widen(f.apply(&hn).unwrap()).concat(&zero2)).unwrap();
        if lhs != xin {
            return Err(format!("n={n}: delta(f(h^n(0))0) != xi^n(0)"));
        }
        let lhs = delta(&widen(f.apply(&g.apply(&hn).unwrap()).unwrap()).concat(&zero2)).unwrap();
        let rhs = eta.apply(&xi.iterate(n + 1, &zero2).unwrap()).unwrap();
        if lhs != rhs {
            return Err(format!("n={n}: delta(f(g(h^n(0)))0) != eta(xi^(n+1)(0))"));
        }
    }
    let compose = |a: &Morphism, b: &Morphism| Morphism::compose(a, b).unwrap();
    let checks = [
        ("lambda.h = xi.lambda", compose(&Morphism::lambda(), &h).same_map(&compose(&xi, &Morphism::lambda()))),
        ("mu = eta.xi.lambda", Morphism::mu().same_map(&compose(&eta, &compose(&xi, &Morphism::lambda())))),
        ("g = g~.h", g.same_map(&compose(&Morphism::g_tilde(), &h))),
    ];
    for (name, holds) in checks {
        if !holds {
            return Err(format!("{name} fails"));
        }
    }
    Ok("n = 0..12 and three composition identities".into())
}

fn convergent_identities() -> Outcome {
    let table = convergents(&ContinuedFraction::paper_slope(), 41);
    let report = verify_q_identity(&table, 40).map_err(|e| e.to_string())?;
    if !report.all_hold {
        let bad: Vec<usize> = report.rows.iter().filter(|r| !r.identity_holds || !r.increasing).map(|r| r.k).collect();
        return Err(format!("identity or monotonicity fails at k = {bad:?}"));
    }
    let e40 = e_k(&table, 40).unwrap();
    let (lo, hi) = e_k_limit_bounds(40);
    let tol = Rational::new(1, 1_000_000_000_000i64);
    // |E40 - L| < tol follows from lo < L < hi and both gaps below tol.
    let gap_lo = (&e40 - &lo).abs();
    let gap_hi = (&e40 - &hi).abs();
    if gap_lo >= tol || gap_hi >= tol {
        return Err(format!("E40 too far from the limit ({:.3e})", gap_hi.to_f64()));
    }
    Ok(format!("k = 2..40, |E40 - L| < {:.1e}", gap_hi.to_f64()))
}

fn justin() -> Outcome {
    let cf = ContinuedFraction::paper_slope();
    let table = convergents(&cf, 8);
    let prefix = characteristic_prefix(&cf, table.q_usize(6).unwrap() * 8);
    let mut parts = Vec::new();
    for k in 2..=6 {
        let row = justin_check(&table, k, &prefix).map_err(|e| e.to_string())?;
        if !row.holds {
            return Err(format!("k={k}: expected {}, got {}", row.expected, row.got));
        }
        parts.push(format!("{}", row.got));
    }
    Ok(format!("lengths {}", parts.join(",")))
}

fn rote() -> Outcome {
    for recipe in [Recipe::Fh, Recipe::Fgh] {
        let w = generate(&recipe, 100_000);
        let report = rote_check(&w, 50).map_err(|e| e.to_string())?;
        if !report.passed || !report.rows.iter().all(|r| r.exact_required) {
            let bad = report.rows.iter().find(|r| !r.passed).map(|r| (r.n, r.complexity, r.complement_closed));
            return Err(format!("{recipe}: first failing (n, C(n), closed) = {bad:?}"));
        }
    }
    Ok("C(n) = 2n and complement-closed for n = 1..50, both words".into())
}

fn all_ternary(max_len: usize) -> Vec<Word> {
    let mut out = vec![Word::empty(Alphabet::Ternary)];
    let mut level = out.clone();
    for _ in 0..max_len {
        level = level
            .iter()
            .flat_map(|w| Alphabet::Ternary.symbols().map(move |s| w.with_symbol(s).unwrap()))
            .collect();
        out.extend(level.iter().cloned());
    }
    out
}

fn nonrichness_preservation() -> Outcome {
    let morphisms = [Morphism::f(), Morphism::g(), Morphism::h()];
    let zero = t("0");
    let mut checked = 0;
    for w in all_ternary(7) {
        if is_rich(&w) {
            continue;
        }
        for m in &morphisms {
            checked += 1;
            let image = m.apply(&w).unwrap().concat(&zero);
            if is_rich(&image) {
                return Err(format!("{}({w})0 is rich", m.name()));
            }
        }
    }
    Ok(format!("{checked} (word, morphism) pairs"))
}

fn delta_transfer() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let mut repetitions = 0;
    for _ in 0..10_000 {
        let len = rng.gen_range(3..=30);
        let w = Word::new(Alphabet::Binary, (0..len).map(|_| rng.gen_range(0..2u8)).collect()).unwrap();
        let report = delta_repetition_transfer(&w).map_err(|e| e.to_string())?;
        if let Some(c) = report.counterexamples.first() {
            return Err(format!("{w}: {c:?}"));
        }
        repetitions += report.repetitions_checked;
    }
    Ok(format!("{repetitions} repetitions, 0 counterexamples"))
}

fn structure() -> Outcome {
    for (recipe, branch) in [(Recipe::Fh, Branch::FH), (Recipe::Fgh, Branch::FGH)] {
        let rows = check_structure_theorem(&generate(&recipe, 5000), 4).map_err(|e| e.to_string())?;
        if let Some(r) = rows.iter().find(|r| r.branch != Some(branch)) {
            return Err(format!("{recipe}: n={} parsed as {:?}", r.n, r.branch));
        }
    }
    Ok("n = 1..4 on both recipes".into())
}

fn brute_rich(w: &[u8]) -> bool {
    let mut palindromes = BTreeSet::new();
    for i in 0..w.len() {
        for j in i + 1..=w.len() {
            let f = &w[i..j];
            if f.iter().eq(f.iter().rev()) {
                palindromes.insert(f);
            }
        }
    }
    palindromes.len() == w.len()
}

fn brute_max_exponent(w: &[u8]) -> Rational {
    let mut best = Rational::zero();
    for i in 0..w.len() {
        for j in i + 1..=w.len() {
            let f = &w[i..j];
            let p = (1..=f.len()).find(|&p| (p..f.len()).all(|k| f[k] == f[k - p])).unwrap();
            let e = Rational::new(f.len() as i64, p as i64);
            if e > best {
                best = e;
            }
        }
    }
    best
}

fn oracles() -> Outcome {
    let mut buf = Vec::new();
    let mut rich_checked = 0u64;
    fn rec(buf: &mut Vec<u8>, left: usize, alphabet: u8, visit: &mut dyn FnMut(&[u8]) -> Result<(), String>) -> Result<(), String> {
        visit(buf)?;
        if left == 0 {
            return Ok(());
        }
        for s in 0..alphabet {
            buf.push(s);
            rec(buf, left - 1, alphabet, visit)?;
            buf.pop();
        }
        Ok(())
    }
    rec(&mut buf, 12, 3, &mut |w| {
        rich_checked += 1;
        let word = Word::new(Alphabet::Ternary, w.to_vec()).unwrap();
        if is_rich(&word) != brute_rich(w) {
            return Err(format!("is_rich disagrees on {word}"));
        }
        Ok(())
    })?;
    let mut exp_checked = 0u64;
    rec(&mut buf, 14, 2, &mut |w| {
        if w.is_empty() {
            return Ok(());
        }
        exp_checked += 1;
        let word = Word::new(Alphabet::Binary, w.to_vec()).unwrap();
        let (e, witness) = max_exponent_factor(&word).unwrap();
        if e != brute_max_exponent(w) || !witness.verify(&word) {
            return Err(format!("max_exponent_factor disagrees on {word}"));
        }
        Ok(())
    })?;
    Ok(format!("{rich_checked} ternary and {exp_checked} binary words"))
}

pub struct Criterion {
    pub id: usize,
    pub name: &'static str,
    pub run: fn() -> Outcome,
}

pub fn criteria() -> Vec<Criterion> {
    let list: [(&'static str, fn() -> Outcome); 15] = [
        ("table 1 reproduction", table1),
        ("212 bound with 0110 banned", lemma_bound),
        ("binary run bound", run_bound),
        ("threshold sensitivity", threshold_sensitivity),
        ("block trees", lemma_trees),
        ("richness at scale", richness_at_scale),
        ("14/5-freeness and exponent ladder", fourteen_fifths_freeness),
        ("delta identities", delta_identities),
        ("convergent identities", convergent_identities),
        ("justin check", justin),
        ("rote checks", rote),
        ("non-richness preservation", nonrichness_preservation),
        ("delta repetition transfer", delta_transfer),
        ("structure theorem", structure),
        ("oracle equivalences", oracles),
    ];
    list.into_iter()
        .enumerate()
        .map(|(i, (name, run))| Criterion { id: i + 1, name, run })
        .collect()
}
