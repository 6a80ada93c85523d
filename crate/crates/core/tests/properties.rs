use proptest::prelude::*;

use richword::eertree::Eertree;
use richword::morphism::{delta, desubstitute, generate, Morphism, Recipe};
use richword::rational::Rational;
use richword::repetition::{is_alpha_free, suffix_extension_safe};
use richword::richness::{is_rich, richness_report};
use richword::search::{longest_good_extension, SearchConfig};
use richword::sturmian::{
    convergents, e_k, standard_word, ContinuedFraction, StandardWordFamily,
};
use richword::word::{Alphabet, Symbol, Word};

fn ternary(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u8..3, 0..=max).prop_map(|v| Word::new(Alphabet::Ternary, v).unwrap())
}

fn binary(max: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec(0u8..2, 0..=max).prop_map(|v| Word::new(Alphabet::Binary, v).unwrap())
}

fn threshold() -> impl Strategy<Value = Rational> {
    (1i64..40, 1i64..20).prop_map(|(a, b)| Rational::new(2 * b + a, b))
}

fn t(s: &str) -> Word {
    Word::ternary(s).unwrap()
}

proptest! {
    #[test]
    fn letters_bounded_by_alphabet(w in ternary(40)) {
        prop_assert!(w.distinct_factors(1).len() <= 3);
    }

    #[test]
    fn reverse_and_complement_commute(w in binary(40)) {
        prop_assert_eq!(w.complement().unwrap().reverse(), w.reverse().complement().unwrap());
    }

    #[test]
    fn rational_order_matches_reals(a in -50i64..50, b in 1i64..30, c in -50i64..50, d in 1i64..30) {
        let (x, y) = (Rational::new(a, b), Rational::new(c, d));
        prop_assert_eq!(x < y, a * d < c * b);
        prop_assert_eq!(x == y, a * d == c * b);
    }

    #[test]
    fn richness_is_hereditary(w in ternary(24), i in 0usize..24, j in 0usize..24) {
        let (i, j) = (i.min(w.len()), j.min(w.len()));
        let (i, j) = (i.min(j), i.max(j));
        if is_rich(&w) {
            prop_assert!(is_rich(&w.factor(i..j)));
        }
    }

    #[test]
    fn non_richness_is_never_repaired(w in ternary(20), tail in ternary(10)) {
        let mut tree = Eertree::new(Alphabet::Ternary);
        let mut broken = false;
        for s in w.symbols().chain(tail.symbols()) {
            let created = tree.push(s).unwrap();
            broken |= !created;
            let prefix = Word::new(Alphabet::Ternary, tree.text().to_vec()).unwrap();
            prop_assert_eq!(is_rich(&prefix), !broken);
        }
    }

    #[test]
    fn palindrome_count_bounded(w in ternary(40)) {
        let r = richness_report(&w);
        prop_assert!(r.distinct_palindromes <= r.word_length);
        prop_assert_eq!(r.defect, r.word_length - r.distinct_palindromes);
    }

    #[test]
    fn incremental_check_equals_whole_word(w in binary(40), alpha in threshold()) {
        let incremental = (1..=w.len()).all(|n| suffix_extension_safe(&w.prefix(n), &alpha));
        prop_assert_eq!(incremental, is_alpha_free(&w, &alpha));
    }

    #[test]
    fn alpha_freeness_is_antitone(w in binary(30), a in threshold(), b in threshold()) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        if is_alpha_free(&w, &lo) {
            prop_assert!(is_alpha_free(&w, &hi));
        }
    }

    #[test]
    fn alpha_freeness_is_factor_closed(w in binary(30), alpha in threshold(), i in 0usize..30, j in 0usize..30) {
        let (i, j) = (i.min(w.len()), j.min(w.len()));
        let (i, j) = (i.min(j), i.max(j));
        if is_alpha_free(&w, &alpha) {
            prop_assert!(is_alpha_free(&w.factor(i..j), &alpha));
        }
    }

    #[test]
    fn delta_of_images(w in ternary(30)) {
        let zero = Word::binary("0").unwrap();
        let as_binary = |w: Word| Word::binary(&w.to_string()).unwrap();
        let fw = as_binary(Morphism::f().apply(&w).unwrap()).concat(&zero);
        prop_assert_eq!(delta(&fw).unwrap(), Morphism::lambda().apply(&w).unwrap());
        let fgw = as_binary(Morphism::f().apply(&Morphism::g().apply(&w).unwrap()).unwrap()).concat(&zero);
        prop_assert_eq!(delta(&fgw).unwrap(), Morphism::mu().apply(&w).unwrap());
    }

    #[test]
    fn desubstitution_round_trip(u in ternary(30)) {
        prop_assume!(!u.is_empty());
        for m in [Morphism::f(), Morphism::g(), Morphism::h()] {
            let d = desubstitute(&m.apply(&u).unwrap(), &m).unwrap();
            prop_assert_eq!(&d.core_preimage, &u);
            prop_assert_eq!((d.dropped_prefix, d.dropped_suffix), (0, 0));
        }
    }

    /// Once the image of a node fails, appending symbols never helps.
    #[test]
    fn failure_is_absorbing(v in ternary(8), tail in ternary(6)) {
        let cfg = SearchConfig::default();
        if !v.is_empty() && !cfg.accepts(&v) {
            prop_assert!(!cfg.accepts(&v.concat(&tail)));
        }
    }
}

#[test]
fn reversal_identity_exhaustive() {
    let zero = t("0");
    let mut level = vec![Word::empty(Alphabet::Ternary)];
    for _ in 0..=8 {
        for w in &level {
            for m in [Morphism::f(), Morphism::g(), Morphism::h()] {
                let lhs = zero.concat(&m.apply(w).unwrap().reverse());
                let rhs = m.apply(&w.reverse()).unwrap().concat(&zero);
                assert_eq!(lhs, rhs, "{} on {w}", m.name());
            }
        }
        level = level
            .iter()
            .flat_map(|w| Alphabet::Ternary.symbols().map(move |s| w.with_symbol(s).unwrap()))
            .collect();
    }
}

#[test]
fn search_is_independent_of_scheduling() {
    let cfg = SearchConfig::default();
    let run = |threads: usize| {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(threads).build().unwrap();
        pool.install(|| longest_good_extension(&t("0121012"), &cfg).unwrap())
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one, run(3));
}

#[test]
fn exponent_attainment_for_small_k() {
    let table = convergents(&ContinuedFraction::paper_slope(), 8);
    let w = generate(&Recipe::Fgh, 20_000);
    let attained: std::collections::BTreeSet<Rational> =
        richword::repetition::maximal_repetitions(&w, &Rational::from_integer(2))
            .into_iter()
            .map(|r| r.exponent)
            .collect();
    for k in 2..=6 {
        assert!(attained.contains(&e_k(&table, k).unwrap()), "E_{k}");
    }
}

#[test]
fn standard_lengths_are_denominators() {
    let cf = ContinuedFraction::paper_slope();
    let table = convergents(&cf, 14);
    let family = StandardWordFamily::new(&cf, 14);
    for n in 0..=14 {
        assert_eq!(Some(family.standard(n).unwrap().len()), table.q_usize(n as i64));
        assert_eq!(standard_word(&cf, n).len(), family.standard(n).unwrap().len());
    }
    // zero-count parity: odd in every s_k, even in every s_{k,1}
    for k in 2..=12 {
        assert_eq!(family.standard(k).unwrap().count(Symbol::ZERO) % 2, 1);
        assert_eq!(family.semi_standard(k, 1).unwrap().count(Symbol::ZERO) % 2, 0);
    }
}

#[test]
fn delta_bridge() {
    let len = 10_000;
    let u = generate(&Recipe::Fgh, len + 1);
    let u = Word::binary(&u.to_string()).unwrap();
    let eta_xi = generate(&Recipe::EtaXi, len);
    assert_eq!(delta(&u).unwrap(), eta_xi);
}
