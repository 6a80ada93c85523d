//! Trees of candidate 0-blocks: every prefix of `b0`, where `b` starts with
//! 0 and has no other 0, is grown until it is rejected with a witness or
//! closed by the next 0.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::claims::ClaimCheck;
use super::TABLE1;
use crate::error::{Error, Result};
use crate::morphism::Morphism;
use crate::rational::Rational;
use crate::repetition::{is_cube_free, shortest_violating_suffix};
use crate::richness::{is_rich, shortest_nonrich_suffix};
use crate::word::{Alphabet, Word};

/// Factors that a suffix of every relevant preimage avoids.
pub const FORBIDDEN_F: [&str; 5] = ["1221", "00", "10101", "212", "11"];

/// Largest block tree depth; the real trees stop well before this.
const MAX_DEPTH: usize = 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BlockTree {
    /// Blocks of a preimage under `g`: Table words, cubes, richness, and a
    /// predecessor block ending in 11 or 21.
    Fig1,
    /// Blocks of a preimage under `h` of a `g`-preimage: the factors
    /// 00, 11, 12, 21 and cubes.
    Fig2,
    /// Blocks of a preimage under `h`: the set F, cubes and richness.
    Fig3,
}

impl BlockTree {
    pub const ALL: [BlockTree; 3] = [BlockTree::Fig1, BlockTree::Fig2, BlockTree::Fig3];

    /// Blocks the tree should accept. For `Fig3` this includes `0121`, which
    /// [`fig3_elimination`] rules out separately.
    pub fn expected_blocks(self) -> BTreeSet<Word> {
        let blocks: &[&str] = match self {
            BlockTree::Fig1 => &["011", "0121", "012121"],
            BlockTree::Fig2 => &["01", "02", "022"],
            BlockTree::Fig3 => &["01", "0121", "02", "022"],
        };
        blocks.iter().map(|b| Word::ternary(b).expect("ternary")).collect()
    }

    fn rules(self) -> Rules {
        let words = |list: &[&str]| list.iter().map(|s| Word::ternary(s).expect("ternary")).collect();
        match self {
            BlockTree::Fig1 => Rules {
                richness: true,
                forbidden: words(&TABLE1.map(|(v, _)| v)),
                forbidden_kind: Verdict::ForbiddenTable,
                contexts: vec![Word::ternary("11").unwrap(), Word::ternary("21").unwrap()],
            },
            BlockTree::Fig2 => Rules {
                richness: false,
                forbidden: words(&["00", "11", "12", "21"]),
                forbidden_kind: Verdict::ForbiddenTable,
                contexts: Vec::new(),
            },
            BlockTree::Fig3 => Rules {
                richness: true,
                forbidden: words(&FORBIDDEN_F),
                forbidden_kind: Verdict::ForbiddenF,
                contexts: Vec::new(),
            },
        }
    }
}

impl fmt::Display for BlockTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            BlockTree::Fig1 => "fig1",
            BlockTree::Fig2 => "fig2",
            BlockTree::Fig3 => "fig3",
        })
    }
}

impl FromStr for BlockTree {
    type Err = Error;

    fn from_str(s: &str) -> Result<BlockTree> {
        match s.to_ascii_lowercase().as_str() {
            "fig1" | "1" => Ok(BlockTree::Fig1),
            "fig2" | "2" => Ok(BlockTree::Fig2),
            "fig3" | "3" => Ok(BlockTree::Fig3),
            _ => Err(Error::InvalidConfig(format!("unknown block tree {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", content = "witness")]
pub enum Verdict {
    AcceptedBlock,
    Cube(Word),
    NonRich(Word),
    ForbiddenTable(Word),
    ForbiddenF(Word),
}

impl Verdict {
    pub fn witness(&self) -> Option<&Word> {
        match self {
            Verdict::AcceptedBlock => None,
            Verdict::Cube(w) | Verdict::NonRich(w) | Verdict::ForbiddenTable(w) | Verdict::ForbiddenF(w) => Some(w),
        }
    }

    /// Re-checks the witness against `word`: it must be a factor of it and
    /// actually be a cube, non-rich, or a member of `forbidden`.
    pub fn recheck(&self, word: &Word, forbidden: &[Word]) -> bool {
        match self {
            Verdict::AcceptedBlock => true,
            Verdict::Cube(w) => word.contains_factor(w) && !is_cube_free(w),
            Verdict::NonRich(w) => word.contains_factor(w) && !is_rich(w),
            Verdict::ForbiddenTable(w) | Verdict::ForbiddenF(w) => {
                word.contains_factor(w) && forbidden.contains(w)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LeafReport {
    pub leaf_word: Word,
    pub verdict: Verdict,
    /// For trees with predecessor contexts: the verdict of `context · leaf`
    /// for each context, when the leaf itself is clean.
    pub context_witnesses: Vec<(Word, Verdict)>,
}

struct Rules {
    richness: bool,
    forbidden: Vec<Word>,
    forbidden_kind: fn(Word) -> Verdict,
    contexts: Vec<Word>,
}

impl Rules {
    /// First violation found while reading `word` left to right, reported
    /// as a suffix of the shortest offending prefix.
    fn violation(&self, word: &Word) -> Option<Verdict> {
        let three = Rational::from_integer(3);
        (1..=word.len()).find_map(|end| {
            let prefix = word.prefix(end);
            if let Some(cube) = shortest_violating_suffix(&prefix, &three) {
                return Some(Verdict::Cube(cube));
            }
            if self.richness {
                if let Some(w) = shortest_nonrich_suffix(&prefix) {
                    return Some(Verdict::NonRich(w));
                }
            }
            self.forbidden
                .iter()
                .filter(|f| prefix.ends_with(f))
                .min_by_key(|f| f.len())
                .map(|f| (self.forbidden_kind)(f.clone()))
        })
    }

    /// `None` if the node survives; otherwise its verdict and, when the
    /// rejection comes from the predecessor contexts, the per-context verdicts.
    fn judge(&self, word: &Word) -> Option<(Verdict, Vec<(Word, Verdict)>)> {
        if let Some(v) = self.violation(word) {
            return Some((v, Vec::new()));
        }
        if self.contexts.is_empty() {
            return None;
        }
        let mut witnesses = Vec::new();
        for context in &self.contexts {
            match self.violation(&context.concat(word)) {
                Some(v) => witnesses.push((context.clone(), v)),
                None => return None,
            }
        }
        Some((witnesses[0].1.clone(), witnesses))
    }
}

/// Leaves of the block tree, in lexicographic order of leaf words.
pub fn enumerate_block_tree(tree: BlockTree) -> Vec<LeafReport> {
    let rules = tree.rules();
    let mut leaves = Vec::new();
    grow(&rules, Word::ternary("0").expect("ternary"), &mut leaves);
    leaves.sort_by(|a, b| a.leaf_word.cmp(&b.leaf_word));
    leaves
}

fn grow(rules: &Rules, node: Word, leaves: &mut Vec<LeafReport>) {
    assert!(node.len() <= MAX_DEPTH, "block tree did not close");
    for letter in Alphabet::Ternary.symbols() {
        let child = node.with_symbol(letter).expect("ternary");
        let closes = letter.value() == 0;
        match rules.judge(&child) {
            Some((verdict, context_witnesses)) => leaves.push(LeafReport {
                leaf_word: child,
                verdict,
                context_witnesses,
            }),
            None if closes => leaves.push(LeafReport {
                leaf_word: child,
                verdict: Verdict::AcceptedBlock,
                context_witnesses: Vec::new(),
            }),
            None => grow(rules, child, leaves),
        }
    }
}

/// Blocks (leaf words without the closing 0) of accepted leaves.
pub fn accepted_blocks(leaves: &[LeafReport]) -> BTreeSet<Word> {
    leaves
        .iter()
        .filter(|l| l.verdict == Verdict::AcceptedBlock)
        .map(|l| l.leaf_word.prefix(l.leaf_word.len() - 1))
        .collect()
}

fn table_contains_factor_of(word: &Word, table_word: &str) -> bool {
    word.contains_factor(&Word::ternary(table_word).expect("ternary"))
}

/// The factors excluded in the second tree come from Table words inside
/// their `g`-images.
pub fn fig2_exclusions() -> Vec<ClaimCheck> {
    let g = Morphism::g();
    let img = |s: &str| g.apply(&Word::ternary(s).expect("ternary")).expect("ternary");
    let zero = Word::ternary("0").expect("ternary");
    [
        ("00", img("00"), "11011"),
        ("11", img("11"), "0121012"),
        ("12", img("12"), "0121012"),
        ("21", img("21").concat(&zero), "2101210"),
    ]
    .into_iter()
    .map(|(factor, image, table_word)| {
        ClaimCheck::new(
            format!("g-image of {factor} ({image}) contains the Table word {table_word}"),
            table_contains_factor_of(&image, table_word),
        )
    })
    .collect()
}

/// Rules out the block 0121 in the third tree: every continuation of
/// `0121` by an accepted block either creates a forbidden or non-rich
/// factor, or is `0121` again, which leads to the cube `(0121)^3`.
pub fn fig3_elimination() -> Vec<ClaimCheck> {
    let t = |s: &str| Word::ternary(s).expect("ternary");
    let f: Vec<Word> = FORBIDDEN_F.iter().map(|s| t(s)).collect();
    let zero = t("0");
    let blocks = BlockTree::Fig3.expected_blocks();
    let bad = |w: &Word| -> Option<String> {
        for len in 1..=w.len() {
            for start in 0..=w.len() - len {
                let factor = w.factor(start..start + len);
                if f.contains(&factor) {
                    return Some(format!("{factor} in F"));
                }
                if !is_rich(&factor) {
                    return Some(format!("{factor} not rich"));
                }
            }
        }
        None
    };

    let mut checks = vec![
        ClaimCheck::new("2102 is not rich", !is_rich(&t("2102"))),
        ClaimCheck::new("10101 is in F", f.contains(&t("10101"))),
        ClaimCheck::new("210102 is not rich", !is_rich(&t("210102"))),
        ClaimCheck::new("(0121)^3 is a cube", !is_cube_free(&t("0121").power(3))),
    ];
    let first = t("0121");
    for next in &blocks {
        if next == &first {
            continue;
        }
        if next == &t("01") {
            for third in &blocks {
                let w = first.concat(next).concat(third).concat(&zero);
                let reason = bad(&w);
                checks.push(ClaimCheck::new(
                    format!("0121·01·{third}·0 = {w}: {}", reason.as_deref().unwrap_or("no violation")),
                    reason.is_some(),
                ));
            }
        } else {
            let w = first.concat(next).concat(&zero);
            let reason = bad(&w);
            checks.push(ClaimCheck::new(
                format!("0121·{next}·0 = {w}: {}", reason.as_deref().unwrap_or("no violation")),
                reason.is_some(),
            ));
        }
    }
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(s: &str) -> Word {
        Word::ternary(s).unwrap()
    }

    fn leaf(leaves: &[LeafReport], word: &str) -> Verdict {
        leaves
            .iter()
            .find(|l| l.leaf_word == t(word))
            .unwrap_or_else(|| panic!("no leaf {word}"))
            .verdict
            .clone()
    }

    #[test]
    fn fig1_leaves() {
        let leaves = enumerate_block_tree(BlockTree::Fig1);
        assert_eq!(accepted_blocks(&leaves), BlockTree::Fig1.expected_blocks());
        assert_eq!(leaf(&leaves, "0120"), Verdict::NonRich(t("0120")));
        assert_eq!(leaf(&leaves, "00"), Verdict::ForbiddenTable(t("00")));
        assert_eq!(leaf(&leaves, "0111"), Verdict::Cube(t("111")));
        assert_eq!(leaf(&leaves, "0112"), Verdict::ForbiddenTable(t("112")));
        assert_eq!(leaf(&leaves, "012120"), Verdict::NonRich(t("012120")));
        assert_eq!(leaf(&leaves, "0121212"), Verdict::Cube(t("121212")));
        assert_eq!(leaf(&leaves, "0122"), Verdict::ForbiddenTable(t("122")));
        let l02 = leaves.iter().find(|l| l.leaf_word == t("02")).unwrap();
        assert_eq!(
            l02.context_witnesses,
            vec![
                (t("11"), Verdict::ForbiddenTable(t("1102"))),
                (t("21"), Verdict::NonRich(t("2102"))),
            ]
        );
        let l010 = leaves.iter().find(|l| l.leaf_word == t("010")).unwrap();
        assert_eq!(l010.context_witnesses.len(), 2);
        // 3 accepted plus the 12 rejected leaves discussed in the proof
        assert_eq!(leaves.len(), 15);
    }

    #[test]
    fn fig2_leaves() {
        let leaves = enumerate_block_tree(BlockTree::Fig2);
        assert_eq!(accepted_blocks(&leaves), BlockTree::Fig2.expected_blocks());
        assert_eq!(leaf(&leaves, "0222"), Verdict::Cube(t("222")));
        assert_eq!(leaves.len(), 9);
        assert!(fig2_exclusions().iter().all(|c| c.holds));
    }

    #[test]
    fn fig3_leaves() {
        let leaves = enumerate_block_tree(BlockTree::Fig3);
        assert_eq!(accepted_blocks(&leaves), BlockTree::Fig3.expected_blocks());
        assert_eq!(leaf(&leaves, "01212"), Verdict::ForbiddenF(t("212")));
        assert_eq!(leaf(&leaves, "01220"), Verdict::NonRich(t("01220")));
        assert_eq!(leaf(&leaves, "01221"), Verdict::ForbiddenF(t("1221")));
        assert_eq!(leaf(&leaves, "02210"), Verdict::NonRich(t("02210")));
        assert_eq!(leaves.len(), 15 + 4);
        let checks = fig3_elimination();
        assert!(checks.iter().all(|c| c.holds), "{checks:?}");
    }

    #[test]
    fn every_rejection_rechecks() {
        for tree in BlockTree::ALL {
            let rules = tree.rules();
            for l in enumerate_block_tree(tree) {
                if l.context_witnesses.is_empty() {
                    assert!(l.verdict.recheck(&l.leaf_word, &rules.forbidden), "{l:?}");
                } else {
                    for (ctx, v) in &l.context_witnesses {
                        assert!(v.recheck(&ctx.concat(&l.leaf_word), &rules.forbidden), "{l:?}");
                    }
                }
            }
        }
    }
}
