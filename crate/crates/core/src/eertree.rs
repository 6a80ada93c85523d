//! Palindromic tree (eertree) with constant-time undo.
//!
//! Node 0 is the imaginary root of length -1 and node 1 the empty
//! palindrome. Every other node is a distinct nonempty palindromic factor of
//! the text pushed so far. A push creates at most one node, so each push
//! journals enough to be reverted in O(1), which is what the backtracking
//! searches rely on.

use crate::error::Result;
use crate::word::{Alphabet, Symbol, Word};

const NONE: u32 = u32::MAX;
const IMAGINARY: usize = 0;
const EMPTY: usize = 1;

#[derive(Debug, Clone)]
struct Node {
    len: i32,
    link: u32,
    next: [u32; 3],
    /// Number of prefixes whose longest palindromic suffix is this node.
    ends_here: u32,
}

impl Node {
    fn new(len: i32, link: u32) -> Node {
        Node {
            len,
            link,
            next: [NONE; 3],
            ends_here: 0,
        }
    }
}

#[derive(Debug, Clone, Copy)]
struct Undo {
    previous_last: u32,
    /// Parent and symbol of the edge created by the push, if any.
    created: Option<(u32, u8)>,
}

#[derive(Debug, Clone)]
pub struct Eertree {
    alphabet: Alphabet,
    nodes: Vec<Node>,
    text: Vec<u8>,
    last: u32,
    journal: Vec<Undo>,
}

impl Eertree {
    pub fn new(alphabet: Alphabet) -> Eertree {
        Eertree {
            alphabet,
            nodes: vec![
                Node::new(-1, IMAGINARY as u32),
                Node::new(0, IMAGINARY as u32),
            ],
            text: Vec::new(),
            last: EMPTY as u32,
            journal: Vec::new(),
        }
    }

    pub fn from_word(word: &Word) -> Eertree {
        let mut tree = Eertree::new(word.alphabet());
        for &s in word.as_slice() {
            tree.push_raw(s);
        }
        tree
    }

    pub fn alphabet(&self) -> Alphabet {
        self.alphabet
    }

    /// Length of the processed word.
    pub fn len(&self) -> usize {
        self.text.len()
    }

    pub fn is_empty(&self) -> bool {
        self.text.is_empty()
    }

    pub fn text(&self) -> &[u8] {
        &self.text
    }

    /// Number of distinct nonempty palindromic factors of the processed word.
    pub fn distinct_palindromes(&self) -> usize {
        self.nodes.len() - 2
    }

    /// Length of the longest palindromic suffix of the processed word.
    pub fn longest_palindromic_suffix(&self) -> usize {
        self.nodes[self.last as usize].len.max(0) as usize
    }

    /// Appends a symbol. Returns `true` iff the longest palindromic suffix of
    /// the new prefix did not occur earlier, i.e. it is unioccurrent.
    pub fn push(&mut self, symbol: Symbol) -> Result<bool> {
        let symbol = Symbol::new(symbol.value(), self.alphabet)?;
        Ok(self.push_raw(symbol.value()))
    }

    pub(crate) fn push_raw(&mut self, s: u8) -> bool {
        debug_assert!((s as usize) < self.alphabet.size());
        let pos = self.text.len();
        self.text.push(s);
        let previous_last = self.last;

        let parent = self.extendable_from(self.last as usize, pos, s);
        let existing = self.nodes[parent].next[s as usize];
        if existing != NONE {
            self.last = existing;
            self.nodes[existing as usize].ends_here += 1;
            self.journal.push(Undo {
                previous_last,
                created: None,
            });
            return false;
        }

        let len = self.nodes[parent].len + 2;
        let link = if len == 1 {
            EMPTY as u32
        } else {
            let from = self.extendable_from(self.nodes[parent].link as usize, pos, s);
            self.nodes[from].next[s as usize]
        };
        let id = self.nodes.len() as u32;
        let mut node = Node::new(len, link);
        node.ends_here = 1;
        self.nodes.push(node);
        self.nodes[parent].next[s as usize] = id;
        self.last = id;
        self.journal.push(Undo {
            previous_last,
            created: Some((parent as u32, s)),
        });
        true
    }

    /// Follows suffix links from `node` to the first palindrome `X` such that
    /// `s X s` ends at `pos`.
    fn extendable_from(&self, mut node: usize, pos: usize, s: u8) -> usize {
        loop {
            let len = self.nodes[node].len;
            let mirror = pos as i64 - len as i64 - 1;
            if mirror >= 0 && self.text[mirror as usize] == s {
                return node;
            }
            if node == IMAGINARY {
                // len = -1 always matches: mirror == pos
                unreachable!("imaginary root always extends");
            }
            node = self.nodes[node].link as usize;
        }
    }

    /// Reverts the most recent push. Returns the removed symbol.
    pub fn pop(&mut self) -> Option<Symbol> {
        let undo = self.journal.pop()?;
        let s = self.text.pop().expect("journal and text stay in sync");
        match undo.created {
            Some((parent, sym)) => {
                let removed = self.nodes.pop().expect("created node present");
                debug_assert_eq!(removed.len, self.nodes[parent as usize].len + 2);
                self.nodes[parent as usize].next[sym as usize] = NONE;
            }
            None => self.nodes[self.last as usize].ends_here -= 1,
        }
        self.last = undo.previous_last;
        Some(Symbol::new(s, self.alphabet).expect("stored symbols are valid"))
    }

    /// Rolls back to an earlier length of the processed word.
    pub fn truncate(&mut self, len: usize) {
        while self.text.len() > len {
            self.pop();
        }
    }

    /// Occurrence count of every nonempty palindrome, as (length, count) in
    /// node creation order.
    pub fn occurrence_counts(&self) -> Vec<(usize, usize)> {
        let mut counts: Vec<usize> = self.nodes.iter().map(|n| n.ends_here as usize).collect();
        // Links point to strictly shorter, hence earlier-created, nodes.
        for id in (2..self.nodes.len()).rev() {
            let link = self.nodes[id].link as usize;
            counts[link] += counts[id];
        }
        (2..self.nodes.len())
            .map(|id| (self.nodes[id].len as usize, counts[id]))
            .collect()
    }

    /// The palindromes stored in the tree, recovered from end positions.
    pub fn palindromes(&self) -> Vec<Word> {
        let mut out = vec![None; self.nodes.len()];
        // Replay: node created at step i ends at position i.
        let mut replay = Eertree::new(self.alphabet);
        for (i, &s) in self.text.iter().enumerate() {
            if replay.push_raw(s) {
                let len = replay.nodes[replay.last as usize].len as usize;
                out[replay.last as usize] =
                    Some(Word::from_raw(self.alphabet, self.text[i + 1 - len..=i].to_vec()));
            }
        }
        out.into_iter().flatten().collect()
    }

    #[cfg(test)]
    pub(crate) fn check_invariants(&self) {
        for (id, node) in self.nodes.iter().enumerate().skip(2) {
            let link = &self.nodes[node.link as usize];
            assert!(link.len < node.len, "node {id} link not shorter");
        }
    }
}

impl Default for Eertree {
    fn default() -> Eertree {
        Eertree::new(Alphabet::Ternary)
    }
}

/// Pushes a raw digit, validating it against the tree's alphabet.
pub fn push_symbol(tree: &mut Eertree, value: u8) -> Result<bool> {
    tree.push(Symbol::new(value, tree.alphabet())?)
}
