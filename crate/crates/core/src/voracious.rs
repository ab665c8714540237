//! The voracious language: geodesic words whose block structure follows the
//! chain `g, p(g), p(p(g)), ..., id` of voracious projections.

use itertools::Itertools;

use crate::group::{CoxeterGroup, GroupElement, Word};

/// `g = g_0, g_1 = p(g_0), ..., g_r = id` with blocks `w_i = g_{i+1}^-1 g_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorizationChain {
    pub elements: Vec<GroupElement>,
    pub blocks: Vec<GroupElement>,
}

impl FactorizationChain {
    /// Blocks ordered from the identity outward, the order their words are
    /// read in.
    pub fn blocks_from_identity(&self) -> impl Iterator<Item = &GroupElement> {
        self.blocks.iter().rev()
    }
}

impl CoxeterGroup {
    pub fn factorization_chain(&self, g: &GroupElement) -> FactorizationChain {
        let mut elements = vec![g.clone()];
        let mut blocks = Vec::new();
        let mut cur = g.clone();
        while !cur.is_identity() {
            let p = self.voracious_projection(&cur);
            debug_assert!(p.length() < cur.length());
            blocks.push(self.multiply(&p.inverse(), &cur));
            elements.push(p.clone());
            cur = p;
        }
        FactorizationChain { elements, blocks }
    }

    /// Membership in the voracious language.
    pub fn is_voracious(&self, v: &Word) -> bool {
        let g = self.element_of_word(v);
        self.is_voracious_for(v, &g)
    }

    fn is_voracious_for(&self, v: &Word, g: &GroupElement) -> bool {
        if g.length() != v.len() {
            return false;
        }
        if v.is_empty() {
            return true;
        }
        let p = self.voracious_projection(g);
        let n = v.len();
        let k = n - p.length();
        let block = self.multiply(&p.inverse(), g);
        let tail = v.subword(n - k + 1, n);
        if self.element_of_word(&tail) != block {
            return false;
        }
        self.is_voracious_for(&v.prefix(n - k), &p)
    }

    /// The member of the language for `g` whose blocks are shortlex words.
    pub fn canonical_word(&self, g: &GroupElement) -> Word {
        let chain = self.factorization_chain(g);
        chain
            .blocks_from_identity()
            .fold(Word::empty(), |acc, w| acc.concat(&self.shortlex_word(w)))
    }

    /// Every word of the language representing `g`, sorted.
    pub fn all_words_of(&self, g: &GroupElement) -> Vec<Word> {
        let chain = self.factorization_chain(g);
        let per_block: Vec<Vec<Word>> = chain
            .blocks_from_identity()
            .map(|w| self.reduced_words_all(w))
            .collect();
        if per_block.is_empty() {
            return vec![Word::empty()];
        }
        let mut out: Vec<Word> = per_block
            .into_iter()
            .multi_cartesian_product()
            .map(|parts| parts.iter().fold(Word::empty(), |acc, w| acc.concat(w)))
            .collect();
        out.sort();
        out
    }

    /// Number of words of the language representing `g`, without listing
    /// them.
    pub fn count_words_of(&self, g: &GroupElement) -> usize {
        self.factorization_chain(g)
            .blocks
            .iter()
            .map(|w| self.reduced_words_all(w).len())
            .product()
    }
}
