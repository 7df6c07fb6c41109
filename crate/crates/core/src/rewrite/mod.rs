//! Directed rewriting over finite (or finitely instantiated) rule sets.

mod completion;
mod critical;
mod instantiate;
mod order;

use std::collections::BTreeMap;

use thiserror::Error;

pub use completion::{complete, CompletionError};
pub use critical::{
    check_local_confluence, critical_pairs, ConfluenceReport, CriticalPair, OverlapKind,
    PairResolution,
};
pub use instantiate::instantiate_schemes;
pub use order::{check_termination, find_precedence, OrderError, OrderKind, TermOrder};

use crate::presentation::Presentation;
use crate::word::{Alphabet, Letter, Word};

pub const DEFAULT_FUEL: usize = 1_000_000;

/// Number of trailing steps kept when normalization runs out of fuel.
const TRACE_TAIL: usize = 8;

/// Where an instance came from: scheme index and variable values.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Origin {
    pub scheme: usize,
    pub nat: BTreeMap<String, u32>,
    pub words: BTreeMap<String, Word>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleInstance {
    pub lhs: Word,
    pub rhs: Word,
    pub origin: Origin,
}

impl RuleInstance {
    pub fn new(lhs: Word, rhs: Word) -> Self {
        RuleInstance {
            lhs,
            rhs,
            origin: Origin::default(),
        }
    }
}

/// One rewrite `w = x·lhs·y -> x·rhs·y`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Step {
    pub position: usize,
    pub rule: usize,
    pub before: Word,
    pub after: Word,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalized {
    pub word: Word,
    pub steps: usize,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewriteError {
    #[error("fuel exhausted after {fuel} steps; rewriting may not terminate")]
    FuelExhausted { fuel: usize, tail: Vec<Word> },
    #[error("presentation has rule schemes with variables; instantiate with a bound")]
    NotPlain,
}

#[derive(Debug, Clone, Default)]
struct TrieNode {
    next: Vec<u32>,
    /// Rules whose lhs ends at this node, ascending.
    rules: Vec<usize>,
}

/// Prefix tree over left-hand sides.
#[derive(Debug, Clone)]
struct Trie {
    width: usize,
    nodes: Vec<TrieNode>,
}

const NONE: u32 = u32::MAX;

impl Trie {
    fn new(width: usize, lhss: impl Iterator<Item = (usize, Word)>) -> Self {
        let mut t = Trie {
            width,
            nodes: vec![TrieNode {
                next: vec![NONE; width],
                rules: Vec::new(),
            }],
        };
        for (i, lhs) in lhss {
            let mut n = 0;
            for &l in lhs.iter() {
                let slot = t.nodes[n].next[l.index()];
                n = if slot == NONE {
                    t.nodes.push(TrieNode {
                        next: vec![NONE; width],
                        rules: Vec::new(),
                    });
                    let id = t.nodes.len() - 1;
                    t.nodes[n].next[l.index()] = id as u32;
                    id
                } else {
                    slot as usize
                };
            }
            t.nodes[n].rules.push(i);
        }
        t
    }

    /// Calls `f` with every rule whose lhs occurs at `pos`, shortest first.
    fn matches_at(&self, w: &[Letter], pos: usize, mut f: impl FnMut(usize) -> bool) {
        let mut n = 0;
        for &l in &w[pos..] {
            if l.index() >= self.width {
                return;
            }
            let slot = self.nodes[n].next[l.index()];
            if slot == NONE {
                return;
            }
            n = slot as usize;
            for &r in &self.nodes[n].rules {
                if !f(r) {
                    return;
                }
            }
        }
    }
}

/// An ordered list of rule instances with an lhs index.
#[derive(Debug, Clone)]
pub struct RewriteSystem {
    pub alphabet: Alphabet,
    pub rules: Vec<RuleInstance>,
    /// When the rules come from bounded instantiation, rewriting is exact
    /// for words up to this length.
    pub exact_up_to: Option<usize>,
    trie: Trie,
    max_lhs: usize,
}

impl RewriteSystem {
    pub fn new(alphabet: Alphabet, rules: Vec<RuleInstance>) -> Self {
        Self::with_bound(alphabet, rules, None)
    }

    fn with_bound(
        alphabet: Alphabet,
        rules: Vec<RuleInstance>,
        exact_up_to: Option<usize>,
    ) -> Self {
        let trie = Trie::new(
            alphabet.len(),
            rules.iter().enumerate().map(|(i, r)| (i, r.lhs.clone())),
        );
        let max_lhs = rules.iter().map(|r| r.lhs.len()).max().unwrap_or(0);
        RewriteSystem {
            alphabet,
            rules,
            exact_up_to,
            trie,
            max_lhs,
        }
    }

    pub fn from_pairs(alphabet: Alphabet, pairs: &[(Word, Word)]) -> Self {
        let rules = pairs
            .iter()
            .map(|(l, r)| RuleInstance::new(l.clone(), r.clone()))
            .collect();
        Self::new(alphabet, rules)
    }

    /// The rules of a presentation without variables, in file order.
    pub fn from_plain(p: &Presentation) -> Result<Self, RewriteError> {
        let mut rules = Vec::new();
        for (i, s) in p.schemes.iter().enumerate() {
            let (lhs, rhs) = s.as_plain().ok_or(RewriteError::NotPlain)?;
            rules.push(RuleInstance {
                lhs,
                rhs,
                origin: Origin {
                    scheme: i,
                    ..Origin::default()
                },
            });
        }
        Ok(Self::new(p.alphabet.clone(), rules))
    }

    /// All instances with lhs length at most `bound`.
    pub fn instantiate(p: &Presentation, bound: usize) -> Self {
        Self::with_bound(
            p.alphabet.clone(),
            instantiate_schemes(p, bound),
            Some(bound),
        )
    }

    /// Plain presentations as-is; others instantiated to `bound`.
    pub fn from_presentation(p: &Presentation, bound: usize) -> Self {
        match Self::from_plain(p) {
            Ok(s) => s,
            Err(_) => Self::instantiate(p, bound),
        }
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn pairs(&self) -> Vec<(Word, Word)> {
        self.rules
            .iter()
            .map(|r| (r.lhs.clone(), r.rhs.clone()))
            .collect()
    }

    /// Rules whose lhs occurs in `w` at `pos`, ascending by index.
    pub fn matches_at(&self, w: &[Letter], pos: usize) -> Vec<usize> {
        let mut out = Vec::new();
        self.trie.matches_at(w, pos, |r| {
            out.push(r);
            true
        });
        out.sort_unstable();
        out
    }

    /// Lowest-index rule matching at `pos`, if any.
    fn first_match_at(&self, w: &[Letter], pos: usize) -> Option<usize> {
        let mut best: Option<usize> = None;
        self.trie.matches_at(w, pos, |r| {
            best = Some(best.map_or(r, |b| b.min(r)));
            true
        });
        best
    }

    fn leftmost_from(&self, w: &[Letter], start: usize) -> Option<(usize, usize)> {
        (start..w.len()).find_map(|p| self.first_match_at(w, p).map(|r| (p, r)))
    }

    /// Every one-step rewrite of `w` as `(position, rule, result)`.
    pub fn all_steps(&self, w: &Word) -> Vec<(usize, usize, Word)> {
        let mut out = Vec::new();
        for p in 0..w.len() {
            for r in self.matches_at(w, p) {
                let rule = &self.rules[r];
                out.push((p, r, w.splice(p, rule.lhs.len(), &rule.rhs)));
            }
        }
        out
    }

    /// The leftmost redex (lowest rule index on ties) rewritten once.
    pub fn reduce_once(&self, w: &Word) -> Option<Step> {
        let (position, rule) = self.leftmost_from(w, 0)?;
        let r = &self.rules[rule];
        Some(Step {
            position,
            rule,
            before: w.clone(),
            after: w.splice(position, r.lhs.len(), &r.rhs),
        })
    }

    pub fn is_irreducible(&self, w: &[Letter]) -> bool {
        self.leftmost_from(w, 0).is_none()
    }

    pub fn normalize(&self, w: &Word, fuel: usize) -> Result<Normalized, RewriteError> {
        let mut tail = std::collections::VecDeque::new();
        let mut cur = w.0.clone();
        let mut start = 0;
        let mut steps = 0;
        while let Some((p, r)) = self.leftmost_from(&cur, start) {
            if steps == fuel {
                return Err(RewriteError::FuelExhausted {
                    fuel,
                    tail: tail.into_iter().collect(),
                });
            }
            let rule = &self.rules[r];
            cur.splice(p..p + rule.lhs.len(), rule.rhs.iter().copied());
            steps += 1;
            if tail.len() == TRACE_TAIL {
                tail.pop_front();
            }
            tail.push_back(Word(cur.clone()));
            start = (p + 1).saturating_sub(self.max_lhs);
        }
        Ok(Normalized {
            word: Word(cur),
            steps,
        })
    }

    /// Normal form, panicking on fuel exhaustion with the default fuel.
    pub fn normal_form(&self, w: &Word) -> Word {
        self.normalize(w, DEFAULT_FUEL)
            .expect("rewriting terminates within the default fuel")
            .word
    }

    /// The full leftmost reduction sequence.
    pub fn trace(&self, w: &Word, fuel: usize) -> Result<Vec<Step>, RewriteError> {
        let mut out = Vec::new();
        let mut cur = w.clone();
        while let Some(step) = self.reduce_once(&cur) {
            if out.len() == fuel {
                let tail = out
                    .iter()
                    .rev()
                    .take(TRACE_TAIL)
                    .rev()
                    .map(|s: &Step| s.after.clone())
                    .collect();
                return Err(RewriteError::FuelExhausted { fuel, tail });
            }
            cur = step.after.clone();
            out.push(step);
        }
        Ok(out)
    }

    pub fn show_rule(&self, i: usize) -> String {
        let r = &self.rules[i];
        format!(
            "{} -> {}",
            self.alphabet.show(&r.lhs),
            self.alphabet.show(&r.rhs)
        )
    }

    /// `<before> => <after>  [<lhs> -> <rhs> @ <pos>]`
    pub fn show_step(&self, step: &Step) -> String {
        format!(
            "{} => {}  [{} @ {}]",
            self.alphabet.show(&step.before),
            self.alphabet.show(&step.after),
            self.show_rule(step.rule),
            step.position
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue;
    use proptest::prelude::*;

    fn nf(s: &RewriteSystem, w: &str) -> String {
        let w = s.alphabet.parse_word(w).unwrap();
        s.alphabet.show(&s.normal_form(&w))
    }

    #[test]
    fn leftmost_step() {
        let p = catalogue::complete_auto();
        let s = RewriteSystem::from_plain(&p).unwrap();
        let step = s.reduce_once(&p.word("cbcaaa").unwrap()).unwrap();
        assert_eq!(step.position, 0);
        assert_eq!(s.show_rule(step.rule), "cbca -> cacb");
        assert_eq!(p.show(&step.after), "cacbaa");
        assert!(s.reduce_once(&p.word("abc").unwrap()).is_none());
    }

    #[test]
    fn normal_forms_of_documented_words() {
        let s = RewriteSystem::from_plain(&catalogue::complete_auto()).unwrap();
        assert_eq!(nf(&s, "cbcaaa"), "cacacb");
        assert_eq!(nf(&s, "cbcaab"), "cacbcb");
        assert_eq!(nf(&s, ""), "ε");

        let s = RewriteSystem::instantiate(&catalogue::fdt_biauto_schemes(), 4);
        assert_eq!(nf(&s, "c2 a b2 a"), "c1 a a b1");

        let p = catalogue::nonfdt_biauto();
        let s = RewriteSystem::from_plain(&p).unwrap();
        let step = s.reduce_once(&p.word("acb").unwrap()).unwrap();
        assert_eq!(p.show(&step.after), "cab");
        let s = RewriteSystem::instantiate(&catalogue::nonfdt_biauto_complete(), 3);
        assert_eq!(nf(&s, "acb"), "cbb");
    }

    #[test]
    fn fuel_exhaustion_reports_tail() {
        let a = Alphabet::new(["a", "b"]).unwrap();
        let ab = a.parse_word("ab").unwrap();
        let ba = a.parse_word("ba").unwrap();
        let s = RewriteSystem::from_pairs(a.clone(), &[(ab.clone(), ba.clone()), (ba, ab.clone())]);
        match s.normalize(&ab, 20) {
            Err(RewriteError::FuelExhausted { fuel, tail }) => {
                assert_eq!(fuel, 20);
                assert_eq!(tail.len(), TRACE_TAIL);
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn trace_matches_normalize() {
        let p = catalogue::complete_auto();
        let s = RewriteSystem::from_plain(&p).unwrap();
        let w = p.word("cbcaab").unwrap();
        let t = s.trace(&w, 100).unwrap();
        assert_eq!(t.last().unwrap().after, s.normal_form(&w));
        assert_eq!(t.len(), s.normalize(&w, 100).unwrap().steps);
        assert_eq!(s.show_step(&t[0]), "cbcaab => cacbab  [cbca -> cacb @ 0]");
    }

    proptest! {
        #[test]
        fn normalize_agrees_with_naive_leftmost(letters in proptest::collection::vec(0u16..3, 0..14)) {
            let p = catalogue::complete_auto();
            let s = RewriteSystem::from_plain(&p).unwrap();
            let w = Word(letters.into_iter().map(Letter).collect());
            let mut cur = w.clone();
            while let Some(step) = s.reduce_once(&cur) {
                cur = step.after;
            }
            prop_assert_eq!(s.normal_form(&w), cur.clone());
            prop_assert!(s.is_irreducible(&cur));
        }
    }
}
