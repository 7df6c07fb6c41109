//! Exact equality for homogeneous presentations by exhausting congruence classes.
//!
//! Every relation preserves length, so the class of a word is a finite
//! subset of one length slice and can be found by breadth-first search
//! over single applications of the relations in both directions.

use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::{Arc, RwLock};

use thiserror::Error;

use crate::automata::Dfa;
use crate::presentation::Presentation;
use crate::rewrite::{RewriteSystem, RuleInstance};
use crate::word::Word;

pub const DEFAULT_CLASS_CAP: usize = 5_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OracleError {
    #[error("presentation is not homogeneous; congruence classes may be infinite")]
    NotHomogeneous,
    #[error("class exceeds the cap of {cap} words")]
    ClassTooLarge { cap: usize },
    #[error("{count} words of length {length} exceed the cap of {cap}")]
    SliceTooLarge {
        length: usize,
        count: u128,
        cap: usize,
    },
    #[error("language alphabet does not match the presentation")]
    AlphabetMismatch,
}

/// A finite congruence class, members in shortlex order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceClass {
    pub members: Vec<Word>,
}

impl CongruenceClass {
    /// The shortlex-least member.
    pub fn representative(&self) -> &Word {
        &self.members[0]
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, w: &Word) -> bool {
        self.members.binary_search(w).is_ok()
    }

    /// Length shared by all members.
    pub fn word_length(&self) -> usize {
        self.members[0].len()
    }
}

struct Relations {
    /// Longest word the instantiation is exact for; `None` for plain rules.
    bound: Option<usize>,
    both_ways: Arc<RewriteSystem>,
}

/// Congruence-class oracle for one homogeneous presentation.
///
/// Classes are cached; the cache only avoids recomputation and never
/// changes results.
pub struct Oracle {
    presentation: Presentation,
    cap: usize,
    relations: RwLock<Relations>,
    cache: RwLock<HashMap<Word, Arc<CongruenceClass>>>,
}

fn both_ways(p: &Presentation, rules: Vec<RuleInstance>, bound: Option<usize>) -> RewriteSystem {
    let mut all = Vec::with_capacity(rules.len() * 2);
    for r in rules {
        all.push(RuleInstance {
            lhs: r.rhs.clone(),
            rhs: r.lhs.clone(),
            origin: r.origin.clone(),
        });
        all.push(r);
    }
    // Empty sides never apply in a homogeneous presentation.
    all.retain(|r| !r.lhs.is_empty());
    let mut sys = RewriteSystem::new(p.alphabet.clone(), all);
    sys.exact_up_to = bound;
    sys
}

impl Oracle {
    pub fn new(presentation: Presentation) -> Result<Self, OracleError> {
        Self::with_cap(presentation, DEFAULT_CLASS_CAP)
    }

    pub fn with_cap(presentation: Presentation, cap: usize) -> Result<Self, OracleError> {
        if !presentation.classify().homogeneous {
            return Err(OracleError::NotHomogeneous);
        }
        let relations = match RewriteSystem::from_plain(&presentation) {
            Ok(sys) => Relations {
                bound: None,
                both_ways: Arc::new(both_ways(&presentation, sys.rules, None)),
            },
            Err(_) => Relations {
                bound: Some(0),
                both_ways: Arc::new(both_ways(&presentation, Vec::new(), Some(0))),
            },
        };
        Ok(Oracle {
            presentation,
            cap,
            relations: RwLock::new(relations),
            cache: RwLock::new(HashMap::new()),
        })
    }

    pub fn presentation(&self) -> &Presentation {
        &self.presentation
    }

    /// Relations usable on words of length `len`, both directions.
    fn relations_for(&self, len: usize) -> Arc<RewriteSystem> {
        {
            let r = self.relations.read().expect("oracle lock");
            if r.bound.is_none_or(|b| b >= len) {
                return r.both_ways.clone();
            }
        }
        let mut r = self.relations.write().expect("oracle lock");
        if r.bound.is_some_and(|b| b < len) {
            let inst = crate::rewrite::instantiate_schemes(&self.presentation, len);
            r.both_ways = Arc::new(both_ways(&self.presentation, inst, Some(len)));
            r.bound = Some(len);
        }
        r.both_ways.clone()
    }

    pub fn congruence_class(&self, w: &Word) -> Result<Arc<CongruenceClass>, OracleError> {
        if let Some(c) = self.cache.read().expect("oracle lock").get(w) {
            return Ok(c.clone());
        }
        let rel = self.relations_for(w.len());
        let mut seen: HashSet<Word> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(w.clone());
        queue.push_back(w.clone());
        while let Some(x) = queue.pop_front() {
            for (_, _, y) in rel.all_steps(&x) {
                if seen.insert(y.clone()) {
                    if seen.len() > self.cap {
                        return Err(OracleError::ClassTooLarge { cap: self.cap });
                    }
                    queue.push_back(y);
                }
            }
        }
        let mut members: Vec<Word> = seen.into_iter().collect();
        members.sort();
        let class = Arc::new(CongruenceClass { members });
        let mut cache = self.cache.write().expect("oracle lock");
        for m in &class.members {
            cache.insert(m.clone(), class.clone());
        }
        Ok(class)
    }

    pub fn representative(&self, w: &Word) -> Result<Word, OracleError> {
        Ok(self.congruence_class(w)?.representative().clone())
    }

    pub fn are_equal(&self, u: &Word, v: &Word) -> Result<bool, OracleError> {
        if u.len() != v.len() {
            return Ok(false);
        }
        if u == v {
            return Ok(true);
        }
        if let Some(c) = self.cache.read().expect("oracle lock").get(u) {
            return Ok(c.contains(v));
        }
        self.search_between(u, v)
    }

    /// Bidirectional search: grows the smaller frontier until the two
    /// sides meet or one side is exhausted (then it is a whole class).
    fn search_between(&self, u: &Word, v: &Word) -> Result<bool, OracleError> {
        let rel = self.relations_for(u.len());
        let mut seen = [HashSet::from([u.clone()]), HashSet::from([v.clone()])];
        let mut frontier = [vec![u.clone()], vec![v.clone()]];
        loop {
            let side = usize::from(frontier[1].len() < frontier[0].len());
            if frontier[side].is_empty() {
                return Ok(false);
            }
            let mut next = Vec::new();
            for x in std::mem::take(&mut frontier[side]) {
                for (_, _, y) in rel.all_steps(&x) {
                    if seen[1 - side].contains(&y) {
                        return Ok(true);
                    }
                    if seen[side].insert(y.clone()) {
                        if seen[side].len() > self.cap {
                            return Err(OracleError::ClassTooLarge { cap: self.cap });
                        }
                        next.push(y);
                    }
                }
            }
            frontier[side] = next;
        }
    }

    fn check_slice(&self, length: usize) -> Result<(), OracleError> {
        let count = (self.presentation.alphabet.len() as u128).saturating_pow(length as u32);
        if count > self.cap as u128 {
            return Err(OracleError::SliceTooLarge {
                length,
                count,
                cap: self.cap,
            });
        }
        Ok(())
    }

    /// All classes of words of length `n`, ordered by representative.
    pub fn classes_of_length(&self, n: usize) -> Result<Vec<Arc<CongruenceClass>>, OracleError> {
        self.check_slice(n)?;
        let mut done: HashSet<Word> = HashSet::new();
        let mut out = Vec::new();
        for w in self.presentation.alphabet.words_of_length(n) {
            if done.contains(&w) {
                continue;
            }
            let c = self.congruence_class(&w)?;
            done.extend(c.members.iter().cloned());
            out.push(c);
        }
        // Words are visited in shortlex order, so the first unseen word
        // is each class's representative and `out` is already sorted.
        Ok(out)
    }

    /// Number of classes of each length `0..=maxlen`.
    pub fn growth_series(&self, maxlen: usize) -> Result<Vec<usize>, OracleError> {
        (0..=maxlen)
            .map(|n| self.classes_of_length(n).map(|c| c.len()))
            .collect()
    }

    /// Checks that every class up to `maxlen` has exactly one member in
    /// `language`.
    pub fn verify_normal_forms(
        &self,
        language: &Dfa,
        maxlen: usize,
    ) -> Result<NormalFormReport, OracleError> {
        let lang = language
            .reindex(&self.presentation.alphabet)
            .ok_or(OracleError::AlphabetMismatch)?;
        let mut report = NormalFormReport::default();
        for n in 0..=maxlen {
            for class in self.classes_of_length(n)? {
                report.classes_checked += 1;
                let accepted = class.members.iter().filter(|m| lang.accepts(m)).count();
                if accepted != 1 {
                    report.violations.push(NormalFormViolation {
                        length: n,
                        representative: class.representative().clone(),
                        accepted,
                    });
                }
            }
        }
        Ok(report)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NormalFormViolation {
    pub length: usize,
    pub representative: Word,
    pub accepted: usize,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct NormalFormReport {
    pub classes_checked: usize,
    pub violations: Vec<NormalFormViolation>,
}

impl NormalFormReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    /// One `length=<n> class-rep=<w> accepted=<k>` line per violation.
    pub fn lines(&self, p: &Presentation) -> Vec<String> {
        self.violations
            .iter()
            .map(|v| {
                format!(
                    "length={} class-rep={} accepted={}",
                    v.length,
                    p.show(&v.representative),
                    v.accepted
                )
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::Letter;

    fn word_of(letters: &[u16]) -> Word {
        letters.iter().map(|&l| Letter(l)).collect()
    }
    use crate::catalogue;
    use proptest::prelude::*;

    fn oracle(p: Presentation) -> Oracle {
        Oracle::new(p).unwrap()
    }

    #[test]
    fn class_contains_rule_rhs() {
        let o = oracle(catalogue::complete_auto());
        let p = o.presentation();
        let c = o.congruence_class(&p.word("cbab").unwrap()).unwrap();
        assert!(c.contains(&p.word("cbcb").unwrap()));
        assert!(c.members.iter().all(|m| m.len() == 4));
    }

    #[test]
    fn c_free_words_are_singletons() {
        let o = oracle(catalogue::nonfdt_biauto());
        let p = o.presentation();
        let c = o.congruence_class(&p.word("ab").unwrap()).unwrap();
        assert_eq!(c.members, vec![p.word("ab").unwrap()]);
        let e = o.congruence_class(&Word::empty()).unwrap();
        assert_eq!(e.members, vec![Word::empty()]);
    }

    #[test]
    fn pumping_equalities() {
        let o = oracle(catalogue::complete_auto());
        let p = o.presentation();
        let u = p.word("caaaabbbbb").unwrap();
        let v = p.word("cbbbbaaaab").unwrap();
        assert!(o.are_equal(&u, &v).unwrap());
        let u = p.word("aaaabbbbb").unwrap();
        let v = p.word("bbbbaaaab").unwrap();
        assert!(!o.are_equal(&u, &v).unwrap());
        assert!(o.are_equal(&u, &u).unwrap());
    }

    #[test]
    fn growth_series_values() {
        assert_eq!(
            oracle(catalogue::free2()).growth_series(3).unwrap(),
            [1, 2, 4, 8]
        );
        assert_eq!(
            oracle(catalogue::nonfdt_biauto())
                .classes_of_length(2)
                .unwrap()
                .len(),
            7
        );
        assert_eq!(
            oracle(catalogue::complete_auto()).growth_series(2).unwrap(),
            [1, 3, 9]
        );
    }

    #[test]
    fn length_two_classes_of_three_rules() {
        let o = oracle(catalogue::nonfdt_biauto());
        let p = o.presentation();
        let classes: Vec<Vec<String>> = o
            .classes_of_length(2)
            .unwrap()
            .iter()
            .map(|c| c.members.iter().map(|m| p.show(m)).collect())
            .collect();
        assert!(classes.contains(&vec!["ac".to_string(), "ca".to_string()]));
        assert!(classes.contains(&vec!["bc".to_string(), "cb".to_string()]));
    }

    #[test]
    fn schemes_agree_with_their_finite_presentation() {
        let finite = oracle(catalogue::nonfdt_biauto());
        let infinite = oracle(catalogue::nonfdt_biauto_complete());
        for n in 0..=5 {
            let a: Vec<_> = finite.classes_of_length(n).unwrap();
            let b: Vec<_> = infinite.classes_of_length(n).unwrap();
            assert_eq!(a, b, "length {n}");
        }
        let finite = oracle(catalogue::fdt_biauto());
        let infinite = oracle(catalogue::fdt_biauto_schemes());
        for n in 0..=4 {
            assert_eq!(
                finite.classes_of_length(n).unwrap(),
                infinite.classes_of_length(n).unwrap()
            );
        }
    }

    #[test]
    fn rejects_non_homogeneous() {
        let p = Presentation::parse("letters: a b\nrule: a b -> a\n").unwrap();
        assert_eq!(Oracle::new(p).err(), Some(OracleError::NotHomogeneous));
    }

    #[test]
    fn class_cap_is_enforced() {
        let o = Oracle::with_cap(catalogue::commute(), 3).unwrap();
        let w = o.presentation().word("aabb").unwrap();
        assert_eq!(
            o.congruence_class(&w).err(),
            Some(OracleError::ClassTooLarge { cap: 3 })
        );
    }

    proptest! {
        #[test]
        fn congruence_is_compatible_with_concatenation(
            u in proptest::collection::vec(0u16..3, 0..5),
            w in proptest::collection::vec(0u16..3, 0..3),
        ) {
            let o = oracle(catalogue::complete_auto());
            let u = word_of(&u);
            let w = word_of(&w);
            for v in o.congruence_class(&u).unwrap().members.iter() {
                prop_assert!(o.are_equal(&u.concat(&w), &v.concat(&w)).unwrap());
                prop_assert!(o.are_equal(&w.concat(&u), &w.concat(v)).unwrap());
            }
        }

        #[test]
        fn class_members_share_length(
            letters in proptest::collection::vec(0u16..3, 0..7),
        ) {
            let o = oracle(catalogue::nonfdt_biauto());
            let p = o.presentation();
            let w = word_of(&letters);
            let cv = p.content_vector(&w);
            let class = o.congruence_class(&w).unwrap();
            prop_assert!(class.members.iter().all(|m| p.content_vector(m).length == cv.length));
        }
    }
}
