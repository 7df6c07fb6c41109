//! Automatic structures: word acceptors, multiplier relations, and their
//! certification against the oracle.

mod suite;
mod validate;
mod witness;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::automata::{Dfa, Nfa};
use crate::oracle::{Oracle, OracleError};
use crate::presentation::{Atom, Presentation, RuleScheme, VarKind};
use crate::word::{Alphabet, Letter, Word};

pub use suite::{MultiplierSuite, SuiteError};
pub use validate::{
    validate_structure, Certificate, Counterexample, MultiplierCheck, ValidationError,
};
pub use witness::{refutation_witness, RefutationWitness};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AutostructError {
    #[error("scheme {scheme}: left-hand sides do not form a regular language")]
    NonRegularLhs { scheme: usize },
    #[error("alphabets share the letter `{0}`")]
    AlphabetOverlap(String),
}

/// The language of one scheme's left-hand sides, for all variable values.
fn lhs_language(
    alphabet: &Alphabet,
    scheme: &RuleScheme,
    idx: usize,
) -> Result<Nfa, AutostructError> {
    // Each variable may occur in only one lhs atom, otherwise the
    // occurrences are correlated.
    let mut seen = BTreeSet::new();
    for atom in &scheme.lhs {
        let vars: BTreeSet<&String> = match atom {
            Atom::Power(_, e) => e.vars.iter().collect(),
            Atom::Var(v) => BTreeSet::from([v]),
            Atom::Letter(_) => BTreeSet::new(),
        };
        for v in vars {
            if !seen.insert(v.clone()) {
                return Err(AutostructError::NonRegularLhs { scheme: idx });
            }
        }
    }
    let mut lang = Nfa::epsilon(alphabet);
    for atom in &scheme.lhs {
        let part = match atom {
            Atom::Letter(l) => Nfa::word(alphabet, &[*l]),
            Atom::Power(l, e) => {
                let mut n = Nfa::word(alphabet, &vec![*l; e.constant as usize]);
                for v in &e.vars {
                    let m = e.vars.iter().filter(|w| *w == v).count();
                    n = n.concat(&Nfa::word(alphabet, &vec![*l; m]).star());
                }
                n
            }
            Atom::Var(v) => match &scheme.var(v).map(|d| &d.kind) {
                Some(VarKind::Word(gens)) => gens
                    .iter()
                    .fold(Nfa::empty(alphabet), |acc, g| {
                        acc.union(&Nfa::word(alphabet, g))
                    })
                    .star(),
                _ => return Err(AutostructError::NonRegularLhs { scheme: idx }),
            },
        };
        lang = lang.concat(&part);
    }
    Ok(lang)
}

/// Words containing no left-hand side of any scheme instance.
pub fn irreducible_language(p: &Presentation) -> Result<Dfa, AutostructError> {
    let a = &p.alphabet;
    let all: Vec<Letter> = a.letters().collect();
    let any = Nfa::letters(a, &all).star();
    let mut lhs = Nfa::empty(a);
    for (i, s) in p.schemes.iter().enumerate() {
        lhs = lhs.union(&lhs_language(a, s, i)?);
    }
    let reducible = any.concat(&lhs).concat(&any).determinize();
    Ok(reducible.complement())
}

/// `L1 ((L2 − ε)(L1 − ε))* L2` over the union of the two alphabets.
pub fn freeproduct_language(l1: &Dfa, l2: &Dfa) -> Result<Dfa, AutostructError> {
    if let Some(n) = l1.alphabet.names().iter().find(|n| l2.alphabet.contains(n)) {
        return Err(AutostructError::AlphabetOverlap(n.clone()));
    }
    let union = Alphabet::from_symbols(
        l1.alphabet
            .names()
            .iter()
            .chain(l2.alphabet.names())
            .cloned(),
    )
    .expect("disjoint names");
    let a = l1.reindex(&union).expect("subset alphabet");
    let b = l2.reindex(&union).expect("subset alphabet");
    let eps = Nfa::epsilon(&union).determinize();
    let middle = b.difference(&eps).concat(&a.difference(&eps)).star();
    Ok(a.concat(&middle).concat(&b))
}

/// All `(u, v)` with `u, v ∈ L` of length at most `maxlen` and `ua = v`
/// (`a = None` for the empty word).
pub fn bounded_multiplier_table(
    oracle: &Oracle,
    lang: &Dfa,
    a: Option<Letter>,
    maxlen: usize,
) -> Result<Vec<(Word, Word)>, OracleError> {
    let lang = lang
        .reindex(&oracle.presentation().alphabet)
        .ok_or(OracleError::AlphabetMismatch)?;
    let mut out = Vec::new();
    for u in lang.accepted_words(maxlen) {
        let ua = u.concat(&a.into_iter().collect::<Vec<_>>());
        if ua.len() > maxlen {
            continue;
        }
        for v in &oracle.congruence_class(&ua)?.members {
            if lang.accepts(v) {
                out.push((u.clone(), v.clone()));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Env;
    use crate::catalogue;

    #[test]
    fn scheme_normal_forms() {
        let p = catalogue::nonfdt_biauto_complete();
        let l = irreducible_language(&p).unwrap();
        let expected = Env::new(&p.alphabet).lang("[a b]* | c+ b* a*").unwrap();
        assert!(l.equivalent(&expected));
    }

    #[test]
    fn plain_rule_normal_forms() {
        let p = catalogue::complete_auto();
        let l = irreducible_language(&p).unwrap();
        let w = |s: &str| p.word(s).unwrap();
        assert!(l.accepts(&w("cacb")));
        assert!(!l.accepts(&w("acbca")));
        assert!(!l.accepts(&w("caba")));
    }

    #[test]
    fn power_scheme_normal_forms() {
        let p = catalogue::fdt_biauto_schemes();
        let l = irreducible_language(&p).unwrap();
        let w = |s: &str| p.word(s).unwrap();
        assert!(l.accepts(&w("a b1")));
        assert!(!l.accepts(&w("b1 a")));
        assert!(!l.accepts(&w("c2 a a b2")));
        assert!(!l.accepts(&w("c1 b1 a a d3")));
        assert!(l.accepts(&w("c1 a b1 d1")));
    }

    #[test]
    fn no_rules_means_everything() {
        let p = catalogue::free2();
        assert!(irreducible_language(&p)
            .unwrap()
            .equivalent(&Dfa::universal(&p.alphabet)));
    }

    #[test]
    fn correlated_exponents_rejected() {
        let p = Presentation::parse("letters: a b\nscheme: a^k b a^k -> b a^(k+k) where k : nat\n")
            .unwrap();
        assert_eq!(
            irreducible_language(&p),
            Err(AutostructError::NonRegularLhs { scheme: 0 })
        );
    }

    #[test]
    fn free_product_of_stars() {
        let a = Alphabet::new(["a"]).unwrap();
        let b = Alphabet::new(["b"]).unwrap();
        let l = freeproduct_language(&Dfa::universal(&a), &Dfa::universal(&b)).unwrap();
        assert!(l.equivalent(&Dfa::universal(&l.alphabet)));
        let e1 = Nfa::epsilon(&a).determinize();
        let e2 = Nfa::epsilon(&b).determinize();
        let l = freeproduct_language(&e1, &e2).unwrap();
        assert_eq!(l.accepted_words(3), vec![Word::empty()]);
        assert!(freeproduct_language(&e1, &e1).is_err());
    }

    #[test]
    fn multiplier_tables() {
        let p = catalogue::complete_auto();
        let l = irreducible_language(&p).unwrap();
        let o = Oracle::new(p.clone()).unwrap();
        let c = p.alphabet.letter("c");
        for (u, v) in bounded_multiplier_table(&o, &l, c, 5).unwrap() {
            assert_eq!(v, u.concat(&[c.unwrap()]));
        }
        let diag = bounded_multiplier_table(&o, &l, None, 4).unwrap();
        assert!(diag.iter().all(|(u, v)| u == v));
        assert_eq!(diag.len(), l.accepted_words(4).len());

        let p = catalogue::nonfdt_biauto();
        let l = irreducible_language(&catalogue::nonfdt_biauto_complete()).unwrap();
        let o = Oracle::new(p.clone()).unwrap();
        let table = bounded_multiplier_table(&o, &l, p.alphabet.letter("c"), 5).unwrap();
        let w = |s: &str| p.word(s).unwrap();
        assert!(table.contains(&(w("abaa"), w("cbbaa"))));
        assert!(table.contains(&(w("aa"), w("caa"))));
    }
}
