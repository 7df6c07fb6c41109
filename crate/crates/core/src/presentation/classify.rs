use std::collections::BTreeMap;

use super::{Atom, Presentation, RuleScheme, VarKind};
use crate::word::{Alphabet, Letter, Word};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Classification {
    pub homogeneous: bool,
    pub multihomogeneous: bool,
    /// The common length of every rule side, when there is one.
    pub nary: Option<usize>,
}

/// Letter counts of a word together with its length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ContentVector {
    pub counts: BTreeMap<String, usize>,
    pub length: usize,
}

pub fn content_vector(alphabet: &Alphabet, word: &[Letter]) -> ContentVector {
    let mut counts: BTreeMap<String, usize> =
        alphabet.names().iter().map(|n| (n.clone(), 0)).collect();
    for &l in word {
        *counts
            .get_mut(alphabet.name(l))
            .expect("letter in alphabet") += 1;
    }
    ContentVector {
        counts,
        length: word.len(),
    }
}

/// Symbolic length `constant + Σ coeff·symbol` of a rule side.
///
/// Symbols are nat variables, and for word variables the count of one
/// generator word inside the instantiation.
#[derive(Debug, Default, PartialEq, Eq)]
struct Linear {
    constant: i64,
    coeffs: BTreeMap<(String, usize), i64>,
}

impl Linear {
    fn add(&mut self, key: (String, usize), by: i64) {
        let e = self.coeffs.entry(key.clone()).or_insert(0);
        *e += by;
        if *e == 0 {
            self.coeffs.remove(&key);
        }
    }
}

/// Length of `atoms` restricted to letters accepted by `counts`.
fn measure(scheme: &RuleScheme, atoms: &[Atom], counts: impl Fn(Letter) -> bool) -> Linear {
    let mut out = Linear::default();
    for atom in atoms {
        match atom {
            Atom::Letter(l) => {
                if counts(*l) {
                    out.constant += 1;
                }
            }
            Atom::Power(l, e) => {
                if counts(*l) {
                    out.constant += i64::from(e.constant);
                    for v in &e.vars {
                        out.add((v.clone(), 0), 1);
                    }
                }
            }
            Atom::Var(name) => {
                let Some(VarKind::Word(gens)) = scheme.var(name).map(|d| &d.kind) else {
                    continue;
                };
                for (i, g) in gens.iter().enumerate() {
                    let n = g.iter().filter(|&&l| counts(l)).count() as i64;
                    if n > 0 {
                        out.add((name.clone(), i), n);
                    }
                }
            }
        }
    }
    out
}

fn balanced(scheme: &RuleScheme, counts: impl Fn(Letter) -> bool + Copy) -> bool {
    measure(scheme, &scheme.lhs, counts) == measure(scheme, &scheme.rhs, counts)
}

pub(super) fn classify(p: &Presentation) -> Classification {
    let homogeneous = p.schemes.iter().all(|s| balanced(s, |_| true));
    let multihomogeneous = homogeneous
        && p.alphabet
            .letters()
            .all(|a| p.schemes.iter().all(|s| balanced(s, |l| l == a)));
    let nary = if homogeneous && !p.schemes.is_empty() {
        match p.plain_rules() {
            Some(rules) => {
                let n = rules[0].0.len();
                rules
                    .iter()
                    .all(|(l, r)| l.len() == n && r.len() == n)
                    .then_some(n)
            }
            None => None,
        }
    } else {
        None
    };
    Classification {
        homogeneous,
        multihomogeneous,
        nary,
    }
}

impl Presentation {
    /// Counts of each letter in `word`, keyed by letter name.
    pub fn content_vector(&self, word: &Word) -> ContentVector {
        content_vector(&self.alphabet, word)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue;

    #[test]
    fn nine_rule_system_is_four_ary_not_multihomogeneous() {
        let c = catalogue::complete_auto().classify();
        assert!(c.homogeneous);
        assert!(!c.multihomogeneous);
        assert_eq!(c.nary, Some(4));
    }

    #[test]
    fn power_schemes_are_homogeneous() {
        let c = catalogue::fdt_biauto_schemes().classify();
        assert!(c.homogeneous);
        assert_eq!(c.nary, None);
    }

    #[test]
    fn word_variable_scheme_is_multihomogeneous_when_balanced() {
        let c = catalogue::nonfdt_biauto_complete().classify();
        assert!(c.homogeneous);
        assert!(!c.multihomogeneous);
        let p = Presentation::parse("letters: a b\nscheme: a U b -> b U a where U : word(a b)\n")
            .unwrap();
        let c = p.classify();
        assert!(c.multihomogeneous);
        assert_eq!(c.nary, None);
    }

    #[test]
    fn length_changing_rule() {
        let p = Presentation::parse("letters: a b\nrule: a b -> a\n").unwrap();
        let c = p.classify();
        assert!(!c.homogeneous);
        assert!(!c.multihomogeneous);
        assert_eq!(c.nary, None);
    }

    #[test]
    fn unbalanced_exponents() {
        let p = Presentation::parse("letters: a b\nscheme: a^k b -> b a^(k+1) where k : nat\n")
            .unwrap();
        assert!(!p.classify().homogeneous);
        let p = Presentation::parse("letters: a b\nscheme: a^k b a -> b a^(k+1) where k : nat\n")
            .unwrap();
        assert!(p.classify().multihomogeneous);
    }

    #[test]
    fn mixed_lengths_have_no_arity() {
        let p =
            Presentation::parse("letters: a b\nrule: a b -> b a\nrule: a a b -> a b a\n").unwrap();
        let c = p.classify();
        assert!(c.homogeneous && c.multihomogeneous);
        assert_eq!(c.nary, None);
    }

    #[test]
    fn content_of_words() {
        let p = catalogue::complete_auto();
        let cv = p.content_vector(&p.word("cbab").unwrap());
        assert_eq!(cv.length, 4);
        assert_eq!(cv.counts["a"], 1);
        assert_eq!(cv.counts["b"], 2);
        assert_eq!(cv.counts["c"], 1);
        let e = p.content_vector(&Word::empty());
        assert_eq!(e.length, 0);
        assert!(e.counts.values().all(|&n| n == 0));
    }
}
