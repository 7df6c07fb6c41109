use std::collections::BTreeSet;

use rayon::prelude::*;
use thiserror::Error;

use super::suite::MultiplierSuite;
use crate::automata::{synchronize_bounded, Dfa, Side, Transducer};
use crate::oracle::{Oracle, OracleError};
use crate::word::{Alphabet, Letter, Word};

/// Lag allowed when synchronizing multipliers: homogeneous relations
/// change length by at most one letter.
const SYNC_LAG: usize = 1;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiplierCheck {
    pub multiplier: Side,
    pub letter: Option<Letter>,
    pub pairs: usize,
    /// States of the synchronized automata, per padding side checked.
    pub sync_states: Vec<(Side, usize)>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Certificate {
    pub maxlen: usize,
    pub biautomatic: bool,
    pub classes_checked: usize,
    /// Every class met the acceptor exactly once.
    pub unique_representatives: bool,
    pub multipliers: Vec<MultiplierCheck>,
}

fn side_name(s: Side) -> &'static str {
    match s {
        Side::Right => "right",
        Side::Left => "left",
    }
}

fn pad_name(s: Side) -> &'static str {
    match s {
        Side::Right => "δ_R",
        Side::Left => "δ_L",
    }
}

fn letter_name(a: &Alphabet, l: Option<Letter>) -> &str {
    l.map_or("ε", |l| a.name(l))
}

impl Certificate {
    pub fn lines(&self, a: &Alphabet) -> Vec<String> {
        let mut out = vec![
            format!(
                "structure: {}",
                if self.biautomatic {
                    "biautomatic"
                } else {
                    "automatic"
                }
            ),
            format!("maxlen: {}", self.maxlen),
            format!(
                "classes: {} checked, acceptor meets each {}",
                self.classes_checked,
                if self.unique_representatives {
                    "exactly once"
                } else {
                    "at least once"
                }
            ),
        ];
        for m in &self.multipliers {
            let sync: Vec<String> = m
                .sync_states
                .iter()
                .map(|(s, n)| format!("{} {} states", pad_name(*s), n))
                .collect();
            out.push(format!(
                "{} {}: {} pairs verified, {}",
                side_name(m.multiplier),
                letter_name(a, m.letter),
                m.pairs,
                sync.join(", ")
            ));
        }
        out.push("result: certified".into());
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Counterexample {
    /// A class with no member in the acceptor.
    MissingRepresentative { representative: Word },
    /// The relation relates a word outside the acceptor.
    OutsideAcceptor {
        multiplier: Side,
        letter: Option<Letter>,
        word: Word,
    },
    /// The relation disagrees with the oracle on a pair.
    Pair {
        multiplier: Side,
        letter: Option<Letter>,
        u: Word,
        v: Word,
        expected: bool,
        got: bool,
    },
    /// Synchronization failed.
    Lag {
        multiplier: Side,
        letter: Option<Letter>,
        padding: Side,
        input: Word,
        output: Word,
    },
    /// The synchronized automaton accepts an invalid padding.
    Padding {
        multiplier: Side,
        letter: Option<Letter>,
        padding: Side,
    },
    /// The synchronized automaton disagrees with the verified pairs.
    SyncPair {
        multiplier: Side,
        letter: Option<Letter>,
        padding: Side,
        u: Word,
        v: Word,
        expected: bool,
        got: bool,
    },
}

impl Counterexample {
    pub fn line(&self, a: &Alphabet) -> String {
        match self {
            Counterexample::MissingRepresentative { representative } => {
                format!(
                    "counterexample: class of {} has no accepted member",
                    a.show(representative)
                )
            }
            Counterexample::OutsideAcceptor {
                multiplier,
                letter,
                word,
            } => format!(
                "counterexample: {} {} relates {} which the acceptor rejects",
                side_name(*multiplier),
                letter_name(a, *letter),
                a.show(word)
            ),
            Counterexample::Pair {
                multiplier,
                letter,
                u,
                v,
                expected,
                got,
            } => format!(
                "counterexample: {} {} u={} v={} expected={} got={}",
                side_name(*multiplier),
                letter_name(a, *letter),
                a.show(u),
                a.show(v),
                expected,
                got
            ),
            Counterexample::Lag {
                multiplier,
                letter,
                padding,
                input,
                output,
            } => format!(
                "counterexample: {} {} not {}-synchronizable with lag {}: ({}, {})",
                side_name(*multiplier),
                letter_name(a, *letter),
                pad_name(*padding),
                SYNC_LAG,
                a.show(input),
                a.show(output)
            ),
            Counterexample::Padding {
                multiplier,
                letter,
                padding,
            } => format!(
                "counterexample: {} {} {} automaton accepts an invalid padding",
                side_name(*multiplier),
                letter_name(a, *letter),
                pad_name(*padding)
            ),
            Counterexample::SyncPair {
                multiplier,
                letter,
                padding,
                u,
                v,
                expected,
                got,
            } => format!(
                "counterexample: {} {} {} u={} v={} expected={} got={}",
                side_name(*multiplier),
                letter_name(a, *letter),
                pad_name(*padding),
                a.show(u),
                a.show(v),
                expected,
                got
            ),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ValidationError {
    #[error("structure refuted")]
    Refuted(Box<Counterexample>),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error("suite alphabet differs from the presentation")]
    AlphabetMismatch,
}

fn refuted(c: Counterexample) -> ValidationError {
    ValidationError::Refuted(Box::new(c))
}

/// First element of the symmetric difference of two sorted sets, with
/// membership in the first set.
fn first_difference<T: Ord + Clone>(a: &BTreeSet<T>, b: &BTreeSet<T>) -> Option<(T, bool)> {
    let x = a.difference(b).next();
    let y = b.difference(a).next();
    match (x, y) {
        (Some(x), Some(y)) if y < x => Some((y.clone(), false)),
        (Some(x), _) => Some((x.clone(), true)),
        (None, Some(y)) => Some((y.clone(), false)),
        (None, None) => None,
    }
}

/// Checks a multiplier suite against the oracle on all words of length at
/// most `maxlen`.
pub fn validate_structure(
    oracle: &Oracle,
    suite: &MultiplierSuite,
    maxlen: usize,
) -> Result<Certificate, ValidationError> {
    let alphabet = &oracle.presentation().alphabet;
    if *alphabet != suite.alphabet {
        return Err(ValidationError::AlphabetMismatch);
    }
    let lang = &suite.acceptor;

    let mut classes_checked = 0;
    let mut unique = true;
    for n in 0..=maxlen {
        for class in oracle.classes_of_length(n)? {
            classes_checked += 1;
            let hits = class.members.iter().filter(|m| lang.accepts(m)).count();
            if hits == 0 {
                return Err(refuted(Counterexample::MissingRepresentative {
                    representative: class.representative().clone(),
                }));
            }
            unique &= hits == 1;
        }
    }

    let words = lang.accepted_words(maxlen);
    let paddings: &[Side] = if suite.biautomatic() {
        &[Side::Right, Side::Left]
    } else {
        &[Side::Right]
    };
    let jobs: Vec<(Side, Option<Letter>, &Transducer)> = suite.multipliers().collect();
    let results: Vec<Result<MultiplierCheck, ValidationError>> = jobs
        .par_iter()
        .map(|&(side, letter, t)| {
            check_multiplier(oracle, lang, &words, side, letter, t, paddings, maxlen)
        })
        .collect();
    let multipliers = results.into_iter().collect::<Result<Vec<_>, _>>()?;
    Ok(Certificate {
        maxlen,
        biautomatic: suite.biautomatic(),
        classes_checked,
        unique_representatives: unique,
        multipliers,
    })
}

#[allow(clippy::too_many_arguments)]
fn check_multiplier(
    oracle: &Oracle,
    lang: &Dfa,
    words: &[Word],
    multiplier: Side,
    letter: Option<Letter>,
    t: &Transducer,
    paddings: &[Side],
    maxlen: usize,
) -> Result<MultiplierCheck, ValidationError> {
    for projection in [t.domain(), t.range()] {
        if let Some(word) = projection.difference(lang).shortest_accepted() {
            return Err(refuted(Counterexample::OutsideAcceptor {
                multiplier,
                letter,
                word,
            }));
        }
    }

    let mut verified: BTreeSet<(Word, Word)> = BTreeSet::new();
    for u in words {
        let x: Vec<Letter> = letter.into_iter().collect();
        let target = match multiplier {
            Side::Right => u.concat(&x),
            Side::Left => Word(x).concat(u),
        };
        let expected: BTreeSet<Word> = if target.len() <= maxlen {
            oracle
                .congruence_class(&target)?
                .members
                .iter()
                .filter(|m| lang.accepts(m))
                .cloned()
                .collect()
        } else {
            BTreeSet::new()
        };
        let got: BTreeSet<Word> = t.outputs(u).accepted_words(maxlen).into_iter().collect();
        if let Some((v, in_expected)) = first_difference(&expected, &got) {
            return Err(refuted(Counterexample::Pair {
                multiplier,
                letter,
                u: u.clone(),
                v,
                expected: in_expected,
                got: !in_expected,
            }));
        }
        verified.extend(expected.into_iter().map(|v| (u.clone(), v)));
    }

    let mut sync_states = Vec::new();
    for &padding in paddings {
        let s = synchronize_bounded(t, SYNC_LAG, padding).map_err(|e| match e {
            crate::automata::AutomataError::LagExceeded { input, output, .. } => {
                refuted(Counterexample::Lag {
                    multiplier,
                    letter,
                    padding,
                    input,
                    output,
                })
            }
            _ => ValidationError::AlphabetMismatch,
        })?;
        if !s.padding_valid() {
            return Err(refuted(Counterexample::Padding {
                multiplier,
                letter,
                padding,
            }));
        }
        let accepted: BTreeSet<(Word, Word)> = s.pairs_up_to(maxlen).into_iter().collect();
        if let Some(((u, v), in_verified)) = first_difference(&verified, &accepted) {
            return Err(refuted(Counterexample::SyncPair {
                multiplier,
                letter,
                padding,
                u,
                v,
                expected: in_verified,
                got: !in_verified,
            }));
        }
        sync_states.push((padding, s.dfa.num_states()));
    }
    Ok(MultiplierCheck {
        multiplier,
        letter,
        pairs: verified.len(),
        sync_states,
    })
}
