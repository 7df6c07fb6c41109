//! Knuth–Bendix completion for string rewriting systems.

use thiserror::Error;

use super::critical::critical_pairs;
use super::{RewriteError, RewriteSystem, RuleInstance, TermOrder};
use crate::word::{Alphabet, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompletionError {
    #[error("more than {max} rules after {added} additions")]
    MaxRulesExceeded {
        max: usize,
        added: usize,
        rules: Vec<(Word, Word)>,
    },
    #[error("equation cannot be oriented by the order")]
    Unorientable { lhs: Word, rhs: Word },
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

fn orient(order: &TermOrder, u: Word, v: Word) -> Result<Option<(Word, Word)>, CompletionError> {
    if u == v {
        return Ok(None);
    }
    if order.greater(&u, &v) {
        Ok(Some((u, v)))
    } else if order.greater(&v, &u) {
        Ok(Some((v, u)))
    } else {
        Err(CompletionError::Unorientable { lhs: u, rhs: v })
    }
}

fn system(alphabet: &Alphabet, rules: &[(Word, Word)]) -> RewriteSystem {
    RewriteSystem::new(
        alphabet.clone(),
        rules
            .iter()
            .map(|(l, r)| RuleInstance::new(l.clone(), r.clone()))
            .collect(),
    )
}

/// Completes `equations` under `order`.
///
/// A system that is already complete is returned unchanged, in input
/// order. Otherwise rules are added for each non-joinable critical pair,
/// and existing rules are interreduced against every new rule.
pub fn complete(
    alphabet: &Alphabet,
    equations: &[(Word, Word)],
    order: &TermOrder,
    max_rules: usize,
    fuel: usize,
) -> Result<Vec<(Word, Word)>, CompletionError> {
    let mut rules: Vec<(Word, Word)> = Vec::new();
    for (u, v) in equations {
        if let Some(r) = orient(order, u.clone(), v.clone())? {
            if !rules.contains(&r) {
                rules.push(r);
            }
        }
    }
    let mut added = 0;
    loop {
        if rules.len() > max_rules {
            return Err(CompletionError::MaxRulesExceeded {
                max: max_rules,
                added,
                rules,
            });
        }
        let sys = system(alphabet, &rules);
        let mut new_rule = None;
        for cp in critical_pairs(&sys) {
            let l = sys.normalize(&cp.left, fuel)?.word;
            let r = sys.normalize(&cp.right, fuel)?.word;
            if let Some(rule) = orient(order, l, r)? {
                new_rule = Some(rule);
                break;
            }
        }
        let Some((nl, nr)) = new_rule else {
            return Ok(rules);
        };
        added += 1;
        rules = interreduce(alphabet, rules, (nl, nr), order, fuel)?;
    }
}

/// Adds `new` and re-normalizes every rule it affects.
fn interreduce(
    alphabet: &Alphabet,
    rules: Vec<(Word, Word)>,
    new: (Word, Word),
    order: &TermOrder,
    fuel: usize,
) -> Result<Vec<(Word, Word)>, CompletionError> {
    let mut pending = vec![new];
    let mut current = rules;
    while let Some(rule) = pending.pop() {
        let single = system(alphabet, std::slice::from_ref(&rule));
        let mut kept = Vec::new();
        for (l, r) in current {
            if single.is_irreducible(&l) {
                kept.push((l, r));
            } else {
                // The old lhs now reduces: it becomes an equation again.
                pending.push((l, r));
            }
        }
        kept.push(rule);
        current = kept;
        // Orient any displaced equations against the enlarged system.
        let sys = system(alphabet, &current);
        let mut rest = Vec::new();
        for (l, r) in pending.drain(..) {
            let l = sys.normalize(&l, fuel)?.word;
            let r = sys.normalize(&r, fuel)?.word;
            if let Some(o) = orient(order, l, r)? {
                rest.push(o);
            }
        }
        pending = rest;
        if pending.is_empty() {
            // Right-hand sides in normal form.
            let sys = system(alphabet, &current);
            for rule in current.iter_mut() {
                rule.1 = sys.normalize(&rule.1, fuel)?.word;
            }
        }
    }
    Ok(current)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue;
    use crate::rewrite::{check_local_confluence, check_termination, DEFAULT_FUEL};

    #[test]
    fn complete_input_is_a_fixed_point() {
        let p = catalogue::complete_auto();
        let rules = p.plain_rules().unwrap();
        let o = TermOrder::parse("shortlex:c<a<b", &p.alphabet).unwrap();
        let out = complete(&p.alphabet, &rules, &o, 50, DEFAULT_FUEL).unwrap();
        assert_eq!(out, rules);
    }

    #[test]
    fn single_commutation() {
        let a = Alphabet::new(["a", "b"]).unwrap();
        let rules = [(a.parse_word("ab").unwrap(), a.parse_word("ba").unwrap())];
        let o = TermOrder::parse("shortlex:b<a", &a).unwrap();
        assert_eq!(complete(&a, &rules, &o, 3, DEFAULT_FUEL).unwrap(), rules);
    }

    #[test]
    fn three_rules_need_infinitely_many() {
        let p = catalogue::nonfdt_biauto();
        let o = TermOrder::parse("shortlex:a>b>c", &p.alphabet).unwrap();
        match complete(&p.alphabet, &p.plain_rules().unwrap(), &o, 50, DEFAULT_FUEL) {
            Err(CompletionError::MaxRulesExceeded { rules, .. }) => {
                // Each added rule is an instance c u a b -> c u b b.
                let cuab = rules
                    .iter()
                    .filter(|(l, r)| {
                        let l = p.show(l);
                        let r = p.show(r);
                        l.starts_with('c') && l.ends_with("ab") && r.ends_with("bb")
                    })
                    .count();
                assert!(cuab > 10, "{cuab}");
            }
            other => panic!("expected rule cap, got {other:?}"),
        }
    }

    #[test]
    fn completes_small_system() {
        // Klein four-group: completion discovers ba -> ab.
        let a = Alphabet::new(["a", "b"]).unwrap();
        let w = |s: &str| a.parse_word(s).unwrap();
        let o = TermOrder::parse("shortlex:a<b", &a).unwrap();
        let eqs = [(w("aa"), w("")), (w("bb"), w("")), (w("abab"), w(""))];
        let out = complete(&a, &eqs, &o, 20, DEFAULT_FUEL).unwrap();
        let sys = system(&a, &out);
        assert!(check_termination(&sys.rules, &o));
        assert!(check_local_confluence(&sys, DEFAULT_FUEL)
            .unwrap()
            .all_joinable());
        assert!(out.contains(&(w("ba"), w("ab"))));
        assert!(!out.iter().any(|(l, _)| *l == w("abab")));
    }
}
