use std::collections::{BTreeMap, BTreeSet};

use super::{Origin, RuleInstance};
use crate::presentation::{Atom, Presentation, RuleScheme, VarKind};
use crate::word::Word;

/// Distinct products of `gens` with length at most `max`, in shortlex order.
pub(crate) fn generated_words(gens: &[Word], max: usize) -> Vec<Word> {
    let mut seen: BTreeSet<Word> = BTreeSet::new();
    seen.insert(Word::empty());
    let mut frontier = vec![Word::empty()];
    while let Some(w) = frontier.pop() {
        for g in gens {
            if g.is_empty() || w.len() + g.len() > max {
                continue;
            }
            let next = w.concat(g);
            if seen.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    seen.into_iter().collect()
}

/// Minimum lhs length contributed by each variable, per unit of its value.
fn lhs_weight(scheme: &RuleScheme, var: &str) -> usize {
    scheme
        .lhs
        .iter()
        .map(|a| match a {
            Atom::Power(_, e) => e.vars.iter().filter(|v| *v == var).count(),
            Atom::Var(v) if v == var => 1,
            _ => 0,
        })
        .sum()
}

fn fixed_lhs_len(scheme: &RuleScheme) -> usize {
    scheme
        .lhs
        .iter()
        .map(|a| match a {
            Atom::Letter(_) => 1,
            Atom::Power(_, e) => e.constant as usize,
            Atom::Var(_) => 0,
        })
        .sum()
}

/// Every instance of every scheme whose lhs has length at most `bound`.
///
/// Nat variables run upward from zero and word variables through their
/// generated submonoid in shortlex order, in declaration order. Instances
/// with equal sides, and repeats of an earlier instance, are dropped.
pub fn instantiate_schemes(p: &Presentation, bound: usize) -> Vec<RuleInstance> {
    let mut out = Vec::new();
    let mut seen: BTreeSet<(Word, Word)> = BTreeSet::new();
    for (idx, scheme) in p.schemes.iter().enumerate() {
        let fixed = fixed_lhs_len(scheme);
        if fixed > bound {
            continue;
        }
        let domains: Vec<Domain> = scheme
            .vars
            .iter()
            .map(|d| match &d.kind {
                VarKind::Nat => Domain::Nat(lhs_weight(scheme, &d.name)),
                VarKind::Word(gens) => Domain::Words(generated_words(gens, bound - fixed)),
            })
            .collect();
        let mut nat = BTreeMap::new();
        let mut words = BTreeMap::new();
        let mut emit = |nat: &BTreeMap<String, u32>, words: &BTreeMap<String, Word>| {
            let lhs = RuleScheme::instantiate_side(&scheme.lhs, nat, words);
            if lhs.is_empty() || lhs.len() > bound {
                return;
            }
            let rhs = RuleScheme::instantiate_side(&scheme.rhs, nat, words);
            if lhs == rhs || !seen.insert((lhs.clone(), rhs.clone())) {
                return;
            }
            out.push(RuleInstance {
                lhs,
                rhs,
                origin: Origin {
                    scheme: idx,
                    nat: nat.clone(),
                    words: words.clone(),
                },
            });
        };
        enumerate(
            scheme, &domains, 0, fixed, bound, &mut nat, &mut words, &mut emit,
        );
    }
    out
}

enum Domain {
    /// Lhs length added per unit of the variable.
    Nat(usize),
    Words(Vec<Word>),
}

#[allow(clippy::too_many_arguments)]
fn enumerate(
    scheme: &RuleScheme,
    domains: &[Domain],
    i: usize,
    used: usize,
    bound: usize,
    nat: &mut BTreeMap<String, u32>,
    words: &mut BTreeMap<String, Word>,
    emit: &mut impl FnMut(&BTreeMap<String, u32>, &BTreeMap<String, Word>),
) {
    if i == domains.len() {
        emit(nat, words);
        return;
    }
    let name = &scheme.vars[i].name;
    match &domains[i] {
        Domain::Nat(weight) => {
            let mut k = 0u32;
            loop {
                let len = used + weight * k as usize;
                if len > bound {
                    break;
                }
                nat.insert(name.clone(), k);
                enumerate(scheme, domains, i + 1, len, bound, nat, words, emit);
                if *weight == 0 {
                    // The value does not affect lhs length; cap by the bound.
                    if k as usize >= bound {
                        break;
                    }
                }
                k += 1;
            }
            nat.remove(name);
        }
        Domain::Words(list) => {
            for w in list {
                let len = used + w.len();
                if len > bound {
                    break;
                }
                words.insert(name.clone(), w.clone());
                enumerate(scheme, domains, i + 1, len, bound, nat, words, emit);
            }
            words.remove(name);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue;

    #[test]
    fn power_scheme_instances() {
        let p = Presentation::parse(
            "letters: a b2 c1 b1 c2\nscheme: c2 a^k b2 -> c1 a^k b1 where k : nat\n",
        )
        .unwrap();
        let inst = instantiate_schemes(&p, 5);
        let ks: Vec<u32> = inst.iter().map(|r| r.origin.nat["k"]).collect();
        assert_eq!(ks, [0, 1, 2, 3]);
    }

    #[test]
    fn word_variable_instances() {
        let p = catalogue::nonfdt_biauto_complete();
        let inst: Vec<_> = instantiate_schemes(&p, 5)
            .into_iter()
            .filter(|r| r.origin.scheme == 2)
            .collect();
        let us: Vec<String> = inst.iter().map(|r| p.show(&r.origin.words["U"])).collect();
        assert_eq!(us, ["ε", "a", "b", "aa", "ab", "ba", "bb"]);
    }

    #[test]
    fn plain_rules_pass_through() {
        let p = catalogue::complete_auto();
        let inst = instantiate_schemes(&p, 4);
        assert_eq!(inst.len(), 9);
        assert!(instantiate_schemes(&p, 3).is_empty());
    }

    #[test]
    fn two_nat_variables() {
        let p = catalogue::fdt_biauto_schemes();
        let inst = instantiate_schemes(&p, 6);
        let family: Vec<_> = inst.iter().filter(|r| r.origin.scheme == 5).collect();
        // k + l + 3 <= 6
        assert_eq!(family.len(), 10);
    }

    #[test]
    fn generated_submonoid_dedupes() {
        let a = crate::word::Alphabet::new(["a"]).unwrap();
        let gens = [a.parse_word("a").unwrap(), a.parse_word("aa").unwrap()];
        assert_eq!(generated_words(&gens, 3).len(), 4);
    }
}
