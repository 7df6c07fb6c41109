use rayon::prelude::*;

use super::{RewriteError, RewriteSystem};
use crate::word::Word;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OverlapKind {
    /// A proper suffix of the first lhs is a prefix of the second.
    Overlap,
    /// The second lhs occurs inside the first.
    Containment,
}

/// Two one-step rewrites of a common peak word.
///
/// `rules.0` applies at `positions.0` to give `left`; `rules.1` at
/// `positions.1` gives `right`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CriticalPair {
    pub peak: Word,
    pub left: Word,
    pub right: Word,
    pub kind: OverlapKind,
    pub rules: (usize, usize),
    pub positions: (usize, usize),
}

/// All critical pairs, ordered by first rule, second rule, then overlap.
///
/// When the system comes from bounded instantiation, pairs whose peak
/// is longer than the bound are skipped: the rules needed to resolve
/// them are not in the instantiation.
pub fn critical_pairs(system: &RewriteSystem) -> Vec<CriticalPair> {
    let rules = &system.rules;
    let limit = system.exact_up_to.unwrap_or(usize::MAX);
    let mut out = Vec::new();
    for (i, ri) in rules.iter().enumerate() {
        let li = &ri.lhs;
        for (j, rj) in rules.iter().enumerate() {
            let lj = &rj.lhs;
            // Proper overlaps: suffix of li of length k equals prefix of lj.
            let max_k = li.len().min(lj.len());
            for k in 1..max_k {
                if li[li.len() - k..] != lj[..k] {
                    continue;
                }
                let peak = li.concat(&lj[k..]);
                if peak.len() > limit {
                    continue;
                }
                let pj = li.len() - k;
                out.push(CriticalPair {
                    left: peak.splice(0, li.len(), &ri.rhs),
                    right: peak.splice(pj, lj.len(), &rj.rhs),
                    peak,
                    kind: OverlapKind::Overlap,
                    rules: (i, j),
                    positions: (0, pj),
                });
            }
            // Containment of lj in li.
            if i == j || lj.len() > li.len() || (lj.len() == li.len() && j < i) {
                continue;
            }
            for p in li.occurrences(lj) {
                if li.len() > limit {
                    continue;
                }
                out.push(CriticalPair {
                    peak: li.clone(),
                    left: ri.rhs.clone(),
                    right: li.splice(p, lj.len(), &rj.rhs),
                    kind: OverlapKind::Containment,
                    rules: (i, j),
                    positions: (0, p),
                });
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairResolution {
    pub pair: CriticalPair,
    pub left_nf: Word,
    pub right_nf: Word,
}

impl PairResolution {
    pub fn joinable(&self) -> bool {
        self.left_nf == self.right_nf
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfluenceReport {
    pub pairs: Vec<PairResolution>,
}

impl ConfluenceReport {
    pub fn joinable_count(&self) -> usize {
        self.pairs.iter().filter(|p| p.joinable()).count()
    }

    pub fn all_joinable(&self) -> bool {
        self.pairs.iter().all(PairResolution::joinable)
    }

    pub fn failures(&self) -> impl Iterator<Item = &PairResolution> {
        self.pairs.iter().filter(|p| !p.joinable())
    }
}

/// Normalizes both sides of every critical pair, in parallel.
pub fn check_local_confluence(
    system: &RewriteSystem,
    fuel: usize,
) -> Result<ConfluenceReport, RewriteError> {
    let pairs = critical_pairs(system);
    let pairs = pairs
        .into_par_iter()
        .map(|pair| {
            let left_nf = system.normalize(&pair.left, fuel)?.word;
            let right_nf = system.normalize(&pair.right, fuel)?.word;
            Ok(PairResolution {
                pair,
                left_nf,
                right_nf,
            })
        })
        .collect::<Result<Vec<_>, RewriteError>>()?;
    Ok(ConfluenceReport { pairs })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue;
    use crate::word::Alphabet;
    use std::collections::BTreeSet;

    #[test]
    fn nine_rule_overlaps() {
        let p = catalogue::complete_auto();
        let s = RewriteSystem::from_plain(&p).unwrap();
        let cps = critical_pairs(&s);
        let peaks: BTreeSet<String> = cps.iter().map(|c| p.show(&c.peak)).collect();
        let expected: BTreeSet<String> = ["cbcaaa", "cbcaab", "cbcaba", "cbcabb"]
            .into_iter()
            .map(String::from)
            .collect();
        assert_eq!(peaks, expected);
        assert_eq!(cps.len(), 4);
        for c in &cps {
            assert_eq!(s.show_rule(c.rules.0), "cbca -> cacb");
        }
        let report = check_local_confluence(&s, 1000).unwrap();
        assert!(report.all_joinable());
    }

    #[test]
    fn pairs_are_genuine_one_step_results() {
        let p = catalogue::nonfdt_biauto_complete();
        let s = RewriteSystem::instantiate(&p, 6);
        for c in critical_pairs(&s) {
            let (i, j) = c.rules;
            let (pi, pj) = c.positions;
            assert_eq!(
                c.peak.splice(pi, s.rules[i].lhs.len(), &s.rules[i].rhs),
                c.left
            );
            assert_eq!(
                c.peak.splice(pj, s.rules[j].lhs.len(), &s.rules[j].rhs),
                c.right
            );
        }
    }

    #[test]
    fn commuting_rule_has_no_pairs() {
        let a = Alphabet::new(["a", "b"]).unwrap();
        let s = RewriteSystem::from_pairs(
            a.clone(),
            &[(a.parse_word("ab").unwrap(), a.parse_word("ba").unwrap())],
        );
        assert!(critical_pairs(&s).is_empty());
    }

    #[test]
    fn finite_three_rules_not_confluent() {
        let s = RewriteSystem::from_plain(&catalogue::nonfdt_biauto()).unwrap();
        let r = check_local_confluence(&s, 1000).unwrap();
        assert!(!r.all_joinable());
    }

    #[test]
    fn scheme_families_resolve() {
        let p = catalogue::fdt_biauto_schemes();
        let s = RewriteSystem::instantiate(&p, 8);
        let r = check_local_confluence(&s, 10_000).unwrap();
        assert!(!r.pairs.is_empty());
        assert!(r.all_joinable());
        // Peaks of the three families: c_j a^k b_j a, c_j a^k b_j d_j and
        // c1 a^k b1 a^l d_j with l >= 1 (the ba rule inside).
        let shapes: BTreeSet<(String, String)> = r
            .pairs
            .iter()
            .map(|c| {
                let first = p.alphabet.name(c.pair.peak[0]).to_string();
                let last = p.alphabet.name(*c.pair.peak.last().unwrap()).to_string();
                (first, last)
            })
            .collect();
        assert!(shapes.contains(&("c2".into(), "a".into())));
        assert!(shapes.contains(&("c3".into(), "d3".into())));
        assert!(shapes.contains(&("c1".into(), "d2".into())));
    }

    #[test]
    fn complete_infinite_system_resolves_at_bound() {
        let s = RewriteSystem::instantiate(&catalogue::nonfdt_biauto_complete(), 8);
        assert!(check_local_confluence(&s, 10_000).unwrap().all_joinable());
    }
}
