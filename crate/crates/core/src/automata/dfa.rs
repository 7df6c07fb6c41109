use std::collections::{HashMap, VecDeque};

use super::nfa::Nfa;
use crate::word::{Alphabet, Letter, Word};

/// Complete deterministic automaton; `trans[q * |A| + a]` is the successor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dfa {
    pub alphabet: Alphabet,
    pub trans: Vec<u32>,
    pub start: u32,
    pub accept: Vec<bool>,
}

impl Dfa {
    pub fn num_states(&self) -> usize {
        self.accept.len()
    }

    fn width(&self) -> usize {
        self.alphabet.len()
    }

    pub fn next(&self, q: u32, l: Letter) -> u32 {
        self.trans[q as usize * self.width() + l.index()]
    }

    pub fn run(&self, w: &[Letter]) -> u32 {
        w.iter().fold(self.start, |q, &l| self.next(q, l))
    }

    pub fn accepts(&self, w: &[Letter]) -> bool {
        self.accept[self.run(w) as usize]
    }

    /// The empty language.
    pub fn empty(alphabet: &Alphabet) -> Self {
        Dfa {
            alphabet: alphabet.clone(),
            trans: vec![0; alphabet.len()],
            start: 0,
            accept: vec![false],
        }
    }

    /// All words.
    pub fn universal(alphabet: &Alphabet) -> Self {
        let mut d = Self::empty(alphabet);
        d.accept[0] = true;
        d
    }

    /// Exactly the given words.
    pub fn from_words<'a>(alphabet: &Alphabet, words: impl IntoIterator<Item = &'a Word>) -> Self {
        let mut nfa = Nfa::empty(alphabet);
        for w in words {
            nfa = nfa.union(&Nfa::word(alphabet, w));
        }
        nfa.determinize()
    }

    pub fn complement(&self) -> Self {
        let mut d = self.clone();
        for a in d.accept.iter_mut() {
            *a = !*a;
        }
        d
    }

    fn product(&self, other: &Dfa, op: impl Fn(bool, bool) -> bool) -> Dfa {
        assert_eq!(
            self.alphabet, other.alphabet,
            "product of automata over different alphabets"
        );
        let k = self.width();
        let mut ids: HashMap<(u32, u32), u32> = HashMap::new();
        let mut queue = VecDeque::new();
        let mut trans = Vec::new();
        let mut accept = Vec::new();
        ids.insert((self.start, other.start), 0);
        queue.push_back((self.start, other.start));
        accept.push(op(
            self.accept[self.start as usize],
            other.accept[other.start as usize],
        ));
        while let Some((p, q)) = queue.pop_front() {
            for l in 0..k {
                let l = Letter(l as u16);
                let key = (self.next(p, l), other.next(q, l));
                let id = *ids.entry(key).or_insert_with(|| {
                    queue.push_back(key);
                    accept.push(op(
                        self.accept[key.0 as usize],
                        other.accept[key.1 as usize],
                    ));
                    (accept.len() - 1) as u32
                });
                trans.push(id);
            }
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            trans,
            start: 0,
            accept,
        }
        .minimize()
    }

    pub fn union(&self, other: &Dfa) -> Dfa {
        self.product(other, |a, b| a || b)
    }

    pub fn intersection(&self, other: &Dfa) -> Dfa {
        self.product(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Dfa) -> Dfa {
        self.product(other, |a, b| a && !b)
    }

    /// Drops unreachable states and merges equivalent ones; states are
    /// renumbered in breadth-first order from the start, so equal
    /// languages give identical automata.
    pub fn minimize(&self) -> Dfa {
        let k = self.width();
        // Reachable states in BFS order.
        let mut order = vec![self.start];
        let mut index = vec![u32::MAX; self.num_states()];
        index[self.start as usize] = 0;
        let mut i = 0;
        while i < order.len() {
            let q = order[i];
            for l in 0..k {
                let r = self.trans[q as usize * k + l];
                if index[r as usize] == u32::MAX {
                    index[r as usize] = order.len() as u32;
                    order.push(r);
                }
            }
            i += 1;
        }
        let n = order.len();
        let succ =
            |s: usize, l: usize| index[self.trans[order[s] as usize * k + l] as usize] as usize;

        // Moore refinement.
        let mut class: Vec<u32> = (0..n)
            .map(|s| u32::from(self.accept[order[s] as usize]))
            .collect();
        let mut count = {
            let mut seen = class.clone();
            seen.sort_unstable();
            seen.dedup();
            seen.len()
        };
        loop {
            let mut sigs: HashMap<Vec<u32>, u32> = HashMap::new();
            let mut next = vec![0u32; n];
            for s in 0..n {
                let mut sig = Vec::with_capacity(k + 1);
                sig.push(class[s]);
                sig.extend((0..k).map(|l| class[succ(s, l)]));
                let len = sigs.len() as u32;
                next[s] = *sigs.entry(sig).or_insert(len);
            }
            let new_count = sigs.len();
            class = next;
            if new_count == count {
                break;
            }
            count = new_count;
        }

        // Renumber classes in BFS order from the start.
        let mut rename = vec![u32::MAX; count];
        let mut reps = Vec::new();
        let mut queue = VecDeque::new();
        rename[class[0] as usize] = 0;
        reps.push(0usize);
        queue.push_back(0usize);
        while let Some(s) = queue.pop_front() {
            for l in 0..k {
                let t = succ(s, l);
                let c = class[t] as usize;
                if rename[c] == u32::MAX {
                    rename[c] = reps.len() as u32;
                    reps.push(t);
                    queue.push_back(t);
                }
            }
        }
        let mut trans = Vec::with_capacity(reps.len() * k);
        let mut accept = Vec::with_capacity(reps.len());
        for &s in &reps {
            accept.push(self.accept[order[s] as usize]);
            for l in 0..k {
                trans.push(rename[class[succ(s, l)] as usize]);
            }
        }
        Dfa {
            alphabet: self.alphabet.clone(),
            trans,
            start: 0,
            accept,
        }
    }

    /// A shortest word accepted by exactly one of the two automata.
    pub fn counterexample(&self, other: &Dfa) -> Option<Word> {
        assert_eq!(
            self.alphabet, other.alphabet,
            "comparing automata over different alphabets"
        );
        let k = self.width();
        type Pair = (u32, u32);
        let mut parent: HashMap<Pair, Option<(Pair, Letter)>> = HashMap::new();
        let mut queue = VecDeque::new();
        let s = (self.start, other.start);
        parent.insert(s, None);
        queue.push_back(s);
        while let Some((p, q)) = queue.pop_front() {
            if self.accept[p as usize] != other.accept[q as usize] {
                let mut w = Vec::new();
                let mut cur = (p, q);
                while let Some(Some((prev, l))) = parent.get(&cur) {
                    w.push(*l);
                    cur = *prev;
                }
                w.reverse();
                return Some(Word(w));
            }
            for l in 0..k {
                let l = Letter(l as u16);
                let next = (self.next(p, l), other.next(q, l));
                if let std::collections::hash_map::Entry::Vacant(e) = parent.entry(next) {
                    e.insert(Some(((p, q), l)));
                    queue.push_back(next);
                }
            }
        }
        None
    }

    pub fn equivalent(&self, other: &Dfa) -> bool {
        self.counterexample(other).is_none()
    }

    pub fn is_empty(&self) -> bool {
        self.shortest_accepted().is_none()
    }

    pub fn shortest_accepted(&self) -> Option<Word> {
        self.counterexample(&Dfa::empty(&self.alphabet))
    }

    /// States from which some accepting state is reachable.
    pub fn live_states(&self) -> Vec<bool> {
        let n = self.num_states();
        let k = self.width();
        let mut rev: Vec<Vec<u32>> = vec![Vec::new(); n];
        for q in 0..n {
            for l in 0..k {
                rev[self.trans[q * k + l] as usize].push(q as u32);
            }
        }
        let mut live = self.accept.clone();
        let mut stack: Vec<u32> = (0..n as u32).filter(|&q| live[q as usize]).collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q as usize] {
                if !live[p as usize] {
                    live[p as usize] = true;
                    stack.push(p);
                }
            }
        }
        live
    }

    /// Accepted words of length at most `maxlen`, in shortlex order.
    pub fn accepted_words(&self, maxlen: usize) -> Vec<Word> {
        let live = self.live_states();
        let mut out = Vec::new();
        let mut layer: Vec<(u32, Vec<Letter>)> = vec![(self.start, Vec::new())];
        for len in 0..=maxlen {
            for (q, w) in &layer {
                if self.accept[*q as usize] {
                    out.push(Word(w.clone()));
                }
            }
            if len == maxlen {
                break;
            }
            let mut next = Vec::new();
            for (q, w) in &layer {
                for l in self.alphabet.letters() {
                    let r = self.next(*q, l);
                    if live[r as usize] {
                        let mut w2 = w.clone();
                        w2.push(l);
                        next.push((r, w2));
                    }
                }
            }
            layer = next;
        }
        out
    }

    /// The same language over `target`: letters missing from `self`
    /// lead to a rejecting sink. `None` if `self` uses a letter not in
    /// `target`.
    pub fn reindex(&self, target: &Alphabet) -> Option<Dfa> {
        if *target == self.alphabet {
            return Some(self.clone());
        }
        let map: Vec<Option<Letter>> = target
            .names()
            .iter()
            .map(|n| self.alphabet.letter(n))
            .collect();
        if self.alphabet.names().iter().any(|n| !target.contains(n)) {
            return None;
        }
        let n = self.num_states();
        let sink = n as u32;
        let mut trans = Vec::with_capacity((n + 1) * target.len());
        for q in 0..=n {
            for m in &map {
                trans.push(match (q < n, m) {
                    (true, Some(l)) => self.next(q as u32, *l),
                    _ => sink,
                });
            }
        }
        let mut accept = self.accept.clone();
        accept.push(false);
        Some(
            Dfa {
                alphabet: target.clone(),
                trans,
                start: self.start,
                accept,
            }
            .minimize(),
        )
    }

    pub fn to_nfa(&self) -> Nfa {
        Nfa::from_dfa(self)
    }

    pub fn concat(&self, other: &Dfa) -> Dfa {
        self.to_nfa().concat(&other.to_nfa()).determinize()
    }

    pub fn star(&self) -> Dfa {
        self.to_nfa().star().determinize()
    }

    pub fn reverse(&self) -> Dfa {
        self.to_nfa().reverse().determinize()
    }

    /// Words of length exactly `n` accepted, counted without enumeration.
    pub fn count_of_length(&self, n: usize) -> u128 {
        let mut counts = vec![0u128; self.num_states()];
        counts[self.start as usize] = 1;
        for _ in 0..n {
            let mut next = vec![0u128; self.num_states()];
            for (q, &c) in counts.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                for l in self.alphabet.letters() {
                    next[self.next(q as u32, l) as usize] += c;
                }
            }
            counts = next;
        }
        counts
            .iter()
            .enumerate()
            .filter(|(q, _)| self.accept[*q])
            .map(|(_, c)| c)
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    fn words(d: &Dfa) -> Vec<String> {
        d.accepted_words(3)
            .iter()
            .map(|w| d.alphabet.show(w))
            .collect()
    }

    #[test]
    fn finite_language_round_trip() {
        let a = ab();
        let ws = [
            a.parse_word("ab").unwrap(),
            a.parse_word("b").unwrap(),
            Word::empty(),
        ];
        let d = Dfa::from_words(&a, ws.iter());
        assert_eq!(words(&d), ["ε", "b", "ab"]);
        assert_eq!(d.count_of_length(2), 1);
    }

    #[test]
    fn complement_of_empty_is_universal() {
        let a = ab();
        assert!(Dfa::empty(&a).complement().equivalent(&Dfa::universal(&a)));
    }

    #[test]
    fn boolean_laws() {
        let a = ab();
        let x = Dfa::from_words(&a, [a.parse_word("ab").unwrap()].iter()).star();
        let y = Dfa::from_words(&a, [a.parse_word("a").unwrap()].iter()).star();
        let lhs = x.union(&y).complement();
        let rhs = x.complement().intersection(&y.complement());
        assert!(lhs.equivalent(&rhs));
        assert!(x.complement().complement().equivalent(&x));
        assert_eq!(x.difference(&x).shortest_accepted(), None);
        assert_eq!(
            x.counterexample(&y).map(|w| a.show(&w)),
            Some("a".to_string())
        );
    }

    #[test]
    fn minimization_is_canonical() {
        let a = ab();
        let x = Dfa::from_words(&a, [a.parse_word("a").unwrap()].iter()).star();
        let y = x.concat(&x);
        assert_eq!(x.minimize(), y.minimize());
        assert_eq!(x.minimize().num_states(), 2);
    }

    #[test]
    fn reindexing_adds_dead_letters() {
        let a = ab();
        let abc = Alphabet::new(["c", "a", "b"]).unwrap();
        let d = Dfa::universal(&a).reindex(&abc).unwrap();
        assert!(d.accepts(&abc.parse_word("abba").unwrap()));
        assert!(!d.accepts(&abc.parse_word("ac").unwrap()));
        assert!(Dfa::universal(&abc).reindex(&a).is_none());
    }

    #[test]
    fn reversal() {
        let a = ab();
        let d = Dfa::from_words(&a, [a.parse_word("aab").unwrap()].iter());
        assert_eq!(words(&d.reverse()), ["baa"]);
    }
}
