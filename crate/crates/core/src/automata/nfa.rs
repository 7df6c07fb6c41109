use std::collections::{BTreeSet, HashMap, VecDeque};

use super::dfa::Dfa;
use crate::word::{Alphabet, Letter, Word};

/// Automaton with ε-edges, used for building languages before
/// determinization.
#[derive(Debug, Clone)]
pub struct Nfa {
    pub alphabet: Alphabet,
    pub edges: Vec<Vec<(Option<Letter>, usize)>>,
    pub start: usize,
    pub accept: Vec<bool>,
}

impl Nfa {
    fn with_states(alphabet: &Alphabet, n: usize) -> Self {
        Nfa {
            alphabet: alphabet.clone(),
            edges: vec![Vec::new(); n],
            start: 0,
            accept: vec![false; n],
        }
    }

    pub fn num_states(&self) -> usize {
        self.edges.len()
    }

    pub fn empty(alphabet: &Alphabet) -> Self {
        Self::with_states(alphabet, 1)
    }

    pub fn epsilon(alphabet: &Alphabet) -> Self {
        let mut n = Self::with_states(alphabet, 1);
        n.accept[0] = true;
        n
    }

    /// Any one of `letters`.
    pub fn letters(alphabet: &Alphabet, letters: &[Letter]) -> Self {
        let mut n = Self::with_states(alphabet, 2);
        for &l in letters {
            n.edges[0].push((Some(l), 1));
        }
        n.accept[1] = true;
        n
    }

    pub fn word(alphabet: &Alphabet, w: &[Letter]) -> Self {
        let mut n = Self::with_states(alphabet, w.len() + 1);
        for (i, &l) in w.iter().enumerate() {
            n.edges[i].push((Some(l), i + 1));
        }
        n.accept[w.len()] = true;
        n
    }

    pub fn from_dfa(d: &Dfa) -> Self {
        let mut n = Self::with_states(&d.alphabet, d.num_states());
        for q in 0..d.num_states() {
            for l in d.alphabet.letters() {
                n.edges[q].push((Some(l), d.next(q as u32, l) as usize));
            }
        }
        n.start = d.start as usize;
        n.accept = d.accept.clone();
        n
    }

    /// Copies `other` into `self`, returning the offset of its states.
    fn absorb(&mut self, other: &Nfa) -> usize {
        let off = self.num_states();
        for es in &other.edges {
            self.edges
                .push(es.iter().map(|&(l, t)| (l, t + off)).collect());
        }
        self.accept.extend_from_slice(&other.accept);
        off
    }

    pub fn union(&self, other: &Nfa) -> Nfa {
        let mut n = Self::with_states(&self.alphabet, 1);
        let a = n.absorb(self);
        let b = n.absorb(other);
        n.edges[0].push((None, self.start + a));
        n.edges[0].push((None, other.start + b));
        n
    }

    pub fn concat(&self, other: &Nfa) -> Nfa {
        let mut n = self.clone();
        let b = n.absorb(other);
        for q in 0..self.num_states() {
            if self.accept[q] {
                n.accept[q] = false;
                n.edges[q].push((None, other.start + b));
            }
        }
        n
    }

    pub fn star(&self) -> Nfa {
        let mut n = Self::with_states(&self.alphabet, 1);
        n.accept[0] = true;
        let a = n.absorb(self);
        n.edges[0].push((None, self.start + a));
        for q in 0..self.num_states() {
            if self.accept[q] {
                n.edges[q + a].push((None, 0));
            }
        }
        n
    }

    pub fn reverse(&self) -> Nfa {
        let mut n = Self::with_states(&self.alphabet, self.num_states() + 1);
        for (q, es) in self.edges.iter().enumerate() {
            for &(l, t) in es {
                n.edges[t + 1].push((l, q + 1));
            }
        }
        for q in 0..self.num_states() {
            if self.accept[q] {
                n.edges[0].push((None, q + 1));
            }
        }
        n.accept[self.start + 1] = true;
        n
    }

    fn closure(&self, set: &mut BTreeSet<usize>) {
        let mut stack: Vec<usize> = set.iter().copied().collect();
        while let Some(q) = stack.pop() {
            for &(l, t) in &self.edges[q] {
                if l.is_none() && set.insert(t) {
                    stack.push(t);
                }
            }
        }
    }

    /// Subset construction followed by minimization.
    pub fn determinize(&self) -> Dfa {
        let k = self.alphabet.len();
        let mut init = BTreeSet::from([self.start]);
        self.closure(&mut init);
        let mut ids: HashMap<BTreeSet<usize>, u32> = HashMap::new();
        let mut sets = vec![init.clone()];
        ids.insert(init, 0);
        let mut queue = VecDeque::from([0usize]);
        let mut trans = Vec::new();
        while let Some(i) = queue.pop_front() {
            let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); k];
            for &q in &sets[i] {
                for &(l, t) in &self.edges[q] {
                    if let Some(l) = l {
                        succ[l.index()].insert(t);
                    }
                }
            }
            let mut row = Vec::with_capacity(k);
            for mut s in succ {
                self.closure(&mut s);
                let id = match ids.get(&s) {
                    Some(&id) => id,
                    None => {
                        let id = sets.len() as u32;
                        ids.insert(s.clone(), id);
                        sets.push(s);
                        queue.push_back(id as usize);
                        id
                    }
                };
                row.push(id);
            }
            // Rows are produced in the order states are dequeued, which is
            // creation order.
            debug_assert_eq!(trans.len(), i * k);
            trans.extend(row);
        }
        let accept = sets
            .iter()
            .map(|s| s.iter().any(|&q| self.accept[q]))
            .collect();
        Dfa {
            alphabet: self.alphabet.clone(),
            trans,
            start: 0,
            accept,
        }
        .minimize()
    }

    pub fn accepts(&self, w: &Word) -> bool {
        self.determinize().accepts(w)
    }
}
