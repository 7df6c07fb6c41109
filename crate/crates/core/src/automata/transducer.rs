use std::collections::{HashMap, HashSet, VecDeque};

use super::dfa::Dfa;
use super::nfa::Nfa;
use super::AutomataError;
use crate::word::{Alphabet, Letter, Word};

/// An edge reads at most one input letter and writes at most one output
/// letter. Longer labels are split into chains when built.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Edge {
    pub from: usize,
    pub input: Option<Letter>,
    pub output: Option<Letter>,
    pub to: usize,
}

/// A finite transducer recognizing a rational relation.
#[derive(Debug, Clone)]
pub struct Transducer {
    pub input: Alphabet,
    pub output: Alphabet,
    pub states: usize,
    pub edges: Vec<Edge>,
    pub start: usize,
    pub accept: Vec<bool>,
}

impl Transducer {
    fn with_states(input: &Alphabet, output: &Alphabet, n: usize) -> Self {
        Transducer {
            input: input.clone(),
            output: output.clone(),
            states: n,
            edges: Vec::new(),
            start: 0,
            accept: vec![false; n],
        }
    }

    fn add_state(&mut self) -> usize {
        self.states += 1;
        self.accept.push(false);
        self.states - 1
    }

    /// Adds a path from `from` to `to` labelled `(u, v)`, letters paired
    /// left to right.
    pub fn add_label(&mut self, from: usize, u: &[Letter], v: &[Letter], to: usize) {
        let n = u.len().max(v.len());
        if n == 0 {
            self.edges.push(Edge {
                from,
                input: None,
                output: None,
                to,
            });
            return;
        }
        let mut cur = from;
        for i in 0..n {
            let next = if i + 1 == n { to } else { self.add_state() };
            self.edges.push(Edge {
                from: cur,
                input: u.get(i).copied(),
                output: v.get(i).copied(),
                to: next,
            });
            cur = next;
        }
    }

    /// The empty relation.
    pub fn empty(input: &Alphabet, output: &Alphabet) -> Self {
        Self::with_states(input, output, 1)
    }

    /// The single pair `(u, v)`.
    pub fn pair(input: &Alphabet, output: &Alphabet, u: &[Letter], v: &[Letter]) -> Self {
        let mut t = Self::with_states(input, output, 2);
        t.add_label(0, u, v, 1);
        t.accept[1] = true;
        t
    }

    /// `{(u, u) : u ∈ L}`.
    pub fn identity(lang: &Dfa) -> Self {
        let a = &lang.alphabet;
        let mut t = Self::with_states(a, a, lang.num_states());
        for q in 0..lang.num_states() {
            for l in a.letters() {
                t.edges.push(Edge {
                    from: q,
                    input: Some(l),
                    output: Some(l),
                    to: lang.next(q as u32, l) as usize,
                });
            }
        }
        t.start = lang.start as usize;
        t.accept = lang.accept.clone();
        t.trim()
    }

    /// Letter-to-word substitution `{(u, uf) : u ∈ A*}`.
    pub fn morphism(input: &Alphabet, output: &Alphabet, images: &[Word]) -> Self {
        let mut t = Self::with_states(input, output, 1);
        t.accept[0] = true;
        for (l, img) in input.letters().zip(images) {
            t.add_label(0, &[l], img, 0);
        }
        t
    }

    fn absorb(&mut self, other: &Transducer) -> usize {
        let off = self.states;
        self.states += other.states;
        self.accept.extend_from_slice(&other.accept);
        self.edges.extend(other.edges.iter().map(|e| Edge {
            from: e.from + off,
            to: e.to + off,
            ..*e
        }));
        off
    }

    fn same_alphabets(&self, other: &Transducer) -> Result<(), AutomataError> {
        if self.input != other.input || self.output != other.output {
            return Err(AutomataError::AlphabetMismatch);
        }
        Ok(())
    }

    fn eps(from: usize, to: usize) -> Edge {
        Edge {
            from,
            input: None,
            output: None,
            to,
        }
    }

    pub fn union(&self, other: &Transducer) -> Result<Transducer, AutomataError> {
        self.same_alphabets(other)?;
        let mut t = Self::with_states(&self.input, &self.output, 1);
        let a = t.absorb(self);
        let b = t.absorb(other);
        t.edges.push(Self::eps(0, self.start + a));
        t.edges.push(Self::eps(0, other.start + b));
        Ok(t)
    }

    pub fn concat(&self, other: &Transducer) -> Result<Transducer, AutomataError> {
        self.same_alphabets(other)?;
        let mut t = self.clone();
        let b = t.absorb(other);
        for q in 0..self.states {
            if self.accept[q] {
                t.accept[q] = false;
                t.edges.push(Self::eps(q, other.start + b));
            }
        }
        Ok(t)
    }

    pub fn star(&self) -> Transducer {
        let mut t = Self::with_states(&self.input, &self.output, 1);
        t.accept[0] = true;
        let a = t.absorb(self);
        t.edges.push(Self::eps(0, self.start + a));
        for q in 0..self.states {
            if self.accept[q] {
                t.edges.push(Self::eps(q + a, 0));
            }
        }
        t
    }

    pub fn inverse(&self) -> Transducer {
        Transducer {
            input: self.output.clone(),
            output: self.input.clone(),
            edges: self
                .edges
                .iter()
                .map(|e| Edge {
                    input: e.output,
                    output: e.input,
                    ..*e
                })
                .collect(),
            ..self.clone()
        }
    }

    /// `{(rev u, rev v)}`.
    pub fn reverse(&self) -> Transducer {
        let mut t = Self::with_states(&self.input, &self.output, self.states + 1);
        t.edges = self
            .edges
            .iter()
            .map(|e| Edge {
                from: e.to + 1,
                to: e.from + 1,
                ..*e
            })
            .collect();
        for q in 0..self.states {
            if self.accept[q] {
                t.edges.push(Self::eps(0, q + 1));
            }
        }
        t.accept[self.start + 1] = true;
        t
    }

    /// `{(u, w) : (u, v) ∈ self, (v, w) ∈ other}`.
    pub fn compose(&self, other: &Transducer) -> Result<Transducer, AutomataError> {
        if self.output != other.input {
            return Err(AutomataError::AlphabetMismatch);
        }
        let out1 = self.out_edges();
        let out2 = other.out_edges();
        let mut t = Self::with_states(&self.input, &other.output, 0);
        let mut ids: HashMap<(usize, usize), usize> = HashMap::new();
        let mut queue = VecDeque::new();
        let mut id = |t: &mut Transducer, key: (usize, usize), queue: &mut VecDeque<_>| {
            *ids.entry(key).or_insert_with(|| {
                queue.push_back(key);
                let s = t.add_state();
                t.accept[s] = self.accept[key.0] && other.accept[key.1];
                s
            })
        };
        t.start = id(&mut t, (self.start, other.start), &mut queue);
        while let Some((p, q)) = queue.pop_front() {
            let from = id(&mut t, (p, q), &mut queue);
            for e in &out1[p] {
                match e.output {
                    None => {
                        let to = id(&mut t, (e.to, q), &mut queue);
                        t.edges.push(Edge {
                            from,
                            input: e.input,
                            output: None,
                            to,
                        });
                    }
                    Some(mid) => {
                        for f in out2[q].iter().filter(|f| f.input == Some(mid)) {
                            let to = id(&mut t, (e.to, f.to), &mut queue);
                            t.edges.push(Edge {
                                from,
                                input: e.input,
                                output: f.output,
                                to,
                            });
                        }
                    }
                }
            }
            for f in out2[q].iter().filter(|f| f.input.is_none()) {
                let to = id(&mut t, (p, f.to), &mut queue);
                t.edges.push(Edge {
                    from,
                    input: None,
                    output: f.output,
                    to,
                });
            }
        }
        if t.states == 0 {
            return Ok(Self::empty(&self.input, &other.output));
        }
        Ok(t.trim())
    }

    /// `{(u, v) ∈ self : u ∈ dom, v ∈ cod}`.
    pub fn restrict(&self, dom: &Dfa, cod: &Dfa) -> Result<Transducer, AutomataError> {
        if dom.alphabet != self.input || cod.alphabet != self.output {
            return Err(AutomataError::AlphabetMismatch);
        }
        Transducer::identity(dom)
            .compose(self)?
            .compose(&Transducer::identity(cod))
    }

    fn projection(&self, input_side: bool) -> Nfa {
        let alphabet = if input_side {
            &self.input
        } else {
            &self.output
        };
        let mut n = Nfa::empty(alphabet);
        n.edges = vec![Vec::new(); self.states.max(1)];
        n.accept = self.accept.clone();
        n.accept.resize(self.states.max(1), false);
        n.start = self.start;
        for e in &self.edges {
            let l = if input_side { e.input } else { e.output };
            n.edges[e.from].push((l, e.to));
        }
        n
    }

    pub fn domain(&self) -> Dfa {
        self.projection(true).determinize()
    }

    pub fn range(&self) -> Dfa {
        self.projection(false).determinize()
    }

    /// Image of a language.
    pub fn image(&self, lang: &Dfa) -> Result<Dfa, AutomataError> {
        Ok(Transducer::identity(lang).compose(self)?.range())
    }

    /// Images of a single word.
    pub fn outputs(&self, u: &[Letter]) -> Dfa {
        let w = Nfa::word(&self.input, u).determinize();
        self.image(&w).expect("word over the input alphabet")
    }

    fn out_edges(&self) -> Vec<Vec<Edge>> {
        let mut out = vec![Vec::new(); self.states];
        for e in &self.edges {
            out[e.from].push(*e);
        }
        out
    }

    pub(crate) fn co_accessible(&self) -> Vec<bool> {
        let mut rev = vec![Vec::new(); self.states];
        for e in &self.edges {
            rev[e.to].push(e.from);
        }
        let mut live = self.accept.clone();
        let mut stack: Vec<usize> = (0..self.states).filter(|&q| live[q]).collect();
        while let Some(q) = stack.pop() {
            for &p in &rev[q] {
                if !live[p] {
                    live[p] = true;
                    stack.push(p);
                }
            }
        }
        live
    }

    /// Drops states that are unreachable or cannot reach acceptance.
    pub fn trim(&self) -> Transducer {
        let live = self.co_accessible();
        let out = self.out_edges();
        let mut seen = vec![false; self.states];
        let mut stack = vec![self.start];
        seen[self.start] = true;
        while let Some(q) = stack.pop() {
            for e in &out[q] {
                if live[e.to] && !seen[e.to] {
                    seen[e.to] = true;
                    stack.push(e.to);
                }
            }
        }
        let mut map = vec![usize::MAX; self.states];
        let mut t = Self::with_states(&self.input, &self.output, 0);
        for q in 0..self.states {
            if q == self.start || (seen[q] && live[q]) {
                map[q] = t.add_state();
                t.accept[map[q]] = self.accept[q];
            }
        }
        t.start = map[self.start];
        let mut dedup = HashSet::new();
        for e in &self.edges {
            if map[e.from] != usize::MAX && map[e.to] != usize::MAX && live[e.to] {
                let e = Edge {
                    from: map[e.from],
                    to: map[e.to],
                    ..*e
                };
                if dedup.insert(e) {
                    t.edges.push(e);
                }
            }
        }
        t
    }

    /// Whether `(u, v)` is in the relation.
    pub fn accepts(&self, u: &[Letter], v: &[Letter]) -> bool {
        let out = self.out_edges();
        let mut seen = HashSet::new();
        let mut stack = vec![(self.start, 0usize, 0usize)];
        seen.insert((self.start, 0, 0));
        while let Some((q, i, j)) = stack.pop() {
            if i == u.len() && j == v.len() && self.accept[q] {
                return true;
            }
            for e in &out[q] {
                let ni = match e.input {
                    None => i,
                    Some(l) if u.get(i) == Some(&l) => i + 1,
                    _ => continue,
                };
                let nj = match e.output {
                    None => j,
                    Some(l) if v.get(j) == Some(&l) => j + 1,
                    _ => continue,
                };
                if seen.insert((e.to, ni, nj)) {
                    stack.push((e.to, ni, nj));
                }
            }
        }
        false
    }

    /// All pairs with both sides of length at most `maxlen`, sorted.
    pub fn pairs_up_to(&self, maxlen: usize) -> Vec<(Word, Word)> {
        let dom = self.domain();
        let mut out = Vec::new();
        for u in dom.accepted_words(maxlen) {
            for v in self.outputs(&u).accepted_words(maxlen) {
                out.push((u.clone(), v));
            }
        }
        out.sort();
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    #[test]
    fn pair_and_inverse() {
        let a = ab();
        let w = |s: &str| a.parse_word(s).unwrap();
        let t = Transducer::pair(&a, &a, &w("ab"), &w("b"));
        assert!(t.accepts(&w("ab"), &w("b")));
        assert!(!t.accepts(&w("b"), &w("ab")));
        let i = t.inverse();
        assert!(i.accepts(&w("b"), &w("ab")));
        assert!(i.inverse().accepts(&w("ab"), &w("b")));
    }

    #[test]
    fn identity_and_image() {
        let a = ab();
        let l = Nfa::letters(&a, &[Letter(0)]).star().determinize();
        let id = Transducer::identity(&l);
        assert!(id.image(&l).unwrap().equivalent(&l));
        assert!(id.accepts(&a.parse_word("aa").unwrap(), &a.parse_word("aa").unwrap()));
        assert!(!id.accepts(&a.parse_word("b").unwrap(), &a.parse_word("b").unwrap()));
    }

    #[test]
    fn composition() {
        let a = ab();
        let w = |s: &str| a.parse_word(s).unwrap();
        // a -> ab, b -> ε, then ab -> ba pairwise through a swap morphism
        let f = Transducer::morphism(&a, &a, &[w("ab"), w("")]);
        let g = Transducer::morphism(&a, &a, &[w("b"), w("a")]);
        let h = f.compose(&g).unwrap();
        assert!(h.accepts(&w("aba"), &w("baba")));
        assert_eq!(
            h.pairs_up_to(2)
                .iter()
                .map(|(u, v)| format!("{}:{}", a.show(u), a.show(v)))
                .collect::<Vec<_>>(),
            ["ε:ε", "a:ba", "b:ε", "ab:ba", "ba:ba", "bb:ε"]
        );
    }

    #[test]
    fn reverse_relation() {
        let a = ab();
        let w = |s: &str| a.parse_word(s).unwrap();
        let t = Transducer::pair(&a, &a, &w("ab"), &w("abb"));
        assert!(t.reverse().accepts(&w("ba"), &w("bba")));
    }

    #[test]
    fn restriction() {
        let a = ab();
        let w = |s: &str| a.parse_word(s).unwrap();
        let all = Dfa::universal(&a);
        let only_a = Nfa::word(&a, &w("a")).determinize();
        let t = Transducer::morphism(&a, &a, &[w("a"), w("b")]);
        let r = t.restrict(&only_a, &all).unwrap();
        assert_eq!(r.pairs_up_to(3), vec![(w("a"), w("a"))]);
    }
}
