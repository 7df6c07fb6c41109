//! Padded convolutions of word pairs and synchronization of transducers.

use std::collections::{HashMap, VecDeque};

use super::dfa::Dfa;
use super::nfa::Nfa;
use super::transducer::{Edge, Transducer};
use super::AutomataError;
use crate::word::{Alphabet, Letter, Word, PAD};

/// Where padding goes: at the end of the shorter word (`Right`) or at
/// its start (`Left`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    Right,
    Left,
}

/// Letters `x|y` over `(A ∪ $) × (B ∪ $)` without `$|$`. The letter for
/// `(x, y)` has index `x * (|B| + 1) + y`, with `$` indexed last.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PairAlphabet {
    pub left: Alphabet,
    pub right: Alphabet,
    pub letters: Alphabet,
}

impl PairAlphabet {
    pub fn new(left: &Alphabet, right: &Alphabet) -> Self {
        let side = |a: &Alphabet| -> Vec<String> {
            a.names()
                .iter()
                .cloned()
                .chain(std::iter::once(PAD.to_string()))
                .collect()
        };
        let mut names = Vec::new();
        for x in side(left) {
            for y in side(right) {
                names.push(format!("{x}|{y}"));
            }
        }
        names.pop();
        PairAlphabet {
            left: left.clone(),
            right: right.clone(),
            letters: Alphabet::from_symbols(names).expect("distinct pair names"),
        }
    }

    pub fn pair(&self, x: Option<Letter>, y: Option<Letter>) -> Letter {
        let xi = x.map_or(self.left.len(), Letter::index);
        let yi = y.map_or(self.right.len(), Letter::index);
        let l = xi * (self.right.len() + 1) + yi;
        assert!(l < self.letters.len(), "($, $) is not a pair letter");
        Letter(l as u16)
    }

    pub fn split(&self, l: Letter) -> (Option<Letter>, Option<Letter>) {
        let w = self.right.len() + 1;
        let (xi, yi) = (l.index() / w, l.index() % w);
        let x = (xi < self.left.len()).then_some(Letter(xi as u16));
        let y = (yi < self.right.len()).then_some(Letter(yi as u16));
        (x, y)
    }

    pub fn delta(&self, side: Side, u: &[Letter], v: &[Letter]) -> Word {
        let n = u.len().max(v.len());
        let (du, dv) = match side {
            Side::Right => (0, 0),
            Side::Left => (n - u.len(), n - v.len()),
        };
        (0..n)
            .map(|i| {
                let x = i.checked_sub(du).and_then(|j| u.get(j)).copied();
                let y = i.checked_sub(dv).and_then(|j| v.get(j)).copied();
                self.pair(x, y)
            })
            .collect()
    }

    pub fn delta_r(&self, u: &[Letter], v: &[Letter]) -> Word {
        self.delta(Side::Right, u, v)
    }

    pub fn delta_l(&self, u: &[Letter], v: &[Letter]) -> Word {
        self.delta(Side::Left, u, v)
    }

    /// Inverse of [`PairAlphabet::delta`]; `None` for an invalid padding.
    pub fn unpad(&self, side: Side, w: &[Letter]) -> Option<(Word, Word)> {
        let (mut u, mut v) = (Vec::new(), Vec::new());
        let (mut u_pad, mut v_pad) = (false, false);
        let seq: Box<dyn Iterator<Item = &Letter>> = match side {
            Side::Right => Box::new(w.iter()),
            Side::Left => Box::new(w.iter().rev()),
        };
        for &l in seq {
            let (x, y) = self.split(l);
            match x {
                Some(x) if !u_pad => u.push(x),
                Some(_) => return None,
                None => u_pad = true,
            }
            match y {
                Some(y) if !v_pad => v.push(y),
                Some(_) => return None,
                None => v_pad = true,
            }
        }
        if side == Side::Left {
            u.reverse();
            v.reverse();
        }
        Some((Word(u), Word(v)))
    }

    /// Renders a pair word as `(a,b)(b,$)`.
    pub fn show(&self, w: &[Letter]) -> String {
        let name =
            |a: &Alphabet, l: Option<Letter>| l.map_or(PAD.to_string(), |l| a.name(l).into());
        w.iter()
            .map(|&l| {
                let (x, y) = self.split(l);
                format!("({},{})", name(&self.left, x), name(&self.right, y))
            })
            .collect()
    }

    /// All valid paddings for `side`.
    pub fn valid_paddings(&self, side: Side) -> Dfa {
        // 0: no pad yet, 1: left track padded, 2: right track padded, 3: dead.
        let k = self.letters.len();
        let mut trans = vec![3u32; 4 * k];
        for l in self.letters.letters() {
            let (x, y) = self.split(l);
            let i = l.index();
            trans[i] = match (x, y) {
                (Some(_), Some(_)) => 0,
                (None, _) => 1,
                (_, None) => 2,
            };
            if x.is_none() {
                trans[k + i] = 1;
            }
            if y.is_none() {
                trans[2 * k + i] = 2;
            }
        }
        let right = Dfa {
            alphabet: self.letters.clone(),
            trans,
            start: 0,
            accept: vec![true, true, true, false],
        }
        .minimize();
        match side {
            Side::Right => right,
            Side::Left => right.reverse(),
        }
    }
}

/// A DFA over a pair alphabet recognizing padded convolutions.
#[derive(Debug, Clone)]
pub struct SyncAutomaton {
    pub pairs: PairAlphabet,
    pub side: Side,
    pub dfa: Dfa,
}

impl SyncAutomaton {
    pub fn accepts(&self, u: &[Letter], v: &[Letter]) -> bool {
        self.dfa.accepts(&self.pairs.delta(self.side, u, v))
    }

    /// Whether every accepted string is a valid padding.
    pub fn padding_valid(&self) -> bool {
        self.dfa
            .difference(&self.pairs.valid_paddings(self.side))
            .is_empty()
    }

    /// Accepted pairs with both sides of length at most `maxlen`.
    pub fn pairs_up_to(&self, maxlen: usize) -> Vec<(Word, Word)> {
        let mut out: Vec<(Word, Word)> = self
            .dfa
            .accepted_words(maxlen)
            .iter()
            .filter_map(|w| self.pairs.unpad(self.side, w))
            .collect();
        out.sort();
        out
    }
}

/// Lag buffer contents: surplus letters of the input track or of the
/// output track.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Surplus {
    Input(Vec<Letter>),
    Output(Vec<Letter>),
}

impl Surplus {
    fn len(&self) -> usize {
        match self {
            Surplus::Input(b) | Surplus::Output(b) => b.len(),
        }
    }

    /// Feeds one edge label; returns the synchronized pair it completes.
    fn feed(&self, x: Option<Letter>, y: Option<Letter>) -> (Surplus, Option<(Letter, Letter)>) {
        let (mut ins, mut outs) = match self {
            Surplus::Input(b) => (b.clone(), Vec::new()),
            Surplus::Output(b) => (Vec::new(), b.clone()),
        };
        ins.extend(x);
        outs.extend(y);
        let emitted = if !ins.is_empty() && !outs.is_empty() {
            Some((ins.remove(0), outs.remove(0)))
        } else {
            None
        };
        let rest = if outs.is_empty() {
            Surplus::Input(ins)
        } else {
            Surplus::Output(outs)
        };
        (rest, emitted)
    }
}

/// Builds the automaton for `{δ(u, v) : (u, v) ∈ rel(t)}`.
///
/// The construction reads `t` with a buffer holding the surplus of the
/// longer track. Intermediate lag may reach `k + |Q|` on a path; a pair
/// whose final length difference exceeds `k`, or a path whose lag
/// outgrows the buffer, is reported with a witness.
pub fn synchronize_bounded(
    t: &Transducer,
    k: usize,
    side: Side,
) -> Result<SyncAutomaton, AutomataError> {
    match side {
        Side::Right => synchronize_right(t, k),
        Side::Left => {
            let mut s = synchronize_right(&t.reverse(), k).map_err(|e| match e {
                AutomataError::LagExceeded {
                    bound,
                    input,
                    output,
                } => AutomataError::LagExceeded {
                    bound,
                    input: input.reversed(),
                    output: output.reversed(),
                },
                other => other,
            })?;
            s.dfa = s.dfa.reverse();
            s.side = Side::Left;
            Ok(s)
        }
    }
}

fn synchronize_right(t: &Transducer, k: usize) -> Result<SyncAutomaton, AutomataError> {
    let t = t.trim();
    let pairs = PairAlphabet::new(&t.input, &t.output);
    let capacity = k + t.states;
    let mut out: Vec<Vec<Edge>> = vec![Vec::new(); t.states];
    for e in &t.edges {
        out[e.from].push(*e);
    }

    type Config = (usize, Surplus);
    let mut ids: HashMap<Config, usize> = HashMap::new();
    let mut configs: Vec<Config> = Vec::new();
    let mut parent: Vec<Option<(usize, Edge)>> = Vec::new();
    let mut nfa = Nfa::empty(&pairs.letters);
    nfa.edges.clear();
    nfa.accept.clear();

    let start: Config = (t.start, Surplus::Input(Vec::new()));
    ids.insert(start.clone(), 0);
    configs.push(start);
    parent.push(None);
    nfa.edges.push(Vec::new());
    nfa.accept.push(false);

    // Labels along the path to config `c`, followed by `extra` (listed
    // last edge first).
    let witness = |parent: &[Option<(usize, Edge)>], mut c: usize, extra: &[Edge]| {
        let mut path: Vec<Edge> = extra.to_vec();
        while let Some((p, e)) = parent[c] {
            path.push(e);
            c = p;
        }
        path.reverse();
        let input: Word = path.iter().filter_map(|e| e.input).collect();
        let output: Word = path.iter().filter_map(|e| e.output).collect();
        (input, output)
    };

    // Shortest completion from each state to acceptance, for witnesses.
    let completion = shortest_completions(&t, &out);

    // Flush chains are added after the search so that config ids and
    // automaton state ids coincide.
    let mut flushes: Vec<(usize, Surplus)> = Vec::new();
    let mut queue = VecDeque::from([0usize]);
    while let Some(c) = queue.pop_front() {
        let (q, buf) = configs[c].clone();
        if t.accept[q] {
            if buf.len() > k {
                let (input, output) = witness(&parent, c, &[]);
                return Err(AutomataError::LagExceeded {
                    bound: k,
                    input,
                    output,
                });
            }
            if buf.len() == 0 {
                nfa.accept[c] = true;
            } else {
                flushes.push((c, buf.clone()));
            }
        }
        for e in &out[q] {
            let (next, emitted) = buf.feed(e.input, e.output);
            if next.len() > capacity {
                let rest = &completion[e.to];
                let mut extra = rest.clone();
                extra.push(*e);
                let (input, output) = witness(&parent, c, &extra);
                return Err(AutomataError::LagExceeded {
                    bound: k,
                    input,
                    output,
                });
            }
            let key = (e.to, next);
            let id = match ids.get(&key) {
                Some(&id) => id,
                None => {
                    let id = configs.len();
                    ids.insert(key.clone(), id);
                    configs.push(key);
                    parent.push(Some((c, *e)));
                    nfa.edges.push(Vec::new());
                    nfa.accept.push(false);
                    queue.push_back(id);
                    id
                }
            };
            let label = emitted.map(|(x, y)| pairs.pair(Some(x), Some(y)));
            nfa.edges[c].push((label, id));
        }
    }
    let mut flush_ids: HashMap<Surplus, usize> = HashMap::new();
    for (c, buf) in flushes {
        let f = flush_state(&pairs, &mut nfa, &mut flush_ids, &buf);
        nfa.edges[c].push((None, f));
    }
    let dfa = nfa.determinize();
    Ok(SyncAutomaton {
        pairs,
        side: Side::Right,
        dfa,
    })
}

/// A chain emitting the buffered surplus against pads.
fn flush_state(
    pairs: &PairAlphabet,
    nfa: &mut Nfa,
    ids: &mut HashMap<Surplus, usize>,
    buf: &Surplus,
) -> usize {
    if let Some(&id) = ids.get(buf) {
        return id;
    }
    let id = nfa.edges.len();
    nfa.edges.push(Vec::new());
    nfa.accept.push(buf.len() == 0);
    ids.insert(buf.clone(), id);
    let (label, rest) = match buf {
        Surplus::Input(b) if !b.is_empty() => (
            Some(pairs.pair(Some(b[0]), None)),
            Surplus::Input(b[1..].to_vec()),
        ),
        Surplus::Output(b) if !b.is_empty() => (
            Some(pairs.pair(None, Some(b[0]))),
            Surplus::Output(b[1..].to_vec()),
        ),
        _ => (None, buf.clone()),
    };
    if label.is_some() {
        let next = flush_state(pairs, nfa, ids, &rest);
        nfa.edges[id].push((label, next));
    }
    id
}

/// For each state, the edges of a shortest path to an accepting state,
/// listed from the accepting end backwards.
fn shortest_completions(t: &Transducer, out: &[Vec<Edge>]) -> Vec<Vec<Edge>> {
    let mut rev: Vec<Vec<Edge>> = vec![Vec::new(); t.states];
    for es in out {
        for e in es {
            rev[e.to].push(*e);
        }
    }
    let mut best: Vec<Option<Vec<Edge>>> = vec![None; t.states];
    let mut queue = VecDeque::new();
    for (q, b) in best.iter_mut().enumerate() {
        if t.accept[q] {
            *b = Some(Vec::new());
            queue.push_back(q);
        }
    }
    while let Some(q) = queue.pop_front() {
        let path = best[q].clone().unwrap_or_default();
        for e in &rev[q] {
            if best[e.from].is_none() {
                let mut p = path.clone();
                p.push(*e);
                best[e.from] = Some(p);
                queue.push_back(e.from);
            }
        }
    }
    best.into_iter().map(Option::unwrap_or_default).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ab() -> Alphabet {
        Alphabet::new(["a", "b"]).unwrap()
    }

    #[test]
    fn convolutions() {
        let a = ab();
        let p = PairAlphabet::new(&a, &a);
        let w = |s: &str| a.parse_word(s).unwrap();
        assert_eq!(p.show(&p.delta_r(&w("ab"), &w("a"))), "(a,a)(b,$)");
        assert_eq!(p.show(&p.delta_l(&w("ab"), &w("a"))), "(a,$)(b,a)");
        assert!(p.delta_r(&w(""), &w("")).is_empty());
        assert_eq!(p.letters.len(), 8);
        assert_eq!(p.letters.name(Letter(2)), "a|$");
    }

    #[test]
    fn unpad_rejects_bad_padding() {
        let a = ab();
        let p = PairAlphabet::new(&a, &a);
        let bad = [
            p.pair(None, Some(Letter(0))),
            p.pair(Some(Letter(0)), Some(Letter(0))),
        ];
        assert!(p.unpad(Side::Right, &bad).is_none());
        assert!(p.unpad(Side::Left, &bad).is_some());
    }

    #[test]
    fn identity_has_no_pads() {
        let a = ab();
        let t = Transducer::identity(&Dfa::universal(&a));
        let s = synchronize_bounded(&t, 0, Side::Right).unwrap();
        assert!(s.padding_valid());
        let pads = s.dfa.accepted_words(3).iter().any(|w| {
            let (x, y) = (0..w.len()).fold((false, false), |acc, i| {
                let (x, y) = s.pairs.split(w[i]);
                (acc.0 || x.is_none(), acc.1 || y.is_none())
            });
            x || y
        });
        assert!(!pads);
    }

    #[test]
    fn append_letter() {
        let a = ab();
        let w = |s: &str| a.parse_word(s).unwrap();
        let t = Transducer::identity(&Dfa::universal(&a))
            .concat(&Transducer::pair(&a, &a, &w(""), &w("a")))
            .unwrap();
        for side in [Side::Right, Side::Left] {
            let s = synchronize_bounded(&t, 1, side).unwrap();
            assert!(s.padding_valid());
            for u in a.words_up_to(5) {
                for v in a.words_up_to(5) {
                    assert_eq!(
                        s.accepts(&u, &v),
                        v == u.concat(&w("a")),
                        "{side:?} {} {}",
                        a.show(&u),
                        a.show(&v)
                    );
                }
            }
        }
    }

    #[test]
    fn lag_violation_reports_witness() {
        let a = ab();
        let w = |s: &str| a.parse_word(s).unwrap();
        let t = Transducer::pair(&a, &a, &w(""), &w("aa"));
        match synchronize_bounded(&t, 1, Side::Right) {
            Err(AutomataError::LagExceeded { input, output, .. }) => {
                assert_eq!((input, output), (w(""), w("aa")));
            }
            other => panic!("{other:?}"),
        }
        // Unbounded lag.
        let t = Transducer::pair(&a, &a, &w(""), &w("b")).star();
        assert!(synchronize_bounded(&t, 1, Side::Right).is_err());
    }

    #[test]
    fn delayed_output_is_resynchronized() {
        // Reads two letters before writing them: intermediate lag 2, final 0.
        let a = ab();
        let mut t = Transducer::empty(&a, &a);
        let s1 = 1;
        let s2 = 2;
        t.states = 3;
        t.accept = vec![true, false, false];
        t.add_label(0, &[Letter(0), Letter(1)], &[], s1);
        t.add_label(s1, &[], &[Letter(0)], s2);
        t.add_label(s2, &[], &[Letter(1)], 0);
        let s = synchronize_bounded(&t, 0, Side::Right).unwrap();
        let w = |s: &str| a.parse_word(s).unwrap();
        assert!(s.accepts(&w("abab"), &w("abab")));
        assert!(!s.accepts(&w("ab"), &w("ba")));
    }
}
