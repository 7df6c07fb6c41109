//! Paths in the derivation graph of a presentation, and the circuit
//! computations for the three-rule system `ac → ca`, `bc → cb`, `cab → cbb`.

mod circuits;
mod membership;
mod ring;

use std::fmt;

use thiserror::Error;

use crate::word::{Alphabet, Word};

pub use circuits::{CircuitKind, Circuits};
pub use membership::{module_membership, Membership};
pub use ring::FreeRingElement;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DerivationError {
    #[error("path ends at {end:?} but the next starts at {start:?}")]
    EndpointMismatch { end: Word, start: Word },
    #[error("vertex {0:?} does not contain exactly one c")]
    NotOneC(Word),
    #[error("{0}")]
    InvalidParameter(String),
    #[error("presentation lacks {0}")]
    MissingRule(String),
    #[error("target is not homogeneous of degree {0}")]
    NotHomogeneous(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sign {
    Pos,
    Neg,
}

impl Sign {
    pub fn flip(self) -> Sign {
        match self {
            Sign::Pos => Sign::Neg,
            Sign::Neg => Sign::Pos,
        }
    }

    pub fn value(self) -> i64 {
        match self {
            Sign::Pos => 1,
            Sign::Neg => -1,
        }
    }
}

/// `(w₁, r, ε, w₂)`: the rule `r = (r₊, r₋)` applied in context, forwards
/// when `ε = +1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Edge {
    pub left: Word,
    pub rule: (Word, Word),
    pub sign: Sign,
    pub right: Word,
}

impl Edge {
    pub fn new(left: Word, rule: (Word, Word), sign: Sign, right: Word) -> Self {
        Edge {
            left,
            rule,
            sign,
            right,
        }
    }

    /// The redex the edge removes.
    pub fn consumed(&self) -> &Word {
        match self.sign {
            Sign::Pos => &self.rule.0,
            Sign::Neg => &self.rule.1,
        }
    }

    /// The word the edge puts in its place.
    pub fn produced(&self) -> &Word {
        match self.sign {
            Sign::Pos => &self.rule.1,
            Sign::Neg => &self.rule.0,
        }
    }

    /// `ι`.
    pub fn source(&self) -> Word {
        self.left.concat(self.consumed()).concat(&self.right)
    }

    /// `τ`.
    pub fn target(&self) -> Word {
        self.left.concat(self.produced()).concat(&self.right)
    }

    pub fn inverse(&self) -> Edge {
        Edge {
            sign: self.sign.flip(),
            ..self.clone()
        }
    }

    /// `x · E · y`.
    pub fn act(&self, x: &[crate::word::Letter], y: &[crate::word::Letter]) -> Edge {
        Edge {
            left: Word::from_letters(x).concat(&self.left),
            right: self.right.concat(y),
            ..self.clone()
        }
    }

    /// The edge applying `rule` with `sign` to `w` at `pos`, if the redex
    /// is there.
    pub fn at(w: &Word, pos: usize, rule: (Word, Word), sign: Sign) -> Option<Edge> {
        let consumed = match sign {
            Sign::Pos => &rule.0,
            Sign::Neg => &rule.1,
        };
        let end = pos + consumed.len();
        if end > w.len() || w[pos..end] != consumed[..] {
            return None;
        }
        Some(Edge {
            left: Word::from_letters(&w[..pos]),
            right: Word::from_letters(&w[end..]),
            rule,
            sign,
        })
    }

    /// `w1 | r+ -> r- | sign | w2`.
    pub fn dump(&self, a: &Alphabet) -> String {
        format!(
            "{} | {} -> {} | {} | {}",
            a.show(&self.left),
            a.show(&self.rule.0),
            a.show(&self.rule.1),
            match self.sign {
                Sign::Pos => "+1",
                Sign::Neg => "-1",
            },
            a.show(&self.right)
        )
    }
}

/// A sequence of edges with matching endpoints. The start word anchors
/// the empty path.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DerivationPath {
    start: Word,
    edges: Vec<Edge>,
}

impl DerivationPath {
    /// The empty path at `w`.
    pub fn empty(w: Word) -> Self {
        DerivationPath {
            start: w,
            edges: Vec::new(),
        }
    }

    pub fn from_edge(e: Edge) -> Self {
        DerivationPath {
            start: e.source(),
            edges: vec![e],
        }
    }

    pub fn from_edges(start: Word, edges: Vec<Edge>) -> Result<Self, DerivationError> {
        let mut p = DerivationPath::empty(start);
        for e in edges {
            p.push(e)?;
        }
        Ok(p)
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// `ι`.
    pub fn start(&self) -> &Word {
        &self.start
    }

    /// `τ`.
    pub fn end(&self) -> Word {
        self.edges
            .last()
            .map_or_else(|| self.start.clone(), Edge::target)
    }

    pub fn endpoints(&self) -> (Word, Word) {
        (self.start.clone(), self.end())
    }

    pub fn is_closed(&self) -> bool {
        self.start == self.end()
    }

    pub fn is_parallel(&self, other: &DerivationPath) -> bool {
        self.endpoints() == other.endpoints()
    }

    /// Every vertex visited, starting with `ι`.
    pub fn vertices(&self) -> Vec<Word> {
        std::iter::once(self.start.clone())
            .chain(self.edges.iter().map(Edge::target))
            .collect()
    }

    pub fn push(&mut self, e: Edge) -> Result<(), DerivationError> {
        let end = self.end();
        let start = e.source();
        if start != end {
            return Err(DerivationError::EndpointMismatch { end, start });
        }
        self.edges.push(e);
        Ok(())
    }

    /// `self ∘ other`: first `self`, then `other`.
    pub fn compose(&self, other: &DerivationPath) -> Result<Self, DerivationError> {
        let end = self.end();
        if other.start != end {
            return Err(DerivationError::EndpointMismatch {
                end,
                start: other.start.clone(),
            });
        }
        let mut p = self.clone();
        p.edges.extend(other.edges.iter().cloned());
        Ok(p)
    }

    pub fn inverse(&self) -> Self {
        DerivationPath {
            start: self.end(),
            edges: self.edges.iter().rev().map(Edge::inverse).collect(),
        }
    }

    /// `x · P · y`.
    pub fn act(&self, x: &[crate::word::Letter], y: &[crate::word::Letter]) -> Self {
        DerivationPath {
            start: Word::from_letters(x).concat(&self.start).concat(y),
            edges: self.edges.iter().map(|e| e.act(x, y)).collect(),
        }
    }

    /// Exchanges edges `i` and `i + 1` when they rewrite disjoint parts of
    /// the word. The result is parallel to `self`.
    pub fn swap_at(&self, i: usize) -> Option<Self> {
        let (e1, e2) = (self.edges.get(i)?, self.edges.get(i + 1)?);
        let w = e1.source();
        let (p1, p2) = (e1.left.len(), e2.left.len());
        let (in1, out1) = (e1.consumed().len(), e1.produced().len());
        let in2 = e2.consumed().len();
        let (f1, f2) = if p2 >= p1 + out1 {
            // e2 lies right of e1's output.
            let q = p2 - out1 + in1;
            let f2 = Edge::at(&w, q, e2.rule.clone(), e2.sign)?;
            let f1 = Edge::at(&f2.target(), p1, e1.rule.clone(), e1.sign)?;
            (f2, f1)
        } else if p2 + in2 <= p1 {
            let f2 = Edge::at(&w, p2, e2.rule.clone(), e2.sign)?;
            let f1 = Edge::at(
                &f2.target(),
                p1 - in2 + e2.produced().len(),
                e1.rule.clone(),
                e1.sign,
            )?;
            (f2, f1)
        } else {
            return None;
        };
        let mut edges = self.edges.clone();
        edges[i] = f1;
        edges[i + 1] = f2;
        Some(DerivationPath {
            start: self.start.clone(),
            edges,
        })
    }

    /// The two orders of applying `p` and `q` side by side:
    /// `(p · ιq) ∘ (τp · q)` and `(ιp · q) ∘ (p · τq)`.
    pub fn interleavings(p: &DerivationPath, q: &DerivationPath) -> (Self, Self) {
        let (ip, tp) = p.endpoints();
        let (iq, tq) = q.endpoints();
        let first = p
            .act(&[], &iq)
            .compose(&q.act(&tp, &[]))
            .expect("endpoints agree");
        let second = q
            .act(&ip, &[])
            .compose(&p.act(&[], &tq))
            .expect("endpoints agree");
        (first, second)
    }

    /// One edge per line in the dump format.
    pub fn dump(&self, a: &Alphabet) -> String {
        self.edges.iter().map(|e| e.dump(a) + "\n").collect()
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Pos => "+1",
            Sign::Neg => "-1",
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue;

    fn setup() -> (Alphabet, impl Fn(&str) -> Word) {
        let p = catalogue::nonfdt_biauto();
        let a = p.alphabet.clone();
        (a, move |s: &str| p.word(s).unwrap())
    }

    #[test]
    fn edge_endpoints_and_inverse() {
        let (a, w) = setup();
        let e = Edge::new(w("a"), (w("ac"), w("ca")), Sign::Pos, w("b"));
        assert_eq!(a.show(&e.source()), "aacb");
        assert_eq!(a.show(&e.target()), "acab");
        assert_eq!(e.inverse().source(), e.target());
        assert_eq!(e.dump(&a), "a | ac -> ca | +1 | b");
        assert_eq!(
            Edge::at(&w("aacb"), 1, (w("ac"), w("ca")), Sign::Pos),
            Some(e)
        );
        assert_eq!(Edge::at(&w("aacb"), 0, (w("ac"), w("ca")), Sign::Pos), None);
    }

    #[test]
    fn path_algebra() {
        let (a, w) = setup();
        let e = Edge::new(w(""), (w("ac"), w("ca")), Sign::Pos, w("b"));
        let p = DerivationPath::from_edge(e.clone());
        let loop_ = p.compose(&p.inverse()).unwrap();
        assert!(loop_.is_closed());
        assert_eq!(loop_.start(), &w("acb"));
        assert_eq!(p.act(&[], &[]), p);
        let q = p.act(&w("b"), &w("a"));
        assert_eq!(a.show(q.start()), "bacba");
        assert!(p.compose(&p).is_err());
        assert!(DerivationPath::empty(w("ab")).is_closed());
    }

    #[test]
    fn disjoint_edges_commute() {
        let (_, w) = setup();
        let p = DerivationPath::from_edge(Edge::new(w(""), (w("ac"), w("ca")), Sign::Pos, w("")));
        let q = DerivationPath::from_edge(Edge::new(w(""), (w("bc"), w("cb")), Sign::Pos, w("")));
        let (x, y) = DerivationPath::interleavings(&p, &q);
        assert!(x.is_parallel(&y));
        assert_eq!(x.start(), &w("acbc"));
        assert_eq!(x.end(), w("cacb"));
        assert_eq!(x.swap_at(0), Some(y.clone()));
        assert_eq!(y.swap_at(0), Some(x));
    }

    #[test]
    fn overlapping_edges_do_not_swap() {
        let (_, w) = setup();
        let e1 = Edge::new(w("a"), (w("bc"), w("cb")), Sign::Pos, w(""));
        let e2 = Edge::new(w(""), (w("ac"), w("ca")), Sign::Pos, w("b"));
        let p = DerivationPath::from_edges(w("abc"), vec![e1, e2]).unwrap();
        assert_eq!(p.swap_at(0), None);
    }
}
