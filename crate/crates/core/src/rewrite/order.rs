//! Length-compatible reduction orders on words.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use super::RuleInstance;
use crate::word::{Alphabet, Letter};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    /// Length, then lexicographic from the left.
    Shortlex,
    /// Length, then lexicographic from the right.
    RightToLeft,
    /// Total weight, then lexicographic from the left.
    WeightedLex,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TermOrder {
    pub kind: OrderKind,
    /// Rank of each letter by index; higher is greater.
    pub rank: Vec<u32>,
    /// Letter weights for [`OrderKind::WeightedLex`]; all ones otherwise.
    pub weights: Vec<u32>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum OrderError {
    #[error("unknown order kind `{0}` (expected shortlex, rtl or wlex)")]
    UnknownKind(String),
    #[error("unknown letter `{0}` in order")]
    UnknownLetter(String),
    #[error("letter `{0}` ranked twice")]
    Repeated(String),
    #[error("bad weight `{0}`")]
    BadWeight(String),
    #[error("mixed `<` and `>` in precedence")]
    MixedDirection,
    #[error("weights must be positive")]
    ZeroWeight,
}

impl TermOrder {
    /// `precedence` lists letters from least to greatest; letters not
    /// listed rank below all listed ones, in alphabet order.
    pub fn new(kind: OrderKind, alphabet: &Alphabet, precedence: &[Letter]) -> Self {
        let n = alphabet.len();
        let mut rank = vec![0u32; n];
        let listed: BTreeSet<Letter> = precedence.iter().copied().collect();
        let mut next = 0;
        for l in alphabet.letters().filter(|l| !listed.contains(l)) {
            rank[l.index()] = next;
            next += 1;
        }
        for l in precedence {
            rank[l.index()] = next;
            next += 1;
        }
        TermOrder {
            kind,
            rank,
            weights: vec![1; n],
        }
    }

    /// Shortlex with the alphabet's own order, first letter least.
    pub fn shortlex(alphabet: &Alphabet) -> Self {
        let prec: Vec<Letter> = alphabet.letters().collect();
        Self::new(OrderKind::Shortlex, alphabet, &prec)
    }

    pub fn with_weights(mut self, weights: Vec<u32>) -> Self {
        self.kind = OrderKind::WeightedLex;
        self.weights = weights;
        self
    }

    /// Parses `shortlex:c<a<b`, `rtl:b1<b2,b3<a`, `shortlex:a>b>c` or
    /// `wlex:a=2,b=1;a>b`. Commas separate letters listed at consecutive
    /// ranks in the order written. A bare kind uses the alphabet order.
    pub fn parse(spec: &str, alphabet: &Alphabet) -> Result<Self, OrderError> {
        let (kind_s, rest) = spec.split_once(':').unwrap_or((spec, ""));
        let kind = match kind_s.trim() {
            "shortlex" => OrderKind::Shortlex,
            "rtl" => OrderKind::RightToLeft,
            "wlex" => OrderKind::WeightedLex,
            other => return Err(OrderError::UnknownKind(other.to_string())),
        };
        let (weights_s, prec_s) = if kind == OrderKind::WeightedLex {
            match rest.split_once(';') {
                Some((w, p)) => (Some(w), p),
                None => (Some(rest), ""),
            }
        } else {
            (None, rest)
        };
        let prec = parse_precedence(prec_s, alphabet)?;
        let mut order = if prec.is_empty() {
            let mut o = Self::shortlex(alphabet);
            o.kind = kind;
            o
        } else {
            Self::new(kind, alphabet, &prec)
        };
        if let Some(ws) = weights_s {
            for item in ws.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                let (name, val) = item
                    .split_once('=')
                    .ok_or_else(|| OrderError::BadWeight(item.to_string()))?;
                let l = alphabet
                    .letter(name.trim())
                    .ok_or_else(|| OrderError::UnknownLetter(name.trim().to_string()))?;
                let v: u32 = val
                    .trim()
                    .parse()
                    .map_err(|_| OrderError::BadWeight(item.to_string()))?;
                if v == 0 {
                    return Err(OrderError::ZeroWeight);
                }
                order.weights[l.index()] = v;
            }
        }
        Ok(order)
    }

    fn weight(&self, w: &[Letter]) -> u64 {
        w.iter().map(|l| u64::from(self.weights[l.index()])).sum()
    }

    pub fn compare(&self, u: &[Letter], v: &[Letter]) -> Ordering {
        let rank = |l: &Letter| self.rank[l.index()];
        match self.kind {
            OrderKind::Shortlex => u
                .len()
                .cmp(&v.len())
                .then_with(|| u.iter().map(rank).cmp(v.iter().map(rank))),
            OrderKind::RightToLeft => u
                .len()
                .cmp(&v.len())
                .then_with(|| u.iter().rev().map(rank).cmp(v.iter().rev().map(rank))),
            OrderKind::WeightedLex => self
                .weight(u)
                .cmp(&self.weight(v))
                .then_with(|| u.len().cmp(&v.len()))
                .then_with(|| u.iter().map(rank).cmp(v.iter().map(rank))),
        }
    }

    pub fn greater(&self, u: &[Letter], v: &[Letter]) -> bool {
        self.compare(u, v) == Ordering::Greater
    }

    /// Letters from least to greatest.
    pub fn precedence(&self) -> Vec<Letter> {
        let mut ls: Vec<Letter> = (0..self.rank.len()).map(|i| Letter(i as u16)).collect();
        ls.sort_by_key(|l| self.rank[l.index()]);
        ls
    }

    pub fn show(&self, alphabet: &Alphabet) -> String {
        let kind = match self.kind {
            OrderKind::Shortlex => "shortlex",
            OrderKind::RightToLeft => "rtl",
            OrderKind::WeightedLex => "wlex",
        };
        let prec: Vec<&str> = self
            .precedence()
            .into_iter()
            .map(|l| alphabet.name(l))
            .collect();
        if self.kind == OrderKind::WeightedLex {
            let ws: Vec<String> = alphabet
                .letters()
                .map(|l| format!("{}={}", alphabet.name(l), self.weights[l.index()]))
                .collect();
            format!("{kind}:{};{}", ws.join(","), prec.join("<"))
        } else {
            format!("{kind}:{}", prec.join("<"))
        }
    }
}

impl fmt::Display for OrderKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OrderKind::Shortlex => "shortlex",
            OrderKind::RightToLeft => "right-to-left length-lex",
            OrderKind::WeightedLex => "weighted-lex",
        })
    }
}

fn parse_precedence(s: &str, alphabet: &Alphabet) -> Result<Vec<Letter>, OrderError> {
    let s = s.trim();
    if s.is_empty() {
        return Ok(Vec::new());
    }
    let (lt, gt) = (s.contains('<'), s.contains('>'));
    if lt && gt {
        return Err(OrderError::MixedDirection);
    }
    let sep = if gt { '>' } else { '<' };
    let mut out = Vec::new();
    for group in s.split(sep) {
        for name in group.split(',').map(str::trim) {
            let l = alphabet
                .letter(name)
                .ok_or_else(|| OrderError::UnknownLetter(name.to_string()))?;
            if out.contains(&l) {
                return Err(OrderError::Repeated(name.to_string()));
            }
            out.push(l);
        }
    }
    if gt {
        out.reverse();
    }
    Ok(out)
}

/// True iff every rule decreases under `order`.
pub fn check_termination(rules: &[RuleInstance], order: &TermOrder) -> bool {
    rules.iter().all(|r| order.greater(&r.lhs, &r.rhs))
}

/// A letter precedence under which every rule decreases, for orders
/// that compare length first. Found by topologically sorting the
/// constraints imposed by the first differing letter of each rule.
pub fn find_precedence(
    alphabet: &Alphabet,
    rules: &[RuleInstance],
    kind: OrderKind,
) -> Option<TermOrder> {
    let n = alphabet.len();
    // greater[x] contains y when x must rank above y.
    let mut above: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
    for r in rules {
        match r.lhs.len().cmp(&r.rhs.len()) {
            Ordering::Greater => continue,
            Ordering::Less => return None,
            Ordering::Equal => {}
        }
        let pairs: Box<dyn Iterator<Item = (&Letter, &Letter)>> = match kind {
            OrderKind::RightToLeft => Box::new(r.lhs.iter().rev().zip(r.rhs.iter().rev())),
            _ => Box::new(r.lhs.iter().zip(r.rhs.iter())),
        };
        let (x, y) = pairs.into_iter().find(|(x, y)| x != y)?;
        above[x.index()].insert(y.index());
    }
    // Kahn's algorithm, smallest-first by alphabet index for determinism.
    let mut indeg = vec![0usize; n];
    for ys in &above {
        for &y in ys {
            indeg[y] += 1;
        }
    }
    let mut ready: BTreeSet<usize> = (0..n).filter(|&i| indeg[i] == 0).collect();
    // Pops greatest-first: a letter with no unplaced letter above it.
    let mut desc = Vec::new();
    while let Some(&x) = ready.iter().next() {
        ready.remove(&x);
        desc.push(Letter(x as u16));
        for &y in &above[x] {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                ready.insert(y);
            }
        }
    }
    if desc.len() < n {
        return None;
    }
    desc.reverse();
    let order = TermOrder::new(kind, alphabet, &desc);
    check_termination(rules, &order).then_some(order)
}
