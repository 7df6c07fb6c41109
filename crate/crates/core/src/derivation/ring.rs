use std::collections::BTreeMap;
use std::ops::{Add, AddAssign, Neg, Sub};

use crate::word::{Alphabet, Letter, Word};

/// A finite integer combination of words. Zero coefficients are never
/// stored.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct FreeRingElement {
    terms: BTreeMap<Word, i64>,
}

impl FreeRingElement {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn word(w: Word) -> Self {
        Self::term(w, 1)
    }

    pub fn term(w: Word, coeff: i64) -> Self {
        let mut out = Self::zero();
        out.add_term(w, coeff);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coefficient(&self, w: &Word) -> i64 {
        self.terms.get(w).copied().unwrap_or(0)
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Word, i64)> {
        self.terms.iter().map(|(w, &c)| (w, c))
    }

    pub fn add_term(&mut self, w: Word, coeff: i64) {
        let c = self.terms.entry(w.clone()).or_insert(0);
        *c += coeff;
        if *c == 0 {
            self.terms.remove(&w);
        }
    }

    /// `x · self · y`.
    pub fn sandwich(&self, x: &[Letter], y: &[Letter]) -> Self {
        let mut out = Self::zero();
        for (w, c) in &self.terms {
            out.add_term(Word::from_letters(x).concat(w).concat(y), *c);
        }
        out
    }

    /// The common length of all terms, `None` for mixed lengths or zero.
    pub fn degree(&self) -> Option<usize> {
        let mut lens = self.terms.keys().map(Word::len);
        let first = lens.next()?;
        lens.all(|l| l == first).then_some(first)
    }

    /// Terms in shortlex order, like `aabb - abbb`.
    pub fn show(&self, a: &Alphabet) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (i, (w, c)) in self.terms.iter().enumerate() {
            let (sign, mag) = if *c < 0 { ("-", -c) } else { ("+", *c) };
            if i == 0 {
                if sign == "-" {
                    out.push('-');
                }
            } else {
                out.push_str(&format!(" {sign} "));
            }
            if mag != 1 {
                out.push_str(&mag.to_string());
            }
            out.push_str(&a.show(w));
        }
        out
    }
}

impl AddAssign<&FreeRingElement> for FreeRingElement {
    fn add_assign(&mut self, rhs: &FreeRingElement) {
        for (w, c) in &rhs.terms {
            self.add_term(w.clone(), *c);
        }
    }
}

impl Add for FreeRingElement {
    type Output = FreeRingElement;

    fn add(mut self, rhs: FreeRingElement) -> FreeRingElement {
        self += &rhs;
        self
    }
}

impl Neg for FreeRingElement {
    type Output = FreeRingElement;

    fn neg(mut self) -> FreeRingElement {
        for c in self.terms.values_mut() {
            *c = -*c;
        }
        self
    }
}

impl Sub for FreeRingElement {
    type Output = FreeRingElement;

    fn sub(self, rhs: FreeRingElement) -> FreeRingElement {
        self + (-rhs)
    }
}
