use super::{DerivationError, DerivationPath, Edge, FreeRingElement, Sign};
use crate::catalogue;
use crate::presentation::Presentation;
use crate::word::{Alphabet, Letter, Word};

/// The critical circuits of the extended system, with each scheme edge
/// `cuab → cubb` expanded into a path of the three base rules.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CircuitKind {
    /// Peak `x c u a b`.
    Ct1 { x: Letter, u: Word },
    /// Peak `c u a b c`. Its vertices contain two `c`s.
    Ct2 { u: Word },
    /// Peak `c u a b v a b`.
    Ct3 { u: Word, v: Word },
}

/// Path constructions for `K_a: ac → ca`, `K_b: bc → cb`, `C: cab → cbb`.
#[derive(Debug, Clone)]
pub struct Circuits {
    pub alphabet: Alphabet,
    pub a: Letter,
    pub b: Letter,
    pub c: Letter,
}

impl Circuits {
    /// Requires letters `a`, `b`, `c` and the three rules in `p`.
    pub fn new(p: &Presentation) -> Result<Self, DerivationError> {
        let letter = |n: &str| {
            p.alphabet
                .letter(n)
                .ok_or_else(|| DerivationError::MissingRule(format!("letter {n}")))
        };
        let s = Circuits {
            alphabet: p.alphabet.clone(),
            a: letter("a")?,
            b: letter("b")?,
            c: letter("c")?,
        };
        let rules = p.plain_rules().unwrap_or_default();
        for (l, r) in [s.k(s.a), s.k(s.b), s.c_rule()] {
            if !rules.contains(&(l.clone(), r.clone())) {
                return Err(DerivationError::MissingRule(format!(
                    "rule {} -> {}",
                    s.alphabet.show(&l),
                    s.alphabet.show(&r)
                )));
            }
        }
        Ok(s)
    }

    /// On the bundled three-rule presentation.
    pub fn standard() -> Self {
        Self::new(&catalogue::nonfdt_biauto()).expect("bundled presentation has the rules")
    }

    fn w(&self, parts: &[&[Letter]]) -> Word {
        Word(parts.concat())
    }

    /// `K_x = (x c, c x)`.
    pub fn k(&self, x: Letter) -> (Word, Word) {
        (self.w(&[&[x, self.c]]), self.w(&[&[self.c, x]]))
    }

    /// `C = (c a b, c b b)`.
    pub fn c_rule(&self) -> (Word, Word) {
        (
            self.w(&[&[self.c, self.a, self.b]]),
            self.w(&[&[self.c, self.b, self.b]]),
        )
    }

    fn check_ab(&self, u: &[Letter], what: &str) -> Result<(), DerivationError> {
        if u.contains(&self.c) {
            return Err(DerivationError::InvalidParameter(format!(
                "{what} = {} contains c",
                self.alphabet.show(u)
            )));
        }
        Ok(())
    }

    fn edge(
        &self,
        left: &[Letter],
        rule: (Word, Word),
        sign: Sign,
        right: &[Letter],
    ) -> DerivationPath {
        DerivationPath::from_edge(Edge::new(
            Word::from_letters(left),
            rule,
            sign,
            Word::from_letters(right),
        ))
    }

    /// `C_u`: from `c u a b` to `c u b b` by moving `c` right through `u`,
    /// applying `C`, and moving it back. Has `2|u| + 1` edges.
    pub fn build_cu(&self, u: &[Letter]) -> Result<DerivationPath, DerivationError> {
        self.check_ab(u, "u")?;
        let (a, b) = (self.a, self.b);
        let Some((&x, rest)) = u.split_first() else {
            return Ok(self.edge(&[], self.c_rule(), Sign::Pos, &[]));
        };
        let down = self.edge(&[], self.k(x), Sign::Neg, &[rest, &[a, b]].concat());
        let inner = self.build_cu(rest)?.act(&[x], &[]);
        let up = self.edge(&[], self.k(x), Sign::Pos, &[rest, &[b, b]].concat());
        down.compose(&inner)?.compose(&up)
    }

    /// The right branch of the resolution followed by the inverse of the
    /// left branch, closed at the peak.
    pub fn circuit(&self, kind: &CircuitKind) -> Result<DerivationPath, DerivationError> {
        let (a, b, c) = (self.a, self.b, self.c);
        let (left, right) = match kind {
            CircuitKind::Ct1 { x, u } => {
                if *x == c {
                    return Err(DerivationError::InvalidParameter("x must be a or b".into()));
                }
                self.check_ab(u, "u")?;
                let xu = self.w(&[&[*x], u]);
                let left = self
                    .edge(&[], self.k(*x), Sign::Pos, &[u, &[a, b][..]].concat())
                    .compose(&self.build_cu(&xu)?)?;
                let right = self.build_cu(u)?.act(&[*x], &[]).compose(&self.edge(
                    &[],
                    self.k(*x),
                    Sign::Pos,
                    &[u, &[b, b][..]].concat(),
                ))?;
                (left, right)
            }
            CircuitKind::Ct2 { u } => {
                self.check_ab(u, "u")?;
                let cu = self.w(&[&[c], u]);
                let left = self
                    .build_cu(u)?
                    .act(&[], &[c])
                    .compose(&self.edge(&[&cu[..], &[b]].concat(), self.k(b), Sign::Pos, &[]))?
                    .compose(&self.edge(&cu, self.k(b), Sign::Pos, &[b]))?;
                let right = self
                    .edge(&[&cu[..], &[a]].concat(), self.k(b), Sign::Pos, &[])
                    .compose(&self.edge(&cu, self.k(a), Sign::Pos, &[b]))?
                    .compose(&self.edge(&cu, self.c_rule(), Sign::Pos, &[]))?;
                (left, right)
            }
            CircuitKind::Ct3 { u, v } => {
                self.check_ab(u, "u")?;
                self.check_ab(v, "v")?;
                let uabv = self.w(&[u, &[a, b], v]);
                let ubbv = self.w(&[u, &[b, b], v]);
                let left = self
                    .build_cu(u)?
                    .act(&[], &[v, &[a, b][..]].concat())
                    .compose(&self.build_cu(&ubbv)?)?;
                let right = self
                    .build_cu(&uabv)?
                    .compose(&self.build_cu(u)?.act(&[], &[v, &[b, b][..]].concat()))?;
                (left, right)
            }
        };
        right.compose(&left.inverse())
    }

    /// `Φ`: each edge `α · r^ε · β` contributes `ε α`. Every vertex must
    /// contain exactly one `c`, so `α` is a word over `a, b`.
    pub fn phi_eval(&self, path: &DerivationPath) -> Result<FreeRingElement, DerivationError> {
        for v in path.vertices() {
            if v.count(self.c) != 1 {
                return Err(DerivationError::NotOneC(v));
            }
        }
        let mut out = FreeRingElement::zero();
        for e in path.edges() {
            out.add_term(e.left.clone(), e.sign.value());
        }
        Ok(out)
    }

    /// `u (ab − bb) v`.
    pub fn table_value(&self, u: &[Letter], v: &[Letter]) -> FreeRingElement {
        let (a, b) = (self.a, self.b);
        FreeRingElement::word(self.w(&[u, &[a, b], v]))
            - FreeRingElement::word(self.w(&[u, &[b, b], v]))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup() -> (Circuits, impl Fn(&str) -> Word) {
        let s = Circuits::standard();
        let a = s.alphabet.clone();
        (s, move |t: &str| a.parse_word(t).unwrap())
    }

    #[test]
    fn cu_paths() {
        let (s, w) = setup();
        let c0 = s.build_cu(&[]).unwrap();
        assert_eq!(c0.len(), 1);
        assert_eq!(c0.endpoints(), (w("cab"), w("cbb")));
        let ca = s.build_cu(&w("a")).unwrap();
        let shown: Vec<String> = ca.vertices().iter().map(|v| s.alphabet.show(v)).collect();
        assert_eq!(shown, ["caab", "acab", "acbb", "cabb"]);
        assert_eq!(s.build_cu(&w("ab")).unwrap().len(), 5);
        assert!(s.build_cu(&w("ac")).is_err());
    }

    #[test]
    fn phi_of_cu_is_u() {
        let (s, w) = setup();
        for u in ["", "a", "ab", "bba"] {
            let p = s.build_cu(&w(u)).unwrap();
            assert_eq!(s.phi_eval(&p).unwrap(), FreeRingElement::word(w(u)));
            assert!(s
                .phi_eval(&p.compose(&p.inverse()).unwrap())
                .unwrap()
                .is_zero());
        }
    }

    #[test]
    fn circuit_values() {
        let (s, w) = setup();
        let ct1 = s.circuit(&CircuitKind::Ct1 { x: s.a, u: w("") }).unwrap();
        assert!(ct1.is_closed());
        assert_eq!(ct1.start(), &w("acab"));
        assert!(s.phi_eval(&ct1).unwrap().is_zero());

        let ct3 = s.circuit(&CircuitKind::Ct3 { u: w(""), v: w("") }).unwrap();
        assert!(ct3.is_closed());
        assert_eq!(ct3.start(), &w("cabab"));
        assert_eq!(s.phi_eval(&ct3).unwrap().show(&s.alphabet), "ab - bb");

        let ct3 = s
            .circuit(&CircuitKind::Ct3 {
                u: w("a"),
                v: w("b"),
            })
            .unwrap();
        assert_eq!(s.phi_eval(&ct3).unwrap().show(&s.alphabet), "aabb - abbb");
    }

    #[test]
    fn two_c_circuit() {
        let (s, w) = setup();
        let ct2 = s.circuit(&CircuitKind::Ct2 { u: w("") }).unwrap();
        assert!(ct2.is_closed());
        assert_eq!(ct2.start(), &w("cabc"));
        assert_eq!(ct2.len(), 6);
        assert!(matches!(s.phi_eval(&ct2), Err(DerivationError::NotOneC(_))));
    }

    #[test]
    fn circuit_dump() {
        let (s, w) = setup();
        let p = s.build_cu(&w("a")).unwrap();
        assert_eq!(
            p.dump(&s.alphabet),
            "ε | ac -> ca | -1 | ab\na | cab -> cbb | +1 | ε\nε | ac -> ca | +1 | bb\n"
        );
    }
}
