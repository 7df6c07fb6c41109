//! Monoid presentations with parametric rule schemes.
//!
//! A rule scheme is a pair of atom sequences. Atoms are literal letters,
//! powers `a^(k+l+2)` of a single letter with a natural-number exponent
//! expression, or word variables ranging over the free monoid generated
//! by a finite set of words. A plain rule is a scheme without variables.

mod classify;
mod parse;

use std::collections::BTreeMap;
use std::fmt;

pub use classify::{content_vector, Classification, ContentVector};
pub use parse::{parse_presentation, ParseError, ParseErrorKind};

use crate::word::{Alphabet, Letter, Word};

/// `vars[0] + vars[1] + ... + constant`; repeated names count repeatedly.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Exponent {
    pub vars: Vec<String>,
    pub constant: u32,
}

impl Exponent {
    pub fn constant(c: u32) -> Self {
        Exponent {
            vars: Vec::new(),
            constant: c,
        }
    }

    pub fn var(name: &str) -> Self {
        Exponent {
            vars: vec![name.to_string()],
            constant: 0,
        }
    }

    pub fn eval(&self, nat: &BTreeMap<String, u32>) -> u32 {
        self.constant + self.vars.iter().map(|v| nat[v]).sum::<u32>()
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.vars.len(), self.constant) {
            (0, c) => write!(f, "{c}"),
            (1, 0) => write!(f, "{}", self.vars[0]),
            _ => {
                let mut parts: Vec<String> = self.vars.clone();
                if self.constant > 0 {
                    parts.push(self.constant.to_string());
                }
                write!(f, "({})", parts.join("+"))
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Atom {
    Letter(Letter),
    Power(Letter, Exponent),
    /// Occurrence of a declared word variable.
    Var(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum VarKind {
    Nat,
    /// Ranges over the free monoid on these generator words.
    Word(Vec<Word>),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct VarDecl {
    pub name: String,
    pub kind: VarKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct RuleScheme {
    pub lhs: Vec<Atom>,
    pub rhs: Vec<Atom>,
    pub vars: Vec<VarDecl>,
}

impl RuleScheme {
    pub fn plain(lhs: &Word, rhs: &Word) -> Self {
        RuleScheme {
            lhs: lhs.iter().map(|&l| Atom::Letter(l)).collect(),
            rhs: rhs.iter().map(|&l| Atom::Letter(l)).collect(),
            vars: Vec::new(),
        }
    }

    pub fn is_plain(&self) -> bool {
        self.vars.is_empty()
    }

    /// The rule as a pair of words, when the scheme has no variables.
    pub fn as_plain(&self) -> Option<(Word, Word)> {
        if !self.is_plain() {
            return None;
        }
        let side = |atoms: &[Atom]| -> Word {
            let mut w = Vec::new();
            for atom in atoms {
                match atom {
                    Atom::Letter(l) => w.push(*l),
                    Atom::Power(l, e) => w.extend(std::iter::repeat_n(*l, e.constant as usize)),
                    Atom::Var(_) => unreachable!("plain scheme has no variables"),
                }
            }
            Word(w)
        };
        Some((side(&self.lhs), side(&self.rhs)))
    }

    pub fn var(&self, name: &str) -> Option<&VarDecl> {
        self.vars.iter().find(|v| v.name == name)
    }

    /// Substitutes variable values into one side.
    pub fn instantiate_side(
        atoms: &[Atom],
        nat: &BTreeMap<String, u32>,
        words: &BTreeMap<String, Word>,
    ) -> Word {
        let mut out = Vec::new();
        for atom in atoms {
            match atom {
                Atom::Letter(l) => out.push(*l),
                Atom::Power(l, e) => out.extend(std::iter::repeat_n(*l, e.eval(nat) as usize)),
                Atom::Var(name) => out.extend_from_slice(&words[name]),
            }
        }
        Word(out)
    }

    fn reversed(&self) -> RuleScheme {
        let rev = |atoms: &[Atom]| atoms.iter().rev().cloned().collect::<Vec<_>>();
        RuleScheme {
            lhs: rev(&self.lhs),
            rhs: rev(&self.rhs),
            vars: self
                .vars
                .iter()
                .map(|v| VarDecl {
                    name: v.name.clone(),
                    kind: match &v.kind {
                        VarKind::Nat => VarKind::Nat,
                        VarKind::Word(gens) => {
                            VarKind::Word(gens.iter().map(Word::reversed).collect())
                        }
                    },
                })
                .collect(),
        }
    }
}

/// A presentation ⟨A | R⟩ whose relations may be rule schemes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Presentation {
    pub alphabet: Alphabet,
    pub schemes: Vec<RuleScheme>,
}

impl Presentation {
    pub fn new(alphabet: Alphabet, schemes: Vec<RuleScheme>) -> Self {
        Presentation { alphabet, schemes }
    }

    pub fn from_rules(alphabet: Alphabet, rules: &[(Word, Word)]) -> Self {
        let schemes = rules.iter().map(|(l, r)| RuleScheme::plain(l, r)).collect();
        Presentation { alphabet, schemes }
    }

    /// The free monoid on `alphabet`.
    pub fn free(alphabet: Alphabet) -> Self {
        Presentation {
            alphabet,
            schemes: Vec::new(),
        }
    }

    pub fn parse(text: &str) -> Result<Self, ParseError> {
        parse_presentation(text)
    }

    pub fn is_plain(&self) -> bool {
        self.schemes.iter().all(RuleScheme::is_plain)
    }

    /// All rules as word pairs, or `None` if some scheme has variables.
    pub fn plain_rules(&self) -> Option<Vec<(Word, Word)>> {
        self.schemes.iter().map(RuleScheme::as_plain).collect()
    }

    pub fn word(&self, text: &str) -> Result<Word, crate::word::WordError> {
        self.alphabet.parse_word(text)
    }

    pub fn show(&self, word: &[Letter]) -> String {
        self.alphabet.show(word)
    }

    pub fn classify(&self) -> Classification {
        classify::classify(self)
    }

    /// The presentation ⟨A | R^rev⟩. Word variables keep their place and
    /// range over the reversed generators.
    pub fn reversed(&self) -> Presentation {
        Presentation {
            alphabet: self.alphabet.clone(),
            schemes: self.schemes.iter().map(RuleScheme::reversed).collect(),
        }
    }

    fn show_side(&self, atoms: &[Atom]) -> String {
        if atoms.is_empty() {
            return "ε".into();
        }
        atoms
            .iter()
            .map(|a| match a {
                Atom::Letter(l) => self.alphabet.name(*l).to_string(),
                Atom::Power(l, e) => format!("{}^{}", self.alphabet.name(*l), e),
                Atom::Var(v) => v.clone(),
            })
            .collect::<Vec<_>>()
            .join(" ")
    }

    fn show_word_spaced(&self, w: &Word) -> String {
        if w.is_empty() {
            return "ε".into();
        }
        w.iter()
            .map(|&l| self.alphabet.name(l))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// One scheme in the text format (without trailing newline).
    pub fn show_scheme(&self, scheme: &RuleScheme) -> String {
        let body = format!(
            "{} -> {}",
            self.show_side(&scheme.lhs),
            self.show_side(&scheme.rhs)
        );
        if scheme.is_plain() {
            return format!("rule: {body}");
        }
        // Group consecutive declarations of the same kind.
        let mut groups: Vec<(Vec<&str>, &VarKind)> = Vec::new();
        for decl in &scheme.vars {
            match groups.last_mut() {
                Some((names, kind)) if *kind == &decl.kind => names.push(&decl.name),
                _ => groups.push((vec![&decl.name], &decl.kind)),
            }
        }
        let decls: Vec<String> = groups
            .into_iter()
            .map(|(names, kind)| {
                let kind = match kind {
                    VarKind::Nat => "nat".to_string(),
                    VarKind::Word(gens) => {
                        if gens.iter().all(|g| g.len() == 1) {
                            let names: Vec<&str> =
                                gens.iter().map(|g| self.alphabet.name(g[0])).collect();
                            format!("word({})", names.join(" "))
                        } else {
                            let gens: Vec<String> =
                                gens.iter().map(|g| self.show_word_spaced(g)).collect();
                            format!("word({})", gens.join(", "))
                        }
                    }
                };
                format!("{} : {}", names.join(" "), kind)
            })
            .collect();
        format!("scheme: {body} where {}", decls.join(", "))
    }
}

impl fmt::Display for Presentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "letters: {}", self.alphabet)?;
        for scheme in &self.schemes {
            writeln!(f, "{}", self.show_scheme(scheme))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue;

    #[test]
    fn reverse_single_rule() {
        let p = Presentation::parse("letters: a b c\nrule: c b a b -> c b c b\n").unwrap();
        let r = p.reversed();
        assert_eq!(r.show_scheme(&r.schemes[0]), "rule: b a b c -> b c b c");
    }

    #[test]
    fn reverse_palindrome_is_fixed() {
        let p = Presentation::parse("letters: a b c\nrule: a b a -> a c a\n").unwrap();
        assert_eq!(p.reversed(), p);
    }

    #[test]
    fn reversal_of_complete_auto_is_catalogued_reversal() {
        let p = catalogue::complete_auto();
        assert_eq!(p.reversed(), catalogue::complete_nonauto());
        assert_eq!(p.reversed().reversed(), p);
    }

    #[test]
    fn reverse_word_variable_scheme() {
        let p = Presentation::parse(
            "letters: a b c\nscheme: c U a b -> c U b b where U : word(a b, b b a)\n",
        )
        .unwrap();
        let r = p.reversed();
        assert_eq!(
            r.show_scheme(&r.schemes[0]),
            "scheme: b a U c -> b b U c where U : word(b a, a b b)"
        );
        assert_eq!(r.reversed(), p);
    }

    #[test]
    fn serialization_round_trip() {
        for p in [
            catalogue::complete_auto(),
            catalogue::fdt_biauto_schemes(),
            catalogue::nonfdt_biauto_complete(),
        ] {
            let text = p.to_string();
            let q = Presentation::parse(&text).unwrap();
            assert_eq!(q, p);
            assert_eq!(q.to_string(), text);
        }
    }
}
