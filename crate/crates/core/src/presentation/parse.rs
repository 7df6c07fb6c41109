//! Line-based presentation format.
//!
//! ```text
//! letters: a b c
//! rule:   c b a b -> c b c b
//! scheme: c1 a^k b1 a^l d2 -> c2 a^(k+l) b1 d1   where k l : nat
//! scheme: c U a b -> c U b b                      where U : word(a b)
//! ```

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use super::{Atom, Exponent, Presentation, RuleScheme, VarDecl, VarKind};
use crate::word::{is_valid_letter_name, Alphabet, Word, WordError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
    #[error("duplicate letter `{0}`")]
    DuplicateLetter(String),
    #[error("invalid letter name `{0}`")]
    InvalidLetter(String),
    #[error("variable `{0}` used in rhs but not in lhs")]
    UnboundVariable(String),
    #[error("variable `{0}` declared but not used in lhs")]
    UnusedVariable(String),
    #[error("word variable `{0}` occurs more than once in lhs")]
    RepeatedWordVariable(String),
    #[error("undeclared variable `{0}`")]
    UndeclaredVariable(String),
    #[error("variable `{0}` clashes with a letter")]
    VariableClash(String),
    #[error("rules must come after the `letters:` line")]
    MissingLetters,
    #[error("left-hand side is empty")]
    EmptyLhs,
}

fn err<T>(line: usize, kind: ParseErrorKind) -> Result<T, ParseError> {
    Err(ParseError { line, kind })
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Num(u32),
    Caret,
    LParen,
    RParen,
    Plus,
    Comma,
    Colon,
}

fn lex(text: &str, line: usize) -> Result<Vec<Tok>, ParseError> {
    let mut toks = Vec::new();
    let mut chars = text.chars().peekable();
    while let Some(&c) = chars.peek() {
        match c {
            c if c.is_whitespace() => {
                chars.next();
            }
            '^' | '(' | ')' | '+' | ',' | ':' => {
                chars.next();
                toks.push(match c {
                    '^' => Tok::Caret,
                    '(' => Tok::LParen,
                    ')' => Tok::RParen,
                    '+' => Tok::Plus,
                    ',' => Tok::Comma,
                    _ => Tok::Colon,
                });
            }
            _ => {
                let mut s = String::new();
                while let Some(&c) = chars.peek() {
                    if c.is_whitespace() || "^()+,:".contains(c) {
                        break;
                    }
                    s.push(c);
                    chars.next();
                }
                if s.chars().all(|c| c.is_ascii_digit()) {
                    let n = s.parse().map_err(|_| ParseError {
                        line,
                        kind: ParseErrorKind::Syntax(format!("number `{s}` too large")),
                    })?;
                    toks.push(Tok::Num(n));
                } else {
                    toks.push(Tok::Ident(s));
                }
            }
        }
    }
    Ok(toks)
}

struct Cursor<'a> {
    toks: &'a [Tok],
    pos: usize,
    line: usize,
}

impl<'a> Cursor<'a> {
    fn peek(&self) -> Option<&'a Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<&'a Tok> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<(), ParseError> {
        match self.next() {
            Some(t) if *t == tok => Ok(()),
            other => err(
                self.line,
                ParseErrorKind::Syntax(format!("expected {what}, found {other:?}")),
            ),
        }
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        err(self.line, ParseErrorKind::Syntax(msg.into()))
    }
}

/// Parses the whole text format into a [`Presentation`].
pub fn parse_presentation(text: &str) -> Result<Presentation, ParseError> {
    let mut alphabet: Option<Alphabet> = None;
    let mut letter_names: Vec<String> = Vec::new();
    let mut schemes = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = match raw.find('#') {
            Some(i) => &raw[..i],
            None => raw,
        }
        .trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) = match content.split_once(':') {
            Some((k, r)) => (k.trim(), r),
            None => return err(line, ParseErrorKind::Syntax("expected `key: ...`".into())),
        };
        match key {
            "letters" => {
                if !schemes.is_empty() {
                    return err(
                        line,
                        ParseErrorKind::Syntax("`letters:` after rules".into()),
                    );
                }
                for name in rest.split_whitespace() {
                    if !is_valid_letter_name(name) {
                        return err(line, ParseErrorKind::InvalidLetter(name.into()));
                    }
                    if letter_names.iter().any(|n| n == name) {
                        return err(line, ParseErrorKind::DuplicateLetter(name.into()));
                    }
                    letter_names.push(name.to_string());
                }
                alphabet = Some(Alphabet::new(letter_names.clone()).map_err(|e| match e {
                    WordError::Duplicate(n) => ParseError {
                        line,
                        kind: ParseErrorKind::DuplicateLetter(n),
                    },
                    other => ParseError {
                        line,
                        kind: ParseErrorKind::InvalidLetter(other.to_string()),
                    },
                })?);
            }
            "rule" | "scheme" => {
                let Some(alphabet) = alphabet.as_ref() else {
                    return err(line, ParseErrorKind::MissingLetters);
                };
                let scheme = parse_scheme(alphabet, rest, line)?;
                if key == "rule" && !scheme.is_plain() {
                    return err(
                        line,
                        ParseErrorKind::Syntax("`rule:` cannot declare variables".into()),
                    );
                }
                schemes.push(scheme);
            }
            other => {
                return err(
                    line,
                    ParseErrorKind::Syntax(format!("unknown directive `{other}`")),
                )
            }
        }
    }
    let alphabet = alphabet.unwrap_or_default();
    Ok(Presentation { alphabet, schemes })
}

fn parse_scheme(alphabet: &Alphabet, text: &str, line: usize) -> Result<RuleScheme, ParseError> {
    let (body, decls) = match split_keyword(text, "where") {
        Some((b, d)) => (b, Some(d)),
        None => (text, None),
    };
    let vars = match decls {
        Some(d) => parse_decls(alphabet, d, line)?,
        None => Vec::new(),
    };
    for v in &vars {
        if alphabet.contains(&v.name) {
            return err(line, ParseErrorKind::VariableClash(v.name.clone()));
        }
    }
    let Some((lhs, rhs)) = body.split_once("->") else {
        return err(line, ParseErrorKind::Syntax("expected `->`".into()));
    };
    let lhs = parse_side(alphabet, &vars, lhs, line)?;
    let rhs = parse_side(alphabet, &vars, rhs, line)?;
    if lhs.is_empty() {
        return err(line, ParseErrorKind::EmptyLhs);
    }

    let lhs_vars = side_vars(&lhs);
    for v in side_vars(&rhs) {
        if !lhs_vars.contains(&v) {
            return err(line, ParseErrorKind::UnboundVariable(v));
        }
    }
    for decl in &vars {
        if !lhs_vars.contains(&decl.name) {
            return err(line, ParseErrorKind::UnusedVariable(decl.name.clone()));
        }
    }
    let mut seen = BTreeSet::new();
    for atom in &lhs {
        if let Atom::Var(v) = atom {
            if !seen.insert(v.clone()) {
                return err(line, ParseErrorKind::RepeatedWordVariable(v.clone()));
            }
        }
    }
    Ok(RuleScheme { lhs, rhs, vars })
}

fn split_keyword<'a>(text: &'a str, kw: &str) -> Option<(&'a str, &'a str)> {
    let mut offset = 0;
    for tok in text.split_inclusive(char::is_whitespace) {
        if tok.trim() == kw {
            return Some((&text[..offset], &text[offset + tok.len()..]));
        }
        offset += tok.len();
    }
    None
}

pub(super) fn side_vars(atoms: &[Atom]) -> BTreeSet<String> {
    let mut out = BTreeSet::new();
    for atom in atoms {
        match atom {
            Atom::Power(_, e) => out.extend(e.vars.iter().cloned()),
            Atom::Var(v) => {
                out.insert(v.clone());
            }
            Atom::Letter(_) => {}
        }
    }
    out
}

fn parse_decls(alphabet: &Alphabet, text: &str, line: usize) -> Result<Vec<VarDecl>, ParseError> {
    let toks = lex(text, line)?;
    let mut cur = Cursor {
        toks: &toks,
        pos: 0,
        line,
    };
    let mut decls: Vec<VarDecl> = Vec::new();
    loop {
        let mut names = Vec::new();
        while let Some(Tok::Ident(n)) = cur.peek() {
            names.push(n.clone());
            cur.next();
        }
        if names.is_empty() {
            return cur.syntax("expected variable names");
        }
        cur.expect(Tok::Colon, "`:`")?;
        let kind = match cur.next() {
            Some(Tok::Ident(k)) if k == "nat" => VarKind::Nat,
            Some(Tok::Ident(k)) if k == "word" => {
                cur.expect(Tok::LParen, "`(`")?;
                let mut gens: Vec<Vec<String>> = vec![Vec::new()];
                loop {
                    match cur.next() {
                        Some(Tok::Ident(n)) => gens.last_mut().unwrap().push(n.clone()),
                        Some(Tok::Comma) => gens.push(Vec::new()),
                        Some(Tok::RParen) => break,
                        other => return cur.syntax(format!("unexpected {other:?} in word(...)")),
                    }
                }
                let words = if gens.len() == 1 {
                    // `word(a b)`: each token is a single-letter generator.
                    gens[0].iter().map(|n| vec![n.clone()]).collect::<Vec<_>>()
                } else {
                    gens
                };
                let mut out = Vec::new();
                for g in words {
                    if g.is_empty() {
                        return cur.syntax("empty generator in word(...)");
                    }
                    let mut w = Vec::new();
                    for n in g {
                        if n == "ε" {
                            continue;
                        }
                        match alphabet.letter(&n) {
                            Some(l) => w.push(l),
                            None => return err(line, ParseErrorKind::UnknownLetter(n)),
                        }
                    }
                    if w.is_empty() {
                        return cur.syntax("empty generator in word(...)");
                    }
                    out.push(Word(w));
                }
                VarKind::Word(out)
            }
            other => return cur.syntax(format!("expected `nat` or `word(...)`, found {other:?}")),
        };
        for name in names {
            if decls.iter().any(|d| d.name == name) {
                return cur.syntax(format!("variable `{name}` declared twice"));
            }
            decls.push(VarDecl {
                name,
                kind: kind.clone(),
            });
        }
        match cur.next() {
            None => break,
            Some(Tok::Comma) => continue,
            Some(t) => return cur.syntax(format!("unexpected {t:?} after declaration")),
        }
    }
    Ok(decls)
}

fn parse_side(
    alphabet: &Alphabet,
    vars: &[VarDecl],
    text: &str,
    line: usize,
) -> Result<Vec<Atom>, ParseError> {
    let toks = lex(text, line)?;
    let mut cur = Cursor {
        toks: &toks,
        pos: 0,
        line,
    };
    let kinds: BTreeMap<&str, &VarKind> = vars.iter().map(|v| (v.name.as_str(), &v.kind)).collect();
    let mut atoms = Vec::new();
    while let Some(tok) = cur.next() {
        let Tok::Ident(name) = tok else {
            return cur.syntax(format!("unexpected {tok:?}"));
        };
        if name == "ε" {
            continue;
        }
        let caret = matches!(cur.peek(), Some(Tok::Caret));
        if let Some(kind) = kinds.get(name.as_str()) {
            if caret {
                return cur.syntax(format!("variable `{name}` cannot be raised to a power"));
            }
            match kind {
                VarKind::Word(_) => atoms.push(Atom::Var(name.clone())),
                VarKind::Nat => {
                    return cur.syntax(format!("nat variable `{name}` used as a word"));
                }
            }
            continue;
        }
        let Some(letter) = alphabet.letter(name) else {
            return err(line, ParseErrorKind::UnknownLetter(name.clone()));
        };
        if !caret {
            atoms.push(Atom::Letter(letter));
            continue;
        }
        cur.next();
        let exp = parse_exponent(&mut cur, &kinds)?;
        atoms.push(Atom::Power(letter, exp));
    }
    Ok(atoms)
}

fn parse_exponent(
    cur: &mut Cursor<'_>,
    kinds: &BTreeMap<&str, &VarKind>,
) -> Result<Exponent, ParseError> {
    let mut exp = Exponent::constant(0);
    let term = |cur: &mut Cursor<'_>, exp: &mut Exponent| -> Result<(), ParseError> {
        match cur.next() {
            Some(Tok::Num(n)) => {
                exp.constant += n;
                Ok(())
            }
            Some(Tok::Ident(v)) => match kinds.get(v.as_str()) {
                Some(VarKind::Nat) => {
                    exp.vars.push(v.clone());
                    Ok(())
                }
                Some(VarKind::Word(_)) => cur.syntax(format!("word variable `{v}` in exponent")),
                None => err(cur.line, ParseErrorKind::UndeclaredVariable(v.clone())),
            },
            other => cur.syntax(format!("bad exponent term {other:?}")),
        }
    };
    if matches!(cur.peek(), Some(Tok::LParen)) {
        cur.next();
        term(cur, &mut exp)?;
        loop {
            match cur.next() {
                Some(Tok::Plus) => term(cur, &mut exp)?,
                Some(Tok::RParen) => break,
                other => return cur.syntax(format!("expected `+` or `)`, found {other:?}")),
            }
        }
    } else {
        term(cur, &mut exp)?;
    }
    Ok(exp)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue;

    #[test]
    fn parses_catalogued_nine_rule_system() {
        let p = catalogue::complete_auto();
        assert_eq!(p.alphabet.names(), ["a", "b", "c"]);
        assert_eq!(p.schemes.len(), 9);
        let (l, r) = p.schemes[0].as_plain().unwrap();
        assert_eq!(p.show(&l), "cbab");
        assert_eq!(p.show(&r), "cbcb");
    }

    #[test]
    fn letters_only_is_free() {
        let p = parse_presentation("letters: a\n").unwrap();
        assert_eq!(p.alphabet.len(), 1);
        assert!(p.schemes.is_empty());
    }

    #[test]
    fn undeclared_letter_is_named() {
        let e = parse_presentation("letters: a b c\nrule: a b -> c d\n").unwrap_err();
        assert_eq!(e.line, 2);
        assert_eq!(e.kind, ParseErrorKind::UnknownLetter("d".into()));
    }

    #[test]
    fn duplicate_letter() {
        let e = parse_presentation("letters: a b a\n").unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::DuplicateLetter("a".into()));
    }

    #[test]
    fn rhs_variable_must_be_bound() {
        let e = parse_presentation("letters: a b\nscheme: a^k -> a^(k+l) where k l : nat\n")
            .unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::UnboundVariable("l".into()));
    }

    #[test]
    fn syntax_error_reports_line() {
        let e = parse_presentation("# header\nletters: a b\n\nrule: a b => b a\n").unwrap_err();
        assert_eq!(e.line, 4);
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
    }

    #[test]
    fn word_variable_once_in_lhs() {
        let e = parse_presentation("letters: a b\nscheme: U a U -> U b U where U : word(a b)\n")
            .unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::RepeatedWordVariable("U".into()));
    }

    #[test]
    fn exponent_expressions() {
        let p = parse_presentation(
            "letters: a b1 c1 c2 d1 d2\n\
             scheme: c1 a^k b1 a^l d2 -> c2 a^(k+l) b1 d1 where k l : nat\n",
        )
        .unwrap();
        let s = &p.schemes[0];
        assert_eq!(s.vars.len(), 2);
        assert_eq!(
            s.rhs[1],
            Atom::Power(
                p.alphabet.letter("a").unwrap(),
                Exponent {
                    vars: vec!["k".into(), "l".into()],
                    constant: 0
                }
            )
        );
        assert_eq!(
            p.show_scheme(s),
            "scheme: c1 a^k b1 a^l d2 -> c2 a^(k+l) b1 d1 where k l : nat"
        );
    }

    #[test]
    fn whitespace_is_normalized() {
        let p = parse_presentation("letters:   a   b\nrule:a  b->b a   # swap\n").unwrap();
        assert_eq!(p.to_string(), "letters: a b\nrule: a b -> b a\n");
    }
}
