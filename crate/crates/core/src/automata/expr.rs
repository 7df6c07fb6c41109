//! A small expression language for regular languages and rational
//! relations over one alphabet.
//!
//! Binding from loosest to tightest: `|`, `&`, `-`, concatenation, the
//! postfix operators `*` `+` `?`, then prefix `!` (complement). Atoms are
//! letters (an unseparated run is split into letters), `.` for any
//! letter, `[a b]` for a letter set, `ε`, `∅`, parentheses, pairs
//! `<u, v>`, previously defined names, and the functions `id(L)`,
//! `restrict(R, L, L)`, `compose(R, R)`, `inverse(R)`, `image(R, L)`,
//! `domain(R)`, `range(R)`.

use std::collections::HashMap;

use thiserror::Error;

use super::dfa::Dfa;
use super::nfa::Nfa;
use super::transducer::Transducer;
use super::AutomataError;
use crate::word::{is_valid_letter_name, Alphabet, Letter, WordError, RESERVED_CHARS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ExprError {
    #[error("syntax error at column {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("`{op}` expects {expected}")]
    Type { op: String, expected: &'static str },
    #[error("name `{0}` clashes with a letter or function")]
    BadName(String),
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Automata(#[from] AutomataError),
}

#[derive(Debug, Clone)]
pub enum Value {
    Lang(Dfa),
    Rel(Transducer),
}

impl Value {
    fn lang(self, op: &str) -> Result<Dfa, ExprError> {
        match self {
            Value::Lang(d) => Ok(d),
            Value::Rel(_) => Err(ExprError::Type {
                op: op.to_string(),
                expected: "a language",
            }),
        }
    }

    fn rel(self, op: &str) -> Result<Transducer, ExprError> {
        match self {
            Value::Rel(t) => Ok(t),
            Value::Lang(_) => Err(ExprError::Type {
                op: op.to_string(),
                expected: "a relation",
            }),
        }
    }
}

const FUNCTIONS: &[&str] = &[
    "id", "restrict", "compose", "inverse", "image", "domain", "range",
];

/// Named languages and relations over a fixed alphabet.
#[derive(Debug, Clone)]
pub struct Env {
    pub alphabet: Alphabet,
    values: HashMap<String, Value>,
}

impl Env {
    pub fn new(alphabet: &Alphabet) -> Self {
        Env {
            alphabet: alphabet.clone(),
            values: HashMap::new(),
        }
    }

    pub fn get(&self, name: &str) -> Option<&Value> {
        self.values.get(name)
    }

    /// Evaluates `text` and binds it to `name`.
    pub fn define(&mut self, name: &str, text: &str) -> Result<&Value, ExprError> {
        if !is_valid_letter_name(name) || self.alphabet.contains(name) || FUNCTIONS.contains(&name)
        {
            return Err(ExprError::BadName(name.to_string()));
        }
        let v = self.eval(text)?;
        self.values.insert(name.to_string(), v);
        Ok(&self.values[name])
    }

    pub fn eval(&self, text: &str) -> Result<Value, ExprError> {
        let mut p = Parser {
            env: self,
            chars: text.chars().collect(),
            pos: 0,
        };
        let v = p.union()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.error("unexpected input"));
        }
        Ok(v)
    }

    pub fn lang(&self, text: &str) -> Result<Dfa, ExprError> {
        self.eval(text)?.lang("expression")
    }

    pub fn rel(&self, text: &str) -> Result<Transducer, ExprError> {
        self.eval(text)?.rel("expression")
    }
}

struct Parser<'a> {
    env: &'a Env,
    chars: Vec<char>,
    pos: usize,
}

impl Parser<'_> {
    fn a(&self) -> &Alphabet {
        &self.env.alphabet
    }

    fn error(&self, msg: &str) -> ExprError {
        ExprError::Syntax {
            pos: self.pos + 1,
            msg: msg.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.chars.get(self.pos).copied()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ExprError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(&format!("expected `{c}`")))
        }
    }

    fn ident(&mut self) -> Option<String> {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|c| !c.is_whitespace() && !RESERVED_CHARS.contains(c))
        {
            self.pos += 1;
        }
        (self.pos > start).then(|| self.chars[start..self.pos].iter().collect())
    }

    fn union(&mut self) -> Result<Value, ExprError> {
        let mut v = self.inter()?;
        while self.eat('|') {
            let w = self.inter()?;
            v = match (v, w) {
                (Value::Lang(x), Value::Lang(y)) => Value::Lang(x.union(&y)),
                (Value::Rel(x), Value::Rel(y)) => Value::Rel(x.union(&y)?),
                _ => {
                    return Err(ExprError::Type {
                        op: "|".into(),
                        expected: "operands of the same kind",
                    })
                }
            };
        }
        Ok(v)
    }

    fn inter(&mut self) -> Result<Value, ExprError> {
        let mut v = self.diff()?;
        while self.eat('&') {
            let x = v.lang("&")?;
            let y = self.diff()?.lang("&")?;
            v = Value::Lang(x.intersection(&y));
        }
        Ok(v)
    }

    fn diff(&mut self) -> Result<Value, ExprError> {
        let mut v = self.concat()?;
        while self.eat('-') {
            let x = v.lang("-")?;
            let y = self.concat()?.lang("-")?;
            v = Value::Lang(x.difference(&y));
        }
        Ok(v)
    }

    fn starts_atom(&mut self) -> bool {
        match self.peek() {
            None => false,
            Some(c) => matches!(c, '(' | '.' | '[' | '<' | '!') || !RESERVED_CHARS.contains(&c),
        }
    }

    fn concat(&mut self) -> Result<Value, ExprError> {
        let mut v = self.postfix()?;
        while self.starts_atom() {
            let w = self.postfix()?;
            v = match (v, w) {
                (Value::Lang(x), Value::Lang(y)) => Value::Lang(x.concat(&y)),
                (Value::Rel(x), Value::Rel(y)) => Value::Rel(x.concat(&y)?),
                _ => {
                    return Err(ExprError::Type {
                        op: "concatenation".into(),
                        expected: "operands of the same kind",
                    })
                }
            };
        }
        Ok(v)
    }

    fn postfix(&mut self) -> Result<Value, ExprError> {
        let mut v = self.prefix()?;
        while let Some(op @ ('*' | '+' | '?')) = self.peek() {
            self.pos += 1;
            v = match (op, v) {
                ('*', Value::Lang(x)) => Value::Lang(x.star()),
                ('*', Value::Rel(x)) => Value::Rel(x.star()),
                ('+', Value::Lang(x)) => Value::Lang(x.concat(&x.star())),
                ('+', Value::Rel(x)) => Value::Rel(x.concat(&x.star())?),
                (_, Value::Lang(x)) => Value::Lang(x.union(&Nfa::epsilon(self.a()).determinize())),
                (_, Value::Rel(x)) => {
                    let e = Transducer::pair(self.a(), self.a(), &[], &[]);
                    Value::Rel(x.union(&e)?)
                }
            };
        }
        Ok(v)
    }

    fn prefix(&mut self) -> Result<Value, ExprError> {
        if self.eat('!') {
            let x = self.prefix()?.lang("!")?;
            return Ok(Value::Lang(x.complement()));
        }
        self.atom()
    }

    fn word_until(&mut self, end: char) -> Result<Vec<Letter>, ExprError> {
        self.skip_ws();
        let start = self.pos;
        while self.chars.get(self.pos).is_some_and(|&c| c != end) {
            self.pos += 1;
        }
        if self.pos >= self.chars.len() {
            return Err(self.error(&format!("expected `{end}`")));
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        self.pos += 1;
        Ok(self.a().parse_word(&text)?.0)
    }

    fn atom(&mut self) -> Result<Value, ExprError> {
        let a = self.a().clone();
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let v = self.union()?;
                self.expect(')')?;
                Ok(v)
            }
            Some('.') => {
                self.pos += 1;
                let all: Vec<Letter> = a.letters().collect();
                Ok(Value::Lang(Nfa::letters(&a, &all).determinize()))
            }
            Some('[') => {
                self.pos += 1;
                let ls = self.word_until(']')?;
                Ok(Value::Lang(Nfa::letters(&a, &ls).determinize()))
            }
            Some('<') => {
                self.pos += 1;
                let u = self.word_until(',')?;
                let v = self.word_until('>')?;
                Ok(Value::Rel(Transducer::pair(&a, &a, &u, &v)))
            }
            Some(_) => {
                let start = self.pos;
                let Some(name) = self.ident() else {
                    return Err(self.error("expected an expression"));
                };
                if FUNCTIONS.contains(&name.as_str()) && self.peek() == Some('(') {
                    return self.call(&name);
                }
                if name == "ε" {
                    return Ok(Value::Lang(Nfa::epsilon(&a).determinize()));
                }
                if name == "∅" {
                    return Ok(Value::Lang(Dfa::empty(&a)));
                }
                if let Some(v) = self.env.get(&name) {
                    return Ok(v.clone());
                }
                // Consume a single letter so postfix operators bind to it.
                let w = a.parse_word(&name).map_err(|e| {
                    self.pos = start;
                    ExprError::from(e)
                })?;
                let first = w[0];
                self.pos = start + a.name(first).chars().count();
                Ok(Value::Lang(Nfa::word(&a, &[first]).determinize()))
            }
            None => Err(self.error("unexpected end of expression")),
        }
    }

    fn args(&mut self, n: usize) -> Result<Vec<Value>, ExprError> {
        self.expect('(')?;
        let mut out = Vec::new();
        for i in 0..n {
            if i > 0 {
                self.expect(',')?;
            }
            out.push(self.union()?);
        }
        self.expect(')')?;
        Ok(out)
    }

    fn call(&mut self, name: &str) -> Result<Value, ExprError> {
        let arity = match name {
            "restrict" => 3,
            "compose" | "image" => 2,
            _ => 1,
        };
        let mut args = self.args(arity)?.into_iter();
        let mut next = || args.next().expect("arity checked");
        Ok(match name {
            "id" => Value::Rel(Transducer::identity(&next().lang(name)?)),
            "inverse" => Value::Rel(next().rel(name)?.inverse()),
            "domain" => Value::Lang(next().rel(name)?.domain()),
            "range" => Value::Lang(next().rel(name)?.range()),
            "compose" => {
                let x = next().rel(name)?;
                Value::Rel(x.compose(&next().rel(name)?)?)
            }
            "image" => {
                let x = next().rel(name)?;
                Value::Lang(x.image(&next().lang(name)?)?)
            }
            _ => {
                let x = next().rel(name)?;
                let d = next().lang(name)?;
                let c = next().lang(name)?;
                Value::Rel(x.restrict(&d, &c)?)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn env() -> Env {
        Env::new(&Alphabet::new(["a", "b", "c"]).unwrap())
    }

    fn has(d: &Dfa, s: &str) -> bool {
        d.accepts(&d.alphabet.parse_word(s).unwrap())
    }

    #[test]
    fn normal_form_pattern() {
        let e = env();
        let l = e.lang("[a b]* | c+ b* a*").unwrap();
        assert!(has(&l, "cba"));
        assert!(has(&l, "ab"));
        assert!(!has(&l, "ac"));
        assert!(has(&l, ""));
    }

    #[test]
    fn precedence() {
        let e = env();
        // ab* is a(b*), a|b c is a|(bc), !a* is (!a)*
        assert!(has(&e.lang("ab*").unwrap(), "abb"));
        assert!(!has(&e.lang("ab*").unwrap(), "abab"));
        assert!(has(&e.lang("a|bc").unwrap(), "bc"));
        assert!(has(&e.lang("!a*").unwrap(), "aa"));
        assert!(e
            .lang(".* - .*c.*")
            .unwrap()
            .equivalent(&e.lang("[a b]*").unwrap()));
        assert!(e
            .lang("!∅")
            .unwrap()
            .equivalent(&Dfa::universal(&e.alphabet)));
    }

    #[test]
    fn relations() {
        let mut e = env();
        e.define("L", "[a b]*").unwrap();
        let r = e.rel("id(L)<ε, c>").unwrap();
        let w = |s: &str| e.alphabet.parse_word(s).unwrap();
        assert!(r.accepts(&w("ab"), &w("abc")));
        assert!(!r.accepts(&w("cb"), &w("cbc")));
        let dom = e.lang("domain(id(L)<ε, c>)").unwrap();
        assert!(dom.equivalent(
            e.get("L")
                .map(|v| match v {
                    Value::Lang(d) => d,
                    _ => unreachable!(),
                })
                .unwrap()
        ));
        let img = e.lang("image(inverse(<a, bb>*), b*)").unwrap();
        assert!(has(&img, "aa"));
        assert!(!has(&img, "b"));
        assert!(e
            .rel("restrict(<a,b>, a, c)")
            .unwrap()
            .pairs_up_to(2)
            .is_empty());
    }

    #[test]
    fn errors() {
        let mut e = env();
        assert!(matches!(e.lang("<a,b>"), Err(ExprError::Type { .. })));
        assert!(matches!(e.lang("a|"), Err(ExprError::Syntax { .. })));
        assert!(matches!(e.lang("ad"), Err(ExprError::Word(_))));
        assert!(matches!(e.define("a", "b"), Err(ExprError::BadName(_))));
        assert!(matches!(e.define("id", "b"), Err(ExprError::BadName(_))));
    }
}
