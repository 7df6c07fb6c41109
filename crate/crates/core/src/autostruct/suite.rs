use thiserror::Error;

use crate::automata::{Dfa, Env, ExprError, Side, Transducer};
use crate::word::{Alphabet, Letter};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {msg}")]
pub struct SuiteError {
    pub line: usize,
    pub msg: String,
}

/// A word acceptor and multiplier relations over one alphabet.
///
/// Text format, one entry per line (indented lines continue the previous
/// entry, `#` starts a comment):
///
/// ```text
/// letters: a b c
/// let L = [a b]* | c+ b* a*
/// acceptor: L
/// right ε: id(L)
/// right a: id(L) <ε, a>
/// left a: <ε, a> id([a b]*) | ...
/// ```
///
/// Right multipliers must be given for `ε` and every letter. Left
/// multipliers are optional, but if any is given all must be.
#[derive(Debug, Clone)]
pub struct MultiplierSuite {
    pub alphabet: Alphabet,
    pub acceptor: Dfa,
    pub right: Vec<(Option<Letter>, Transducer)>,
    pub left: Vec<(Option<Letter>, Transducer)>,
}

impl MultiplierSuite {
    /// Whether left multipliers are present.
    pub fn biautomatic(&self) -> bool {
        !self.left.is_empty()
    }

    pub fn multipliers(&self) -> impl Iterator<Item = (Side, Option<Letter>, &Transducer)> {
        self.right
            .iter()
            .map(|(l, t)| (Side::Right, *l, t))
            .chain(self.left.iter().map(|(l, t)| (Side::Left, *l, t)))
    }

    pub fn multiplier(&self, side: Side, letter: Option<Letter>) -> Option<&Transducer> {
        let list = match side {
            Side::Right => &self.right,
            Side::Left => &self.left,
        };
        list.iter().find(|(l, _)| *l == letter).map(|(_, t)| t)
    }

    /// Replaces one multiplier.
    pub fn set_multiplier(&mut self, side: Side, letter: Option<Letter>, t: Transducer) {
        let list = match side {
            Side::Right => &mut self.right,
            Side::Left => &mut self.left,
        };
        if let Some(slot) = list.iter_mut().find(|(l, _)| *l == letter) {
            slot.1 = t;
        } else {
            list.push((letter, t));
            list.sort_by_key(|(l, _)| l.map(|l| l.0 as i32).unwrap_or(-1));
        }
    }

    pub fn parse(text: &str) -> Result<Self, SuiteError> {
        // Join continuation lines first.
        let mut entries: Vec<(usize, String)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let content = raw.split('#').next().unwrap_or("");
            if content.trim().is_empty() {
                continue;
            }
            if content.starts_with(char::is_whitespace) {
                match entries.last_mut() {
                    Some((_, e)) => {
                        e.push(' ');
                        e.push_str(content.trim());
                    }
                    None => {
                        return Err(SuiteError {
                            line: i + 1,
                            msg: "continuation line without an entry".into(),
                        })
                    }
                }
            } else {
                entries.push((i + 1, content.trim().to_string()));
            }
        }

        let mut env: Option<Env> = None;
        let mut acceptor = None;
        let mut right = Vec::new();
        let mut left = Vec::new();
        for (line, entry) in entries {
            let fail = |msg: String| SuiteError { line, msg };
            let expr_err = |e: ExprError| SuiteError {
                line,
                msg: e.to_string(),
            };
            if let Some(rest) = entry.strip_prefix("let ") {
                let env = env
                    .as_mut()
                    .ok_or_else(|| fail("`letters:` must come first".into()))?;
                let (name, body) = rest
                    .split_once('=')
                    .ok_or_else(|| fail("expected `let NAME = expression`".into()))?;
                env.define(name.trim(), body).map_err(expr_err)?;
                continue;
            }
            let (key, body) = entry
                .split_once(':')
                .ok_or_else(|| fail("expected `key: value`".into()))?;
            let key = key.trim();
            if key == "letters" {
                let a = Alphabet::new(body.split_whitespace()).map_err(|e| fail(e.to_string()))?;
                env = Some(Env::new(&a));
                continue;
            }
            let env = env
                .as_ref()
                .ok_or_else(|| fail("`letters:` must come first".into()))?;
            if key == "acceptor" {
                acceptor = Some(env.lang(body).map_err(expr_err)?);
                continue;
            }
            let (side, letter) = key
                .split_once(char::is_whitespace)
                .ok_or_else(|| fail(format!("unknown key `{key}`")))?;
            let letter = match letter.trim() {
                "ε" => None,
                name => Some(
                    env.alphabet
                        .letter(name)
                        .ok_or_else(|| fail(format!("unknown letter `{name}`")))?,
                ),
            };
            let list = match side {
                "right" => &mut right,
                "left" => &mut left,
                other => return Err(fail(format!("unknown side `{other}`"))),
            };
            if list.iter().any(|(l, _)| *l == letter) {
                return Err(fail("multiplier given twice".into()));
            }
            list.push((letter, env.rel(body).map_err(expr_err)?));
        }
        let env = env.ok_or(SuiteError {
            line: 0,
            msg: "missing `letters:`".into(),
        })?;
        let acceptor = acceptor.ok_or(SuiteError {
            line: 0,
            msg: "missing `acceptor:`".into(),
        })?;
        let order = |l: &Option<Letter>| l.map(|l| l.0 as i32).unwrap_or(-1);
        right.sort_by_key(|(l, _)| order(l));
        left.sort_by_key(|(l, _)| order(l));
        let expected = env.alphabet.len() + 1;
        if right.len() != expected {
            return Err(SuiteError {
                line: 0,
                msg: "right multipliers must cover ε and every letter".into(),
            });
        }
        if !left.is_empty() && left.len() != expected {
            return Err(SuiteError {
                line: 0,
                msg: "left multipliers must cover ε and every letter".into(),
            });
        }
        Ok(MultiplierSuite {
            alphabet: env.alphabet,
            acceptor,
            right,
            left,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalogue;

    #[test]
    fn bundled_suites_parse() {
        let s = MultiplierSuite::parse(catalogue::NONFDT_BIAUTO_SUITE).unwrap();
        assert!(s.biautomatic());
        assert_eq!(s.right.len(), 4);
        let s = MultiplierSuite::parse(catalogue::COMPLETE_AUTO_SUITE).unwrap();
        assert!(!s.biautomatic());
    }

    #[test]
    fn incomplete_suite_rejected() {
        let text = "letters: a\nacceptor: a*\nright ε: id(a*)\n";
        assert!(MultiplierSuite::parse(text).is_err());
        let text = "letters: a\nacceptor: a*\nright ε: id(a*)\nright a:\n  id(a*) <ε, a>\n";
        assert_eq!(MultiplierSuite::parse(text).unwrap().right.len(), 2);
    }

    #[test]
    fn errors_carry_lines() {
        let text = "letters: a\nacceptor: a*\nright a: <a, a\n";
        assert_eq!(MultiplierSuite::parse(text).unwrap_err().line, 3);
    }
}
