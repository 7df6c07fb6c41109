//! Line-based text format for DFAs:
//!
//! ```text
//! alphabet: a b c
//! states: 3
//! start: 0
//! accept: 2
//! trans: 0 a 1
//! ```
//!
//! One `trans:` line per transition; every state needs an outgoing
//! transition on every letter. Pair alphabets use names like `a|b`.

use std::fmt::Write;

use super::dfa::Dfa;
use super::AutomataError;
use crate::word::Alphabet;

fn err(line: usize, msg: impl Into<String>) -> AutomataError {
    AutomataError::Format {
        line,
        msg: msg.into(),
    }
}

fn number(line: usize, s: &str) -> Result<usize, AutomataError> {
    s.parse()
        .map_err(|_| err(line, format!("expected a number, found `{s}`")))
}

pub fn parse_dfa(text: &str) -> Result<Dfa, AutomataError> {
    let mut alphabet: Option<Alphabet> = None;
    let mut states: Option<usize> = None;
    let mut start: Option<usize> = None;
    let mut accept: Vec<usize> = Vec::new();
    let mut trans: Vec<(usize, usize, String, usize)> = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        let (key, rest) = content
            .split_once(':')
            .ok_or_else(|| err(line, "expected `key: value`"))?;
        let rest = rest.trim();
        match key.trim() {
            "alphabet" => {
                alphabet = Some(
                    Alphabet::from_symbols(rest.split_whitespace())
                        .map_err(|e| err(line, e.to_string()))?,
                )
            }
            "states" => states = Some(number(line, rest)?),
            "start" => start = Some(number(line, rest)?),
            "accept" => {
                for s in rest.split_whitespace() {
                    accept.push(number(line, s)?);
                }
            }
            "trans" => {
                let parts: Vec<&str> = rest.split_whitespace().collect();
                let [from, letter, to] = parts[..] else {
                    return Err(err(line, "expected `trans: <from> <letter> <to>`"));
                };
                trans.push((
                    line,
                    number(line, from)?,
                    letter.to_string(),
                    number(line, to)?,
                ));
            }
            other => return Err(err(line, format!("unknown key `{other}`"))),
        }
    }
    let alphabet = alphabet.ok_or_else(|| err(0, "missing `alphabet:`"))?;
    let n = states.ok_or_else(|| err(0, "missing `states:`"))?;
    let start = start.ok_or_else(|| err(0, "missing `start:`"))?;
    if n == 0 || start >= n {
        return Err(err(0, "start state out of range"));
    }
    let k = alphabet.len();
    let mut table = vec![u32::MAX; n * k];
    for (line, from, letter, to) in trans {
        let l = alphabet
            .letter(&letter)
            .ok_or_else(|| err(line, format!("unknown letter `{letter}`")))?;
        if from >= n || to >= n {
            return Err(err(line, "state out of range"));
        }
        let slot = &mut table[from * k + l.index()];
        if *slot != u32::MAX && *slot != to as u32 {
            return Err(err(line, "conflicting transition"));
        }
        *slot = to as u32;
    }
    if let Some(i) = table.iter().position(|&t| t == u32::MAX) {
        return Err(err(
            0,
            format!(
                "transition from state {} on `{}` missing",
                i / k,
                alphabet.name(crate::word::Letter((i % k) as u16))
            ),
        ));
    }
    let mut acc = vec![false; n];
    for q in accept {
        if q >= n {
            return Err(err(0, "accepting state out of range"));
        }
        acc[q] = true;
    }
    Ok(Dfa {
        alphabet,
        trans: table,
        start: start as u32,
        accept: acc,
    })
}

pub fn write_dfa(d: &Dfa) -> String {
    let mut s = String::new();
    writeln!(s, "alphabet: {}", d.alphabet).unwrap();
    writeln!(s, "states: {}", d.num_states()).unwrap();
    writeln!(s, "start: {}", d.start).unwrap();
    let acc: Vec<String> = (0..d.num_states())
        .filter(|&q| d.accept[q])
        .map(|q| q.to_string())
        .collect();
    writeln!(s, "accept: {}", acc.join(" ")).unwrap();
    for q in 0..d.num_states() {
        for l in d.alphabet.letters() {
            writeln!(
                s,
                "trans: {q} {} {}",
                d.alphabet.name(l),
                d.next(q as u32, l)
            )
            .unwrap();
        }
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "alphabet: a b\nstates: 2\nstart: 0\naccept: 1\n\
                    trans: 0 a 1\ntrans: 0 b 0\ntrans: 1 a 1\ntrans: 1 b 0\n";
        let d = parse_dfa(text).unwrap();
        assert_eq!(write_dfa(&d), text);
        assert!(d.accepts(&d.alphabet.parse_word("ba").unwrap()));
    }

    #[test]
    fn partial_table_is_rejected() {
        let text = "alphabet: a b\nstates: 1\nstart: 0\naccept:\ntrans: 0 a 0\n";
        assert!(matches!(parse_dfa(text), Err(AutomataError::Format { .. })));
    }

    #[test]
    fn pair_letters() {
        let text = "alphabet: a|a a|$ $|a\nstates: 1\nstart: 0\naccept: 0\n\
                    trans: 0 a|a 0\ntrans: 0 a|$ 0\ntrans: 0 $|a 0\n";
        assert_eq!(parse_dfa(text).unwrap().alphabet.len(), 3);
    }
}
