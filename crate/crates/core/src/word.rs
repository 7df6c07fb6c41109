//! Letters, alphabets and words.
//!
//! A [`Letter`] is an index into an [`Alphabet`]; the alphabet owns the
//! printable names. Words are plain letter sequences and know nothing about
//! names, so rendering and parsing always go through the alphabet.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

/// Characters that can never appear inside a letter name.
pub const RESERVED_CHARS: &[char] = &[
    '^', '(', ')', '+', ',', ':', '|', '#', '$', '[', ']', '*', '?', '&', '!', '.', '<', '>', '-',
    '=', ';', '{', '}', '"',
];

/// Tokens reserved by the text formats.
pub const RESERVED_TOKENS: &[&str] = &["ε", "∅", "where", "nat", "word"];

/// The pad symbol used by padded convolutions.
pub const PAD: &str = "$";

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WordError {
    #[error("invalid letter name `{0}`")]
    InvalidName(String),
    #[error("duplicate letter `{0}`")]
    Duplicate(String),
    #[error("unknown letter `{0}`")]
    UnknownLetter(String),
}

/// A letter, i.e. an index into some [`Alphabet`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Letter(pub u16);

impl Letter {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// An ordered list of uniquely named letters.
#[derive(Debug, Clone, Default)]
pub struct Alphabet {
    names: Vec<String>,
    lookup: HashMap<String, Letter>,
}

impl PartialEq for Alphabet {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names
    }
}

impl Eq for Alphabet {}

pub fn is_valid_letter_name(name: &str) -> bool {
    !name.is_empty()
        && !name
            .chars()
            .any(|c| c.is_whitespace() || RESERVED_CHARS.contains(&c))
        && !name.chars().all(|c| c.is_ascii_digit())
        && !RESERVED_TOKENS.contains(&name)
}

impl Alphabet {
    /// Builds an alphabet of presentation letters, validating every name.
    pub fn new<I, S>(names: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alphabet = Alphabet::default();
        for name in names {
            let name = name.into();
            if !is_valid_letter_name(&name) {
                return Err(WordError::InvalidName(name));
            }
            alphabet.push_unchecked(name)?;
        }
        Ok(alphabet)
    }

    /// Builds an alphabet of arbitrary non-whitespace symbols (pair
    /// alphabets, automaton files). Only uniqueness is enforced.
    pub fn from_symbols<I, S>(names: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut alphabet = Alphabet::default();
        for name in names {
            let name = name.into();
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(WordError::InvalidName(name));
            }
            alphabet.push_unchecked(name)?;
        }
        Ok(alphabet)
    }

    fn push_unchecked(&mut self, name: String) -> Result<Letter, WordError> {
        if self.lookup.contains_key(&name) {
            return Err(WordError::Duplicate(name));
        }
        let letter = Letter(self.names.len() as u16);
        self.lookup.insert(name.clone(), letter);
        self.names.push(name);
        Ok(letter)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn letter(&self, name: &str) -> Option<Letter> {
        self.lookup.get(name).copied()
    }

    pub fn name(&self, letter: Letter) -> &str {
        &self.names[letter.index()]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn letters(&self) -> impl Iterator<Item = Letter> + '_ {
        (0..self.names.len()).map(|i| Letter(i as u16))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.lookup.contains_key(name)
    }

    fn single_char(&self) -> bool {
        self.names.iter().all(|n| n.chars().count() == 1)
    }

    /// Renders a word: letters are concatenated when every name is a single
    /// character, space separated otherwise; the empty word prints as `ε`.
    pub fn show(&self, word: &[Letter]) -> String {
        if word.is_empty() {
            return "ε".to_string();
        }
        let sep = if self.single_char() { "" } else { " " };
        word.iter()
            .map(|&l| self.name(l))
            .collect::<Vec<_>>()
            .join(sep)
    }

    /// Parses a word. Whitespace separated tokens are looked up one by one;
    /// an unseparated run is split greedily by longest matching name.
    pub fn parse_word(&self, text: &str) -> Result<Word, WordError> {
        let text = text.trim();
        if text.is_empty() || text == "ε" {
            return Ok(Word::empty());
        }
        let mut letters = Vec::new();
        for token in text.split_whitespace() {
            if token == "ε" {
                continue;
            }
            if let Some(l) = self.letter(token) {
                letters.push(l);
                continue;
            }
            self.split_greedy(token, &mut letters)?;
        }
        Ok(Word(letters))
    }

    fn split_greedy(&self, token: &str, out: &mut Vec<Letter>) -> Result<(), WordError> {
        let mut rest = token;
        while !rest.is_empty() {
            let best = self
                .names
                .iter()
                .enumerate()
                .filter(|(_, n)| rest.starts_with(n.as_str()))
                .max_by_key(|(_, n)| n.len());
            match best {
                Some((i, n)) => {
                    out.push(Letter(i as u16));
                    rest = &rest[n.len()..];
                }
                None => {
                    let bad: String = rest.chars().take_while(|c| !c.is_whitespace()).collect();
                    return Err(WordError::UnknownLetter(if rest.len() == token.len() {
                        token.to_string()
                    } else {
                        bad
                    }));
                }
            }
        }
        Ok(())
    }

    /// Maps a word over `other` into this alphabet by letter name.
    pub fn translate(&self, other: &Alphabet, word: &[Letter]) -> Option<Word> {
        word.iter()
            .map(|&l| self.letter(other.name(l)))
            .collect::<Option<Vec<_>>>()
            .map(Word)
    }

    /// All words of exactly `len` letters in shortlex order.
    pub fn words_of_length(&self, len: usize) -> WordsOfLength {
        WordsOfLength::new(self.len(), len)
    }

    /// All words of length at most `max`, shortest first.
    pub fn words_up_to(&self, max: usize) -> impl Iterator<Item = Word> + '_ {
        (0..=max).flat_map(move |n| self.words_of_length(n))
    }
}

impl fmt::Display for Alphabet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.names.join(" "))
    }
}

/// Odometer over all words of a fixed length.
pub struct WordsOfLength {
    size: usize,
    current: Option<Vec<u16>>,
}

impl WordsOfLength {
    fn new(size: usize, len: usize) -> Self {
        let current = if size == 0 && len > 0 {
            None
        } else {
            Some(vec![0; len])
        };
        WordsOfLength { size, current }
    }
}

impl Iterator for WordsOfLength {
    type Item = Word;

    fn next(&mut self) -> Option<Word> {
        let cur = self.current.as_mut()?;
        let out = Word(cur.iter().map(|&i| Letter(i)).collect());
        let mut i = cur.len();
        loop {
            if i == 0 {
                self.current = None;
                break;
            }
            i -= 1;
            cur[i] += 1;
            if (cur[i] as usize) < self.size {
                break;
            }
            cur[i] = 0;
        }
        Some(out)
    }
}

/// A finite sequence of letters. Ordered shortlex.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn from_letters(letters: &[Letter]) -> Self {
        Word(letters.to_vec())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &[Letter]) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(other);
        Word(v)
    }

    pub fn reversed(&self) -> Word {
        Word(self.0.iter().rev().copied().collect())
    }

    pub fn count(&self, letter: Letter) -> usize {
        self.0.iter().filter(|&&l| l == letter).count()
    }

    /// Replaces `len` letters at `pos` by `with`.
    pub fn splice(&self, pos: usize, len: usize, with: &[Letter]) -> Word {
        let mut v = Vec::with_capacity(self.len() + with.len() - len.min(with.len()));
        v.extend_from_slice(&self.0[..pos]);
        v.extend_from_slice(with);
        v.extend_from_slice(&self.0[pos + len..]);
        Word(v)
    }

    pub fn repeat(&self, times: usize) -> Word {
        Word(self.0.repeat(times))
    }

    /// Positions where `factor` occurs.
    pub fn occurrences<'a>(&'a self, factor: &'a [Letter]) -> impl Iterator<Item = usize> + 'a {
        let n = factor.len();
        (0..=self.len().saturating_sub(n))
            .filter(move |&p| p + n <= self.len() && &self.0[p..p + n] == factor)
    }

    pub fn contains_factor(&self, factor: &[Letter]) -> bool {
        self.occurrences(factor).next().is_some()
    }
}

impl std::ops::Deref for Word {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for Word {
    fn from(v: Vec<Letter>) -> Self {
        Word(v)
    }
}

impl FromIterator<Letter> for Word {
    fn from_iter<T: IntoIterator<Item = Letter>>(iter: T) -> Self {
        Word(iter.into_iter().collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
