//! The pumping argument against a left-multiplier structure for the
//! nine-rule system: `c·aⁿbⁿ⁺¹ = c·bⁿaⁿb`, yet after pumping both
//! prefixes by `2k` letters the normal forms disagree.

use thiserror::Error;

use crate::oracle::{Oracle, OracleError};
use crate::presentation::Presentation;
use crate::rewrite::{RewriteError, RewriteSystem, DEFAULT_FUEL};
use crate::word::{Letter, Word};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WitnessError {
    #[error("n must be even")]
    OddN,
    #[error("presentation has no letter `{0}`")]
    MissingLetter(&'static str),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RefutationWitness {
    pub n: usize,
    pub k: usize,
    /// `(c aⁿ bⁿ⁺¹, c bⁿ aⁿ b)`.
    pub base: (Word, Word),
    pub base_equal: bool,
    /// `(c aⁿ⁺²ᵏ bⁿ⁺¹, c bⁿ⁺²ᵏ aⁿ b)`.
    pub pumped: (Word, Word),
    pub pumped_normal_forms: (Word, Word),
    /// `((ca)^(n/2+k) (cb)^(n/2+1), (ca)^(n/2) (cb)^(n/2+k+1))`.
    pub predicted: (Word, Word),
}

impl RefutationWitness {
    /// The base pair is equal, the pumped pair is not, and the normal
    /// forms match the closed formulas.
    pub fn verified(&self) -> bool {
        self.base_equal
            && self.pumped_normal_forms.0 != self.pumped_normal_forms.1
            && self.pumped_normal_forms == self.predicted
    }

    pub fn lines(&self, p: &Presentation) -> Vec<String> {
        vec![
            format!(
                "{} = {}: {}",
                p.show(&self.base.0),
                p.show(&self.base.1),
                self.base_equal
            ),
            format!(
                "nf({}) = {}",
                p.show(&self.pumped.0),
                p.show(&self.pumped_normal_forms.0)
            ),
            format!(
                "nf({}) = {}",
                p.show(&self.pumped.1),
                p.show(&self.pumped_normal_forms.1)
            ),
            format!(
                "refutation witness {}",
                if self.verified() {
                    "verified"
                } else {
                    "FAILED"
                }
            ),
        ]
    }
}

fn run(l: Letter, n: usize) -> Vec<Letter> {
    vec![l; n]
}

/// Computes the witness on `p`, which must be a complete presentation
/// over letters named `a`, `b`, `c`.
pub fn refutation_witness(
    p: &Presentation,
    n: usize,
    k: usize,
) -> Result<RefutationWitness, WitnessError> {
    if !n.is_multiple_of(2) {
        return Err(WitnessError::OddN);
    }
    let letter = |name: &'static str| {
        p.alphabet
            .letter(name)
            .ok_or(WitnessError::MissingLetter(name))
    };
    let (a, b, c) = (letter("a")?, letter("b")?, letter("c")?);
    let word = |parts: &[Vec<Letter>]| Word(parts.concat());
    let blocks = |x: Letter, times: usize| -> Vec<Letter> { [c, x].repeat(times) };

    let base = (
        word(&[vec![c], run(a, n), run(b, n + 1)]),
        word(&[vec![c], run(b, n), run(a, n), vec![b]]),
    );
    let oracle = Oracle::new(p.clone())?;
    let base_equal = oracle.are_equal(&base.0, &base.1)?;

    let m = n + 2 * k;
    let pumped = (
        word(&[vec![c], run(a, m), run(b, n + 1)]),
        word(&[vec![c], run(b, m), run(a, n), vec![b]]),
    );
    let sys = RewriteSystem::from_plain(p)?;
    let pumped_normal_forms = (
        sys.normalize(&pumped.0, DEFAULT_FUEL)?.word,
        sys.normalize(&pumped.1, DEFAULT_FUEL)?.word,
    );
    let predicted = (
        word(&[blocks(a, n / 2 + k), blocks(b, n / 2 + 1)]),
        word(&[blocks(a, n / 2), blocks(b, n / 2 + k + 1)]),
    );
    Ok(RefutationWitness {
        n,
        k,
        base,
        base_equal,
        pumped,
        pumped_normal_forms,
        predicted,
    })
}
