use std::collections::{HashMap, HashSet, VecDeque};

use rayon::prelude::*;

use super::{map_scheme, ConstructError};
use crate::oracle::Oracle;
use crate::presentation::{Presentation, RuleScheme};
use crate::rewrite::{critical_pairs, CriticalPair, RewriteSystem};
use crate::word::{Alphabet, Letter, Word};

/// A monoid morphism from `A*` into `{x, y}*`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PhiMap {
    pub source: Alphabet,
    pub target: Alphabet,
    pub images: Vec<Word>,
}

impl PhiMap {
    /// `aᵢ ↦ x x yⁱ x yⁿ⁺¹⁻ⁱ` for the `n` letters of `source`, numbered from 1.
    pub fn new(source: &Alphabet) -> Self {
        let target = Alphabet::new(["x", "y"]).expect("valid names");
        let (x, y) = (Letter(0), Letter(1));
        let n = source.len();
        let images = (1..=n)
            .map(|i| {
                let mut w = vec![x, x];
                w.extend(std::iter::repeat_n(y, i));
                w.push(x);
                w.extend(std::iter::repeat_n(y, n + 1 - i));
                Word(w)
            })
            .collect();
        PhiMap {
            source: source.clone(),
            target,
            images,
        }
    }

    /// Arbitrary images over `{x, y}`, unchecked. Useful for testing that
    /// a bad map is caught.
    pub fn with_images(source: &Alphabet, images: Vec<Word>) -> Self {
        PhiMap {
            source: source.clone(),
            target: Alphabet::new(["x", "y"]).expect("valid names"),
            images,
        }
    }

    pub fn image(&self, a: Letter) -> &Word {
        &self.images[a.index()]
    }

    pub fn apply(&self, w: &[Letter]) -> Word {
        w.iter()
            .flat_map(|&a| self.images[a.index()].iter().copied())
            .collect()
    }

    /// The letter whose image occurs in `w` at `pos`, first in table order.
    fn image_at(&self, w: &[Letter], pos: usize) -> Option<Letter> {
        self.images
            .iter()
            .position(|img| !img.is_empty() && w[pos..].starts_with(img))
            .map(|i| Letter(i as u16))
    }
}

/// `Rφ`: every relation mapped letter-wise through `φ`.
pub fn phi_presentation(p: &Presentation) -> Result<(PhiMap, Presentation), ConstructError> {
    let phi = PhiMap::new(&p.alphabet);
    let q = phi_presentation_with(p, &phi)?;
    Ok((phi, q))
}

fn phi_presentation_with(p: &Presentation, phi: &PhiMap) -> Result<Presentation, ConstructError> {
    let f = |l: Letter| phi.image(l).0.clone();
    let schemes = p
        .schemes
        .iter()
        .enumerate()
        .map(|(i, s)| map_scheme(s, &f).ok_or(ConstructError::UnsupportedScheme(i)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Presentation::new(phi.target.clone(), schemes))
}

/// `w = z₀ u₁ z₁ ⋯ u_m z_m` with each `uᵢ` a maximal run of images.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeDecomposition {
    /// `z₀ … z_m`.
    pub gaps: Vec<Word>,
    /// `u₁ … u_m`.
    pub blocks: Vec<Word>,
    /// Preimage of each block.
    pub decoded: Vec<Word>,
}

impl CodeDecomposition {
    pub fn recombine(&self) -> Word {
        let mut out = self.gaps[0].clone();
        for (u, z) in self.blocks.iter().zip(&self.gaps[1..]) {
            out = out.concat(u).concat(z);
        }
        out
    }

    /// The preimage when the word lies in `A*φ`.
    pub fn preimage(&self) -> Option<Word> {
        match (&self.gaps[..], &self.decoded[..]) {
            ([z], []) if z.is_empty() => Some(Word::empty()),
            ([z0, z1], [d]) if z0.is_empty() && z1.is_empty() => Some(d.clone()),
            _ => None,
        }
    }
}

/// Scans for images left to right and extends each hit into a maximal
/// run. Images of the standard map start with the only `xx` they
/// contain, so every occurrence is aligned with this scan.
pub fn code_decompose(w: &[Letter], phi: &PhiMap) -> CodeDecomposition {
    let mut gaps = Vec::new();
    let mut blocks = Vec::new();
    let mut decoded = Vec::new();
    let (mut gap_start, mut i) = (0, 0);
    while i < w.len() {
        let Some(first) = phi.image_at(w, i) else {
            i += 1;
            continue;
        };
        let mut letters = vec![first];
        let mut j = i + phi.image(first).len();
        while let Some(next) = (j < w.len()).then(|| phi.image_at(w, j)).flatten() {
            letters.push(next);
            j += phi.image(next).len();
        }
        gaps.push(Word::from_letters(&w[gap_start..i]));
        blocks.push(Word::from_letters(&w[i..j]));
        decoded.push(Word(letters));
        gap_start = j;
        i = j;
    }
    gaps.push(Word::from_letters(&w[gap_start..]));
    CodeDecomposition {
        gaps,
        blocks,
        decoded,
    }
}

/// `⟨x, y, B | Q, (aφ, a) for a ∈ A⟩` where `φ` is defined on `A ⊆ B`.
pub fn combined_presentation(
    q: &Presentation,
    phi: &PhiMap,
) -> Result<Presentation, ConstructError> {
    for name in q.alphabet.names() {
        if phi.target.contains(name) {
            return Err(ConstructError::AlphabetClash(name.clone()));
        }
    }
    let embedded = phi
        .source
        .names()
        .iter()
        .map(|n| {
            q.alphabet
                .letter(n)
                .ok_or_else(|| ConstructError::NotSubset(n.clone()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    let offset = phi.target.len() as u16;
    let alphabet = Alphabet::new(phi.target.names().iter().chain(q.alphabet.names()).cloned())
        .expect("disjoint valid names");
    let shift = |l: Letter| vec![Letter(l.0 + offset)];
    let mut schemes: Vec<RuleScheme> = q
        .schemes
        .iter()
        .enumerate()
        .map(|(i, s)| map_scheme(s, &shift).ok_or(ConstructError::UnsupportedScheme(i)))
        .collect::<Result<_, _>>()?;
    for (img, b) in phi.images.iter().zip(embedded) {
        schemes.push(RuleScheme::plain(img, &Word(vec![Letter(b.0 + offset)])));
    }
    Ok(Presentation::new(alphabet, schemes))
}

/// Critical pairs among the rules `aφ → a` alone.
pub fn e_rule_critical_pairs(phi: &PhiMap) -> Vec<CriticalPair> {
    // Source names are bracketed so they cannot collide with `x` and `y`.
    let names = phi
        .target
        .names()
        .iter()
        .cloned()
        .chain(phi.source.names().iter().map(|n| format!("[{n}]")));
    let alphabet = Alphabet::from_symbols(names).expect("distinct symbols");
    let offset = phi.target.len() as u16;
    let pairs: Vec<(Word, Word)> = phi
        .images
        .iter()
        .enumerate()
        .map(|(i, img)| (img.clone(), Word(vec![Letter(offset + i as u16)])))
        .collect();
    critical_pairs(&RewriteSystem::from_pairs(alphabet, &pairs))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QuasiCommutation {
    /// Words of the combined presentation examined.
    pub words: usize,
    /// Two-step sequences `w →Q w′ →E w″` found.
    pub peaks: usize,
    /// Start words of sequences that could not be reordered.
    pub failures: Vec<Word>,
}

impl QuasiCommutation {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Everything reachable from `w` by forward rewriting, `w` included.
fn descendants(sys: &RewriteSystem, w: &Word) -> HashSet<Word> {
    let mut seen = HashSet::from([w.clone()]);
    let mut queue = VecDeque::from([w.clone()]);
    while let Some(u) = queue.pop_front() {
        for (_, _, v) in sys.all_steps(&u) {
            if seen.insert(v.clone()) {
                queue.push_back(v);
            }
        }
    }
    seen
}

/// Checks on every word up to `maxlen` of the combined presentation that
/// a `Q`-step followed by an `E`-step can be replaced by an `E`-step
/// followed by `(Q ∪ E)`-steps.
pub fn quasi_commutation(
    q: &Presentation,
    phi: &PhiMap,
    maxlen: usize,
) -> Result<QuasiCommutation, ConstructError> {
    let combined = combined_presentation(q, phi)?;
    let sys = RewriteSystem::from_presentation(&combined, maxlen);
    let q_rules = q.schemes.len();
    let is_e = |rule: usize| sys.rules[rule].origin.scheme >= q_rules;
    let words: Vec<Word> = combined.alphabet.words_up_to(maxlen).collect();
    let results: Vec<(usize, Option<Word>)> = words
        .par_iter()
        .map(|w| {
            let steps = sys.all_steps(w);
            let mut peaks = 0;
            let mut reachable: Option<HashSet<Word>> = None;
            for (_, _, w1) in steps.iter().filter(|(_, r, _)| !is_e(*r)) {
                for (_, _, w2) in sys.all_steps(w1).into_iter().filter(|(_, r, _)| is_e(*r)) {
                    peaks += 1;
                    let reach = reachable.get_or_insert_with(|| {
                        steps
                            .iter()
                            .filter(|(_, r, _)| is_e(*r))
                            .flat_map(|(_, _, v)| descendants(&sys, v))
                            .collect()
                    });
                    if !reach.contains(&w2) {
                        return (peaks, Some(w.clone()));
                    }
                }
            }
            (peaks, None)
        })
        .collect();
    Ok(QuasiCommutation {
        words: words.len(),
        peaks: results.iter().map(|(p, _)| p).sum(),
        failures: results.into_iter().filter_map(|(_, f)| f).collect(),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EmbeddingViolation {
    /// `u = v` but `uφ ≠ vφ`.
    Split { u: Word, v: Word },
    /// `u ≠ v` but `uφ = vφ`.
    Identified { u: Word, v: Word },
    /// A word equal to `uφ` that is not the image of any word.
    OutsideImage { u: Word, word: Word },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EmbeddingReport {
    pub maxlen: usize,
    pub classes_checked: usize,
    pub violations: Vec<EmbeddingViolation>,
}

impl EmbeddingReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn lines(&self, source: &Alphabet, target: &Alphabet) -> Vec<String> {
        let mut out = vec![format!(
            "embedding: {} classes up to length {} checked",
            self.classes_checked, self.maxlen
        )];
        for v in &self.violations {
            out.push(match v {
                EmbeddingViolation::Split { u, v } => {
                    format!(
                        "violation: {} = {} but images differ",
                        source.show(u),
                        source.show(v)
                    )
                }
                EmbeddingViolation::Identified { u, v } => {
                    format!(
                        "violation: {} ≠ {} but images are equal",
                        source.show(u),
                        source.show(v)
                    )
                }
                EmbeddingViolation::OutsideImage { u, word } => format!(
                    "violation: image of {} equals {} outside the image",
                    source.show(u),
                    target.show(word)
                ),
            });
        }
        out.push(format!(
            "result: {}",
            if self.passed() { "pass" } else { "FAIL" }
        ));
        out
    }
}

/// Checks that the standard `φ` preserves and reflects equality on words
/// up to `maxlen`, and that images are closed under equality.
pub fn verify_embedding(
    p: &Presentation,
    maxlen: usize,
) -> Result<EmbeddingReport, ConstructError> {
    verify_embedding_with(p, &PhiMap::new(&p.alphabet), maxlen)
}

pub fn verify_embedding_with(
    p: &Presentation,
    phi: &PhiMap,
    maxlen: usize,
) -> Result<EmbeddingReport, ConstructError> {
    let source = Oracle::new(p.clone())?;
    let target = Oracle::new(phi_presentation_with(p, phi)?)?;
    let mut violations = Vec::new();
    let mut classes_checked = 0;
    // Image class representative ↦ source class representative.
    let mut owner: HashMap<Word, Word> = HashMap::new();
    for n in 0..=maxlen {
        for c in source.classes_of_length(n)? {
            classes_checked += 1;
            let u = c.representative();
            let image = target.congruence_class(&phi.apply(u))?;
            if let Some(prev) = owner.insert(image.representative().clone(), u.clone()) {
                violations.push(EmbeddingViolation::Identified {
                    u: prev,
                    v: u.clone(),
                });
            }
            for m in &c.members {
                if !image.contains(&phi.apply(m)) {
                    violations.push(EmbeddingViolation::Split {
                        u: u.clone(),
                        v: m.clone(),
                    });
                }
            }
            for w in &image.members {
                match code_decompose(w, phi).preimage() {
                    None => violations.push(EmbeddingViolation::OutsideImage {
                        u: u.clone(),
                        word: w.clone(),
                    }),
                    Some(d) if !c.contains(&d) => {
                        violations.push(EmbeddingViolation::Identified { u: u.clone(), v: d })
                    }
                    Some(_) => {}
                }
            }
        }
    }
    violations.dedup();
    Ok(EmbeddingReport {
        maxlen,
        classes_checked,
        violations,
    })
}
