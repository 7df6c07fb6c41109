//! Presentation-level constructions: free products, n-ary extensions and
//! the two-letter embedding.

mod phi;

use std::collections::HashSet;

use thiserror::Error;

use crate::oracle::{Oracle, OracleError};
use crate::presentation::{Atom, Presentation, RuleScheme, VarDecl, VarKind};
use crate::word::{Alphabet, Letter, Word};

pub use phi::{
    code_decompose, combined_presentation, e_rule_critical_pairs, phi_presentation,
    quasi_commutation, verify_embedding, verify_embedding_with, CodeDecomposition, EmbeddingReport,
    EmbeddingViolation, PhiMap, QuasiCommutation,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstructError {
    #[error("n = {n} is shorter than the longest rule side ({needed})")]
    NTooSmall { n: usize, needed: usize },
    #[error("presentation has rule schemes with variables")]
    NotPlain,
    #[error("presentation is not homogeneous")]
    NotHomogeneous,
    #[error("scheme {0} has a power with a variable exponent on a multi-letter image")]
    UnsupportedScheme(usize),
    #[error("letter `{0}` of the embedded alphabet is missing from the presentation")]
    NotSubset(String),
    #[error("letter `{0}` clashes with the two-letter target alphabet")]
    AlphabetClash(String),
    #[error(transparent)]
    Oracle(#[from] OracleError),
}

/// Rewrites every letter of a scheme through `f`. Fails on a power with
/// variable exponent whose image is not a single letter.
pub(crate) fn map_scheme(
    scheme: &RuleScheme,
    f: &dyn Fn(Letter) -> Vec<Letter>,
) -> Option<RuleScheme> {
    let side = |atoms: &[Atom]| -> Option<Vec<Atom>> {
        let mut out = Vec::new();
        for atom in atoms {
            match atom {
                Atom::Letter(l) => out.extend(f(*l).into_iter().map(Atom::Letter)),
                Atom::Power(l, e) => {
                    let image = f(*l);
                    if e.vars.is_empty() {
                        for _ in 0..e.constant {
                            out.extend(image.iter().copied().map(Atom::Letter));
                        }
                    } else if let [single] = image[..] {
                        out.push(Atom::Power(single, e.clone()));
                    } else {
                        return None;
                    }
                }
                Atom::Var(v) => out.push(Atom::Var(v.clone())),
            }
        }
        Some(out)
    };
    let vars = scheme
        .vars
        .iter()
        .map(|d| VarDecl {
            name: d.name.clone(),
            kind: match &d.kind {
                VarKind::Nat => VarKind::Nat,
                VarKind::Word(gens) => VarKind::Word(
                    gens.iter()
                        .map(|g| g.iter().flat_map(|&l| f(l)).collect())
                        .collect(),
                ),
            },
        })
        .collect();
    Some(RuleScheme {
        lhs: side(&scheme.lhs)?,
        rhs: side(&scheme.rhs)?,
        vars,
    })
}

/// A letter of the second operand renamed to avoid a clash.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rename {
    pub from: String,
    pub to: String,
}

/// `⟨A₁ ∪ A₂ | R₁ ∪ R₂⟩`. Letters of `p2` whose names occur in `p1` get
/// primes appended until the name is fresh.
pub fn free_product(p1: &Presentation, p2: &Presentation) -> (Presentation, Vec<Rename>) {
    let mut names: Vec<String> = p1.alphabet.names().to_vec();
    let mut taken: HashSet<String> = names.iter().cloned().collect();
    taken.extend(p2.alphabet.names().iter().cloned());
    let mut renames = Vec::new();
    let offset = names.len() as u16;
    for name in p2.alphabet.names() {
        if p1.alphabet.contains(name) {
            let mut fresh = format!("{name}'");
            while taken.contains(&fresh) {
                fresh.push('\'');
            }
            taken.insert(fresh.clone());
            renames.push(Rename {
                from: name.clone(),
                to: fresh.clone(),
            });
            names.push(fresh);
        } else {
            names.push(name.clone());
        }
    }
    let alphabet = Alphabet::new(names).expect("primed names are valid and fresh");
    let mut schemes = p1.schemes.clone();
    let shift = |l: Letter| vec![Letter(l.0 + offset)];
    schemes.extend(
        p2.schemes
            .iter()
            .map(|s| map_scheme(s, &shift).expect("single-letter images")),
    );
    (Presentation::new(alphabet, schemes), renames)
}

/// `R′ = {(u l v, u r v) : (l, r) ∈ R, |u l v| = n}`: every relation padded
/// on both sides up to length exactly `n`.
pub fn nary_extension(p: &Presentation, n: usize) -> Result<Presentation, ConstructError> {
    let rules = p.plain_rules().ok_or(ConstructError::NotPlain)?;
    if !p.classify().homogeneous {
        return Err(ConstructError::NotHomogeneous);
    }
    let needed = rules.iter().map(|(l, _)| l.len()).max().unwrap_or(0);
    if n < needed {
        return Err(ConstructError::NTooSmall { n, needed });
    }
    let a = &p.alphabet;
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (l, r) in &rules {
        let pad = n - l.len();
        for left in (0..=pad).rev() {
            for u in a.words_of_length(left) {
                for v in a.words_of_length(pad - left) {
                    let lhs = u.concat(l).concat(&v);
                    let rhs = u.concat(r).concat(&v);
                    if seen.insert((lhs.clone(), rhs.clone())) {
                        out.push((lhs, rhs));
                    }
                }
            }
        }
    }
    Ok(Presentation::from_rules(a.clone(), &out))
}

/// A pair of words equal under one presentation but not the other.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EqualityMismatch {
    pub u: Word,
    pub v: Word,
    pub equal_in_first: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CorrespondenceReport {
    /// `(length, number of classes)` for each compared length.
    pub lengths: Vec<(usize, usize)>,
    pub mismatch: Option<EqualityMismatch>,
}

impl CorrespondenceReport {
    pub fn holds(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Compares the congruences of two presentations over the same alphabet
/// on every word of length `from..=to`.
pub fn compare_congruences(
    p1: &Presentation,
    p2: &Presentation,
    from: usize,
    to: usize,
) -> Result<CorrespondenceReport, ConstructError> {
    let (o1, o2) = (Oracle::new(p1.clone())?, Oracle::new(p2.clone())?);
    let mut lengths = Vec::new();
    for len in from..=to {
        let classes = o1.classes_of_length(len)?;
        lengths.push((len, classes.len()));
        for c in classes {
            let other = o2.congruence_class(c.representative())?;
            if other.members == c.members {
                continue;
            }
            let mismatch = match c.members.iter().find(|m| !other.contains(m)) {
                Some(m) => EqualityMismatch {
                    u: c.representative().clone(),
                    v: m.clone(),
                    equal_in_first: true,
                },
                None => EqualityMismatch {
                    u: c.representative().clone(),
                    v: other
                        .members
                        .iter()
                        .find(|m| !c.contains(m))
                        .cloned()
                        .expect("differs"),
                    equal_in_first: false,
                },
            };
            return Ok(CorrespondenceReport {
                lengths,
                mismatch: Some(mismatch),
            });
        }
    }
    Ok(CorrespondenceReport {
        lengths,
        mismatch: None,
    })
}

/// Builds the n-ary extension and checks that it has the same congruence
/// as `p` on lengths `n..=n+3`.
pub fn ideal_correspondence(
    p: &Presentation,
    n: usize,
) -> Result<(Presentation, CorrespondenceReport), ConstructError> {
    let ext = nary_extension(p, n)?;
    let report = compare_congruences(p, &ext, n, n + 3)?;
    Ok((ext, report))
}

/// Truncated inverse of a power series with constant term 1.
fn invert_series(g: &[usize]) -> Vec<i128> {
    let mut inv = vec![0i128; g.len()];
    if g.is_empty() {
        return inv;
    }
    inv[0] = 1;
    for k in 1..g.len() {
        inv[k] = -(1..=k).map(|i| g[i] as i128 * inv[k - i]).sum::<i128>();
    }
    inv
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GrowthCheck {
    pub first: Vec<usize>,
    pub second: Vec<usize>,
    pub product: Vec<usize>,
}

impl GrowthCheck {
    /// `1/G∗ = 1/G₁ + 1/G₂ − 1` up to the computed degree.
    pub fn holds(&self) -> bool {
        let (i1, i2, ip) = (
            invert_series(&self.first),
            invert_series(&self.second),
            invert_series(&self.product),
        );
        (0..ip.len()).all(|k| ip[k] == i1[k] + i2[k] - i128::from(k == 0))
    }
}

/// Growth series of both factors and of their free product, by oracle.
pub fn free_product_growth(
    p1: &Presentation,
    p2: &Presentation,
    maxlen: usize,
) -> Result<GrowthCheck, ConstructError> {
    let (prod, _) = free_product(p1, p2);
    Ok(GrowthCheck {
        first: Oracle::new(p1.clone())?.growth_series(maxlen)?,
        second: Oracle::new(p2.clone())?.growth_series(maxlen)?,
        product: Oracle::new(prod)?.growth_series(maxlen)?,
    })
}
