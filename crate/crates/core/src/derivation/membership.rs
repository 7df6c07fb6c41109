use std::collections::HashMap;

use num::{BigRational, One, Zero};

use super::{DerivationError, FreeRingElement};
use crate::word::{Letter, Word};

/// Outcome of a membership test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Membership {
    /// `target = Σ qᵢ αᵢ (ab − bb) vᵢ` with these `(αᵢ, vᵢ, qᵢ)`.
    Feasible(Vec<(Word, Word, BigRational)>),
    Infeasible,
}

impl Membership {
    pub fn is_feasible(&self) -> bool {
        matches!(self, Membership::Feasible(_))
    }
}

/// All words of length `n` over `letters`.
fn words(letters: &[Letter], n: usize) -> Vec<Word> {
    let mut out = vec![Word::empty()];
    for _ in 0..n {
        out = out
            .iter()
            .flat_map(|w| letters.iter().map(move |&l| w.concat(&[l])))
            .collect();
    }
    out
}

/// Decides whether `target`, homogeneous of `degree`, is a rational
/// combination of `α (x y − y y) v` with `|v| ≤ bound_v` and
/// `|α| + 2 + |v| = degree`, where `(x, y) = (a, b)`.
pub fn module_membership(
    target: &FreeRingElement,
    a: Letter,
    b: Letter,
    bound_v: usize,
    degree: usize,
) -> Result<Membership, DerivationError> {
    if target.is_zero() {
        return Ok(Membership::Feasible(Vec::new()));
    }
    if target.degree() != Some(degree) {
        return Err(DerivationError::NotHomogeneous(degree));
    }
    let letters = [a, b];
    let rows = words(&letters, degree);
    let row_of: HashMap<&Word, usize> = rows.iter().enumerate().map(|(i, w)| (w, i)).collect();
    if target.terms().any(|(w, _)| !row_of.contains_key(w)) {
        return Ok(Membership::Infeasible);
    }

    let mut gens = Vec::new();
    for vlen in 0..=bound_v.min(degree.saturating_sub(2)) {
        for alpha in words(&letters, degree - 2 - vlen) {
            for v in words(&letters, vlen) {
                gens.push((alpha.clone(), v));
            }
        }
    }
    // Columns are generators, the last column is the target.
    let ncols = gens.len() + 1;
    let mut m = vec![vec![BigRational::zero(); ncols]; rows.len()];
    for (j, (alpha, v)) in gens.iter().enumerate() {
        let plus = alpha.concat(&[a, b]).concat(v);
        let minus = alpha.concat(&[b, b]).concat(v);
        m[row_of[&plus]][j] += BigRational::one();
        m[row_of[&minus]][j] -= BigRational::one();
    }
    for (w, c) in target.terms() {
        m[row_of[w]][ncols - 1] = BigRational::from_integer(c.into());
    }

    // Reduced row echelon form.
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][col].is_zero()) else {
            continue;
        };
        if col == ncols - 1 {
            return Ok(Membership::Infeasible);
        }
        m.swap(r, p);
        let inv = m[r][col].recip();
        for x in m[r].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let f = row[col].clone();
                for (x, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *x -= &f * p;
                    }
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    let combination = pivots
        .iter()
        .enumerate()
        .filter(|(i, _)| !m[*i][ncols - 1].is_zero())
        .map(|(i, &col)| {
            let (alpha, v) = gens[col].clone();
            (alpha, v, m[i][ncols - 1].clone())
        })
        .collect();
    Ok(Membership::Feasible(combination))
}
