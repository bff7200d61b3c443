//! Column perturbed consistent matrices.
//!
//! A reciprocal matrix is column perturbed when deleting one row and the
//! matching column leaves a consistent matrix. Such a matrix is monomially
//! similar to one whose trailing `(n-1) x (n-1)` block is all ones, and its
//! efficient set is then the union of the explicit convex sets
//! `eps_ij = { w : a_i1 w_1 >= w_i >= w_k >= w_j >= a_j1 w_1, k != 1, i, j }`
//! over the pairs with `a_1i a_j1 < 1`.

use std::collections::BTreeMap;

use num_traits::One;

use crate::error::{Error, Result};
use crate::matrix::{monomial_similarity, transform_vector, MonomialTransform, ReciprocalMatrix, WeightVector};
use crate::rational::{format_rational, Rational};

/// Canonical form of a column perturbed matrix `B`: `canonical` equals
/// `monomial_similarity(B, transform)`, with the perturbed index moved to 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PerturbedForm {
    canonical: ReciprocalMatrix,
    transform: MonomialTransform,
    index_set: Vec<(usize, usize)>,
    deletion_indices: Vec<usize>,
}

impl PerturbedForm {
    pub fn canonical(&self) -> &ReciprocalMatrix {
        &self.canonical
    }

    pub fn transform(&self) -> &MonomialTransform {
        &self.transform
    }

    /// Pairs `(i, j)` with `a_0i a_j0 < 1`, lexicographic.
    pub fn index_set(&self) -> &[(usize, usize)] {
        &self.index_set
    }

    /// Every index of `B` whose deletion leaves a consistent block; the
    /// first one was used for the canonical form.
    pub fn deletion_indices(&self) -> &[usize] {
        &self.deletion_indices
    }

    pub fn dim(&self) -> usize {
        self.canonical.dim()
    }

    /// Number of first-row entries that differ from the most frequent one.
    pub fn off_unit_count(&self) -> usize {
        let n = self.dim();
        (n - 1) - first_row_multiplicity(&self.canonical).0
    }

    /// Maps a vector of the original matrix to canonical coordinates.
    pub fn to_canonical(&self, w: &WeightVector) -> Result<WeightVector> {
        transform_vector(w, &self.transform)
    }

    pub fn from_canonical(&self, w: &WeightVector) -> Result<WeightVector> {
        transform_vector(w, &self.transform.inverse())
    }

    /// Membership of an original-coordinate vector in the union of `eps_ij`.
    pub fn contains(&self, w: &WeightVector) -> Result<bool> {
        let v = self.to_canonical(w)?;
        Ok(efficient_set_union(self).iter().any(|e| e.contains(&v)))
    }
}

/// `a_i1 w_1 >= w_i >= w_k >= w_j >= a_j1 w_1` for every `k` other than
/// `0, i, j`, in canonical coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EpsilonIJ {
    pub n: usize,
    pub i: usize,
    pub j: usize,
    /// `a_i1`.
    pub upper: Rational,
    /// `a_j1`.
    pub lower: Rational,
}

impl EpsilonIJ {
    pub fn contains(&self, w: &WeightVector) -> bool {
        if w.dim() != self.n {
            return false;
        }
        let (wi, wj, w0) = (w.get(self.i), w.get(self.j), w.get(0));
        &self.upper * w0 >= *wi
            && wi >= wj
            && *wj >= &self.lower * w0
            && self.middle().all(|k| wi >= w.get(k) && w.get(k) >= wj)
    }

    fn middle(&self) -> impl Iterator<Item = usize> + '_ {
        (1..self.n).filter(move |&k| k != self.i && k != self.j)
    }

    /// Human-readable chain with 1-based indices.
    pub fn describe(&self) -> String {
        let mid: Vec<String> = self.middle().map(|k| format!("w{}", k + 1)).collect();
        let mut parts = vec![
            format!("{}*w1", format_rational(&self.upper)),
            format!("w{}", self.i + 1),
        ];
        if !mid.is_empty() {
            parts.push(mid.join(","));
        }
        parts.push(format!("w{}", self.j + 1));
        parts.push(format!("{}*w1", format_rational(&self.lower)));
        parts.join(" >= ")
    }
}

/// Most frequent value in the first row (columns `1..n`), with its count.
/// Ties go to the smallest value.
fn first_row_multiplicity(a: &ReciprocalMatrix) -> (usize, Rational) {
    let mut counts: BTreeMap<&Rational, usize> = BTreeMap::new();
    for v in &a.row(0)[1..] {
        *counts.entry(v).or_default() += 1;
    }
    let mut best: Option<(&Rational, usize)> = None;
    for (v, c) in counts {
        if best.is_none_or(|(_, bc)| c > bc) {
            best = Some((v, c));
        }
    }
    let (v, c) = best.expect("n >= 2");
    (c, v.clone())
}

pub fn detect_column_perturbed(b: &ReciprocalMatrix) -> Option<PerturbedForm> {
    let n = b.dim();
    let deletion_indices: Vec<usize> = (0..n)
        .filter(|&p| {
            let keep: Vec<usize> = (0..n).filter(|&q| q != p).collect();
            b.principal(&keep).is_consistent()
        })
        .collect();
    let &p = deletion_indices.first()?;
    let others: Vec<usize> = (0..n).filter(|&q| q != p).collect();
    let q0 = others[0];
    // Block weights with w[q0] = 1; scaling by 1/w turns the block into ones.
    let mut scale = vec![Rational::one(); n];
    let mut perm = vec![0; n];
    for (k, &q) in others.iter().enumerate() {
        scale[q] = b.get(q, q0).recip();
        perm[q] = k + 1;
    }
    let transform = MonomialTransform::new(scale.clone(), perm.clone()).expect("valid by construction");
    let mut canonical = monomial_similarity(b, &transform).expect("dimensions agree");

    // Rescale index 0 so that the dominant first-row value becomes 1.
    let (count, value) = first_row_multiplicity(&canonical);
    let ones = canonical.row(0)[1..].iter().filter(|v| v.is_one()).count();
    let transform = if ones < count && (count >= 2 || count == n - 1) {
        scale[p] = value.recip();
        let t = MonomialTransform::new(scale, perm).expect("valid by construction");
        canonical = monomial_similarity(b, &t).expect("dimensions agree");
        t
    } else {
        transform
    };

    let mut index_set = Vec::new();
    for i in 1..n {
        for j in 1..n {
            if i != j && canonical.get(0, i) * canonical.get(j, 0) < Rational::one() {
                index_set.push((i, j));
            }
        }
    }
    Some(PerturbedForm {
        canonical,
        transform,
        index_set,
        deletion_indices,
    })
}

pub fn epsilon_ij(f: &PerturbedForm, i: usize, j: usize) -> Result<EpsilonIJ> {
    let n = f.dim();
    for idx in [i, j] {
        if idx == 0 || idx >= n {
            return Err(Error::IndexOutOfRange { index: idx, n });
        }
    }
    if !f.index_set.contains(&(i, j)) {
        return Err(Error::Contract(format!(
            "a_1{} a_{}1 is not below 1",
            i + 1,
            j + 1
        )));
    }
    Ok(EpsilonIJ {
        n,
        i,
        j,
        upper: f.canonical.get(i, 0).clone(),
        lower: f.canonical.get(j, 0).clone(),
    })
}

pub fn efficient_set_union(f: &PerturbedForm) -> Vec<EpsilonIJ> {
    f.index_set
        .iter()
        .map(|&(i, j)| epsilon_ij(f, i, j).expect("pair from the index set"))
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PerturbationClass {
    Consistent,
    Simple,
    DoubleInColumn,
    Column,
    NotColumnPerturbed,
}

impl PerturbationClass {
    pub fn as_str(self) -> &'static str {
        match self {
            PerturbationClass::Consistent => "consistent",
            PerturbationClass::Simple => "simple",
            PerturbationClass::DoubleInColumn => "double-in-column",
            PerturbationClass::Column => "column",
            PerturbationClass::NotColumnPerturbed => "not-column-perturbed",
        }
    }
}

pub fn classify_perturbation(b: &ReciprocalMatrix) -> PerturbationClass {
    match detect_column_perturbed(b).map(|f| f.off_unit_count()) {
        None => PerturbationClass::NotColumnPerturbed,
        Some(0) => PerturbationClass::Consistent,
        Some(1) => PerturbationClass::Simple,
        Some(2) => PerturbationClass::DoubleInColumn,
        Some(_) => PerturbationClass::Column,
    }
}

/// Efficient set of a matrix that is all ones except for the pair
/// `(0, m)`, `(m, 0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleRegion {
    pub n: usize,
    pub m: usize,
    /// `a_0m`.
    pub entry: Rational,
}

impl SimpleRegion {
    /// With `a_0m > 1`: `w_0 >= w_k >= w_m >= a_m0 w_0`; with `a_0m < 1`
    /// the chain runs the other way, `a_m0 w_0 >= w_m >= w_k >= w_0`.
    pub fn contains(&self, w: &WeightVector) -> bool {
        if w.dim() != self.n {
            return false;
        }
        let (w0, wm) = (w.get(0), w.get(self.m));
        let scaled = w0 / &self.entry;
        let mut rest = (1..self.n).filter(|&k| k != self.m).map(|k| w.get(k));
        if self.entry > Rational::one() {
            w0 >= wm && *wm >= scaled && rest.all(|wk| w0 >= wk && wk >= wm)
        } else {
            scaled >= *wm && wm >= w0 && rest.all(|wk| wm >= wk && wk >= w0)
        }
    }
}

pub fn simple_perturbed_region(a: &ReciprocalMatrix) -> Option<SimpleRegion> {
    let n = a.dim();
    let block_ones = (1..n).all(|i| (1..n).all(|j| a.get(i, j).is_one()));
    let mut off = (1..n).filter(|&k| !a.get(0, k).is_one());
    let m = off.next()?;
    if !block_ones || off.next().is_some() {
        return None;
    }
    Some(SimpleRegion {
        n,
        m,
        entry: a.get(0, m).clone(),
    })
}
