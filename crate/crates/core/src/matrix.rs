//! Reciprocal matrices, weight vectors and monomial similarity.
//!
//! Indices are zero-based everywhere inside the crate; the text/JSON formats
//! and the CLI print vertices one-based.

use std::fmt;

use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::rational::{format_rational, Rational};

/// An `n x n` positive matrix with `a[j][i] * a[i][j] == 1` exactly.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ReciprocalMatrix {
    n: usize,
    entries: Vec<Rational>,
}

impl ReciprocalMatrix {
    /// Validates positivity, the unit diagonal and exact reciprocity.
    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        if n < 2 {
            return Err(Error::Domain(format!("dimension must be at least 2, got {n}")));
        }
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        let m = ReciprocalMatrix { n, entries };
        for i in 0..n {
            for j in 0..n {
                if !m.get(i, j).is_positive() {
                    return Err(Error::Domain(format!(
                        "entry ({}, {}) is not positive",
                        i + 1,
                        j + 1
                    )));
                }
                if m.get(i, j) * m.get(j, i) != Rational::one() {
                    return Err(Error::NotReciprocal { row: i + 1, col: j + 1 });
                }
            }
        }
        Ok(m)
    }

    /// Builds a matrix from its strict upper triangle, listed row by row:
    /// `a12, a13, ..., a1n, a23, ..., a(n-1)n`.
    pub fn from_upper_triangle(n: usize, upper: &[Rational]) -> Result<Self> {
        if n < 2 {
            return Err(Error::Domain(format!("dimension must be at least 2, got {n}")));
        }
        let expected = n * (n - 1) / 2;
        if upper.len() != expected {
            return Err(Error::DimensionMismatch {
                expected,
                found: upper.len(),
            });
        }
        let mut entries = vec![Rational::one(); n * n];
        let mut it = upper.iter();
        for i in 0..n {
            for j in i + 1..n {
                let v = it.next().expect("length checked");
                if !v.is_positive() {
                    return Err(Error::Domain(format!(
                        "entry ({}, {}) is not positive",
                        i + 1,
                        j + 1
                    )));
                }
                entries[i * n + j] = v.clone();
                entries[j * n + i] = v.recip();
            }
        }
        Ok(ReciprocalMatrix { n, entries })
    }

    /// The all-ones matrix `J_n`.
    pub fn ones(n: usize) -> Self {
        assert!(n >= 2);
        ReciprocalMatrix {
            n,
            entries: vec![Rational::one(); n * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.n + j]
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.entries.chunks(self.n)
    }

    pub fn column(&self, k: usize) -> Result<WeightVector> {
        if k >= self.n {
            return Err(Error::IndexOutOfRange { index: k + 1, n: self.n });
        }
        Ok(WeightVector((0..self.n).map(|i| self.get(i, k).clone()).collect()))
    }

    pub fn transpose(&self) -> Self {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(self.get(j, i).clone());
            }
        }
        ReciprocalMatrix { n, entries }
    }

    /// Relabels so that new index `p` is old index `order[p]`.
    pub(crate) fn relabeled(&self, order: &[usize]) -> Self {
        let n = self.n;
        let mut entries = Vec::with_capacity(n * n);
        for &i in order {
            for &j in order {
                entries.push(self.get(i, j).clone());
            }
        }
        ReciprocalMatrix { n, entries }
    }

    /// Principal submatrix keeping the listed indices, in order.
    pub(crate) fn principal(&self, keep: &[usize]) -> Self {
        let k = keep.len();
        let mut entries = Vec::with_capacity(k * k);
        for &i in keep {
            for &j in keep {
                entries.push(self.get(i, j).clone());
            }
        }
        ReciprocalMatrix { n: k, entries }
    }

    pub fn is_consistent(&self) -> bool {
        is_consistent(self)
    }
}

impl fmt::Display for ReciprocalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for row in self.rows() {
            let line: Vec<String> = row.iter().map(format_rational).collect();
            writeln!(f, "{}", line.join(" "))?;
        }
        Ok(())
    }
}

/// Positive weight vector. Equality is component-wise; use
/// [`WeightVector::normalized`] or [`WeightVector::is_proportional`] to
/// compare up to scaling.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WeightVector(Vec<Rational>);

impl WeightVector {
    pub fn new(components: Vec<Rational>) -> Result<Self> {
        if components.is_empty() {
            return Err(Error::Domain("empty weight vector".into()));
        }
        if let Some(pos) = components.iter().position(|c| !c.is_positive()) {
            return Err(Error::Domain(format!(
                "component {} is not positive",
                pos + 1
            )));
        }
        Ok(WeightVector(components))
    }

    pub(crate) fn from_positive(components: Vec<Rational>) -> Self {
        debug_assert!(components.iter().all(|c| c.is_positive()));
        WeightVector(components)
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn components(&self) -> &[Rational] {
        &self.0
    }

    pub fn into_components(self) -> Vec<Rational> {
        self.0
    }

    #[inline]
    pub fn get(&self, i: usize) -> &Rational {
        &self.0[i]
    }

    /// The positive multiple with first component 1.
    pub fn normalized(&self) -> WeightVector {
        let first = self.0[0].clone();
        WeightVector(self.0.iter().map(|c| c / &first).collect())
    }

    pub fn is_proportional(&self, other: &WeightVector) -> bool {
        self.dim() == other.dim()
            && self
                .0
                .iter()
                .zip(&other.0)
                .all(|(a, b)| a * &other.0[0] == b * &self.0[0])
    }

    pub fn scaled(&self, factor: &Rational) -> WeightVector {
        debug_assert!(factor.is_positive());
        WeightVector(self.0.iter().map(|c| c * factor).collect())
    }

    /// `t * self + (1 - t) * other` for `t` in `[0, 1]`.
    pub fn convex_combination(&self, other: &WeightVector, t: &Rational) -> WeightVector {
        let s = Rational::one() - t;
        WeightVector(
            self.0
                .iter()
                .zip(&other.0)
                .map(|(a, b)| a * t + b * &s)
                .collect(),
        )
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(format_rational).collect();
        write!(f, "[{}]", parts.join(", "))
    }
}

pub fn normalize(w: &WeightVector) -> WeightVector {
    w.normalized()
}

/// The consistent matrix `w w^(-T)`, i.e. `a[i][j] = w[i] / w[j]`.
pub fn make_consistent(w: &WeightVector) -> ReciprocalMatrix {
    let n = w.dim();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            entries.push(w.get(i) / w.get(j));
        }
    }
    ReciprocalMatrix { n, entries }
}

/// `a[i][j] == a[i][0] * a[0][j]` for all `i, j`, which for reciprocal
/// matrices is equivalent to the full triple condition.
pub fn is_consistent(a: &ReciprocalMatrix) -> bool {
    let n = a.dim();
    (1..n).all(|i| (1..n).all(|j| *a.get(i, j) == a.get(i, 0) * a.get(0, j)))
}

/// Positive diagonal scaling followed by a permutation: index `i` of the
/// source lands on `perm[i]` and is scaled by `scale[i]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MonomialTransform {
    scale: Vec<Rational>,
    perm: Vec<usize>,
}

impl MonomialTransform {
    pub fn new(scale: Vec<Rational>, perm: Vec<usize>) -> Result<Self> {
        if scale.len() != perm.len() {
            return Err(Error::DimensionMismatch {
                expected: scale.len(),
                found: perm.len(),
            });
        }
        if scale.iter().any(|d| !d.is_positive()) {
            return Err(Error::Domain("scale entries must be positive".into()));
        }
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || seen[p] {
                return Err(Error::Domain("perm is not a permutation".into()));
            }
            seen[p] = true;
        }
        Ok(MonomialTransform { scale, perm })
    }

    pub fn identity(n: usize) -> Self {
        MonomialTransform {
            scale: vec![Rational::one(); n],
            perm: (0..n).collect(),
        }
    }

    pub fn dim(&self) -> usize {
        self.perm.len()
    }

    pub fn scale(&self) -> &[Rational] {
        &self.scale
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn inverse(&self) -> Self {
        let n = self.dim();
        let mut perm = vec![0; n];
        let mut scale = vec![Rational::one(); n];
        for i in 0..n {
            perm[self.perm[i]] = i;
            scale[self.perm[i]] = self.scale[i].recip();
        }
        MonomialTransform { scale, perm }
    }

    /// The transform equivalent to applying `self` and then `next`.
    pub fn then(&self, next: &MonomialTransform) -> Self {
        let n = self.dim();
        let mut perm = vec![0; n];
        let mut scale = vec![Rational::one(); n];
        for i in 0..n {
            perm[i] = next.perm[self.perm[i]];
            scale[i] = &self.scale[i] * &next.scale[self.perm[i]];
        }
        MonomialTransform { scale, perm }
    }
}

/// `S A S^{-1}` with `S = P D`: `result[p(i)][p(j)] = (d_i / d_j) a[i][j]`.
pub fn monomial_similarity(
    a: &ReciprocalMatrix,
    t: &MonomialTransform,
) -> Result<ReciprocalMatrix> {
    let n = a.dim();
    if t.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: t.dim(),
        });
    }
    let mut entries = vec![Rational::one(); n * n];
    for i in 0..n {
        for j in 0..n {
            entries[t.perm[i] * n + t.perm[j]] = &t.scale[i] / &t.scale[j] * a.get(i, j);
        }
    }
    Ok(ReciprocalMatrix { n, entries })
}

/// `P D w`: `result[p(i)] = d_i w_i`.
pub fn transform_vector(w: &WeightVector, t: &MonomialTransform) -> Result<WeightVector> {
    let n = w.dim();
    if t.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: t.dim(),
        });
    }
    let mut out = vec![Rational::one(); n];
    for i in 0..n {
        out[t.perm[i]] = &t.scale[i] * w.get(i);
    }
    Ok(WeightVector(out))
}
