//! Brute-force cross-checks that share no code with the digraph test:
//! factorial Hamiltonian-cycle search and a direct search for a vector that
//! dominates `w` in the entrywise-residual sense.

use std::cmp::Ordering;

use itertools::Itertools;
use num_traits::{One, Signed};

use crate::cycle::HamiltonianCycle;
use crate::decompose::enumerate_cycles;
use crate::cones::cone_extremes;
use crate::error::{Error, Result};
use crate::graph::DominanceDigraph;
use crate::matrix::{ReciprocalMatrix, WeightVector};
use crate::rational::{ratio, Rational};

pub const EXHAUSTIVE_LIMIT: usize = 8;

/// Tries every cycle anchored at vertex 0 in lexicographic order.
pub fn exhaustive_hamiltonian(g: &DominanceDigraph) -> Result<Option<HamiltonianCycle>> {
    let n = g.dim();
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::CapExceeded {
            n,
            cap: EXHAUSTIVE_LIMIT,
        });
    }
    if n < 2 {
        return Ok(None);
    }
    for rest in (1..n).permutations(n - 1) {
        let order: Vec<usize> = std::iter::once(0).chain(rest).collect();
        let closed = (0..n).all(|k| g.has_edge(order[k], order[(k + 1) % n]));
        if closed {
            return Ok(Some(HamiltonianCycle::new(order)?));
        }
    }
    Ok(None)
}

/// Entrywise comparison of `|A - v v^(-T)|` against `|A - w w^(-T)|`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominanceProbe {
    pub base: WeightVector,
    pub candidate: WeightVector,
    /// Row-major `n x n`; `Less` where the candidate's residual is smaller.
    pub comparison: Vec<Ordering>,
}

impl DominanceProbe {
    pub fn new(a: &ReciprocalMatrix, base: &WeightVector, candidate: &WeightVector) -> Result<Self> {
        let n = a.dim();
        for d in [base.dim(), candidate.dim()] {
            if d != n {
                return Err(Error::DimensionMismatch { expected: n, found: d });
            }
        }
        let residual = |w: &WeightVector, i: usize, j: usize| (a.get(i, j) - w.get(i) / w.get(j)).abs();
        let comparison = (0..n)
            .flat_map(|i| (0..n).map(move |j| (i, j)))
            .map(|(i, j)| residual(candidate, i, j).cmp(&residual(base, i, j)))
            .collect();
        Ok(DominanceProbe {
            base: base.clone(),
            candidate: candidate.clone(),
            comparison,
        })
    }

    /// No residual grows, at least one shrinks, and the vectors are not
    /// proportional.
    pub fn dominates(&self) -> bool {
        self.comparison.iter().all(|o| *o != Ordering::Greater)
            && self.comparison.contains(&Ordering::Less)
            && !self.candidate.is_proportional(&self.base)
    }
}

/// `|a_ij - w_i / w_j|` in row-major order.
fn residuals(a: &ReciprocalMatrix, w: &[Rational]) -> Vec<Rational> {
    let n = a.dim();
    (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| (a.get(i, j) - &w[i] / &w[j]).abs())
        .collect()
}

/// Cheap screen against precomputed base residuals, stopping at the first
/// entry that gets worse; survivors are re-checked through the probe.
fn validated(a: &ReciprocalMatrix, w: &WeightVector, base: &[Rational], v: Vec<Rational>) -> Option<WeightVector> {
    if v.iter().any(|x| !x.is_positive()) {
        return None;
    }
    let n = a.dim();
    let mut strict = false;
    for i in 0..n {
        for j in 0..n {
            let r = (a.get(i, j) - &v[i] / &v[j]).abs();
            match r.cmp(&base[i * n + j]) {
                Ordering::Greater => return None,
                Ordering::Less => strict = true,
                Ordering::Equal => {}
            }
        }
    }
    if !strict {
        return None;
    }
    let v = WeightVector::new(v).ok()?;
    DominanceProbe::new(a, w, &v).ok()?.dominates().then_some(v)
}

/// Searches for a vector dominating `w`. Any vector returned has been
/// validated against the definition; `None` proves nothing by itself.
///
/// Candidates, in order:
/// 1. one coordinate replaced by a breakpoint `a_ij w_j`;
/// 2. one coordinate scaled by `1 +- k / (directions + 1)`;
/// 3. a proper subset of coordinates scaled by the nearest breakpoint ratio
///    `a_ij w_j / w_i` between the subset and its complement, both ways;
/// 4. cone extremes of every cycle with product `< 1` (at most `directions`
///    of them, only when `n <= 8`).
pub fn dominance_search(a: &ReciprocalMatrix, w: &WeightVector, directions: usize) -> Option<WeightVector> {
    let n = a.dim();
    if w.dim() != n {
        return None;
    }
    let base = w.components();
    let res = residuals(a, base);
    for i in 0..n {
        for j in (0..n).filter(|&j| j != i) {
            let mut v = base.to_vec();
            v[i] = a.get(i, j) * w.get(j);
            if let Some(d) = validated(a, w, &res, v) {
                return Some(d);
            }
        }
    }
    for i in 0..n {
        for k in 1..=directions {
            let step = ratio(k as i64, directions as i64 + 1);
            for factor in [Rational::one() + &step, Rational::one() - &step] {
                let mut v = base.to_vec();
                v[i] = &v[i] * factor;
                if let Some(d) = validated(a, w, &res, v) {
                    return Some(d);
                }
            }
        }
    }
    if n < usize::BITS as usize - 1 {
        for mask in 1..(1usize << n) - 1 {
            let inside = |i: usize| mask >> i & 1 == 1;
            let ratios: Vec<Rational> = (0..n)
                .filter(|&i| inside(i))
                .flat_map(|i| (0..n).filter(move |&j| !inside(j)).map(move |j| (i, j)))
                .map(|(i, j)| a.get(i, j) * w.get(j) / w.get(i))
                .collect();
            let below = ratios.iter().filter(|r| **r < Rational::one()).max();
            let above = ratios.iter().filter(|r| **r > Rational::one()).min();
            for factor in below.into_iter().chain(above) {
                let v = (0..n)
                    .map(|i| if inside(i) { &base[i] * factor } else { base[i].clone() })
                    .collect();
                if let Some(d) = validated(a, w, &res, v) {
                    return Some(d);
                }
            }
        }
    }
    if n <= EXHAUSTIVE_LIMIT {
        let classes = enumerate_cycles(a, EXHAUSTIVE_LIMIT).ok()?;
        let extremes = classes
            .below_one
            .iter()
            .filter_map(|cp| cone_extremes(a, &cp.cycle).ok())
            .flatten()
            .take(directions);
        for e in extremes {
            if let Some(d) = validated(a, w, &res, e.into_components()) {
                return Some(d);
            }
        }
    }
    None
}
