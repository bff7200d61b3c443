//! Cycle products and the cones `eps_A(C)`.
//!
//! For a Hamiltonian cycle `C: g1 -> ... -> gn -> g1`, `eps_A(C)` is the set
//! of positive `w` with `w_{g_k} >= a_{g_k g_{k+1}} w_{g_{k+1}}` for all `k`
//! (indices mod n), i.e. the vectors whose dominance digraph contains `C`.
//! When the cycle product is at most 1 the cone is generated by the `n`
//! solutions obtained by turning all but one inequality into equalities.

use num_traits::{One, Signed, Zero};

use crate::cycle::HamiltonianCycle;
use crate::error::{Error, Result};
use crate::matrix::{ReciprocalMatrix, WeightVector};
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleProduct {
    pub cycle: HamiltonianCycle,
    pub product: Rational,
}

fn check_dim(a: &ReciprocalMatrix, c: &HamiltonianCycle) -> Result<()> {
    if c.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: c.len(),
        });
    }
    Ok(())
}

pub fn cycle_product(a: &ReciprocalMatrix, c: &HamiltonianCycle) -> Result<Rational> {
    check_dim(a, c)?;
    Ok(c.edges().fold(Rational::one(), |acc, (i, j)| acc * a.get(i, j)))
}

/// `w[from] >= coefficient * w[to]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycleInequality {
    pub from: usize,
    pub to: usize,
    pub coefficient: Rational,
}

impl CycleInequality {
    pub fn holds(&self, w: &WeightVector) -> bool {
        *w.get(self.from) >= &self.coefficient * w.get(self.to)
    }

    pub fn is_tight(&self, w: &WeightVector) -> bool {
        *w.get(self.from) == &self.coefficient * w.get(self.to)
    }
}

/// The cone `eps_A(C)` of a cycle with product at most 1, as its inequality
/// system together with its extreme rays.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct EfficiencyCone {
    pub cycle: HamiltonianCycle,
    pub product: Rational,
    pub inequalities: Vec<CycleInequality>,
    pub extremes: Vec<WeightVector>,
    pub is_singleton: bool,
}

impl EfficiencyCone {
    pub fn new(a: &ReciprocalMatrix, c: &HamiltonianCycle) -> Result<Self> {
        let product = cycle_product(a, c)?;
        let extremes = cone_extremes(a, c)?;
        Ok(EfficiencyCone {
            cycle: c.clone(),
            is_singleton: product.is_one(),
            product,
            inequalities: inequalities(a, c),
            extremes,
        })
    }

    pub fn contains(&self, w: &WeightVector) -> bool {
        w.dim() == self.cycle.len() && self.inequalities.iter().all(|ineq| ineq.holds(w))
    }
}

fn inequalities(a: &ReciprocalMatrix, c: &HamiltonianCycle) -> Vec<CycleInequality> {
    c.edges()
        .map(|(i, j)| CycleInequality {
            from: i,
            to: j,
            coefficient: a.get(i, j).clone(),
        })
        .collect()
}

pub fn cone_membership(
    a: &ReciprocalMatrix,
    c: &HamiltonianCycle,
    w: &WeightVector,
) -> Result<bool> {
    check_dim(a, c)?;
    if w.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: w.dim(),
        });
    }
    Ok(c.edges().all(|(i, j)| *w.get(i) >= a.get(i, j) * w.get(j)))
}

/// Extreme rays of `eps_A(C)`, normalized to first component 1 and with
/// duplicates removed, ordered by the position of the relaxed inequality.
pub fn cone_extremes(a: &ReciprocalMatrix, c: &HamiltonianCycle) -> Result<Vec<WeightVector>> {
    let product = cycle_product(a, c)?;
    if product > Rational::one() {
        return Err(Error::Contract(format!(
            "cycle {c} has product {product} > 1; its cone is empty"
        )));
    }
    let n = c.len();
    let order = c.order();
    let mut out: Vec<WeightVector> = Vec::with_capacity(n);
    for relaxed in 0..n {
        let mut w = vec![Rational::zero(); n];
        let start = (relaxed + 1) % n;
        w[order[start]] = Rational::one();
        // Equalities w_{g_i} = a_{g_i g_{i+1}} w_{g_{i+1}} for every i but `relaxed`.
        for step in 0..n - 1 {
            let i = (start + step) % n;
            let (from, to) = (order[i], order[(i + 1) % n]);
            w[to] = &w[from] / a.get(from, to);
        }
        let v = WeightVector::from_positive(w).normalized();
        if !out.contains(&v) {
            out.push(v);
        }
    }
    Ok(out)
}

pub fn is_singleton_cone(a: &ReciprocalMatrix, c: &HamiltonianCycle) -> Result<bool> {
    let product = cycle_product(a, c)?;
    if product > Rational::one() {
        return Err(Error::Contract(format!("cycle {c} has product {product} > 1")));
    }
    Ok(product.is_one())
}

/// Nonnegative coefficients expressing `w` over the given generators, when
/// they exist. Solves the square linear system exactly; with one generator
/// this is a proportionality test.
pub fn conic_coefficients(generators: &[WeightVector], w: &WeightVector) -> Option<Vec<Rational>> {
    let n = w.dim();
    if generators.len() == 1 {
        let g = &generators[0];
        return g.is_proportional(w).then(|| vec![w.get(0) / g.get(0)]);
    }
    if generators.len() != n {
        return None;
    }
    // Augmented system with generators as columns.
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|r| {
            let mut row: Vec<Rational> = generators.iter().map(|g| g.get(r).clone()).collect();
            row.push(w.get(r).clone());
            row
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, pivot);
        let inv = m[col][col].recip();
        for x in m[col].iter_mut() {
            *x *= &inv;
        }
        let pivot_row = m[col].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r != col && !row[col].is_zero() {
                let factor = row[col].clone();
                for (x, p) in row[col..].iter_mut().zip(&pivot_row[col..]) {
                    *x -= &factor * p;
                }
            }
        }
    }
    let coeffs: Vec<Rational> = m.into_iter().map(|row| row[n].clone()).collect();
    coeffs.iter().all(|c| !c.is_negative()).then_some(coeffs)
}

/// Which construction produced the replacement for an all-ones cycle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ResolutionCase {
    /// An entry `< 1` on the `offset`-th diagonal followed by an entry `<= 1`.
    AdjacentPair { offset: usize, start: usize },
    /// `offset > 2` and the last entry of the `offset`-th diagonal is `< 1`.
    WrapAround { offset: usize },
    /// `offset == 2` with alternating entries ending below 1.
    Alternating { even: bool },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnitCycleResolution {
    pub cycle: HamiltonianCycle,
    pub case: ResolutionCase,
    /// The construction ran on the transpose and the cycle was reversed back.
    pub transposed: bool,
}

pub fn resolve_unit_cycle(a: &ReciprocalMatrix, c: &HamiltonianCycle) -> Result<HamiltonianCycle> {
    resolve_unit_cycle_traced(a, c).map(|r| r.cycle)
}

/// For an inconsistent `A` and a cycle along which every entry is 1, finds a
/// cycle whose entries are all `<= 1` with at least one `< 1`.
pub fn resolve_unit_cycle_traced(
    a: &ReciprocalMatrix,
    c: &HamiltonianCycle,
) -> Result<UnitCycleResolution> {
    check_dim(a, c)?;
    if let Some((i, j)) = c.edges().find(|&(i, j)| !a.get(i, j).is_one()) {
        return Err(Error::Contract(format!(
            "entry ({}, {}) along {c} is not 1",
            i + 1,
            j + 1
        )));
    }
    let n = a.dim();
    // Relabel so that the cycle is 0 -> 1 -> ... -> n-1 -> 0.
    let b = a.relabeled(c.order());
    let offset = (2..n)
        .find(|&k| (0..n - k).any(|i| !b.get(i, i + k).is_one()))
        .ok_or_else(|| Error::Contract("matrix is consistent".into()))?;
    let bt = b.transpose();
    let orientations = [(&b, false), (&bt, true)];

    let mut attempts: Vec<(Vec<usize>, ResolutionCase, bool)> = Vec::new();
    for &(m, transposed) in &orientations {
        if let Some((order, case)) = adjacent_pair(m, offset) {
            attempts.push((order, case, transposed));
        }
    }
    for &(m, transposed) in &orientations {
        if let Some((order, case)) = trailing_entry(m, offset) {
            attempts.push((order, case, transposed));
        }
    }

    for (order, case, transposed) in attempts {
        let mut candidate = HamiltonianCycle::new(order)?;
        if transposed {
            candidate = candidate.reverse();
        }
        if !is_sub_unit(&b, &candidate) {
            continue;
        }
        let mapped: Vec<usize> = candidate.order().iter().map(|&p| c.order()[p]).collect();
        let cycle = HamiltonianCycle::new(mapped)?;
        debug_assert!(is_sub_unit(a, &cycle));
        return Ok(UnitCycleResolution {
            cycle,
            case,
            transposed,
        });
    }
    Err(Error::Contract(format!(
        "no sub-unit cycle construction applies to {c}"
    )))
}

/// Entries along the cycle are all `<= 1` and at least one is `< 1`.
pub fn is_sub_unit(a: &ReciprocalMatrix, c: &HamiltonianCycle) -> bool {
    let one = Rational::one();
    c.edges().all(|(i, j)| *a.get(i, j) <= one) && c.edges().any(|(i, j)| *a.get(i, j) < one)
}

fn adjacent_pair(m: &ReciprocalMatrix, k: usize) -> Option<(Vec<usize>, ResolutionCase)> {
    let n = m.dim();
    let one = Rational::one();
    let i = (0..n - k - 1).find(|&i| *m.get(i, i + k) < one && *m.get(i + 1, i + 1 + k) <= one)?;
    // i -> i+k -> i+1 -> ... -> i+k-1 -> i+k+1 -> ... -> n-1 -> 0 -> ... -> i-1
    let mut order = vec![i, i + k];
    order.extend(i + 1..i + k);
    order.extend(i + k + 1..n);
    order.extend(0..i);
    Some((order, ResolutionCase::AdjacentPair { offset: k, start: i }))
}

fn trailing_entry(m: &ReciprocalMatrix, k: usize) -> Option<(Vec<usize>, ResolutionCase)> {
    let n = m.dim();
    if *m.get(n - k - 1, n - 1) >= Rational::one() {
        return None;
    }
    if k > 2 {
        // n-k-1 -> n-1 -> 0 -> ... -> n-k-2 -> n-k -> ... -> n-2
        let mut order = vec![n - k - 1, n - 1];
        order.extend(0..n - k - 1);
        order.extend(n - k..n - 1);
        return Some((order, ResolutionCase::WrapAround { offset: k }));
    }
    let even = n.is_multiple_of(2);
    let (up_start, down_end) = if even { (1, 2) } else { (2, 1) };
    let mut order = vec![0];
    order.extend((up_start..n).step_by(2));
    order.extend((down_end..n - 1).step_by(2).rev());
    Some((order, ResolutionCase::Alternating { even }))
}
