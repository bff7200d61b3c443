//! Order reversals: pairs where the ordering of `w_i, w_j` disagrees with
//! the comparison `a_ij`.

use std::cmp::Ordering;

use num_traits::One;

use crate::cones::cycle_product;
use crate::cycle::HamiltonianCycle;
use crate::error::{Error, Result};
use crate::matrix::{ReciprocalMatrix, WeightVector};
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReversalKind {
    /// `a_ij < 1` but `w_i > w_j`, or `a_ij > 1` but `w_i < w_j`.
    StrictFlip,
    /// `a_ij = 1` but `w_i != w_j`.
    TieBroken,
    /// `w_i = w_j` but `a_ij != 1`.
    TieForced,
}

impl ReversalKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ReversalKind::StrictFlip => "strict-flip",
            ReversalKind::TieBroken => "tie-broken",
            ReversalKind::TieForced => "tie-forced",
        }
    }
}

/// A reversal at the unordered pair `i < j`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Reversal {
    pub i: usize,
    pub j: usize,
    pub kind: ReversalKind,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReversalReport {
    pub pairs: Vec<Reversal>,
    pub count: usize,
    /// Reversals among the edge pairs of a cycle, when one was given.
    pub along_cycle: Option<usize>,
}

/// Classifies the pair `(i, j)`; symmetric in its arguments.
pub fn reversal_at(a: &ReciprocalMatrix, w: &WeightVector, i: usize, j: usize) -> Option<ReversalKind> {
    let entry = a.get(i, j).cmp(&Rational::one());
    let order = w.get(i).cmp(w.get(j));
    match (entry, order) {
        (Ordering::Less, Ordering::Greater) | (Ordering::Greater, Ordering::Less) => {
            Some(ReversalKind::StrictFlip)
        }
        (Ordering::Equal, Ordering::Less | Ordering::Greater) => Some(ReversalKind::TieBroken),
        (Ordering::Less | Ordering::Greater, Ordering::Equal) => Some(ReversalKind::TieForced),
        _ => None,
    }
}

fn check_dim(a: &ReciprocalMatrix, w: &WeightVector) -> Result<()> {
    if w.dim() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: w.dim(),
        });
    }
    Ok(())
}

pub fn count_reversals(a: &ReciprocalMatrix, w: &WeightVector) -> Result<ReversalReport> {
    check_dim(a, w)?;
    let n = a.dim();
    let pairs: Vec<Reversal> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter_map(|(i, j)| reversal_at(a, w, i, j).map(|kind| Reversal { i, j, kind }))
        .collect();
    Ok(ReversalReport {
        count: pairs.len(),
        pairs,
        along_cycle: None,
    })
}

/// Unordered pairs `{g_k, g_{k+1}}` of a cycle, as `(min, max)`, deduplicated.
pub fn cycle_pairs(c: &HamiltonianCycle) -> Vec<(usize, usize)> {
    let mut pairs: Vec<(usize, usize)> = c.edges().map(|(i, j)| (i.min(j), i.max(j))).collect();
    pairs.sort_unstable();
    pairs.dedup();
    pairs
}

/// Full report with the sub-count restricted to the edge pairs of `c`.
pub fn count_reversals_along(
    a: &ReciprocalMatrix,
    w: &WeightVector,
    c: &HamiltonianCycle,
) -> Result<ReversalReport> {
    if c.len() != a.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: c.len(),
        });
    }
    let mut report = count_reversals(a, w)?;
    let along = cycle_pairs(c)
        .into_iter()
        .filter(|&(i, j)| reversal_at(a, w, i, j).is_some())
        .count();
    report.along_cycle = Some(along);
    Ok(report)
}

/// An efficient vector with the fewest possible reversals along `c`.
///
/// The cycle is rotated so that its largest entry (lowest edge position on
/// ties) closes the cycle; the other `n - 1` inequalities are then made
/// tight starting from `w = 1` at the new first vertex. The returned count
/// is 0 when some entry along `c` exceeds 1 or the product is 1, else 1.
pub fn min_reversal_vector(a: &ReciprocalMatrix, c: &HamiltonianCycle) -> Result<(WeightVector, usize)> {
    let product = cycle_product(a, c)?;
    if product > Rational::one() {
        return Err(Error::Contract(format!(
            "cycle {c} has product {product} > 1"
        )));
    }
    let n = c.len();
    let entries: Vec<&Rational> = c.edges().map(|(i, j)| a.get(i, j)).collect();
    let mut wrap = 0;
    for (k, e) in entries.iter().enumerate() {
        if *e > entries[wrap] {
            wrap = k;
        }
    }
    let order = c.rotated(wrap + 1);
    let mut w = vec![Rational::one(); n];
    for k in 0..n - 1 {
        let (from, to) = (order[k], order[k + 1]);
        w[to] = &w[from] / a.get(from, to);
    }
    let w = WeightVector::from_positive(w).normalized();
    let along = count_reversals_along(a, &w, c)?
        .along_cycle
        .expect("cycle given");
    Ok((w, along))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::graph::is_efficient;
    use crate::matrix::make_consistent;
    use crate::rational::{int, ratio};

    fn wv(v: &[i64]) -> WeightVector {
        WeightVector::new(v.iter().map(|&x| int(x)).collect()).unwrap()
    }

    fn cyc(v: &[usize]) -> HamiltonianCycle {
        HamiltonianCycle::from_one_based(v).unwrap()
    }

    #[test]
    fn consistent_has_none() {
        let w = wv(&[3, 1, 4, 1]);
        assert_eq!(count_reversals(&make_consistent(&w), &w).unwrap().count, 0);
    }

    #[test]
    fn all_ones_matrix() {
        let r = count_reversals(&ReciprocalMatrix::ones(3), &wv(&[1, 2, 2])).unwrap();
        assert_eq!(r.count, 2);
        assert!(r.pairs.iter().all(|p| p.kind == ReversalKind::TieBroken));
    }

    #[test]
    fn single_cone_extreme_along_cycle() {
        let a = fixtures::single_cone_4x4();
        let c = cyc(&[1, 4, 3, 2]);
        let r = count_reversals_along(&a, &wv(&[1, 8, 4, 2]), &c).unwrap();
        assert_eq!(r.along_cycle, Some(1));
        assert!(r.pairs.contains(&Reversal {
            i: 0,
            j: 1,
            kind: ReversalKind::StrictFlip
        }));
    }

    #[test]
    fn symmetric_classification() {
        let a = fixtures::double_perturbed_4x4();
        let w = wv(&[1, 2, 2, 5]);
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(reversal_at(&a, &w, i, j), reversal_at(&a, &w, j, i));
            }
        }
        assert_eq!(reversal_at(&a, &w, 1, 2), None);
        assert_eq!(reversal_at(&a, &w, 0, 1), None);
        assert_eq!(reversal_at(&a, &wv(&[2, 2, 1, 1]), 0, 1), Some(ReversalKind::TieForced));
    }

    #[test]
    fn min_reversal_without_large_entry() {
        let a = fixtures::single_cone_4x4();
        let c = cyc(&[1, 4, 3, 2]);
        let (w, along) = min_reversal_vector(&a, &c).unwrap();
        assert_eq!(along, 1);
        // All four entries tie, so the edge 1->4 closes the cycle.
        let expected = WeightVector::new(vec![int(1), ratio(1, 2), ratio(1, 4), ratio(1, 8)]).unwrap();
        assert_eq!(w, expected);
        assert!(is_efficient(&a, &w).unwrap().is_efficient());
    }

    #[test]
    fn min_reversal_with_large_entry() {
        // Cycle 1->2->3->4->1 with entries 1/2, 1/2, 1, 2: product 1/2.
        let a = ReciprocalMatrix::from_upper_triangle(
            4,
            &[ratio(1, 2), int(1), ratio(1, 2), ratio(1, 2), int(1), int(1)],
        )
        .unwrap();
        let c = cyc(&[1, 2, 3, 4]);
        assert_eq!(cycle_product(&a, &c).unwrap(), ratio(1, 2));
        let (w, along) = min_reversal_vector(&a, &c).unwrap();
        assert_eq!(along, 0);
        assert!(is_efficient(&a, &w).unwrap().is_efficient());
    }

    #[test]
    fn min_reversal_rejects_large_product() {
        let a = fixtures::single_cone_4x4();
        assert!(matches!(
            min_reversal_vector(&a, &cyc(&[1, 2, 3, 4])),
            Err(Error::Contract(_))
        ));
    }
}
