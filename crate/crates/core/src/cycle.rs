use std::fmt;

use crate::error::{Error, Result};

/// A directed Hamiltonian cycle `g1 -> g2 -> ... -> gn -> g1`, stored rotated
/// so that it starts at vertex 0. A cycle and its reverse are different values.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct HamiltonianCycle {
    order: Vec<usize>,
}

impl HamiltonianCycle {
    /// Accepts any rotation of a permutation of `0..n`.
    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        if n < 2 {
            return Err(Error::Domain("a Hamiltonian cycle needs at least 2 vertices".into()));
        }
        let mut seen = vec![false; n];
        for &v in &order {
            if v >= n || seen[v] {
                return Err(Error::Domain(format!(
                    "cycle order is not a permutation of 1..{n}"
                )));
            }
            seen[v] = true;
        }
        Ok(Self::from_permutation(order))
    }

    pub fn from_one_based(order: &[usize]) -> Result<Self> {
        if order.contains(&0) {
            return Err(Error::Domain("vertices are numbered from 1".into()));
        }
        Self::new(order.iter().map(|v| v - 1).collect())
    }

    pub(crate) fn from_permutation(mut order: Vec<usize>) -> Self {
        let start = order.iter().position(|&v| v == 0).expect("permutation contains 0");
        order.rotate_left(start);
        HamiltonianCycle { order }
    }

    /// `0 -> 1 -> ... -> n-1 -> 0`.
    pub fn identity(n: usize) -> Self {
        HamiltonianCycle {
            order: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    pub fn one_based(&self) -> Vec<usize> {
        self.order.iter().map(|v| v + 1).collect()
    }

    pub fn reverse(&self) -> Self {
        let mut order = self.order.clone();
        order.reverse();
        Self::from_permutation(order)
    }

    /// The `n` edges `(g_k, g_{k+1})`, wrapping around at the end.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.order.len();
        (0..n).map(move |k| (self.order[k], self.order[(k + 1) % n]))
    }

    /// The vertex order started at position `k`, so that the edge that
    /// started at position `k - 1` becomes the closing edge.
    pub fn rotated(&self, k: usize) -> Vec<usize> {
        let mut order = self.order.clone();
        order.rotate_left(k % self.order.len());
        order
    }
}

impl fmt::Display for HamiltonianCycle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.order {
            write!(f, "{}->", v + 1)?;
        }
        write!(f, "{}", self.order[0] + 1)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_rotation() {
        let c = HamiltonianCycle::new(vec![2, 1, 0, 3]).unwrap();
        assert_eq!(c.order(), &[0, 3, 2, 1]);
        assert_eq!(c.to_string(), "1->4->3->2->1");
        assert_eq!(c.reverse().order(), &[0, 1, 2, 3]);
        assert_eq!(c.reverse().reverse(), c);
    }

    #[test]
    fn rejects_non_permutations() {
        assert!(HamiltonianCycle::new(vec![0, 0, 1]).is_err());
        assert!(HamiltonianCycle::new(vec![0, 3, 1]).is_err());
        assert!(HamiltonianCycle::new(vec![0]).is_err());
        assert!(HamiltonianCycle::from_one_based(&[0, 1, 2]).is_err());
    }

    #[test]
    fn edges_wrap() {
        let c = HamiltonianCycle::from_one_based(&[1, 4, 3, 2]).unwrap();
        let e: Vec<_> = c.edges().collect();
        assert_eq!(e, vec![(0, 3), (3, 2), (2, 1), (1, 0)]);
        assert_eq!(c.rotated(1), vec![3, 2, 1, 0]);
    }
}
