//! The dominance digraph `G(A, w)` and the efficiency test.
//!
//! `w` is efficient for `A` exactly when `G(A, w)` is strongly connected,
//! which for a semi-complete digraph is the same as containing a Hamiltonian
//! cycle. The certificate for efficiency is such a cycle; the certificate for
//! inefficiency is a source component of the condensation (a vertex set that
//! no outside vertex points into).

use crate::cycle::HamiltonianCycle;
use crate::error::{Error, Result};
use crate::matrix::{ReciprocalMatrix, WeightVector};

/// Edge `i -> j` is present iff `w_i >= a_ij w_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominanceDigraph {
    n: usize,
    adjacency: Vec<bool>,
}

impl DominanceDigraph {
    pub fn from_adjacency(n: usize, adjacency: Vec<bool>) -> Result<Self> {
        if adjacency.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: adjacency.len(),
            });
        }
        Ok(DominanceDigraph { n, adjacency })
    }

    pub fn complete(n: usize) -> Self {
        let mut adjacency = vec![true; n * n];
        for i in 0..n {
            adjacency[i * n + i] = false;
        }
        DominanceDigraph { n, adjacency }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && self.adjacency[i * self.n + j]
    }

    pub fn is_semi_complete(&self) -> bool {
        (0..self.n).all(|i| (0..self.n).all(|j| i == j || self.has_edge(i, j) || self.has_edge(j, i)))
    }

    pub fn contains_cycle(&self, cycle: &HamiltonianCycle) -> bool {
        cycle.len() == self.n && cycle.edges().all(|(i, j)| self.has_edge(i, j))
    }
}

pub fn build_digraph(a: &ReciprocalMatrix, w: &WeightVector) -> Result<DominanceDigraph> {
    let n = a.dim();
    if w.dim() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: w.dim(),
        });
    }
    let mut adjacency = vec![false; n * n];
    for i in 0..n {
        for j in 0..n {
            if i != j {
                adjacency[i * n + j] = *w.get(i) >= a.get(i, j) * w.get(j);
            }
        }
    }
    Ok(DominanceDigraph { n, adjacency })
}

/// Strong components of a digraph, listed in topological order of the
/// condensation (sources first). Vertices inside a component are sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Connectivity {
    pub components: Vec<Vec<usize>>,
}

impl Connectivity {
    pub fn is_strongly_connected(&self) -> bool {
        self.components.len() == 1
    }
}

pub fn strongly_connected(g: &DominanceDigraph) -> Connectivity {
    let mut tarjan = Tarjan {
        g,
        index: vec![usize::MAX; g.n],
        low: vec![0; g.n],
        on_stack: vec![false; g.n],
        stack: Vec::new(),
        next: 0,
        components: Vec::new(),
    };
    for v in 0..g.n {
        if tarjan.index[v] == usize::MAX {
            tarjan.visit(v);
        }
    }
    let mut components = tarjan.components;
    // Tarjan emits sinks first.
    components.reverse();
    for c in &mut components {
        c.sort_unstable();
    }
    Connectivity { components }
}

struct Tarjan<'a> {
    g: &'a DominanceDigraph,
    index: Vec<usize>,
    low: Vec<usize>,
    on_stack: Vec<bool>,
    stack: Vec<usize>,
    next: usize,
    components: Vec<Vec<usize>>,
}

impl Tarjan<'_> {
    fn visit(&mut self, v: usize) {
        self.index[v] = self.next;
        self.low[v] = self.next;
        self.next += 1;
        self.stack.push(v);
        self.on_stack[v] = true;
        for u in 0..self.g.n {
            if !self.g.has_edge(v, u) {
                continue;
            }
            if self.index[u] == usize::MAX {
                self.visit(u);
                self.low[v] = self.low[v].min(self.low[u]);
            } else if self.on_stack[u] {
                self.low[v] = self.low[v].min(self.index[u]);
            }
        }
        if self.low[v] == self.index[v] {
            let mut component = Vec::new();
            loop {
                let u = self.stack.pop().expect("v is on the stack");
                self.on_stack[u] = false;
                component.push(u);
                if u == v {
                    break;
                }
            }
            self.components.push(component);
        }
    }
}

/// Hamiltonian path of a semi-complete digraph by insertion, vertices taken
/// in increasing index order.
pub fn hamiltonian_path(g: &DominanceDigraph) -> Vec<usize> {
    let mut path: Vec<usize> = Vec::with_capacity(g.n);
    for v in 0..g.n {
        let Some(&last) = path.last() else {
            path.push(v);
            continue;
        };
        if g.has_edge(last, v) {
            path.push(v);
        } else if g.has_edge(v, path[0]) {
            path.insert(0, v);
        } else {
            // path[0] -> v and v -> last, so some consecutive pair brackets v.
            let pos = (0..path.len() - 1)
                .find(|&i| g.has_edge(path[i], v) && g.has_edge(v, path[i + 1]))
                .expect("semi-complete digraph admits an insertion point");
            path.insert(pos + 1, v);
        }
    }
    path
}

/// Builds a Hamiltonian cycle in a strongly connected semi-complete digraph.
///
/// Starts from the longest cycle closing the insertion path at its first
/// vertex, then absorbs the remaining path vertices in order: a single vertex
/// is spliced between consecutive cycle vertices when possible, otherwise the
/// path segment up to the first vertex with an edge back into the cycle is
/// spliced in whole.
pub fn find_hamiltonian_cycle(g: &DominanceDigraph) -> Result<HamiltonianCycle> {
    let n = g.n;
    let not_strong = || Error::Contract("digraph is not strongly connected".into());
    let path = hamiltonian_path(g);
    let close = (1..n).rev().find(|&j| g.has_edge(path[j], path[0])).ok_or_else(not_strong)?;
    let mut cycle: Vec<usize> = path[..=close].to_vec();
    let mut next = close + 1;
    while next < n {
        let v = path[next];
        let len = cycle.len();
        if let Some(i) = (0..len).find(|&i| g.has_edge(cycle[i], v) && g.has_edge(v, cycle[(i + 1) % len])) {
            cycle.insert(i + 1, v);
            next += 1;
            continue;
        }
        // Every cycle vertex points to v here.
        let (last, target) = (next..n)
            .find_map(|m| cycle.iter().position(|&c| g.has_edge(path[m], c)).map(|k| (m, k)))
            .ok_or_else(not_strong)?;
        let at = if target == 0 { cycle.len() } else { target };
        cycle.splice(at..at, path[next..=last].iter().copied());
        next = last + 1;
    }
    let cycle = HamiltonianCycle::from_permutation(cycle);
    debug_assert!(g.contains_cycle(&cycle));
    Ok(cycle)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum EfficiencyStatus {
    Efficient,
    Inefficient,
}

/// Either a Hamiltonian cycle of `G(A, w)` or a vertex set with no incoming
/// edge from its complement.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum EfficiencyCertificate {
    Efficient { cycle: HamiltonianCycle },
    Inefficient { cut: Vec<usize> },
}

impl EfficiencyCertificate {
    pub fn status(&self) -> EfficiencyStatus {
        match self {
            EfficiencyCertificate::Efficient { .. } => EfficiencyStatus::Efficient,
            EfficiencyCertificate::Inefficient { .. } => EfficiencyStatus::Inefficient,
        }
    }

    pub fn is_efficient(&self) -> bool {
        matches!(self, EfficiencyCertificate::Efficient { .. })
    }

    pub fn cycle(&self) -> Option<&HamiltonianCycle> {
        match self {
            EfficiencyCertificate::Efficient { cycle } => Some(cycle),
            EfficiencyCertificate::Inefficient { .. } => None,
        }
    }

    pub fn cut(&self) -> Option<&[usize]> {
        match self {
            EfficiencyCertificate::Efficient { .. } => None,
            EfficiencyCertificate::Inefficient { cut } => Some(cut),
        }
    }
}

pub fn is_efficient(a: &ReciprocalMatrix, w: &WeightVector) -> Result<EfficiencyCertificate> {
    let g = build_digraph(a, w)?;
    certify(&g)
}

pub(crate) fn certify(g: &DominanceDigraph) -> Result<EfficiencyCertificate> {
    let conn = strongly_connected(g);
    if conn.is_strongly_connected() {
        Ok(EfficiencyCertificate::Efficient {
            cycle: find_hamiltonian_cycle(g)?,
        })
    } else {
        let cut = conn.components.into_iter().next().expect("n >= 1");
        Ok(EfficiencyCertificate::Inefficient { cut })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::matrix::make_consistent;
    use crate::rational::{int, ratio};

    fn wv(v: &[i64]) -> WeightVector {
        WeightVector::new(v.iter().map(|&x| int(x)).collect()).unwrap()
    }

    #[test]
    fn consistent_digraph_is_complete() {
        let w = wv(&[1, 3, 2, 7]);
        let g = build_digraph(&make_consistent(&w), &w).unwrap();
        assert_eq!(g, DominanceDigraph::complete(4));
        assert!(strongly_connected(&g).is_strongly_connected());
    }

    #[test]
    fn complete_digraph_cycle_is_identity() {
        let c = find_hamiltonian_cycle(&DominanceDigraph::complete(3)).unwrap();
        assert_eq!(c.one_based(), vec![1, 2, 3]);
    }

    #[test]
    fn single_cone_column_edges() {
        let a = fixtures::single_cone_4x4();
        let g = build_digraph(&a, &wv(&[1, 8, 4, 2])).unwrap();
        for (i, j) in [(0, 3), (3, 2), (2, 1), (1, 0)] {
            assert!(g.has_edge(i, j), "{} -> {}", i + 1, j + 1);
        }
    }

    #[test]
    fn single_cone_first_column_certificate() {
        let a = fixtures::single_cone_4x4();
        let w = WeightVector::new(vec![int(1), ratio(1, 2), int(1), int(2)]).unwrap();
        let cert = is_efficient(&a, &w).unwrap();
        assert_eq!(cert.cycle().unwrap().one_based(), vec![1, 4, 3, 2]);
    }

    #[test]
    fn double_perturbed_sum_is_inefficient() {
        let a = fixtures::double_perturbed_4x4();
        let w = wv(&[2, 4, 5, 4]);
        let g = build_digraph(&a, &w).unwrap();
        let conn = strongly_connected(&g);
        assert!(!conn.is_strongly_connected());
        let cert = is_efficient(&a, &w).unwrap();
        assert_eq!(cert.status(), EfficiencyStatus::Inefficient);
        let cut = cert.cut().unwrap();
        assert_eq!(cut, &[2]);
        for i in (0..4).filter(|i| !cut.contains(i)) {
            for &j in cut {
                assert!(!g.has_edge(i, j));
            }
        }
        assert!(find_hamiltonian_cycle(&g).is_err());
    }

    #[test]
    fn dimension_mismatch() {
        let a = fixtures::single_cone_4x4();
        assert!(matches!(
            is_efficient(&a, &wv(&[1, 2, 3])),
            Err(Error::DimensionMismatch { expected: 4, found: 3 })
        ));
    }

    #[test]
    fn components_are_topologically_ordered() {
        // 0 -> 1 -> 2, with 1 <-> 2 tied.
        let adj = vec![
            false, true, true, //
            false, false, true, //
            false, true, false,
        ];
        let g = DominanceDigraph::from_adjacency(3, adj).unwrap();
        assert_eq!(strongly_connected(&g).components, vec![vec![0], vec![1, 2]]);
    }
}
