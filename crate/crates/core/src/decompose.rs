//! Enumeration of Hamiltonian cycle products and the cone decomposition of
//! the efficient set: `E(A)` is the union of `eps_A(C)` over all cycles `C`
//! with product `< 1`, or a single ray when `A` is consistent.

use num_traits::One;
use rayon::prelude::*;

use crate::cones::{CycleProduct, EfficiencyCone};
use crate::cycle::HamiltonianCycle;
use crate::error::{Error, Result};
use crate::graph::{build_digraph, is_efficient, strongly_connected};
use crate::matrix::{ReciprocalMatrix, WeightVector};
use crate::rational::{ratio, Rational};

pub const DEFAULT_CAP: usize = 10;

/// Cycles with product `<= 1` and `< 1`, each in lexicographic order of the
/// vertex sequence starting at vertex 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CycleClasses {
    pub at_most_one: Vec<CycleProduct>,
    pub below_one: Vec<CycleProduct>,
}

impl CycleClasses {
    /// Cycles with product exactly 1.
    pub fn unit(&self) -> impl Iterator<Item = &CycleProduct> {
        self.at_most_one.iter().filter(|cp| cp.product.is_one())
    }
}

fn check_cap(n: usize, cap: usize) -> Result<()> {
    if n > cap {
        return Err(Error::CapExceeded { n, cap });
    }
    Ok(())
}

/// All `(n-1)!` cycles anchored at vertex 0 whose product satisfies `keep`,
/// in lexicographic order.
pub fn collect_cycles<F>(a: &ReciprocalMatrix, cap: usize, keep: F) -> Result<Vec<CycleProduct>>
where
    F: Fn(&Rational) -> bool + Sync,
{
    let n = a.dim();
    check_cap(n, cap)?;
    let chunks: Vec<Vec<CycleProduct>> = (1..n)
        .into_par_iter()
        .map(|second| {
            let mut out = Vec::new();
            let mut path = vec![0, second];
            let mut used = vec![false; n];
            used[0] = true;
            used[second] = true;
            extend(a, &keep, &mut path, &mut used, a.get(0, second).clone(), &mut out);
            out
        })
        .collect();
    Ok(chunks.into_iter().flatten().collect())
}

fn extend<F: Fn(&Rational) -> bool>(
    a: &ReciprocalMatrix,
    keep: &F,
    path: &mut Vec<usize>,
    used: &mut [bool],
    product: Rational,
    out: &mut Vec<CycleProduct>,
) {
    let n = a.dim();
    let last = *path.last().expect("non-empty path");
    if path.len() == n {
        let product = product * a.get(last, 0);
        if keep(&product) {
            out.push(CycleProduct {
                cycle: HamiltonianCycle::from_permutation(path.clone()),
                product,
            });
        }
        return;
    }
    for v in 1..n {
        if used[v] {
            continue;
        }
        used[v] = true;
        path.push(v);
        extend(a, keep, path, used, &product * a.get(last, v), out);
        path.pop();
        used[v] = false;
    }
}

/// Every cycle with its product.
pub fn all_cycle_products(a: &ReciprocalMatrix, cap: usize) -> Result<Vec<CycleProduct>> {
    collect_cycles(a, cap, |_| true)
}

pub fn enumerate_cycles(a: &ReciprocalMatrix, cap: usize) -> Result<CycleClasses> {
    let one = Rational::one();
    let at_most_one = collect_cycles(a, cap, |p| *p <= one)?;
    let below_one = at_most_one.iter().filter(|cp| cp.product < one).cloned().collect();
    Ok(CycleClasses {
        at_most_one,
        below_one,
    })
}

/// `E(A)` as a union of cones. For a consistent matrix the efficient set is
/// the ray through any column: `cones` and `unit_cycles` are then empty and
/// `ray` holds the normalized generator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    pub matrix: ReciprocalMatrix,
    pub cones: Vec<EfficiencyCone>,
    pub unit_cycles: Vec<HamiltonianCycle>,
    pub ray: Option<WeightVector>,
}

impl Decomposition {
    pub fn dim(&self) -> usize {
        self.matrix.dim()
    }

    pub fn is_consistent(&self) -> bool {
        self.ray.is_some()
    }

    /// Cycles of all cones followed by the unit cycles.
    pub fn pi_one(&self) -> impl Iterator<Item = &HamiltonianCycle> {
        self.cones.iter().map(|c| &c.cycle).chain(&self.unit_cycles)
    }

    pub fn contains(&self, w: &WeightVector) -> bool {
        membership(self, w).is_some()
    }
}

pub fn decompose(a: &ReciprocalMatrix, cap: usize) -> Result<Decomposition> {
    if a.is_consistent() {
        return Ok(Decomposition {
            matrix: a.clone(),
            cones: Vec::new(),
            unit_cycles: Vec::new(),
            ray: Some(a.column(0)?.normalized()),
        });
    }
    let classes = enumerate_cycles(a, cap)?;
    let cones = classes
        .below_one
        .par_iter()
        .map(|cp| EfficiencyCone::new(a, &cp.cycle))
        .collect::<Result<Vec<_>>>()?;
    let unit_cycles = classes.unit().map(|cp| cp.cycle.clone()).collect();
    Ok(Decomposition {
        matrix: a.clone(),
        cones,
        unit_cycles,
        ray: None,
    })
}

/// The first cone containing `w`. For a consistent matrix a vector on the
/// ray is reported with the identity cycle.
pub fn membership(d: &Decomposition, w: &WeightVector) -> Option<HamiltonianCycle> {
    if w.dim() != d.dim() {
        return None;
    }
    if let Some(ray) = &d.ray {
        return ray.is_proportional(w).then(|| HamiltonianCycle::identity(d.dim()));
    }
    d.cones.iter().find(|c| c.contains(w)).map(|c| c.cycle.clone())
}

/// Two efficient vectors with an inefficient convex combination `t u + (1 - t) v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConvexityWitness {
    pub u: WeightVector,
    pub v: WeightVector,
    pub t: Rational,
}

impl ConvexityWitness {
    pub fn combination(&self) -> WeightVector {
        self.u.convex_combination(&self.v, &self.t)
    }

    /// Re-checks both endpoints and the combination through the digraph test.
    pub fn validate(&self, a: &ReciprocalMatrix) -> bool {
        let efficient = |w: &WeightVector| is_efficient(a, w).map(|c| c.is_efficient()).unwrap_or(false);
        efficient(&self.u) && efficient(&self.v) && !efficient(&self.combination())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ConvexityVerdict {
    Convex,
    NonConvex,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConvexityReport {
    /// At most one cycle has product `< 1`.
    SingleCycle,
    /// Every cone lies inside `eps_A(cycle)` for a cycle of product `<= 1`,
    /// so `E(A)` is that single cone.
    CommonCycle { cycle: HamiltonianCycle },
    NonConvex { witness: ConvexityWitness },
    /// No witness among the first `pairs_tested` extreme pairs.
    Unknown { pairs_tested: usize },
}

impl ConvexityReport {
    pub fn verdict(&self) -> ConvexityVerdict {
        match self {
            ConvexityReport::SingleCycle | ConvexityReport::CommonCycle { .. } => ConvexityVerdict::Convex,
            ConvexityReport::NonConvex { .. } => ConvexityVerdict::NonConvex,
            ConvexityReport::Unknown { .. } => ConvexityVerdict::Unknown,
        }
    }

    pub fn reason(&self) -> &'static str {
        match self {
            ConvexityReport::SingleCycle => "single-cycle",
            ConvexityReport::CommonCycle { .. } => "common-cycle",
            ConvexityReport::NonConvex { .. } => "witness",
            ConvexityReport::Unknown { .. } => "no-witness",
        }
    }
}

/// Sound but incomplete convexity check. Pairs of extreme vectors from
/// distinct cones are combined with `t` in `{1/4, 1/2, 3/4}`; at most
/// `samples` pairs are examined.
pub fn convexity_report(d: &Decomposition, samples: usize) -> ConvexityReport {
    if d.ray.is_some() {
        return ConvexityReport::CommonCycle {
            cycle: HamiltonianCycle::identity(d.dim()),
        };
    }
    if d.cones.len() <= 1 {
        return ConvexityReport::SingleCycle;
    }
    if let Some(cycle) = common_cycle(d) {
        return ConvexityReport::CommonCycle { cycle };
    }
    let a = &d.matrix;
    let weights = [ratio(1, 4), ratio(1, 2), ratio(3, 4)];
    let mut pairs_tested = 0;
    for (p, cp) in d.cones.iter().enumerate() {
        for cq in &d.cones[p + 1..] {
            for u in &cp.extremes {
                for v in &cq.extremes {
                    if pairs_tested == samples {
                        return ConvexityReport::Unknown { pairs_tested };
                    }
                    pairs_tested += 1;
                    // Extremes are efficient; only the combination needs
                    // screening, and a full validation runs on a hit.
                    for t in &weights {
                        let mix = u.convex_combination(v, t);
                        let connected = build_digraph(a, &mix)
                            .map(|g| strongly_connected(&g).is_strongly_connected())
                            .unwrap_or(true);
                        if connected {
                            continue;
                        }
                        let witness = ConvexityWitness {
                            u: u.clone(),
                            v: v.clone(),
                            t: t.clone(),
                        };
                        if witness.validate(a) {
                            return ConvexityReport::NonConvex { witness };
                        }
                    }
                }
            }
        }
    }
    ConvexityReport::Unknown { pairs_tested }
}

/// A cycle of product `<= 1` whose cone holds every extreme of every cone.
fn common_cycle(d: &Decomposition) -> Option<HamiltonianCycle> {
    let a = &d.matrix;
    let n = a.dim();
    // Edges present in the dominance digraph of every extreme vector.
    let mut common = vec![true; n * n];
    for w in d.cones.iter().flat_map(|c| &c.extremes) {
        for i in 0..n {
            for j in 0..n {
                if i != j && common[i * n + j] && *w.get(i) < a.get(i, j) * w.get(j) {
                    common[i * n + j] = false;
                }
            }
        }
    }
    d.pi_one()
        .find(|c| c.edges().all(|(i, j)| common[i * n + j]))
        .cloned()
}
