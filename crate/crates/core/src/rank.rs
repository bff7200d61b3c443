//! Candidate ranking vectors and their efficiency certificates.
//!
//! Columns and weighted geometric means of columns are always efficient.
//! The Perron vector of `A` and of `A A^T` may or may not be; they are
//! irrational in general, so the certificate attached to them refers to the
//! rationalized approximation only.

use std::fmt;

use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::cycle::HamiltonianCycle;
use crate::decompose::collect_cycles;
use crate::error::{Error, Result};
use crate::graph::{is_efficient, EfficiencyCertificate};
use crate::matrix::{ReciprocalMatrix, WeightVector};
use crate::rational::{exact_nth_root, nth_root, pow, rationalize, to_f64, Rational};

pub const POWER_ITERATION_CAP: usize = 10_000;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RankingMethod {
    Column(usize),
    GeometricMean,
    WeightedGeometric(Vec<Rational>),
    Perron,
    Singular,
}

impl fmt::Display for RankingMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RankingMethod::Column(k) => write!(f, "column({})", k + 1),
            RankingMethod::GeometricMean => write!(f, "geometric-mean"),
            RankingMethod::WeightedGeometric(_) => write!(f, "weighted-geometric"),
            RankingMethod::Perron => write!(f, "perron"),
            RankingMethod::Singular => write!(f, "singular"),
        }
    }
}

/// Convergence record of a power iteration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpectralQuality {
    pub iterations: usize,
    pub eigenvalue: f64,
    /// `|M v - lambda v|_inf / |v|_inf` for the rationalized `v`.
    pub residual: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct RankingCandidate {
    pub method: RankingMethod,
    pub vector: WeightVector,
    /// `vector` is the exact value of the method rather than an approximation.
    pub exact: bool,
    pub certificate: EfficiencyCertificate,
    pub quality: Option<SpectralQuality>,
}

pub fn column_vector(a: &ReciprocalMatrix, k: usize) -> Result<RankingCandidate> {
    let vector = a.column(k)?;
    let certificate = is_efficient(a, &vector)?;
    Ok(RankingCandidate {
        method: RankingMethod::Column(k),
        vector,
        exact: true,
        certificate,
        quality: None,
    })
}

/// `w_i = prod_k a_ik^(t_k)`.
///
/// With `q` the common denominator of `t`, `w_i^q` is the rational
/// `R_i = prod_k a_ik^(q t_k)`. The vector is exact when every `R_i` has a
/// rational `q`-th root and is otherwise an approximation within `rel_tol`
/// that keeps rational relations between components exact. The
/// certificate always concerns the exact vector: `w_i >= a_ij w_j` holds iff
/// `R_i >= a_ij^q R_j`.
pub fn weighted_geometric(a: &ReciprocalMatrix, t: &[Rational], rel_tol: &Rational) -> Result<RankingCandidate> {
    let n = a.dim();
    if t.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: t.len(),
        });
    }
    if t.iter().any(|x| x.is_negative()) || t.iter().sum::<Rational>() != Rational::one() {
        return Err(Error::Domain("weights must be nonnegative and sum to 1".into()));
    }
    if !rel_tol.is_positive() {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    let q_big = t.iter().fold(num_bigint::BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let q = q_big
        .to_u32()
        .ok_or_else(|| Error::Domain("weight denominators are too large".into()))?;
    let exps: Vec<u32> = t
        .iter()
        .map(|x| (x * Rational::from_integer(q_big.clone())).to_integer().to_u32().expect("0 <= t_k q <= q"))
        .collect();
    let powers: Vec<Rational> = (0..n)
        .map(|i| {
            (0..n)
                .filter(|&k| exps[k] > 0)
                .fold(Rational::one(), |acc, k| acc * pow(a.get(i, k), exps[k]))
        })
        .collect();

    let exact = powers.iter().all(|r| exact_nth_root(r, q).is_some());
    let vector = WeightVector::from_positive(grouped_roots(&powers, q, rel_tol)).normalized();

    let certificate = if exact {
        is_efficient(a, &vector)?
    } else {
        let rows: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| pow(a.get(i, j), q)).collect()).collect();
        let aq = ReciprocalMatrix::from_rows(rows)?;
        is_efficient(&aq, &WeightVector::from_positive(powers))?
    };
    let method = if t.iter().all(|x| *x == t[0]) {
        RankingMethod::GeometricMean
    } else {
        RankingMethod::WeightedGeometric(t.to_vec())
    };
    Ok(RankingCandidate {
        method,
        vector,
        exact,
        certificate,
        quality: None,
    })
}

/// `q`-th roots of `powers`. Components whose ratio has a rational root
/// share one approximated representative and differ from it by that exact
/// factor, so every rational relation between components (in particular
/// any tie `w_i = a_ij w_j`) survives the approximation.
fn grouped_roots(powers: &[Rational], q: u32, rel_tol: &Rational) -> Vec<Rational> {
    let n = powers.len();
    let mut roots: Vec<Option<Rational>> = vec![None; n];
    for i in 0..n {
        if roots[i].is_some() {
            continue;
        }
        let base = nth_root(&powers[i], q, rel_tol);
        for j in i + 1..n {
            if roots[j].is_none() {
                if let Some(f) = exact_nth_root(&(&powers[j] / &powers[i]), q) {
                    roots[j] = Some(&base * f);
                }
            }
        }
        roots[i] = Some(base);
    }
    roots.into_iter().map(|r| r.expect("every component assigned")).collect()
}

pub fn geometric_mean(a: &ReciprocalMatrix, rel_tol: &Rational) -> Result<RankingCandidate> {
    let n = a.dim();
    let t = vec![Rational::new(1.into(), (n as i64).into()); n];
    weighted_geometric(a, &t, rel_tol)
}

fn to_f64_matrix(a: &ReciprocalMatrix) -> Vec<Vec<f64>> {
    a.rows().map(|r| r.iter().map(to_f64).collect()).collect()
}

fn mat_vec(m: &[Vec<f64>], v: &[f64]) -> Vec<f64> {
    m.iter().map(|row| row.iter().zip(v).map(|(x, y)| x * y).sum()).collect()
}

/// Power iteration from the all-ones vector until the spread of the ratios
/// `(M v)_i / v_i` falls below `tol`. Returns the iterate scaled to first
/// component 1, the eigenvalue estimate and the iteration count.
pub fn power_iteration(m: &[Vec<f64>], tol: f64, cap: usize) -> Result<(Vec<f64>, f64, usize)> {
    let n = m.len();
    let mut v = vec![1.0; n];
    let mut change = f64::INFINITY;
    for it in 1..=cap {
        let u = mat_vec(m, &v);
        let (lo, hi) = u
            .iter()
            .zip(&v)
            .map(|(x, y)| x / y)
            .fold((f64::INFINITY, 0.0f64), |(lo, hi), r| (lo.min(r), hi.max(r)));
        change = hi / lo - 1.0;
        v = u.iter().map(|x| x / u[0]).collect();
        if change < tol {
            return Ok((v, (lo + hi) / 2.0, it));
        }
    }
    Err(Error::NonConvergence {
        iterations: cap,
        last_change: change,
    })
}

fn spectral(a: &ReciprocalMatrix, m: Vec<Vec<f64>>, method: RankingMethod, tol: &Rational) -> Result<RankingCandidate> {
    if !tol.is_positive() {
        return Err(Error::Domain("tolerance must be positive".into()));
    }
    let (v, lambda, iterations) = power_iteration(&m, to_f64(tol), POWER_ITERATION_CAP)?;
    let comps = v
        .iter()
        .map(|&x| rationalize(x, tol).ok_or_else(|| Error::Domain(format!("iterate {x} is not positive"))))
        .collect::<Result<Vec<_>>>()?;
    let vector = WeightVector::new(comps)?.normalized();
    let vf: Vec<f64> = vector.components().iter().map(to_f64).collect();
    let mv = mat_vec(&m, &vf);
    let norm = vf.iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
    let residual = mv
        .iter()
        .zip(&vf)
        .fold(0.0f64, |acc, (x, y)| acc.max((x - lambda * y).abs()))
        / norm;
    let certificate = is_efficient(a, &vector)?;
    Ok(RankingCandidate {
        method,
        vector,
        exact: false,
        certificate,
        quality: Some(SpectralQuality {
            iterations,
            eigenvalue: lambda,
            residual,
        }),
    })
}

pub fn perron_vector(a: &ReciprocalMatrix, tol: &Rational) -> Result<RankingCandidate> {
    spectral(a, to_f64_matrix(a), RankingMethod::Perron, tol)
}

/// Perron vector of `A A^T`.
pub fn singular_vector(a: &ReciprocalMatrix, tol: &Rational) -> Result<RankingCandidate> {
    let m = to_f64_matrix(a);
    let n = m.len();
    let aat: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| (0..n).map(|k| m[i][k] * m[j][k]).sum()).collect())
        .collect();
    spectral(a, aat, RankingMethod::Singular, tol)
}

/// The first cycle (lexicographic) of product `<= 1` whose cone holds every
/// column of `A`.
pub fn columns_common_cone(a: &ReciprocalMatrix, cap: usize) -> Result<Option<HamiltonianCycle>> {
    let n = a.dim();
    let columns = (0..n).map(|k| a.column(k)).collect::<Result<Vec<_>>>()?;
    let mut common = vec![true; n * n];
    for w in &columns {
        for i in 0..n {
            for j in 0..n {
                if *w.get(i) < a.get(i, j) * w.get(j) {
                    common[i * n + j] = false;
                }
            }
        }
    }
    let one = Rational::one();
    let cycles = collect_cycles(a, cap, |p| *p <= one)?;
    Ok(cycles
        .into_iter()
        .map(|cp| cp.cycle)
        .find(|c| c.edges().all(|(i, j)| common[i * n + j])))
}

/// Columns, geometric mean, Perron and singular vectors.
pub fn rank_all(a: &ReciprocalMatrix, tol: &Rational) -> Vec<(RankingMethod, Result<RankingCandidate>)> {
    let mut out: Vec<(RankingMethod, Result<RankingCandidate>)> =
        (0..a.dim()).map(|k| (RankingMethod::Column(k), column_vector(a, k))).collect();
    out.push((RankingMethod::GeometricMean, geometric_mean(a, tol)));
    out.push((RankingMethod::Perron, perron_vector(a, tol)));
    out.push((RankingMethod::Singular, singular_vector(a, tol)));
    out
}

/// Nonnegative combination `sum_k c_k column_k`.
pub fn column_combination(a: &ReciprocalMatrix, coeffs: &[Rational]) -> Result<WeightVector> {
    let n = a.dim();
    if coeffs.len() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: coeffs.len(),
        });
    }
    if coeffs.iter().any(|c| c.is_negative()) || coeffs.iter().all(|c| c.is_zero()) {
        return Err(Error::Domain("coefficients must be nonnegative and not all zero".into()));
    }
    let comps = (0..n)
        .map(|i| (0..n).map(|k| &coeffs[k] * a.get(i, k)).sum())
        .collect();
    WeightVector::new(comps)
}
