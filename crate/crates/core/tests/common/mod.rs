//! Helpers shared by the integration targets: fixture lists, vector samplers
//! and small independent reimplementations used as oracles.

#![allow(dead_code)]

use num_traits::{One, Zero};
use pcm_core::cones::EfficiencyCone;
use pcm_core::generate::{generate, random_reciprocal, rng, GeneratorKind};
use pcm_core::rational::{int, ratio};
use pcm_core::{fixtures, HamiltonianCycle, Rational, ReciprocalMatrix, WeightVector};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub fn r(p: i64, q: i64) -> Rational {
    ratio(p, q)
}

pub fn wv(v: &[i64]) -> WeightVector {
    WeightVector::new(v.iter().map(|&x| int(x)).collect()).unwrap()
}

pub fn cyc(one_based: &[usize]) -> HamiltonianCycle {
    HamiltonianCycle::from_one_based(one_based).unwrap()
}

/// Named reference matrices plus seeded generated ones, all with `n <= 6`.
pub fn fixture_suite() -> Vec<(String, ReciprocalMatrix)> {
    let mut out = vec![
        ("single_cone_4x4".to_string(), fixtures::single_cone_4x4()),
        ("column_perturbed_5x5".to_string(), fixtures::column_perturbed_5x5()),
        ("double_perturbed_4x4".to_string(), fixtures::double_perturbed_4x4()),
        ("ones_4".to_string(), ReciprocalMatrix::ones(4)),
    ];
    let kinds = [
        (GeneratorKind::Consistent, "consistent", 3),
        (GeneratorKind::Simple, "simple", 3),
        (GeneratorKind::Double, "double", 4),
        (GeneratorKind::Column, "column", 3),
        (GeneratorKind::Random, "random", 3),
    ];
    for (kind, name, min) in kinds {
        for n in min..=6 {
            for seed in 0..3 {
                out.push((format!("{name}_{n}_{seed}"), generate(kind, n, seed).unwrap()));
            }
        }
    }
    out
}

/// Reciprocal matrices with entries from `{1/2, 1, 2}`, which produce many
/// cycles of product exactly 1.
pub fn coarse_random(rng: &mut ChaCha8Rng, n: usize) -> ReciprocalMatrix {
    let upper: Vec<Rational> = (0..n * (n - 1) / 2)
        .map(|_| match rng.gen_range(0..3) {
            0 => r(1, 2),
            1 => int(1),
            _ => int(2),
        })
        .collect();
    ReciprocalMatrix::from_upper_triangle(n, &upper).unwrap()
}

pub fn random_matrix(rng: &mut ChaCha8Rng, n: usize) -> ReciprocalMatrix {
    if rng.gen_bool(0.3) {
        coarse_random(rng, n)
    } else {
        random_reciprocal(rng, n).unwrap()
    }
}

pub fn seeded(seed: u64) -> ChaCha8Rng {
    rng(seed)
}

/// Every ordering of `items`, in lexicographic order of positions.
pub fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for (k, &x) in items.iter().enumerate() {
        let mut rest = items.to_vec();
        rest.remove(k);
        for mut tail in permutations(&rest) {
            tail.insert(0, x);
            out.push(tail);
        }
    }
    out
}

/// All Hamiltonian cycles anchored at vertex 0, as vertex orders.
pub fn all_cycles(n: usize) -> Vec<Vec<usize>> {
    let rest: Vec<usize> = (1..n).collect();
    permutations(&rest)
        .into_iter()
        .map(|tail| std::iter::once(0).chain(tail).collect())
        .collect()
}

pub fn product_along(a: &ReciprocalMatrix, order: &[usize]) -> Rational {
    let n = order.len();
    (0..n).fold(Rational::one(), |acc, k| acc * a.get(order[k], order[(k + 1) % n]))
}

/// Cycle orders (anchored at 0) with product `< 1`, found by brute force.
pub fn brute_below_one(a: &ReciprocalMatrix) -> Vec<Vec<usize>> {
    all_cycles(a.dim())
        .into_iter()
        .filter(|c| product_along(a, c) < Rational::one())
        .collect()
}

/// Direct efficiency test: some cycle's inequalities all hold at `w`.
pub fn brute_efficient(a: &ReciprocalMatrix, w: &WeightVector) -> bool {
    let n = a.dim();
    all_cycles(n).iter().any(|c| {
        (0..n).all(|k| {
            let (i, j) = (c[k], c[(k + 1) % n]);
            *w.get(i) >= a.get(i, j) * w.get(j)
        })
    })
}

/// Exact Gauss-Jordan solve of a square system; `None` if singular.
pub fn solve(mut m: Vec<Vec<Rational>>, mut b: Vec<Rational>) -> Option<Vec<Rational>> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).find(|&r| !m[r][col].is_zero())?;
        m.swap(col, p);
        b.swap(col, p);
        for r in 0..n {
            if r != col && !m[r][col].is_zero() {
                let f = &m[r][col] / &m[col][col];
                let pivot = m[col].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot).skip(col) {
                    *x -= &f * y;
                }
                let d = &f * &b[col];
                b[r] -= d;
            }
        }
    }
    Some((0..n).map(|k| &b[k] / &m[k][k]).collect())
}

/// The cone generator that leaves edge `relaxed` slack, computed by solving
/// the `n - 1` tight equalities together with `w_0 = 1`.
pub fn generator_by_solve(a: &ReciprocalMatrix, order: &[usize], relaxed: usize) -> WeightVector {
    let n = order.len();
    let mut rows = Vec::new();
    let mut rhs = Vec::new();
    for k in (0..n).filter(|&k| k != relaxed) {
        let (i, j) = (order[k], order[(k + 1) % n]);
        let mut row = vec![Rational::zero(); n];
        row[i] = int(1);
        row[j] = -a.get(i, j).clone();
        rows.push(row);
        rhs.push(Rational::zero());
    }
    let mut pin = vec![Rational::zero(); n];
    pin[0] = int(1);
    rows.push(pin);
    rhs.push(int(1));
    WeightVector::new(solve(rows, rhs).expect("tight system is nonsingular")).unwrap()
}

pub fn random_rational(rng: &mut ChaCha8Rng, max: i64) -> Rational {
    r(rng.gen_range(1..=max), rng.gen_range(1..=max))
}

pub fn random_vector(rng: &mut ChaCha8Rng, n: usize) -> WeightVector {
    WeightVector::new((0..n).map(|_| random_rational(rng, 12)).collect()).unwrap()
}

/// Random positive combination of the extremes of `cone`.
pub fn cone_member(rng: &mut ChaCha8Rng, cone: &EfficiencyCone) -> WeightVector {
    let n = cone.cycle.len();
    let mut acc = vec![Rational::zero(); n];
    for e in &cone.extremes {
        let c = r(rng.gen_range(0..=9), rng.gen_range(1..=9));
        for (x, y) in acc.iter_mut().zip(e.components()) {
            *x += &c * y;
        }
    }
    if acc.iter().any(|x| x.is_zero()) {
        return cone.extremes[0].clone();
    }
    WeightVector::new(acc).unwrap()
}

/// Nudges one coordinate by a small relative amount; lands near cone
/// boundaries from either side.
pub fn nudge(rng: &mut ChaCha8Rng, w: &WeightVector) -> WeightVector {
    let mut v = w.components().to_vec();
    let k = rng.gen_range(0..v.len());
    let f = r(rng.gen_range(90..=110), 100);
    v[k] = &v[k] * f;
    WeightVector::new(v).unwrap()
}

/// A mix of uniform random vectors, cone members, their nudges and
/// columns of `a`, so that both efficient and inefficient vectors occur.
pub fn mixed_vector(rng: &mut ChaCha8Rng, a: &ReciprocalMatrix, cones: &[EfficiencyCone]) -> WeightVector {
    let n = a.dim();
    match rng.gen_range(0..4) {
        0 => random_vector(rng, n),
        1 if !cones.is_empty() => {
            let c = &cones[rng.gen_range(0..cones.len())];
            cone_member(rng, c)
        }
        2 if !cones.is_empty() => {
            let c = &cones[rng.gen_range(0..cones.len())];
            let m = cone_member(rng, c);
            nudge(rng, &m)
        }
        _ => {
            let col = a.column(rng.gen_range(0..n)).unwrap();
            if rng.gen_bool(0.5) {
                nudge(rng, &col)
            } else {
                col
            }
        }
    }
}
