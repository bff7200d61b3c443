//! Seeded random matrices and vectors for fixtures and sweeps.

use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::{make_consistent, monomial_similarity, MonomialTransform, ReciprocalMatrix, WeightVector};
use crate::rational::{int, ratio, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    Consistent,
    Simple,
    Double,
    Column,
    Random,
}

impl FromStr for GeneratorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "consistent" => Ok(GeneratorKind::Consistent),
            "simple" => Ok(GeneratorKind::Simple),
            "double" => Ok(GeneratorKind::Double),
            "column" => Ok(GeneratorKind::Column),
            "random" => Ok(GeneratorKind::Random),
            other => Err(Error::Domain(format!(
                "unknown kind `{other}` (expected consistent, simple, double, column or random)"
            ))),
        }
    }
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A value of the 1..9 scale or its reciprocal.
pub fn saaty<R: Rng>(rng: &mut R) -> Rational {
    let k = rng.gen_range(1..=9);
    if rng.gen_bool(0.5) {
        int(k)
    } else {
        ratio(1, k)
    }
}

fn saaty_not_one<R: Rng>(rng: &mut R) -> Rational {
    let k = rng.gen_range(2..=9);
    if rng.gen_bool(0.5) {
        int(k)
    } else {
        ratio(1, k)
    }
}

/// Independent scale values above the diagonal.
pub fn random_reciprocal<R: Rng>(rng: &mut R, n: usize) -> Result<ReciprocalMatrix> {
    let upper: Vec<Rational> = (0..n * (n - 1) / 2).map(|_| saaty(rng)).collect();
    ReciprocalMatrix::from_upper_triangle(n, &upper)
}

/// Components `p/q` with `p, q` in `1..=max`.
pub fn random_vector<R: Rng>(rng: &mut R, n: usize, max: i64) -> WeightVector {
    let comps = (0..n)
        .map(|_| ratio(rng.gen_range(1..=max), rng.gen_range(1..=max)))
        .collect();
    WeightVector::new(comps).expect("positive components")
}

pub fn random_transform<R: Rng>(rng: &mut R, n: usize) -> MonomialTransform {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let scale = (0..n).map(|_| ratio(rng.gen_range(1..=9), rng.gen_range(1..=9))).collect();
    MonomialTransform::new(scale, perm).expect("valid transform")
}

/// The all-ones matrix with the pair `(0, m)` replaced by `value`.
pub fn simple_perturbed(n: usize, m: usize, value: Rational) -> Result<ReciprocalMatrix> {
    let mut first = vec![int(1); n - 1];
    first[m - 1] = value;
    with_first_row(n, first)
}

/// The all-ones matrix with first row `1, first...`.
pub fn with_first_row(n: usize, first: Vec<Rational>) -> Result<ReciprocalMatrix> {
    if first.len() + 1 != n {
        return Err(Error::DimensionMismatch {
            expected: n - 1,
            found: first.len(),
        });
    }
    let mut upper = first;
    upper.extend(std::iter::repeat_n(int(1), (n - 1) * (n - 2) / 2));
    ReciprocalMatrix::from_upper_triangle(n, &upper)
}

/// A matrix of the requested structural class, deterministic in `seed`.
///
/// `simple` and `double` perturb the all-ones matrix in its first row (one
/// entry, or two distinct entries); `column` draws a first row with at least
/// two distinct values and scrambles it by a random monomial similarity.
pub fn generate(kind: GeneratorKind, n: usize, seed: u64) -> Result<ReciprocalMatrix> {
    let min = match kind {
        GeneratorKind::Consistent | GeneratorKind::Random => 2,
        GeneratorKind::Simple | GeneratorKind::Column => 3,
        GeneratorKind::Double => 4,
    };
    if n < min {
        return Err(Error::Domain(format!("kind needs n >= {min}, got {n}")));
    }
    let mut rng = rng(seed);
    match kind {
        GeneratorKind::Consistent => {
            let comps = (0..n).map(|_| int(rng.gen_range(1..=9))).collect();
            Ok(make_consistent(&WeightVector::new(comps)?))
        }
        GeneratorKind::Random => random_reciprocal(&mut rng, n),
        GeneratorKind::Simple => {
            let m = rng.gen_range(1..n);
            simple_perturbed(n, m, saaty_not_one(&mut rng))
        }
        GeneratorKind::Double => {
            let mut first = vec![int(1); n - 1];
            let mut slots: Vec<usize> = (0..n - 1).collect();
            slots.shuffle(&mut rng);
            let x = saaty_not_one(&mut rng);
            let y = loop {
                let y = saaty_not_one(&mut rng);
                if y != x {
                    break y;
                }
            };
            first[slots[0]] = x;
            first[slots[1]] = y;
            with_first_row(n, first)
        }
        GeneratorKind::Column => {
            let first = loop {
                let first: Vec<Rational> = (0..n - 1).map(|_| saaty(&mut rng)).collect();
                if first.iter().any(|x| *x != first[0]) {
                    break first;
                }
            };
            let canonical = with_first_row(n, first)?;
            monomial_similarity(&canonical, &random_transform(&mut rng, n))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perturbed::{classify_perturbation, PerturbationClass};

    #[test]
    fn kinds_parse() {
        assert_eq!("column".parse::<GeneratorKind>().unwrap(), GeneratorKind::Column);
        assert!("banana".parse::<GeneratorKind>().is_err());
    }

    #[test]
    fn deterministic() {
        assert_eq!(
            generate(GeneratorKind::Random, 4, 7).unwrap(),
            generate(GeneratorKind::Random, 4, 7).unwrap()
        );
    }

    #[test]
    fn classes_match() {
        for seed in 0..20 {
            assert!(generate(GeneratorKind::Consistent, 5, seed).unwrap().is_consistent());
            assert_eq!(
                classify_perturbation(&generate(GeneratorKind::Simple, 5, seed).unwrap()),
                PerturbationClass::Simple
            );
            assert_eq!(
                classify_perturbation(&generate(GeneratorKind::Double, 5, seed).unwrap()),
                PerturbationClass::DoubleInColumn
            );
            let c = classify_perturbation(&generate(GeneratorKind::Column, 6, seed).unwrap());
            assert!(matches!(
                c,
                PerturbationClass::Simple | PerturbationClass::DoubleInColumn | PerturbationClass::Column
            ));
        }
    }

    #[test]
    fn size_checks() {
        assert!(generate(GeneratorKind::Double, 3, 0).is_err());
        assert!(generate(GeneratorKind::Column, 2, 0).is_err());
        assert!(generate(GeneratorKind::Random, 1, 0).is_err());
    }
}
