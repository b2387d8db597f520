//! Seeded random sampling helpers: rational coefficients, random
//! polynomials, and points on the unit sphere.
//!
//! Everything takes an explicit RNG so callers (and the test suites) pin
//! seeds and stay reproducible.

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_distr::StandardNormal;

use crate::monomial::monomials_of_degree;
use crate::polynomial::Polynomial;

/// A random rational with numerator in `-bound..=bound` and denominator in
/// `1..=denom_bound`.
pub fn random_rational(rng: &mut impl Rng, bound: i64, denom_bound: i64) -> BigRational {
    let numer = rng.gen_range(-bound..=bound);
    let denom = rng.gen_range(1..=denom_bound);
    BigRational::new(BigInt::from(numer), BigInt::from(denom))
}

/// A random homogeneous polynomial of the given degree. Every monomial
/// appears with probability 1/2; at least one term is forced, so the result
/// is never zero.
pub fn random_homogeneous(dim: usize, degree: u32, rng: &mut impl Rng) -> Polynomial {
    let monos = monomials_of_degree(dim, degree);
    loop {
        let mut terms = Vec::new();
        for m in &monos {
            if rng.gen_bool(0.5) {
                let mut c = random_rational(rng, 9, 4);
                if c == BigRational::new(BigInt::from(0), BigInt::from(1)) {
                    c = BigRational::new(BigInt::from(1), BigInt::from(1));
                }
                terms.push((m.clone(), c));
            }
        }
        let f = Polynomial::from_terms(dim, terms);
        if !f.is_zero() {
            return f;
        }
    }
}

/// A random polynomial with components of every degree up to `max_degree`
/// possibly present (each degree appears with probability 2/3; at least one
/// is forced).
pub fn random_polynomial(dim: usize, max_degree: u32, rng: &mut impl Rng) -> Polynomial {
    loop {
        let mut f = Polynomial::zero(dim);
        for d in 0..=max_degree {
            if rng.gen_bool(2.0 / 3.0) {
                if d == 0 {
                    f = &f + &Polynomial::constant(random_rational(rng, 9, 4), dim);
                } else {
                    f = &f + &random_homogeneous(dim, d, rng);
                }
            }
        }
        if !f.is_zero() {
            return f;
        }
    }
}

/// A uniform point on the unit sphere via the normalized-Gaussian
/// construction.
pub fn sphere_point(dim: usize, rng: &mut impl Rng) -> Vec<f64> {
    loop {
        let v: Vec<f64> = (0..dim).map(|_| rng.sample(StandardNormal)).collect();
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            return v.into_iter().map(|x| x / norm).collect();
        }
    }
}

/// A random point with nonzero rational coordinates, for exact-rank probes.
pub fn rational_point(dim: usize, rng: &mut impl Rng) -> Vec<BigRational> {
    (0..dim)
        .map(|_| {
            let mut numer = 0i64;
            while numer == 0 {
                numer = rng.gen_range(-50..=50);
            }
            let denom = rng.gen_range(1..=20);
            BigRational::new(BigInt::from(numer), BigInt::from(denom))
        })
        .collect()
}
