//! Finitely generated graded subalgebras of the polynomial ring, with exact
//! degree-wise linear algebra: basis extraction, Hilbert dimensions, the
//! orthogonal (Reynolds) projection, membership, and minimal generators.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, RwLock};

use num_rational::BigRational;
use num_traits::Zero;

use crate::apolar::inner_product;
use crate::error::{Error, Result};
use crate::linalg::{solve_square, Sieve};
use crate::monomial::{monomials_of_degree, Monomial};
use crate::polynomial::Polynomial;

/// Assigns coordinates to the monomials of one total degree, in descending
/// graded-lexicographic order.
pub(crate) struct DegreeIndexer {
    index: BTreeMap<Monomial, usize>,
    size: usize,
}

impl DegreeIndexer {
    pub(crate) fn new(dim: usize, degree: u32) -> Self {
        let monos = monomials_of_degree(dim, degree);
        let size = monos.len();
        let index = monos.into_iter().zip(0..).collect();
        DegreeIndexer { index, size }
    }

    /// Coefficient vector of a homogeneous polynomial of this degree.
    pub(crate) fn vector(&self, f: &Polynomial) -> Vec<BigRational> {
        let mut v = vec![BigRational::zero(); self.size];
        for (m, c) in f.terms() {
            let slot = self.index.get(m).expect("degree mismatch in indexer");
            v[*slot] = c.clone();
        }
        v
    }
}

/// Outcome of projecting a polynomial onto a graded subalgebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProjectionResult {
    /// The apolar-orthogonal projection, degree by degree.
    pub projection: Polynomial,
    /// `input - projection`.
    pub residual: Polynomial,
    /// True exactly when the residual is zero.
    pub member: bool,
}

/// A subalgebra of the polynomial ring generated by finitely many
/// homogeneous polynomials of positive degree.
///
/// Degree bases are computed on demand and cached; the cache is guarded, so
/// shared references may be used from several threads and each degree is
/// still computed once.
pub struct GradedSubalgebra {
    dim: usize,
    generators: Vec<Polynomial>,
    basis_cache: RwLock<BTreeMap<u32, Arc<Vec<Polynomial>>>>,
}

impl fmt::Debug for GradedSubalgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedSubalgebra")
            .field("dim", &self.dim)
            .field("generators", &self.generators)
            .finish()
    }
}

impl Clone for GradedSubalgebra {
    fn clone(&self) -> Self {
        let cache = self.basis_cache.read().unwrap().clone();
        GradedSubalgebra {
            dim: self.dim,
            generators: self.generators.clone(),
            basis_cache: RwLock::new(cache),
        }
    }
}

impl GradedSubalgebra {
    /// Builds the subalgebra generated by `generators` inside the polynomial
    /// ring in `dim` variables.
    ///
    /// Every generator must be nonzero, homogeneous of degree at least one,
    /// and live in the stated dimension; the list must be nonempty.
    pub fn new(dim: usize, generators: Vec<Polynomial>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidGenerator(
                "generator list must be nonempty".into(),
            ));
        }
        for (i, g) in generators.iter().enumerate() {
            if g.dimension() != dim {
                return Err(Error::Dimension {
                    expected: dim,
                    found: g.dimension(),
                });
            }
            if g.is_zero() {
                return Err(Error::InvalidGenerator(format!(
                    "generator {} is zero",
                    i + 1
                )));
            }
            if !g.is_homogeneous() {
                return Err(Error::InvalidGenerator(format!(
                    "generator {} is not homogeneous: {g}",
                    i + 1
                )));
            }
            if g.degree() == Some(0) {
                return Err(Error::InvalidGenerator(format!(
                    "generator {} is a constant",
                    i + 1
                )));
            }
        }
        Ok(GradedSubalgebra {
            dim,
            generators,
            basis_cache: RwLock::new(BTreeMap::new()),
        })
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.generators
    }

    /// Largest total degree among the generators.
    pub fn max_generator_degree(&self) -> u32 {
        self.generators
            .iter()
            .map(|g| g.degree().expect("generators are nonzero"))
            .max()
            .expect("generator list is nonempty")
    }

    /// A basis of the degree-`d` homogeneous piece, as a subset of the
    /// generator products spanning it. Degree zero is the constants and is
    /// reported as the single polynomial `1`.
    ///
    /// The piece of degree `d > 0` is spanned by `g_i * b` over generators
    /// `g_i` and basis elements `b` of degree `d - deg(g_i)`; an exact
    /// independence sieve over those candidates (in deterministic order)
    /// selects the basis, so repeated calls and different threads always see
    /// the same polynomials.
    pub fn degree_basis(&self, d: u32) -> Arc<Vec<Polynomial>> {
        if d == 0 {
            return Arc::new(vec![Polynomial::one(self.dim)]);
        }
        {
            let cache = self.basis_cache.read().unwrap();
            if let Some(basis) = cache.get(&d) {
                return Arc::clone(basis);
            }
        }
        let mut cache = self.basis_cache.write().unwrap();
        for dd in 1..=d {
            if cache.contains_key(&dd) {
                continue;
            }
            let basis = self.compute_degree_basis(dd, &cache);
            cache.insert(dd, Arc::new(basis));
        }
        Arc::clone(cache.get(&d).unwrap())
    }

    fn compute_degree_basis(
        &self,
        d: u32,
        cache: &BTreeMap<u32, Arc<Vec<Polynomial>>>,
    ) -> Vec<Polynomial> {
        let indexer = DegreeIndexer::new(self.dim, d);
        let mut sieve = Sieve::new();
        let mut basis = Vec::new();
        let one = [Polynomial::one(self.dim)];
        for g in &self.generators {
            let gd = g.degree().expect("generators are nonzero");
            if gd > d {
                continue;
            }
            let lower: &[Polynomial] = if gd == d {
                &one
            } else {
                cache
                    .get(&(d - gd))
                    .expect("lower degrees are filled first")
            };
            for b in lower {
                let candidate = g * b;
                if candidate.is_zero() {
                    continue;
                }
                if sieve.insert(&indexer.vector(&candidate)) {
                    basis.push(candidate);
                }
            }
        }
        basis
    }

    /// Dimensions of the graded pieces for degrees `0..=max_degree`.
    pub fn hilbert_dims(&self, max_degree: u32) -> Vec<usize> {
        (0..=max_degree)
            .map(|d| self.degree_basis(d).len())
            .collect()
    }

    /// Apolar-orthogonal projection of `f` onto the subalgebra, computed
    /// degree by degree through an exact Gram-matrix solve.
    ///
    /// On a Laplacian subalgebra this projection is the Reynolds operator:
    /// it fixes the subalgebra, and `reynolds(a * f) = a * reynolds(f)`
    /// whenever `a` is a member.
    pub fn reynolds(&self, f: &Polynomial) -> Result<ProjectionResult> {
        if f.dimension() != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                found: f.dimension(),
            });
        }
        let mut projection = Polynomial::zero(self.dim);
        for (d, part) in f.homogeneous_components() {
            if d == 0 {
                // constants belong to every subalgebra
                projection = &projection + &part;
                continue;
            }
            let basis = self.degree_basis(d);
            if basis.is_empty() {
                continue;
            }
            let m = basis.len();
            let mut gram = vec![vec![BigRational::zero(); m]; m];
            for i in 0..m {
                for j in i..m {
                    let v = inner_product(&basis[i], &basis[j])?;
                    gram[i][j] = v.clone();
                    gram[j][i] = v;
                }
            }
            let rhs: Vec<BigRational> = basis
                .iter()
                .map(|b| inner_product(b, &part))
                .collect::<Result<_>>()?;
            let coeffs = solve_square(&gram, &rhs)
                .expect("Gram matrix of an independent set is invertible");
            for (c, b) in coeffs.iter().zip(basis.iter()) {
                if !c.is_zero() {
                    projection = &projection + &b.scale(c);
                }
            }
        }
        let residual = f - &projection;
        let member = residual.is_zero();
        Ok(ProjectionResult {
            projection,
            residual,
            member,
        })
    }

    /// Exact membership test via the orthogonal projection.
    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        Ok(self.reynolds(f)?.member)
    }

    /// A minimal generating set, complete for degrees up to `max_degree`.
    ///
    /// For each degree `d` this selects basis elements spanning a complement
    /// of the products of positive-degree members inside the degree-`d`
    /// piece. Fed back into [`GradedSubalgebra::new`], the result reproduces
    /// the same Hilbert dimensions up to `max_degree`.
    pub fn minimal_generators(&self, max_degree: u32) -> Result<Vec<Polynomial>> {
        let need = self.max_generator_degree();
        if max_degree < need {
            return Err(Error::DegreeCap {
                required: need as usize,
                cap: max_degree as usize,
            });
        }
        let mut new_gens = Vec::new();
        for d in 1..=max_degree {
            let full = self.degree_basis(d);
            if full.is_empty() {
                continue;
            }
            let indexer = DegreeIndexer::new(self.dim, d);
            let mut sieve = Sieve::new();
            // span of (A+ . A+)_d: pairwise products of lower bases
            for d1 in 1..=(d / 2) {
                let d2 = d - d1;
                let left = self.degree_basis(d1);
                let right = self.degree_basis(d2);
                for b1 in left.iter() {
                    for b2 in right.iter() {
                        sieve.insert(&indexer.vector(&(b1 * b2)));
                    }
                }
            }
            for b in full.iter() {
                if sieve.insert(&indexer.vector(b)) {
                    new_gens.push(b.clone());
                }
            }
        }
        Ok(new_gens)
    }
}
