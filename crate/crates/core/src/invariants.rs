//! Finite orthogonal matrix groups acting on polynomials: the action itself,
//! group averaging, invariant rings, and the closed-form dihedral family.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::{DegreeIndexer, GradedSubalgebra};
use crate::error::{Error, Result};
use crate::linalg::Sieve;
use crate::monomial::{monomials_of_degree, Monomial};
use crate::polynomial::Polynomial;
use crate::sample::random_polynomial;

/// Entrywise tolerance for the float-mode group axioms.
pub const FLOAT_GROUP_TOL: f64 = 1e-12;

/// A square matrix with exact rational entries, stored row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    dim: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn identity(dim: usize) -> Self {
        let mut m = RationalMatrix {
            dim,
            entries: vec![BigRational::zero(); dim * dim],
        };
        for i in 0..dim {
            m.entries[i * dim + i] = BigRational::one();
        }
        m
    }

    /// Builds from rows; every row must have length `dim`.
    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let dim = rows.len();
        for row in &rows {
            if row.len() != dim {
                return Err(Error::InvalidGroup(format!(
                    "matrix row has length {}, expected {dim}",
                    row.len()
                )));
            }
        }
        Ok(RationalMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Diagonal matrix from the given entries.
    pub fn diagonal(diag: &[i64]) -> Self {
        let dim = diag.len();
        let mut m = RationalMatrix {
            dim,
            entries: vec![BigRational::zero(); dim * dim],
        };
        for (i, &v) in diag.iter().enumerate() {
            m.entries[i * dim + i] = BigRational::from_integer(BigInt::from(v));
        }
        m
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    pub fn get(&self, row: usize, col: usize) -> &BigRational {
        &self.entries[row * self.dim + col]
    }

    pub fn matmul(&self, other: &RationalMatrix) -> RationalMatrix {
        assert_eq!(self.dim, other.dim);
        let dim = self.dim;
        let mut entries = vec![BigRational::zero(); dim * dim];
        for i in 0..dim {
            for k in 0..dim {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..dim {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        entries[i * dim + j] += a * b;
                    }
                }
            }
        }
        RationalMatrix { dim, entries }
    }

    pub fn transpose(&self) -> RationalMatrix {
        let dim = self.dim;
        let mut entries = vec![BigRational::zero(); dim * dim];
        for i in 0..dim {
            for j in 0..dim {
                entries[j * dim + i] = self.get(i, j).clone();
            }
        }
        RationalMatrix { dim, entries }
    }

    pub fn is_orthogonal(&self) -> bool {
        self.transpose().matmul(self) == RationalMatrix::identity(self.dim)
    }

    /// Applies the group element to a polynomial: `(g . f)(x) = f(g^T x)`,
    /// which for orthogonal `g` is `f(g^{-1} x)` — the usual left action on
    /// functions. Exact; degree-preserving.
    pub fn act(&self, f: &Polynomial) -> Result<Polynomial> {
        if f.dimension() != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                found: f.dimension(),
            });
        }
        let dim = self.dim;
        // image of variable x_i under x -> g^T x: sum_j g[j][i] x_j
        let images: Vec<Polynomial> = (0..dim)
            .map(|i| {
                Polynomial::from_terms(
                    dim,
                    (0..dim).map(|j| (Monomial::variable(j, dim), self.get(j, i).clone())),
                )
            })
            .collect();
        // per-variable power tables up to the maximal exponent in f
        let mut max_exp = vec![0u32; dim];
        for (m, _) in f.terms() {
            for (i, &e) in m.exponents().iter().enumerate() {
                max_exp[i] = max_exp[i].max(e);
            }
        }
        let powers: Vec<Vec<Polynomial>> = (0..dim)
            .map(|i| {
                let mut table = vec![Polynomial::one(dim)];
                for e in 1..=max_exp[i] {
                    let next = &table[(e - 1) as usize] * &images[i];
                    table.push(next);
                }
                table
            })
            .collect();
        let mut acc = Polynomial::zero(dim);
        for (m, c) in f.terms() {
            let mut term = Polynomial::constant(c.clone(), dim);
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term = &term * &powers[i][e as usize];
                }
            }
            acc = &acc + &term;
        }
        Ok(acc)
    }
}

/// A square float matrix, used only to *hold* groups whose entries are
/// irrational (no exact operation accepts these).
#[derive(Debug, Clone)]
pub struct FloatMatrix {
    dim: usize,
    entries: Vec<f64>,
}

impl FloatMatrix {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let dim = rows.len();
        for row in &rows {
            if row.len() != dim {
                return Err(Error::InvalidGroup(format!(
                    "matrix row has length {}, expected {dim}",
                    row.len()
                )));
            }
        }
        Ok(FloatMatrix {
            dim,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.entries[row * self.dim + col]
    }

    fn matmul(&self, other: &FloatMatrix) -> FloatMatrix {
        let dim = self.dim;
        let mut entries = vec![0.0; dim * dim];
        for i in 0..dim {
            for k in 0..dim {
                for j in 0..dim {
                    entries[i * dim + j] += self.get(i, k) * other.get(k, j);
                }
            }
        }
        FloatMatrix { dim, entries }
    }

    fn max_abs_diff(&self, other: &FloatMatrix) -> f64 {
        self.entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }

    fn is_orthogonal(&self, tol: f64) -> bool {
        let dim = self.dim;
        let t = FloatMatrix {
            dim,
            entries: {
                let mut e = vec![0.0; dim * dim];
                for i in 0..dim {
                    for j in 0..dim {
                        e[j * dim + i] = self.get(i, j);
                    }
                }
                e
            },
        };
        let prod = t.matmul(self);
        let mut id = vec![0.0; dim * dim];
        for i in 0..dim {
            id[i * dim + i] = 1.0;
        }
        prod.max_abs_diff(&FloatMatrix { dim, entries: id }) <= tol
    }
}

enum Rep {
    Exact(Vec<RationalMatrix>),
    Float(Vec<FloatMatrix>),
}

/// A finite subgroup of the orthogonal group, stored as an explicit element
/// list. Exact (rational-entry) groups support the full API; float-mode
/// groups only store and validate their elements.
pub struct FiniteOrthogonalGroup {
    dim: usize,
    rep: Rep,
}

impl FiniteOrthogonalGroup {
    /// Builds a group from its complete element list with exact entries.
    ///
    /// Verifies eagerly (quadratically in the order) that every element is
    /// orthogonal, the elements are pairwise distinct, the identity is
    /// present, and the list is closed under products and inverses.
    pub fn from_rational_matrices(dim: usize, elements: Vec<RationalMatrix>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidGroup("element list is empty".into()));
        }
        for (i, m) in elements.iter().enumerate() {
            if m.dimension() != dim {
                return Err(Error::InvalidGroup(format!(
                    "element {} has dimension {}, expected {dim}",
                    i + 1,
                    m.dimension()
                )));
            }
            if !m.is_orthogonal() {
                return Err(Error::InvalidGroup(format!(
                    "element {} is not orthogonal",
                    i + 1
                )));
            }
            for (j, other) in elements.iter().enumerate().take(i) {
                if m == other {
                    return Err(Error::InvalidGroup(format!(
                        "elements {} and {} coincide",
                        j + 1,
                        i + 1
                    )));
                }
            }
        }
        let id = RationalMatrix::identity(dim);
        if !elements.contains(&id) {
            return Err(Error::InvalidGroup("identity is missing".into()));
        }
        for (i, a) in elements.iter().enumerate() {
            if !elements.contains(&a.transpose()) {
                return Err(Error::InvalidGroup(format!(
                    "inverse of element {} is missing",
                    i + 1
                )));
            }
            for (j, b) in elements.iter().enumerate() {
                if !elements.contains(&a.matmul(b)) {
                    return Err(Error::InvalidGroup(format!(
                        "product of elements {} and {} escapes the list",
                        i + 1,
                        j + 1
                    )));
                }
            }
        }
        Ok(FiniteOrthogonalGroup {
            dim,
            rep: Rep::Exact(elements),
        })
    }

    /// Builds a float-mode group, verifying the same axioms within
    /// [`FLOAT_GROUP_TOL`] entrywise.
    pub fn from_float_matrices(dim: usize, elements: Vec<FloatMatrix>) -> Result<Self> {
        if elements.is_empty() {
            return Err(Error::InvalidGroup("element list is empty".into()));
        }
        let close = |a: &FloatMatrix, b: &FloatMatrix| a.max_abs_diff(b) <= FLOAT_GROUP_TOL;
        let contains = |m: &FloatMatrix| elements.iter().any(|e| close(e, m));
        for (i, m) in elements.iter().enumerate() {
            if m.dim != dim {
                return Err(Error::InvalidGroup(format!(
                    "element {} has dimension {}, expected {dim}",
                    i + 1,
                    m.dim
                )));
            }
            if !m.is_orthogonal(FLOAT_GROUP_TOL) {
                return Err(Error::InvalidGroup(format!(
                    "element {} is not orthogonal within tolerance",
                    i + 1
                )));
            }
        }
        let mut id = vec![0.0; dim * dim];
        for i in 0..dim {
            id[i * dim + i] = 1.0;
        }
        if !contains(&FloatMatrix { dim, entries: id }) {
            return Err(Error::InvalidGroup("identity is missing".into()));
        }
        for a in &elements {
            for b in &elements {
                if !contains(&a.matmul(b)) {
                    return Err(Error::InvalidGroup(
                        "a product escapes the element list".into(),
                    ));
                }
            }
        }
        Ok(FiniteOrthogonalGroup {
            dim,
            rep: Rep::Float(elements),
        })
    }

    pub fn dimension(&self) -> usize {
        self.dim
    }

    /// Number of elements.
    pub fn order(&self) -> usize {
        match &self.rep {
            Rep::Exact(v) => v.len(),
            Rep::Float(v) => v.len(),
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self.rep, Rep::Exact(_))
    }

    fn exact_elements(&self, what: &str) -> Result<&[RationalMatrix]> {
        match &self.rep {
            Rep::Exact(v) => Ok(v),
            Rep::Float(_) => Err(Error::FloatMode(what.into())),
        }
    }

    /// The exact elements, when available.
    pub fn elements(&self) -> Result<&[RationalMatrix]> {
        self.exact_elements("element access")
    }

    /// Group average `(1/|G|) Σ_g g . f`. Exact mode only; the result is
    /// invariant under every element.
    pub fn average(&self, f: &Polynomial) -> Result<Polynomial> {
        let elements = self.exact_elements("group averaging")?;
        let mut acc = Polynomial::zero(self.dim);
        for g in elements {
            acc = &acc + &g.act(f)?;
        }
        let weight = BigRational::new(BigInt::one(), BigInt::from(elements.len() as i64));
        Ok(acc.scale(&weight))
    }

    /// Minimal generators of the ring of invariant polynomials, complete for
    /// degrees up to `max_degree`. Averaged monomials span each graded
    /// invariant piece; an exact sieve against the already-generated
    /// subalgebra keeps exactly the new ones. With `max_degree >= order()`
    /// the generators are complete in every degree (Noether bound).
    pub fn invariant_ring(&self, max_degree: u32) -> Result<GradedSubalgebra> {
        self.exact_elements("invariant ring computation")?;
        let dim = self.dim;
        let mut gens: Vec<Polynomial> = Vec::new();
        for d in 1..=max_degree {
            let averaged: Vec<Polynomial> = monomials_of_degree(dim, d)
                .into_iter()
                .map(|m| {
                    self.average(&Polynomial::from_terms(
                        dim,
                        [(m, BigRational::one())],
                    ))
                })
                .collect::<Result<Vec<_>>>()?
                .into_iter()
                .filter(|f| !f.is_zero())
                .collect();
            if averaged.is_empty() {
                continue;
            }
            let indexer = DegreeIndexer::new(dim, d);
            let mut sieve = Sieve::new();
            if !gens.is_empty() {
                let current = GradedSubalgebra::new(dim, gens.clone())?;
                for b in current.degree_basis(d).iter() {
                    sieve.insert(&indexer.vector(b));
                }
            }
            for f in averaged {
                if sieve.insert(&indexer.vector(&f)) {
                    gens.push(f.primitive_normalized());
                }
            }
        }
        if gens.is_empty() {
            return Err(Error::InvalidGenerator(format!(
                "no invariants of positive degree up to {max_degree}"
            )));
        }
        GradedSubalgebra::new(dim, gens)
    }

    // ----- built-in families -----

    /// `{ I, -I }` in `n` variables.
    pub fn neg_id(n: usize) -> Self {
        let id = RationalMatrix::identity(n);
        let neg = RationalMatrix::diagonal(&vec![-1; n]);
        FiniteOrthogonalGroup {
            dim: n,
            rep: Rep::Exact(vec![id, neg]),
        }
    }

    /// Order-two group generated by the sign flip of one axis (1-based).
    pub fn cyclic_sign(n: usize, axis: usize) -> Result<Self> {
        if axis == 0 || axis > n {
            return Err(Error::InvalidGroup(format!(
                "axis {axis} out of range 1..={n}"
            )));
        }
        let mut diag = vec![1i64; n];
        diag[axis - 1] = -1;
        Ok(FiniteOrthogonalGroup {
            dim: n,
            rep: Rep::Exact(vec![
                RationalMatrix::identity(n),
                RationalMatrix::diagonal(&diag),
            ]),
        })
    }

    /// All signed permutation matrices in `n` variables (order `n! * 2^n`).
    pub fn signed_permutations(n: usize) -> Self {
        let mut elements = Vec::new();
        let mut perm: Vec<usize> = (0..n).collect();
        permute(&mut perm, 0, &mut |perm| {
            for signs in 0..(1u32 << n) {
                let mut entries = vec![BigRational::zero(); n * n];
                for (row, &col) in perm.iter().enumerate() {
                    let v = if signs >> row & 1 == 1 {
                        -BigRational::one()
                    } else {
                        BigRational::one()
                    };
                    entries[row * n + col] = v;
                }
                elements.push(RationalMatrix { dim: n, entries });
            }
        });
        return FiniteOrthogonalGroup {
            dim: n,
            rep: Rep::Exact(elements),
        };

        fn permute(perm: &mut Vec<usize>, k: usize, visit: &mut impl FnMut(&[usize])) {
            if k == perm.len() {
                visit(perm);
                return;
            }
            for i in k..perm.len() {
                perm.swap(k, i);
                permute(perm, k + 1, visit);
                perm.swap(k, i);
            }
        }
    }

    /// The dihedral group of order `2g` acting on the plane: `g` rotations
    /// and `g` reflections. Exact for `g` in `{1, 2, 4}` (the angles with
    /// rational cosine and sine); float mode otherwise.
    pub fn dihedral(g: u32) -> Result<Self> {
        if g == 0 {
            return Err(Error::InvalidGroup("dihedral parameter must be >= 1".into()));
        }
        match g {
            1 | 2 | 4 => {
                let step = 4 / g; // quarter turns per rotation step
                let quarter_turn = |k: u32| -> (i64, i64) {
                    // (cos, sin) of k quarter turns
                    match k % 4 {
                        0 => (1, 0),
                        1 => (0, 1),
                        2 => (-1, 0),
                        _ => (0, -1),
                    }
                };
                let mut elements = Vec::new();
                for k in 0..g {
                    let (c, s) = quarter_turn(k * step);
                    let rot = RationalMatrix::from_rows(vec![
                        vec![
                            BigRational::from_integer(BigInt::from(c)),
                            BigRational::from_integer(BigInt::from(-s)),
                        ],
                        vec![
                            BigRational::from_integer(BigInt::from(s)),
                            BigRational::from_integer(BigInt::from(c)),
                        ],
                    ])?;
                    // reflection = rotation composed with conjugation diag(1, -1)
                    let refl = rot.matmul(&RationalMatrix::diagonal(&[1, -1]));
                    elements.push(rot);
                    elements.push(refl);
                }
                Self::from_rational_matrices(2, elements)
            }
            _ => {
                let mut elements = Vec::new();
                for k in 0..g {
                    let theta = 2.0 * std::f64::consts::PI * f64::from(k) / f64::from(g);
                    let (s, c) = theta.sin_cos();
                    let rot = FloatMatrix::from_rows(vec![vec![c, -s], vec![s, c]])?;
                    let refl = FloatMatrix::from_rows(vec![vec![c, s], vec![s, -c]])?;
                    elements.push(rot);
                    elements.push(refl);
                }
                Self::from_float_matrices(2, elements)
            }
        }
    }
}

/// The invariant ring of the dihedral group of order `2g` on the plane, in
/// closed form: generated by `x1^2 + x2^2` and the real part of
/// `(x1 + i x2)^g`. Valid for every `g >= 1`, including the `g` whose
/// rotation matrices are irrational.
pub fn dihedral_invariants(g: u32) -> Result<GradedSubalgebra> {
    if g == 0 {
        return Err(Error::InvalidGroup("dihedral parameter must be >= 1".into()));
    }
    GradedSubalgebra::new(2, vec![Polynomial::r_squared(2), harmonic_cosine(g)])
}

/// `Re((x1 + i x2)^g) = Σ_{j even} (-1)^{j/2} C(g, j) x1^{g-j} x2^j`.
pub fn harmonic_cosine(g: u32) -> Polynomial {
    let mut terms = Vec::new();
    let mut binom = BigInt::one();
    for j in 0..=g {
        if j % 2 == 0 {
            let sign = if j % 4 == 0 { 1 } else { -1 };
            terms.push((
                Monomial::new(vec![g - j, j]),
                BigRational::from_integer(&binom * BigInt::from(sign)),
            ));
        }
        // C(g, j+1) = C(g, j) * (g - j) / (j + 1)
        binom = binom * BigInt::from(g - j) / BigInt::from(j + 1);
    }
    Polynomial::from_terms(2, terms)
}

/// Checks on `trials` seeded random polynomials of degree up to `max_degree`
/// that the apolar projection onto the invariant ring and the group average
/// agree exactly. Returns false on the first disagreement.
pub fn verify_reynolds_equals_average(
    group: &FiniteOrthogonalGroup,
    max_degree: u32,
    trials: usize,
    seed: u64,
) -> Result<bool> {
    let ring = group.invariant_ring(max_degree)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..trials {
        let f = random_polynomial(group.dimension(), max_degree, &mut rng);
        let averaged = group.average(&f)?;
        let projected = ring.reynolds(&f)?.projection;
        if averaged != projected {
            return Ok(false);
        }
    }
    Ok(true)
}
