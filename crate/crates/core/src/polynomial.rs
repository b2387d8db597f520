//! Sparse multivariate polynomials over the rationals.
//!
//! A [`Polynomial`] is a map from [`Monomial`]s to nonzero `BigRational`
//! coefficients, tagged with its ambient dimension. All arithmetic is exact;
//! floats only appear in the explicitly named `*_f64` evaluation paths.
//!
//! The `Display` implementation is the canonical printer: terms in descending
//! graded-lexicographic order, explicit `*` between factors, no `^1`, and a
//! leading coefficient of one omitted except on the constant term. Parsing
//! the printed form (see [`crate::parse`]) returns the identical polynomial.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::monomial::Monomial;

/// A point with exact rational coordinates.
pub type RationalPoint = [BigRational];

/// Sparse exact-arithmetic polynomial in `dimension` variables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polynomial {
    dim: usize,
    terms: BTreeMap<Monomial, BigRational>,
}

/// `base^exp` for a rational base and a machine-sized exponent.
pub fn rational_pow(base: &BigRational, exp: u32) -> BigRational {
    let numer = base.numer().pow(exp);
    let denom = base.denom().pow(exp);
    BigRational::new(numer, denom)
}

impl Polynomial {
    /// The zero polynomial in `dim` variables.
    pub fn zero(dim: usize) -> Self {
        Polynomial {
            dim,
            terms: BTreeMap::new(),
        }
    }

    /// The constant polynomial `1`.
    pub fn one(dim: usize) -> Self {
        Self::constant(BigRational::one(), dim)
    }

    /// A constant polynomial.
    pub fn constant(c: BigRational, dim: usize) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Monomial::one(dim), c);
        }
        Polynomial { dim, terms }
    }

    /// A constant polynomial from a machine integer.
    pub fn constant_i64(c: i64, dim: usize) -> Self {
        Self::constant(BigRational::from_integer(BigInt::from(c)), dim)
    }

    /// The variable `x_{index}` with a **0-based** index.
    pub fn variable(index: usize, dim: usize) -> Self {
        assert!(index < dim, "variable index {index} out of range for dimension {dim}");
        let mut terms = BTreeMap::new();
        terms.insert(Monomial::variable(index, dim), BigRational::one());
        Polynomial { dim, terms }
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, merging
    /// duplicates and dropping zero coefficients.
    pub fn from_terms(dim: usize, pairs: impl IntoIterator<Item = (Monomial, BigRational)>) -> Self {
        let mut terms: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (m, c) in pairs {
            assert_eq!(m.dimension(), dim, "monomial dimension mismatch");
            if c.is_zero() {
                continue;
            }
            let entry = terms.entry(m).or_insert_with(BigRational::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Polynomial { dim, terms }
    }

    /// Convenience constructor from integer-coefficient terms given as
    /// `(coefficient, exponent vector)`.
    pub fn from_int_terms(dim: usize, pairs: &[(i64, &[u32])]) -> Self {
        Self::from_terms(
            dim,
            pairs.iter().map(|(c, exps)| {
                (
                    Monomial::new(exps.to_vec()),
                    BigRational::from_integer(BigInt::from(*c)),
                )
            }),
        )
    }

    /// The squared-norm polynomial `r^2 = x1^2 + ... + xn^2`.
    pub fn r_squared(dim: usize) -> Self {
        let mut terms = BTreeMap::new();
        for i in 0..dim {
            let mut exps = vec![0; dim];
            exps[i] = 2;
            terms.insert(Monomial::new(exps), BigRational::one());
        }
        Polynomial { dim, terms }
    }

    /// Ambient number of variables.
    pub fn dimension(&self) -> usize {
        self.dim
    }

    /// Number of terms with nonzero coefficient.
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    /// Iterates terms in ascending graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigRational)> {
        self.terms.iter()
    }

    /// The coefficient of `m` (zero when absent).
    pub fn coefficient(&self, m: &Monomial) -> BigRational {
        self.terms.get(m).cloned().unwrap_or_else(BigRational::zero)
    }

    /// The constant term.
    pub fn constant_term(&self) -> BigRational {
        self.coefficient(&Monomial::one(self.dim))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        // Keys are graded-lex ordered, so the last key has maximal degree.
        self.terms.keys().next_back().map(|m| m.degree())
    }

    /// True when every term has the same total degree (vacuously true for 0).
    pub fn is_homogeneous(&self) -> bool {
        let mut degrees = self.terms.keys().map(|m| m.degree());
        match degrees.next() {
            None => true,
            Some(d0) => degrees.all(|d| d == d0),
        }
    }

    /// The degree of a nonzero homogeneous polynomial.
    ///
    /// Returns a grading error for zero or inhomogeneous input.
    pub fn homogeneous_degree(&self) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::Grading("zero polynomial has no degree".into()));
        }
        if !self.is_homogeneous() {
            return Err(Error::Grading(format!(
                "polynomial is not homogeneous: {self}"
            )));
        }
        Ok(self.degree().unwrap())
    }

    /// The greatest monomial in graded-lexicographic order, with its
    /// coefficient. `None` for the zero polynomial.
    pub fn leading_term(&self) -> Option<(&Monomial, &BigRational)> {
        self.terms.iter().next_back()
    }

    fn check_dim(&self, other: &Polynomial) -> Result<()> {
        if self.dim == other.dim {
            Ok(())
        } else {
            Err(Error::Dimension {
                expected: self.dim,
                found: other.dim,
            })
        }
    }

    /// Sum, failing on an ambient-dimension mismatch.
    pub fn checked_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dim(other)?;
        let mut terms = self.terms.clone();
        for (m, c) in &other.terms {
            let entry = terms.entry(m.clone()).or_insert_with(BigRational::zero);
            *entry += c;
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Polynomial { dim: self.dim, terms })
    }

    /// Difference, failing on an ambient-dimension mismatch.
    pub fn checked_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.checked_add(&other.clone().neg())
    }

    /// Product, failing on an ambient-dimension mismatch.
    pub fn checked_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_dim(other)?;
        let mut terms: BTreeMap<Monomial, BigRational> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                let entry = terms.entry(m).or_insert_with(BigRational::zero);
                *entry += c;
            }
        }
        terms.retain(|_, c| !c.is_zero());
        Ok(Polynomial { dim: self.dim, terms })
    }

    /// Multiplies by a rational scalar.
    pub fn scale(&self, c: &BigRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(self.dim);
        }
        Polynomial {
            dim: self.dim,
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    /// Multiplies by an integer scalar.
    pub fn scale_i64(&self, c: i64) -> Polynomial {
        self.scale(&BigRational::from_integer(BigInt::from(c)))
    }

    /// `self^exp` by repeated squaring.
    pub fn pow(&self, exp: u32) -> Polynomial {
        let mut result = Polynomial::one(self.dim);
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Formal partial derivative with respect to the **0-based** variable.
    pub fn partial(&self, index: usize) -> Polynomial {
        assert!(index < self.dim, "variable index out of range");
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let e = m.exponent(index);
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[index] = e - 1;
            terms.insert(Monomial::new(exps), c * BigInt::from(e));
        }
        Polynomial { dim: self.dim, terms }
    }

    /// Iterated partial derivative `∂^alpha` for a multi-index `alpha`.
    ///
    /// Each term `c * x^beta` maps to `c * beta!/(beta-alpha)! * x^(beta-alpha)`,
    /// and vanishes when some `alpha_i > beta_i`.
    pub fn partial_multi(&self, alpha: &[u32]) -> Polynomial {
        assert_eq!(alpha.len(), self.dim, "multi-index length mismatch");
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut coeff = c.clone();
            let mut exps = Vec::with_capacity(self.dim);
            let mut vanished = false;
            for (i, &a) in alpha.iter().enumerate() {
                let b = m.exponent(i);
                if a > b {
                    vanished = true;
                    break;
                }
                // falling factorial b * (b-1) * ... * (b-a+1)
                for j in 0..a {
                    coeff *= BigInt::from(b - j);
                }
                exps.push(b - a);
            }
            if vanished {
                continue;
            }
            let entry = terms
                .entry(Monomial::new(exps))
                .or_insert_with(BigRational::zero);
            *entry += coeff;
        }
        terms.retain(|_, c| !c.is_zero());
        Polynomial { dim: self.dim, terms }
    }

    /// The Laplacian `Δf = Σ_i ∂²f/∂x_i²`.
    pub fn laplacian(&self) -> Polynomial {
        let mut acc = Polynomial::zero(self.dim);
        for i in 0..self.dim {
            acc = &acc + &self.partial(i).partial(i);
        }
        acc
    }

    /// Splits into homogeneous parts, keyed by total degree. The zero
    /// polynomial yields an empty map.
    pub fn homogeneous_components(&self) -> BTreeMap<u32, Polynomial> {
        let mut out: BTreeMap<u32, Polynomial> = BTreeMap::new();
        for (m, c) in &self.terms {
            let part = out
                .entry(m.degree())
                .or_insert_with(|| Polynomial::zero(self.dim));
            part.terms.insert(m.clone(), c.clone());
        }
        out
    }

    /// The homogeneous part of the given total degree (zero when absent).
    pub fn homogeneous_part(&self, d: u32) -> Polynomial {
        let mut terms = BTreeMap::new();
        for (m, c) in &self.terms {
            if m.degree() == d {
                terms.insert(m.clone(), c.clone());
            }
        }
        Polynomial { dim: self.dim, terms }
    }

    /// Exact evaluation at a rational point.
    ///
    /// Per-variable power tables are filled once, so each power is computed
    /// a single time regardless of how many terms share it.
    pub fn evaluate(&self, point: &RationalPoint) -> Result<BigRational> {
        if point.len() != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                found: point.len(),
            });
        }
        // max exponent per variable
        let mut max_exp = vec![0u32; self.dim];
        for m in self.terms.keys() {
            for (i, &e) in m.exponents().iter().enumerate() {
                max_exp[i] = max_exp[i].max(e);
            }
        }
        let mut powers: Vec<Vec<BigRational>> = Vec::with_capacity(self.dim);
        for (i, &me) in max_exp.iter().enumerate() {
            let mut table = Vec::with_capacity(me as usize + 1);
            table.push(BigRational::one());
            for e in 1..=me {
                let prev = table[(e - 1) as usize].clone();
                table.push(prev * &point[i]);
            }
            powers.push(table);
        }
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut term = c.clone();
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    term *= &powers[i][e as usize];
                }
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Float evaluation at a float point. For hot loops prefer compiling to a
    /// [`crate::fiber::FloatPoly`] once and evaluating that.
    pub fn evaluate_f64(&self, point: &[f64]) -> Result<f64> {
        if point.len() != self.dim {
            return Err(Error::Dimension {
                expected: self.dim,
                found: point.len(),
            });
        }
        let mut acc = 0.0;
        for (m, c) in &self.terms {
            let mut term = rational_to_f64(c);
            for (i, &e) in m.exponents().iter().enumerate() {
                term *= point[i].powi(e as i32);
            }
            acc += term;
        }
        Ok(acc)
    }

    /// Clears denominators and removes integer content: the result is an
    /// integer-coefficient scalar multiple of `self` whose coefficients have
    /// gcd one, with a positive leading (graded-lex greatest) coefficient.
    /// Zero stays zero. Used to present generators in a normal form.
    pub fn primitive_normalized(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let mut denom_lcm = BigInt::one();
        for c in self.terms.values() {
            denom_lcm = num_integer::lcm(denom_lcm, c.denom().clone());
        }
        let mut numer_gcd = BigInt::zero();
        for c in self.terms.values() {
            let scaled = c * &denom_lcm; // integer by construction
            numer_gcd = num_integer::gcd(numer_gcd, scaled.numer().clone());
        }
        let mut factor = BigRational::new(denom_lcm, numer_gcd);
        if self.leading_term().unwrap().1.sign() * factor.sign() == Sign::Minus {
            factor = -factor;
        }
        self.scale(&factor)
    }

    /// Renames nothing but checks every monomial matches `dim`; used by
    /// deserialization paths.
    pub fn validate_dimension(&self, dim: usize) -> Result<()> {
        if self.dim != dim {
            return Err(Error::Dimension {
                expected: dim,
                found: self.dim,
            });
        }
        Ok(())
    }
}

/// Best-effort conversion of an exact rational to `f64`.
pub fn rational_to_f64(c: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    c.to_f64().unwrap_or_else(|| {
        // Fall back to a quotient of big floats via string round-trip only
        // when the direct conversion overflows; desk-scale inputs never hit
        // this, but the sampling layer must not panic.
        let n = c.numer().to_string().parse::<f64>().unwrap_or(f64::NAN);
        let d = c.denom().to_string().parse::<f64>().unwrap_or(f64::NAN);
        n / d
    })
}

trait SignOf {
    fn sign(&self) -> Sign;
}

impl SignOf for BigRational {
    fn sign(&self) -> Sign {
        self.numer().sign()
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, other: &Polynomial) -> Polynomial {
        self.checked_add(other).expect("dimension mismatch in +")
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, other: &Polynomial) -> Polynomial {
        self.checked_sub(other).expect("dimension mismatch in -")
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, other: &Polynomial) -> Polynomial {
        self.checked_mul(other).expect("dimension mismatch in *")
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(mut self) -> Polynomial {
        for c in self.terms.values_mut() {
            let v = std::mem::replace(c, BigRational::zero());
            *c = -v;
        }
        self
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        // descending graded-lex
        for (idx, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = if negative { -c.clone() } else { c.clone() };
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_constant() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{abs}*{m}")?;
            }
        }
        Ok(())
    }
}
