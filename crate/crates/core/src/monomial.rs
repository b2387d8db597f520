//! Monomials as dense exponent vectors with graded-lexicographic order.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_traits::One;

/// A monomial `x1^e1 * ... * xn^en`, stored as a dense exponent vector.
///
/// The ambient dimension is the length of the vector; all monomials of a
/// given [`crate::Polynomial`] share the same length.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    /// The constant monomial `1` in `dim` variables.
    pub fn one(dim: usize) -> Self {
        Monomial { exps: vec![0; dim] }
    }

    /// Builds a monomial from an explicit exponent vector.
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    /// The single variable `x_{index}` (0-based index) in `dim` variables.
    pub fn variable(index: usize, dim: usize) -> Self {
        let mut exps = vec![0; dim];
        exps[index] = 1;
        Monomial { exps }
    }

    /// Number of ambient variables.
    pub fn dimension(&self) -> usize {
        self.exps.len()
    }

    /// Exponent of the 0-based variable `index`.
    pub fn exponent(&self, index: usize) -> u32 {
        self.exps[index]
    }

    /// The exponent vector.
    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    /// Total degree `e1 + ... + en`.
    pub fn degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    /// True for the constant monomial.
    pub fn is_constant(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    /// Product of two monomials (exponent-wise sum).
    pub fn mul(&self, other: &Monomial) -> Monomial {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    /// Exponent-wise difference, or `None` when some exponent of `other`
    /// exceeds the matching exponent of `self` (i.e. `other` does not divide).
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        let mut exps = Vec::with_capacity(self.exps.len());
        for (a, b) in self.exps.iter().zip(&other.exps) {
            if a < b {
                return None;
            }
            exps.push(a - b);
        }
        Some(Monomial { exps })
    }

    /// `alpha! = e1! * ... * en!` as a big integer; this is the apolar norm
    /// squared of the monomial.
    pub fn factorial(&self) -> BigInt {
        let mut acc = BigInt::one();
        for &e in &self.exps {
            for j in 2..=e {
                acc *= j;
            }
        }
        acc
    }
}

/// Graded-lexicographic order: compare total degree first, then exponent
/// vectors lexicographically with `x1` most significant. The *greatest*
/// monomial of a degree is the one with the highest power of `x1`.
impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        debug_assert_eq!(self.exps.len(), other.exps.len());
        self.degree()
            .cmp(&other.degree())
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_constant() {
            return write!(f, "1");
        }
        let mut first = true;
        for (i, &e) in self.exps.iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "x{}", i + 1)?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

/// Enumerates all monomials of total degree `d` in `dim` variables, in
/// *descending* graded-lexicographic order (highest power of `x1` first).
pub fn monomials_of_degree(dim: usize, d: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut current = vec![0u32; dim];
    fill(&mut out, &mut current, 0, d);
    return out;

    fn fill(out: &mut Vec<Monomial>, current: &mut Vec<u32>, var: usize, remaining: u32) {
        if var + 1 == current.len() {
            current[var] = remaining;
            out.push(Monomial::new(current.clone()));
            current[var] = 0;
            return;
        }
        let mut e = remaining;
        loop {
            current[var] = e;
            fill(out, current, var + 1, remaining - e);
            if e == 0 {
                break;
            }
            e -= 1;
        }
        current[var] = 0;
    }
}

/// Enumerates all multi-indices `alpha` in `dim` variables with
/// `|alpha| = d`, in the same descending order as [`monomials_of_degree`].
pub fn multi_indices(dim: usize, d: u32) -> Vec<Vec<u32>> {
    monomials_of_degree(dim, d)
        .into_iter()
        .map(|m| m.exps)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn graded_lex_compares_degree_first() {
        let x_cubed = Monomial::new(vec![3, 0]);
        let xy = Monomial::new(vec![1, 1]);
        assert!(x_cubed > xy);
    }

    #[test]
    fn graded_lex_breaks_ties_on_leading_variable() {
        let x2 = Monomial::new(vec![2, 0]);
        let xy = Monomial::new(vec![1, 1]);
        let y2 = Monomial::new(vec![0, 2]);
        assert!(x2 > xy);
        assert!(xy > y2);
    }

    #[test]
    fn degree_enumeration_is_descending_and_complete() {
        let monos = monomials_of_degree(3, 2);
        assert_eq!(monos.len(), 6); // C(2+2, 2)
        for w in monos.windows(2) {
            assert!(w[0] > w[1]);
        }
        assert_eq!(monos[0].exponents(), &[2, 0, 0]);
        assert_eq!(monos[5].exponents(), &[0, 0, 2]);
    }

    #[test]
    fn factorial_multiplies_per_variable() {
        let m = Monomial::new(vec![3, 2]);
        assert_eq!(m.factorial(), BigInt::from(12)); // 3! * 2!
    }

    #[test]
    fn checked_div_detects_nondivisibility() {
        let a = Monomial::new(vec![2, 1]);
        let b = Monomial::new(vec![1, 2]);
        assert!(a.checked_div(&b).is_none());
        assert_eq!(
            a.checked_div(&Monomial::new(vec![1, 1])).unwrap(),
            Monomial::new(vec![1, 0])
        );
    }
}
