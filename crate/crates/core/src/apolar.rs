//! Higher polarization products, the differentiation dual, and the apolar
//! inner product.
//!
//! For `f, g` in `n` variables the degree-`k` product is
//!
//! ```text
//! f •_k g = Σ_{|alpha| = k} (k choose alpha) (∂^alpha f)(∂^alpha g),
//! ```
//!
//! with `(k choose alpha) = k! / (alpha_1! ... alpha_n!)`. On homogeneous
//! inputs of degrees `a` and `b` the result is homogeneous of degree
//! `a + b - 2k` (or zero). Three special cases carry names of their own:
//! `•_0` is ordinary multiplication, `•_1` is the gradient pairing
//! `<∇f, ∇g>`, and `(1/d!) f •_d g` on two degree-`d` forms is the apolar
//! inner product.
//!
//! [`bullet_inductive`] computes the same product through the recursion
//! `f •_{k+1} g = ((Δ(f •_k g) - (Δf) •_k g - f •_k (Δg)) / 2`, sharing no
//! code with the direct expansion; the two routes cross-check each other.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::monomial::multi_indices;
use crate::polynomial::Polynomial;

/// `k! / (alpha_1! * ... * alpha_n!)` as a big integer.
fn multinomial(k: u32, alpha: &[u32]) -> BigInt {
    debug_assert_eq!(alpha.iter().sum::<u32>(), k);
    let mut value = BigInt::one();
    // incremental binomial product: C(s_1, a_1) * C(s_1+a_2, a_2) * ...
    let mut seen = 0u32;
    for &a in alpha {
        for j in 1..=a {
            value = value * BigInt::from(seen + j) / BigInt::from(j);
        }
        seen += a;
    }
    value
}

fn check_same_dim(f: &Polynomial, g: &Polynomial) -> Result<usize> {
    if f.dimension() != g.dimension() {
        return Err(Error::Dimension {
            expected: f.dimension(),
            found: g.dimension(),
        });
    }
    Ok(f.dimension())
}

/// The degree-`k` product `f •_k g` by direct expansion over multi-indices.
///
/// Total on arbitrary (also inhomogeneous) inputs; bilinear and symmetric.
pub fn bullet(f: &Polynomial, g: &Polynomial, k: u32) -> Result<Polynomial> {
    let dim = check_same_dim(f, g)?;
    let mut acc = Polynomial::zero(dim);
    for alpha in multi_indices(dim, k) {
        let df = f.partial_multi(&alpha);
        if df.is_zero() {
            continue;
        }
        let dg = g.partial_multi(&alpha);
        if dg.is_zero() {
            continue;
        }
        let weight = BigRational::from_integer(multinomial(k, &alpha));
        acc = &acc + &(&df * &dg).scale(&weight);
    }
    Ok(acc)
}

/// The degree-`k` product through the Laplacian recursion
/// `f •_0 g = f g` and
/// `f •_{k+1} g = (Δ(f •_k g) - (Δf) •_k g - f •_k (Δg)) / 2`.
///
/// Independent of [`bullet`]; used as its oracle and vice versa.
pub fn bullet_inductive(f: &Polynomial, g: &Polynomial, k: u32) -> Result<Polynomial> {
    check_same_dim(f, g)?;
    if k == 0 {
        return Ok(f * g);
    }
    let prev = bullet_inductive(f, g, k - 1)?;
    let df_term = bullet_inductive(&f.laplacian(), g, k - 1)?;
    let dg_term = bullet_inductive(f, &g.laplacian(), k - 1)?;
    let half = BigRational::new(BigInt::one(), BigInt::from(2));
    Ok((&(&prev.laplacian() - &df_term) - &dg_term).scale(&half))
}

/// The gradient pairing `<∇f, ∇g> = f •_1 g`.
pub fn gradient_pairing(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    bullet(f, g, 1)
}

/// Applies the differentiation dual of `f` to `g`: for `f = Σ c_alpha x^alpha`
/// this is `Σ c_alpha ∂^alpha g`.
///
/// For `f` homogeneous of degree `k` it equals `(1/k!) f •_k g`, and duality
/// turns products into compositions: the dual of `f g` is the dual of `f`
/// composed with the dual of `g`.
pub fn dual_apply(f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    let dim = check_same_dim(f, g)?;
    let mut acc = Polynomial::zero(dim);
    for (m, c) in f.terms() {
        let d = g.partial_multi(m.exponents());
        if !d.is_zero() {
            acc = &acc + &d.scale(c);
        }
    }
    Ok(acc)
}

/// The apolar inner product of two homogeneous polynomials of the same
/// degree `d`, i.e. the constant `(1/d!) f •_d g`.
///
/// Distinct monomials are orthogonal and `<x^alpha, x^alpha> = alpha!`, which
/// is the fast path used here: the product is `Σ_alpha f_alpha g_alpha alpha!`
/// over shared monomials. Returns zero when either input is zero, and a
/// grading error when the inputs are inhomogeneous or of different degrees.
pub fn inner_product(f: &Polynomial, g: &Polynomial) -> Result<BigRational> {
    check_same_dim(f, g)?;
    if f.is_zero() || g.is_zero() {
        return Ok(BigRational::zero());
    }
    let df = f.homogeneous_degree()?;
    let dg = g.homogeneous_degree()?;
    if df != dg {
        return Err(Error::Grading(format!(
            "inner product needs equal degrees, got {df} and {dg}"
        )));
    }
    let mut acc = BigRational::zero();
    for (m, cf) in f.terms() {
        let cg = g.coefficient(m);
        if cg.is_zero() {
            continue;
        }
        acc += cf * cg * BigRational::from_integer(m.factorial());
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parse::parse_polynomial;
    use num_traits::Signed;

    fn p(src: &str, dim: usize) -> Polynomial {
        parse_polynomial(src, dim).unwrap()
    }

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn multinomial_values() {
        assert_eq!(multinomial(4, &[2, 1, 1]), BigInt::from(12));
        assert_eq!(multinomial(3, &[3, 0]), BigInt::from(1));
        assert_eq!(multinomial(0, &[0, 0]), BigInt::from(1));
        assert_eq!(multinomial(5, &[2, 3]), BigInt::from(10));
    }

    #[test]
    fn bullet_zero_is_multiplication() {
        let f = p("x1^2 + x2", 2);
        let g = p("x1 - 3*x2^2", 2);
        assert_eq!(bullet(&f, &g, 0).unwrap(), &f * &g);
    }

    #[test]
    fn bullet_square_in_one_variable() {
        // x^2 •_2 x^2 = (2 choose (2)) * 2 * 2 = 4
        let f = p("x1^2", 1);
        assert_eq!(
            bullet(&f, &f, 2).unwrap(),
            Polynomial::constant_i64(4, 1)
        );
    }

    #[test]
    fn bullet_one_with_r_squared_scales_by_twice_degree() {
        // r^2 •_1 f = 2 Σ x_i ∂_i f = 2 d f on a degree-d form (Euler)
        let r2 = Polynomial::r_squared(2);
        let f = p("x1^3", 2);
        assert_eq!(bullet(&r2, &f, 1).unwrap(), f.scale_i64(6));
        let g = p("x1^2*x2^2 - x2^4", 2);
        assert_eq!(bullet(&r2, &g, 1).unwrap(), g.scale_i64(8));
    }

    #[test]
    fn bullet_matches_inductive_on_fixed_cases() {
        let cases = [
            ("x1^2 + x2^2", "x1^3 - 3*x1*x2^2", 2),
            ("x1^4", "x2^4", 3),
            ("x1*x2*x3", "x1*x2*x3", 2),
            ("x1^2 - x2^2 + x1*x3", "x3^3 + x1*x2", 1),
            ("x1^3*x2", "x1*x2^3", 4),
        ];
        for (fs, gs, k) in cases {
            let f = p(fs, 3);
            let g = p(gs, 3);
            assert_eq!(
                bullet(&f, &g, k).unwrap(),
                bullet_inductive(&f, &g, k).unwrap(),
                "mismatch for {fs} bullet_{k} {gs}"
            );
        }
    }

    #[test]
    fn bullet_is_symmetric_and_bilinear() {
        let f = p("x1^2*x2 - x3^3", 3);
        let g = p("x1*x3^2 + x2^3", 3);
        let h = p("x2*x3 - x1^2", 3);
        for k in 0..=3 {
            assert_eq!(bullet(&f, &g, k).unwrap(), bullet(&g, &f, k).unwrap());
            let lhs = bullet(&(&f + &h), &g, k).unwrap();
            let rhs = &bullet(&f, &g, k).unwrap() + &bullet(&h, &g, k).unwrap();
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn bullet_degree_drop_on_homogeneous_inputs() {
        let f = p("x1^3 + x2^3", 2); // degree 3
        let g = p("x1^2*x2^2", 2); // degree 4
        for k in 0..=3 {
            let r = bullet(&f, &g, k).unwrap();
            if !r.is_zero() {
                assert!(r.is_homogeneous());
                assert_eq!(r.degree(), Some(3 + 4 - 2 * k));
            }
        }
    }

    #[test]
    fn bullet_rejects_dimension_mismatch() {
        let f = Polynomial::r_squared(2);
        let g = Polynomial::r_squared(3);
        assert!(matches!(
            bullet(&f, &g, 1),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn dual_apply_of_power_on_itself_is_factorial() {
        for d in 1..=6u32 {
            let f = p(&format!("x1^{d}"), 1);
            let expect = (1..=u64::from(d)).product::<u64>() as i64;
            assert_eq!(
                dual_apply(&f, &f).unwrap(),
                Polynomial::constant_i64(expect, 1)
            );
        }
    }

    #[test]
    fn dual_apply_turns_factors_into_composition() {
        // dual(fg) applied to h equals dual(f) applied to dual(g) applied to h
        let f = p("x1^2 - x2", 2);
        let g = p("x1*x2 + 3", 2);
        let h = p("x1^4*x2^2 + x1*x2^5 - x2^3", 2);
        let lhs = dual_apply(&(&f * &g), &h).unwrap();
        let rhs = dual_apply(&f, &dual_apply(&g, &h).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn dual_apply_matches_scaled_bullet_on_homogeneous_input() {
        let f = p("x1^2*x2 - x2^3", 2); // degree 3
        let g = p("x1^5 + x1^2*x2^3", 2);
        let via_bullet = bullet(&f, &g, 3).unwrap().scale(&rat(1, 6));
        assert_eq!(dual_apply(&f, &g).unwrap(), via_bullet);
    }

    #[test]
    fn inner_product_monomial_orthogonality() {
        let x2 = p("x1^2", 1);
        assert_eq!(inner_product(&x2, &x2).unwrap(), rat(2, 1));
        let xy = p("x1*x2", 2);
        assert_eq!(inner_product(&xy, &xy).unwrap(), rat(1, 1));
        let other = p("x1^2", 2);
        assert_eq!(inner_product(&xy, &other).unwrap(), rat(0, 1));
    }

    #[test]
    fn inner_product_three_defining_expressions_agree() {
        let f = p("x1^3 - 2*x1*x2^2 + x2^3", 2);
        let g = p("5*x1^2*x2 + x2^3", 2);
        let via_fast = inner_product(&f, &g).unwrap();
        let via_dual = dual_apply(&f, &g).unwrap();
        assert_eq!(via_dual, Polynomial::constant(via_fast.clone(), 2));
        let via_bullet = bullet(&f, &g, 3).unwrap().scale(&rat(1, 6));
        assert_eq!(via_bullet, Polynomial::constant(via_fast, 2));
    }

    #[test]
    fn inner_product_is_positive_definite_on_samples() {
        for src in ["x1^2 - x2^2", "x1*x2", "3*x1^4 - 1/7*x2^4", "x1^3*x2"] {
            let f = p(src, 2);
            assert!(inner_product(&f, &f).unwrap().is_positive());
        }
    }

    #[test]
    fn inner_product_rejects_mixed_grading() {
        let f = p("x1^2 + x1", 2);
        let g = p("x1^2", 2);
        assert!(matches!(inner_product(&f, &g), Err(Error::Grading(_))));
        let h = p("x1^3", 2);
        assert!(matches!(inner_product(&g, &h), Err(Error::Grading(_))));
        assert_eq!(
            inner_product(&Polynomial::zero(2), &g).unwrap(),
            BigRational::zero()
        );
    }

    #[test]
    fn adjointness_of_multiplication_and_dual() {
        // <g f, h> = <g, dual(f)(h)> for f of degree k, g of degree d - k,
        // h of degree d
        let f = p("x1*x2", 2); // k = 2
        let g = p("x1^2 - x2^2", 2); // d - k = 2
        let h = p("x1^3*x2 + x2^4", 2); // d = 4
        let lhs = inner_product(&(&g * &f), &h).unwrap();
        let rhs = inner_product(&g, &dual_apply(&f, &h).unwrap()).unwrap();
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn gradient_pairing_examples() {
        let r2 = Polynomial::r_squared(2);
        assert_eq!(
            gradient_pairing(&r2, &r2).unwrap(),
            r2.scale_i64(4)
        );
        let q = p("x1^2 - x2^2", 2);
        let h = p("2*x1*x2", 2);
        assert!(gradient_pairing(&q, &h).unwrap().is_zero());
    }
}
