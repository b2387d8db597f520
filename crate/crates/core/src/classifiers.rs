//! Certifiers for two distinguished shapes of Laplacian algebra.
//!
//! A *Cartan–Münzner polynomial* of degree g̃ is a homogeneous F with
//!
//! ```text
//! ΔF = c·r^{g̃−2}          (c constant)
//! ‖∇F‖² = g̃²·r^{2g̃−2}
//! ```
//!
//! Such an F generates, together with r², a Laplacian algebra whose level
//! sets on the unit sphere form an isoparametric family.  [`munzner_check`]
//! verifies both identities by exact coefficient comparison, and
//! [`munzner_normalize`] rescales a candidate second generator into the
//! normalized form aρ₂ + b·(r²)^{g̃/2} when rational parameters exist.
//!
//! A spanning family of *quadratics* generates a Laplacian algebra exactly
//! when its span contains r² and is closed under the gradient pairing
//! f •₁ g = ⟨∇f, ∇g⟩, which makes the span of the associated symmetric
//! endomorphisms a Jordan algebra.  [`jordan_closure_check`] tests this.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::apolar::{bullet, inner_product};
use crate::error::{Error, Result};
use crate::linalg::{solve_square, Sieve};
use crate::polynomial::Polynomial;

/// Outcome of the Cartan–Münzner identity checks for one polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MunznerReport {
    /// Homogeneity degree g̃ of the input.
    pub degree: u32,
    /// The constant c with ΔF = c·r^{g̃−2}, when that identity holds.
    /// `None` means the Laplacian condition fails (for odd g̃ the power
    /// r^{g̃−2} is not polynomial, so the condition forces ΔF = 0).
    pub laplacian_constant: Option<BigRational>,
    /// Whether ‖∇F‖² = g̃²·(r²)^{g̃−1} holds exactly.
    pub norm_identity_holds: bool,
    /// Advisory flag: F is a scalar multiple of (r²)^{g̃/2}, so its level
    /// sets on the sphere are trivial (empty or everything) and the pass is
    /// degenerate.
    pub radial: bool,
    /// Both identities hold.
    pub passes: bool,
}

/// Result of the quadratic-family closure test.
#[derive(Debug, Clone, PartialEq)]
pub struct JordanReport {
    /// Linear dimension of the span of the input quadratics.
    pub dimension_of_span: usize,
    /// Whether r² lies in the span.
    pub r2_in_span: bool,
    /// Whether every pairwise gradient pairing stays in the span
    /// (constants adjoined).
    pub closed: bool,
    /// First pair (i, j), as 0-based indices into the input list, whose
    /// gradient pairing escapes the span; `None` when closed.
    pub failing_pair: Option<(usize, usize)>,
    /// The escaping product for `failing_pair`.
    pub failing_product: Option<Polynomial>,
    /// `closed && r2_in_span`.
    pub passes: bool,
}

/// If `p == c·q` for a rational constant c (with q nonzero), returns that c.
fn proportional_to(p: &Polynomial, q: &Polynomial) -> Option<BigRational> {
    if p.is_zero() {
        return Some(BigRational::zero());
    }
    let (monomial, q_coeff) = q.leading_term()?;
    let c = p.coefficient(&monomial) / q_coeff;
    if c.is_zero() {
        return None;
    }
    let scaled = q.scale(&c);
    if p == &scaled {
        Some(c)
    } else {
        None
    }
}

/// Exact square root of a nonnegative rational, when it is rational.
///
/// In lowest terms p/q, the square root is rational exactly when p and q are
/// both perfect squares.
fn sqrt_rational(value: &BigRational) -> Option<BigRational> {
    if value.is_negative() {
        return None;
    }
    let numer = value.numer().clone();
    let denom = value.denom().clone();
    let sn = numer.sqrt();
    let sd = denom.sqrt();
    if &sn * &sn == numer && &sd * &sd == denom {
        Some(BigRational::new(sn, sd))
    } else {
        None
    }
}

/// Checks the two Cartan–Münzner identities for a homogeneous polynomial.
///
/// Both checks are exact coefficient comparisons.  The constant c in
/// ΔF = c·r^{g̃−2} is recovered and reported when the identity holds; the
/// norm identity compares F •₁ F against g̃²·(r²)^{g̃−1}.
///
/// # Errors
///
/// [`Error::Grading`] if F is zero, inhomogeneous, or constant.
pub fn munzner_check(f: &Polynomial) -> Result<MunznerReport> {
    let degree = f.homogeneous_degree()?;
    if degree == 0 {
        return Err(Error::Grading(
            "Cartan-Münzner check needs degree at least 1".into(),
        ));
    }
    let dim = f.dimension();
    let r2 = Polynomial::r_squared(dim);

    let lap = f.laplacian();
    let laplacian_constant = if degree % 2 == 1 {
        // r^{g̃−2} is an odd power of r, not a polynomial: the identity
        // forces ΔF = 0.
        if lap.is_zero() {
            Some(BigRational::zero())
        } else {
            None
        }
    } else {
        proportional_to(&lap, &r2.pow((degree - 2) / 2))
    };

    let grad_norm_sq = bullet(f, f, 1)?;
    let target = r2
        .pow(degree - 1)
        .scale(&BigRational::from_integer(BigInt::from(
            u64::from(degree) * u64::from(degree),
        )));
    let norm_identity_holds = grad_norm_sq == target;

    let radial =
        degree % 2 == 0 && proportional_to(f, &r2.pow(degree / 2)).is_some();

    let passes = laplacian_constant.is_some() && norm_identity_holds;
    Ok(MunznerReport {
        degree,
        laplacian_constant,
        norm_identity_holds,
        radial,
        passes,
    })
}

/// Searches for a rescaling of ρ₂ that passes [`munzner_check`].
///
/// For odd degree g̃ the ansatz is F̃ = a·ρ₂ (the correction term (r²)^{g̃/2}
/// is not polynomial), which requires Δρ₂ = 0 and ‖∇ρ₂‖² = λ·(r²)^{g̃−1}
/// with λ a rational square; then a = g̃/√λ.
///
/// For even g̃ the ansatz is F̃ = a·ρ₂ + b·(r²)^{g̃/2}.  Writing
/// ‖∇ρ₂‖² = λ·(r²)^{g̃−1} + μ·ρ₂·(r²)^{(g̃−2)/2} (the decomposition must
/// exist and be exact) and requiring Δρ₂ to be a constant multiple of
/// (r²)^{(g̃−2)/2}, expanding ‖∇F̃‖² = g̃²·(r²)^{g̃−1} via the Euler identity
/// ⟨x, ∇ρ₂⟩ = g̃·ρ₂ yields
///
/// ```text
/// b = −aμ/(2g̃²),    a² = 4g̃⁴/(4g̃²λ + μ²),
/// ```
///
/// solvable over ℚ exactly when 4g̃²λ + μ² is a rational square.
///
/// Returns `None` when no rational normalization exists, and also for
/// radial input (ρ₂ proportional to a power of r²): every member of the
/// radial pencil a·ρ₂ + b·(r²)^{g̃/2} is again radial, so the two-parameter
/// ansatz degenerates and no distinguished normalization exists.
///
/// # Errors
///
/// [`Error::Grading`] if ρ₂ is zero, inhomogeneous, or constant.
pub fn munzner_normalize(rho2: &Polynomial) -> Result<Option<Polynomial>> {
    let degree = rho2.homogeneous_degree()?;
    if degree == 0 {
        return Err(Error::Grading(
            "Cartan-Münzner normalization needs degree at least 1".into(),
        ));
    }
    let dim = rho2.dimension();
    let r2 = Polynomial::r_squared(dim);
    let g = BigRational::from_integer(BigInt::from(degree));

    if degree % 2 == 0 && proportional_to(rho2, &r2.pow(degree / 2)).is_some() {
        return Ok(None);
    }

    let grad_norm_sq = bullet(rho2, rho2, 1)?;

    if degree % 2 == 1 {
        if !rho2.laplacian().is_zero() {
            return Ok(None);
        }
        let lambda = match proportional_to(&grad_norm_sq, &r2.pow(degree - 1)) {
            Some(l) if l.is_positive() => l,
            _ => return Ok(None),
        };
        let sqrt_lambda = match sqrt_rational(&lambda) {
            Some(s) => s,
            None => return Ok(None),
        };
        return Ok(Some(rho2.scale(&(g / sqrt_lambda))));
    }

    let half = degree / 2;
    if proportional_to(&rho2.laplacian(), &r2.pow(half - 1)).is_none() {
        return Ok(None);
    }

    // Decompose ‖∇ρ₂‖² = λ·v₁ + μ·v₂ with v₁ = (r²)^{g̃−1} and
    // v₂ = ρ₂·(r²)^{(g̃−2)/2}.  Non-radial ρ₂ makes v₁, v₂ independent, so
    // the Gram system of the apolar inner product is invertible; the solve
    // is only a candidate until verified exact.
    let v1 = r2.pow(degree - 1);
    let v2 = rho2 * &r2.pow(half - 1);
    let gram = vec![
        vec![inner_product(&v1, &v1)?, inner_product(&v1, &v2)?],
        vec![inner_product(&v2, &v1)?, inner_product(&v2, &v2)?],
    ];
    let rhs = vec![
        inner_product(&v1, &grad_norm_sq)?,
        inner_product(&v2, &grad_norm_sq)?,
    ];
    let coords = match solve_square(&gram, &rhs) {
        Some(c) => c,
        None => return Ok(None),
    };
    let combo = match v1.scale(&coords[0]).checked_add(&v2.scale(&coords[1])) {
        Ok(c) => c,
        Err(_) => return Ok(None),
    };
    if combo != grad_norm_sq {
        return Ok(None);
    }
    let lambda = coords[0].clone();
    let mu = coords[1].clone();

    let g_sq = &g * &g;
    let discriminant =
        BigRational::from_integer(BigInt::from(4)) * &g_sq * &lambda + &mu * &mu;
    if !discriminant.is_positive() {
        return Ok(None);
    }
    let a_sq = BigRational::from_integer(BigInt::from(4)) * &g_sq * &g_sq
        / discriminant;
    let a = match sqrt_rational(&a_sq) {
        Some(s) => s,
        None => return Ok(None),
    };
    let b = -&a * &mu / (BigRational::from_integer(BigInt::from(2)) * &g_sq);

    let result = rho2
        .scale(&a)
        .checked_add(&r2.pow(half).scale(&b))
        .expect("same dimension");
    Ok(Some(result))
}

/// Tests whether a family of quadratics spans a gradient-pairing-closed
/// space containing r².
///
/// The span of symmetric endomorphisms associated to such a family is a
/// Jordan algebra, and the family then generates a Laplacian algebra: the
/// Laplacian of a quadratic is constant, so •₁-closure is the only
/// condition with content.  Products are tested against the span with
/// constants adjoined.  `dim` fixes the ambient variable count (needed to
/// form r² even for an empty family).
///
/// # Errors
///
/// [`Error::Dimension`] on a generator in the wrong variable count and
/// [`Error::Grading`] on input that is not homogeneous of degree exactly 2.
pub fn jordan_closure_check(
    dim: usize,
    quadratics: &[Polynomial],
) -> Result<JordanReport> {
    for q in quadratics {
        if q.dimension() != dim {
            return Err(Error::Dimension {
                expected: dim,
                found: q.dimension(),
            });
        }
        if q.homogeneous_degree()? != 2 {
            return Err(Error::Grading(format!(
                "quadratic family requires degree 2, found degree {}",
                q.homogeneous_degree()?
            )));
        }
    }

    let indexer = crate::algebra::DegreeIndexer::new(dim, 2);
    let mut span = Sieve::new();
    for q in quadratics {
        span.insert(&indexer.vector(q));
    }
    let dimension_of_span = span.rank();

    let in_span = |p: &Polynomial| -> bool {
        let mut probe = span.clone();
        !probe.insert(&indexer.vector(p))
    };

    let r2_in_span = in_span(&Polynomial::r_squared(dim));

    let mut failing_pair = None;
    let mut failing_product = None;
    'outer: for (i, qi) in quadratics.iter().enumerate() {
        for (j, qj) in quadratics.iter().enumerate().skip(i) {
            let product = bullet(qi, qj, 1)?;
            // The pairing of two quadratics is again homogeneous of degree
            // 2 (or zero); constants are adjoined to the span, so only the
            // quadratic component needs membership.
            let quadratic_part = product.homogeneous_part(2);
            if !quadratic_part.is_zero() && !in_span(&quadratic_part) {
                failing_pair = Some((i, j));
                failing_product = Some(product);
                break 'outer;
            }
        }
    }

    let closed = failing_pair.is_none();
    Ok(JordanReport {
        dimension_of_span,
        r2_in_span,
        closed,
        failing_pair,
        failing_product,
        passes: closed && r2_in_span,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::harmonic_cosine;
    use crate::laplacian::is_laplacian;
    use crate::parse::parse_polynomial;
    use crate::GradedSubalgebra;

    fn p(src: &str, dim: usize) -> Polynomial {
        parse_polynomial(src, dim).unwrap()
    }

    #[test]
    fn harmonic_quadratic_passes_with_zero_constant() {
        let report = munzner_check(&p("x1^2 - x2^2", 2)).unwrap();
        assert_eq!(report.degree, 2);
        assert_eq!(report.laplacian_constant, Some(BigRational::zero()));
        assert!(report.norm_identity_holds);
        assert!(!report.radial);
        assert!(report.passes);
    }

    #[test]
    fn harmonic_cubic_passes() {
        // ‖∇(x³−3xy²)‖² = 9(x²−y²)² + 36x²y² = 9(x²+y²)².
        let report = munzner_check(&p("x1^3 - 3*x1*x2^2", 2)).unwrap();
        assert_eq!(report.laplacian_constant, Some(BigRational::zero()));
        assert!(report.norm_identity_holds);
        assert!(report.passes);
    }

    #[test]
    fn bare_cube_fails_both_identities() {
        // Δ(x³) = 6x ≠ 0 at odd degree, and ‖∇x³‖² = 9x⁴ ≠ 9r⁴.
        let report = munzner_check(&p("x1^3", 2)).unwrap();
        assert_eq!(report.laplacian_constant, None);
        assert!(!report.norm_identity_holds);
        assert!(!report.passes);
    }

    #[test]
    fn radial_quartic_passes_with_advisory_flag() {
        let r4 = Polynomial::r_squared(2).pow(2);
        let report = munzner_check(&r4).unwrap();
        // Δ(r²)² = 2·2·(n+2)·r² = 16r² in n = 2.
        assert_eq!(
            report.laplacian_constant,
            Some(BigRational::from_integer(BigInt::from(16)))
        );
        assert!(report.norm_identity_holds);
        assert!(report.radial);
        assert!(report.passes);
    }

    #[test]
    fn dihedral_harmonics_pass_for_all_small_orders() {
        for g in 1..=8 {
            let f = harmonic_cosine(g);
            let report = munzner_check(&f).unwrap();
            assert_eq!(report.degree, g);
            assert_eq!(
                report.laplacian_constant,
                Some(BigRational::zero()),
                "order {g}"
            );
            assert!(report.norm_identity_holds, "order {g}");
            assert!(report.passes, "order {g}");
            assert!(!report.radial, "order {g}");
        }
    }

    #[test]
    fn doubling_composite_passes_at_twice_the_degree() {
        // 2F² − r^{2g} built from a degree-g pass is again Cartan–Münzner:
        // on the unit circle it restricts to cos(2gθ).
        for g in 1..=4 {
            let f = harmonic_cosine(g);
            let composite = &(&f * &f).scale_i64(2)
                - &Polynomial::r_squared(2).pow(g);
            let report = munzner_check(&composite).unwrap();
            assert_eq!(report.degree, 2 * g);
            assert!(report.passes, "order {g}");
            assert_eq!(&composite, &harmonic_cosine(2 * g));
        }
    }

    #[test]
    fn check_rejects_inhomogeneous_and_constant_input() {
        assert!(munzner_check(&p("x1^2 + x1", 2)).is_err());
        assert!(munzner_check(&p("3", 2)).is_err());
        assert!(munzner_check(&Polynomial::zero(2)).is_err());
    }

    #[test]
    fn normalize_rescales_doubled_quadratic() {
        let result = munzner_normalize(&p("2*x1^2 - 2*x2^2", 2)).unwrap();
        assert_eq!(result, Some(p("x1^2 - x2^2", 2)));
    }

    #[test]
    fn normalize_fixes_already_normalized_quartic() {
        let f = p("x1^4 - 6*x1^2*x2^2 + x2^4", 2);
        let result = munzner_normalize(&f).unwrap();
        assert_eq!(result, Some(f));
    }

    #[test]
    fn normalize_declines_radial_input() {
        let r4 = Polynomial::r_squared(2).pow(2);
        assert_eq!(munzner_normalize(&r4).unwrap(), None);
        let r2 = Polynomial::r_squared(3);
        assert_eq!(munzner_normalize(&r2).unwrap(), None);
    }

    #[test]
    fn normalize_handles_linear_forms_when_length_is_rational() {
        // ‖∇(3x+4y)‖² = 25, a perfect square: a = 1/5.
        let result = munzner_normalize(&p("3*x1 + 4*x2", 2)).unwrap();
        assert_eq!(result, Some(p("3/5*x1 + 4/5*x2", 2)));
        // ‖∇(x+y)‖² = 2 is not a rational square.
        assert_eq!(munzner_normalize(&p("x1 + x2", 2)).unwrap(), None);
    }

    #[test]
    fn normalize_rescales_odd_degree_harmonics() {
        // ‖∇(2x³−6xy²)‖² = 36r⁴, so a = 3/6 = 1/2.
        let result = munzner_normalize(&p("2*x1^3 - 6*x1*x2^2", 2)).unwrap();
        assert_eq!(result, Some(p("x1^3 - 3*x1*x2^2", 2)));
        // Odd degree with nonzero Laplacian has no normalization.
        assert_eq!(munzner_normalize(&p("x1^3", 2)).unwrap(), None);
    }

    #[test]
    fn normalize_solves_mixed_even_ansatz() {
        // ρ₂ = x⁴ + y⁴ needs both parameters: ‖∇ρ₂‖² = 16(x⁶+y⁶)
        // decomposes with λ = −8, μ = 24, so a² = 4·4⁴/(4·16·(−8)+24²) = 16
        // and b = −4·24/32 = −3, landing exactly on the harmonic quartic
        // 4(x⁴+y⁴) − 3r⁴ = x⁴ − 6x²y² + y⁴.
        let rho = p("x1^4 + x2^4", 2);
        let result = munzner_normalize(&rho).unwrap().unwrap();
        assert_eq!(result, p("x1^4 - 6*x1^2*x2^2 + x2^4", 2));
        let report = munzner_check(&result).unwrap();
        assert!(report.passes);
        assert!(!report.radial);
    }

    #[test]
    fn normalized_pair_generates_a_laplacian_algebra() {
        for g in [2_u32, 3, 4, 6] {
            let f = harmonic_cosine(g);
            let algebra = GradedSubalgebra::new(
                2,
                vec![Polynomial::r_squared(2), f],
            )
            .unwrap();
            let cap = (2 * g - 2).max(2);
            let report = is_laplacian(&algebra, cap).unwrap();
            assert!(report.is_laplacian_up_to_checks, "order {g}");
        }
    }

    #[test]
    fn jordan_family_of_three_passes() {
        let family = vec![
            Polynomial::r_squared(2),
            p("x1^2 - x2^2", 2),
            p("2*x1*x2", 2),
        ];
        let report = jordan_closure_check(2, &family).unwrap();
        assert_eq!(report.dimension_of_span, 3);
        assert!(report.r2_in_span);
        assert!(report.closed);
        assert_eq!(report.failing_pair, None);
        assert!(report.passes);
    }

    #[test]
    fn lone_harmonic_quadratic_fails_via_escaping_self_product() {
        let family = vec![p("x1^2 - x2^2", 2)];
        let report = jordan_closure_check(2, &family).unwrap();
        assert_eq!(report.dimension_of_span, 1);
        assert!(!report.r2_in_span);
        assert!(!report.closed);
        assert_eq!(report.failing_pair, Some((0, 0)));
        assert_eq!(
            report.failing_product,
            Some(Polynomial::r_squared(2).scale_i64(4))
        );
        assert!(!report.passes);
    }

    #[test]
    fn axis_square_with_r2_passes() {
        let family = vec![Polynomial::r_squared(2), p("x1^2", 2)];
        let report = jordan_closure_check(2, &family).unwrap();
        assert_eq!(report.dimension_of_span, 2);
        assert!(report.passes);
    }

    #[test]
    fn jordan_rejects_non_quadratic_input() {
        assert!(jordan_closure_check(2, &[p("x1^3", 2)]).is_err());
        assert!(jordan_closure_check(2, &[p("x1^2 + x1", 2)]).is_err());
        assert!(jordan_closure_check(2, &[p("x1^2", 3)]).is_err());
    }

    #[test]
    fn jordan_pass_implies_laplacian_closure_of_the_span() {
        let family = vec![
            Polynomial::r_squared(2),
            p("x1^2 - x2^2", 2),
            p("2*x1*x2", 2),
        ];
        let report = jordan_closure_check(2, &family).unwrap();
        assert!(report.passes);
        let algebra = GradedSubalgebra::new(2, family).unwrap();
        let lap = is_laplacian(&algebra, 2).unwrap();
        assert!(lap.is_laplacian_up_to_checks);
        assert!(lap.witnesses.is_empty());
    }

    #[test]
    fn munzner_pass_implies_pencil_is_laplacian() {
        for g in [3_u32, 4] {
            let f = harmonic_cosine(g);
            assert!(munzner_check(&f).unwrap().passes);
            let algebra = GradedSubalgebra::new(
                2,
                vec![Polynomial::r_squared(2), f],
            )
            .unwrap();
            let report = is_laplacian(&algebra, 2 * g - 2).unwrap();
            assert!(report.is_laplacian_up_to_checks, "order {g}");
        }
    }
}
