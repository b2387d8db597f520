//! Deciding whether a graded subalgebra is Laplacian, and saturating a
//! generator list until it is.
//!
//! A subalgebra `A` containing `r^2` is *Laplacian* when it is closed under
//! the Laplacian. For a finitely generated `A = <g_1, ..., g_k>` this
//! reduces to finitely many membership tests: `A` is Laplacian exactly when
//! `r^2` is a member, every `Δ g_i` is a member, and every gradient pairing
//! `g_i •_1 g_j` is a member. (Sufficiency follows from the product rule
//! `Δ(fg) = f Δg + g Δf + 2 <∇f, ∇g>` by induction over generator products;
//! necessity holds because `Δ` and `•_1` keep Laplacian algebras stable.)
//!
//! [`laplacian_closure`] runs the same tests and adjoins every escaping
//! polynomial, re-minimalizing between rounds, until either nothing escapes
//! or a cap is hit.

use crate::algebra::GradedSubalgebra;
use crate::apolar::gradient_pairing;
use crate::error::{Error, Result};
use crate::polynomial::Polynomial;

/// Why a polynomial witnesses failure of the Laplacian property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessReason {
    /// `r^2` itself is not a member.
    R2Missing,
    /// The Laplacian of the (0-based) generator escapes the algebra.
    LaplacianEscapes { generator: usize },
    /// The gradient pairing of the (0-based) generators escapes.
    GradientPairingEscapes { i: usize, j: usize },
}

impl WitnessReason {
    /// Stable machine-readable tag.
    pub fn tag(&self) -> &'static str {
        match self {
            WitnessReason::R2Missing => "r2_missing",
            WitnessReason::LaplacianEscapes { .. } => "laplacian_escapes",
            WitnessReason::GradientPairingEscapes { .. } => "gradient_pairing_escapes",
        }
    }
}

/// A polynomial that must be a member but is not, with its provenance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub polynomial: Polynomial,
    pub reason: WitnessReason,
}

/// Result of running the generator-level Laplacian tests.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaplacianReport {
    /// True when no witness was found. The checks are complete for the given
    /// generators, so this certifies the Laplacian property.
    pub is_laplacian_up_to_checks: bool,
    /// Every escaping polynomial, in check order.
    pub witnesses: Vec<Witness>,
    /// Number of gradient pairings tested (`k (k+1) / 2` for `k` generators).
    pub checked_pairs: usize,
}

/// Runs the full set of generator tests on `a`.
///
/// `degree_cap` must be at least `2 * max generator degree - 2`, which is the
/// highest degree any membership test can reach; a smaller cap yields a
/// degree-cap error rather than a partial answer.
pub fn is_laplacian(a: &GradedSubalgebra, degree_cap: u32) -> Result<LaplacianReport> {
    let max_deg = a.max_generator_degree();
    let required = (2 * max_deg).saturating_sub(2).max(2);
    if degree_cap < required {
        return Err(Error::DegreeCap {
            required: required as usize,
            cap: degree_cap as usize,
        });
    }
    let dim = a.dimension();
    let mut witnesses = Vec::new();

    let r2 = Polynomial::r_squared(dim);
    if !a.contains(&r2)? {
        witnesses.push(Witness {
            polynomial: r2,
            reason: WitnessReason::R2Missing,
        });
    }

    for (i, g) in a.generators().iter().enumerate() {
        let lap = g.laplacian();
        if !member_or_constant(a, &lap)? {
            witnesses.push(Witness {
                polynomial: lap,
                reason: WitnessReason::LaplacianEscapes { generator: i },
            });
        }
    }

    let k = a.generators().len();
    let mut checked_pairs = 0;
    for i in 0..k {
        for j in i..k {
            let pairing = gradient_pairing(&a.generators()[i], &a.generators()[j])?;
            checked_pairs += 1;
            if !member_or_constant(a, &pairing)? {
                witnesses.push(Witness {
                    polynomial: pairing,
                    reason: WitnessReason::GradientPairingEscapes { i, j },
                });
            }
        }
    }

    Ok(LaplacianReport {
        is_laplacian_up_to_checks: witnesses.is_empty(),
        witnesses,
        checked_pairs,
    })
}

/// Constants are members of every subalgebra; skip the projection for them.
fn member_or_constant(a: &GradedSubalgebra, f: &Polynomial) -> Result<bool> {
    match f.degree() {
        None | Some(0) => Ok(true),
        Some(_) => a.contains(f),
    }
}

/// What `laplacian_closure` produced.
#[derive(Debug, Clone)]
pub struct ClosureOutcome {
    /// The algebra generated by the final (minimalized) generator list.
    pub algebra: GradedSubalgebra,
    /// True when a full round adjoined nothing, i.e. the result is Laplacian.
    /// False when a degree or generator-count cap stopped the saturation; the
    /// algebra then holds the partial closure computed so far.
    pub saturated: bool,
    /// Number of saturation rounds executed.
    pub rounds: usize,
    /// Every polynomial adjoined along the way, in adjunction order and
    /// content-normalized form.
    pub adjoined: Vec<Polynomial>,
}

/// Saturates `generators` under `r^2`-adjunction, Laplacians, and gradient
/// pairings, until the generated algebra is Laplacian or a cap intervenes.
///
/// Each round tests against the current algebra in a fixed order: `r^2`
/// first, then `Δ g` for every generator, then all `g_i •_1 g_j`. Escaping
/// polynomials are adjoined whole (content-normalized, so e.g. an escaping
/// `4 r^2` is recorded as `r^2`), and the generator list is re-minimalized
/// before the next round. A polynomial of degree above `max_degree`, or a
/// minimal generator count above `max_generators`, stops the loop with
/// `saturated = false`.
pub fn laplacian_closure(
    dim: usize,
    generators: Vec<Polynomial>,
    max_degree: u32,
    max_generators: usize,
) -> Result<ClosureOutcome> {
    let mut gens = if generators.is_empty() {
        vec![Polynomial::r_squared(dim)]
    } else {
        generators
    };
    let mut adjoined = Vec::new();
    let mut rounds = 0;
    loop {
        rounds += 1;
        let algebra = GradedSubalgebra::new(dim, gens.clone())?;
        let report = is_laplacian(&algebra, (2 * algebra.max_generator_degree()).max(2))?;
        if report.is_laplacian_up_to_checks {
            return Ok(ClosureOutcome {
                algebra,
                saturated: true,
                rounds,
                adjoined,
            });
        }
        let mut pending: Vec<Polynomial> = Vec::new();
        for w in report.witnesses {
            let candidate = w.polynomial.primitive_normalized();
            if pending.contains(&candidate) {
                continue;
            }
            if candidate.degree().unwrap_or(0) > max_degree {
                return Ok(ClosureOutcome {
                    algebra,
                    saturated: false,
                    rounds,
                    adjoined,
                });
            }
            pending.push(candidate);
        }
        adjoined.extend(pending.iter().cloned());
        gens.extend(pending);
        let enlarged = GradedSubalgebra::new(dim, gens)?;
        gens = enlarged.minimal_generators(enlarged.max_generator_degree())?;
        if gens.len() > max_generators {
            return Ok(ClosureOutcome {
                algebra: GradedSubalgebra::new(dim, gens)?,
                saturated: false,
                rounds,
                adjoined,
            });
        }
    }
}
