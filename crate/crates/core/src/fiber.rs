//! Numerical laboratory for the common level sets of a polynomial map on
//! the unit sphere.
//!
//! For generators ρ = (ρ₁, …, ρ_k) the module computes the exact matrix
//! B̂ with entries ρᵢ •₁ ρⱼ = ⟨∇ρᵢ, ∇ρⱼ⟩ (the Gram matrix of the gradients,
//! so rank B̂(p) = rank dρ|ₚ), the transcendence degree of the generated
//! field via the exact Jacobian criterion at random rational points, a
//! float rank stratification of sphere samples, and seeded fiber sampling
//! by Newton projection, with equidistance and connectivity reports on the
//! sampled fibers.
//!
//! Everything float-valued is advisory evidence: exact claims live in the
//! polynomial layer, while the sphere sampling here can only support or
//! refute a picture at the resolution of its tolerances.

use std::collections::BTreeMap;

use nalgebra::{DMatrix, DVector};
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::apolar::bullet;
use crate::error::{Error, Result};
use crate::polynomial::{rational_to_f64, Polynomial};
use crate::sample::{rational_point, sphere_point};

/// Relative singular-value cutoff for float rank decisions: σ counts
/// toward the rank when σ > threshold · σ_max.
pub const RANK_RELATIVE_THRESHOLD: f64 = 1e-8;

/// Maximum Newton iterations when projecting a seed point onto a fiber.
pub const NEWTON_MAX_ITER: usize = 50;

/// Convergence tolerance for the Newton residual (∞-norm of constraints).
pub const NEWTON_TOL: f64 = 1e-10;

/// Default tolerance for matching sampled values to a base value.
pub const DEFAULT_TOL_VALUE: f64 = 1e-6;

/// Default ε (radians of great-circle distance) for connectivity graphs.
pub const DEFAULT_EPS: f64 = 0.1;

/// A polynomial compiled to float coefficients for fast repeated
/// evaluation.
#[derive(Debug, Clone)]
struct FloatPoly {
    terms: Vec<(f64, Vec<u32>)>,
}

impl FloatPoly {
    fn compile(f: &Polynomial) -> FloatPoly {
        let terms = f
            .terms()
            .map(|(m, c)| (rational_to_f64(c), m.exponents().to_vec()))
            .collect();
        FloatPoly { terms }
    }

    fn evaluate(&self, point: &[f64]) -> f64 {
        let mut total = 0.0;
        for (coeff, exps) in &self.terms {
            let mut value = *coeff;
            for (x, &e) in point.iter().zip(exps) {
                if e > 0 {
                    value *= x.powi(e as i32);
                }
            }
            total += value;
        }
        total
    }
}

/// The map ρ: ℝⁿ → ℝᵏ with its gradients, compiled for float evaluation.
#[derive(Debug, Clone)]
struct CompiledMap {
    dim: usize,
    components: Vec<FloatPoly>,
    gradients: Vec<Vec<FloatPoly>>,
}

impl CompiledMap {
    fn compile(dim: usize, gens: &[Polynomial]) -> CompiledMap {
        let components = gens.iter().map(FloatPoly::compile).collect();
        let gradients = gens
            .iter()
            .map(|g| (0..dim).map(|i| FloatPoly::compile(&g.partial(i))).collect())
            .collect();
        CompiledMap {
            dim,
            components,
            gradients,
        }
    }

    fn values(&self, point: &[f64]) -> Vec<f64> {
        self.components.iter().map(|c| c.evaluate(point)).collect()
    }

    /// Jacobian as a k×n float matrix in row-major order.
    fn jacobian(&self, point: &[f64]) -> DMatrix<f64> {
        let k = self.gradients.len();
        let mut data = Vec::with_capacity(k * self.dim);
        for row in &self.gradients {
            for entry in row {
                data.push(entry.evaluate(point));
            }
        }
        DMatrix::from_row_slice(k, self.dim, &data)
    }
}

/// Exact symmetric matrix of pairwise gradient pairings B̂ᵢⱼ = ρᵢ •₁ ρⱼ.
///
/// At a real point p this is the Gram matrix of the gradients ∇ρᵢ(p), so
/// its rank equals the rank of the Jacobian dρ|ₚ.  When the generated
/// algebra is Laplacian, every entry again lies in the algebra.
#[derive(Debug, Clone, PartialEq)]
pub struct BMatrix {
    size: usize,
    entries: Vec<Vec<Polynomial>>,
}

impl BMatrix {
    /// Number of generators k (the matrix is k×k).
    pub fn size(&self) -> usize {
        self.size
    }

    /// Entry (i, j), 0-based.
    pub fn entry(&self, i: usize, j: usize) -> &Polynomial {
        &self.entries[i][j]
    }

    /// Exact determinant by cofactor expansion (the matrix is small).
    pub fn determinant(&self) -> Polynomial {
        determinant_of(&self.entries)
    }

    /// Product of the determinants of all m×m submatrices (every choice of
    /// m rows and m columns).  The product vanishes at every point where
    /// rank B̂ < m, since there all m×m minors vanish simultaneously; it is
    /// one-sided evidence, as it may also vanish at full-rank points where
    /// a single minor happens to die.
    pub fn minor_product(&self, m: usize) -> Polynomial {
        let dim = if self.size > 0 {
            self.entries[0][0].dimension()
        } else {
            0
        };
        if m == 0 || m > self.size {
            return Polynomial::one(dim);
        }
        let index_sets = combinations(self.size, m);
        let mut product = Polynomial::one(dim);
        for rows in &index_sets {
            for cols in &index_sets {
                let sub: Vec<Vec<Polynomial>> = rows
                    .iter()
                    .map(|&r| cols.iter().map(|&c| self.entries[r][c].clone()).collect())
                    .collect();
                product = &product * &determinant_of(&sub);
            }
        }
        product
    }
}

fn determinant_of(entries: &[Vec<Polynomial>]) -> Polynomial {
    let n = entries.len();
    let dim = entries[0][0].dimension();
    if n == 1 {
        return entries[0][0].clone();
    }
    let mut det = Polynomial::zero(dim);
    for (col, pivot) in entries[0].iter().enumerate() {
        if pivot.is_zero() {
            continue;
        }
        let minor: Vec<Vec<Polynomial>> = entries[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(j, _)| *j != col)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let cofactor = pivot * &determinant_of(&minor);
        det = if col % 2 == 0 {
            &det + &cofactor
        } else {
            &det - &cofactor
        };
    }
    det
}

/// All strictly increasing index tuples of length m drawn from 0..n.
fn combinations(n: usize, m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(m);
    fn fill(n: usize, m: usize, start: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == m {
            out.push(current.clone());
            return;
        }
        for i in start..n {
            current.push(i);
            fill(n, m, i + 1, current, out);
            current.pop();
        }
    }
    fill(n, m, 0, &mut current, &mut out);
    out
}

fn check_generators(gens: &[Polynomial]) -> Result<usize> {
    let dim = gens
        .first()
        .map(|g| g.dimension())
        .ok_or_else(|| Error::InvalidGenerator("empty generator list".into()))?;
    for g in gens {
        if g.dimension() != dim {
            return Err(Error::Dimension {
                expected: dim,
                found: g.dimension(),
            });
        }
        g.homogeneous_degree()?;
    }
    Ok(dim)
}

/// Builds the exact B̂ matrix of pairwise gradient pairings.
///
/// # Errors
///
/// [`Error::InvalidGenerator`] on an empty list, [`Error::Dimension`] on
/// mixed ambient dimensions, [`Error::Grading`] on inhomogeneous input.
pub fn b_matrix(gens: &[Polynomial]) -> Result<BMatrix> {
    check_generators(gens)?;
    let k = gens.len();
    let mut entries = vec![vec![Polynomial::zero(gens[0].dimension()); k]; k];
    for i in 0..k {
        for j in i..k {
            let product = bullet(&gens[i], &gens[j], 1)?;
            entries[i][j] = product.clone();
            entries[j][i] = product;
        }
    }
    Ok(BMatrix { size: k, entries })
}

/// Transcendence degree of the field generated by `gens`: the generic rank
/// of the Jacobian [∂ρᵢ/∂xⱼ], computed exactly at `trials` random rational
/// points and maximized.  Deterministic for a fixed seed.
///
/// The generic rank is an almost-everywhere property, so the maximum over
/// random points equals it with probability 1; repeated trials guard
/// against an unlucky special point.
///
/// # Errors
///
/// As for [`b_matrix`].
pub fn transcendence_degree(gens: &[Polynomial], trials: usize, seed: u64) -> Result<usize> {
    let dim = check_generators(gens)?;
    let partials: Vec<Vec<Polynomial>> = gens
        .iter()
        .map(|g| (0..dim).map(|i| g.partial(i)).collect())
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best = 0;
    for _ in 0..trials.max(1) {
        let point = rational_point(dim, &mut rng);
        let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(gens.len());
        for row in &partials {
            rows.push(
                row.iter()
                    .map(|p| p.evaluate(&point))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
        best = best.max(crate::linalg::rank(&rows));
        if best == gens.len().min(dim) {
            break;
        }
    }
    Ok(best)
}

/// Float rank of a matrix by singular values, with the relative threshold
/// [`RANK_RELATIVE_THRESHOLD`].
fn float_rank(matrix: &DMatrix<f64>) -> usize {
    let sv = matrix.clone().svd(false, false).singular_values;
    let max = sv.iter().cloned().fold(0.0_f64, f64::max);
    if max <= 0.0 {
        return 0;
    }
    sv.iter()
        .filter(|&&s| s > RANK_RELATIVE_THRESHOLD * max)
        .count()
}

/// Rank stratification of sphere samples under the Jacobian of ρ.
#[derive(Debug, Clone)]
pub struct StratificationReport {
    /// Maximum rank observed over all samples.
    pub generic_rank: usize,
    /// Count of samples per observed rank.
    pub histogram: BTreeMap<usize, usize>,
    /// Product of all generic_rank × generic_rank minor determinants of
    /// B̂; vanishes at every sampled point of sub-generic rank.
    pub singular_witness: Polynomial,
    /// Number of sphere samples drawn.
    pub n_samples: usize,
    /// Seed used for sampling.
    pub seed: u64,
}

/// Samples the unit sphere and classifies each point by the float rank of
/// the Jacobian dρ, using seeded normalized-Gaussian sampling.
///
/// # Errors
///
/// As for [`b_matrix`].
pub fn stratify(gens: &[Polynomial], n_samples: usize, seed: u64) -> Result<StratificationReport> {
    let dim = check_generators(gens)?;
    let map = CompiledMap::compile(dim, gens);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut histogram = BTreeMap::new();
    let mut generic_rank = 0;
    for _ in 0..n_samples.max(1) {
        let point = sphere_point(dim, &mut rng);
        let rank = float_rank(&map.jacobian(&point));
        *histogram.entry(rank).or_insert(0) += 1;
        generic_rank = generic_rank.max(rank);
    }
    let witness = b_matrix(gens)?.minor_product(generic_rank);
    Ok(StratificationReport {
        generic_rank,
        histogram,
        singular_witness: witness,
        n_samples: n_samples.max(1),
        seed,
    })
}

/// One sampled fiber: the samples projected onto a single base value.
#[derive(Debug, Clone)]
pub struct FiberCluster {
    /// The common value vector ρ(p) for every point of this cluster.
    pub base_value: Vec<f64>,
    /// Indices into [`FiberSampleSet::samples`].
    pub indices: Vec<usize>,
    /// No seed converged onto this value within tolerance.
    pub empty: bool,
}

/// Fiber samples for a generator tuple, clustered by base value.
#[derive(Debug, Clone)]
pub struct FiberSampleSet {
    /// Ambient dimension n.
    pub dim: usize,
    /// Unit-sphere points (float norm within 10⁻¹² of 1).
    pub samples: Vec<Vec<f64>>,
    /// ρ(p) for each sample, same indexing.
    pub values: Vec<Vec<f64>>,
    /// Partition of sample indices by base value.
    pub clusters: Vec<FiberCluster>,
    /// Seed used for sampling.
    pub seed: u64,
    /// Value-matching tolerance τ.
    pub tol_value: f64,
}

/// Newton (Gauss–Newton) projection of a seed point onto the solution set
/// of ρ(p) = base on the unit sphere.  Returns the projected point when the
/// residual converges below [`NEWTON_TOL`] within [`NEWTON_MAX_ITER`]
/// iterations.
fn newton_project(map: &CompiledMap, base: &[f64], seed_point: &[f64]) -> Option<Vec<f64>> {
    let n = map.dim;
    let k = map.components.len();
    let mut p = seed_point.to_vec();
    for _ in 0..NEWTON_MAX_ITER {
        let values = map.values(&p);
        let norm_sq: f64 = p.iter().map(|x| x * x).sum();
        let mut residual = DVector::zeros(k + 1);
        for i in 0..k {
            residual[i] = values[i] - base[i];
        }
        residual[k] = norm_sq - 1.0;
        if residual.amax() < NEWTON_TOL {
            let norm = norm_sq.sqrt();
            for x in &mut p {
                *x /= norm;
            }
            return Some(p);
        }
        let jac_rho = map.jacobian(&p);
        let mut jac = DMatrix::zeros(k + 1, n);
        jac.view_mut((0, 0), (k, n)).copy_from(&jac_rho);
        for j in 0..n {
            jac[(k, j)] = 2.0 * p[j];
        }
        let step = jac.svd(true, true).solve(&residual, 1e-14).ok()?;
        for j in 0..n {
            p[j] -= step[j];
        }
    }
    None
}

/// Samples fibers of ρ over the given base values (or over automatically
/// chosen generic values) by Newton projection of seeded sphere points.
///
/// With `base_values = None`, a pilot batch of sphere points is ranked by
/// the absolute value of the singular-witness polynomial (largest = most
/// generic), the best point's value vector becomes the first base value,
/// and the best point whose value differs from it by more than 10·τ in the
/// ∞-norm contributes a second.  Empty fibers are reported via
/// [`FiberCluster::empty`], not as errors.
///
/// # Errors
///
/// As for [`b_matrix`]; additionally [`Error::Fiber`] when τ ≤ 0 or a
/// requested base value has the wrong arity.
pub fn sample_fibers(
    gens: &[Polynomial],
    base_values: Option<&[Vec<f64>]>,
    n_samples: usize,
    seed: u64,
    tol_value: f64,
) -> Result<FiberSampleSet> {
    let dim = check_generators(gens)?;
    if !(tol_value > 0.0) {
        return Err(Error::Fiber(format!(
            "value tolerance must be positive, got {tol_value}"
        )));
    }
    let k = gens.len();
    let map = CompiledMap::compile(dim, gens);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    let bases: Vec<Vec<f64>> = match base_values {
        Some(list) => {
            for value in list {
                if value.len() != k {
                    return Err(Error::Fiber(format!(
                        "base value has {} coordinates for {} generators",
                        value.len(),
                        k
                    )));
                }
            }
            list.to_vec()
        }
        None => {
            // Pilot pass: rank candidate points by how far they sit from
            // the singular locus, measured by the witness polynomial.
            const PILOT: usize = 64;
            let pilot: Vec<Vec<f64>> = (0..PILOT).map(|_| sphere_point(dim, &mut rng)).collect();
            let generic_rank = pilot
                .iter()
                .map(|p| float_rank(&map.jacobian(p)))
                .max()
                .unwrap_or(0);
            let witness = b_matrix(gens)?.minor_product(generic_rank);
            let mut ranked: Vec<(f64, usize)> = pilot
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    let w = witness.evaluate_f64(p).unwrap_or(0.0);
                    (w.abs(), i)
                })
                .collect();
            ranked.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));
            let first = map.values(&pilot[ranked[0].1]);
            let mut bases = vec![first.clone()];
            for &(_, idx) in ranked.iter().skip(1) {
                let value = map.values(&pilot[idx]);
                let far = value
                    .iter()
                    .zip(&first)
                    .map(|(a, b)| (a - b).abs())
                    .fold(0.0_f64, f64::max)
                    > 10.0 * tol_value;
                if far {
                    bases.push(value);
                    break;
                }
            }
            bases
        }
    };

    let mut samples = Vec::new();
    let mut values = Vec::new();
    let mut clusters = Vec::new();
    for base in &bases {
        let mut indices = Vec::new();
        for _ in 0..n_samples {
            let start = sphere_point(dim, &mut rng);
            let Some(point) = newton_project(&map, base, &start) else {
                continue;
            };
            let value = map.values(&point);
            let matches = value
                .iter()
                .zip(base)
                .all(|(v, b)| (v - b).abs() <= tol_value);
            if !matches {
                continue;
            }
            indices.push(samples.len());
            samples.push(point);
            values.push(value);
        }
        clusters.push(FiberCluster {
            base_value: base.clone(),
            empty: indices.is_empty(),
            indices,
        });
    }

    Ok(FiberSampleSet {
        dim,
        samples,
        values,
        clusters,
        seed,
        tol_value,
    })
}

/// Great-circle distance between two unit vectors, in radians.
fn great_circle(p: &[f64], q: &[f64]) -> f64 {
    let dot: f64 = p.iter().zip(q).map(|(a, b)| a * b).sum();
    dot.clamp(-1.0, 1.0).acos()
}

/// Nearest-distance statistics between two sampled fibers.
#[derive(Debug, Clone, PartialEq)]
pub struct EquidistanceReport {
    /// Mean over cluster `a` of the great-circle distance to the nearest
    /// point of cluster `b`.
    pub mean: f64,
    /// Maximum deviation of an individual nearest-distance from the mean.
    pub max_dev: f64,
}

/// For each point of cluster `a`, the great-circle distance to the nearest
/// sampled point of cluster `b`; reports the mean and the maximum
/// deviation from it.  A small `max_dev` is sampling evidence that the two
/// fibers are equidistant, not a proof.
///
/// # Errors
///
/// [`Error::Fiber`] when a cluster index is out of range or a cluster has
/// no samples.
pub fn equidistance_report(
    set: &FiberSampleSet,
    a: usize,
    b: usize,
) -> Result<EquidistanceReport> {
    for index in [a, b] {
        match set.clusters.get(index) {
            None => {
                return Err(Error::Fiber(format!(
                    "cluster {index} out of range (have {})",
                    set.clusters.len()
                )))
            }
            Some(cluster) if cluster.indices.is_empty() => {
                return Err(Error::Fiber(format!("cluster {index} has no samples")))
            }
            Some(_) => {}
        }
    }
    let distances: Vec<f64> = set.clusters[a]
        .indices
        .iter()
        .map(|&i| {
            set.clusters[b]
                .indices
                .iter()
                .map(|&j| great_circle(&set.samples[i], &set.samples[j]))
                .fold(f64::INFINITY, f64::min)
        })
        .collect();
    let mean = distances.iter().sum::<f64>() / distances.len() as f64;
    let max_dev = distances
        .iter()
        .map(|d| (d - mean).abs())
        .fold(0.0_f64, f64::max);
    Ok(EquidistanceReport { mean, max_dev })
}

/// Connectivity summary for one cluster.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClusterConnectivity {
    /// Cluster index within the sample set.
    pub cluster: usize,
    /// Number of sampled points in the cluster.
    pub n_points: usize,
    /// Connected components of the ε-graph on those points.
    pub components: usize,
}

/// ε-graph connectivity of every cluster in a sample set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConnectivityReport {
    /// Per-cluster point and component counts, in cluster order.
    pub per_cluster: Vec<ClusterConnectivity>,
    /// Fixed advisory wording: component counts are evidence, not verdicts.
    pub advisory: &'static str,
}

/// Counts connected components of the graph joining samples within
/// great-circle distance ε, separately per cluster.
///
/// The counts are advisory evidence: on finitely many samples an ε-graph
/// can both merge genuinely distinct components and split a connected
/// fiber that was sampled too sparsely.  A robustly disconnected generic
/// fiber is evidence that the generated algebra separates less than its
/// integral closure would.
///
/// # Errors
///
/// [`Error::Fiber`] when ε is not positive.
pub fn connectivity_report(set: &FiberSampleSet, eps: f64) -> Result<ConnectivityReport> {
    if !(eps > 0.0) {
        return Err(Error::Fiber(format!("ε must be positive, got {eps}")));
    }
    // Great-circle distance < ε is equivalent to dot product > cos ε,
    // which keeps the pair loop free of inverse trigonometry.
    let dot_threshold = eps.cos();
    let mut per_cluster = Vec::with_capacity(set.clusters.len());
    for (ci, cluster) in set.clusters.iter().enumerate() {
        let points: Vec<&[f64]> = cluster
            .indices
            .iter()
            .map(|&i| set.samples[i].as_slice())
            .collect();
        let mut dsu = DisjointSets::new(points.len());
        for i in 0..points.len() {
            for j in (i + 1)..points.len() {
                let dot: f64 = points[i].iter().zip(points[j]).map(|(a, b)| a * b).sum();
                if dot > dot_threshold {
                    dsu.union(i, j);
                }
            }
        }
        per_cluster.push(ClusterConnectivity {
            cluster: ci,
            n_points: points.len(),
            components: dsu.component_count(),
        });
    }
    Ok(ConnectivityReport {
        per_cluster,
        advisory: "component counts are sampling evidence only: an ε-graph on \
                   finitely many points can both merge distinct components and \
                   split a sparsely sampled connected fiber",
    })
}

/// Union-find over 0..n with path compression and union by size.
struct DisjointSets {
    parent: Vec<usize>,
    size: Vec<usize>,
}

impl DisjointSets {
    fn new(n: usize) -> DisjointSets {
        DisjointSets {
            parent: (0..n).collect(),
            size: vec![1; n],
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (mut ra, mut rb) = (self.find(a), self.find(b));
        if ra == rb {
            return;
        }
        if self.size[ra] < self.size[rb] {
            std::mem::swap(&mut ra, &mut rb);
        }
        self.parent[rb] = ra;
        self.size[ra] += self.size[rb];
    }

    fn component_count(&mut self) -> usize {
        let n = self.parent.len();
        (0..n).filter(|&i| self.find(i) == i).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::invariants::dihedral_invariants;
    use crate::parse::parse_polynomial;

    fn p(src: &str, dim: usize) -> Polynomial {
        parse_polynomial(src, dim).unwrap()
    }

    #[test]
    fn b_matrix_of_r_squared_alone() {
        let b = b_matrix(&[Polynomial::r_squared(2)]).unwrap();
        assert_eq!(b.size(), 1);
        assert_eq!(b.entry(0, 0), &p("4*x1^2 + 4*x2^2", 2));
        assert_eq!(b.determinant(), p("4*x1^2 + 4*x2^2", 2));
    }

    #[test]
    fn b_matrix_golden_determinant() {
        let gens = [Polynomial::r_squared(2), p("x1^2 - x2^2", 2)];
        let b = b_matrix(&gens).unwrap();
        assert_eq!(b.entry(0, 1), &p("4*x1^2 - 4*x2^2", 2));
        assert_eq!(b.entry(1, 0), b.entry(0, 1));
        assert_eq!(b.entry(1, 1), &p("4*x1^2 + 4*x2^2", 2));
        assert_eq!(b.determinant(), p("64*x1^2*x2^2", 2));
    }

    #[test]
    fn b_matrix_of_single_linear_form_is_constant() {
        let b = b_matrix(&[p("x1", 1)]).unwrap();
        assert_eq!(b.entry(0, 0), &Polynomial::one(1));
    }

    #[test]
    fn b_matrix_entries_stay_in_a_laplacian_algebra() {
        let gens = vec![Polynomial::r_squared(2), p("x1^2 - x2^2", 2)];
        let algebra = crate::GradedSubalgebra::new(2, gens.clone()).unwrap();
        let b = b_matrix(&gens).unwrap();
        for i in 0..2 {
            for j in 0..2 {
                assert!(algebra.contains(b.entry(i, j)).unwrap());
            }
        }
    }

    #[test]
    fn minor_product_of_full_size_is_the_determinant() {
        let gens = [Polynomial::r_squared(2), p("x1^2 - x2^2", 2)];
        let b = b_matrix(&gens).unwrap();
        assert_eq!(b.minor_product(2), b.determinant());
        // m = 1 multiplies all four entries.
        let expected = &(&(b.entry(0, 0) * b.entry(0, 1)) * b.entry(1, 0)) * b.entry(1, 1);
        assert_eq!(b.minor_product(1), expected);
    }

    #[test]
    fn transcendence_degree_examples() {
        let pair = [Polynomial::r_squared(2), p("x1^2 - x2^2", 2)];
        assert_eq!(transcendence_degree(&pair, 5, 11).unwrap(), 2);

        let single = [Polynomial::r_squared(3)];
        assert_eq!(transcendence_degree(&single, 5, 11).unwrap(), 1);

        let dependent = [Polynomial::r_squared(2), Polynomial::r_squared(2).pow(2)];
        assert_eq!(transcendence_degree(&dependent, 5, 11).unwrap(), 1);
    }

    #[test]
    fn transcendence_degree_is_full_for_dihedral_invariants() {
        for g in [2_u32, 3, 4] {
            let gens = dihedral_invariants(g).unwrap().generators().to_vec();
            assert_eq!(transcendence_degree(&gens, 5, 7).unwrap(), 2, "order {g}");
        }
    }

    #[test]
    fn float_rank_matches_hand_matrices() {
        let dependent = DMatrix::from_row_slice(2, 2, &[2.0, 0.0, 2.0, 0.0]);
        assert_eq!(float_rank(&dependent), 1);
        let independent = DMatrix::from_row_slice(2, 2, &[2.0, 2.0, 2.0, -2.0]);
        assert_eq!(float_rank(&independent), 2);
        let zero = DMatrix::from_row_slice(1, 2, &[0.0, 0.0]);
        assert_eq!(float_rank(&zero), 0);
    }

    #[test]
    fn stratify_reports_generic_rank_two_off_the_axes() {
        let gens = [Polynomial::r_squared(2), p("x1^2 - x2^2", 2)];
        let report = stratify(&gens, 200, 3).unwrap();
        assert_eq!(report.generic_rank, 2);
        // Random sphere points miss the axes, so every sample is generic.
        assert_eq!(report.histogram.get(&2), Some(&200));
        assert_eq!(report.singular_witness, p("64*x1^2*x2^2", 2));
    }

    #[test]
    fn stratify_single_generator_has_rank_one_everywhere() {
        let gens = [Polynomial::r_squared(3)];
        let report = stratify(&gens, 50, 3).unwrap();
        assert_eq!(report.generic_rank, 1);
        assert_eq!(report.histogram.get(&1), Some(&50));
    }

    #[test]
    fn fibers_of_sign_pair_value_are_two_points() {
        // x² + y² = 1 and x² − y² = 1 force (±1, 0).
        let gens = dihedral_invariants(2).unwrap().generators().to_vec();
        let set = sample_fibers(&gens, Some(&[vec![1.0, 1.0]]), 80, 5, 1e-6).unwrap();
        assert_eq!(set.clusters.len(), 1);
        assert!(!set.clusters[0].empty);
        for &i in &set.clusters[0].indices {
            let point = &set.samples[i];
            // The fiber sits on the singular locus (y = 0), where Newton
            // converges linearly: the y²-residual threshold of 10⁻¹⁰
            // bounds |y| only by 10⁻⁵.
            assert!((point[0].abs() - 1.0).abs() < 1e-8);
            assert!(point[1].abs() < 2e-5);
            let norm: f64 = point.iter().map(|x| x * x).sum::<f64>().sqrt();
            assert!((norm - 1.0).abs() < 1e-12);
        }
        let conn = connectivity_report(&set, 0.1).unwrap();
        assert_eq!(conn.per_cluster[0].components, 2);
    }

    #[test]
    fn whole_sphere_is_one_fiber_for_r_squared() {
        let gens = [Polynomial::r_squared(3)];
        let set = sample_fibers(&gens, Some(&[vec![1.0]]), 300, 9, 1e-6).unwrap();
        assert_eq!(set.clusters[0].indices.len(), 300);
        let conn = connectivity_report(&set, 0.6).unwrap();
        assert_eq!(conn.per_cluster[0].components, 1);
    }

    #[test]
    fn latitude_circle_is_connected_and_pair_of_circles_is_not() {
        let circle = [Polynomial::r_squared(3), p("x1", 3)];
        let set = sample_fibers(&circle, Some(&[vec![1.0, 0.5]]), 400, 13, 1e-6).unwrap();
        let conn = connectivity_report(&set, 0.35).unwrap();
        assert_eq!(conn.per_cluster[0].components, 1);

        // x² = ¼ splits into the two circles x = ±½, which sit at
        // great-circle distance ≈ 1.05 from each other, far above ε.
        let squared = [Polynomial::r_squared(3), p("x1^2", 3)];
        let set = sample_fibers(&squared, Some(&[vec![1.0, 0.25]]), 400, 13, 1e-6).unwrap();
        let conn = connectivity_report(&set, 0.35).unwrap();
        assert_eq!(conn.per_cluster[0].components, 2);
    }

    #[test]
    fn empty_fiber_is_reported_not_fatal() {
        let gens = [Polynomial::r_squared(2)];
        // r² = 4 never meets the unit sphere.
        let set = sample_fibers(&gens, Some(&[vec![4.0]]), 20, 1, 1e-6).unwrap();
        assert!(set.clusters[0].empty);
        assert!(set.samples.is_empty());
        assert!(equidistance_report(&set, 0, 0).is_err());
    }

    #[test]
    fn auto_mode_picks_two_distinct_generic_values() {
        let gens = dihedral_invariants(3).unwrap().generators().to_vec();
        let set = sample_fibers(&gens, None, 120, 17, 1e-6).unwrap();
        assert_eq!(set.clusters.len(), 2);
        let a = &set.clusters[0].base_value;
        let b = &set.clusters[1].base_value;
        assert!((a[1] - b[1]).abs() > 1e-5);
        // Generic fibers of the order-3 family are orbits of size 6.
        let conn = connectivity_report(&set, 0.1).unwrap();
        assert_eq!(conn.per_cluster[0].components, 6);
        assert_eq!(conn.per_cluster[1].components, 6);
    }

    #[test]
    fn sign_pair_fibers_are_equidistant() {
        // Fibers over (1,1) and (1,0): the four points (±√½, ±√½) all sit
        // at great-circle distance π/4 from the nearest of (±1, 0).
        let gens = dihedral_invariants(2).unwrap().generators().to_vec();
        let set = sample_fibers(
            &gens,
            Some(&[vec![1.0, 1.0], vec![1.0, 0.0]]),
            80,
            5,
            1e-6,
        )
        .unwrap();
        let report = equidistance_report(&set, 0, 1).unwrap();
        // The (1,1)-fiber points carry ~10⁻⁵ of angular fuzz (singular
        // fiber, linear Newton convergence); the (1,0)-fiber is regular
        // and lands at machine precision.
        assert!((report.mean - std::f64::consts::FRAC_PI_4).abs() < 5e-5);
        assert!(report.max_dev < 5e-5);
    }

    #[test]
    fn validation_errors_are_reported() {
        assert!(b_matrix(&[]).is_err());
        assert!(b_matrix(&[p("x1 + x1^2", 2)]).is_err());
        assert!(b_matrix(&[p("x1", 1), p("x1", 2)]).is_err());
        let gens = [Polynomial::r_squared(2)];
        assert!(sample_fibers(&gens, Some(&[vec![1.0, 2.0]]), 5, 1, 1e-6).is_err());
        assert!(sample_fibers(&gens, Some(&[vec![1.0]]), 5, 1, 0.0).is_err());
        let set = sample_fibers(&gens, Some(&[vec![1.0]]), 5, 1, 1e-6).unwrap();
        assert!(connectivity_report(&set, 0.0).is_err());
        assert!(equidistance_report(&set, 0, 3).is_err());
    }
}
