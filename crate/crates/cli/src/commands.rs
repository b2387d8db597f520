//! One function per subcommand: load inputs, run the library operation,
//! print a human summary to stdout, and assemble the machine report.

use serde_json::{json, Value};

use lforge_core::fiber;
use lforge_core::invariants::verify_reynolds_equals_average;
use lforge_core::laplacian::{is_laplacian, laplacian_closure, WitnessReason};
use lforge_core::{classifiers, GradedSubalgebra, Polynomial};

use crate::input::{parse_float_vector, parse_polynomials, LoadedAlgebra, LoadedGroup};
use crate::report::{ReportBuilder, ReportDocument, Verdict};
use crate::CliError;

pub type CmdResult = Result<(ReportDocument, Verdict), CliError>;

fn generator_strings(algebra: &GradedSubalgebra) -> Vec<String> {
    algebra.generators().iter().map(|g| g.to_string()).collect()
}

fn witness_json(witness: &lforge_core::laplacian::Witness) -> Value {
    let mut object = json!({
        "reason": witness.reason.tag(),
        "polynomial": witness.polynomial.to_string(),
    });
    match witness.reason {
        WitnessReason::R2Missing => {}
        WitnessReason::LaplacianEscapes { generator } => {
            object["generator"] = json!(generator + 1);
        }
        WitnessReason::GradientPairingEscapes { i, j } => {
            object["generators"] = json!([i + 1, j + 1]);
        }
    }
    object
}

/// The minimum degree cap under which the Laplacian checks for this
/// algebra are even expressible.
fn required_cap(algebra: &GradedSubalgebra) -> u32 {
    (2 * algebra.max_generator_degree()).saturating_sub(2).max(2)
}

pub fn check_laplacian(loaded: LoadedAlgebra, degree_cap: Option<u32>) -> CmdResult {
    let builder = ReportBuilder::new("check-laplacian");
    let cap = degree_cap
        .or(loaded.degree_cap)
        .unwrap_or_else(|| required_cap(&loaded.algebra));
    let report = is_laplacian(&loaded.algebra, cap)?;

    let verdict = if report.is_laplacian_up_to_checks {
        println!(
            "laplacian: yes ({} generator pairings checked up to degree {cap})",
            report.checked_pairs
        );
        Verdict::Pass
    } else {
        println!("laplacian: no ({} witnesses)", report.witnesses.len());
        for witness in &report.witnesses {
            println!("  witness [{}]: {}", witness.reason.tag(), witness.polynomial);
        }
        Verdict::Fail
    };

    let config = json!({
        "algebra": loaded.source,
        "degree_cap": cap,
        "generators": generator_strings(&loaded.algebra),
    });
    let results = json!({
        "is_laplacian": report.is_laplacian_up_to_checks,
        "checked_pairs": report.checked_pairs,
    });
    let witnesses = report.witnesses.iter().map(witness_json).collect();
    Ok(builder.finish(config, verdict, results, witnesses))
}

pub fn closure(loaded: LoadedAlgebra, max_degree: u32, max_generators: usize) -> CmdResult {
    let builder = ReportBuilder::new("laplacian-closure");
    let dim = loaded.algebra.dimension();
    let outcome = laplacian_closure(
        dim,
        loaded.algebra.generators().to_vec(),
        max_degree,
        max_generators,
    )?;

    let verdict = if outcome.saturated {
        println!(
            "closure saturated after {} round(s); {} generator(s)",
            outcome.rounds,
            outcome.algebra.generators().len()
        );
        Verdict::Pass
    } else {
        println!(
            "closure NOT saturated within degree {max_degree} / {max_generators} generators \
             ({} round(s) completed)",
            outcome.rounds
        );
        Verdict::Fail
    };
    for g in outcome.algebra.generators() {
        println!("  generator: {g}");
    }

    let config = json!({
        "algebra": loaded.source,
        "max_degree": max_degree,
        "max_generators": max_generators,
    });
    let results = json!({
        "saturated": outcome.saturated,
        "rounds": outcome.rounds,
        "adjoined": outcome.adjoined.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
        "generators": generator_strings(&outcome.algebra),
    });
    Ok(builder.finish(config, verdict, results, Vec::new()))
}

pub fn reynolds(loaded: LoadedAlgebra, polynomial: &str) -> CmdResult {
    let builder = ReportBuilder::new("reynolds");
    let f = parse_polynomials(&[polynomial.to_string()], loaded.algebra.dimension())?
        .pop()
        .expect("one polynomial");
    let projection = loaded.algebra.reynolds(&f)?;

    println!("projection: {}", projection.projection);
    println!("residual:   {}", projection.residual);
    println!("member:     {}", projection.member);

    let config = json!({
        "algebra": loaded.source,
        "polynomial": polynomial,
    });
    let results = json!({
        "projection": projection.projection.to_string(),
        "residual": projection.residual.to_string(),
        "member": projection.member,
    });
    Ok(builder.finish(config, Verdict::Info, results, Vec::new()))
}

pub fn contains(loaded: LoadedAlgebra, polynomial: &str) -> CmdResult {
    let builder = ReportBuilder::new("contains");
    let f = parse_polynomials(&[polynomial.to_string()], loaded.algebra.dimension())?
        .pop()
        .expect("one polynomial");
    let member = loaded.algebra.contains(&f)?;

    println!("member: {member}");
    let verdict = if member { Verdict::Pass } else { Verdict::Fail };
    let config = json!({
        "algebra": loaded.source,
        "polynomial": polynomial,
    });
    Ok(builder.finish(config, verdict, json!({ "member": member }), Vec::new()))
}

pub fn invariant_ring(loaded: LoadedGroup, degree_cap: Option<u32>) -> CmdResult {
    let builder = ReportBuilder::new("invariant-ring");
    // The dihedral invariant ring has an exact closed form ⟨r², F_g⟩; use
    // it directly so the command stays exact even for rotation angles
    // whose matrices are irrational.
    let (ring, method, cap_echo) = match loaded.dihedral_order {
        Some(g) => (
            lforge_core::invariants::dihedral_invariants(g)?,
            "closed-form",
            Value::Null,
        ),
        None => {
            let cap = degree_cap.unwrap_or(loaded.group.order() as u32);
            (
                loaded.group.invariant_ring(cap)?,
                "averaged-monomials",
                json!(cap),
            )
        }
    };

    let certification = is_laplacian(&ring, required_cap(&ring))?;
    let verdict = if certification.is_laplacian_up_to_checks {
        Verdict::Pass
    } else {
        Verdict::Fail
    };

    println!("group: {} (order {})", loaded.source, loaded.group.order());
    for g in ring.generators() {
        println!("  generator: {g}");
    }
    println!(
        "laplacian certification: {}",
        if verdict == Verdict::Pass { "pass" } else { "FAIL" }
    );

    let config = json!({
        "group": loaded.source,
        "order": loaded.group.order(),
        "degree_cap": cap_echo,
        "method": method,
    });
    let results = json!({
        "generators": generator_strings(&ring),
        "laplacian_certified": certification.is_laplacian_up_to_checks,
    });
    let witnesses = certification.witnesses.iter().map(witness_json).collect();
    Ok(builder.finish(config, verdict, results, witnesses))
}

pub fn verify_reynolds_average(
    loaded: LoadedGroup,
    degree_cap: Option<u32>,
    trials: usize,
    seed: u64,
) -> CmdResult {
    let builder = ReportBuilder::new("verify-reynolds-average");
    let cap = degree_cap.unwrap_or(loaded.group.order() as u32);
    let agreed = verify_reynolds_equals_average(&loaded.group, cap, trials, seed)?;

    let verdict = if agreed {
        println!("projection = group average on {trials} random polynomials (degree ≤ {cap})");
        Verdict::Pass
    } else {
        println!("projection ≠ group average: disagreement within {trials} trials");
        Verdict::Fail
    };

    let config = json!({
        "group": loaded.source,
        "order": loaded.group.order(),
        "degree_cap": cap,
        "trials": trials,
        "seed": seed,
    });
    Ok(builder.finish(config, verdict, json!({ "agreed": agreed }), Vec::new()))
}

pub fn munzner(polynomial: &str, dimension: usize) -> CmdResult {
    let builder = ReportBuilder::new("munzner");
    let f = parse_polynomials(&[polynomial.to_string()], dimension)?
        .pop()
        .expect("one polynomial");
    let report = classifiers::munzner_check(&f)?;

    println!("degree: {}", report.degree);
    match &report.laplacian_constant {
        Some(c) => println!("laplacian identity: ΔF = {c} · r^{}", report.degree as i64 - 2),
        None => println!("laplacian identity: fails"),
    }
    println!(
        "norm identity ‖∇F‖² = {}²·r^{}: {}",
        report.degree,
        2 * report.degree as i64 - 2,
        if report.norm_identity_holds { "holds" } else { "fails" }
    );
    if report.radial {
        println!("advisory: F is radial (a multiple of a power of r²)");
    }
    println!("cartan-münzner: {}", if report.passes { "pass" } else { "fail" });

    let verdict = if report.passes { Verdict::Pass } else { Verdict::Fail };
    let config = json!({
        "polynomial": polynomial,
        "dimension": dimension,
    });
    let results = json!({
        "degree": report.degree,
        "laplacian_constant": report.laplacian_constant.as_ref().map(|c| c.to_string()),
        "norm_identity_holds": report.norm_identity_holds,
        "radial": report.radial,
        "passes": report.passes,
    });
    Ok(builder.finish(config, verdict, results, Vec::new()))
}

pub fn jordan(polynomials: &[String], dimension: usize) -> CmdResult {
    let builder = ReportBuilder::new("jordan");
    let quadratics = parse_polynomials(polynomials, dimension)?;
    let report = classifiers::jordan_closure_check(dimension, &quadratics)?;

    println!("span dimension: {}", report.dimension_of_span);
    println!("r² in span:     {}", report.r2_in_span);
    match (&report.failing_pair, &report.failing_product) {
        (Some((i, j)), Some(product)) => {
            println!(
                "pairing of generators {} and {} escapes the span: {product}",
                i + 1,
                j + 1
            );
        }
        _ => println!("closed under the gradient pairing"),
    }
    println!("jordan closure: {}", if report.passes { "pass" } else { "fail" });

    let verdict = if report.passes { Verdict::Pass } else { Verdict::Fail };
    let config = json!({
        "polynomials": polynomials,
        "dimension": dimension,
    });
    let results = json!({
        "dimension_of_span": report.dimension_of_span,
        "r2_in_span": report.r2_in_span,
        "closed": report.closed,
        "failing_pair": report.failing_pair.map(|(i, j)| json!([i + 1, j + 1])),
        "failing_product": report.failing_product.as_ref().map(|p| p.to_string()),
        "passes": report.passes,
    });
    Ok(builder.finish(config, verdict, results, Vec::new()))
}

pub fn b_matrix(loaded: LoadedAlgebra) -> CmdResult {
    let builder = ReportBuilder::new("b-matrix");
    let matrix = fiber::b_matrix(loaded.algebra.generators())?;
    let k = matrix.size();

    let entries: Vec<Vec<String>> = (0..k)
        .map(|i| (0..k).map(|j| matrix.entry(i, j).to_string()).collect())
        .collect();
    let determinant = matrix.determinant();

    for (i, row) in entries.iter().enumerate() {
        println!("row {}: [{}]", i + 1, row.join(" | "));
    }
    println!("determinant: {determinant}");

    let config = json!({ "algebra": loaded.source });
    let results = json!({
        "size": k,
        "entries": entries,
        "determinant": determinant.to_string(),
    });
    Ok(builder.finish(config, Verdict::Info, results, Vec::new()))
}

pub fn transcendence_degree(loaded: LoadedAlgebra, trials: usize, seed: u64) -> CmdResult {
    let builder = ReportBuilder::new("transcendence-degree");
    let degree = fiber::transcendence_degree(loaded.algebra.generators(), trials, seed)?;

    println!("transcendence degree: {degree}");

    let config = json!({
        "algebra": loaded.source,
        "trials": trials,
        "seed": seed,
    });
    Ok(builder.finish(
        config,
        Verdict::Info,
        json!({ "transcendence_degree": degree }),
        Vec::new(),
    ))
}

#[allow(clippy::too_many_arguments)]
pub fn fiber_report(
    loaded: LoadedAlgebra,
    samples: usize,
    seed: u64,
    tol_value: f64,
    eps: f64,
    base_value_specs: &[String],
) -> CmdResult {
    let builder = ReportBuilder::new("fiber-report");
    let gens: Vec<Polynomial> = loaded.algebra.generators().to_vec();

    let stratification = fiber::stratify(&gens, samples, seed)?;

    let explicit_bases: Option<Vec<Vec<f64>>> = if base_value_specs.is_empty() {
        None
    } else {
        Some(
            base_value_specs
                .iter()
                .map(|spec| parse_float_vector(spec))
                .collect::<Result<_, _>>()?,
        )
    };
    let set = fiber::sample_fibers(&gens, explicit_bases.as_deref(), samples, seed, tol_value)?;
    let connectivity = fiber::connectivity_report(&set, eps)?;

    let equidistance = if set.clusters.len() >= 2
        && !set.clusters[0].indices.is_empty()
        && !set.clusters[1].indices.is_empty()
    {
        Some(fiber::equidistance_report(&set, 0, 1)?)
    } else {
        None
    };

    println!(
        "generic rank {} over {} samples",
        stratification.generic_rank, stratification.n_samples
    );
    for (rank, count) in &stratification.histogram {
        println!("  rank {rank}: {count} samples");
    }
    for (cluster, connection) in set.clusters.iter().zip(&connectivity.per_cluster) {
        let base = cluster
            .base_value
            .iter()
            .map(|v| format!("{v:.6}"))
            .collect::<Vec<_>>()
            .join(", ");
        if cluster.empty {
            println!("cluster over ({base}): empty (no sample converged)");
        } else {
            println!(
                "cluster over ({base}): {} points, {} component(s) at ε = {eps}",
                connection.n_points, connection.components
            );
        }
    }
    if let Some(eq) = &equidistance {
        println!(
            "equidistance clusters 1-2: mean {:.6}, max deviation {:.3e}",
            eq.mean, eq.max_dev
        );
    }
    println!("advisory: {}", connectivity.advisory);

    let histogram: Value = stratification
        .histogram
        .iter()
        .map(|(rank, count)| (rank.to_string(), json!(count)))
        .collect::<serde_json::Map<String, Value>>()
        .into();
    let clusters: Vec<Value> = set
        .clusters
        .iter()
        .zip(&connectivity.per_cluster)
        .map(|(cluster, connection)| {
            json!({
                "base_value": cluster.base_value,
                "n_points": connection.n_points,
                "components": connection.components,
                "empty": cluster.empty,
            })
        })
        .collect();

    let config = json!({
        "algebra": loaded.source,
        "samples": samples,
        "seed": seed,
        "tol_value": tol_value,
        "eps": eps,
        "base_values": match &explicit_bases {
            Some(bases) => json!(bases),
            None => json!("auto"),
        },
    });
    let results = json!({
        "generic_rank": stratification.generic_rank,
        "rank_histogram": histogram,
        "singular_witness": stratification.singular_witness.to_string(),
        "clusters": clusters,
        "equidistance": equidistance.map(|eq| json!({
            "mean": eq.mean,
            "max_dev": eq.max_dev,
        })),
        "advisory": connectivity.advisory,
    });
    Ok(builder.finish(config, Verdict::Info, results, Vec::new()))
}
