//! Declarative input files and built-in objects.
//!
//! Algebras and groups are described in TOML.  An algebra file names the
//! ambient dimension and its generators in the polynomial grammar:
//!
//! ```toml
//! dimension = 2
//! generators = ["x1^2 + x2^2", "x1^2 - x2^2"]
//! degree_cap = 8          # optional default for -D
//! ```
//!
//! A group file lists orthogonal matrices with exact rational entries:
//!
//! ```toml
//! dimension = 2
//! [[elements]]
//! rows = [["1", "0"], ["0", "1"]]
//! [[elements]]
//! rows = [["-1", "0"], ["0", "-1"]]
//! ```
//!
//! Built-in names replace files where a `--builtin` flag is accepted:
//! `dihedral:G`, `neg-id:N`, `signed-permutations:N`, and
//! `cyclic-sign:N:AXIS`.

use std::path::Path;
use std::str::FromStr;

use num_rational::BigRational;
use serde::Deserialize;

use lforge_core::invariants::{FiniteOrthogonalGroup, RationalMatrix};
use lforge_core::{parse_polynomial, GradedSubalgebra, Polynomial};

use crate::CliError;

/// Deserialized algebra file.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraFile {
    pub dimension: usize,
    pub generators: Vec<String>,
    pub degree_cap: Option<u32>,
}

/// Deserialized group file.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupFile {
    pub dimension: usize,
    pub elements: Vec<GroupElement>,
}

/// One matrix of a group file, row-major with rational-string entries.
#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupElement {
    pub rows: Vec<Vec<String>>,
}

/// An algebra together with the description used to load it (echoed into
/// reports) and any degree cap the file declared.
pub struct LoadedAlgebra {
    pub algebra: GradedSubalgebra,
    pub source: String,
    pub degree_cap: Option<u32>,
}

/// A group together with the description used to load it.
pub struct LoadedGroup {
    pub group: FiniteOrthogonalGroup,
    pub source: String,
    /// Set when the group came from `--builtin dihedral:G`; the invariant
    /// ring of the dihedral family has a closed form that stays exact even
    /// when the rotation matrices do not.
    pub dihedral_order: Option<u32>,
}

fn read_toml<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::Input(format!("cannot read {}: {e}", path.display())))?;
    toml::from_str(&text)
        .map_err(|e| CliError::Input(format!("cannot parse {}: {e}", path.display())))
}

/// Loads an algebra from a TOML file.
pub fn algebra_from_file(path: &Path) -> Result<LoadedAlgebra, CliError> {
    let file: AlgebraFile = read_toml(path)?;
    let mut generators = Vec::with_capacity(file.generators.len());
    for (i, src) in file.generators.iter().enumerate() {
        let poly = parse_polynomial(src, file.dimension).map_err(|e| {
            CliError::Input(format!(
                "{}: generator {} ({src:?}): {e}",
                path.display(),
                i + 1
            ))
        })?;
        generators.push(poly);
    }
    let algebra = GradedSubalgebra::new(file.dimension, generators)?;
    Ok(LoadedAlgebra {
        algebra,
        source: path.display().to_string(),
        degree_cap: file.degree_cap,
    })
}

/// Loads an algebra from a built-in name (`dihedral:G`).
pub fn algebra_from_builtin(spec: &str) -> Result<LoadedAlgebra, CliError> {
    let (name, args) = split_builtin(spec);
    match name {
        "dihedral" => {
            let g = one_u32_arg(spec, &args)?;
            Ok(LoadedAlgebra {
                algebra: lforge_core::invariants::dihedral_invariants(g)?,
                source: format!("builtin dihedral:{g}"),
                degree_cap: None,
            })
        }
        _ => Err(CliError::Input(format!(
            "unknown builtin algebra {spec:?} (expected dihedral:G)"
        ))),
    }
}

/// Loads a group from a TOML file of exact rational matrices.
pub fn group_from_file(path: &Path) -> Result<LoadedGroup, CliError> {
    let file: GroupFile = read_toml(path)?;
    let mut matrices = Vec::with_capacity(file.elements.len());
    for (i, element) in file.elements.iter().enumerate() {
        let mut rows = Vec::with_capacity(element.rows.len());
        for row in &element.rows {
            let mut parsed = Vec::with_capacity(row.len());
            for entry in row {
                let value = BigRational::from_str(entry.trim()).map_err(|e| {
                    CliError::Input(format!(
                        "{}: element {}: entry {entry:?}: {e}",
                        path.display(),
                        i + 1
                    ))
                })?;
                parsed.push(value);
            }
            rows.push(parsed);
        }
        matrices.push(RationalMatrix::from_rows(rows)?);
    }
    let group = FiniteOrthogonalGroup::from_rational_matrices(file.dimension, matrices)?;
    Ok(LoadedGroup {
        group,
        source: path.display().to_string(),
        dihedral_order: None,
    })
}

/// Loads a group from a built-in name.
pub fn group_from_builtin(spec: &str) -> Result<LoadedGroup, CliError> {
    let (name, args) = split_builtin(spec);
    let group = match name {
        "neg-id" => FiniteOrthogonalGroup::neg_id(one_usize_arg(spec, &args)?),
        "signed-permutations" => {
            FiniteOrthogonalGroup::signed_permutations(one_usize_arg(spec, &args)?)
        }
        "cyclic-sign" => {
            let (n, axis) = two_usize_args(spec, &args)?;
            FiniteOrthogonalGroup::cyclic_sign(n, axis)?
        }
        "dihedral" => {
            let g = one_u32_arg(spec, &args)?;
            return Ok(LoadedGroup {
                group: FiniteOrthogonalGroup::dihedral(g)?,
                source: format!("builtin dihedral:{g}"),
                dihedral_order: Some(g),
            });
        }
        _ => {
            return Err(CliError::Input(format!(
                "unknown builtin group {spec:?} (expected dihedral:G, neg-id:N, \
                 signed-permutations:N, or cyclic-sign:N:AXIS)"
            )))
        }
    };
    Ok(LoadedGroup {
        group,
        source: format!("builtin {spec}"),
        dihedral_order: None,
    })
}

/// Parses inline polynomial arguments in a fixed dimension.
pub fn parse_polynomials(sources: &[String], dim: usize) -> Result<Vec<Polynomial>, CliError> {
    sources
        .iter()
        .map(|src| {
            parse_polynomial(src, dim)
                .map_err(|e| CliError::Input(format!("polynomial {src:?}: {e}")))
        })
        .collect()
}

/// Parses a comma-separated float vector, e.g. `"1.0,-0.25"`.
pub fn parse_float_vector(src: &str) -> Result<Vec<f64>, CliError> {
    src.split(',')
        .map(|part| {
            part.trim()
                .parse::<f64>()
                .map_err(|e| CliError::Input(format!("base value {src:?}: {e}")))
        })
        .collect()
}

fn split_builtin(spec: &str) -> (&str, Vec<&str>) {
    let mut parts = spec.split(':');
    let name = parts.next().unwrap_or("");
    (name, parts.collect())
}

fn one_u32_arg(spec: &str, args: &[&str]) -> Result<u32, CliError> {
    match args {
        [v] => v
            .parse()
            .map_err(|e| CliError::Input(format!("builtin {spec:?}: {e}"))),
        _ => Err(CliError::Input(format!(
            "builtin {spec:?}: expected exactly one numeric argument"
        ))),
    }
}

fn one_usize_arg(spec: &str, args: &[&str]) -> Result<usize, CliError> {
    match args {
        [v] => v
            .parse()
            .map_err(|e| CliError::Input(format!("builtin {spec:?}: {e}"))),
        _ => Err(CliError::Input(format!(
            "builtin {spec:?}: expected exactly one numeric argument"
        ))),
    }
}

fn two_usize_args(spec: &str, args: &[&str]) -> Result<(usize, usize), CliError> {
    match args {
        [a, b] => {
            let first = a
                .parse()
                .map_err(|e| CliError::Input(format!("builtin {spec:?}: {e}")))?;
            let second = b
                .parse()
                .map_err(|e| CliError::Input(format!("builtin {spec:?}: {e}")))?;
            Ok((first, second))
        }
        _ => Err(CliError::Input(format!(
            "builtin {spec:?}: expected exactly two numeric arguments"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_algebra_dihedral() {
        let loaded = algebra_from_builtin("dihedral:3").unwrap();
        assert_eq!(loaded.algebra.dimension(), 2);
        assert_eq!(loaded.algebra.generators().len(), 2);
        assert_eq!(loaded.source, "builtin dihedral:3");
        assert_eq!(loaded.degree_cap, None);
    }

    #[test]
    fn builtin_algebra_rejects_unknown_and_malformed() {
        assert!(algebra_from_builtin("octahedral:3").is_err());
        assert!(algebra_from_builtin("dihedral").is_err());
        assert!(algebra_from_builtin("dihedral:3:4").is_err());
        assert!(algebra_from_builtin("dihedral:x").is_err());
    }

    #[test]
    fn builtin_groups_by_name() {
        assert_eq!(group_from_builtin("neg-id:3").unwrap().group.order(), 2);
        assert_eq!(
            group_from_builtin("signed-permutations:2").unwrap().group.order(),
            8
        );
        assert_eq!(
            group_from_builtin("cyclic-sign:2:1").unwrap().group.order(),
            2
        );
        let dihedral = group_from_builtin("dihedral:4").unwrap();
        assert_eq!(dihedral.group.order(), 8);
        assert_eq!(dihedral.dihedral_order, Some(4));
        assert!(group_from_builtin("icosahedral:5").is_err());
    }

    #[test]
    fn float_vector_parsing() {
        assert_eq!(
            parse_float_vector("1.0, -0.25,3").unwrap(),
            vec![1.0, -0.25, 3.0]
        );
        assert!(parse_float_vector("1.0,abc").is_err());
        assert!(parse_float_vector("").is_err());
    }

    #[test]
    fn algebra_file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("algebra.toml");
        std::fs::write(
            &path,
            "dimension = 2\ngenerators = [\"x1^2 + x2^2\", \"x1^2 - x2^2\"]\ndegree_cap = 8\n",
        )
        .unwrap();
        let loaded = algebra_from_file(&path).unwrap();
        assert_eq!(loaded.algebra.dimension(), 2);
        assert_eq!(loaded.algebra.generators().len(), 2);
        assert_eq!(loaded.degree_cap, Some(8));
    }

    #[test]
    fn algebra_file_errors_name_the_bad_generator() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("algebra.toml");
        std::fs::write(&path, "dimension = 2\ngenerators = [\"x1^2\", \"x3\"]\n").unwrap();
        let err = algebra_from_file(&path).err().expect("parse should fail");
        assert!(err.to_string().contains("generator 2"), "got: {err}");
    }

    #[test]
    fn algebra_file_rejects_unknown_fields() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("algebra.toml");
        std::fs::write(&path, "dimension = 2\ngenerators = []\ncolor = \"red\"\n").unwrap();
        assert!(algebra_from_file(&path).is_err());
    }

    #[test]
    fn group_file_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("group.toml");
        std::fs::write(
            &path,
            concat!(
                "dimension = 2\n",
                "[[elements]]\n",
                "rows = [[\"1\", \"0\"], [\"0\", \"1\"]]\n",
                "[[elements]]\n",
                "rows = [[\"-1\", \"0\"], [\"0\", \"-1\"]]\n",
            ),
        )
        .unwrap();
        let loaded = group_from_file(&path).unwrap();
        assert_eq!(loaded.group.order(), 2);
        assert_eq!(loaded.dihedral_order, None);
    }

    #[test]
    fn group_file_rejects_bad_entries() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("group.toml");
        std::fs::write(
            &path,
            "dimension = 2\n[[elements]]\nrows = [[\"1\", \"q\"], [\"0\", \"1\"]]\n",
        )
        .unwrap();
        let err = group_from_file(&path).err().expect("parse should fail");
        assert!(err.to_string().contains("element 1"), "got: {err}");
    }
}
