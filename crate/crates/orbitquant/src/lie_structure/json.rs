use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{LieData, Matrix, OrbitSpec, TypeAOrdering, Weight};
use crate::algebra_core::{GaussianRational as GR, Q};
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RootEntry {
    pub label: String,
    pub coords: Vec<GR>,
    pub vector: Matrix,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum OrderingChoice {
    Standard { c1: i8, c2: i8 },
    Kaehler { compact: Vec<bool> },
}

/// On-disk description of an orbit: either a built-in type A orbit or explicit root data.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpecFile {
    TypeA {
        type_a: usize,
        r: String,
        #[serde(default = "default_ordering")]
        ordering: TypeAOrdering,
    },
    Explicit {
        matrix_size: usize,
        killing_scale: GR,
        cartan: Vec<Matrix>,
        roots: Vec<RootEntry>,
        lambda: Vec<GR>,
        #[serde(default)]
        lambda_gl: Option<Matrix>,
        ordering: OrderingChoice,
        #[serde(default)]
        compact: Option<Vec<bool>>,
    },
}

fn default_ordering() -> TypeAOrdering {
    TypeAOrdering::Standard
}

impl SpecFile {
    pub fn build(self) -> Result<OrbitSpec> {
        match self {
            SpecFile::TypeA { type_a, r, ordering } => {
                let r: Q = crate::algebra_core::parse_rational(&r)?;
                OrbitSpec::type_a(type_a, r, ordering)
            }
            SpecFile::Explicit { matrix_size, killing_scale, cartan, roots, lambda, lambda_gl, ordering, compact } => {
                let (coords, rest): (Vec<_>, Vec<_>) =
                    roots.into_iter().map(|e| (Weight { coords: e.coords }, (e.vector, e.label))).unzip();
                let (vectors, labels): (Vec<_>, Vec<_>) = rest.into_iter().unzip();
                let lie = LieData::new(matrix_size, cartan, coords, vectors, labels, killing_scale)?;
                let base = OrbitSpec::from_parts(Arc::new(lie), Weight { coords: lambda }, lambda_gl)?;
                let spec = match ordering {
                    OrderingChoice::Standard { c1, c2 } => base.make_standard_ordering(c1, c2)?,
                    OrderingChoice::Kaehler { compact } => base.kaehler_ordering(&compact)?,
                };
                match compact {
                    Some(c) => spec.with_compactness(c),
                    None => Ok(spec),
                }
            }
        }
    }
}

/// Parses and validates an orbit description; every structural invariant is re-checked.
pub fn load_spec_json(text: &str) -> Result<OrbitSpec> {
    let file: SpecFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    file.build()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra_core::Ring;
    use crate::lie_structure::type_a_algebra;

    fn explicit_a1(scale_vector: bool) -> String {
        let lie = type_a_algebra(1).unwrap();
        let roots: Vec<RootEntry> = (0..2)
            .map(|i| {
                let v = if scale_vector && i == 0 {
                    lie.root_vectors[i].scale(&GR::from_int(3))
                } else {
                    lie.root_vectors[i].clone()
                };
                RootEntry { label: lie.root_labels[i].clone(), coords: lie.roots[i].coords.clone(), vector: v }
            })
            .collect();
        let f = SpecFile::Explicit {
            matrix_size: 2,
            killing_scale: lie.killing_scale.clone(),
            cartan: lie.cartan.clone(),
            roots,
            lambda: vec![GR::i().negated()],
            lambda_gl: None,
            ordering: OrderingChoice::Standard { c1: 1, c2: -1 },
            compact: None,
        };
        serde_json::to_string(&f).unwrap()
    }

    #[test]
    fn loads_explicit_rank_one() {
        let s = load_spec_json(&explicit_a1(false)).unwrap();
        assert!(s.is_regular());
        assert_eq!(s.positive_roots().len(), 1);
    }

    #[test]
    fn rejects_bad_normalization() {
        assert!(matches!(load_spec_json(&explicit_a1(true)), Err(Error::InvalidSpec(_))));
    }

    #[test]
    fn loads_builtin() {
        let s = load_spec_json(r#"{"type_a": 2, "r": "3", "ordering": "opposite"}"#).unwrap();
        assert_eq!(s.delta_prime.len(), 2);
        assert!(matches!(load_spec_json("{"), Err(Error::Parse(_))));
    }
}
