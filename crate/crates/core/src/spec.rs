//! JSON wire formats: semigroup specs, cone specs, spine specs and
//! complex matrices.
//!
//! Matrices travel as row-major arrays of [re, im] pairs.  Spine homs are
//! keyed "from->to" where the map carries the higher node onto the lower.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::semichar::{NumericalSemigroup, ProductCone};
use crate::spine::{Hom, NodeGroup, SpineSystem};
use crate::{CMatrix, Error, Result, C64};

/// Top-level input: a semigroup description in one of the three families.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum InputSpec {
    Numerical {
        generators: Vec<u64>,
        #[serde(default)]
        include_zero: bool,
    },
    Cone {
        l: usize,
        thresholds: Vec<f64>,
        basis: Vec<Vec<f64>>,
    },
    Spine {
        nodes: Vec<String>,
        join: Vec<Vec<String>>,
        groups: HashMap<String, GroupSpec>,
        #[serde(default)]
        homs: HashMap<String, Vec<Vec<f64>>>,
    },
}

/// Node-group description inside a spine spec.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum GroupSpec {
    Real { dim: usize },
    Int { dim: usize },
    Finite { moduli: Vec<u64> },
}

impl InputSpec {
    pub fn from_json(text: &str) -> Result<InputSpec> {
        serde_json::from_str(text).map_err(|e| Error::InvalidSpec(e.to_string()))
    }
}

/// Builds the numerical semigroup described by a spec.
pub fn build_numerical(spec: &InputSpec) -> Result<NumericalSemigroup> {
    match spec {
        InputSpec::Numerical {
            generators,
            include_zero,
        } => NumericalSemigroup::new(generators, *include_zero),
        _ => Err(Error::InvalidSpec("expected a numerical semigroup spec".into())),
    }
}

/// Builds the product cone described by a spec.
pub fn build_cone(spec: &InputSpec) -> Result<ProductCone> {
    match spec {
        InputSpec::Cone {
            l,
            thresholds,
            basis,
        } => ProductCone::new(*l, thresholds, basis),
        _ => Err(Error::InvalidSpec("expected a cone spec".into())),
    }
}

/// Builds and validates the spine system described by a spec.
pub fn build_spine(spec: &InputSpec) -> Result<SpineSystem> {
    let InputSpec::Spine {
        nodes,
        join,
        groups,
        homs,
    } = spec
    else {
        return Err(Error::InvalidSpec("expected a spine spec".into()));
    };
    let index = |name: &str| -> Result<usize> {
        nodes
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown node '{name}'")))
    };
    let k = nodes.len();
    if join.len() != k || join.iter().any(|r| r.len() != k) {
        return Err(Error::InvalidSpec("join table must be square over the nodes".into()));
    }
    let mut join_idx = vec![vec![0usize; k]; k];
    for (i, row) in join.iter().enumerate() {
        for (j, name) in row.iter().enumerate() {
            join_idx[i][j] = index(name)?;
        }
    }
    let mut group_list = Vec::with_capacity(k);
    for name in nodes {
        let g = groups
            .get(name)
            .ok_or_else(|| Error::InvalidSpec(format!("missing group for node '{name}'")))?;
        group_list.push(match g {
            GroupSpec::Real { dim } => NodeGroup::Real { dim: *dim },
            GroupSpec::Int { dim } => NodeGroup::Int { dim: *dim },
            GroupSpec::Finite { moduli } => NodeGroup::Finite {
                moduli: moduli.clone(),
            },
        });
    }
    let mut hom_map = HashMap::new();
    for (key, matrix) in homs {
        let (from, to) = key
            .split_once("->")
            .ok_or_else(|| Error::InvalidSpec(format!("hom key '{key}' is not 'from->to'")))?;
        let src = index(from.trim())?;
        let dst = index(to.trim())?;
        let hom = match group_list[dst] {
            NodeGroup::Real { .. } => Hom::Real(matrix.clone()),
            NodeGroup::Int { .. } | NodeGroup::Finite { .. } => Hom::Int(
                matrix
                    .iter()
                    .map(|row| {
                        row.iter()
                            .map(|&v| {
                                if v.fract() != 0.0 {
                                    Err(Error::InvalidSpec(format!(
                                        "hom '{key}' needs integer entries, got {v}"
                                    )))
                                } else {
                                    Ok(v as i64)
                                }
                            })
                            .collect::<Result<Vec<i64>>>()
                    })
                    .collect::<Result<Vec<Vec<i64>>>>()?,
            ),
        };
        hom_map.insert((src, dst), hom);
    }
    SpineSystem::new(nodes.clone(), join_idx, group_list, hom_map)
}

/// Serializable complex matrix: row-major entries as [re, im] pairs.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixJson(pub Vec<Vec<[f64; 2]>>);

impl MatrixJson {
    pub fn to_matrix(&self) -> Result<CMatrix> {
        let rows = self.0.len();
        if rows == 0 {
            return Err(Error::InvalidSpec("empty matrix".into()));
        }
        let cols = self.0[0].len();
        if self.0.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidSpec("ragged matrix rows".into()));
        }
        Ok(CMatrix::from_fn(rows, cols, |i, j| {
            C64::new(self.0[i][j][0], self.0[i][j][1])
        }))
    }

    pub fn from_matrix(m: &CMatrix) -> MatrixJson {
        MatrixJson(
            (0..m.nrows())
                .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
                .collect(),
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semichar::DualShape;

    #[test]
    fn numerical_spec_roundtrip() {
        let spec =
            InputSpec::from_json(r#"{"type":"numerical","generators":[3,5],"include_zero":false}"#)
                .unwrap();
        let s = build_numerical(&spec).unwrap();
        assert_eq!(s.d(), 1);
        assert_eq!(s.conductor(), 8);
        assert_eq!(s.classify_dual().shape, DualShape::PuncturedDisc);
    }

    #[test]
    fn cone_spec_parses() {
        let spec = InputSpec::from_json(
            r#"{"type":"cone","l":1,"thresholds":[0.0],"basis":[[1,0],[0,1]]}"#,
        )
        .unwrap();
        let c = build_cone(&spec).unwrap();
        assert_eq!(c.dim(), 2);
        assert_eq!(c.line_count(), 1);
        assert!(c.member(&[3.0, 0.5]).unwrap());
    }

    #[test]
    fn spine_spec_parses() {
        let text = r#"{
            "type": "spine",
            "nodes": ["R1", "R2"],
            "join": [["R1", "R2"], ["R2", "R2"]],
            "groups": {
                "R1": {"kind": "real", "dim": 1},
                "R2": {"kind": "real", "dim": 2}
            },
            "homs": {"R2->R1": [[1.0, 0.0]]}
        }"#;
        let spec = InputSpec::from_json(text).unwrap();
        let spine = build_spine(&spec).unwrap();
        assert_eq!(spine.node_count(), 2);
        assert!(spine.leq(0, 1));
    }

    #[test]
    fn malformed_json_rejected() {
        assert!(matches!(
            InputSpec::from_json("{not json"),
            Err(Error::InvalidSpec(_))
        ));
        assert!(matches!(
            InputSpec::from_json(r#"{"type":"numerical"}"#),
            Err(Error::InvalidSpec(_))
        ));
    }

    #[test]
    fn matrix_json_roundtrip() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[
                C64::new(1.0, 2.0),
                C64::new(0.0, -1.0),
                C64::new(0.5, 0.0),
                C64::new(-3.0, 4.0),
            ],
        );
        let json = serde_json::to_string(&MatrixJson::from_matrix(&m)).unwrap();
        let back: MatrixJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_matrix().unwrap(), m);
    }
}
