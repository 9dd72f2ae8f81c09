//! Instances bundling a hypergraph, complex, matroid system and weights, and
//! their JSON file format.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::Complex;
use crate::error::{Error, Result};
use crate::hypergraph::Hypergraph;
use crate::matroid::{Matroid, MatroidSystem};
use crate::rational::RatVec;
use crate::subset::SubsetMask;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Weights {
    pub w: Option<RatVec>,
    pub h: Option<RatVec>,
}

impl Weights {
    fn is_empty(&self) -> bool {
        self.w.is_none() && self.h.is_none()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Instance {
    /// Name of the construction and its parameters, e.g. `truncated_plane(q=2)`.
    pub provenance: String,
    pub hypergraph: Option<Hypergraph>,
    pub complex: Option<Complex>,
    pub matroids: Option<MatroidSystem>,
    pub weights: Weights,
    /// Values claimed for the instance, to be recomputed by a verifier.
    pub expected: BTreeMap<String, String>,
}

impl Instance {
    pub fn new(provenance: impl Into<String>) -> Self {
        Instance { provenance: provenance.into(), ..Default::default() }
    }

    pub fn with_hypergraph(mut self, h: Hypergraph) -> Self {
        self.hypergraph = Some(h);
        self
    }

    pub fn with_complex(mut self, c: Complex) -> Self {
        self.complex = Some(c);
        self
    }

    pub fn with_matroids(mut self, l: MatroidSystem) -> Self {
        self.matroids = Some(l);
        self
    }

    pub fn with_w(mut self, w: RatVec) -> Self {
        self.weights.w = Some(w);
        self
    }

    pub fn with_h(mut self, h: RatVec) -> Self {
        self.weights.h = Some(h);
        self
    }

    pub fn expect(mut self, key: &str, value: impl ToString) -> Self {
        self.expected.insert(key.to_string(), value.to_string());
        self
    }

    /// Ground-set sizes must agree where the members share a ground set.
    pub fn validate(&self) -> Result<()> {
        if let (Some(c), Some(l)) = (&self.complex, &self.matroids) {
            if c.n() != l.n() {
                return Err(Error::Validation(format!(
                    "complex on {} vertices but matroids on {} elements",
                    c.n(),
                    l.n()
                )));
            }
        }
        let mut sizes: Vec<usize> = Vec::new();
        if let Some(c) = &self.complex {
            sizes.push(c.n());
        }
        if let Some(l) = &self.matroids {
            sizes.push(l.n());
        }
        let mut edge_sizes = sizes.clone();
        if let Some(h) = &self.hypergraph {
            sizes.push(h.n());
            edge_sizes.push(h.num_edges());
        }
        for (name, v, allowed) in [("w", &self.weights.w, &edge_sizes), ("h", &self.weights.h, &sizes)] {
            if let Some(v) = v {
                if !allowed.is_empty() && !allowed.contains(&v.len()) {
                    return Err(Error::Validation(format!(
                        "weights.{name} has length {}, matching no ground set in the instance",
                        v.len()
                    )));
                }
                if !v.is_nonnegative() {
                    return Err(Error::Validation(format!("weights.{name} has a negative entry")));
                }
            }
        }
        Ok(())
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    provenance: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    hypergraph: Option<RawHypergraph>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    complex: Option<RawComplex>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    matroids: Option<Vec<RawMatroid>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weights: Option<RawWeights>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    expected: BTreeMap<String, String>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawHypergraph {
    n: usize,
    edges: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawComplex {
    n: usize,
    maximal_faces: Vec<Vec<usize>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawWeights {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    w: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    h: Option<Vec<String>>,
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
enum RawMatroid {
    GenPartition { parts: Vec<Vec<usize>>, caps: Vec<usize> },
    Uniform { n: usize, rank: usize },
    Graphic { vertices: usize, edges: Vec<(usize, usize)> },
    Explicit { n: usize, maximal: Vec<Vec<usize>> },
}

fn lists(masks: &[SubsetMask]) -> Vec<Vec<usize>> {
    masks.iter().map(|m| m.to_vec()).collect()
}

fn raw_matroid(m: &Matroid) -> Result<RawMatroid> {
    Ok(match m {
        Matroid::Uniform { n, rank } => RawMatroid::Uniform { n: *n, rank: *rank },
        Matroid::GenPartition { parts, caps, .. } => RawMatroid::GenPartition { parts: lists(parts), caps: caps.clone() },
        Matroid::Graphic { vertices, edges } => RawMatroid::Graphic { vertices: *vertices, edges: edges.clone() },
        Matroid::NC { n, u } => {
            let rest = SubsetMask::full(*n).difference(*u);
            let mut parts = vec![u.to_vec()];
            let mut caps = vec![u.len() - 1];
            if !rest.is_empty() {
                parts.push(rest.to_vec());
                caps.push(rest.len());
            }
            RawMatroid::GenPartition { parts, caps }
        }
        other => {
            let c = other.to_complex()?;
            RawMatroid::Explicit { n: c.n(), maximal: c.face_lists() }
        }
    })
}

fn cook_matroid(r: RawMatroid) -> Result<Matroid> {
    match r {
        RawMatroid::GenPartition { parts, caps } => {
            let n = parts.iter().map(|p| p.len()).sum();
            if let Some(&bad) = parts.iter().flatten().find(|&&v| v >= n) {
                return Err(Error::Validation(format!("element {bad} out of range for {n} elements")));
            }
            let masks = parts.iter().map(|p| SubsetMask::from_indices(p.iter().copied())).collect();
            Matroid::gen_partition(n, masks, caps)
        }
        RawMatroid::Uniform { n, rank } => Matroid::uniform(n, rank),
        RawMatroid::Graphic { vertices, edges } => Matroid::graphic(vertices, edges),
        RawMatroid::Explicit { n, maximal } => Matroid::explicit(Complex::from_lists(n, &maximal)?),
    }
}

fn as_validation(field: &str, e: Error) -> Error {
    match e {
        Error::Parse { .. } => e,
        other => Error::Validation(format!("{field}: {other}")),
    }
}

/// Parses the JSON instance format and validates every member.
pub fn parse_instance_str(text: &str) -> Result<Instance> {
    let raw: RawInstance = serde_json::from_str(text).map_err(|e| Error::Parse {
        location: format!("line {}, column {}", e.line(), e.column()),
        message: e.to_string(),
    })?;
    let mut inst = Instance::new(raw.provenance.unwrap_or_default());
    inst.expected = raw.expected;
    if let Some(h) = raw.hypergraph {
        inst.hypergraph = Some(Hypergraph::from_lists(h.n, &h.edges).map_err(|e| as_validation("hypergraph", e))?);
    }
    if let Some(c) = raw.complex {
        inst.complex = Some(Complex::from_lists(c.n, &c.maximal_faces).map_err(|e| as_validation("complex", e))?);
    }
    if let Some(ms) = raw.matroids {
        let ms = ms
            .into_iter()
            .enumerate()
            .map(|(i, m)| cook_matroid(m).map_err(|e| as_validation(&format!("matroids[{i}]"), e)))
            .collect::<Result<Vec<_>>>()?;
        inst.matroids = Some(MatroidSystem::new(ms).map_err(|e| as_validation("matroids", e))?);
    }
    if let Some(w) = raw.weights {
        if let Some(v) = w.w {
            inst.weights.w = Some(RatVec::from_wire(&v).map_err(|e| as_validation("weights.w", e))?);
        }
        if let Some(v) = w.h {
            inst.weights.h = Some(RatVec::from_wire(&v).map_err(|e| as_validation("weights.h", e))?);
        }
    }
    inst.validate()?;
    Ok(inst)
}

pub fn parse_instance(path: &std::path::Path) -> Result<Instance> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Parse {
        location: path.display().to_string(),
        message: e.to_string(),
    })?;
    parse_instance_str(&text)
}

/// Pretty-printed JSON. Matroids that are neither uniform, graphic nor
/// generalized partition matroids are written out by their bases.
pub fn emit_instance(inst: &Instance) -> Result<String> {
    let raw = RawInstance {
        provenance: (!inst.provenance.is_empty()).then(|| inst.provenance.clone()),
        hypergraph: inst.hypergraph.as_ref().map(|h| RawHypergraph { n: h.n(), edges: h.edge_lists() }),
        complex: inst.complex.as_ref().map(|c| RawComplex { n: c.n(), maximal_faces: c.face_lists() }),
        matroids: inst
            .matroids
            .as_ref()
            .map(|l| l.matroids().iter().map(raw_matroid).collect::<Result<Vec<_>>>())
            .transpose()?,
        weights: (!inst.weights.is_empty()).then(|| RawWeights {
            w: inst.weights.w.as_ref().map(RatVec::to_wire),
            h: inst.weights.h.as_ref().map(RatVec::to_wire),
        }),
        expected: inst.expected.clone(),
    };
    Ok(serde_json::to_string_pretty(&raw).expect("instance serialization cannot fail"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn minimal_complex_file() {
        let inst = parse_instance_str(r#"{"complex":{"n":2,"maximal_faces":[[0],[1]]}}"#).unwrap();
        let c = inst.complex.unwrap();
        assert_eq!(c.n(), 2);
        assert_eq!(c.maximal_faces().len(), 2);
    }

    #[test]
    fn cap_violation_is_a_validation_error() {
        let e = parse_instance_str(r#"{"matroids":[{"kind":"gen_partition","parts":[[0,1]],"caps":[3]}]}"#).unwrap_err();
        assert!(matches!(e, Error::Validation(_)), "{e:?}");
    }

    #[test]
    fn malformed_json_reports_position() {
        let e = parse_instance_str("{\n  \"complex\": {\"n\": 2,,}\n}").unwrap_err();
        match e {
            Error::Parse { location, .. } => assert!(location.starts_with("line 2"), "{location}"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn round_trip() {
        let l = MatroidSystem::new(vec![
            Matroid::gen_partition(3, vec![SubsetMask::from_indices([0, 1]), SubsetMask::singleton(2)], vec![1, 1])
                .unwrap(),
            Matroid::uniform(3, 2).unwrap(),
            Matroid::graphic(3, vec![(0, 1), (1, 2), (0, 2)]).unwrap(),
        ])
        .unwrap();
        let inst = Instance::new("test")
            .with_matroids(l.clone())
            .with_complex(l.intersection().unwrap())
            .with_h(RatVec(vec![rat(1, 2), rat(0, 1), rat(7, 3)]))
            .expect("nu", 2);
        let text = emit_instance(&inst).unwrap();
        assert_eq!(parse_instance_str(&text).unwrap(), inst);
    }
}
