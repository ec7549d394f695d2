//! JSON file format for complexes, pairs and witnesses.
//!
//! A document is one JSON object. Canonical output sorts keys, puts one key
//! per line with a compact value, sorts vertex records lexicographically
//! (edges are renumbered to match and sorted) and ends with a newline, so
//! serializing a parsed canonical document reproduces it byte for byte.

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::complex::{ComplexError, Edge, EdgeKind, FacetId, OrbitComplex, VertexId};
use crate::equivalence::EquivalenceWitness;
use crate::linalg::IntMatrix;
use crate::pair::{CharacteristicPair, PairError};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported format_version {0}, expected {FORMAT_VERSION}")]
    UnsupportedVersion(u32),
    #[error("{found} facet names for {expected} facets")]
    FacetNames { expected: usize, found: usize },
    #[error("edge {index}: {reason}")]
    Edge { index: usize, reason: String },
    #[error("document has no lambda matrix")]
    MissingLambda,
    #[error("witness matrix: {0}")]
    Witness(String),
    #[error("invalid complex: {0}")]
    Complex(#[from] ComplexError),
    #[error("invalid pair: {0}")]
    Pair(#[from] PairError),
}

pub type Result<T> = std::result::Result<T, DocumentError>;

/// One edge: its two facets and either two endpoint vertices or the circle
/// flag.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub facets: [FacetId; 2],
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertices: Option<[VertexId; 2]>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub circle: bool,
}

impl EdgeRecord {
    fn to_edge(&self, index: usize) -> Result<Edge> {
        let [f, g] = self.facets;
        match (self.vertices, self.circle) {
            (Some([u, v]), false) => Ok(Edge::segment(f, g, u, v)),
            (None, true) => Ok(Edge::circle(f, g)),
            (Some(_), true) => Err(DocumentError::Edge {
                index,
                reason: "both vertices and circle given".into(),
            }),
            (None, false) => Err(DocumentError::Edge {
                index,
                reason: "needs vertices or circle".into(),
            }),
        }
    }

    fn from_edge(e: &Edge) -> Self {
        let (f, g) = e.facets();
        match e.kind() {
            EdgeKind::Segment(u, v) => EdgeRecord {
                facets: [f, g],
                vertices: Some([u.min(v), u.max(v)]),
                circle: false,
            },
            EdgeKind::Circle => EdgeRecord {
                facets: [f, g],
                vertices: None,
                circle: true,
            },
        }
    }
}

/// A complex, optionally with a characteristic matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PairDocument {
    pub format_version: u32,
    pub rank: usize,
    pub facet_count: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub facet_names: Option<Vec<String>>,
    pub vertices: Vec<Vec<FacetId>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<Vec<EdgeRecord>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub lambda: Option<Vec<Vec<i64>>>,
}

impl PairDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: PairDocument = serde_json::from_str(text)?;
        if doc.format_version != FORMAT_VERSION {
            return Err(DocumentError::UnsupportedVersion(doc.format_version));
        }
        if let Some(names) = &doc.facet_names {
            if names.len() != doc.facet_count {
                return Err(DocumentError::FacetNames {
                    expected: doc.facet_count,
                    found: names.len(),
                });
            }
        }
        Ok(doc)
    }

    pub fn from_complex(c: &OrbitComplex) -> Self {
        PairDocument {
            format_version: FORMAT_VERSION,
            rank: c.rank(),
            facet_count: c.facet_count(),
            facet_names: None,
            vertices: c.vertices().to_vec(),
            edges: c.edges().map(|es| es.iter().map(EdgeRecord::from_edge).collect()),
            lambda: None,
        }
    }

    pub fn from_pair(p: &CharacteristicPair) -> Self {
        PairDocument {
            lambda: Some(p.lambda().rows().to_vec()),
            ..Self::from_complex(p.complex())
        }
    }

    pub fn with_facet_names(mut self, names: Vec<String>) -> Self {
        self.facet_names = Some(names);
        self
    }

    pub fn to_complex(&self) -> Result<OrbitComplex> {
        let edges = self
            .edges
            .as_ref()
            .map(|es| {
                es.iter()
                    .enumerate()
                    .map(|(i, e)| e.to_edge(i))
                    .collect::<Result<Vec<_>>>()
            })
            .transpose()?;
        Ok(OrbitComplex::new(
            self.rank,
            self.facet_count,
            self.vertices.clone(),
            edges,
        )?)
    }

    /// Builds the pair without checking nonsingularity, so callers can
    /// report the validator's diagnostics.
    pub fn to_pair_unchecked(&self) -> Result<CharacteristicPair> {
        let lambda = self.lambda.clone().ok_or(DocumentError::MissingLambda)?;
        Ok(CharacteristicPair::from_parts(self.to_complex()?, lambda)?)
    }

    pub fn to_pair(&self) -> Result<CharacteristicPair> {
        let p = self.to_pair_unchecked()?;
        p.ensure_valid()?;
        Ok(p)
    }

    /// Vertices sorted lexicographically (stable for repeated facet-sets),
    /// edge endpoints renumbered, edges sorted.
    pub fn canonicalized(&self) -> Self {
        let mut vertices: Vec<Vec<FacetId>> = self
            .vertices
            .iter()
            .map(|v| {
                let mut v = v.clone();
                v.sort_unstable();
                v
            })
            .collect();
        let mut order: Vec<usize> = (0..vertices.len()).collect();
        order.sort_by(|&a, &b| vertices[a].cmp(&vertices[b]));
        let mut position = vec![0; order.len()];
        for (new, &old) in order.iter().enumerate() {
            position[old] = new;
        }
        vertices = order.iter().map(|&old| vertices[old].clone()).collect();
        let edges = self.edges.as_ref().map(|es| {
            let mut es: Vec<EdgeRecord> = es
                .iter()
                .map(|e| {
                    let [f, g] = e.facets;
                    EdgeRecord {
                        facets: [f.min(g), f.max(g)],
                        vertices: e.vertices.map(|[u, v]| {
                            let (u, v) = (
                                position.get(u).copied().unwrap_or(u),
                                position.get(v).copied().unwrap_or(v),
                            );
                            [u.min(v), u.max(v)]
                        }),
                        circle: e.circle,
                    }
                })
                .collect();
            es.sort_by_key(|e| (e.facets, e.vertices, e.circle));
            es
        });
        PairDocument {
            vertices,
            edges,
            ..self.clone()
        }
    }

    pub fn to_canonical_json(&self) -> String {
        let value = serde_json::to_value(self.canonicalized()).expect("documents serialize");
        canonical_json(&value)
    }
}

/// Writes an object with sorted keys, one per line, each value compact.
/// Non-objects are written compactly.
pub fn canonical_json(value: &Value) -> String {
    match value {
        Value::Object(map) => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            let lines: Vec<String> = keys
                .iter()
                .map(|k| {
                    format!(
                        "  {}: {}",
                        serde_json::to_string(k).expect("strings serialize"),
                        serde_json::to_string(&map[k.as_str()]).expect("values serialize")
                    )
                })
                .collect();
            if lines.is_empty() {
                "{}\n".into()
            } else {
                format!("{{\n{}\n}}\n", lines.join(",\n"))
            }
        }
        other => format!("{}\n", serde_json::to_string(other).expect("values serialize")),
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WitnessDocument {
    pub format_version: u32,
    pub facet_bijection: Vec<FacetId>,
    pub unimodular: Vec<Vec<i64>>,
    pub signs: Vec<i64>,
}

impl WitnessDocument {
    pub fn from_witness(w: &EquivalenceWitness) -> Self {
        WitnessDocument {
            format_version: FORMAT_VERSION,
            facet_bijection: w.facet_bijection.clone(),
            unimodular: w.unimodular.to_rows(),
            signs: w.signs.clone(),
        }
    }

    pub fn to_witness(&self) -> Result<EquivalenceWitness> {
        let n = self.unimodular.len();
        Ok(EquivalenceWitness {
            facet_bijection: self.facet_bijection.clone(),
            unimodular: IntMatrix::from_rows(n, &self.unimodular).map_err(|e| DocumentError::Witness(e.to_string()))?,
            signs: self.signs.clone(),
        })
    }

    pub fn to_canonical_json(&self) -> String {
        canonical_json(&serde_json::to_value(self).expect("documents serialize"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::shapes;

    #[test]
    fn canonical_round_trip_is_byte_stable() {
        for p in [
            CharacteristicPair::simplex(3),
            CharacteristicPair::lens_family(2),
            CharacteristicPair::prism_family(1),
            CharacteristicPair::polygon_sum(3),
        ] {
            let text = PairDocument::from_pair(&p).to_canonical_json();
            let doc = PairDocument::from_json(&text).unwrap();
            assert_eq!(doc.to_canonical_json(), text);
            assert!(doc.to_pair().unwrap().is_valid());
            assert!(text.ends_with("}\n"));
        }
    }

    #[test]
    fn canonical_form_sorts_vertices_and_keeps_incidences() {
        let c = shapes::bigon_prism().with_vertex_order(&[3, 1, 2, 0]);
        let doc = PairDocument::from_complex(&c).canonicalized();
        let mut sorted = doc.vertices.clone();
        sorted.sort();
        assert_eq!(doc.vertices, sorted);
        let d = doc.to_complex().unwrap();
        assert!(c.find_isomorphism(&d).is_some());
    }

    #[test]
    fn keys_are_sorted_one_per_line() {
        let text = PairDocument::from_pair(&CharacteristicPair::simplex(2)).to_canonical_json();
        let keys: Vec<&str> = text
            .lines()
            .filter_map(|l| l.trim().split(':').next())
            .filter(|k| k.starts_with('"'))
            .collect();
        assert_eq!(
            keys,
            [
                "\"facet_count\"",
                "\"format_version\"",
                "\"lambda\"",
                "\"rank\"",
                "\"vertices\""
            ]
        );
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(
            PairDocument::from_json(r#"{"format_version":2,"rank":1,"facet_count":2,"vertices":[[0],[1]]}"#),
            Err(DocumentError::UnsupportedVersion(2))
        ));
        assert!(matches!(
            PairDocument::from_json(
                r#"{"format_version":1,"rank":1,"facet_count":2,"vertices":[[0],[1]],"facet_names":["a"]}"#
            ),
            Err(DocumentError::FacetNames { expected: 2, found: 1 })
        ));
        assert!(matches!(PairDocument::from_json("{"), Err(DocumentError::Json(_))));
        let no_lambda =
            PairDocument::from_json(r#"{"format_version":1,"rank":1,"facet_count":2,"vertices":[[0],[1]]}"#).unwrap();
        assert!(matches!(no_lambda.to_pair(), Err(DocumentError::MissingLambda)));
    }

    #[test]
    fn circle_edges_round_trip() {
        let c = shapes::split_sphere();
        let text = PairDocument::from_complex(&c).to_canonical_json();
        assert!(text.contains("\"circle\":true"));
        assert_eq!(PairDocument::from_json(&text).unwrap().to_complex().unwrap(), c);
    }

    #[test]
    fn witness_round_trip() {
        let p = CharacteristicPair::simplex(3);
        let w = EquivalenceWitness::identity(&p);
        let text = WitnessDocument::from_witness(&w).to_canonical_json();
        let back: WitnessDocument = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_witness().unwrap(), w);
    }
}
