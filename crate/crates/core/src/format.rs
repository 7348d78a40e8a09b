//! JSON documents for sponges, polytope face lattices, simplicial complexes
//! and bare extended f-vectors.
//!
//! Serialization is canonical: faces in `(dim, id)` order, covers in the
//! order of their `(upper, lower)` face positions, fixed key order.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;
use thiserror::Error;

use crate::enumerative::{EnumError, ExtendedFVector};
use crate::generators::PolytopeFaceLattice;
use crate::poset::{GradedPoset, PosetError, SimplicialComplex};
use crate::sponge::{sign_solver, SpongeComplex, SpongeError};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("malformed JSON at line {line}, column {column}: {message}")]
    Json {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("invalid document: {0}")]
    Schema(String),
    #[error("unsupported format_version {0} (expected {FORMAT_VERSION})")]
    Version(u32),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Sponge(#[from] SpongeError),
    #[error(transparent)]
    Enumerative(#[from] EnumError),
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        if e.is_data() {
            return FormatError::Schema(e.to_string());
        }
        let suffix = format!(" at line {} column {}", e.line(), e.column());
        let text = e.to_string();
        FormatError::Json {
            line: e.line(),
            column: e.column(),
            message: text.strip_suffix(&suffix).unwrap_or(&text).to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FaceEntry {
    pub id: String,
    pub dim: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoverEntry {
    pub upper: String,
    pub lower: String,
    /// Omitted on every cover to have signs chosen by the solver.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub incidence: Option<i64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    #[serde(default)]
    pub non_compact: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpongeDocument {
    pub format_version: u32,
    pub n: usize,
    pub faces: Vec<FaceEntry>,
    pub covers: Vec<CoverEntry>,
    #[serde(default)]
    pub flags: Flags,
}

impl SpongeDocument {
    pub fn from_sponge(z: &SpongeComplex) -> Self {
        let p = z.faces();
        SpongeDocument {
            format_version: FORMAT_VERSION,
            n: z.n(),
            faces: face_entries(p),
            covers: p
                .covers()
                .into_iter()
                .map(|(u, l)| CoverEntry {
                    upper: p.id(u).to_string(),
                    lower: p.id(l).to_string(),
                    incidence: Some(z.incidence(u, l)),
                })
                .collect(),
            flags: Flags {
                non_compact: z.is_non_compact(),
            },
        }
    }

    /// Builds the sponge. If no cover carries an incidence, signs come from
    /// the solver; otherwise every cover must carry one.
    pub fn to_sponge(&self) -> Result<SpongeComplex, FormatError> {
        check_version(self.format_version)?;
        let p = poset_of(&self.faces, &self.covers)?;
        let non_compact = self.flags.non_compact;
        if self.covers.iter().all(|c| c.incidence.is_none()) && !self.covers.is_empty() {
            let signs = sign_solver(&p, !non_compact)?;
            return Ok(SpongeComplex::with_signs(self.n, p, &signs, non_compact)?);
        }
        let incidence: BTreeMap<(String, String), i64> = self
            .covers
            .iter()
            .filter_map(|c| c.incidence.map(|v| ((c.upper.clone(), c.lower.clone()), v)))
            .collect();
        Ok(SpongeComplex::new(self.n, p, &incidence, non_compact)?)
    }
}

/// A polytope face lattice: the sponge schema plus the id of the top face.
/// Here `n` is the dimension of the polytope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolytopeDocument {
    pub format_version: u32,
    pub n: usize,
    pub faces: Vec<FaceEntry>,
    pub covers: Vec<CoverEntry>,
    pub top: String,
}

impl PolytopeDocument {
    pub fn from_lattice(l: &PolytopeFaceLattice) -> Result<Self, FormatError> {
        let p = l.poset()?;
        Ok(PolytopeDocument {
            format_version: FORMAT_VERSION,
            n: l.n,
            faces: face_entries(&p),
            covers: p
                .covers()
                .into_iter()
                .map(|(u, w)| CoverEntry {
                    upper: p.id(u).to_string(),
                    lower: p.id(w).to_string(),
                    incidence: None,
                })
                .collect(),
            top: l.top.clone(),
        })
    }

    pub fn to_lattice(&self) -> Result<PolytopeFaceLattice, FormatError> {
        check_version(self.format_version)?;
        let p = poset_of(&self.faces, &self.covers)?;
        let top = p.index_of(&self.top)?;
        if p.rank(top) != self.n || p.max_rank() != Some(self.n) {
            return Err(FormatError::Schema(format!(
                "top face {:?} must be the unique face of dimension {}",
                self.top, self.n
            )));
        }
        Ok(PolytopeFaceLattice {
            n: self.n,
            faces: self.faces.iter().map(|f| (f.id.clone(), f.dim)).collect(),
            covers: self
                .covers
                .iter()
                .map(|c| (c.upper.clone(), c.lower.clone()))
                .collect(),
            top: self.top.clone(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplicialDocument {
    pub vertices: Vec<String>,
    /// Facets as lists of vertex labels.
    pub facets: Vec<Vec<String>>,
}

impl SimplicialDocument {
    pub fn from_complex(k: &SimplicialComplex) -> Self {
        SimplicialDocument {
            vertices: k.labels().to_vec(),
            facets: k
                .facets()
                .iter()
                .map(|f| f.iter().map(|&v| k.labels()[v].clone()).collect())
                .collect(),
        }
    }

    pub fn to_complex(&self) -> Result<SimplicialComplex, FormatError> {
        let mut index = BTreeMap::new();
        for (i, v) in self.vertices.iter().enumerate() {
            if index.insert(v.as_str(), i).is_some() {
                return Err(FormatError::Schema(format!("duplicate vertex {v:?}")));
            }
        }
        let mut facets = Vec::new();
        for f in &self.facets {
            let mut facet = Vec::new();
            for v in f {
                let &i = index.get(v.as_str()).ok_or_else(|| {
                    FormatError::Schema(format!("facet uses unknown vertex {v:?}"))
                })?;
                facet.push(i);
            }
            facets.push(facet);
        }
        Ok(SimplicialComplex::new(self.vertices.clone(), facets))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FVectorDocument {
    pub n: usize,
    pub f: Vec<u64>,
    pub b: u64,
}

impl FVectorDocument {
    pub fn to_fvector(&self) -> Result<ExtendedFVector, FormatError> {
        Ok(ExtendedFVector::new(self.n, self.f.clone(), self.b)?)
    }
}

impl From<&ExtendedFVector> for FVectorDocument {
    fn from(fv: &ExtendedFVector) -> Self {
        FVectorDocument {
            n: fv.n,
            f: fv.f.clone(),
            b: fv.b,
        }
    }
}

/// Any of the accepted input documents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Document {
    Sponge(SpongeDocument),
    Polytope(PolytopeDocument),
    Simplicial(SimplicialDocument),
    FVector(FVectorDocument),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Sponge(_) => "sponge",
            Document::Polytope(_) => "polytope",
            Document::Simplicial(_) => "simplicial",
            Document::FVector(_) => "fvector",
        }
    }

    pub fn to_json(&self) -> String {
        let s = match self {
            Document::Sponge(d) => serde_json::to_string_pretty(d),
            Document::Polytope(d) => serde_json::to_string_pretty(d),
            Document::Simplicial(d) => serde_json::to_string_pretty(d),
            Document::FVector(d) => serde_json::to_string_pretty(d),
        };
        s.expect("documents always serialize")
    }
}

/// Parses a document, telling the kinds apart by their keys.
pub fn parse_document(text: &str) -> Result<Document, FormatError> {
    let value: Value = serde_json::from_str(text)?;
    let obj = value
        .as_object()
        .ok_or_else(|| FormatError::Schema("top level must be an object".into()))?;
    let doc = if obj.contains_key("vertices") {
        Document::Simplicial(serde_json::from_value(value)?)
    } else if obj.contains_key("top") {
        Document::Polytope(serde_json::from_value(value)?)
    } else if obj.contains_key("faces") {
        Document::Sponge(serde_json::from_value(value)?)
    } else if obj.contains_key("f") {
        Document::FVector(serde_json::from_value(value)?)
    } else {
        return Err(FormatError::Schema(
            "expected a sponge, polytope, simplicial complex or f-vector document".into(),
        ));
    };
    Ok(doc)
}

fn check_version(v: u32) -> Result<(), FormatError> {
    if v == FORMAT_VERSION {
        Ok(())
    } else {
        Err(FormatError::Version(v))
    }
}

fn face_entries(p: &GradedPoset) -> Vec<FaceEntry> {
    (0..p.len())
        .map(|i| FaceEntry {
            id: p.id(i).to_string(),
            dim: p.rank(i),
        })
        .collect()
}

fn poset_of(faces: &[FaceEntry], covers: &[CoverEntry]) -> Result<GradedPoset, PosetError> {
    let elements: Vec<(&str, usize)> = faces.iter().map(|f| (f.id.as_str(), f.dim)).collect();
    let pairs: Vec<(&str, &str)> = covers
        .iter()
        .map(|c| (c.upper.as_str(), c.lower.as_str()))
        .collect();
    GradedPoset::new(&elements, &pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{builtin_sponge, gen_model_sponge};

    #[test]
    fn sponge_round_trip() {
        for z in [
            builtin_sponge("f3_k33").unwrap(),
            gen_model_sponge(4).unwrap(),
        ] {
            let doc = SpongeDocument::from_sponge(&z);
            let text = Document::Sponge(doc.clone()).to_json();
            let Document::Sponge(back) = parse_document(&text).unwrap() else {
                panic!("wrong kind");
            };
            assert_eq!(back, doc);
            assert_eq!(back.to_sponge().unwrap(), z);
        }
    }

    #[test]
    fn malformed_json_has_position() {
        let err = parse_document("{\n  \"n\": 3,\n  \"faces\": [,]\n}").unwrap_err();
        match err {
            FormatError::Json { line, .. } => assert_eq!(line, 3),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_signs_are_solved() {
        let z = builtin_sponge("f3_k33").unwrap();
        let mut doc = SpongeDocument::from_sponge(&z);
        for c in &mut doc.covers {
            c.incidence = None;
        }
        let solved = doc.to_sponge().unwrap();
        assert!(crate::sponge::validate_sponge(&solved).is_valid());
        doc.covers[0].incidence = Some(1);
        assert!(matches!(
            doc.to_sponge(),
            Err(FormatError::Sponge(SpongeError::MissingIncidence { .. }))
        ));
    }

    #[test]
    fn polytope_and_simplicial_round_trip() {
        let cube = PolytopeFaceLattice::cube(3);
        let doc = PolytopeDocument::from_lattice(&cube).unwrap();
        let Document::Polytope(back) =
            parse_document(&Document::Polytope(doc.clone()).to_json()).unwrap()
        else {
            panic!("wrong kind");
        };
        assert_eq!(back.to_lattice().unwrap().face_counts(), vec![8, 12, 6, 1]);

        let text = r#"{"vertices":["a","b","c"],"facets":[["a","b"],["b","c"]]}"#;
        let Document::Simplicial(s) = parse_document(text).unwrap() else {
            panic!("wrong kind");
        };
        assert_eq!(s.to_complex().unwrap().vertex_count(), 3);
        assert!(matches!(
            parse_document(r#"{"n":3,"f":[1,2],"b":0,"extra":1}"#),
            Err(FormatError::Schema(_))
        ));
    }
}
