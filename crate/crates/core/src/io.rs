//! JSON records for complexes, pairs, maps, Thom models and defect scenarios.
//!
//! ```json
//! {"vertices": 4, "top_simplices": [[0,1,2],[0,1,3],[0,2,3],[1,2,3]]}
//! ```
//! A pair adds `"sub_vertices": [..]`; a Thom model adds `"rank"`,
//! `"orientation"` and one of `"e"` / `"w2"`. A map is
//! `{"source": <complex or "corpus:id">, "target": .., "vertex_images": [..]}`.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::manifold::{ThomExpectation, ThomModel};
use crate::simplicial::{SimplicialComplex, SimplicialMap, SimplicialPair};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexRecord {
    pub vertices: usize,
    pub top_simplices: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sub_vertices: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orientation: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub e: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w2: Option<u8>,
}

impl ComplexRecord {
    pub fn from_complex(k: &SimplicialComplex) -> Self {
        ComplexRecord {
            vertices: k.vertex_count(),
            top_simplices: k.top_simplices(),
            sub_vertices: None,
            rank: None,
            orientation: None,
            e: None,
            w2: None,
        }
    }

    pub fn from_pair(p: &SimplicialPair) -> Self {
        let mut r = Self::from_complex(p.total());
        if !p.is_absolute() {
            r.sub_vertices = Some(p.sub_vertices().to_vec());
        }
        r
    }

    pub fn complex(&self) -> Result<SimplicialComplex> {
        SimplicialComplex::from_top_simplices(self.vertices, &self.top_simplices)
    }

    pub fn pair(&self) -> Result<SimplicialPair> {
        let k = Arc::new(self.complex()?);
        match &self.sub_vertices {
            Some(v) => SimplicialPair::induced(k, v),
            None => Ok(SimplicialPair::absolute(k)),
        }
    }

    pub fn thom_model(&self) -> Result<ThomModel> {
        let rank = self.rank.ok_or_else(|| Error::Parse("Thom model record needs `rank`".into()))?;
        let expected = match (self.e, self.w2) {
            (Some(e), None) => ThomExpectation::Euler(e),
            (None, Some(w)) => ThomExpectation::W2(w),
            _ => return Err(Error::Parse("Thom model record needs exactly one of `e` and `w2`".into())),
        };
        if self.sub_vertices.is_none() {
            return Err(Error::Parse("Thom model record needs `sub_vertices`".into()));
        }
        ThomModel::new(Arc::new(self.pair()?), rank, self.orientation.unwrap_or(1), expected)
    }
}

/// A map endpoint: inline complex or a corpus reference.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ComplexRef {
    Corpus(String),
    Inline(ComplexRecord),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapRecord {
    pub source: ComplexRef,
    pub target: ComplexRef,
    pub vertex_images: Vec<usize>,
}

impl MapRecord {
    pub fn from_map(f: &SimplicialMap) -> Self {
        MapRecord {
            source: ComplexRef::Inline(ComplexRecord::from_complex(f.source())),
            target: ComplexRef::Inline(ComplexRecord::from_complex(f.target())),
            vertex_images: f.vertex_images().to_vec(),
        }
    }

    /// `resolve` turns a corpus reference into a complex.
    pub fn map_with(&self, resolve: &dyn Fn(&str) -> Result<Arc<SimplicialComplex>>) -> Result<SimplicialMap> {
        let get = |r: &ComplexRef| match r {
            ComplexRef::Corpus(id) => resolve(id.strip_prefix("corpus:").unwrap_or(id)),
            ComplexRef::Inline(c) => Ok(Arc::new(c.complex()?)),
        };
        SimplicialMap::new(get(&self.source)?, get(&self.target)?, self.vertex_images.clone())
    }
}

/// A class named by coordinates on a corpus manifold's documented basis.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClassRef {
    pub manifold: String,
    pub coords: Vec<i64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SurfaceRecord {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub id: Option<String>,
    pub n: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi: Option<i64>,
    /// Self-intersection computed from a class instead of `chi`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub chi_class: Option<ClassRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub w2: Option<u8>,
    /// Thom model supplying `chi` (its Euler number) or `w2`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub thom_model: Option<String>,
    #[serde(default)]
    pub replacement_indices: Vec<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transversal: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioRecord {
    pub profile: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c1_squared: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub c1_class: Option<ClassRef>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point_indices: Option<Vec<i64>>,
    #[serde(default)]
    pub surfaces: Vec<SurfaceRecord>,
}

pub fn parse_complex(text: &str) -> Result<ComplexRecord> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("complex record: {e}")))
}

pub fn parse_map(text: &str) -> Result<MapRecord> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("map record: {e}")))
}

pub fn parse_scenario(text: &str) -> Result<ScenarioRecord> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("scenario record: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_complex() {
        let text = r#"{"vertices": 4, "top_simplices": [[0,1,2],[0,1,3],[0,2,3],[1,2,3]]}"#;
        let r = parse_complex(text).unwrap();
        let k = r.complex().unwrap();
        assert_eq!(k.f_vector(), vec![4, 6, 4]);
        let again = ComplexRecord::from_complex(&k);
        assert_eq!(again.complex().unwrap(), k);
        assert!(parse_complex(r#"{"vertices": 2}"#).is_err());
        assert!(parse_complex(r#"{"vertices": 2, "top_simplices": [], "extra": 1}"#).is_err());
    }

    #[test]
    fn scenario_fields() {
        let s = parse_scenario(
            r#"{"profile": "hopf", "c1_squared": 9, "point_indices": [-9],
                "surfaces": [{"n": 1, "chi": 9, "replacement_indices": [9]}]}"#,
        )
        .unwrap();
        assert_eq!(s.surfaces[0].chi, Some(9));
        assert!(parse_scenario(r#"{"profile": "hopf", "surfaces": [{"n": 1, "nope": 2}]}"#).is_err());
    }

    #[test]
    fn map_with_inline_complexes() {
        let m = parse_map(
            r#"{"source": {"vertices": 2, "top_simplices": [[0,1]]},
                "target": {"vertices": 1, "top_simplices": [[0]]},
                "vertex_images": [0, 0]}"#,
        )
        .unwrap();
        let f = m.map_with(&|_| Err(Error::UnknownEntry("none".into()))).unwrap();
        assert!(f.induced_chain_map(1).is_zero());
    }
}
