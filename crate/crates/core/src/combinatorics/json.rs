use std::path::Path;

use serde::{Deserialize, Serialize};

use super::triangulation::Triangulation;
use crate::error::{Error, Result};

/// On-disk form of a triangulation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TriangulationJson {
    pub genus: usize,
    pub triangles: Vec<[usize; 3]>,
    pub pairing: Vec<usize>,
}

impl From<&Triangulation> for TriangulationJson {
    fn from(tau: &Triangulation) -> Self {
        Self { genus: tau.genus(), triangles: tau.raw_triangles(), pairing: tau.raw_pairing() }
    }
}

impl TryFrom<TriangulationJson> for Triangulation {
    type Error = Error;

    fn try_from(value: TriangulationJson) -> Result<Self> {
        Triangulation::from_parts(value.genus, value.triangles, value.pairing)
    }
}

impl Triangulation {
    pub fn to_json(&self) -> String {
        serde_json::to_string(&TriangulationJson::from(self)).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: TriangulationJson =
            serde_json::from_str(text).map_err(|e| Error::Parse(format!("triangulation: {e}")))?;
        raw.try_into()
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        let tau = Triangulation::build_canonical(2).unwrap();
        let back = Triangulation::from_json(&tau.to_json()).unwrap();
        assert_eq!(back, tau);
    }

    #[test]
    fn diagnostics_name_the_invariant() {
        let err = Triangulation::from_json(r#"{"genus": 2, "triangles": [[0,1,2]], "pairing": [1,0,2]}"#)
            .unwrap_err();
        assert!(err.to_string().contains("half-edge-count"), "{err}");
        let err = Triangulation::from_json(r#"{"genus": 2}"#).unwrap_err();
        assert!(matches!(err, Error::Parse(_)));
    }
}
