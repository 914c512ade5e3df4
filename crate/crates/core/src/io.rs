//! JSON and CSV exchange formats for regions.
//!
//! Rationals are always written as `"num/den"` strings. On input, decimal
//! strings are accepted too.

use serde::{Deserialize, Serialize};

use crate::alpha::Alpha;
use crate::antenna::AntennaConfig;
use crate::error::{Error, Result};
use crate::geometry::{GdofPoint, HalfPlane, Region2D};
use crate::rational::{format_rational, Rational};

/// `serde(with = ...)` adapter for a single rational.
pub mod rational_str {
    use serde::{de::Error as _, Deserialize, Deserializer, Serializer};

    use crate::rational::{format_rational, parse_rational, Rational};

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&format_rational(r))
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        parse_rational(&s).map_err(D::Error::custom)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RegionDocument {
    pub config: AntennaConfig,
    #[serde(with = "rational_str")]
    pub alpha: Rational,
    pub halfplanes: Vec<HalfPlane>,
    pub vertices: Vec<GdofPoint>,
}

impl RegionDocument {
    pub fn new(config: AntennaConfig, alpha: Alpha, region: &Region2D) -> Self {
        Self {
            config,
            alpha: alpha.value(),
            halfplanes: region.halfplanes().to_vec(),
            vertices: region.vertices().to_vec(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::Document(e.to_string()))
    }

    /// Rebuilds the region from the half-planes and checks it against the
    /// stored vertex list.
    pub fn region(&self) -> Result<Region2D> {
        let r = Region2D::intersect(&self.halfplanes)?;
        if r.vertices() != self.vertices.as_slice() {
            return Err(Error::Document(
                "vertex list does not match the half-planes".into(),
            ));
        }
        Ok(r)
    }
}

/// Vertex list as CSV with header `d1,d2`.
pub fn vertices_csv(region: &Region2D) -> String {
    let mut out = String::from("d1,d2\n");
    for v in region.vertices() {
        out.push_str(&format!("{},{}\n", format_rational(&v.d1), format_rational(&v.d2)));
    }
    out
}
