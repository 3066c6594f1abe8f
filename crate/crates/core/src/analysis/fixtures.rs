//! Externally produced slope lists, and comparison against ghost slopes.

use serde::{Deserialize, Serialize};

use crate::dimensions::{dim_eta8, DimMode};
use crate::error::{GhostError, Result};
use crate::exactmath::{rational_str, Prime, Rational};
use crate::ghost::{GhostSeries, Variant, Weight2SlopeData};
use crate::weights::{Component, WeightPoint};

use super::slopes::{ghost_slopes, SlopeOptions};

const WEIGHT2_N3: &str = include_str!("../../fixtures/weight2_n3.json");
const WEIGHT2_N7: &str = include_str!("../../fixtures/weight2_n7.json");
const WEIGHT2_N23: &str = include_str!("../../fixtures/weight2_n23.json");

/// Bundled weight-2 slope data for the levels 3, 7 and 23.
pub fn builtin_weight2(level: u64) -> Option<Weight2SlopeData> {
    let text = match level {
        3 => WEIGHT2_N3,
        7 => WEIGHT2_N7,
        23 => WEIGHT2_N23,
        _ => return None,
    };
    Some(Weight2SlopeData::from_json(text).expect("bundled weight-2 data is valid"))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlopeFixture {
    pub p: u64,
    #[serde(rename = "N")]
    pub level: u64,
    pub weight: WeightPoint,
    #[serde(with = "rational_str::vec")]
    pub slopes: Vec<Rational>,
    pub source: String,
}

#[derive(Deserialize)]
struct RawFixture {
    p: u64,
    #[serde(rename = "N")]
    level: u64,
    k: Option<i64>,
    weight: Option<String>,
    #[serde(with = "rational_str::vec")]
    slopes: Vec<Rational>,
    #[serde(default)]
    source: String,
}

impl SlopeFixture {
    pub fn from_json(text: &str) -> Result<SlopeFixture> {
        let raw: RawFixture = serde_json::from_str(text)
            .map_err(|e| GhostError::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
        let weight = match (raw.k, raw.weight) {
            (Some(k), None) => WeightPoint::Integer(k),
            (None, Some(w)) => w.parse()?,
            _ => {
                return Err(GhostError::Parse(
                    "fixture needs exactly one of \"k\" and \"weight\"".into(),
                ))
            }
        };
        if raw.slopes.is_empty() {
            return Err(GhostError::InvalidData("fixture has no slopes".into()));
        }
        if raw.slopes.windows(2).any(|w| w[0] > w[1]) {
            return Err(GhostError::InvalidData("fixture slopes are not nondecreasing".into()));
        }
        Ok(SlopeFixture {
            p: raw.p,
            level: raw.level,
            weight,
            slopes: raw.slopes,
            source: raw.source,
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FixtureDiff {
    pub matched: bool,
    pub compared: usize,
    #[serde(with = "rational_str::vec")]
    pub expected: Vec<Rational>,
    #[serde(with = "rational_str::vec")]
    pub got: Vec<Rational>,
    pub certified: bool,
}

/// Compares the leading ghost slopes at the fixture's weight against the
/// fixture, as multisets. At most the classical dimension is compared: `d_k`
/// at an integer weight, the twisted weight-k dimension at an η8 weight.
pub fn compare_fixture(fixture: &SlopeFixture, variant: Variant) -> Result<FixtureDiff> {
    let p = Prime::new(fixture.p)?;
    let comp = Component::of_point(p, &fixture.weight)?;
    let series = GhostSeries::new(p, fixture.level, comp, variant)?;
    series.check_weight(&fixture.weight)?;
    let cap = match fixture.weight {
        WeightPoint::Integer(k) => series.dims().d(k, DimMode::True),
        WeightPoint::Eta(k) => dim_eta8(fixture.level, k)?,
        WeightPoint::Disc { .. } => {
            return Err(GhostError::InvalidArgument(
                "fixtures are defined at integer or η8 weights only".into(),
            ))
        }
    };
    let n = fixture.slopes.len().min(cap.max(0) as usize);
    if n == 0 {
        return Err(GhostError::InvalidArgument(format!(
            "nothing to compare: no classical forms at {}",
            fixture.weight
        )));
    }
    let rep = ghost_slopes(&series, &fixture.weight, n, SlopeOptions::default())?;
    let mut expected = fixture.slopes[..n].to_vec();
    expected.sort();
    let mut got = rep.slopes;
    got.sort();
    Ok(FixtureDiff {
        matched: expected == got,
        compared: n,
        expected,
        got,
        certified: rep.complete,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat_int;

    #[test]
    fn builtin_data_is_valid() {
        for n in [3, 7, 23] {
            assert_eq!(builtin_weight2(n).unwrap().level, n);
        }
        assert!(builtin_weight2(5).is_none());
    }

    #[test]
    fn parse_errors_carry_line() {
        let err = SlopeFixture::from_json("{\n\"p\": 2,\n\"N\": oops}").unwrap_err();
        assert!(err.to_string().contains("line 3"), "{err}");
        let empty = r#"{"p":2,"N":1,"k":62,"slopes":[],"source":""}"#;
        assert!(SlopeFixture::from_json(empty).is_err());
        let both = r#"{"p":2,"N":1,"k":62,"weight":"k=62","slopes":["1"]}"#;
        assert!(SlopeFixture::from_json(both).is_err());
    }

    #[test]
    fn weight62() {
        let f = SlopeFixture::from_json(include_str!("../../fixtures/weight62_p2.json")).unwrap();
        assert_eq!(f.slopes[0], rat_int(6));
        let diff = compare_fixture(&f, Variant::Standard).unwrap();
        assert!(diff.matched && diff.certified, "{diff:?}");
        assert_eq!(diff.compared, 4);
    }

    #[test]
    fn mismatch_is_reported() {
        let f = SlopeFixture::from_json(r#"{"p":2,"N":1,"k":62,"slopes":["6","7"]}"#).unwrap();
        assert!(!compare_fixture(&f, Variant::Standard).unwrap().matched);
    }
}
