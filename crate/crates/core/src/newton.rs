//! Lower convex hulls of point sets `(i, y_i)` with exact rational heights.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::error::{GhostError, Result};
use crate::exactmath::{Rational, Valuation};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolygonPoint {
    pub index: usize,
    pub y: Valuation,
}

impl PolygonPoint {
    pub fn new(index: usize, y: Valuation) -> PolygonPoint {
        PolygonPoint { index, y }
    }
}

/// A lower convex hull, stored as its breakpoints and its slopes (each
/// slope repeated once per unit of horizontal length).
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct NewtonPolygon {
    pub vertices: Vec<(usize, Rational)>,
    pub slopes: Vec<Rational>,
}

impl NewtonPolygon {
    /// Height of the polygon at an index within its range.
    pub fn height_at(&self, x: usize) -> Option<Rational> {
        let pos = self.vertices.iter().position(|(i, _)| *i >= x)?;
        let (xb, yb) = &self.vertices[pos];
        if *xb == x {
            return Some(yb.clone());
        }
        let (xa, ya) = &self.vertices[pos.checked_sub(1)?];
        let t = Rational::new(BigInt::from(x - xa), BigInt::from(xb - xa));
        Some(ya + (yb - ya) * t)
    }

    /// Last index covered by the polygon.
    pub fn length(&self) -> usize {
        self.slopes.len()
    }
}

impl Serialize for NewtonPolygon {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let vertices: Vec<(usize, String)> = self.vertices.iter().map(|(i, y)| (*i, y.to_string())).collect();
        let slopes: Vec<String> = self.slopes.iter().map(|r| r.to_string()).collect();
        let mut st = s.serialize_struct("NewtonPolygon", 2)?;
        st.serialize_field("vertices", &vertices)?;
        st.serialize_field("slopes", &slopes)?;
        st.end()
    }
}

/// The lower convex hull of the finite points. Infinite points are ignored;
/// a point `(0, 0)` is required. Repeated indices keep the lowest height.
pub fn lower_hull(points: &[PolygonPoint]) -> Result<NewtonPolygon> {
    let mut finite: Vec<(usize, &Rational)> = points
        .iter()
        .filter_map(|pt| pt.y.finite().map(|y| (pt.index, y)))
        .collect();
    finite.sort();
    finite.dedup_by_key(|(i, _)| *i);
    match finite.first() {
        Some((0, y)) if y.is_zero() => {}
        _ => {
            return Err(GhostError::InvalidArgument(
                "a Newton polygon needs the point (0, 0)".into(),
            ))
        }
    }
    let denom = finite.iter().fold(BigInt::one(), |acc, (_, y)| acc.lcm(y.denom()));
    let scaled: Vec<(BigInt, BigInt)> = finite
        .iter()
        .map(|(i, y)| {
            (
                BigInt::from(*i),
                ((*y).clone() * Rational::from_integer(denom.clone())).to_integer(),
            )
        })
        .collect();
    let hull = monotone_lower(&scaled);
    let vertices: Vec<(usize, Rational)> = hull.iter().map(|&j| (finite[j].0, finite[j].1.clone())).collect();
    let mut slopes = Vec::new();
    for w in vertices.windows(2) {
        let (xa, ya) = &w[0];
        let (xb, yb) = &w[1];
        let run = xb - xa;
        let s = (yb - ya) / Rational::from_integer(BigInt::from(run));
        slopes.extend(std::iter::repeat_n(s, run));
    }
    Ok(NewtonPolygon { vertices, slopes })
}

/// Andrew's monotone chain, lower half, on points sorted by strictly
/// increasing x. Returns indices of the breakpoints.
fn monotone_lower(pts: &[(BigInt, BigInt)]) -> Vec<usize> {
    let mut hull: Vec<usize> = Vec::with_capacity(pts.len());
    for (k, b) in pts.iter().enumerate() {
        while hull.len() >= 2 {
            let o = &pts[hull[hull.len() - 2]];
            let a = &pts[hull[hull.len() - 1]];
            let cross = (&a.0 - &o.0) * (&b.1 - &o.1) - (&a.1 - &o.1) * (&b.0 - &o.0);
            if cross <= BigInt::zero() {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(k);
    }
    hull
}

/// The first `n` slopes of a polygon.
pub fn slopes(poly: &NewtonPolygon, n: usize) -> Result<Vec<Rational>> {
    if poly.slopes.len() < n {
        return Err(GhostError::InvalidArgument(format!(
            "polygon has only {} slopes, {n} requested",
            poly.slopes.len()
        )));
    }
    Ok(poly.slopes[..n].to_vec())
}

/// Consecutive differences `y_i - y_{i-1}`. Indices where either side is
/// infinite are reported as gaps.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DeltaSlopes {
    pub slopes: Vec<(usize, Rational)>,
    pub gaps: Vec<usize>,
}

pub fn delta_slopes(points: &[PolygonPoint]) -> DeltaSlopes {
    let mut sorted: Vec<&PolygonPoint> = points.iter().collect();
    sorted.sort_by_key(|pt| pt.index);
    let mut out = DeltaSlopes::default();
    for w in sorted.windows(2) {
        let i = w[1].index;
        if w[0].index + 1 != i {
            continue;
        }
        match (w[0].y.finite(), w[1].y.finite()) {
            (Some(a), Some(b)) => out.slopes.push((i, b - a)),
            _ => out.gaps.push(i),
        }
    }
    out
}
