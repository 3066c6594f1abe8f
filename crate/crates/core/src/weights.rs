//! Points of p-adic weight space and the valuations of differences between
//! them.
//!
//! Integer weights `k` sit at `w_k = (1+2p)^k - 1`; for `p = 2` the twisted
//! weights `z^k η8^±` sit at `-5^k - 1`. A `Disc` stands for any weight at
//! distance `radius` from a center, in a direction that does not cancel
//! against the center (generic), or at a non-integral radius (ramified).

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use crate::error::{GhostError, Result};
use crate::exactmath::{parse_rational, rat_int, val_i64, Prime, Rational, Valuation};

/// A weight at which a ghost coefficient may vanish.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ZeroLocation {
    Integer(i64),
    /// `z^k η8^±` with sign `(-1)^k`; only meaningful for `p = 2`.
    Eta(i64),
}

impl fmt::Display for ZeroLocation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ZeroLocation::Integer(k) => write!(f, "k={k}"),
            ZeroLocation::Eta(k) => write!(f, "eta={k}"),
        }
    }
}

impl Serialize for ZeroLocation {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Generic,
    Ramified,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum WeightPoint {
    Integer(i64),
    Eta(i64),
    Disc {
        center: ZeroLocation,
        radius: Rational,
        direction: Direction,
    },
}

impl WeightPoint {
    pub fn disc(center: ZeroLocation, radius: Rational, direction: Direction) -> Result<WeightPoint> {
        if !radius.is_positive() {
            return Err(GhostError::InvalidArgument(format!(
                "disc radius must be positive, got {radius}"
            )));
        }
        if direction == Direction::Ramified && radius.is_integer() {
            return Err(GhostError::InvalidArgument(format!(
                "a ramified disc needs a non-integral radius, got {radius}"
            )));
        }
        Ok(WeightPoint::Disc {
            center,
            radius,
            direction,
        })
    }

    /// The zero location this weight is centered on.
    pub fn center(&self) -> ZeroLocation {
        match self {
            WeightPoint::Integer(k) => ZeroLocation::Integer(*k),
            WeightPoint::Eta(k) => ZeroLocation::Eta(*k),
            WeightPoint::Disc { center, .. } => *center,
        }
    }

    /// The radius of a disc, or `None` for a point.
    pub fn radius(&self) -> Option<&Rational> {
        match self {
            WeightPoint::Disc { radius, .. } => Some(radius),
            _ => None,
        }
    }
}

impl From<ZeroLocation> for WeightPoint {
    fn from(z: ZeroLocation) -> Self {
        match z {
            ZeroLocation::Integer(k) => WeightPoint::Integer(k),
            ZeroLocation::Eta(k) => WeightPoint::Eta(k),
        }
    }
}

impl fmt::Display for WeightPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            WeightPoint::Integer(k) => write!(f, "k={k}"),
            WeightPoint::Eta(k) => write!(f, "eta={k}"),
            WeightPoint::Disc {
                center,
                radius,
                direction,
            } => {
                let c = match center {
                    ZeroLocation::Integer(k) => k.to_string(),
                    ZeroLocation::Eta(k) => format!("eta{k}"),
                };
                let d = match direction {
                    Direction::Generic => 'g',
                    Direction::Ramified => 'r',
                };
                let r = if radius.is_integer() {
                    format!("{}/1", radius.numer())
                } else {
                    radius.to_string()
                };
                write!(f, "disc={c}:{r}:{d}")
            }
        }
    }
}

impl Serialize for WeightPoint {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

fn parse_int(s: &str, what: &str) -> Result<i64> {
    s.trim()
        .parse()
        .map_err(|_| GhostError::Parse(format!("bad {what} {s:?}")))
}

impl FromStr for WeightPoint {
    type Err = GhostError;

    /// Accepts `k=<int>`, `eta=<int>` and `disc=<center>:<a/b>:<g|r>` where
    /// the center is `<int>` or `eta<int>`.
    fn from_str(s: &str) -> Result<WeightPoint> {
        let (tag, rest) = s
            .trim()
            .split_once('=')
            .ok_or_else(|| GhostError::Parse(format!("weight {s:?} has no '='")))?;
        match tag {
            "k" => Ok(WeightPoint::Integer(parse_int(rest, "weight")?)),
            "eta" => Ok(WeightPoint::Eta(parse_int(rest, "eta weight")?)),
            "disc" => {
                let parts: Vec<&str> = rest.split(':').collect();
                let [c, r, d] = parts[..] else {
                    return Err(GhostError::Parse(format!(
                        "disc {s:?} must look like disc=<center>:<a/b>:<g|r>"
                    )));
                };
                let center = match c.strip_prefix("eta") {
                    Some(k) => ZeroLocation::Eta(parse_int(k, "disc center")?),
                    None => ZeroLocation::Integer(parse_int(c, "disc center")?),
                };
                let radius = parse_rational(r)?;
                let direction = match d {
                    "g" => Direction::Generic,
                    "r" => Direction::Ramified,
                    _ => return Err(GhostError::Parse(format!("disc direction must be g or r, got {d:?}"))),
                };
                WeightPoint::disc(center, radius, direction)
            }
            _ => Err(GhostError::Parse(format!("unknown weight kind {tag:?}"))),
        }
    }
}

/// A component of weight space: even integers `k ≡ residue` modulo
/// `max(p - 1, 2)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Component {
    p: Prime,
    residue: i64,
}

impl Component {
    pub fn new(p: Prime, residue: i64) -> Result<Component> {
        let step = step_for(p);
        if residue < 0 || residue >= step || residue % 2 != 0 {
            return Err(GhostError::InvalidComponent { p: p.get(), residue });
        }
        Ok(Component { p, residue })
    }

    /// The component containing the even integer weight `k`.
    pub fn of_weight(p: Prime, k: i64) -> Result<Component> {
        if k % 2 != 0 {
            return Err(GhostError::OddWeight(k));
        }
        Component::new(p, k.rem_euclid(step_for(p)))
    }

    /// The component containing `kappa`.
    pub fn of_point(p: Prime, kappa: &WeightPoint) -> Result<Component> {
        match kappa.center() {
            ZeroLocation::Integer(k) => Component::of_weight(p, k),
            ZeroLocation::Eta(_) if p.get() == 2 => Component::new(p, 0),
            ZeroLocation::Eta(_) => Err(GhostError::InvalidArgument(format!(
                "eta weights only exist for p = 2, not p = {p}"
            ))),
        }
    }

    pub fn p(&self) -> Prime {
        self.p
    }

    pub fn residue(&self) -> i64 {
        self.residue
    }

    /// Spacing between consecutive integer weights on the component.
    pub fn step(&self) -> i64 {
        step_for(self.p)
    }

    /// Whether the even integer `k` lies on this component.
    pub fn contains(&self, k: i64) -> Result<bool> {
        if k % 2 != 0 {
            return Err(GhostError::OddWeight(k));
        }
        Ok(k.rem_euclid(self.step()) == self.residue)
    }

    /// The least weight `k ≥ 2` on the component.
    pub fn first_weight(&self) -> i64 {
        if self.residue >= 2 {
            self.residue
        } else {
            self.residue + self.step()
        }
    }

    fn check_location(&self, z: ZeroLocation) -> Result<()> {
        match z {
            ZeroLocation::Integer(k) => {
                if self.contains(k)? {
                    Ok(())
                } else {
                    Err(GhostError::WrongComponent {
                        weight: z.to_string(),
                        residue: self.residue,
                        modulus: self.step(),
                    })
                }
            }
            ZeroLocation::Eta(_) if self.p.get() == 2 => Ok(()),
            ZeroLocation::Eta(_) => Err(GhostError::InvalidArgument(format!(
                "eta weights only exist for p = 2, not p = {}",
                self.p
            ))),
        }
    }

    /// Checks that `kappa` is a valid weight on this component.
    pub fn check_point(&self, kappa: &WeightPoint) -> Result<()> {
        self.check_location(kappa.center())
    }
}

pub(crate) fn step_for(p: Prime) -> i64 {
    if p.get() == 2 {
        2
    } else {
        p.as_i64() - 1
    }
}

/// `v_p(w_a - w_b)` for two zero locations on the same component, or `None`
/// when they coincide.
pub(crate) fn location_distance(p: Prime, a: ZeroLocation, b: ZeroLocation) -> Option<i64> {
    use ZeroLocation::*;
    let pv = p.get();
    let base = if pv == 2 { 2 } else { 1 };
    match (a, b) {
        (Integer(x), Integer(y)) | (Eta(x), Eta(y)) => val_i64(pv, x - y).map(|v| base + v as i64),
        (Integer(_), Eta(_)) | (Eta(_), Integer(_)) => Some(1),
    }
}

/// How far a weight is from a zero location. Every such distance is either
/// infinite, an integer, or the radius of the weight's disc.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Dist {
    Infinite,
    Int(i64),
    Radius,
}

pub(crate) fn dist_kind(p: Prime, kappa: &WeightPoint, z: ZeroLocation) -> Dist {
    let d = location_distance(p, kappa.center(), z);
    match (kappa.radius(), d) {
        (None, None) => Dist::Infinite,
        (None, Some(d)) => Dist::Int(d),
        (Some(_), None) => Dist::Radius,
        (Some(r), Some(d)) => {
            if rat_int(d) < *r {
                Dist::Int(d)
            } else {
                Dist::Radius
            }
        }
    }
}

/// `v_p(w_kappa - w_z)`.
pub fn distance(p: Prime, kappa: &WeightPoint, z: ZeroLocation) -> Result<Valuation> {
    let comp = Component::of_point(p, kappa)?;
    comp.check_location(z)?;
    Ok(match dist_kind(p, kappa, z) {
        Dist::Infinite => Valuation::Infinite,
        Dist::Int(d) => Valuation::int(d),
        Dist::Radius => Valuation::Finite(kappa.radius().expect("disc radius").clone()),
    })
}

/// The invariant `α` of a non-integral weight: the radius of a disc, and 1
/// for a twisted weight.
pub fn alpha(kappa: &WeightPoint) -> Result<Rational> {
    match kappa {
        WeightPoint::Integer(k) => Err(GhostError::InvalidArgument(format!(
            "alpha is undefined at the integral weight {k}"
        ))),
        WeightPoint::Eta(_) => Ok(rat_int(1)),
        WeightPoint::Disc { radius, .. } => {
            debug_assert!(!radius.is_zero());
            Ok(radius.clone())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn integer_distances() {
        let d = |q, a, b| distance(p(q), &WeightPoint::Integer(a), ZeroLocation::Integer(b)).unwrap();
        assert_eq!(d(2, 62, 14), Valuation::int(6));
        assert_eq!(d(2, 62, 60), Valuation::int(3));
        assert_eq!(d(3, 10, 28), Valuation::int(3));
        assert_eq!(d(5, 4, 8), Valuation::int(1));
        assert_eq!(d(2, 62, 62), Valuation::Infinite);
    }

    #[test]
    fn eta_distances() {
        let p2 = p(2);
        assert_eq!(
            distance(p2, &WeightPoint::Eta(2), ZeroLocation::Integer(8)).unwrap(),
            Valuation::int(1)
        );
        assert_eq!(
            distance(p2, &WeightPoint::Integer(8), ZeroLocation::Eta(3)).unwrap(),
            Valuation::int(1)
        );
        assert_eq!(
            distance(p2, &WeightPoint::Eta(2), ZeroLocation::Eta(6)).unwrap(),
            Valuation::int(4)
        );
        assert_eq!(
            distance(p2, &WeightPoint::Eta(2), ZeroLocation::Eta(3)).unwrap(),
            Valuation::int(2)
        );
        assert!(distance(p(3), &WeightPoint::Eta(2), ZeroLocation::Integer(2)).is_err());
    }

    #[test]
    fn disc_distances() {
        let k = WeightPoint::disc(ZeroLocation::Integer(62), rat_int(7), Direction::Generic).unwrap();
        let p2 = p(2);
        assert_eq!(distance(p2, &k, ZeroLocation::Integer(14)).unwrap(), Valuation::int(6));
        assert_eq!(distance(p2, &k, ZeroLocation::Integer(62)).unwrap(), Valuation::int(7));
        assert_eq!(distance(p2, &k, ZeroLocation::Integer(30)).unwrap(), Valuation::int(7));
        let h = WeightPoint::disc(ZeroLocation::Integer(0), rat(3, 2), Direction::Ramified).unwrap();
        assert_eq!(distance(p(3), &h, ZeroLocation::Integer(4)).unwrap(), Valuation::int(1));
        assert_eq!(distance(p(3), &h, ZeroLocation::Integer(6)).unwrap(), rat(3, 2).into());
    }

    #[test]
    fn component_mismatch() {
        let err = distance(p(5), &WeightPoint::Integer(4), ZeroLocation::Integer(6));
        assert!(matches!(err, Err(GhostError::WrongComponent { .. })));
        assert_eq!(
            distance(p(5), &WeightPoint::Integer(3), ZeroLocation::Integer(7)),
            Err(GhostError::OddWeight(3))
        );
    }

    #[test]
    fn components() {
        let c = Component::new(p(7), 4).unwrap();
        assert_eq!(c.step(), 6);
        assert_eq!(c.first_weight(), 4);
        assert_eq!(Component::new(p(7), 0).unwrap().first_weight(), 6);
        assert_eq!(Component::new(p(2), 0).unwrap().first_weight(), 2);
        assert!(Component::new(p(7), 3).is_err());
        assert!(Component::new(p(5), 4).is_err());
        assert!(Component::new(p(2), 2).is_err());
        assert_eq!(Component::of_weight(p(5), 14).unwrap().residue(), 2);
    }

    #[test]
    fn disc_validation() {
        assert!(WeightPoint::disc(ZeroLocation::Integer(0), rat_int(2), Direction::Ramified).is_err());
        assert!(WeightPoint::disc(ZeroLocation::Integer(0), rat_int(0), Direction::Generic).is_err());
        assert!(WeightPoint::disc(ZeroLocation::Integer(0), rat_int(2), Direction::Generic).is_ok());
    }

    #[test]
    fn alpha_values() {
        assert!(alpha(&WeightPoint::Integer(4)).is_err());
        assert_eq!(alpha(&WeightPoint::Eta(2)).unwrap(), rat_int(1));
        let h = WeightPoint::disc(ZeroLocation::Eta(2), rat(5, 2), Direction::Ramified).unwrap();
        assert_eq!(alpha(&h).unwrap(), rat(5, 2));
    }

    #[test]
    fn parse_round_trip() {
        for s in ["k=26", "eta=4", "disc=62:7/1:g", "disc=eta2:1/2:r", "disc=-4:3/2:r"] {
            let w: WeightPoint = s.parse().unwrap();
            assert_eq!(w.to_string(), s);
        }
        assert!("disc=62:7:r".parse::<WeightPoint>().is_err());
        assert!("disc=62:7".parse::<WeightPoint>().is_err());
        assert!("k=x".parse::<WeightPoint>().is_err());
        assert!("w=2".parse::<WeightPoint>().is_err());
        assert!("disc=62:1/2:q".parse::<WeightPoint>().is_err());
    }
}
