//! Arithmetic progressions among slopes near the boundary of weight space.

use rayon::prelude::*;
use serde::Serialize;

use crate::dimensions::level_invariants;
use crate::error::{GhostError, Result};
use crate::exactmath::{floor_i64, rat, rat_int, rational_str, Prime, Rational};
use crate::ghost::GhostSeries;
use crate::weights::{Direction, WeightPoint, ZeroLocation};

use super::slopes::{ghost_slopes, SlopeOptions};

/// Predicted number of progressions and their common difference.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct HaloParams {
    #[serde(rename = "C")]
    pub count: usize,
    #[serde(with = "rational_str")]
    pub diff: Rational,
}

pub fn expected_halo_params(p: Prime, level: u64, alpha: &Rational) -> Result<HaloParams> {
    if *alpha <= rat_int(0) {
        return Err(GhostError::InvalidArgument(format!(
            "alpha must be positive, got {alpha}"
        )));
    }
    let r = floor_i64(alpha);
    let pv = p.as_i64();
    if pv == 2 {
        if level != 1 {
            return Err(GhostError::InvalidArgument(
                "p = 2 with level above 1 uses the modified series; no halo prediction".into(),
            ));
        }
        let count = if r >= 2 { 1usize << (r - 2) } else { 1 };
        let mut diff = alpha.clone();
        for v in 3..=r {
            diff += rat_int(v * (1i64 << (r - v)));
        }
        return Ok(HaloParams { count, diff });
    }
    let inv = level_invariants(level)?;
    if level.is_multiple_of(p.get()) {
        return Err(GhostError::LevelNotCoprime { p: p.get(), level });
    }
    let base = pv * (pv - 1) * (pv + 1) * inv.mu0 / 24;
    let count = (pv.pow(r as u32) * base) as usize;
    let mut inner = alpha.clone();
    for v in 1..=r {
        inner += rat_int((pv - 1) * pv.pow((r - v) as u32) * v);
    }
    let diff = rat((pv - 1) * (pv - 1), 2) * inner;
    Ok(HaloParams { count, diff })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "result", rename_all = "lowercase")]
pub enum HaloCheck {
    /// Every checked pair matched; the first term of each progression.
    Success {
        #[serde(with = "rational_str::vec")]
        initial_terms: Vec<Rational>,
    },
    /// 1-based index `i` with `s_{i+C} - s_i ≠ diff`.
    Violation {
        index: usize,
        #[serde(with = "rational_str")]
        expected: Rational,
        #[serde(with = "rational_str")]
        got: Rational,
    },
}

/// Checks `s_{i+C} - s_i = diff` for every `i > prefix` in the list.
pub fn halo_progressions(slopes: &[Rational], params: &HaloParams, prefix: usize) -> Result<HaloCheck> {
    let c = params.count;
    if slopes.len() <= prefix + 2 * c {
        return Err(GhostError::InvalidArgument(format!(
            "need more than {} slopes for prefix {prefix} and C = {c}, got {}",
            prefix + 2 * c,
            slopes.len()
        )));
    }
    for i in prefix + 1..=slopes.len() - c {
        let got = &slopes[i + c - 1] - &slopes[i - 1];
        if got != params.diff {
            return Ok(HaloCheck::Violation {
                index: i,
                expected: params.diff.clone(),
                got,
            });
        }
    }
    Ok(HaloCheck::Success {
        initial_terms: slopes[prefix..prefix + c].to_vec(),
    })
}

/// Radii `vmin + j (vmax - vmin) / steps` for `j = 0..=steps`.
pub fn radius_grid(vmin: &Rational, vmax: &Rational, steps: usize) -> Result<Vec<Rational>> {
    if steps == 0 || vmin > vmax || *vmin <= rat_int(0) {
        return Err(GhostError::InvalidArgument(
            "radius grid needs 0 < vmin ≤ vmax and at least one step".into(),
        ));
    }
    let width = vmax - vmin;
    Ok((0..=steps)
        .map(|j| vmin + &width * rat(j as i64, steps as i64))
        .collect())
}

/// One row of a halo table: a radius and the first slopes there.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HaloRow {
    pub radius: Rational,
    pub slopes: Vec<Rational>,
    pub complete: bool,
}

/// Slopes on discs of each radius around `center`. Integral radii are
/// skipped unless `generic` is set, since a ramified disc needs a
/// non-integral radius. Rows follow the input order.
pub fn halo_rows(
    series: &GhostSeries,
    center: ZeroLocation,
    radii: &[Rational],
    generic: bool,
    count: usize,
    opts: SlopeOptions,
) -> Result<(Vec<HaloRow>, Vec<Rational>)> {
    let (used, skipped): (Vec<&Rational>, Vec<&Rational>) = radii.iter().partition(|r| generic || !r.is_integer());
    let rows: Result<Vec<HaloRow>> = used
        .par_iter()
        .map(|r| {
            let dir = if generic {
                Direction::Generic
            } else {
                Direction::Ramified
            };
            let kappa = WeightPoint::disc(center, (*r).clone(), dir)?;
            let rep = ghost_slopes(series, &kappa, count, opts)?;
            Ok(HaloRow {
                radius: (*r).clone(),
                slopes: rep.slopes,
                complete: rep.complete,
            })
        })
        .collect();
    Ok((rows?, skipped.into_iter().cloned().collect()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn params() {
        let hp = expected_halo_params(p(3), 1, &rat(3, 2)).unwrap();
        assert_eq!((hp.count, hp.diff), (3, rat_int(7)));
        let hp = expected_halo_params(p(3), 1, &rat(1, 2)).unwrap();
        assert_eq!((hp.count, hp.diff), (1, rat_int(1)));
        let hp = expected_halo_params(p(2), 1, &rat(11, 2)).unwrap();
        assert_eq!((hp.count, hp.diff), (8, rat(61, 2)));
        let hp = expected_halo_params(p(2), 1, &rat(5, 2)).unwrap();
        assert_eq!((hp.count, hp.diff), (1, rat(5, 2)));
        assert!(expected_halo_params(p(2), 3, &rat(1, 2)).is_err());
        assert!(expected_halo_params(p(3), 1, &rat_int(0)).is_err());
        assert!(expected_halo_params(p(3), 3, &rat(1, 2)).is_err());
    }

    #[test]
    fn progression_check() {
        let hp = HaloParams {
            count: 1,
            diff: rat(1, 2),
        };
        let s: Vec<Rational> = (1..=10).map(|j| rat(j, 2)).collect();
        assert_eq!(
            halo_progressions(&s, &hp, 0).unwrap(),
            HaloCheck::Success {
                initial_terms: vec![rat(1, 2)]
            }
        );
        let flat = vec![rat_int(1); 6];
        assert!(matches!(
            halo_progressions(&flat, &hp, 0).unwrap(),
            HaloCheck::Violation { index: 1, .. }
        ));
        assert!(halo_progressions(&flat[..2], &hp, 0).is_err());
    }

    #[test]
    fn grid() {
        let g = radius_grid(&rat(1, 2), &rat(3, 2), 4).unwrap();
        assert_eq!(g, vec![rat(1, 2), rat(3, 4), rat(1, 1), rat(5, 4), rat(3, 2)]);
        assert!(radius_grid(&rat(1, 2), &rat(1, 4), 4).is_err());
    }
}
