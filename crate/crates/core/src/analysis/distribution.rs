//! Statistics of the slopes at a large integer weight: the last old slope,
//! the middle band, and the empirical distribution of `s_i / (k - 1)`.

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::dimensions::DimMode;
use crate::error::{GhostError, Result};
use crate::exactmath::{rat, rat_int, rational_str, Rational};
use crate::ghost::GhostSeries;
use crate::weights::WeightPoint;

use super::slopes::{ghost_slopes, SlopeOptions};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistributionReport {
    pub k: i64,
    pub d_k: i64,
    pub d_k_new: i64,
    pub d_kp: i64,
    /// `s_{d_k}`, the last slope below the middle band.
    #[serde(with = "rational_str")]
    pub last_old: Rational,
    /// `s_{d_k} (p + 1) / k`.
    pub last_old_ratio: f64,
    /// The common slope of the middle band, if all middle slopes agree.
    pub middle: Option<String>,
    /// Fraction of `s_i / (k - 1)` within `epsilon` of 1/2.
    pub band_fraction: f64,
    /// Sup distance between the empirical and limiting distribution functions.
    pub cdf_distance: f64,
    /// Lévy distance between the same two distribution functions.
    pub levy_distance: f64,
    pub certified: bool,
    #[serde(skip)]
    pub slopes: Vec<Rational>,
}

/// Limiting distribution function: uniform density 1 on `[0, 1/(p+1)]` and
/// `[p/(p+1), 1]`, with an atom of mass `(p-1)/(p+1)` at 1/2.
/// Returns the values just below and at `x`.
fn limit_cdf(p: i64, x: &Rational) -> (Rational, Rational) {
    let lo = rat(1, p + 1);
    let hi = rat(p, p + 1);
    let half = rat(1, 2);
    let zero = rat_int(0);
    let cont = |x: &Rational| -> Rational {
        if *x <= zero {
            zero.clone()
        } else if *x < half {
            x.clone().min(lo.clone())
        } else {
            let upper = x.clone().min(rat_int(1)) - &hi;
            &hi + upper.max(zero.clone())
        }
    };
    let at = cont(x);
    let below = if *x == half { lo.clone() } else { at.clone() };
    (below, at)
}

/// Sup distance between the empirical distribution of sorted `xs` and the
/// limiting one.
pub fn cdf_sup_distance(p: i64, xs: &[Rational]) -> Rational {
    let n = xs.len() as i64;
    let mut best = rat_int(0);
    let mut consider = |d: Rational| {
        let d = if d < rat_int(0) { -d } else { d };
        if d > best {
            best = d;
        }
    };
    let mut i = 0usize;
    while i < xs.len() {
        let mut j = i;
        while j < xs.len() && xs[j] == xs[i] {
            j += 1;
        }
        let (below, at) = limit_cdf(p, &xs[i]);
        consider(below - rat(i as i64, n));
        consider(at - rat(j as i64, n));
        i = j;
    }
    let half = rat(1, 2);
    let (below, at) = limit_cdf(p, &half);
    let lt = xs.iter().filter(|x| **x < half).count() as i64;
    let le = xs.iter().filter(|x| **x <= half).count() as i64;
    consider(below - rat(lt, n));
    consider(at - rat(le, n));
    best
}

fn limit_cdf_f64(p: f64, x: f64, left: bool) -> f64 {
    let lo = 1.0 / (p + 1.0);
    let hi = p / (p + 1.0);
    if x <= 0.0 {
        0.0
    } else if x < 0.5 || (left && x == 0.5) {
        x.min(lo)
    } else {
        hi + (x.min(1.0) - hi).max(0.0)
    }
}

/// Lévy distance between the empirical distribution of sorted `xs` and the
/// limiting one, by bisection to about `1e-12`.
pub fn levy_distance(p: i64, xs: &[Rational]) -> f64 {
    let pf = p as f64;
    let n = xs.len() as f64;
    let mut pts: Vec<(f64, f64)> = Vec::new();
    let mut i = 0usize;
    while i < xs.len() {
        let mut j = i;
        while j < xs.len() && xs[j] == xs[i] {
            j += 1;
        }
        pts.push((xs[i].to_f64().unwrap_or(f64::NAN), j as f64 / n));
        i = j;
    }
    // empirical G is G_j on [x_j, x_{j+1}), 0 before x_0, 1 after the last point
    let ok = |eps: f64| {
        let before = pts.first().map_or(f64::INFINITY, |p| p.0);
        if limit_cdf_f64(pf, before - eps, true) - eps > 0.0 {
            return false;
        }
        for (j, &(x, g)) in pts.iter().enumerate() {
            if g > limit_cdf_f64(pf, x + eps, false) + eps {
                return false;
            }
            let next = pts.get(j + 1).map_or(f64::INFINITY, |q| q.0);
            if next.is_finite() && g < limit_cdf_f64(pf, next - eps, true) - eps {
                return false;
            }
        }
        true
    };
    let (mut lo, mut hi) = (0.0f64, 1.0f64);
    for _ in 0..50 {
        let mid = 0.5 * (lo + hi);
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

pub fn distribution_report(series: &GhostSeries, k: i64, epsilon: &Rational) -> Result<DistributionReport> {
    if k < 4 {
        return Err(GhostError::InvalidArgument(format!(
            "distribution needs weight at least 4, got {k}"
        )));
    }
    let dims = series.dims();
    let d_k = dims.d(k, DimMode::True);
    let d_k_new = dims.d_new(k, DimMode::True);
    let d_kp = dims.d_total(k, DimMode::True);
    let kappa = WeightPoint::Integer(k);
    series.check_weight(&kappa)?;
    let rep = ghost_slopes(series, &kappa, d_kp as usize, SlopeOptions::default())?;
    let slopes = rep.slopes;
    let p = series.p().as_i64();
    let last_old = if d_k >= 1 {
        slopes[d_k as usize - 1].clone()
    } else {
        rat_int(0)
    };
    let band = &slopes[d_k as usize..(d_k + d_k_new) as usize];
    let middle = match band.first() {
        Some(first) if band.iter().all(|s| s == first) => Some(first.to_string()),
        _ => None,
    };
    let scale = rat_int(k - 1);
    let xs: Vec<Rational> = slopes.iter().map(|s| s / &scale).collect();
    let half = rat(1, 2);
    let near = xs
        .iter()
        .filter(|x| {
            let d = *x - &half;
            (if d < rat_int(0) { -d } else { d }) <= *epsilon
        })
        .count();
    let f = |r: &Rational| r.to_f64().unwrap_or(f64::NAN);
    Ok(DistributionReport {
        k,
        d_k,
        d_k_new,
        d_kp,
        last_old_ratio: f(&(&last_old * rat(p + 1, k))),
        last_old,
        middle,
        band_fraction: near as f64 / xs.len().max(1) as f64,
        cdf_distance: f(&cdf_sup_distance(p, &xs)),
        levy_distance: levy_distance(p, &xs),
        certified: rep.complete,
        slopes,
    })
}
