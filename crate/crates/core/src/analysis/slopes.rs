//! Newton slopes of the ghost series at a weight, with a certificate that
//! coefficients beyond the computed window cannot change them.

use num_traits::{One, Signed};
use serde::Serialize;

use crate::dimensions::LevelPair;
use crate::error::{GhostError, Result};
use crate::exactmath::{rat_int, rational_str, Rational, Valuation};
use crate::ghost::GhostSeries;
use crate::newton::{lower_hull, NewtonPolygon, PolygonPoint};
use crate::weights::{WeightPoint, ZeroLocation};

/// Result of a slope computation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SlopeReport {
    pub p: u64,
    #[serde(rename = "N")]
    pub level: u64,
    pub component: i64,
    pub weight: WeightPoint,
    pub variant: String,
    #[serde(with = "rational_str::vec")]
    pub slopes: Vec<Rational>,
    /// Number of leading slopes proven final. Zero in heuristic mode.
    pub certified_count: usize,
    /// Largest coefficient index used.
    pub coefficients_used: usize,
    /// False when certification was requested but stopped short of `n`.
    pub complete: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SlopeOptions {
    pub certify: bool,
    /// Smallest coefficient window to start from.
    pub min_window: usize,
    /// Window size at which certification gives up.
    pub max_window: usize,
}

impl Default for SlopeOptions {
    fn default() -> Self {
        SlopeOptions {
            certify: true,
            min_window: 0,
            max_window: 1 << 16,
        }
    }
}

impl SlopeOptions {
    pub fn heuristic() -> Self {
        SlopeOptions {
            certify: false,
            ..Default::default()
        }
    }
}

/// A quadratic lower bound `Q(m) ≤ λ(g_m)` coming from the weights `k ≥ 4`,
/// using only the bounds on `d_k` and `d_k + d_k^new` that are linear in `k`.
///
/// The zero multiplicity at `k` is at least the tent
/// `min(m - a - μk/12, pμk/12 + b - m)`, and summing a tent of height `H`
/// over a grid of spacing `s` loses at most `2H` against its integral.
#[derive(Debug, Clone)]
pub(crate) struct LambdaBound {
    h1: Rational,
    h0: Rational,
    c1: Rational,
    c0: Rational,
    m_valid: Rational,
}

impl LambdaBound {
    pub(crate) fn new(dims: &LevelPair, step: i64) -> LambdaBound {
        let (a, b) = dims.band_bounds();
        let p = rat_int(dims.p.as_i64());
        let one = Rational::one();
        let mu = rat_int(dims.old.mu0);
        let twelve_mu = rat_int(12) / &mu;
        let two_s = rat_int(2 * step);
        let h1 = (&p - &one) / (&p + &one);
        let h0 = (&b - &p * &a) / (&p + &one);
        let c1 = &twelve_mu * (&one - &one / &p) / &two_s;
        let c0 = &twelve_mu * (-&a + &b / &p) / &two_s - rat_int(2);
        let m_valid = &b + &p * &mu / rat_int(3);
        LambdaBound {
            h1,
            h0,
            c1,
            c0,
            m_valid,
        }
    }

    fn factors(&self, m: &Rational) -> Option<(Rational, Rational)> {
        let h = &self.h1 * m + &self.h0;
        let c = &self.c1 * m + &self.c0;
        if *m >= self.m_valid && h.is_positive() && c.is_positive() {
            Some((h, c))
        } else {
            None
        }
    }

    /// `Q(m)` where the bound holds and is increasing, else `None`.
    pub(crate) fn q(&self, m: i64) -> Option<Rational> {
        let (h, c) = self.factors(&rat_int(m))?;
        Some(h * c)
    }

    /// `Q'(m)` in the same region.
    fn dq(&self, m: i64) -> Option<Rational> {
        let (h, c) = self.factors(&rat_int(m))?;
        Some(&self.h1 * c + &self.c1 * h)
    }

    /// Least `m ≥ from` such that `pred` holds at every index from `m` on,
    /// given that `pred` is monotone.
    pub(crate) fn threshold(from: i64, pred: impl Fn(i64) -> bool) -> i64 {
        let mut hi = from.max(1);
        while !pred(hi) {
            hi *= 2;
        }
        let mut lo = from - 1;
        while hi - lo > 1 {
            let mid = lo + (hi - lo) / 2;
            if pred(mid) {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        hi
    }
}

/// Lower bounds for the distance from `kappa` to integer zeros and to
/// twisted zeros on its component.
fn delta_min(series: &GhostSeries, kappa: &WeightPoint) -> (Rational, Rational) {
    let p = series.p();
    let base = if p.get() == 2 { 2 } else { 1 };
    let (to_int, to_eta) = match kappa.center() {
        ZeroLocation::Integer(_) => (base, 1),
        ZeroLocation::Eta(_) => (1, base),
    };
    let clip = |d: i64| match kappa.radius() {
        Some(r) => r.clone().min(rat_int(d)),
        None => rat_int(d),
    };
    (clip(to_int), clip(to_eta))
}

struct Window {
    poly: NewtonPolygon,
}

fn hull_of(series: &GhostSeries, kappa: &WeightPoint, upto: usize) -> Result<Window> {
    let ys = series.valuations(kappa, upto)?;
    let pts: Vec<PolygonPoint> = ys
        .into_iter()
        .enumerate()
        .map(|(i, y)| PolygonPoint::new(i, y))
        .collect();
    Ok(Window {
        poly: lower_hull(&pts)?,
    })
}

/// Checks that the line through the vertex `(x, y)` with slope `sigma`
/// stays below every point with index greater than `window`.
fn certify_line(
    series: &GhostSeries,
    kappa: &WeightPoint,
    window: usize,
    x: usize,
    y: &Rational,
    sigma: &Rational,
) -> std::result::Result<(), usize> {
    let (d_int, d_eta) = delta_min(series, kappa);
    let bound = LambdaBound::new(series.dims(), series.component().step());
    let line = |m: i64| y + sigma * rat_int(m - x as i64);
    let tail_ok = |m: i64| match (bound.q(m), bound.dq(m)) {
        (Some(q), Some(dq)) => &d_int * q >= line(m) && &d_int * dq >= *sigma,
        _ => false,
    };
    let start = window as i64 + 1;
    let m0 = LambdaBound::threshold(start, tail_ok);
    if m0 <= start {
        return Ok(());
    }
    let top = (m0 - 1) as usize;
    let total = series.lambda_table(top);
    let ints = series.integer_lambda_table(top);
    for m in start as usize..=top {
        let eta = total[m] - ints[m];
        let low = &d_int * rat_int(ints[m] as i64) + &d_eta * rat_int(eta as i64);
        if low < line(m as i64) {
            return Err(m);
        }
    }
    Ok(())
}

/// Number of leading slopes of the window's polygon that are final, trying
/// the edge through index `n` first and earlier edges after it. On failure
/// returns the first index where the bound was too weak.
fn certified_prefix(
    series: &GhostSeries,
    kappa: &WeightPoint,
    window: usize,
    poly: &NewtonPolygon,
    n: usize,
) -> (usize, Option<usize>) {
    let verts = &poly.vertices;
    let mut edge = verts
        .windows(2)
        .position(|w| w[1].0 >= n)
        .unwrap_or(verts.len().saturating_sub(2));
    let mut blocker = None;
    loop {
        if verts.len() < 2 {
            return (0, blocker);
        }
        let (x, y) = &verts[edge];
        let sigma = &poly.slopes[*x];
        match certify_line(series, kappa, window, *x, y, sigma) {
            Ok(()) => return (verts[edge + 1].0, blocker),
            Err(m) => {
                blocker.get_or_insert(m);
                if edge == 0 {
                    return (0, blocker);
                }
                edge -= 1;
            }
        }
    }
}

/// First `n` Newton slopes of the ghost series at `kappa`.
pub fn ghost_slopes(series: &GhostSeries, kappa: &WeightPoint, n: usize, opts: SlopeOptions) -> Result<SlopeReport> {
    if n == 0 {
        return Err(GhostError::InvalidArgument("slope count must be at least 1".into()));
    }
    series.check_weight(kappa)?;
    let mut window = opts.min_window.max(2 * n).max(16);
    let report = |slopes: Vec<Rational>, certified: usize, used: usize, complete: bool| SlopeReport {
        p: series.p().get(),
        level: series.level(),
        component: series.component().residue(),
        weight: kappa.clone(),
        variant: series.variant().name().to_string(),
        slopes,
        certified_count: certified,
        coefficients_used: used,
        complete,
    };
    if opts.certify {
        loop {
            let w = hull_of(series, kappa, window)?;
            let (certified, blocker) = if w.poly.slopes.len() >= n {
                certified_prefix(series, kappa, window, &w.poly, n)
            } else {
                (0, None)
            };
            if certified >= n {
                return Ok(report(w.poly.slopes[..n].to_vec(), n, window, true));
            }
            let next = blocker.map_or(2 * window, |m| (2 * window).max(m + m / 2));
            if next > opts.max_window {
                let take = n.min(w.poly.slopes.len());
                return Ok(report(
                    w.poly.slopes[..take].to_vec(),
                    certified.min(take),
                    window,
                    false,
                ));
            }
            window = next;
        }
    }
    let mut prev: Option<Vec<Rational>> = None;
    let mut stable = 0;
    loop {
        let w = hull_of(series, kappa, window)?;
        let cur = (w.poly.slopes.len() >= n).then(|| w.poly.slopes[..n].to_vec());
        if let Some(c) = cur.as_ref().filter(|c| prev.as_ref() == Some(*c)) {
            stable += 1;
            if stable >= 2 {
                return Ok(report(c.clone(), 0, window, true));
            }
        } else {
            stable = 0;
        }
        prev = cur;
        if 2 * window > opts.max_window {
            return Err(GhostError::WindowExceeded(opts.max_window));
        }
        window *= 2;
    }
}

/// Recomputes the slopes from twice the coefficient window of a certified
/// report and checks that the certified prefix did not move.
pub fn truncation_stable(series: &GhostSeries, kappa: &WeightPoint, report: &SlopeReport) -> Result<bool> {
    let n = report.certified_count;
    if n == 0 {
        return Ok(true);
    }
    let opts = SlopeOptions {
        min_window: 2 * report.coefficients_used,
        max_window: (4 * report.coefficients_used).max(SlopeOptions::default().max_window),
        ..SlopeOptions::default()
    };
    let again = ghost_slopes(series, kappa, n, opts)?;
    Ok(again.slopes[..n] == report.slopes[..n])
}

/// Builds the standard or given-variant series on the component of `kappa`
/// and computes its slopes there.
pub fn slopes_at(
    p: crate::exactmath::Prime,
    level: u64,
    kappa: &WeightPoint,
    n: usize,
    variant: crate::ghost::Variant,
    opts: SlopeOptions,
) -> Result<SlopeReport> {
    let comp = crate::weights::Component::of_point(p, kappa)?;
    let series = GhostSeries::new(p, level, comp, variant)?;
    ghost_slopes(&series, kappa, n, opts)
}

/// Lower convex hull of `(i, λ(g_i))` for `i ≤ upto`.
pub fn wadic_polygon(series: &GhostSeries, upto: usize) -> Result<NewtonPolygon> {
    if upto == 0 {
        return Err(GhostError::InvalidArgument("index bound must be at least 1".into()));
    }
    let pts: Vec<PolygonPoint> = series
        .lambda_table(upto)
        .into_iter()
        .enumerate()
        .map(|(i, l)| PolygonPoint::new(i, Valuation::int(l as i64)))
        .collect();
    lower_hull(&pts)
}

/// `sup {i : g_i = 1}`. Past a proven index every coefficient has a zero.
pub fn ordinary_dim(series: &GhostSeries) -> usize {
    let bound = LambdaBound::new(series.dims(), series.component().step());
    let m0 = LambdaBound::threshold(1, |m| bound.q(m).is_some_and(|q| q.is_positive()));
    let table = series.lambda_table(m0 as usize);
    (1..m0 as usize).rev().find(|&i| table[i] == 0).unwrap_or(0)
}
