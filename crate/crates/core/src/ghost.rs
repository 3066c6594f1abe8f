//! The ghost series: coefficients as products over weights with prescribed
//! zero multiplicities, their Δ-quotients, and evaluation at weights.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::dimensions::{level_invariants, DimMode, LevelPair};
use crate::error::{GhostError, Result};
use crate::exactmath::{rational_str, Prime, Rational, Valuation};
use crate::weights::{dist_kind, Component, Dist, WeightPoint, ZeroLocation};

/// The up-down pattern `1, 2, ..., 2, 1` of length `l`, shifted to start
/// after index `d`. Zero outside `d < i ≤ d + l`.
pub fn s_pattern(l: i64, d: i64, i: i64) -> i64 {
    let t = i - d;
    if 1 <= t && t <= l {
        t.min(l + 1 - t)
    } else {
        0
    }
}

/// Multiplicity of the weight with dimensions `(d, d_new)` as a zero of the
/// i-th coefficient.
#[inline]
fn tent(d: i64, dn: i64, i: i64) -> i64 {
    if d < i && i < d + dn {
        (i - d).min(d + dn - i)
    } else {
        0
    }
}

/// The slopes of U2 on the weight-2 space with conductor-8 quadratic
/// character, used to build the modified 2-adic series.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Weight2SlopeData {
    #[serde(rename = "N")]
    pub level: u64,
    #[serde(with = "rational_str::vec")]
    pub slopes: Vec<Rational>,
}

impl Weight2SlopeData {
    pub fn new(level: u64, slopes: Vec<Rational>) -> Result<Weight2SlopeData> {
        let data = Weight2SlopeData { level, slopes };
        data.validate()?;
        Ok(data)
    }

    pub fn from_json(text: &str) -> Result<Weight2SlopeData> {
        let data: Weight2SlopeData = serde_json::from_str(text)
            .map_err(|e| GhostError::Parse(format!("line {} column {}: {e}", e.line(), e.column())))?;
        data.validate()?;
        Ok(data)
    }

    /// Checks length, range, ordering and the symmetry `s ↔ 1 - s`.
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: String| Err(GhostError::InvalidData(msg));
        if self.level.is_multiple_of(2) {
            return bad(format!("level {} must be odd", self.level));
        }
        let inv = level_invariants(self.level)?;
        let expected = (inv.mu0 - inv.c0) as usize;
        let n = self.slopes.len();
        if n != expected {
            return bad(format!(
                "level {} needs {expected} weight-2 slopes, got {n}",
                self.level
            ));
        }
        for (idx, s) in self.slopes.iter().enumerate() {
            if *s < Rational::zero() || *s > Rational::one() {
                return bad(format!("slope {s} at position {} is outside [0, 1]", idx + 1));
            }
            if idx > 0 && self.slopes[idx - 1] > *s {
                return bad(format!("slopes are not sorted at position {}", idx + 1));
            }
            if self.slopes[n - 1 - idx].clone() + s != Rational::one() {
                return bad(format!("slopes are not symmetric about 1/2 at position {}", idx + 1));
            }
        }
        Ok(())
    }

    /// `m_i°(2)` for `i = 0..d_2°`; entry 0 is unused and zero.
    pub fn weight2_multiplicities(&self) -> Vec<u64> {
        let n = self.slopes.len();
        let mut out = vec![0u64; n + 1];
        let mut start = 0;
        while start < n {
            let nu = &self.slopes[start];
            let mut end = start;
            while end < n && self.slopes[end] == *nu {
                end += 1;
            }
            if !nu.is_zero() && !nu.is_one() {
                let run = (end - start) as i64;
                // 1-based run start i_j is start + 1
                for (i, slot) in out.iter_mut().enumerate().take(end + 1).skip(start + 1) {
                    *slot = s_pattern(run - 1, start as i64, i as i64) as u64;
                }
            }
            start = end;
        }
        out
    }
}

/// Which ghost series to build.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub enum Variant {
    #[default]
    Standard,
    /// The weight-2 zero removed from every coefficient.
    Sharp,
    /// `p = 2` only: twisted zeros at every `z^k η8^±`, `k ≥ 2`.
    Modified2(Weight2SlopeData),
    /// `p = 2` only: all twisted zeros placed at `z^2 η8^+`.
    ModifiedAlt2(Weight2SlopeData),
}

impl Variant {
    pub fn name(&self) -> &'static str {
        match self {
            Variant::Standard => "standard",
            Variant::Sharp => "sharp",
            Variant::Modified2(_) => "mod2",
            Variant::ModifiedAlt2(_) => "mod2alt",
        }
    }

    fn data(&self) -> Option<&Weight2SlopeData> {
        match self {
            Variant::Modified2(d) | Variant::ModifiedAlt2(d) => Some(d),
            _ => None,
        }
    }
}

/// The i-th ghost coefficient as a multiset of zeros.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GhostCoefficient {
    pub index: usize,
    pub zeros: BTreeMap<ZeroLocation, u64>,
    pub lambda: u64,
}

/// `Δ_i = Δ_i^+ / Δ_i^-` in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct DeltaSplit {
    pub plus: BTreeMap<ZeroLocation, u64>,
    pub minus: BTreeMap<ZeroLocation, u64>,
}

impl DeltaSplit {
    pub fn lambda_plus(&self) -> u64 {
        self.plus.values().sum()
    }

    pub fn lambda_minus(&self) -> u64 {
        self.minus.values().sum()
    }

    /// Highest and lowest integer zero of `Δ^+`.
    pub fn plus_range(&self) -> Option<(i64, i64)> {
        int_range(&self.plus)
    }

    /// Highest and lowest integer zero of `Δ^-`.
    pub fn minus_range(&self) -> Option<(i64, i64)> {
        int_range(&self.minus)
    }
}

fn int_range(m: &BTreeMap<ZeroLocation, u64>) -> Option<(i64, i64)> {
    let ks: Vec<i64> = m
        .keys()
        .filter_map(|z| match z {
            ZeroLocation::Integer(k) => Some(*k),
            ZeroLocation::Eta(_) => None,
        })
        .collect();
    Some((*ks.iter().max()?, *ks.iter().min()?))
}

#[derive(Debug, Clone)]
struct TwistedPattern {
    weight2: Vec<u64>,
    mu0: i64,
    c0: i64,
    collapse: bool,
}

impl TwistedPattern {
    fn d_circ(&self, k: i64) -> i64 {
        (k - 1) * self.mu0 - self.c0
    }

    /// Twisted zeros of the i-th coefficient.
    fn zeros(&self, i: i64, mut f: impl FnMut(ZeroLocation, u64)) {
        let d2 = self.weight2.len() as i64 - 1;
        let mut total = 0;
        let mut emit = |k: i64, m: u64| {
            if m == 0 {
                return;
            }
            if self.collapse {
                total += m;
            } else {
                f(ZeroLocation::Eta(k), m);
            }
        };
        if 1 <= i && i < d2 {
            emit(2, self.weight2[i as usize]);
        }
        let k = (i + self.c0).div_euclid(self.mu0) + 2;
        if k > 2 {
            let j = self.d_circ(k) - i;
            if 1 <= j && j < d2 {
                emit(k, self.weight2[j as usize]);
            }
        }
        if self.collapse && total > 0 {
            f(ZeroLocation::Eta(2), total);
        }
    }
}

/// Running value `ints + radii·r` of a sum of distances.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LinearVal {
    pub infinite: bool,
    pub ints: i64,
    pub radii: i64,
}

impl LinearVal {
    #[inline]
    fn add(&mut self, mult: i64, d: Dist) {
        match d {
            Dist::Infinite => self.infinite = true,
            Dist::Int(v) => self.ints += mult * v,
            Dist::Radius => self.radii += mult,
        }
    }

    pub fn to_valuation(self, radius: Option<&Rational>) -> Valuation {
        if self.infinite {
            return Valuation::Infinite;
        }
        let mut v = Rational::from_integer(self.ints.into());
        if self.radii != 0 {
            let r = radius.expect("radius hit without a disc");
            v += r * Rational::from_integer(self.radii.into());
        }
        Valuation::Finite(v)
    }
}

/// A ghost series for a prime, a level, a component and a variant.
#[derive(Debug, Clone)]
pub struct GhostSeries {
    dims: LevelPair,
    component: Component,
    variant: Variant,
    mode: DimMode,
    twisted: Option<TwistedPattern>,
}

impl GhostSeries {
    pub fn new(p: Prime, level: u64, component: Component, variant: Variant) -> Result<GhostSeries> {
        if component.p() != p {
            return Err(GhostError::InvalidArgument(format!(
                "component belongs to p = {}, not p = {p}",
                component.p()
            )));
        }
        let dims = LevelPair::new(p, level)?;
        let twisted = match variant.data() {
            None => None,
            Some(data) => {
                if p.get() != 2 {
                    return Err(GhostError::InvalidArgument(
                        "the modified series only exists for p = 2".into(),
                    ));
                }
                if data.level != level {
                    return Err(GhostError::InvalidData(format!(
                        "slope data is for level {}, not {level}",
                        data.level
                    )));
                }
                data.validate()?;
                Some(TwistedPattern {
                    weight2: data.weight2_multiplicities(),
                    mu0: dims.old.mu0,
                    c0: dims.old.c0,
                    collapse: matches!(variant, Variant::ModifiedAlt2(_)),
                })
            }
        };
        Ok(GhostSeries {
            dims,
            component,
            variant,
            mode: DimMode::True,
            twisted,
        })
    }

    /// The standard series on the component containing `k`.
    pub fn for_weight(p: Prime, level: u64, k: i64) -> Result<GhostSeries> {
        GhostSeries::new(p, level, Component::of_weight(p, k)?, Variant::Standard)
    }

    /// Uses `mode` for the dimensions at weight 2.
    pub fn with_mode(mut self, mode: DimMode) -> GhostSeries {
        self.mode = mode;
        self
    }

    pub fn p(&self) -> Prime {
        self.dims.p
    }

    pub fn level(&self) -> u64 {
        self.dims.level()
    }

    pub fn component(&self) -> Component {
        self.component
    }

    pub fn variant(&self) -> &Variant {
        &self.variant
    }

    pub fn mode(&self) -> DimMode {
        self.mode
    }

    pub fn dims(&self) -> &LevelPair {
        &self.dims
    }

    /// Calls `f(k, d_k, d_k^new)` for every integer zero weight on the
    /// component that can affect coefficients `1..=upto`, in increasing `k`.
    pub fn for_each_weight(&self, upto: usize, mut f: impl FnMut(i64, i64, i64)) {
        let step = self.component.step();
        let period = step.lcm(&12) / step;
        let upto = upto as i64;
        let mut k = self.component.first_weight();
        let mut run = 0;
        loop {
            let d = self.dims.d(k, self.mode);
            if k >= 4 && d >= upto {
                run += 1;
                if run >= period {
                    break;
                }
            } else {
                run = 0;
            }
            if !(k == 2 && self.variant == Variant::Sharp) {
                f(k, d, self.dims.d_new(k, self.mode));
            }
            k += step;
        }
    }

    fn twisted_zeros(&self, i: usize, f: impl FnMut(ZeroLocation, u64)) {
        if let Some(t) = &self.twisted {
            t.zeros(i as i64, f);
        }
    }

    /// The i-th ghost coefficient. `g_0 = 1` has no zeros.
    pub fn coefficient(&self, i: usize) -> GhostCoefficient {
        let mut zeros = BTreeMap::new();
        let ii = i as i64;
        if i > 0 {
            self.for_each_weight(i, |k, d, dn| {
                let m = tent(d, dn, ii);
                if m > 0 {
                    zeros.insert(ZeroLocation::Integer(k), m as u64);
                }
            });
            self.twisted_zeros(i, |z, m| {
                *zeros.entry(z).or_insert(0) += m;
            });
        }
        let lambda = zeros.values().sum();
        GhostCoefficient {
            index: i,
            zeros,
            lambda,
        }
    }

    /// `λ(g_i)` for `i = 0..=upto`.
    pub fn lambda_table(&self, upto: usize) -> Vec<u64> {
        let mut out = self.integer_lambda_table(upto);
        for (i, slot) in out.iter_mut().enumerate().skip(1) {
            self.twisted_zeros(i, |_, m| *slot += m);
        }
        out
    }

    /// The integer-weight part of `λ(g_i)` for `i = 0..=upto`, from second
    /// differences of the tent-shaped multiplicity of each weight.
    pub fn integer_lambda_table(&self, upto: usize) -> Vec<u64> {
        let len = upto as i64 + 1;
        let mut second = vec![0i64; upto + 2];
        let mut ramp = |a: i64, c: i64| {
            // (i - a)_+ has second difference 1 at i = a + 1
            let at = (a + 1).max(0);
            if at < len {
                second[at as usize] += c;
            } else if a + 1 < 0 {
                unreachable!()
            }
        };
        self.for_each_weight(upto, |_, d, dn| {
            if dn <= 1 {
                return;
            }
            let (lo, hi) = (dn.div_euclid(2), (dn + 1).div_euclid(2));
            ramp(d, 1);
            ramp(d + lo, -1);
            ramp(d + hi, -1);
            ramp(d + dn, 1);
        });
        let mut out = vec![0u64; upto + 1];
        let (mut slope, mut value) = (0i64, 0i64);
        for i in 0..=upto {
            slope += second[i];
            value += slope;
            out[i] = value as u64;
        }
        out[0] = 0;
        out
    }

    /// The split of `Δ_i = g_i / g_{i-1}` into zeros and poles, for `i ≥ 1`.
    pub fn delta_split(&self, i: usize) -> Result<DeltaSplit> {
        if i == 0 {
            return Err(GhostError::InvalidArgument("Δ_i needs i ≥ 1".into()));
        }
        let ii = i as i64;
        let mut split = DeltaSplit::default();
        self.for_each_weight(i, |k, d, dn| {
            let z = ZeroLocation::Integer(k);
            if d < ii && ii <= d + dn.div_euclid(2) {
                split.plus.insert(z, 1);
            } else if d + (dn - 1).div_euclid(2) + 2 <= ii && ii <= d + dn {
                split.minus.insert(z, 1);
            }
        });
        if self.twisted.is_some() {
            let mut now = BTreeMap::new();
            let mut before = BTreeMap::new();
            self.twisted_zeros(i, |z, m| *now.entry(z).or_insert(0i64) += m as i64);
            self.twisted_zeros(i - 1, |z, m| *before.entry(z).or_insert(0i64) += m as i64);
            for (z, m) in &before {
                *now.entry(*z).or_insert(0) -= m;
            }
            for (z, m) in now {
                if m > 0 {
                    split.plus.insert(z, m as u64);
                } else if m < 0 {
                    split.minus.insert(z, (-m) as u64);
                }
            }
        }
        Ok(split)
    }

    /// Checks that `kappa` is a valid weight for this series.
    pub fn check_weight(&self, kappa: &WeightPoint) -> Result<()> {
        self.component.check_point(kappa)?;
        if let WeightPoint::Integer(k) = kappa {
            if *k % 2 != 0 {
                return Err(GhostError::OddWeight(*k));
            }
        }
        Ok(())
    }

    /// `v_p(g_i(w_kappa))` for a coefficient of this series.
    pub fn eval_val(&self, coeff: &GhostCoefficient, kappa: &WeightPoint) -> Result<Valuation> {
        self.check_weight(kappa)?;
        let p = self.p();
        let mut acc = LinearVal::default();
        for (z, m) in &coeff.zeros {
            acc.add(*m as i64, dist_kind(p, kappa, *z));
        }
        Ok(acc.to_valuation(kappa.radius()))
    }

    /// `v_p(g_i(w_kappa))` for `i = 0..=upto`, as exact linear forms in the
    /// radius of `kappa`.
    pub fn valuation_row(&self, kappa: &WeightPoint, upto: usize) -> Result<Vec<LinearVal>> {
        self.check_weight(kappa)?;
        let p = self.p();
        let mut row = vec![LinearVal::default(); upto + 1];
        let top = upto as i64;
        self.for_each_weight(upto, |k, d, dn| {
            if dn <= 1 || d + 1 > top {
                return;
            }
            let dist = dist_kind(p, kappa, ZeroLocation::Integer(k));
            let end = (d + dn - 1).min(top);
            for i in (d + 1).max(1)..=end {
                row[i as usize].add(tent(d, dn, i), dist);
            }
        });
        if self.twisted.is_some() {
            for (i, slot) in row.iter_mut().enumerate().skip(1) {
                self.twisted_zeros(i, |z, m| slot.add(m as i64, dist_kind(p, kappa, z)));
            }
        }
        Ok(row)
    }

    /// `v_p(g_i(w_kappa))` for `i = 0..=upto`.
    pub fn valuations(&self, kappa: &WeightPoint, upto: usize) -> Result<Vec<Valuation>> {
        let r = kappa.radius();
        Ok(self
            .valuation_row(kappa, upto)?
            .into_iter()
            .map(|v| v.to_valuation(r))
            .collect())
    }
}

/// The i-th coefficient of the series for `(p, N, component, variant)`.
pub fn coefficient(p: Prime, level: u64, component: Component, i: usize, variant: Variant) -> Result<GhostCoefficient> {
    Ok(GhostSeries::new(p, level, component, variant)?.coefficient(i))
}

pub fn delta_split(p: Prime, level: u64, component: Component, i: usize, variant: Variant) -> Result<DeltaSplit> {
    GhostSeries::new(p, level, component, variant)?.delta_split(i)
}

pub fn eval_val(p: Prime, coeff: &GhostCoefficient, kappa: &WeightPoint) -> Result<Valuation> {
    let comp = Component::of_point(p, kappa)?;
    let mut acc = Valuation::zero();
    for (z, m) in &coeff.zeros {
        comp.check_point(&WeightPoint::from(*z))?;
        acc = acc + *m * crate::weights::distance(p, kappa, *z)?;
    }
    Ok(acc)
}

/// `m_i°(k)` for every `k`, as a map from twisted weight to multiplicity.
pub fn modified_mults(data: &Weight2SlopeData, i: usize) -> Result<BTreeMap<ZeroLocation, u64>> {
    data.validate()?;
    let inv = level_invariants(data.level)?;
    let pattern = TwistedPattern {
        weight2: data.weight2_multiplicities(),
        mu0: inv.mu0,
        c0: inv.c0,
        collapse: false,
    };
    let mut out = BTreeMap::new();
    pattern.zeros(i as i64, |z, m| {
        out.insert(z, m);
    });
    Ok(out)
}
