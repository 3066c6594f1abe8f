//! Named verification suites. Each runs a family of exact checks and
//! collects pass/fail results; informational findings go in `notes`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::dimensions::{dim_eta8, level_invariants, DimMode, LevelPair};
use crate::error::{GhostError, Result};
use crate::exactmath::{rat, rat_int, Prime, Rational};
use crate::ghost::{GhostSeries, Variant};
use crate::weights::{Component, Direction, WeightPoint, ZeroLocation};

use super::distribution::distribution_report;
use super::fixtures::{builtin_weight2, compare_fixture, SlopeFixture};
use super::halo::{expected_halo_params, halo_progressions, HaloCheck};
use super::oracles::{bc_valuation, loeffler_slope, table_lambda_step, table_zero_ranges};
use super::slopes::{ghost_slopes, ordinary_dim, truncation_stable, SlopeOptions};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Suite {
    Bk2,
    Bc,
    Loeffler,
    Tables,
    Dims,
    Progressions,
    Halo,
    Hida,
    Asymptotic,
    Mod2,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Bk2,
        Suite::Bc,
        Suite::Loeffler,
        Suite::Tables,
        Suite::Dims,
        Suite::Progressions,
        Suite::Halo,
        Suite::Hida,
        Suite::Asymptotic,
        Suite::Mod2,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Bk2 => "bk2",
            Suite::Bc => "bc",
            Suite::Loeffler => "loeffler",
            Suite::Tables => "tables",
            Suite::Dims => "dims",
            Suite::Progressions => "progressions",
            Suite::Halo => "halo",
            Suite::Hida => "hida",
            Suite::Asymptotic => "asymptotic",
            Suite::Mod2 => "mod2",
        }
    }

    /// Default for `max`, and what it bounds.
    pub fn default_max(self) -> usize {
        match self {
            Suite::Bk2 => 1000,     // coefficient index
            Suite::Bc => 50,        // coefficient index
            Suite::Loeffler => 200, // slope count
            Suite::Tables => 500,   // coefficient index
            Suite::Dims => 200,     // level
            Suite::Progressions => 1000,
            Suite::Halo => 200,        // slope index
            Suite::Hida => 30,         // level
            Suite::Asymptotic => 3000, // weight
            Suite::Mod2 => 40,         // slope count
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = GhostError;

    fn from_str(s: &str) -> Result<Suite> {
        Suite::ALL
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| GhostError::Parse(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub checks: Vec<Check>,
    pub notes: Vec<String>,
}

impl SuiteReport {
    fn new(suite: Suite) -> SuiteReport {
        SuiteReport {
            suite: suite.name().to_string(),
            checks: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    fn push(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.into(),
            passed,
            detail: detail.into(),
        });
    }

    /// Records a check over many cases: passes iff `first_bad` is `None`.
    fn all(&mut self, name: impl Into<String>, cases: usize, first_bad: Option<String>) {
        match first_bad {
            None => self.push(name, true, format!("{cases} cases")),
            Some(bad) => self.push(name, false, bad),
        }
    }
}

pub fn run_suite(suite: Suite, max: Option<usize>) -> Result<SuiteReport> {
    let max = max.unwrap_or_else(|| suite.default_max());
    if max == 0 {
        return Err(GhostError::InvalidArgument("max must be at least 1".into()));
    }
    let mut rep = SuiteReport::new(suite);
    match suite {
        Suite::Bk2 => bk2(&mut rep, max)?,
        Suite::Bc => bc(&mut rep, max)?,
        Suite::Loeffler => loeffler(&mut rep, max)?,
        Suite::Tables => tables(&mut rep, max)?,
        Suite::Dims => dims(&mut rep, max as u64)?,
        Suite::Progressions => progressions(&mut rep, max)?,
        Suite::Halo => halo(&mut rep, max)?,
        Suite::Hida => hida(&mut rep, max as u64)?,
        Suite::Asymptotic => asymptotic(&mut rep, max as i64)?,
        Suite::Mod2 => mod2(&mut rep, max)?,
    }
    Ok(rep)
}

fn prime(p: u64) -> Prime {
    Prime::new(p).expect("suite primes are prime")
}

fn series(p: u64, level: u64, residue: i64, variant: Variant) -> Result<GhostSeries> {
    let q = prime(p);
    GhostSeries::new(q, level, Component::new(q, residue)?, variant)
}

fn int_keys(m: &std::collections::BTreeMap<ZeroLocation, u64>) -> BTreeSet<i64> {
    m.keys()
        .filter_map(|z| match z {
            ZeroLocation::Integer(k) => Some(*k),
            ZeroLocation::Eta(_) => None,
        })
        .collect()
}

fn evens(lo: i64, hi: i64) -> BTreeSet<i64> {
    (lo..=hi).filter(|k| k % 2 == 0).collect()
}

/// Certified slopes that also survive doubling the window.
fn stable_slopes(s: &GhostSeries, kappa: &WeightPoint, n: usize) -> Result<std::result::Result<Vec<Rational>, String>> {
    let r = ghost_slopes(s, kappa, n, SlopeOptions::default())?;
    if !r.complete {
        return Ok(Err(format!(
            "only {} of {n} slopes certified at {kappa}",
            r.certified_count
        )));
    }
    if !truncation_stable(s, kappa, &r)? {
        return Ok(Err(format!("slopes at {kappa} moved when the window doubled")));
    }
    Ok(Ok(r.slopes))
}

fn show(r: &std::result::Result<Vec<Rational>, String>) -> String {
    match r {
        Ok(v) => v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(", "),
        Err(e) => e.clone(),
    }
}

fn bk2(rep: &mut SuiteReport, max: usize) -> Result<()> {
    let s = series(2, 1, 0, Variant::Standard)?;
    let table = s.lambda_table(max);
    let bad = (0..=max)
        .find(|&i| table[i] != (i * (i + 1) / 2) as u64)
        .map(|i| format!("λ(g_{i}) = {}", table[i]));
    rep.all("lambda is i(i+1)/2", max + 1, bad);

    let half = (max / 2).max(1);
    let mut bad = None;
    for i in 1..=half as i64 {
        let mut want = evens(6 * i + 8, 12 * i - 2);
        want.insert(12 * i + 2);
        let got = int_keys(&s.coefficient(i as usize).zeros);
        if got != want {
            bad = Some(format!("g_{i} zeros {got:?}"));
            break;
        }
    }
    rep.all("zero sets", half, bad);

    let mut bad = None;
    for i in 1..=half as i64 {
        let split = s.delta_split(i as usize)?;
        let mut plus = evens(8 * i + 4, 12 * i - 2);
        plus.insert(12 * i + 2);
        let minus = evens(6 * i + 2, 8 * i - 2);
        if int_keys(&split.plus) != plus || int_keys(&split.minus) != minus {
            bad = Some(format!("Δ_{i} split {:?} / {:?}", split.plus, split.minus));
            break;
        }
    }
    rep.all("delta zero sets", half, bad);

    for v in [rat(1, 2), rat(3, 2), rat(5, 2)] {
        let kappa = WeightPoint::disc(ZeroLocation::Integer(0), v.clone(), Direction::Ramified)?;
        let want: Vec<Rational> = (1..=50).map(|j| &v * rat_int(j)).collect();
        match stable_slopes(&s, &kappa, 50)? {
            Ok(got) => {
                let ok = got == want;
                rep.push(
                    format!("boundary slopes j·{v}"),
                    ok,
                    if ok { "50 slopes".into() } else { show(&Ok(got)) },
                );
            }
            Err(e) => rep.push(format!("boundary slopes j·{v}"), false, e),
        }
    }
    Ok(())
}

fn bc(rep: &mut SuiteReport, max: usize) -> Result<()> {
    for p in [2u64, 3, 5] {
        let s = series(p, 1, 0, Variant::Standard)?;
        let mut bad = None;
        let mut cases = 0;
        'outer: for k in (0..=50).step_by(2).map(|k: i64| -k) {
            if p == 5 && k % 4 != 0 {
                continue;
            }
            let row = s.valuations(&WeightPoint::Integer(k), max)?;
            for (i, got) in row.iter().enumerate().skip(1) {
                cases += 1;
                let want = bc_valuation(prime(p), i, k)?;
                if *got != want {
                    bad = Some(format!("i={i} k={k}: ghost {got}, closed form {want}"));
                    break 'outer;
                }
            }
        }
        rep.all(format!("factorial closed form p={p}"), cases, bad);
    }
    Ok(())
}

fn loeffler(rep: &mut SuiteReport, max: usize) -> Result<()> {
    for p in [3u64, 5, 7] {
        let s = series(p, 1, 0, Variant::Standard)?;
        let name = format!("weight 0 slopes p={p}");
        match stable_slopes(&s, &WeightPoint::Integer(0), max)? {
            Ok(got) => {
                let mut bad = None;
                for (i, g) in got.iter().enumerate() {
                    let want = rat_int(loeffler_slope(prime(p), i + 1)?);
                    if *g != want {
                        bad = Some(format!("s_{} = {g}, closed form {want}", i + 1));
                        break;
                    }
                }
                rep.all(name, max, bad);
            }
            Err(e) => rep.push(name, false, e),
        }
    }
    Ok(())
}

fn tables(rep: &mut SuiteReport, max: usize) -> Result<()> {
    for p in [3u64, 5, 7] {
        let s = series(p, 1, 0, Variant::Standard)?;
        let mut bad = None;
        for i in 1..=max {
            let t = table_zero_ranges(p, i as i64).expect("listed prime");
            let split = s.delta_split(i)?;
            let want_plus = (t.hz_plus >= t.lz_plus).then_some((t.hz_plus, t.lz_plus));
            let want_minus = (t.hz_minus >= t.lz_minus).then_some((t.hz_minus, t.lz_minus));
            if split.plus_range() != want_plus || split.minus_range() != want_minus {
                bad = Some(format!(
                    "i={i}: Δ+ {:?} vs {want_plus:?}, Δ- {:?} vs {want_minus:?}",
                    split.plus_range(),
                    split.minus_range()
                ));
                break;
            }
        }
        rep.all(format!("highest and lowest Δ zeros p={p}"), max, bad);
    }
    for (p, r) in [(3u64, 0i64), (5, 0), (5, 2), (7, 0), (7, 2), (7, 4)] {
        let s = series(p, 1, r, Variant::Standard)?;
        let table = s.lambda_table(max);
        let bad = (1..=max).find_map(|i| {
            let got = table[i] as i64 - table[i - 1] as i64;
            let want = table_lambda_step(p, r, i as i64).expect("listed component");
            (got != want).then(|| format!("i={i}: {got} vs {want}"))
        });
        rep.all(format!("lambda steps p={p} k≡{r}"), max, bad);
    }
    Ok(())
}

fn dims(rep: &mut SuiteReport, max_level: u64) -> Result<()> {
    const KMAX: i64 = 200;
    let primes = [2u64, 3, 5, 7, 11, 13];
    let mode = DimMode::True;

    let bad = (2..=max_level).find_map(|n| {
        let inv = level_invariants(n).ok()?;
        (2 * inv.mu0 - 6 * inv.mu02 - 8 * inv.mu03 < 0).then(|| format!("N={n}"))
    });
    rep.all("μ0/6 ≥ μ2/2 + 2μ3/3 for N > 1", max_level as usize - 1, bad);

    let mut bad = None;
    for n in 1..=max_level {
        let inv = level_invariants(n)?;
        if let Some(k) = (4..=KMAX)
            .step_by(2)
            .find(|&k| inv.dim(k + 12, mode) != inv.dim(k, mode) + inv.mu0)
        {
            bad = Some(format!("N={n} k={k}"));
            break;
        }
        if n > 1 {
            if let Some(k) = (2..=KMAX).step_by(2).find(|&k| inv.dim(k + 2, mode) < inv.dim(k, mode)) {
                bad = Some(format!("N={n}: d_k decreases after k={k}"));
                break;
            }
        }
    }
    rep.all(
        "d_{k+12} = d_k + μ0, and d_k increasing for N > 1",
        max_level as usize,
        bad,
    );

    let mut cases = 0;
    let mut total_bad = None;
    let mut inc_bad = None;
    let mut new_bad = None;
    let mut w2_bad = None;
    let mut shift_bad = None;
    for n in 1..=max_level {
        let inv = level_invariants(n)?;
        for &p in &primes {
            if n % p == 0 {
                continue;
            }
            cases += 1;
            let q = prime(p);
            let lp = LevelPair::new(q, n)?;
            let pi = p as i64;
            if total_bad.is_none() {
                total_bad = (2..=KMAX)
                    .step_by(2)
                    .find(|&k| lp.d_total(k, mode) != 2 * lp.d(k, mode) + lp.d_new(k, mode))
                    .map(|k| format!("p={p} N={n} k={k}"));
            }
            if n == 1 && p > 3 && inc_bad.is_none() {
                inc_bad = (2..=KMAX).step_by(2).find_map(|k| {
                    (0..20)
                        .find(|&j| lp.d(k + (j + 1) * (pi - 1), mode) < lp.d(k + j * (pi - 1), mode))
                        .map(|j| format!("p={p} k={k} n={j}"))
                });
            }
            if (n > 1 || p > 3) && new_bad.is_none() {
                let phi = if p == 2 { 2 } else { pi - 1 };
                new_bad = (2..=KMAX)
                    .step_by(2)
                    .find(|&k| lp.d_new(k, mode) > lp.d_new(k + phi, mode))
                    .map(|k| format!("p={p} N={n} k={k}"));
            }
            let base = lp.d(2, mode) + lp.d_new(2, mode);
            if w2_bad.is_none() {
                let step = if p == 2 { 2 } else { pi - 1 };
                let eq1 = lp.d(2 + step, mode) == base;
                let ge = (1..=20).all(|j| lp.d(2 + j * step, mode) >= base);
                let want_eq = p != 2 || matches!(n, 1 | 3 | 7);
                if p == 2 && n % 2 == 1 {
                    let lhs = 12 * (lp.d(4, mode) - base);
                    if lhs != inv.mu0 + 3 * inv.mu02 - 4 * inv.mu03 {
                        w2_bad = Some(format!("p=2 N={n}: 12(d_4 - d_2 - d_2new) = {lhs}"));
                    }
                }
                if (p != 2 || n % 2 == 1) && (!ge || eq1 != want_eq) {
                    w2_bad = Some(format!(
                        "p={p} N={n}: d_(2+step) = {}, d_2 + d_2new = {base}",
                        lp.d(2 + step, mode)
                    ));
                }
            }
            if p >= 3 && shift_bad.is_none() {
                'k: for k in (4..=KMAX).step_by(2) {
                    for j in 0..=12i64 {
                        if p == 3 && j % 3 != 0 {
                            continue;
                        }
                        let k2 = k + j * (pi - 1);
                        let lhs = lp.d_total(k2, mode) - lp.d_total(k, mode);
                        if 12 * lhs != j * (pi - 1) * (pi + 1) * inv.mu0 {
                            shift_bad = Some(format!("d_(k,p) shift: p={p} N={n} k={k} j={j}"));
                            break 'k;
                        }
                        let half = |k: i64| lp.d(k, mode) + lp.d_new(k, mode).div_euclid(2);
                        if 24 * (half(k2) - half(k)) != j * (pi - 1) * (pi + 1) * inv.mu0 {
                            shift_bad = Some(format!("d + ⌊d_new/2⌋ shift: p={p} N={n} k={k} j={j}"));
                            break 'k;
                        }
                    }
                }
            }
        }
    }
    rep.all("d_(k,p) = 2d_k + d_k^new", cases, total_bad);
    rep.all("level 1: d_(k+n(p-1)) increasing for p > 3", cases, inc_bad);
    rep.all("d_k^new ≤ d_(k+φ(2p))^new", cases, new_bad);
    rep.all("weight-2 inequality with equality at the first step", cases, w2_bad);
    rep.all("shifts by multiples of p - 1", cases, shift_bad);

    let mut bad = None;
    let mut odd = 0;
    for n in (1..=max_level).step_by(2) {
        odd += 1;
        let inv = level_invariants(n)?;
        let inv2 = level_invariants(2 * n)?;
        let e2 = dim_eta8(n, 2)?;
        let old = inv2.g0 - inv.g0;
        if 6 * old != inv.mu0 + 2 * inv.mu03 - 3 * inv.c0 {
            bad = Some(format!("N={n}: g0(2N) - g0(N) = {old}"));
            break;
        }
        let lhs = 3 * (e2 - 2 * old);
        if lhs != 2 * (inv.mu0 - inv.mu03) || (lhs > 0) != (n > 1) {
            bad = Some(format!("N={n}: twisted weight-2 excess {lhs}/3"));
            break;
        }
        if let Some(k) = (3..=60).find(|&k| dim_eta8(n, k).ok() != Some(inv.mu0 + dim_eta8(n, k - 1).unwrap_or(-1))) {
            bad = Some(format!("N={n}: twisted dimension step at k={k}"));
            break;
        }
    }
    rep.all("conductor-8 character dimensions", odd, bad);
    Ok(())
}

/// `(failures, first failing index)` for the λ(Δ^±) shift by `C` over all
/// components of `(p, N)`.
fn periodicity_failures(p: u64, level: u64, max: usize, mode: DimMode) -> Result<(usize, Option<String>)> {
    let inv = level_invariants(level)?;
    let pi = p as i64;
    let c = (pi * (pi - 1) * (pi + 1) * inv.mu0 / 24) as usize;
    let (dp, dm) = ((pi * (pi - 1) / 2) as u64, ((pi - 1) / 2) as u64);
    let mut fails = 0;
    let mut first = None;
    for r in (0..pi - 1).step_by(2) {
        let s = series(p, level, r, Variant::Standard)?.with_mode(mode);
        let splits: Vec<(u64, u64)> = (1..=max + c)
            .map(|i| s.delta_split(i).map(|d| (d.lambda_plus(), d.lambda_minus())))
            .collect::<Result<_>>()?;
        for i in 1..=max {
            let (a, b) = (splits[i - 1], splits[i + c - 1]);
            if b.0 != a.0 + dp || b.1 != a.1 + dm {
                fails += 1;
                first.get_or_insert_with(|| format!("p={p} N={level} k≡{r} i={i}: {a:?} → {b:?}"));
            }
        }
    }
    Ok((fails, first))
}

fn progressions(rep: &mut SuiteReport, max: usize) -> Result<()> {
    for p in [3u64, 5, 7] {
        for n in [1u64, 2, 5] {
            if n % p == 0 {
                continue;
            }
            let (fails, first) = periodicity_failures(p, n, max, DimMode::FormulaExtended)?;
            rep.all(
                format!("λ(Δ±) shift p={p} N={n}"),
                max,
                first.map(|f| format!("{fails} failures, first {f}")),
            );
            let (tf, tfirst) = periodicity_failures(p, n, max, DimMode::True)?;
            if tf > 0 {
                rep.notes.push(format!(
                    "p={p} N={n}: with the true weight-2 dimensions the shift fails {tf} times, first {}",
                    tfirst.unwrap_or_default()
                ));
            }
        }
    }

    // removing the weight-2 zero leaves every polygon unchanged
    let mut bad = None;
    let mut cases = 0;
    for (p, n) in [(5u64, 7u64), (7, 5), (3, 13), (5, 11)] {
        let step = (p - 1) as i64;
        let std = series(p, n, 2 % step, Variant::Standard)?;
        let sharp = series(p, n, 2 % step, Variant::Sharp)?;
        let weights = [
            WeightPoint::Integer(2),
            WeightPoint::Integer(2 + step),
            WeightPoint::Integer(2 + 4 * step),
            WeightPoint::disc(ZeroLocation::Integer(2), rat(1, 2), Direction::Ramified)?,
            WeightPoint::disc(ZeroLocation::Integer(2 + step), rat(3, 2), Direction::Ramified)?,
        ];
        for kappa in &weights {
            cases += 1;
            let a = stable_slopes(&std, kappa, 30)?;
            let b = stable_slopes(&sharp, kappa, 30)?;
            if a != b || a.is_err() {
                bad = Some(format!("p={p} N={n} at {kappa}: {} vs {}", show(&a), show(&b)));
                break;
            }
        }
    }
    rep.all("weight-2 zero removal keeps polygons", cases, bad);
    Ok(())
}

fn halo(rep: &mut SuiteReport, max: usize) -> Result<()> {
    type Case<'a> = (u64, u64, &'a [(i64, i64)]);
    let cases: [Case; 4] = [
        (3, 1, &[(1, 2), (3, 2), (5, 2)]),
        (5, 1, &[(1, 2), (3, 2), (5, 2)]),
        (3, 2, &[(1, 2), (3, 2), (5, 2)]),
        (2, 1, &[(1, 2), (3, 2), (5, 2), (7, 2)]),
    ];
    for (p, n, alphas) in cases {
        let variant = if p == 2 { Variant::Standard } else { Variant::Sharp };
        let s = series(p, n, 0, variant)?;
        for &(a, b) in alphas {
            let alpha = rat(a, b);
            let params = expected_halo_params(prime(p), n, &alpha)?;
            let kappa = WeightPoint::disc(ZeroLocation::Integer(0), alpha.clone(), Direction::Ramified)?;
            let name = format!("p={p} N={n} α={alpha}: C={} diff={}", params.count, params.diff);
            let n_slopes = (max + params.count).max(3 * params.count + 1);
            let slopes = match stable_slopes(&s, &kappa, n_slopes)? {
                Ok(sl) => sl,
                Err(e) => {
                    rep.push(name, false, e);
                    continue;
                }
            };
            match halo_progressions(&slopes, &params, params.count)? {
                HaloCheck::Success { .. } => rep.push(name, true, format!("i ≤ {max}")),
                HaloCheck::Violation { index, got, .. } => {
                    rep.push(name, false, format!("s_(i+C) - s_i = {got} at i={index}"))
                }
            }
            if let HaloCheck::Violation { index, .. } = halo_progressions(&slopes, &params, 0)? {
                rep.notes.push(format!(
                    "p={p} N={n} α={alpha}: exceptional slopes present, first difference off at i={index}"
                ));
            }
        }
    }

    // on the boundary annulus slopes scale with the radius
    for (p, n) in [(3u64, 1u64), (5, 1), (3, 2)] {
        let s = series(p, n, 0, Variant::Sharp)?;
        let at = |v: Rational| -> Result<std::result::Result<Vec<Rational>, String>> {
            let kappa = WeightPoint::disc(ZeroLocation::Integer(0), v, Direction::Ramified)?;
            stable_slopes(&s, &kappa, 60)
        };
        let (v, w) = (rat(1, 2), rat(1, 3));
        let name = format!("p={p} N={n}: slopes scale with the radius");
        match (at(v.clone())?, at(w.clone())?) {
            (Ok(a), Ok(b)) => {
                let ok = a.iter().zip(&b).all(|(x, y)| x * &w == y * &v);
                rep.push(name, ok, "radii 1/2 and 1/3");
            }
            (Err(e), _) | (_, Err(e)) => rep.push(name, false, e),
        }
    }
    Ok(())
}

fn hida(rep: &mut SuiteReport, max_level: u64) -> Result<()> {
    for (n, want) in [(1u64, 0usize), (3, 1), (7, 3), (23, 5)] {
        let got = ordinary_dim(&series(2, n, 0, Variant::Standard)?);
        rep.push(
            format!("p=2 N={n} ordinary dimension"),
            got == want,
            format!("{got}, expected {want}"),
        );
    }
    let mut bad = None;
    let mut cases = 0;
    'all: for n in 1..=max_level {
        for p in [2u64, 3, 5, 7] {
            if n % p == 0 {
                continue;
            }
            let step = if p == 2 { 2 } else { p as i64 - 1 };
            for r in (0..step).step_by(2) {
                let s = series(p, n, r, Variant::Standard)?;
                let od = ordinary_dim(&s);
                let lp = s.dims();
                if p != 2 {
                    let lows: Vec<i64> = (4..p as i64).step_by(2).filter(|k| k % step == r).collect();
                    if let Some(k) = lows.iter().find(|&&k| (od as i64) < lp.d(k, DimMode::True)) {
                        bad = Some(format!("p={p} N={n}: ordinary dimension {od} below d_{k}"));
                        break 'all;
                    }
                    if r == 2 % step && (od as i64) < lp.d(2, DimMode::True) + lp.d_new(2, DimMode::True) {
                        bad = Some(format!("p={p} N={n}: ordinary dimension {od} below d_2 + d_2new"));
                        break 'all;
                    }
                }
                let k0 = s.component().first_weight();
                let weights = [
                    WeightPoint::Integer(k0),
                    WeightPoint::Integer(k0 + 3 * step),
                    WeightPoint::disc(ZeroLocation::Integer(k0), rat(1, 2), Direction::Ramified)?,
                ];
                for kappa in &weights {
                    cases += 1;
                    match stable_slopes(&s, kappa, od + 1)? {
                        Ok(sl) => {
                            let zeros = sl.iter().filter(|x| **x == rat_int(0)).count();
                            if zeros != od {
                                bad = Some(format!(
                                    "p={p} N={n} at {kappa}: {zeros} zero slopes, ordinary dimension {od}"
                                ));
                                break 'all;
                            }
                        }
                        Err(e) => {
                            bad = Some(e);
                            break 'all;
                        }
                    }
                }
            }
        }
    }
    rep.all("slope-0 multiplicity equals the ordinary dimension", cases, bad);
    if let Some(data) = builtin_weight2(23) {
        let od = ordinary_dim(&series(2, 23, 0, Variant::Modified2(data))?);
        rep.notes
            .push(format!("p=2 N=23 modified series ordinary dimension {od}"));
    }
    Ok(())
}

fn asymptotic(rep: &mut SuiteReport, kmax: i64) -> Result<()> {
    let eps = rat(1, 20);
    for p in [2u64, 3, 5] {
        let s = series(p, 1, 0, Variant::Standard)?;
        let step = if p == 2 { 2 } else { p as i64 - 1 };
        let mut worst: f64 = 0.0;
        let mut bad = None;
        let mut cases = 0;
        let mut k = 500;
        while k <= kmax {
            let k0 = k - k.rem_euclid(step);
            cases += 1;
            let r = distribution_report(&s, k0, &eps)?;
            let lk = (k0 as f64).ln();
            let dev = (r.last_old.to_f64().unwrap_or(f64::NAN) - k0 as f64 / (p as f64 + 1.0)).abs();
            worst = worst.max(dev / lk);
            let mid_ok = r
                .middle
                .as_deref()
                .and_then(|m| crate::exactmath::parse_rational(m).ok())
                .is_some_and(|m| (m.to_f64().unwrap_or(f64::NAN) - k0 as f64 / 2.0).abs() <= 25.0 * lk);
            let d = r.d_k as usize;
            let e = (r.d_k + r.d_k_new) as usize;
            let breaks = d >= 1 && r.slopes[d - 1] < r.slopes[d] && r.slopes[e - 1] < r.slopes[e];
            if !r.certified || dev > 25.0 * lk || !mid_ok || !breaks {
                bad = Some(format!(
                    "p={p} k={k0}: s_d = {}, middle {:?}, breaks {breaks}",
                    r.last_old, r.middle
                ));
                break;
            }
            k += 250;
        }
        rep.all(
            format!("p={p}: s_(d_k) near k/(p+1), flat middle band near k/2"),
            cases,
            bad,
        );
        rep.notes
            .push(format!("p={p}: largest |s_(d_k) - k/(p+1)| / log k = {worst:.3}"));
    }
    let s = series(5, 1, 0, Variant::Standard)?;
    let r = distribution_report(&s, 4000, &eps)?;
    let mass_ok = (r.band_fraction - 2.0 / 3.0).abs() <= 0.03;
    rep.push("p=5 k=4000: mass near 1/2", mass_ok, format!("{:.4}", r.band_fraction));
    rep.push(
        "p=5 k=4000: Lévy distance to the limit",
        r.levy_distance <= 0.05,
        format!("{:.5}", r.levy_distance),
    );
    rep.notes.push(format!(
        "p=5 k=4000: Kolmogorov distance {:.4}; the middle band sits at (k-2)/(2(k-1)), just below the atom at 1/2",
        r.cdf_distance
    ));
    Ok(())
}

/// The weight-2 multiplicity patterns for the bundled levels.
const WEIGHT2_PATTERNS: [(u64, &[u64]); 3] = [
    (3, &[1, 0]),
    (7, &[0, 1, 2, 1, 0, 0]),
    (23, &[0, 0, 0, 1, 2, 3, 2, 1, 0, 1, 2, 1, 0, 1, 2, 3, 2, 1, 0, 0, 0, 0]),
];

fn mod2(rep: &mut SuiteReport, max: usize) -> Result<()> {
    for (n, want) in WEIGHT2_PATTERNS {
        let data = builtin_weight2(n).expect("bundled level");
        let got = data.weight2_multiplicities();
        rep.push(
            format!("N={n} weight-2 pattern"),
            got[1..] == *want,
            format!("{:?}", &got[1..]),
        );
    }

    let zeros = |n: u64, i: usize| -> Result<Vec<(ZeroLocation, u64)>> {
        Ok(series(2, n, 0, Variant::Standard)?
            .coefficient(i)
            .zeros
            .into_iter()
            .collect())
    };
    use ZeroLocation::Integer as I;
    let n3 = zeros(3, 1)?.is_empty() && zeros(3, 2)? == [(I(8), 1)] && zeros(3, 3)? == [(I(8), 1), (I(10), 1)];
    rep.push("N=3 leading coefficients", n3, "1, w - w_8, (w - w_8)(w - w_10)");
    let n7 = zeros(7, 1)?.is_empty() && zeros(7, 2)? == [(I(4), 1)] && zeros(7, 3)?.is_empty();
    rep.push("N=7 leading coefficients", n7, "1, w - w_4, 1");
    let n23 = (1..=5).all(|i| zeros(23, i).is_ok_and(|z| z.is_empty()))
        && (6..=20).all(|i| zeros(23, i).is_ok_and(|z| !z.is_empty()));
    rep.push(
        "N=23 leading coefficients",
        n23,
        "five trivial, none trivial from 6 through 20",
    );

    let fixture = SlopeFixture::from_json(include_str!("../../fixtures/eta2_n3_mod2.json"))?;
    let diff = compare_fixture(&fixture, Variant::Modified2(builtin_weight2(3).expect("bundled")))?;
    let got: Vec<String> = diff.got.iter().map(|r| r.to_string()).collect();
    rep.push("N=3 twisted weight-2 slopes", diff.matched, got.join(", "));

    let mut bad = None;
    let mut cases = 0;
    for n in [3u64, 7, 23] {
        let data = builtin_weight2(n).expect("bundled level");
        let a = series(2, n, 0, Variant::Modified2(data.clone()))?;
        let b = series(2, n, 0, Variant::ModifiedAlt2(data))?;
        let far = [
            WeightPoint::Integer(0),
            WeightPoint::Integer(4),
            WeightPoint::Integer(26),
            WeightPoint::disc(ZeroLocation::Integer(0), rat(3, 2), Direction::Ramified)?,
            WeightPoint::disc(ZeroLocation::Integer(0), rat(7, 2), Direction::Ramified)?,
        ];
        for kappa in &far {
            cases += 1;
            let (x, y) = (stable_slopes(&a, kappa, max)?, stable_slopes(&b, kappa, max)?);
            if x != y || x.is_err() {
                bad = Some(format!("N={n} at {kappa}: {} vs {}", show(&x), show(&y)));
                break;
            }
        }
        let near = [
            WeightPoint::Eta(2),
            WeightPoint::Eta(5),
            WeightPoint::disc(ZeroLocation::Eta(2), rat(7, 2), Direction::Ramified)?,
            WeightPoint::disc(ZeroLocation::Eta(3), rat(5, 2), Direction::Ramified)?,
        ];
        for kappa in &near {
            let (x, y) = (stable_slopes(&a, kappa, max)?, stable_slopes(&b, kappa, max)?);
            if x != y {
                rep.notes
                    .push(format!("N={n} at {kappa}: the two modified series differ"));
            }
        }
    }
    rep.all("both modifications agree where v(w) > 1", cases, bad);
    Ok(())
}
