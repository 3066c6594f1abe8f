//! Level invariants of Γ0(N) and dimensions of cusp-form spaces.

use num_integer::Integer;
use serde::Serialize;

use crate::error::{GhostError, Result};
use crate::exactmath::{factorize, kronecker, rat, Prime, Rational};

/// How weight 2 (and lower weights) are treated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum DimMode {
    /// Genuine dimensions: `d_2 = g0`, and 0 below weight 2.
    #[default]
    True,
    /// The weight `k > 2` closed formula, evaluated at every even `k`.
    FormulaExtended,
}

/// Invariants of the modular curve X0(N).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LevelInvariants {
    pub level: u64,
    /// Index of Γ0(N) in SL2(Z).
    pub mu0: i64,
    /// Number of cusps.
    pub c0: i64,
    /// Number of elliptic points of order 2.
    pub mu02: i64,
    /// Number of elliptic points of order 3.
    pub mu03: i64,
    /// Genus.
    pub g0: i64,
}

fn euler_phi(n: u64) -> u64 {
    factorize(n).into_iter().fold(n, |acc, (q, _)| acc / q * (q - 1))
}

pub fn level_invariants(level: u64) -> Result<LevelInvariants> {
    if level == 0 {
        return Err(GhostError::ZeroLevel);
    }
    let factors = factorize(level);
    let mut mu0 = level;
    for &(q, _) in &factors {
        mu0 = mu0 / q * (q + 1);
    }
    let mut c0 = 0u64;
    let mut d = 1u64;
    while d * d <= level {
        if level.is_multiple_of(d) {
            c0 += euler_phi(d.gcd(&(level / d)));
            let e = level / d;
            if e != d {
                c0 += euler_phi(e.gcd(&d));
            }
        }
        d += 1;
    }
    let mu02 = if level.is_multiple_of(4) {
        0
    } else {
        factors
            .iter()
            .map(|&(q, _)| 1 + kronecker(-4, q as i64) as i64)
            .product()
    };
    let mu03 = if level.is_multiple_of(9) {
        0
    } else {
        factors
            .iter()
            .map(|&(q, _)| 1 + kronecker(-3, q as i64) as i64)
            .product()
    };
    let (mu0, c0) = (mu0 as i64, c0 as i64);
    let twelve_g0 = 12 + mu0 - 3 * mu02 - 4 * mu03 - 6 * c0;
    debug_assert_eq!(twelve_g0 % 12, 0);
    Ok(LevelInvariants {
        level,
        mu0,
        c0,
        mu02,
        mu03,
        g0: twelve_g0 / 12,
    })
}

fn check_even(k: i64) -> Result<()> {
    if k % 2 != 0 {
        Err(GhostError::OddWeight(k))
    } else {
        Ok(())
    }
}

impl LevelInvariants {
    /// The closed formula for `dim S_k(Γ0(N))`, valid for even `k > 2` and
    /// used verbatim at every even `k` in formula mode.
    pub fn dim_formula(&self, k: i64) -> i64 {
        (k - 1) * (self.g0 - 1) + (k / 2 - 1) * self.c0 + k.div_euclid(4) * self.mu02 + k.div_euclid(3) * self.mu03
    }

    /// `dim S_k(Γ0(N))` for even `k`, without validation.
    pub fn dim(&self, k: i64, mode: DimMode) -> i64 {
        match mode {
            DimMode::FormulaExtended => self.dim_formula(k),
            DimMode::True if k < 2 => 0,
            DimMode::True if k == 2 => self.g0,
            DimMode::True => self.dim_formula(k),
        }
    }

    /// Bounds `(lo, hi)` on `d_k - k·μ0/12`, valid for every even `k ≥ 4`.
    pub fn excess_bounds(&self) -> (Rational, Rational) {
        let hi = rat(-(self.g0 - 1) - self.c0, 1);
        let lo = &hi - rat(3 * self.mu02, 4) - rat(2 * self.mu03, 3);
        (lo, hi)
    }
}

pub fn dim_cusp(level: u64, k: i64, mode: DimMode) -> Result<i64> {
    check_even(k)?;
    Ok(level_invariants(level)?.dim(k, mode))
}

/// Dimension data for the pair of levels `N` and `Np`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LevelPair {
    pub p: Prime,
    pub old: LevelInvariants,
    pub full: LevelInvariants,
    chi4: i64,
    chi3: i64,
}

impl LevelPair {
    pub fn new(p: Prime, level: u64) -> Result<LevelPair> {
        let old = level_invariants(level)?;
        if level.is_multiple_of(p.get()) {
            return Err(GhostError::LevelNotCoprime { p: p.get(), level });
        }
        let full = level_invariants(level * p.get())?;
        Ok(LevelPair {
            p,
            old,
            full,
            chi4: kronecker(-4, p.as_i64()) as i64,
            chi3: kronecker(-3, p.as_i64()) as i64,
        })
    }

    pub fn level(&self) -> u64 {
        self.old.level
    }

    /// `d_k`, the dimension at level N.
    pub fn d(&self, k: i64, mode: DimMode) -> i64 {
        self.old.dim(k, mode)
    }

    /// Closed formula for the p-new dimension at even `k`.
    pub fn d_new_formula(&self, k: i64) -> i64 {
        let p = self.p.as_i64();
        let inv = &self.old;
        let twelve = (k - 1) * (p - 1) * inv.mu0
            + (12 * k.div_euclid(4) - 3 * (k - 1)) * (self.chi4 - 1) * inv.mu02
            + (12 * k.div_euclid(3) - 4 * (k - 1)) * (self.chi3 - 1) * inv.mu03;
        debug_assert_eq!(twelve % 12, 0);
        twelve / 12
    }

    /// `d_k^new`, the dimension of the p-new subspace at level Np.
    pub fn d_new(&self, k: i64, mode: DimMode) -> i64 {
        match mode {
            DimMode::FormulaExtended => self.d_new_formula(k),
            DimMode::True if k < 2 => 0,
            DimMode::True if k == 2 => self.full.g0 - 2 * self.old.g0,
            DimMode::True => self.d_new_formula(k),
        }
    }

    /// `d_{k,p}`, the dimension at level Np.
    pub fn d_total(&self, k: i64, mode: DimMode) -> i64 {
        self.full.dim(k, mode)
    }

    /// Bounds `(lo, hi)` on `(d_k + d_k^new) - k·p·μ0/12` for even `k ≥ 4`,
    /// together with the upper bound on `d_k - k·μ0/12`.
    pub(crate) fn band_bounds(&self) -> (Rational, Rational) {
        let (_, old_hi) = self.old.excess_bounds();
        let (full_lo, _) = self.full.excess_bounds();
        (old_hi.clone(), full_lo - old_hi)
    }
}

pub fn dim_new(p: Prime, level: u64, k: i64, mode: DimMode) -> Result<i64> {
    check_even(k)?;
    Ok(LevelPair::new(p, level)?.d_new(k, mode))
}

pub fn dim_total(p: Prime, level: u64, k: i64, mode: DimMode) -> Result<i64> {
    check_even(k)?;
    Ok(LevelPair::new(p, level)?.d_total(k, mode))
}

/// `dim S_k(Γ0(N) ∩ Γ1(8), η8^±)` with sign `(-1)^k`, for odd `N` and any
/// integer `k ≥ 2`.
pub fn dim_eta8(level: u64, k: i64) -> Result<i64> {
    if level.is_multiple_of(2) {
        return Err(GhostError::InvalidArgument(format!(
            "level {level} must be odd for the eta8 space"
        )));
    }
    if k < 2 {
        return Err(GhostError::InvalidArgument(format!(
            "eta8 weight must be at least 2, got {k}"
        )));
    }
    let inv = level_invariants(level)?;
    Ok((k - 1) * inv.mu0 - inv.c0)
}
