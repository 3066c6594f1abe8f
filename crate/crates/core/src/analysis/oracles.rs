//! Closed-form expressions for tame level 1 that ghost computations can be
//! checked against.

use crate::error::{GhostError, Result};
use crate::exactmath::{val_factorial, val_i64, Prime, Valuation};

fn vf(p: Prime, n: i64) -> Result<i64> {
    val_factorial(p, n).map(|v| v as i64)
}

fn v(p: Prime, n: i64) -> Result<i64> {
    val_i64(p.get(), n)
        .map(|x| x as i64)
        .ok_or_else(|| GhostError::InvalidArgument("valuation of zero in a closed form".into()))
}

/// `v_p(Q_j(k))` for the factorial expression attached to `p ∈ {2, 3, 5}`.
fn q_term(p: Prime, j: i64, k: i64) -> Result<i64> {
    match p.get() {
        2 => {
            let m = -k;
            Ok(2 * j + vf(p, m + 12 * j + 2)? + vf(p, m + 6 * j)?
                - vf(p, m + 8 * j + 2)?
                - vf(p, m + 8 * j - 2)?
                - v(p, m + 12 * j)?)
        }
        3 => {
            let h = -k / 2;
            Ok(2 * j + vf(p, h + 6 * j + 1)? + vf(p, h + 2 * j)?
                - vf(p, h + 3 * j + 1)?
                - vf(p, h + 3 * j - 1)?
                - v(p, h + 6 * j)?)
        }
        5 => {
            let h = -k / 4;
            Ok(
                (8 * j).div_euclid(5) + vf(p, h + 3 * j - 1)? + vf(p, h + (3 * j).div_euclid(5))?
                    - vf(p, h + j)?
                    - vf(p, h + j - 1)?,
            )
        }
        _ => unreachable!(),
    }
}

/// `v_p(g_i(w_k))` at tame level 1 and a non-positive even weight, from a
/// product of factorial quotients.
pub fn bc_valuation(p: Prime, i: usize, k: i64) -> Result<Valuation> {
    let pv = p.get();
    if !matches!(pv, 2 | 3 | 5) {
        return Err(GhostError::InvalidArgument(format!(
            "factorial expressions exist only for p = 2, 3, 5, not {pv}"
        )));
    }
    if k > 0 || k % 2 != 0 {
        return Err(GhostError::InvalidArgument(format!(
            "weight must be even and non-positive, got {k}"
        )));
    }
    if pv == 5 && k % 4 != 0 {
        return Err(GhostError::InvalidArgument(format!(
            "for p = 5 the weight must be divisible by 4, got {k}"
        )));
    }
    if i == 0 {
        return Err(GhostError::InvalidArgument("index must be at least 1".into()));
    }
    let mut total = 0;
    for j in 1..=i as i64 {
        total += q_term(p, j, k)?;
    }
    Ok(Valuation::int(total))
}

/// The i-th slope at weight 0 for tame level 1 and `p ∈ {3, 5, 7}`.
pub fn loeffler_slope(p: Prime, i: usize) -> Result<i64> {
    if i == 0 {
        return Err(GhostError::InvalidArgument("index must be at least 1".into()));
    }
    let i = i as i64;
    match p.get() {
        3 => Ok(2 * i + 2 * (vf(p, 2 * i)? - vf(p, i)?)),
        5 => Ok(i + 2 * (vf(p, 3 * i)? - vf(p, i)?)),
        7 => Ok(i + vf(p, 2 * i)? + vf(p, 2 * i - 1)? - vf(p, i / 2)? - vf(p, (i - 1) / 2)?),
        q => Err(GhostError::InvalidArgument(format!(
            "no closed form at weight 0 for p = {q}"
        ))),
    }
}

/// Highest and lowest zeros of `Δ_i^+` and `Δ_i^-` for tame level 1 on the
/// component of weights divisible by `p - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ZeroRanges {
    pub hz_plus: i64,
    pub lz_plus: i64,
    pub hz_minus: i64,
    pub lz_minus: i64,
}

pub fn table_zero_ranges(p: u64, i: i64) -> Option<ZeroRanges> {
    match p {
        3 => Some(ZeroRanges {
            hz_plus: 12 * i + 2,
            lz_plus: 6 * i + 4,
            hz_minus: 6 * i - 2,
            lz_minus: 4 * i + 2,
        }),
        5 => Some(ZeroRanges {
            hz_plus: 12 * i - 4,
            lz_plus: 4 * i + 4,
            hz_minus: 4 * i - 4,
            lz_minus: 4 * ((3 * i).div_euclid(5)) + 4,
        }),
        7 => Some(ZeroRanges {
            hz_plus: 12 * i - 6,
            lz_plus: 6 * i.div_euclid(2) + 6,
            hz_minus: 6 * (i - 1).div_euclid(2),
            lz_minus: 6 * (2 * i).div_euclid(7) + 6,
        }),
        _ => None,
    }
}

/// `λ(g_i) - λ(g_{i-1})` for tame level 1 by prime and component residue.
pub fn table_lambda_step(p: u64, residue: i64, i: i64) -> Option<i64> {
    let f = |a: i64, b: i64, c: i64| Some((a * i + b).div_euclid(c));
    match (p, residue) {
        (3, 0) => Some(2 * i),
        (5, 0) => f(8, 0, 5),
        (5, 2) => f(8, 4, 5),
        (7, 0) => f(9, 0, 7),
        (7, 2) => f(9, 6, 7),
        (7, 4) => f(9, 3, 7),
        _ => None,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(n: u64) -> Prime {
        Prime::new(n).unwrap()
    }

    #[test]
    fn bc_examples() {
        assert_eq!(bc_valuation(p(2), 1, 0).unwrap(), Valuation::int(3));
        assert_eq!(bc_valuation(p(5), 1, 0).unwrap(), Valuation::int(1));
        assert!(bc_valuation(p(7), 1, 0).is_err());
        assert!(bc_valuation(p(2), 1, 2).is_err());
        assert!(bc_valuation(p(2), 1, -3).is_err());
        assert!(bc_valuation(p(5), 1, -2).is_err());
        assert!(bc_valuation(p(2), 0, 0).is_err());
    }

    #[test]
    fn loeffler_examples() {
        assert_eq!(loeffler_slope(p(3), 1).unwrap(), 2);
        assert_eq!(loeffler_slope(p(3), 2).unwrap(), 6);
        assert_eq!(loeffler_slope(p(5), 2).unwrap(), 4);
        assert!(loeffler_slope(p(11), 1).is_err());
        assert!(loeffler_slope(p(3), 0).is_err());
    }

    #[test]
    fn table_lookup() {
        assert_eq!(table_lambda_step(5, 2, 1), Some(2));
        assert_eq!(table_lambda_step(3, 0, 4), Some(8));
        assert_eq!(table_lambda_step(11, 0, 1), None);
        assert_eq!(table_zero_ranges(3, 1).unwrap().hz_plus, 14);
        assert_eq!(table_zero_ranges(2, 1), None);
    }
}
