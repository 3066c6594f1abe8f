use num_bigint::BigInt;
use proptest::prelude::*;

use ghost_core::analysis::{ghost_slopes, ordinary_dim, truncation_stable, SlopeOptions};
use ghost_core::newton::{delta_slopes, lower_hull};
use ghost_core::weights::distance;
use ghost_core::{
    kronecker, level_invariants, rat, rat_int, val_factorial, val_int, Component, DimMode, Direction, GhostSeries,
    LevelPair, PolygonPoint, Prime, Rational, Valuation, Variant, WeightPoint, ZeroLocation,
};

const PRIMES: [u64; 4] = [2, 3, 5, 7];

fn prime() -> impl Strategy<Value = Prime> {
    prop::sample::select(PRIMES.to_vec()).prop_map(|p| Prime::new(p).unwrap())
}

fn series(p: Prime, level: u64, residue: i64) -> GhostSeries {
    GhostSeries::new(p, level, Component::new(p, residue).unwrap(), Variant::Standard).unwrap()
}

fn val(p: Prime, n: i64) -> Valuation {
    val_int(p, &BigInt::from(n))
}

fn slopes(s: &GhostSeries, kappa: &WeightPoint, n: usize) -> Vec<Rational> {
    let rep = ghost_slopes(s, kappa, n, SlopeOptions::default()).unwrap();
    assert!(rep.complete, "{kappa}: {rep:?}");
    rep.slopes
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn valuation_is_additive(p in prime(), a in -10_000i64..10_000, b in -10_000i64..10_000) {
        prop_assert_eq!(val(p, a * b), val(p, a) + val(p, b));
    }

    #[test]
    fn factorial_valuation_matches_sum(p in prime(), n in 0i64..3000) {
        let direct: i64 = (1..=n).map(|m| {
            let mut m = m;
            let mut e = 0;
            while m % p.as_i64() == 0 { m /= p.as_i64(); e += 1; }
            e
        }).sum();
        prop_assert_eq!(val_factorial(p, n).unwrap() as i64, direct);
    }

    #[test]
    fn kronecker_is_multiplicative(a in -500i64..500, b in -500i64..500, n in 1i64..500) {
        prop_assert_eq!(kronecker(a * b, n), kronecker(a, n) * kronecker(b, n));
    }

    #[test]
    fn kronecker_is_euler_criterion(a in -1000i64..1000, q in prop::sample::select(vec![3i64, 5, 7, 11, 13, 97, 101])) {
        let mut pow = 1i64;
        let base = a.rem_euclid(q);
        for _ in 0..(q - 1) / 2 {
            pow = pow * base % q;
        }
        let euler = if pow == q - 1 { -1 } else { pow as i8 };
        prop_assert_eq!(kronecker(a, q), euler);
    }

    #[test]
    fn dimensions_are_periodic(level in 1u64..150, k in 2i64..150) {
        let k = 2 * (k / 2) + 2;
        let inv = level_invariants(level).unwrap();
        prop_assert_eq!(inv.dim(k + 12, DimMode::True), inv.dim(k, DimMode::True) + inv.mu0);
        prop_assert_eq!(inv.dim_formula(k + 12), inv.dim_formula(k) + inv.mu0);
    }

    #[test]
    fn total_dimension_splits(p in prime(), level in 1u64..80, k in 1i64..100) {
        prop_assume!(level % p.get() != 0);
        let k = 2 * k;
        let lp = LevelPair::new(p, level).unwrap();
        for mode in [DimMode::True, DimMode::FormulaExtended] {
            prop_assert_eq!(lp.d_total(k, mode), 2 * lp.d(k, mode) + lp.d_new(k, mode));
        }
    }

    #[test]
    fn integer_distances_are_ultrametric(p in prime(), a in -200i64..200, b in -200i64..200, c in -200i64..200) {
        let step = if p.get() == 2 { 2 } else { p.as_i64() - 1 };
        let (a, b, c) = (a * step, b * step, c * step);
        let d = |x: i64, y: i64| distance(p, &WeightPoint::Integer(x), ZeroLocation::Integer(y)).unwrap();
        prop_assert!(d(a, c) >= d(a, b).min(d(b, c)));
        prop_assert_eq!(d(a, b), d(b, a));
        let shift = if p.get() == 2 { 2 } else { 1 };
        let want = if a == b { Valuation::Infinite } else { Valuation::int(shift) + val(p, a - b) };
        prop_assert_eq!(d(a, b), want);
    }

    #[test]
    fn disc_distance_is_radius_beyond_it(p in prime(), k in -50i64..50, num in 1i64..40, den in 1i64..5) {
        let step = if p.get() == 2 { 2 } else { p.as_i64() - 1 };
        let k = k * step;
        let r = rat(num, den);
        let kappa = WeightPoint::disc(ZeroLocation::Integer(k), r.clone(), Direction::Generic).unwrap();
        let got = distance(p, &kappa, ZeroLocation::Integer(k + step)).unwrap();
        let exact = distance(p, &WeightPoint::Integer(k), ZeroLocation::Integer(k + step)).unwrap();
        prop_assert_eq!(got, exact.min(Valuation::Finite(r)));
    }

    #[test]
    fn hull_matches_brute_force(ys in prop::collection::vec(0i64..60, 1..12)) {
        let mut pts = vec![PolygonPoint::new(0, Valuation::zero())];
        pts.extend(ys.iter().enumerate().map(|(i, y)| PolygonPoint::new(i + 1, Valuation::int(*y))));
        let poly = lower_hull(&pts).unwrap();
        let n = ys.len();
        prop_assert_eq!(poly.length(), n);
        let heights: Vec<i64> = std::iter::once(0).chain(ys.iter().copied()).collect();
        for x in 0..=n {
            // largest convex minorant: min over chords through x
            let mut best = rat_int(heights[x]);
            for a in 0..=x {
                for b in x..=n {
                    if a < b {
                        let h = rat_int(heights[a]) + rat_int(heights[b] - heights[a]) * rat(x as i64 - a as i64, (b - a) as i64);
                        best = best.min(h);
                    }
                }
            }
            prop_assert_eq!(poly.height_at(x).unwrap(), best);
        }
        prop_assert!(poly.slopes.windows(2).all(|w| w[0] <= w[1]));
        let again: Vec<PolygonPoint> = poly.vertices.iter().map(|(i, y)| PolygonPoint::new(*i, y.clone().into())).collect();
        prop_assert_eq!(lower_hull(&again).unwrap(), poly);
    }

    #[test]
    fn delta_split_is_consistent(p in prime(), level in prop::sample::select(vec![1u64, 5, 7, 11]), i in 1usize..80) {
        prop_assume!(level % p.get() != 0);
        let s = series(p, level, 0);
        let split = s.delta_split(i).unwrap();
        let (a, b) = (s.coefficient(i - 1), s.coefficient(i));
        prop_assert_eq!(b.lambda as i64 - a.lambda as i64, split.lambda_plus() as i64 - split.lambda_minus() as i64);
        for (z, m) in &split.plus {
            prop_assert!(!split.minus.contains_key(z));
            prop_assert_eq!(*b.zeros.get(z).unwrap_or(&0), a.zeros.get(z).unwrap_or(&0) + m);
        }
        for (z, m) in &split.minus {
            prop_assert_eq!(*a.zeros.get(z).unwrap_or(&0), b.zeros.get(z).unwrap_or(&0) + m);
        }
    }

    #[test]
    fn delta_slopes_are_consecutive_differences(ys in prop::collection::vec(0i64..40, 2..10)) {
        let pts: Vec<PolygonPoint> = ys.iter().enumerate().map(|(i, y)| PolygonPoint::new(i, Valuation::int(*y))).collect();
        let d = delta_slopes(&pts);
        prop_assert!(d.gaps.is_empty());
        for (i, s) in d.slopes {
            prop_assert_eq!(s, rat_int(ys[i] - ys[i - 1]));
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn boundary_slopes_scale_with_radius(
        p in prop::sample::select(vec![3u64, 5, 7]),
        a in 1i64..9,
        b in 1i64..9,
    ) {
        let p = Prime::new(p).unwrap();
        let (v, w) = (rat(a, 10), rat(b, 10));
        let s = series(p, 1, 0);
        let at = |r: Rational| slopes(&s, &WeightPoint::disc(ZeroLocation::Integer(0), r, Direction::Ramified).unwrap(), 25);
        let (x, y) = (at(v.clone()), at(w.clone()));
        for (sx, sy) in x.iter().zip(&y) {
            prop_assert_eq!(sx * &w, sy * &v);
        }
    }

    #[test]
    fn recentered_disc_keeps_classical_slopes(k in 6i64..60) {
        let p = Prime::new(2).unwrap();
        let k = 2 * k;
        let s = series(p, 1, 0);
        let d = s.dims().d(k, DimMode::True) as usize;
        prop_assume!(d > 0);
        let rho = 1 + (k as f64).log2().ceil() as i64;
        let near = WeightPoint::disc(ZeroLocation::Integer(k), rat_int(rho), Direction::Generic).unwrap();
        prop_assert_eq!(slopes(&s, &near, d), slopes(&s, &WeightPoint::Integer(k), d));
    }

    #[test]
    fn slope_zero_multiplicity_is_ordinary_dim(
        p in prime(),
        level in prop::sample::select(vec![1u64, 3, 7, 11, 13]),
        j in 0i64..6,
    ) {
        prop_assume!(level % p.get() != 0);
        let step = if p.get() == 2 { 2 } else { p.as_i64() - 1 };
        let s = series(p, level, 0);
        let od = ordinary_dim(&s);
        let k = s.component().first_weight() + j * step;
        let got = slopes(&s, &WeightPoint::Integer(k), od + 1);
        prop_assert_eq!(got.iter().filter(|x| **x == rat_int(0)).count(), od);
    }

    #[test]
    fn doubling_the_window_keeps_certified_slopes(
        p in prime(),
        k in 0i64..40,
        n in 1usize..30,
    ) {
        let step = if p.get() == 2 { 2 } else { p.as_i64() - 1 };
        let s = series(p, 1, 0);
        let kappa = WeightPoint::Integer(k * step);
        let rep = ghost_slopes(&s, &kappa, n, SlopeOptions::default()).unwrap();
        prop_assert!(truncation_stable(&s, &kappa, &rep).unwrap());
    }
}
