//! Slope computation and the checks built on top of it.

pub mod distribution;
pub mod fixtures;
pub mod halo;
pub mod oracles;
pub mod slopes;
pub mod suites;

pub use distribution::{cdf_sup_distance, distribution_report, DistributionReport};
pub use fixtures::{builtin_weight2, compare_fixture, FixtureDiff, SlopeFixture};
pub use halo::{expected_halo_params, halo_progressions, halo_rows, radius_grid, HaloCheck, HaloParams, HaloRow};
pub use oracles::{bc_valuation, loeffler_slope, table_lambda_step, table_zero_ranges, ZeroRanges};
pub use slopes::{ghost_slopes, ordinary_dim, slopes_at, truncation_stable, wadic_polygon, SlopeOptions, SlopeReport};
pub use suites::{run_suite, Check, Suite, SuiteReport};
