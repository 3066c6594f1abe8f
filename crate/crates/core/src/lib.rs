//! Ghost series for slopes of U_p on spaces of overconvergent modular forms.
//!
//! Everything is exact: valuations are rationals or infinity, dimensions are
//! integers, and Newton polygons are computed with big-integer arithmetic.

pub mod analysis;
pub mod dimensions;
pub mod error;
pub mod exactmath;
pub mod ghost;
pub mod newton;
pub mod weights;

pub use dimensions::{dim_cusp, dim_eta8, dim_new, dim_total, level_invariants, DimMode, LevelInvariants, LevelPair};
pub use error::{GhostError, Result};
pub use exactmath::{kronecker, parse_rational, rat, rat_int, val_factorial, val_int, Prime, Rational, Valuation};
pub use ghost::{GhostCoefficient, GhostSeries, Variant, Weight2SlopeData};
pub use newton::{lower_hull, NewtonPolygon, PolygonPoint};
pub use weights::{Component, Direction, WeightPoint, ZeroLocation};
