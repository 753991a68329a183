//! Generalized bounded-variation functionals on grid-sampled functions.

pub mod functionals;
pub mod grid;
pub mod intervals;
pub mod report;
pub mod series;
pub mod weights;

pub use functionals::{
    lambda_variation_line, mixed_lambda_variation, modulus_of_variation,
    partial_lambda_variation, phi_variation, phi_variation_profile, shifted_tail_variation, Axis,
    Exactness, Method, Phi, VariationTarget, VariationValue, EXHAUSTIVE_LINE_CAP,
    EXHAUSTIVE_MIXED_CAP,
};
pub use grid::{moduli_of_continuity, rect_increment, uniform_grid, GridFunction2D};
pub use intervals::{enumerate_interval_sets, max_disjoint_interval_scores, IntervalSet};
pub use report::{build_variation_report, VariationReport};
pub use series::{series_conditions, SeriesReport, Trend};
pub use weights::{LambdaGenerator, LambdaWeights};
