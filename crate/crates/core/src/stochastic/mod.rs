//! Shadowing and fast-fading distributions plus fading-depth statistics.

pub mod distributions;
pub mod empirical;
pub mod special;

pub use distributions::{
    loglogistic_cdf, loglogistic_pdf, loglogistic_quantile, sample_envelope, sample_shadowing,
    FadingDistribution, FadingFamily, LogLogisticParams, ShadowingParams,
};
pub use empirical::{fading_depth, FadingStats};
