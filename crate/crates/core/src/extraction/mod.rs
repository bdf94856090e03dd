//! Inverse pipeline: from a measured or synthetic trace to fitted model
//! parameters.

pub mod decompose;
pub mod mle;
pub mod optim;
pub mod regression;
pub mod report;
pub mod trace;
pub mod window;

pub use decompose::{decompose, Decomposition, DecompositionConfig};
pub use mle::{fit_mle, select_distribution, MleFit, RankedFit, MIN_MLE_SAMPLES};
pub use regression::{fit_altitude_model, AltitudeFit, ConditionFit, InterceptMode};
pub use report::{analyze, fit_gaussian, AnalysisConfig, ConditionReport, FitReport, ShadowingFit};
pub use trace::{Trace, TraceSample};
pub use window::{local_mean, AveragingDomain, EdgeMode, WindowOptions};
