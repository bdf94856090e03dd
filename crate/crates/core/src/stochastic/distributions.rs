//! Envelope distributions for fast fading and the Gaussian shadowing law.
//!
//! Parameterizations:
//!
//! | family      | parameters            | pdf                                                         |
//! |-------------|-----------------------|-------------------------------------------------------------|
//! | log-logistic| `alpha` (median), `beta` | `(β/α)(x/α)^(β-1) / (1 + (x/α)^β)²`                      |
//! | Rician      | `k_factor`, `omega = E[x²]` | `2(K+1)x/Ω · exp(-K - (K+1)x²/Ω) · I0(2x √(K(K+1)/Ω))` |
//! | Rayleigh    | `sigma`               | `x/σ² · exp(-x²/2σ²)`                                       |
//! | Nakagami-m  | `m`, `omega = E[x²]`  | `2 m^m / (Γ(m) Ω^m) · x^(2m-1) exp(-m x²/Ω)`                |
//! | Weibull     | `scale`, `shape`      | `(k/λ)(x/λ)^(k-1) exp(-(x/λ)^k)`                            |
//!
//! Nakagami `m` is accepted for any `m > 0`; values below 1/2 are outside the
//! classical fading range but are what the MLE returns on heavy-tailed data.

use rand::distr::Open01;
use rand::Rng;
use rand_distr::{Distribution, Gamma, StandardNormal};
use serde::{Deserialize, Serialize};
use statrs::function::gamma::{gamma_lr, ln_gamma};

use super::special::{invert_cdf, ln_bessel_i0, rician_cdf};
use crate::error::{domain, Result};

/// Gaussian shadowing in dB.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ShadowingParams {
    pub mean_db: f64,
    pub sigma_db: f64,
}

impl ShadowingParams {
    pub fn new(mean_db: f64, sigma_db: f64) -> Result<Self> {
        if !mean_db.is_finite() || !(sigma_db.is_finite() && sigma_db >= 0.0) {
            return Err(domain(format!("invalid shadowing ({mean_db}, {sigma_db})")));
        }
        Ok(ShadowingParams { mean_db, sigma_db })
    }

    pub fn zero_mean(sigma_db: f64) -> Result<Self> {
        Self::new(0.0, sigma_db)
    }

    pub fn pdf(&self, x_db: f64) -> f64 {
        let z = (x_db - self.mean_db) / self.sigma_db;
        (-0.5 * z * z).exp() / (self.sigma_db * (2.0 * std::f64::consts::PI).sqrt())
    }
}

/// Draws one shadowing value in dB.
pub fn sample_shadowing<R: Rng + ?Sized>(rng: &mut R, p: &ShadowingParams) -> f64 {
    let z: f64 = rng.sample(StandardNormal);
    p.mean_db + p.sigma_db * z
}

/// Log-logistic law with scale (= median) `alpha` and shape `beta`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LogLogisticParams {
    pub alpha: f64,
    pub beta: f64,
}

impl LogLogisticParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if alpha.is_finite() && alpha > 0.0 && beta.is_finite() && beta > 0.0 {
            Ok(LogLogisticParams { alpha, beta })
        } else {
            Err(domain(format!("log-logistic needs alpha, beta > 0, got ({alpha}, {beta})")))
        }
    }
}

fn check_support(x: f64) -> Result<()> {
    if x >= 0.0 && !x.is_nan() {
        Ok(())
    } else {
        Err(domain(format!("envelope must be >= 0, got {x}")))
    }
}

/// Log-logistic density. The median sits at `alpha`.
pub fn loglogistic_pdf(x: f64, p: &LogLogisticParams) -> Result<f64> {
    check_support(x)?;
    let r = x / p.alpha;
    let z = r.powf(p.beta);
    if z.is_infinite() {
        return Ok(0.0);
    }
    Ok((p.beta / p.alpha) * r.powf(p.beta - 1.0) / ((1.0 + z) * (1.0 + z)))
}

pub fn loglogistic_cdf(x: f64, p: &LogLogisticParams) -> Result<f64> {
    check_support(x)?;
    if x == 0.0 {
        return Ok(0.0);
    }
    let t = p.beta * (x / p.alpha).ln();
    Ok(1.0 / (1.0 + (-t).exp()))
}

pub fn loglogistic_quantile(u: f64, p: &LogLogisticParams) -> Result<f64> {
    if !(u > 0.0 && u < 1.0) {
        return Err(domain(format!("quantile level must lie in (0, 1), got {u}")));
    }
    Ok(p.alpha * (u / (1.0 - u)).powf(1.0 / p.beta))
}

/// Candidate envelope families, in the fixed order used for tie-breaking.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FadingFamily {
    LogLogistic,
    Rician,
    Rayleigh,
    NakagamiM,
    Weibull,
}

impl FadingFamily {
    pub const ALL: [FadingFamily; 5] = [
        FadingFamily::LogLogistic,
        FadingFamily::Rician,
        FadingFamily::Rayleigh,
        FadingFamily::NakagamiM,
        FadingFamily::Weibull,
    ];

    pub fn num_params(self) -> usize {
        match self {
            FadingFamily::Rayleigh => 1,
            _ => 2,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            FadingFamily::LogLogistic => "log_logistic",
            FadingFamily::Rician => "rician",
            FadingFamily::Rayleigh => "rayleigh",
            FadingFamily::NakagamiM => "nakagami_m",
            FadingFamily::Weibull => "weibull",
        }
    }
}

impl std::str::FromStr for FadingFamily {
    type Err = crate::Error;

    fn from_str(s: &str) -> Result<Self> {
        FadingFamily::ALL
            .into_iter()
            .find(|f| f.as_str() == s.to_ascii_lowercase().replace('-', "_"))
            .ok_or_else(|| domain(format!("unknown fading family {s:?}")))
    }
}

impl std::fmt::Display for FadingFamily {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A fully parameterized envelope distribution.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum FadingDistribution {
    LogLogistic(LogLogisticParams),
    Rician { k_factor: f64, omega: f64 },
    Rayleigh { sigma: f64 },
    NakagamiM { m: f64, omega: f64 },
    Weibull { scale: f64, shape: f64 },
}

fn positive(name: &str, v: f64) -> Result<()> {
    if v.is_finite() && v > 0.0 {
        Ok(())
    } else {
        Err(domain(format!("{name} must be finite and > 0, got {v}")))
    }
}

impl FadingDistribution {
    pub fn log_logistic(alpha: f64, beta: f64) -> Result<Self> {
        LogLogisticParams::new(alpha, beta).map(FadingDistribution::LogLogistic)
    }

    pub fn rician(k_factor: f64, omega: f64) -> Result<Self> {
        if !(k_factor.is_finite() && k_factor >= 0.0) {
            return Err(domain(format!("Rician K must be finite and >= 0, got {k_factor}")));
        }
        positive("omega", omega)?;
        Ok(FadingDistribution::Rician { k_factor, omega })
    }

    pub fn rayleigh(sigma: f64) -> Result<Self> {
        positive("sigma", sigma)?;
        Ok(FadingDistribution::Rayleigh { sigma })
    }

    pub fn nakagami(m: f64, omega: f64) -> Result<Self> {
        positive("m", m)?;
        positive("omega", omega)?;
        Ok(FadingDistribution::NakagamiM { m, omega })
    }

    pub fn weibull(scale: f64, shape: f64) -> Result<Self> {
        positive("scale", scale)?;
        positive("shape", shape)?;
        Ok(FadingDistribution::Weibull { scale, shape })
    }

    /// Re-checks parameters, e.g. after deserialization.
    pub fn validate(&self) -> Result<()> {
        match *self {
            FadingDistribution::LogLogistic(p) => LogLogisticParams::new(p.alpha, p.beta).map(drop),
            FadingDistribution::Rician { k_factor, omega } => Self::rician(k_factor, omega).map(drop),
            FadingDistribution::Rayleigh { sigma } => Self::rayleigh(sigma).map(drop),
            FadingDistribution::NakagamiM { m, omega } => Self::nakagami(m, omega).map(drop),
            FadingDistribution::Weibull { scale, shape } => Self::weibull(scale, shape).map(drop),
        }
    }

    pub fn family(&self) -> FadingFamily {
        match self {
            FadingDistribution::LogLogistic(_) => FadingFamily::LogLogistic,
            FadingDistribution::Rician { .. } => FadingFamily::Rician,
            FadingDistribution::Rayleigh { .. } => FadingFamily::Rayleigh,
            FadingDistribution::NakagamiM { .. } => FadingFamily::NakagamiM,
            FadingDistribution::Weibull { .. } => FadingFamily::Weibull,
        }
    }

    /// Log-density for `x > 0`.
    pub fn ln_pdf(&self, x: f64) -> f64 {
        let lx = x.ln();
        match *self {
            FadingDistribution::LogLogistic(LogLogisticParams { alpha, beta }) => {
                let t = beta * (lx - alpha.ln());
                beta.ln() - alpha.ln() + (beta - 1.0) * (lx - alpha.ln()) - 2.0 * softplus(t)
            }
            FadingDistribution::Rician { k_factor, omega } => {
                let kp1 = k_factor + 1.0;
                (2.0 * kp1 / omega).ln() + lx - k_factor - kp1 * x * x / omega
                    + ln_bessel_i0(2.0 * x * (k_factor * kp1 / omega).sqrt())
            }
            FadingDistribution::Rayleigh { sigma } => {
                let s2 = sigma * sigma;
                lx - s2.ln() - x * x / (2.0 * s2)
            }
            FadingDistribution::NakagamiM { m, omega } => {
                std::f64::consts::LN_2 + m * (m / omega).ln() - ln_gamma(m) + (2.0 * m - 1.0) * lx
                    - m * x * x / omega
            }
            FadingDistribution::Weibull { scale, shape } => {
                let lr = lx - scale.ln();
                shape.ln() - scale.ln() + (shape - 1.0) * lr - (shape * lr).exp()
            }
        }
    }

    pub fn pdf(&self, x: f64) -> f64 {
        if x < 0.0 {
            return 0.0;
        }
        match *self {
            FadingDistribution::LogLogistic(p) => loglogistic_pdf(x, &p).unwrap_or(0.0),
            _ if x == 0.0 => {
                // only shape-dependent families can be nonzero at the origin
                match *self {
                    FadingDistribution::Weibull { scale, shape } if shape <= 1.0 => {
                        if shape == 1.0 {
                            1.0 / scale
                        } else {
                            f64::INFINITY
                        }
                    }
                    FadingDistribution::NakagamiM { m, .. } if m <= 0.5 => {
                        if m == 0.5 {
                            self.ln_pdf(f64::MIN_POSITIVE).exp()
                        } else {
                            f64::INFINITY
                        }
                    }
                    _ => 0.0,
                }
            }
            _ => self.ln_pdf(x).exp(),
        }
    }

    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        match *self {
            FadingDistribution::LogLogistic(p) => loglogistic_cdf(x, &p).unwrap_or(0.0),
            FadingDistribution::Rician { k_factor, omega } => rician_cdf(x, k_factor, omega),
            FadingDistribution::Rayleigh { sigma } => -(-x * x / (2.0 * sigma * sigma)).exp_m1(),
            FadingDistribution::NakagamiM { m, omega } => gamma_lr(m, m * x * x / omega),
            FadingDistribution::Weibull { scale, shape } => -(-(x / scale).powf(shape)).exp_m1(),
        }
    }

    pub fn quantile(&self, u: f64) -> Result<f64> {
        if !(u > 0.0 && u < 1.0) {
            return Err(domain(format!("quantile level must lie in (0, 1), got {u}")));
        }
        Ok(match *self {
            FadingDistribution::LogLogistic(p) => loglogistic_quantile(u, &p)?,
            FadingDistribution::Rayleigh { sigma } => sigma * (-2.0 * (-u).ln_1p()).sqrt(),
            FadingDistribution::Weibull { scale, shape } => scale * (-(-u).ln_1p()).powf(1.0 / shape),
            FadingDistribution::Rician { omega, .. } | FadingDistribution::NakagamiM { omega, .. } => {
                invert_cdf(u, omega.sqrt(), |x| self.cdf(x), |x| self.pdf(x))
            }
        })
    }

    /// Quantile from the pair `(u, 1 - u)`; exact in the upper tail for the
    /// closed-form families.
    pub fn quantile_pair(&self, u: f64, v: f64) -> Result<f64> {
        match *self {
            FadingDistribution::LogLogistic(LogLogisticParams { alpha, beta }) if u > 0.0 && v > 0.0 => {
                Ok(alpha * (u / v).powf(1.0 / beta))
            }
            FadingDistribution::Rayleigh { sigma } if v > 0.0 => Ok(sigma * (-2.0 * v.ln()).sqrt()),
            FadingDistribution::Weibull { scale, shape } if v > 0.0 => Ok(scale * (-v.ln()).powf(1.0 / shape)),
            _ => self.quantile(u.clamp(f64::MIN_POSITIVE, 1.0 - f64::EPSILON)),
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        sample_envelope(rng, self)
    }

    pub fn log_likelihood(&self, samples: &[f64]) -> f64 {
        samples.iter().map(|&x| self.ln_pdf(x)).sum()
    }
}

impl Distribution<f64> for FadingDistribution {
    fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        sample_envelope(rng, self)
    }
}

/// Draws one envelope value.
pub fn sample_envelope<R: Rng + ?Sized>(rng: &mut R, d: &FadingDistribution) -> f64 {
    match *d {
        FadingDistribution::LogLogistic(LogLogisticParams { alpha, beta }) => {
            let u: f64 = rng.sample(Open01);
            alpha * (u / (1.0 - u)).powf(1.0 / beta)
        }
        FadingDistribution::Rayleigh { sigma } => {
            let u: f64 = rng.sample(Open01);
            sigma * (-2.0 * u.ln()).sqrt()
        }
        FadingDistribution::Weibull { scale, shape } => {
            let u: f64 = rng.sample(Open01);
            scale * (-u.ln()).powf(1.0 / shape)
        }
        FadingDistribution::NakagamiM { m, omega } => {
            let g = Gamma::new(m, omega / m).expect("validated Nakagami parameters");
            g.sample(rng).sqrt()
        }
        FadingDistribution::Rician { k_factor, omega } => {
            let los = (k_factor * omega / (k_factor + 1.0)).sqrt();
            let s = (omega / (2.0 * (k_factor + 1.0))).sqrt();
            let i: f64 = rng.sample(StandardNormal);
            let q: f64 = rng.sample(StandardNormal);
            (los + s * i).hypot(s * q)
        }
    }
}

fn softplus(t: f64) -> f64 {
    if t > 0.0 {
        t + (-t).exp().ln_1p()
    } else {
        t.exp().ln_1p()
    }
}
