//! Maximum-likelihood fits of the envelope families and model selection.

use serde::{Deserialize, Serialize};
use statrs::function::gamma::digamma;

use super::optim::NelderMead;
use crate::error::{Error, Result};
use crate::stochastic::{FadingDistribution, FadingFamily};

/// Minimum number of envelope samples for a likelihood fit.
pub const MIN_MLE_SAMPLES: usize = 50;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MleFit {
    pub distribution: FadingDistribution,
    pub log_likelihood: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RankedFit {
    /// 1 = best.
    pub rank: usize,
    pub family: FadingFamily,
    pub num_params: usize,
    pub distribution: FadingDistribution,
    pub log_likelihood: f64,
}

struct Moments {
    mean_ln: f64,
    sd_ln: f64,
    median_ln: f64,
    mean_sq: f64,
    var_sq: f64,
}

fn check_samples(samples: &[f64]) -> Result<Moments> {
    if samples.len() < MIN_MLE_SAMPLES {
        return Err(Error::Fit(format!(
            "{} samples, at least {MIN_MLE_SAMPLES} required",
            samples.len()
        )));
    }
    if let Some(bad) = samples.iter().find(|x| !(x.is_finite() && **x > 0.0)) {
        return Err(Error::Domain(format!("envelope samples must be finite and > 0, got {bad}")));
    }
    let n = samples.len() as f64;
    let mut logs: Vec<f64> = samples.iter().map(|x| x.ln()).collect();
    let mean_ln = logs.iter().sum::<f64>() / n;
    let var_ln = logs.iter().map(|l| (l - mean_ln).powi(2)).sum::<f64>() / n;
    if !(var_ln > 1e-24) {
        return Err(Error::Fit("envelope samples have zero variance".into()));
    }
    logs.sort_by(f64::total_cmp);
    let median_ln = crate::stochastic::empirical::percentile_sorted(&logs, 0.5);
    let mean_sq = samples.iter().map(|x| x * x).sum::<f64>() / n;
    let var_sq = samples.iter().map(|x| (x * x - mean_sq).powi(2)).sum::<f64>() / n;
    Ok(Moments {
        mean_ln,
        sd_ln: var_ln.sqrt(),
        median_ln,
        mean_sq,
        var_sq,
    })
}

/// Fits one family by maximum likelihood.
pub fn fit_mle(samples: &[f64], family: FadingFamily) -> Result<MleFit> {
    let m = check_samples(samples)?;
    let distribution = match family {
        FadingFamily::Rayleigh => FadingDistribution::rayleigh((m.mean_sq / 2.0).sqrt())?,
        FadingFamily::NakagamiM => fit_nakagami(&m)?,
        FadingFamily::Weibull => fit_weibull(samples, &m)?,
        FadingFamily::LogLogistic => fit_loglogistic(samples, &m)?,
        FadingFamily::Rician => fit_rician(samples, &m)?,
    };
    let log_likelihood = distribution.log_likelihood(samples);
    if !log_likelihood.is_finite() {
        return Err(Error::Fit(format!("{family}: non-finite log-likelihood at {distribution:?}")));
    }
    Ok(MleFit {
        distribution,
        log_likelihood,
    })
}

/// Bisection on a function that is decreasing in `ln x` over `[lo, hi]`.
fn solve_decreasing(f: impl Fn(f64) -> f64, lo: f64, hi: f64) -> Option<f64> {
    let (mut a, mut b) = (lo.ln(), hi.ln());
    if !(f(lo) > 0.0 && f(hi) < 0.0) {
        return None;
    }
    for _ in 0..200 {
        let mid = 0.5 * (a + b);
        if f(mid.exp()) > 0.0 {
            a = mid;
        } else {
            b = mid;
        }
        if b - a < 1e-15 {
            break;
        }
    }
    Some((0.5 * (a + b)).exp())
}

fn fit_nakagami(m: &Moments) -> Result<FadingDistribution> {
    let omega = m.mean_sq;
    // ln m - psi(m) = ln(omega) - mean(ln x^2), decreasing in m
    let delta = omega.ln() - 2.0 * m.mean_ln;
    let shape = solve_decreasing(|s| s.ln() - digamma(s) - delta, 1e-6, 1e8)
        .ok_or_else(|| Error::Fit(format!("Nakagami shape equation has no root (delta = {delta})")))?;
    FadingDistribution::nakagami(shape, omega)
}

fn fit_weibull(samples: &[f64], m: &Moments) -> Result<FadingDistribution> {
    // profile equation in the shape k, evaluated on x / max(x) to avoid overflow
    let x_max = samples.iter().copied().fold(0.0, f64::max);
    let scaled: Vec<(f64, f64)> = samples
        .iter()
        .map(|x| {
            let r = x / x_max;
            (r, r.ln())
        })
        .collect();
    let mean_ln_r = m.mean_ln - x_max.ln();
    let profile = |k: f64| {
        let (mut s0, mut s1) = (0.0, 0.0);
        for &(r, lr) in &scaled {
            let p = r.powf(k);
            s0 += p;
            s1 += p * lr;
        }
        1.0 / k + mean_ln_r - s1 / s0
    };
    let k = solve_decreasing(profile, 1e-4, 1e4)
        .ok_or_else(|| Error::Fit("Weibull profile equation has no root".into()))?;
    let mean_pow = scaled.iter().map(|(r, _)| r.powf(k)).sum::<f64>() / samples.len() as f64;
    FadingDistribution::weibull(x_max * mean_pow.powf(1.0 / k), k)
}

fn not_converged(family: FadingFamily) -> Error {
    Error::Fit(format!("{family}: likelihood optimization did not converge"))
}

fn fit_loglogistic(samples: &[f64], m: &Moments) -> Result<FadingDistribution> {
    let logs: Vec<f64> = samples.iter().map(|x| x.ln()).collect();
    // negative log-likelihood in (ln alpha, ln beta)
    let nll = |p: &[f64]| {
        let (la, beta) = (p[0], p[1].exp());
        let mut acc = 0.0;
        for &l in &logs {
            let z = l - la;
            let t = beta * z;
            let sp = if t > 0.0 { t + (-t).exp().ln_1p() } else { t.exp().ln_1p() };
            acc += p[1] - la + (beta - 1.0) * z - 2.0 * sp;
        }
        -acc
    };
    // logistic scale s = sd * sqrt(3) / pi, beta = 1 / s
    let beta0 = std::f64::consts::PI / (3f64.sqrt() * m.sd_ln);
    let nm = NelderMead::default();
    let best = [(m.median_ln, beta0), (m.mean_ln, 0.5 * beta0), (m.median_ln, 2.0 * beta0)]
        .into_iter()
        .map(|(la, b)| nm.minimize(nll, &[la, b.ln()], &[0.1 * m.sd_ln.max(1e-3), 0.2]))
        .min_by(|a, b| a.value.total_cmp(&b.value))
        .expect("non-empty starts");
    if !best.converged || !best.value.is_finite() {
        return Err(not_converged(FadingFamily::LogLogistic));
    }
    FadingDistribution::log_logistic(best.x[0].exp(), best.x[1].exp())
}

fn fit_rician(samples: &[f64], m: &Moments) -> Result<FadingDistribution> {
    // (nu, ln sigma) with the sign of nu dropped; K = nu^2 / (2 sigma^2)
    let to_dist = |p: &[f64]| {
        let (nu, s2) = (p[0].abs(), (2.0 * p[1]).exp());
        FadingDistribution::rician(nu * nu / (2.0 * s2), nu * nu + 2.0 * s2)
    };
    let nll = |p: &[f64]| match to_dist(p) {
        Ok(d) => -d.log_likelihood(samples),
        Err(_) => f64::INFINITY,
    };
    // moment estimate: var(x^2) / E[x^2]^2 = (1 + 2K) / (1 + K)^2
    let gamma = m.var_sq / (m.mean_sq * m.mean_sq);
    let k0 = if gamma < 1.0 {
        let r = (1.0 - gamma).sqrt();
        r / (1.0 - r)
    } else {
        0.0
    };
    let start = |k: f64| {
        let s2 = m.mean_sq / (2.0 * (1.0 + k));
        [(2.0 * k * s2).sqrt(), 0.5 * s2.ln()]
    };
    let scale = m.mean_sq.sqrt();
    let nm = NelderMead::default();
    let best = [k0, 0.0, 4.0 * k0 + 1.0]
        .into_iter()
        .map(|k| nm.minimize(nll, &start(k), &[0.2 * scale, 0.2]))
        .min_by(|a, b| a.value.total_cmp(&b.value))
        .expect("non-empty starts");
    if !best.converged || !best.value.is_finite() {
        return Err(not_converged(FadingFamily::Rician));
    }
    to_dist(&best.x)
}

/// Fits every family in `families` and ranks by log-likelihood, best first.
/// Exact ties go to fewer parameters, then to the fixed family order.
pub fn select_distribution(samples: &[f64], families: &[FadingFamily]) -> Result<Vec<RankedFit>> {
    if families.is_empty() {
        return Err(Error::Fit("no candidate families".into()));
    }
    let mut fits = families
        .iter()
        .map(|&family| {
            fit_mle(samples, family).map(|f| RankedFit {
                rank: 0,
                family,
                num_params: family.num_params(),
                distribution: f.distribution,
                log_likelihood: f.log_likelihood,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let order = |f: FadingFamily| FadingFamily::ALL.iter().position(|&g| g == f);
    fits.sort_by(|a, b| {
        b.log_likelihood
            .total_cmp(&a.log_likelihood)
            .then(a.num_params.cmp(&b.num_params))
            .then(order(a.family).cmp(&order(b.family)))
    });
    for (i, f) in fits.iter_mut().enumerate() {
        f.rank = i + 1;
    }
    Ok(fits)
}
