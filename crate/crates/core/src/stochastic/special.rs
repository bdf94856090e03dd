//! Special functions not covered by `statrs`.

use statrs::function::erf::erfc;
use statrs::function::gamma::{gamma_lr, ln_gamma};

/// `ln I0(x)` for `x >= 0`, accurate to a few ulp across the range.
pub fn ln_bessel_i0(x: f64) -> f64 {
    let x = x.abs();
    if x < 15.0 {
        // power series, all terms positive
        let q = 0.25 * x * x;
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut k = 1.0;
        while term > sum * 1e-17 {
            term *= q / (k * k);
            sum += term;
            k += 1.0;
        }
        sum.ln()
    } else {
        // large-argument asymptotic expansion, truncated at its smallest term
        let inv8x = 1.0 / (8.0 * x);
        let mut term = 1.0;
        let mut sum = 1.0;
        let mut k = 1.0;
        loop {
            let odd = 2.0 * k - 1.0;
            let next = term * odd * odd * inv8x / k;
            if next < 1e-17 || next > term {
                break;
            }
            term = next;
            sum += term;
            k += 1.0;
        }
        x - 0.5 * (2.0 * std::f64::consts::PI * x).ln() + sum.ln()
    }
}

/// Standard normal CDF, returned as `(Φ(z), 1 - Φ(z))` without cancellation.
pub fn normal_cdf_pair(z: f64) -> (f64, f64) {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    (0.5 * erfc(-z * s), 0.5 * erfc(z * s))
}

/// CDF of the Rician envelope with K-factor `k` and mean power `omega`.
///
/// Uses the Poisson mixture of the noncentral chi-square with two degrees of
/// freedom: `F(x) = Σ_j Pois(j; K) P(j + 1, (K + 1) x² / Ω)`.
pub fn rician_cdf(x: f64, k: f64, omega: f64) -> f64 {
    if x <= 0.0 {
        return 0.0;
    }
    let y = (k + 1.0) * x * x / omega;
    if k == 0.0 {
        return -(-y).exp_m1();
    }
    let j_max = (k + 12.0 * k.sqrt() + 40.0).ceil() as usize;
    let ln_k = k.ln();
    let mut total = 0.0;
    for j in 0..=j_max {
        let jf = j as f64;
        let ln_w = -k + jf * ln_k - ln_gamma(jf + 1.0);
        if ln_w < -745.0 {
            continue;
        }
        total += ln_w.exp() * gamma_lr(jf + 1.0, y);
    }
    total.clamp(0.0, 1.0)
}

/// Inverts a continuous increasing CDF on `(0, ∞)` by bracketing and a
/// safeguarded Newton iteration.
pub fn invert_cdf(u: f64, guess: f64, cdf: impl Fn(f64) -> f64, pdf: impl Fn(f64) -> f64) -> f64 {
    let mut lo = 0.0;
    let mut hi = guess.max(f64::MIN_POSITIVE);
    while cdf(hi) < u {
        lo = hi;
        hi *= 2.0;
        if !hi.is_finite() {
            return f64::INFINITY;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..200 {
        let f = cdf(x) - u;
        if f == 0.0 {
            return x;
        }
        if f < 0.0 {
            lo = x;
        } else {
            hi = x;
        }
        let d = pdf(x);
        let newton = x - f / d;
        x = if d > 0.0 && newton > lo && newton < hi {
            newton
        } else {
            0.5 * (lo + hi)
        };
        if hi - lo <= 1e-15 * hi {
            break;
        }
    }
    x
}
