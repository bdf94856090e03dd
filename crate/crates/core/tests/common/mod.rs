#![allow(dead_code)]

/// Adaptive Simpson quadrature on `[a, b]`.
pub fn simpson(f: &dyn Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    #[allow(clippy::too_many_arguments)]
    fn step(f: &dyn Fn(f64) -> f64, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
        let m = 0.5 * (a + b);
        let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
        let (flm, frm) = (f(lm), f(rm));
        let left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
        let right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            left + right + delta / 15.0
        } else {
            step(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1)
                + step(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
        }
    }
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    step(f, a, b, fa, fm, fb, whole, tol, 50)
}

/// `∫_0^∞ pdf` through `x = t / (1 - t)`, split at `t = 1/2` and near the ends.
pub fn integrate_half_line(pdf: &dyn Fn(f64) -> f64) -> f64 {
    let g = |t: f64| {
        if t <= 0.0 || t >= 1.0 {
            return 0.0;
        }
        let x = t / (1.0 - t);
        pdf(x) / ((1.0 - t) * (1.0 - t))
    };
    let cuts = [0.0, 1e-6, 1e-3, 0.1, 0.5, 0.9, 0.999, 1.0 - 1e-6, 1.0];
    cuts.windows(2).map(|w| simpson(&g, w[0], w[1], 1e-11)).sum()
}

/// Percentile by brute force: the k-th order statistic is found by counting,
/// then interpolated linearly at rank `(n - 1) p`.
pub fn brute_percentile(samples: &[f64], p: f64) -> f64 {
    let n = samples.len();
    let order_stat = |k: usize| -> f64 {
        *samples
            .iter()
            .find(|&&v| {
                let below = samples.iter().filter(|&&w| w < v).count();
                let at_most = samples.iter().filter(|&&w| w <= v).count();
                below <= k && k < at_most
            })
            .expect("order statistic exists")
    };
    let r = (n - 1) as f64 * p;
    let lo = r.floor() as usize;
    let hi = (lo + 1).min(n - 1);
    let frac = r - lo as f64;
    let (a, b) = (order_stat(lo), order_stat(hi));
    a + frac * (b - a)
}

/// Samples whose interpolated 1st and 50th percentiles hit the targets
/// exactly: 1001 values, so both ranks are integers.
pub fn engineered_fading(l1: f64, l50: f64) -> Vec<f64> {
    let mut v = Vec::with_capacity(1001);
    for i in 0..10 {
        v.push(l1 - 10.0 + i as f64);
    }
    v.push(l1);
    for i in 11..500 {
        v.push(l1 + (l50 - l1) * (i - 10) as f64 / 490.0);
    }
    v.push(l50);
    for i in 501..1001 {
        v.push(l50 + (i - 500) as f64 * 0.01);
    }
    // deterministic shuffle
    let n = v.len();
    for i in 0..n {
        let j = (i * 7919 + 13) % n;
        v.swap(i, j);
    }
    v
}
