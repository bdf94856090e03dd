use rand::Rng;
use rand_distr::StandardNormal;

/// Unit-variance Gaussian process along altitude: iid anchors at fixed
/// spacing, interpolated so the marginal variance stays one.
#[derive(Debug, Clone)]
pub(crate) struct AnchorField {
    origin: f64,
    spacing: f64,
    anchors: Vec<f64>,
}

impl AnchorField {
    /// Field covering `[lo, hi]` with one spare anchor on each side.
    pub(crate) fn new<R: Rng + ?Sized>(rng: &mut R, lo: f64, hi: f64, spacing: f64) -> Self {
        let count = ((hi - lo) / spacing).ceil() as usize + 3;
        AnchorField {
            origin: lo - spacing,
            spacing,
            anchors: (0..count).map(|_| rng.sample(StandardNormal)).collect(),
        }
    }

    pub(crate) fn value(&self, x: f64) -> f64 {
        let t = ((x - self.origin) / self.spacing).max(0.0);
        let i = (t.floor() as usize).min(self.anchors.len() - 2);
        let w = (t - i as f64).clamp(0.0, 1.0);
        let (a, b) = (self.anchors[i], self.anchors[i + 1]);
        ((1.0 - w) * a + w * b) / ((1.0 - w).powi(2) + w * w).sqrt()
    }
}
