use num_traits::Float;
use serde::Serialize;

use crate::error::{Error, Result};

/// Least-squares growth summary of a sampled function.
///
/// Heuristic only: finite samples cannot decide asymptotic equivalence.
/// `degree` is the log-log slope (polynomial degree estimate); `base` is
/// `exp` of the semi-log slope (exponential base estimate).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FitReport<F> {
    pub points: usize,
    pub degree: F,
    pub degree_residual: F,
    pub log_base: F,
    pub base: F,
    pub base_residual: F,
}

/// Slope, intercept and RMS residual of the least-squares line.
fn least_squares<F: Float>(xs: &[F], ys: &[F]) -> (F, F, F) {
    let n = F::from(xs.len()).expect("length fits");
    let mx = xs.iter().fold(F::zero(), |a, &x| a + x) / n;
    let my = ys.iter().fold(F::zero(), |a, &y| a + y) / n;
    let (mut sxy, mut sxx) = (F::zero(), F::zero());
    for (&x, &y) in xs.iter().zip(ys) {
        sxy = sxy + (x - mx) * (y - my);
        sxx = sxx + (x - mx) * (x - mx);
    }
    let slope = if sxx > F::zero() { sxy / sxx } else { F::zero() };
    let icept = my - slope * mx;
    let sse = xs.iter().zip(ys).fold(F::zero(), |a, (&x, &y)| {
        let r = y - (slope * x + icept);
        a + r * r
    });
    (slope, icept, (sse / n).sqrt())
}

/// Fits `(n, value)` samples with positive `n` and `value`.
pub fn fit_report<F: Float>(samples: &[(F, F)]) -> Result<FitReport<F>> {
    let pts: Vec<(F, F)> = samples.iter().copied().filter(|(n, v)| *n > F::zero() && *v > F::zero()).collect();
    if pts.len() < 4 {
        return Err(Error::InsufficientData(format!("need at least 4 positive samples, have {}", pts.len())));
    }
    let ln_n: Vec<F> = pts.iter().map(|p| p.0.ln()).collect();
    let n: Vec<F> = pts.iter().map(|p| p.0).collect();
    let ln_v: Vec<F> = pts.iter().map(|p| p.1.ln()).collect();
    let (degree, _, degree_residual) = least_squares(&ln_n, &ln_v);
    let (log_base, _, base_residual) = least_squares(&n, &ln_v);
    Ok(FitReport { points: pts.len(), degree, degree_residual, log_base, base: log_base.exp(), base_residual })
}
