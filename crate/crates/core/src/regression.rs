//! Ordinary least squares for a straight line, with standard errors.

use crate::error::{Error, Result};

/// Fitted line `y = slope x + intercept`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RegressionResult {
    pub slope: f64,
    pub intercept: f64,
    pub slope_stderr: f64,
    pub intercept_stderr: f64,
}

/// Least-squares fit of `ys` against `xs`. Needs at least three points and
/// two distinct abscissae.
pub fn linreg(xs: &[f64], ys: &[f64]) -> Result<RegressionResult> {
    let n = xs.len();
    if n != ys.len() {
        return Err(Error::InvalidArgument(format!("{n} abscissae for {} ordinates", ys.len())));
    }
    if n < 3 {
        return Err(Error::Degenerate);
    }
    let nf = n as f64;
    let mx = xs.iter().sum::<f64>() / nf;
    let my = ys.iter().sum::<f64>() / nf;
    let (mut sxx, mut sxy) = (0.0, 0.0);
    for (x, y) in xs.iter().zip(ys) {
        sxx += (x - mx) * (x - mx);
        sxy += (x - mx) * (y - my);
    }
    if !(sxx > 0.0) || !sxy.is_finite() {
        return Err(Error::Degenerate);
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = xs.iter().zip(ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let s2 = ssr / (nf - 2.0);
    Ok(RegressionResult {
        slope,
        intercept,
        slope_stderr: (s2 / sxx).sqrt(),
        intercept_stderr: (s2 * (1.0 / nf + mx * mx / sxx)).sqrt(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{rngs::StdRng, Rng, SeedableRng};

    #[test]
    fn exact_line() {
        let xs: Vec<f64> = (0..10).map(f64::from).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 2.0 * x + 1.0).collect();
        let r = linreg(&xs, &ys).unwrap();
        assert!((r.slope - 2.0).abs() < 1e-14 && (r.intercept - 1.0).abs() < 1e-13);
        assert!(r.slope_stderr < 1e-7 && r.intercept_stderr < 1e-7);
    }

    #[test]
    fn noisy_line() {
        let mut rng = StdRng::seed_from_u64(7);
        let xs: Vec<f64> = (0..1000).map(|i| i as f64 / 100.0).collect();
        // Box-Muller for unit-variance noise
        let ys: Vec<f64> = xs
            .iter()
            .map(|x| {
                let (u, v): (f64, f64) = (rng.random(), rng.random());
                x + (-2.0 * (1.0 - u).ln()).sqrt() * (std::f64::consts::TAU * v).cos()
            })
            .collect();
        let r = linreg(&xs, &ys).unwrap();
        assert!((r.slope - 1.0).abs() < 3.0 * r.slope_stderr, "{r:?}");
        assert!((r.slope_stderr - (1.0 / 8333.25f64).sqrt()).abs() < 0.002);
    }

    #[test]
    fn degenerate() {
        assert_eq!(linreg(&[1.0, 2.0], &[1.0, 2.0]), Err(Error::Degenerate));
        assert_eq!(linreg(&[1.0; 4], &[1.0, 2.0, 3.0, 4.0]), Err(Error::Degenerate));
    }
}
