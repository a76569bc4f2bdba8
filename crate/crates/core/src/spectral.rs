//! Fourier coefficients of `H` sampled at a fixed height and the continuous
//! (Poisson kernel) and discrete (dyadic block) Littlewood–Paley estimates
//! of its Hölder exponent.
//!
//! A spectrum keeps the coefficients of the samples at height `t0`, i.e. the
//! boundary coefficients damped by `e^{-2π l t0}`. The continuous estimator
//! folds `t0` into the kernel height, the discrete one undoes the damping.

use std::f64::consts::TAU;
use std::sync::Arc;

use num_complex::Complex64 as C64;
use rayon::prelude::*;
use rustfft::{Fft, FftPlanner};

use crate::dynamics::HSample;
use crate::error::{Error, Result};
use crate::regression::{linreg, RegressionResult};

/// Smallest accepted grid.
pub const MIN_POINTS: usize = 1024;
/// Default oversampling of sup-norm grids relative to the sample grid.
pub const OVERSAMPLE: usize = 4;
/// Default base of the dyadic blocks.
pub const DEFAULT_A: f64 = 1.25;

/// One-sided real spectrum `ĥ_0 .. ĥ_{l_max}` of samples at height `t0`.
#[derive(Debug, Clone, PartialEq)]
pub struct Spectrum {
    pub t0: f64,
    pub coeffs: Vec<f64>,
    /// Largest imaginary part dropped by the real projection.
    pub residual_imag: f64,
    /// Largest modulus among the discarded negative modes.
    pub residual_negative: f64,
}

impl Spectrum {
    /// Spectrum at height `t0` of a function with the given boundary
    /// coefficients.
    pub fn from_boundary(t0: f64, boundary: &[f64]) -> Self {
        let coeffs = boundary.iter().enumerate().map(|(l, b)| b * (-TAU * l as f64 * t0).exp()).collect();
        Spectrum { t0, coeffs, residual_imag: 0.0, residual_negative: 0.0 }
    }

    pub fn l_max(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn peak(&self) -> f64 {
        self.coeffs.iter().fold(0.0, |m, c| m.max(c.abs()))
    }

    /// `ĥ_l` undamped to the boundary.
    pub fn boundary(&self, l: usize) -> f64 {
        self.coeffs[l] * (TAU * l as f64 * self.t0).exp()
    }

    /// Number of points of the sup-norm grids.
    fn grid_len(&self, oversample: usize) -> usize {
        (2 * (self.l_max() + 1) * oversample.max(1)).next_power_of_two()
    }
}

/// Discrete Fourier coefficients of `values` taken on `x_j = j/n`, `n` a
/// power of two `>= 1024`, at height `t0`.
pub fn fourier_coeffs(values: &[C64], t0: f64) -> Result<Spectrum> {
    let n = values.len();
    if n < MIN_POINTS || !n.is_power_of_two() {
        return Err(Error::NotPowerOfTwo(n));
    }
    let mut buf = values.to_vec();
    FftPlanner::new().plan_fft_forward(n).process(&mut buf);
    let scale = 1.0 / n as f64;
    let half = n / 2;
    let coeffs = buf[..half].iter().map(|c| c.re * scale).collect();
    let residual_imag = buf[..half].iter().fold(0.0, |m: f64, c| m.max((c.im * scale).abs()));
    let residual_negative = buf[half + 1..].iter().fold(0.0, |m: f64, c| m.max(c.norm() * scale));
    Ok(Spectrum { t0, coeffs, residual_imag, residual_negative })
}

/// [`fourier_coeffs`] of an `H` grid, checking that it is the uniform grid
/// at a single height.
pub fn fourier_coeffs_h(samples: &[HSample]) -> Result<Spectrum> {
    let n = samples.len();
    let t0 = samples.first().map_or(0.0, |s| s.t);
    for (j, s) in samples.iter().enumerate() {
        if (s.x - j as f64 / n as f64).abs() > 1e-12 || s.t != t0 {
            return Err(Error::InvalidArgument(format!("sample {j} is off the uniform grid")));
        }
    }
    let values: Vec<C64> = samples.iter().map(|s| s.value).collect();
    fourier_coeffs(&values, t0)
}

/// Evaluates `sum_l a_l e^{2πilx}` on a uniform grid with one FFT.
struct SupGrid {
    fft: Arc<dyn Fft<f64>>,
    len: usize,
}

impl SupGrid {
    fn new(len: usize) -> Self {
        SupGrid { fft: FftPlanner::new().plan_fft_inverse(len), len }
    }

    fn sup<I: IntoIterator<Item = (usize, f64)>>(&self, terms: I) -> f64 {
        let mut buf = vec![C64::new(0.0, 0.0); self.len];
        for (l, a) in terms {
            buf[l].re += a;
        }
        self.fft.process(&mut buf);
        buf.iter().fold(0.0, |m, v| m.max(v.norm()))
    }
}

fn poisson_terms(s: &Spectrum, r: u32, t: f64) -> impl Iterator<Item = (usize, f64)> + '_ {
    s.coeffs.iter().enumerate().map(move |(l, c)| {
        let w = -TAU * l as f64;
        (l, w.powi(r as i32) * (w * t).exp() * c)
    })
}

/// `sup_x |sum_l (-2πl)^r e^{-2π t_eff l} ĥ_l e^{2πilx}|` with
/// `t_eff = t + t0`, on a grid `oversample` times finer than the samples.
pub fn poisson_deriv_supnorm_with(s: &Spectrum, r: u32, t: f64, oversample: usize) -> f64 {
    SupGrid::new(s.grid_len(oversample)).sup(poisson_terms(s, r, t))
}

/// [`poisson_deriv_supnorm_with`] at the default oversampling.
pub fn poisson_deriv_supnorm(s: &Spectrum, r: u32, t: f64) -> f64 {
    poisson_deriv_supnorm_with(s, r, t, OVERSAMPLE)
}

/// `n` log-spaced values from `lo` to `hi`.
pub fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (a, b) = (lo.ln(), hi.ln());
    (0..n).map(|i| (a + (b - a) * i as f64 / (n - 1).max(1) as f64).exp()).collect()
}

/// 100 values log-spaced in `[1e-3, 1e-1]`.
pub fn default_t_values() -> Vec<f64> {
    log_space(1e-3, 1e-1, 100)
}

/// Result of the continuous estimator.
#[derive(Debug, Clone, PartialEq)]
pub struct ClpEstimate {
    pub r: u32,
    pub eta: f64,
    pub stderr: f64,
    pub regression: RegressionResult,
    /// `(log t_eff, log sup)` pairs entering the fit.
    pub points: Vec<(f64, f64)>,
}

/// Fits `log sup ~ (eta - r) log t_eff` over `t_values`.
pub fn clp_estimate(s: &Spectrum, r: u32, t_values: &[f64]) -> Result<ClpEstimate> {
    if r < 2 {
        return Err(Error::InvalidArgument("r must be at least 2".into()));
    }
    if t_values.len() < 10 {
        return Err(Error::InsufficientPoints { needed: 10, got: t_values.len() });
    }
    if t_values.iter().any(|&t| !(t >= 10.0 * s.t0 && t > 0.0)) {
        return Err(Error::InvalidArgument("t values must be positive and at least 10 t0".into()));
    }
    let grid = SupGrid::new(s.grid_len(OVERSAMPLE));
    let points: Vec<(f64, f64)> = t_values
        .par_iter()
        .map(|&t| ((t + s.t0).ln(), grid.sup(poisson_terms(s, r, t)).ln()))
        .collect();
    if points.iter().any(|p| !p.1.is_finite()) {
        return Err(Error::NonFinite("clp sup-norm"));
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = points.iter().copied().unzip();
    let regression = linreg(&xs, &ys)?;
    Ok(ClpEstimate { r, eta: r as f64 + regression.slope, stderr: regression.slope_stderr, regression, points })
}

/// Midpoint and half-width of the union of the intervals `eta +- stderr`.
pub fn pooled_interval(estimates: &[ClpEstimate]) -> Option<(f64, f64)> {
    let lo = estimates.iter().map(|e| e.eta - e.stderr).reduce(f64::min)?;
    let hi = estimates.iter().map(|e| e.eta + e.stderr).reduce(f64::max)?;
    Some((0.5 * (lo + hi), 0.5 * (hi - lo)))
}

/// Integer range `[A^{M-1}, A^M)` of block `M >= 1`.
fn block_range(m: u32, a: f64) -> (usize, usize) {
    let lo = a.powi(m as i32 - 1).ceil() as usize;
    let hi = a.powi(m as i32).ceil() as usize;
    (lo, hi)
}

fn check_base(a: f64) -> Result<()> {
    if !(a > 1.0 && a.is_finite()) {
        return Err(Error::InvalidArgument("block base must exceed 1".into()));
    }
    Ok(())
}

fn block_sup(s: &Spectrum, m: u32, a: f64, grid: &SupGrid) -> Result<f64> {
    if m == 0 {
        return Ok(s.coeffs[0].abs());
    }
    if a.powi(m as i32) > s.l_max() as f64 {
        return Err(Error::BlockExceedsSpectrum(m as i32));
    }
    let (lo, hi) = block_range(m, a);
    Ok(grid.sup((lo..hi).map(|l| (l, s.boundary(l)))))
}

/// `sup_x |sum_{A^{M-1} <= l < A^M} ĥ_l e^{2πilx}|` with boundary
/// coefficients; `M = 0` gives `|ĥ_0|`.
pub fn dyadic_block_supnorm(s: &Spectrum, m: u32, a: f64) -> Result<f64> {
    check_base(a)?;
    block_sup(s, m, a, &SupGrid::new(s.grid_len(OVERSAMPLE)))
}

/// Result of the discrete estimator.
#[derive(Debug, Clone, PartialEq)]
pub struct DlpEstimate {
    pub a: f64,
    pub eta: f64,
    pub stderr: f64,
    /// Intercept `C` of `log_A sup = C - eta M`.
    pub c: f64,
    pub c_stderr: f64,
    pub regression: RegressionResult,
    /// `(M, log_A sup)` pairs entering the fit.
    pub points: Vec<(u32, f64)>,
    /// Blocks left out because undamping them would amplify by more than `e`.
    pub excluded: Vec<u32>,
}

/// Blocks `M >= 1` lying in the spectrum, split into those passing the
/// deconvolution guard `2π l_top t0 <= 1` and those failing it. Blocks
/// without integers are skipped.
pub fn admissible_blocks(s: &Spectrum, a: f64) -> (Vec<u32>, Vec<u32>) {
    let (mut ok, mut excluded) = (Vec::new(), Vec::new());
    let mut m = 1;
    while a.powi(m as i32) <= s.l_max() as f64 {
        let (lo, hi) = block_range(m, a);
        if hi > lo {
            if TAU * (hi - 1) as f64 * s.t0 <= 1.0 {
                ok.push(m);
            } else {
                excluded.push(m);
            }
        }
        m += 1;
    }
    (ok, excluded)
}

/// Fits `log_A ||L_M||_inf = C - eta M`. Without an explicit range the top
/// two thirds of the admissible blocks are used.
pub fn dlp_estimate(s: &Spectrum, a: f64, m_range: Option<(u32, u32)>) -> Result<DlpEstimate> {
    check_base(a)?;
    let (ok, excluded) = admissible_blocks(s, a);
    let blocks: Vec<u32> = match m_range {
        Some((lo, hi)) => {
            if hi > 0 && a.powi(hi as i32) > s.l_max() as f64 {
                return Err(Error::BlockExceedsSpectrum(hi as i32));
            }
            ok.iter().copied().filter(|m| (lo..=hi).contains(m)).collect()
        }
        None => ok[ok.len() / 3..].to_vec(),
    };
    let grid = SupGrid::new(s.grid_len(OVERSAMPLE));
    let sups: Vec<f64> = blocks.par_iter().map(|&m| block_sup(s, m, a, &grid)).collect::<Result<_>>()?;
    let points: Vec<(u32, f64)> =
        blocks.iter().zip(sups).filter(|(_, v)| *v > 0.0).map(|(&m, v)| (m, v.ln() / a.ln())).collect();
    if points.len() < 8 {
        return Err(Error::InsufficientBlocks { needed: 8, got: points.len() });
    }
    let xs: Vec<f64> = points.iter().map(|p| p.0 as f64).collect();
    let ys: Vec<f64> = points.iter().map(|p| p.1).collect();
    let regression = linreg(&xs, &ys)?;
    Ok(DlpEstimate {
        a,
        eta: -regression.slope,
        stderr: regression.slope_stderr,
        c: regression.intercept,
        c_stderr: regression.intercept_stderr,
        regression,
        points,
        excluded,
    })
}

/// Boundary spectrum `l^{-1-eta}`, `l >= 1`, of a function that is exactly
/// `eta`-Hölder at `x = 0`.
pub fn power_law_spectrum(eta: f64, l_max: usize) -> Vec<f64> {
    (0..=l_max).map(|l| if l == 0 { 0.0 } else { (l as f64).powf(-1.0 - eta) }).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn wave(n: usize, f: impl Fn(f64) -> C64) -> Vec<C64> {
        (0..n).map(|j| f(j as f64 / n as f64)).collect()
    }

    #[test]
    fn constant_and_single_mode() {
        let s = fourier_coeffs(&wave(1024, |_| C64::new(2.5, 0.0)), 0.0).unwrap();
        assert!((s.coeffs[0] - 2.5).abs() < 1e-14);
        assert!(s.coeffs[1..].iter().all(|c| c.abs() <= 1e-12));
        let s = fourier_coeffs(&wave(1024, |x| C64::from_polar(1.0, TAU * x)), 0.0).unwrap();
        assert!((s.coeffs[1] - 1.0).abs() < 1e-12 && s.residual_imag <= 1e-12);
        assert_eq!(s.l_max(), 511);
        assert!(s.residual_negative < 1e-12);
        let s = fourier_coeffs(&wave(1024, |x| C64::from_polar(1.0, -TAU * x)), 0.0).unwrap();
        assert!((s.residual_negative - 1.0).abs() < 1e-12);
    }

    #[test]
    fn size_checks() {
        assert_eq!(fourier_coeffs(&vec![C64::new(0.0, 0.0); 1000], 0.0), Err(Error::NotPowerOfTwo(1000)));
        assert_eq!(fourier_coeffs(&vec![C64::new(0.0, 0.0); 512], 0.0), Err(Error::NotPowerOfTwo(512)));
    }

    fn single(l: usize, l_max: usize, t0: f64) -> Spectrum {
        let mut b = vec![0.0; l_max + 1];
        b[l] = 1.0;
        Spectrum::from_boundary(t0, &b)
    }

    #[test]
    fn poisson_single_mode() {
        let t0 = 1e-4;
        let s = single(1, 511, t0);
        let t = 0.02;
        let want = TAU * (-TAU * (t + t0)).exp();
        assert!((poisson_deriv_supnorm(&s, 1, t) - want).abs() < 1e-12);
        let s = Spectrum::from_boundary(0.0, &[0.7, 0.3, -0.2, 0.1]);
        assert!((poisson_deriv_supnorm(&s, 0, 50.0) - 0.7).abs() < 1e-12);
    }

    #[test]
    fn kernel_height_identity() {
        let b = power_law_spectrum(0.5, 1023);
        let (t0, t) = (1e-4, 3e-3);
        let lhs = poisson_deriv_supnorm(&Spectrum::from_boundary(t0, &b), 2, t);
        let rhs = poisson_deriv_supnorm(&Spectrum::from_boundary(0.0, &b), 2, t + t0);
        assert!((lhs - rhs).abs() < 1e-10 * rhs);
    }

    #[test]
    fn blocks() {
        let s = single(2, 1023, 0.0);
        let nonzero: Vec<u32> =
            (1..=30).filter(|&m| dyadic_block_supnorm(&s, m, 1.25).unwrap() > 0.0).collect();
        assert_eq!(nonzero, vec![4]);
        assert!(1.25f64.powi(3) <= 2.0 && 2.0 < 1.25f64.powi(4));
        let s = Spectrum::from_boundary(0.0, &[0.75, 0.0, 0.0]);
        assert_eq!(dyadic_block_supnorm(&s, 0, 1.25).unwrap(), 0.75);
        let s = single(1, 1023, 0.0);
        assert_eq!(dyadic_block_supnorm(&s, 40, 1.25), Err(Error::BlockExceedsSpectrum(40)));
        assert!(matches!(dlp_estimate(&s, 1.25, None), Err(Error::InsufficientBlocks { .. })));
    }

    #[test]
    fn guard_excludes_amplified_blocks() {
        let s = Spectrum::from_boundary(1e-3, &power_law_spectrum(0.5, 4095));
        let (ok, excluded) = admissible_blocks(&s, 1.25);
        assert!(!excluded.is_empty());
        for m in ok {
            let (_, hi) = block_range(m, 1.25);
            assert!(TAU * (hi - 1) as f64 * 1e-3 <= 1.0);
        }
    }

    #[test]
    fn clp_checks() {
        let s = Spectrum::from_boundary(1e-5, &power_law_spectrum(0.5, 1023));
        assert!(matches!(clp_estimate(&s, 2, &log_space(1e-3, 1e-1, 9)), Err(Error::InsufficientPoints { .. })));
        assert!(clp_estimate(&s, 1, &default_t_values()).is_err());
        assert!(clp_estimate(&s, 2, &log_space(1e-5, 1e-1, 20)).is_err());
    }

    #[test]
    fn pooled_union() {
        let mk = |eta, stderr| ClpEstimate {
            r: 2,
            eta,
            stderr,
            regression: RegressionResult { slope: 0.0, intercept: 0.0, slope_stderr: 0.0, intercept_stderr: 0.0 },
            points: vec![],
        };
        let (m, h) = pooled_interval(&[mk(0.49, 0.01), mk(0.5, 0.005), mk(0.51, 0.002)]).unwrap();
        assert!((m - 0.496).abs() < 1e-12 && (h - 0.016).abs() < 1e-12);
    }
}
