//! Complex dilogarithm, the kernel `phi_{1/2}`, its derivatives and the
//! `L_g` action on kernels.

use std::f64::consts::{LN_2, PI};
use std::sync::LazyLock;

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::monoid::MonoidMatrix;

const PI2_6: f64 = PI * PI / 6.0;

/// Bernoulli numbers `B_2, B_4, ..., B_24`.
pub(crate) const BERNOULLI_EVEN: [f64; 12] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
    7.0 / 6.0,
    -3617.0 / 510.0,
    43867.0 / 798.0,
    -174611.0 / 330.0,
    854513.0 / 138.0,
    -236364091.0 / 2730.0,
];

/// `B_{2k} / (2k+1)!` for the series of `Li2` in `-log(1-z)`.
static LI2_BERNOULLI: LazyLock<[f64; 12]> = LazyLock::new(|| {
    let mut out = [0.0; 12];
    let mut fact = 1.0; // (2k+1)!
    for (k, b) in BERNOULLI_EVEN.iter().enumerate() {
        let n = 2 * (k + 1) + 1;
        fact *= ((n - 1) * n) as f64;
        out[k] = b / fact;
    }
    out
});

fn is_on_cut(z: C64) -> bool {
    z.im == 0.0 && z.re >= 1.0
}

/// `Li2(z)` by its defining power series; `|z| <= 1/2`.
fn li2_series(z: C64) -> C64 {
    let mut sum = C64::new(0.0, 0.0);
    let mut zk = z;
    for k in 1..200 {
        let term = zk / (k * k) as f64;
        sum += term;
        if term.norm() <= 1e-17 * sum.norm() {
            break;
        }
        zk *= z;
    }
    sum
}

/// `Li2(z) = sum_n B_n u^{n+1}/(n+1)!` with `u = -log(1-z)`; `|u|` well
/// inside `2 pi`.
fn li2_bernoulli(z: C64) -> C64 {
    let u = -(C64::new(1.0, 0.0) - z).ln();
    let u2 = u * u;
    // u - u^2/4 + sum_k B_{2k} u^{2k+1} / (2k+1)!
    let mut poly = C64::new(0.0, 0.0);
    for c in LI2_BERNOULLI.iter().rev() {
        poly = poly * u2 + *c;
    }
    u - u2 / 4.0 + u * u2 * poly
}

/// Dilogarithm on the principal sheet without the cut check. Points on the
/// cut follow the sign of their (possibly signed-zero) imaginary part.
pub(crate) fn li2(z: C64) -> C64 {
    let one = C64::new(1.0, 0.0);
    if z == C64::new(0.0, 0.0) {
        return z;
    }
    let r = z.norm();
    if r <= 0.5 {
        li2_series(z)
    } else if r > 1.0 {
        // Li2(z) = -pi^2/6 - log^2(-z)/2 - Li2(1/z)
        let l = (-z).ln();
        -PI2_6 - l * l / 2.0 - li2(one / z)
    } else if z.re > 0.5 {
        // Li2(z) = pi^2/6 - log z log(1-z) - Li2(1-z)
        if z == one {
            return C64::new(PI2_6, 0.0);
        }
        PI2_6 - z.ln() * (one - z).ln() - li2(one - z)
    } else {
        li2_bernoulli(z)
    }
}

/// Complex dilogarithm `Li2(z)`, continuous on `C \ [1, +inf)`.
pub fn dilog(z: C64) -> Result<C64> {
    if is_on_cut(z) {
        return Err(Error::OnCut(format!("{z}")));
    }
    Ok(li2(z))
}

/// `c_m = (ln 2 + 1/m) / m`: `phi(z) = -(1/pi) sum_m c_m (2z)^{-m}`.
static PHI_COEFFS: LazyLock<Vec<f64>> =
    LazyLock::new(|| (0..400).map(|m| if m == 0 { 0.0 } else { (LN_2 + 1.0 / m as f64) / m as f64 }).collect());

/// Below this `|1/(2z)|` the Laurent series beats the dilogarithm.
const SERIES_RADIUS: f64 = 0.35;

fn on_support(z: C64) -> bool {
    z.im == 0.0 && (0.0..=0.5).contains(&z.re)
}

/// `phi` by the closed form in `u = 1/(2z)`.
fn phi_closed(u: C64) -> C64 {
    let one = C64::new(1.0, 0.0);
    (-li2(u) + LN_2 * (one - u).ln()) / PI
}

/// `j`-th derivative of `phi` by its Laurent series at infinity; needs
/// `|2z| >= 2`.
pub(crate) fn phi_series_deriv(z: C64, j: u32) -> C64 {
    let u = (2.0 * z).inv();
    let un = u.norm();
    let mut sum = C64::new(0.0, 0.0);
    let mut um = u;
    let coeffs = &*PHI_COEFFS;
    for m in 1..coeffs.len() {
        let mut rising = 1.0;
        for i in 0..j {
            rising *= (m as u32 + i) as f64;
        }
        let term = um * (coeffs[m] * rising);
        sum += term;
        // terms grow like m^j before the geometric decay takes over
        if term.norm() <= 1e-17 * sum.norm() && un * (m + j as usize) as f64 / (m as f64) < 0.9 {
            break;
        }
        um *= u;
    }
    let sign = if j % 2 == 0 { -1.0 } else { 1.0 };
    sum * sign / PI / z.powu(j)
}

/// Kernel `phi_{1/2}` without the support check.
#[inline]
pub(crate) fn phi_raw(z: C64) -> C64 {
    let u = (2.0 * z).inv();
    if u.norm() <= SERIES_RADIUS {
        phi_series_deriv(z, 0)
    } else {
        phi_closed(u)
    }
}

/// First derivative of `phi_{1/2}` without the support check.
#[inline]
pub(crate) fn phi_deriv_raw(z: C64) -> C64 {
    let u = (2.0 * z).inv();
    if u.norm() <= SERIES_RADIUS {
        phi_series_deriv(z, 1)
    } else {
        let one = C64::new(1.0, 0.0);
        (-2.0 * u * (one - u).ln() + 2.0 * LN_2 * u * u / (one - u)) / PI
    }
}

/// `phi_{1/2}(z) = -(1/pi) Li2(1/(2z)) + (1/pi) log 2 log(1 - 1/(2z))`, the
/// Hilbert transform of `-log x` on `(0, 1/2]`.
pub fn phi_half(z: C64) -> Result<C64> {
    if on_support(z) {
        return Err(Error::OnSupport(format!("{z}")));
    }
    Ok(phi_raw(z))
}

/// Derivative of [`phi_half`]:
/// `-(2/pi) u log(1-u) + (2 log 2 / pi) u^2/(1-u)` with `u = 1/(2z)`.
pub fn phi_half_deriv(z: C64) -> Result<C64> {
    if on_support(z) {
        return Err(Error::OnSupport(format!("{z}")));
    }
    Ok(phi_deriv_raw(z))
}

/// `(1 + L_sigma) phi (z) = phi(z) - phi(1 - z)`.
pub fn one_plus_sigma(z: C64) -> Result<C64> {
    Ok(phi_half(z)? - phi_half(1.0 - z)?)
}

/// A holomorphic function vanishing at infinity, with its derivative.
pub trait Kernel {
    fn value(&self, z: C64) -> Result<C64>;
    fn deriv(&self, z: C64) -> Result<C64>;
}

/// `phi_{1/2}` as a [`Kernel`].
#[derive(Debug, Clone, Copy, Default)]
pub struct PhiKernel;

impl Kernel for PhiKernel {
    fn value(&self, z: C64) -> Result<C64> {
        phi_half(z)
    }
    fn deriv(&self, z: C64) -> Result<C64> {
        phi_half_deriv(z)
    }
}

/// `(1 + L_sigma) phi_{1/2}` as a [`Kernel`].
#[derive(Debug, Clone, Copy, Default)]
pub struct PsiKernel;

impl Kernel for PsiKernel {
    fn value(&self, z: C64) -> Result<C64> {
        one_plus_sigma(z)
    }
    fn deriv(&self, z: C64) -> Result<C64> {
        Ok(phi_half_deriv(z)? + phi_half_deriv(1.0 - z)?)
    }
}

/// `L_g k(z) = (a - cz)[k((dz-b)/(a-cz)) - k(-d/c)] - (det/c) k'(-d/c)`.
///
/// For `c = 0` the two terms at `-d/c = infinity` vanish, leaving
/// `(a - cz) k((dz-b)/(a-cz))`.
pub fn l_action<K: Kernel>(kernel: &K, g: &MonoidMatrix, z: C64) -> Result<C64> {
    let (a, b, c, d) = (g.a as f64, g.b as f64, g.c as f64, g.d as f64);
    let factor = a - c * z;
    if factor == C64::new(0.0, 0.0) {
        return Err(Error::Pole);
    }
    let w = (d * z - b) / factor;
    if g.c == 0 {
        return Ok(factor * kernel.value(w)?);
    }
    let w0 = C64::new(-d / c, 0.0);
    let det = g.det() as f64;
    Ok(factor * (kernel.value(w)? - kernel.value(w0)?) - det / c * kernel.deriv(w0)?)
}
