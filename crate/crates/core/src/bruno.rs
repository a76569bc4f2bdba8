//! Truncated evaluation of the 1/2-complex Bruno function
//! `B(z) = sum_n sum_g L_g (1 + L_sigma) phi_{1/2}(z - n)` and the cut-off
//! diagnostics built on it.
//!
//! Each summand has a convergent Laurent expansion at infinity. Far from the
//! kernel support it is evaluated from that expansion, and the part of the
//! sum over `n` beyond the cut-offs can be added back in closed form through
//! Hurwitz zeta and digamma tails (`CutoffConfig::tail_order`).

use std::f64::consts::{LN_2, PI};

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::monoid::{matrix_s, matrix_t, MonoidMatrix};
use crate::rational::Rational;
use crate::special::{phi_raw, phi_series_deriv, BERNOULLI_EVEN};

/// Number of Laurent coefficients kept per matrix term.
const LAURENT_TERMS: usize = 12;
/// Laurent evaluation is used once `c d |zeta| >= LAURENT_SWITCH`, where the
/// expansion ratio is at most `1/LAURENT_SWITCH`.
const LAURENT_SWITCH: f64 = 25.0;
/// Laurent evaluation of the identity term for `|z - n - 1/2| >= IDENTITY_SWITCH`.
const IDENTITY_SWITCH: f64 = 8.0;
const IDENTITY_TERMS: usize = 8;
/// Largest supported tail order.
pub const MAX_TAIL_ORDER: u32 = LAURENT_TERMS as u32;

/// Cut-offs of the truncated sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct CutoffConfig {
    /// Largest Farey order.
    pub n_max: u32,
    /// Half-width of the sum over `n` for `q <= q_switch` (and the identity).
    pub k1: u32,
    /// Half-width for `q > q_switch`.
    pub k2: u32,
    pub q_switch: u32,
    /// Orders of the Laurent tail added beyond `|n| = k`; 0 gives the plain
    /// truncated sum.
    pub tail_order: u32,
}

impl Default for CutoffConfig {
    fn default() -> Self {
        CutoffConfig { n_max: 151, k1: 80, k2: 20, q_switch: 20, tail_order: 8 }
    }
}

impl CutoffConfig {
    pub fn new(n_max: u32, k1: u32, k2: u32, q_switch: u32) -> Self {
        CutoffConfig { n_max, k1, k2, q_switch, ..Default::default() }
    }

    pub fn with_tail_order(mut self, tail_order: u32) -> Self {
        self.tail_order = tail_order;
        self
    }

    pub fn validate(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::InvalidArgument(m.to_string()));
        if self.n_max < 2 {
            return bad("n_max must be at least 2");
        }
        if !(self.k1 >= self.k2 && self.k2 >= 1) {
            return bad("cut-offs must satisfy k1 >= k2 >= 1");
        }
        if !(2..=self.n_max).contains(&self.q_switch) {
            return bad("q_switch must lie in [2, n_max]");
        }
        if self.tail_order > MAX_TAIL_ORDER {
            return bad("tail_order too large");
        }
        Ok(())
    }
}

/// One fraction of the table with its monoid matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct TableEntry {
    pub fraction: Rational,
    pub g_t: MonoidMatrix,
    /// Present iff the expansion of the fraction ends with `(2,+1)`.
    pub g_s: Option<MonoidMatrix>,
}

/// Precomputed data of one summand `L_g psi`.
#[derive(Debug, Clone)]
struct Term {
    q: u32,
    a: f64,
    b: f64,
    c: f64,
    d: f64,
    /// Center `a/c` of the Laurent expansion.
    s: f64,
    /// `(LAURENT_SWITCH / (c d))^2`.
    near2: f64,
    psi_w0: f64,
    /// `(det/c) psi'(w0)`.
    slope: f64,
    /// `A_2, ..., A_13`: `L_g psi(z) = sum_j A_j (z - a/c)^{1-j}`.
    laurent: [f64; LAURENT_TERMS],
}

/// Matrices of all fractions in `(0,1)` with denominator up to `n_max`,
/// ordered by `(q, p)`.
#[derive(Debug, Clone)]
pub struct BrunoTable {
    n_max: u32,
    entries: Vec<TableEntry>,
    terms: Vec<Term>,
}

impl BrunoTable {
    pub fn n_max(&self) -> u32 {
        self.n_max
    }

    pub fn entries(&self) -> &[TableEntry] {
        &self.entries
    }

    /// Number of summands (`g_T` plus present `g_S`).
    pub fn term_count(&self) -> usize {
        self.terms.len()
    }
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

impl Term {
    fn new(g: &MonoidMatrix, q: u32) -> Self {
        let (a, b, c, d) = (g.a as f64, g.b as f64, g.c as f64, g.d as f64);
        let det = g.det() as f64;
        let w0 = C64::new(-d / c, 0.0);
        let psi_at = |j: u32| {
            let s = if j % 2 == 0 { 1.0 } else { -1.0 };
            (phi_series_deriv(w0, j) - s * phi_series_deriv(1.0 - w0, j)).re
        };
        let mut laurent = [0.0; LAURENT_TERMS];
        for (i, slot) in laurent.iter_mut().enumerate() {
            let j = i + 2;
            let sign = if j % 2 == 0 { -1.0 } else { 1.0 };
            *slot = psi_at(j as u32) * det.powi(j as i32) * sign / (factorial(j) * c.powi(2 * j as i32 - 1));
        }
        Term {
            q,
            a,
            b,
            c,
            d,
            s: a / c,
            near2: (LAURENT_SWITCH / (c * d)).powi(2),
            psi_w0: psi_at(0),
            slope: det / c * psi_at(1),
            laurent,
        }
    }

    /// `L_g psi(z)`.
    #[inline]
    fn value(&self, z: C64) -> C64 {
        let zeta = z - self.s;
        if zeta.norm_sqr() >= self.near2 {
            let y = zeta.inv();
            let mut acc = C64::new(0.0, 0.0);
            for coef in self.laurent.iter().rev() {
                acc = acc * y + *coef;
            }
            acc * y
        } else {
            let factor = self.a - self.c * z;
            let w = (self.d * z - self.b) / factor;
            factor * (phi_raw(w) - phi_raw(1.0 - w) - self.psi_w0) - self.slope
        }
    }

    /// Laurent coefficients `C_1..C_P` of `sum_m C_m (z - a/c)^{-m}`.
    fn tail_coeffs(&self, order: usize) -> Vec<f64> {
        self.laurent[..order].to_vec()
    }
}

/// `M_j = int_0^1 -log||y|| (y - 1/2)^j dy` for even `j`.
fn identity_moment(j: usize) -> f64 {
    let h: f64 = (1..=j + 1).map(|k| 1.0 / k as f64).sum();
    2.0 * 0.5f64.powi(j as i32 + 1) * (h + LN_2) / (j + 1) as f64
}

/// Laurent coefficients of `psi(z) = sum_m C_m (z - 1/2)^{-m}`.
fn identity_coeffs(order: usize) -> Vec<f64> {
    (1..=order)
        .map(|m| if m % 2 == 1 { -identity_moment(m - 1) / PI } else { 0.0 })
        .collect()
}

/// `(1 + L_sigma) phi (z)`, switching to the expansion at infinity when far.
#[inline]
fn identity_value(z: C64, moments: &[f64; IDENTITY_TERMS]) -> C64 {
    let w = z - 0.5;
    if w.norm_sqr() >= IDENTITY_SWITCH * IDENTITY_SWITCH {
        let y = w.inv();
        let y2 = y * y;
        let mut acc = C64::new(0.0, 0.0);
        for m in moments.iter().rev() {
            acc = acc * y2 + *m;
        }
        -acc * y / PI
    } else {
        phi_raw(z) - phi_raw(1.0 - z)
    }
}

/// Re-expands `sum_p C_p (w + delta)^{-p}` as `sum_m C'_m w^{-m}` up to the
/// length of `coeffs`.
fn recentre(coeffs: &[f64], delta: f64) -> Vec<f64> {
    let order = coeffs.len();
    let mut out = vec![0.0; order];
    for m in 1..=order {
        let mut acc = 0.0;
        for p in 1..=m {
            let i = m - p;
            acc += coeffs[p - 1] * binomial(m - 1, i) * (-delta).powi(i as i32);
        }
        out[m - 1] = acc;
    }
    out
}

fn binomial(n: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Builds the table of fractions `p/q in (0,1)`, `q <= cfg.n_max`.
pub fn build_table(cfg: &CutoffConfig) -> BrunoTable {
    let n_max = cfg.n_max.max(2);
    let mut entries = Vec::new();
    let mut terms = Vec::new();
    for q in 2..=n_max as i64 {
        for p in 1..q {
            let r = Rational::new(p, q);
            if r.denom() != q {
                continue;
            }
            let g_t = matrix_t(r).expect("interior fraction");
            let (g_s, in_ms) = matrix_s(r).expect("interior fraction");
            terms.push(Term::new(&g_t, q as u32));
            if in_ms {
                terms.push(Term::new(&g_s, q as u32));
            }
            entries.push(TableEntry {
                fraction: r,
                g_t: MonoidMatrix { word: None, ..g_t },
                g_s: in_ms.then_some(MonoidMatrix { word: None, ..g_s }),
            });
        }
    }
    BrunoTable { n_max, entries, terms }
}

/// `sum_{|n| > k} (w - n)^{-m}` for `m = 1..=order`.
pub fn tail_sums(w: C64, k: u32, order: usize) -> Vec<C64> {
    let a = k as i64 + 1;
    let big = a.max(20);
    let mut out = vec![C64::new(0.0, 0.0); order];
    for n in a..big {
        let ym = (w - n as f64).inv();
        let yp = (w + n as f64).inv();
        let (mut pm, mut pp) = (ym, yp);
        for slot in out.iter_mut() {
            *slot += pm + pp;
            pm *= ym;
            pp *= yp;
        }
    }
    let big = big as f64;
    for (i, slot) in out.iter_mut().enumerate() {
        let m = i + 1;
        *slot += if m == 1 {
            digamma_asymptotic(big - w) - digamma_asymptotic(big + w)
        } else {
            let s = if m % 2 == 0 { 1.0 } else { -1.0 };
            hurwitz_asymptotic(m, big + w) + s * hurwitz_asymptotic(m, big - w)
        };
    }
    out
}

/// Digamma function for `|x|` large with `Re x > 0`.
fn digamma_asymptotic(x: C64) -> C64 {
    let y2 = (x * x).inv();
    let mut acc = C64::new(0.0, 0.0);
    for (k, b) in BERNOULLI_EVEN.iter().enumerate().take(8).rev() {
        acc = acc * y2 + b / (2 * (k + 1)) as f64;
    }
    x.ln() - 0.5 * x.inv() - acc * y2
}

/// Hurwitz zeta `zeta(m, x)`, `m >= 2`, for `|x|` large with `Re x > 0`.
fn hurwitz_asymptotic(m: usize, x: C64) -> C64 {
    let y = x.inv();
    let ym = y.powu(m as u32);
    let mut sum = x * ym / (m - 1) as f64 + ym * 0.5;
    let y2 = y * y;
    let mut pow = ym * y; // x^{-m-1}
    let mut rising = m as f64; // (m)_{2k-1}
    let mut fact = 2.0; // (2k)!
    for (k, b) in BERNOULLI_EVEN.iter().enumerate().take(8) {
        if k > 0 {
            rising *= ((m + 2 * k - 1) * (m + 2 * k)) as f64;
        }
        sum += pow * (b / fact * rising);
        pow *= y2;
        let n = 2 * (k + 1);
        fact *= ((n + 1) * (n + 2)) as f64;
    }
    sum
}

/// A table paired with a cut-off configuration, with the tail coefficients
/// aggregated per cut-off group.
#[derive(Debug, Clone)]
pub struct BrunoEvaluator<'a> {
    table: &'a BrunoTable,
    cfg: CutoffConfig,
    len: usize,
    moments: [f64; IDENTITY_TERMS],
    tail_k1: Vec<f64>,
    tail_k2: Vec<f64>,
}

impl<'a> BrunoEvaluator<'a> {
    pub fn new(table: &'a BrunoTable, cfg: &CutoffConfig) -> Result<Self> {
        cfg.validate()?;
        if cfg.n_max > table.n_max {
            return Err(Error::InvalidArgument(format!(
                "table built for n_max = {} cannot serve n_max = {}",
                table.n_max, cfg.n_max
            )));
        }
        let len = table.terms.partition_point(|t| t.q <= cfg.n_max);
        let order = cfg.tail_order as usize;
        let mut tail_k1 = identity_coeffs(order);
        let mut tail_k2 = vec![0.0; order];
        if order > 0 {
            for term in &table.terms[..len] {
                let c = recentre(&term.tail_coeffs(order), 0.5 - term.s);
                let dst = if term.q <= cfg.q_switch { &mut tail_k1 } else { &mut tail_k2 };
                for (d, v) in dst.iter_mut().zip(c) {
                    *d += v;
                }
            }
        }
        let mut moments = [0.0; IDENTITY_TERMS];
        for (i, m) in moments.iter_mut().enumerate() {
            *m = identity_moment(2 * i);
        }
        Ok(BrunoEvaluator { table, cfg: *cfg, len, moments, tail_k1, tail_k2 })
    }

    pub fn config(&self) -> &CutoffConfig {
        &self.cfg
    }

    /// Truncated sum at `z` with `Re z` already reduced.
    fn eval_direct(&self, z: C64) -> C64 {
        let (k1, k2) = (self.cfg.k1 as i64, self.cfg.k2 as i64);
        let mut sum = C64::new(0.0, 0.0);
        for n in -k1..=k1 {
            sum += identity_value(z - n as f64, &self.moments);
        }
        for term in &self.table.terms[..self.len] {
            let k = if term.q <= self.cfg.q_switch { k1 } else { k2 };
            for n in -k..=k {
                sum += term.value(z - n as f64);
            }
        }
        if self.cfg.tail_order > 0 {
            let order = self.cfg.tail_order as usize;
            let w = z - 0.5;
            let t1 = tail_sums(w, self.cfg.k1, order);
            let t2 = tail_sums(w, self.cfg.k2, order);
            for m in 0..order {
                sum += t1[m] * self.tail_k1[m] + t2[m] * self.tail_k2[m];
            }
        }
        sum
    }

    /// `B(z)` for `Im z > 0`, evaluated at the representative with
    /// `Re z in [0, 1/2]` and mapped back by periodicity and parity.
    pub fn eval(&self, z: C64) -> Result<C64> {
        if !(z.im > 0.0) {
            return Err(Error::LowerHalfPlane(z.im));
        }
        let x = z.re - z.re.floor();
        let v = if x <= 0.5 {
            self.eval_direct(C64::new(x, z.im))
        } else {
            -self.eval_direct(C64::new(1.0 - x, z.im)).conj()
        };
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite("bruno_complex"))
        }
    }

    /// Evaluates without the reduction, for cross-checks of the parity.
    pub fn eval_unreduced(&self, z: C64) -> Result<C64> {
        if !(z.im > 0.0) {
            return Err(Error::LowerHalfPlane(z.im));
        }
        Ok(self.eval_direct(z))
    }

    /// Evaluates at every `x + it`, in parallel, preserving order.
    pub fn eval_many(&self, xs: &[f64], t: f64) -> Result<Vec<C64>> {
        xs.par_iter().map(|&x| self.eval(C64::new(x, t))).collect()
    }
}

/// `B(z)` truncated per `cfg`.
pub fn bruno_complex(z: C64, table: &BrunoTable, cfg: &CutoffConfig) -> Result<C64> {
    BrunoEvaluator::new(table, cfg)?.eval(z)
}

/// `|Re B(p/q + delta + it) - Re B(p/q - delta + it)|`.
pub fn jump_at(r: Rational, t: f64, delta: f64, table: &BrunoTable, cfg: &CutoffConfig) -> Result<f64> {
    if !(t > 0.0 && delta > 0.0) {
        return Err(Error::InvalidArgument("t and delta must be positive".into()));
    }
    let ev = BrunoEvaluator::new(table, cfg)?;
    let x = r.to_f64();
    let hi = ev.eval(C64::new(x + delta, t))?;
    let lo = ev.eval(C64::new(x - delta, t))?;
    Ok((hi.re - lo.re).abs())
}

/// `|Im B(x + it) - b_half|` for each `t`, with `b_half` the value of the
/// real 1/2-Bruno function at `x`.
pub fn boundary_gaps(x: f64, b_half: f64, ts: &[f64], table: &BrunoTable, cfg: &CutoffConfig) -> Result<Vec<f64>> {
    let ev = BrunoEvaluator::new(table, cfg)?;
    ts.iter().map(|&t| ev.eval(C64::new(x, t)).map(|b| (b.im - b_half).abs())).collect()
}

/// Which cut-off a [`cutoff_study`] varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cutoff {
    NMax,
    K1,
    K2,
}

/// Mean relative error `|B_M - B_ref| / |B_ref|` over `grid` for each value
/// of the varied cut-off, all other cut-offs taken from `reference`.
pub fn cutoff_study(
    varied: Cutoff,
    values: &[u32],
    reference: &CutoffConfig,
    grid: &[C64],
    table: &BrunoTable,
) -> Result<Vec<f64>> {
    let ref_ev = BrunoEvaluator::new(table, reference)?;
    let refs: Vec<C64> = grid.par_iter().map(|&z| ref_ev.eval(z)).collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(values.len());
    for &v in values {
        let mut cfg = *reference;
        match varied {
            Cutoff::NMax => {
                cfg.n_max = v;
                cfg.q_switch = cfg.q_switch.min(v);
            }
            Cutoff::K1 => cfg.k1 = v,
            Cutoff::K2 => cfg.k2 = v,
        }
        let ev = BrunoEvaluator::new(table, &cfg)?;
        let errs: Vec<f64> = grid
            .par_iter()
            .zip(refs.par_iter())
            .map(|(&z, &b)| ev.eval(z).map(|v| (v - b).norm() / b.norm()))
            .collect::<Result<_>>()?;
        out.push(errs.iter().sum::<f64>() / errs.len() as f64);
    }
    Ok(out)
}

/// One row of a [`bruno_grid`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BrunoSample {
    pub x: f64,
    pub t: f64,
    pub value: C64,
}

/// `B(x + it)` on `n_points` equally spaced `x` from `x_lo` to `x_hi`
/// inclusive.
pub fn bruno_grid(
    t: f64,
    x_lo: f64,
    x_hi: f64,
    n_points: usize,
    table: &BrunoTable,
    cfg: &CutoffConfig,
) -> Result<Vec<BrunoSample>> {
    if !(t > 0.0) {
        return Err(Error::InvalidArgument("t must be positive".into()));
    }
    if n_points < 2 {
        return Err(Error::InsufficientPoints { needed: 2, got: n_points });
    }
    let ev = BrunoEvaluator::new(table, cfg)?;
    let step = (x_hi - x_lo) / (n_points - 1) as f64;
    let xs: Vec<f64> = (0..n_points).map(|j| x_lo + j as f64 * step).collect();
    let vals = ev.eval_many(&xs, t)?;
    Ok(xs.into_iter().zip(vals).map(|(x, value)| BrunoSample { x, t, value }).collect())
}

/// `psi` evaluated through the generic `L_g` action, for cross-checks.
#[cfg(test)]
fn term_direct(g: &MonoidMatrix, z: C64) -> C64 {
    use crate::special::{l_action, PsiKernel};
    l_action(&PsiKernel, g, z).unwrap()
}
