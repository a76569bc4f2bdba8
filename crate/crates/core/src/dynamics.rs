//! The Yoccoz function `U(λ) = lim λ^{-n} P_λ^n(1/2)` of the quadratic
//! polynomial `P_λ(z) = λz(1 - z)`, its conjugate `V = -λU`, and the
//! combination `H(z) = log U(e^{2πiz}) - i B(z)`.

use std::f64::consts::{PI, TAU};

use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::bruno::{BrunoEvaluator, BrunoTable, CutoffConfig};
use crate::error::{Error, Result};

/// Orbits leaving this disk are treated as numerical failure; the critical
/// orbit always converges to 0 when `|λ| < 1`.
const ESCAPE_RADIUS: f64 = 1e8;

/// Stopping rule for the orbit iteration.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IterationBudget {
    /// Required agreement of `U_n` and `U_{2n}`, relative to `|U|` below 1.
    pub eps_u: f64,
    /// Iteration starts being checked once `|z_n| <= rho`.
    pub rho: f64,
    /// Hard limit on the number of iterations.
    pub n_cap: u64,
}

impl Default for IterationBudget {
    fn default() -> Self {
        IterationBudget { eps_u: 1e-3, rho: 1e-4, n_cap: 10_000_000 }
    }
}

impl IterationBudget {
    pub fn new(eps_u: f64, rho: f64, n_cap: u64) -> Self {
        IterationBudget { eps_u, rho, n_cap }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.eps_u > 0.0) {
            return Err(Error::InvalidArgument("eps_u must be positive".into()));
        }
        if !(self.rho > 0.0 && self.rho < 0.25) {
            return Err(Error::InvalidArgument("rho must lie in (0, 1/4)".into()));
        }
        if self.n_cap < 1 {
            return Err(Error::InvalidArgument("n_cap must be at least 1".into()));
        }
        Ok(())
    }
}

fn check_lambda(lambda: C64) -> Result<()> {
    let r = lambda.norm();
    if !r.is_finite() || r >= 1.0 {
        return Err(Error::NonContracting(r));
    }
    if r == 0.0 {
        return Err(Error::InvalidArgument("lambda must be nonzero".into()));
    }
    Ok(())
}

/// `U_n(λ) = λ^{-n} P_λ^n(1/2)`, from the recursion
/// `U_{k+1} = U_k (1 - z_k)`. `U_1 = 1/4` exactly.
pub fn yoccoz_u_n(lambda: C64, n: u64) -> C64 {
    let mut z = C64::new(0.5, 0.0);
    let mut u = C64::new(0.5, 0.0);
    for _ in 0..n {
        u *= 1.0 - z;
        z = lambda * z * (1.0 - z);
    }
    u
}

/// Runs an orbit until `|z| <= rho`, then doubles `n` until
/// `|U_{2n} - U_n| <= eps_u min(1, |U_{2n}|)`. The relative form keeps
/// `log U` accurate where `|U|` is tiny, near low-order roots of unity.
/// `step` maps `(z, u)` to the next pair.
fn stabilised<F>(z0: C64, u0: C64, budget: &IterationBudget, step: F) -> Result<C64>
where
    F: Fn(C64, C64) -> (C64, C64),
{
    budget.validate()?;
    let (mut z, mut u) = (z0, u0);
    let mut n: u64 = 0;
    while z.norm() > budget.rho {
        if n >= budget.n_cap {
            return Err(Error::BudgetExhausted(budget.n_cap));
        }
        if !(z.norm() < ESCAPE_RADIUS) {
            return Err(Error::NonFinite("critical orbit"));
        }
        (z, u) = step(z, u);
        n += 1;
    }
    let mut n = n.max(1);
    while n < budget.n_cap {
        let prev = u;
        let target = (2 * n).min(budget.n_cap);
        for _ in n..target {
            (z, u) = step(z, u);
        }
        if (u - prev).norm() <= budget.eps_u * u.norm().min(1.0) {
            return if u.is_finite() { Ok(u) } else { Err(Error::NonFinite("yoccoz")) };
        }
        n = target;
    }
    Err(Error::BudgetExhausted(budget.n_cap))
}

/// `U(λ)` for `0 < |λ| < 1`.
pub fn yoccoz_u(lambda: C64, budget: &IterationBudget) -> Result<C64> {
    check_lambda(lambda)?;
    stabilised(C64::new(0.5, 0.0), C64::new(0.5, 0.0), budget, |z, u| {
        (lambda * z * (1.0 - z), u * (1.0 - z))
    })
}

/// `V(λ) = -λ U(λ)`.
pub fn yoccoz_v(lambda: C64, budget: &IterationBudget) -> Result<C64> {
    Ok(-lambda * yoccoz_u(lambda, budget)?)
}

/// `V(λ)` from the conjugate polynomial `Q_λ(w) = λw + w^2` started at its
/// critical point `-λ/2`, with `λ^{-n}` taken from the exponential. An
/// independent route to [`yoccoz_v`].
pub fn yoccoz_v_direct(lambda: C64, budget: &IterationBudget) -> Result<C64> {
    check_lambda(lambda)?;
    budget.validate()?;
    let log_l = lambda.ln();
    let v_at = |w: C64, n: u64| w * (-(n as f64) * log_l).exp();
    // |w| = |λ||z|: the same stopping point as for P_λ
    let rho = budget.rho * lambda.norm();
    let mut w = -lambda / 2.0;
    let mut n: u64 = 0;
    while w.norm() > rho {
        if n >= budget.n_cap {
            return Err(Error::BudgetExhausted(budget.n_cap));
        }
        w = lambda * w + w * w;
        n += 1;
    }
    let mut prev = v_at(w, n);
    let mut n = n.max(1);
    while n < budget.n_cap {
        let target = (2 * n).min(budget.n_cap);
        for _ in n..target {
            w = lambda * w + w * w;
        }
        let v = v_at(w, target);
        if (v - prev).norm() <= budget.eps_u * v.norm().min(1.0) {
            return Ok(v);
        }
        prev = v;
        n = target;
    }
    Err(Error::BudgetExhausted(budget.n_cap))
}

/// `λ = e^{2πi(x + it)}`.
pub fn lambda_at(x: f64, t: f64) -> C64 {
    C64::from_polar((-TAU * t).exp(), TAU * x)
}

/// Uniform grid `x_j = j/n` on `[0, 1)`.
pub fn unit_grid(n_points: usize) -> Vec<f64> {
    (0..n_points).map(|j| j as f64 / n_points as f64).collect()
}

/// Forces every phase increment into `(-π, π]`, starting from the first value.
pub fn unwrap_phase(values: &mut [C64]) {
    for j in 1..values.len() {
        let prev = values[j - 1].im;
        let d = values[j].im - prev;
        values[j].im = prev + d - TAU * ((d - PI) / TAU).ceil();
    }
}

/// `log U(e^{2πi(x_j + it)})` on `x_j = j/n`, the imaginary part unwrapped
/// along the grid from the principal branch at `x = 0`.
pub fn log_u_unwrapped(t: f64, n_points: usize, budget: &IterationBudget) -> Result<Vec<C64>> {
    if !(t > 0.0) {
        return Err(Error::InvalidArgument("t must be positive".into()));
    }
    if n_points < 16 {
        return Err(Error::InsufficientPoints { needed: 16, got: n_points });
    }
    budget.validate()?;
    let mut logs: Vec<C64> = unit_grid(n_points)
        .par_iter()
        .map(|&x| yoccoz_u(lambda_at(x, t), budget).map(|u| u.ln()))
        .collect::<Result<_>>()?;
    unwrap_phase(&mut logs);
    Ok(logs)
}

/// One value `H(x + it)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct HSample {
    pub x: f64,
    pub t: f64,
    pub value: C64,
}

/// `H = log U - i B` on the uniform grid `x_j = j/n`.
pub fn h_grid(
    t: f64,
    n_points: usize,
    budget: &IterationBudget,
    table: &BrunoTable,
    cfg: &CutoffConfig,
) -> Result<Vec<HSample>> {
    let ev = BrunoEvaluator::new(table, cfg)?;
    let logs = log_u_unwrapped(t, n_points, budget)?;
    let xs = unit_grid(n_points);
    let bs = ev.eval_many(&xs, t)?;
    let i = C64::new(0.0, 1.0);
    Ok(xs
        .into_iter()
        .zip(logs.into_iter().zip(bs))
        .map(|(x, (l, b))| HSample { x, t, value: l - i * b })
        .collect())
}
