//! Nearest-integer continued fractions (NICF), convergents and the real
//! 1/2-Bruno function.

use std::fmt;
use std::ops::Sub;

use twofloat::TwoFloat;

use crate::error::{Error, Result};
use crate::rational::Rational;

/// One partial quotient `a` with its sign `eps`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct NicfPair {
    pub a: i64,
    pub eps: i8,
}

impl NicfPair {
    pub fn new(a: i64, eps: i8) -> Self {
        debug_assert!(eps == 1 || eps == -1);
        NicfPair { a, eps }
    }
}

impl fmt::Display for NicfPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{:+})", self.a, self.eps)
    }
}

/// Finite NICF `a_0 + eps_0/(a_1 + eps_1/(a_2 + ...))`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NicfExpansion {
    pairs: Vec<NicfPair>,
    exact: bool,
}

impl NicfExpansion {
    /// Wraps an arbitrary pair list (not checked for standard form).
    pub fn from_pairs(pairs: Vec<NicfPair>, exact: bool) -> Self {
        NicfExpansion { pairs, exact }
    }

    pub fn pairs(&self) -> &[NicfPair] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// True when the expansion came from exact rational arithmetic.
    pub fn is_exact(&self) -> bool {
        self.exact
    }

    /// Index of the last pair (n-bar).
    pub fn last_index(&self) -> usize {
        self.pairs.len() - 1
    }

    pub fn last(&self) -> NicfPair {
        *self.pairs.last().expect("empty expansion")
    }

    /// No `(2,-1)` anywhere, `a >= 2` beyond index 0, and a final `a = 2`
    /// is preceded by `eps = +1`.
    pub fn is_standard_form(&self) -> bool {
        let tail_ok = self
            .pairs
            .iter()
            .enumerate()
            .all(|(i, p)| !(p.a == 2 && p.eps == -1) && (i == 0 || p.a >= 2));
        let end_ok = match self.pairs.len() {
            0 | 1 => true,
            n => self.pairs[n - 1].a != 2 || self.pairs[n - 2].eps == 1,
        };
        tail_ok && end_ok
    }
}

impl fmt::Display for NicfExpansion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, p) in self.pairs.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "]")
    }
}

/// Nearest integer to `n/d` (`d > 0`), ties rounded down so that the
/// remainder is exactly 1/2 with `eps = +1`.
fn nearest_tie_down(n: i64, d: i64) -> i64 {
    // ceil((2n - d) / (2d))
    let num = 2 * n as i128 - d as i128;
    let den = 2 * d as i128;
    (-((-num).div_euclid(den))) as i64
}

/// Exact NICF of a rational number in standard form.
///
/// Works for any rational; values in `[0, 1)` start with `(0,+1)` or `(1,-1)`.
pub fn nicf_expand_rational(r: Rational) -> NicfExpansion {
    let (mut n, mut d) = (r.numer(), r.denom());
    let mut pairs = Vec::new();
    loop {
        // current value n/d, d > 0
        let a = nearest_tie_down(n, d);
        let rem = n - a * d; // value - a = rem/d, |rem/d| <= 1/2
        let eps: i8 = if rem >= 0 { 1 } else { -1 };
        pairs.push(NicfPair::new(a, eps));
        if rem == 0 {
            break;
        }
        // next value is 1/x = d/|rem|
        n = d;
        d = rem.abs();
    }
    NicfExpansion { pairs, exact: true }
}

/// Scalar types the floating NICF map can run on.
pub trait NicfScalar:
    Copy + PartialOrd + Sub<Output = Self> + fmt::Debug
{
    fn from_f64(x: f64) -> Self;
    fn to_f64(self) -> f64;
    fn recip(self) -> Self;
    fn ceil(self) -> Self;
    fn floor(self) -> Self;
    fn abs(self) -> Self;
    /// Natural log rounded to f64.
    fn ln_f64(self) -> f64;
}

impl NicfScalar for f64 {
    fn from_f64(x: f64) -> Self {
        x
    }
    fn to_f64(self) -> f64 {
        self
    }
    fn recip(self) -> Self {
        1.0 / self
    }
    fn ceil(self) -> Self {
        f64::ceil(self)
    }
    fn floor(self) -> Self {
        f64::floor(self)
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn ln_f64(self) -> f64 {
        self.ln()
    }
}

impl NicfScalar for TwoFloat {
    fn from_f64(x: f64) -> Self {
        TwoFloat::from(x)
    }
    fn to_f64(self) -> f64 {
        self.hi() + self.lo()
    }
    fn recip(self) -> Self {
        // the library quotient is only good to about 1e-17; one Newton step
        // restores full double-double accuracy
        let one = TwoFloat::from(1.0);
        let q = one / self;
        q + q * (one - self * q)
    }
    fn ceil(self) -> Self {
        TwoFloat::ceil(self)
    }
    fn floor(self) -> Self {
        TwoFloat::floor(self)
    }
    fn abs(self) -> Self {
        TwoFloat::abs(&self)
    }
    fn ln_f64(self) -> f64 {
        // ln(hi + lo) = ln(hi) + log1p(lo/hi)
        self.hi().ln() + (self.lo() / self.hi()).ln_1p()
    }
}

/// Partial quotients beyond this size mean the remainder is zero at working
/// precision.
const A_LIMIT: f64 = 9.0e15;

/// One step of the NICF map on `y`: nearest integer (ties down), sign and
/// remainder. Returns `None` when `a` is too large to be meaningful.
fn nicf_digit<T: NicfScalar>(y: T) -> Option<(i64, i8, T)> {
    let a = (y - T::from_f64(0.5)).ceil();
    let af = a.to_f64();
    if !af.is_finite() || af.abs() > A_LIMIT {
        return None;
    }
    let eps: i8 = if y >= a { 1 } else { -1 };
    Some((af as i64, eps, (y - a).abs()))
}

/// Output of [`nicf_expand_real`].
#[derive(Debug, Clone)]
pub struct RealExpansion {
    pub expansion: NicfExpansion,
    /// Remainders `x_0, x_1, ...` for every emitted pair with `x_k != 0`.
    pub remainders: Vec<f64>,
    /// Some remainder was exactly zero: the input is rational at working
    /// precision.
    pub rational_detected: bool,
}

/// Floating NICF of `x`, stopping once `x_k < stop_tol` or after `max_terms`
/// pairs.
pub fn nicf_expand_real<T: NicfScalar>(x: T, max_terms: usize, stop_tol: f64) -> RealExpansion {
    assert!(max_terms >= 1, "max_terms must be positive");
    let mut pairs = Vec::new();
    let mut remainders = Vec::new();
    let mut rational_detected = false;
    let (a0, e0, mut xk) = nicf_digit(x).expect("input out of range");
    pairs.push(NicfPair::new(a0, e0));
    loop {
        if xk.to_f64() == 0.0 {
            rational_detected = true;
            break;
        }
        remainders.push(xk.to_f64());
        if pairs.len() >= max_terms || xk.to_f64() < stop_tol {
            break;
        }
        match nicf_digit(xk.recip()) {
            Some((a, e, next)) => {
                pairs.push(NicfPair::new(a, e));
                xk = next;
            }
            None => {
                rational_detected = true;
                break;
            }
        }
    }
    RealExpansion {
        expansion: NicfExpansion { pairs, exact: false },
        remainders,
        rational_detected,
    }
}

/// Convergents `p_n/q_n` of an expansion, with the two seed columns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergentTable {
    /// `entries[n + 2] = (p_n, q_n)` for `n >= -2`.
    entries: Vec<(i64, i64)>,
    /// `eps[n]` for `n >= 0`.
    eps: Vec<i8>,
}

impl ConvergentTable {
    /// Number of proper convergents (`n >= 0`).
    pub fn len(&self) -> usize {
        self.entries.len() - 2
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// `(p_n, q_n)` for `n >= -2`.
    pub fn get(&self, n: isize) -> (i64, i64) {
        self.entries[(n + 2) as usize]
    }

    pub fn p(&self, n: isize) -> i64 {
        self.get(n).0
    }

    pub fn q(&self, n: isize) -> i64 {
        self.get(n).1
    }

    /// All entries including seeds, starting at `n = -2`.
    pub fn entries(&self) -> &[(i64, i64)] {
        &self.entries
    }

    pub fn last(&self) -> (i64, i64) {
        *self.entries.last().unwrap()
    }

    /// Checks `q_n p_{n-1} - p_n q_{n-1} = (-1)^n eps_0...eps_{n-1}`.
    pub fn sign_identity_holds(&self, n: usize) -> bool {
        let n = n as isize;
        let lhs = self.q(n) as i128 * self.p(n - 1) as i128 - self.p(n) as i128 * self.q(n - 1) as i128;
        let mut rhs: i128 = if n % 2 == 0 { 1 } else { -1 };
        for e in &self.eps[..n as usize] {
            rhs *= *e as i128;
        }
        lhs == rhs
    }
}

/// Convergents via `p_n = a_n p_{n-1} + eps_{n-1} p_{n-2}` with `eps_{-1} = 1`.
pub fn convergents(e: &NicfExpansion) -> ConvergentTable {
    assert!(!e.is_empty(), "empty expansion");
    let mut entries = Vec::with_capacity(e.len() + 2);
    entries.push((0i64, 1i64));
    entries.push((1i64, 0i64));
    let mut prev_eps: i64 = 1;
    for pair in e.pairs() {
        let n = entries.len();
        let (p1, q1) = entries[n - 1];
        let (p2, q2) = entries[n - 2];
        entries.push((pair.a * p1 + prev_eps * p2, pair.a * q1 + prev_eps * q2));
        prev_eps = pair.eps as i64;
    }
    ConvergentTable {
        entries,
        eps: e.pairs().iter().map(|p| p.eps).collect(),
    }
}

/// Value of a finite expansion (its last convergent).
pub fn nicf_evaluate(e: &NicfExpansion) -> Rational {
    let (p, q) = convergents(e).last();
    Rational::new(p, q)
}

/// Reduces `x` into `[0, 1/2]` using periodicity and evenness.
pub fn reduce_half<T: NicfScalar>(x: T) -> T {
    let f = x - x.floor();
    if f > T::from_f64(0.5) {
        T::from_f64(1.0) - f
    } else {
        f
    }
}

/// Real 1/2-Bruno function `sum_k beta_{k-1} log(1/x_k)`.
///
/// `x` is first reduced into `[0, 1/2]`. Summation stops once
/// `beta_{k-1} log(1/x_k) / (1 - x_k) < tail_tol`: later remainders are below
/// 1/2, so the weights `beta` at least halve at every step and the tail behaves
/// like a geometric series led by the current term.
pub fn bruno_real<T: NicfScalar>(x: T, tail_tol: f64, max_terms: usize) -> Result<f64> {
    let mut xk = reduce_half(x);
    let mut beta = 1.0;
    let mut sum = 0.0;
    for _ in 0..max_terms {
        let xf = xk.to_f64();
        if xf == 0.0 {
            return Err(Error::RationalInput);
        }
        let term = -beta * xk.ln_f64();
        sum += term;
        if term / (1.0 - xf) < tail_tol {
            break;
        }
        beta *= xf;
        match nicf_digit(xk.recip()) {
            Some((_, _, next)) => xk = next,
            None => return Err(Error::RationalInput),
        }
    }
    Ok(sum)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pairs(v: &[(i64, i8)]) -> Vec<NicfPair> {
        v.iter().map(|&(a, e)| NicfPair::new(a, e)).collect()
    }

    #[test]
    fn rational_examples() {
        let cases: [(i64, i64, &[(i64, i8)]); 6] = [
            (0, 1, &[(0, 1)]),
            (1, 2, &[(0, 1), (2, 1)]),
            (2, 5, &[(0, 1), (2, 1), (2, 1)]),
            (3, 7, &[(0, 1), (2, 1), (3, 1)]),
            (1, 3, &[(0, 1), (3, 1)]),
            (2, 3, &[(1, -1), (3, 1)]),
        ];
        for (p, q, want) in cases {
            let e = nicf_expand_rational(Rational::new(p, q));
            assert_eq!(e.pairs(), pairs(want).as_slice(), "{p}/{q}");
            assert!(e.is_standard_form());
            assert!(e.is_exact());
            assert_eq!(nicf_evaluate(&e), Rational::new(p, q));
        }
    }

    #[test]
    fn non_standard_word_still_evaluates() {
        // 1/(3 - 1/2) is 2/5 too, but it ends (3,-1),(2,+1)
        let e = NicfExpansion::from_pairs(pairs(&[(0, 1), (3, -1), (2, 1)]), false);
        assert_eq!(nicf_evaluate(&e), Rational::new(2, 5));
        let e = NicfExpansion::from_pairs(pairs(&[(1, -1), (3, -1)]), false);
        assert_eq!(nicf_evaluate(&e), Rational::new(2, 3));
    }

    #[test]
    fn convergents_of_two_fifths() {
        let t = convergents(&nicf_expand_rational(Rational::new(2, 5)));
        assert_eq!(t.len(), 3);
        assert_eq!(t.get(-2), (0, 1));
        assert_eq!(t.get(-1), (1, 0));
        assert_eq!((t.get(0), t.get(1), t.get(2)), ((0, 1), (1, 2), (2, 5)));
        for n in 0..3 {
            assert!(t.sign_identity_holds(n));
        }
        let single = convergents(&nicf_expand_rational(Rational::new(0, 1)));
        assert_eq!(single.len(), 1);
        assert_eq!(single.last(), (0, 1));
    }

    #[test]
    fn real_fixed_points() {
        let g = (1.0 + 5f64.sqrt()) / 2.0;
        let r = nicf_expand_real(2.0 - g, 12, 1e-300);
        assert!(!r.rational_detected);
        assert_eq!(r.expansion.pairs()[0], NicfPair::new(0, 1));
        assert!(r.expansion.pairs()[1..].iter().all(|p| *p == NicfPair::new(3, -1)));
        assert!(r.remainders.iter().all(|x| (x - (2.0 - g)).abs() < 1e-6));

        let s = 2f64.sqrt() - 1.0;
        let r = nicf_expand_real(s, 12, 1e-300);
        assert!(r.expansion.pairs()[1..].iter().all(|p| *p == NicfPair::new(2, 1)));
        assert!(r.remainders.iter().all(|x| (x - s).abs() < 1e-6));
    }

    #[test]
    fn real_half_is_rational() {
        let r = nicf_expand_real(0.5, 10, 1e-12);
        assert!(r.rational_detected);
        assert_eq!(r.expansion.pairs(), pairs(&[(0, 1), (2, 1)]).as_slice());
    }

    #[test]
    fn bruno_closed_forms() {
        let g = (TwoFloat::from(1.0) + TwoFloat::from(5.0).sqrt()) / 2.0;
        let x = TwoFloat::from(2.0) - g;
        let gf = g.hi();
        let b = bruno_real(x, 1e-14, 200).unwrap();
        assert!((b - 2.0 * gf * gf.ln()).abs() < 1e-12, "{b}");

        let s = TwoFloat::from(2.0).sqrt() - 1.0;
        let b = bruno_real(s, 1e-14, 200).unwrap();
        let want = (1.0 + 2f64.sqrt()).ln() / (2.0 - 2f64.sqrt());
        assert!((b - want).abs() < 1e-12, "{b}");
    }

    #[test]
    fn bruno_rejects_rationals() {
        assert_eq!(bruno_real(1.0 / 3.0, 1e-12, 100), Err(Error::RationalInput));
        assert_eq!(bruno_real(0.0, 1e-12, 100), Err(Error::RationalInput));
        assert_eq!(bruno_real(0.5, 1e-12, 100), Err(Error::RationalInput));
    }

    #[test]
    fn bruno_is_even_and_periodic() {
        let x = 0.3183098861837907;
        let b = bruno_real(x, 1e-12, 200).unwrap();
        assert!((bruno_real(-x, 1e-12, 200).unwrap() - b).abs() < 1e-7);
        assert!((bruno_real(x + 1.0, 1e-12, 200).unwrap() - b).abs() < 1e-7);
    }
}
