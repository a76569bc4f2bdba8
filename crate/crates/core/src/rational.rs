use std::cmp::Ordering;
use std::fmt;

/// Reduced fraction `p/q` with `q >= 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Rational {
    p: i64,
    q: i64,
}

fn gcd(mut a: i64, mut b: i64) -> i64 {
    a = a.abs();
    b = b.abs();
    while b != 0 {
        let r = a % b;
        a = b;
        b = r;
    }
    a
}

impl Rational {
    /// Builds `p/q` in lowest terms with the sign carried by the numerator.
    ///
    /// # Panics
    /// Panics if `q == 0`.
    pub fn new(p: i64, q: i64) -> Self {
        assert!(q != 0, "zero denominator");
        let g = gcd(p, q);
        let s = if q < 0 { -1 } else { 1 };
        Rational { p: s * p / g, q: s * q / g }
    }

    pub fn integer(n: i64) -> Self {
        Rational { p: n, q: 1 }
    }

    pub fn numer(&self) -> i64 {
        self.p
    }

    pub fn denom(&self) -> i64 {
        self.q
    }

    pub fn to_f64(&self) -> f64 {
        self.p as f64 / self.q as f64
    }

    /// Representative of `self mod 1` in `[0, 1)`.
    pub fn fract(&self) -> Self {
        Rational { p: self.p.rem_euclid(self.q), q: self.q }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.p as i128 * other.q as i128).cmp(&(other.p as i128 * self.q as i128))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.p, self.q)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_and_normalises_sign() {
        let r = Rational::new(4, -6);
        assert_eq!((r.numer(), r.denom()), (-2, 3));
        assert_eq!(Rational::new(0, -7), Rational::new(0, 1));
    }

    #[test]
    fn ordering_and_fract() {
        assert!(Rational::new(1, 3) < Rational::new(2, 5));
        assert_eq!(Rational::new(-1, 3).fract(), Rational::new(2, 3));
        assert_eq!(Rational::new(7, 5).fract(), Rational::new(2, 5));
    }
}
