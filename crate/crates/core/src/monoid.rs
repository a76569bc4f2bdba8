//! The 1/2-monoid generated by `sigma` and `g(m)`, `m >= 2`, and the two
//! matrices `g_T`, `g_S` attached to every fraction.

use std::fmt;
use std::ops::Mul;

use crate::error::{Error, Result};
use crate::farey::{subtract_one_fraction, truncate_fraction};
use crate::nicf::{nicf_expand_rational, NicfExpansion};
use crate::rational::Rational;

/// One generator block `eps * g(m)` with `eps` either the identity or `sigma`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Letter {
    pub sigma: bool,
    pub m: i64,
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.sigma {
            write!(f, "s.g({})", self.m)
        } else {
            write!(f, "g({})", self.m)
        }
    }
}

/// `2x2` integer matrix `(a b; c d)`, optionally carrying a generator word.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MonoidMatrix {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub word: Option<Vec<Letter>>,
}

impl MonoidMatrix {
    pub const fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        MonoidMatrix { a, b, c, d, word: None }
    }

    pub const fn identity() -> Self {
        Self::new(1, 0, 0, 1)
    }

    pub const fn sigma() -> Self {
        Self::new(-1, 1, 0, 1)
    }

    /// `g(m) = (0 1; 1 m)`.
    pub const fn g(m: i64) -> Self {
        Self::new(0, 1, 1, m)
    }

    pub fn det(&self) -> i64 {
        self.a * self.d - self.b * self.c
    }

    pub fn entries(&self) -> (i64, i64, i64, i64) {
        (self.a, self.b, self.c, self.d)
    }

    pub fn same_entries(&self, other: &MonoidMatrix) -> bool {
        self.entries() == other.entries()
    }

    pub fn with_word(mut self, word: Vec<Letter>) -> Self {
        self.word = Some(word);
        self
    }
}

impl Mul for &MonoidMatrix {
    type Output = MonoidMatrix;

    fn mul(self, o: &MonoidMatrix) -> MonoidMatrix {
        MonoidMatrix::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl fmt::Display for MonoidMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} {}; {} {})", self.a, self.b, self.c, self.d)
    }
}

/// Multiplies out a generator word.
pub fn word_product(word: &[Letter]) -> MonoidMatrix {
    let mut acc = MonoidMatrix::identity();
    for l in word {
        if l.sigma {
            acc = &acc * &MonoidMatrix::sigma();
        }
        acc = &acc * &MonoidMatrix::g(l.m);
    }
    acc
}

/// `d >= G c` for the golden ratio `G`, decided exactly in integers.
pub fn exceeds_golden_multiple(d: i64, c: i64) -> bool {
    // d >= (1+sqrt5)/2 c  <=>  2d - c >= sqrt5 c
    let lhs = 2 * d as i128 - c as i128;
    let c = c as i128;
    if c <= 0 {
        return lhs >= 0 || lhs * lhs <= 5 * c * c;
    }
    lhs >= 0 && lhs * lhs >= 5 * c * c
}

/// Membership in the 1/2-monoid: `d >= b > 0`, `c >= a >= 0`, `d >= G c`.
pub fn is_in_monoid(g: &MonoidMatrix) -> bool {
    g.d >= g.b && g.b > 0 && g.c >= g.a && g.a >= 0 && exceeds_golden_multiple(g.d, g.c)
}

fn interior_expansion(r: Rational) -> Result<NicfExpansion> {
    if r.numer() <= 0 || r.numer() >= r.denom() {
        return Err(Error::InvalidArgument(format!("{r} is not in (0,1)")));
    }
    Ok(nicf_expand_rational(r))
}

/// Letters `eps_hat_{i-1} g(a_hat_i)` for `i = 1..n`, the last one using the
/// raw `a_n` (`a_hat` is `a - 1` after a negative sign).
fn type_t_word(e: &NicfExpansion) -> Vec<Letter> {
    let pairs = e.pairs();
    let n = e.last_index();
    (1..=n)
        .map(|i| {
            let sigma = pairs[i - 1].eps == -1;
            let m = if i < n && pairs[i].eps == -1 { pairs[i].a - 1 } else { pairs[i].a };
            Letter { sigma, m }
        })
        .collect()
}

fn ends_two_plus(e: &NicfExpansion) -> bool {
    let last = e.last();
    last.a == 2 && last.eps == 1
}

/// `g_T = (p_T p; q_T q)` with its generator word.
pub fn matrix_t(r: Rational) -> Result<MonoidMatrix> {
    let e = interior_expansion(r)?;
    let (pt, qt) = truncate_fraction(&e);
    Ok(MonoidMatrix::new(pt, r.numer(), qt, r.denom()).with_word(type_t_word(&e)))
}

/// `g_S = (p_S p; q_S q)` with its word, and whether it lies in the monoid
/// (the expansion ends with `(2,+1)`).
pub fn matrix_s(r: Rational) -> Result<(MonoidMatrix, bool)> {
    let e = interior_expansion(r)?;
    let (ps, qs) = subtract_one_fraction(&e);
    let in_ms = ends_two_plus(&e);
    let mut word = type_t_word(&e);
    let last = word.last_mut().unwrap();
    if in_ms {
        // g(1) g(1) = sigma g(2)
        *last = Letter { sigma: true, m: 2 };
    } else {
        last.m -= 1;
        word.push(Letter { sigma: false, m: 1 });
    }
    Ok((MonoidMatrix::new(ps, r.numer(), qs, r.denom()).with_word(word), in_ms))
}

/// Recovers the generator word of a monoid element from the fraction `b/d`.
pub fn monoid_word(g: &MonoidMatrix) -> Result<Vec<Letter>> {
    if !is_in_monoid(g) {
        return Err(Error::NotInMonoid);
    }
    let r = Rational::new(g.b, g.d);
    if r.denom() != g.d {
        return Err(Error::NotInMonoid);
    }
    let t = matrix_t(r)?;
    let (s, in_ms) = matrix_s(r)?;
    let word = if t.same_entries(g) {
        t.word.unwrap()
    } else if in_ms && s.same_entries(g) {
        s.word.unwrap()
    } else {
        return Err(Error::NotInMonoid);
    };
    if !word_product(&word).same_entries(g) {
        return Err(Error::NotInMonoid);
    }
    Ok(word)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn type_t_examples() {
        let t = matrix_t(r(2, 5)).unwrap();
        assert_eq!(t.entries(), (1, 2, 2, 5));
        assert!(word_product(t.word.as_ref().unwrap()).same_entries(&t));
        let t = matrix_t(r(1, 2)).unwrap();
        assert_eq!(t.entries(), (0, 1, 1, 2));
        assert_eq!(t.word.unwrap(), vec![Letter { sigma: false, m: 2 }]);
        let t = matrix_t(r(2, 3)).unwrap();
        assert_eq!(t.entries(), (1, 2, 1, 3));
        assert_eq!(t.word.unwrap(), vec![Letter { sigma: true, m: 3 }]);
        assert!(matrix_t(r(0, 1)).is_err());
    }

    #[test]
    fn type_s_examples() {
        let (s, in_ms) = matrix_s(r(2, 5)).unwrap();
        assert_eq!(s.entries(), (1, 2, 3, 5));
        assert!(in_ms);
        assert!(word_product(s.word.as_ref().unwrap()).same_entries(&s));
        let (s, in_ms) = matrix_s(r(1, 3)).unwrap();
        assert_eq!(s.entries(), (1, 1, 2, 3));
        assert!(!in_ms);
        assert!(word_product(s.word.as_ref().unwrap()).same_entries(&s));
        let (s, in_ms) = matrix_s(r(1, 2)).unwrap();
        assert_eq!(s.entries(), (1, 1, 1, 2));
        assert!(in_ms);
    }

    #[test]
    fn membership() {
        assert!(is_in_monoid(&MonoidMatrix::new(1, 2, 3, 5)));
        assert!(is_in_monoid(&MonoidMatrix::new(1, 2, 2, 5)));
        assert!(!is_in_monoid(&MonoidMatrix::g(1)));
        assert!(!is_in_monoid(&MonoidMatrix::identity()));
        assert!(is_in_monoid(&MonoidMatrix::g(2)));
    }

    #[test]
    fn sigma_g_identity() {
        let lhs = &MonoidMatrix::sigma() * &MonoidMatrix::g(2);
        let rhs = &MonoidMatrix::g(1) * &MonoidMatrix::g(1);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn words_recovered() {
        let w = monoid_word(&MonoidMatrix::g(2)).unwrap();
        assert_eq!(w, vec![Letter { sigma: false, m: 2 }]);
        let w = monoid_word(&MonoidMatrix::new(1, 2, 3, 5)).unwrap();
        assert_eq!(w.last(), Some(&Letter { sigma: true, m: 2 }));
        assert!(word_product(&w).same_entries(&MonoidMatrix::new(1, 2, 3, 5)));
        assert_eq!(monoid_word(&MonoidMatrix::g(1)), Err(Error::NotInMonoid));
    }

    #[test]
    fn golden_test_is_exact() {
        let g = (1.0 + 5f64.sqrt()) / 2.0;
        for c in 0..200i64 {
            for d in 0..400i64 {
                assert_eq!(exceeds_golden_multiple(d, c), d as f64 >= g * c as f64, "{d} {c}");
            }
        }
    }
}
