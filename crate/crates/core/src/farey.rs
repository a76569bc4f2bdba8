//! Farey series and Farey neighbours.

use crate::error::{Error, Result};
use crate::nicf::{convergents, nicf_expand_rational, NicfExpansion};
use crate::rational::Rational;

/// Ordered reduced fractions in `[0, 1]` with denominator at most `order`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FareySeries {
    pub order: u32,
    pub elements: Vec<Rational>,
}

/// Streaming iterator over `F_n` using the three-term recursion
/// `p_{i+1} = r_i p_i - p_{i-1}`, `r_i = floor((n + q_{i-1}) / q_i)`.
#[derive(Debug, Clone)]
pub struct FareyIter {
    n: i64,
    prev: (i64, i64),
    cur: (i64, i64),
    started: bool,
    done: bool,
}

impl Iterator for FareyIter {
    type Item = Rational;

    fn next(&mut self) -> Option<Rational> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            return Some(Rational::new(self.prev.0, self.prev.1));
        }
        let out = Rational::new(self.cur.0, self.cur.1);
        if self.cur == (1, 1) {
            self.done = true;
        } else {
            let r = (self.n + self.prev.1) / self.cur.1;
            let next = (r * self.cur.0 - self.prev.0, r * self.cur.1 - self.prev.1);
            self.prev = self.cur;
            self.cur = next;
        }
        Some(out)
    }
}

/// Streams `F_n` in increasing order.
pub fn farey_iter(n: u32) -> FareyIter {
    assert!(n >= 1, "Farey order must be positive");
    FareyIter {
        n: n as i64,
        prev: (0, 1),
        cur: (1, n as i64),
        started: false,
        done: false,
    }
}

pub fn farey_series(n: u32) -> FareySeries {
    FareySeries { order: n, elements: farey_iter(n).collect() }
}

/// Double loop over all `p/q` followed by a sort; a test oracle.
pub fn farey_brute(n: u32) -> FareySeries {
    let n = n as i64;
    let mut elements = Vec::new();
    for q in 1..=n {
        for p in 0..=q {
            let r = Rational::new(p, q);
            if r.denom() == q {
                elements.push(r);
            }
        }
    }
    elements.sort();
    FareySeries { order: n as u32, elements }
}

/// `p_T/q_T`: the expansion with its last pair removed.
pub(crate) fn truncate_fraction(e: &NicfExpansion) -> (i64, i64) {
    let c = convergents(e);
    c.get(e.last_index() as isize - 1)
}

/// `p_S/q_S`: the last partial quotient decremented by one.
pub(crate) fn subtract_one_fraction(e: &NicfExpansion) -> (i64, i64) {
    let c = convergents(e);
    let n = e.last_index() as isize;
    let (p1, q1) = c.get(n - 1);
    let (p2, q2) = c.get(n - 2);
    let eps = if n >= 1 { e.pairs()[n as usize - 1].eps as i64 } else { 1 };
    let a = e.last().a - 1;
    // A final a = 2 turns into a = 1, which is folded into the previous
    // pair by the evaluation itself; the fraction is unchanged by that
    // renormalisation.
    (a * p1 + eps * p2, a * q1 + eps * q2)
}

/// Immediate predecessor and successor of `r` in `F_q`.
pub fn farey_neighbors(r: Rational) -> Result<(Rational, Rational)> {
    let (p, q) = (r.numer(), r.denom());
    if p <= 0 || p >= q {
        return Err(Error::NoNeighbours(r.to_string()));
    }
    let e = nicf_expand_rational(r);
    let (pt, qt) = truncate_fraction(&e);
    let (ps, qs) = subtract_one_fraction(&e);
    let t = Rational::new(pt, qt);
    let s = Rational::new(ps, qs);
    // p/q - p_T/q_T = (-1)^{n+1} eps_0...eps_{n-1} / (q q_{n-1})
    let n = e.last_index();
    let mut sign: i64 = if n % 2 == 0 { -1 } else { 1 };
    for pair in &e.pairs()[..n] {
        sign *= pair.eps as i64;
    }
    Ok(if sign > 0 { (t, s) } else { (s, t) })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(p: i64, q: i64) -> Rational {
        Rational::new(p, q)
    }

    #[test]
    fn small_orders() {
        assert_eq!(farey_series(1).elements, vec![r(0, 1), r(1, 1)]);
        assert_eq!(farey_brute(2).elements, vec![r(0, 1), r(1, 2), r(1, 1)]);
        let f5 = farey_series(5).elements;
        let want = [(0, 1), (1, 5), (1, 4), (1, 3), (2, 5), (1, 2), (3, 5), (2, 3), (3, 4), (4, 5), (1, 1)];
        assert_eq!(f5, want.iter().map(|&(p, q)| r(p, q)).collect::<Vec<_>>());
        assert_eq!(farey_brute(5).elements.len(), 11);
    }

    #[test]
    fn neighbours() {
        assert_eq!(farey_neighbors(r(2, 5)).unwrap(), (r(1, 3), r(1, 2)));
        assert_eq!(farey_neighbors(r(1, 2)).unwrap(), (r(0, 1), r(1, 1)));
        assert_eq!(farey_neighbors(r(1, 3)).unwrap(), (r(0, 1), r(1, 2)));
        assert!(farey_neighbors(r(0, 1)).is_err());
        assert!(farey_neighbors(r(1, 1)).is_err());
    }

    #[test]
    fn mediant_of_two_fifths() {
        let (a, b) = farey_neighbors(r(2, 5)).unwrap();
        assert_eq!(r(a.numer() + b.numer(), a.denom() + b.denom()), r(2, 5));
    }
}
