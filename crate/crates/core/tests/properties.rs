use std::f64::consts::PI;

use bruno::dynamics::{yoccoz_u, IterationBudget};
use bruno::farey::farey_neighbors;
use bruno::monoid::{is_in_monoid, matrix_s, matrix_t, monoid_word, word_product};
use bruno::nicf::{bruno_real, convergents, nicf_evaluate, nicf_expand_rational};
use bruno::regression::linreg;
use bruno::special::{dilog, phi_half};
use bruno::spectral::{poisson_deriv_supnorm, power_law_spectrum, Spectrum};
use bruno::Rational;
use num_complex::Complex64 as C64;
use proptest::prelude::*;

fn fraction() -> impl Strategy<Value = Rational> {
    (2i64..200_000).prop_flat_map(|q| (1..q).prop_map(move |p| Rational::new(p, q)))
}

fn phi_quadrature(z: C64) -> C64 {
    // (1/pi) int_0^{1/2} -log(x) / (x - z) dx, real and imaginary parts
    let re = quadrature::double_exponential::integrate(|x| (-x.ln() / (x - z)).re, 0.0, 0.5, 1e-13);
    let im = quadrature::double_exponential::integrate(|x| (-x.ln() / (x - z)).im, 0.0, 0.5, 1e-13);
    C64::new(re.integral, im.integral) / PI
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn nicf_round_trip(r in fraction()) {
        let e = nicf_expand_rational(r);
        prop_assert!(e.is_exact() && e.is_standard_form());
        prop_assert_eq!(nicf_evaluate(&e), r);
        let c = convergents(&e);
        prop_assert_eq!(c.last(), (r.numer(), r.denom()));
        for n in 0..e.len() {
            prop_assert!(c.sign_identity_holds(n));
        }
    }

    #[test]
    fn farey_neighbours_are_unimodular_parents(r in fraction()) {
        let (a, b) = farey_neighbors(r).unwrap();
        prop_assert!(a < r && r < b);
        prop_assert_eq!(r.numer() * a.denom() - a.numer() * r.denom(), 1);
        prop_assert_eq!(b.numer() * r.denom() - r.numer() * b.denom(), 1);
        prop_assert_eq!((a.numer() + b.numer(), a.denom() + b.denom()), (r.numer(), r.denom()));
    }

    #[test]
    fn monoid_matrices_are_words(r in fraction()) {
        let t = matrix_t(r).unwrap();
        prop_assert!(is_in_monoid(&t));
        prop_assert!(word_product(t.word.as_ref().unwrap()).same_entries(&t));
        prop_assert_eq!(t.det().abs(), 1);
        prop_assert_eq!(monoid_word(&t).unwrap(), t.word.clone().unwrap());
        let (s, in_ms) = matrix_s(r).unwrap();
        prop_assert!(word_product(s.word.as_ref().unwrap()).same_entries(&s));
        prop_assert_eq!(is_in_monoid(&s), in_ms);
    }

    #[test]
    fn dilog_functional_equations(re in -3.0f64..3.0, im in prop_oneof![-3.0f64..-1e-3, 1e-3f64..3.0]) {
        let z = C64::new(re, im);
        let one = C64::new(1.0, 0.0);
        let refl = dilog(z).unwrap() + dilog(one - z).unwrap();
        let want = PI * PI / 6.0 - z.ln() * (one - z).ln();
        prop_assert!((refl - want).norm() < 1e-12 * (1.0 + want.norm()), "{} {}", refl, want);
        let inv = dilog(z).unwrap() + dilog(z.inv()).unwrap();
        let want = -PI * PI / 6.0 - 0.5 * (-z).ln().powi(2);
        prop_assert!((inv - want).norm() < 1e-12 * (1.0 + want.norm()), "{} {}", inv, want);
    }

    #[test]
    fn phi_matches_quadrature(re in -1.0f64..1.5, im in 0.05f64..2.0, flip in any::<bool>()) {
        let z = C64::new(re, if flip { -im } else { im });
        let got = phi_half(z).unwrap();
        let want = phi_quadrature(z);
        prop_assert!((got - want).norm() < 1e-10, "{} {} {}", z, got, want);
    }

    #[test]
    fn bruno_real_functional_equation(x in 0.01f64..0.49) {
        // B(x) = -log x + x B(1/x) on (0, 1/2), B even and 1-periodic
        let b = bruno_real(x, 1e-12, 400);
        let b1 = bruno_real(1.0 / x, 1e-12, 400);
        if let (Ok(b), Ok(b1)) = (b, b1) {
            prop_assert!((b - (-x.ln() + x * b1)).abs() < 1e-8, "{} {}", b, b1);
            let c = bruno_real(-x + 3.0, 1e-12, 400).unwrap();
            prop_assert!((b - c).abs() < 1e-6);
        }
    }

    #[test]
    fn yoccoz_conjugation(r in 0.05f64..0.9, th in 0.0f64..6.28) {
        let l = C64::from_polar(r, th);
        let b = IterationBudget::default();
        let u = yoccoz_u(l, &b).unwrap();
        let v = yoccoz_u(l.conj(), &b).unwrap();
        prop_assert!((u.conj() - v).norm() <= b.eps_u);
        prop_assert!(u.norm() < 1.0);
    }

    #[test]
    fn kernel_height_identity(t in 1e-3f64..1e-1, t0 in 0.0f64..1e-4, r in 1u32..5) {
        let b = power_law_spectrum(0.4, 1023);
        let lhs = poisson_deriv_supnorm(&Spectrum::from_boundary(t0, &b), r, t);
        let rhs = poisson_deriv_supnorm(&Spectrum::from_boundary(0.0, &b), r, t + t0);
        prop_assert!((lhs - rhs).abs() <= 1e-9 * rhs);
    }

    #[test]
    fn linreg_recovers_lines(a in -5.0f64..5.0, b in -5.0f64..5.0, n in 3usize..50) {
        let xs: Vec<f64> = (0..n).map(|i| i as f64 * 0.7 - 3.0).collect();
        let ys: Vec<f64> = xs.iter().map(|x| a * x + b).collect();
        let r = linreg(&xs, &ys).unwrap();
        prop_assert!((r.slope - a).abs() < 1e-10 && (r.intercept - b).abs() < 1e-10);
        prop_assert!(r.slope_stderr >= 0.0 && r.intercept_stderr >= 0.0);
    }
}
