use lame_core::elliptic::Elliptic;
use lame_core::{ellip_k, jacobi, jacobi_shift, Error, Modulus, Shift};
use proptest::prelude::*;

fn md(m: f64) -> Modulus {
    Modulus::new(m).unwrap()
}

// K(m) from composite Simpson on the defining integral.
fn k_quadrature(m: f64) -> f64 {
    let n = 20_000;
    let h = std::f64::consts::FRAC_PI_2 / n as f64;
    let f = |t: f64| 1.0 / (1.0 - m * t.sin().powi(2)).sqrt();
    let mut s = f(0.0) + f(std::f64::consts::FRAC_PI_2);
    for i in 1..n {
        s += if i % 2 == 1 { 4.0 } else { 2.0 } * f(i as f64 * h);
    }
    s * h / 3.0
}

#[test]
fn quarter_period_against_quadrature() {
    for m in [0.0, 0.1, 0.5, 0.8, 0.95] {
        let k = ellip_k(md(m)).unwrap();
        assert!((k - k_quadrature(m)).abs() < 1e-10, "m = {m}");
    }
    assert_eq!(ellip_k(md(1.0)), Err(Error::Divergence));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn pythagorean(x in -60.0f64..60.0, m in 0.0f64..0.999) {
        let t = jacobi(x, md(m)).unwrap();
        let (a, b) = t.pythagorean_defects(m);
        prop_assert!(a < 1e-12 && b < 1e-12, "x = {}, m = {}: {} {}", x, m, a, b);
    }

    #[test]
    fn derivatives(x in -20.0f64..20.0, m in 0.0f64..0.99) {
        let ell = Elliptic::with_m(m).unwrap();
        let t = ell.triple(x);
        let h = 1e-4;
        let fd = |f: &dyn Fn(f64) -> f64| {
            (-f(x + 2.0 * h) + 8.0 * f(x + h) - 8.0 * f(x - h) + f(x - 2.0 * h)) / (12.0 * h)
        };
        prop_assert!((fd(&|y| ell.triple(y).sn) - t.cn * t.dn).abs() < 1e-9);
        prop_assert!((fd(&|y| ell.triple(y).cn) + t.sn * t.dn).abs() < 1e-9);
        prop_assert!((fd(&|y| ell.triple(y).dn) + m * t.sn * t.cn).abs() < 1e-9);
        let jet = ell.taylor(x);
        prop_assert!((jet.sn.deriv(1) - t.cn * t.dn).abs() < 1e-12);
        prop_assert!((jet.dn.deriv(1) + m * t.sn * t.cn).abs() < 1e-12);
    }

    #[test]
    fn periodicity(x in -10.0f64..10.0, m in 0.0f64..0.99) {
        let ell = Elliptic::with_m(m).unwrap();
        let k = ell.quarter_period();
        let a = ell.triple(x);
        let b = ell.triple(x + 4.0 * k);
        let c = ell.triple(x + 2.0 * k);
        prop_assert!((a.sn - b.sn).abs() < 1e-10 && (a.cn - b.cn).abs() < 1e-10);
        prop_assert!((a.sn + c.sn).abs() < 1e-10 && (a.cn + c.cn).abs() < 1e-10);
        prop_assert!((a.dn - c.dn).abs() < 1e-10);
    }

    #[test]
    fn shifts_agree_with_direct_evaluation(x in -5.0f64..5.0, m in 0.01f64..0.99) {
        let k = ellip_k(md(m)).unwrap();
        for (s, d) in [(Shift::HalfK, 0.5 * k), (Shift::K, k), (Shift::TwoK, 2.0 * k)] {
            let a = jacobi_shift(x, md(m), s).unwrap();
            let b = jacobi(x + d, md(m)).unwrap();
            prop_assert!((a.sn - b.sn).abs() < 1e-10);
            prop_assert!((a.cn - b.cn).abs() < 1e-10);
            prop_assert!((a.dn - b.dn).abs() < 1e-10);
        }
    }
}

#[test]
fn out_of_range_modulus() {
    assert!(matches!(Modulus::new(-0.1), Err(Error::Domain(_))));
    assert!(matches!(Modulus::new(1.5), Err(Error::Domain(_))));
    assert!(matches!(Modulus::new(f64::NAN), Err(Error::Domain(_))));
}
