use lame_core::spectra::{lame_states, named_states, table3_states, NamedCase};
use lame_core::susy::{
    map_state, partner_pair, self_isospectral_deviation, shift_deviation, superpotential_from_form,
    superpotential_from_ground, Verdict,
};
use lame_core::{Error, Modulus, StateSet};

fn md(m: f64) -> Modulus {
    Modulus::new(m).unwrap()
}

fn grid(l: f64, n: usize) -> impl Iterator<Item = f64> {
    (0..n).map(move |i| 0.013 + l * i as f64 / n as f64)
}

#[test]
fn a2_superpotential_and_partner() {
    let m = 0.8;
    let set = lame_states(2, md(m)).unwrap();
    let ell = *set.potential.elliptic();
    let w = superpotential_from_ground(set.ground()).unwrap();
    let pair = partner_pair(w.clone(), set.period());
    let delta = (1.0 - m + m * m).sqrt();
    for x in grid(set.period(), 300) {
        let t = ell.triple(x);
        let den = 1.0 + m + delta - 3.0 * m * t.sn * t.sn;
        let w_closed = 6.0 * m * t.sn * t.cn * t.dn / den;
        assert!((w.value(x) - w_closed).abs() < 1e-12);
        let vm = set.potential.eval(x);
        assert!(((pair.v_minus)(x) - vm).abs() < 1e-10);
        let vp_closed = -vm + 72.0 * m * m * (t.sn * t.cn * t.dn).powi(2) / (den * den);
        assert!(((pair.v_plus)(x) - vp_closed).abs() < 1e-9);
    }
    assert!(pair.sum_identity_defect() < 1e-8);
    assert!(pair.derivative_defect() < 1e-6);
}

#[test]
fn n1_family_matches_closed_forms() {
    for (a, m) in [(2.7, 0.6), (1.3, 0.3)] {
        let set = table3_states(a, 1, md(m)).unwrap().shifted_to_ground();
        let ell = *set.potential.elliptic();
        let w = superpotential_from_ground(set.ground()).unwrap();
        let pair = partner_pair(w.clone(), 2.0 * ell.quarter_period());
        for x in grid(pair.period, 200) {
            let t = ell.triple(x);
            let r = t.cn * t.cn / (t.dn * t.dn);
            assert!((w.value(x) - a * m * t.sn * t.cn / t.dn).abs() < 1e-12);
            let vm = (a - 1.0) * a * m * r + m * a * (a + 1.0) * t.sn * t.sn - m * a * a;
            let vp = a * (a + 1.0) * m * r + m * (a - 1.0) * a * t.sn * t.sn - m * a * a;
            assert!(((pair.v_minus)(x) - vm).abs() < 1e-10);
            assert!(((pair.v_plus)(x) - vp).abs() < 1e-10);
        }
        assert_eq!(self_isospectral_deviation(&pair).verdict, Verdict::SelfIsospectral);
    }
}

#[test]
fn p2q2_partner_and_shift_identity() {
    let m = 0.5;
    let set = named_states(NamedCase::P2Q2, md(m)).unwrap();
    let ell = *set.potential.elliptic();
    let kp = (1.0 - m).sqrt();
    let w = superpotential_from_form(set.ground(), ell).unwrap();
    let pair = partner_pair(w, set.period());
    for x in grid(set.period(), 200) {
        let t = ell.triple(x);
        let vp_closed = 2.0 - m - 2.0 * kp - 8.0 * kp * m * m * (t.sn * t.cn).powi(2) / (t.dn * t.dn + kp).powi(2);
        assert!(((pair.v_plus)(x) - vp_closed).abs() < 1e-10, "{} vs {vp_closed}", (pair.v_plus)(x));
    }
    let numeric = self_isospectral_deviation(&pair);
    let analytic = shift_deviation(&pair).unwrap();
    assert_eq!(numeric.verdict, Verdict::SelfIsospectral);
    assert_eq!(analytic.verdict, Verdict::SelfIsospectral);
}

#[test]
fn table7_superpotential() {
    let m = 0.4;
    let set = named_states(NamedCase::P63Q3, md(m)).unwrap();
    let ell = *set.potential.elliptic();
    let w = superpotential_from_ground(set.ground()).unwrap();
    let d9 = (4.0 - 4.0 * m + 25.0 * m * m).sqrt();
    for x in grid(set.period(), 200) {
        let t = ell.triple(x);
        let w46 = 1.5 * m * t.sn * t.cn / t.dn
            - 24.0 * m * t.sn * t.cn * t.dn / (12.0 * m * t.sn * t.sn - 2.0 - 5.0 * m - d9);
        assert!((w.value(x) - w46).abs() < 1e-11);
    }
}

#[test]
fn verdicts() {
    for m in [0.5, 0.8, 0.998] {
        for a in [2, 3] {
            let set = lame_states(a, md(m)).unwrap();
            let pair = partner_pair(superpotential_from_ground(set.ground()).unwrap(), set.period());
            let d = self_isospectral_deviation(&pair);
            assert_eq!(d.verdict, Verdict::NotSelfIsospectral, "a={a} m={m}: {}", d.value);
        }
    }
    let set = lame_states(1, md(0.7)).unwrap();
    let pair = partner_pair(superpotential_from_ground(set.ground()).unwrap(), set.period());
    assert_eq!(self_isospectral_deviation(&pair).verdict, Verdict::SelfIsospectral);
    let set = named_states(NamedCase::P6Q6, md(0.5)).unwrap();
    let pair = partner_pair(superpotential_from_ground(set.ground()).unwrap(), set.period());
    assert!(self_isospectral_deviation(&pair).value > 1e-3);
}

fn partners(set: &StateSet) {
    let w = superpotential_from_ground(set.ground()).unwrap();
    let pair = partner_pair(w.clone(), set.period());
    let vp = |x: f64| (pair.v_plus)(x);
    for (i, s) in set.states.iter().enumerate() {
        let p = map_state(&w, s, i == 0).unwrap();
        assert_eq!(p.energy, s.energy);
        let r = p.residual(&vp);
        assert!(r < 1e-6, "{}: {r}", p.provenance.id);
    }
}

#[test]
fn mapped_states_solve_partner_equation() {
    for m in [0.5, 0.9] {
        for a in 1..=3 {
            partners(&lame_states(a, md(m)).unwrap());
        }
        for w in NamedCase::ALL {
            partners(&named_states(w, md(m)).unwrap());
        }
    }
}

#[test]
fn a3_ground_partner_closed_form() {
    let m = 0.6;
    let set = lame_states(3, md(m)).unwrap();
    let ell = *set.potential.elliptic();
    let w = superpotential_from_ground(set.ground()).unwrap();
    let p = map_state(&w, set.ground(), true).unwrap();
    let d1 = (1.0 - m + 4.0 * m * m).sqrt();
    // proportionality against 1/(dn [1 + 2m + δ₁ − 5m sn²])
    let f = |x: f64| {
        let t = ell.triple(x);
        1.0 / (t.dn * (1.0 + 2.0 * m + d1 - 5.0 * m * t.sn * t.sn))
    };
    let ratio = p.psi.value(0.2) / f(0.2);
    for x in grid(set.period(), 100) {
        assert!((p.psi.value(x) - ratio * f(x)).abs() < 1e-12);
    }
}

#[test]
fn a2_sn_cn_partner_is_table_form() {
    let m = 0.5;
    let set = lame_states(2, md(m)).unwrap();
    let ell = *set.potential.elliptic();
    let w = superpotential_from_ground(set.ground()).unwrap();
    let s = set.states.iter().find(|s| s.provenance.id == "table1/row4").unwrap();
    let p = map_state(&w, s, false).unwrap();
    let b = 1.0 + m + (1.0 - m + m * m).sqrt();
    let f = |x: f64| {
        let t = ell.triple(x);
        t.dn * (b + t.sn * t.sn * (3.0 * m - 2.0 * b)) / (b - 3.0 * m * t.sn * t.sn)
    };
    let ratio = p.psi.value(0.2) / f(0.2);
    for x in grid(set.period(), 100) {
        assert!((p.psi.value(x) - ratio * f(x)).abs() < 1e-12);
    }
}

#[test]
fn errors() {
    let set = lame_states(2, md(0.5)).unwrap();
    let w = superpotential_from_ground(set.ground()).unwrap();
    assert!(matches!(superpotential_from_ground(&set.states[1]), Err(Error::Precondition(_))));
    assert!(matches!(map_state(&w, set.ground(), false), Err(Error::DegenerateOutput(_))));
    let raw = table3_states(2.0, 1, md(0.5)).unwrap();
    assert!(superpotential_from_ground(raw.ground()).is_err());
}

#[test]
fn invariants_and_zero_modes() {
    for w in NamedCase::ALL {
        let set = named_states(w, md(0.9)).unwrap();
        let sp = superpotential_from_ground(set.ground()).unwrap();
        let (odd, mean) = sp.invariant_defects();
        assert!(odd < 1e-9 && mean < 1e-8);
        for (lo, hi) in sp.zero_mode_bounds() {
            assert!(lo > 0.0 && hi.is_finite());
        }
    }
}
