use lame_core::potential::{on_parabola, parabola_points, ExtremumKind};
use lame_core::{Modulus, PotentialSpec};

fn spec(p: f64, q: f64, m: f64) -> PotentialSpec {
    PotentialSpec::from_pq(p, q, Modulus::new(m).unwrap(), 0.0).unwrap()
}

// Local extrema of V on a dense grid over [0, 2K).
fn grid_extrema(v: &PotentialSpec) -> Vec<(f64, f64)> {
    let k2 = 2.0 * v.elliptic().quarter_period();
    let n = 20_000;
    let f = |i: i64| v.eval(k2 * i as f64 / n as f64);
    (0..n as i64)
        .filter(|&i| {
            let (a, b, c) = (f(i - 1), f(i), f(i + 1));
            (b >= a && b > c) || (b <= a && b < c)
        })
        .map(|i| (k2 * i as f64 / n as f64, f(i)))
        .collect()
}

#[test]
fn extrema_match_dense_grid() {
    for (p, q, m) in [(6.0, 2.0, 0.5), (12.0, 6.0, 0.8), (6.0, 0.0, 0.5), (2.0, 2.0, 0.9), (2.0, 12.0, 0.7)] {
        let v = spec(p, q, m);
        let found = v.extrema().unwrap();
        let grid = grid_extrema(&v);
        assert_eq!(found.len(), grid.len(), "({p},{q},{m}): {found:?} vs {grid:?}");
        let h = 2.0 * v.elliptic().quarter_period() / 20_000.0;
        for (e, (x, val)) in found.iter().zip(&grid) {
            assert!((e.x - x).abs() < 2.0 * h);
            assert!((e.value - val).abs() < 1e-5);
        }
        let lowest = grid.iter().map(|g| g.1).fold(f64::INFINITY, f64::min);
        let global = found.iter().find(|e| e.kind == ExtremumKind::GlobalMinimum).unwrap();
        assert!((global.value - lowest).abs() < 1e-6);
    }
}

#[test]
fn periodicity_and_swap() {
    for (p, q, m) in [(6.0, 2.0, 0.5), (20.0, 6.0, 0.9), (6.0, 6.0, 0.3)] {
        let v = spec(p, q, m);
        let l = v.period();
        let k = v.elliptic().quarter_period();
        let w = spec(q, p, m);
        for i in 0..200 {
            let x = -3.0 + 0.037 * i as f64;
            assert!((v.eval(x + l) - v.eval(x)).abs() < 1e-9);
            // Swapping p and q translates by K.
            assert!((w.eval(x + k) - v.eval(x)).abs() < 1e-9);
        }
    }
    assert!((spec(6.0, 6.0, 0.3).period() - spec(6.0, 2.0, 0.3).period() / 2.0).abs() < 1e-14);
}

#[test]
fn canonical_form() {
    let v = spec(2.0, 6.0, 0.4);
    let c = v.canonical();
    assert!(c.swapped() && c.p() == 6.0 && c.q() == 2.0);
    assert!(!spec(6.0, 2.0, 0.4).canonical().swapped());
}

#[test]
fn parabolas() {
    for n in 1..=5 {
        for (a, p, q) in parabola_points(n, n as f64, n as f64 + 4.0, 9) {
            assert!((p - a * (a + 1.0)).abs() < 1e-12);
            assert!(on_parabola(p, q).iter().any(|&(k, r)| k == n && (r - a).abs() < 1e-9));
        }
    }
    let ns = |p: f64, q: f64| on_parabola(p, q).iter().map(|x| x.0).collect::<Vec<_>>();
    assert_eq!(ns(6.0, 2.0), [1, 4]);
    assert_eq!(ns(6.0, 6.0), [5]);
    assert_eq!(ns(12.0, 0.0), [3, 4]);
    assert!(on_parabola(7.0, 1.0).is_empty());
}
