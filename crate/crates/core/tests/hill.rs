use std::f64::consts::PI;

use lame_core::hill::{band_edges_numeric, discriminant, dispersion, spectra_match, EdgeType};
use lame_core::spectra::{lame_states, named_states, NamedCase};
use lame_core::susy::{partner_pair, superpotential_from_form, superpotential_from_ground};
use lame_core::{Error, Modulus, PotentialSpec};

fn md(m: f64) -> Modulus {
    Modulus::new(m).unwrap()
}

fn lame(a: f64, m: f64) -> PotentialSpec {
    PotentialSpec::lame(a, md(m), 0.0).unwrap()
}

// Band edges of 6m sn², sorted.
fn table1(m: f64) -> Vec<f64> {
    let d = (1.0 - m + m * m).sqrt();
    let mut e = vec![2.0 + 2.0 * m - 2.0 * d, 1.0 + m, 1.0 + 4.0 * m, 4.0 + m, 2.0 + 2.0 * m + 2.0 * d];
    e.sort_by(f64::total_cmp);
    e
}

// Band edges of 12m sn², sorted.
fn table2(m: f64) -> Vec<f64> {
    let d1 = (1.0 - m + 4.0 * m * m).sqrt();
    let d2 = (4.0 - m + m * m).sqrt();
    let d3 = (4.0 - 7.0 * m + 4.0 * m * m).sqrt();
    let mut e = vec![
        2.0 + 5.0 * m - 2.0 * d1,
        2.0 + 5.0 * m + 2.0 * d1,
        5.0 + 2.0 * m - 2.0 * d2,
        5.0 + 2.0 * m + 2.0 * d2,
        5.0 + 5.0 * m - 2.0 * d3,
        5.0 + 5.0 * m + 2.0 * d3,
        4.0 + 4.0 * m,
    ];
    e.sort_by(f64::total_cmp);
    e
}

fn max_diff(a: &[f64], b: &[f64]) -> f64 {
    assert_eq!(a.len(), b.len(), "{a:?} vs {b:?}");
    a.iter().zip(b).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

#[test]
fn free_discriminant() {
    let v = |_: f64| 0.0;
    for e in [0.25, 1.0, 2.7, 4.0, 9.3] {
        let d = discriminant(&v, PI, e).unwrap();
        assert!((d.value - 2.0 * (e.sqrt() * PI).cos()).abs() < 1e-8, "E = {e}");
        let slope = -PI * (e.sqrt() * PI).sin() / e.sqrt();
        assert!((d.slope - slope).abs() < 1e-7);
    }
    assert!((discriminant(&v, PI, 4.0).unwrap().value - 2.0).abs() < 1e-9);
    assert!(discriminant(&v, PI, 0.25).unwrap().value.abs() < 1e-9);
}

#[test]
fn free_edges() {
    let bs = band_edges_numeric(&|_: f64| 0.0, PI, 10.0).unwrap();
    let want = [0.0, 1.0, 1.0, 4.0, 4.0, 9.0, 9.0];
    assert!(max_diff(&bs.energies(), &want) < 1e-8, "{:?}", bs.energies());
    let nodes: Vec<_> = bs.edges.iter().map(|e| e.nodes).collect();
    assert_eq!(nodes, [0, 1, 1, 2, 2, 3, 3]);
    assert!(bs.edges[1..].iter().all(|e| e.closed_gap));
    assert!(bs.gaps.iter().all(|g| g.abs() < 1e-8));
}

#[test]
fn lame_a2_edges_and_discriminant() {
    for m in [0.5, 0.8] {
        let pot = lame(2.0, m);
        let v = pot.evaluator();
        let want = table1(m);
        for &e in &want {
            let d = discriminant(&v, pot.period(), e).unwrap();
            assert!((d.value.abs() - 2.0).abs() < 1e-6, "m = {m}, E = {e}, D = {}", d.value);
        }
        let bs = band_edges_numeric(&v, pot.period(), want[4] + 0.5).unwrap();
        assert!(max_diff(&bs.energies(), &want) < 1e-5);
        for e in &bs.edges {
            assert!((e.discriminant - e.edge_type.target::<f64>()).abs() < 1e-8);
        }
    }
}

#[test]
fn lame_a3_seven_edges() {
    let m = 0.5;
    let pot = lame(3.0, m);
    let want = table2(m);
    let bs = band_edges_numeric(&pot.evaluator(), pot.period(), want[6] + 0.5).unwrap();
    assert!(max_diff(&bs.energies(), &want) < 1e-5);
    let nodes: Vec<_> = bs.edges.iter().map(|e| e.nodes).collect();
    assert_eq!(nodes, [0, 1, 1, 2, 2, 3, 3]);
    let kinds: Vec<_> = bs.edges.iter().map(|e| e.edge_type).collect();
    use EdgeType::*;
    assert_eq!(kinds, [Plus, Minus, Minus, Plus, Plus, Minus, Minus]);
    assert_eq!(bs.gaps.len(), 3);
}

#[test]
fn lame_a1_band_and_continuum() {
    for m in [0.3, 0.7] {
        let pot = lame(1.0, m).with_offset(-m);
        let bs = band_edges_numeric(&pot.evaluator(), pot.period(), 1.5).unwrap();
        assert!(max_diff(&bs.energies(), &[0.0, 1.0 - m, 1.0]) < 1e-6, "{:?}", bs.energies());
    }
}

#[test]
fn dispersion_values() {
    let k = dispersion(&|_: f64| 0.0, PI, 1.0).unwrap().unwrap();
    assert!((k - 1.0).abs() < 1e-5);
    let k = dispersion(&|_: f64| 0.0, PI, 4.0).unwrap().unwrap();
    assert!(k.abs() < 1e-4);

    let pot = PotentialSpec::from_pq(6.0, 6.0, md(0.5), 0.0).unwrap();
    let v = pot.evaluator();
    let l = pot.period();
    let bs = band_edges_numeric(&v, l, 30.0).unwrap();
    let mid = 0.5 * (bs.edges[0].energy + bs.edges[1].energy);
    let k = dispersion(&v, l, mid).unwrap().unwrap();
    assert!(k > 1e-3 && k < PI / l - 1e-3, "k = {k}");
    assert!(dispersion(&v, l, bs.edges[0].energy - 0.5).unwrap().is_none());
}

#[test]
fn spectra_match_identical_and_partners() {
    let pot = lame(2.0, 0.6);
    let v = pot.evaluator();
    assert!(spectra_match(&v, &v, pot.period(), 8.0).unwrap() < 1e-12);

    let set = lame_states(3, md(0.8)).unwrap();
    let pair = partner_pair(superpotential_from_ground(set.ground()).unwrap(), set.period());
    let top = set.energies()[6];
    let d = spectra_match(&*pair.v_minus, &*pair.v_plus, set.period(), top + 0.5).unwrap();
    assert!(d < 1e-5, "a = 3: {d}");

    let set = named_states(NamedCase::P6Q6, md(0.5)).unwrap();
    let w = superpotential_from_form(set.ground(), *set.potential.elliptic()).unwrap();
    let pair = partner_pair(w, set.period());
    let top = *set.energies().last().unwrap();
    let d = spectra_match(&*pair.v_minus, &*pair.v_plus, set.period(), top + 0.3).unwrap();
    assert!(d < 1e-5, "(6,6): {d}");
}

#[test]
fn spectra_mismatch_is_structural() {
    let a = lame(2.0, 0.5);
    let b = lame(3.0, 0.5);
    let err = spectra_match(&a.evaluator(), &b.evaluator(), a.period(), 5.5).unwrap_err();
    assert!(matches!(err, Error::StructuralMismatch(_)), "{err}");
}

#[test]
fn wronskian_stays_unit() {
    for m in [0.5, 0.9, 0.998] {
        let pot = PotentialSpec::from_pq(6.0, 2.0, md(m), 0.0).unwrap();
        let v = pot.evaluator();
        for e in [0.5, 2.0, 5.0, 9.0] {
            let d = discriminant(&v, pot.period(), e).unwrap();
            let [[y1, y2], [p1, p2]] = d.monodromy;
            let scale = 1f64.max((y1 * p2).abs()).max((p1 * y2).abs());
            assert!((y1 * p2 - p1 * y2 - 1.0).abs() < 1e-7 * scale, "m = {m}, E = {e}");
        }
    }
}

// Edges of 6m sn² + 2m cn²/dn² absent from the closed-form table.
fn p6q2_extras(m: f64) -> (usize, Vec<f64>) {
    let set = named_states(NamedCase::P6Q2, md(m)).unwrap();
    let tab = set.energies();
    let pot = set.potential;
    let bs = band_edges_numeric(&pot.evaluator(), pot.period(), tab[4] + 0.1).unwrap();
    let mut extra = Vec::new();
    for e in bs.energies() {
        if tab.iter().all(|t| (t - e).abs() > 1e-6) {
            extra.push(e);
        }
    }
    (bs.edges.len(), extra)
}

#[test]
fn p6q2_closed_gap_limits() {
    for m in [0.3, 0.5, 0.9] {
        let (n, extra) = p6q2_extras(m);
        assert_eq!(n, 7, "m = {m}");
        assert_eq!(extra.len(), 2);
        assert!((extra[0] - extra[1]).abs() < 1e-6);
    }
    let (n, extra) = p6q2_extras(1e-3);
    assert_eq!(n, 7);
    assert!(extra.iter().all(|e| (e - 4.0).abs() < 5e-3), "{extra:?}");
    // E(m) ≈ E₁ + α ε ln ε + β ε, ε = 1 − m.
    let eps = [3e-3, 2e-3, 1e-3];
    let rows: Vec<[f64; 4]> = eps
        .iter()
        .map(|&e| {
            let (n, x) = p6q2_extras(1.0 - e);
            assert_eq!(n, 7);
            [1.0, e * e.ln(), e, x[0]]
        })
        .collect();
    let limit = solve3(&rows);
    assert!((limit - 3.0).abs() < 5e-3, "extrapolated {limit}");
}

fn solve3(r: &[[f64; 4]]) -> f64 {
    let det = |a: [f64; 3], b: [f64; 3], c: [f64; 3]| {
        a[0] * (b[1] * c[2] - b[2] * c[1]) - a[1] * (b[0] * c[2] - b[2] * c[0]) + a[2] * (b[0] * c[1] - b[1] * c[0])
    };
    let col = |i: usize| [r[0][i], r[1][i], r[2][i]];
    det(col(3), col(1), col(2)) / det(col(0), col(1), col(2))
}

#[test]
fn edge_curves_follow_closed_forms() {
    let mut prev: Option<Vec<f64>> = None;
    for i in 1..=9 {
        let m = i as f64 / 10.0;
        let pot = lame(2.0, m);
        let want = table1(m);
        let got = band_edges_numeric(&pot.evaluator(), pot.period(), want[4] + 0.5).unwrap().energies();
        assert!(max_diff(&got, &want) < 1e-5, "m = {m}");
        assert!(got.windows(2).all(|w| w[1] > w[0]));
        if let Some(p) = prev {
            assert!(max_diff(&got, &p) < 0.5, "jump at m = {m}");
        }
        prev = Some(got);
    }
}

#[test]
fn bad_inputs() {
    let v = |_: f64| 0.0;
    assert!(matches!(discriminant(&v, -1.0, 1.0), Err(Error::Domain(_))));
    assert!(matches!(discriminant(&v, 1.0, f64::NAN), Err(Error::Domain(_))));
    assert!(matches!(band_edges_numeric(&v, PI, -5.0), Err(Error::Domain(_))));
}
