//! Tabulated band edges of the Lamé and associated Lamé potentials.

use super::deltas::Deltas;
use super::form::EllipticForm;
use super::qes::{cubic_lambda, qes_block, QesClass};
use super::{sort_states, AnalyticState, PeriodClass, Provenance, StateSet};
use crate::elliptic::Modulus;
use crate::error::{Error, Result};
use crate::potential::PotentialSpec;
use crate::scalar::{c, Real};

use PeriodClass::{TwoL, L};

struct Row<T> {
    id: &'static str,
    energy: T,
    form: EllipticForm<T>,
    nodes: usize,
    class: PeriodClass,
}

fn row<T: Real>(
    id: &'static str,
    energy: T,
    (sn, cn, dn): (u32, u32, f64),
    poly: Vec<T>,
    nodes: usize,
    class: PeriodClass,
) -> Row<T> {
    Row { id, energy, form: EllipticForm::new(sn, cn, c(dn), poly), nodes, class }
}

fn build<T: Real>(potential: PotentialSpec<T>, period: T, prefix: &str, rows: Vec<Row<T>>) -> Result<StateSet<T>> {
    let ell = *potential.elliptic();
    let mut states = rows
        .into_iter()
        .map(|r| {
            let prov = Provenance::new(format!("{prefix}/{}", r.id)).with_tabulated(r.nodes, r.class);
            AnalyticState::from_form(r.energy, ell, r.form, period, prov)
        })
        .collect::<Result<Vec<_>>>()?;
    sort_states(&mut states);
    Ok(StateSet { potential, states })
}

// Coefficients of the form `c - δ` are written as `(c² - δ²)/(c + δ)` to keep
// relative accuracy as m -> 0.

/// Band edges of the Lamé potential `a(a+1) m sn²` for `a = 1, 2, 3`, shifted so
/// the ground state sits at zero.
pub fn lame_states<T: Real>(a: u32, m: Modulus<T>) -> Result<StateSet<T>> {
    let (offset, rows) = lame_rows(a, m.value())?;
    let pot = PotentialSpec::lame(T::from_usize_lossy(a as usize), m, offset)?;
    let prefix = if a == 1 { "lame/a=1".to_string() } else { format!("table{}", a - 1) };
    build(pot, pot.period(), &prefix, rows)
}

/// Closed-form energies behind [`lame_states`], sorted. Valid on the whole
/// range `0 <= m <= 1` since no elliptic function is evaluated.
pub fn lame_energies<T: Real>(a: u32, m: T) -> Result<Vec<T>> {
    if !(m >= T::zero() && m <= T::one()) {
        return Err(Error::domain(format!("m = {m} outside [0, 1]")));
    }
    let mut e: Vec<T> = lame_rows(a, m)?.1.into_iter().map(|r| r.energy).collect();
    e.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    Ok(e)
}

fn lame_rows<T: Real>(a: u32, mv: T) -> Result<(T, Vec<Row<T>>)> {
    let one = T::one();
    let d = Deltas::new(T::from_usize_lossy(a as usize), mv);
    let (offset, rows) = match a {
        1 => (
            -mv,
            vec![
                row("dn", T::zero(), (0, 0, 1.0), vec![one], 0, L),
                row("cn", one - mv, (0, 1, 0.0), vec![one], 1, TwoL),
                row("sn", one, (1, 0, 0.0), vec![one], 1, TwoL),
            ],
        ),
        2 => {
            let (dl, b) = (d.delta, d.big_b);
            let two = c::<T>(2.0);
            let three_m = c::<T>(3.0) * mv;
            (
                -two - two * mv + two * dl,
                vec![
                    row("row1", T::zero(), (0, 0, 0.0), vec![b, -three_m], 0, L),
                    row("row2", two * dl - one - mv, (0, 1, 1.0), vec![one], 1, TwoL),
                    row("row3", two * dl - one + two * mv, (1, 0, 1.0), vec![one], 1, TwoL),
                    row("row4", two * dl + two - mv, (1, 1, 0.0), vec![one], 2, L),
                    row("row5", c::<T>(4.0) * dl, (0, 0, 0.0), vec![mv + (mv - mv * mv) / (one + dl), -three_m], 2, L),
                ],
            )
        }
        3 => {
            let (d1, d2, d3) = (d.delta1, d.delta2, d.delta3);
            let two = c::<T>(2.0);
            let three = c::<T>(3.0);
            let five_m = c::<T>(5.0) * mv;
            (
                -two - five_m + two * d1,
                vec![
                    row("row1", T::zero(), (0, 0, 1.0), vec![one + two * mv + d1, -five_m], 0, L),
                    row("row2", three - three * mv + two * d1 - two * d2, (0, 1, 0.0), vec![two + mv + d2, -five_m], 1, TwoL),
                    row("row3", three + two * d1 - two * d3, (1, 0, 0.0), vec![two + two * mv + d3, -five_m], 1, TwoL),
                    row("row4", two - mv + two * d1, (1, 1, 1.0), vec![one], 2, L),
                    row("row5", c::<T>(4.0) * d1, (0, 0, 1.0), vec![two * mv + (mv - c::<T>(4.0) * mv * mv) / (one + d1), -five_m], 2, L),
                    row("row6", three - three * mv + two * d1 + two * d2, (0, 1, 0.0), vec![mv + (mv - mv * mv) / (two + d2), -five_m], 3, TwoL),
                    row("row7", three + two * d1 + two * d3, (1, 0, 0.0), vec![two * mv + (c::<T>(7.0) * mv - c::<T>(4.0) * mv * mv) / (two + d3), -five_m], 3, TwoL),
                ],
            )
        }
        _ => return Err(Error::domain(format!("Lamé tables cover a = 1, 2, 3, not {a}"))),
    };
    Ok((offset, rows))
}

/// Potentials with their own tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NamedCase {
    /// (p, q) = (6, 2)
    P6Q2,
    /// (2, 2)
    P2Q2,
    /// (6, 6)
    P6Q6,
    /// (63/4, 3/4)
    P63Q3,
}

impl NamedCase {
    pub const ALL: [NamedCase; 4] = [NamedCase::P6Q2, NamedCase::P2Q2, NamedCase::P6Q6, NamedCase::P63Q3];

    pub fn key(&self) -> &'static str {
        match self {
            NamedCase::P6Q2 => "6,2",
            NamedCase::P2Q2 => "2,2",
            NamedCase::P6Q6 => "6,6",
            NamedCase::P63Q3 => "63/4,3/4",
        }
    }

    pub fn parse(key: &str) -> Result<Self> {
        let k: String = key.chars().filter(|ch| !ch.is_whitespace() && *ch != '(' && *ch != ')').collect();
        NamedCase::ALL
            .into_iter()
            .find(|n| n.key() == k)
            .ok_or_else(|| Error::domain(format!("no table for potential ({key})")))
    }

    /// Roots `(a, b)` of the strengths.
    pub fn roots<T: Real>(&self) -> (T, T) {
        match self {
            NamedCase::P6Q2 => (c(2.0), c(1.0)),
            NamedCase::P2Q2 => (c(1.0), c(1.0)),
            NamedCase::P6Q6 => (c(2.0), c(2.0)),
            NamedCase::P63Q3 => (c(3.5), c(0.5)),
        }
    }

    fn table(&self) -> &'static str {
        match self {
            NamedCase::P6Q2 => "table4",
            NamedCase::P2Q2 => "table5",
            NamedCase::P6Q6 => "table6",
            NamedCase::P63Q3 => "table7",
        }
    }
}

/// Tabulated states of the special potentials, ground state shifted to zero.
pub fn named_states<T: Real>(which: NamedCase, m: Modulus<T>) -> Result<StateSet<T>> {
    let mv = m.value();
    let one = T::one();
    let two = c::<T>(2.0);
    let kp = m.complement().sqrt();
    let d = Deltas::new(T::zero(), mv);
    let (offset, rows) = match which {
        NamedCase::P6Q2 => {
            let s1 = (c::<T>(4.0) - c::<T>(3.0) * mv).sqrt();
            let s2 = (c::<T>(4.0) - c::<T>(5.0) * mv + mv * mv).max(T::zero()).sqrt();
            let five = c::<T>(5.0);
            let three_m = c::<T>(3.0) * mv;
            (
                -c::<T>(4.0) * mv,
                vec![
                    row("row1", T::zero(), (0, 0, 2.0), vec![one], 0, L),
                    row("row2", five - three_m - two * s1, (0, 1, -1.0), vec![-two - s1, three_m], 1, TwoL),
                    row("row3", five - two * mv - two * s2, (1, 0, -1.0), vec![-two - mv - s2, three_m], 1, TwoL),
                    row("row4", five - two * mv + two * s2, (1, 0, -1.0), vec![-mv + (mv * mv - five * mv) / (s2 + two), three_m], 3, TwoL),
                    row("row5", five - three_m + two * s1, (0, 1, -1.0), vec![-three_m / (s1 + two), three_m], 3, TwoL),
                ],
            )
        }
        NamedCase::P2Q2 => (
            -two - mv + two * kp,
            vec![
                row("row1", T::zero(), (0, 0, -1.0), vec![one + kp, -mv], 0, L),
                row("row2", c::<T>(4.0) * kp, (0, 0, -1.0), vec![mv / (one + kp), -mv], 1, TwoL),
                row("row3", two - mv + two * kp, (1, 1, -1.0), vec![one], 1, TwoL),
            ],
        ),
        NamedCase::P6Q6 => {
            let d8 = d.delta8;
            let four = c::<T>(4.0);
            let six_kp = c::<T>(6.0) * kp;
            (
                -c::<T>(8.0) - two * mv + two * d8,
                vec![
                    row("row1", T::zero(), (0, 0, -2.0), vec![one, -c::<T>(8.0) * mv / (four - mv + d8), c::<T>(3.0) * mv * mv / (four - two * mv + d8)], 0, L),
                    row("row2", -four + two * mv + two * d8, (0, 0, -2.0), vec![one, -two, mv], 1, TwoL),
                    row("row3", two - mv - six_kp + two * d8, (1, 1, -2.0), vec![one, -mv / (one + kp)], 1, TwoL),
                    row("row4", two - mv + six_kp + two * d8, (1, 1, -2.0), vec![one, -(one + kp)], 2, L),
                    row("row5", four * d8, (0, 0, -2.0), vec![one, -(four - mv + d8), four - two * mv + d8], 2, L),
                ],
            )
        }
        NamedCase::P63Q3 => {
            let d9 = d.delta9;
            let twelve_m = c::<T>(12.0) * mv;
            let five_m = c::<T>(5.0) * mv;
            let top = c::<T>(14.0) - c::<T>(7.0) * mv + d9;
            (
                -two - c::<T>(29.0) * mv / c(4.0) + d9,
                vec![
                    row("row1", T::zero(), (0, 0, 1.5), vec![-two - five_m - d9, twelve_m], 0, L),
                    row("row2", two - mv + d9, (1, 1, 1.5), vec![one], 2, L),
                    row("row3", two * d9, (0, 0, 1.5), vec![-five_m + (c::<T>(25.0) * mv * mv - c::<T>(4.0) * mv) / (d9 + two), twelve_m], 2, L),
                    row("row4", top, (1, 1, -0.5), vec![one, -two], 4, L),
                    row("row5", top, (0, 0, -0.5), vec![one, -c::<T>(8.0), c(8.0)], 4, L),
                ],
            )
        }
    };
    let (a, b) = which.roots::<T>();
    let pot = PotentialSpec::from_ab(a, b, m, offset)?;
    build(pot, pot.period(), which.table(), rows)
}

/// The `n` states on the parabola `q = (a−n+1)(a−n)`, unshifted, measured over
/// `2K`. For `n = 5` the two tabulated `sn·cn` states are joined by the three
/// roots of the cubic, whose eigenfunctions come from the QES recursion.
pub fn table3_states<T: Real>(a: T, n: usize, m: Modulus<T>) -> Result<StateSet<T>> {
    if !(1..=5).contains(&n) {
        return Err(Error::domain(format!("parabola rows cover n = 1..5, not {n}")));
    }
    if !(a * (a + T::one()) >= T::zero()) {
        return Err(Error::domain(format!("a = {a} gives negative p")));
    }
    let mv = m.value();
    let one = T::one();
    let two = c::<T>(2.0);
    let d = Deltas::new(a, mv);
    let g = |k: f64| a - c(k);
    let lead = mv * (two * a - one);
    let mk = |id: &'static str, energy: T, sn: u32, cn: u32, dn: T, poly: Vec<T>, nodes: usize, class| Row {
        id,
        energy,
        form: EllipticForm::new(sn, cn, dn, poly),
        nodes,
        class,
    };
    let mut rows = match n {
        1 => vec![mk("n=1", mv * a * a, 0, 0, a, vec![one], 0, L)],
        2 => vec![
            mk("n=2/cn", one + mv * g(1.0) * g(1.0), 0, 1, g(1.0), vec![one], 1, TwoL),
            mk("n=2/sn", one + mv * a * a, 1, 0, g(1.0), vec![one], 1, TwoL),
        ],
        3 => {
            let e = two + mv * (a * a - two * a + two);
            let base = -one + mv - mv * a;
            vec![
                mk("n=3/plus-branch", e + two * d.delta4, 0, 0, g(2.0), vec![mv - mv * a + (mv * mv * g(1.0) * g(1.0) - mv) / (d.delta4 + one), lead], 2, L),
                mk("n=3/minus-branch", e - two * d.delta4, 0, 0, g(2.0), vec![base - d.delta4, lead], 0, L),
                mk("n=3/sn-cn", c::<T>(4.0) + mv * g(1.0) * g(1.0), 1, 1, g(2.0), vec![one], 2, L),
            ]
        }
        4 => {
            let five = c::<T>(5.0);
            let e5 = five + mv * (a * a - c::<T>(4.0) * a + five);
            let e6 = five + mv * (a * a - two * a + two);
            let b5 = -two + two * mv - mv * a;
            let b6 = -two + mv - mv * a;
            vec![
                mk("n=4/cn-plus-branch", e5 + two * d.delta5, 0, 1, g(3.0), vec![two * mv - mv * a + (-c::<T>(7.0) * mv + two * mv * a + mv * mv * g(2.0) * g(2.0)) / (d.delta5 + two), lead], 3, TwoL),
                mk("n=4/cn-minus-branch", e5 - two * d.delta5, 0, 1, g(3.0), vec![b5 - d.delta5, lead], 1, TwoL),
                mk("n=4/sn-plus-branch", e6 + two * d.delta6, 1, 0, g(3.0), vec![mv - mv * a + (-mv - two * mv * a + mv * mv * g(1.0) * g(1.0)) / (d.delta6 + two), lead], 3, TwoL),
                mk("n=4/sn-minus-branch", e6 - two * d.delta6, 1, 0, g(3.0), vec![b6 - d.delta6, lead], 1, TwoL),
            ]
        }
        _ => {
            let e7 = c::<T>(10.0) + mv * (a * a - c::<T>(4.0) * a + c(5.0));
            let b7 = -c::<T>(3.0) + two * mv - mv * a;
            vec![
                mk("n=5/plus-branch", e7 + two * d.delta7, 1, 1, g(4.0), vec![two * mv - mv * a + (-c::<T>(9.0) * mv + mv * mv * g(2.0) * g(2.0)) / (d.delta7 + c(3.0)), lead], 4, L),
                mk("n=5/minus-branch", e7 - two * d.delta7, 1, 1, g(4.0), vec![b7 - d.delta7, lead], 2, L),
            ]
        }
    };
    if n == 5 {
        let block = qes_block(a, c::<T>(4.0) - a, mv)?;
        let shift = mv * g(4.0) * g(4.0);
        const IDS: [&str; 3] = ["n=5/cubic-1", "n=5/cubic-2", "n=5/cubic-3"];
        for (id, lambda) in IDS.into_iter().zip(cubic_lambda(a, mv)?) {
            let form = block.form(QesClass::Cos, lambda);
            rows.push(Row { id, energy: lambda + shift, form, nodes: 0, class: L });
        }
    }
    let b = T::from_usize_lossy(n) - one - a;
    let pot = PotentialSpec::from_ab_any(a, b, m, T::zero())?;
    let ell = *pot.elliptic();
    let period = c::<T>(2.0) * ell.quarter_period();
    let mut states = rows
        .into_iter()
        .map(|r| {
            let mut prov = Provenance::new(format!("table3/{}", r.id));
            if !r.id.contains("cubic") {
                prov = prov.with_tabulated(r.nodes, r.class);
            }
            AnalyticState::from_form(r.energy, ell, r.form, period, prov)
        })
        .collect::<Result<Vec<_>>>()?;
    super::sort_states(&mut states);
    Ok(StateSet { potential: pot, states })
}

/// The `P2` gap `|E₄ − E₃| = |−2 + m + 2√(1 − m + m²(a−1)²)|`.
///
/// Written as `2|r − h|` with `h = 1 − m/2` and `r² = h² + m²(a−3/2)(a−1/2)` so
/// that it vanishes exactly at `a = 3/2`.
pub fn gap_delta2<T: Real>(a: T, m: Modulus<T>) -> T {
    let mv = m.value();
    let h = T::one() - mv * c(0.5);
    let r2 = h * h + mv * mv * (a - c(1.5)) * (a - c(0.5));
    c::<T>(2.0) * (r2.max(T::zero()).sqrt() - h).abs()
}
