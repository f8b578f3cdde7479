//! Supersymmetric partners: `W = −ψ₀′/ψ₀`, `V± = W² ± W′`, and the map of
//! eigenstates from `V₋` to `V₊`.

use std::fmt;
use std::sync::Arc;

use crate::config::TOL;
use crate::elliptic::{Elliptic, Shift};
use crate::error::{Error, Result};
use crate::scalar::{c, Real};
use crate::spectra::{AnalyticState, EllipticForm, Provenance, Wavefunction};
use crate::taylor::Taylor;

/// Shared pointwise evaluator.
pub type Evaluator<T> = Arc<dyn Fn(T) -> T + Send + Sync>;

/// Grid used for invariant checks and deviation scans.
pub const SUSY_GRID: usize = 2000;

#[derive(Clone)]
pub struct Superpotential<T> {
    jet: Arc<dyn Fn(T) -> Taylor<T> + Send + Sync>,
    /// Ground state the superpotential was built from.
    pub source: Provenance,
    pub period: T,
    ground_form: Option<(Elliptic<T>, EllipticForm<T>)>,
}

impl<T> fmt::Debug for Superpotential<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Superpotential").field("source", &self.source.id).finish()
    }
}

fn w_from_psi<T: Real>(psi: Taylor<T>) -> Taylor<T> {
    -(psi.derivative() / psi)
}

impl<T: Real> Superpotential<T> {
    /// `W(x)` with its derivatives.
    pub fn jet(&self, x: T) -> Taylor<T> {
        (self.jet)(x)
    }

    pub fn value(&self, x: T) -> T {
        self.jet(x).value()
    }

    /// `W′(x)` from the closed form.
    pub fn derivative(&self, x: T) -> T {
        self.jet(x).deriv(1)
    }

    /// `W′(x)` by a five-point difference with `h = 1e-5 L`.
    pub fn derivative_fd(&self, x: T) -> T {
        let h = self.period * c(1e-5);
        let f = |y: T| self.value(y);
        (f(x - h * c(2.0)) - f(x - h) * c(8.0) + f(x + h) * c(8.0) - f(x + h * c(2.0))) / (h * c(12.0))
    }

    /// `max |W(−x) + W(x)|` relative to `max |W|`, and `|∫₀ᴸ W| / L`.
    pub fn invariant_defects(&self) -> (T, T) {
        let n = SUSY_GRID;
        let h = self.period / T::from_usize_lossy(n);
        let mut odd = T::zero();
        let mut scale = T::one();
        let mut integral = T::zero();
        for i in 0..=n {
            let x = h * T::from_usize_lossy(i);
            let w = self.value(x);
            odd = odd.max((self.value(-x) + w).abs());
            scale = scale.max(w.abs());
            let weight = if i == 0 || i == n {
                T::one()
            } else if i % 2 == 1 {
                c(4.0)
            } else {
                c(2.0)
            };
            integral = integral + weight * w;
        }
        (odd / scale, (integral * h / c(3.0)).abs() / self.period)
    }

    /// Zero modes `exp(∓∫₀ˣ W)` on one period: `(min, max)` of each.
    pub fn zero_mode_bounds(&self) -> [(T, T); 2] {
        let n = SUSY_GRID;
        let h = self.period / T::from_usize_lossy(n);
        let mut acc = T::zero();
        let mut prev = self.value(T::zero());
        let mut out = [(T::one(), T::one()); 2];
        for i in 1..=n {
            let x = h * T::from_usize_lossy(i);
            let mid = self.value(x - h * c(0.5));
            let cur = self.value(x);
            acc = acc + (prev + mid * c(4.0) + cur) * h / c(6.0);
            prev = cur;
            for (slot, sign) in out.iter_mut().zip([-T::one(), T::one()]) {
                let v = (sign * acc).exp();
                slot.0 = slot.0.min(v);
                slot.1 = slot.1.max(v);
            }
        }
        out
    }
}

/// `W = −ψ₀′/ψ₀` from a nodeless zero-energy ground state.
pub fn superpotential_from_ground<T: Real>(psi0: &AnalyticState<T>) -> Result<Superpotential<T>> {
    if psi0.nodes != 0 {
        return Err(Error::Precondition(format!(
            "state {} has {} nodes; W would be singular",
            psi0.provenance.id, psi0.nodes
        )));
    }
    if psi0.energy.abs() > c::<T>(1e-9) {
        return Err(Error::Precondition(format!(
            "ground state {} has energy {}, shift the potential to put it at zero",
            psi0.provenance.id, psi0.energy
        )));
    }
    let psi = psi0.psi.clone();
    let w = Superpotential {
        jet: Arc::new(move |x| w_from_psi(psi.jet(x))),
        source: psi0.provenance.clone(),
        period: psi0.period,
        ground_form: None,
    };
    let (odd, mean) = w.invariant_defects();
    if odd > c::<T>(1e-9) || mean > c::<T>(1e-8) {
        return Err(Error::Precondition(format!(
            "superpotential from {} is not odd with zero mean (defects {odd}, {mean})",
            psi0.provenance.id
        )));
    }
    Ok(w)
}

/// [`superpotential_from_ground`] that also keeps the ground state's closed
/// form, enabling [`shift_deviation`].
pub fn superpotential_from_form<T: Real>(psi0: &AnalyticState<T>, ell: Elliptic<T>) -> Result<Superpotential<T>> {
    let mut w = superpotential_from_ground(psi0)?;
    w.ground_form = psi0.form.clone().map(|f| (ell, f));
    Ok(w)
}

/// `V₋ = W² − W′` and `V₊ = W² + W′` over period `L`.
#[derive(Clone)]
pub struct PartnerPair<T> {
    pub v_minus: Evaluator<T>,
    pub v_plus: Evaluator<T>,
    pub w: Superpotential<T>,
    pub period: T,
}

impl<T> fmt::Debug for PartnerPair<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PartnerPair").field("w", &self.w).finish()
    }
}

pub fn partner_pair<T: Real>(w: Superpotential<T>, period: T) -> PartnerPair<T> {
    let wm = w.clone();
    let wp = w.clone();
    let v_minus: Evaluator<T> = Arc::new(move |x| {
        let j = wm.jet(x);
        j.value() * j.value() - j.deriv(1)
    });
    let v_plus: Evaluator<T> = Arc::new(move |x| {
        let j = wp.jet(x);
        j.value() * j.value() + j.deriv(1)
    });
    PartnerPair { v_minus, v_plus, w, period }
}

impl<T: Real> PartnerPair<T> {
    /// `max |V₊ + V₋ − 2W²|` on the grid.
    pub fn sum_identity_defect(&self) -> T {
        self.scan(|x| {
            let w = self.w.value(x);
            ((self.v_plus)(x) + (self.v_minus)(x) - c::<T>(2.0) * w * w).abs()
        })
    }

    /// `max |V₊ − V₋ − 2W′_fd|`: the closed-form derivative against differences.
    pub fn derivative_defect(&self) -> T {
        self.scan(|x| ((self.v_plus)(x) - (self.v_minus)(x) - c::<T>(2.0) * self.w.derivative_fd(x)).abs())
    }

    fn scan(&self, f: impl Fn(T) -> T) -> T {
        let n = SUSY_GRID;
        (0..n).fold(T::zero(), |acc, i| {
            acc.max(f(self.period * T::from_usize_lossy(i) / T::from_usize_lossy(n)))
        })
    }
}

/// Image of an eigenstate of `V₋` under the partner map, an eigenstate of `V₊`
/// at the same energy, scaled to unit maximum.
pub fn map_state<T: Real>(w: &Superpotential<T>, state: &AnalyticState<T>, is_ground: bool) -> Result<AnalyticState<T>> {
    let psi = state.psi.clone();
    let raw: Wavefunction<T> = if is_ground {
        Wavefunction::new(move |x| psi.jet(x).recip())
    } else {
        let wc = w.clone();
        Wavefunction::new(move |x| {
            let j = psi.jet(x);
            j.derivative() + wc.jet(x) * j
        })
    };
    let n = SUSY_GRID;
    let mut top = T::zero();
    let mut input = T::zero();
    for i in 0..n {
        let x = state.period * T::from_usize_lossy(i) / T::from_usize_lossy(n);
        top = top.max(raw.value(x).abs());
        let j = state.psi.jet(x);
        input = input.max(j.value().abs()).max(j.deriv(1).abs());
    }
    if !(top > c::<T>(1e-8) * input) {
        return Err(Error::DegenerateOutput(format!(
            "partner of {} vanishes identically; use the ground-state map",
            state.provenance.id
        )));
    }
    let inv = T::one() / top;
    let psi_plus = Wavefunction::new(move |x| raw.jet(x).scale(inv));
    let prov = Provenance {
        id: format!("{}/partner", state.provenance.id),
        form: None,
        tabulated: None,
    };
    AnalyticState::measured(state.energy, psi_plus, state.period, prov)
}

/// Verdict of the self-isospectrality scan.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    SelfIsospectral,
    NotSelfIsospectral,
    Inconclusive,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::SelfIsospectral => "self-isospectral",
            Verdict::NotSelfIsospectral => "not-self-isospectral",
            Verdict::Inconclusive => "inconclusive",
        }
    }

    fn of<T: Real>(dev: T) -> Verdict {
        if dev < c(TOL.self_iso_pass) {
            Verdict::SelfIsospectral
        } else if dev > c(TOL.self_iso_fail) {
            Verdict::NotSelfIsospectral
        } else {
            Verdict::Inconclusive
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Deviation<T> {
    pub value: T,
    pub grid: usize,
    pub verdict: Verdict,
}

fn half_period_scan<T: Real>(pair: &PartnerPair<T>, grid: usize) -> T {
    let half = pair.period * c(0.5);
    (0..grid).fold(T::zero(), |acc, i| {
        let x = pair.period * T::from_usize_lossy(i) / T::from_usize_lossy(grid);
        acc.max(((pair.v_plus)(x) - (pair.v_minus)(x - half)).abs())
    })
}

/// `max |V₊(x) − V₋(x − L/2)|` on a 2000-point grid, refined ×4 up to twice
/// while the value sits between the two verdict thresholds.
pub fn self_isospectral_deviation<T: Real>(pair: &PartnerPair<T>) -> Deviation<T> {
    let mut grid = SUSY_GRID;
    let mut value = half_period_scan(pair, grid);
    for _ in 0..2 {
        if Verdict::of(value) != Verdict::Inconclusive {
            break;
        }
        grid *= 4;
        value = value.max(half_period_scan(pair, grid));
    }
    Deviation { value, grid, verdict: Verdict::of(value) }
}

/// Same deviation with the half-period translation done by the closed-form
/// shift identities (`K/2` when `L = K`, `K` when `L = 2K`) rather than by
/// re-evaluating the elliptic functions.
pub fn shift_deviation<T: Real>(pair: &PartnerPair<T>) -> Result<Deviation<T>> {
    let (ell, form) = pair
        .w
        .ground_form
        .clone()
        .ok_or_else(|| Error::Precondition("superpotential has no closed-form ground state".into()))?;
    let k = ell.quarter_period();
    let shift = if (pair.period - k).abs() <= c::<T>(1e-12) * k {
        Shift::HalfK
    } else if (pair.period - k * c(2.0)).abs() <= c::<T>(1e-12) * k {
        Shift::K
    } else {
        return Err(Error::Precondition(format!("period {} is neither K nor 2K", pair.period)));
    };
    let v = |t: crate::elliptic::JacobiTriple<T>, sign: T| {
        let wj = w_from_psi(form.eval(&ell.taylor_from(t)));
        wj.value() * wj.value() + sign * wj.deriv(1)
    };
    let grid = SUSY_GRID;
    let mut value = T::zero();
    for i in 0..grid {
        let y = pair.period * T::from_usize_lossy(i) / T::from_usize_lossy(grid);
        let t = ell.triple(y);
        let shifted = ell.shift(&t, shift);
        // V₊(y + L/2) against V₋(y)
        value = value.max((v(shifted, T::one()) - v(t, -T::one())).abs());
    }
    Ok(Deviation { value, grid, verdict: Verdict::of(value) })
}
