//! Closed-form band edges: tabulated Lamé and associated Lamé eigenstates,
//! the quasi-exactly-solvable (QES) engine, node counting and residual checks.

mod deltas;
mod form;
mod qes;
mod roots;
mod tables;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

pub use deltas::Deltas;
pub use form::{EllipticForm, FormLabel};
pub use qes::{cubic_lambda, qes_block, QesBlock, QesClass};
pub use roots::poly_roots;
pub use tables::{gap_delta2, lame_energies, lame_states, named_states, table3_states, NamedCase};

use crate::config::TOL;
use crate::elliptic::Elliptic;
use crate::error::{Error, Result};
use crate::potential::PotentialSpec;
use crate::scalar::{c, Real};
use crate::taylor::Taylor;

/// Samples used for node counting.
pub const NODE_GRID: usize = 4096;

/// Pointwise evaluator returning the wavefunction with its derivatives.
#[derive(Clone)]
pub struct Wavefunction<T>(Arc<dyn Fn(T) -> Taylor<T> + Send + Sync>);

impl<T: Real> Wavefunction<T> {
    pub fn new(f: impl Fn(T) -> Taylor<T> + Send + Sync + 'static) -> Self {
        Wavefunction(Arc::new(f))
    }

    /// Evaluator for a closed form over the given elliptic kernel.
    pub fn from_form(ell: Elliptic<T>, form: EllipticForm<T>) -> Self {
        Self::new(move |x| form.eval(&ell.taylor(x)))
    }

    pub fn jet(&self, x: T) -> Taylor<T> {
        (self.0)(x)
    }

    pub fn value(&self, x: T) -> T {
        self.jet(x).value()
    }
}

impl<T> fmt::Debug for Wavefunction<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("Wavefunction(..)")
    }
}

/// Periodicity of a band-edge state relative to the potential period L.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PeriodClass {
    /// ψ(x + L) = ψ(x)
    L,
    /// ψ(x + L) = -ψ(x)
    TwoL,
}

impl PeriodClass {
    pub fn as_str(&self) -> &'static str {
        match self {
            PeriodClass::L => "L",
            PeriodClass::TwoL => "2L",
        }
    }
}

/// Where a state came from. `id` strings are stable and used in CLI output.
#[derive(Debug, Clone, PartialEq)]
pub struct Provenance {
    pub id: String,
    pub form: Option<FormLabel>,
    /// Node count and period class as listed in the source table, if any.
    pub tabulated: Option<(usize, PeriodClass)>,
}

impl Provenance {
    pub fn new(id: impl Into<String>) -> Self {
        Provenance { id: id.into(), form: None, tabulated: None }
    }

    pub fn with_form(mut self, form: FormLabel) -> Self {
        self.form = Some(form);
        self
    }

    pub fn with_tabulated(mut self, nodes: usize, period: PeriodClass) -> Self {
        self.tabulated = Some((nodes, period));
        self
    }
}

/// One closed-form band edge.
#[derive(Debug, Clone)]
pub struct AnalyticState<T> {
    pub energy: T,
    pub psi: Wavefunction<T>,
    pub period_class: PeriodClass,
    pub nodes: usize,
    /// Potential period L the class and node count refer to.
    pub period: T,
    pub provenance: Provenance,
    /// Closed form behind `psi`, when there is one.
    pub form: Option<EllipticForm<T>>,
}

impl<T: Real> AnalyticState<T> {
    /// Build a state, measuring its period class and node count.
    pub fn measured(energy: T, psi: Wavefunction<T>, period: T, provenance: Provenance) -> Result<Self> {
        let period_class = detect_period_class(&psi, period)?;
        let nodes = count_sign_changes(&|x| psi.value(x), period)?;
        Ok(AnalyticState { energy, psi, period_class, nodes, period, provenance, form: None })
    }

    pub fn from_form(
        energy: T,
        ell: Elliptic<T>,
        form: EllipticForm<T>,
        period: T,
        provenance: Provenance,
    ) -> Result<Self> {
        let label = form.label();
        let psi = Wavefunction::from_form(ell, form.clone());
        let mut state = Self::measured(energy, psi, period, provenance.with_form(label))?;
        state.form = Some(form);
        Ok(state)
    }

    /// Schrödinger residual, see [`schrodinger_residual`].
    pub fn residual(&self, v: &dyn Fn(T) -> T) -> T {
        schrodinger_residual(self, v, 1000)
    }
}

/// States of one potential.
#[derive(Debug, Clone)]
pub struct StateSet<T> {
    pub potential: PotentialSpec<T>,
    pub states: Vec<AnalyticState<T>>,
}

impl<T: Real> StateSet<T> {
    pub fn energies(&self) -> Vec<T> {
        self.states.iter().map(|s| s.energy).collect()
    }

    pub fn period(&self) -> T {
        self.potential.period()
    }

    pub fn ground(&self) -> &AnalyticState<T> {
        &self.states[0]
    }

    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    /// Shift the potential so the lowest state sits at zero energy.
    pub fn shifted_to_ground(mut self) -> Self {
        if let Some(e0) = self.states.first().map(|s| s.energy) {
            self.potential = self.potential.with_offset(self.potential.offset() - e0);
            for s in &mut self.states {
                s.energy = s.energy - e0;
            }
        }
        self
    }
}

/// Sort by energy; ties go to node count, then period class.
pub fn sort_states<T: Real>(states: &mut [AnalyticState<T>]) {
    states.sort_by(|x, y| {
        let scale = T::one() + x.energy.abs().max(y.energy.abs());
        if (x.energy - y.energy).abs() <= c::<T>(1e-10) * scale {
            x.nodes.cmp(&y.nodes).then(x.period_class.cmp(&y.period_class))
        } else {
            x.energy.partial_cmp(&y.energy).unwrap_or(Ordering::Equal)
        }
    });
}

fn detect_period_class<T: Real>(psi: &Wavefunction<T>, period: T) -> Result<PeriodClass> {
    let n = 17;
    let mut scale = T::zero();
    let mut even = T::zero();
    let mut odd = T::zero();
    for i in 0..n {
        let x = period * (T::from_usize_lossy(i) + c(0.37)) / T::from_usize_lossy(n);
        let a = psi.value(x);
        let b = psi.value(x + period);
        scale = scale.max(a.abs());
        even = even.max((b - a).abs());
        odd = odd.max((b + a).abs());
    }
    if !(scale > T::zero()) {
        return Err(Error::DegenerateInput("wavefunction vanishes on the period-class grid".into()));
    }
    let tol = c::<T>(TOL.period_class) * scale;
    if even <= tol {
        Ok(PeriodClass::L)
    } else if odd <= tol {
        Ok(PeriodClass::TwoL)
    } else {
        Err(Error::Precondition(format!(
            "state is neither periodic nor antiperiodic over L = {period} (defects {even}, {odd})"
        )))
    }
}

/// Count zeros of `f` in `[0, interval)` from strict sign changes on a uniform
/// grid, refining suspicious near-zero stretches to catch close pairs.
pub fn count_sign_changes<T: Real>(f: &dyn Fn(T) -> T, interval: T) -> Result<usize> {
    if !(interval > T::zero()) {
        return Err(Error::domain("node-count interval must be positive"));
    }
    let n = NODE_GRID;
    let h = interval / T::from_usize_lossy(n);
    let values: Vec<T> = (0..=n).map(|i| f(h * T::from_usize_lossy(i))).collect();
    let scale = values.iter().fold(T::zero(), |acc, v| acc.max(v.abs()));
    if !(scale > T::min_positive_value().sqrt()) || !scale.is_finite() {
        return Err(Error::DegenerateInput("wavefunction vanishes identically".into()));
    }
    let zero = c::<T>(1e-10) * scale;
    let mut count = 0;
    if values[0].abs() <= zero {
        // zero at the left end; its periodic image at the right end is skipped
        count += 1;
    }
    let sign = |v: T| if v.abs() <= zero { 0 } else if v > T::zero() { 1 } else { -1 };
    let mut last = 0i32;
    for i in 0..=n {
        let s = sign(values[i]);
        if i == n && values[0].abs() <= zero {
            break;
        }
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            count += 1;
        } else if last == s && i > 0 {
            // Same sign at consecutive samples, but a dip toward zero may hide
            // two close crossings.
            let lo = values[i - 1].abs().min(values[i].abs());
            if lo < c::<T>(1e-3) * scale {
                count += refine_pair(f, h * T::from_usize_lossy(i - 1), h, zero);
            }
        }
        last = s;
    }
    Ok(count)
}

fn refine_pair<T: Real>(f: &dyn Fn(T) -> T, x0: T, h: T, zero: T) -> usize {
    let sub = 64;
    let mut last = 0i32;
    let mut changes = 0;
    for j in 0..=sub {
        let v = f(x0 + h * T::from_usize_lossy(j) / T::from_usize_lossy(sub));
        let s = if v.abs() <= zero { 0 } else if v > T::zero() { 1 } else { -1 };
        if s == 0 {
            continue;
        }
        if last != 0 && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// Number of nodes of a state in `[0, interval)`.
pub fn count_nodes<T: Real>(state: &AnalyticState<T>, interval: T) -> Result<usize> {
    count_sign_changes(&|x| state.psi.value(x), interval)
}

/// `max |−ψ″ + (V − E) ψ| / max |ψ|` over `grid` points of one period, with ψ″
/// from a fourth-order central difference at `h = L / 4096`.
pub fn schrodinger_residual<T: Real>(state: &AnalyticState<T>, v: &dyn Fn(T) -> T, grid: usize) -> T {
    let period = state.period;
    let h = period / c(4096.0);
    let f = |x: T| state.psi.value(x);
    let mut worst = T::zero();
    let mut scale = T::zero();
    for i in 0..grid {
        let x = period * T::from_usize_lossy(i) / T::from_usize_lossy(grid);
        let f0 = f(x);
        let d2 = (-f(x + h * c(2.0)) + f(x + h) * c(16.0) - f0 * c(30.0) + f(x - h) * c(16.0)
            - f(x - h * c(2.0)))
            / (h * h * c(12.0));
        worst = worst.max((-d2 + (v(x) - state.energy) * f0).abs());
        scale = scale.max(f0.abs());
    }
    worst / scale
}

/// Same residual with ψ″ taken from the jet, no finite differencing.
pub fn exact_residual<T: Real>(state: &AnalyticState<T>, v: &dyn Fn(T) -> T, grid: usize) -> T {
    let mut worst = T::zero();
    let mut scale = T::zero();
    for i in 0..grid {
        let x = state.period * T::from_usize_lossy(i) / T::from_usize_lossy(grid);
        let j = state.psi.jet(x);
        worst = worst.max((-j.deriv(2) + (v(x) - state.energy) * j.value()).abs());
        scale = scale.max(j.value().abs());
    }
    worst / scale
}
