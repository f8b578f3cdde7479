//! Floquet discriminant of `−y″ + (V − E) y = 0` and numerically located band
//! edges. Works with any period-`L` evaluator, independent of the closed forms.

pub mod ode;

use std::fmt;

use crate::config::TOL;
use crate::error::{Error, Result};
use crate::scalar::{c, Real};
use crate::spectra::count_sign_changes;
use ode::{integrate, OdeOptions};

/// Initial number of energy intervals in the edge scan.
pub const SCAN_INTERVALS: usize = 400;
/// Grid used to locate `min V`.
pub const FLOOR_GRID: usize = 2000;

fn options<T: Real>(max_step: T) -> OdeOptions<T> {
    OdeOptions { rtol: c(TOL.ode_rtol), atol: c(TOL.ode_atol), max_step, max_steps: 2_000_000 }
}

/// `D(E) = y₁(L) + y₂′(L)` with its energy derivative.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Discriminant<T> {
    pub energy: T,
    pub value: T,
    /// `dD/dE`, integrated alongside the solutions.
    pub slope: T,
    /// `|y₁y₂′ − y₁′y₂ − 1|` at `x = L`, before scaling by the largest
    /// intermediate product.
    pub wronskian_defect: T,
    /// Monodromy matrix `[[y₁, y₂], [y₁′, y₂′]]` at `x = L`.
    pub monodromy: [[T; 2]; 2],
}

/// Floquet discriminant at energy `energy` for a potential of period `period`.
pub fn discriminant<T: Real, V: Fn(T) -> T + ?Sized>(v: &V, period: T, energy: T) -> Result<Discriminant<T>> {
    if !(period > T::zero() && period.is_finite() && energy.is_finite()) {
        return Err(Error::domain("discriminant needs a positive period and finite energy"));
    }
    // y₁, y₁′, y₂, y₂′ and their E-derivatives z, which obey z″ = (V − E) z − y.
    let rhs = |x: T, s: &[T; 8]| {
        let g = v(x) - energy;
        [s[1], g * s[0], s[3], g * s[2], s[5], g * s[4] - s[0], s[7], g * s[6] - s[2]]
    };
    let one = T::one();
    let zero = T::zero();
    let y0 = [one, zero, zero, one, zero, zero, zero, zero];
    let mut opts = options(zero);
    let mut attempt = 0;
    let (s, defect) = loop {
        // Roundoff in y₁y₂′ − y₁′y₂ scales with the largest products seen en route.
        let mut scale = one;
        let s = integrate(rhs, zero, period, y0, &opts, |_, y, _| {
            scale = scale.max((y[0] * y[3]).abs()).max((y[1] * y[2]).abs());
        })?;
        let defect = (s[0] * s[3] - s[1] * s[2] - one).abs();
        if defect <= c::<T>(TOL.wronskian) * scale {
            break (s, defect);
        }
        // Deep wells at m -> 1: tighten and retry before giving up.
        attempt += 1;
        if attempt > 2 {
            return Err(Error::numerical(
                period.to_f64_lossy(),
                format!("Wronskian drift {defect} at E = {energy}"),
            ));
        }
        opts.rtol = opts.rtol * c(0.1);
        opts.atol = opts.atol * c(0.1);
    };
    Ok(Discriminant {
        energy,
        value: s[0] + s[3],
        slope: s[4] + s[7],
        wronskian_defect: defect,
        monodromy: [[s[0], s[2]], [s[1], s[3]]],
    })
}

/// Which Floquet condition an edge satisfies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeType {
    /// `D = +2`: periodic, `kL = 0`.
    Plus,
    /// `D = −2`: antiperiodic, `kL = π`.
    Minus,
}

impl EdgeType {
    pub fn target<T: Real>(&self) -> T {
        match self {
            EdgeType::Plus => c(2.0),
            EdgeType::Minus => c(-2.0),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            EdgeType::Plus => "D=+2",
            EdgeType::Minus => "D=-2",
        }
    }
}

impl fmt::Display for EdgeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BandEdge<T> {
    pub energy: T,
    pub edge_type: EdgeType,
    pub index: usize,
    /// Nodes of the edge eigenfunction in `[0, L)`.
    pub nodes: usize,
    /// Part of a closed gap (tangent root, reported twice).
    pub closed_gap: bool,
    /// `D(energy)` at the reported root.
    pub discriminant: T,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BandStructure<T> {
    pub edges: Vec<BandEdge<T>>,
    /// `Δₙ = E₂ₙ − E₂ₙ₋₁` with edges counted from zero.
    pub gaps: Vec<T>,
    pub e_floor: T,
    pub e_max: T,
}

impl<T: Real> BandStructure<T> {
    pub fn energies(&self) -> Vec<T> {
        self.edges.iter().map(|e| e.energy).collect()
    }
}

#[derive(Debug, Clone, Copy)]
struct Sample<T> {
    e: T,
    d: T,
    dp: T,
}

struct Scanner<'a, T, V: ?Sized> {
    v: &'a V,
    period: T,
}

impl<'a, T: Real, V: Fn(T) -> T + ?Sized> Scanner<'a, T, V> {
    fn sample(&self, e: T) -> Result<Sample<T>> {
        let d = discriminant(self.v, self.period, e)?;
        Ok(Sample { e, d: d.value, dp: d.slope })
    }

    /// Root of `D = target` inside a bracket, safeguarded Newton.
    fn level(&self, target: T, a: Sample<T>, b: Sample<T>) -> Result<Sample<T>> {
        let (mut lo, mut hi) = if a.d - target < T::zero() { (a, b) } else { (b, a) };
        let mut best = if (a.d - target).abs() < (b.d - target).abs() { a } else { b };
        let mut cur = best;
        let mut bisect = false;
        let tol_e = c::<T>(TOL.edge_energy);
        for _ in 0..200 {
            let (l, h) = (lo.e.min(hi.e), lo.e.max(hi.e));
            let newton = cur.e - (cur.d - target) / cur.dp;
            let x = if !bisect && newton.is_finite() && newton > l && newton < h { newton } else { (l + h) * c(0.5) };
            let s = self.sample(x)?;
            let f = s.d - target;
            if f < T::zero() {
                lo = s;
            } else {
                hi = s;
            }
            // Fall back to bisection when Newton fails to halve the residual.
            bisect = f.abs() > (cur.d - target).abs() * c(0.5);
            if f.abs() < (best.d - target).abs() {
                best = s;
            }
            let step = (s.e - cur.e).abs();
            cur = s;
            let width = (hi.e - lo.e).abs();
            if f == T::zero()
                || (width < tol_e && f.abs() < c(1e-10))
                || width < T::epsilon() * c::<T>(8.0) * (T::one() + x.abs())
                || step < T::epsilon() * c::<T>(4.0) * (T::one() + x.abs())
            {
                break;
            }
        }
        Ok(best)
    }

    /// Zero of `dD/dE` in a bracket, Illinois false position.
    fn extremum(&self, a: Sample<T>, b: Sample<T>) -> Result<Sample<T>> {
        let (mut lo, mut hi) = (a, b);
        let (mut flo, mut fhi) = (a.dp, b.dp);
        let mut side = 0i32;
        let mut best = if a.dp.abs() < b.dp.abs() { a } else { b };
        for _ in 0..200 {
            let mut x = (lo.e * fhi - hi.e * flo) / (fhi - flo);
            if !(x.is_finite()) || x <= lo.e.min(hi.e) || x >= lo.e.max(hi.e) {
                x = (lo.e + hi.e) * c(0.5);
            }
            let s = self.sample(x)?;
            if s.dp.abs() < best.dp.abs() {
                best = s;
            }
            if s.dp == T::zero() {
                break;
            }
            if (s.dp > T::zero()) == (flo > T::zero()) {
                lo = s;
                flo = s.dp;
                if side == -1 {
                    fhi = fhi * c(0.5);
                }
                side = -1;
            } else {
                hi = s;
                fhi = s.dp;
                if side == 1 {
                    flo = flo * c(0.5);
                }
                side = 1;
            }
            if (hi.e - lo.e).abs() < c::<T>(1e-13) * (T::one() + x.abs()) {
                break;
            }
        }
        Ok(best)
    }
}

fn hermite_mid<T: Real>(a: &Sample<T>, b: &Sample<T>) -> T {
    (a.d + b.d) * c(0.5) + (b.e - a.e) * (a.dp - b.dp) / c(8.0)
}

/// Minimum of `v` over one period on a uniform grid.
pub fn grid_min<T: Real, V: Fn(T) -> T + ?Sized>(v: &V, period: T) -> T {
    (0..FLOOR_GRID).fold(T::infinity(), |acc, i| {
        acc.min(v(period * T::from_usize_lossy(i) / T::from_usize_lossy(FLOOR_GRID)))
    })
}

/// Refined scan of `D` over `[lo, hi]`, extrema inserted as samples.
fn scan<T: Real, V: Fn(T) -> T + ?Sized>(sc: &Scanner<'_, T, V>, lo: T, hi: T) -> Result<(Vec<Sample<T>>, Vec<bool>)> {
    let n = SCAN_INTERVALS;
    let h0 = (hi - lo) / T::from_usize_lossy(n);
    let min_width = h0 / c(4096.0);
    let coarse = (0..=n)
        .map(|i| sc.sample(lo + h0 * T::from_usize_lossy(i)))
        .collect::<Result<Vec<_>>>()?;
    let mut samples = vec![coarse[0]];
    for w in coarse.windows(2) {
        let mut stack = vec![(w[0], w[1])];
        let mut done = Vec::new();
        while let Some((a, b)) = stack.pop() {
            let mid = sc.sample((a.e + b.e) * c(0.5))?;
            let err = (mid.d - hermite_mid(&a, &b)).abs();
            if err > c::<T>(1e-3) * T::one().max(mid.d.abs()) && b.e - a.e > min_width {
                stack.push((mid, b));
                stack.push((a, mid));
            } else {
                done.push(mid);
                done.push(b);
            }
        }
        samples.extend(done);
    }
    // Insert extrema of D.
    let mut out = Vec::with_capacity(samples.len());
    let mut is_ext = Vec::with_capacity(samples.len());
    out.push(samples[0]);
    is_ext.push(false);
    for w in samples.windows(2) {
        if w[0].dp * w[1].dp < T::zero() {
            out.push(sc.extremum(w[0], w[1])?);
            is_ext.push(true);
        }
        out.push(w[1]);
        is_ext.push(false);
    }
    Ok((out, is_ext))
}

/// All band edges in `[min V − 1, e_max]`.
pub fn band_edges_numeric<T: Real, V: Fn(T) -> T + ?Sized>(v: &V, period: T, e_max: T) -> Result<BandStructure<T>> {
    let e_floor = grid_min(v, period) - T::one();
    if !(e_max > e_floor) {
        return Err(Error::domain(format!("e_max = {e_max} lies below the energy floor {e_floor}")));
    }
    let sc = Scanner { v, period };
    let (samples, is_ext) = scan(&sc, e_floor, e_max)?;
    let tangency = c::<T>(TOL.tangency_value);
    let mut found: Vec<(Sample<T>, EdgeType, bool)> = Vec::new();
    for kind in [EdgeType::Plus, EdgeType::Minus] {
        let t = kind.target::<T>();
        // Tangent extrema count as exact touches of the level.
        let offset: Vec<T> = samples
            .iter()
            .zip(&is_ext)
            .map(|(s, ext)| if *ext && (s.d - t).abs() < tangency { T::zero() } else { s.d - t })
            .collect();
        for (i, s) in samples.iter().enumerate() {
            if is_ext[i] && offset[i] == T::zero() {
                found.push((*s, kind, true));
                found.push((*s, kind, true));
            }
        }
        for i in 0..samples.len() - 1 {
            if offset[i] * offset[i + 1] < T::zero() {
                found.push((sc.level(t, samples[i], samples[i + 1])?, kind, false));
            }
        }
    }
    found.sort_by(|x, y| x.0.e.partial_cmp(&y.0.e).unwrap_or(std::cmp::Ordering::Equal));

    let mut edges = Vec::with_capacity(found.len());
    let mut prev_energy = e_floor;
    let mut i = 0;
    while i < found.len() {
        let (s, kind, closed) = found[i];
        let nodes = edge_nodes(v, period, s.e, kind, closed)?;
        let reps = if closed { 2 } else { 1 };
        for _ in 0..reps {
            let index = edges.len();
            let want = (index + 1) / 2;
            let want_kind = if want % 2 == 0 { EdgeType::Plus } else { EdgeType::Minus };
            if nodes != want || kind != want_kind {
                return Err(Error::MissedEdge {
                    lower: prev_energy.to_f64_lossy(),
                    upper: s.e.to_f64_lossy(),
                    reason: format!(
                        "edge {index} ({kind}) has {nodes} nodes, oscillation theorem needs {want} ({want_kind})"
                    ),
                });
            }
            edges.push(BandEdge { energy: s.e, edge_type: kind, index, nodes, closed_gap: closed, discriminant: s.d });
        }
        prev_energy = s.e;
        i += reps;
    }
    let gaps = (1..)
        .map(|n| (2 * n - 1, 2 * n))
        .take_while(|&(_, hi)| hi < edges.len())
        .map(|(lo, hi)| edges[hi].energy - edges[lo].energy)
        .collect();
    Ok(BandStructure { edges, gaps, e_floor, e_max })
}

/// Node count in `[0, L)` of the Floquet solution at an edge.
fn edge_nodes<T: Real, V: Fn(T) -> T + ?Sized>(v: &V, period: T, energy: T, kind: EdgeType, closed: bool) -> Result<usize> {
    let d = discriminant(v, period, energy)?;
    let m = d.monodromy;
    let sgn = kind.target::<T>() * c(0.5);
    // Null vector of M − sgn·I from its larger row.
    let r1 = [m[0][0] - sgn, m[0][1]];
    let r2 = [m[1][0], m[1][1] - sgn];
    let n1 = r1[0].abs().max(r1[1].abs());
    let n2 = r2[0].abs().max(r2[1].abs());
    let (c1, c2) = if closed || n1.max(n2) < c(1e-6) {
        (T::one(), T::zero())
    } else if n1 >= n2 {
        (-r1[1], r1[0])
    } else {
        (-r2[1], r2[0])
    };
    let psi = eigenfunction(v, period, energy, [c1, c2])?;
    count_sign_changes(&|x| psi.eval(x), period)
}

/// Numerical solution with cubic Hermite dense output.
pub struct DenseSolution<T> {
    xs: Vec<T>,
    ys: Vec<[T; 2]>,
}

impl<T: Real> DenseSolution<T> {
    pub fn eval(&self, x: T) -> T {
        let idx = self.xs.partition_point(|&p| p <= x);
        let i = idx.saturating_sub(1).min(self.xs.len() - 2);
        let (x0, x1) = (self.xs[i], self.xs[i + 1]);
        let h = x1 - x0;
        let t = (x - x0) / h;
        let (y0, y1) = (self.ys[i], self.ys[i + 1]);
        let t2 = t * t;
        let t3 = t2 * t;
        let two = c::<T>(2.0);
        let three = c::<T>(3.0);
        (two * t3 - three * t2 + T::one()) * y0[0]
            + (t3 - two * t2 + t) * h * y0[1]
            + (-two * t3 + three * t2) * y1[0]
            + (t3 - t2) * h * y1[1]
    }
}

/// Solution of `−ψ″ + (V − E)ψ = 0` on `[0, L]` with `ψ(0), ψ′(0)` given by
/// the coefficients on the fundamental pair.
pub fn eigenfunction<T: Real, V: Fn(T) -> T + ?Sized>(
    v: &V,
    period: T,
    energy: T,
    coeffs: [T; 2],
) -> Result<DenseSolution<T>> {
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    integrate(
        |x, s: &[T; 2]| [s[1], (v(x) - energy) * s[0]],
        T::zero(),
        period,
        coeffs,
        &options(period / c(256.0)),
        |x, y, _| {
            xs.push(x);
            ys.push(*y);
        },
    )?;
    Ok(DenseSolution { xs, ys })
}

/// Crystal momentum `k = arccos(D/2)/L` inside a band, `None` in a gap.
pub fn dispersion<T: Real, V: Fn(T) -> T + ?Sized>(v: &V, period: T, energy: T) -> Result<Option<T>> {
    let d = discriminant(v, period, energy)?.value;
    if d.abs() <= c(2.0) {
        Ok(Some((d * c(0.5)).acos() / period))
    } else {
        Ok(None)
    }
}

/// Largest difference between corresponding numerical edges of two potentials.
pub fn spectra_match<T: Real, V1: Fn(T) -> T + ?Sized, V2: Fn(T) -> T + ?Sized>(
    v1: &V1,
    v2: &V2,
    period: T,
    e_max: T,
) -> Result<T> {
    let a = band_edges_numeric(v1, period, e_max)?;
    let b = band_edges_numeric(v2, period, e_max)?;
    if a.edges.len() != b.edges.len() {
        return Err(Error::StructuralMismatch(format!(
            "{} edges against {} below E = {e_max}",
            a.edges.len(),
            b.edges.len()
        )));
    }
    Ok(a.edges.iter().zip(&b.edges).fold(T::zero(), |acc, (x, y)| acc.max((x.energy - y.energy).abs())))
}
