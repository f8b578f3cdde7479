//! Associated Lamé potentials `V(x) = p m sn²(x) + q m cn²(x)/dn²(x) + offset`
//! with `p = a(a+1)`, `q = b(b+1)`.

use crate::config::TOL;
use crate::elliptic::{Elliptic, Modulus};
use crate::error::{Error, Result};
use crate::scalar::{c, Real};
use crate::taylor::Taylor;

/// Largest n searched by [`on_parabola`].
pub const MAX_PARABOLA: usize = 5;

/// Nonnegative root `a` of `a(a+1) = p`.
pub fn strength_to_root<T: Real>(p: T) -> T {
    (-T::one() + (T::one() + c::<T>(4.0) * p).sqrt()) * c(0.5)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PotentialSpec<T> {
    a: T,
    b: T,
    ell: Elliptic<T>,
    offset: T,
    swapped: bool,
}

impl<T: Real> PotentialSpec<T> {
    /// Build from the roots `a`, `b`. Both strengths must be nonnegative.
    pub fn from_ab(a: T, b: T, m: Modulus<T>, offset: T) -> Result<Self> {
        let spec = Self::from_ab_any(a, b, m, offset)?;
        if !spec.is_physical() {
            return Err(Error::domain(format!(
                "strengths p = {}, q = {} must be nonnegative",
                spec.p(),
                spec.q()
            )));
        }
        Ok(spec)
    }

    /// Build from `a`, `b` without the sign check on `p`, `q`. The potential is
    /// still bounded and real; the quasi-exactly-solvable families pass through
    /// such points (`q = b(b+1) < 0` for `-1 < b < 0`).
    pub fn from_ab_any(a: T, b: T, m: Modulus<T>, offset: T) -> Result<Self> {
        if !(a.is_finite() && b.is_finite() && offset.is_finite()) {
            return Err(Error::domain("non-finite potential parameter"));
        }
        Ok(PotentialSpec { a, b, ell: Elliptic::new(m)?, offset, swapped: false })
    }

    /// Build from the strengths, mapping each to its nonnegative root.
    pub fn from_pq(p: T, q: T, m: Modulus<T>, offset: T) -> Result<Self> {
        if !(p >= T::zero() && q >= T::zero()) {
            return Err(Error::domain(format!("strengths p = {p}, q = {q} must be nonnegative")));
        }
        Self::from_ab_any(strength_to_root(p), strength_to_root(q), m, offset)
    }

    /// Lamé potential `a(a+1) m sn²`.
    pub fn lame(a: T, m: Modulus<T>, offset: T) -> Result<Self> {
        Self::from_ab(a, T::zero(), m, offset)
    }

    /// Swap to `p >= q`. The swapped potential is the original translated by K,
    /// so spectra agree; the flag records that the swap happened.
    pub fn canonical(self) -> Self {
        if self.p() < self.q() {
            PotentialSpec { a: self.b, b: self.a, swapped: !self.swapped, ..self }
        } else {
            self
        }
    }

    pub fn with_offset(self, offset: T) -> Self {
        PotentialSpec { offset, ..self }
    }

    pub fn a(&self) -> T {
        self.a
    }
    pub fn b(&self) -> T {
        self.b
    }
    pub fn p(&self) -> T {
        self.a * (self.a + T::one())
    }
    pub fn q(&self) -> T {
        self.b * (self.b + T::one())
    }
    pub fn m(&self) -> T {
        self.ell.m()
    }
    pub fn offset(&self) -> T {
        self.offset
    }
    pub fn swapped(&self) -> bool {
        self.swapped
    }
    pub fn elliptic(&self) -> &Elliptic<T> {
        &self.ell
    }
    pub fn is_physical(&self) -> bool {
        let slack = c::<T>(-1e-12);
        self.p() >= slack && self.q() >= slack
    }

    pub fn eval(&self, x: T) -> T {
        let t = self.ell.triple(x);
        let m = self.m();
        self.p() * m * t.sn * t.sn + self.q() * m * t.cn * t.cn / (t.dn * t.dn) + self.offset
    }

    /// V and its derivatives at `x`.
    pub fn taylor(&self, x: T) -> Taylor<T> {
        let t = self.ell.taylor(x);
        let m = self.m();
        let ratio = t.cn / t.dn;
        t.sn2() * (self.p() * m) + ratio.square() * (self.q() * m) + self.offset
    }

    /// Period: K when p = q > 0, otherwise 2K. The constant potential
    /// p = q = 0 keeps the lattice period 2K.
    pub fn period(&self) -> T {
        let k = self.ell.quarter_period();
        if (self.p() - self.q()).abs() < c(1e-12) && self.p() > c(1e-12) {
            k
        } else {
            k + k
        }
    }

    /// Thread-safe evaluator closure.
    pub fn evaluator(&self) -> impl Fn(T) -> T + Send + Sync + Clone + 'static {
        let spec = *self;
        move |x| spec.eval(x)
    }

    /// All extrema in `[0, 2K)`.
    pub fn extrema(&self) -> Result<Vec<Extremum<T>>> {
        let (p, q, m) = (self.p(), self.q(), self.m());
        if !(p > T::zero() || q > T::zero()) {
            return Err(Error::Precondition("extrema need p > 0 or q > 0".into()));
        }
        let k = self.ell.quarter_period();
        let mut xs = vec![T::zero(), k];
        // dn^4 = (1-m) q / p, solvable iff q(1-m) <= p <= q/(1-m).
        if p > T::zero() && q > T::zero() {
            let target = ((T::one() - m) * q / p).sqrt();
            let lo = T::one() - m;
            // Points within rounding of the range ends coincide with x = 0 or K.
            let merge = c::<T>(1e-12);
            if target > lo + merge && target < T::one() - merge {
                let x = self.solve_dn_squared(target);
                xs.push(x);
                xs.push(k + k - x);
            }
        }
        xs.sort_by(|u, v| u.partial_cmp(v).unwrap());

        let mut out: Vec<Extremum<T>> = xs
            .into_iter()
            .map(|x| {
                let jet = self.taylor(x);
                let curvature = jet.deriv(2);
                let kind = if curvature.abs() < c(TOL.degenerate_extremum) {
                    ExtremumKind::Degenerate
                } else if curvature < T::zero() {
                    ExtremumKind::Maximum
                } else {
                    ExtremumKind::LocalMinimum
                };
                Extremum { x, value: jet.value(), kind }
            })
            .collect();
        let lowest = out
            .iter()
            .filter(|e| e.kind == ExtremumKind::LocalMinimum)
            .map(|e| e.value)
            .fold(T::infinity(), T::min);
        for e in out.iter_mut() {
            if e.kind == ExtremumKind::LocalMinimum
                && (e.value - lowest).abs() <= c::<T>(1e-12) * (T::one() + lowest.abs())
            {
                e.kind = ExtremumKind::GlobalMinimum;
            }
        }
        Ok(out)
    }

    // dn² is strictly decreasing on [0, K].
    fn solve_dn_squared(&self, target: T) -> T {
        let mut lo = T::zero();
        let mut hi = self.ell.quarter_period();
        for _ in 0..200 {
            let mid = (lo + hi) * c(0.5);
            if mid <= lo || mid >= hi {
                break;
            }
            let d = self.ell.triple(mid).dn;
            if d * d > target {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        (lo + hi) * c(0.5)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    Maximum,
    LocalMinimum,
    GlobalMinimum,
    Degenerate,
}

impl ExtremumKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ExtremumKind::Maximum => "maximum",
            ExtremumKind::LocalMinimum => "local_minimum",
            ExtremumKind::GlobalMinimum => "global_minimum",
            ExtremumKind::Degenerate => "degenerate",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum<T> {
    pub x: T,
    pub value: T,
    pub kind: ExtremumKind,
}

/// `q` on the parabola of solvability `P_n` at root `a`: `(a-n+1)(a-n)`.
pub fn parabola_q<T: Real>(n: usize, a: T) -> T {
    let nn = T::from_usize_lossy(n);
    (a - nn + T::one()) * (a - nn)
}

/// Implicit form of `P_n`: zero iff `(p, q)` lies on the parabola.
/// `P_1`: `(p-q)² - 2(p+q)`; `P_2`: `(p-q)² - 8(p+q) + 12`; general n follows
/// from eliminating `a` between `p = a(a+1)` and `q = (a-n+1)(a-n)`.
pub fn parabola_residual<T: Real>(n: usize, p: T, q: T) -> T {
    let nn = T::from_usize_lossy(n);
    let d = p - q;
    // a = (p - q + n(n-1)) / 2n, substituted into 4n² (a(a+1) - p).
    let s = d + nn * (nn - T::one());
    s * s + c::<T>(2.0) * nn * s - c::<T>(4.0) * nn * nn * p
}

/// Every `n` in `1..=5` for which `(p, q)` lies on `P_n`, with the root `a`.
pub fn on_parabola<T: Real>(p: T, q: T) -> Vec<(usize, T)> {
    if !(p >= T::zero() && q >= T::zero()) {
        return Vec::new();
    }
    let a = strength_to_root(p);
    (1..=MAX_PARABOLA)
        .filter(|&n| (parabola_q(n, a) - q).abs() < c(TOL.parabola))
        .map(|n| (n, a))
        .collect()
}

/// Points `(p, q)` along `P_n` for `a` in `[a_min, a_max]`.
pub fn parabola_points<T: Real>(n: usize, a_min: T, a_max: T, count: usize) -> Vec<(T, T, T)> {
    let count = count.max(2);
    (0..count)
        .map(|i| {
            let a = a_min + (a_max - a_min) * T::from_usize_lossy(i) / T::from_usize_lossy(count - 1);
            (a, a * (a + T::one()), parabola_q(n, a))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(p: f64, q: f64, m: f64) -> PotentialSpec<f64> {
        PotentialSpec::from_pq(p, q, Modulus::new(m).unwrap(), 0.0).unwrap()
    }

    #[test]
    fn values_at_lattice_points() {
        let v = spec(6.0, 2.0, 0.5);
        assert!((v.eval(0.0) - 1.0).abs() < 1e-14);
        let k = v.elliptic().quarter_period();
        assert!((v.eval(k) - 3.0).abs() < 1e-12);
        let z = spec(0.0, 0.0, 0.5);
        for i in 0..10 {
            assert_eq!(z.eval(0.37 * i as f64), 0.0);
        }
    }

    #[test]
    fn root_conversion() {
        let v = spec(6.0, 2.0, 0.3);
        assert!((v.a() - 2.0).abs() < 1e-15 && (v.b() - 1.0).abs() < 1e-15);
        let v = spec(63.0 / 4.0, 0.75, 0.3);
        assert!((v.a() - 3.5).abs() < 1e-14 && (v.b() - 0.5).abs() < 1e-14);
        assert!(PotentialSpec::from_pq(-1.0, 0.0, Modulus::new(0.5).unwrap(), 0.0).is_err());
    }

    #[test]
    fn periods() {
        let k = Elliptic::with_m(0.5).unwrap().quarter_period();
        assert!((spec(6.0, 0.0, 0.5).period() - 3.708).abs() < 2e-3);
        assert_eq!(spec(2.0, 2.0, 0.5).period(), k);
        let k9 = Elliptic::with_m(0.9).unwrap().quarter_period();
        assert_eq!(spec(6.0, 6.0, 0.9).period(), k9);
    }

    #[test]
    fn canonicalization_swaps_and_flags() {
        let v = spec(2.0, 6.0, 0.4).canonical();
        assert!(v.swapped());
        assert!((v.p() - 6.0).abs() < 1e-12 && (v.q() - 2.0).abs() < 1e-12);
        let w = spec(6.0, 2.0, 0.4).canonical();
        assert!(!w.swapped());
    }

    #[test]
    fn critical_range_extrema() {
        let few = spec(4.0, 2.0, 0.4).extrema().unwrap();
        assert_eq!(few.len(), 2);
        assert!(few[0].x == 0.0);
        let many = spec(4.0, 2.0, 0.6).extrema().unwrap();
        assert_eq!(many.len(), 4);
        for e in &many {
            let d1 = spec(4.0, 2.0, 0.6).taylor(e.x).deriv(1);
            assert!(d1.abs() < 1e-8);
        }
        assert!(spec(0.0, 0.0, 0.5).extrema().is_err());
    }

    #[test]
    fn extremum_character_changes_with_p() {
        // q = 2, m = 0.5: x = 0 goes maximum -> local minimum -> absolute minimum.
        let kind_at_zero = |p: f64| spec(p, 2.0, 0.5).extrema().unwrap()[0].kind;
        assert_eq!(kind_at_zero(0.5), ExtremumKind::Maximum);
        assert_eq!(kind_at_zero(1.5), ExtremumKind::LocalMinimum);
        assert_eq!(kind_at_zero(3.0), ExtremumKind::GlobalMinimum);
        assert_eq!(kind_at_zero(6.0), ExtremumKind::GlobalMinimum);
    }

    #[test]
    fn boundary_of_critical_range_is_degenerate() {
        // p = q (1 - m) puts condition (iii) on top of x = 0.
        let v = spec(1.0, 2.0, 0.5);
        let e = v.extrema().unwrap();
        assert_eq!(e.len(), 2);
        assert_eq!(e[0].kind, ExtremumKind::Degenerate);
    }

    #[test]
    fn parabola_membership() {
        let hits = on_parabola(2.0_f64, 0.0);
        assert!(hits.iter().any(|&(n, a)| n == 1 && (a - 1.0).abs() < 1e-12));
        assert!(hits.iter().any(|&(n, a)| n == 2 && (a - 1.0).abs() < 1e-12));
        assert!(on_parabola(6.0_f64, 2.0).iter().any(|&(n, a)| n == 1 && (a - 2.0).abs() < 1e-12));
        let h = on_parabola(12.0_f64, 0.0);
        assert!(h.iter().any(|&(n, _)| n == 3) && h.iter().any(|&(n, _)| n == 4));
        assert!(on_parabola(6.0_f64, 2.0).iter().all(|&(n, _)| n != 2));
        assert!(on_parabola(5.0_f64, 1.3).is_empty());
    }

    #[test]
    fn parabola_implicit_forms() {
        for &(n, a) in &[(1usize, 0.7_f64), (1, 2.0), (2, 1.3), (2, 4.0), (4, 2.5)] {
            let p = a * (a + 1.0);
            let q = parabola_q(n, a);
            assert!(parabola_residual(n, p, q).abs() < 1e-9);
        }
        let (p, q) = (6.0_f64, 2.0_f64);
        assert!(((p - q).powi(2) - 2.0 * (p + q)).abs() < 1e-12);
        let (p, q) = (6.0_f64, 0.0_f64);
        assert!(((p - q).powi(2) - 8.0 * (p + q) + 12.0).abs() < 1e-12);
    }
}
