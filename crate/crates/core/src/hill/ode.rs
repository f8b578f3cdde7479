//! Dormand–Prince 5(4) with step-size control.

use crate::error::{Error, Result};
use crate::scalar::{c, Real};

#[derive(Debug, Clone, Copy)]
pub struct OdeOptions<T> {
    pub rtol: T,
    pub atol: T,
    /// Upper bound on the step; zero means the interval length.
    pub max_step: T,
    pub max_steps: usize,
}

const A21: f64 = 1.0 / 5.0;
const A31: f64 = 3.0 / 40.0;
const A32: f64 = 9.0 / 40.0;
const A41: f64 = 44.0 / 45.0;
const A42: f64 = -56.0 / 15.0;
const A43: f64 = 32.0 / 9.0;
const A51: f64 = 19372.0 / 6561.0;
const A52: f64 = -25360.0 / 2187.0;
const A53: f64 = 64448.0 / 6561.0;
const A54: f64 = -212.0 / 729.0;
const A61: f64 = 9017.0 / 3168.0;
const A62: f64 = -355.0 / 33.0;
const A63: f64 = 46732.0 / 5247.0;
const A64: f64 = 49.0 / 176.0;
const A65: f64 = -5103.0 / 18656.0;
const B1: f64 = 35.0 / 384.0;
const B3: f64 = 500.0 / 1113.0;
const B4: f64 = 125.0 / 192.0;
const B5: f64 = -2187.0 / 6784.0;
const B6: f64 = 11.0 / 84.0;
// b - b*, the embedded error weights
const E1: f64 = 71.0 / 57600.0;
const E3: f64 = -71.0 / 16695.0;
const E4: f64 = 71.0 / 1920.0;
const E5: f64 = -17253.0 / 339200.0;
const E6: f64 = 22.0 / 525.0;
const E7: f64 = -1.0 / 40.0;

fn axpy<T: Real, const N: usize>(y: &[T; N], h: T, terms: &[(f64, &[T; N])]) -> [T; N] {
    let mut out = *y;
    for (w, k) in terms {
        let hw = h * c::<T>(*w);
        for i in 0..N {
            out[i] = out[i] + hw * k[i];
        }
    }
    out
}

/// Integrate `y' = f(x, y)` from `x0` to `x1 > x0`. `observe` sees every
/// accepted point `(x, y, y')`, including the initial one.
pub fn integrate<T: Real, const N: usize>(
    f: impl Fn(T, &[T; N]) -> [T; N],
    x0: T,
    x1: T,
    y0: [T; N],
    opts: &OdeOptions<T>,
    mut observe: impl FnMut(T, &[T; N], &[T; N]),
) -> Result<[T; N]> {
    let span = x1 - x0;
    let max_step = if opts.max_step > T::zero() { opts.max_step } else { span };
    let mut x = x0;
    let mut y = y0;
    let mut k1 = f(x, &y);
    observe(x, &y, &k1);
    let mut h = (span * c(1e-3)).min(max_step);
    let min_step = span * c(1e-14);
    let order = c::<T>(0.2);
    for _ in 0..opts.max_steps {
        if x >= x1 {
            return Ok(y);
        }
        let last = x + h >= x1;
        if last {
            h = x1 - x;
        }
        let k2 = f(x + h * c(1.0 / 5.0), &axpy(&y, h, &[(A21, &k1)]));
        let k3 = f(x + h * c(3.0 / 10.0), &axpy(&y, h, &[(A31, &k1), (A32, &k2)]));
        let k4 = f(x + h * c(4.0 / 5.0), &axpy(&y, h, &[(A41, &k1), (A42, &k2), (A43, &k3)]));
        let k5 = f(x + h * c(8.0 / 9.0), &axpy(&y, h, &[(A51, &k1), (A52, &k2), (A53, &k3), (A54, &k4)]));
        let k6 = f(x + h, &axpy(&y, h, &[(A61, &k1), (A62, &k2), (A63, &k3), (A64, &k4), (A65, &k5)]));
        let y_new = axpy(&y, h, &[(B1, &k1), (B3, &k3), (B4, &k4), (B5, &k5), (B6, &k6)]);
        let k7 = f(x + h, &y_new);
        let mut err = T::zero();
        for i in 0..N {
            let e = h
                * (c::<T>(E1) * k1[i] + c::<T>(E3) * k3[i] + c::<T>(E4) * k4[i] + c::<T>(E5) * k5[i]
                    + c::<T>(E6) * k6[i]
                    + c::<T>(E7) * k7[i]);
            let sc = opts.atol + opts.rtol * y[i].abs().max(y_new[i].abs());
            err = err.max((e / sc).abs());
        }
        if !err.is_finite() {
            return Err(Error::numerical(x.to_f64_lossy(), "non-finite integrator state"));
        }
        if err <= T::one() {
            x = if last { x1 } else { x + h };
            y = y_new;
            k1 = k7;
            observe(x, &y, &k1);
        }
        let factor = if err == T::zero() { c(5.0) } else { (c::<T>(0.9) * err.powf(-order)).max(c(0.2)).min(c(5.0)) };
        h = (h * factor).min(max_step);
        if h < min_step && x < x1 {
            return Err(Error::numerical(x.to_f64_lossy(), "step size underflow"));
        }
    }
    Err(Error::numerical(x.to_f64_lossy(), "step budget exhausted"))
}
