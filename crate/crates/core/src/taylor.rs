//! Truncated Taylor series ("jets") for exact derivatives of closed forms.
//!
//! A `Taylor` stores the normalized coefficients `f^(k)(x0) / k!` of a function
//! about a point. Arithmetic follows the usual Taylor-mode rules, so any closed
//! form built from the Jacobi triple carries its first few derivatives along
//! without finite differencing. Differentiation drops the highest coefficient,
//! which is tracked through `order`.

use std::ops::{Add, Div, Mul, Neg, Sub};

use crate::scalar::Real;

/// Number of stored coefficients (derivatives 0 through 5).
pub const JET_LEN: usize = 6;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Taylor<T> {
    coef: [T; JET_LEN],
    len: usize,
}

impl<T: Real> Taylor<T> {
    pub fn constant(v: T) -> Self {
        let mut coef = [T::zero(); JET_LEN];
        coef[0] = v;
        Taylor { coef, len: JET_LEN }
    }

    /// The independent variable `x` expanded about `x0`.
    pub fn variable(x0: T) -> Self {
        let mut t = Self::constant(x0);
        t.coef[1] = T::one();
        t
    }

    pub fn from_coefficients(coef: [T; JET_LEN], len: usize) -> Self {
        Taylor { coef, len: len.min(JET_LEN) }
    }

    /// Number of valid coefficients.
    pub fn order(&self) -> usize {
        self.len
    }

    pub fn coefficient(&self, k: usize) -> T {
        if k < self.len {
            self.coef[k]
        } else {
            T::nan()
        }
    }

    pub fn value(&self) -> T {
        self.coef[0]
    }

    /// k-th derivative, NaN if it was truncated away.
    pub fn deriv(&self, k: usize) -> T {
        let mut fact = T::one();
        for i in 2..=k {
            fact = fact * T::from_usize_lossy(i);
        }
        self.coefficient(k) * fact
    }

    /// d/dx of the series.
    pub fn derivative(&self) -> Self {
        let mut coef = [T::zero(); JET_LEN];
        for k in 0..self.len.saturating_sub(1) {
            coef[k] = self.coef[k + 1] * T::from_usize_lossy(k + 1);
        }
        Taylor { coef, len: self.len.saturating_sub(1) }
    }

    pub fn recip(&self) -> Self {
        Self::constant(T::one()) / *self
    }

    pub fn scale(&self, s: T) -> Self {
        let mut out = *self;
        for c in out.coef.iter_mut() {
            *c = *c * s;
        }
        out
    }

    pub fn square(&self) -> Self {
        *self * *self
    }

    /// Real power. Requires a nonzero leading coefficient unless `gamma` is a
    /// nonnegative integer, in which case repeated products are used.
    pub fn powf(&self, gamma: T) -> Self {
        if gamma == T::zero() {
            return Self::constant(T::one()).truncated(self.len);
        }
        if gamma.fract() == T::zero() && gamma > T::zero() && gamma < T::lit(16.0) {
            let n = gamma.to_usize().unwrap_or(0);
            return self.powi(n);
        }
        let f0 = self.coef[0];
        let mut g = [T::zero(); JET_LEN];
        g[0] = f0.powf(gamma);
        for k in 1..self.len {
            let mut acc = T::zero();
            for j in 1..=k {
                let w = gamma * T::from_usize_lossy(j) - T::from_usize_lossy(k - j);
                acc = acc + w * self.coef[j] * g[k - j];
            }
            g[k] = acc / (T::from_usize_lossy(k) * f0);
        }
        Taylor { coef: g, len: self.len }
    }

    pub fn powi(&self, n: usize) -> Self {
        let mut out = Self::constant(T::one()).truncated(self.len);
        for _ in 0..n {
            out = out * *self;
        }
        out
    }

    pub fn sqrt(&self) -> Self {
        self.powf(T::lit(0.5))
    }

    /// exp of the series.
    pub fn exp(&self) -> Self {
        let mut g = [T::zero(); JET_LEN];
        g[0] = self.coef[0].exp();
        for k in 1..self.len {
            let mut acc = T::zero();
            for j in 1..=k {
                acc = acc + T::from_usize_lossy(j) * self.coef[j] * g[k - j];
            }
            g[k] = acc / T::from_usize_lossy(k);
        }
        Taylor { coef: g, len: self.len }
    }

    /// Evaluate a polynomial `sum p[i] s^i` at the series `s`.
    pub fn poly(coeffs: &[T], s: &Self) -> Self {
        let mut acc = Self::constant(T::zero()).truncated(s.len);
        for &p in coeffs.iter().rev() {
            acc = acc * *s + p;
        }
        acc
    }

    fn truncated(mut self, len: usize) -> Self {
        self.len = self.len.min(len);
        self
    }
}

impl<T: Real> Add for Taylor<T> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        let mut coef = self.coef;
        for (c, r) in coef.iter_mut().zip(rhs.coef) {
            *c = *c + r;
        }
        Taylor { coef, len: self.len.min(rhs.len) }
    }
}

impl<T: Real> Sub for Taylor<T> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<T: Real> Neg for Taylor<T> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(-T::one())
    }
}

impl<T: Real> Mul for Taylor<T> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        let len = self.len.min(rhs.len);
        let mut coef = [T::zero(); JET_LEN];
        for k in 0..len {
            let mut acc = T::zero();
            for j in 0..=k {
                acc = acc + self.coef[j] * rhs.coef[k - j];
            }
            coef[k] = acc;
        }
        Taylor { coef, len }
    }
}

impl<T: Real> Div for Taylor<T> {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        let len = self.len.min(rhs.len);
        let mut coef = [T::zero(); JET_LEN];
        for k in 0..len {
            let mut acc = self.coef[k];
            for j in 1..=k {
                acc = acc - rhs.coef[j] * coef[k - j];
            }
            coef[k] = acc / rhs.coef[0];
        }
        Taylor { coef, len }
    }
}

impl<T: Real> Add<T> for Taylor<T> {
    type Output = Self;
    fn add(mut self, rhs: T) -> Self {
        self.coef[0] = self.coef[0] + rhs;
        self
    }
}

impl<T: Real> Sub<T> for Taylor<T> {
    type Output = Self;
    fn sub(mut self, rhs: T) -> Self {
        self.coef[0] = self.coef[0] - rhs;
        self
    }
}

impl<T: Real> Mul<T> for Taylor<T> {
    type Output = Self;
    fn mul(self, rhs: T) -> Self {
        self.scale(rhs)
    }
}

impl<T: Real> Div<T> for Taylor<T> {
    type Output = Self;
    fn div(self, rhs: T) -> Self {
        self.scale(T::one() / rhs)
    }
}
