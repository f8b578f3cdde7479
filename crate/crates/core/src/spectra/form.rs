//! Closed-form band-edge wavefunctions `sn^i cn^j dn^γ P(sn²)`.
//!
//! Every tabulated eigenfunction of the Lamé family, and every solution the
//! QES engine produces, has this shape, so one evaluator type covers them all.

use std::fmt;

use crate::elliptic::TaylorTriple;
use crate::scalar::Real;
use crate::taylor::Taylor;

#[derive(Debug, Clone, PartialEq)]
pub struct EllipticForm<T> {
    pub sn_pow: u32,
    pub cn_pow: u32,
    pub dn_pow: T,
    /// Coefficients of `P(s)` in increasing powers of `s = sn²`.
    pub poly: Vec<T>,
}

impl<T: Real> EllipticForm<T> {
    pub fn new(sn_pow: u32, cn_pow: u32, dn_pow: T, poly: Vec<T>) -> Self {
        EllipticForm { sn_pow, cn_pow, dn_pow, poly }
    }

    pub fn eval(&self, t: &TaylorTriple<T>) -> Taylor<T> {
        let mut out = Taylor::poly(&self.poly, &t.sn2());
        if self.sn_pow > 0 {
            out = out * t.sn.powi(self.sn_pow as usize);
        }
        if self.cn_pow > 0 {
            out = out * t.cn.powi(self.cn_pow as usize);
        }
        if self.dn_pow != T::zero() {
            let g = self.dn_pow;
            let dn = if g.fract() == T::zero() {
                let n = g.abs().to_usize().unwrap_or(0);
                let pw = t.dn.powi(n);
                if g < T::zero() {
                    pw.recip()
                } else {
                    pw
                }
            } else {
                t.dn.powf(g)
            };
            out = out * dn;
        }
        out
    }

    /// Degree of `P` in `sn²`, ignoring vanishing leading coefficients.
    pub fn degree(&self) -> usize {
        let scale = self.poly.iter().fold(T::zero(), |acc, c| acc.max(c.abs()));
        self.poly
            .iter()
            .rposition(|c| c.abs() > scale * T::lit(1e-13))
            .unwrap_or(0)
    }

    /// Structural label: which of sn, cn, dn multiply a polynomial of what degree.
    /// `dn` counts as a factor when it enters with power one.
    pub fn label(&self) -> FormLabel {
        FormLabel {
            sn: self.sn_pow % 2 == 1,
            cn: self.cn_pow % 2 == 1,
            dn: self.dn_pow == T::one(),
            degree: self.degree(),
        }
    }
}

/// Form classification `sn^i cn^j dn^k F_r(sn²)` with `i, j, k` in {0, 1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FormLabel {
    pub sn: bool,
    pub cn: bool,
    pub dn: bool,
    pub degree: usize,
}

impl fmt::Display for FormLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.sn {
            parts.push("sn".to_string());
        }
        if self.cn {
            parts.push("cn".to_string());
        }
        if self.dn {
            parts.push("dn".to_string());
        }
        parts.push(format!("F{}", self.degree));
        write!(f, "{}", parts.join("·"))
    }
}
