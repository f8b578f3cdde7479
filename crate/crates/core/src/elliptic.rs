//! Jacobi elliptic functions and the complete elliptic integral K(m).
//!
//! Both use the arithmetic-geometric mean. The Jacobi triple is computed by the
//! descending Landen scheme: build the AGM sequence, scale the argument by
//! `2^N a_N`, and walk the amplitude back down with
//! `phi_{n-1} = (phi_n + asin(c_n / a_n * sin phi_n)) / 2`.
//!
//! Conventions: `m` is the parameter (k² in the modulus notation), `sn`, `cn`
//! have period 4K and `dn` has period 2K. `m = 1` is rejected; the hyperbolic
//! limits are never taken inside the kernel.

use crate::error::{Error, Result};
use crate::scalar::{c, Real};
use crate::taylor::{Taylor, JET_LEN};

const MAX_AGM_STEPS: usize = 48;

/// Elliptic parameter `m` in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd)]
pub struct Modulus<T>(T);

impl<T: Real> Modulus<T> {
    pub fn new(m: T) -> Result<Self> {
        if !(m >= T::zero() && m <= T::one()) {
            return Err(Error::domain(format!("modulus parameter m = {m} outside [0, 1]")));
        }
        Ok(Modulus(m))
    }

    pub fn value(self) -> T {
        self.0
    }

    /// Complementary parameter `1 - m`.
    pub fn complement(self) -> T {
        T::one() - self.0
    }

    fn require_periodic(self) -> Result<()> {
        if self.0 >= T::one() {
            return Err(Error::domain("operation requires m < 1"));
        }
        Ok(())
    }
}

/// `(sn, cn, dn)` at a point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct JacobiTriple<T> {
    pub sn: T,
    pub cn: T,
    pub dn: T,
}

impl<T: Real> JacobiTriple<T> {
    pub fn new(sn: T, cn: T, dn: T) -> Self {
        JacobiTriple { sn, cn, dn }
    }

    /// `|sn²+cn²-1|` and `|dn²+m sn²-1|`.
    pub fn pythagorean_defects(&self, m: T) -> (T, T) {
        let a = (self.sn * self.sn + self.cn * self.cn - T::one()).abs();
        let b = (self.dn * self.dn + m * self.sn * self.sn - T::one()).abs();
        (a, b)
    }
}

/// Shift amounts with closed-form addition identities.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shift {
    HalfK,
    K,
    TwoK,
}

fn agm<T: Real>(mut a: T, mut b: T) -> T {
    for _ in 0..MAX_AGM_STEPS {
        let an = (a + b) * c(0.5);
        let bn = (a * b).sqrt();
        if (an - bn).abs() <= T::epsilon() * an {
            return an;
        }
        a = an;
        b = bn;
    }
    a
}

/// Quarter period K(m).
pub fn ellip_k<T: Real>(m: Modulus<T>) -> Result<T> {
    if m.value() >= T::one() {
        return Err(Error::Divergence);
    }
    Ok(T::FRAC_PI_2() / agm(T::one(), m.complement().sqrt()))
}

/// Jacobi triple at `x` for parameter `m < 1`.
pub fn jacobi<T: Real>(x: T, m: Modulus<T>) -> Result<JacobiTriple<T>> {
    Ok(Elliptic::new(m)?.triple(x))
}

/// Triple at `x + shift` obtained only from the addition identities applied to
/// the triple at `x`.
pub fn jacobi_shift<T: Real>(x: T, m: Modulus<T>, shift: Shift) -> Result<JacobiTriple<T>> {
    let e = Elliptic::new(m)?;
    Ok(e.shift(&e.triple(x), shift))
}

/// Elliptic kernel bound to one parameter value, with K(m) cached.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Elliptic<T> {
    m: T,
    k: T,
    kprime: T,
}

impl<T: Real> Elliptic<T> {
    pub fn new(m: Modulus<T>) -> Result<Self> {
        m.require_periodic()?;
        let k = ellip_k(m)?;
        Ok(Elliptic { m: m.value(), k, kprime: m.complement().sqrt() })
    }

    /// Convenience constructor from a raw parameter.
    pub fn with_m(m: T) -> Result<Self> {
        Self::new(Modulus::new(m)?)
    }

    pub fn m(&self) -> T {
        self.m
    }

    pub fn modulus(&self) -> Modulus<T> {
        Modulus(self.m)
    }

    /// Quarter period K(m).
    pub fn quarter_period(&self) -> T {
        self.k
    }

    /// `sqrt(1 - m)`.
    pub fn kprime(&self) -> T {
        self.kprime
    }

    pub fn triple(&self, x: T) -> JacobiTriple<T> {
        let four_k = self.k * c(4.0);
        // Symmetric reduction into [-2K, 2K] keeps small |x| untouched.
        let r = x - four_k * (x / four_k).round();
        if self.m == T::zero() {
            return JacobiTriple::new(r.sin(), r.cos(), T::one());
        }
        let mut a = T::one();
        let mut b = self.kprime;
        let mut cs = [T::zero(); MAX_AGM_STEPS];
        let mut aa = [T::zero(); MAX_AGM_STEPS];
        let mut n = 0;
        let mut cn_ = self.m.sqrt();
        while cn_.abs() > T::epsilon() && n + 1 < MAX_AGM_STEPS {
            let an = (a + b) * c(0.5);
            cn_ = (a - b) * c(0.5);
            b = (a * b).sqrt();
            a = an;
            n += 1;
            cs[n] = cn_;
            aa[n] = a;
        }
        let mut phi = r * a * T::from_usize_lossy(1usize << n);
        for j in (1..=n).rev() {
            let s = (cs[j] / aa[j] * phi.sin()).max(-T::one()).min(T::one());
            phi = (phi + s.asin()) * c(0.5);
        }
        let sn = phi.sin();
        let cn = phi.cos();
        let dn = (T::one() - self.m * sn * sn).max(T::zero()).sqrt();
        JacobiTriple::new(sn, cn, dn)
    }

    /// Closed-form addition identities for `x + shift`.
    pub fn shift(&self, t: &JacobiTriple<T>, shift: Shift) -> JacobiTriple<T> {
        let kp = self.kprime;
        match shift {
            Shift::TwoK => JacobiTriple::new(-t.sn, -t.cn, t.dn),
            Shift::K => JacobiTriple::new(t.cn / t.dn, -kp * t.sn / t.dn, kp / t.dn),
            Shift::HalfK => {
                let den = t.dn * t.dn + kp;
                let one_kp = T::one() + kp;
                let root_kp = kp.sqrt();
                let sn = one_kp.sqrt() * (kp * t.sn + t.cn * t.dn) / den;
                let cn = one_kp.sqrt() * root_kp * (t.cn - t.sn * t.dn) / den;
                let dn = root_kp * (one_kp * t.dn - self.m * t.sn * t.cn) / den;
                JacobiTriple::new(sn, cn, dn)
            }
        }
    }

    /// Triple expanded as Taylor series about `x`, generated from the system
    /// sn' = cn dn, cn' = -sn dn, dn' = -m sn cn.
    pub fn taylor(&self, x: T) -> TaylorTriple<T> {
        self.taylor_from(self.triple(x))
    }

    pub fn taylor_from(&self, t: JacobiTriple<T>) -> TaylorTriple<T> {
        let mut s = [T::zero(); JET_LEN];
        let mut cc = [T::zero(); JET_LEN];
        let mut d = [T::zero(); JET_LEN];
        s[0] = t.sn;
        cc[0] = t.cn;
        d[0] = t.dn;
        for k in 0..JET_LEN - 1 {
            let (mut cd, mut sd, mut sc) = (T::zero(), T::zero(), T::zero());
            for j in 0..=k {
                cd = cd + cc[j] * d[k - j];
                sd = sd + s[j] * d[k - j];
                sc = sc + s[j] * cc[k - j];
            }
            let kk = T::from_usize_lossy(k + 1);
            s[k + 1] = cd / kk;
            cc[k + 1] = -sd / kk;
            d[k + 1] = -self.m * sc / kk;
        }
        TaylorTriple {
            sn: Taylor::from_coefficients(s, JET_LEN),
            cn: Taylor::from_coefficients(cc, JET_LEN),
            dn: Taylor::from_coefficients(d, JET_LEN),
            m: self.m,
        }
    }
}

/// Jacobi triple carried as Taylor series, the input to closed-form evaluators.
#[derive(Debug, Clone, Copy)]
pub struct TaylorTriple<T> {
    pub sn: Taylor<T>,
    pub cn: Taylor<T>,
    pub dn: Taylor<T>,
    pub m: T,
}

impl<T: Real> TaylorTriple<T> {
    /// sn² as a series.
    pub fn sn2(&self) -> Taylor<T> {
        self.sn.square()
    }
}
