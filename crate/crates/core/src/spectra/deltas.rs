use crate::scalar::{c, Real};

/// Square-root abbreviations appearing in the closed-form energies.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Deltas<T> {
    /// `sqrt(1 - m + m²)`
    pub delta: T,
    /// `sqrt(1 - m + 4m²)`
    pub delta1: T,
    /// `sqrt(4 - m + m²)`
    pub delta2: T,
    /// `sqrt(4 - 7m + 4m²)`
    pub delta3: T,
    /// `sqrt(1 - m + m²(a-1)²)`
    pub delta4: T,
    /// `sqrt(4 - 7m + 2ma + m²(a-2)²)`
    pub delta5: T,
    /// `sqrt(4 - m - 2ma + m²(a-1)²)`
    pub delta6: T,
    /// `sqrt(9 - 9m + m²(a-2)²)`
    pub delta7: T,
    /// `sqrt(16 - 16m + m²)`
    pub delta8: T,
    /// `sqrt(4 - 4m + 25m²)`
    pub delta9: T,
    /// `1 + m + delta`
    pub big_b: T,
}

impl<T: Real> Deltas<T> {
    pub fn new(a: T, m: T) -> Self {
        let one = T::one();
        let m2 = m * m;
        let am1 = a - one;
        let am2 = a - c(2.0);
        let sq = |v: T| v.max(T::zero()).sqrt();
        let delta = sq(one - m + m2);
        Deltas {
            delta,
            delta1: sq(one - m + c::<T>(4.0) * m2),
            delta2: sq(c::<T>(4.0) - m + m2),
            delta3: sq(c::<T>(4.0) - c::<T>(7.0) * m + c::<T>(4.0) * m2),
            delta4: sq(one - m + m2 * am1 * am1),
            delta5: sq(c::<T>(4.0) - c::<T>(7.0) * m + c::<T>(2.0) * m * a + m2 * am2 * am2),
            delta6: sq(c::<T>(4.0) - m - c::<T>(2.0) * m * a + m2 * am1 * am1),
            delta7: sq(c::<T>(9.0) - c::<T>(9.0) * m + m2 * am2 * am2),
            delta8: sq(c::<T>(16.0) - c::<T>(16.0) * m + m2),
            delta9: sq(c::<T>(4.0) - c::<T>(4.0) * m + c::<T>(25.0) * m2),
            big_b: one + m + delta,
        }
    }
}
