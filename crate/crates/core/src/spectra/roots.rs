//! Polynomial roots by Aberth–Ehrlich iteration.

use num_complex::Complex;

use crate::scalar::{c, Real};

/// All complex roots of `Σ coeffs[k] x^k`. Leading zeros are trimmed.
pub fn poly_roots<T: Real>(coeffs: &[T]) -> Vec<Complex<T>> {
    let mut coeffs = coeffs.to_vec();
    while coeffs.len() > 1 && coeffs.last().map_or(false, |v| *v == T::zero()) {
        coeffs.pop();
    }
    let deg = coeffs.len().saturating_sub(1);
    if deg == 0 {
        return Vec::new();
    }
    let lead = coeffs[deg];
    let monic: Vec<Complex<T>> = coeffs.iter().map(|v| Complex::new(*v / lead, T::zero())).collect();
    // Cauchy bound for the starting circle.
    let radius = T::one() + monic[..deg].iter().fold(T::zero(), |acc, v| acc.max(v.norm()));
    let mut z: Vec<Complex<T>> = (0..deg)
        .map(|k| {
            let theta = c::<T>(2.0) * T::PI() * (T::from_usize_lossy(k) + c(0.25)) / T::from_usize_lossy(deg);
            Complex::from_polar(radius * c(0.5), theta)
        })
        .collect();
    let eval = |x: Complex<T>| {
        let mut p = Complex::new(T::zero(), T::zero());
        let mut dp = p;
        for coef in monic.iter().rev() {
            dp = dp * x + p;
            p = p * x + coef;
        }
        (p, dp)
    };
    for _ in 0..500 {
        let mut moved = T::zero();
        for i in 0..deg {
            let (p, dp) = eval(z[i]);
            if p.norm() == T::zero() {
                continue;
            }
            let ratio = p / dp;
            let mut sum = Complex::new(T::zero(), T::zero());
            for j in 0..deg {
                if j != i {
                    sum = sum + (z[i] - z[j]).inv();
                }
            }
            let step = ratio / (Complex::new(T::one(), T::zero()) - ratio * sum);
            if !(step.re.is_finite() && step.im.is_finite()) {
                continue;
            }
            z[i] = z[i] - step;
            moved = moved.max(step.norm() / (T::one() + z[i].norm()));
        }
        if moved < T::epsilon() * c(4.0) {
            break;
        }
    }
    z.sort_by(|x, y| x.re.partial_cmp(&y.re).unwrap_or(std::cmp::Ordering::Equal));
    z
}

/// Evaluate `Σ coeffs[k] x^k` at a real point.
pub fn poly_eval<T: Real>(coeffs: &[T], x: T) -> T {
    coeffs.iter().rev().fold(T::zero(), |acc, v| acc * x + *v)
}
