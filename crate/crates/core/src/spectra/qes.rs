//! Quasi-exactly-solvable block of the associated Lamé equation.
//!
//! With `ψ = dn^{-b} z(t)`, `sn = sin t`, Ince's equation for `z` admits
//! polynomial solutions in `u = cos t` when `n = a + b + 1` is a positive
//! integer. Two classes appear: `z = w(u)` with `deg w = n - 1`, and
//! `z = sin t · v(u)` with `deg v = n - 2`. Each is a tridiagonal eigenproblem
//! in the power-series coefficients `r_k` of `w` or `v`.

use num_complex::Complex;

use super::form::EllipticForm;
use super::roots::{poly_eval, poly_roots};
use crate::error::{Error, Result};
use crate::scalar::{c, Real};

/// Which polynomial class an eigenvector belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum QesClass {
    /// `z = w(cos t)`
    Cos,
    /// `z = sin t · v(cos t)`
    Sin,
}

#[derive(Debug, Clone, PartialEq)]
pub struct QesBlock<T> {
    pub a: T,
    pub b: T,
    pub m: T,
    pub n: usize,
    /// Block-diagonal recursion matrix, `Cos` rows first.
    pub matrix: Vec<Vec<T>>,
    /// Eigenvalues λ, ascending, with their classes.
    pub eigenvalues: Vec<(T, QesClass)>,
    cos_powers: Vec<usize>,
    sin_powers: Vec<usize>,
}

fn coefficients<T: Real>(class: QesClass, k: usize, b: T, cc: T, m: T) -> (T, T, T) {
    let k = T::from_usize_lossy(k);
    let one = T::one();
    let two = c::<T>(2.0);
    let three = c::<T>(3.0);
    let up = (one - m) * (k + two) * (k + one);
    let (d, e) = match class {
        QesClass::Cos => (
            (two * m - one) * k * (k - one) - (one + (two * b - two) * m) * k - cc * m,
            m * (-(k - two) * (k - three) + (two * b - two) * (k - two) + cc),
        ),
        QesClass::Sin => (
            (two * m - one) * k * (k - one) - (three + (two * b - c(4.0)) * m) * k - cc * m - one + m,
            m * (-(k - two) * (k - three) + (two * b - c(4.0)) * (k - two) + two * b - two + cc),
        ),
    };
    (d, e, up)
}

fn powers(top: Option<usize>) -> Vec<usize> {
    match top {
        Some(t) => (t % 2..=t).step_by(2).collect(),
        None => Vec::new(),
    }
}

/// Build the block for `a + b + 1 = n`.
pub fn qes_block<T: Real>(a: T, b: T, m: T) -> Result<QesBlock<T>> {
    let nf = a + b + T::one();
    let n = nf.round();
    if !((nf - n).abs() <= c(1e-9)) || n < T::one() {
        return Err(Error::domain(format!("a + b + 1 = {nf} is not a positive integer")));
    }
    if !(m >= T::zero() && m < T::one()) {
        return Err(Error::domain(format!("modulus m = {m} outside [0, 1)")));
    }
    let n = n.to_usize().unwrap_or(1);
    // Snap b so that the truncation is exact.
    let b = T::from_usize_lossy(n) - T::one() - a;
    let cos_powers = powers(Some(n - 1));
    let sin_powers = powers(n.checked_sub(2));
    let mut matrix = vec![vec![T::zero(); n]; n];
    let mut eigenvalues = Vec::with_capacity(n);
    let mut offset = 0;
    for (class, ks) in [(QesClass::Cos, &cos_powers), (QesClass::Sin, &sin_powers)] {
        let block = class_matrix(class, ks, a, b, m);
        for (i, row) in block.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                matrix[offset + i][offset + j] = *v;
            }
        }
        offset += ks.len();
        for lambda in tridiagonal_eigenvalues(&block)? {
            eigenvalues.push((lambda, class));
        }
    }
    eigenvalues.sort_by(|x, y| x.0.partial_cmp(&y.0).unwrap_or(std::cmp::Ordering::Equal));
    Ok(QesBlock { a, b, m, n, matrix, eigenvalues, cos_powers, sin_powers })
}

fn class_matrix<T: Real>(class: QesClass, ks: &[usize], a: T, b: T, m: T) -> Vec<Vec<T>> {
    let cc = (a + T::one() - b) * (a + b);
    let len = ks.len();
    let mut block = vec![vec![T::zero(); len]; len];
    for (i, &k) in ks.iter().enumerate() {
        let (d, e, up) = coefficients(class, k, b, cc, m);
        block[i][i] = -d;
        if i + 1 < len {
            block[i][i + 1] = -up;
        }
        if i > 0 {
            block[i][i - 1] = -e;
        }
    }
    block
}

/// Characteristic polynomial of a tridiagonal matrix, ascending coefficients.
fn char_poly<T: Real>(mat: &[Vec<T>]) -> Vec<T> {
    // p_i(λ) = (d_i - λ) p_{i-1} - u_{i-1} l_i p_{i-2}
    let mut prev: Vec<T> = vec![T::one()];
    let mut cur: Vec<T> = vec![T::one()];
    for i in 0..mat.len() {
        let d = mat[i][i];
        let mut next = vec![T::zero(); cur.len() + 1];
        for (k, v) in cur.iter().enumerate() {
            next[k] = next[k] + d * *v;
            next[k + 1] = next[k + 1] - *v;
        }
        if i > 0 {
            let prod = mat[i - 1][i] * mat[i][i - 1];
            for (k, v) in prev.iter().enumerate() {
                next[k] = next[k] - prod * *v;
            }
        }
        prev = cur;
        cur = next;
    }
    cur
}

fn tridiagonal_eigenvalues<T: Real>(mat: &[Vec<T>]) -> Result<Vec<T>> {
    if mat.is_empty() {
        return Ok(Vec::new());
    }
    let poly = char_poly(mat);
    let scale = mat.iter().flatten().fold(T::one(), |acc, v| acc.max(v.abs()));
    let mut out = Vec::with_capacity(mat.len());
    for z in poly_roots(&poly) {
        if z.im.abs() > c::<T>(1e-7) * scale {
            return Err(Error::numerical(
                z.re.to_f64_lossy(),
                format!("complex QES eigenvalue {} + {}i", z.re, z.im),
            ));
        }
        out.push(polish(&poly, z.re));
    }
    out.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    Ok(out)
}

fn polish<T: Real>(poly: &[T], mut x: T) -> T {
    let deriv: Vec<T> = poly.iter().enumerate().skip(1).map(|(k, v)| *v * T::from_usize_lossy(k)).collect();
    for _ in 0..4 {
        let d = poly_eval(&deriv, x);
        if d == T::zero() {
            break;
        }
        let step = poly_eval(poly, x) / d;
        if !step.is_finite() || step.abs() > c::<T>(1e-6) * (T::one() + x.abs()) {
            break;
        }
        x = x - step;
    }
    x
}

/// Gaussian elimination with partial pivoting.
fn solve_dense<T: Real>(mut a: Vec<Vec<T>>, mut b: Vec<T>) -> Vec<T> {
    let n = b.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| a[i][col].abs().partial_cmp(&a[j][col].abs()).unwrap_or(std::cmp::Ordering::Equal))
            .unwrap_or(col);
        a.swap(col, piv);
        b.swap(col, piv);
        let d = a[col][col];
        let d = if d == T::zero() { T::epsilon() } else { d };
        for row in col + 1..n {
            let f = a[row][col] / d;
            for k in col..n {
                a[row][k] = a[row][k] - f * a[col][k];
            }
            b[row] = b[row] - f * b[col];
        }
    }
    let mut x = vec![T::zero(); n];
    for row in (0..n).rev() {
        let mut acc = b[row];
        for k in row + 1..n {
            acc = acc - a[row][k] * x[k];
        }
        let d = if a[row][row] == T::zero() { T::epsilon() } else { a[row][row] };
        x[row] = acc / d;
    }
    x
}

impl<T: Real> QesBlock<T> {
    /// Energies `E = λ + m b²`, ascending.
    pub fn energies(&self) -> Vec<T> {
        let shift = self.m * self.b * self.b;
        self.eigenvalues.iter().map(|(l, _)| *l + shift).collect()
    }

    /// Eigenvalues of one class, ascending.
    pub fn class_eigenvalues(&self, class: QesClass) -> Vec<T> {
        self.eigenvalues.iter().filter(|e| e.1 == class).map(|e| e.0).collect()
    }

    fn ks(&self, class: QesClass) -> &[usize] {
        match class {
            QesClass::Cos => &self.cos_powers,
            QesClass::Sin => &self.sin_powers,
        }
    }

    /// Coefficients `r_k` (on the class powers) of the eigenvector at `lambda`.
    pub fn eigenvector(&self, class: QesClass, lambda: T) -> Vec<T> {
        let ks = self.ks(class);
        let mat = class_matrix(class, ks, self.a, self.b, self.m);
        let len = ks.len();
        if len == 1 {
            return vec![T::one()];
        }
        // Inverse iteration with a slightly perturbed shift; robust when the
        // recursion decouples and the eigenvector has vanishing end entries.
        let scale = mat.iter().flatten().fold(T::one(), |acc, v| acc.max(v.abs()));
        let shift = lambda + scale * c::<T>(1e-10);
        let mut x: Vec<T> = (0..len).map(|i| T::one() + c::<T>(0.1) * T::from_usize_lossy(i)).collect();
        for _ in 0..3 {
            let mut a = mat.clone();
            for (i, row) in a.iter_mut().enumerate() {
                row[i] = row[i] - shift;
            }
            x = solve_dense(a, x);
            let norm = x.iter().fold(T::zero(), |acc, v| if v.abs() > acc.abs() { *v } else { acc });
            for v in x.iter_mut() {
                *v = *v / norm;
            }
        }
        x
    }

    /// Closed form `dn^{-b} sn^i cn^j P(sn²)` of the eigenfunction at `lambda`.
    pub fn form(&self, class: QesClass, lambda: T) -> EllipticForm<T> {
        let ks = self.ks(class);
        let r = self.eigenvector(class, lambda);
        let odd = ks.first().is_some_and(|k| k % 2 == 1);
        // Σ r_k u^k with u² = 1 - s; for odd parity one factor u = cn is kept.
        let mut poly = vec![T::zero(); ks.len()];
        for (&k, rk) in ks.iter().zip(r) {
            let j = k / 2;
            // (1 - s)^j
            let mut binom = T::one();
            for i in 0..=j {
                let sign = if i % 2 == 0 { T::one() } else { -T::one() };
                poly[i] = poly[i] + sign * binom * rk;
                binom = binom * T::from_usize_lossy(j - i) / T::from_usize_lossy(i + 1);
            }
        }
        let sn_pow = u32::from(class == QesClass::Sin);
        EllipticForm::new(sn_pow, u32::from(odd), -self.b, poly)
    }

    /// All `(E, class, form)` triples, ascending in energy.
    pub fn solutions(&self) -> Vec<(T, QesClass, EllipticForm<T>)> {
        let shift = self.m * self.b * self.b;
        self.eigenvalues.iter().map(|&(l, cl)| (l + shift, cl, self.form(cl, l))).collect()
    }
}

/// Ascending roots λ of the cubic
/// `λ³ + [28m − 20 − 12am]λ² + [64 − 304m + 160ma + 32m²(a−2)(a−3)]λ − 64m(2a−3)(2−2m+ma)`.
/// Energies follow from `E = λ + m(a−4)²`.
pub fn cubic_lambda<T: Real>(a: T, m: T) -> Result<[T; 3]> {
    let two = c::<T>(2.0);
    let p2 = c::<T>(28.0) * m - c(20.0) - c::<T>(12.0) * a * m;
    let p1 = c::<T>(64.0) - c::<T>(304.0) * m + c::<T>(160.0) * m * a
        + c::<T>(32.0) * m * m * (a - two) * (a - c(3.0));
    let p0 = -c::<T>(64.0) * m * (two * a - c(3.0)) * (two - two * m + m * a);
    let coeffs = [p0, p1, p2, T::one()];
    let scale = coeffs.iter().fold(T::one(), |acc, v| acc.max(v.abs()));
    let check = |roots: &[T; 3]| roots.iter().all(|r| poly_eval(&coeffs, *r).abs() <= c::<T>(1e-9) * scale * (T::one() + r.abs()).powi(3));

    // Depressed cubic t³ + pt + q with λ = t − p2/3.
    let shift = p2 / c(3.0);
    let p = p1 - p2 * p2 / c(3.0);
    let q = two * p2 * p2 * p2 / c(27.0) - p2 * p1 / c(3.0) + p0;
    let disc = -(c::<T>(4.0) * p * p * p + c::<T>(27.0) * q * q);
    if disc < -c::<T>(1e-9) * scale.powi(3) {
        return Err(Error::numerical(a.to_f64_lossy(), "cubic has complex roots"));
    }
    let mut roots = if p < T::zero() {
        let r = two * (-p / c(3.0)).sqrt();
        let arg = (c::<T>(3.0) * q / (p * r)).max(-T::one()).min(T::one());
        let phi = arg.acos() / c(3.0);
        let mut out = [T::zero(); 3];
        for (k, slot) in out.iter_mut().enumerate() {
            *slot = r * (phi - two * T::PI() * T::from_usize_lossy(k) / c(3.0)).cos() - shift;
        }
        out
    } else {
        // p ≥ 0 with real roots forces a triple root.
        [-shift; 3]
    };
    roots.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    for r in roots.iter_mut() {
        *r = polish(&coeffs, *r);
    }
    if check(&roots) {
        return Ok(roots);
    }
    let z: Vec<Complex<T>> = poly_roots(&coeffs);
    let mut fallback = [T::zero(); 3];
    for (slot, root) in fallback.iter_mut().zip(z) {
        *slot = polish(&coeffs, root.re);
    }
    fallback.sort_by(|x, y| x.partial_cmp(y).unwrap_or(std::cmp::Ordering::Equal));
    if check(&fallback) {
        Ok(fallback)
    } else {
        Err(Error::numerical(a.to_f64_lossy(), "cubic root residual above 1e-9"))
    }
}
