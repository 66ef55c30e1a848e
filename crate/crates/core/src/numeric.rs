//! Shared numeric helpers: overflow-safe matrix products, log-determinants,
//! small-matrix exponentials and eigenstructure probes.
//!
//! Powers of hyperbolic-like matrices overflow `f64` long before the word
//! lengths of interest are reached, so every product here is renormalized by
//! its largest absolute entry while the discarded scale is accumulated as a
//! natural log. All downstream quantities (Cartan projections, singular value
//! ratios, wall margins) are either scale-invariant or re-absorb the scale.

use nalgebra::{Complex, ComplexField, DMatrix, DVector};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// A square matrix together with the natural log of a discarded positive
/// scalar factor: the represented matrix is `exp(log_scale) * matrix`.
#[derive(Debug, Clone)]
pub struct Scaled<T: Scalar> {
    pub matrix: DMatrix<T>,
    pub log_scale: T,
}

impl<T: Scalar> Scaled<T> {
    pub fn identity(n: usize) -> Self {
        Scaled {
            matrix: DMatrix::identity(n, n),
            log_scale: T::zero(),
        }
    }

    pub fn new(matrix: DMatrix<T>) -> Result<Self> {
        Scaled {
            matrix,
            log_scale: T::zero(),
        }
        .renormalized()
    }

    /// Divide out the largest absolute entry, folding it into `log_scale`.
    pub fn renormalized(mut self) -> Result<Self> {
        let s = max_abs(&self.matrix);
        if s == T::zero() || !s.is_finite() {
            return Err(Error::Overflow);
        }
        self.matrix /= s;
        self.log_scale += s.ln();
        if !self.log_scale.is_finite() {
            return Err(Error::Overflow);
        }
        Ok(self)
    }

    /// Renormalized product `self * rhs`.
    pub fn mul(&self, rhs: &DMatrix<T>) -> Result<Self> {
        Scaled {
            matrix: &self.matrix * rhs,
            log_scale: self.log_scale,
        }
        .renormalized()
    }

    /// Renormalized product of two scaled matrices.
    pub fn mul_scaled(&self, rhs: &Scaled<T>) -> Result<Self> {
        Scaled {
            matrix: &self.matrix * &rhs.matrix,
            log_scale: self.log_scale + rhs.log_scale,
        }
        .renormalized()
    }
}

/// Largest absolute entry of a matrix.
pub fn max_abs<T: Scalar>(m: &DMatrix<T>) -> T {
    let mut s = T::zero();
    for v in m.iter() {
        let a = v.abs();
        if a > s {
            s = a;
        }
    }
    s
}

/// `g^k` for `k >= 1` with periodic renormalization (binary exponentiation).
pub fn power_renormalized<T: Scalar>(g: &DMatrix<T>, k: u64) -> Result<Scaled<T>> {
    if k == 0 {
        return Ok(Scaled::identity(g.nrows()));
    }
    let mut base = Scaled::new(g.clone())?;
    let mut acc: Option<Scaled<T>> = None;
    let mut e = k;
    loop {
        if e & 1 == 1 {
            acc = Some(match acc {
                None => base.clone(),
                Some(a) => a.mul_scaled(&base)?,
            });
        }
        e >>= 1;
        if e == 0 {
            break;
        }
        base = base.mul_scaled(&base.clone())?;
    }
    Ok(acc.expect("k >= 1"))
}

/// Natural log of `|det m|` computed from an LU factorization without
/// forming the (possibly under/overflowing) determinant itself.
pub fn log_abs_det<T: Scalar>(m: &DMatrix<T>) -> Result<T> {
    let lu = m.clone().lu();
    let u = lu.u();
    let mut acc = T::zero();
    for i in 0..u.nrows().min(u.ncols()) {
        let d = u[(i, i)].abs();
        if d == T::zero() {
            return Err(Error::SingularMatrix);
        }
        acc += d.ln();
    }
    Ok(acc)
}

/// Scale a square matrix so its determinant has absolute value one.
pub fn det_normalize<T: Scalar>(m: &DMatrix<T>) -> Result<DMatrix<T>> {
    let n = m.nrows();
    let ld = log_abs_det(m)?;
    let s = (-ld / T::of(n as f64)).exp();
    if !s.is_finite() {
        return Err(Error::Overflow);
    }
    Ok(m * s)
}

/// Matrix exponential by scaling-and-squaring on a plain Taylor series.
///
/// Adequate for the small perturbation matrices this crate feeds it; the
/// series is run to machine precision after halving the argument until its
/// max-entry is below 1/2.
pub fn expm<T: Scalar>(a: &DMatrix<T>) -> DMatrix<T> {
    let n = a.nrows();
    let mut squarings = 0u32;
    let mut b = a.clone();
    while max_abs(&b) > T::of(0.5) && squarings < 64 {
        b /= T::of(2.0);
        squarings += 1;
    }
    let mut result = DMatrix::identity(n, n);
    let mut term = DMatrix::identity(n, n);
    for k in 1..=30u32 {
        term = &term * &b / T::of(k as f64);
        result += &term;
        if max_abs(&term) < T::of(1e-300) {
            break;
        }
    }
    for _ in 0..squarings {
        result = &result * &result;
    }
    result
}

/// Eigenvalues of a real square matrix.
///
/// Triangular matrices short-circuit to their diagonal (exact); everything
/// else goes through the real Schur form.
pub fn eigenvalues<T: Scalar>(m: &DMatrix<T>) -> DVector<Complex<T>> {
    let n = m.nrows();
    let lower_zero = (0..n).all(|j| (j + 1..n).all(|i| m[(i, j)] == T::zero()));
    let upper_zero = (0..n).all(|i| (i + 1..n).all(|j| m[(i, j)] == T::zero()));
    if lower_zero || upper_zero {
        return DVector::from_fn(n, |i, _| Complex::new(m[(i, i)], T::zero()));
    }
    m.clone().complex_eigenvalues()
}

/// Sorted (descending) singular values of a matrix, pre-scaled by its largest
/// entry so badly scaled inputs do not overflow; the scale is restored on the
/// way out as a log offset.
///
/// Returns `(log_sigma_sorted_desc)`: natural logs of the singular values.
pub fn log_singular_values<T: Scalar>(m: &DMatrix<T>) -> Result<DVector<T>> {
    let s = max_abs(m);
    if s == T::zero() || !s.is_finite() {
        return Err(Error::SingularMatrix);
    }
    let scaled = m / s;
    let svals = scaled.svd(false, false).singular_values;
    let mut logs: Vec<T> = Vec::with_capacity(svals.len());
    for v in svals.iter() {
        if *v <= T::zero() {
            return Err(Error::SingularMatrix);
        }
        logs.push(v.ln() + s.ln());
    }
    logs.sort_by(|a, b| b.partial_cmp(a).expect("finite logs"));
    Ok(DVector::from_vec(logs))
}

/// Numerical rank: number of singular values above `tol * sigma_max`.
pub fn rank_with_tol<T: Scalar>(m: &DMatrix<T>, tol: T) -> usize {
    let svals = m.clone().svd(false, false).singular_values;
    let smax = svals.iter().cloned().fold(T::zero(), |a, b| a.max(b));
    if smax == T::zero() {
        return 0;
    }
    svals.iter().filter(|&&s| s > tol * smax).count()
}

/// Whether a matrix is diagonalizable over the complex numbers, decided by
/// comparing geometric and algebraic multiplicities of clustered eigenvalues.
pub fn is_semisimple<T: Scalar>(m: &DMatrix<T>, rel_tol: T) -> bool {
    let n = m.nrows();
    let eigs = eigenvalues(m);
    let scale = eigs
        .iter()
        .map(|z| z.modulus())
        .fold(T::zero(), |a, b| a.max(b))
        .max(T::one());
    // Cluster eigenvalues within rel_tol * scale.
    let mut used = vec![false; n];
    for i in 0..n {
        if used[i] {
            continue;
        }
        let mut mult = 0usize;
        for j in 0..n {
            if (eigs[j] - eigs[i]).modulus() <= rel_tol * scale {
                mult += 1;
                used[j] = true;
            }
        }
        if mult > 1 {
            // Geometric multiplicity = n - rank(m - lambda I); complex lambda
            // with multiplicity implies a conjugate pair handled via the
            // real part only when imaginary part is negligible.
            if eigs[i].im.abs() <= rel_tol * scale {
                let shifted = m - DMatrix::identity(n, n) * eigs[i].re;
                let geo = n - rank_with_tol(&shifted, rel_tol);
                if geo < mult {
                    return false;
                }
            } else {
                // Repeated genuinely complex eigenvalue: compare rank of the
                // real quadratic factor q(m) = (m - z)(m - z-bar).
                let re2 = eigs[i].re + eigs[i].re;
                let nsq = eigs[i].modulus_squared();
                let q = m * m - m * re2 + DMatrix::identity(n, n) * nsq;
                let geo = n - rank_with_tol(&q, rel_tol);
                if geo < mult {
                    return false;
                }
            }
        }
    }
    true
}
