//! Cartan and Jordan projections, chamber-valued distances, wall margins,
//! symmetric-space points, maximal flats and distances to them.
//!
//! The symmetric space of `PGL(n, R)` is modeled as positive-definite
//! symmetric matrices of determinant one; the model Weyl chamber is the cone
//! of nonincreasing trace-zero vectors in log coordinates. The metric
//! normalization fixes `d(P, Q) = || (1/2) log-spectrum(P^-1 Q) ||_2`, which
//! makes `d(Id, g g^T)` equal to the Euclidean norm of the Cartan projection
//! of `g`.

use nalgebra::{ComplexField, DMatrix, DVector, SymmetricEigen};

use crate::error::{Error, Result};
use crate::numeric;
use crate::scalar::Scalar;

/// Relative tolerance below which eigenvalue moduli are considered equal and
/// eigenvector frames unreliable.
pub const MODULUS_GAP_TOL: f64 = 1e-9;

/// Monotonicity slack accepted by [`WeylVector::new`] on user input.
pub const ORDER_TOL: f64 = 1e-12;

/// Trace-zero slack accepted by [`WeylVector::new`] on user input.
pub const SUM_TOL: f64 = 1e-10;

/// Gradient tolerance of the flat-distance minimizer.
pub const FLAT_SOLVER_TOL: f64 = 1e-8;

/// Log-determinant slack accepted by [`SpacePoint::from_matrix`]; a relaxed
/// form of the determinant-one invariant that stays meaningful for points
/// with widely spread eigenvalues.
pub const LOGDET_TOL: f64 = 1e-9;

/// A point of the closed model Weyl chamber: a nonincreasing real vector
/// summing to zero, in natural-log coordinates of singular-value or
/// eigenvalue-modulus ratios.
#[derive(Debug, Clone, PartialEq)]
pub struct WeylVector<T: Scalar> {
    coords: DVector<T>,
}

impl<T: Scalar> WeylVector<T> {
    /// Validating constructor: `coords` must be nonincreasing within
    /// [`ORDER_TOL`] and sum to zero within [`SUM_TOL`].
    pub fn new(coords: DVector<T>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidInput(
                "chamber vectors need at least two coordinates".into(),
            ));
        }
        let scale = coords
            .iter()
            .map(|c| c.abs())
            .fold(T::one(), |a, b| a.max(b));
        for i in 0..coords.len() - 1 {
            if coords[i + 1] - coords[i] > T::of(ORDER_TOL) * scale {
                return Err(Error::InvalidInput(format!(
                    "coordinates not nonincreasing at index {i}"
                )));
            }
        }
        let sum: T = coords.iter().fold(T::zero(), |a, &b| a + b);
        if sum.abs() > T::of(SUM_TOL) * scale {
            return Err(Error::InvalidInput(format!(
                "coordinates sum to {:e}, not zero",
                sum.to_f64()
            )));
        }
        Ok(WeylVector { coords })
    }

    /// Build from unsorted log values: sorts descending and shifts to sum
    /// zero (the projectivized normalization).
    pub fn from_logs(logs: &[T]) -> Self {
        let mut v: Vec<T> = logs.to_vec();
        v.sort_by(|a, b| b.partial_cmp(a).expect("finite logs"));
        let n = T::of(v.len() as f64);
        let mean = v.iter().fold(T::zero(), |a, &b| a + b) / n;
        for x in &mut v {
            *x -= mean;
        }
        WeylVector {
            coords: DVector::from_vec(v),
        }
    }

    pub fn zero(n: usize) -> Self {
        WeylVector {
            coords: DVector::zeros(n),
        }
    }

    pub fn coords(&self) -> &DVector<T> {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Euclidean norm.
    pub fn norm(&self) -> T {
        self.coords.norm()
    }

    /// Minimal consecutive gap `coords[i] - coords[i+1]`: the margin to the
    /// chamber walls. A sequence is regular exactly when this diverges.
    pub fn min_gap(&self) -> T {
        let mut m = T::of(f64::INFINITY);
        for i in 0..self.coords.len() - 1 {
            m = m.min(self.coords[i] - self.coords[i + 1]);
        }
        m
    }

    /// Opposition involution: negate and reverse.
    pub fn iota(&self) -> Self {
        let n = self.coords.len();
        WeylVector {
            coords: DVector::from_fn(n, |i, _| -self.coords[n - 1 - i]),
        }
    }

    /// Unit-norm copy; `None` for the zero vector.
    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        if n <= T::zero() {
            return None;
        }
        Some(WeylVector {
            coords: &self.coords / n,
        })
    }

    /// Angle to another chamber vector, robust near zero: computed as
    /// `atan2(|orthogonal part|, <u, v-hat>)`.
    pub fn angle_to(&self, other: &WeylVector<T>) -> T {
        let vn = other.norm();
        let un = self.norm();
        if vn == T::zero() || un == T::zero() {
            return T::zero();
        }
        let vhat = &other.coords / vn;
        let along = self.coords.dot(&vhat);
        let ortho = (&self.coords - &vhat * along).norm();
        ortho.atan2(along)
    }
}

/// Cartan projection: sorted natural logs of the singular values, shifted to
/// sum zero. Badly scaled inputs are pre-divided by their largest entry; the
/// trace-zero shift absorbs the scale.
pub fn cartan_projection<T: Scalar>(g: &DMatrix<T>) -> Result<WeylVector<T>> {
    if g.nrows() != g.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} is not square",
            g.nrows(),
            g.ncols()
        )));
    }
    let logs = numeric::log_singular_values(g)?;
    Ok(WeylVector::from_logs(logs.as_slice()))
}

/// Jordan (Lyapunov) projection: sorted logs of the eigenvalue moduli,
/// shifted to sum zero. This realizes `lim mu(g^k)/k` directly.
pub fn jordan_projection<T: Scalar>(g: &DMatrix<T>) -> Result<WeylVector<T>> {
    if g.nrows() != g.ncols() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} is not square",
            g.nrows(),
            g.ncols()
        )));
    }
    let s = numeric::max_abs(g);
    if s == T::zero() || !s.is_finite() {
        return Err(Error::SingularMatrix);
    }
    let scaled = g / s;
    let eigs = numeric::eigenvalues(&scaled);
    let mut logs = Vec::with_capacity(eigs.len());
    for z in eigs.iter() {
        let m = z.modulus();
        if m <= T::zero() {
            return Err(Error::SingularMatrix);
        }
        logs.push(m.ln() + s.ln());
    }
    Ok(WeylVector::from_logs(&logs))
}

/// Wall margin of a chamber vector: the minimal consecutive coordinate gap.
/// This equals the distance to the chamber walls up to a dimension-dependent
/// constant at most one, and diverges along a sequence exactly when the
/// distance does.
pub fn wall_margin<T: Scalar>(v: &WeylVector<T>) -> T {
    v.min_gap()
}

/// Both sides of the additive-error bound
/// `||mu(g1 g2 g3) - mu(g2)|| <= ||mu(g1)|| + ||mu(g3)||`
/// as `(lhs, rhs)`; the inequality must hold for invertible inputs.
pub fn kassel_defect<T: Scalar>(
    g1: &DMatrix<T>,
    g2: &DMatrix<T>,
    g3: &DMatrix<T>,
) -> Result<(T, T)> {
    let product = g1 * g2 * g3;
    let mu_prod = cartan_projection(&product)?;
    let mu2 = cartan_projection(g2)?;
    let mu1 = cartan_projection(g1)?;
    let mu3 = cartan_projection(g3)?;
    let lhs = (mu_prod.coords() - mu2.coords()).norm();
    let rhs = mu1.norm() + mu3.norm();
    Ok((lhs, rhs))
}

/// Translation length: the Euclidean norm of the Jordan projection (the
/// symmetric-space translation length for semisimple elements, the infimal
/// displacement otherwise), with a semisimplicity flag.
pub fn translation_length<T: Scalar>(g: &DMatrix<T>) -> Result<(T, bool)> {
    let lambda = jordan_projection(g)?;
    let semisimple = numeric::is_semisimple(g, T::of(MODULUS_GAP_TOL));
    Ok((lambda.norm(), semisimple))
}

/// A point of the symmetric space: positive-definite symmetric matrix of
/// determinant one.
#[derive(Debug, Clone, PartialEq)]
pub struct SpacePoint<T: Scalar> {
    matrix: DMatrix<T>,
}

impl<T: Scalar> SpacePoint<T> {
    /// The basepoint: the identity matrix.
    pub fn identity(n: usize) -> Self {
        SpacePoint {
            matrix: DMatrix::identity(n, n),
        }
    }

    /// Validating constructor: symmetric, positive definite, determinant one
    /// (checked as `|log det| <=` [`LOGDET_TOL`]).
    pub fn from_matrix(m: DMatrix<T>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch("not square".into()));
        }
        let scale = numeric::max_abs(&m).max(T::one());
        for i in 0..m.nrows() {
            for j in 0..i {
                if (m[(i, j)] - m[(j, i)]).abs() > T::of(1e-12) * scale {
                    return Err(Error::InvalidInput("matrix not symmetric".into()));
                }
            }
        }
        let eig = SymmetricEigen::new(m.clone());
        let mut logdet = T::zero();
        for &l in eig.eigenvalues.iter() {
            if l <= T::zero() {
                return Err(Error::InvalidInput(
                    "matrix not positive definite".into(),
                ));
            }
            logdet += l.ln();
        }
        if logdet.abs() > T::of(LOGDET_TOL) {
            return Err(Error::InvalidInput(format!(
                "determinant is exp({:e}), not one",
                logdet.to_f64()
            )));
        }
        Ok(SpacePoint { matrix: m })
    }

    /// The orbit-map image of a group element: `(g g^T)`, determinant
    /// normalized.
    pub fn from_group(g: &DMatrix<T>) -> Result<Self> {
        Self::identity(g.nrows()).translate(g)
    }

    /// Isometric translation `P -> g P g^T`, determinant normalized and
    /// re-symmetrized.
    pub fn translate(&self, g: &DMatrix<T>) -> Result<Self> {
        let raw = g * &self.matrix * g.transpose();
        let normalized = numeric::det_normalize(&raw)?;
        let sym = (&normalized + normalized.transpose()) * T::of(0.5);
        SpacePoint::from_matrix(sym)
    }

    pub fn matrix(&self) -> &DMatrix<T> {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Lower Cholesky factor `L` with `P = L L^T`.
    pub fn chol_lower(&self) -> Result<DMatrix<T>> {
        nalgebra::Cholesky::new(self.matrix.clone())
            .map(|c| c.l())
            .ok_or(Error::SingularMatrix)
    }
}

/// Chamber-valued distance between two points: half the sorted logs of the
/// eigenvalues of `P^-1 Q`, shifted to sum zero. `delta_distance(Id, g g^T)`
/// reproduces the Cartan projection of `g`.
pub fn delta_distance<T: Scalar>(p: &SpacePoint<T>, q: &SpacePoint<T>) -> Result<WeylVector<T>> {
    if p.dim() != q.dim() {
        return Err(Error::DimensionMismatch("point dimensions differ".into()));
    }
    let l = p.chol_lower()?;
    let li = l.clone().try_inverse().ok_or(Error::SingularMatrix)?;
    let m = &li * q.matrix() * li.transpose();
    let m = (&m + m.transpose()) * T::of(0.5);
    let eig = SymmetricEigen::new(m);
    let mut logs = Vec::with_capacity(eig.eigenvalues.len());
    for &lam in eig.eigenvalues.iter() {
        if lam <= T::zero() {
            return Err(Error::InvalidInput(
                "relative spectrum not positive".into(),
            ));
        }
        logs.push(lam.ln() * T::of(0.5));
    }
    Ok(WeylVector::from_logs(&logs))
}

/// Riemannian distance between two points under the fixed normalization.
pub fn space_distance<T: Scalar>(p: &SpacePoint<T>, q: &SpacePoint<T>) -> Result<T> {
    Ok(delta_distance(p, q)?.norm())
}

/// The maximal flat attached to a loxodromic element: the family
/// `{B D B^T : D positive diagonal, det = 1}` over the eigenvector frame `B`,
/// columns ordered by decreasing eigenvalue modulus.
#[derive(Debug, Clone)]
pub struct FlatDescriptor<T: Scalar> {
    frame: DMatrix<T>,
    /// `-2 ln |det frame|`: the value `sum(t)` must take for
    /// `B exp(diag t) B^T` to have determinant one.
    log_sum_target: T,
}

impl<T: Scalar> FlatDescriptor<T> {
    /// Build from an explicit frame (columns normalized to unit length).
    pub fn from_frame(frame: DMatrix<T>) -> Result<Self> {
        let n = frame.nrows();
        if frame.ncols() != n {
            return Err(Error::DimensionMismatch("frame not square".into()));
        }
        let mut b = frame;
        for j in 0..n {
            let norm = b.column(j).norm();
            if norm == T::zero() {
                return Err(Error::SingularMatrix);
            }
            // Unit columns, largest-magnitude entry positive.
            let mut col = b.column(j) / norm;
            let lead = col
                .iter()
                .cloned()
                .fold(T::zero(), |a, x| if x.abs() > a.abs() { x } else { a });
            if lead < T::zero() {
                col = -col;
            }
            b.set_column(j, &col);
        }
        let svals = b.clone().svd(false, false).singular_values;
        let (smax, smin) = (svals.max(), svals.min());
        if smin <= T::zero() || smax / smin > T::of(1e12) {
            return Err(Error::SingularMatrix);
        }
        let log_sum_target = -numeric::log_abs_det(&b)? * T::of(2.0);
        Ok(FlatDescriptor {
            frame: b,
            log_sum_target,
        })
    }

    pub fn frame(&self) -> &DMatrix<T> {
        &self.frame
    }

    pub fn dim(&self) -> usize {
        self.frame.nrows()
    }

    /// The point `B exp(diag t) B^T` of the flat; `t` is projected onto the
    /// determinant-one slice before use.
    pub fn point(&self, t: &DVector<T>) -> Result<SpacePoint<T>> {
        let n = self.dim();
        let sum: T = t.iter().fold(T::zero(), |a, &b| a + b);
        let shift = (self.log_sum_target - sum) / T::of(n as f64);
        let d = DMatrix::from_fn(n, n, |i, j| {
            if i == j {
                (t[i] + shift).exp()
            } else {
                T::zero()
            }
        });
        let m = &self.frame * d * self.frame.transpose();
        let m = (&m + m.transpose()) * T::of(0.5);
        SpacePoint::from_matrix(m)
    }
}

/// The unique maximal flat through the attracting and repelling chambers of
/// a loxodromic element: requires real eigenvalues with pairwise distinct
/// moduli (relative gap above [`MODULUS_GAP_TOL`]).
pub fn flat_of<T: Scalar>(g: &DMatrix<T>) -> Result<FlatDescriptor<T>> {
    let n = g.nrows();
    if g.ncols() != n {
        return Err(Error::DimensionMismatch("not square".into()));
    }
    let scale = numeric::max_abs(g);
    if scale == T::zero() || !scale.is_finite() {
        return Err(Error::SingularMatrix);
    }
    let scaled = g / scale;
    let eigs = numeric::eigenvalues(&scaled);
    let moduli_scale = eigs
        .iter()
        .map(|z| z.modulus())
        .fold(T::zero(), |a, b| a.max(b));
    // Real spectrum check: a complex pair shares its modulus, so surface it
    // as the coincident pair it creates.
    let mut lambda: Vec<T> = Vec::with_capacity(n);
    for z in eigs.iter() {
        if z.im.abs() > T::of(MODULUS_GAP_TOL) * moduli_scale {
            let m = (z.modulus() * scale).to_f64();
            return Err(Error::NotLoxodromic { m1: m, m2: m });
        }
        lambda.push(z.re);
    }
    lambda.sort_by(|a, b| {
        b.abs()
            .partial_cmp(&a.abs())
            .expect("finite eigenvalues")
    });
    for i in 0..n - 1 {
        let (hi, lo) = (lambda[i].abs(), lambda[i + 1].abs());
        if lo <= T::zero() || (hi - lo) / hi <= T::of(MODULUS_GAP_TOL) {
            return Err(Error::NotLoxodromic {
                m1: (hi * scale).to_f64(),
                m2: (lo * scale).to_f64(),
            });
        }
    }
    // One eigenvector per eigenvalue via the smallest right singular
    // direction of (g - lambda I).
    let mut frame = DMatrix::zeros(n, n);
    for (j, &lam) in lambda.iter().enumerate() {
        let shifted = &scaled - DMatrix::identity(n, n) * lam;
        let svd = shifted.svd(false, true);
        let v_t = svd.v_t.expect("requested");
        let mut min_idx = 0;
        for (i, &s) in svd.singular_values.iter().enumerate() {
            if s < svd.singular_values[min_idx] {
                min_idx = i;
            }
        }
        for i in 0..n {
            frame[(i, j)] = v_t[(min_idx, i)];
        }
    }
    FlatDescriptor::from_frame(frame)
}

/// Distance from a point to a flat: the minimum of `d(Q, B D B^T)` over the
/// determinant-one positive diagonals `D`, computed by damped Newton on the
/// geodesically convex objective in the (n-1)-dimensional log parameters,
/// with coordinate descent as a stagnation fallback.
pub fn distance_to_flat<T: Scalar>(q: &SpacePoint<T>, flat: &FlatDescriptor<T>) -> Result<T> {
    let n = flat.dim();
    if q.dim() != n {
        return Err(Error::DimensionMismatch("point/flat dimensions".into()));
    }
    let b_inv = flat
        .frame
        .clone()
        .try_inverse()
        .ok_or(Error::SingularMatrix)?;
    // M = B^-1 Q B^-T; objective f(t) = sum_i ln^2 lambda_i(D_t^-1 M).
    let m = &b_inv * q.matrix() * b_inv.transpose();
    let m = (&m + m.transpose()) * T::of(0.5);

    // Orthonormal basis of the sum-zero subspace (Helmert-style columns).
    let mut z = DMatrix::zeros(n, n - 1);
    for j in 0..n - 1 {
        let k = T::of((j + 1) as f64);
        let norm = (k * (k + T::one())).sqrt();
        for i in 0..=j {
            z[(i, j)] = T::one() / norm;
        }
        z[(j + 1, j)] = -k / norm;
    }

    // Feasible initial point: projected log-diagonal of M.
    let mut t0 = DVector::from_fn(n, |i, _| m[(i, i)].max(T::of(1e-300)).ln());
    let sum0: T = t0.iter().fold(T::zero(), |a, &b| a + b);
    let shift = (flat.log_sum_target - sum0) / T::of(n as f64);
    for i in 0..n {
        t0[i] += shift;
    }

    let objective = |u: &DVector<T>| -> Result<T> {
        let t = &t0 + &z * u;
        // Whitened pencil: D^-1/2 M D^-1/2.
        let mut w = m.clone();
        for i in 0..n {
            for j in 0..n {
                w[(i, j)] *= (-(t[i] + t[j]) * T::of(0.5)).exp();
            }
        }
        let eig = SymmetricEigen::new(w);
        let mut f = T::zero();
        for &lam in eig.eigenvalues.iter() {
            if lam <= T::zero() {
                return Err(Error::InvalidInput("pencil not positive".into()));
            }
            let l = lam.ln();
            f += l * l;
        }
        Ok(f)
    };

    let dim = n - 1;
    let h = T::of(1e-4);
    let gtol = T::of(FLAT_SOLVER_TOL);
    let mut u = DVector::zeros(dim);
    let mut f = objective(&u)?;
    let max_iters = 200usize;
    let mut last_step = f64::INFINITY;
    for iter in 0..max_iters {
        // Central-difference gradient and Hessian.
        let mut grad = DVector::zeros(dim);
        for i in 0..dim {
            let mut up = u.clone();
            let mut dn = u.clone();
            up[i] += h;
            dn[i] -= h;
            grad[i] = (objective(&up)? - objective(&dn)?) / (h + h);
        }
        let gnorm = grad.amax();
        if gnorm <= gtol {
            return Ok(f.max(T::zero()).sqrt() * T::of(0.5));
        }
        let mut hess = DMatrix::zeros(dim, dim);
        for i in 0..dim {
            for j in 0..=i {
                let mut pp = u.clone();
                let mut pm = u.clone();
                let mut mp = u.clone();
                let mut mm = u.clone();
                pp[i] += h;
                pp[j] += h;
                pm[i] += h;
                pm[j] -= h;
                mp[i] -= h;
                mp[j] += h;
                mm[i] -= h;
                mm[j] -= h;
                let v = (objective(&pp)? - objective(&pm)? - objective(&mp)?
                    + objective(&mm)?)
                    / (T::of(4.0) * h * h);
                hess[(i, j)] = v;
                hess[(j, i)] = v;
            }
        }
        let step = hess
            .clone()
            .lu()
            .solve(&(-&grad))
            .filter(|s| s.dot(&grad) < T::zero())
            .unwrap_or_else(|| -&grad);
        // Backtracking line search (Armijo).
        let slope = grad.dot(&step);
        let mut alpha = T::one();
        let mut advanced = false;
        for _ in 0..60 {
            let cand = &u + &step * alpha;
            if let Ok(fc) = objective(&cand) {
                if fc <= f + T::of(1e-4) * alpha * slope {
                    last_step = (alpha * step.norm()).to_f64();
                    u = cand;
                    f = fc;
                    advanced = true;
                    break;
                }
            }
            alpha *= T::of(0.5);
        }
        if !advanced {
            // Coordinate-descent fallback: golden-section along each axis.
            let mut improved = false;
            for i in 0..dim {
                let eval = |x: T, u: &DVector<T>| -> Result<T> {
                    let mut c = u.clone();
                    c[i] = x;
                    objective(&c)
                };
                let (mut lo, mut hi) = (u[i] - T::one(), u[i] + T::one());
                for _ in 0..80 {
                    let m1 = lo + (hi - lo) / T::of(3.0);
                    let m2 = hi - (hi - lo) / T::of(3.0);
                    if eval(m1, &u)? < eval(m2, &u)? {
                        hi = m2;
                    } else {
                        lo = m1;
                    }
                }
                let x = (lo + hi) * T::of(0.5);
                let fx = eval(x, &u)?;
                if fx < f {
                    u[i] = x;
                    f = fx;
                    improved = true;
                }
            }
            if !improved {
                // Converged to FD noise floor: accept if the gradient is
                // within an order of magnitude of tolerance.
                if gnorm <= gtol * T::of(100.0) {
                    return Ok(f.max(T::zero()).sqrt() * T::of(0.5));
                }
                return Err(Error::NonConvergence {
                    iterations: iter + 1,
                    last_step,
                });
            }
        }
    }
    Err(Error::NonConvergence {
        iterations: max_iters,
        last_step,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use nalgebra::DMatrix;

    type M = DMatrix<f64>;

    fn m3(rows: [[f64; 3]; 3]) -> M {
        M::from_row_slice(3, 3, &rows.concat())
    }

    fn diag3(a: f64, b: f64, c: f64) -> M {
        M::from_diagonal(&nalgebra::DVector::from_vec(vec![a, b, c]))
    }

    #[test]
    fn cartan_of_diagonal() {
        let mu = cartan_projection(&diag3(2f64.exp().powi(1), 1.0, (-2f64).exp())).unwrap();
        // diag(e^2, 1, e^-2) -> (2, 0, -2)
        assert_relative_eq!(mu.coords()[0], 2.0, epsilon = 1e-12);
        assert_relative_eq!(mu.coords()[1], 0.0, epsilon = 1e-12);
        assert_relative_eq!(mu.coords()[2], -2.0, epsilon = 1e-12);
    }

    #[test]
    fn cartan_of_orthogonal_is_zero() {
        let theta: f64 = 0.77;
        let k = m3([
            [theta.cos(), -theta.sin(), 0.0],
            [theta.sin(), theta.cos(), 0.0],
            [0.0, 0.0, 1.0],
        ]);
        let mu = cartan_projection(&k).unwrap();
        assert!(mu.norm() < 1e-12);
    }

    /// The nontrivial squared singular values of [[1,1,1],[0,1,2],[0,0,1]]
    /// are the roots of x^2 - 8x + 1; oracle value (4 + sqrt 15).
    #[test]
    fn cartan_of_integer_unipotent_matches_quadratic_root() {
        let g = m3([[1.0, 1.0, 1.0], [0.0, 1.0, 2.0], [0.0, 0.0, 1.0]]);
        let mu = cartan_projection(&g).unwrap();
        let alpha = 4.0 + 15f64.sqrt();
        let expect = 0.5 * alpha.ln();
        assert_relative_eq!(mu.coords()[0], expect, max_relative = 1e-12);
        assert_relative_eq!(mu.coords()[1], 0.0, epsilon = 1e-12);
        assert_relative_eq!(mu.coords()[2], -expect, max_relative = 1e-12);
        assert_relative_eq!(expect, 1.0317185344477804, max_relative = 1e-12);
    }

    #[test]
    fn cartan_rejects_singular() {
        let g = diag3(1.0, 1.0, 0.0);
        assert!(cartan_projection(&g).is_err());
    }

    #[test]
    fn jordan_of_diagonal_and_unipotent() {
        let lam = jordan_projection(&diag3(2.0, 1.0, 0.5)).unwrap();
        assert_relative_eq!(lam.coords()[0], 2f64.ln(), epsilon = 1e-12);
        assert_relative_eq!(lam.coords()[2], -(2f64.ln()), epsilon = 1e-12);
        let uni = m3([[1.0, 5.0, 3.0], [0.0, 1.0, -2.0], [0.0, 0.0, 1.0]]);
        assert!(jordan_projection(&uni).unwrap().norm() < 1e-12);
    }

    /// Quasi-hyperbolic normal form: eigenvalue moduli (a, a, a^-2), so the
    /// Jordan projection sits exactly on the first wall.
    #[test]
    fn jordan_of_quasi_hyperbolic_is_on_wall() {
        let a: f64 = 2.0;
        let g = m3([[a, 1.0, 0.0], [0.0, a, 0.0], [0.0, 0.0, a.powi(-2)]]);
        let lam = jordan_projection(&g).unwrap();
        assert_eq!(lam.coords()[0], lam.coords()[1]);
        assert_relative_eq!(lam.coords()[0], a.ln(), epsilon = 1e-14);
        assert_relative_eq!(lam.coords()[2], -2.0 * a.ln(), epsilon = 1e-14);
    }

    #[test]
    fn wall_margin_examples() {
        let v = WeylVector::new(nalgebra::dvector![2.0, 0.0, -2.0]).unwrap();
        assert_eq!(wall_margin(&v), 2.0);
        let w = WeylVector::new(nalgebra::dvector![1.0, 1.0, -2.0]).unwrap();
        assert_eq!(wall_margin(&w), 0.0);
    }

    /// Margin of mu(g^2) for the integer unipotent: half the log of the
    /// larger root of x^2 - 38x + 1 (oracle: 19 + sqrt 360).
    #[test]
    fn wall_margin_of_unipotent_square() {
        let g = m3([[1.0, 1.0, 1.0], [0.0, 1.0, 2.0], [0.0, 0.0, 1.0]]);
        let g2 = &g * &g;
        let mu = cartan_projection(&g2).unwrap();
        let alpha = 19.0 + 360f64.sqrt();
        assert_relative_eq!(wall_margin(&mu), 0.5 * alpha.ln(), max_relative = 1e-10);
        assert_relative_eq!(0.5 * alpha.ln(), 1.8184464592320668, max_relative = 1e-12);
    }

    #[test]
    fn weyl_vector_validation() {
        assert!(WeylVector::new(nalgebra::dvector![1.0, 2.0, -3.0]).is_err()); // increasing
        assert!(WeylVector::new(nalgebra::dvector![1.0, 0.5, 0.0]).is_err()); // sum != 0
        let v = WeylVector::new(nalgebra::dvector![1.0, 0.0, -1.0]).unwrap();
        assert_relative_eq!(v.norm(), 2f64.sqrt());
        let i = v.iota();
        assert_eq!(i.coords().as_slice(), &[1.0, 0.0, -1.0]);
        let w = WeylVector::new(nalgebra::dvector![3.0, -1.0, -2.0]).unwrap();
        assert_eq!(w.iota().coords().as_slice(), &[2.0, 1.0, -3.0]);
    }

    #[test]
    fn delta_distance_identities() {
        let p = SpacePoint::from_matrix(diag3(2.0, 1.0, 0.5)).unwrap();
        let z = delta_distance(&p, &p).unwrap();
        assert!(z.norm() < 1e-12);

        let e4 = 4f64.exp();
        let q = SpacePoint::from_matrix(diag3(e4, 1.0, 1.0 / e4)).unwrap();
        let id = SpacePoint::identity(3);
        let d = delta_distance(&id, &q).unwrap();
        assert_relative_eq!(d.coords()[0], 2.0, epsilon = 1e-12);
        assert_relative_eq!(d.coords()[2], -2.0, epsilon = 1e-12);
    }

    #[test]
    fn delta_distance_reproduces_cartan() {
        let g = m3([[1.2, 0.3, -0.5], [0.0, 0.8, 0.9], [0.4, -0.2, 1.1]]);
        let p = SpacePoint::from_group(&g).unwrap();
        let id = SpacePoint::identity(3);
        let d = delta_distance(&id, &p).unwrap();
        let mu = cartan_projection(&g).unwrap();
        // d_Delta(Id, g g^T / det) drops the determinant scale, exactly the
        // projectivized Cartan projection.
        for i in 0..3 {
            assert_relative_eq!(d.coords()[i], mu.coords()[i], epsilon = 1e-10);
        }
    }

    #[test]
    fn kassel_trivial_cases() {
        let id = M::identity(3, 3);
        let g = m3([[1.0, 2.0, 0.0], [0.0, 1.0, 1.0], [0.5, 0.0, 1.0]]);
        let (lhs, rhs) = kassel_defect(&id, &g, &id).unwrap();
        assert!(lhs < 1e-12);
        assert!(rhs < 1e-12);
        // Orthogonal outer factors: K-bi-invariance forces lhs = 0.
        let th: f64 = 0.31;
        let k = m3([
            [th.cos(), -th.sin(), 0.0],
            [th.sin(), th.cos(), 0.0],
            [0.0, 0.0, 1.0],
        ]);
        let (lhs, rhs) = kassel_defect(&k, &g, &k.transpose()).unwrap();
        assert!(lhs < 1e-9, "lhs = {lhs}");
        assert!(lhs <= rhs + 1e-9);
    }

    #[test]
    fn translation_length_examples() {
        let e = 1f64.exp();
        let (t, ss) = translation_length(&diag3(e, 1.0, 1.0 / e)).unwrap();
        assert_relative_eq!(t, 2f64.sqrt(), max_relative = 1e-12);
        assert!(ss);
        // Parabolic: zero length, not semisimple.
        let par = m3([[1.0, 1.0, 0.0], [0.0, 1.0, 1.0], [0.0, 0.0, 1.0]]);
        let (t, ss) = translation_length(&par).unwrap();
        assert!(t < 1e-12);
        assert!(!ss);
    }

    #[test]
    fn translation_length_is_additive_on_powers() {
        let g = diag3(3.0, 1.2, 1.0 / 3.6);
        let g = numeric::det_normalize(&g).unwrap();
        let (t1, _) = translation_length(&g).unwrap();
        let mut p = M::identity(3, 3);
        for k in 1..=5usize {
            p = &p * &g;
            let (tk, _) = translation_length(&p).unwrap();
            assert_relative_eq!(tk, t1 * k as f64, max_relative = 1e-10);
        }
    }

    #[test]
    fn flat_of_diagonal_is_standard() {
        let f = flat_of(&diag3(4.0, 2.0, 1.0)).unwrap();
        // Frame columns are signed standard basis vectors.
        for j in 0..3 {
            let col = f.frame().column(j);
            let mut nonzero = 0;
            for &x in col.iter() {
                if x.abs() > 1e-12 {
                    nonzero += 1;
                    assert_relative_eq!(x.abs(), 1.0, epsilon = 1e-12);
                }
            }
            assert_eq!(nonzero, 1);
        }
    }

    #[test]
    fn flat_of_rejects_quasi_hyperbolic() {
        let g = m3([[2.0, 1.0, 0.0], [0.0, 2.0, 0.0], [0.0, 0.0, 0.25]]);
        match flat_of(&g) {
            Err(Error::NotLoxodromic { m1, m2 }) => {
                assert_relative_eq!(m1, 2.0, max_relative = 1e-9);
                assert_relative_eq!(m2, 2.0, max_relative = 1e-9);
            }
            other => panic!("expected NotLoxodromic, got {other:?}"),
        }
    }

    #[test]
    fn flat_of_preserves_invariance() {
        // g acts on its own flat: translating a flat point by g stays on it.
        let g = m3([[3.0, 1.0, 0.0], [1.0, 2.0, 0.5], [0.0, 0.5, 1.0]]);
        let g = numeric::det_normalize(&g).unwrap();
        let flat = flat_of(&g).unwrap();
        let t = nalgebra::dvector![0.4, -0.1, -0.3];
        let p = flat.point(&t).unwrap();
        let moved = p.translate(&g).unwrap();
        let d = distance_to_flat(&moved, &flat).unwrap();
        assert!(d < 1e-7, "distance after translation: {d}");
    }

    #[test]
    fn distance_to_flat_zero_on_flat() {
        let g = m3([[2.0, 0.5, 0.0], [0.5, 1.5, 0.2], [0.0, 0.2, 0.9]]);
        let g = numeric::det_normalize(&g).unwrap();
        let flat = flat_of(&g).unwrap();
        let p = flat.point(&nalgebra::dvector![0.7, 0.1, -0.5]).unwrap();
        let d = distance_to_flat(&p, &flat).unwrap();
        assert!(d < 1e-8, "d = {d}");
    }

    /// Distance from a rotated diagonal point to the diagonal flat,
    /// cross-checked against a dense grid search.
    #[test]
    fn distance_to_flat_matches_grid_search() {
        let th: f64 = 0.6;
        let k = m3([
            [th.cos(), -th.sin(), 0.0],
            [th.sin(), th.cos(), 0.0],
            [0.0, 0.0, 1.0],
        ]);
        let d0 = diag3(2f64.exp(), 1.0, (-2f64).exp());
        let q_mat = &k * d0 * k.transpose();
        let q = SpacePoint::from_matrix((&q_mat + q_mat.transpose()) * 0.5).unwrap();
        let flat = flat_of(&diag3(4.0, 2.0, 1.0)).unwrap();
        let fast = distance_to_flat(&q, &flat).unwrap();

        // Grid-search oracle over the 2-dimensional flat parameters:
        // coarse pass over a wide window, then step 1e-3 around the best.
        let eval = |t1: f64, t2: f64| {
            let p = flat
                .point(&nalgebra::dvector![t1, t2, -(t1 + t2)])
                .unwrap();
            space_distance(&p, &q).unwrap()
        };
        let mut best = f64::INFINITY;
        let mut center = (0.0, 0.0);
        for (half, step) in [(2.5, 0.02), (0.04, 1e-3)] {
            let (c1, c2) = center;
            let steps = (2.0 * half / step) as i64;
            for i in 0..=steps {
                for j in 0..=steps {
                    let t1 = c1 - half + i as f64 * step;
                    let t2 = c2 - half + j as f64 * step;
                    let d = eval(t1, t2);
                    if d < best {
                        best = d;
                        center = (t1, t2);
                    }
                }
            }
        }
        assert!(
            (fast - best).abs() < 5e-4,
            "solver {fast} vs grid {best}"
        );
        assert!(fast <= best + 1e-10);
    }

    #[test]
    fn space_point_validation() {
        assert!(SpacePoint::from_matrix(diag3(1.0, 1.0, 2.0)).is_err()); // det != 1
        assert!(SpacePoint::from_matrix(m3([
            [1.0, 0.5, 0.0],
            [0.0, 1.0, 0.0],
            [0.0, 0.0, 1.0]
        ]))
        .is_err()); // asymmetric
        assert!(SpacePoint::from_matrix(diag3(-1.0, -1.0, 1.0)).is_err()); // not PD
    }
}
