//! Exterior-power machinery: compound matrices, the Pluecker embedding of
//! Grassmannians, induced actions, limit-rank classification of matrix
//! sequences, and the total-positivity minor test.
//!
//! Compound matrices are evaluated by Laplace expansion memoized over column
//! subsets, trading speed for exactness at the small dimensions this crate
//! targets (`C(8,4) = 70` is the largest index set in practice).

use std::collections::HashMap;

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::numeric;
use crate::scalar::Scalar;

/// Decay factor of the persistence test in [`sequence_rank_classify`]: a
/// singular-value ratio counts as surviving only if it exceeds `eps` at the
/// cutoff and has not halved since the midpoint of the sampled window.
pub const RANK_DECAY_FACTOR: f64 = 0.5;

/// Strictly increasing `r`-subsets of `0..n` in lexicographic order.
pub fn index_subsets(n: usize, r: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current: Vec<usize> = (0..r).collect();
    if r == 0 || r > n {
        return out;
    }
    loop {
        out.push(current.clone());
        // Advance to the next lex subset.
        let mut i = r;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if current[i] != i + n - r {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        current[i] += 1;
        for j in i + 1..r {
            current[j] = current[j - 1] + 1;
        }
    }
}

fn binomial(n: usize, r: usize) -> usize {
    if r > n {
        return 0;
    }
    let r = r.min(n - r);
    let mut acc: usize = 1;
    for i in 0..r {
        acc = acc * (n - i) / (i + 1);
    }
    acc
}

/// The matrix of all `r x r` minors, rows and columns indexed by the
/// lexicographically ordered `r`-subsets; represents the induced action on
/// the `r`-th exterior power.
#[derive(Debug, Clone)]
pub struct CompoundMatrix<T: Scalar> {
    r: usize,
    entries: DMatrix<T>,
    row_sets: Vec<Vec<usize>>,
    col_sets: Vec<Vec<usize>>,
}

impl<T: Scalar> CompoundMatrix<T> {
    pub fn degree(&self) -> usize {
        self.r
    }

    pub fn entries(&self) -> &DMatrix<T> {
        &self.entries
    }

    pub fn row_sets(&self) -> &[Vec<usize>] {
        &self.row_sets
    }

    pub fn col_sets(&self) -> &[Vec<usize>] {
        &self.col_sets
    }
}

/// All `r`-minors of the rows `rows` of `a`, keyed by column-subset bitmask.
/// Laplace expansion along the last row, memoized over column subsets.
fn minors_for_rows<T: Scalar>(a: &DMatrix<T>, rows: &[usize], r: usize) -> HashMap<u64, T> {
    let m = a.ncols();
    let mut prev: HashMap<u64, T> = HashMap::new();
    prev.insert(0, T::one()); // det of the empty matrix
    for k in 1..=r {
        let mut next: HashMap<u64, T> = HashMap::new();
        for cols in index_subsets(m, k) {
            let mask: u64 = cols.iter().fold(0, |acc, &c| acc | 1u64 << c);
            let mut det = T::zero();
            let mut sign = if (k - 1) % 2 == 0 { T::one() } else { -T::one() };
            for (pos, &c) in cols.iter().enumerate() {
                let sub = mask & !(1u64 << c);
                let cofactor = prev[&sub];
                let term = a[(rows[k - 1], c)] * cofactor * sign;
                det += term;
                let _ = pos;
                sign = -sign;
            }
            next.insert(mask, det);
        }
        prev = next;
    }
    prev
}

/// The `r`-th compound matrix of an `n x m` real matrix.
pub fn compound<T: Scalar>(a: &DMatrix<T>, r: usize) -> Result<CompoundMatrix<T>> {
    let (n, m) = (a.nrows(), a.ncols());
    let max = n.min(m);
    if r == 0 || r > max {
        return Err(Error::DegreeOutOfRange { r, max });
    }
    if m > 64 {
        return Err(Error::DimensionMismatch(
            "compound matrices support at most 64 columns".into(),
        ));
    }
    let row_sets = index_subsets(n, r);
    let col_sets = index_subsets(m, r);
    let mut entries = DMatrix::zeros(row_sets.len(), col_sets.len());
    for (bi, rows) in row_sets.iter().enumerate() {
        let minors = minors_for_rows(a, rows, r);
        for (bj, cols) in col_sets.iter().enumerate() {
            let mask: u64 = cols.iter().fold(0, |acc, &c| acc | 1u64 << c);
            entries[(bi, bj)] = minors[&mask];
        }
    }
    debug_assert_eq!(entries.nrows(), binomial(n, r));
    debug_assert_eq!(entries.ncols(), binomial(m, r));
    Ok(CompoundMatrix {
        r,
        entries,
        row_sets,
        col_sets,
    })
}

/// Multiplicativity defect of the compound functor on a concrete pair:
/// the largest entry of `C_r(AB) - C_r(A) C_r(B)`, relative to the magnitude
/// of `C_r(AB)`.
pub fn cauchy_binet_check<T: Scalar>(a: &DMatrix<T>, b: &DMatrix<T>, r: usize) -> Result<T> {
    if a.ncols() != b.nrows() {
        return Err(Error::DimensionMismatch(format!(
            "{}x{} times {}x{}",
            a.nrows(),
            a.ncols(),
            b.nrows(),
            b.ncols()
        )));
    }
    let product = a * b;
    let lhs = compound(&product, r)?;
    let rhs = compound(a, r)?.entries * compound(b, r)?.entries;
    let diff = &lhs.entries - &rhs;
    let scale = numeric::max_abs(&lhs.entries)
        .max(numeric::max_abs(&rhs))
        .max(T::of(f64::MIN_POSITIVE));
    Ok(numeric::max_abs(&diff) / scale)
}

/// A point of the Grassmannian `G(n, r)` in Pluecker coordinates, normalized
/// to unit Euclidean norm with positive leading (first nonzero) coordinate.
#[derive(Debug, Clone)]
pub struct PluckerPoint<T: Scalar> {
    coords: DVector<T>,
    n: usize,
    r: usize,
}

impl<T: Scalar> PluckerPoint<T> {
    /// Normalize and validate raw projective coordinates. For `(n, r) =
    /// (4, 2)` the quadratic Pluecker relation is checked to `1e-8`; for
    /// other shapes decomposability is certified by construction from a
    /// spanning set.
    pub fn new(coords: DVector<T>, n: usize, r: usize) -> Result<Self> {
        if coords.len() != binomial(n, r) {
            return Err(Error::DimensionMismatch(format!(
                "expected {} Pluecker coordinates, got {}",
                binomial(n, r),
                coords.len()
            )));
        }
        let norm = coords.norm();
        if norm <= T::zero() || !norm.is_finite() {
            return Err(Error::InvalidInput("zero Pluecker vector".into()));
        }
        let mut c = coords / norm;
        let lead = c.iter().find(|x| x.abs() > T::of(1e-14)).copied();
        if let Some(l) = lead {
            if l < T::zero() {
                c = -c;
            }
        }
        if (n, r) == (4, 2) {
            // p12 p34 - p13 p24 + p14 p23 = 0 in lex order
            // (12, 13, 14, 23, 24, 34) -> indices (0, 1, 2, 3, 4, 5).
            let rel = c[0] * c[5] - c[1] * c[4] + c[2] * c[3];
            if rel.abs() > T::of(1e-8) {
                return Err(Error::InvalidInput(format!(
                    "Pluecker relation violated by {:e}",
                    rel.to_f64()
                )));
            }
        }
        Ok(PluckerPoint { coords: c, n, r })
    }

    pub fn coords(&self) -> &DVector<T> {
        &self.coords
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn plane_dim(&self) -> usize {
        self.r
    }

    /// Sign-invariant projective angle distance
    /// `arccos(|<u, v>| / (|u||v|))`.
    pub fn angle_to(&self, other: &PluckerPoint<T>) -> T {
        let c = self.coords.dot(&other.coords).abs().min(T::one());
        c.acos()
    }
}

/// Pluecker embedding of the span of `r` linearly independent vectors:
/// the vector of all `r x r` minors of the column matrix, normalized.
pub fn plucker_embed<T: Scalar>(basis: &[DVector<T>]) -> Result<PluckerPoint<T>> {
    let r = basis.len();
    if r == 0 {
        return Err(Error::DegenerateSpan {
            rank: 0,
            expected: 0,
        });
    }
    let n = basis[0].len();
    if basis.iter().any(|v| v.len() != n) {
        return Err(Error::DimensionMismatch(
            "basis vectors of mixed lengths".into(),
        ));
    }
    let mut mat = DMatrix::zeros(n, r);
    for (j, v) in basis.iter().enumerate() {
        mat.set_column(j, v);
    }
    let rank = numeric::rank_with_tol(&mat, T::of(1e-12));
    if rank < r {
        return Err(Error::DegenerateSpan { rank, expected: r });
    }
    let comp = compound(&mat, r)?;
    let coords = DVector::from_column_slice(comp.entries.as_slice());
    PluckerPoint::new(coords, n, r)
}

/// Induced action of an invertible matrix on Pluecker coordinates via its
/// compound matrix; equivariant with [`plucker_embed`].
pub fn grassmann_act<T: Scalar>(a: &DMatrix<T>, p: &PluckerPoint<T>) -> Result<PluckerPoint<T>> {
    if a.nrows() != p.n || a.ncols() != p.n {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}x{}, point lives in G({}, {})",
            a.nrows(),
            a.ncols(),
            p.n,
            p.r
        )));
    }
    let comp = compound(a, p.r)?;
    let coords = &comp.entries * &p.coords;
    PluckerPoint::new(coords, p.n, p.r)
}

/// Normalized singular-value profile of the power sequence `g^k` and the
/// inferred limit rank.
#[derive(Debug, Clone)]
pub struct SequenceRankReport {
    /// `profile[k-1][i] = sigma_{i+1}(g^k) / sigma_1(g^k)` for `k = 1..=K`.
    pub profile: Vec<Vec<f64>>,
    /// Number of normalized singular values that persist above the threshold
    /// at the cutoff.
    pub limit_rank_estimate: usize,
    /// Regularity verdict: the limit rank estimate is one.
    pub regular: bool,
    /// Power cutoff `K` used.
    pub cutoff: usize,
    /// Persistence threshold used.
    pub eps: f64,
    /// Decay factor of the persistence test ([`RANK_DECAY_FACTOR`]).
    pub decay_factor: f64,
}

/// Classify the divergence type of the power sequence `g^k`, `k = 1..=K`,
/// from its normalized singular-value profile.
///
/// An index survives if its ratio is at least `eps` at `k = K` *and* has not
/// decayed below [`RANK_DECAY_FACTOR`] times its value at `k = K/2`; ratios
/// that merely shrink slowly (polynomially) are still recognized as
/// transient. The sequence is regular exactly when only the leading ratio
/// survives.
pub fn sequence_rank_classify<T: Scalar>(
    g: &DMatrix<T>,
    cutoff: usize,
    eps: f64,
) -> Result<SequenceRankReport> {
    if cutoff == 0 {
        return Err(Error::InvalidInput("cutoff must be at least 1".into()));
    }
    if !(0.0..1.0).contains(&eps) || eps <= 0.0 {
        return Err(Error::InvalidInput(
            "threshold must lie strictly between 0 and 1".into(),
        ));
    }
    let n = g.nrows();
    let mut profile = Vec::with_capacity(cutoff);
    let mut power = numeric::Scaled::new(g.clone())?;
    for k in 1..=cutoff {
        if k > 1 {
            power = power.mul(g)?;
        }
        let logs = numeric::log_singular_values(&power.matrix)?;
        let top = logs[0];
        let row: Vec<f64> = (0..n).map(|i| (logs[i] - top).to_f64().exp()).collect();
        profile.push(row);
    }
    let mid = cutoff.div_ceil(2);
    let last = &profile[cutoff - 1];
    let half = &profile[mid - 1];
    let mut rank = 0;
    for i in 0..n {
        if last[i] >= eps && last[i] > RANK_DECAY_FACTOR * half[i] {
            rank += 1;
        }
    }
    Ok(SequenceRankReport {
        profile,
        limit_rank_estimate: rank,
        regular: rank == 1,
        cutoff,
        eps,
        decay_factor: RANK_DECAY_FACTOR,
    })
}

/// Sampled frame-convergence criterion for regularity of the power sequence
/// `g^k`: for each `0 < r < n`, push the `r`-fold wedges of the frame through
/// the induced action at `k = K` and test whether all images cluster within
/// `eps` in the projective angle metric. `true` is numerical evidence of
/// regularity (a sampled sufficient criterion, not a proof).
pub fn frame_convergence_regularity<T: Scalar>(
    g: &DMatrix<T>,
    frame: &[DVector<T>],
    cutoff: u64,
    eps: f64,
) -> Result<bool> {
    let n = g.nrows();
    if frame.len() != n {
        return Err(Error::DimensionMismatch(format!(
            "need {n} frame vectors, got {}",
            frame.len()
        )));
    }
    let mut fmat = DMatrix::zeros(n, n);
    for (j, v) in frame.iter().enumerate() {
        if v.len() != n {
            return Err(Error::DimensionMismatch(
                "frame vector of wrong length".into(),
            ));
        }
        fmat.set_column(j, v);
    }
    let rank = numeric::rank_with_tol(&fmat, T::of(1e-12));
    if rank < n {
        return Err(Error::DegenerateSpan { rank, expected: n });
    }
    let gk = numeric::power_renormalized(g, cutoff)?.matrix;
    for r in 1..n {
        let comp = compound(&gk, r)?;
        let mut images: Vec<PluckerPoint<T>> = Vec::new();
        for subset in index_subsets(n, r) {
            let basis: Vec<DVector<T>> = subset.iter().map(|&i| frame[i].clone()).collect();
            let wedge = plucker_embed(&basis)?;
            let coords = &comp.entries * wedge.coords();
            images.push(PluckerPoint::new(coords, n, r)?);
        }
        for i in 0..images.len() {
            for j in i + 1..images.len() {
                if images[i].angle_to(&images[j]).to_f64() > eps {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Total positivity: every minor of every order is strictly positive.
pub fn is_totally_positive<T: Scalar>(a: &DMatrix<T>) -> Result<bool> {
    let n = a.nrows();
    if a.ncols() != n {
        return Err(Error::DimensionMismatch("not square".into()));
    }
    for r in 1..=n {
        let comp = compound(a, r)?;
        if comp.entries.iter().any(|&x| x <= T::zero()) {
            return Ok(false);
        }
    }
    Ok(true)
}
