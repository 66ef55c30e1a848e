//! Scalar abstraction for the numeric kernels.

/// Floating-point scalar the numeric core is generic over: `f32` or `f64`.
///
/// `nalgebra::RealField` supplies the linear-algebra surface (SVD, symmetric
/// eigensolves, elementary functions); `num_traits::FromPrimitive` supplies
/// conversion of `f64` tolerance constants into the working precision.
pub trait Scalar: nalgebra::RealField + num_traits::FromPrimitive + Copy {
    /// Convert an `f64` constant into this scalar type.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("finite f64 constant")
    }

    /// Lossy conversion back to `f64` for reporting.
    fn to_f64(self) -> f64;
}

impl Scalar for f32 {
    fn to_f64(self) -> f64 {
        self as f64
    }
}

impl Scalar for f64 {
    fn to_f64(self) -> f64 {
        self
    }
}
