use std::fmt;
use std::iter::Sum;
use std::ops::{AddAssign, DivAssign, MulAssign, SubAssign};

use num_traits::{Float, FromPrimitive, ToPrimitive};

/// Scalar type for all game and learner arithmetic: `f32` or `f64`.
///
/// The associated tolerances scale with the precision of the type; the
/// crate-level contracts (simplex feasibility, LP optimality, saddle-point
/// verification) are stated at the `f64` values.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + SubAssign
    + MulAssign
    + DivAssign
    + Sum
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
    /// Tolerance on simplex weight sums.
    fn simplex_tol() -> Self;

    /// Feasibility/optimality tolerance of the LP pivoting.
    fn lp_tol() -> Self;

    /// Tolerance for saddle-point and equilibrium verification.
    fn saddle_tol() -> Self;

    /// Exact bit pattern, widened to 64 bits; used as a cache key.
    fn bit_pattern(self) -> u64;
}

impl Scalar for f64 {
    fn simplex_tol() -> Self {
        1e-12
    }
    fn lp_tol() -> Self {
        1e-9
    }
    fn saddle_tol() -> Self {
        1e-9
    }
    fn bit_pattern(self) -> u64 {
        self.to_bits()
    }
}

impl Scalar for f32 {
    fn simplex_tol() -> Self {
        1e-5
    }
    fn lp_tol() -> Self {
        1e-4
    }
    fn saddle_tol() -> Self {
        1e-4
    }
    fn bit_pattern(self) -> u64 {
        u64::from(self.to_bits())
    }
}

/// Converts an `f64` literal into the working scalar.
pub(crate) fn real<S: Scalar>(x: f64) -> S {
    S::from_f64(x).expect("finite literal converts to scalar")
}
