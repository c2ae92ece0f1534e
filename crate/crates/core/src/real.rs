use num_traits::{Float, FloatConst, FromPrimitive, NumAssign, ToPrimitive};
use std::fmt;
use std::iter::Sum;

/// Floating scalar the analytic layer is generic over: f32 or f64.
///
/// Everything here comes from `num_traits`; the extra bounds (`Sum`, `Send`,
/// `Sync`) let sums run under rayon with deterministic chunked reductions.
pub trait Real:
    Float
    + FloatConst
    + FromPrimitive
    + ToPrimitive
    + NumAssign
    + Sum<Self>
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion from f64; literals enter generic code through this.
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("f64 conversion")
    }
    /// Conversion from an unsigned integer (prime values, counts).
    fn of_u64(n: u64) -> Self {
        Self::from_u64(n).expect("u64 conversion")
    }
    fn to_f64_lossy(self) -> f64 {
        self.to_f64().expect("to f64")
    }
}

impl Real for f32 {}
impl Real for f64 {}
