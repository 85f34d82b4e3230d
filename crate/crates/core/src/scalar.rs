use std::fmt::{Debug, Display, LowerExp};

use num_traits::Float;

/// Real scalar underlying all complex arithmetic in this crate: `f32` or `f64`.
///
/// Every kernel is generic over this trait; the crate root pins `f64` aliases
/// for the concrete types. The default tolerances quoted throughout the API
/// documentation are calibrated for `f64`; callers instantiating `f32` should
/// pass their own.
pub trait Scalar: Float + Debug + Display + LowerExp + Send + Sync + 'static {}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Converts an `f64` constant (tolerances, channel parameters) into `T`.
pub(crate) fn real<T: Scalar>(x: f64) -> T {
    T::from(x).expect("f64 constant representable in scalar type")
}

/// Internal validation tolerance: the f64-calibrated base, floored at 100·ε
/// of the active scalar so lower-precision instantiations accept their own
/// roundoff. Identical to `base` at f64.
pub(crate) fn scaled_tol<T: Scalar>(base: f64) -> T {
    let floor = T::epsilon() * real::<T>(100.0);
    let b = real::<T>(base);
    if b > floor {
        b
    } else {
        floor
    }
}
