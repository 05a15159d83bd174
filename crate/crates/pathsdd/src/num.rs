//! Scalar abstraction for the weighted query layer.

use num_traits::{Float, FromPrimitive};
use std::fmt::Debug;
use std::iter::Sum;

/// Floating-point scalar used by weighted computations: `f32` or `f64`.
pub trait Real: Float + FromPrimitive + Sum + Debug + 'static {}

impl Real for f32 {}
impl Real for f64 {}

/// Numerically stable `log(1 + e^x)`.
pub(crate) fn softplus<T: Real>(x: T) -> T {
    if x > T::zero() {
        x + (-x).exp().ln_1p()
    } else {
        x.exp().ln_1p()
    }
}

/// Numerically stable logistic function `1 / (1 + e^-x)`.
pub(crate) fn sigmoid<T: Real>(x: T) -> T {
    if x >= T::zero() {
        T::one() / (T::one() + (-x).exp())
    } else {
        let e = x.exp();
        e / (T::one() + e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn softplus_matches_naive() {
        for &x in &[-30.0f64, -1.0, 0.0, 0.5, 4.0, 30.0] {
            let naive = (1.0 + x.exp()).ln();
            assert!((softplus(x) - naive).abs() < 1e-12);
        }
        // no overflow for large inputs
        assert!((softplus(800.0f64) - 800.0).abs() < 1e-9);
        assert!(softplus(-800.0f64) >= 0.0);
    }

    #[test]
    fn sigmoid_symmetry() {
        for &x in &[-5.0f64, -0.3, 0.0, 1.7, 9.0] {
            assert!((sigmoid(x) + sigmoid(-x) - 1.0).abs() < 1e-15);
        }
        assert_eq!(sigmoid(0.0f64), 0.5);
    }
}
