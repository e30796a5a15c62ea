use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumCast};

/// Floating-point scalar accepted by the real-valued parts of the crate.
pub trait Scalar:
    Float + FloatConst + FromPrimitive + NumCast + Debug + Display + Default + Send + Sync + 'static
{
    /// Lossy conversion from any primitive number; panics only on NaN-producing input.
    #[inline]
    fn of<T: num_traits::ToPrimitive>(value: T) -> Self {
        <Self as NumCast>::from(value).expect("value representable as a float")
    }
}

impl<T> Scalar for T where
    T: Float + FloatConst + FromPrimitive + NumCast + Debug + Display + Default + Send + Sync + 'static
{
}
