//! Scalar abstraction for edge weights and path lengths.
//!
//! All oracle math is written against [`Scalar`], so the whole stack works
//! with `f32` or `f64` weights. Concrete aliases live at the crate root.

use std::fmt::{Debug, Display};
use std::iter::Sum;
use std::ops::AddAssign;

use num_traits::{Float, FromPrimitive, ToPrimitive};
use serde::de::DeserializeOwned;
use serde::Serialize;

/// Weight type for graphs and path lengths.
///
/// Lengths are accumulated left-to-right along a walk, so for weights that
/// are exactly representable (unit and small-integer weights) all distance
/// comparisons are exact.
pub trait Scalar:
    Float
    + FromPrimitive
    + ToPrimitive
    + AddAssign
    + Sum
    + Debug
    + Display
    + Default
    + Serialize
    + DeserializeOwned
    + Send
    + Sync
    + 'static
{
    /// Lossy conversion used only for reporting and bound checks.
    fn as_f64(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
