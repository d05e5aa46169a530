//! Scalar bounds shared by the generic models and metric spaces.

use std::fmt::{Debug, Display};
use std::hash::Hash;
use std::ops::Add;

use num_traits::{FromPrimitive, Signed, ToPrimitive, Zero};

/// Exact signed integers usable as matrix or vector entries of a group model.
///
/// Implemented for every primitive signed integer and for `BigInt`.
pub trait ExactInt:
    'static
    + Clone
    + Eq
    + Ord
    + Hash
    + Debug
    + Display
    + Send
    + Sync
    + num_integer::Integer
    + Signed
    + FromPrimitive
    + ToPrimitive
{
}

impl<T> ExactInt for T where
    T: 'static
        + Clone
        + Eq
        + Ord
        + Hash
        + Debug
        + Display
        + Send
        + Sync
        + num_integer::Integer
        + Signed
        + FromPrimitive
        + ToPrimitive
{
}

/// Distance values of a finite metric space.
///
/// Only addition and comparison are needed: r-path searches compare each
/// distance against a threshold and never divide.
pub trait MetricScalar: Clone + PartialOrd + Debug + Display + Send + Sync + Zero + Add<Output = Self> {}

impl<T> MetricScalar for T where T: Clone + PartialOrd + Debug + Display + Send + Sync + Zero + Add<Output = T> {}
