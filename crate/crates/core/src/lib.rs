//! Exact subgroup-distortion toolkit.

pub mod cayley;
pub mod distortion;
pub mod error;
pub mod exactness;
pub mod group;
pub mod length;
pub mod qc;
pub mod rpath;
pub mod scalar;
pub mod suite;

pub use error::{Error, Result};
pub use exactness::Exactness;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

use num_bigint::BigInt;
use num_rational::BigRational;

pub type Heisenberg = group::HeisenbergGroup<i64>;
pub type HeisenbergBig = group::HeisenbergGroup<BigInt>;
pub type FreeAbelian = group::FreeAbelianGroup<i64>;

pub type IntMetricSpace = rpath::FiniteMetricSpace<u64>;
pub type RationalMetricSpace = rpath::FiniteMetricSpace<BigRational>;
pub type RealMetricSpace = rpath::FiniteMetricSpace<f64>;
