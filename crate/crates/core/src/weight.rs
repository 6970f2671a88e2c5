//! Vertex and fip costs.
//!
//! Costs are non-negative integers. Everything that sums or multiplies costs
//! is generic over [`Weight`], so callers can pick the width that fits their
//! instance; the crate root exports `u64` aliases for the common case.

use std::fmt::{Debug, Display};
use std::iter::Sum;

use num_traits::{CheckedAdd, CheckedMul, PrimInt, Unsigned};

use crate::error::{Error, Result};

pub trait Weight:
    PrimInt + Unsigned + CheckedAdd + CheckedMul + Sum + Debug + Display + Send + Sync + 'static
{
    /// Widen to `u128` for reporting.
    fn to_u128(self) -> u128 {
        num_traits::ToPrimitive::to_u128(&self).expect("unsigned fits u128")
    }

    /// Convert a vertex count into a weight.
    fn from_count(n: usize) -> Result<Self> {
        <Self as num_traits::NumCast>::from(n).ok_or(Error::CostOverflow)
    }
}

impl<T> Weight for T where
    T: PrimInt + Unsigned + CheckedAdd + CheckedMul + Sum + Debug + Display + Send + Sync + 'static
{
}

/// `c(u) * c(v)` with overflow detection.
pub fn pair_cost<W: Weight>(cu: W, cv: W) -> Result<W> {
    cu.checked_mul(&cv).ok_or(Error::CostOverflow)
}

pub(crate) fn add_cost<W: Weight>(acc: W, x: W) -> Result<W> {
    acc.checked_add(&x).ok_or(Error::CostOverflow)
}
