use std::fmt::Debug;
use std::ops::{Add, Neg, Sub};

use factorum_core::Rational;
use num_bigint::BigInt;
use num_traits::Zero;

/// Arithmetic the blossom solver needs from its weight type.
///
/// Vertex duals are stored doubled so that all intermediate quantities stay
/// in the same ring as the weights. `halve_exact` is only ever applied to
/// values that are provably even in the integer case (the slack of an edge
/// between two S-blossoms); implementations must panic on a violation rather
/// than round.
pub trait BlossomWeight:
    Clone + Ord + Debug + Zero + Add<Output = Self> + Sub<Output = Self> + Neg<Output = Self>
{
    fn double(&self) -> Self;
    fn halve_exact(&self) -> Self;
    fn to_rational(&self) -> Rational;
}

impl BlossomWeight for i128 {
    fn double(&self) -> Self {
        self.checked_mul(2).expect("matching weight overflow")
    }

    fn halve_exact(&self) -> Self {
        // Even by the S-S slack parity invariant of the primal-dual method.
        assert!(self % 2 == 0, "odd slack where an even one is guaranteed");
        self / 2
    }

    fn to_rational(&self) -> Rational {
        Rational::from_integer(BigInt::from(*self))
    }
}

impl BlossomWeight for Rational {
    fn double(&self) -> Self {
        self + self
    }

    fn halve_exact(&self) -> Self {
        self / Rational::from_integer(BigInt::from(2))
    }

    fn to_rational(&self) -> Rational {
        self.clone()
    }
}
