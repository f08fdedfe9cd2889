use std::fmt::Debug;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Commutative ring with identity, as needed by the dense matrix routines.
pub trait Ring: Clone + PartialEq + Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
}

/// Euclidean domain with a canonical associate for every nonzero element.
pub trait EuclideanRing: Ring {
    type Size: Ord;

    /// Euclidean size; `div_rem` must produce remainders of strictly smaller size.
    fn size(&self) -> Self::Size;
    fn div_rem(&self, divisor: &Self) -> (Self, Self);
    fn is_unit(&self) -> bool;
    /// Returns `(u, u⁻¹)` with `u` a unit such that `self * u` is the canonical associate.
    fn normalizer(&self) -> (Self, Self);

    fn divides(&self, other: &Self) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }
}

impl Ring for BigInt {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}

impl EuclideanRing for BigInt {
    type Size = num_bigint::BigUint;

    fn size(&self) -> Self::Size {
        self.magnitude().clone()
    }

    // Floor division keeps remainders small enough; any |r| < |d| works.
    fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let (q, r) = Integer::div_mod_floor(self, divisor);
        // prefer the remainder of least absolute value
        let alt = &r - divisor;
        if alt.magnitude() < r.magnitude() {
            (q + 1, alt)
        } else {
            (q, r)
        }
    }

    fn is_unit(&self) -> bool {
        self.magnitude() == &num_bigint::BigUint::one()
    }

    fn normalizer(&self) -> (Self, Self) {
        if self.is_negative() {
            (BigInt::from(-1), BigInt::from(-1))
        } else {
            (BigInt::from(1), BigInt::from(1))
        }
    }
}

impl Ring for BigRational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
}
