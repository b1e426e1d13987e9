//! Scalar abstraction over the exact cyclotomic backend and complex doubles.

use super::cyc::ExactCyc8;
use num_complex::Complex64 as C64;

/// Field scalar usable as a matrix entry. Implemented by [`ExactCyc8`]
/// (exact backend) and [`C64`] (float backend).
pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(n: i64) -> Self;
    /// The imaginary unit.
    fn i() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn div(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Complex conjugate.
    fn conj(&self) -> Self;
    fn is_zero(&self) -> bool;
    /// Embedding into complex doubles (identity for the float backend).
    fn to_c64(&self) -> C64;
}

impl Scalar for ExactCyc8 {
    fn zero() -> Self {
        ExactCyc8::zero()
    }
    fn one() -> Self {
        ExactCyc8::one()
    }
    fn from_int(n: i64) -> Self {
        ExactCyc8::from_int(n as i128)
    }
    fn i() -> Self {
        ExactCyc8::i()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        ExactCyc8::conj(self)
    }
    fn is_zero(&self) -> bool {
        ExactCyc8::is_zero(self)
    }
    fn to_c64(&self) -> C64 {
        ExactCyc8::to_c64(self)
    }
}

impl Scalar for C64 {
    fn zero() -> Self {
        C64::new(0.0, 0.0)
    }
    fn one() -> Self {
        C64::new(1.0, 0.0)
    }
    fn from_int(n: i64) -> Self {
        C64::new(n as f64, 0.0)
    }
    fn i() -> Self {
        C64::new(0.0, 1.0)
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
    fn neg(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        C64::conj(self)
    }
    fn is_zero(&self) -> bool {
        self.re == 0.0 && self.im == 0.0
    }
    fn to_c64(&self) -> C64 {
        *self
    }
}
