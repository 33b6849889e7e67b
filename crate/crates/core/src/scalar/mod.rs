//! Exact scalar tower: rationals, multivariate Laurent polynomials, rational
//! functions over them, and small prime fields.
//!
//! Every matrix entry in the crate lives in one of these domains. The
//! [`Scalar`] trait is the ring interface that the generic linear algebra and
//! group code is written against; [`Field`] marks domains where every nonzero
//! element is invertible and [`Domain`] adds exact division for fraction-free
//! elimination.

mod laurent;
mod prime_field;
mod ratfun;
mod rational;

use std::fmt;

pub use laurent::{intern, LaurentPoly, Monomial};
pub use prime_field::{is_prime, prime_field_arith, FieldOp, PrimeFieldElement};
pub use ratfun::{ratfun_eq, RationalFunction};
pub use rational::Rational;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ScalarError {
    #[error("variable `{0}` appears with a negative exponent but is assigned 0")]
    ZeroAtNegativeExponent(String),
    #[error("variable `{0}` has no assigned value")]
    UnassignedVariable(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("prime field moduli differ: {0} vs {1}")]
    ModulusMismatch(u32, u32),
    #[error("modulus {0} is not a prime greater than 3")]
    BadModulus(u64),
    #[error("denominator evaluates to zero")]
    PoleInEvaluation,
    #[error("variable `{0}` appears with a negative exponent but its value is not a unit")]
    NonUnitAtNegativeExponent(String),
    #[error("constant {0} has no image in the target ring")]
    ConstantNotRepresentable(String),
}

/// Commutative ring with identity and exact, canonical equality.
///
/// Constants that need a context (the modulus of a prime field) are produced
/// from an existing element with the `*_like` constructors.
pub trait Scalar: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    /// Whether equal values always render to the same text.
    const CANONICAL_DISPLAY: bool = true;

    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn int_like(&self, value: i64) -> Self;
    /// Image of a rational constant, `None` when it does not exist (a
    /// denominator divisible by the characteristic).
    fn rational_like(&self, value: &Rational) -> Option<Self>;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Inverse when `self` is a unit of the ring.
    fn unit_inverse(&self) -> Option<Self>;

    fn is_one(&self) -> bool {
        *self == self.one_like()
    }

    fn pow(&self, exp: u32) -> Self {
        let mut acc = self.one_like();
        let mut base = self.clone();
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

/// A [`Scalar`] whose nonzero elements are all units.
pub trait Field: Scalar {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            self.unit_inverse()
        }
    }

    fn div(&self, rhs: &Self) -> Option<Self> {
        rhs.inv().map(|r| self.mul(&r))
    }
}

/// Integral domain with exact division (`None` when the quotient does not
/// exist in the ring).
pub trait Domain: Scalar {
    fn exact_div(&self, divisor: &Self) -> Option<Self>;
}

/// Scalars with context-free constants.
pub trait Constant: Scalar {
    fn zero() -> Self;
    fn one() -> Self;
    fn from_int(value: i64) -> Self {
        Self::one().int_like(value)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RingOp {
    Add,
    Sub,
    Mul,
}

pub fn laurent_arith(a: &LaurentPoly, b: &LaurentPoly, op: RingOp) -> LaurentPoly {
    match op {
        RingOp::Add => a.add(b),
        RingOp::Sub => a.sub(b),
        RingOp::Mul => a.mul(b),
    }
}

macro_rules! forward_std_ops {
    ($ty:ty) => {
        impl std::ops::Add for $ty {
            type Output = $ty;
            fn add(self, rhs: $ty) -> $ty {
                $crate::scalar::Scalar::add(&self, &rhs)
            }
        }
        impl<'a> std::ops::Add<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn add(self, rhs: &'a $ty) -> $ty {
                $crate::scalar::Scalar::add(self, rhs)
            }
        }
        impl std::ops::Sub for $ty {
            type Output = $ty;
            fn sub(self, rhs: $ty) -> $ty {
                $crate::scalar::Scalar::sub(&self, &rhs)
            }
        }
        impl<'a> std::ops::Sub<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn sub(self, rhs: &'a $ty) -> $ty {
                $crate::scalar::Scalar::sub(self, rhs)
            }
        }
        impl std::ops::Mul for $ty {
            type Output = $ty;
            fn mul(self, rhs: $ty) -> $ty {
                $crate::scalar::Scalar::mul(&self, &rhs)
            }
        }
        impl<'a> std::ops::Mul<&'a $ty> for &'a $ty {
            type Output = $ty;
            fn mul(self, rhs: &'a $ty) -> $ty {
                $crate::scalar::Scalar::mul(self, rhs)
            }
        }
        impl std::ops::Neg for $ty {
            type Output = $ty;
            fn neg(self) -> $ty {
                $crate::scalar::Scalar::neg(&self)
            }
        }
    };
}
pub(crate) use forward_std_ops;
