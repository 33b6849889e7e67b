use std::fmt;

use super::{forward_std_ops, Domain, Field, Rational, Scalar, ScalarError};

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Element of F_p for a prime p > 3.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeFieldElement {
    value: u32,
    modulus: u32,
}

impl PrimeFieldElement {
    pub fn new(value: i64, modulus: u32) -> Result<Self, ScalarError> {
        if modulus <= 3 || !is_prime(u64::from(modulus)) {
            return Err(ScalarError::BadModulus(u64::from(modulus)));
        }
        Ok(Self::reduce(value, modulus))
    }

    fn reduce(value: i64, modulus: u32) -> Self {
        PrimeFieldElement {
            value: value.rem_euclid(i64::from(modulus)) as u32,
            modulus,
        }
    }

    pub fn value(self) -> u32 {
        self.value
    }

    pub fn modulus(self) -> u32 {
        self.modulus
    }

    /// All elements of the field in increasing order.
    pub fn elements(modulus: u32) -> Result<Vec<Self>, ScalarError> {
        let zero = Self::new(0, modulus)?;
        Ok((0..modulus).map(|v| zero.int_like(i64::from(v))).collect())
    }

    fn check(self, rhs: Self) {
        assert_eq!(
            self.modulus, rhs.modulus,
            "prime field moduli differ: {} vs {}",
            self.modulus, rhs.modulus
        );
    }

    fn pow_u64(self, mut exp: u64) -> Self {
        let m = u64::from(self.modulus);
        let mut acc = 1u64;
        let mut base = u64::from(self.value);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc * base % m;
            }
            base = base * base % m;
            exp >>= 1;
        }
        PrimeFieldElement {
            value: acc as u32,
            modulus: self.modulus,
        }
    }
}

impl Scalar for PrimeFieldElement {
    fn zero_like(&self) -> Self {
        Self::reduce(0, self.modulus)
    }
    fn one_like(&self) -> Self {
        Self::reduce(1, self.modulus)
    }
    fn int_like(&self, value: i64) -> Self {
        Self::reduce(value, self.modulus)
    }
    fn rational_like(&self, value: &Rational) -> Option<Self> {
        value.mod_prime(self.modulus).map(|v| PrimeFieldElement {
            value: v,
            modulus: self.modulus,
        })
    }
    fn is_zero(&self) -> bool {
        self.value == 0
    }
    fn add(&self, rhs: &Self) -> Self {
        self.check(*rhs);
        Self::reduce(i64::from(self.value) + i64::from(rhs.value), self.modulus)
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.check(*rhs);
        Self::reduce(i64::from(self.value) - i64::from(rhs.value), self.modulus)
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.check(*rhs);
        Self::reduce(i64::from(self.value) * i64::from(rhs.value), self.modulus)
    }
    fn neg(&self) -> Self {
        Self::reduce(-i64::from(self.value), self.modulus)
    }
    fn unit_inverse(&self) -> Option<Self> {
        if self.value == 0 {
            None
        } else {
            Some(self.pow_u64(u64::from(self.modulus) - 2))
        }
    }
}

impl Field for PrimeFieldElement {}

impl Domain for PrimeFieldElement {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        self.div(divisor)
    }
}

forward_std_ops!(PrimeFieldElement);

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn prime_field_arith(
    a: PrimeFieldElement,
    b: PrimeFieldElement,
    op: FieldOp,
) -> Result<PrimeFieldElement, ScalarError> {
    if a.modulus != b.modulus {
        return Err(ScalarError::ModulusMismatch(a.modulus, b.modulus));
    }
    Ok(match op {
        FieldOp::Add => a.add(&b),
        FieldOp::Sub => a.sub(&b),
        FieldOp::Mul => a.mul(&b),
        FieldOp::Div => a.div(&b).ok_or(ScalarError::DivisionByZero)?,
    })
}

impl fmt::Display for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl fmt::Debug for PrimeFieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}
