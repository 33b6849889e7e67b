use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{forward_std_ops, Constant, Domain, Field, Scalar};

/// Arbitrary-precision rational number, always in lowest terms with a
/// positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Rational(BigRational);

impl Rational {
    pub fn new(numer: i64, denom: i64) -> Self {
        assert!(denom != 0, "zero denominator");
        Rational(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn from_big(numer: BigInt, denom: BigInt) -> Option<Self> {
        if denom.is_zero() {
            None
        } else {
            Some(Rational(BigRational::new(numer, denom)))
        }
    }

    pub fn integer(v: i64) -> Self {
        Rational(BigRational::from_integer(BigInt::from(v)))
    }

    pub fn numer(&self) -> &BigInt {
        self.0.numer()
    }

    pub fn denom(&self) -> &BigInt {
        self.0.denom()
    }

    pub fn is_integer(&self) -> bool {
        self.0.is_integer()
    }

    pub fn is_negative(&self) -> bool {
        self.0.is_negative()
    }

    pub fn abs(&self) -> Self {
        Rational(self.0.abs())
    }

    /// Integer power, negative exponents allowed for nonzero values.
    pub fn powi(&self, exp: i32) -> Option<Self> {
        if exp >= 0 {
            Some(self.pow(exp as u32))
        } else {
            self.unit_inverse().map(|inv| inv.pow(exp.unsigned_abs()))
        }
    }

    /// Residue modulo `p`, `None` when the denominator is divisible by `p`.
    pub fn mod_prime(&self, p: u32) -> Option<u32> {
        let p_big = BigInt::from(p);
        let num = ((self.numer() % &p_big) + &p_big) % &p_big;
        let den = ((self.denom() % &p_big) + &p_big) % &p_big;
        let num: u64 = num.try_into().ok()?;
        let den: u64 = den.try_into().ok()?;
        if den == 0 {
            return None;
        }
        let inv = mod_pow(den, u64::from(p) - 2, u64::from(p));
        Some(((num * inv) % u64::from(p)) as u32)
    }
}

fn mod_pow(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = acc * base % m;
        }
        base = base * base % m;
        exp >>= 1;
    }
    acc
}

impl Scalar for Rational {
    fn zero_like(&self) -> Self {
        Rational(BigRational::zero())
    }
    fn one_like(&self) -> Self {
        Rational(BigRational::one())
    }
    fn int_like(&self, value: i64) -> Self {
        Rational::integer(value)
    }
    fn rational_like(&self, value: &Rational) -> Option<Self> {
        Some(value.clone())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        Rational(&self.0 + &rhs.0)
    }
    fn sub(&self, rhs: &Self) -> Self {
        Rational(&self.0 - &rhs.0)
    }
    fn mul(&self, rhs: &Self) -> Self {
        Rational(&self.0 * &rhs.0)
    }
    fn neg(&self) -> Self {
        Rational(-&self.0)
    }
    fn unit_inverse(&self) -> Option<Self> {
        if self.0.is_zero() {
            None
        } else {
            Some(Rational(self.0.recip()))
        }
    }
    fn is_one(&self) -> bool {
        self.0.is_one()
    }
}

impl Field for Rational {}

impl Domain for Rational {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        self.div(divisor)
    }
}

impl Constant for Rational {
    fn zero() -> Self {
        Rational(BigRational::zero())
    }
    fn one() -> Self {
        Rational(BigRational::one())
    }
}

forward_std_ops!(Rational);

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::integer(v)
    }
}

impl FromStr for Rational {
    type Err = String;

    /// Parses `"3"`, `"-7"` or `"-1/2"`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let (num, den) = match s.split_once('/') {
            Some((n, d)) => (n.trim(), d.trim()),
            None => (s, "1"),
        };
        let num: BigInt = num.parse().map_err(|_| format!("invalid integer `{num}`"))?;
        let den: BigInt = den.parse().map_err(|_| format!("invalid integer `{den}`"))?;
        Rational::from_big(num, den).ok_or_else(|| "zero denominator".to_string())
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_integer() {
            write!(f, "{}", self.0.numer())
        } else {
            write!(f, "{}/{}", self.0.numer(), self.0.denom())
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lowest_terms_and_sign() {
        let r = Rational::new(6, -4);
        assert_eq!(r.numer(), &BigInt::from(-3));
        assert_eq!(r.denom(), &BigInt::from(2));
        assert_eq!(Rational::new(0, 5), Rational::zero());
        assert_eq!(Rational::zero().denom(), &BigInt::from(1));
    }

    #[test]
    fn parse_and_render() {
        let r: Rational = "-1/2".parse().unwrap();
        assert_eq!(r.to_string(), "-1/2");
        assert_eq!("4".parse::<Rational>().unwrap().to_string(), "4");
        assert!("1/0".parse::<Rational>().is_err());
    }

    #[test]
    fn residues() {
        // 3/4 mod 7: 4 * 6 = 24 = 3 (mod 7)
        assert_eq!(Rational::new(3, 4).mod_prime(7), Some(6));
        assert_eq!(Rational::new(-1, 2).mod_prime(5), Some(2));
        assert_eq!(Rational::new(1, 5).mod_prime(5), None);
    }
}
