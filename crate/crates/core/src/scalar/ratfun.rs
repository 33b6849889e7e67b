use std::collections::HashMap;
use std::fmt;

use super::{
    forward_std_ops, Constant, Domain, Field, LaurentPoly, Rational, Scalar, ScalarError,
};

/// Quotient of two Laurent polynomials.
///
/// No GCD normalization is attempted. Monomial denominators are folded into
/// the numerator (they are units) and exact quotients are collapsed, but in
/// general two equal functions can have different representations;
/// equality is decided by cross-multiplication.
#[derive(Clone)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self, ScalarError> {
        if den.is_zero() {
            return Err(ScalarError::DivisionByZero);
        }
        Ok(RationalFunction { num, den }.normalized())
    }

    pub fn var(name: &str) -> Self {
        LaurentPoly::var(name, 1).into()
    }

    pub fn constant(c: Rational) -> Self {
        LaurentPoly::constant(c).into()
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    /// The function as a Laurent polynomial, when its stored denominator is 1.
    pub fn as_laurent(&self) -> Option<&LaurentPoly> {
        self.den.is_one().then_some(&self.num)
    }

    fn normalized(self) -> Self {
        if self.num.is_zero() {
            return RationalFunction::zero();
        }
        if self.den.is_one() {
            return self;
        }
        if let Some(inv) = self.den.unit_inverse() {
            return RationalFunction {
                num: self.num.mul(&inv),
                den: LaurentPoly::one(),
            };
        }
        if let Some(q) = self.num.exact_div(&self.den) {
            return RationalFunction {
                num: q,
                den: LaurentPoly::one(),
            };
        }
        self
    }

    pub fn eval(&self, assignment: &HashMap<String, Rational>) -> Result<Rational, ScalarError> {
        self.eval_in(&Rational::one(), |v| assignment.get(v).cloned())
    }

    /// Evaluates numerator and denominator in a field and divides.
    pub fn eval_in<F: Field>(
        &self,
        proto: &F,
        lookup: impl Fn(&str) -> Option<F>,
    ) -> Result<F, ScalarError> {
        let n = self.num.eval_in(proto, &lookup)?;
        let d = self.den.eval_in(proto, &lookup)?;
        n.div(&d).ok_or(ScalarError::PoleInEvaluation)
    }

    pub fn substitute(
        &self,
        map: &HashMap<&str, LaurentPoly>,
    ) -> Result<RationalFunction, ScalarError> {
        RationalFunction::new(self.num.substitute(map)?, self.den.substitute(map)?)
    }
}

/// `f == g` iff `f.num * g.den == g.num * f.den`.
pub fn ratfun_eq(f: &RationalFunction, g: &RationalFunction) -> bool {
    f.num.mul(&g.den) == g.num.mul(&f.den)
}

impl PartialEq for RationalFunction {
    fn eq(&self, other: &Self) -> bool {
        ratfun_eq(self, other)
    }
}

impl Scalar for RationalFunction {
    const CANONICAL_DISPLAY: bool = false;

    fn zero_like(&self) -> Self {
        RationalFunction::zero()
    }
    fn one_like(&self) -> Self {
        RationalFunction::one()
    }
    fn int_like(&self, value: i64) -> Self {
        RationalFunction::constant(Rational::integer(value))
    }
    fn rational_like(&self, value: &Rational) -> Option<Self> {
        Some(RationalFunction::constant(value.clone()))
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, rhs: &Self) -> Self {
        if self.den == rhs.den {
            return RationalFunction {
                num: self.num.add(&rhs.num),
                den: self.den.clone(),
            }
            .normalized();
        }
        RationalFunction {
            num: self.num.mul(&rhs.den).add(&rhs.num.mul(&self.den)),
            den: self.den.mul(&rhs.den),
        }
        .normalized()
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }
    fn mul(&self, rhs: &Self) -> Self {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction {
            num: self.num.mul(&rhs.num),
            den: self.den.mul(&rhs.den),
        }
        .normalized()
    }
    fn neg(&self) -> Self {
        RationalFunction {
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
    fn unit_inverse(&self) -> Option<Self> {
        if self.num.is_zero() {
            None
        } else {
            Some(
                RationalFunction {
                    num: self.den.clone(),
                    den: self.num.clone(),
                }
                .normalized(),
            )
        }
    }
    fn is_one(&self) -> bool {
        self.num == self.den
    }
}

impl Field for RationalFunction {}

impl Domain for RationalFunction {
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        self.div(divisor)
    }
}

impl Constant for RationalFunction {
    fn zero() -> Self {
        RationalFunction {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }
    fn one() -> Self {
        RationalFunction {
            num: LaurentPoly::one(),
            den: LaurentPoly::one(),
        }
    }
}

forward_std_ops!(RationalFunction);

impl From<LaurentPoly> for RationalFunction {
    fn from(num: LaurentPoly) -> Self {
        RationalFunction {
            num,
            den: LaurentPoly::one(),
        }
    }
}

impl From<Rational> for RationalFunction {
    fn from(c: Rational) -> Self {
        RationalFunction::constant(c)
    }
}

impl From<i64> for RationalFunction {
    fn from(c: i64) -> Self {
        RationalFunction::constant(Rational::integer(c))
    }
}

fn wrap(p: &LaurentPoly) -> String {
    if p.num_terms() > 1 {
        format!("({p})")
    } else {
        p.to_string()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", wrap(&self.num), wrap(&self.den))
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(name: &str) -> RationalFunction {
        RationalFunction::var(name)
    }

    fn k(c: i64) -> RationalFunction {
        RationalFunction::from(c)
    }

    #[test]
    fn sign_symmetry() {
        let b = v("b");
        let e = v("e");
        let lhs = b.div(&(k(1) - e.clone())).unwrap();
        let rhs = b.neg().div(&(e - k(1))).unwrap();
        assert!(ratfun_eq(&lhs, &rhs));
    }

    #[test]
    fn multiplicative_inverse() {
        let b = v("b");
        let lhs = k(3).div(&(k(4) * b.clone())).unwrap();
        let rhs = (k(4) * b).div(&k(3)).unwrap();
        assert!(ratfun_eq(&(lhs * rhs), &k(1)));
    }

    #[test]
    fn distinct_variables() {
        let lhs = v("b").inv().unwrap();
        let rhs = v("x").inv().unwrap();
        assert!(!ratfun_eq(&lhs, &rhs));
    }

    #[test]
    fn zero_denominator_rejected() {
        assert_eq!(
            RationalFunction::new(LaurentPoly::one(), LaurentPoly::zero()).err(),
            Some(ScalarError::DivisionByZero)
        );
    }

    #[test]
    fn monomial_denominators_fold() {
        let r = v("b").div(&v("x")).unwrap();
        assert!(r.as_laurent().is_some());
        assert_eq!(r.to_string(), "b*x^-1");
    }

    #[test]
    fn evaluation_with_pole() {
        let e = v("e");
        let f = k(1).div(&(e - k(1))).unwrap();
        let mut at = HashMap::new();
        at.insert("e".to_string(), Rational::integer(3));
        assert_eq!(f.eval(&at).unwrap(), Rational::new(1, 2));
        at.insert("e".to_string(), Rational::integer(1));
        assert_eq!(f.eval(&at), Err(ScalarError::PoleInEvaluation));
    }
}
