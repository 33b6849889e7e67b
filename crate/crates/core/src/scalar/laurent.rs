use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;
use std::sync::{Mutex, OnceLock};

use super::{forward_std_ops, Constant, Domain, Rational, Scalar, ScalarError};

static REGISTRY: OnceLock<Mutex<HashSet<&'static str>>> = OnceLock::new();

/// Interns a variable name in the process-wide registry shared by every
/// Laurent polynomial.
pub fn intern(name: &str) -> &'static str {
    let mut names = REGISTRY
        .get_or_init(|| Mutex::new(HashSet::new()))
        .lock()
        .expect("variable registry poisoned");
    if let Some(existing) = names.get(name) {
        return existing;
    }
    let leaked: &'static str = Box::leak(name.to_owned().into_boxed_str());
    names.insert(leaked);
    leaked
}

/// Laurent monomial: variables sorted by name, nonzero integer exponents.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Monomial(Vec<(&'static str, i32)>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(Vec::new())
    }

    pub fn var(name: &str, exp: i32) -> Self {
        if exp == 0 {
            Monomial::one()
        } else {
            Monomial(vec![(intern(name), exp)])
        }
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, i32)>) -> Self {
        pairs
            .into_iter()
            .fold(Monomial::one(), |acc, (v, e)| acc.mul(&Monomial::var(v, e)))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn degree(&self) -> i64 {
        self.0.iter().map(|&(_, e)| i64::from(e)).sum()
    }

    pub fn exponent(&self, var: &str) -> i32 {
        self.0
            .iter()
            .find(|(v, _)| *v == var)
            .map_or(0, |&(_, e)| e)
    }

    pub fn variables(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.0.iter().map(|&(v, _)| v)
    }

    pub fn pairs(&self) -> &[(&'static str, i32)] {
        &self.0
    }

    pub fn mul(&self, rhs: &Monomial) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + rhs.0.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() || j < rhs.0.len() {
            match (self.0.get(i), rhs.0.get(j)) {
                (Some(&(va, ea)), Some(&(vb, eb))) => match va.cmp(vb) {
                    Ordering::Less => {
                        out.push((va, ea));
                        i += 1;
                    }
                    Ordering::Greater => {
                        out.push((vb, eb));
                        j += 1;
                    }
                    Ordering::Equal => {
                        if ea + eb != 0 {
                            out.push((va, ea + eb));
                        }
                        i += 1;
                        j += 1;
                    }
                },
                (Some(&p), None) => {
                    out.push(p);
                    i += 1;
                }
                (None, Some(&p)) => {
                    out.push(p);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Monomial(out)
    }

    pub fn inverse(&self) -> Monomial {
        Monomial(self.0.iter().map(|&(v, e)| (v, -e)).collect())
    }

    fn render(&self) -> String {
        self.0
            .iter()
            .map(|&(v, e)| if e == 1 { v.to_string() } else { format!("{v}^{e}") })
            .collect::<Vec<_>>()
            .join("*")
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the exponent of the
    /// alphabetically first variable where the two differ.
    fn cmp(&self, other: &Self) -> Ordering {
        match self.degree().cmp(&other.degree()) {
            Ordering::Equal => {}
            ord => return ord,
        }
        let (mut i, mut j) = (0, 0);
        loop {
            let (va, ea) = self.0.get(i).copied().unwrap_or(("\u{10FFFF}", 0));
            let (vb, eb) = other.0.get(j).copied().unwrap_or(("\u{10FFFF}", 0));
            if i >= self.0.len() && j >= other.0.len() {
                return Ordering::Equal;
            }
            let (ea, eb) = match va.cmp(vb) {
                Ordering::Less => {
                    i += 1;
                    (ea, 0)
                }
                Ordering::Greater => {
                    j += 1;
                    (0, eb)
                }
                Ordering::Equal => {
                    i += 1;
                    j += 1;
                    (ea, eb)
                }
            };
            match ea.cmp(&eb) {
                Ordering::Equal => {}
                ord => return ord,
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            write!(f, "1")
        } else {
            write!(f, "{}", self.render())
        }
    }
}

/// Multivariate Laurent polynomial with rational coefficients.
///
/// Terms are kept in a `BTreeMap` keyed by graded-lex monomials with no zero
/// coefficients, so structural equality is ring equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    terms: BTreeMap<Monomial, Rational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn constant(c: Rational) -> Self {
        LaurentPoly::term(c, Monomial::one())
    }

    pub fn term(coeff: Rational, monomial: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !coeff.is_zero() {
            terms.insert(monomial, coeff);
        }
        LaurentPoly { terms }
    }

    /// `name^exp` with coefficient 1.
    pub fn var(name: &str, exp: i32) -> Self {
        LaurentPoly::term(Rational::one(), Monomial::var(name, exp))
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut out = LaurentPoly::zero();
        for (m, c) in terms {
            out.add_term(m, c);
        }
        out
    }

    fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(existing) => {
                *existing = existing.add(&c);
                if existing.is_zero() {
                    self.terms.remove(&m);
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    /// Terms in ascending graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &Rational)> {
        self.terms.iter().next_back()
    }

    /// The single term of a monomial polynomial.
    pub fn as_monomial(&self) -> Option<(&Monomial, &Rational)> {
        if self.terms.len() == 1 {
            self.terms.iter().next()
        } else {
            None
        }
    }

    pub fn as_constant(&self) -> Option<Rational> {
        match self.terms.len() {
            0 => Some(Rational::zero()),
            1 => self
                .terms
                .iter()
                .next()
                .filter(|(m, _)| m.is_one())
                .map(|(_, c)| c.clone()),
            _ => None,
        }
    }

    pub fn variables(&self) -> BTreeSet<&'static str> {
        self.terms.keys().flat_map(|m| m.variables()).collect()
    }

    pub fn scale(&self, c: &Rational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v.mul(c))).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> LaurentPoly {
        LaurentPoly {
            terms: self.terms.iter().map(|(k, v)| (k.mul(m), v.clone())).collect(),
        }
    }

    /// Substitutes a rational value for every variable.
    pub fn eval(&self, assignment: &HashMap<String, Rational>) -> Result<Rational, ScalarError> {
        self.eval_in(&Rational::one(), |v| assignment.get(v).cloned())
    }

    /// Ring homomorphism into any scalar domain, sending each variable to the
    /// value returned by `lookup`.
    pub fn eval_in<T: Scalar>(
        &self,
        proto: &T,
        lookup: impl Fn(&str) -> Option<T>,
    ) -> Result<T, ScalarError> {
        let mut cache: HashMap<&'static str, (T, Option<T>)> = HashMap::new();
        let mut acc = proto.zero_like();
        for (m, c) in &self.terms {
            let mut value = proto
                .rational_like(c)
                .ok_or_else(|| ScalarError::ConstantNotRepresentable(c.to_string()))?;
            for &(v, e) in m.pairs() {
                if !cache.contains_key(v) {
                    let x = lookup(v).ok_or_else(|| ScalarError::UnassignedVariable(v.into()))?;
                    let inv = x.unit_inverse();
                    cache.insert(v, (x, inv));
                }
                let (x, inv) = &cache[v];
                let factor = if e >= 0 {
                    x.pow(e as u32)
                } else {
                    match inv {
                        Some(inv) => inv.pow(e.unsigned_abs()),
                        None if x.is_zero() => {
                            return Err(ScalarError::ZeroAtNegativeExponent(v.into()))
                        }
                        None => return Err(ScalarError::NonUnitAtNegativeExponent(v.into())),
                    }
                };
                value = value.mul(&factor);
            }
            acc = acc.add(&value);
        }
        Ok(acc)
    }

    /// Replaces variables by Laurent polynomials (units where a negative
    /// exponent occurs); unmapped variables are kept.
    pub fn substitute(
        &self,
        map: &HashMap<&str, LaurentPoly>,
    ) -> Result<LaurentPoly, ScalarError> {
        self.eval_in(&LaurentPoly::one(), |v| {
            Some(map.get(v).cloned().unwrap_or_else(|| LaurentPoly::var(v, 1)))
        })
    }

    /// Per-variable exponent range over all terms (absent variables count as
    /// exponent 0 in every term).
    fn exponent_box(&self, vars: &BTreeSet<&'static str>) -> HashMap<&'static str, (i32, i32)> {
        vars.iter()
            .map(|&v| {
                let mut lo = i32::MAX;
                let mut hi = i32::MIN;
                for m in self.terms.keys() {
                    let e = m.exponent(v);
                    lo = lo.min(e);
                    hi = hi.max(e);
                }
                (v, (lo, hi))
            })
            .collect()
    }
}

impl Scalar for LaurentPoly {
    fn zero_like(&self) -> Self {
        LaurentPoly::zero()
    }
    fn one_like(&self) -> Self {
        LaurentPoly::constant(Rational::one())
    }
    fn int_like(&self, value: i64) -> Self {
        LaurentPoly::constant(Rational::integer(value))
    }
    fn rational_like(&self, value: &Rational) -> Option<Self> {
        Some(LaurentPoly::constant(value.clone()))
    }
    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
    fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
    fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), c.neg());
        }
        out
    }
    fn mul(&self, rhs: &Self) -> Self {
        let mut out = LaurentPoly::zero();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca.mul(cb));
            }
        }
        out
    }
    fn neg(&self) -> Self {
        LaurentPoly {
            terms: self.terms.iter().map(|(m, c)| (m.clone(), c.neg())).collect(),
        }
    }
    /// Units of a Laurent ring over a field are the nonzero monomials.
    fn unit_inverse(&self) -> Option<Self> {
        let (m, c) = self.as_monomial()?;
        Some(LaurentPoly::term(c.unit_inverse()?, m.inverse()))
    }
    fn is_one(&self) -> bool {
        self.as_monomial()
            .is_some_and(|(m, c)| m.is_one() && c.is_one())
    }
}

impl Domain for LaurentPoly {
    /// Multivariate exact division by repeated leading-term elimination.
    ///
    /// The quotient of an exact division has its exponent of each variable
    /// inside the box `[lo(a) - lo(d), hi(a) - hi(d)]`; a trial quotient term
    /// outside that box proves non-divisibility, which bounds the loop.
    fn exact_div(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(LaurentPoly::zero());
        }
        if let Some((m, c)) = divisor.as_monomial() {
            let inv = c.unit_inverse()?;
            return Some(self.mul_monomial(&m.inverse()).scale(&inv));
        }
        let mut vars = self.variables();
        vars.extend(divisor.variables());
        let abox = self.exponent_box(&vars);
        let dbox = divisor.exponent_box(&vars);
        let bounds: HashMap<&'static str, (i32, i32)> = vars
            .iter()
            .map(|&v| (v, (abox[v].0 - dbox[v].0, abox[v].1 - dbox[v].1)))
            .collect();
        let (dm, dc) = divisor.leading_term()?;
        let dc_inv = dc.unit_inverse()?;
        let mut remainder = self.clone();
        let mut quotient = LaurentPoly::zero();
        while let Some((rm, rc)) = remainder.leading_term() {
            let qm = rm.mul(&dm.inverse());
            let in_box = vars.iter().all(|&v| {
                let e = qm.exponent(v);
                let (lo, hi) = bounds[v];
                lo <= e && e <= hi
            });
            if !in_box {
                return None;
            }
            let qc = rc.mul(&dc_inv);
            let step = LaurentPoly::term(qc.clone(), qm.clone());
            remainder = remainder.sub(&divisor.mul(&step));
            quotient.add_term(qm, qc);
        }
        Some(quotient)
    }
}

impl Constant for LaurentPoly {
    fn zero() -> Self {
        LaurentPoly::zero()
    }
    fn one() -> Self {
        LaurentPoly::constant(Rational::one())
    }
}

forward_std_ops!(LaurentPoly);

impl From<Rational> for LaurentPoly {
    fn from(c: Rational) -> Self {
        LaurentPoly::constant(c)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        LaurentPoly::constant(Rational::integer(c))
    }
}

impl fmt::Display for LaurentPoly {
    /// Ascending graded-lex order, e.g. `2*t^-1 + 3`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (idx, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            let magnitude = c.abs();
            if idx == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else if magnitude.is_one() {
                write!(f, "{}", m.render())?;
            } else {
                write!(f, "{magnitude}*{}", m.render())?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{laurent_arith, RingOp};

    fn t(e: i32) -> LaurentPoly {
        LaurentPoly::var("t", e)
    }

    fn c(v: i64) -> LaurentPoly {
        LaurentPoly::from(v)
    }

    #[test]
    fn additive_inverse_cancels() {
        let a = t(1) - c(1);
        let b = c(1) - t(1);
        let sum = laurent_arith(&a, &b, RingOp::Add);
        assert!(sum.is_zero());
        assert_eq!(sum.num_terms(), 0);
    }

    #[test]
    fn unit_cancellation() {
        assert!(laurent_arith(&t(1), &t(-1), RingOp::Mul).is_one());
    }

    #[test]
    fn hand_expansion() {
        // (2t + 1) * t^-1 = 2 + t^-1
        let lhs = laurent_arith(&(c(2) * t(1) + c(1)), &t(-1), RingOp::Mul);
        assert_eq!(lhs, c(2) + t(-1));
        assert_eq!(lhs.to_string(), "t^-1 + 2");
        assert_eq!((c(2) * t(-1) + c(3)).to_string(), "2*t^-1 + 3");
    }

    #[test]
    fn evaluation() {
        let mut at = HashMap::new();
        at.insert("t".to_string(), Rational::integer(2));
        assert_eq!(t(-2).eval(&at).unwrap(), Rational::new(1, 4));
        at.insert("t".to_string(), Rational::integer(1));
        assert_eq!((c(2) + t(-1)).eval(&at).unwrap(), Rational::integer(3));
        at.insert("t".to_string(), Rational::integer(0));
        assert_eq!(
            t(-1).eval(&at),
            Err(ScalarError::ZeroAtNegativeExponent("t".into()))
        );
        assert_eq!(
            t(1).eval(&HashMap::new()),
            Err(ScalarError::UnassignedVariable("t".into()))
        );
    }

    #[test]
    fn grlex_order() {
        let a = Monomial::from_pairs([("b", 2)]);
        let b = Monomial::from_pairs([("b", 1), ("x", 1)]);
        let c = Monomial::from_pairs([("x", 1)]);
        assert!(a > b);
        assert!(b > c);
        assert!(Monomial::var("t", -1) < Monomial::one());
    }

    #[test]
    fn exact_division() {
        let b = LaurentPoly::var("b", 1);
        let x = LaurentPoly::var("x", 1);
        let d = b.clone() - x.clone();
        let q = b.clone() * b.clone() + x.clone() * LaurentPoly::var("b", -1) + c(3);
        let prod = d.mul(&q);
        assert_eq!(prod.exact_div(&d), Some(q));
        assert_eq!((b.clone() + c(1)).exact_div(&d), None);
        assert_eq!((b.clone() * b.clone() - x.clone() * x.clone()).exact_div(&(b + x)), Some(d));
    }

    #[test]
    fn substitution() {
        let mut map = HashMap::new();
        map.insert("s", LaurentPoly::var("t", 2));
        let p = LaurentPoly::var("s", -1) + LaurentPoly::var("u", 1);
        assert_eq!(p.substitute(&map).unwrap(), t(-2) + LaurentPoly::var("u", 1));
    }
}
