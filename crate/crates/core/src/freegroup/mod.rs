//! Words in the free group `F_n`, unit-scaled words, the integral group ring
//! over `Z[t^±1]`, monomial automorphisms, and Fox calculus.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::linalg::Matrix;
use crate::scalar::{Constant, LaurentPoly, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FreeGroupError {
    #[error("image of x{0} is not a single generator letter")]
    NonMonomialImage(usize),
    #[error("generator index {index} outside 1..={rank}")]
    IndexOutOfRange { index: usize, rank: usize },
    #[error("scale factor {0} is not a unit monomial with coefficient 1 or -1")]
    NotAUnit(String),
    #[error("images do not permute the generators")]
    NotAPermutation,
    #[error("rank mismatch: {0} vs {1}")]
    RankMismatch(usize, usize),
}

/// Freely reduced word; letters are `(generator index, ±1)` with 1-based
/// indices.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FreeWord {
    letters: Vec<(usize, i8)>,
}

impl FreeWord {
    pub fn identity() -> Self {
        FreeWord::default()
    }

    pub fn generator(index: usize) -> Self {
        FreeWord {
            letters: vec![(index, 1)],
        }
    }

    /// Builds a word and freely reduces it.
    pub fn from_letters(letters: impl IntoIterator<Item = (usize, i8)>) -> Self {
        let mut out: Vec<(usize, i8)> = Vec::new();
        for (g, e) in letters {
            debug_assert!(e == 1 || e == -1);
            if let Some(&(h, f)) = out.last() {
                if h == g && f == -e {
                    out.pop();
                    continue;
                }
            }
            out.push((g, e));
        }
        FreeWord { letters: out }
    }

    pub fn letters(&self) -> &[(usize, i8)] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn mul(&self, rhs: &FreeWord) -> FreeWord {
        FreeWord::from_letters(self.letters.iter().chain(&rhs.letters).copied())
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            letters: self.letters.iter().rev().map(|&(g, e)| (g, -e)).collect(),
        }
    }

    pub fn max_index(&self) -> usize {
        self.letters.iter().map(|&(g, _)| g).max().unwrap_or(0)
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for (pos, &(g, e)) in self.letters.iter().enumerate() {
            if pos > 0 {
                write!(f, "*")?;
            }
            write!(f, "x{g}")?;
            if e < 0 {
                write!(f, "^-1")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

fn is_unit(p: &LaurentPoly) -> bool {
    p.as_monomial()
        .is_some_and(|(_, c)| c.is_one() || c.neg().is_one())
}

/// `unit · word` with `unit = ±` a Laurent monomial.
#[derive(Clone, PartialEq)]
pub struct ScaledWord {
    unit: LaurentPoly,
    word: FreeWord,
}

impl ScaledWord {
    pub fn new(unit: LaurentPoly, word: FreeWord) -> Result<Self, FreeGroupError> {
        if !is_unit(&unit) {
            return Err(FreeGroupError::NotAUnit(unit.to_string()));
        }
        Ok(ScaledWord { unit, word })
    }

    pub fn plain(word: FreeWord) -> Self {
        ScaledWord {
            unit: LaurentPoly::one(),
            word,
        }
    }

    pub fn unit(&self) -> &LaurentPoly {
        &self.unit
    }

    pub fn word(&self) -> &FreeWord {
        &self.word
    }

    pub fn mul(&self, rhs: &ScaledWord) -> ScaledWord {
        ScaledWord {
            unit: self.unit.mul(&rhs.unit),
            word: self.word.mul(&rhs.word),
        }
    }

    pub fn inverse(&self) -> ScaledWord {
        ScaledWord {
            unit: self.unit.unit_inverse().expect("scale factor is a unit"),
            word: self.word.inverse(),
        }
    }
}

impl fmt::Display for ScaledWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.unit.is_one() {
            write!(f, "{}", self.word)
        } else if self.word.is_empty() {
            write!(f, "{}", self.unit)
        } else {
            write!(f, "{}*{}", self.unit, self.word)
        }
    }
}

impl fmt::Debug for ScaledWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Element of `Z[t^±1][F_n]` as a finite sum of coefficient · word.
#[derive(Clone, Default, PartialEq)]
pub struct GroupRingElement {
    terms: BTreeMap<FreeWord, LaurentPoly>,
}

impl GroupRingElement {
    pub fn zero() -> Self {
        GroupRingElement::default()
    }

    pub fn constant(c: LaurentPoly) -> Self {
        let mut out = GroupRingElement::zero();
        out.add_term(FreeWord::identity(), c);
        out
    }

    pub fn from_scaled(w: &ScaledWord) -> Self {
        let mut out = GroupRingElement::zero();
        out.add_term(w.word.clone(), w.unit.clone());
        out
    }

    pub fn terms(&self) -> impl Iterator<Item = (&FreeWord, &LaurentPoly)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, word: FreeWord, coeff: LaurentPoly) {
        if coeff.is_zero() {
            return;
        }
        let sum = match self.terms.remove(&word) {
            Some(old) => old.add(&coeff),
            None => coeff,
        };
        if !sum.is_zero() {
            self.terms.insert(word, sum);
        }
    }

    pub fn add(&self, rhs: &GroupRingElement) -> GroupRingElement {
        let mut out = self.clone();
        for (w, c) in &rhs.terms {
            out.add_term(w.clone(), c.clone());
        }
        out
    }

    pub fn neg(&self) -> GroupRingElement {
        GroupRingElement {
            terms: self.terms.iter().map(|(w, c)| (w.clone(), c.neg())).collect(),
        }
    }

    /// Multiplication by `c` on the right (coefficients commute with words).
    pub fn scale(&self, c: &LaurentPoly) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (w, d) in &self.terms {
            out.add_term(w.clone(), d.mul(c));
        }
        out
    }

    /// `u · self` for a scaled word `u`.
    pub fn left_mul(&self, u: &ScaledWord) -> GroupRingElement {
        let mut out = GroupRingElement::zero();
        for (w, c) in &self.terms {
            out.add_term(u.word.mul(w), u.unit.mul(c));
        }
        out
    }

    /// The map sending every free generator to 1 and fixing `t`.
    pub fn project(&self) -> LaurentPoly {
        self.terms
            .values()
            .fold(LaurentPoly::zero(), |acc, c| acc.add(c))
    }
}

impl fmt::Display for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (pos, (w, c)) in self.terms.iter().enumerate() {
            if pos > 0 {
                write!(f, " + ")?;
            }
            if w.is_empty() {
                write!(f, "({c})")?;
            } else {
                write!(f, "({c})*{w}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for GroupRingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Automorphism `x_r ↦ u_r · x_{σ(r)}` with `σ` a permutation and `u_r`
/// Laurent monomials.
#[derive(Clone, PartialEq)]
pub struct MonomialAutomorphism {
    images: Vec<ScaledWord>,
}

impl MonomialAutomorphism {
    pub fn new(images: Vec<ScaledWord>) -> Result<Self, FreeGroupError> {
        let n = images.len();
        let mut seen = vec![false; n];
        for (r, img) in images.iter().enumerate() {
            match img.word.letters() {
                [(g, 1)] if (1..=n).contains(g) => {
                    if std::mem::replace(&mut seen[g - 1], true) {
                        return Err(FreeGroupError::NotAPermutation);
                    }
                }
                [(g, 1)] => {
                    return Err(FreeGroupError::IndexOutOfRange {
                        index: *g,
                        rank: n,
                    })
                }
                _ => return Err(FreeGroupError::NonMonomialImage(r + 1)),
            }
        }
        Ok(MonomialAutomorphism { images })
    }

    pub fn identity(n: usize) -> Self {
        MonomialAutomorphism {
            images: (1..=n)
                .map(|g| ScaledWord::plain(FreeWord::generator(g)))
                .collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[ScaledWord] {
        &self.images
    }

    /// `(generator index, unit)` of the image of `x_r`.
    fn image_of(&self, r: usize) -> (usize, &LaurentPoly) {
        let img = &self.images[r - 1];
        (img.word.letters()[0].0, &img.unit)
    }

    pub fn inverse(&self) -> MonomialAutomorphism {
        let n = self.rank();
        let mut images = vec![ScaledWord::plain(FreeWord::identity()); n];
        for r in 1..=n {
            let (g, u) = self.image_of(r);
            images[g - 1] = ScaledWord {
                unit: u.unit_inverse().expect("unit"),
                word: FreeWord::generator(r),
            };
        }
        MonomialAutomorphism { images }
    }
}

impl fmt::Display for MonomialAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (r, img) in self.images.iter().enumerate() {
            if r > 0 {
                write!(f, ", ")?;
            }
            write!(f, "x{} -> {}", r + 1, img)?;
        }
        Ok(())
    }
}

impl fmt::Debug for MonomialAutomorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Applies `a` letter by letter, collecting units in front.
pub fn aut_apply(a: &MonomialAutomorphism, w: &ScaledWord) -> ScaledWord {
    let mut unit = w.unit.clone();
    let mut letters = Vec::with_capacity(w.word.len());
    for &(g, e) in w.word.letters() {
        let (h, u) = a.image_of(g);
        if e > 0 {
            unit = unit.mul(u);
        } else {
            unit = unit.mul(&u.unit_inverse().expect("unit"));
        }
        letters.push((h, e));
    }
    ScaledWord {
        unit,
        word: FreeWord::from_letters(letters),
    }
}

/// `(a ∘ b)(x) = a(b(x))`.
pub fn aut_compose(
    a: &MonomialAutomorphism,
    b: &MonomialAutomorphism,
) -> Result<MonomialAutomorphism, FreeGroupError> {
    if a.rank() != b.rank() {
        return Err(FreeGroupError::RankMismatch(a.rank(), b.rank()));
    }
    Ok(MonomialAutomorphism {
        images: b.images.iter().map(|img| aut_apply(a, img)).collect(),
    })
}

/// Fox derivative `D_j`, extended Laurent-linearly, with the product rule
/// `D(uv) = D(u)·ε(v) + u·D(v)` where `ε` keeps the scalar part.
pub fn fox_derivative(w: &ScaledWord, j: usize) -> GroupRingElement {
    let mut out = GroupRingElement::zero();
    let mut prefix = FreeWord::identity();
    for &(g, e) in w.word.letters() {
        if g == j {
            if e > 0 {
                out.add_term(prefix.clone(), w.unit.clone());
            } else {
                let through = prefix.mul(&FreeWord::from_letters([(g, -1)]));
                out.add_term(through, w.unit.neg());
            }
        }
        prefix = prefix.mul(&FreeWord::from_letters([(g, e)]));
    }
    out
}

/// Matrix with entry `(r, c) = π(D_c(a(x_r)))`.
pub fn magnus_jacobian(a: &MonomialAutomorphism) -> Result<Matrix<LaurentPoly>, FreeGroupError> {
    jacobian_of_images(a.images())
}

/// Jacobian of an arbitrary list of images; rejects anything other than a
/// single generator letter per image.
pub fn jacobian_of_images(images: &[ScaledWord]) -> Result<Matrix<LaurentPoly>, FreeGroupError> {
    let n = images.len();
    for (r, img) in images.iter().enumerate() {
        if img.word.len() != 1 {
            return Err(FreeGroupError::NonMonomialImage(r + 1));
        }
        let g = img.word.letters()[0].0;
        if g == 0 || g > n {
            return Err(FreeGroupError::IndexOutOfRange { index: g, rank: n });
        }
    }
    let mut m = Matrix::zeros(n, n, &LaurentPoly::zero());
    for (r, img) in images.iter().enumerate() {
        for c in 1..=n {
            let d = fox_derivative(img, c).project();
            if !d.is_zero() {
                m.set(r, c - 1, d);
            }
        }
    }
    Ok(m)
}
