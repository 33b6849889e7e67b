use std::collections::{BTreeMap, HashMap};
use std::fmt;

use super::{Generator, GroupError, GroupWord, Presentation};
use crate::freegroup::{aut_compose, MonomialAutomorphism};
use crate::linalg::Matrix;
use crate::scalar::Scalar;

/// Largest image group [`image_closure`] enumerates by default.
pub const DEFAULT_CLOSURE_CAP: usize = 10_000;

/// Target of a representation: anything with an associative product,
/// an identity, and inverses for the generator images.
pub trait GroupImage: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    /// Image of `u v` given the images of `u` and `v`.
    fn compose(&self, rhs: &Self) -> Result<Self, GroupError>;
    fn identity_like(&self) -> Self;
    fn invert(&self) -> Option<Self>;
    fn is_identity(&self) -> bool;
    fn dimension(&self) -> usize;
    /// Text that equal images always share, when such a rendering exists.
    fn canonical_key(&self) -> Option<String> {
        None
    }
}

impl<T: Scalar> GroupImage for Matrix<T> {
    fn compose(&self, rhs: &Self) -> Result<Self, GroupError> {
        Ok(self.mul(rhs)?)
    }

    fn identity_like(&self) -> Self {
        Matrix::identity(self.rows(), self.proto())
    }

    fn invert(&self) -> Option<Self> {
        self.try_inverse().ok()
    }

    fn is_identity(&self) -> bool {
        Matrix::is_identity(self)
    }

    fn dimension(&self) -> usize {
        self.rows()
    }

    fn canonical_key(&self) -> Option<String> {
        T::CANONICAL_DISPLAY.then(|| self.to_string())
    }
}

/// Automorphisms act on the right: the image of `u v` applies the image of
/// `u` first, which makes the Magnus Jacobian a homomorphism.
impl GroupImage for MonomialAutomorphism {
    fn compose(&self, rhs: &Self) -> Result<Self, GroupError> {
        aut_compose(rhs, self).map_err(|_| GroupError::DimensionMismatch(self.rank(), rhs.rank()))
    }

    fn identity_like(&self) -> Self {
        MonomialAutomorphism::identity(self.rank())
    }

    fn invert(&self) -> Option<Self> {
        Some(self.inverse())
    }

    fn is_identity(&self) -> bool {
        *self == MonomialAutomorphism::identity(self.rank())
    }

    fn dimension(&self) -> usize {
        self.rank()
    }

    fn canonical_key(&self) -> Option<String> {
        Some(self.to_string())
    }
}

/// Assignment of an image to every generator of a presentation.
#[derive(Debug, Clone)]
pub struct RepCandidate<I> {
    pub presentation: Presentation,
    pub name: String,
    pub parameters: BTreeMap<String, String>,
    images: BTreeMap<Generator, I>,
}

impl<I: GroupImage> RepCandidate<I> {
    pub fn new(
        presentation: Presentation,
        name: impl Into<String>,
        images: impl IntoIterator<Item = (Generator, I)>,
    ) -> Result<Self, GroupError> {
        let images: BTreeMap<Generator, I> = images.into_iter().collect();
        for g in images.keys() {
            if !presentation.contains(*g) {
                return Err(GroupError::UnknownGenerator(g.label()));
            }
        }
        let mut dim = None;
        for g in &presentation.generators {
            let img = images
                .get(g)
                .ok_or_else(|| GroupError::UnassignedGenerator(g.label()))?;
            match dim {
                None => dim = Some(img.dimension()),
                Some(d) if d != img.dimension() => {
                    return Err(GroupError::DimensionMismatch(d, img.dimension()))
                }
                _ => {}
            }
        }
        Ok(RepCandidate {
            presentation,
            name: name.into(),
            parameters: BTreeMap::new(),
            images,
        })
    }

    pub fn with_parameter(mut self, key: &str, value: impl ToString) -> Self {
        self.parameters.insert(key.to_string(), value.to_string());
        self
    }

    pub fn image(&self, g: Generator) -> Option<&I> {
        self.images.get(&g)
    }

    /// Generator images in presentation order.
    pub fn generator_images(&self) -> Vec<I> {
        self.presentation
            .generators
            .iter()
            .map(|g| self.images[g].clone())
            .collect()
    }

    pub fn dimension(&self) -> usize {
        self.images.values().next().map_or(0, GroupImage::dimension)
    }

    pub fn identity(&self) -> I {
        self.images
            .values()
            .next()
            .expect("presentations have at least one generator")
            .identity_like()
    }

    /// Applies `f` to every generator image.
    pub fn map_images<J: GroupImage>(
        &self,
        f: impl Fn(&I) -> Result<J, GroupError>,
    ) -> Result<RepCandidate<J>, GroupError> {
        let images = self
            .images
            .iter()
            .map(|(g, m)| f(m).map(|j| (*g, j)))
            .collect::<Result<Vec<_>, _>>()?;
        let mut out = RepCandidate::new(self.presentation.clone(), self.name.clone(), images)?;
        out.parameters = self.parameters.clone();
        Ok(out)
    }

    pub(crate) fn letter_image(&self, g: Generator, e: i8) -> Result<I, GroupError> {
        let img = self
            .images
            .get(&g)
            .ok_or_else(|| GroupError::UnassignedGenerator(g.label()))?;
        if e > 0 {
            Ok(img.clone())
        } else {
            img.invert()
                .ok_or_else(|| GroupError::NotInvertibleImage(g.label()))
        }
    }
}

/// Ordered product of the images of the letters of `w`.
pub fn word_eval<I: GroupImage>(rep: &RepCandidate<I>, w: &GroupWord) -> Result<I, GroupError> {
    let mut acc = rep.identity();
    for &(g, e) in w.letters() {
        acc = acc.compose(&rep.letter_image(g, e)?)?;
    }
    Ok(acc)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationCheck {
    pub relation: String,
    pub tag: &'static str,
    pub passed: bool,
}

/// Evaluates both sides of every relation instance.
pub fn check_relations<I: GroupImage>(
    rep: &RepCandidate<I>,
) -> Result<Vec<RelationCheck>, GroupError> {
    rep.presentation
        .relations
        .iter()
        .map(|r| {
            let passed = word_eval(rep, &r.lhs)? == word_eval(rep, &r.rhs)?;
            Ok(RelationCheck {
                relation: r.name(),
                tag: r.tag,
                passed,
            })
        })
        .collect()
}

struct ElementSet<I> {
    elements: Vec<I>,
    buckets: HashMap<String, Vec<usize>>,
}

impl<I: GroupImage> ElementSet<I> {
    fn insert(&mut self, x: I) -> bool {
        match x.canonical_key() {
            Some(key) => {
                let bucket = self.buckets.entry(key).or_default();
                if bucket.iter().any(|&i| self.elements[i] == x) {
                    return false;
                }
                bucket.push(self.elements.len());
            }
            None => {
                if self.elements.contains(&x) {
                    return false;
                }
            }
        }
        self.elements.push(x);
        true
    }
}

/// All elements of the group generated by the generator images, identity
/// first, in breadth-first order.
pub fn image_closure<I: GroupImage>(
    rep: &RepCandidate<I>,
    cap: usize,
) -> Result<Vec<I>, GroupError> {
    let gens = rep.generator_images();
    let mut set = ElementSet {
        elements: Vec::new(),
        buckets: HashMap::new(),
    };
    set.insert(rep.identity());
    let mut frontier = 0;
    while frontier < set.elements.len() {
        let current = set.elements[frontier].clone();
        frontier += 1;
        for g in &gens {
            if set.insert(current.compose(g)?) && set.elements.len() > cap {
                return Err(GroupError::CapExceeded(cap));
            }
        }
    }
    Ok(set.elements)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::groups::{presentation_of, GroupKind};
    use crate::linalg::{antidiag, block_embed};
    use crate::scalar::{Constant, Rational};

    type Q = Matrix<Rational>;

    fn diag_candidate() -> RepCandidate<Q> {
        let p = presentation_of(GroupKind::Triplet, 3).unwrap();
        let d = Q::from_ints(&[&[1, 0], &[0, -1]]);
        let images = (1..3).map(|i| (Generator::ell(i), block_embed(3, i, &d).unwrap()));
        RepCandidate::new(p, "diag", images).unwrap()
    }

    #[test]
    fn diagonal_candidate_fails_braid_only() {
        let checks = check_relations(&diag_candidate()).unwrap();
        for c in checks {
            assert_eq!(c.passed, c.tag != "braid-l", "{}", c.relation);
        }
    }

    #[test]
    fn empty_word_is_identity() {
        let rep = diag_candidate();
        assert!(word_eval(&rep, &GroupWord::empty()).unwrap().is_identity());
    }

    #[test]
    fn candidate_validation() {
        let p = presentation_of(GroupKind::Triplet, 3).unwrap();
        let one = (Generator::ell(1), Q::eye(3));
        assert_eq!(
            RepCandidate::new(p.clone(), "x", [one.clone()]).err(),
            Some(GroupError::UnassignedGenerator("l2".into()))
        );
        assert_eq!(
            RepCandidate::new(p.clone(), "x", [one.clone(), (Generator::ell(2), Q::eye(2))]).err(),
            Some(GroupError::DimensionMismatch(3, 2))
        );
        assert_eq!(
            RepCandidate::new(p, "x", [one, (Generator::rho(1), Q::eye(3))]).err(),
            Some(GroupError::UnknownGenerator("r1".into()))
        );
    }

    #[test]
    fn closure_of_trivial_and_symmetric() {
        let p = presentation_of(GroupKind::Triplet, 3).unwrap();
        let trivial =
            RepCandidate::new(p.clone(), "1", (1..3).map(|i| (Generator::ell(i), Q::eye(3))))
                .unwrap();
        assert_eq!(image_closure(&trivial, 10).unwrap().len(), 1);
        let perm = RepCandidate::new(
            p,
            "perm",
            (1..3).map(|i| {
                let b = antidiag(Rational::one(), Rational::one());
                (Generator::ell(i), block_embed(3, i, &b).unwrap())
            }),
        )
        .unwrap();
        assert_eq!(image_closure(&perm, 100).unwrap().len(), 6);
        assert_eq!(image_closure(&perm, 5), Err(GroupError::CapExceeded(5)));
    }
}
