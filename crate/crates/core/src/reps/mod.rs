//! Constructors for the concrete representations of `L_n`, `VL_n` and `WL_n`.
//!
//! Each constructor returns a [`RepCandidate`] whose images are built
//! literally from their defining block pattern. Parameters can live in any
//! scalar domain, so the same code produces symbolic images (over Laurent
//! polynomials or rational functions) and numeric ones (over `ℚ` or `F_p`).

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::freegroup::{FreeWord, MonomialAutomorphism, ScaledWord};
use crate::groups::{presentation_of, Generator, GroupError, GroupKind, RepCandidate};
use crate::linalg::{antidiag, block_embed, conjugate, LinalgError, Matrix};
use crate::scalar::{Constant, Field, LaurentPoly, Rational, RationalFunction, Scalar};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepError {
    #[error("representation needs n >= {min}, got {n}")]
    UnsupportedN { n: usize, min: usize },
    #[error("parameter `{0}` must be nonzero")]
    ZeroParameter(String),
    #[error("domain violation: {0}")]
    DomainViolation(String),
    #[error("image of {0} is not 2-local at its own position")]
    NotTwoLocal(String),
    #[error("missing parameter `{0}`")]
    MissingParameter(String),
    #[error("unknown family {0}; expected 1..=4")]
    UnknownFamily(usize),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
}

fn require_n(n: usize, min: usize) -> Result<(), RepError> {
    if n < min {
        Err(RepError::UnsupportedN { n, min })
    } else {
        Ok(())
    }
}

/// The exponent `k` of `μ`: a fixed integer or the indeterminate itself,
/// in which case `t^{jk}` is written `s^j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KExponent {
    Integer(i32),
    Symbolic,
}

impl KExponent {
    /// `t^{k·j}`.
    pub fn t_power(self, j: i32) -> LaurentPoly {
        match self {
            KExponent::Integer(k) => LaurentPoly::var("t", k * j),
            KExponent::Symbolic => LaurentPoly::var("s", j),
        }
    }
}

impl fmt::Display for KExponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KExponent::Integer(k) => write!(f, "{k}"),
            KExponent::Symbolic => f.write_str("k"),
        }
    }
}

/// The auxiliary `M_l`, `N_l`, `K_l` blocks of the Tits matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct TitsHelperBlocks {
    pub m: Vec<Vec<Rational>>,
    pub n: Vec<Vec<Rational>>,
    pub k: Vec<Vec<Rational>>,
}

impl TitsHelperBlocks {
    pub fn new(l: usize) -> Self {
        let zeros = vec![Rational::zero(); l];
        let twos = vec![Rational::integer(2); l];
        let m = vec![zeros.clone(), twos.clone(), zeros.clone()];
        TitsHelperBlocks {
            n: vec![twos.clone(), zeros.clone()],
            k: vec![zeros, twos],
            m,
        }
    }
}

fn paste(target: &mut Matrix<Rational>, r0: usize, c0: usize, block: &[Vec<Rational>]) {
    for (r, row) in block.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            target.set(r0 + r, c0 + c, v.clone());
        }
    }
}

fn int_rows(rows: &[&[i64]]) -> Vec<Vec<Rational>> {
    rows.iter()
        .map(|r| r.iter().map(|&v| Rational::integer(v)).collect())
        .collect()
}

/// `Λ_i` for `L_n`, 1-based `i`, assembled block by block.
pub fn tits_lambda(n: usize, i: usize) -> Result<Matrix<Rational>, RepError> {
    require_n(n, 3)?;
    if i == 0 || i >= n {
        return Err(LinalgError::PositionOutOfRange { n: n - 1, position: i }.into());
    }
    let d = n - 1;
    let mut out = Matrix::eye(d);
    if i == 1 {
        paste(&mut out, 0, 0, &int_rows(&[&[-1, 1], &[0, 1]]));
        paste(&mut out, 0, 2, &TitsHelperBlocks::new(n - 3).n);
    } else if i == n - 1 {
        paste(&mut out, n - 3, 0, &TitsHelperBlocks::new(n - 3).k);
        paste(&mut out, n - 3, n - 3, &int_rows(&[&[1, 0], &[1, -1]]));
    } else {
        paste(&mut out, i - 2, 0, &TitsHelperBlocks::new(i - 2).m);
        paste(
            &mut out,
            i - 2,
            i - 2,
            &int_rows(&[&[1, 0, 0], &[1, -1, 1], &[0, 0, 1]]),
        );
        paste(&mut out, i - 2, i + 1, &TitsHelperBlocks::new(n - (i + 2)).m);
    }
    Ok(out)
}

/// The Tits representation `Θ` of `L_n` on `ℚ^{n-1}`.
pub fn tits_theta(n: usize) -> Result<RepCandidate<Matrix<Rational>>, RepError> {
    require_n(n, 3)?;
    let p = presentation_of(GroupKind::Triplet, n)?;
    let images = (1..n)
        .map(|i| Ok((Generator::ell(i), tits_lambda(n, i)?)))
        .collect::<Result<Vec<_>, RepError>>()?;
    Ok(RepCandidate::new(p, "tits", images)?.with_parameter("n", n))
}

/// The `m × m` matrix with `-2` on the diagonal, `1` on the first
/// off-diagonals and `2` elsewhere.
pub fn a_matrix(m: usize) -> Result<Matrix<Rational>, RepError> {
    require_n(m, 1)?;
    let mut out = Matrix::zeros(m, m, &Rational::zero());
    for r in 0..m {
        for c in 0..m {
            let v = match r.abs_diff(c) {
                0 => -2,
                1 => 1,
                _ => 2,
            };
            out.set(r, c, Rational::integer(v));
        }
    }
    Ok(out)
}

fn mu_block(k: KExponent) -> Matrix<LaurentPoly> {
    antidiag(k.t_power(1), k.t_power(-1))
}

/// `μ′`: `ℓ_i ↦ I_{i-1} ⊕ antidiag(t^k, t^{-k}) ⊕ I_{n-i-1}`.
pub fn mu_matrix(n: usize, k: KExponent) -> Result<RepCandidate<Matrix<LaurentPoly>>, RepError> {
    require_n(n, 2)?;
    let p = presentation_of(GroupKind::Triplet, n)?;
    let block = mu_block(k);
    let images = (1..n)
        .map(|i| Ok((Generator::ell(i), block_embed(n, i, &block)?)))
        .collect::<Result<Vec<_>, RepError>>()?;
    Ok(RepCandidate::new(p, "mu-prime", images)?
        .with_parameter("n", n)
        .with_parameter("k", k))
}

/// `μ(ℓ_i)`: `x_i ↦ t^k x_{i+1}`, `x_{i+1} ↦ t^{-k} x_i`, other generators fixed.
pub fn mu_generator(n: usize, i: usize, k: KExponent) -> MonomialAutomorphism {
    let images = (1..=n)
        .map(|r| {
            let (unit, target) = if r == i {
                (k.t_power(1), i + 1)
            } else if r == i + 1 {
                (k.t_power(-1), i)
            } else {
                (LaurentPoly::one(), r)
            };
            ScaledWord::new(unit, FreeWord::generator(target)).expect("monomial unit")
        })
        .collect();
    MonomialAutomorphism::new(images).expect("monomial images")
}

/// `μ : L_n → Aut(F_n)` with the scale factors of `ℤ[t^{±1}]`.
pub fn mu_automorphism(
    n: usize,
    k: KExponent,
) -> Result<RepCandidate<MonomialAutomorphism>, RepError> {
    require_n(n, 2)?;
    let p = presentation_of(GroupKind::Triplet, n)?;
    let images = (1..n).map(|i| (Generator::ell(i), mu_generator(n, i, k)));
    Ok(RepCandidate::new(p, "mu", images)?
        .with_parameter("n", n)
        .with_parameter("k", k))
}

/// `P = diag(t^{k(n-1)}, …, t^k, 1)`.
pub fn mu_conjugator(n: usize, k: KExponent) -> Matrix<LaurentPoly> {
    Matrix::diagonal((0..n).map(|r| k.t_power((n - 1 - r) as i32)).collect())
        .expect("nonempty diagonal")
}

/// `μ″ = P^{-1} μ′ P`.
pub fn mu_doubleprime(
    n: usize,
    k: KExponent,
) -> Result<RepCandidate<Matrix<LaurentPoly>>, RepError> {
    let prime = mu_matrix(n, k)?;
    let p = mu_conjugator(n, k);
    let mut out = prime.map_images(|m| Ok(conjugate(&p, m)?))?;
    out.name = "mu-doubleprime".into();
    Ok(out)
}

fn nonzero<T: Scalar>(name: &str, v: &T) -> Result<T, RepError> {
    v.unit_inverse()
        .ok_or_else(|| RepError::ZeroParameter(name.into()))
}

/// Homogeneous 2-local representation `ℓ_i ↦ antidiag(b, 1/b)` at block `i`.
pub fn lambda_homog<T: Scalar>(n: usize, b: T) -> Result<RepCandidate<Matrix<T>>, RepError> {
    require_n(n, 3)?;
    let binv = nonzero("b", &b)?;
    let block = antidiag(b.clone(), binv);
    let p = presentation_of(GroupKind::Triplet, n)?;
    let images = (1..n)
        .map(|i| Ok((Generator::ell(i), block_embed(n, i, &block)?)))
        .collect::<Result<Vec<_>, RepError>>()?;
    Ok(RepCandidate::new(p, "lambda-homog", images)?
        .with_parameter("n", n)
        .with_parameter("b", b))
}

/// Named scalar parameters of a 2-local family.
#[derive(Debug, Clone, PartialEq)]
pub struct TwoLocalParams<F> {
    proto: F,
    values: BTreeMap<String, F>,
}

impl<F: Scalar> TwoLocalParams<F> {
    /// Empty assignment over the ring containing `proto`.
    pub fn over(proto: F) -> Self {
        TwoLocalParams {
            proto,
            values: BTreeMap::new(),
        }
    }

    pub fn with(mut self, name: &str, value: F) -> Self {
        self.values.insert(name.to_string(), value);
        self
    }

    pub fn get(&self, name: &str) -> Result<&F, RepError> {
        self.values
            .get(name)
            .ok_or_else(|| RepError::MissingParameter(name.into()))
    }

    pub fn proto(&self) -> &F {
        &self.proto
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &F)> {
        self.values.iter()
    }
}

impl TwoLocalParams<RationalFunction> {
    /// Every name bound to its own indeterminate.
    pub fn symbolic(names: &[&str]) -> Self {
        names.iter().fold(
            TwoLocalParams::over(RationalFunction::one()),
            |acc, name| acc.with(name, RationalFunction::var(name)),
        )
    }
}

/// Parameter names of each family, in display order.
pub fn l3_family_parameters(j: usize) -> &'static [&'static str] {
    match j {
        1 => &["b", "e", "f"],
        2 => &["b", "g"],
        3 => &["c", "f"],
        _ => &[],
    }
}

fn require<F: Field>(v: &F, constraint: &str) -> Result<F, RepError> {
    v.inv()
        .ok_or_else(|| RepError::DomainViolation(constraint.into()))
}

fn rat<F: Scalar>(proto: &F, n: i64, d: i64) -> Result<F, RepError> {
    proto
        .rational_like(&Rational::new(n, d))
        .ok_or_else(|| RepError::DomainViolation(format!("{n}/{d} undefined in the base ring")))
}

fn mat3<F: Scalar>(rows: [[F; 3]; 3]) -> Matrix<F> {
    Matrix::from_rows(rows.into_iter().map(Vec::from).collect()).expect("3x3")
}

/// The pair `(L_1, L_2)` of family `j` of the non-homogeneous 2-local
/// representations of `L_3`.
pub fn l3_family_matrices<F: Field>(
    j: usize,
    params: &TwoLocalParams<F>,
) -> Result<(Matrix<F>, Matrix<F>), RepError> {
    let o = params.proto();
    let zero = o.zero_like();
    let one = o.one_like();
    let l1 = |a: F, b: F, c: F, d: F| {
        mat3([
            [a, b, zero.clone()],
            [c, d, zero.clone()],
            [zero.clone(), zero.clone(), one.clone()],
        ])
    };
    let l2 = |e: F, f: F, g: F, h: F| {
        mat3([
            [one.clone(), zero.clone(), zero.clone()],
            [zero.clone(), e, f],
            [zero.clone(), g, h],
        ])
    };
    match j {
        1 => {
            let b = params.get("b")?;
            let e = params.get("e")?;
            let f = params.get("f")?;
            let binv = require(b, "b != 0")?;
            let e1inv = require(&e.sub(&one), "e != 1")?;
            let finv = require(f, "f != 0")?;
            let a = e.mul(&e1inv).neg();
            let c = one
                .sub(&e.int_like(2).mul(e))
                .mul(&binv)
                .mul(&e1inv)
                .mul(&e1inv);
            let d = e.mul(&e1inv);
            let g = one.sub(&e.mul(e)).mul(&finv);
            Ok((
                l1(a, b.clone(), c, d),
                l2(e.clone(), f.clone(), g, e.neg()),
            ))
        }
        2 => {
            let b = params.get("b")?;
            let g = params.get("g")?;
            let binv = require(b, "b != 0")?;
            Ok((
                l1(
                    rat(o, -1, 2)?,
                    b.clone(),
                    rat(o, 3, 4)?.mul(&binv),
                    rat(o, 1, 2)?,
                ),
                l2(one.neg(), zero.clone(), g.clone(), one.clone()),
            ))
        }
        3 => {
            let c = params.get("c")?;
            let f = params.get("f")?;
            let finv = require(f, "f != 0")?;
            Ok((
                l1(one.clone(), zero.clone(), c.clone(), one.neg()),
                l2(
                    rat(o, 1, 2)?,
                    f.clone(),
                    rat(o, 3, 4)?.mul(&finv),
                    rat(o, -1, 2)?,
                ),
            ))
        }
        4 => Ok((
            l1(one.clone(), zero.clone(), zero.clone(), one.neg()),
            l2(one.neg(), zero.clone(), zero.clone(), one.clone()),
        )),
        _ => Err(RepError::UnknownFamily(j)),
    }
}

/// Family `j` as a representation of `L_3`.
pub fn l3_family<F: Field>(
    j: usize,
    params: &TwoLocalParams<F>,
) -> Result<RepCandidate<Matrix<F>>, RepError> {
    let (a, b) = l3_family_matrices(j, params)?;
    let p = presentation_of(GroupKind::Triplet, 3)?;
    let mut rep = RepCandidate::new(p, format!("l3-family-{j}"), [
        (Generator::ell(1), a),
        (Generator::ell(2), b),
    ])?;
    for (k, v) in params.iter() {
        rep = rep.with_parameter(k, v);
    }
    Ok(rep)
}

/// Family `j` with every parameter an indeterminate.
pub fn l3_family_symbolic(j: usize) -> Result<RepCandidate<Matrix<RationalFunction>>, RepError> {
    l3_family(j, &TwoLocalParams::symbolic(l3_family_parameters(j)))
}

/// Whether `m` is the identity outside rows and columns `i, i+1` (1-based).
pub fn is_local_at<T: Scalar>(m: &Matrix<T>, i: usize) -> bool {
    let n = m.rows();
    if !m.is_square() || i == 0 || i >= n {
        return false;
    }
    let inside = |k: usize| k + 1 == i || k == i;
    (0..n).all(|r| {
        (0..n).all(|c| {
            if inside(r) && inside(c) {
                return true;
            }
            let e = m.get(r, c);
            if r == c {
                e.is_one()
            } else {
                e.is_zero()
            }
        })
    })
}

/// Which presentation an extension targets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Extension {
    Virtual,
    Welded,
}

impl Extension {
    pub fn kind(self) -> GroupKind {
        match self {
            Extension::Virtual => GroupKind::VirtualTriplet,
            Extension::Welded => GroupKind::WeldedTriplet,
        }
    }
}

/// `λ̂_±`: `ℓ_i ↦ λ(ℓ_i)`, `ρ_i ↦ ±λ(ℓ_i)` on `VL_n` or `WL_n`.
pub fn extend_standard<T: Scalar>(
    lambda: &RepCandidate<Matrix<T>>,
    sign: i8,
    target: Extension,
) -> Result<RepCandidate<Matrix<T>>, RepError> {
    if lambda.presentation.kind != GroupKind::Triplet {
        return Err(GroupError::UnsupportedPresentation(lambda.presentation.label()).into());
    }
    let n = lambda.presentation.n;
    let mut images = Vec::with_capacity(2 * (n - 1));
    for i in 1..n {
        let g = Generator::ell(i);
        let m = lambda
            .image(g)
            .ok_or_else(|| GroupError::UnassignedGenerator(g.label()))?;
        if !is_local_at(m, i) {
            return Err(RepError::NotTwoLocal(g.label()));
        }
        let r = if sign < 0 { m.neg() } else { m.clone() };
        images.push((g, m.clone()));
        images.push((Generator::rho(i), r));
    }
    let p = presentation_of(target.kind(), n)?;
    let name = format!("{}-hat-{}", lambda.name, if sign < 0 { "minus" } else { "plus" });
    let mut rep = RepCandidate::new(p, name, images)?;
    rep.parameters = lambda.parameters.clone();
    Ok(rep.with_parameter("sign", if sign < 0 { -1 } else { 1 }))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OmegaVariant {
    One,
    Two,
}

/// `ω_1`: `ℓ_i ↦ antidiag(b, 1/b)`, `ρ_i ↦ antidiag(x, 1/x)`;
/// `ω_2`: `ℓ_i ↦ I`, `ρ_i ↦ antidiag(x, 1/x)`. `b` is ignored for `ω_2`.
pub fn omega<T: Scalar>(
    n: usize,
    variant: OmegaVariant,
    b: Option<T>,
    x: T,
    target: Extension,
) -> Result<RepCandidate<Matrix<T>>, RepError> {
    require_n(n, 2)?;
    let xinv = nonzero("x", &x)?;
    let rho_block = antidiag(x.clone(), xinv);
    let ell_block = match variant {
        OmegaVariant::One => {
            let b = b.ok_or_else(|| RepError::MissingParameter("b".into()))?;
            let binv = nonzero("b", &b)?;
            Some((antidiag(b.clone(), binv), b))
        }
        OmegaVariant::Two => None,
    };
    let p = presentation_of(target.kind(), n)?;
    let mut images = Vec::with_capacity(2 * (n - 1));
    for i in 1..n {
        let l = match &ell_block {
            Some((blk, _)) => block_embed(n, i, blk)?,
            None => Matrix::identity(n, &x),
        };
        images.push((Generator::ell(i), l));
        images.push((Generator::rho(i), block_embed(n, i, &rho_block)?));
    }
    let name = match variant {
        OmegaVariant::One => "omega1",
        OmegaVariant::Two => "omega2",
    };
    let mut rep = RepCandidate::new(p, name, images)?.with_parameter("n", n);
    if let Some((_, b)) = ell_block {
        rep = rep.with_parameter("b", b);
    }
    Ok(rep.with_parameter("x", x))
}

/// `diag(b^{n-1}, …, b, 1)`.
pub fn omega_normalizer<T: Scalar>(n: usize, b: &T) -> Matrix<T> {
    Matrix::diagonal((0..n).map(|r| b.pow((n - 1 - r) as u32)).collect())
        .expect("nonempty diagonal")
}

/// Unordered pairs `{a, b}` of `1..=n` in lexicographic order.
pub fn pairs(n: usize) -> Vec<(usize, usize)> {
    (1..=n)
        .flat_map(|a| (a + 1..=n).map(move |b| (a, b)))
        .collect()
}

/// Reflection representation of `VL_n` on the space spanned by the pairs
/// of `1..=n`: `ℓ_i` reflects in `e_{i,i+1}` for the form with pairing `-1`
/// between pairs sharing a point and `-2` between disjoint pairs, and `ρ_i`
/// permutes pairs by the transposition `(i i+1)`.
pub fn pair_reflection(n: usize) -> Result<RepCandidate<Matrix<Rational>>, RepError> {
    require_n(n, 2)?;
    let ps = pairs(n);
    let dim = ps.len();
    let index = |p: (usize, usize)| ps.iter().position(|&q| q == p).expect("pair");
    let swap = |i: usize, v: usize| {
        if v == i {
            i + 1
        } else if v == i + 1 {
            i
        } else {
            v
        }
    };
    let p = presentation_of(GroupKind::VirtualTriplet, n)?;
    let mut images = Vec::new();
    for i in 1..n {
        let pi = index((i, i + 1));
        let mut refl = Matrix::eye(dim);
        for (col, &(a, b)) in ps.iter().enumerate() {
            let v = if col == pi {
                -2
            } else {
                match [a == i, a == i + 1, b == i, b == i + 1]
                    .iter()
                    .filter(|&&x| x)
                    .count()
                {
                    0 => 2,
                    _ => 1,
                }
            };
            refl.set(pi, col, Scalar::add(refl.get(pi, col), &Rational::integer(v)));
        }
        let mut perm = Matrix::zeros(dim, dim, &Rational::zero());
        for (col, &(a, b)) in ps.iter().enumerate() {
            let (x, y) = (swap(i, a), swap(i, b));
            perm.set(index((x.min(y), x.max(y))), col, Rational::one());
        }
        images.push((Generator::ell(i), refl));
        images.push((Generator::rho(i), perm));
    }
    Ok(RepCandidate::new(p, "pair-reflection", images)?.with_parameter("n", n))
}
