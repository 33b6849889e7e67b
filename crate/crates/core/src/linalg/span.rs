//! Rank, nullspaces, and the dimension of the unital matrix algebra spanned
//! by a set of generators (the Burnside irreducibility criterion).

use super::{LinalgError, Matrix};
use crate::scalar::{
    Constant, Domain, Field, LaurentPoly, PrimeFieldElement, Rational, RationalFunction, Scalar,
};

/// Closure rounds allowed before [`LinalgError::CapExceeded`].
pub const DEFAULT_SPAN_CAP: usize = 1024;

/// Incremental linear-independence tracking over the fraction field of the
/// entry domain.
trait Echelon<T> {
    /// Inserts `v` if it is independent of the stored rows.
    fn insert(&mut self, v: Vec<T>) -> bool;
    fn rank(&self) -> usize;
}

/// Row echelon form with unit pivots over a field.
struct FieldEchelon<F> {
    rows: Vec<(usize, Vec<F>)>,
}

impl<F: Field> Echelon<F> for FieldEchelon<F> {
    fn insert(&mut self, mut v: Vec<F>) -> bool {
        for (p, row) in &self.rows {
            if v[*p].is_zero() {
                continue;
            }
            let factor = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = x.sub(&factor.mul(r));
                }
            }
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].inv().expect("nonzero pivot");
        for x in v.iter_mut() {
            *x = x.mul(&inv);
        }
        self.rows.push((p, v));
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

/// Fraction-free echelon form over an integral domain.
///
/// A new row is pushed through the same Bareiss steps the stored rows went
/// through, in insertion order, so every entry stays a minor of the stacked
/// matrix and each division is exact.
struct FractionFreeEchelon<D> {
    rows: Vec<(usize, Vec<D>)>,
}

impl<D: Domain> Echelon<D> for FractionFreeEchelon<D> {
    fn insert(&mut self, mut v: Vec<D>) -> bool {
        let mut prev: Option<&D> = None;
        for (p, row) in &self.rows {
            let pivot = &row[*p];
            let lead = v[*p].clone();
            for (x, r) in v.iter_mut().zip(row) {
                let mut num = pivot.mul(x);
                if !lead.is_zero() && !r.is_zero() {
                    num = num.sub(&lead.mul(r));
                }
                *x = match prev {
                    Some(d) => num.exact_div(d).expect("Bareiss division is exact"),
                    None => num,
                };
            }
            prev = Some(pivot);
        }
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        self.rows.push((p, v));
        true
    }

    fn rank(&self) -> usize {
        self.rows.len()
    }
}

fn closure<T: Scalar>(
    generators: &[Matrix<T>],
    cap: usize,
    mut echelon: impl Echelon<T>,
) -> Result<usize, LinalgError> {
    let first = generators.first().ok_or(LinalgError::NoGenerators)?;
    let n = first.rows();
    for g in generators {
        if !g.is_square() {
            return Err(g.not_square("algebra_span_dimension"));
        }
        if g.rows() != n {
            return Err(LinalgError::DimensionMismatch {
                op: "algebra_span_dimension",
                left: (n, n),
                right: (g.rows(), g.cols()),
            });
        }
    }
    let full = n * n;
    let mut frontier = Vec::new();
    for m in std::iter::once(Matrix::identity(n, first.proto())).chain(generators.iter().cloned())
    {
        if echelon.insert(m.vectorize()) {
            frontier.push(m);
        }
    }
    let mut rounds = 0;
    while !frontier.is_empty() && echelon.rank() < full {
        rounds += 1;
        if rounds > cap {
            return Err(LinalgError::CapExceeded(cap));
        }
        let mut next = Vec::new();
        'round: for b in &frontier {
            for g in generators {
                for candidate in [g.mul(b)?, b.mul(g)?] {
                    if echelon.insert(candidate.vectorize()) {
                        next.push(candidate);
                        if echelon.rank() == full {
                            break 'round;
                        }
                    }
                }
            }
        }
        frontier = next;
    }
    Ok(echelon.rank())
}

/// Scalar domains for which the span closure is implemented.
pub trait SpanScalar: Scalar {
    fn span_dimension(generators: &[Matrix<Self>], cap: usize) -> Result<usize, LinalgError>;
}

impl SpanScalar for Rational {
    fn span_dimension(generators: &[Matrix<Self>], cap: usize) -> Result<usize, LinalgError> {
        closure(generators, cap, FieldEchelon { rows: Vec::new() })
    }
}

impl SpanScalar for PrimeFieldElement {
    fn span_dimension(generators: &[Matrix<Self>], cap: usize) -> Result<usize, LinalgError> {
        closure(generators, cap, FieldEchelon { rows: Vec::new() })
    }
}

/// Dimension over the fraction field of the Laurent ring.
impl SpanScalar for LaurentPoly {
    fn span_dimension(generators: &[Matrix<Self>], cap: usize) -> Result<usize, LinalgError> {
        closure(generators, cap, FractionFreeEchelon { rows: Vec::new() })
    }
}

/// Clears denominators generator by generator (rescaling a generator by a
/// nonzero scalar leaves the spanned algebra unchanged) and works
/// fraction-free over the Laurent ring.
impl SpanScalar for RationalFunction {
    fn span_dimension(generators: &[Matrix<Self>], cap: usize) -> Result<usize, LinalgError> {
        let cleared: Vec<Matrix<LaurentPoly>> = generators.iter().map(clear_denominators).collect();
        LaurentPoly::span_dimension(&cleared, cap)
    }
}

fn clear_denominators(m: &Matrix<RationalFunction>) -> Matrix<LaurentPoly> {
    let mut common = <LaurentPoly as Constant>::one();
    for e in m.entries() {
        let d = e.denominator();
        if !d.is_one() && common.exact_div(d).is_none() {
            common = common.mul(d);
        }
    }
    m.map(|e| {
        let scale = common
            .exact_div(e.denominator())
            .expect("common multiple of denominators");
        e.numerator().mul(&scale)
    })
}

/// Dimension of the unital algebra generated by `generators`: seed with the
/// identity and the generators, then close under left and right
/// multiplication by generators until no new independent product appears.
pub fn algebra_span_dimension<T: SpanScalar>(
    generators: &[Matrix<T>],
    cap: usize,
) -> Result<usize, LinalgError> {
    T::span_dimension(generators, cap)
}

/// Reduced row echelon form; returns pivot columns.
fn rref<F: Field>(m: &mut [Vec<F>], cols: usize) -> Vec<usize> {
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..cols {
        if row == m.len() {
            break;
        }
        let Some(p) = (row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, p);
        let inv = m[row][col].inv().expect("nonzero pivot");
        for x in m[row].iter_mut() {
            *x = x.mul(&inv);
        }
        for r in 0..m.len() {
            if r != row && !m[r][col].is_zero() {
                let factor = m[r][col].clone();
                let pivot_row = m[row].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row) {
                    if !y.is_zero() {
                        *x = x.sub(&factor.mul(y));
                    }
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    let mut rows: Vec<Vec<F>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
    rref(&mut rows, m.cols()).len()
}

/// Basis of the right nullspace; each vector has a 1 in its free column.
pub fn nullspace<F: Field>(m: &Matrix<F>) -> Vec<Vec<F>> {
    let cols = m.cols();
    let mut rows: Vec<Vec<F>> = (0..m.rows()).map(|r| m.row(r).to_vec()).collect();
    let pivots = rref(&mut rows, cols);
    let proto = m.proto();
    (0..cols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![proto.zero_like(); cols];
            v[free] = proto.one_like();
            for (r, &p) in pivots.iter().enumerate() {
                v[p] = rows[r][free].neg();
            }
            v
        })
        .collect()
}

/// A nonzero vector fixed by every generator, if one exists.
pub fn common_fixed_vector<F: Field>(
    generators: &[Matrix<F>],
) -> Result<Option<Vec<F>>, LinalgError> {
    let first = generators.first().ok_or(LinalgError::NoGenerators)?;
    let n = first.rows();
    let id = Matrix::identity(n, first.proto());
    let mut stacked = Vec::with_capacity(generators.len() * n * n);
    for g in generators {
        if !g.is_square() {
            return Err(g.not_square("common_fixed_vector"));
        }
        stacked.extend(g.sub(&id)?.into_entries());
    }
    let m = Matrix::new(generators.len() * n, n, stacked)?;
    Ok(nullspace(&m).into_iter().next())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{antidiag, block_embed, conjugate};

    type Q = Matrix<Rational>;

    fn perm_gens(n: usize) -> Vec<Q> {
        (1..n)
            .map(|i| block_embed(n, i, &antidiag(Rational::one(), Rational::one())).unwrap())
            .collect()
    }

    /// Brute-force oracle: span of all words up to length `len`, ranked by
    /// plain elimination.
    fn words_span_rank(gens: &[Q], len: usize) -> usize {
        let n = gens[0].rows();
        let mut layer = vec![Q::eye(n)];
        let mut all = layer.clone();
        for _ in 0..len {
            let mut next = Vec::new();
            for w in &layer {
                for g in gens {
                    next.push(w.mul(g).unwrap());
                }
            }
            all.extend(next.iter().cloned());
            layer = next;
        }
        let stacked: Vec<Rational> = all.iter().flat_map(|m| m.vectorize()).collect();
        rank(&Matrix::new(all.len(), n * n, stacked).unwrap())
    }

    #[test]
    fn tits_generators_span_full_algebra() {
        let gens = vec![
            Q::from_ints(&[&[-1, 1], &[0, 1]]),
            Q::from_ints(&[&[1, 0], &[1, -1]]),
        ];
        assert_eq!(words_span_rank(&gens, 4), 4);
        assert_eq!(algebra_span_dimension(&gens, DEFAULT_SPAN_CAP).unwrap(), 4);
        assert_eq!(common_fixed_vector(&gens).unwrap(), None);
    }

    #[test]
    fn identity_spans_scalars() {
        assert_eq!(algebra_span_dimension(&[Q::eye(3)], 10).unwrap(), 1);
    }

    #[test]
    fn permutation_generators_are_reducible() {
        let gens = perm_gens(3);
        assert_eq!(words_span_rank(&gens, 6), 5);
        assert_eq!(algebra_span_dimension(&gens, DEFAULT_SPAN_CAP).unwrap(), 5);
        let ones = vec![Rational::one(); 3];
        assert_eq!(common_fixed_vector(&gens).unwrap(), Some(ones));
    }

    #[test]
    fn laurent_route_agrees_with_specialization() {
        let b = LaurentPoly::var("b", 1);
        let x = LaurentPoly::var("x", 1);
        let gens: Vec<Matrix<LaurentPoly>> = (1..3)
            .flat_map(|i| {
                [
                    block_embed(3, i, &antidiag(b.clone(), b.unit_inverse().unwrap())).unwrap(),
                    block_embed(3, i, &antidiag(x.clone(), x.unit_inverse().unwrap())).unwrap(),
                ]
            })
            .collect();
        assert_eq!(algebra_span_dimension(&gens, DEFAULT_SPAN_CAP).unwrap(), 9);
        let same: Vec<Matrix<LaurentPoly>> = (1..3)
            .map(|i| block_embed(3, i, &antidiag(b.clone(), b.unit_inverse().unwrap())).unwrap())
            .collect();
        assert_eq!(algebra_span_dimension(&same, DEFAULT_SPAN_CAP).unwrap(), 5);
    }

    #[test]
    fn conjugation_invariance() {
        let gens = vec![
            Q::from_ints(&[&[-1, 1, 2], &[0, 1, 0], &[0, 0, 1]]),
            Q::from_ints(&[&[1, 0, 0], &[1, -1, 1], &[0, 0, 1]]),
        ];
        let p = Matrix::diagonal(vec![Rational::integer(3), Rational::new(-1, 2), Rational::one()])
            .unwrap();
        let conj: Vec<Q> = gens.iter().map(|g| conjugate(&p, g).unwrap()).collect();
        assert_eq!(
            algebra_span_dimension(&gens, 100).unwrap(),
            algebra_span_dimension(&conj, 100).unwrap()
        );
    }

    #[test]
    fn cap_and_input_errors() {
        assert_eq!(
            algebra_span_dimension::<Rational>(&[], 10),
            Err(LinalgError::NoGenerators)
        );
        let gens = perm_gens(5);
        assert_eq!(
            algebra_span_dimension(&gens, 1),
            Err(LinalgError::CapExceeded(1))
        );
    }

    #[test]
    fn nullspace_basis() {
        let m = Q::from_ints(&[&[1, 1, 0], &[0, 0, 1]]);
        let ns = nullspace(&m);
        assert_eq!(ns, vec![vec![Rational::integer(-1), Rational::one(), Rational::zero()]]);
        assert_eq!(rank(&m), 2);
    }
}
