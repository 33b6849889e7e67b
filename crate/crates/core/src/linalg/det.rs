use super::{LinalgError, Matrix};
use crate::scalar::{Domain, Field};

/// Fraction-free (Bareiss) determinant over an integral domain.
pub fn det<T: Domain>(a: &Matrix<T>) -> Result<T, LinalgError> {
    if !a.is_square() {
        return Err(a.not_square("det"));
    }
    let n = a.rows();
    let mut m: Vec<Vec<T>> = (0..n).map(|r| a.row(r).to_vec()).collect();
    let mut sign_flip = false;
    let mut prev = a.proto().one_like();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&r| !m[r][k].is_zero()) {
                Some(r) => {
                    m.swap(k, r);
                    sign_flip = !sign_flip;
                }
                None => return Ok(a.proto().zero_like()),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = num
                    .exact_div(&prev)
                    .expect("Bareiss step divides exactly in an integral domain");
            }
            m[i][k] = a.proto().zero_like();
        }
        prev = m[k][k].clone();
    }
    Ok(if sign_flip { prev.neg() } else { prev })
}

/// Determinant by Gaussian elimination over a field.
pub fn det_gaussian<F: Field>(a: &Matrix<F>) -> Result<F, LinalgError> {
    if !a.is_square() {
        return Err(a.not_square("det"));
    }
    let n = a.rows();
    let mut m: Vec<Vec<F>> = (0..n).map(|r| a.row(r).to_vec()).collect();
    let mut acc = a.proto().one_like();
    for k in 0..n {
        let Some(p) = (k..n).find(|&r| !m[r][k].is_zero()) else {
            return Ok(a.proto().zero_like());
        };
        if p != k {
            m.swap(k, p);
            acc = acc.neg();
        }
        let pivot = m[k][k].clone();
        let inv = pivot.inv().expect("nonzero pivot in a field");
        acc = acc.mul(&pivot);
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let factor = m[i][k].mul(&inv);
            for j in k..n {
                let v = m[i][j].sub(&factor.mul(&m[k][j]));
                m[i][j] = v;
            }
        }
    }
    Ok(acc)
}
