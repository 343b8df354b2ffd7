use super::matrix::Matrix;
use crate::rings::LaurentPoly;
use crate::{Error, Result};

/// Fraction-free (Bareiss) forward elimination. Returns the echelon form,
/// the rank, and the sign of the row permutation used.
fn bareiss(m: &Matrix<LaurentPoly>) -> (Matrix<LaurentPoly>, usize, bool) {
    let (rows, cols) = m.shape();
    let mut a = m.clone();
    let mut prev = LaurentPoly::one();
    let mut r = 0;
    let mut odd = false;
    for col in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !a.get(i, col).is_zero()) else {
            continue;
        };
        if p != r {
            a.swap_rows(p, r);
            odd = !odd;
        }
        let pivot = a.get(r, col).clone();
        for i in r + 1..rows {
            let lead = a.get(i, col).clone();
            for j in col + 1..cols {
                let num = &(&pivot * a.get(i, j)) - &(&lead * a.get(r, j));
                a[(i, j)] = num.div_exact(&prev).expect("Bareiss quotients are exact");
            }
            a[(i, col)] = LaurentPoly::zero();
        }
        prev = pivot;
        r += 1;
    }
    (a, r, odd)
}

/// Rank over the field `Q(z)`.
///
/// This equals the rank over `Z((z))` and over `Z((z^-1))`, since both embed
/// in fields containing `Q(z)`.
pub fn rank_over_function_field(m: &Matrix<LaurentPoly>) -> usize {
    bareiss(m).1
}

/// Determinant of a square Laurent matrix.
pub fn determinant(m: &Matrix<LaurentPoly>) -> Result<LaurentPoly> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "determinant of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    if n == 0 {
        return Ok(LaurentPoly::one());
    }
    let (a, r, odd) = bareiss(m);
    if r < n {
        return Ok(LaurentPoly::zero());
    }
    let d = a.get(n - 1, n - 1).clone();
    Ok(if odd { -d } else { d })
}

/// Classical adjugate, so that `m · adj(m) = det(m) · 1`.
pub fn adjugate(m: &Matrix<LaurentPoly>) -> Result<Matrix<LaurentPoly>> {
    if !m.is_square() {
        return Err(Error::DimensionMismatch(format!(
            "adjugate of a {}x{} matrix",
            m.rows(),
            m.cols()
        )));
    }
    let n = m.rows();
    if n == 1 {
        return Ok(Matrix::identity(1));
    }
    let mut adj = Matrix::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let minor = Matrix::from_vec(
                n - 1,
                n - 1,
                (0..n)
                    .filter(|&r| r != j)
                    .flat_map(|r| (0..n).filter(|&c| c != i).map(move |c| (r, c)))
                    .map(|(r, c)| m.get(r, c).clone())
                    .collect(),
            )?;
            let d = determinant(&minor)?;
            adj[(i, j)] = if (i + j) % 2 == 0 { d } else { -d };
        }
    }
    Ok(adj)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    fn mat(rows: Vec<Vec<LaurentPoly>>) -> Matrix<LaurentPoly> {
        Matrix::from_rows(rows).unwrap()
    }

    #[test]
    fn ranks() {
        let one_minus_z = lp(&[(0, 1), (1, -1)]);
        assert_eq!(rank_over_function_field(&mat(vec![vec![one_minus_z.clone()]])), 1);
        let prop = mat(vec![vec![one_minus_z.clone(), lp(&[(0, 2), (1, -2)])]]);
        assert_eq!(rank_over_function_field(&prop), 1);
        let full = mat(vec![
            vec![lp(&[(1, 1)]), one_minus_z],
            vec![lp(&[(0, -1), (1, 1)]), lp(&[(0, 1)])],
        ]);
        assert_eq!(rank_over_function_field(&full), 2);
        assert_eq!(determinant(&full).unwrap(), lp(&[(0, 1), (1, -1), (2, 1)]));
    }

    #[test]
    fn zero_and_empty() {
        assert_eq!(rank_over_function_field(&Matrix::zeros(3, 2)), 0);
        assert_eq!(rank_over_function_field(&Matrix::zeros(0, 4)), 0);
        assert_eq!(determinant(&Matrix::zeros(0, 0)).unwrap(), LaurentPoly::one());
    }

    #[test]
    fn determinant_tracks_row_swaps() {
        let m = mat(vec![
            vec![LaurentPoly::zero(), LaurentPoly::one()],
            vec![LaurentPoly::one(), LaurentPoly::zero()],
        ]);
        assert_eq!(determinant(&m).unwrap(), -LaurentPoly::one());
    }

    #[test]
    fn adjugate_identity() {
        let m = mat(vec![
            vec![lp(&[(0, 1), (1, -2)]), lp(&[(1, 3)]), lp(&[(0, 1)])],
            vec![lp(&[(0, 2)]), lp(&[(-1, 1), (2, 1)]), LaurentPoly::zero()],
            vec![lp(&[(0, 1)]), lp(&[(0, 1)]), lp(&[(1, -1)])],
        ]);
        let det = determinant(&m).unwrap();
        let prod = m.matmul(&adjugate(&m).unwrap()).unwrap();
        assert_eq!(prod, Matrix::scalar(3, det));
    }
}
