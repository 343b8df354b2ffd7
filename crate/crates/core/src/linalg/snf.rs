use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::matrix::{self, Matrix};
use super::rank::{adjugate, determinant};
use crate::{Error, Result};

/// Outcome of a diagonalization `U · M · V = D`.
///
/// `invariant_factors` lists the nonzero diagonal entries of `D` in order,
/// each dividing the next. `transforms_valid` records that the product was
/// re-multiplied and compared against `D` after the reduction finished.
#[derive(Debug, Clone, PartialEq)]
pub struct SnfResult<R: matrix::Ring> {
    pub invariant_factors: Vec<R>,
    pub rank: usize,
    pub transforms_valid: bool,
    pub left: Matrix<R>,
    pub right: Matrix<R>,
    pub diagonal: Matrix<R>,
}

fn bezout(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let e = a.extended_gcd(b);
    if e.gcd.is_negative() {
        (-e.gcd, -e.x, -e.y)
    } else {
        (e.gcd, e.x, e.y)
    }
}

/// 2×2 determinant-one transform sending `(p, b)` to `(gcd, 0)`.
fn gcd_transform(p: &BigInt, b: &BigInt) -> [[BigInt; 2]; 2] {
    let (q, r) = b.div_rem(p);
    if r.is_zero() {
        return [[BigInt::one(), BigInt::zero()], [-q, BigInt::one()]];
    }
    let (g, x, y) = bezout(p, b);
    [[x, y], [-(b / &g), p / &g]]
}

/// Smith normal form over `Z`.
///
/// The invariant factors are positive and form a divisibility chain; the
/// transforms are unimodular by construction and the identity
/// `U · M · V = D` is re-checked before returning.
pub fn smith_normal_form_int(m: &Matrix<BigInt>) -> SnfResult<BigInt> {
    let (rows, cols) = m.shape();
    let mut a = m.clone();
    let mut u: Matrix<BigInt> = Matrix::identity(rows);
    let mut v: Matrix<BigInt> = Matrix::identity(cols);

    let mut t = 0;
    while t < rows.min(cols) {
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let x = a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                if best.is_none_or(|(bi, bj)| x.abs() < a.get(bi, bj).abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((pi, pj)) = best else { break };
        a.swap_rows(t, pi);
        u.swap_rows(t, pi);
        a.swap_cols(t, pj);
        v.swap_cols(t, pj);

        loop {
            for i in t + 1..rows {
                if a.get(i, t).is_zero() {
                    continue;
                }
                let tr = gcd_transform(a.get(t, t), a.get(i, t));
                a.combine_rows(t, i, &tr);
                u.combine_rows(t, i, &tr);
            }
            for j in t + 1..cols {
                if a.get(t, j).is_zero() {
                    continue;
                }
                let tr = gcd_transform(a.get(t, t), a.get(t, j));
                a.combine_cols(t, j, &tr);
                v.combine_cols(t, j, &tr);
            }
            if (t + 1..rows).any(|i| !a.get(i, t).is_zero()) {
                continue;
            }
            // Pivot row and column are clear; enforce divisibility.
            let p = a.get(t, t).clone();
            let offender = (t + 1..rows)
                .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                .find(|&(i, j)| !a.get(i, j).is_multiple_of(&p));
            match offender {
                Some((i, _)) => {
                    let add = [[BigInt::one(), BigInt::one()], [BigInt::zero(), BigInt::one()]];
                    a.combine_rows(t, i, &add);
                    u.combine_rows(t, i, &add);
                }
                None => break,
            }
        }
        if a.get(t, t).is_negative() {
            let flip = [[-BigInt::one(), BigInt::zero()], [BigInt::zero(), BigInt::one()]];
            if rows > 1 {
                let other = if t + 1 < rows { t + 1 } else { 0 };
                a.combine_rows(t, other, &flip);
                u.combine_rows(t, other, &flip);
            } else {
                a[(t, t)] = -a.get(t, t).clone();
                u[(t, t)] = -u.get(t, t).clone();
            }
        }
        t += 1;
    }

    let rank = t;
    let invariant_factors: Vec<BigInt> = (0..rank).map(|i| a.get(i, i).clone()).collect();
    let chain_ok = invariant_factors.windows(2).all(|w| w[1].is_multiple_of(&w[0]));
    let product_ok = u
        .matmul(m)
        .and_then(|um| um.matmul(&v))
        .map(|d| d == a)
        .unwrap_or(false);
    SnfResult {
        invariant_factors,
        rank,
        transforms_valid: chain_ok && product_ok && a.is_diagonal(),
        left: u,
        right: v,
        diagonal: a,
    }
}

/// Inverse of a unimodular integer matrix.
pub fn inverse_unimodular(m: &Matrix<BigInt>) -> Result<Matrix<BigInt>> {
    let l = matrix::to_laurent(m);
    let det = determinant(&l)?;
    let unit = det.coeff(0);
    if !det.is_constant() || !unit.abs().is_one() {
        return Err(Error::NotAUnit(format!("determinant {det}")));
    }
    Ok(adjugate(&l)?.map(|x| x.coeff(0) * &unit))
}
