//! Diagonalization over the Novikov ring.
//!
//! `Z((z))` is a principal ideal domain, but the ring itself is never
//! materialized. The reduction works on Laurent polynomial matrices with two
//! kinds of moves: 2×2 row or column transforms with Laurent entries whose
//! determinant is a unit of `Z((z))`, and row/column swaps. Divisibility in
//! `Z((z))` between Laurent polynomials is decided exactly through the
//! rational subring: `a | b` in `Z((z))` if and only if `b / a` lies in
//! `S^-1 Z[z, z^-1]` (Fatou's lemma).
//!
//! The minus side is handled by reversing the variable and reducing on the
//! plus side.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::matrix::Matrix;
use super::rank::determinant;
use super::snf::SnfResult;
use crate::rings::{Direction, LaurentPoly, RationalFunction};
use crate::{Error, Result};

/// Elementary operations allowed before the reduction gives up.
pub const OPERATION_CAP: usize = 10_000;

/// Outcome of [`novikov_diagonalize_partial`].
#[derive(Debug, Clone, PartialEq)]
pub enum Diagonalization {
    Complete(SnfResult<LaurentPoly>),
    /// The cap was hit. `settled` holds the normalized pivots that were
    /// final when the reduction stopped.
    Inconclusive {
        operations: usize,
        settled: Vec<LaurentPoly>,
    },
}

impl SnfResult<LaurentPoly> {
    /// Invariant factors that are not units, i.e. the cyclic torsion
    /// summands `Z((z)) / (f)` of the cokernel.
    pub fn nonunit_factors(&self) -> Vec<LaurentPoly> {
        self.invariant_factors.iter().filter(|f| !f.is_one()).cloned().collect()
    }
}

/// Diagonalizes `m` over `Z((z))` (plus) or `Z((z^-1))` (minus).
///
/// Unit factors are reported as `1`; the others are normalized by
/// [`LaurentPoly::novikov_normalized`].
pub fn novikov_diagonalize(m: &Matrix<LaurentPoly>, dir: Direction) -> Result<SnfResult<LaurentPoly>> {
    match novikov_diagonalize_partial(m, dir, OPERATION_CAP) {
        Diagonalization::Complete(r) => Ok(r),
        Diagonalization::Inconclusive { operations, .. } => Err(Error::Inconclusive { operations }),
    }
}

/// Like [`novikov_diagonalize`], with an explicit operation cap and partial
/// results on failure.
pub fn novikov_diagonalize_partial(m: &Matrix<LaurentPoly>, dir: Direction, cap: usize) -> Diagonalization {
    match dir {
        Direction::Plus => reduce_plus(m, cap),
        Direction::Minus => {
            let rev = |x: &LaurentPoly| x.reverse_variable();
            match reduce_plus(&m.map(rev), cap) {
                Diagonalization::Complete(r) => {
                    let left = r.left.map(rev);
                    let right = r.right.map(rev);
                    let raw = r.diagonal.map(rev);
                    Diagonalization::Complete(finish(m, left, right, raw, Direction::Minus))
                }
                Diagonalization::Inconclusive { operations, settled } => Diagonalization::Inconclusive {
                    operations,
                    settled: settled
                        .iter()
                        .map(|f| f.reverse_variable().novikov_normalized(Direction::Minus))
                        .collect(),
                },
            }
        }
    }
}

/// Whether `a` and `b` differ by a unit of the Novikov ring on the `dir`
/// side. Zero is only associated to zero.
pub fn novikov_associated(a: &LaurentPoly, b: &LaurentPoly, dir: Direction) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    let (a, b) = match dir {
        Direction::Plus => (a.clone(), b.clone()),
        Direction::Minus => (a.reverse_variable(), b.reverse_variable()),
    };
    plus_divides(&a, &b).is_some() && plus_divides(&b, &a).is_some()
}

/// Working state of one plus-side reduction.
struct Reducer {
    a: Matrix<LaurentPoly>,
    u: Matrix<LaurentPoly>,
    v: Matrix<LaurentPoly>,
    ops: usize,
    cap: usize,
}

#[derive(Clone, Copy)]
enum Axis {
    Rows,
    Cols,
}

struct CapReached;

fn plus_divides(a: &LaurentPoly, b: &LaurentPoly) -> Option<RationalFunction> {
    if b.is_zero() {
        return Some(RationalFunction::zero());
    }
    RationalFunction::quotient(b, a).ok()
}

fn lowest(p: &LaurentPoly) -> (i64, BigInt) {
    let (e, c) = p.extreme(Direction::Plus).expect("nonzero");
    (e, c.clone())
}

impl Reducer {
    fn apply(
        &mut self,
        axis: Axis,
        x: usize,
        y: usize,
        t: &[[LaurentPoly; 2]; 2],
    ) -> std::result::Result<(), CapReached> {
        self.ops += 1;
        if self.ops > self.cap {
            return Err(CapReached);
        }
        match axis {
            Axis::Rows => {
                self.a.combine_rows(x, y, t);
                self.u.combine_rows(x, y, t);
            }
            Axis::Cols => {
                self.a.combine_cols(x, y, t);
                self.v.combine_cols(x, y, t);
            }
        }
        Ok(())
    }

    fn entry(&self, axis: Axis, t: usize, k: usize) -> &LaurentPoly {
        match axis {
            Axis::Rows => self.a.get(k, t),
            Axis::Cols => self.a.get(t, k),
        }
    }

    /// Zeroes the entry at position `k` of the pivot row or column, keeping
    /// the pivot at `(t, t)`.
    fn eliminate(&mut self, axis: Axis, t: usize, k: usize) -> std::result::Result<(), CapReached> {
        loop {
            let b = self.entry(axis, t, k).clone();
            if b.is_zero() {
                return Ok(());
            }
            let p = self.a.get(t, t).clone();
            if let Some(q) = plus_divides(&p, &b) {
                let tr = [
                    [LaurentPoly::one(), LaurentPoly::zero()],
                    [-q.numerator(), q.denominator().clone()],
                ];
                return self.apply(axis, t, k, &tr);
            }
            if let Some(q) = plus_divides(&b, &p) {
                let tr = [
                    [LaurentPoly::zero(), LaurentPoly::one()],
                    [q.denominator().clone(), -q.numerator()],
                ];
                return self.apply(axis, t, k, &tr);
            }
            // Neither divides the other: one step on the lowest terms.
            let (ka, alpha) = lowest(&p);
            let (kb, beta) = lowest(&b);
            let (qd, rd) = beta.div_rem(&alpha);
            let tr = if rd.is_zero() {
                [
                    [LaurentPoly::one(), LaurentPoly::zero()],
                    [LaurentPoly::monomial(-qd, kb - ka), LaurentPoly::one()],
                ]
            } else {
                let e = alpha.extended_gcd(&beta);
                let (g, s, tt) = if e.gcd.is_negative() {
                    (-e.gcd, -e.x, -e.y)
                } else {
                    (e.gcd, e.x, e.y)
                };
                [
                    [LaurentPoly::constant(s), LaurentPoly::monomial(tt, ka - kb)],
                    [
                        LaurentPoly::monomial(-(&beta / &g), kb - ka),
                        LaurentPoly::constant(&alpha / &g),
                    ],
                ]
            };
            self.apply(axis, t, k, &tr)?;
        }
    }

    fn pick_pivot(&self, t: usize) -> Option<(usize, usize)> {
        let (rows, cols) = self.a.shape();
        let mut best: Option<((BigInt, i64), (usize, usize))> = None;
        for i in t..rows {
            for j in t..cols {
                let x = self.a.get(i, j);
                if x.is_zero() {
                    continue;
                }
                let key = (lowest(x).1.abs(), x.span().unwrap_or(0));
                if best.as_ref().is_none_or(|(k, _)| key < *k) {
                    best = Some((key, (i, j)));
                }
            }
        }
        best.map(|(_, pos)| pos)
    }

    fn run(&mut self) -> std::result::Result<(), (usize, CapReached)> {
        let (rows, cols) = self.a.shape();
        let mut t = 0;
        while t < rows.min(cols) {
            let Some((pi, pj)) = self.pick_pivot(t) else { break };
            self.a.swap_rows(t, pi);
            self.u.swap_rows(t, pi);
            self.a.swap_cols(t, pj);
            self.v.swap_cols(t, pj);
            loop {
                for i in t + 1..rows {
                    self.eliminate(Axis::Rows, t, i).map_err(|c| (t, c))?;
                }
                for j in t + 1..cols {
                    self.eliminate(Axis::Cols, t, j).map_err(|c| (t, c))?;
                }
                if (t + 1..rows).any(|i| !self.a.get(i, t).is_zero()) {
                    continue;
                }
                let p = self.a.get(t, t).clone();
                let offender = (t + 1..rows)
                    .flat_map(|i| (t + 1..cols).map(move |j| (i, j)))
                    .find(|&(i, j)| plus_divides(&p, self.a.get(i, j)).is_none());
                match offender {
                    Some((i, _)) => {
                        let add = [
                            [LaurentPoly::one(), LaurentPoly::one()],
                            [LaurentPoly::zero(), LaurentPoly::one()],
                        ];
                        self.apply(Axis::Rows, t, i, &add).map_err(|c| (t, c))?;
                    }
                    None => break,
                }
            }
            t += 1;
        }
        Ok(())
    }
}

fn reduce_plus(m: &Matrix<LaurentPoly>, cap: usize) -> Diagonalization {
    let (rows, cols) = m.shape();
    let mut r = Reducer {
        a: m.clone(),
        u: Matrix::identity(rows),
        v: Matrix::identity(cols),
        ops: 0,
        cap,
    };
    match r.run() {
        Ok(()) => Diagonalization::Complete(finish(m, r.u, r.v, r.a, Direction::Plus)),
        Err((t, CapReached)) => Diagonalization::Inconclusive {
            operations: r.ops,
            settled: (0..t)
                .map(|i| normalize_factor(r.a.get(i, i), Direction::Plus))
                .collect(),
        },
    }
}

fn normalize_factor(f: &LaurentPoly, dir: Direction) -> LaurentPoly {
    if f.is_novikov_unit(dir) {
        LaurentPoly::one()
    } else {
        f.novikov_normalized(dir)
    }
}

/// Re-multiplies the transforms, checks their determinants are units on the
/// `dir` side and packages the normalized factors.
fn finish(
    m: &Matrix<LaurentPoly>,
    left: Matrix<LaurentPoly>,
    right: Matrix<LaurentPoly>,
    raw: Matrix<LaurentPoly>,
    dir: Direction,
) -> SnfResult<LaurentPoly> {
    let n = raw.rows().min(raw.cols());
    let rank = (0..n).take_while(|&i| !raw.get(i, i).is_zero()).count();
    let invariant_factors: Vec<LaurentPoly> = (0..rank).map(|i| normalize_factor(raw.get(i, i), dir)).collect();

    let divides = |a: &LaurentPoly, b: &LaurentPoly| match dir {
        Direction::Plus => plus_divides(a, b).is_some(),
        Direction::Minus => plus_divides(&a.reverse_variable(), &b.reverse_variable()).is_some(),
    };
    let chain_ok = (1..rank).all(|i| divides(raw.get(i - 1, i - 1), raw.get(i, i)));
    let diagonal_ok = raw.is_diagonal() && (rank..n).all(|i| raw.get(i, i).is_zero());
    let product_ok = left
        .matmul(m)
        .and_then(|x| x.matmul(&right))
        .map(|d| d == raw)
        .unwrap_or(false);
    let units_ok = [&left, &right]
        .iter()
        .all(|t| determinant(t).map(|d| d.is_novikov_unit(dir)).unwrap_or(false));

    SnfResult {
        invariant_factors,
        rank,
        transforms_valid: chain_ok && diagonal_ok && product_ok && units_ok,
        left,
        right,
        diagonal: raw,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    fn one_by_one(p: LaurentPoly) -> Matrix<LaurentPoly> {
        Matrix::from_rows(vec![vec![p]]).unwrap()
    }

    #[test]
    fn unit_scalar_has_no_torsion() {
        let r = novikov_diagonalize(&one_by_one(lp(&[(0, 1), (1, -2)])), Direction::Plus).unwrap();
        assert!(r.transforms_valid);
        assert_eq!(r.rank, 1);
        assert!(r.nonunit_factors().is_empty());
    }

    #[test]
    fn z_minus_two() {
        let m = one_by_one(lp(&[(0, -2), (1, 1)]));
        let plus = novikov_diagonalize(&m, Direction::Plus).unwrap();
        assert_eq!(plus.nonunit_factors(), vec![lp(&[(0, 2), (1, -1)])]);
        let minus = novikov_diagonalize(&m, Direction::Minus).unwrap();
        assert!(minus.transforms_valid);
        assert!(minus.nonunit_factors().is_empty());
    }

    #[test]
    fn diag_two_z() {
        let m = Matrix::diagonal(2, 2, &[lp(&[(0, 2)]), lp(&[(1, 1)])]);
        let r = novikov_diagonalize(&m, Direction::Plus).unwrap();
        assert!(r.transforms_valid);
        assert_eq!(r.invariant_factors, vec![LaurentPoly::one(), lp(&[(0, 2)])]);
    }

    #[test]
    fn coprime_entries_merge() {
        // Neither entry is a unit, but their lowest coefficients are coprime.
        let m = Matrix::from_rows(vec![vec![lp(&[(0, 2)]), lp(&[(0, 3), (1, -1)])]]).unwrap();
        let r = novikov_diagonalize(&m, Direction::Plus).unwrap();
        assert!(r.transforms_valid);
        assert_eq!(r.invariant_factors, vec![LaurentPoly::one()]);
    }

    #[test]
    fn repeated_factor() {
        let f = lp(&[(0, 2), (1, -1)]);
        let m = Matrix::diagonal(2, 2, &[f.clone(), &f * &f]);
        let r = novikov_diagonalize(&m, Direction::Plus).unwrap();
        assert!(r.transforms_valid);
        assert_eq!(r.invariant_factors, vec![f.clone(), &f * &f]);
    }

    #[test]
    fn zero_matrix_and_cap() {
        let r = novikov_diagonalize(&Matrix::zeros(2, 3), Direction::Plus).unwrap();
        assert_eq!(r.rank, 0);
        assert!(r.transforms_valid);
        let m = Matrix::from_rows(vec![vec![lp(&[(0, 6)]), lp(&[(0, 10), (1, 1)])]]).unwrap();
        assert!(matches!(
            novikov_diagonalize_partial(&m, Direction::Plus, 0),
            Diagonalization::Inconclusive { .. }
        ));
    }
}
