//! Reference computations that share no algorithm with the library.
//!
//! * Ranks over `Q(z)` by evaluating at several rational points and doing
//!   Gaussian elimination over `Q`.
//! * Novikov invariant factors through determinantal divisors: `d_k` is the
//!   gcd in `Z((z))` of all `k×k` minors (Laplace expansion), and the gcd of
//!   polynomials in `Z((z))` is the gcd of their contents times the gcd of
//!   their primitive parts over `Q[z]`.
//! * Association in `Z((z))`: after removing monomials and contents, `a/b`
//!   reduced over `Q` must have numerator and denominator with constant
//!   term `±1`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use novikov_core::linalg::Matrix;
use novikov_core::{Direction, LaurentPoly};

type QPoly = Vec<BigRational>;

fn q(x: &BigInt) -> BigRational {
    BigRational::from_integer(x.clone())
}

fn trim(mut p: QPoly) -> QPoly {
    while p.last().is_some_and(|c| c.is_zero()) {
        p.pop();
    }
    p
}

/// Dense coefficients of `z^-ord · p`, lowest first.
fn dense(p: &LaurentPoly) -> QPoly {
    let Some(lo) = p.ord() else { return Vec::new() };
    let hi = p.deg().unwrap();
    (lo..=hi).map(|e| q(&p.coeff(e))).collect()
}

fn qrem(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = a.clone();
    let lb = b.last().unwrap().clone();
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() / &lb;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] = &r[i + shift] - &f * c;
        }
        r = trim(r);
    }
    r
}

fn qdiv(a: &QPoly, b: &QPoly) -> QPoly {
    let mut r = a.clone();
    let lb = b.last().unwrap().clone();
    let mut out = vec![BigRational::zero(); a.len().saturating_sub(b.len()) + 1];
    while r.len() >= b.len() && !r.is_empty() {
        let shift = r.len() - b.len();
        let f = r.last().unwrap() / &lb;
        for (i, c) in b.iter().enumerate() {
            r[i + shift] = &r[i + shift] - &f * c;
        }
        out[shift] = f;
        r = trim(r);
    }
    assert!(r.is_empty(), "inexact division");
    trim(out)
}

fn qgcd(a: &QPoly, b: &QPoly) -> QPoly {
    let (mut x, mut y) = (trim(a.clone()), trim(b.clone()));
    while !y.is_empty() {
        let r = qrem(&x, &y);
        x = y;
        y = r;
    }
    if let Some(l) = x.last().cloned() {
        x = x.into_iter().map(|c| c / &l).collect();
    }
    x
}

/// Scales a nonzero rational polynomial to a primitive integer polynomial.
fn primitive(p: &QPoly) -> Vec<BigInt> {
    let den = p.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = p.iter().map(|c| (c * q(&den)).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    ints.into_iter().map(|c| c / &g).collect()
}

fn content(p: &LaurentPoly) -> BigInt {
    p.terms().fold(BigInt::zero(), |acc, (_, c)| acc.gcd(c))
}

fn to_plus(p: &LaurentPoly, dir: Direction) -> LaurentPoly {
    match dir {
        Direction::Plus => p.clone(),
        Direction::Minus => p.reverse_variable(),
    }
}

/// `a` and `b` differ by a unit of the Novikov ring on the `dir` side.
pub fn associated(a: &LaurentPoly, b: &LaurentPoly, dir: Direction) -> bool {
    if a.is_zero() || b.is_zero() {
        return a.is_zero() && b.is_zero();
    }
    let (a, b) = (to_plus(a, dir), to_plus(b, dir));
    if content(&a) != content(&b) {
        return false;
    }
    let (da, db) = (dense(&a), dense(&b));
    let g = qgcd(&da, &db);
    let ra = primitive(&qdiv(&da, &g));
    let rb = primitive(&qdiv(&db, &g));
    ra[0].abs().is_one() && rb[0].abs().is_one()
}

/// Gcd in `Z((z))` of a family, up to units; `None` if all are zero.
pub fn novikov_gcd(items: &[LaurentPoly]) -> Option<LaurentPoly> {
    let nonzero: Vec<&LaurentPoly> = items.iter().filter(|p| !p.is_zero()).collect();
    if nonzero.is_empty() {
        return None;
    }
    let c = nonzero.iter().fold(BigInt::zero(), |acc, p| acc.gcd(&content(p)));
    let g = nonzero.iter().map(|p| dense(p)).reduce(|x, y| qgcd(&x, &y)).unwrap();
    let prim = primitive(&g);
    Some(LaurentPoly::from_dense(0, &prim).scale(&c))
}

fn laplace_det(m: &[Vec<LaurentPoly>]) -> LaurentPoly {
    let n = m.len();
    if n == 0 {
        return LaurentPoly::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = LaurentPoly::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<LaurentPoly>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|(c, _)| *c != j)
                    .map(|(_, x)| x.clone())
                    .collect()
            })
            .collect();
        let term = &m[0][j] * &laplace_det(&minor);
        acc = if j % 2 == 0 { &acc + &term } else { &acc - &term };
    }
    acc
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if n < k {
        return Vec::new();
    }
    let mut out = combinations(n - 1, k);
    for mut c in combinations(n - 1, k - 1) {
        c.push(n - 1);
        out.push(c);
    }
    out
}

/// All `k×k` minors.
pub fn minors(m: &Matrix<LaurentPoly>, k: usize) -> Vec<LaurentPoly> {
    let mut out = Vec::new();
    for rows in combinations(m.rows(), k) {
        for cols in combinations(m.cols(), k) {
            let sub: Vec<Vec<LaurentPoly>> = rows
                .iter()
                .map(|&r| cols.iter().map(|&c| m.get(r, c).clone()).collect())
                .collect();
            out.push(laplace_det(&sub));
        }
    }
    out
}

/// Determinantal divisors `d_1, d_2, …` over the Novikov ring on the `dir`
/// side, up to units, stopping at the first `k` with all minors zero.
pub fn determinantal_divisors(m: &Matrix<LaurentPoly>, dir: Direction) -> Vec<LaurentPoly> {
    let mp = m.map(|x| to_plus(x, dir));
    let mut out = Vec::new();
    for k in 1..=m.rows().min(m.cols()) {
        match novikov_gcd(&minors(&mp, k)) {
            Some(d) => out.push(match dir {
                Direction::Plus => d,
                Direction::Minus => d.reverse_variable(),
            }),
            None => break,
        }
    }
    out
}

/// Checks a claimed list of invariant factors (units included, in order)
/// against the determinantal divisors.
pub fn check_invariant_factors(m: &Matrix<LaurentPoly>, factors: &[LaurentPoly], dir: Direction) -> Result<(), String> {
    let divisors = determinantal_divisors(m, dir);
    if divisors.len() != factors.len() {
        return Err(format!("rank {} but {} factors", divisors.len(), factors.len()));
    }
    let mut prod = LaurentPoly::one();
    for (k, (d, f)) in divisors.iter().zip(factors).enumerate() {
        prod = &prod * f;
        if !associated(&prod, d, dir) {
            return Err(format!("d_{} = {d} but product of factors is {prod}", k + 1));
        }
    }
    Ok(())
}

fn eval(p: &LaurentPoly, t: &BigRational) -> BigRational {
    let mut acc = BigRational::zero();
    for (e, c) in p.terms() {
        let pow = if e >= 0 {
            num_traits::pow(t.clone(), e as usize)
        } else {
            num_traits::pow(t.recip(), (-e) as usize)
        };
        acc += q(c) * pow;
    }
    acc
}

fn rank_q(mut a: Vec<Vec<BigRational>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, p);
        for i in 0..rows {
            if i != r && !a[i][c].is_zero() {
                let f = &a[i][c] / &a[r][c];
                let pivot = a[r].clone();
                for (x, p) in a[i].iter_mut().zip(&pivot).skip(c) {
                    *x -= &f * p;
                }
            }
        }
        r += 1;
    }
    r
}

/// Rank over `Q(z)`, as the maximum rank over `Q` at several evaluation
/// points.
pub fn rank_by_evaluation(m: &Matrix<LaurentPoly>) -> usize {
    [2i64, 3, 5, 7, 11, 13, -17, 19]
        .iter()
        .map(|&t| {
            let t = BigRational::from_integer(BigInt::from(t)) / BigRational::from_integer(BigInt::from(t.abs() + 1));
            let a = (0..m.rows())
                .map(|r| (0..m.cols()).map(|c| eval(m.get(r, c), &t)).collect())
                .collect();
            rank_q(a)
        })
        .max()
        .unwrap_or(0)
}

/// Invariant factors of an integer matrix from determinantal divisors.
pub fn integer_invariant_factors(m: &Matrix<BigInt>) -> Vec<BigInt> {
    let l = m.map(|x| LaurentPoly::constant(x.clone()));
    let mut out = Vec::new();
    let mut prev = BigInt::one();
    for k in 1..=m.rows().min(m.cols()) {
        let g = minors(&l, k).iter().fold(BigInt::zero(), |acc, x| acc.gcd(&x.coeff(0)));
        if g.is_zero() {
            break;
        }
        out.push(&g / &prev);
        prev = g;
    }
    out
}
