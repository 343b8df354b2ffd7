//! Algebraic fundamental domains and the algebraic Novikov complex.
//!
//! A domain is given over `Z` by two based complexes `D` and `F` and the
//! block maps
//!
//! * `c(i) : F_i → D_{i-1}`, making `E = D ⊕ F` a complex with
//!   `d_E = [[d_D, c], [0, d_F]]`;
//! * `h_D(i) : D_i → D_i` and `h_F(i) : D_i → F_i`, making
//!   `h = [h_D; h_F] : D → E` a chain map.
//!
//! With `g : D → E` the inclusion, `φ = g - z·h` is injective and its
//! cokernel is the algebraic Novikov complex `F̂` with
//! `d_F̂ = d_F + z·h_F·(1 - z·h_D)^-1·c`.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::complexes::{mapping_cone, union_range, ChainComplex, ChainMap};
use crate::linalg::{adjugate, determinant, to_laurent, Matrix};
use crate::rings::{expand, Direction, LaurentPoly, RationalFunction};
use crate::{Error, Result};

pub const IDENTITY_DD: &str = "d_D d_D = 0";
pub const IDENTITY_DF: &str = "d_F d_F = 0";
pub const IDENTITY_C: &str = "d_D c + c d_F = 0";
pub const IDENTITY_HD: &str = "d_D h_D + c h_F = h_D d_D";
pub const IDENTITY_HF: &str = "d_F h_F = h_F d_D";

type Blocks = BTreeMap<i64, Matrix<BigInt>>;

#[derive(Clone, Debug, PartialEq)]
pub struct AlgebraicFundamentalDomain {
    d: ChainComplex<BigInt>,
    f: ChainComplex<BigInt>,
    c: Blocks,
    h_d: Blocks,
    h_f: Blocks,
}

fn z_times(m: &Matrix<BigInt>) -> Matrix<LaurentPoly> {
    m.map(|x| LaurentPoly::monomial(x.clone(), 1))
}

fn shape_check(name: &str, i: i64, m: &Matrix<BigInt>, rows: usize, cols: usize) -> Result<()> {
    if m.shape() != (rows, cols) {
        return Err(Error::DimensionMismatch(format!(
            "{name} in degree {i} is {}x{}, expected {rows}x{cols}",
            m.rows(),
            m.cols()
        )));
    }
    Ok(())
}

impl AlgebraicFundamentalDomain {
    /// Checks block shapes and all five defining identities.
    pub fn new(d: ChainComplex<BigInt>, f: ChainComplex<BigInt>, c: Blocks, h_d: Blocks, h_f: Blocks) -> Result<Self> {
        for (&i, m) in &c {
            shape_check("c", i, m, d.rank(i - 1), f.rank(i))?;
        }
        for (&i, m) in &h_d {
            shape_check("h_D", i, m, d.rank(i), d.rank(i))?;
        }
        for (&i, m) in &h_f {
            shape_check("h_F", i, m, f.rank(i), d.rank(i))?;
        }
        let fd = Self { d, f, c, h_d, h_f };
        fd.validate()?;
        Ok(fd)
    }

    pub fn d(&self) -> &ChainComplex<BigInt> {
        &self.d
    }

    pub fn f(&self) -> &ChainComplex<BigInt> {
        &self.f
    }

    pub fn c(&self, i: i64) -> Matrix<BigInt> {
        self.c
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.d.rank(i - 1), self.f.rank(i)))
    }

    pub fn h_d(&self, i: i64) -> Matrix<BigInt> {
        self.h_d
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.d.rank(i), self.d.rank(i)))
    }

    pub fn h_f(&self, i: i64) -> Matrix<BigInt> {
        self.h_f
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.f.rank(i), self.d.rank(i)))
    }

    /// Degrees where `D` or `F` is nonzero.
    pub fn range(&self) -> Option<(i64, i64)> {
        union_range(self.d.range(), self.f.range())
    }

    /// Re-checks the five identities, reporting the first failure.
    pub fn validate(&self) -> Result<()> {
        let fail = |identity: &'static str, degree: i64| Err(Error::InvalidDomain { identity, degree });
        if let Err(Error::NotAComplex { degree, .. }) = self.d.validate() {
            return fail(IDENTITY_DD, degree);
        }
        if let Err(Error::NotAComplex { degree, .. }) = self.f.validate() {
            return fail(IDENTITY_DF, degree);
        }
        let Some((lo, hi)) = self.range() else {
            return Ok(());
        };
        for i in lo..=hi + 2 {
            let lhs = self
                .d
                .differential(i - 1)
                .matmul(&self.c(i))?
                .add(&self.c(i - 1).matmul(&self.f.differential(i))?)?;
            if !lhs.is_zero() {
                return fail(IDENTITY_C, i);
            }
        }
        for i in lo..=hi + 1 {
            let dd = self.d.differential(i);
            let lhs = dd.matmul(&self.h_d(i))?.add(&self.c(i).matmul(&self.h_f(i))?)?;
            if lhs != self.h_d(i - 1).matmul(&dd)? {
                return fail(IDENTITY_HD, i);
            }
            let lhs = self.f.differential(i).matmul(&self.h_f(i))?;
            if lhs != self.h_f(i - 1).matmul(&dd)? {
                return fail(IDENTITY_HF, i);
            }
        }
        Ok(())
    }

    /// `E = D ⊕ F` with `d_E = [[d_D, c], [0, d_F]]`.
    pub fn e_complex(&self) -> Result<ChainComplex<BigInt>> {
        let Some((lo, hi)) = self.range() else {
            return Ok(ChainComplex::empty());
        };
        let (d, f) = (&self.d, &self.f);
        let ranks = (lo..=hi).map(|i| d.rank(i) + f.rank(i)).collect();
        let mut diffs = BTreeMap::new();
        for i in lo + 1..=hi {
            let blocks = vec![
                vec![d.differential(i), self.c(i)],
                vec![Matrix::zeros(f.rank(i - 1), d.rank(i)), f.differential(i)],
            ];
            diffs.insert(
                i,
                Matrix::block(&[d.rank(i - 1), f.rank(i - 1)], &[d.rank(i), f.rank(i)], &blocks)?,
            );
        }
        ChainComplex::new(lo, ranks, diffs)
    }

    /// `φ = g - z·h : D → E` over `Z[z, z^-1]`.
    pub fn phi(&self) -> Result<ChainMap<LaurentPoly>> {
        let d = self.d.map(|x| LaurentPoly::constant(x.clone()));
        let e = self.e_complex()?.map(|x| LaurentPoly::constant(x.clone()));
        let mut comps = BTreeMap::new();
        for i in self.d.degrees() {
            let n = self.d.rank(i);
            let top = Matrix::identity(n).sub(&z_times(&self.h_d(i)))?;
            let bottom = z_times(&self.h_f(i)).neg();
            let m = Matrix::block(&[n, self.f.rank(i)], &[n], &[vec![top], vec![bottom]])?;
            comps.insert(i, m);
        }
        ChainMap::new(d, e, comps)
    }

    /// Block-diagonal sum of two domains.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let d = self.d.direct_sum(&other.d)?;
        let f = self.f.direct_sum(&other.f)?;
        let Some((lo, hi)) = union_range(self.range(), other.range()) else {
            return Self::new(d, f, Blocks::new(), Blocks::new(), Blocks::new());
        };
        let diag = |a: Matrix<BigInt>, b: Matrix<BigInt>| {
            let (ra, ca) = a.shape();
            let (rb, cb) = b.shape();
            Matrix::block(
                &[ra, rb],
                &[ca, cb],
                &[vec![a, Matrix::zeros(ra, cb)], vec![Matrix::zeros(rb, ca), b]],
            )
        };
        let mut c = Blocks::new();
        let mut h_d = Blocks::new();
        let mut h_f = Blocks::new();
        for i in lo..=hi + 1 {
            c.insert(i, diag(self.c(i), other.c(i))?);
            h_d.insert(i, diag(self.h_d(i), other.h_d(i))?);
            h_f.insert(i, diag(self.h_f(i), other.h_f(i))?);
        }
        Self::new(d, f, c, h_d, h_f)
    }
}

/// The mapping cone `C(φ)`: degree `i` carries `D_{i-1} ⊕ D_i ⊕ F_i` and
/// the differential is `[[-d_D, 0, 0], [1 - z·h_D, d_D, c], [-z·h_F, 0, d_F]]`.
pub fn assemble_mapping_cone(fd: &AlgebraicFundamentalDomain) -> Result<ChainComplex<LaurentPoly>> {
    mapping_cone(&fd.phi()?)
}

/// `1 - z·h_D(i)` over `Z[z, z^-1]`.
fn one_minus_zh(fd: &AlgebraicFundamentalDomain, i: i64) -> Matrix<LaurentPoly> {
    Matrix::identity(fd.d.rank(i))
        .sub(&z_times(&fd.h_d(i)))
        .expect("square")
}

/// `Σ_{j=0}^{K} z^j h^j`.
fn geometric_sum(h: &Matrix<BigInt>, k: usize) -> Matrix<LaurentPoly> {
    let n = h.rows();
    let hl = to_laurent(h);
    let mut power: Matrix<LaurentPoly> = Matrix::identity(n);
    let mut acc = Matrix::zeros(n, n);
    for j in 0..=k {
        acc = acc.add(&power.map(|x| x.shift(j as i64))).expect("square");
        power = power.matmul(&hl).expect("square");
    }
    acc
}

/// `F̂` with entries in `S^-1 Z[z, z^-1]`, computed exactly through the
/// adjugate of `1 - z·h_D`.
pub fn algebraic_novikov_complex(fd: &AlgebraicFundamentalDomain) -> Result<ChainComplex<RationalFunction>> {
    let Some((lo, hi)) = fd.f.range() else {
        return Ok(ChainComplex::empty());
    };
    let ranks = (lo..=hi).map(|i| fd.f.rank(i)).collect();
    let mut diffs = BTreeMap::new();
    for i in lo + 1..=hi {
        let a = one_minus_zh(fd, i - 1);
        let det = determinant(&a)?;
        let adj = adjugate(&a)?;
        // z·h_F·adj(A)·c, to be divided by det(A).
        let num = z_times(&fd.h_f(i - 1)).matmul(&adj)?.matmul(&to_laurent(&fd.c(i)))?;
        let df = to_laurent(&fd.f.differential(i));
        let (rows, cols) = df.shape();
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                let top = &(df.get(r, c) * &det) + num.get(r, c);
                entries.push(RationalFunction::new(top, det.clone())?);
            }
        }
        diffs.insert(i, Matrix::from_vec(rows, cols, entries)?);
    }
    ChainComplex::new(lo, ranks, diffs)
}

/// `F̂` with the series `d_F + Σ_{j=1}^{K} z^j h_F h_D^{j-1} c` cut off
/// after `z^K`. Not a complex on the nose: `d∘d` vanishes through `z^K`.
#[derive(Clone, Debug, PartialEq)]
pub struct TruncatedComplex {
    pub lo: i64,
    pub ranks: Vec<usize>,
    pub differentials: BTreeMap<i64, Matrix<LaurentPoly>>,
    pub precision: usize,
}

impl TruncatedComplex {
    pub fn differential(&self, i: i64) -> Option<&Matrix<LaurentPoly>> {
        self.differentials.get(&i)
    }

    /// Checks `d_{i-1} d_i ≡ 0` through `z^K` in every degree.
    pub fn square_vanishes(&self) -> bool {
        let k = self.precision as i64;
        self.differentials
            .iter()
            .all(|(i, d)| match self.differentials.get(&(i - 1)) {
                Some(prev) => prev
                    .matmul(d)
                    .map(|p| p.entries().all(|x| x.truncate_above(k).is_zero()))
                    .unwrap_or(false),
                None => true,
            })
    }
}

fn truncated_differential(fd: &AlgebraicFundamentalDomain, i: i64, k: usize) -> Result<Matrix<LaurentPoly>> {
    let hf = to_laurent(&fd.h_f(i - 1));
    let hd = to_laurent(&fd.h_d(i - 1));
    let c = to_laurent(&fd.c(i));
    let mut acc = to_laurent(&fd.f.differential(i));
    // term_j = h_F h_D^{j-1} c
    let mut tail = c;
    for j in 1..=k {
        let term = hf.matmul(&tail)?;
        acc = acc.add(&term.map(|x| x.shift(j as i64)))?;
        tail = hd.matmul(&tail)?;
    }
    Ok(acc)
}

/// `F̂` as a truncated presentation of precision `K`.
pub fn algebraic_novikov_truncated(fd: &AlgebraicFundamentalDomain, k: usize) -> Result<TruncatedComplex> {
    let Some((lo, hi)) = fd.f.range() else {
        return Ok(TruncatedComplex {
            lo: 0,
            ranks: Vec::new(),
            differentials: BTreeMap::new(),
            precision: k,
        });
    };
    let mut differentials = BTreeMap::new();
    for i in lo + 1..=hi {
        differentials.insert(i, truncated_differential(fd, i, k)?);
    }
    Ok(TruncatedComplex {
        lo,
        ranks: (lo..=hi).map(|i| fd.f.rank(i)).collect(),
        differentials,
        precision: k,
    })
}

/// Checks `(1 - z·h_D)·Σ_{j≤K} z^j h_D^j ≡ 1` through `z^K` in every degree.
pub fn geometric_series_check(fd: &AlgebraicFundamentalDomain, k: usize) -> Result<bool> {
    for i in fd.d.degrees() {
        let prod = one_minus_zh(fd, i).matmul(&geometric_sum(&fd.h_d(i), k))?;
        let cut = prod.map(|x| x.truncate_above(k as i64));
        if cut != Matrix::identity(fd.d.rank(i)) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Checks that the exact and truncated forms of `F̂` agree through `z^K`.
pub fn exact_matches_truncated(fd: &AlgebraicFundamentalDomain, k: usize) -> Result<bool> {
    let exact = algebraic_novikov_complex(fd)?;
    let trunc = algebraic_novikov_truncated(fd, k)?;
    for (i, t) in &trunc.differentials {
        let e = exact.differential(*i);
        for (x, y) in e.entries().zip(t.entries()) {
            let series = expand(x, Direction::Plus, k as i64)?;
            if series.to_laurent() != y.truncate_above(k as i64) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// First disagreement found by [`cokernel_iso_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokernelMismatch {
    pub degree: i64,
    /// Lowest exponent at which the two sides differ.
    pub order: i64,
    pub check: &'static str,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CokernelVerdict {
    pub precision: usize,
    pub mismatch: Option<CokernelMismatch>,
}

impl CokernelVerdict {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

fn first_difference(a: &Matrix<LaurentPoly>, b: &Matrix<LaurentPoly>, k: i64) -> Option<i64> {
    a.entries()
        .zip(b.entries())
        .filter_map(|(x, y)| (x - y).truncate_above(k).ord())
        .min()
}

/// Verifies through `z^K` that projecting `C(φ)` onto `F̂` by
/// `p(u, x, y) = y + z·h_F·(1 - z·h_D)^-1·x` kills the image of `φ`,
/// intertwines the differentials, and that `1 - z·h_D` is invertible over
/// `Z((z))` in every degree.
pub fn cokernel_iso_check(fd: &AlgebraicFundamentalDomain, k: usize) -> Result<CokernelVerdict> {
    let kk = k as i64;
    let verdict = |mismatch| Ok(CokernelVerdict { precision: k, mismatch });
    let Some((lo, hi)) = fd.range() else {
        return verdict(None);
    };
    for i in fd.d.degrees() {
        if !determinant(&one_minus_zh(fd, i))?.is_novikov_unit(Direction::Plus) {
            return verdict(Some(CokernelMismatch {
                degree: i,
                order: 0,
                check: "1 - z h_D invertible",
            }));
        }
    }
    let cone = assemble_mapping_cone(fd)?;
    let phi = fd.phi()?;
    let (d, f) = (&fd.d, &fd.f);
    let projection = |i: i64| -> Result<Matrix<LaurentPoly>> {
        let x = z_times(&fd.h_f(i)).matmul(&geometric_sum(&fd.h_d(i), k))?;
        Matrix::block(
            &[f.rank(i)],
            &[d.rank(i - 1), d.rank(i), f.rank(i)],
            &[vec![
                Matrix::zeros(f.rank(i), d.rank(i - 1)),
                x,
                Matrix::identity(f.rank(i)),
            ]],
        )
    };
    for i in lo..=hi + 1 {
        // p ∘ φ restricted to E_i: drop the D_{i-1} columns of p.
        let p = projection(i)?;
        let p_e = p.submatrix(0, d.rank(i - 1), f.rank(i), d.rank(i) + f.rank(i));
        let killed = p_e.matmul(&phi.component(i))?;
        if let Some(order) = first_difference(&killed, &Matrix::zeros(killed.rows(), killed.cols()), kk) {
            return verdict(Some(CokernelMismatch {
                degree: i,
                order,
                check: "p φ = 0",
            }));
        }
    }
    for i in lo + 1..=hi + 1 {
        let left = projection(i - 1)?.matmul(&cone.differential(i))?;
        let right = truncated_differential(fd, i, k)?.matmul(&projection(i)?)?;
        if let Some(order) = first_difference(&left, &right, kk) {
            return verdict(Some(CokernelMismatch {
                degree: i,
                order,
                check: "p d_C = d_F̂ p",
            }));
        }
    }
    if !exact_matches_truncated(fd, k)? {
        let trunc = algebraic_novikov_truncated(fd, k)?;
        let exact = algebraic_novikov_complex(fd)?;
        for (i, t) in &trunc.differentials {
            let e = exact
                .differential(*i)
                .try_map(|x| expand(x, Direction::Plus, kk).map(|s| s.to_laurent()))?;
            if let Some(order) = first_difference(&e, t, kk) {
                return verdict(Some(CokernelMismatch {
                    degree: *i,
                    order,
                    check: "exact d_F̂ = truncated d_F̂",
                }));
            }
        }
    }
    verdict(None)
}

/// `Π_i det(1 - z·h_D | D_i)^{(-1)^i}`, the determinant form of the torsion
/// of the projection `C(φ) → F̂`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaFunction {
    pub value: RationalFunction,
}

pub fn torsion_zeta(fd: &AlgebraicFundamentalDomain) -> Result<ZetaFunction> {
    let mut num = LaurentPoly::one();
    let mut den = LaurentPoly::one();
    for i in fd.d.degrees() {
        let det = determinant(&one_minus_zh(fd, i))?;
        if i.rem_euclid(2) == 0 {
            num = &num * &det;
        } else {
            den = &den * &det;
        }
    }
    Ok(ZetaFunction {
        value: RationalFunction::new(num, den)?,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_matrix;
    use crate::novikov::novikov_homology;

    fn lp(terms: &[(i64, i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(terms.iter().copied())
    }

    fn blocks(items: &[(i64, &[&[i64]])]) -> Blocks {
        items.iter().map(|(i, m)| (*i, int_matrix(m))).collect()
    }

    fn scalar_domain() -> AlgebraicFundamentalDomain {
        let d = ChainComplex::concentrated(0, 1);
        let f = ChainComplex::new(0, vec![1, 1], Blocks::new()).unwrap();
        AlgebraicFundamentalDomain::new(
            d,
            f,
            blocks(&[(1, &[&[1]])]),
            blocks(&[(0, &[&[1]])]),
            blocks(&[(0, &[&[1]])]),
        )
        .unwrap()
    }

    fn point_domain(h: i64) -> AlgebraicFundamentalDomain {
        AlgebraicFundamentalDomain::new(
            ChainComplex::concentrated(0, 1),
            ChainComplex::empty(),
            Blocks::new(),
            blocks(&[(0, &[&[h]])]),
            Blocks::new(),
        )
        .unwrap()
    }

    #[test]
    fn scalar_domain_novikov_differential() {
        let fd = scalar_domain();
        let exact = algebraic_novikov_complex(&fd).unwrap();
        let expected = RationalFunction::new(lp(&[(1, 1)]), lp(&[(0, 1), (1, -1)])).unwrap();
        assert_eq!(exact.differential(1), Matrix::scalar(1, expected));
        let t = algebraic_novikov_truncated(&fd, 3).unwrap();
        assert_eq!(
            t.differential(1).unwrap(),
            &Matrix::scalar(1, lp(&[(1, 1), (2, 1), (3, 1)]))
        );
        assert!(cokernel_iso_check(&fd, 8).unwrap().passed());
        assert!(geometric_series_check(&fd, 8).unwrap());
        let cone = assemble_mapping_cone(&fd).unwrap();
        assert_eq!(cone.ranks(), crate::complexes::DegreeCounts::from([(0, 2), (1, 2)]));
    }

    #[test]
    fn invalid_domain_reports_identity() {
        let f = ChainComplex::new(0, vec![1, 1], blocks(&[(1, &[&[1]])])).unwrap();
        let d = ChainComplex::new(0, vec![1, 1], Blocks::new()).unwrap();
        let err = AlgebraicFundamentalDomain::new(d, f, Blocks::new(), Blocks::new(), blocks(&[(1, &[&[1]])]));
        assert!(matches!(
            err,
            Err(Error::InvalidDomain {
                identity: IDENTITY_HF,
                degree: 1
            })
        ));

        let d = ChainComplex::new(0, vec![1, 1], blocks(&[(1, &[&[1]])])).unwrap();
        let f = ChainComplex::concentrated(2, 1);
        let err = AlgebraicFundamentalDomain::new(d, f, blocks(&[(2, &[&[1]])]), Blocks::new(), Blocks::new());
        assert!(matches!(
            err,
            Err(Error::InvalidDomain {
                identity: IDENTITY_C,
                degree: 2
            })
        ));
    }

    #[test]
    fn circle_assembly() {
        let fd = point_domain(1);
        let cone = assemble_mapping_cone(&fd).unwrap();
        assert_eq!(cone.differential(1), Matrix::scalar(1, lp(&[(0, 1), (1, -1)])));
        assert!(novikov_homology(&cone, Direction::Plus).vanishes());
        let cone2 = assemble_mapping_cone(&point_domain(2)).unwrap();
        assert!(novikov_homology(&cone2, Direction::Plus).vanishes());
        assert!(algebraic_novikov_complex(&fd).unwrap().is_empty());
    }

    #[test]
    fn zeta() {
        assert_eq!(torsion_zeta(&point_domain(0)).unwrap().value, RationalFunction::one());
        assert_eq!(
            torsion_zeta(&point_domain(1)).unwrap().value,
            RationalFunction::from_poly(lp(&[(0, 1), (1, -1)]))
        );
        let fd = AlgebraicFundamentalDomain::new(
            ChainComplex::concentrated(1, 1),
            ChainComplex::empty(),
            Blocks::new(),
            blocks(&[(1, &[&[2]])]),
            Blocks::new(),
        )
        .unwrap();
        let z = torsion_zeta(&fd).unwrap().value;
        assert_eq!(
            z,
            RationalFunction::new(LaurentPoly::one(), lp(&[(0, 1), (1, -2)])).unwrap()
        );
        let sum = fd.direct_sum(&point_domain(1)).unwrap();
        assert_eq!(
            torsion_zeta(&sum).unwrap().value,
            &z * &torsion_zeta(&point_domain(1)).unwrap().value
        );
    }
}
