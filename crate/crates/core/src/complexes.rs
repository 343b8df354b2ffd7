//! Bounded based free chain complexes, chain maps and mapping cones.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::linalg::{smith_normal_form_int, Matrix, Ring};
use crate::rings::{LaurentPoly, RationalFunction};
use crate::{Error, Result};

/// Per-degree nonnegative counts (ranks, critical points, bounds).
pub type DegreeCounts = BTreeMap<i64, usize>;

/// A bounded complex of based free modules over `R`.
///
/// Degrees run over `lo..=hi`; `differential(i)` maps degree `i` to `i - 1`
/// and is stored for `lo < i <= hi`. Outside the range every module is zero.
#[derive(Clone, PartialEq)]
pub struct ChainComplex<R: Ring> {
    lo: i64,
    ranks: Vec<usize>,
    diffs: Vec<Matrix<R>>,
}

impl<R: Ring> ChainComplex<R> {
    /// Builds and validates a complex. Differentials missing from `diffs`
    /// are zero; entries outside `(lo, hi]` must be zero-sized.
    pub fn new(lo: i64, ranks: Vec<usize>, mut diffs: BTreeMap<i64, Matrix<R>>) -> Result<Self> {
        let hi = lo + ranks.len() as i64 - 1;
        let rank = |i: i64| -> usize {
            if i < lo || i > hi {
                0
            } else {
                ranks[(i - lo) as usize]
            }
        };
        for (&i, m) in &diffs {
            if m.shape() != (rank(i - 1), rank(i)) {
                return Err(Error::DimensionMismatch(format!(
                    "differential in degree {i} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    rank(i - 1),
                    rank(i)
                )));
            }
        }
        let stored = (lo + 1..=hi)
            .map(|i| diffs.remove(&i).unwrap_or_else(|| Matrix::zeros(rank(i - 1), rank(i))))
            .collect();
        let c = Self {
            lo,
            ranks,
            diffs: stored,
        };
        c.validate()?;
        Ok(c)
    }

    /// The complex with nothing in it.
    pub fn empty() -> Self {
        Self {
            lo: 0,
            ranks: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// A single module in one degree.
    pub fn concentrated(degree: i64, rank: usize) -> Self {
        Self {
            lo: degree,
            ranks: vec![rank],
            diffs: Vec::new(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.ranks.is_empty()
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.ranks.len() as i64 - 1
    }

    /// Degree range as an inclusive pair, `None` for the empty complex.
    pub fn range(&self) -> Option<(i64, i64)> {
        (!self.is_empty()).then(|| (self.lo, self.hi()))
    }

    pub fn degrees(&self) -> impl Iterator<Item = i64> {
        self.lo..=self.hi()
    }

    pub fn rank(&self, i: i64) -> usize {
        if i < self.lo || i > self.hi() {
            0
        } else {
            self.ranks[(i - self.lo) as usize]
        }
    }

    pub fn ranks(&self) -> DegreeCounts {
        self.degrees().map(|i| (i, self.rank(i))).collect()
    }

    /// `d_i : C_i → C_{i-1}`; a zero matrix of the right shape outside the
    /// stored range.
    pub fn differential(&self, i: i64) -> Matrix<R> {
        if i > self.lo && i <= self.hi() {
            self.diffs[(i - self.lo - 1) as usize].clone()
        } else {
            Matrix::zeros(self.rank(i - 1), self.rank(i))
        }
    }

    /// Checks `d_{i-1} d_i = 0` in every degree.
    pub fn validate(&self) -> Result<()> {
        for i in self.lo + 2..=self.hi() {
            let prod = self.differential(i - 1).matmul(&self.differential(i))?;
            if !prod.is_zero() {
                return Err(Error::NotAComplex {
                    degree: i,
                    product: prod.to_string(),
                });
            }
        }
        Ok(())
    }

    /// Applies a ring homomorphism entrywise.
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> ChainComplex<S> {
        ChainComplex {
            lo: self.lo,
            ranks: self.ranks.clone(),
            diffs: self.diffs.iter().map(|m| m.map(&f)).collect(),
        }
    }

    /// Degree-wise direct sum, with `self` listed first in each degree.
    pub fn direct_sum(&self, other: &Self) -> Result<Self> {
        let Some((lo, hi)) = union_range(self.range(), other.range()) else {
            return Ok(Self::empty());
        };
        let ranks = (lo..=hi).map(|i| self.rank(i) + other.rank(i)).collect();
        let mut diffs = BTreeMap::new();
        for i in lo + 1..=hi {
            let blocks = vec![
                vec![self.differential(i), Matrix::zeros(self.rank(i - 1), other.rank(i))],
                vec![Matrix::zeros(other.rank(i - 1), self.rank(i)), other.differential(i)],
            ];
            let m = Matrix::block(
                &[self.rank(i - 1), other.rank(i - 1)],
                &[self.rank(i), other.rank(i)],
                &blocks,
            )?;
            diffs.insert(i, m);
        }
        Self::new(lo, ranks, diffs)
    }
}

impl<R: Ring> std::fmt::Debug for ChainComplex<R> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut s = f.debug_struct("ChainComplex");
        s.field("ring", &R::NAME)
            .field("lo", &self.lo)
            .field("ranks", &self.ranks);
        for i in self.lo + 1..=self.hi() {
            s.field(&format!("d{i}"), &self.differential(i));
        }
        s.finish()
    }
}

pub(crate) fn union_range(a: Option<(i64, i64)>, b: Option<(i64, i64)>) -> Option<(i64, i64)> {
    match (a, b) {
        (None, r) | (r, None) => r,
        (Some((a0, a1)), Some((b0, b1))) => Some((a0.min(b0), a1.max(b1))),
    }
}

/// A chain map `f : source → target`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainMap<R: Ring> {
    source: ChainComplex<R>,
    target: ChainComplex<R>,
    components: BTreeMap<i64, Matrix<R>>,
}

impl<R: Ring> ChainMap<R> {
    /// Checks shapes and `d_target f = f d_source` in every degree. Missing
    /// components are zero.
    pub fn new(source: ChainComplex<R>, target: ChainComplex<R>, components: BTreeMap<i64, Matrix<R>>) -> Result<Self> {
        for (&i, m) in &components {
            if m.shape() != (target.rank(i), source.rank(i)) {
                return Err(Error::DimensionMismatch(format!(
                    "chain map component in degree {i} is {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    target.rank(i),
                    source.rank(i)
                )));
            }
        }
        let map = Self {
            source,
            target,
            components,
        };
        if let Some((lo, hi)) = union_range(map.source.range(), map.target.range()) {
            for i in lo + 1..=hi {
                let left = map.target.differential(i).matmul(&map.component(i))?;
                let right = map.component(i - 1).matmul(&map.source.differential(i))?;
                if left != right {
                    return Err(Error::NotAChainMap { degree: i });
                }
            }
        }
        Ok(map)
    }

    /// The identity of `c`.
    pub fn identity(c: &ChainComplex<R>) -> Self {
        let components = c.degrees().map(|i| (i, Matrix::identity(c.rank(i)))).collect();
        Self {
            source: c.clone(),
            target: c.clone(),
            components,
        }
    }

    pub fn source(&self) -> &ChainComplex<R> {
        &self.source
    }

    pub fn target(&self) -> &ChainComplex<R> {
        &self.target
    }

    pub fn component(&self, i: i64) -> Matrix<R> {
        self.components
            .get(&i)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(self.target.rank(i), self.source.rank(i)))
    }

    /// Applies a ring homomorphism to source, target and components.
    pub fn map<S: Ring>(&self, f: impl Fn(&R) -> S) -> ChainMap<S> {
        ChainMap {
            source: self.source.map(&f),
            target: self.target.map(&f),
            components: self.components.iter().map(|(i, m)| (*i, m.map(&f))).collect(),
        }
    }
}

/// The algebraic mapping cone: `cone_i = source_{i-1} ⊕ target_i` with
/// differential `[[-d_source, 0], [f, d_target]]`.
pub fn mapping_cone<R: Ring>(f: &ChainMap<R>) -> Result<ChainComplex<R>> {
    let (s, t) = (&f.source, &f.target);
    let shifted = s.range().map(|(a, b)| (a + 1, b + 1));
    let Some((lo, hi)) = union_range(shifted, t.range()) else {
        return Ok(ChainComplex::empty());
    };
    let ranks = (lo..=hi).map(|i| s.rank(i - 1) + t.rank(i)).collect();
    let mut diffs = BTreeMap::new();
    for i in lo + 1..=hi {
        let blocks = vec![
            vec![s.differential(i - 1).neg(), Matrix::zeros(s.rank(i - 2), t.rank(i))],
            vec![f.component(i - 1), t.differential(i)],
        ];
        let m = Matrix::block(&[s.rank(i - 2), t.rank(i - 1)], &[s.rank(i - 1), t.rank(i)], &blocks)?;
        diffs.insert(i, m);
    }
    ChainComplex::new(lo, ranks, diffs)
}

/// Coefficient rings ordered by inclusion `Z ⊂ Z[z, z^-1] ⊂ S^-1 Z[z, z^-1]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Grade {
    Integer,
    Laurent,
    Rational,
}

impl Grade {
    pub fn name(self) -> &'static str {
        match self {
            Grade::Integer => "integer",
            Grade::Laurent => "laurent",
            Grade::Rational => "rational",
        }
    }
}

/// A complex over any of the three coefficient rings.
#[derive(Clone, Debug, PartialEq)]
pub enum AnyComplex {
    Integer(ChainComplex<BigInt>),
    Laurent(ChainComplex<LaurentPoly>),
    Rational(ChainComplex<RationalFunction>),
}

impl AnyComplex {
    pub fn grade(&self) -> Grade {
        match self {
            AnyComplex::Integer(_) => Grade::Integer,
            AnyComplex::Laurent(_) => Grade::Laurent,
            AnyComplex::Rational(_) => Grade::Rational,
        }
    }

    /// Reinterprets the entries in a wider ring.
    pub fn base_change(&self, target: Grade) -> Result<AnyComplex> {
        if target < self.grade() {
            return Err(Error::NarrowingNotSupported {
                from: self.grade().name(),
                to: target.name(),
            });
        }
        let laurent = match self {
            AnyComplex::Integer(c) if target == Grade::Integer => return Ok(AnyComplex::Integer(c.clone())),
            AnyComplex::Integer(c) => c.map(|x| LaurentPoly::constant(x.clone())),
            AnyComplex::Laurent(c) => c.clone(),
            AnyComplex::Rational(c) => return Ok(AnyComplex::Rational(c.clone())),
        };
        Ok(match target {
            Grade::Laurent => AnyComplex::Laurent(laurent),
            _ => AnyComplex::Rational(laurent.map(|p| RationalFunction::from_poly(p.clone()))),
        })
    }
}

/// Homology of one degree: free rank and the nonunit invariant factors of
/// the torsion part.
#[derive(Clone, Debug, PartialEq)]
pub struct DegreeHomology<F> {
    pub degree: i64,
    pub betti: usize,
    pub torsion_factors: Vec<F>,
}

impl<F> DegreeHomology<F> {
    pub fn torsion_count(&self) -> usize {
        self.torsion_factors.len()
    }

    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion_factors.is_empty()
    }
}

/// Homology in every degree of a complex's range.
#[derive(Clone, Debug, PartialEq)]
pub struct HomologyReport<F> {
    pub degrees: Vec<DegreeHomology<F>>,
}

impl<F> HomologyReport<F> {
    pub fn get(&self, degree: i64) -> Option<&DegreeHomology<F>> {
        self.degrees.iter().find(|d| d.degree == degree)
    }

    pub fn betti(&self, degree: i64) -> usize {
        self.get(degree).map_or(0, |d| d.betti)
    }

    pub fn torsion_count(&self, degree: i64) -> usize {
        self.get(degree).map_or(0, |d| d.torsion_count())
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.iter().all(|d| d.is_zero())
    }

    /// `b_i + q_i + q_{i-1}` for every degree in the report; degrees below
    /// the range contribute nothing.
    pub fn morse_bounds(&self) -> DegreeCounts {
        self.degrees
            .iter()
            .map(|d| (d.degree, d.betti + d.torsion_count() + self.torsion_count(d.degree - 1)))
            .collect()
    }
}

/// Integral homology via Smith normal forms of the differentials.
pub fn integral_homology(c: &ChainComplex<BigInt>) -> HomologyReport<BigInt> {
    let Some((lo, hi)) = c.range() else {
        return HomologyReport { degrees: Vec::new() };
    };
    let snfs: BTreeMap<i64, _> = (lo..=hi + 1)
        .map(|i| (i, smith_normal_form_int(&c.differential(i))))
        .collect();
    let degrees = (lo..=hi)
        .map(|i| {
            let out = &snfs[&i];
            let inc = &snfs[&(i + 1)];
            DegreeHomology {
                degree: i,
                betti: c.rank(i) - out.rank - inc.rank,
                torsion_factors: inc
                    .invariant_factors
                    .iter()
                    .filter(|f| !Ring::is_one(*f))
                    .cloned()
                    .collect(),
            }
        })
        .collect();
    HomologyReport { degrees }
}

/// The Morse lower bounds `b_i + q_i + q_{i-1}`.
pub fn morse_lower_bounds<F>(report: &HomologyReport<F>) -> DegreeCounts {
    report.morse_bounds()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{int_matrix, to_laurent};

    fn z_complex(lo: i64, ranks: Vec<usize>, diffs: Vec<(i64, &[&[i64]])>) -> Result<ChainComplex<BigInt>> {
        ChainComplex::new(lo, ranks, diffs.into_iter().map(|(i, m)| (i, int_matrix(m))).collect())
    }

    fn circle() -> ChainComplex<BigInt> {
        z_complex(0, vec![1, 1], vec![(1, &[&[0]])]).unwrap()
    }

    #[test]
    fn validation() {
        assert!(circle().validate().is_ok());
        let bad = z_complex(0, vec![1, 1, 1], vec![(1, &[&[1]]), (2, &[&[1]])]);
        assert!(matches!(bad, Err(Error::NotAComplex { degree: 2, .. })));
        assert!(ChainComplex::<BigInt>::empty().validate().is_ok());
        let shape = z_complex(0, vec![1, 2], vec![(1, &[&[1]])]);
        assert!(matches!(shape, Err(Error::DimensionMismatch(_))));
    }

    #[test]
    fn circle_homology() {
        let h = integral_homology(&circle());
        assert_eq!((h.betti(0), h.betti(1)), (1, 1));
        assert_eq!(h.torsion_count(0), 0);
        assert_eq!(morse_lower_bounds(&h), DegreeCounts::from([(0, 1), (1, 1)]));
    }

    #[test]
    fn torsion() {
        let c = z_complex(0, vec![1, 1], vec![(1, &[&[2]])]).unwrap();
        let h = integral_homology(&c);
        assert_eq!(h.betti(0), 0);
        assert_eq!(h.get(0).unwrap().torsion_factors, vec![BigInt::from(2)]);
        assert_eq!(h.betti(1), 0);
        assert_eq!(morse_lower_bounds(&h), DegreeCounts::from([(0, 1), (1, 1)]));

        let d = z_complex(0, vec![2, 2], vec![(1, &[&[2, 0], &[0, 3]])]).unwrap();
        let h = integral_homology(&d);
        assert_eq!(h.get(0).unwrap().torsion_factors, vec![BigInt::from(6)]);
    }

    #[test]
    fn cones() {
        let point = ChainComplex::<BigInt>::concentrated(0, 1);
        let cone = mapping_cone(&ChainMap::identity(&point)).unwrap();
        assert_eq!(cone.ranks(), DegreeCounts::from([(0, 1), (1, 1)]));
        assert_eq!(cone.differential(1), int_matrix(&[&[1]]));
        assert!(integral_homology(&cone).is_zero());

        let zero = ChainMap::new(point.clone(), point.clone(), BTreeMap::new()).unwrap();
        let sum = mapping_cone(&zero).unwrap();
        assert!(sum.differential(1).is_zero());

        let empty = ChainComplex::<BigInt>::empty();
        let cone = mapping_cone(&ChainMap::identity(&empty)).unwrap();
        assert!(cone.is_empty());
    }

    #[test]
    fn cone_of_unit_scalar_over_laurent() {
        let point = ChainComplex::<LaurentPoly>::concentrated(0, 1);
        let one_minus_z = LaurentPoly::from_terms([(0, 1), (1, -1)]);
        let f = ChainMap::new(
            point.clone(),
            point,
            BTreeMap::from([(0, Matrix::scalar(1, one_minus_z.clone()))]),
        )
        .unwrap();
        let cone = mapping_cone(&f).unwrap();
        assert_eq!(cone.differential(1), Matrix::scalar(1, one_minus_z));
    }

    #[test]
    fn chain_map_check() {
        let c = z_complex(0, vec![1, 1], vec![(1, &[&[2]])]).unwrap();
        let bad = ChainMap::new(c.clone(), c.clone(), BTreeMap::from([(1, int_matrix(&[&[1]]))]));
        assert!(matches!(bad, Err(Error::NotAChainMap { degree: 1 })));
    }

    #[test]
    fn base_change_widens_only() {
        let c = AnyComplex::Integer(circle());
        let l = c.base_change(Grade::Laurent).unwrap();
        match &l {
            AnyComplex::Laurent(x) => assert_eq!(x.differential(1), to_laurent(&int_matrix(&[&[0]]))),
            _ => panic!("wrong grade"),
        }
        let r = l.base_change(Grade::Rational).unwrap();
        assert_eq!(r.grade(), Grade::Rational);
        assert!(matches!(
            r.base_change(Grade::Integer),
            Err(Error::NarrowingNotSupported { .. })
        ));
    }

    #[test]
    fn direct_sum_ranks() {
        let c = circle();
        let s = c
            .direct_sum(&z_complex(1, vec![1, 1], vec![(2, &[&[3]])]).unwrap())
            .unwrap();
        assert_eq!(s.ranks(), DegreeCounts::from([(0, 1), (1, 2), (2, 1)]));
        let h = integral_homology(&s);
        assert_eq!(h.get(1).unwrap().torsion_factors, vec![BigInt::from(3)]);
    }
}
