//! Novikov homology, Novikov numbers and the finite domination test.

use std::collections::BTreeMap;

use crate::complexes::{ChainComplex, DegreeCounts, DegreeHomology, HomologyReport};
use crate::linalg::{novikov_diagonalize_partial, rank_over_function_field, Diagonalization, Matrix, OPERATION_CAP};
use crate::rings::{Direction, LaurentPoly, RationalFunction};
use crate::{Error, Result};

/// Homology of `Z((z)) ⊗ C` (plus) or `Z((z^-1)) ⊗ C` (minus).
///
/// Free ranks always come from ranks over `Q(z)`. Torsion factors come from
/// diagonalizing the incoming differential; if that hit the operation cap
/// in some degree, `conclusive` is false and the torsion lists there hold
/// only the factors settled before the cap, so `q_i` is a lower bound.
#[derive(Clone, Debug, PartialEq)]
pub struct NovikovReport {
    pub direction: Direction,
    pub homology: HomologyReport<LaurentPoly>,
    pub conclusive: bool,
    /// Whether every completed diagonalization found the same rank as the
    /// function-field computation.
    pub ranks_agree: bool,
}

impl NovikovReport {
    pub fn betti(&self, degree: i64) -> usize {
        self.homology.betti(degree)
    }

    pub fn torsion_count(&self, degree: i64) -> usize {
        self.homology.torsion_count(degree)
    }

    pub fn torsion_factors(&self, degree: i64) -> &[LaurentPoly] {
        self.homology.get(degree).map_or(&[], |d| d.torsion_factors.as_slice())
    }

    pub fn degrees(&self) -> &[DegreeHomology<LaurentPoly>] {
        &self.homology.degrees
    }

    /// True when every group is zero. Only meaningful if `conclusive`.
    pub fn vanishes(&self) -> bool {
        self.homology.is_zero()
    }
}

struct DiffData {
    rank: usize,
    diag_rank: Option<usize>,
    factors: Vec<LaurentPoly>,
    conclusive: bool,
}

fn analyse(d: &Matrix<LaurentPoly>, dir: Direction) -> DiffData {
    let rank = rank_over_function_field(d);
    match novikov_diagonalize_partial(d, dir, OPERATION_CAP) {
        Diagonalization::Complete(r) => DiffData {
            rank,
            diag_rank: Some(r.rank),
            factors: r.nonunit_factors(),
            conclusive: r.transforms_valid,
        },
        Diagonalization::Inconclusive { settled, .. } => DiffData {
            rank,
            diag_rank: None,
            factors: settled.into_iter().filter(|f| !f.is_one()).collect(),
            conclusive: false,
        },
    }
}

/// Novikov homology of a Laurent complex.
pub fn novikov_homology(c: &ChainComplex<LaurentPoly>, dir: Direction) -> NovikovReport {
    let Some((lo, hi)) = c.range() else {
        return NovikovReport {
            direction: dir,
            homology: HomologyReport { degrees: Vec::new() },
            conclusive: true,
            ranks_agree: true,
        };
    };
    let data: BTreeMap<i64, DiffData> = (lo..=hi + 1).map(|i| (i, analyse(&c.differential(i), dir))).collect();
    let degrees = (lo..=hi)
        .map(|i| DegreeHomology {
            degree: i,
            betti: c.rank(i) - data[&i].rank - data[&(i + 1)].rank,
            torsion_factors: data[&(i + 1)].factors.clone(),
        })
        .collect();
    NovikovReport {
        direction: dir,
        homology: HomologyReport { degrees },
        conclusive: data.values().all(|d| d.conclusive),
        ranks_agree: data.values().all(|d| d.diag_rank.is_none_or(|r| r == d.rank)),
    }
}

/// Clears the denominators of a rational matrix by one element of `S`,
/// which is a unit of `Z((z))`.
pub fn clear_denominators(m: &Matrix<RationalFunction>) -> Matrix<LaurentPoly> {
    let l = RationalFunction::lcm_denominators(m.entries());
    let lr = RationalFunction::from_poly(l);
    m.map(|x| {
        let y = &lr * x;
        debug_assert!(y.is_polynomial());
        y.numerator().clone()
    })
}

/// Novikov homology over `Z((z))` of a complex with entries in the rational
/// subring. Each differential is rescaled by a unit to clear denominators,
/// which changes neither ranks nor invariant factors.
///
/// Only the plus side is supported: elements of `S^-1 Z[z, z^-1]` are read
/// as series in `z`, and their expansions in `z^-1` are different objects.
pub fn novikov_homology_rational(c: &ChainComplex<RationalFunction>, dir: Direction) -> Result<NovikovReport> {
    if dir == Direction::Minus {
        return Err(Error::Unsupported(
            "rational complexes are only expanded in Z((z))".into(),
        ));
    }
    let Some((lo, hi)) = c.range() else {
        return Ok(novikov_homology(&ChainComplex::empty(), dir));
    };
    let diffs = (lo + 1..=hi)
        .map(|i| (i, clear_denominators(&c.differential(i))))
        .collect();
    let ranks = c.degrees().map(|i| c.rank(i)).collect();
    // Rescaling each differential by a unit keeps d∘d = 0.
    let laurent = ChainComplex::new(lo, ranks, diffs)?;
    Ok(novikov_homology(&laurent, dir))
}

/// The Morse–Novikov bounds `b_i + q_i + q_{i-1}`.
pub fn morse_novikov_bounds(r: &NovikovReport) -> DegreeCounts {
    r.homology.morse_bounds()
}

/// Outcome of comparing critical-point counts against lower bounds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityVerdict {
    pub violations: Vec<i64>,
}

impl InequalityVerdict {
    pub fn satisfied(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Degrees where `counts_i < bounds_i`. A degree absent from either map
/// counts as 0.
pub fn check_inequalities(counts: &DegreeCounts, bounds: &DegreeCounts) -> InequalityVerdict {
    let degrees: std::collections::BTreeSet<i64> = counts.keys().chain(bounds.keys()).copied().collect();
    InequalityVerdict {
        violations: degrees
            .into_iter()
            .filter(|i| counts.get(i).copied().unwrap_or(0) < bounds.get(i).copied().unwrap_or(0))
            .collect(),
    }
}

/// Vanishing of Novikov homology on each side.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominationVerdict {
    pub vanishes_plus: bool,
    pub vanishes_minus: bool,
    pub finitely_dominated: bool,
    /// False if either side hit the operation cap; a side is then only
    /// reported as vanishing if its settled data already rule torsion out.
    pub conclusive: bool,
}

/// Two-sided vanishing test: a complex of finitely generated free
/// `Z[z, z^-1]`-modules is chain equivalent to a finite complex over `Z`
/// exactly when both Novikov homologies vanish.
pub fn finite_domination_check(c: &ChainComplex<LaurentPoly>) -> DominationVerdict {
    let plus = novikov_homology(c, Direction::Plus);
    let minus = novikov_homology(c, Direction::Minus);
    let vanishes = |r: &NovikovReport| r.conclusive && r.vanishes();
    let vanishes_plus = vanishes(&plus);
    let vanishes_minus = vanishes(&minus);
    DominationVerdict {
        vanishes_plus,
        vanishes_minus,
        finitely_dominated: vanishes_plus && vanishes_minus,
        conclusive: plus.conclusive && minus.conclusive,
    }
}
