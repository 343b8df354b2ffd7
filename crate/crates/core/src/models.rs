//! Worked models: mapping tori, the circle fixture and knot complements.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::complexes::{mapping_cone, ChainComplex, ChainMap};
use crate::fundomain::{assemble_mapping_cone, AlgebraicFundamentalDomain};
use crate::linalg::{determinant, inverse_unimodular, smith_normal_form_int, to_laurent, Matrix};
use crate::novikov::finite_domination_check;
use crate::rings::{Direction, LaurentPoly};
use crate::{Error, Result};

/// The Novikov complex of the mapping torus of a chain self-map `h`:
/// `cone(1 - z·h)` for the plus orientation and `cone(z - h)` for minus.
pub fn mapping_torus_complex(h: &ChainMap<BigInt>, orientation: Direction) -> Result<ChainComplex<LaurentPoly>> {
    if h.source() != h.target() {
        return Err(Error::DimensionMismatch("mapping torus needs a self-map".into()));
    }
    let hl = h.map(|x| LaurentPoly::constant(x.clone()));
    let c = hl.source().clone();
    let comps = c
        .degrees()
        .map(|i| {
            let n = c.rank(i);
            let hi = hl.component(i);
            let m = match orientation {
                Direction::Plus => Matrix::identity(n).sub(&hi.map(|x| x.shift(1))),
                Direction::Minus => Matrix::scalar(n, LaurentPoly::z()).sub(&hi),
            };
            m.map(|m| (i, m))
        })
        .collect::<Result<BTreeMap<_, _>>>()?;
    mapping_cone(&ChainMap::new(c.clone(), c, comps)?)
}

/// Fixture for `f : S^1 → S^1`, `[t] ↦ [4t - 9t² + 6t³]`.
///
/// The lift has `f'(t) = 4 - 18t + 18t²` with roots `1/3` (a local maximum,
/// index 1) and `2/3` (a local minimum, index 0). The two descending flow
/// lines from the maximum end at the minimum of the same domain and at its
/// translate one step down, so `d_F̂ = 1 - z`.
///
/// Domain: `D = Z` in degree 0 (the cut point), `F = Z` in degrees 1 and 0
/// with `d_F = 1`, `c = -1`, `h_D = 0`, `h_F = 1`.
pub fn circle_exercise() -> AlgebraicFundamentalDomain {
    let one = |x: i64| Matrix::from_vec(1, 1, vec![BigInt::from(x)]).expect("1x1");
    let d = ChainComplex::concentrated(0, 1);
    let f = ChainComplex::new(0, vec![1, 1], BTreeMap::from([(1, one(1))])).expect("valid");
    AlgebraicFundamentalDomain::new(
        d,
        f,
        BTreeMap::from([(1, one(-1))]),
        BTreeMap::from([(0, one(0))]),
        BTreeMap::from([(0, one(1))]),
    )
    .expect("fixture identities hold")
}

/// A reduced chain complex of a Seifert surface together with the
/// generalized Seifert chain map `e`.
#[derive(Clone, Debug, PartialEq)]
pub struct SeifertData {
    base: ChainComplex<BigInt>,
    e: ChainMap<BigInt>,
}

impl SeifertData {
    pub fn new(base: ChainComplex<BigInt>, components: BTreeMap<i64, Matrix<BigInt>>) -> Result<Self> {
        let e = ChainMap::new(base.clone(), base.clone(), components)?;
        Ok(Self { base, e })
    }

    pub fn base(&self) -> &ChainComplex<BigInt> {
        &self.base
    }

    pub fn e(&self) -> &ChainMap<BigInt> {
        &self.e
    }
}

/// The knot-complement domain: `D = Z ⊕ Ḋ` (the extra `Z` in degree 0),
/// `F_i = Ḋ_i ⊕ Ḋ_{i-1}` with `d_F = [[d, e], [0, -d]]`, `c = (0 1)`,
/// `h_D = 0` and `h_F = (1 - e; 0)`.
pub fn knot_fundamental_domain(s: &SeifertData) -> Result<AlgebraicFundamentalDomain> {
    let b = &s.base;
    let (blo, bhi) = b.range().unwrap_or((0, 0));
    let lo = blo.min(0);
    let hi = bhi.max(0);
    let extra = |i: i64| usize::from(i == 0);
    let eye = |n: usize| Matrix::<BigInt>::identity(n);
    let zero = |r: usize, c: usize| Matrix::<BigInt>::zeros(r, c);

    let d_ranks: Vec<usize> = (lo..=hi).map(|i| extra(i) + b.rank(i)).collect();
    let mut d_diffs = BTreeMap::new();
    for i in lo + 1..=hi {
        let m = Matrix::block(
            &[extra(i - 1), b.rank(i - 1)],
            &[extra(i), b.rank(i)],
            &[
                vec![zero(extra(i - 1), extra(i)), zero(extra(i - 1), b.rank(i))],
                vec![zero(b.rank(i - 1), extra(i)), b.differential(i)],
            ],
        )?;
        d_diffs.insert(i, m);
    }
    let d = ChainComplex::new(lo, d_ranks, d_diffs)?;

    let fr = |i: i64| (b.rank(i), b.rank(i - 1));
    let f_ranks: Vec<usize> = (lo..=hi + 1).map(|i| b.rank(i) + b.rank(i - 1)).collect();
    let mut f_diffs = BTreeMap::new();
    for i in lo + 1..=hi + 1 {
        let (a1, a0) = fr(i);
        let (b1, b0) = fr(i - 1);
        let m = Matrix::block(
            &[b1, b0],
            &[a1, a0],
            &[
                vec![b.differential(i), s.e.component(i - 1)],
                vec![zero(b0, a1), b.differential(i - 1).neg()],
            ],
        )?;
        f_diffs.insert(i, m);
    }
    let f = ChainComplex::new(lo, f_ranks, f_diffs)?;

    let mut c = BTreeMap::new();
    let mut h_f = BTreeMap::new();
    for i in lo..=hi + 1 {
        let (a1, a0) = fr(i);
        c.insert(
            i,
            Matrix::block(
                &[extra(i - 1), b.rank(i - 1)],
                &[a1, a0],
                &[
                    vec![zero(extra(i - 1), a1), zero(extra(i - 1), a0)],
                    vec![zero(b.rank(i - 1), a1), eye(a0)],
                ],
            )?,
        );
        let one_minus_e = eye(b.rank(i)).sub(&s.e.component(i))?;
        h_f.insert(
            i,
            Matrix::block(
                &[a1, a0],
                &[extra(i), b.rank(i)],
                &[
                    vec![zero(a1, extra(i)), one_minus_e],
                    vec![zero(a0, extra(i)), zero(a0, b.rank(i))],
                ],
            )?,
        );
    }
    AlgebraicFundamentalDomain::new(d, f, c, BTreeMap::new(), h_f)
}

/// The map induced by `e` on `H_i(Ḋ)` modulo torsion, in a basis of the
/// free part, together with the torsion invariant factors of `H_i(Ḋ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HomologyAction {
    pub degree: i64,
    pub action: Matrix<BigInt>,
    pub torsion: Vec<BigInt>,
}

impl HomologyAction {
    /// `e + z(1 - e)` over `Z[z, z^-1]`.
    pub fn alexander_matrix(&self) -> Matrix<LaurentPoly> {
        let n = self.action.rows();
        let e = to_laurent(&self.action);
        let one_minus_e = Matrix::identity(n).sub(&e).expect("square");
        e.add(&one_minus_e.map(|x| x.shift(1))).expect("square")
    }
}

/// Computes [`HomologyAction`] in every degree of the base.
pub fn homology_actions(s: &SeifertData) -> Result<Vec<HomologyAction>> {
    let b = &s.base;
    let mut out = Vec::new();
    for i in b.degrees() {
        let n = b.rank(i);
        // Cycles: the last n - r columns of V, where U d_i V is diagonal.
        let out_snf = smith_normal_form_int(&b.differential(i));
        let r = out_snf.rank;
        let v = out_snf.right;
        let v_inv = inverse_unimodular(&v)?;
        let k = n - r;
        let cycle_coords = |m: &Matrix<BigInt>| -> Result<Matrix<BigInt>> {
            let full = v_inv.matmul(m)?;
            Ok(full.submatrix(r, 0, k, m.cols()))
        };
        // Boundaries in cycle coordinates, then the quotient by them.
        let boundaries = cycle_coords(&b.differential(i + 1))?;
        let q = smith_normal_form_int(&boundaries);
        let t = q.rank;
        let p = q.left;
        let p_inv = inverse_unimodular(&p)?;
        let free = k - t;
        let kernel_basis = v.submatrix(0, r, n, k);
        // Lift each free generator to a cycle, apply e, and read off its
        // free coordinates.
        let lifts = kernel_basis.matmul(&p_inv.submatrix(0, t, k, free))?;
        let images = s.e.component(i).matmul(&lifts)?;
        let action = p.matmul(&cycle_coords(&images)?)?.submatrix(t, 0, free, free);
        out.push(HomologyAction {
            degree: i,
            action,
            torsion: q.invariant_factors.iter().filter(|x| !x.is_one()).cloned().collect(),
        });
    }
    Ok(out)
}

/// `Δ_i(z) = det(e + z(1 - e))` on the free part of `H_i`, normalized to
/// nonnegative exponents, nonzero constant term and positive leading
/// coefficient.
pub fn alexander_polynomials(s: &SeifertData) -> Result<BTreeMap<i64, LaurentPoly>> {
    homology_actions(s)?
        .iter()
        .map(|a| Ok((a.degree, determinant(&a.alexander_matrix())?.alexander_normalized())))
        .collect()
}

/// Outcome of [`fibering_check`].
#[derive(Clone, Debug, PartialEq)]
pub struct FiberingVerdict {
    pub alexander: BTreeMap<i64, LaurentPoly>,
    /// Torsion of `H_i` of the base, which `Δ_i` does not see.
    pub torsion: BTreeMap<i64, Vec<BigInt>>,
    pub novikov_vanishes: bool,
    pub extreme_coeffs_unit: bool,
    pub fibers: bool,
}

fn extremes_are_units(p: &LaurentPoly) -> bool {
    p.is_novikov_unit(Direction::Plus) && p.is_novikov_unit(Direction::Minus)
}

/// Decides fibering twice: through the extreme coefficients of every
/// `Δ_i`, and through vanishing of the Novikov homology of the assembled
/// knot complex on both sides. Disagreement is an internal error.
pub fn fibering_check(s: &SeifertData) -> Result<FiberingVerdict> {
    let actions = homology_actions(s)?;
    let mut alexander = BTreeMap::new();
    let mut torsion = BTreeMap::new();
    for a in &actions {
        alexander.insert(a.degree, determinant(&a.alexander_matrix())?.alexander_normalized());
        if !a.torsion.is_empty() {
            torsion.insert(a.degree, a.torsion.clone());
        }
    }
    let extreme_coeffs_unit = alexander.values().all(extremes_are_units);

    let cone = assemble_mapping_cone(&knot_fundamental_domain(s)?)?;
    let verdict = finite_domination_check(&cone);
    if !verdict.conclusive {
        return Err(Error::Inconclusive {
            operations: crate::linalg::OPERATION_CAP,
        });
    }
    let novikov_vanishes = verdict.finitely_dominated;
    if novikov_vanishes != extreme_coeffs_unit {
        return Err(Error::InternalInconsistency(format!(
            "Novikov vanishing is {novikov_vanishes} but the Alexander extreme-coefficient test gives {extreme_coeffs_unit}"
        )));
    }
    Ok(FiberingVerdict {
        alexander,
        torsion,
        novikov_vanishes,
        extreme_coeffs_unit,
        fibers: novikov_vanishes,
    })
}
