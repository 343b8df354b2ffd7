//! Shared generators and independent oracles for the integration tests.
#![allow(dead_code)]

pub mod oracle;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};

use novikov_core::complexes::{ChainComplex, ChainMap};
use novikov_core::fundomain::AlgebraicFundamentalDomain;
use novikov_core::linalg::Matrix;
use novikov_core::models::SeifertData;

pub fn rng(seed: u64) -> StdRng {
    StdRng::seed_from_u64(seed)
}

pub fn int(x: i64) -> BigInt {
    BigInt::from(x)
}

fn small(rng: &mut StdRng, bound: i64) -> BigInt {
    int(rng.gen_range(-bound..=bound))
}

pub fn random_matrix(rng: &mut StdRng, rows: usize, cols: usize, bound: i64) -> Matrix<BigInt> {
    Matrix::from_vec(rows, cols, (0..rows * cols).map(|_| small(rng, bound)).collect()).unwrap()
}

/// A random unimodular matrix and its inverse, built from elementary
/// operations.
pub fn random_unimodular(rng: &mut StdRng, n: usize) -> (Matrix<BigInt>, Matrix<BigInt>) {
    let mut p: Matrix<BigInt> = Matrix::identity(n);
    let mut q: Matrix<BigInt> = Matrix::identity(n);
    if n < 2 {
        if n == 1 && rng.gen_bool(0.5) {
            p[(0, 0)] = int(-1);
            q[(0, 0)] = int(-1);
        }
        return (p, q);
    }
    for _ in 0..rng.gen_range(0..4) {
        let a = rng.gen_range(0..n);
        let mut b = rng.gen_range(0..n);
        while b == a {
            b = rng.gen_range(0..n);
        }
        let k = small(rng, 2);
        // p ← (1 + k E_ab) p, q ← q (1 - k E_ab)
        let t = [[int(1), k.clone()], [int(0), int(1)]];
        p.combine_rows(a, b, &t);
        let tinv = [[int(1), int(0)], [-k, int(1)]];
        q.combine_cols(a, b, &tinv);
    }
    (p, q)
}

/// Complex assembled from elementary pieces (`Z` alone, or `Z --m--> Z`
/// across adjacent degrees), conjugated by random unimodular matrices.
/// Also returns a chain automorphism that acts by `±1` on each piece.
pub struct RandomComplex {
    pub complex: ChainComplex<BigInt>,
    pub automorphism: ChainMap<BigInt>,
    pub endomorphism: ChainMap<BigInt>,
}

pub fn random_complex(rng: &mut StdRng, lo: i64, hi: i64, max_rank: usize) -> RandomComplex {
    // Pieces: (top degree, multiplier or None for a lone generator).
    let mut ranks: BTreeMap<i64, usize> = (lo..=hi).map(|i| (i, 0)).collect();
    let mut pieces: Vec<(i64, Option<i64>)> = Vec::new();
    for _ in 0..rng.gen_range(1..=max_rank * 2) {
        let top = rng.gen_range(lo..=hi);
        let paired = top > lo && rng.gen_bool(0.6);
        let need_top = ranks[&top] + 1;
        let need_bottom = if paired { ranks[&(top - 1)] + 1 } else { 0 };
        if need_top > max_rank || need_bottom > max_rank {
            continue;
        }
        *ranks.get_mut(&top).unwrap() += 1;
        if paired {
            *ranks.get_mut(&(top - 1)).unwrap() += 1;
            let m = [1, -1, 2, -2, 3][rng.gen_range(0..5)];
            pieces.push((top, Some(m)));
        } else {
            pieces.push((top, None));
        }
    }
    // Basis positions of each piece.
    let mut next: BTreeMap<i64, usize> = (lo..=hi).map(|i| (i, 0)).collect();
    let mut slots = Vec::new();
    for (top, m) in &pieces {
        let a = next[top];
        *next.get_mut(top).unwrap() += 1;
        let b = m.map(|_| {
            let b = next[&(top - 1)];
            *next.get_mut(&(top - 1)).unwrap() += 1;
            b
        });
        slots.push((a, b));
    }
    let rank = |i: i64| ranks.get(&i).copied().unwrap_or(0);
    let mut diffs: BTreeMap<i64, Matrix<BigInt>> = (lo + 1..=hi)
        .map(|i| (i, Matrix::zeros(rank(i - 1), rank(i))))
        .collect();
    let mut auto: BTreeMap<i64, Matrix<BigInt>> = (lo..=hi).map(|i| (i, Matrix::zeros(rank(i), rank(i)))).collect();
    let mut endo = auto.clone();
    for ((top, m), (a, b)) in pieces.iter().zip(&slots) {
        let sign = if rng.gen_bool(0.5) { 1 } else { -1 };
        let lambda = small(rng, 3);
        auto.get_mut(top).unwrap()[(*a, *a)] = int(sign);
        endo.get_mut(top).unwrap()[(*a, *a)] = lambda.clone();
        if let (Some(m), Some(b)) = (m, b) {
            diffs.get_mut(top).unwrap()[(*b, *a)] = int(*m);
            auto.get_mut(&(top - 1)).unwrap()[(*b, *b)] = int(sign);
            endo.get_mut(&(top - 1)).unwrap()[(*b, *b)] = lambda;
        }
    }
    // Conjugate: d' = P_{i-1} d P_i^{-1}, a' = P_i a P_i^{-1}.
    let bases: BTreeMap<i64, _> = (lo..=hi).map(|i| (i, random_unimodular(rng, rank(i)))).collect();
    let conj_d: BTreeMap<i64, Matrix<BigInt>> = diffs
        .iter()
        .map(|(i, d)| {
            let m = bases[&(i - 1)].0.matmul(d).unwrap().matmul(&bases[i].1).unwrap();
            (*i, m)
        })
        .collect();
    let conj = |m: &BTreeMap<i64, Matrix<BigInt>>| -> BTreeMap<i64, Matrix<BigInt>> {
        m.iter()
            .map(|(i, a)| (*i, bases[i].0.matmul(a).unwrap().matmul(&bases[i].1).unwrap()))
            .collect()
    };
    let complex = ChainComplex::new(lo, (lo..=hi).map(rank).collect(), conj_d).unwrap();
    let automorphism = ChainMap::new(complex.clone(), complex.clone(), conj(&auto)).unwrap();
    let endomorphism = ChainMap::new(complex.clone(), complex.clone(), conj(&endo)).unwrap();
    RandomComplex {
        complex,
        automorphism,
        endomorphism,
    }
}

/// A random valid fundamental domain with `D` and `F` supported in
/// degrees `0..=2` and ranks at most 2.
///
/// `c = t d_F - d_D t` for a random degree-preserving `t : F → D`, which
/// makes `E` a complex; `h = g a + d_E s + s d_D` for a chain
/// endomorphism `a` of `D` and a random `s : D_i → E_{i+1}`, which makes
/// `h` a chain map.
pub fn random_domain(rng: &mut StdRng) -> AlgebraicFundamentalDomain {
    let d = random_complex(rng, 0, 2, 2);
    let f = random_complex(rng, 0, 2, 2);
    let (dc, fc) = (&d.complex, &f.complex);
    let t: BTreeMap<i64, Matrix<BigInt>> = (0..=3)
        .map(|i| (i, random_matrix(rng, dc.rank(i), fc.rank(i), 1)))
        .collect();
    let tt = |i: i64| {
        t.get(&i)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(dc.rank(i), fc.rank(i)))
    };
    let c: BTreeMap<i64, Matrix<BigInt>> = (0..=3)
        .map(|i| {
            let m = tt(i - 1)
                .matmul(&fc.differential(i))
                .unwrap()
                .sub(&dc.differential(i).matmul(&tt(i)).unwrap())
                .unwrap();
            (i, m)
        })
        .collect();
    let stage = AlgebraicFundamentalDomain::new(dc.clone(), fc.clone(), c.clone(), BTreeMap::new(), BTreeMap::new())
        .expect("E is a complex by construction");
    let e = stage.e_complex().unwrap();
    let (elo, ehi) = e.range().unwrap_or((0, 0));
    // s_i : D_i → E_{i+1}
    let s: BTreeMap<i64, Matrix<BigInt>> = (elo - 1..=ehi + 1)
        .map(|i| (i, random_matrix(rng, e.rank(i + 1), dc.rank(i), 1)))
        .collect();
    let ss = |i: i64| {
        s.get(&i)
            .cloned()
            .unwrap_or_else(|| Matrix::zeros(e.rank(i + 1), dc.rank(i)))
    };
    let use_endo = rng.gen_bool(0.5);
    let lambda = small(rng, 2);
    let mut h_d = BTreeMap::new();
    let mut h_f = BTreeMap::new();
    for i in dc.degrees() {
        let n = dc.rank(i);
        let a = if use_endo {
            d.endomorphism.component(i)
        } else {
            Matrix::scalar(n, lambda.clone())
        };
        let g_a = Matrix::block(&[n, fc.rank(i)], &[n], &[vec![a], vec![Matrix::zeros(fc.rank(i), n)]]).unwrap();
        let homotopy = e
            .differential(i + 1)
            .matmul(&ss(i))
            .unwrap()
            .add(&ss(i - 1).matmul(&dc.differential(i)).unwrap())
            .unwrap();
        let h = g_a.add(&homotopy).unwrap();
        h_d.insert(i, h.submatrix(0, 0, n, n));
        h_f.insert(i, h.submatrix(n, 0, fc.rank(i), n));
    }
    AlgebraicFundamentalDomain::new(dc.clone(), fc.clone(), c, h_d, h_f).expect("valid by construction")
}

/// Seifert data on `Z^n` in degree 1 with zero differential.
pub fn random_seifert(rng: &mut StdRng, n: usize) -> SeifertData {
    let base = ChainComplex::concentrated(1, n);
    let e = random_matrix(rng, n, n, 3);
    SeifertData::new(base, BTreeMap::from([(1, e)])).unwrap()
}

pub fn seifert_from_rows(rows: &[&[i64]]) -> SeifertData {
    let base = ChainComplex::concentrated(1, rows.len());
    SeifertData::new(base, BTreeMap::from([(1, novikov_core::linalg::int_matrix(rows))])).unwrap()
}
