use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Direction, LaurentPoly, RationalFunction};
use crate::{Error, Result};

/// A finite window of a Novikov-ring element.
///
/// Coefficients are stored in the local variable `w` of the completion:
/// `w = z` for [`Direction::Plus`] and `w = z^-1` for [`Direction::Minus`].
/// Every coefficient of `w^e` with `e <= known_through` is exact; nothing is
/// claimed beyond that.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    direction: Direction,
    /// Exponent of `coeffs[0]`. When nonzero, `coeffs[0] != 0`.
    start: i64,
    coeffs: Vec<BigInt>,
    known_through: i64,
}

impl TruncatedSeries {
    /// Window of a polynomial given in the local variable `w`.
    fn from_local(direction: Direction, p: &LaurentPoly, known_through: i64) -> Self {
        let p = p.truncate_above(known_through);
        match p.ord() {
            None => Self {
                direction,
                start: known_through + 1,
                coeffs: Vec::new(),
                known_through,
            },
            Some(lo) => {
                let hi = p.deg().unwrap();
                let coeffs = (lo..=hi).map(|e| p.coeff(e)).collect();
                Self {
                    direction,
                    start: lo,
                    coeffs,
                    known_through,
                }
            }
        }
    }

    /// Window of `p ∈ Z[z, z^-1]` viewed in the `dir` completion, exact for
    /// all local exponents up to `known_through`.
    pub fn from_poly(p: &LaurentPoly, direction: Direction, known_through: i64) -> Self {
        let local = match direction {
            Direction::Plus => p.clone(),
            Direction::Minus => p.reverse_variable(),
        };
        Self::from_local(direction, &local, known_through)
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest local exponent with a nonzero coefficient.
    pub fn lowest(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.start)
    }

    /// Highest local exponent whose coefficient is exact.
    pub fn known_through(&self) -> i64 {
        self.known_through
    }

    /// Count of retained exponents beyond the lowest one.
    pub fn precision(&self) -> Option<i64> {
        self.lowest().map(|lo| self.known_through - lo)
    }

    /// Coefficient of `w^e`; `None` when `e` lies beyond the window.
    pub fn coeff(&self, e: i64) -> Option<BigInt> {
        if e > self.known_through {
            return None;
        }
        if e < self.start {
            return Some(BigInt::zero());
        }
        Some(self.coeffs.get((e - self.start) as usize).cloned().unwrap_or_default())
    }

    /// The window as a polynomial in the local variable.
    fn local_poly(&self) -> LaurentPoly {
        LaurentPoly::from_dense(self.start, &self.coeffs)
    }

    /// The known part of the window as an element of `Z[z, z^-1]`.
    pub fn to_laurent(&self) -> LaurentPoly {
        match self.direction {
            Direction::Plus => self.local_poly(),
            Direction::Minus => self.local_poly().reverse_variable(),
        }
    }

    /// Narrows the window to local exponents `<= bound`.
    pub fn truncate(&self, bound: i64) -> Self {
        Self::from_local(self.direction, &self.local_poly(), bound.min(self.known_through))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.direction, other.direction, "mixed completions");
        let bound = self.known_through.min(other.known_through);
        Self::from_local(self.direction, &(&self.local_poly() + &other.local_poly()), bound)
    }

    /// Product; the result is known through `min(lo_a + K_b, lo_b + K_a)`
    /// where `K` is each factor's `known_through`.
    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.direction, other.direction, "mixed completions");
        let bound = match (self.lowest(), other.lowest()) {
            (Some(la), Some(lb)) => (la + other.known_through).min(lb + self.known_through),
            (None, Some(lb)) => lb + self.known_through,
            (Some(la), None) => la + other.known_through,
            (None, None) => self.known_through + other.known_through,
        };
        Self::from_local(self.direction, &(&self.local_poly() * &other.local_poly()), bound)
    }

    /// True when both windows agree on every exponent they both know.
    pub fn agrees_with(&self, other: &Self) -> bool {
        let bound = self.known_through.min(other.known_through);
        self.truncate(bound).local_poly() == other.truncate(bound).local_poly()
    }
}

impl fmt::Display for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let var = match self.direction {
            Direction::Plus => "z",
            Direction::Minus => "z^-1",
        };
        let body = self.local_poly();
        if body.is_zero() {
            write!(f, "O({var}^{})", self.known_through + 1)
        } else {
            let rendered = body.to_string();
            let rendered = match self.direction {
                Direction::Plus => rendered,
                Direction::Minus => rendered.replace('z', "w"),
            };
            write!(f, "{rendered} + O({var}^{})", self.known_through + 1)
        }
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TruncatedSeries[{}]({self})", self.direction)
    }
}

/// Inverse of `p = z^k u` in `Z((z))`, `u(0) = ±1`: the geometric-series
/// recursion `v_0 = u_0^-1`, `v_n = -u_0^-1 Σ_{i=1..n} u_i v_{n-i}`.
fn invert_plus(p: &LaurentPoly, precision: usize) -> Result<TruncatedSeries> {
    if !p.is_novikov_unit(Direction::Plus) {
        return Err(Error::NotAUnit(p.to_string()));
    }
    let (k, u) = p.strip_monomial();
    let u0 = u.coeff(0);
    debug_assert!(u0.abs().is_one());
    let n = precision + 1;
    let us: Vec<BigInt> = (0..n as i64).map(|i| u.coeff(i)).collect();
    let mut v: Vec<BigInt> = Vec::with_capacity(n);
    v.push(u0.clone());
    for m in 1..n {
        let mut acc = BigInt::zero();
        for i in 1..=m {
            if !us[i].is_zero() {
                acc += &us[i] * &v[m - i];
            }
        }
        // u0 = ±1, so dividing by it is multiplying by it.
        v.push(-(acc * &u0));
    }
    Ok(TruncatedSeries::from_local(
        Direction::Plus,
        &LaurentPoly::from_dense(-k, &v),
        -k + precision as i64,
    ))
}

fn relabel(series: TruncatedSeries, direction: Direction) -> TruncatedSeries {
    TruncatedSeries { direction, ..series }
}

/// `p^-1` in the `dir` completion, exact through `precision + 1` terms
/// starting at its lowest exponent.
pub fn invert_as_series(p: &LaurentPoly, dir: Direction, precision: usize) -> Result<TruncatedSeries> {
    match dir {
        Direction::Plus => invert_plus(p, precision),
        Direction::Minus => invert_plus(&p.reverse_variable(), precision)
            .map(|s| relabel(s, Direction::Minus))
            .map_err(|_| Error::NotAUnit(p.to_string())),
    }
}

/// Expansion of `r` in the `dir` completion, exact through local exponent
/// `known_through`.
pub fn expand(r: &RationalFunction, dir: Direction, known_through: i64) -> Result<TruncatedSeries> {
    let (num, den) = match dir {
        Direction::Plus => (r.numerator().clone(), r.denominator().clone()),
        Direction::Minus => r.reverse_variable_parts(),
    };
    if !den.is_novikov_unit(Direction::Plus) {
        return Err(Error::NotAUnit(r.denominator().to_string()));
    }
    if num.is_zero() {
        return Ok(TruncatedSeries::from_local(dir, &num, known_through));
    }
    let num_ord = num.ord().unwrap();
    let den_ord = den.ord().unwrap();
    // Enough inverse terms that num * den^-1 is exact through `known_through`.
    let needed = (known_through - num_ord + den_ord).max(0) as usize;
    let inv = invert_plus(&den, needed)?;
    let num_window = TruncatedSeries::from_local(Direction::Plus, &num, i64::MAX / 4);
    let product = num_window.mul(&inv).truncate(known_through);
    Ok(relabel(product, dir))
}
