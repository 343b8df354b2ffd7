use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::LaurentPoly;
use crate::{Error, Result};

/// An element `r(z) / s(z)` of `S^-1 Z[z, z^-1]`, with `s` in
/// `S = { s ∈ Z[z] : s(0) = 1 }`.
///
/// Canonical form: numerator and denominator are coprime over `Q`, the
/// denominator has only nonnegative exponents and constant term exactly 1.
/// That pins the representative down uniquely, so derived equality is ring
/// equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalFunction {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RationalFunction {
    /// Reduces `num / den` to canonical form.
    ///
    /// Fails when the quotient is not an element of `S^-1 Z[z, z^-1]`,
    /// e.g. `1 / (2 - z)`.
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (kd, den) = den.strip_monomial();
        let (kn, num) = num.strip_monomial();
        let shift = kn - kd;
        let g = LaurentPoly::gcd_over_rationals(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("primitive gcd divides over Z"),
                den.div_exact(&g).expect("primitive gcd divides over Z"),
            )
        };
        let c0 = den.coeff(0);
        debug_assert!(!c0.is_zero());
        let (num, den) = if c0.is_one() {
            (num, den)
        } else {
            match (num.div_scalar_exact(&c0), den.div_scalar_exact(&c0)) {
                (Some(n), Some(d)) => (n, d),
                _ => {
                    return Err(Error::NotInRationalSubring(format!(
                        "({}) / ({})",
                        num.shift(shift),
                        den
                    )))
                }
            }
        };
        Ok(Self {
            num: num.shift(shift),
            den,
        })
    }

    pub fn zero() -> Self {
        Self {
            num: LaurentPoly::zero(),
            den: LaurentPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(LaurentPoly::one())
    }

    pub fn from_poly(p: LaurentPoly) -> Self {
        Self {
            num: p,
            den: LaurentPoly::one(),
        }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Re-runs canonicalization. Idempotent on canonical values.
    pub fn renormalize(&self) -> Result<Self> {
        Self::new(self.num.clone(), self.den.clone())
    }

    pub fn reverse_variable_parts(&self) -> (LaurentPoly, LaurentPoly) {
        (self.num.reverse_variable(), self.den.reverse_variable())
    }

    /// Quotient `a / b` if it lies in `S^-1 Z[z, z^-1]`.
    pub fn quotient(a: &LaurentPoly, b: &LaurentPoly) -> Result<Self> {
        Self::new(a.clone(), b.clone())
    }

    /// `self^-1`, when the numerator is itself admissible as a denominator.
    pub fn inverse(&self) -> Result<Self> {
        Self::new(self.den.clone(), self.num.clone())
    }

    fn combine(num: LaurentPoly, den: LaurentPoly) -> Self {
        // Products and sums of elements of S stay in S.
        Self::new(num, den).expect("S is multiplicatively closed")
    }

    /// Least common multiple of denominators, up to sign: used to clear a
    /// matrix of rational entries by a single unit of `Z((z))`.
    pub fn lcm_denominators<'a, I>(items: I) -> LaurentPoly
    where
        I: IntoIterator<Item = &'a RationalFunction>,
    {
        let mut acc = LaurentPoly::one();
        for r in items {
            if r.den.is_one() {
                continue;
            }
            let g = LaurentPoly::gcd_over_rationals(&acc, &r.den);
            let q = r.den.div_exact(&g).expect("primitive gcd divides over Z");
            acc = &acc * &q;
        }
        // Keep the constant term at +1.
        let c0 = acc.coeff(0);
        if c0.is_negative() {
            acc = -acc;
        }
        debug_assert!(acc.coeff(0).is_one());
        acc
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            let wrap_num = self.num.num_terms() > 1;
            if wrap_num {
                write!(f, "({})", self.num)?;
            } else {
                write!(f, "{}", self.num)?;
            }
            write!(f, "/({})", self.den)
        }
    }
}

impl fmt::Debug for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RationalFunction({self})")
    }
}

impl From<LaurentPoly> for RationalFunction {
    fn from(p: LaurentPoly) -> Self {
        Self::from_poly(p)
    }
}

impl Add for &RationalFunction {
    type Output = RationalFunction;
    fn add(self, rhs: &RationalFunction) -> RationalFunction {
        if self.den == rhs.den {
            return RationalFunction::combine(&self.num + &rhs.num, self.den.clone());
        }
        RationalFunction::combine(&(&self.num * &rhs.den) + &(&rhs.num * &self.den), &self.den * &rhs.den)
    }
}

impl Sub for &RationalFunction {
    type Output = RationalFunction;
    fn sub(self, rhs: &RationalFunction) -> RationalFunction {
        self + &(-rhs)
    }
}

impl Mul for &RationalFunction {
    type Output = RationalFunction;
    fn mul(self, rhs: &RationalFunction) -> RationalFunction {
        if self.is_zero() || rhs.is_zero() {
            return RationalFunction::zero();
        }
        RationalFunction::combine(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Neg for &RationalFunction {
    type Output = RationalFunction;
    fn neg(self) -> RationalFunction {
        RationalFunction {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}
