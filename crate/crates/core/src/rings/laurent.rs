use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::Direction;

/// An element of `Z[z, z^-1]`.
///
/// Stored as a sparse exponent → coefficient map with no zero coefficients,
/// so structural equality is ring equality.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    /// The indeterminate `z`.
    pub fn z() -> Self {
        Self::monomial(BigInt::one(), 1)
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::monomial(c, 0)
    }

    pub fn monomial(c: impl Into<BigInt>, exp: i64) -> Self {
        let c = c.into();
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(exp, c);
        }
        Self { coeffs }
    }

    /// Builds a polynomial from a raw coefficient map, dropping zero entries.
    pub fn from_map(raw: BTreeMap<i64, BigInt>) -> Self {
        let coeffs = raw.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self { coeffs }
    }

    /// Sums `(exponent, coefficient)` terms; repeated exponents accumulate.
    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut raw: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (e, c) in terms {
            *raw.entry(e).or_default() += c.into();
        }
        Self::from_map(raw)
    }

    /// Dense constructor: `coeffs[i]` is the coefficient of `z^(start + i)`.
    pub fn from_dense(start: i64, coeffs: &[BigInt]) -> Self {
        Self::from_terms(coeffs.iter().enumerate().map(|(i, c)| (start + i as i64, c.clone())))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs.get(&0).is_some_and(|c| c.is_one())
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn ord(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    /// Highest exponent with a nonzero coefficient.
    pub fn deg(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// `deg - ord`, or `None` for zero.
    pub fn span(&self) -> Option<i64> {
        Some(self.deg()? - self.ord()?)
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (i64, &BigInt)> + '_ {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.keys().all(|&e| e == 0)
    }

    pub fn is_monomial(&self) -> bool {
        self.coeffs.len() == 1
    }

    /// The extreme term on the `dir` side: lowest exponent for
    /// [`Direction::Plus`], highest for [`Direction::Minus`].
    pub fn extreme(&self, dir: Direction) -> Option<(i64, &BigInt)> {
        match dir {
            Direction::Plus => self.coeffs.iter().next(),
            Direction::Minus => self.coeffs.iter().next_back(),
        }
        .map(|(e, c)| (*e, c))
    }

    /// Units of `Z((z))` are exactly the series whose lowest coefficient is
    /// `±1`; dually for `Z((z^-1))` and the highest coefficient.
    pub fn is_novikov_unit(&self, dir: Direction) -> bool {
        self.extreme(dir).is_some_and(|(_, c)| c.abs().is_one())
    }

    /// Multiplies by `z^k`.
    pub fn shift(&self, k: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + k, c.clone())).collect(),
        }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        if s.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * s)).collect(),
        }
    }

    /// The substitution `z ↦ z^-1`.
    pub fn reverse_variable(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    /// Nonnegative gcd of the coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.coeffs.values().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }

    /// Divides out the content. The sign is left alone.
    pub fn primitive_part(&self) -> Self {
        let c = self.content();
        if c.is_zero() || c.is_one() {
            return self.clone();
        }
        self.div_scalar_exact(&c).expect("content divides every coefficient")
    }

    pub fn div_scalar_exact(&self, s: &BigInt) -> Option<Self> {
        if s.is_zero() {
            return None;
        }
        let mut coeffs = BTreeMap::new();
        for (e, c) in &self.coeffs {
            let (q, r) = c.div_rem(s);
            if !r.is_zero() {
                return None;
            }
            coeffs.insert(*e, q);
        }
        Some(Self { coeffs })
    }

    /// Shifts so that the lowest exponent is zero, returning the shift
    /// that was removed: `self = z^k * result`.
    pub fn strip_monomial(&self) -> (i64, Self) {
        match self.ord() {
            Some(k) => (k, self.shift(-k)),
            None => (0, Self::zero()),
        }
    }

    /// Exact quotient `self / divisor` in `Z[z, z^-1]`, if it exists.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Self::zero());
        }
        let (ka, a) = self.strip_monomial();
        let (kb, b) = divisor.strip_monomial();
        let (q, r) = dense_divrem_exact_lead(&to_dense(&a), &to_dense(&b))?;
        if r.iter().any(|c| !c.is_zero()) {
            return None;
        }
        Some(Self::from_dense(ka - kb, &q))
    }

    /// Greatest common divisor over `Q[z, z^-1]`, returned as a primitive
    /// polynomial in `Z[z]` with nonzero constant term and positive leading
    /// coefficient. `gcd(0, 0) = 0`.
    pub fn gcd_over_rationals(a: &Self, b: &Self) -> Self {
        if a.is_zero() && b.is_zero() {
            return Self::zero();
        }
        if a.is_zero() {
            return b.strip_monomial().1.primitive_part().with_positive_leading();
        }
        if b.is_zero() {
            return a.strip_monomial().1.primitive_part().with_positive_leading();
        }
        let mut x = to_dense(&a.strip_monomial().1.primitive_part());
        let mut y = to_dense(&b.strip_monomial().1.primitive_part());
        if x.len() < y.len() {
            std::mem::swap(&mut x, &mut y);
        }
        while !(y.len() == 1 && y[0].is_zero()) && !y.is_empty() {
            let r = dense_pseudo_rem(&x, &y);
            x = y;
            y = dense_primitive(&r);
        }
        Self::from_dense(0, &x).primitive_part().with_positive_leading()
    }

    fn with_positive_leading(self) -> Self {
        match self.deg() {
            Some(d) if self.coeff(d).is_negative() => -self,
            _ => self,
        }
    }

    /// Representative modulo units `±z^k` of the Novikov ring on the `dir`
    /// side: the monomial is stripped and the sign is chosen so that the
    /// extreme coefficient on that side is positive.
    pub fn novikov_normalized(&self, dir: Direction) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let (_, p) = self.strip_monomial();
        match p.extreme(dir) {
            Some((_, c)) if c.is_negative() => -p,
            _ => p,
        }
    }

    /// Alexander-polynomial convention modulo `±z^k`: nonnegative exponents,
    /// nonzero constant term, positive leading coefficient.
    pub fn alexander_normalized(&self) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        self.strip_monomial().1.with_positive_leading()
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// Drops every term with exponent above `bound`.
    pub fn truncate_above(&self, bound: i64) -> Self {
        Self {
            coeffs: self.coeffs.range(..=bound).map(|(e, c)| (*e, c.clone())).collect(),
        }
    }

    pub fn max_abs_coeff(&self) -> BigInt {
        self.coeffs.values().map(|c| c.abs()).max().unwrap_or_default()
    }
}

// Dense helpers on Z[z]: index = exponent.

fn to_dense(p: &LaurentPoly) -> Vec<BigInt> {
    debug_assert!(p.ord().unwrap_or(0) >= 0);
    let deg = p.deg().unwrap_or(0).max(0) as usize;
    let mut v = vec![BigInt::zero(); deg + 1];
    for (e, c) in p.terms() {
        v[e as usize] = c.clone();
    }
    v
}

fn trim(v: &mut Vec<BigInt>) {
    while v.len() > 1 && v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn dense_primitive(v: &[BigInt]) -> Vec<BigInt> {
    let g = v.iter().fold(BigInt::zero(), |acc, c| acc.gcd(c));
    let mut out: Vec<BigInt> = if g.is_zero() || g.is_one() {
        v.to_vec()
    } else {
        v.iter().map(|c| c / &g).collect()
    };
    trim(&mut out);
    out
}

/// Pseudo-remainder of `a` by `b` (`b` nonzero).
fn dense_pseudo_rem(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    let db = b.len() - 1;
    let lb = b[db].clone();
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c *= &lb;
        }
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &lr * bc;
        }
        trim(&mut r);
        if db == 0 {
            // Division by a constant: the remainder is zero.
            return vec![BigInt::zero()];
        }
    }
    r
}

/// Long division from the top, requiring each quotient coefficient to be
/// an integer. Returns `None` as soon as that fails.
fn dense_divrem_exact_lead(a: &[BigInt], b: &[BigInt]) -> Option<(Vec<BigInt>, Vec<BigInt>)> {
    let mut r = a.to_vec();
    trim(&mut r);
    let mut b = b.to_vec();
    trim(&mut b);
    let db = b.len() - 1;
    let lb = b[db].clone();
    if r.len() <= db {
        return Some((vec![BigInt::zero()], r));
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    while r.len() > db && !(r.len() == 1 && r[0].is_zero()) {
        let dr = r.len() - 1;
        let (qc, rem) = r[dr].div_rem(&lb);
        if !rem.is_zero() {
            return None;
        }
        let shift = dr - db;
        for (i, bc) in b.iter().enumerate() {
            r[i + shift] -= &qc * bc;
        }
        q[shift] = qc;
        // The top coefficient is now zero; drop it even when r has length 1.
        if r.len() > 1 {
            r.pop();
        } else {
            break;
        }
        trim(&mut r);
    }
    Some((q, r))
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in &self.coeffs {
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    f.write_str("-")?;
                }
            } else {
                f.write_str(if neg { " - " } else { " + " })?;
            }
            first = false;
            let var = match *e {
                0 => String::new(),
                1 => "z".to_string(),
                k => format!("z^{k}"),
            };
            if var.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                f.write_str(&var)?;
            } else {
                write!(f, "{abs}*{var}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "LaurentPoly({self})")
    }
}

impl From<BigInt> for LaurentPoly {
    fn from(c: BigInt) -> Self {
        Self::constant(c)
    }
}

impl From<i64> for LaurentPoly {
    fn from(c: i64) -> Self {
        Self::constant(c)
    }
}

impl Add for &LaurentPoly {
    type Output = LaurentPoly;
    fn add(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for LaurentPoly {
    type Output = LaurentPoly;
    fn add(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self += &rhs;
        self
    }
}

impl AddAssign<&LaurentPoly> for LaurentPoly {
    fn add_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            let entry = self.coeffs.entry(*e).or_default();
            *entry += c;
            if entry.is_zero() {
                self.coeffs.remove(e);
            }
        }
    }
}

impl SubAssign<&LaurentPoly> for LaurentPoly {
    fn sub_assign(&mut self, rhs: &LaurentPoly) {
        for (e, c) in &rhs.coeffs {
            let entry = self.coeffs.entry(*e).or_default();
            *entry -= c;
            if entry.is_zero() {
                self.coeffs.remove(e);
            }
        }
    }
}

impl Sub for &LaurentPoly {
    type Output = LaurentPoly;
    fn sub(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for LaurentPoly {
    type Output = LaurentPoly;
    fn sub(mut self, rhs: LaurentPoly) -> LaurentPoly {
        self -= &rhs;
        self
    }
}

impl Mul for &LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: &LaurentPoly) -> LaurentPoly {
        let mut raw: BTreeMap<i64, BigInt> = BTreeMap::new();
        for (ea, ca) in &self.coeffs {
            for (eb, cb) in &rhs.coeffs {
                *raw.entry(ea + eb).or_default() += ca * cb;
            }
        }
        LaurentPoly::from_map(raw)
    }
}

impl Mul for LaurentPoly {
    type Output = LaurentPoly;
    fn mul(self, rhs: LaurentPoly) -> LaurentPoly {
        &self * &rhs
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c)).collect(),
        }
    }
}

impl Neg for LaurentPoly {
    type Output = LaurentPoly;
    fn neg(self) -> LaurentPoly {
        -&self
    }
}
