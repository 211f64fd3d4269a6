//! Exact scalars: arbitrary-precision rationals and elements `a + b√k` of a
//! real quadratic field.
//!
//! Every instance works inside a single field `Q(√k)`. A value whose
//! irrational part vanishes carries no radicand, so rational values combine
//! freely with values from any field. Combining two genuinely irrational
//! values from different fields is a programming error and panics; input
//! parsing rejects such documents before any arithmetic happens.

use std::cmp::Ordering;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

/// Builds the canonical rational `num/den` (positive denominator, lowest terms).
pub fn normalize_rational(num: BigInt, den: BigInt) -> Result<Rational> {
    if den.is_zero() {
        return Err(Error::ZeroDenominator);
    }
    Ok(BigRational::new(num, den))
}

/// Parses `"p"`, `"p/q"` or a finite decimal such as `"-0.25"`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::schema("scalar", format!("cannot parse {s:?} as a rational"));
    if let Some((n, d)) = s.split_once('/') {
        let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
        return normalize_rational(n, d);
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits = format!("{int}{frac}");
        let n = BigInt::from_str(&digits).map_err(|_| bad())?;
        let d = BigInt::from(10u32).pow(frac.len() as u32);
        return normalize_rational(n, d);
    }
    BigInt::from_str(s).map(Rational::from_integer).map_err(|_| bad())
}

/// `"p"` for integers, `"p/q"` otherwise.
pub fn format_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn is_squarefree(k: u64) -> bool {
    if k < 2 {
        return false;
    }
    let mut n = k;
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return false;
            }
        }
        p += 1;
    }
    true
}

/// An element `a + b√k` of `Q(√k)`.
///
/// Invariant: `k == 0` exactly when `b == 0`, so equal numbers have equal
/// representations and the derived `Eq`/`Hash` are value equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QuadExt {
    a: Rational,
    b: Rational,
    k: u64,
}

/// The scalar type used by every geometric routine.
pub type Scalar = QuadExt;

fn join_radicand(k1: u64, k2: u64) -> u64 {
    match (k1, k2) {
        (0, k) | (k, 0) => k,
        (k1, k2) if k1 == k2 => k1,
        (k1, k2) => panic!("{}", Error::MixedFields(k1, k2)),
    }
}

impl QuadExt {
    pub fn new(a: Rational, b: Rational, k: u64) -> Result<Self> {
        if b.is_zero() {
            return Ok(Self::from_rational(a));
        }
        if !is_squarefree(k) {
            return Err(Error::InvalidRadicand(k));
        }
        Ok(QuadExt { a, b, k })
    }

    pub fn from_rational(a: Rational) -> Self {
        QuadExt { a, b: Rational::zero(), k: 0 }
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        Self::from_rational(Rational::from_integer(n.into()))
    }

    pub fn ratio(num: i64, den: i64) -> Self {
        Self::from_rational(Rational::new(num.into(), den.into()))
    }

    /// `√k` itself.
    pub fn sqrt_of(k: u64) -> Result<Self> {
        Self::new(Rational::zero(), Rational::one(), k)
    }

    pub fn zero() -> Self {
        Self::from_rational(Rational::zero())
    }

    pub fn one() -> Self {
        Self::from_rational(Rational::one())
    }

    pub fn rational_part(&self) -> &Rational {
        &self.a
    }

    pub fn irrational_part(&self) -> &Rational {
        &self.b
    }

    /// The radicand, or `None` for a rational value.
    pub fn radicand(&self) -> Option<u64> {
        (self.k != 0).then_some(self.k)
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    pub fn as_rational(&self) -> Option<&Rational> {
        self.is_rational().then_some(&self.a)
    }

    pub fn as_integer(&self) -> Option<BigInt> {
        match self.as_rational() {
            Some(r) if r.is_integer() => Some(r.to_integer()),
            _ => None,
        }
    }

    fn assemble(a: Rational, b: Rational, k: u64) -> Self {
        if b.is_zero() {
            QuadExt { a, b, k: 0 }
        } else {
            QuadExt { a, b, k }
        }
    }

    pub fn signum(&self) -> i8 {
        quad_sign(self)
    }

    pub fn is_positive(&self) -> bool {
        self.signum() > 0
    }

    pub fn is_negative(&self) -> bool {
        self.signum() < 0
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Conjugate `a - b√k`.
    pub fn conjugate(&self) -> Self {
        Self::assemble(self.a.clone(), -&self.b, self.k)
    }

    /// Field norm `a² - b²k`.
    pub fn norm(&self) -> Rational {
        if self.b.is_zero() {
            return &self.a * &self.a;
        }
        &self.a * &self.a - &self.b * &self.b * Rational::from_integer(self.k.into())
    }

    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "division by zero");
        if self.b.is_zero() {
            return Self::from_rational(self.a.recip());
        }
        let n = self.norm();
        Self::assemble(&self.a / &n, -&self.b / &n, self.k)
    }

    /// Exact floor, using an integer square root to bracket `b√k`.
    pub fn floor(&self) -> BigInt {
        if self.b.is_zero() {
            return self.a.floor().to_integer();
        }
        let square = &self.b * &self.b * Rational::from_integer(self.k.into());
        let root = square.floor().to_integer().sqrt();
        let mut n = self.a.floor().to_integer() + if self.b.is_positive() { root } else { -root - BigInt::one() };
        // the bracket is off by at most one in each direction
        while *self >= QuadExt::from_int(&n + 1) {
            n += 1;
        }
        while *self < QuadExt::from_int(n.clone()) {
            n -= 1;
        }
        n
    }

    pub fn ceil(&self) -> BigInt {
        -(-self).floor()
    }

    pub fn to_f64(&self) -> f64 {
        let a = self.a.to_f64().unwrap_or(f64::NAN);
        if self.b.is_zero() {
            return a;
        }
        a + self.b.to_f64().unwrap_or(f64::NAN) * (self.k as f64).sqrt()
    }
}

/// Exact sign of `a + b√k`.
pub fn quad_sign(x: &QuadExt) -> i8 {
    fn sig(r: &Rational) -> i8 {
        if r.is_positive() {
            1
        } else if r.is_negative() {
            -1
        } else {
            0
        }
    }
    let sa = sig(&x.a);
    let sb = sig(&x.b);
    if sb == 0 {
        return sa;
    }
    if sa == 0 || sa == sb {
        return sb;
    }
    // opposite signs: the larger magnitude wins
    let a2 = &x.a * &x.a;
    let b2k = &x.b * &x.b * Rational::from_integer(x.k.into());
    match a2.cmp(&b2k) {
        Ordering::Greater => sa,
        Ordering::Less => sb,
        Ordering::Equal => 0,
    }
}

/// The rational value of `x`, if its irrational part vanishes.
pub fn quad_is_rational(x: &QuadExt) -> Option<Rational> {
    x.as_rational().cloned()
}

impl Default for QuadExt {
    fn default() -> Self {
        Self::zero()
    }
}

impl From<Rational> for QuadExt {
    fn from(r: Rational) -> Self {
        Self::from_rational(r)
    }
}

impl From<BigInt> for QuadExt {
    fn from(n: BigInt) -> Self {
        Self::from_int(n)
    }
}

impl From<&BigInt> for QuadExt {
    fn from(n: &BigInt) -> Self {
        Self::from_int(n.clone())
    }
}

impl From<i64> for QuadExt {
    fn from(n: i64) -> Self {
        Self::from_int(n)
    }
}

impl FromStr for QuadExt {
    type Err = Error;

    /// Parses a rational literal; irrational values go through [`QuadExt::new`].
    fn from_str(s: &str) -> Result<Self> {
        parse_rational(s).map(Self::from_rational)
    }
}

impl Ord for QuadExt {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.b.is_zero() && other.b.is_zero() {
            return self.a.cmp(&other.a);
        }
        quad_sign(&(self - other)).cmp(&0)
    }
}

impl PartialOrd for QuadExt {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b.is_zero() {
            return write!(f, "{}", format_rational(&self.a));
        }
        if self.a.is_zero() {
            return write!(f, "{}*sqrt({})", format_rational(&self.b), self.k);
        }
        let sign = if self.b.is_negative() { '-' } else { '+' };
        write!(f, "{} {} {}*sqrt({})", format_rational(&self.a), sign, format_rational(&self.b.abs()), self.k)
    }
}

impl fmt::Debug for QuadExt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Neg for &QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { a: -&self.a, b: -&self.b, k: self.k }
    }
}

impl Neg for QuadExt {
    type Output = QuadExt;
    fn neg(self) -> QuadExt {
        QuadExt { a: -self.a, b: -self.b, k: self.k }
    }
}

impl<'a> Add<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn add(self, rhs: &QuadExt) -> QuadExt {
        if self.b.is_zero() && rhs.b.is_zero() {
            return QuadExt::from_rational(&self.a + &rhs.a);
        }
        let k = join_radicand(self.k, rhs.k);
        QuadExt::assemble(&self.a + &rhs.a, &self.b + &rhs.b, k)
    }
}

impl<'a> Sub<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn sub(self, rhs: &QuadExt) -> QuadExt {
        if self.b.is_zero() && rhs.b.is_zero() {
            return QuadExt::from_rational(&self.a - &rhs.a);
        }
        let k = join_radicand(self.k, rhs.k);
        QuadExt::assemble(&self.a - &rhs.a, &self.b - &rhs.b, k)
    }
}

impl<'a> Mul<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn mul(self, rhs: &QuadExt) -> QuadExt {
        match (self.b.is_zero(), rhs.b.is_zero()) {
            (true, true) => QuadExt::from_rational(&self.a * &rhs.a),
            (true, false) => QuadExt::assemble(&self.a * &rhs.a, &self.a * &rhs.b, rhs.k),
            (false, true) => QuadExt::assemble(&self.a * &rhs.a, &self.b * &rhs.a, self.k),
            (false, false) => {
                let k = join_radicand(self.k, rhs.k);
                let kr = Rational::from_integer(k.into());
                QuadExt::assemble(&self.a * &rhs.a + &self.b * &rhs.b * kr, &self.a * &rhs.b + &self.b * &rhs.a, k)
            }
        }
    }
}

impl<'a> Div<&'a QuadExt> for &'a QuadExt {
    type Output = QuadExt;
    fn div(self, rhs: &QuadExt) -> QuadExt {
        if self.b.is_zero() && rhs.b.is_zero() {
            assert!(!rhs.a.is_zero(), "division by zero");
            return QuadExt::from_rational(&self.a / &rhs.a);
        }
        self * &rhs.recip()
    }
}

macro_rules! forward_owned_binop {
    ($imp:ident, $method:ident) => {
        impl $imp<QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $imp<&'a QuadExt> for QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: &QuadExt) -> QuadExt {
                (&self).$method(rhs)
            }
        }
        impl<'a> $imp<QuadExt> for &'a QuadExt {
            type Output = QuadExt;
            fn $method(self, rhs: QuadExt) -> QuadExt {
                self.$method(&rhs)
            }
        }
    };
}

forward_owned_binop!(Add, add);
forward_owned_binop!(Sub, sub);
forward_owned_binop!(Mul, mul);
forward_owned_binop!(Div, div);

impl AddAssign<&QuadExt> for QuadExt {
    fn add_assign(&mut self, rhs: &QuadExt) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&QuadExt> for QuadExt {
    fn sub_assign(&mut self, rhs: &QuadExt) {
        *self = &*self - rhs;
    }
}

impl Sum for QuadExt {
    fn sum<I: Iterator<Item = QuadExt>>(iter: I) -> QuadExt {
        iter.fold(QuadExt::zero(), |acc, x| acc + x)
    }
}

/// `⟨u, v⟩`.
pub fn dot(u: &[Scalar], v: &[Scalar]) -> Scalar {
    debug_assert_eq!(u.len(), v.len());
    let mut acc = Scalar::zero();
    for (x, y) in u.iter().zip(v) {
        if !x.is_zero() && !y.is_zero() {
            acc += &(x * y);
        }
    }
    acc
}

/// `⟨u, z⟩` for an integer vector `z`.
pub fn dot_int(u: &[Scalar], z: &[BigInt]) -> Scalar {
    debug_assert_eq!(u.len(), z.len());
    let mut acc = Scalar::zero();
    for (x, n) in u.iter().zip(z) {
        if !x.is_zero() && !n.is_zero() {
            acc += &(x * &Scalar::from_int(n.clone()));
        }
    }
    acc
}

pub fn to_scalars(z: &[BigInt]) -> Vec<Scalar> {
    z.iter().map(Scalar::from).collect()
}

/// Lexicographic comparison of scalar vectors.
pub fn lex_cmp(u: &[Scalar], v: &[Scalar]) -> Ordering {
    u.iter().cmp(v.iter())
}

/// The infinity norm.
pub fn norm_inf(v: &[Scalar]) -> Scalar {
    v.iter().map(Scalar::abs).max().unwrap_or_else(Scalar::zero)
}

/// Multiplies a rational vector by the lcm of its denominators, divides by the
/// gcd of the result and makes the first nonzero entry positive.
pub fn primitive_integer_vector(v: &[Rational]) -> Option<Vec<BigInt>> {
    let lcm = v.iter().fold(BigInt::one(), |acc, r| acc.lcm(r.denom()));
    let ints: Vec<BigInt> = v.iter().map(|r| (r * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, n| acc.gcd(n));
    if g.is_zero() {
        return None;
    }
    let mut out: Vec<BigInt> = ints.into_iter().map(|n| n / &g).collect();
    if out.iter().find(|n| !n.is_zero()).is_some_and(|n| n.is_negative()) {
        out.iter_mut().for_each(|n| *n = -&*n);
    }
    Some(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(s: &str) -> Rational {
        parse_rational(s).unwrap()
    }

    fn quad(a: &str, b: &str, k: u64) -> QuadExt {
        QuadExt::new(q(a), q(b), k).unwrap()
    }

    #[test]
    fn normalize_examples() {
        let r = normalize_rational(2.into(), 4.into()).unwrap();
        assert_eq!((r.numer().clone(), r.denom().clone()), (1.into(), 2.into()));
        let r = normalize_rational(3.into(), (-6).into()).unwrap();
        assert_eq!((r.numer().clone(), r.denom().clone()), ((-1).into(), 2.into()));
        let r = normalize_rational(0.into(), 7.into()).unwrap();
        assert_eq!((r.numer().clone(), r.denom().clone()), (0.into(), 1.into()));
        assert!(matches!(normalize_rational(1.into(), 0.into()), Err(Error::ZeroDenominator)));
    }

    #[test]
    fn parse_forms() {
        assert_eq!(q("-3/6"), q("-1/2"));
        assert_eq!(q("0.25"), q("1/4"));
        assert_eq!(q(" 7 "), q("7/1"));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
        assert_eq!(format_rational(&q("6/3")), "2");
        assert_eq!(format_rational(&q("-2/6")), "-1/3");
    }

    #[test]
    fn sign_examples() {
        assert_eq!(quad_sign(&quad("1", "0", 2)), 1);
        assert_eq!(quad_sign(&quad("-3", "2", 2)), -1);
        assert_eq!(quad_sign(&quad("-1", "1", 2)), 1);
        assert_eq!(quad_sign(&QuadExt::zero()), 0);
    }

    #[test]
    fn rationality_examples() {
        assert_eq!(quad_is_rational(&quad("3/2", "0", 2)), Some(q("3/2")));
        assert_eq!(quad_is_rational(&quad("0", "1", 2)), None);
        assert_eq!(quad_is_rational(&quad("5", "0", 3)), Some(q("5")));
    }

    #[test]
    fn radicand_must_be_squarefree() {
        assert!(QuadExt::new(q("1"), q("1"), 4).is_err());
        assert!(QuadExt::new(q("1"), q("1"), 1).is_err());
        assert!(QuadExt::new(q("1"), q("0"), 4).is_ok());
        assert!(is_squarefree(30) && !is_squarefree(18));
    }

    #[test]
    fn field_operations() {
        let x = quad("1", "1", 2);
        let y = quad("3", "-2", 2);
        // (1 + √2)(3 - 2√2) = 3 - 2√2 + 3√2 - 4 = -1 + √2
        assert_eq!(&x * &y, quad("-1", "1", 2));
        assert_eq!(&(&x / &x), &QuadExt::one());
        assert_eq!(&x * &x.recip(), QuadExt::one());
        assert!((&x - &x).is_zero());
        assert_eq!((&x - &x).radicand(), None);
    }

    #[test]
    fn floor_and_ceil() {
        let r2 = QuadExt::sqrt_of(2).unwrap();
        assert_eq!(r2.floor(), 1.into());
        assert_eq!(r2.ceil(), 2.into());
        assert_eq!((-&r2).floor(), (-2).into());
        // 7 - 5√2 ≈ -0.0711
        assert_eq!(quad("7", "-5", 2).floor(), (-1).into());
        assert_eq!(quad("-7", "5", 2).floor(), 0.into());
        assert_eq!(quad("5/2", "0", 2).floor(), 2.into());
        assert_eq!(quad("-5/2", "0", 2).ceil(), (-2).into());
    }

    #[test]
    #[should_panic]
    fn mixing_fields_panics() {
        let _ = QuadExt::sqrt_of(2).unwrap() + QuadExt::sqrt_of(3).unwrap();
    }

    #[test]
    fn primitive_vectors() {
        let v = primitive_integer_vector(&[q("-1/2"), q("-1/3")]).unwrap();
        assert_eq!(v, vec![BigInt::from(3), BigInt::from(2)]);
        assert!(primitive_integer_vector(&[q("0"), q("0")]).is_none());
    }
}
