//! Exact arithmetic in the real quadratic field Q(√5).
//!
//! Every element is stored as `a + b·√5` with reduced rational parts, so
//! equality is structural and the sign of an element is decided without any
//! floating point.

use std::cmp::Ordering;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::{Integer, Roots};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

/// Errors raised by field arithmetic and parsing.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("attempted to invert zero")]
    DivisionByZero,
    #[error("cannot parse {input:?} as an element of Q(rt5): {reason}")]
    Parse { input: String, reason: String },
}

/// An element `a + b·√5` of Q(√5).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct FieldScalar {
    a: BigRational,
    b: BigRational,
}

impl FieldScalar {
    pub fn new(a: BigRational, b: BigRational) -> Self {
        Self { a, b }
    }

    pub fn from_ints(a: i64, b: i64) -> Self {
        Self::new(BigRational::from_integer(a.into()), BigRational::from_integer(b.into()))
    }

    /// `(an/ad) + (bn/bd)·√5`.
    pub fn from_ratios(an: i64, ad: i64, bn: i64, bd: i64) -> Self {
        Self::new(
            BigRational::new(an.into(), ad.into()),
            BigRational::new(bn.into(), bd.into()),
        )
    }

    pub fn rational(r: BigRational) -> Self {
        Self::new(r, BigRational::zero())
    }

    pub fn integer(n: i64) -> Self {
        Self::from_ints(n, 0)
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::integer(1)
    }

    pub fn sqrt5() -> Self {
        Self::from_ints(0, 1)
    }

    /// The golden ratio τ = (1 + √5)/2.
    pub fn golden() -> Self {
        Self::from_ratios(1, 2, 1, 2)
    }

    /// Rational part.
    pub fn a(&self) -> &BigRational {
        &self.a
    }

    /// Coefficient of √5.
    pub fn b(&self) -> &BigRational {
        &self.b
    }

    pub fn is_zero(&self) -> bool {
        self.a.is_zero() && self.b.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.b.is_zero()
    }

    /// Galois conjugate `a − b·√5`.
    pub fn conjugate(&self) -> Self {
        Self::new(self.a.clone(), -self.b.clone())
    }

    /// Field norm `a² − 5b²`.
    pub fn norm(&self) -> BigRational {
        &self.a * &self.a - BigRational::from_integer(5.into()) * &self.b * &self.b
    }

    /// Exact sign of the real number `a + b·√5`.
    pub fn signum(&self) -> Ordering {
        let sa = sign_of(&self.a);
        let sb = sign_of(&self.b);
        match (sa, sb) {
            (s, Ordering::Equal) => s,
            (Ordering::Equal, s) => s,
            (x, y) if x == y => x,
            _ => {
                // a and b have opposite signs: the larger magnitude wins.
                let five = BigRational::from_integer(5.into());
                if &self.a * &self.a > five * &self.b * &self.b {
                    sa
                } else {
                    sb
                }
            }
        }
    }

    pub fn is_positive(&self) -> bool {
        self.signum() == Ordering::Greater
    }

    pub fn is_negative(&self) -> bool {
        self.signum() == Ordering::Less
    }

    pub fn abs(&self) -> Self {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    pub fn inv(&self) -> Result<Self, FieldError> {
        if self.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        let n = self.norm();
        Ok(Self::new(&self.a / &n, -(&self.b / &n)))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, FieldError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            base = &base * &base;
            e >>= 1;
        }
        acc
    }

    /// Largest integer not exceeding the element.
    pub fn floor(&self) -> BigInt {
        // Bring both parts over a common positive denominator d:
        // value = (p + q·√5) / d.
        let d = self.a.denom().lcm(self.b.denom());
        let p = self.a.numer() * (&d / self.a.denom());
        let q = self.b.numer() * (&d / self.b.denom());
        let t = if q.is_zero() {
            BigInt::zero()
        } else {
            // floor(q·√5); the square root is irrational for q ≠ 0.
            let r: BigInt = Roots::sqrt(&(BigInt::from(5) * &q * &q));
            if q.is_negative() {
                -(r + BigInt::one())
            } else {
                r
            }
        };
        // p + t < value·d < p + t + 1, and no integer lies strictly inside.
        (p + t).div_floor(&d)
    }

    pub fn to_f64(&self) -> f64 {
        self.a.to_f64().unwrap_or(f64::NAN) + self.b.to_f64().unwrap_or(f64::NAN) * 5f64.sqrt()
    }

    /// Correctly rounded (half away from zero) decimal expansion with `digits`
    /// significant digits; trailing zeros are trimmed.
    pub fn to_decimal(&self, digits: usize) -> String {
        assert!(digits >= 1, "at least one significant digit is required");
        if self.is_zero() {
            return "0".to_string();
        }
        let negative = self.is_negative();
        let y = self.abs();
        let ten = BigRational::from_integer(10.into());
        let pow10 = |k: i64| -> BigRational {
            if k >= 0 {
                num_traits::pow(ten.clone(), k as usize)
            } else {
                num_traits::pow(ten.clone(), (-k) as usize).recip()
            }
        };
        let ge = |k: i64| y >= FieldScalar::rational(pow10(k));

        // Decimal exponent e with 10^e <= y < 10^(e+1).
        let mut e = y.to_f64().log10().floor() as i64;
        while !ge(e) {
            e -= 1;
        }
        while ge(e + 1) {
            e += 1;
        }

        let half = FieldScalar::rational(BigRational::new(1.into(), 2.into()));
        let limit = num_traits::pow(BigInt::from(10), digits);
        let (mantissa, scale) = loop {
            let scale = digits as i64 - 1 - e;
            let z = &(&y * &FieldScalar::rational(pow10(scale))) + &half;
            let n = z.floor();
            if n >= limit {
                e += 1;
                continue;
            }
            break (n, scale);
        };

        let s = mantissa.to_string();
        let len = s.len() as i64;
        let mut out = if scale <= 0 {
            let mut t = s.clone();
            t.extend(std::iter::repeat_n('0', (-scale) as usize));
            t
        } else if scale < len {
            let split = (len - scale) as usize;
            format!("{}.{}", &s[..split], &s[split..])
        } else {
            format!("0.{}{}", "0".repeat((scale - len) as usize), s)
        };
        if out.contains('.') {
            while out.ends_with('0') {
                out.pop();
            }
            if out.ends_with('.') {
                out.pop();
            }
        }
        if negative {
            out.insert(0, '-');
        }
        out
    }
}

fn sign_of(r: &BigRational) -> Ordering {
    match r.numer().sign() {
        Sign::Minus => Ordering::Less,
        Sign::NoSign => Ordering::Equal,
        Sign::Plus => Ordering::Greater,
    }
}

impl Ord for FieldScalar {
    fn cmp(&self, other: &Self) -> Ordering {
        if self == other {
            return Ordering::Equal;
        }
        (self - other).signum()
    }
}

impl PartialOrd for FieldScalar {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl From<i64> for FieldScalar {
    fn from(n: i64) -> Self {
        Self::integer(n)
    }
}

impl From<BigRational> for FieldScalar {
    fn from(r: BigRational) -> Self {
        Self::rational(r)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl $tr<&FieldScalar> for &FieldScalar {
            type Output = FieldScalar;
            fn $method(self, rhs: &FieldScalar) -> FieldScalar {
                let f: fn(&FieldScalar, &FieldScalar) -> FieldScalar = $body;
                f(self, rhs)
            }
        }
        impl $tr<FieldScalar> for FieldScalar {
            type Output = FieldScalar;
            fn $method(self, rhs: FieldScalar) -> FieldScalar {
                (&self).$method(&rhs)
            }
        }
        impl $tr<&FieldScalar> for FieldScalar {
            type Output = FieldScalar;
            fn $method(self, rhs: &FieldScalar) -> FieldScalar {
                (&self).$method(rhs)
            }
        }
        impl $tr<FieldScalar> for &FieldScalar {
            type Output = FieldScalar;
            fn $method(self, rhs: FieldScalar) -> FieldScalar {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |x, y| FieldScalar::new(&x.a + &y.a, &x.b + &y.b));
forward_binop!(Sub, sub, |x, y| FieldScalar::new(&x.a - &y.a, &x.b - &y.b));
forward_binop!(Mul, mul, |x, y| {
    let five = BigRational::from_integer(5.into());
    FieldScalar::new(
        &x.a * &y.a + five * &x.b * &y.b,
        &x.a * &y.b + &x.b * &y.a,
    )
});
// Panics on a zero divisor, like the rational types it wraps; use
// `checked_div` where the divisor is not known to be nonzero.
forward_binop!(Div, div, |x, y| x
    .checked_div(y)
    .expect("division by zero in Q(rt5)"));

impl AddAssign<&FieldScalar> for FieldScalar {
    fn add_assign(&mut self, rhs: &FieldScalar) {
        self.a += &rhs.a;
        self.b += &rhs.b;
    }
}

impl SubAssign<&FieldScalar> for FieldScalar {
    fn sub_assign(&mut self, rhs: &FieldScalar) {
        self.a -= &rhs.a;
        self.b -= &rhs.b;
    }
}

impl MulAssign<&FieldScalar> for FieldScalar {
    fn mul_assign(&mut self, rhs: &FieldScalar) {
        *self = &*self * rhs;
    }
}

impl Neg for FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        FieldScalar::new(-self.a, -self.b)
    }
}

impl Neg for &FieldScalar {
    type Output = FieldScalar;
    fn neg(self) -> FieldScalar {
        FieldScalar::new(-self.a.clone(), -self.b.clone())
    }
}

impl std::iter::Sum for FieldScalar {
    fn sum<I: Iterator<Item = FieldScalar>>(iter: I) -> Self {
        iter.fold(FieldScalar::zero(), |acc, x| acc + x)
    }
}

fn fmt_rational(r: &BigRational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Canonical text form: `p/q`, `r/s*rt5`, or `p/q + r/s*rt5` (`-` for a
/// negative √5 part). Integers drop the `/1`.
impl fmt::Display for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.a.is_zero(), self.b.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.a)),
            (true, false) => write!(f, "{}*rt5", fmt_rational(&self.b)),
            (false, false) => {
                let sep = if self.b.is_negative() { '-' } else { '+' };
                write!(f, "{} {} {}*rt5", fmt_rational(&self.a), sep, fmt_rational(&self.b.abs()))
            }
        }
    }
}

impl fmt::Debug for FieldScalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} (~{})", self.to_f64())
    }
}

/// Parses arithmetic expressions over integers, decimals and `rt5`
/// (also `sqrt5` and `√5`) with `+ - * /` and parentheses, e.g.
/// `(1+rt5)/2` or the canonical `1/2 + 1/2*rt5`.
impl FromStr for FieldScalar {
    type Err = FieldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut parser = ExprParser { src: s, pos: 0 };
        let fail = |reason: String| FieldError::Parse { input: s.to_string(), reason };
        let value = parser.expr().map_err(fail)?;
        parser.skip_ws();
        if parser.pos != s.len() {
            return Err(fail(format!("unexpected trailing input at byte {}", parser.pos)));
        }
        Ok(value)
    }
}

struct ExprParser<'a> {
    src: &'a str,
    pos: usize,
}

impl ExprParser<'_> {
    fn rest(&self) -> &str {
        &self.src[self.pos..]
    }

    fn skip_ws(&mut self) {
        let trimmed = self.rest().trim_start();
        self.pos = self.src.len() - trimmed.len();
    }

    fn eat(&mut self, token: &str) -> bool {
        self.skip_ws();
        if self.rest().starts_with(token) {
            self.pos += token.len();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<FieldScalar, String> {
        let mut acc = self.term()?;
        loop {
            if self.eat("+") {
                acc = acc + self.term()?;
            } else if self.eat("-") {
                acc = acc - self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<FieldScalar, String> {
        let mut acc = self.unary()?;
        loop {
            if self.eat("*") {
                acc = acc * self.unary()?;
            } else if self.eat("/") {
                let d = self.unary()?;
                acc = acc.checked_div(&d).map_err(|e| e.to_string())?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<FieldScalar, String> {
        if self.eat("-") {
            Ok(-self.unary()?)
        } else if self.eat("+") {
            self.unary()
        } else {
            self.atom()
        }
    }

    fn atom(&mut self) -> Result<FieldScalar, String> {
        if self.eat("(") {
            let v = self.expr()?;
            if !self.eat(")") {
                return Err(format!("expected ')' at byte {}", self.pos));
            }
            return Ok(v);
        }
        for name in ["rt5", "sqrt5", "√5"] {
            if self.eat(name) {
                return Ok(FieldScalar::sqrt5());
            }
        }
        self.skip_ws();
        let len = self
            .rest()
            .find(|c: char| !(c.is_ascii_digit() || c == '.'))
            .unwrap_or(self.rest().len());
        if len == 0 {
            return Err(format!("expected a number, 'rt5' or '(' at byte {}", self.pos));
        }
        let lit = &self.rest()[..len];
        let value = parse_decimal(lit).ok_or_else(|| format!("bad number {lit:?}"))?;
        self.pos += len;
        Ok(FieldScalar::rational(value))
    }
}

fn parse_decimal(lit: &str) -> Option<BigRational> {
    let (int_part, frac_part) = match lit.split_once('.') {
        Some((i, f)) => (i, f),
        None => (lit, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() || frac_part.contains('.') {
        return None;
    }
    let digits = format!("{int_part}{frac_part}");
    let numer: BigInt = digits.parse().ok()?;
    let denom = num_traits::pow(BigInt::from(10), frac_part.len());
    Some(BigRational::new(numer, denom))
}

impl Serialize for FieldScalar {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for FieldScalar {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
