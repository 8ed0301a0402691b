//! Exact rational numbers.
//!
//! Values are kept in canonical reduced form with a positive denominator.
//! Small values live in an `i128` pair; any operation that would overflow
//! transparently switches to arbitrary precision, and results that fit are
//! demoted back so that equality and hashing stay structural.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::ParseRationalError;

#[derive(Clone)]
enum Repr {
    Small(i128, i128),
    Big(Box<(BigInt, BigInt)>),
}

/// An exact rational number `numerator / denominator`.
#[derive(Clone)]
pub struct Rational(Repr);

fn gcd_i128(a: i128, b: i128) -> i128 {
    // callers never pass i128::MIN
    a.gcd(&b)
}

impl Rational {
    pub fn zero() -> Self {
        Rational(Repr::Small(0, 1))
    }

    pub fn one() -> Self {
        Rational(Repr::Small(1, 1))
    }

    pub fn from_int(v: i64) -> Self {
        Rational(Repr::Small(v as i128, 1))
    }

    /// Builds `num / den`, reducing to canonical form.
    ///
    /// Panics if `den` is zero.
    pub fn new(num: i128, den: i128) -> Self {
        assert!(den != 0, "zero denominator");
        Self::small_or_big(num, den)
    }

    pub fn from_bigints(num: BigInt, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let g = num.gcd(&den);
        let (mut n, mut d) = (num / &g, den / &g);
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        Self::demote(n, d)
    }

    fn small_or_big(num: i128, den: i128) -> Self {
        if num == i128::MIN || den == i128::MIN {
            return Self::from_bigints(BigInt::from(num), BigInt::from(den));
        }
        let g = gcd_i128(num, den);
        let (mut n, mut d) = (num / g, den / g);
        if d < 0 {
            n = -n;
            d = -d;
        }
        Rational(Repr::Small(n, d))
    }

    /// Reduced big parts -> canonical representation.
    fn demote(n: BigInt, d: BigInt) -> Self {
        match (n.to_i128(), d.to_i128()) {
            (Some(a), Some(b)) if a != i128::MIN => Rational(Repr::Small(a, b)),
            _ => Rational(Repr::Big(Box::new((n, d)))),
        }
    }

    fn big_parts(&self) -> (BigInt, BigInt) {
        match &self.0 {
            Repr::Small(n, d) => (BigInt::from(*n), BigInt::from(*d)),
            Repr::Big(b) => (b.0.clone(), b.1.clone()),
        }
    }

    pub fn numer(&self) -> BigInt {
        self.big_parts().0
    }

    pub fn denom(&self) -> BigInt {
        self.big_parts().1
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.0, Repr::Small(0, _))
    }

    pub fn is_integer(&self) -> bool {
        match &self.0 {
            Repr::Small(_, d) => *d == 1,
            Repr::Big(b) => b.1.is_one(),
        }
    }

    /// -1, 0 or +1.
    pub fn signum(&self) -> i32 {
        match &self.0 {
            Repr::Small(n, _) => n.signum() as i32,
            Repr::Big(b) => match b.0.sign() {
                Sign::Minus => -1,
                Sign::NoSign => 0,
                Sign::Plus => 1,
            },
        }
    }

    pub fn abs(&self) -> Self {
        if self.signum() < 0 {
            -self
        } else {
            self.clone()
        }
    }

    pub fn recip(&self) -> Self {
        match &self.0 {
            Repr::Small(n, d) => {
                assert!(*n != 0, "reciprocal of zero");
                Self::small_or_big(*d, *n)
            }
            Repr::Big(b) => Self::from_bigints(b.1.clone(), b.0.clone()),
        }
    }

    /// Largest integer not greater than `self`.
    pub fn floor(&self) -> BigInt {
        let (n, d) = self.big_parts();
        n.div_floor(&d)
    }

    /// Smallest integer not less than `self`.
    pub fn ceil(&self) -> BigInt {
        let (n, d) = self.big_parts();
        -((-n).div_floor(&d))
    }

    pub fn to_f64(&self) -> f64 {
        match &self.0 {
            Repr::Small(n, d) => *n as f64 / *d as f64,
            Repr::Big(b) => {
                let (n, d) = (&b.0, &b.1);
                // scale down to keep both parts within f64 range
                let shift = n.bits().max(d.bits()).saturating_sub(900);
                let n2: BigInt = n >> shift;
                let d2: BigInt = d >> shift;
                match (n2.to_f64(), d2.to_f64()) {
                    (Some(a), Some(b)) if b != 0.0 => a / b,
                    _ => 0.0,
                }
            }
        }
    }

    pub fn midpoint(a: &Rational, b: &Rational) -> Rational {
        (a + b) * Rational::new(1, 2)
    }

    fn add_impl(&self, other: &Rational) -> Rational {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &other.0) {
            if let Some(r) = add_small(*a, *b, *c, *d) {
                return r;
            }
        }
        let (a, b) = self.big_parts();
        let (c, d) = other.big_parts();
        Self::from_bigints(a * &d + c * &b, b * d)
    }

    fn mul_impl(&self, other: &Rational) -> Rational {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &other.0) {
            if let Some(r) = mul_small(*a, *b, *c, *d) {
                return r;
            }
        }
        let (a, b) = self.big_parts();
        let (c, d) = other.big_parts();
        Self::from_bigints(a * c, b * d)
    }
}

fn add_small(a: i128, b: i128, c: i128, d: i128) -> Option<Rational> {
    if b == d {
        let n = a.checked_add(c)?;
        return Some(Rational::small_or_big(n, b));
    }
    let g = gcd_i128(b, d);
    let (b1, d1) = (b / g, d / g);
    let n = a.checked_mul(d1)?.checked_add(c.checked_mul(b1)?)?;
    let den = b.checked_mul(d1)?;
    Some(Rational::small_or_big(n, den))
}

fn mul_small(a: i128, b: i128, c: i128, d: i128) -> Option<Rational> {
    if a == 0 || c == 0 {
        return Some(Rational::zero());
    }
    let g1 = gcd_i128(a, d);
    let g2 = gcd_i128(c, b);
    let n = (a / g1).checked_mul(c / g2)?;
    let den = (b / g2).checked_mul(d / g1)?;
    if n == i128::MIN {
        return None;
    }
    Some(Rational(Repr::Small(n, den)))
}

impl Default for Rational {
    fn default() -> Self {
        Rational::zero()
    }
}

impl PartialEq for Rational {
    fn eq(&self, other: &Self) -> bool {
        match (&self.0, &other.0) {
            (Repr::Small(a, b), Repr::Small(c, d)) => a == c && b == d,
            (Repr::Big(x), Repr::Big(y)) => x == y,
            _ => false,
        }
    }
}

impl Eq for Rational {}

impl Hash for Rational {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match &self.0 {
            Repr::Small(n, d) => {
                0u8.hash(state);
                n.hash(state);
                d.hash(state);
            }
            Repr::Big(b) => {
                1u8.hash(state);
                b.0.hash(state);
                b.1.hash(state);
            }
        }
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        if let (Repr::Small(a, b), Repr::Small(c, d)) = (&self.0, &other.0) {
            if b == d {
                return a.cmp(c);
            }
            if let (Some(l), Some(r)) = (a.checked_mul(*d), c.checked_mul(*b)) {
                return l.cmp(&r);
            }
        }
        let (a, b) = self.big_parts();
        let (c, d) = other.big_parts();
        (a * d).cmp(&(c * b))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $body:expr) => {
        impl<'a, 'b> $tr<&'b Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: &'b Rational) -> Rational {
                let f: fn(&Rational, &Rational) -> Rational = $body;
                f(self, rhs)
            }
        }
        impl $tr<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
        impl<'a> $tr<&'a Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &'a Rational) -> Rational {
                (&self).$method(rhs)
            }
        }
        impl<'a> $tr<Rational> for &'a Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$method(&rhs)
            }
        }
    };
}

forward_binop!(Add, add, |a, b| a.add_impl(b));
forward_binop!(Sub, sub, |a, b| a.add_impl(&-b));
forward_binop!(Mul, mul, |a, b| a.mul_impl(b));
forward_binop!(Div, div, |a, b| a.mul_impl(&b.recip()));

impl Neg for &Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        match &self.0 {
            Repr::Small(n, d) => Rational(Repr::Small(-n, *d)),
            Repr::Big(b) => Rational::demote(-b.0.clone(), b.1.clone()),
        }
    }
}

impl Neg for Rational {
    type Output = Rational;
    fn neg(self) -> Rational {
        -&self
    }
}

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_int(v)
    }
}

impl From<i32> for Rational {
    fn from(v: i32) -> Self {
        Rational::from_int(v as i64)
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::demote(v, BigInt::one())
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.0 {
            Repr::Small(n, 1) => write!(f, "{n}"),
            Repr::Small(n, d) => write!(f, "{n}/{d}"),
            Repr::Big(b) if b.1.is_one() => write!(f, "{}", b.0),
            Repr::Big(b) => write!(f, "{}/{}", b.0, b.1),
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl serde::Serialize for Rational {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> serde::Deserialize<'de> for Rational {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl FromStr for Rational {
    type Err = ParseRationalError;

    /// Accepts integers, decimals (`-12.375`) and fractions (`3/8`, `-7/2`).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        let err = || ParseRationalError(s.to_string());
        if s.is_empty() {
            return Err(err());
        }
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = parse_int(n).ok_or_else(err)?;
            let d: BigInt = parse_int(d).ok_or_else(err)?;
            if d.is_zero() {
                return Err(err());
            }
            return Ok(Rational::from_bigints(n, d));
        }
        let (neg, body) = match s.as_bytes()[0] {
            b'-' => (true, &s[1..]),
            b'+' => (false, &s[1..]),
            _ => (false, s),
        };
        let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(err());
        }
        let digits_ok = |t: &str| t.bytes().all(|c| c.is_ascii_digit());
        if !digits_ok(int_part) || !digits_ok(frac_part) {
            return Err(err());
        }
        let all = format!("{int_part}{frac_part}");
        let mut num: BigInt = all.parse().map_err(|_| err())?;
        if neg {
            num = -num;
        }
        let den = num_traits::pow(BigInt::from(10u32), frac_part.len());
        Ok(Rational::from_bigints(num, den))
    }
}

fn parse_int(t: &str) -> Option<BigInt> {
    let t = t.trim();
    let body = t.strip_prefix(['-', '+']).unwrap_or(t);
    if body.is_empty() || !body.bytes().all(|c| c.is_ascii_digit()) {
        return None;
    }
    t.parse().ok()
}
