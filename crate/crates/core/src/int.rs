//! Arbitrary-precision integers with an inline 64-bit fast path.
//!
//! Almost every entry produced by the pipeline is a small integer, so [`Int`]
//! stores values that fit in an `i64` inline and only promotes to a heap
//! allocated [`BigInt`] when an operation overflows. Values are always kept
//! in canonical form: `Big` never holds something representable as `Small`.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer as _;
use num_traits::{One, Signed, ToPrimitive, Zero};

#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Int {
    Small(i64),
    Big(Box<BigInt>),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(Box::new(b)),
        }
    }

    pub fn to_bigint(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => (**b).clone(),
        }
    }

    pub fn to_i64(&self) -> Option<i64> {
        match self {
            Int::Small(v) => Some(*v),
            Int::Big(_) => None,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Int::Small(0))
    }

    pub fn is_one(&self) -> bool {
        matches!(self, Int::Small(1))
    }

    /// True for `1` and `-1`, the units of the integers.
    pub fn is_unit(&self) -> bool {
        matches!(self, Int::Small(1) | Int::Small(-1))
    }

    pub fn is_negative(&self) -> bool {
        match self {
            Int::Small(v) => *v < 0,
            Int::Big(b) => b.is_negative(),
        }
    }

    pub fn abs(&self) -> Int {
        if self.is_negative() {
            -self
        } else {
            self.clone()
        }
    }

    /// Truncated division with remainder: `self = q * other + r`, `|r| < |other|`,
    /// and `r` has the sign of `self`.
    pub fn div_rem(&self, other: &Int) -> (Int, Int) {
        assert!(!other.is_zero(), "division by zero");
        if let (Int::Small(a), Int::Small(b)) = (self, other) {
            if let (Some(q), Some(r)) = (a.checked_div(*b), a.checked_rem(*b)) {
                return (Int::Small(q), Int::Small(r));
            }
        }
        let (q, r) = self.to_bigint().div_rem(&other.to_bigint());
        (Int::from_big(q), Int::from_big(r))
    }

    /// Exact division; panics in debug builds when `other` does not divide `self`.
    pub fn div_exact(&self, other: &Int) -> Int {
        let (q, r) = self.div_rem(other);
        debug_assert!(r.is_zero(), "inexact division {self} / {other}");
        q
    }

    pub fn divides(&self, other: &Int) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_rem(self).1.is_zero()
    }

    /// Nonnegative greatest common divisor.
    pub fn gcd(&self, other: &Int) -> Int {
        if let (Int::Small(a), Int::Small(b)) = (self, other) {
            let (mut x, mut y) = (a.unsigned_abs(), b.unsigned_abs());
            while y != 0 {
                let t = x % y;
                x = y;
                y = t;
            }
            if let Ok(v) = i64::try_from(x) {
                return Int::Small(v);
            }
        }
        Int::from_big(self.to_bigint().gcd(&other.to_bigint()))
    }

    pub fn pow(&self, exp: u32) -> Int {
        let mut acc = Int::ONE;
        for _ in 0..exp {
            acc = &acc * self;
        }
        acc
    }

    /// Least nonnegative residue modulo a positive `m`.
    pub fn rem_euclid_u64(&self, m: u64) -> u64 {
        match self {
            Int::Small(v) => (*v as i128).rem_euclid(m as i128) as u64,
            Int::Big(b) => {
                let r = b.mod_floor(&BigInt::from(m));
                r.to_u64().expect("residue fits")
            }
        }
    }
}

impl Default for Int {
    fn default() -> Self {
        Int::ZERO
    }
}

impl From<i64> for Int {
    fn from(v: i64) -> Self {
        Int::Small(v)
    }
}

impl From<i32> for Int {
    fn from(v: i32) -> Self {
        Int::Small(v as i64)
    }
}

impl From<u64> for Int {
    fn from(v: u64) -> Self {
        match i64::try_from(v) {
            Ok(s) => Int::Small(s),
            Err(_) => Int::Big(Box::new(BigInt::from(v))),
        }
    }
}

impl From<usize> for Int {
    fn from(v: usize) -> Self {
        Int::from(v as u64)
    }
}

impl From<BigInt> for Int {
    fn from(b: BigInt) -> Self {
        Int::from_big(b)
    }
}

impl FromStr for Int {
    type Err = num_bigint::ParseBigIntError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().parse::<i64>() {
            Ok(v) => Ok(Int::Small(v)),
            Err(_) => Ok(Int::from_big(s.trim().parse::<BigInt>()?)),
        }
    }
}

impl fmt::Display for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Int::Small(v) => write!(f, "{v}"),
            Int::Big(b) => write!(f, "{b}"),
        }
    }
}

impl fmt::Debug for Int {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_bigint().cmp(&other.to_bigint()),
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

macro_rules! binop {
    ($tr:ident, $method:ident, $checked:ident, $big:tt) => {
        impl<'a> $tr<&'a Int> for &'a Int {
            type Output = Int;
            fn $method(self, rhs: &'a Int) -> Int {
                if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
                    if let Some(v) = a.$checked(*b) {
                        return Int::Small(v);
                    }
                }
                Int::from_big(self.to_bigint() $big rhs.to_bigint())
            }
        }

        impl $tr for Int {
            type Output = Int;
            fn $method(self, rhs: Int) -> Int {
                (&self).$method(&rhs)
            }
        }
    };
}

binop!(Add, add, checked_add, +);
binop!(Sub, sub, checked_sub, -);
binop!(Mul, mul, checked_mul, *);

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::from_big(-BigInt::from(*v)),
            },
            Int::Big(b) => Int::from_big(-(**b).clone()),
        }
    }
}

impl Neg for Int {
    type Output = Int;
    fn neg(self) -> Int {
        -&self
    }
}

impl Zero for Int {
    fn zero() -> Self {
        Int::ZERO
    }
    fn is_zero(&self) -> bool {
        Int::is_zero(self)
    }
}

impl One for Int {
    fn one() -> Self {
        Int::ONE
    }
}

impl serde::Serialize for Int {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Int::Small(v) => s.serialize_i64(*v),
            Int::Big(b) => s.serialize_str(&b.to_string()),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn overflow_promotes_and_demotes() {
        let big = Int::from(i64::MAX);
        let sum = &big + &Int::ONE;
        assert!(matches!(sum, Int::Big(_)));
        let back = &sum - &Int::ONE;
        assert_eq!(back, Int::Small(i64::MAX));
        let min = Int::from(i64::MIN);
        assert!(matches!(-&min, Int::Big(_)));
        assert_eq!((-&min).to_string(), "9223372036854775808");
    }

    #[test]
    fn gcd_and_division() {
        assert_eq!(Int::from(12).gcd(&Int::from(-18)), Int::from(6));
        assert_eq!(Int::ZERO.gcd(&Int::from(-5)), Int::from(5));
        let (q, r) = Int::from(-7).div_rem(&Int::from(2));
        assert_eq!((q, r), (Int::from(-3), Int::from(-1)));
        assert!(Int::from(3).divides(&Int::from(12)));
        assert!(!Int::ZERO.divides(&Int::ONE));
        assert_eq!(Int::from(-1).rem_euclid_u64(7), 6);
    }

    proptest! {
        #[test]
        fn matches_bigint(a in any::<i64>(), b in any::<i64>()) {
            let (x, y) = (Int::from(a), Int::from(b));
            let (bx, by) = (BigInt::from(a), BigInt::from(b));
            prop_assert_eq!((&x + &y).to_bigint(), &bx + &by);
            prop_assert_eq!((&x - &y).to_bigint(), &bx - &by);
            prop_assert_eq!((&x * &y).to_bigint(), &bx * &by);
            prop_assert_eq!(x.gcd(&y).to_bigint(), bx.gcd(&by));
            prop_assert_eq!(x.cmp(&y), bx.cmp(&by));
            if b != 0 {
                let (q, r) = x.div_rem(&y);
                prop_assert_eq!(&(&q * &y) + &r, x.clone());
                prop_assert!(r.abs() < y.abs());
            }
        }
    }
}
