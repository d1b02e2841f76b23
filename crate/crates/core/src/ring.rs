//! Coefficient rings: the integers, the rationals and prime fields.
//!
//! Rings are runtime objects (a prime field carries its modulus), so every
//! arithmetic operation goes through a ring value rather than operator
//! overloading on the element type.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::int::Int;

/// Which coefficient ring a computation runs over.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RingKind {
    Integers,
    Rationals,
    PrimeField(u64),
}

impl RingKind {
    pub fn is_field(&self) -> bool {
        !matches!(self, RingKind::Integers)
    }
}

impl fmt::Display for RingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RingKind::Integers => write!(f, "Z"),
            RingKind::Rationals => write!(f, "Q"),
            RingKind::PrimeField(p) => write!(f, "Fp:{p}"),
        }
    }
}

impl FromStr for RingKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self, Error> {
        match s.trim() {
            "Z" => Ok(RingKind::Integers),
            "Q" => Ok(RingKind::Rationals),
            other => {
                let p = other
                    .strip_prefix("Fp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| {
                        Error::Validation(format!("unknown ring `{other}` (expected Z, Q or Fp:<p>)"))
                    })?;
                if !is_prime(p) {
                    return Err(Error::Validation(format!("Fp modulus {p} is not prime")));
                }
                Ok(RingKind::PrimeField(p))
            }
        }
    }
}

pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d.saturating_mul(d) <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

pub trait Ring: Clone + fmt::Debug + Send + Sync + 'static {
    type Elem: Clone + PartialEq + fmt::Debug + Send + Sync + 'static;

    fn kind(&self) -> RingKind;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn from_int(&self, v: &Int) -> Self::Elem;
    /// `num / den` as a ring element, or `None` when `den` is not invertible.
    fn from_ratio(&self, num: &Int, den: &Int) -> Option<Self::Elem>;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    /// Euclidean size used for pivot selection; only compared, never interpreted.
    fn size(&self, a: &Self::Elem) -> Int;
    /// Euclidean division `a = q*b + r` with `size(r) < size(b)` or `r = 0`.
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);
    /// A unit `u` such that `u * a` is the canonical associate of `a`.
    fn canonical_unit(&self, a: &Self::Elem) -> Self::Elem;

    fn to_json(&self, a: &Self::Elem) -> serde_json::Value;
    fn format(&self, a: &Self::Elem) -> String;
    /// The element as an integer, when it is one.
    fn as_int(&self, a: &Self::Elem) -> Option<Int>;

    fn from_i64(&self, v: i64) -> Self::Elem {
        self.from_int(&Int::from(v))
    }
    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
    fn is_unit(&self, a: &Self::Elem) -> bool {
        self.inv(a).is_some()
    }
    fn is_field(&self) -> bool {
        self.kind().is_field()
    }
    /// `acc += a * b`
    fn add_mul_assign(&self, acc: &mut Self::Elem, a: &Self::Elem, b: &Self::Elem) {
        *acc = self.add(acc, &self.mul(a, b));
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = Int;

    fn kind(&self) -> RingKind {
        RingKind::Integers
    }
    fn zero(&self) -> Int {
        Int::ZERO
    }
    fn one(&self) -> Int {
        Int::ONE
    }
    fn from_int(&self, v: &Int) -> Int {
        v.clone()
    }
    fn from_ratio(&self, num: &Int, den: &Int) -> Option<Int> {
        if den.is_zero() || !den.divides(num) {
            return None;
        }
        Some(num.div_exact(den))
    }
    fn is_zero(&self, a: &Int) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Int, b: &Int) -> Int {
        a + b
    }
    fn sub(&self, a: &Int, b: &Int) -> Int {
        a - b
    }
    fn mul(&self, a: &Int, b: &Int) -> Int {
        a * b
    }
    fn neg(&self, a: &Int) -> Int {
        -a
    }
    fn inv(&self, a: &Int) -> Option<Int> {
        a.is_unit().then(|| a.clone())
    }
    fn is_unit(&self, a: &Int) -> bool {
        a.is_unit()
    }
    fn size(&self, a: &Int) -> Int {
        a.abs()
    }
    fn div_rem(&self, a: &Int, b: &Int) -> (Int, Int) {
        a.div_rem(b)
    }
    fn canonical_unit(&self, a: &Int) -> Int {
        if a.is_negative() {
            Int::from(-1)
        } else {
            Int::ONE
        }
    }
    fn to_json(&self, a: &Int) -> serde_json::Value {
        serde_json::to_value(a).expect("integer serializes")
    }
    fn format(&self, a: &Int) -> String {
        a.to_string()
    }
    fn as_int(&self, a: &Int) -> Option<Int> {
        Some(a.clone())
    }
}

/// A reduced fraction with positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rat {
    num: Int,
    den: Int,
}

impl Rat {
    pub fn new(num: Int, den: Int) -> Rat {
        assert!(!den.is_zero(), "zero denominator");
        if den.is_one() {
            return Rat { num, den };
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = (num.div_exact(&g), den.div_exact(&g));
        if d.is_negative() {
            n = -n;
            d = -d;
        }
        Rat { num: n, den: d }
    }

    pub fn integer(v: Int) -> Rat {
        Rat { num: v, den: Int::ONE }
    }

    pub fn numer(&self) -> &Int {
        &self.num
    }

    pub fn denom(&self) -> &Int {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = Rat;

    fn kind(&self) -> RingKind {
        RingKind::Rationals
    }
    fn zero(&self) -> Rat {
        Rat::integer(Int::ZERO)
    }
    fn one(&self) -> Rat {
        Rat::integer(Int::ONE)
    }
    fn from_int(&self, v: &Int) -> Rat {
        Rat::integer(v.clone())
    }
    fn from_ratio(&self, num: &Int, den: &Int) -> Option<Rat> {
        (!den.is_zero()).then(|| Rat::new(num.clone(), den.clone()))
    }
    fn is_zero(&self, a: &Rat) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rat, b: &Rat) -> Rat {
        if a.den.is_one() && b.den.is_one() {
            return Rat::integer(&a.num + &b.num);
        }
        Rat::new(&(&a.num * &b.den) + &(&b.num * &a.den), &a.den * &b.den)
    }
    fn sub(&self, a: &Rat, b: &Rat) -> Rat {
        self.add(a, &self.neg(b))
    }
    fn mul(&self, a: &Rat, b: &Rat) -> Rat {
        if a.den.is_one() && b.den.is_one() {
            return Rat::integer(&a.num * &b.num);
        }
        Rat::new(&a.num * &b.num, &a.den * &b.den)
    }
    fn neg(&self, a: &Rat) -> Rat {
        Rat { num: -&a.num, den: a.den.clone() }
    }
    fn inv(&self, a: &Rat) -> Option<Rat> {
        (!a.is_zero()).then(|| Rat::new(a.den.clone(), a.num.clone()))
    }
    fn is_unit(&self, a: &Rat) -> bool {
        !a.is_zero()
    }
    fn size(&self, a: &Rat) -> Int {
        // Prefer pivots of small height to keep fractions short.
        if a.is_zero() {
            Int::ZERO
        } else {
            &a.num.abs() + &a.den
        }
    }
    fn div_rem(&self, a: &Rat, b: &Rat) -> (Rat, Rat) {
        let q = self.mul(a, &self.inv(b).expect("nonzero divisor"));
        (q, self.zero())
    }
    fn canonical_unit(&self, a: &Rat) -> Rat {
        self.inv(a).unwrap_or_else(|| self.one())
    }
    fn to_json(&self, a: &Rat) -> serde_json::Value {
        if a.den.is_one() {
            serde_json::to_value(&a.num).expect("integer serializes")
        } else {
            serde_json::Value::String(format!("{}/{}", a.num, a.den))
        }
    }
    fn format(&self, a: &Rat) -> String {
        format!("{a:?}")
    }
    fn as_int(&self, a: &Rat) -> Option<Int> {
        a.den.is_one().then(|| a.num.clone())
    }
}

/// The prime field of order `p` with residues in `[0, p)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    pub fn new(p: u64) -> Result<PrimeField, Error> {
        if !is_prime(p) {
            return Err(Error::Validation(format!("Fp modulus {p} is not prime")));
        }
        Ok(PrimeField { p })
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn pow(&self, mut base: u64, mut exp: u64) -> u64 {
        let mut acc = 1 % self.p;
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }
}

impl Ring for PrimeField {
    type Elem = u64;

    fn kind(&self) -> RingKind {
        RingKind::PrimeField(self.p)
    }
    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1
    }
    fn from_int(&self, v: &Int) -> u64 {
        v.rem_euclid_u64(self.p)
    }
    fn from_ratio(&self, num: &Int, den: &Int) -> Option<u64> {
        let d = self.from_int(den);
        self.inv(&d).map(|di| self.mul(&self.from_int(num), &di))
    }
    fn is_zero(&self, a: &u64) -> bool {
        *a == 0
    }
    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.p as u128) as u64
    }
    fn sub(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + self.p as u128 - *b as u128) % self.p as u128) as u64
    }
    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.p as u128) as u64
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn inv(&self, a: &u64) -> Option<u64> {
        (*a != 0).then(|| self.pow(*a, self.p - 2))
    }
    fn is_unit(&self, a: &u64) -> bool {
        *a != 0
    }
    fn size(&self, a: &u64) -> Int {
        Int::from(u64::from(*a != 0))
    }
    fn div_rem(&self, a: &u64, b: &u64) -> (u64, u64) {
        (self.mul(a, &self.inv(b).expect("nonzero divisor")), 0)
    }
    fn canonical_unit(&self, a: &u64) -> u64 {
        self.inv(a).unwrap_or(1)
    }
    fn to_json(&self, a: &u64) -> serde_json::Value {
        serde_json::Value::from(*a)
    }
    fn format(&self, a: &u64) -> String {
        a.to_string()
    }
    fn as_int(&self, a: &u64) -> Option<Int> {
        Some(Int::from(*a))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ring_kind_parsing() {
        assert_eq!("Z".parse::<RingKind>().unwrap(), RingKind::Integers);
        assert_eq!("Q".parse::<RingKind>().unwrap(), RingKind::Rationals);
        assert_eq!("Fp:7".parse::<RingKind>().unwrap(), RingKind::PrimeField(7));
        assert!("Fp:8".parse::<RingKind>().is_err());
        assert!("R".parse::<RingKind>().is_err());
        assert_eq!(RingKind::PrimeField(2).to_string(), "Fp:2");
    }

    #[test]
    fn prime_field_arithmetic() {
        let f = PrimeField::new(7).unwrap();
        assert_eq!(f.mul(&3, &5), 1);
        assert_eq!(f.inv(&3), Some(5));
        assert_eq!(f.sub(&2, &5), 4);
        assert_eq!(f.from_int(&Int::from(-1)), 6);
        assert_eq!(f.from_ratio(&Int::ONE, &Int::from(2)), Some(4));
        assert_eq!(f.from_ratio(&Int::ONE, &Int::from(7)), None);
        assert!(PrimeField::new(9).is_err());
    }

    #[test]
    fn rationals_normalize() {
        let q = Rationals;
        let half = q.from_ratio(&Int::from(2), &Int::from(-4)).unwrap();
        assert_eq!(format!("{half:?}"), "-1/2");
        let s = q.add(&half, &half);
        assert_eq!(s, q.from_i64(-1));
        assert_eq!(q.mul(&half, &q.from_i64(-2)), q.one());
        assert_eq!(Integers.from_ratio(&Int::from(3), &Int::from(2)), None);
    }
}
