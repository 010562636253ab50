//! Arbitrary-precision integers with an inline `i64` fast path.
//!
//! Almost every entry that shows up in a boundary matrix or in the transforms
//! produced by reduction fits in a machine word, so [`Int`] keeps small values
//! unboxed and only promotes to a [`BigInt`] when an operation overflows.

use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

#[derive(Clone)]
pub enum Int {
    Small(i64),
    /// Invariant: never holds a value that fits in an `i64`.
    Big(BigInt),
}

impl Int {
    pub const ZERO: Int = Int::Small(0);
    pub const ONE: Int = Int::Small(1);

    fn from_big(b: BigInt) -> Int {
        match b.to_i64() {
            Some(v) => Int::Small(v),
            None => Int::Big(b),
        }
    }

    pub fn to_big(&self) -> BigInt {
        match self {
            Int::Small(v) => BigInt::from(*v),
            Int::Big(b) => b.clone(),
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
        match self {
            Int::Small(v) => match v.checked_abs() {
                Some(a) => Int::Small(a),
                None => Int::Big(BigInt::from(*v).abs()),
            },
            Int::Big(b) => Int::Big(b.abs()),
        }
    }

    /// Magnitude used for pivot selection; saturates for big values.
    pub fn size_hint(&self) -> u64 {
        match self {
            Int::Small(v) => v.unsigned_abs(),
            Int::Big(_) => u64::MAX,
        }
    }

    /// Division with a remainder of least absolute value (`|r| <= |b|/2`).
    pub fn div_rem_nearest(&self, b: &Int) -> (Int, Int) {
        assert!(!b.is_zero(), "division by zero");
        if let (Int::Small(x), Int::Small(y)) = (self, b) {
            if let (Some(q), Some(r)) = (x.checked_div_euclid(*y), x.checked_rem_euclid(*y)) {
                // r in [0, |y|); shift toward zero when past the midpoint
                let ay = y.unsigned_abs();
                if (r as u64) > ay / 2 {
                    let q2 = if *y > 0 { q.checked_add(1) } else { q.checked_sub(1) };
                    if let Some(q2) = q2 {
                        return (Int::Small(q2), Int::Small(r - ay as i64));
                    }
                } else {
                    return (Int::Small(q), Int::Small(r));
                }
            }
        }
        let (x, y) = (self.to_big(), b.to_big());
        let (mut q, mut r) = x.div_mod_floor(&y);
        let ay = y.abs();
        if (&r + &r).abs() > ay {
            if y.is_positive() {
                q += 1;
                r -= &y;
            } else {
                q -= 1;
                r += &y;
            }
        }
        (Int::from_big(q), Int::from_big(r))
    }

    /// Exact quotient; the caller guarantees `b | self`.
    pub fn div_exact(&self, b: &Int) -> Int {
        if let (Int::Small(x), Int::Small(y)) = (self, b) {
            if let Some(q) = x.checked_div(*y) {
                return Int::Small(q);
            }
        }
        Int::from_big(self.to_big() / b.to_big())
    }

    pub fn divides(&self, other: &Int) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        if let (Int::Small(x), Int::Small(y)) = (self, other) {
            if let Some(r) = y.checked_rem(*x) {
                return r == 0;
            }
        }
        (other.to_big() % self.to_big()).is_zero()
    }

    pub fn gcd(&self, other: &Int) -> Int {
        if let (Int::Small(x), Int::Small(y)) = (self, other) {
            let g = (*x as i128).gcd(&(*y as i128));
            if let Ok(v) = i64::try_from(g) {
                return Int::Small(v);
            }
        }
        Int::from_big(self.to_big().gcd(&other.to_big()))
    }

    /// Returns `(g, x, y)` with `g = gcd >= 0` and `g = x*self + y*other`.
    pub fn gcd_ext(&self, other: &Int) -> (Int, Int, Int) {
        if let (Int::Small(a), Int::Small(b)) = (self, other) {
            let e = (*a as i128).extended_gcd(&(*b as i128));
            let (g, x, y) = if e.gcd < 0 { (-e.gcd, -e.x, -e.y) } else { (e.gcd, e.x, e.y) };
            if let (Ok(g), Ok(x), Ok(y)) = (i64::try_from(g), i64::try_from(x), i64::try_from(y)) {
                return (Int::Small(g), Int::Small(x), Int::Small(y));
            }
        }
        let e = self.to_big().extended_gcd(&other.to_big());
        let (g, x, y) = if e.gcd.is_negative() { (-e.gcd, -e.x, -e.y) } else { (e.gcd, e.x, e.y) };
        (Int::from_big(g), Int::from_big(x), Int::from_big(y))
    }

    pub fn rem_euclid_u64(&self, p: u64) -> u64 {
        match self {
            Int::Small(v) => (*v as i128).rem_euclid(p as i128) as u64,
            Int::Big(b) => b.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits"),
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
            Err(_) => Int::Big(BigInt::from(v)),
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

impl PartialEq for Int {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a == b,
            (Int::Big(a), Int::Big(b)) => a == b,
            _ => false,
        }
    }
}

impl Eq for Int {}

impl Hash for Int {
    fn hash<H: Hasher>(&self, state: &mut H) {
        match self {
            Int::Small(v) => {
                0u8.hash(state);
                v.hash(state)
            }
            Int::Big(b) => {
                1u8.hash(state);
                b.hash(state)
            }
        }
    }
}

impl PartialOrd for Int {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Int {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Int::Small(a), Int::Small(b)) => a.cmp(b),
            _ => self.to_big().cmp(&other.to_big()),
        }
    }
}

macro_rules! arith {
    ($tr:ident, $m:ident, $checked:ident, $op:tt) => {
        impl<'a> $tr<&'a Int> for &'a Int {
            type Output = Int;
            fn $m(self, rhs: &'a Int) -> Int {
                if let (Int::Small(a), Int::Small(b)) = (self, rhs) {
                    if let Some(v) = a.$checked(*b) {
                        return Int::Small(v);
                    }
                }
                Int::from_big(self.to_big() $op rhs.to_big())
            }
        }
        impl $tr<Int> for Int {
            type Output = Int;
            fn $m(self, rhs: Int) -> Int {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a Int> for Int {
            type Output = Int;
            fn $m(self, rhs: &'a Int) -> Int {
                (&self).$m(rhs)
            }
        }
    };
}

arith!(Add, add, checked_add, +);
arith!(Sub, sub, checked_sub, -);
arith!(Mul, mul, checked_mul, *);

impl Neg for &Int {
    type Output = Int;
    fn neg(self) -> Int {
        match self {
            Int::Small(v) => match v.checked_neg() {
                Some(n) => Int::Small(n),
                None => Int::Big(-BigInt::from(*v)),
            },
            Int::Big(b) => Int::from_big(-b),
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

// Word-sized values serialize as JSON numbers, anything larger as a decimal string.
impl Serialize for Int {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            Int::Small(v) => s.serialize_i64(*v),
            Int::Big(b) => s.serialize_str(&b.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Int {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(i64),
            Str(String),
        }
        match Repr::deserialize(d)? {
            Repr::Num(v) => Ok(Int::Small(v)),
            Repr::Str(s) => s
                .parse::<BigInt>()
                .map(Int::from_big)
                .map_err(serde::de::Error::custom),
        }
    }
}
