use std::fmt::Debug;

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::int::Int;

/// A Euclidean domain together with the operations the reduction routines need.
///
/// Rings are values rather than types so that `Z/p` can carry its modulus.
pub trait Ring: Clone + Debug + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn from_int(&self, v: &Int) -> Self::Elem;
    fn to_int(&self, a: &Self::Elem) -> Int;

    /// Euclidean size; smaller is a better pivot.
    fn size(&self, a: &Self::Elem) -> u64;
    /// `a = q*b + r` with `size(r) < size(b)`.
    fn div_rem(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem);
    /// `(g, x, y)` with `g = x*a + y*b` a normalized gcd.
    fn gcdext(&self, a: &Self::Elem, b: &Self::Elem) -> (Self::Elem, Self::Elem, Self::Elem);
    /// A unit `u` and its inverse with `u*a` normalized.
    fn normal_unit(&self, a: &Self::Elem) -> (Self::Elem, Self::Elem);
    fn is_field(&self) -> bool;

    fn is_unit(&self, a: &Self::Elem) -> bool {
        !self.is_zero(a) && self.size(a) == self.size(&self.one())
    }

    fn divides(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        if self.is_zero(a) {
            return self.is_zero(b);
        }
        self.is_zero(&self.div_rem(b, a).1)
    }

    /// Quotient for an exact division.
    fn div_exact(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.div_rem(a, b).0
    }

    /// Class of `a` in the residue ring modulo `d` (normalized representative).
    fn reduce_mod(&self, a: &Self::Elem, d: &Self::Elem) -> Self::Elem {
        let _ = d;
        a.clone()
    }

    /// `a + c*b`
    fn axpy(&self, a: &Self::Elem, c: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.mul(c, b))
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = Int;

    fn zero(&self) -> Int {
        Int::ZERO
    }
    fn one(&self) -> Int {
        Int::ONE
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
    fn from_int(&self, v: &Int) -> Int {
        v.clone()
    }
    fn to_int(&self, a: &Int) -> Int {
        a.clone()
    }
    fn size(&self, a: &Int) -> u64 {
        a.size_hint()
    }
    fn div_rem(&self, a: &Int, b: &Int) -> (Int, Int) {
        a.div_rem_nearest(b)
    }
    fn gcdext(&self, a: &Int, b: &Int) -> (Int, Int, Int) {
        a.gcd_ext(b)
    }
    fn normal_unit(&self, a: &Int) -> (Int, Int) {
        if a.is_negative() {
            (Int::from(-1i64), Int::from(-1i64))
        } else {
            (Int::ONE, Int::ONE)
        }
    }
    fn is_field(&self) -> bool {
        false
    }
    fn is_unit(&self, a: &Int) -> bool {
        a.is_unit()
    }
    fn divides(&self, a: &Int, b: &Int) -> bool {
        a.divides(b)
    }
    fn div_exact(&self, a: &Int, b: &Int) -> Int {
        a.div_exact(b)
    }
    fn reduce_mod(&self, a: &Int, d: &Int) -> Int {
        if d.is_zero() {
            return a.clone();
        }
        let r = a.div_rem_nearest(d).1;
        if r.is_negative() {
            &r + &d.abs()
        } else {
            r
        }
    }
}

/// The prime field `Z/p`; elements are kept in `0..p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    p: u64,
}

impl PrimeField {
    /// Caller guarantees `p` is prime; see [`is_prime`].
    pub fn new(p: u64) -> Self {
        assert!(p >= 2, "modulus must be at least 2");
        PrimeField { p }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    fn mulmod(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a != 0, "inverse of zero");
        // Fermat
        let mut result = 1u64;
        let mut base = a % self.p;
        let mut e = self.p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mulmod(result, base);
            }
            base = self.mulmod(base, base);
            e >>= 1;
        }
        result
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

impl Ring for PrimeField {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }
    fn one(&self) -> u64 {
        1 % self.p
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
        self.mulmod(*a, *b)
    }
    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.p - a
        }
    }
    fn from_int(&self, v: &Int) -> u64 {
        v.rem_euclid_u64(self.p)
    }
    fn to_int(&self, a: &u64) -> Int {
        Int::from(*a)
    }
    fn size(&self, a: &u64) -> u64 {
        u64::from(*a != 0)
    }
    fn div_rem(&self, a: &u64, b: &u64) -> (u64, u64) {
        (self.mulmod(*a, self.inv(*b)), 0)
    }
    fn gcdext(&self, a: &u64, b: &u64) -> (u64, u64, u64) {
        if *a != 0 {
            (1, self.inv(*a), 0)
        } else if *b != 0 {
            (1, 0, self.inv(*b))
        } else {
            (0, 0, 0)
        }
    }
    fn normal_unit(&self, a: &u64) -> (u64, u64) {
        if *a == 0 {
            (1, 1)
        } else {
            (self.inv(*a), *a)
        }
    }
    fn is_field(&self) -> bool {
        true
    }
    fn reduce_mod(&self, a: &u64, d: &u64) -> u64 {
        if *d == 0 {
            *a
        } else {
            0
        }
    }
}

/// The rational numbers, used only for solving linear systems over `Q`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn from_int(&self, v: &Int) -> BigRational {
        BigRational::from_integer(v.to_big())
    }
    /// Numerator of the value; callers only convert known integers.
    fn to_int(&self, a: &BigRational) -> Int {
        Int::from(a.to_integer())
    }
    fn size(&self, a: &BigRational) -> u64 {
        u64::from(!a.is_zero())
    }
    fn div_rem(&self, a: &BigRational, b: &BigRational) -> (BigRational, BigRational) {
        (a / b, BigRational::zero())
    }
    fn gcdext(&self, a: &BigRational, b: &BigRational) -> (BigRational, BigRational, BigRational) {
        if !a.is_zero() {
            (BigRational::one(), a.recip(), BigRational::zero())
        } else if !b.is_zero() {
            (BigRational::one(), BigRational::zero(), b.recip())
        } else {
            (BigRational::zero(), BigRational::zero(), BigRational::zero())
        }
    }
    fn normal_unit(&self, a: &BigRational) -> (BigRational, BigRational) {
        if a.is_zero() {
            (BigRational::one(), BigRational::one())
        } else {
            (a.recip(), a.clone())
        }
    }
    fn is_field(&self) -> bool {
        true
    }
    fn reduce_mod(&self, a: &BigRational, d: &BigRational) -> BigRational {
        if d.is_zero() {
            a.clone()
        } else {
            BigRational::zero()
        }
    }
}
