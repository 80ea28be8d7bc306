//! Integer scalars used by the exact linear algebra and the polycyclic engine.
//!
//! Everything numeric in this crate is generic over [`Int`]. The canonical
//! instantiation is [`num_bigint::BigInt`] (see [`crate::Integer`]), which has
//! no overflow. The machine-word instantiations exist for quick experiments on
//! small inputs; they panic on overflow in debug builds and are not used by the
//! command line tool.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::BigInt;
use num_integer::Integer as NumInteger;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

/// An exact, signed, Euclidean integer type.
pub trait Int:
    NumInteger
    + Signed
    + Clone
    + Hash
    + Debug
    + Display
    + FromPrimitive
    + ToPrimitive
    + Send
    + Sync
    + 'static
{
    fn from_big(v: &BigInt) -> Self;
    fn to_big(&self) -> BigInt;

    fn from_i64(v: i64) -> Self {
        <Self as FromPrimitive>::from_i64(v).expect("i64 fits every Int")
    }

    /// Extended gcd: returns `(g, x, y)` with `g = gcd(a, b) >= 0` and `a*x + b*y = g`.
    fn ext_gcd(a: &Self, b: &Self) -> (Self, Self, Self) {
        let (mut old_r, mut r) = (a.clone(), b.clone());
        let (mut old_s, mut s) = (Self::one(), Self::zero());
        let (mut old_t, mut t) = (Self::zero(), Self::one());
        while !r.is_zero() {
            let q = old_r.div_floor(&r);
            let nr = old_r - q.clone() * r.clone();
            old_r = std::mem::replace(&mut r, nr);
            let ns = old_s - q.clone() * s.clone();
            old_s = std::mem::replace(&mut s, ns);
            let nt = old_t - q * t.clone();
            old_t = std::mem::replace(&mut t, nt);
        }
        if old_r.is_negative() {
            (-old_r, -old_s, -old_t)
        } else {
            (old_r, old_s, old_t)
        }
    }
}

impl Int for BigInt {
    fn from_big(v: &BigInt) -> Self {
        v.clone()
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
}

impl Int for i64 {
    fn from_big(v: &BigInt) -> Self {
        v.to_i64().expect("exponent does not fit in i64")
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}

impl Int for i128 {
    fn from_big(v: &BigInt) -> Self {
        v.to_i128().expect("exponent does not fit in i128")
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
}
