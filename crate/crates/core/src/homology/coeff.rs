use core::fmt::Debug;

use num_bigint::BigInt;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Signed, ToPrimitive};

/// Integer coefficients with overflow-reporting arithmetic. `i64` is the
/// fast path; `BigInt` never overflows.
pub trait Coeff:
    Clone + Debug + PartialEq + Eq + Ord + Signed + CheckedAdd + CheckedSub + CheckedMul + CheckedDiv
{
    fn from_i64(x: i64) -> Self;
    fn as_i64(&self) -> Option<i64>;
    fn to_big(&self) -> BigInt;
    fn from_big(b: &BigInt) -> Option<Self>;

    fn convert<U: Coeff>(&self) -> Option<U> {
        match self.as_i64() {
            Some(x) => Some(U::from_i64(x)),
            None => U::from_big(&self.to_big()),
        }
    }

    fn neg_checked(&self) -> Option<Self> {
        Self::zero().checked_sub(self)
    }

    fn abs_checked(&self) -> Option<Self> {
        if self.is_negative() {
            self.neg_checked()
        } else {
            Some(self.clone())
        }
    }

    fn is_unit(&self) -> bool {
        self.is_one() || self.as_i64() == Some(-1)
    }

    /// Remainder of truncated division.
    fn rem_checked(&self, d: &Self) -> Option<Self> {
        let q = self.checked_div(d)?;
        self.checked_sub(&q.checked_mul(d)?)
    }

    /// Representative in `[0, |d|)`.
    fn modulo(&self, d: &Self) -> Option<Self> {
        let r = self.rem_checked(d)?;
        if r.is_negative() {
            r.checked_add(&d.abs_checked()?)
        } else {
            Some(r)
        }
    }
}

impl Coeff for i64 {
    fn from_i64(x: i64) -> Self {
        x
    }
    fn as_i64(&self) -> Option<i64> {
        Some(*self)
    }
    fn to_big(&self) -> BigInt {
        BigInt::from(*self)
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        b.to_i64()
    }
}

impl Coeff for BigInt {
    fn from_i64(x: i64) -> Self {
        BigInt::from(x)
    }
    fn as_i64(&self) -> Option<i64> {
        self.to_i64()
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn from_big(b: &BigInt) -> Option<Self> {
        Some(b.clone())
    }
}
