//! Checked integer arithmetic shared by the fast (machine word) and slow
//! (arbitrary precision) code paths. Every operation returns `None` on
//! overflow so callers can rerun a computation with `BigInt`.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub(crate) trait Exact: Clone + PartialEq + Send + Sync + std::fmt::Debug {
    fn zero_value() -> Self;
    fn one_value() -> Self;
    fn from_i64(v: i64) -> Self;
    fn from_big(v: &BigInt) -> Option<Self>;
    fn to_big(&self) -> BigInt;
    fn is_zero_value(&self) -> bool;
    fn add(&self, o: &Self) -> Option<Self>;
    fn sub(&self, o: &Self) -> Option<Self>;
    fn mul(&self, o: &Self) -> Option<Self>;
    fn neg(&self) -> Option<Self>;
    /// Division that is known to leave no remainder.
    fn div_exact(&self, o: &Self) -> Option<Self>;

    fn is_one_value(&self) -> bool {
        *self == Self::one_value()
    }

    fn is_minus_one(&self) -> bool {
        Self::one_value().neg().is_some_and(|m| *self == m)
    }
}

macro_rules! machine_exact {
    ($t:ty) => {
        impl Exact for $t {
            fn zero_value() -> Self {
                0
            }
            fn one_value() -> Self {
                1
            }
            fn from_i64(v: i64) -> Self {
                v as $t
            }
            fn from_big(v: &BigInt) -> Option<Self> {
                num_traits::ToPrimitive::to_i128(v).and_then(|x| <$t>::try_from(x).ok())
            }
            fn to_big(&self) -> BigInt {
                BigInt::from(*self)
            }
            fn is_zero_value(&self) -> bool {
                *self == 0
            }
            fn add(&self, o: &Self) -> Option<Self> {
                self.checked_add(*o)
            }
            fn sub(&self, o: &Self) -> Option<Self> {
                self.checked_sub(*o)
            }
            fn mul(&self, o: &Self) -> Option<Self> {
                self.checked_mul(*o)
            }
            fn neg(&self) -> Option<Self> {
                self.checked_neg()
            }
            fn div_exact(&self, o: &Self) -> Option<Self> {
                debug_assert!(*o != 0 && self % o == 0);
                self.checked_div(*o)
            }
        }
    };
}

machine_exact!(i64);
machine_exact!(i128);

impl Exact for BigInt {
    fn zero_value() -> Self {
        Zero::zero()
    }
    fn one_value() -> Self {
        One::one()
    }
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn from_big(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }
    fn to_big(&self) -> BigInt {
        self.clone()
    }
    fn is_zero_value(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Option<Self> {
        Some(self + o)
    }
    fn sub(&self, o: &Self) -> Option<Self> {
        Some(self - o)
    }
    fn mul(&self, o: &Self) -> Option<Self> {
        Some(self * o)
    }
    fn neg(&self) -> Option<Self> {
        Some(-self)
    }
    fn div_exact(&self, o: &Self) -> Option<Self> {
        debug_assert!(Zero::is_zero(&(self % o)));
        Some(self / o)
    }
    fn is_minus_one(&self) -> bool {
        self.is_negative() && One::is_one(&self.abs())
    }
}

/// Converts a row-major `BigInt` table into `T`, failing if any entry does not fit.
pub(crate) fn narrow<T: Exact>(rows: &[Vec<BigInt>]) -> Option<Vec<Vec<T>>> {
    rows.iter()
        .map(|r| r.iter().map(T::from_big).collect::<Option<Vec<T>>>())
        .collect()
}
