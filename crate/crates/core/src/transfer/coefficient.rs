use std::fmt::Debug;

use num_bigint::BigUint;
use num_traits::{One, Zero};

/// Raised by fixed-width coefficients; the propagator then switches to
/// big integers and redoes the step.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Overflow;

/// Exact non-negative coefficient of a state vector.
pub trait Coefficient: Clone + Debug + Send + Sync + PartialEq + 'static {
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add_assign_checked(&mut self, other: &Self) -> Result<(), Overflow>;
    fn mul_small(&self, w: u64) -> Result<Self, Overflow>;
    fn to_biguint(&self) -> BigUint;
    fn to_u128(&self) -> Option<u128>;
}

impl Coefficient for u128 {
    fn one() -> Self {
        1
    }

    fn is_zero(&self) -> bool {
        *self == 0
    }

    fn add_assign_checked(&mut self, other: &Self) -> Result<(), Overflow> {
        *self = self.checked_add(*other).ok_or(Overflow)?;
        Ok(())
    }

    fn mul_small(&self, w: u64) -> Result<Self, Overflow> {
        self.checked_mul(u128::from(w)).ok_or(Overflow)
    }

    fn to_biguint(&self) -> BigUint {
        BigUint::from(*self)
    }

    fn to_u128(&self) -> Option<u128> {
        Some(*self)
    }
}

impl Coefficient for BigUint {
    fn one() -> Self {
        One::one()
    }

    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }

    fn add_assign_checked(&mut self, other: &Self) -> Result<(), Overflow> {
        *self += other;
        Ok(())
    }

    fn mul_small(&self, w: u64) -> Result<Self, Overflow> {
        Ok(self * w)
    }

    fn to_biguint(&self) -> BigUint {
        self.clone()
    }

    fn to_u128(&self) -> Option<u128> {
        u128::try_from(self).ok()
    }
}

/// Accumulates `sum weight * c^2` exactly, staying in `u128` while it can.
#[derive(Debug, Default)]
pub(crate) struct SquareSum {
    small: u128,
    big: BigUint,
}

impl SquareSum {
    pub fn add_square<C: Coefficient>(&mut self, c: &C, weight: u64) {
        if weight == 0 {
            return;
        }
        let term = match c.to_u128() {
            Some(v) if v <= u128::from(u64::MAX) => (v * v).checked_mul(u128::from(weight)),
            _ => None,
        };
        match term.and_then(|t| self.small.checked_add(t)) {
            Some(s) => self.small = s,
            None => {
                let big = c.to_biguint();
                self.big += &big * &big * weight;
            }
        }
    }

    pub fn finish(self) -> BigUint {
        self.big + self.small
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn u128_overflow_is_reported() {
        let mut a = u128::MAX;
        assert_eq!(a.add_assign_checked(&1), Err(Overflow));
        assert_eq!(u128::MAX.mul_small(2), Err(Overflow));
        assert_eq!(7u128.mul_small(3), Ok(21));
    }

    #[test]
    fn square_sum_spills_into_big_integers() {
        let mut acc = SquareSum::default();
        let c = u128::from(u64::MAX);
        for _ in 0..5 {
            acc.add_square(&c, 3);
        }
        acc.add_square(&u128::MAX, 1);
        let expected =
            BigUint::from(c) * BigUint::from(c) * 15u32 + BigUint::from(u128::MAX) * BigUint::from(u128::MAX);
        assert_eq!(acc.finish(), expected);
    }
}
