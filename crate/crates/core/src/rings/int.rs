use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng as RandRng;

use crate::error::Result;
use crate::ring::Ring;

/// The integers, with arbitrary precision.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct Integers;

impl Ring for Integers {
    type Elem = BigInt;

    fn descriptor(&self) -> String {
        "int".into()
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn is_finite(&self) -> bool {
        false
    }

    fn zero(&self) -> BigInt {
        BigInt::zero()
    }

    fn one(&self) -> BigInt {
        BigInt::one()
    }

    fn from_i64(&self, value: i64) -> BigInt {
        BigInt::from(value)
    }

    fn add(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a + b
    }

    fn neg(&self, a: &BigInt) -> BigInt {
        -a
    }

    fn sub(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a - b
    }

    fn mul(&self, a: &BigInt, b: &BigInt) -> BigInt {
        a * b
    }

    fn validate(&self, _: &BigInt) -> Result<()> {
        Ok(())
    }

    fn try_invert(&self, x: &BigInt) -> Result<Option<BigInt>> {
        Ok(if x.abs().is_one() {
            Some(x.clone())
        } else {
            None
        })
    }

    fn random_element<G: RandRng + ?Sized>(&self, rng: &mut G) -> BigInt {
        // Mostly small values, occasionally a wide one to exercise carries.
        if rng.gen_ratio(1, 10) {
            BigInt::from(rng.gen::<i64>()) * BigInt::from(rng.gen::<i64>())
        } else {
            BigInt::from(rng.gen_range(-20i64..=20))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn only_signs_are_units() {
        let z = Integers;
        assert_eq!(
            z.try_invert(&BigInt::from(1)).unwrap(),
            Some(BigInt::from(1))
        );
        assert_eq!(
            z.try_invert(&BigInt::from(-1)).unwrap(),
            Some(BigInt::from(-1))
        );
        assert_eq!(z.try_invert(&BigInt::from(2)).unwrap(), None);
        assert_eq!(z.try_invert(&BigInt::from(0)).unwrap(), None);
    }
}
