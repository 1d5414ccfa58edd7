use num_integer::Integer;
use rand::Rng as RandRng;

use crate::error::{Error, Result};
use crate::ring::Ring;

/// Integers modulo `m`. Composite moduli are allowed; elements are stored
/// reduced into `[0, m)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Zmod {
    modulus: u64,
}

impl Zmod {
    pub fn new(modulus: u64) -> Result<Self> {
        if modulus == 0 {
            return Err(Error::RingSpec("zmod:0".into()));
        }
        Ok(Self { modulus })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Reduces any signed integer into `[0, m)`.
    pub fn reduce_i128(&self, v: i128) -> u64 {
        v.rem_euclid(self.modulus as i128) as u64
    }
}

impl Ring for Zmod {
    type Elem = u64;

    fn descriptor(&self) -> String {
        format!("zmod:{}", self.modulus)
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn is_finite(&self) -> bool {
        true
    }

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        1 % self.modulus
    }

    fn from_i64(&self, value: i64) -> u64 {
        self.reduce_i128(value as i128)
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 + *b as u128) % self.modulus as u128) as u64
    }

    fn neg(&self, a: &u64) -> u64 {
        if *a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ((*a as u128 * *b as u128) % self.modulus as u128) as u64
    }

    fn validate(&self, a: &u64) -> Result<()> {
        if *a >= self.modulus {
            return Err(Error::Parse(format!(
                "{a} is not reduced mod {}",
                self.modulus
            )));
        }
        Ok(())
    }

    fn try_invert(&self, x: &u64) -> Result<Option<u64>> {
        let m = self.modulus as i128;
        let eg = (*x as i128).extended_gcd(&m);
        if eg.gcd != 1 {
            // In the zero ring 0 = 1 is its own inverse.
            return Ok(if self.modulus == 1 { Some(0) } else { None });
        }
        Ok(Some(self.reduce_i128(eg.x)))
    }

    fn elements(&self) -> Option<Vec<u64>> {
        Some((0..self.modulus).collect())
    }

    fn random_element<G: RandRng + ?Sized>(&self, rng: &mut G) -> u64 {
        rng.gen_range(0..self.modulus)
    }
}
