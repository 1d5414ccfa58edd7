use rand::Rng as RandRng;

use crate::error::{Error, Result};
use crate::expansion;
use crate::matrix::{self, Matrix};
use crate::ring::{finite_unit_inverse_by_powers, Ring};

/// Enumeration of a finite matrix ring is refused past this many elements.
pub const MAX_ENUMERATED: u128 = 1 << 20;

/// The ring `Mat_k(base)` of `k × k` matrices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MatRing<R> {
    k: usize,
    base: R,
}

impl<R: Ring> MatRing<R> {
    pub fn new(k: usize, base: R) -> Result<Self> {
        if k == 0 {
            return Err(Error::RingSpec(format!("mat:0:{}", base.descriptor())));
        }
        Ok(Self { k, base })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn scalar(&self, s: &R::Elem) -> Matrix<R::Elem> {
        matrix::scalar(&self.base, self.k, s)
    }
}

impl<R: Ring> Ring for MatRing<R> {
    type Elem = Matrix<R::Elem>;

    fn descriptor(&self) -> String {
        format!("mat:{}:{}", self.k, self.base.descriptor())
    }

    fn is_commutative(&self) -> bool {
        self.k == 1 && self.base.is_commutative()
    }

    fn is_finite(&self) -> bool {
        self.base.is_finite()
    }

    fn zero(&self) -> Self::Elem {
        matrix::zero(&self.base, self.k)
    }

    fn one(&self) -> Self::Elem {
        matrix::identity(&self.base, self.k)
    }

    fn from_i64(&self, value: i64) -> Self::Elem {
        self.scalar(&self.base.from_i64(value))
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        matrix::add(&self.base, a, b).expect("operands of equal size")
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        matrix::neg(&self.base, a)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        matrix::mul(&self.base, a, b).expect("operands of equal size")
    }

    fn elem_eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        matrix::equal(&self.base, a, b)
    }

    fn validate(&self, a: &Self::Elem) -> Result<()> {
        if a.n() != self.k {
            return Err(Error::DimensionMismatch {
                expected: self.k,
                found: a.n(),
            });
        }
        matrix::validate(&self.base, a)
    }

    fn try_invert(&self, x: &Self::Elem) -> Result<Option<Self::Elem>> {
        self.validate(x)?;
        if self.base.is_commutative() {
            return expansion::invert_commutative(&self.base, x);
        }
        if self.is_finite() {
            return finite_unit_inverse_by_powers(self, x);
        }
        Err(Error::Unsupported(format!(
            "unit test in {} over a noncommutative infinite base",
            self.descriptor()
        )))
    }

    fn elements(&self) -> Option<Vec<Self::Elem>> {
        let base = self.base.elements()?;
        let cells = self.k * self.k;
        let count = (base.len() as u128).checked_pow(cells as u32)?;
        if count > MAX_ENUMERATED {
            return None;
        }
        // Row-major odometer, last entry fastest.
        let mut out = Vec::with_capacity(count as usize);
        let mut digits = vec![0usize; cells];
        loop {
            let entries = digits.iter().map(|&d| base[d].clone()).collect();
            out.push(Matrix::from_vec(self.k, entries).unwrap());
            let mut pos = cells;
            loop {
                if pos == 0 {
                    return Some(out);
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < base.len() {
                    break;
                }
                digits[pos] = 0;
            }
        }
    }

    fn random_element<G: RandRng + ?Sized>(&self, rng: &mut G) -> Self::Elem {
        matrix::random(&self.base, self.k, rng)
    }
}
