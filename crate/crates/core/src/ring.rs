//! The ring-handle abstraction.
//!
//! A ring is a value (`&self`) that knows how to combine elements of its
//! associated [`Ring::Elem`] type. Elements carry no reference back to the
//! ring, so matrices and polynomials are plain data and every operation is
//! a pure function of the handle and its arguments.

use std::collections::HashMap;
use std::fmt::Debug;
use std::hash::Hash;

use rand::Rng as RandRng;

use crate::error::{Error, Result};

pub trait Ring {
    /// Structural equality on `Elem` must agree with [`Ring::elem_eq`] for every
    /// ring whose representation is canonical. Fractions are the exception:
    /// they compare by cross-multiplication.
    type Elem: Clone + Debug + Eq + Hash + Send + Sync;

    /// The ring-spec string this handle was built from.
    fn descriptor(&self) -> String;

    fn is_commutative(&self) -> bool;

    fn is_finite(&self) -> bool;

    fn zero(&self) -> Self::Elem;

    fn one(&self) -> Self::Elem;

    #[allow(clippy::wrong_self_convention)]
    fn from_i64(&self, value: i64) -> Self::Elem;

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn neg(&self, a: &Self::Elem) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn elem_eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a == b
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        self.elem_eq(a, &self.zero())
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        self.elem_eq(a, &self.one())
    }

    /// Checks that `a` is a well-formed element of this ring.
    fn validate(&self, a: &Self::Elem) -> Result<()>;

    /// Invertibility oracle. `Ok(Some(y))` guarantees `x·y = y·x = 1`.
    /// `Ok(None)` means the oracle proved `x` is not a unit.
    fn try_invert(&self, x: &Self::Elem) -> Result<Option<Self::Elem>>;

    /// Every element, in a fixed deterministic order, if the ring is finite.
    fn elements(&self) -> Option<Vec<Self::Elem>> {
        None
    }

    fn random_element<G: RandRng + ?Sized>(&self, rng: &mut G) -> Self::Elem;

    fn commutes(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.is_commutative() || self.elem_eq(&self.mul(a, b), &self.mul(b, a))
    }

    fn pow(&self, a: &Self::Elem, mut exp: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    /// `sign · a` for a sign in {+1, -1}.
    fn signed(&self, sign: i8, a: &Self::Elem) -> Self::Elem {
        if sign < 0 {
            self.neg(a)
        } else {
            a.clone()
        }
    }

    fn sum<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.zero(), |acc, x| self.add(&acc, x))
    }

    /// Left-to-right product `x₁·x₂⋯x_k`; the empty product is 1.
    fn product<'a, I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = &'a Self::Elem>,
        Self::Elem: 'a,
    {
        items
            .into_iter()
            .fold(self.one(), |acc, x| self.mul(&acc, x))
    }
}

/// Validates `x` and runs the ring's invertibility oracle.
pub fn try_invert<R: Ring>(ring: &R, x: &R::Elem) -> Result<Option<R::Elem>> {
    ring.validate(x)?;
    ring.try_invert(x)
}

/// Inverts a unit of a finite ring by walking its powers.
///
/// The powers `x, x², …` of an element of a finite ring are eventually
/// periodic. If some power equals 1 at exponent `p` then `x^{p-1}` is a
/// two-sided inverse; if the sequence cycles without hitting 1, `x` is not a
/// unit.
pub fn finite_unit_inverse_by_powers<R: Ring>(ring: &R, x: &R::Elem) -> Result<Option<R::Elem>> {
    if !ring.is_finite() {
        return Err(Error::NotFinite(ring.descriptor()));
    }
    ring.validate(x)?;
    let one = ring.one();
    let mut seen: HashMap<R::Elem, u64> = HashMap::new();
    let mut prev = one.clone();
    let mut power = x.clone();
    let mut exp = 1u64;
    loop {
        if ring.elem_eq(&power, &one) {
            // x^exp = 1, so x^(exp-1) is the inverse (x^0 = 1 when exp = 1).
            return Ok(Some(prev));
        }
        if seen.insert(power.clone(), exp).is_some() {
            return Ok(None);
        }
        prev = power;
        power = ring.mul(&prev, x);
        exp += 1;
    }
}
