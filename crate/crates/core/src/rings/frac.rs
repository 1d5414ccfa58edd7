//! Formal fractions `r·t⁻¹` over a commutative ring.
//!
//! The admissible denominators `T` are given by a predicate, not a set,
//! because `T` is infinite for `R = ℤ`. Fractions are never reduced: a
//! general commutative ring has no gcd, so equality is cross-multiplication,
//! `r₁t₁⁻¹ = r₂t₂⁻¹ ⇔ r₁t₂ = r₂t₁`. This is the localization equality
//! because every member of `T` is a unit of an ambient ring, hence not a
//! zero divisor.

use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng as RandRng;

use crate::error::{Error, Result};
use crate::ring::Ring;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fraction<E> {
    num: E,
    den: E,
}

impl<E> Fraction<E> {
    /// Pairs a numerator and denominator without consulting any predicate.
    pub fn new_unchecked(num: E, den: E) -> Self {
        Self { num, den }
    }

    pub fn num(&self) -> &E {
        &self.num
    }

    pub fn den(&self) -> &E {
        &self.den
    }

    pub fn into_parts(self) -> (E, E) {
        (self.num, self.den)
    }
}

impl<E: fmt::Display> fmt::Display for Fraction<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.num, self.den)
    }
}

type Accepts<E> = Arc<dyn Fn(&E) -> bool + Send + Sync>;
type Cofactor<E> = Arc<dyn Fn(&E) -> Option<E> + Send + Sync>;

/// Membership test for the denominator set `T`, paired with an inverse
/// witness.
///
/// `cofactor(r)` returns some `s` with `r·s ∈ T`, or `None` when no such `s`
/// exists. `r/1` is a unit of `RT⁻¹` exactly when a cofactor exists, and its
/// inverse is then `s/(r·s)`.
#[derive(Clone)]
pub struct DenomPredicate<E> {
    label: String,
    accepts: Accepts<E>,
    cofactor: Cofactor<E>,
}

impl<E> fmt::Debug for DenomPredicate<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_tuple("DenomPredicate").field(&self.label).finish()
    }
}

impl<E> DenomPredicate<E> {
    pub fn new(
        label: impl Into<String>,
        accepts: impl Fn(&E) -> bool + Send + Sync + 'static,
        cofactor: impl Fn(&E) -> Option<E> + Send + Sync + 'static,
    ) -> Self {
        Self {
            label: label.into(),
            accepts: Arc::new(accepts),
            cofactor: Arc::new(cofactor),
        }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn accepts(&self, t: &E) -> bool {
        (self.accepts)(t)
    }

    pub fn cofactor(&self, r: &E) -> Option<E> {
        (self.cofactor)(r)
    }

    /// `T` = units of the base ring itself.
    pub fn units_of<R>(ring: R) -> Self
    where
        R: Ring<Elem = E> + Send + Sync + 'static,
    {
        let label = format!("unitsof:{}", ring.descriptor());
        let ring = Arc::new(ring);
        let r2 = Arc::clone(&ring);
        Self::new(
            label,
            move |t| matches!(ring.try_invert(t), Ok(Some(_))),
            move |r| r2.try_invert(r).ok().flatten(),
        )
    }
}

impl DenomPredicate<BigInt> {
    /// `ℤ` inside `ℚ`: every nonzero integer is a denominator.
    pub fn nonzero() -> Self {
        Self::new(
            "nonzero",
            |t: &BigInt| !t.is_zero(),
            |r: &BigInt| (!r.is_zero()).then(BigInt::one),
        )
    }

    /// `ℤ` inside `ℤ[1/b]`: denominators are `±bᵏ`, `k ≥ 0`.
    ///
    /// The set is not saturated: for `b = 6`, `2 ∉ T` yet `2` becomes a unit,
    /// witnessed by the cofactor `3`.
    pub fn powers_of(b: BigInt) -> Self {
        let b = b.abs();
        let b2 = b.clone();
        Self::new(
            format!("powersof:{b}"),
            move |t: &BigInt| is_power_of(&t.abs(), &b),
            move |r: &BigInt| {
                if r.is_zero() {
                    return None;
                }
                // r divides some bᵏ iff stripping common factors with b leaves ±1.
                let mut rest = r.abs();
                loop {
                    let g = rest.gcd(&b2);
                    if g.is_one() {
                        break;
                    }
                    rest /= g;
                }
                if !rest.is_one() {
                    return None;
                }
                let mut power = BigInt::one();
                while !(&power % r).is_zero() {
                    power *= &b2;
                }
                Some(power / r)
            },
        )
    }
}

fn is_power_of(x: &BigInt, b: &BigInt) -> bool {
    if x.is_one() {
        return true;
    }
    if b.is_zero() || b.is_one() || x.is_zero() {
        return false;
    }
    let mut x = x.clone();
    while (&x % b).is_zero() {
        x /= b;
    }
    x.is_one()
}

/// The localization `RT⁻¹` of a commutative ring at a denominator predicate.
#[derive(Clone, Debug)]
pub struct Localization<R: Ring> {
    base: R,
    denoms: DenomPredicate<R::Elem>,
    sample_denoms: Vec<R::Elem>,
}

impl<R: Ring> Localization<R> {
    pub fn new(base: R, denoms: DenomPredicate<R::Elem>) -> Self {
        let candidates = base
            .elements()
            .filter(|e| e.len() <= 4096)
            .unwrap_or_else(|| (-12..=12).map(|v| base.from_i64(v)).collect());
        let mut sample_denoms: Vec<_> = candidates
            .into_iter()
            .filter(|t| denoms.accepts(t))
            .collect();
        if sample_denoms.is_empty() {
            sample_denoms.push(base.one());
        }
        Self {
            base,
            denoms,
            sample_denoms,
        }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn predicate(&self) -> &DenomPredicate<R::Elem> {
        &self.denoms
    }

    pub fn accepts(&self, t: &R::Elem) -> bool {
        self.denoms.accepts(t)
    }

    pub fn fraction(&self, num: R::Elem, den: R::Elem) -> Result<Fraction<R::Elem>> {
        if !self.accepts(&den) {
            return Err(Error::BadDenominator(self.denoms.label.clone()));
        }
        Ok(Fraction { num, den })
    }

    /// `r/1`.
    pub fn embed(&self, r: R::Elem) -> Fraction<R::Elem> {
        Fraction {
            num: r,
            den: self.base.one(),
        }
    }

    pub fn frac_eq(&self, u: &Fraction<R::Elem>, v: &Fraction<R::Elem>) -> bool {
        let b = &self.base;
        b.elem_eq(&b.mul(&u.num, &v.den), &b.mul(&v.num, &u.den))
    }
}

impl Localization<crate::rings::int::Integers> {
    /// Divides out the gcd and makes the denominator positive, if the result
    /// still has an admissible denominator. Otherwise returns `f` unchanged.
    pub fn canonicalize(&self, f: &Fraction<BigInt>) -> Fraction<BigInt> {
        let g = f.num.gcd(&f.den);
        if g.is_zero() {
            return f.clone();
        }
        let g = if f.den.is_negative() { -g } else { g };
        let reduced = Fraction {
            num: &f.num / &g,
            den: &f.den / &g,
        };
        if self.accepts(&reduced.den) {
            reduced
        } else {
            f.clone()
        }
    }
}

impl<R: Ring> Ring for Localization<R> {
    type Elem = Fraction<R::Elem>;

    fn descriptor(&self) -> String {
        format!("frac:{}", self.base.descriptor())
    }

    fn is_commutative(&self) -> bool {
        true
    }

    fn is_finite(&self) -> bool {
        false
    }

    fn zero(&self) -> Self::Elem {
        self.embed(self.base.zero())
    }

    fn one(&self) -> Self::Elem {
        self.embed(self.base.one())
    }

    fn from_i64(&self, value: i64) -> Self::Elem {
        self.embed(self.base.from_i64(value))
    }

    fn add(&self, u: &Self::Elem, v: &Self::Elem) -> Self::Elem {
        let b = &self.base;
        Fraction {
            num: b.add(&b.mul(&u.num, &v.den), &b.mul(&v.num, &u.den)),
            den: b.mul(&u.den, &v.den),
        }
    }

    fn neg(&self, u: &Self::Elem) -> Self::Elem {
        Fraction {
            num: self.base.neg(&u.num),
            den: u.den.clone(),
        }
    }

    fn mul(&self, u: &Self::Elem, v: &Self::Elem) -> Self::Elem {
        let b = &self.base;
        Fraction {
            num: b.mul(&u.num, &v.num),
            den: b.mul(&u.den, &v.den),
        }
    }

    fn elem_eq(&self, u: &Self::Elem, v: &Self::Elem) -> bool {
        self.frac_eq(u, v)
    }

    fn validate(&self, u: &Self::Elem) -> Result<()> {
        self.base.validate(&u.num)?;
        self.base.validate(&u.den)?;
        if !self.accepts(&u.den) {
            return Err(Error::BadDenominator(self.denoms.label.clone()));
        }
        Ok(())
    }

    // (r/t)⁻¹ = (t·s)/(r·s) where r·s ∈ T.
    fn try_invert(&self, u: &Self::Elem) -> Result<Option<Self::Elem>> {
        let b = &self.base;
        Ok(self.denoms.cofactor(&u.num).map(|s| Fraction {
            num: b.mul(&u.den, &s),
            den: b.mul(&u.num, &s),
        }))
    }

    fn random_element<G: RandRng + ?Sized>(&self, rng: &mut G) -> Self::Elem {
        let b = &self.base;
        let mut den = b.one();
        for _ in 0..rng.gen_range(1..=2) {
            den = b.mul(
                &den,
                &self.sample_denoms[rng.gen_range(0..self.sample_denoms.len())],
            );
        }
        Fraction {
            num: b.random_element(rng),
            den,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rings::int::Integers;
    use crate::rings::zmod::Zmod;

    fn q() -> Localization<Integers> {
        Localization::new(Integers, DenomPredicate::nonzero())
    }

    fn f(n: i64, d: i64) -> Fraction<BigInt> {
        Fraction::new_unchecked(BigInt::from(n), BigInt::from(d))
    }

    #[test]
    fn equality_by_cross_multiplication() {
        let q = q();
        assert!(q.frac_eq(&f(2, 4), &f(1, 2)));
        assert!(q.frac_eq(&f(0, 3), &f(0, 7)));
        assert!(!q.frac_eq(&f(1, 2), &f(1, 3)));
    }

    #[test]
    fn arithmetic_is_unreduced() {
        let q = q();
        assert_eq!(q.add(&f(1, 2), &f(1, 3)), f(5, 6));
        let p = q.mul(&f(1, 2), &f(2, 3));
        assert_eq!(p, f(2, 6));
        assert!(q.frac_eq(&p, &f(1, 3)));
        let u = f(3, 7);
        assert!(q.frac_eq(&q.add(&u, &q.neg(&u)), &f(0, 1)));
    }

    #[test]
    fn canonical_form_for_integers() {
        let q = q();
        assert_eq!(q.canonicalize(&f(4, -2)), f(-2, 1));
        assert_eq!(q.canonicalize(&f(0, -5)), f(0, 1));
        let six = Localization::new(Integers, DenomPredicate::powers_of(BigInt::from(6)));
        // 1/3 has no admissible denominator, so 2/6 stays as it is.
        assert_eq!(six.canonicalize(&f(2, 6)), f(2, 6));
    }

    #[test]
    fn powers_predicate_and_unsaturated_units() {
        let p = DenomPredicate::powers_of(BigInt::from(6));
        assert!(p.accepts(&BigInt::from(1)));
        assert!(p.accepts(&BigInt::from(-36)));
        assert!(!p.accepts(&BigInt::from(2)));
        assert!(!p.accepts(&BigInt::from(0)));
        assert_eq!(p.cofactor(&BigInt::from(2)), Some(BigInt::from(3)));
        assert_eq!(p.cofactor(&BigInt::from(-4)), Some(BigInt::from(-9)));
        assert_eq!(p.cofactor(&BigInt::from(5)), None);

        let loc = Localization::new(Integers, p);
        let two = loc.embed(BigInt::from(2));
        let inv = loc.try_invert(&two).unwrap().unwrap();
        assert!(loc.accepts(inv.den()));
        assert!(loc.is_one(&loc.mul(&two, &inv)));
        assert_eq!(loc.try_invert(&loc.embed(BigInt::from(10))).unwrap(), None);
    }

    #[test]
    fn fraction_constructor_checks_predicate() {
        let loc = Localization::new(Integers, DenomPredicate::powers_of(BigInt::from(3)));
        assert!(loc.fraction(BigInt::from(1), BigInt::from(9)).is_ok());
        assert!(matches!(
            loc.fraction(BigInt::from(1), BigInt::from(2)),
            Err(Error::BadDenominator(_))
        ));
    }

    #[test]
    fn units_of_base_over_zmod() {
        let loc = Localization::new(
            Zmod::new(12).unwrap(),
            DenomPredicate::units_of(Zmod::new(12).unwrap()),
        );
        assert!(loc.accepts(&5));
        assert!(!loc.accepts(&4));
        let x = Fraction::new_unchecked(7u64, 5u64);
        let y = loc.try_invert(&x).unwrap().unwrap();
        assert!(loc.is_one(&loc.mul(&x, &y)));
        assert_eq!(
            loc.try_invert(&Fraction::new_unchecked(2u64, 1u64))
                .unwrap(),
            None
        );
    }
}
