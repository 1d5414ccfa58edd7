use rand::Rng as RandRng;

use crate::error::Result;
use crate::matrix::Matrix;
use crate::ring::Ring;

/// `x + y·ε` with `ε² = 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Dual<E> {
    pub re: E,
    pub eps: E,
}

/// Dual numbers over `base`, realized inside `Mat_2(base)` as `x·I + y·E`
/// with `E = [[0,1],[0,0]]`. Over a commutative base this is a commutative
/// subring of a noncommutative matrix ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DualNumbers<R> {
    base: R,
}

impl<R: Ring> DualNumbers<R> {
    pub fn new(base: R) -> Self {
        Self { base }
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    /// The matrix `[[x, y], [0, x]]`.
    pub fn embed(&self, d: &Dual<R::Elem>) -> Matrix<R::Elem> {
        Matrix::from_vec(
            2,
            vec![d.re.clone(), d.eps.clone(), self.base.zero(), d.re.clone()],
        )
        .unwrap()
    }

    /// Inverse of [`DualNumbers::embed`]; `None` if `m` is not of the form `x·I + y·E`.
    pub fn project(&self, m: &Matrix<R::Elem>) -> Option<Dual<R::Elem>> {
        if m.n() != 2
            || !self.base.is_zero(m.get(1, 0))
            || !self.base.elem_eq(m.get(0, 0), m.get(1, 1))
        {
            return None;
        }
        Some(Dual {
            re: m.get(0, 0).clone(),
            eps: m.get(0, 1).clone(),
        })
    }
}

impl<R: Ring> Ring for DualNumbers<R> {
    type Elem = Dual<R::Elem>;

    fn descriptor(&self) -> String {
        format!("dualnum:{}", self.base.descriptor())
    }

    fn is_commutative(&self) -> bool {
        self.base.is_commutative()
    }

    fn is_finite(&self) -> bool {
        self.base.is_finite()
    }

    fn zero(&self) -> Self::Elem {
        Dual {
            re: self.base.zero(),
            eps: self.base.zero(),
        }
    }

    fn one(&self) -> Self::Elem {
        Dual {
            re: self.base.one(),
            eps: self.base.zero(),
        }
    }

    fn from_i64(&self, value: i64) -> Self::Elem {
        Dual {
            re: self.base.from_i64(value),
            eps: self.base.zero(),
        }
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        Dual {
            re: self.base.add(&a.re, &b.re),
            eps: self.base.add(&a.eps, &b.eps),
        }
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        Dual {
            re: self.base.neg(&a.re),
            eps: self.base.neg(&a.eps),
        }
    }

    // [[x1,y1],[0,x1]]·[[x2,y2],[0,x2]] = [[x1x2, x1y2 + y1x2],[0, x1x2]]
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let b0 = &self.base;
        Dual {
            re: b0.mul(&a.re, &b.re),
            eps: b0.add(&b0.mul(&a.re, &b.eps), &b0.mul(&a.eps, &b.re)),
        }
    }

    fn elem_eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        self.base.elem_eq(&a.re, &b.re) && self.base.elem_eq(&a.eps, &b.eps)
    }

    fn validate(&self, a: &Self::Elem) -> Result<()> {
        self.base.validate(&a.re)?;
        self.base.validate(&a.eps)
    }

    // (x + yε)⁻¹ = x⁻¹ − x⁻¹·y·x⁻¹·ε; x is a unit iff x + yε is.
    fn try_invert(&self, x: &Self::Elem) -> Result<Option<Self::Elem>> {
        let b0 = &self.base;
        let Some(inv) = b0.try_invert(&x.re)? else {
            return Ok(None);
        };
        let eps = b0.neg(&b0.mul(&b0.mul(&inv, &x.eps), &inv));
        Ok(Some(Dual { re: inv, eps }))
    }

    fn elements(&self) -> Option<Vec<Self::Elem>> {
        let base = self.base.elements()?;
        let mut out = Vec::with_capacity(base.len() * base.len());
        for re in &base {
            for eps in &base {
                out.push(Dual {
                    re: re.clone(),
                    eps: eps.clone(),
                });
            }
        }
        Some(out)
    }

    fn random_element<G: RandRng + ?Sized>(&self, rng: &mut G) -> Self::Elem {
        Dual {
            re: self.base.random_element(rng),
            eps: self.base.random_element(rng),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix;
    use crate::rings::matring::MatRing;
    use crate::rings::zmod::Zmod;

    #[test]
    fn embedding_is_multiplicative() {
        let base = Zmod::new(12).unwrap();
        let r = DualNumbers::new(base);
        let s = MatRing::new(2, base).unwrap();
        for a in r.elements().unwrap().iter().step_by(7) {
            for b in r.elements().unwrap().iter().step_by(11) {
                assert_eq!(r.embed(&r.mul(a, b)), s.mul(&r.embed(a), &r.embed(b)));
                assert_eq!(r.project(&r.embed(a)).as_ref(), Some(a));
            }
        }
    }

    #[test]
    fn unit_iff_real_part_unit() {
        let r = DualNumbers::new(Zmod::new(4).unwrap());
        for x in r.elements().unwrap() {
            let inv = r.try_invert(&x).unwrap();
            assert_eq!(inv.is_some(), x.re % 2 == 1);
            if let Some(y) = inv {
                assert!(r.is_one(&r.mul(&x, &y)) && r.is_one(&r.mul(&y, &x)));
            }
        }
    }

    #[test]
    fn project_rejects_non_dual_matrices() {
        let r = DualNumbers::new(Zmod::new(3).unwrap());
        let m = matrix::identity(&Zmod::new(3).unwrap(), 2);
        assert!(r.project(&m).is_some());
        let lower = Matrix::from_vec(2, vec![0, 0, 1, 0]).unwrap();
        assert!(r.project(&lower).is_none());
    }
}
