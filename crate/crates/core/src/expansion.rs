//! Determinant-style expansions.
//!
//! `det_leibniz` and `adjugate` are the usual commutative objects. The
//! `ocdet_*` family applies the same signed permutation sum to matrices over
//! an arbitrary ring, with every product evaluated strictly left to right.
//! Over a noncommutative ring the factor order is part of the definition.

use crate::error::{Error, Result};
use crate::matrix::{self, Matrix};
use crate::permutation::permutations_with_sign;
use crate::ring::Ring;
use crate::rings::frac::{Fraction, Localization};

/// `Σ_σ sgn(σ)·a_{σ(1),1}⋯a_{σ(n),n}`.
///
/// Accepted when the ring is commutative or when the entries of `a` commute
/// pairwise, which is the case for a matrix over a commutative subring of a
/// noncommutative ring.
pub fn det_leibniz<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Result<R::Elem> {
    if !matrix::entries_commute(ring, a) {
        return Err(Error::NotCommutative);
    }
    Ok(column_expansion(ring, a))
}

/// Transposed cofactor matrix: entry `(i,j)` is `(-1)^{i+j}·det(minor(j,i))`.
pub fn adjugate<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
    let n = a.n();
    if n == 0 {
        return Err(Error::Unsupported("adjugate of a 0×0 matrix".into()));
    }
    if !matrix::entries_commute(ring, a) {
        return Err(Error::NotCommutative);
    }
    if n == 1 {
        return Ok(matrix::identity(ring, 1));
    }
    Ok(Matrix::from_fn(n, |i, j| {
        let cofactor = column_expansion(ring, &a.minor(j, i));
        ring.signed(if (i + j) % 2 == 0 { 1 } else { -1 }, &cofactor)
    }))
}

/// `Σ_τ sgn(τ)·b_{τ(1),1}·b_{τ(2),2}⋯b_{τ(n),n}`, left to right.
pub fn ocdet_fwd<R: Ring>(ring: &R, b: &Matrix<R::Elem>) -> R::Elem {
    column_expansion(ring, b)
}

/// `Σ_τ sgn(τ)·b_{n,τ(n)}⋯b_{2,τ(2)}·b_{1,τ(1)}`, left to right.
///
/// This is [`ocdet_fwd`] carried through the opposite ring: reading a product
/// in `S^op` backwards and transposing `B` turns the forward column expansion
/// into a reversed row expansion. When `A` has commuting entries and
/// `B·A = I`, it is a left inverse of `det A`.
pub fn ocdet_left<R: Ring>(ring: &R, b: &Matrix<R::Elem>) -> R::Elem {
    let n = b.n();
    let mut acc = ring.zero();
    for tau in permutations_with_sign(n) {
        let mut term = ring.one();
        for t in (0..n).rev() {
            term = ring.mul(&term, b.get(t, tau.apply(t)));
        }
        acc = ring.add(&acc, &ring.signed(tau.sign(), &term));
    }
    acc
}

/// First-column recursion `Σ_k (-1)^{k+1}·b_{k,1}·ocdet_recursive(minor(k,1))`.
///
/// Independent of the permutation iterator; must agree with [`ocdet_fwd`]
/// exactly, term order included.
pub fn ocdet_recursive<R: Ring>(ring: &R, b: &Matrix<R::Elem>) -> R::Elem {
    let n = b.n();
    if n == 0 {
        return ring.one();
    }
    let mut acc = ring.zero();
    for k in 0..n {
        let rest = ocdet_recursive(ring, &b.minor(k, 0));
        let term = ring.mul(b.get(k, 0), &rest);
        acc = ring.add(&acc, &ring.signed(if k % 2 == 0 { 1 } else { -1 }, &term));
    }
    acc
}

fn column_expansion<R: Ring>(ring: &R, b: &Matrix<R::Elem>) -> R::Elem {
    let n = b.n();
    let mut acc = ring.zero();
    for sigma in permutations_with_sign(n) {
        let mut term = ring.one();
        for t in 0..n {
            term = ring.mul(&term, b.get(sigma.apply(t), t));
        }
        acc = ring.add(&acc, &ring.signed(sigma.sign(), &term));
    }
    acc
}

/// `A⁻¹ = adj(A)·det(A)⁻¹` as a matrix of formal fractions over the
/// localization's base ring.
pub fn invert_via_adjugate<R: Ring>(
    loc: &Localization<R>,
    a: &Matrix<R::Elem>,
) -> Result<Matrix<Fraction<R::Elem>>> {
    let base = loc.base();
    if !base.is_commutative() {
        return Err(Error::NotCommutative);
    }
    matrix::validate(base, a)?;
    let n = a.n();
    if n == 0 {
        return Matrix::from_vec(0, Vec::new());
    }
    let det = det_leibniz(base, a)?;
    if !loc.accepts(&det) {
        return Err(Error::NotInvertibleOverLocalization);
    }
    let adj = adjugate(base, a)?;
    Ok(adj.map(|r| Fraction::new_unchecked(r.clone(), det.clone())))
}

/// Identifies `Mat_n(Mat_k(base))` with `Mat_{nk}(base)`.
pub fn flatten<E: Clone>(m: &Matrix<Matrix<E>>) -> Result<Matrix<E>> {
    let n = m.n();
    let k = if n == 0 { 0 } else { m.get(0, 0).n() };
    for block in m.entries() {
        if block.n() != k {
            return Err(Error::DimensionMismatch {
                expected: k,
                found: block.n(),
            });
        }
    }
    Ok(Matrix::from_fn(n * k, |i, j| {
        m.get(i / k, j / k).get(i % k, j % k).clone()
    }))
}

/// Inverse of [`flatten`] for block size `k`.
pub fn unflatten<E: Clone>(m: &Matrix<E>, k: usize) -> Result<Matrix<Matrix<E>>> {
    if k == 0 || !m.n().is_multiple_of(k) {
        return Err(Error::DimensionMismatch {
            expected: k,
            found: m.n(),
        });
    }
    let n = m.n() / k;
    Ok(Matrix::from_fn(n, |bi, bj| {
        Matrix::from_fn(k, |i, j| m.get(bi * k + i, bj * k + j).clone())
    }))
}

/// Inverse of a matrix over a commutative ring, via `det⁻¹·adj`, when the
/// determinant is a unit.
pub fn invert_commutative<R: Ring>(
    ring: &R,
    a: &Matrix<R::Elem>,
) -> Result<Option<Matrix<R::Elem>>> {
    if a.n() == 0 {
        return Ok(Some(a.clone()));
    }
    let det = det_leibniz(ring, a)?;
    let Some(det_inv) = ring.try_invert(&det)? else {
        return Ok(None);
    };
    let adj = adjugate(ring, a)?;
    Ok(Some(matrix::scale_left(ring, &det_inv, &adj)))
}
