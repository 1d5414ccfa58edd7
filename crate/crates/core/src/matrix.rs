//! Dense square matrices over a ring handle.

use crate::error::{Error, Result};
use crate::ring::Ring;

/// An `n × n` matrix stored row-major. Indices are 0-based.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix<E> {
    n: usize,
    entries: Vec<E>,
}

impl<E> Matrix<E> {
    pub fn from_rows(rows: Vec<Vec<E>>) -> Result<Self> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::DimensionMismatch {
                    expected: n,
                    found: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Self { n, entries })
    }

    pub fn from_vec(n: usize, entries: Vec<E>) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: entries.len(),
            });
        }
        Ok(Self { n, entries })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> E) -> Self {
        let mut entries = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                entries.push(f(i, j));
            }
        }
        Self { n, entries }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &E {
        &self.entries[i * self.n + j]
    }

    pub fn entries(&self) -> &[E] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<E> {
        self.entries
    }

    pub fn rows(&self) -> impl Iterator<Item = &[E]> {
        // chunks(0) panics, and an empty matrix has no rows anyway.
        self.entries.chunks(self.n.max(1)).take(self.n)
    }

    pub fn map<F, T>(&self, f: F) -> Matrix<T>
    where
        F: FnMut(&E) -> T,
    {
        Matrix {
            n: self.n,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

impl<E: Clone> Matrix<E> {
    pub fn transpose(&self) -> Self {
        Self::from_fn(self.n, |i, j| self.get(j, i).clone())
    }

    /// The matrix with row `row` and column `col` deleted.
    pub fn minor(&self, row: usize, col: usize) -> Self {
        let m = self.n - 1;
        Self::from_fn(m, |i, j| {
            let si = if i < row { i } else { i + 1 };
            let sj = if j < col { j } else { j + 1 };
            self.get(si, sj).clone()
        })
    }
}

pub fn identity<R: Ring>(ring: &R, n: usize) -> Matrix<R::Elem> {
    Matrix::from_fn(n, |i, j| if i == j { ring.one() } else { ring.zero() })
}

pub fn zero<R: Ring>(ring: &R, n: usize) -> Matrix<R::Elem> {
    Matrix::from_fn(n, |_, _| ring.zero())
}

pub fn scalar<R: Ring>(ring: &R, n: usize, s: &R::Elem) -> Matrix<R::Elem> {
    Matrix::from_fn(n, |i, j| if i == j { s.clone() } else { ring.zero() })
}

fn check_same(a: usize, b: usize) -> Result<()> {
    if a != b {
        return Err(Error::DimensionMismatch {
            expected: a,
            found: b,
        });
    }
    Ok(())
}

pub fn add<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
    check_same(a.n, b.n)?;
    Ok(Matrix {
        n: a.n,
        entries: a
            .entries
            .iter()
            .zip(&b.entries)
            .map(|(x, y)| ring.add(x, y))
            .collect(),
    })
}

pub fn neg<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    a.map(|x| ring.neg(x))
}

/// Product `a·b`; each entry is `Σ_k a_ik·b_kj` with factors in that order.
pub fn mul<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> Result<Matrix<R::Elem>> {
    check_same(a.n, b.n)?;
    let n = a.n;
    Ok(Matrix::from_fn(n, |i, j| {
        let mut acc = ring.zero();
        for k in 0..n {
            acc = ring.add(&acc, &ring.mul(a.get(i, k), b.get(k, j)));
        }
        acc
    }))
}

/// `s·a`, scalar on the left.
pub fn scale_left<R: Ring>(ring: &R, s: &R::Elem, a: &Matrix<R::Elem>) -> Matrix<R::Elem> {
    a.map(|x| ring.mul(s, x))
}

/// `a·s`, scalar on the right.
pub fn scale_right<R: Ring>(ring: &R, a: &Matrix<R::Elem>, s: &R::Elem) -> Matrix<R::Elem> {
    a.map(|x| ring.mul(x, s))
}

pub fn equal<R: Ring>(ring: &R, a: &Matrix<R::Elem>, b: &Matrix<R::Elem>) -> bool {
    a.n == b.n
        && a.entries
            .iter()
            .zip(&b.entries)
            .all(|(x, y)| ring.elem_eq(x, y))
}

pub fn is_identity<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> bool {
    equal(ring, a, &identity(ring, a.n))
}

pub fn validate<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> Result<()> {
    a.entries.iter().try_for_each(|x| ring.validate(x))
}

/// True iff every pair of entries commutes.
pub fn entries_commute<R: Ring>(ring: &R, a: &Matrix<R::Elem>) -> bool {
    if ring.is_commutative() {
        return true;
    }
    let e = &a.entries;
    (0..e.len()).all(|i| (i + 1..e.len()).all(|j| ring.commutes(&e[i], &e[j])))
}

pub fn random<R: Ring, G: rand::Rng + ?Sized>(ring: &R, n: usize, rng: &mut G) -> Matrix<R::Elem> {
    Matrix::from_fn(n, |_, _| ring.random_element(rng))
}
