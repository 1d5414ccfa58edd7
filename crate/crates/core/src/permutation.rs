//! Permutations of `{1..n}` with their signs.
//!
//! A permutation is written by its image sequence `(i₁,…,i_n)` and acts by
//! `σ(t) = i_t`. Internally images are 0-based.

use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Permutation {
    images: Vec<usize>,
    sign: i8,
}

impl Permutation {
    pub fn identity(n: usize) -> Self {
        Self {
            images: (0..n).collect(),
            sign: 1,
        }
    }

    /// Builds a permutation from 0-based images, computing the sign from the
    /// inversion count. Returns `None` if `images` is not a bijection.
    pub fn from_images(images: Vec<usize>) -> Option<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &i in &images {
            if i >= n || std::mem::replace(&mut seen[i], true) {
                return None;
            }
        }
        let sign = if inversions(&images).is_multiple_of(2) {
            1
        } else {
            -1
        };
        Some(Self { images, sign })
    }

    pub fn len(&self) -> usize {
        self.images.len()
    }

    pub fn is_empty(&self) -> bool {
        self.images.is_empty()
    }

    /// `σ(t)`, 0-based.
    pub fn apply(&self, t: usize) -> usize {
        self.images[t]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn sign(&self) -> i8 {
        self.sign
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, i) in self.images.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, ")")
    }
}

pub fn inversions(images: &[usize]) -> usize {
    let mut count = 0;
    for a in 0..images.len() {
        for b in a + 1..images.len() {
            if images[a] > images[b] {
                count += 1;
            }
        }
    }
    count
}

/// All permutations of `n` letters in lexicographic order of their images.
///
/// The sign is tracked incrementally: each step swaps two entries and
/// reverses a suffix of length `L`, which is `1 + ⌊L/2⌋` transpositions.
pub fn permutations_with_sign(n: usize) -> Permutations {
    Permutations {
        next: Some(Permutation::identity(n)),
    }
}

pub struct Permutations {
    next: Option<Permutation>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let current = self.next.take()?;
        let mut images = current.images.clone();
        let n = images.len();
        // Rightmost ascent.
        let pivot = (1..n).rev().find(|&i| images[i - 1] < images[i]);
        if let Some(p) = pivot {
            let p = p - 1;
            let succ = (p + 1..n).rev().find(|&j| images[j] > images[p]).unwrap();
            images.swap(p, succ);
            images[p + 1..].reverse();
            let suffix = n - p - 1;
            let flips = 1 + suffix / 2;
            let sign = if flips % 2 == 0 {
                current.sign
            } else {
                -current.sign
            };
            self.next = Some(Permutation { images, sign });
        }
        Some(current)
    }
}

pub fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}
