//! Concrete checks of the inverse formula over `R = ℤ/m[ε] ⊆ S = Mat₂(ℤ/m)`.
//!
//! `R` is commutative while `S` is not. A matrix `A` over `R` is inverted
//! over `S` independently of any determinant theory, by flattening to a
//! `2n × 2n` matrix over `ℤ/m`. The inverse `B` is then used to check
//! that `s = ocdet_fwd(B)` inverts `det A` and that `B = adj(A)·s`.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::Result;
use crate::expansion::{
    adjugate, det_leibniz, flatten, invert_commutative, ocdet_fwd, ocdet_left, unflatten,
};
use crate::matrix::{self, Matrix};
use crate::ring::Ring;
use crate::rings::{Dual, DualNumbers, MatRing, Zmod};

/// Outcome of each identity. `None` fields were not evaluated because `A`
/// is not invertible over `S`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConsequenceReport {
    pub n: usize,
    pub modulus: u64,
    pub invertible: bool,
    /// `A·B = B·A = I` for the independently computed `B`.
    pub inverse_checked: bool,
    pub det_times_s_is_one: bool,
    pub s_times_det_is_one: bool,
    pub left_times_det_is_one: bool,
    pub fwd_equals_left: bool,
    pub b_det_equals_adj: bool,
    pub det_b_equals_adj: bool,
    pub adj_s_equals_b: bool,
    pub s_adj_equals_b: bool,
    pub entries_in_rt_inverse: bool,
}

impl ConsequenceReport {
    pub fn violations(&self) -> Vec<&'static str> {
        if !self.invertible {
            return Vec::new();
        }
        let checks = [
            ("A·B = B·A = I", self.inverse_checked),
            ("det(A)·s = 1", self.det_times_s_is_one),
            ("s·det(A) = 1", self.s_times_det_is_one),
            ("ocdet_left(B)·det(A) = 1", self.left_times_det_is_one),
            ("ocdet_fwd(B) = ocdet_left(B)", self.fwd_equals_left),
            ("B·det(A) = adj(A)", self.b_det_equals_adj),
            ("det(A)·B = adj(A)", self.det_b_equals_adj),
            ("adj(A)·s = B", self.adj_s_equals_b),
            ("s·adj(A) = B", self.s_adj_equals_b),
            ("B_ij = r·det(A)⁻¹ with r ∈ R", self.entries_in_rt_inverse),
        ];
        checks
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(name, _)| *name)
            .collect()
    }
}

/// Inverts `A ∈ Mat_n(R)` inside `Mat_n(S)` by flattening, or `None` if no
/// inverse exists.
pub fn invert_over_s(
    r: &DualNumbers<Zmod>,
    a: &Matrix<Dual<u64>>,
) -> Result<Option<Matrix<Matrix<u64>>>> {
    let base = *r.base();
    let embedded = a.map(|x| r.embed(x));
    let flat = flatten(&embedded)?;
    match invert_commutative(&base, &flat)? {
        Some(inv) => Ok(Some(unflatten(&inv, 2)?)),
        None => Ok(None),
    }
}

pub fn verify_consequences(
    r: &DualNumbers<Zmod>,
    a: &Matrix<Dual<u64>>,
) -> Result<ConsequenceReport> {
    let base = *r.base();
    let s_ring = MatRing::new(2, base)?;
    let n = a.n();
    let mut report = ConsequenceReport {
        n,
        modulus: base.modulus(),
        ..Default::default()
    };
    let Some(b) = invert_over_s(r, a)? else {
        return Ok(report);
    };
    report.invertible = true;

    let a_s = a.map(|x| r.embed(x));
    let id = matrix::identity(&s_ring, n);
    report.inverse_checked = matrix::equal(&s_ring, &matrix::mul(&s_ring, &a_s, &b)?, &id)
        && matrix::equal(&s_ring, &matrix::mul(&s_ring, &b, &a_s)?, &id);

    let det_r = det_leibniz(r, a)?;
    let det = r.embed(&det_r);
    let adj_r = adjugate(r, a)?;
    let adj = adj_r.map(|x| r.embed(x));
    let s = ocdet_fwd(&s_ring, &b);
    let s_left = ocdet_left(&s_ring, &b);

    report.det_times_s_is_one = s_ring.is_one(&s_ring.mul(&det, &s));
    report.s_times_det_is_one = s_ring.is_one(&s_ring.mul(&s, &det));
    report.left_times_det_is_one = s_ring.is_one(&s_ring.mul(&s_left, &det));
    report.fwd_equals_left = s_ring.elem_eq(&s, &s_left);
    report.b_det_equals_adj = matrix::equal(&s_ring, &matrix::scale_right(&s_ring, &b, &det), &adj);
    report.det_b_equals_adj = matrix::equal(&s_ring, &matrix::scale_left(&s_ring, &det, &b), &adj);
    report.adj_s_equals_b = matrix::equal(&s_ring, &matrix::scale_right(&s_ring, &adj, &s), &b);
    report.s_adj_equals_b = matrix::equal(&s_ring, &matrix::scale_left(&s_ring, &s, &adj), &b);
    // B_ij·det(A) must land back in R, and B_ij = r·det(A)⁻¹ for that r.
    report.entries_in_rt_inverse = b.entries().iter().all(|bij| {
        r.project(&s_ring.mul(bij, &det))
            .is_some_and(|num| s_ring.elem_eq(&s_ring.mul(&r.embed(&num), &s), bij))
    });
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Failure {
    pub sample: usize,
    pub n: usize,
    pub modulus: u64,
    /// `A` as rows of `[x, y]` pairs.
    pub matrix: Vec<Vec<[u64; 2]>>,
    pub violated: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SweepReport {
    pub seed: u64,
    pub samples: usize,
    pub invertible: usize,
    pub violations: usize,
    pub failures: Vec<Failure>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.violations == 0
    }
}

/// Runs `samples` random matrices, the `i`-th drawn with `(n, m) = shapes[i mod len]`.
pub fn sweep(shapes: &[(usize, u64)], samples: usize, seed: u64) -> Result<SweepReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut report = SweepReport {
        seed,
        samples,
        invertible: 0,
        violations: 0,
        failures: Vec::new(),
    };
    for i in 0..samples {
        let (n, m) = shapes[i % shapes.len()];
        let r = DualNumbers::new(Zmod::new(m)?);
        let a = matrix::random(&r, n, &mut rng);
        let res = verify_consequences(&r, &a)?;
        if res.invertible {
            report.invertible += 1;
        }
        let violated = res.violations();
        if !violated.is_empty() {
            report.violations += 1;
            report.failures.push(Failure {
                sample: i,
                n,
                modulus: m,
                matrix: a
                    .rows()
                    .map(|row| row.iter().map(|d| [d.re, d.eps]).collect())
                    .collect(),
                violated: violated.iter().map(|s| s.to_string()).collect(),
            });
        }
    }
    Ok(report)
}
