//! Symbolic replay of the determinant-invertibility argument.
//!
//! With `A = (a_ij)` and `B = (b_ij)` symbolic, the A-entries commuting
//! with each other and nothing else commuting, the engine builds two
//! polynomials for each `n`:
//!
//! * `P`, the expansion of `Σ_σ sgn(σ)·d_{σ(1),1}⋯d_{σ(n),n}` where
//!   `d = AB`, multiplied out from the inside: at step `t` the accumulated
//!   product is multiplied by `a_{σ(t),k}` on the left and `b_{k,t}` on the
//!   right, summed over `k`;
//! * `Q = det(A)·ocdet_fwd(B)`.
//!
//! `P = Q` as normalized polynomials. When `AB = I` the left side is
//! `det(I) = 1`, so `ocdet_fwd(B)` is a right inverse of `det A`. The left
//! variant runs the same computation in the opposite algebra, for `BA = I`.

use std::fmt;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::expansion::{adjugate, det_leibniz, ocdet_fwd, ocdet_left};
use crate::freealg::{CommutationSpec, FreeAlgebra, FreePoly, Generator, Kind, Monomial};
use crate::matrix::{self, Matrix};
use crate::permutation::{factorial, permutations_with_sign, Permutation};
use crate::ring::Ring;

/// Largest `n` replayed without an explicit override. `n = 5` (375,000 raw
/// monomials) needs a raised cap.
pub const DEFAULT_CAP: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Right,
    Left,
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Right => "right",
            Side::Left => "left",
        })
    }
}

impl std::str::FromStr for Side {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "right" => Ok(Side::Right),
            "left" => Ok(Side::Left),
            _ => Err(Error::Parse(format!("unknown side `{s}`"))),
        }
    }
}

pub struct SymbolicSetup {
    n: usize,
    algebra: FreeAlgebra,
    a: Matrix<FreePoly>,
    b: Matrix<FreePoly>,
}

impl SymbolicSetup {
    pub fn new(n: usize) -> Self {
        let algebra = FreeAlgebra::new(CommutationSpec::proof_replay(), n);
        let a = algebra.symbolic_matrix(Kind::A, n);
        let b = algebra.symbolic_matrix(Kind::B, n);
        Self { n, algebra, a, b }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn algebra(&self) -> &FreeAlgebra {
        &self.algebra
    }

    pub fn a(&self) -> &Matrix<FreePoly> {
        &self.a
    }

    pub fn b(&self) -> &Matrix<FreePoly> {
        &self.b
    }

    pub fn spec(&self) -> CommutationSpec {
        self.algebra.spec()
    }
}

/// A polynomial together with the number of monomials generated in the
/// final multiplication layer, before any merging or cancellation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expansion {
    pub poly: FreePoly,
    pub raw_terms: u64,
}

/// Expands the (unsigned) product for one permutation from the inside out.
///
/// Right side: `d_{σ(1),1}⋯d_{σ(n),n}`, giving monomials
/// `a_{σ(n),k_n}⋯a_{σ(1),k_1}·b_{k_1,1}⋯b_{k_n,n}`.
/// Left side, the opposite-algebra mirror: each step multiplies by
/// `b_{t,k}` on the left and `a_{k,σ(t)}` on the right, giving
/// `b_{n,k_n}⋯b_{1,k_1}·a_{k_1,σ(1)}⋯a_{k_n,σ(n)}`.
pub fn expand_permutation_product(
    setup: &SymbolicSetup,
    sigma: &Permutation,
    side: Side,
) -> Expansion {
    let n = setup.n;
    let spec = setup.spec();
    let mut acc = FreePoly::one(spec);
    let mut raw_terms = if n == 0 { 1 } else { 0 };
    for t in 0..n {
        let mut next = FreePoly::zero(spec);
        let mut produced = 0u64;
        for k in 0..n {
            let (left, right) = match side {
                Side::Right => (
                    Generator::a(sigma.apply(t) + 1, k + 1),
                    Generator::b(k + 1, t + 1),
                ),
                Side::Left => (
                    Generator::b(t + 1, k + 1),
                    Generator::a(k + 1, sigma.apply(t) + 1),
                ),
            };
            let left = Monomial::new(&[left], &spec);
            let right = Monomial::new(&[right], &spec);
            for (m, c) in acc.terms() {
                next.add_term(left.mul(m, &spec).mul(&right, &spec), c.clone());
                produced += 1;
            }
        }
        acc = next;
        raw_terms = produced;
    }
    Expansion {
        poly: acc,
        raw_terms,
    }
}

/// `P = Σ_σ sgn(σ)·(expanded product for σ)`.
///
/// Permutations are expanded in parallel and merged in lexicographic order.
pub fn expand_identity_det(setup: &SymbolicSetup, side: Side) -> Expansion {
    let perms: Vec<Permutation> = permutations_with_sign(setup.n).collect();
    let parts: Vec<(i8, Expansion)> = perms
        .par_iter()
        .map(|sigma| (sigma.sign(), expand_permutation_product(setup, sigma, side)))
        .collect();
    let mut poly = FreePoly::zero(setup.spec());
    let mut raw_terms = 0;
    for (sign, part) in parts {
        raw_terms += part.raw_terms;
        for (m, c) in part.poly.terms() {
            poly.add_term(m.clone(), if sign < 0 { -c } else { c.clone() });
        }
    }
    Expansion { poly, raw_terms }
}

/// `Q`: `det(A)·ocdet_fwd(B)` on the right, `ocdet_left(B)·det(A)` on the left.
pub fn target_poly(setup: &SymbolicSetup, side: Side) -> FreePoly {
    let alg = &setup.algebra;
    let det = det_leibniz(alg, &setup.a).expect("A-entries commute");
    match side {
        Side::Right => alg.mul(&det, &ocdet_fwd(alg, &setup.b)),
        Side::Left => alg.mul(&ocdet_left(alg, &setup.b), &det),
    }
}

/// `n!·nⁿ`.
pub fn raw_term_count(n: usize) -> u128 {
    factorial(n) * (n as u128).pow(n as u32)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayReport {
    pub n: usize,
    pub side: Side,
    pub raw_terms: u64,
    pub p_terms: usize,
    pub q_terms: usize,
    pub equal: bool,
    pub millis: u64,
}

impl fmt::Display for ReplayReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "n={} side={} raw_terms={} p_terms={} q_terms={} {} ({} ms)",
            self.n,
            self.side,
            self.raw_terms,
            self.p_terms,
            self.q_terms,
            if self.equal { "equal" } else { "NOT EQUAL" },
            self.millis
        )
    }
}

/// Builds `P` and `Q` for dimension `n` and compares them structurally.
pub fn verify_theorem(n: usize, side: Side, cap: usize) -> Result<ReplayReport> {
    if n == 0 {
        return Err(Error::Parse("dimension must be at least 1".into()));
    }
    if n > cap {
        return Err(Error::CapExceeded {
            n,
            cap,
            raw_terms: raw_term_count(n),
        });
    }
    let start = Instant::now();
    let setup = SymbolicSetup::new(n);
    let p = expand_identity_det(&setup, side);
    let q = target_poly(&setup, side);
    Ok(ReplayReport {
        n,
        side,
        raw_terms: p.raw_terms,
        p_terms: p.poly.len(),
        q_terms: q.len(),
        equal: p.poly == q,
        millis: start.elapsed().as_millis() as u64,
    })
}

/// Checks `A·adj(A) = adj(A)·A = det(A)·I` for a fully commuting symbolic `A`.
pub fn verify_adjugate_identity(n: usize) -> Result<bool> {
    if !(1..=4).contains(&n) {
        return Err(Error::Unsupported(format!(
            "adjugate identity check for n = {n}"
        )));
    }
    let alg = FreeAlgebra::new(CommutationSpec::fully_commuting(), n);
    let a = alg.symbolic_matrix(Kind::A, n);
    let adj = adjugate(&alg, &a)?;
    let det = det_leibniz(&alg, &a)?;
    let scaled = matrix::scalar(&alg, n, &det);
    Ok(matrix::mul(&alg, &a, &adj)? == scaled && matrix::mul(&alg, &adj, &a)? == scaled)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceStep {
    pub label: String,
    /// The identity as displayed in the worked example.
    pub equation: String,
    /// The engine's normalized value for this step.
    pub value: String,
    /// Whether the displayed formula and the engine agree as polynomials.
    pub holds: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Trace {
    pub steps: Vec<TraceStep>,
}

impl Trace {
    pub fn all_hold(&self) -> bool {
        self.steps.iter().all(|s| s.holds)
    }
}

impl fmt::Display for Trace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in &self.steps {
            writeln!(f, "[{}] {}", s.label, s.equation)?;
            writeln!(
                f,
                "    = {}   [{}]",
                s.value,
                if s.holds { "ok" } else { "MISMATCH" }
            )?;
            if let Some(note) = &s.note {
                writeln!(f, "    note: {note}")?;
            }
        }
        Ok(())
    }
}

/// The 2×2 worked example, step by step.
///
/// Each step pairs a polynomial built directly from the displayed formula
/// with the value the general engine computes; `holds` records their
/// structural equality.
pub fn trace_2x2() -> Trace {
    let setup = SymbolicSetup::new(2);
    let alg = setup.algebra();
    let spec = setup.spec();
    let a = |i, j| Generator::a(i, j);
    let b = |i, j| Generator::b(i, j);
    let g = |x: Generator| alg.gen(x);
    let word_sum = |words: &[[Generator; 4]]| {
        let mut p = FreePoly::zero(spec);
        for w in words {
            p.add_term(Monomial::new(w, &spec), BigInt::from(1));
        }
        p
    };
    let sandwich =
        |l: Generator, mid: &FreePoly, r: Generator| alg.mul(&alg.mul(&g(l), mid), &g(r));
    let ab = matrix::mul(alg, setup.a(), setup.b()).expect("square");
    let d11 = ab.get(0, 0).clone();
    let d21 = ab.get(1, 0).clone();

    let id = Permutation::identity(2);
    let swap = Permutation::from_images(vec![1, 0]).unwrap();
    let engine_d11d22 = expand_permutation_product(&setup, &id, Side::Right).poly;
    let engine_d21d12 = expand_permutation_product(&setup, &swap, Side::Right).poly;
    let engine_p = expand_identity_det(&setup, Side::Right).poly;
    let engine_q = target_poly(&setup, Side::Right);

    let mut steps = Vec::new();
    let mut push = |label: &str,
                    equation: &str,
                    formula: &FreePoly,
                    engine: &FreePoly,
                    note: Option<String>| {
        steps.push(TraceStep {
            label: label.into(),
            equation: equation.into(),
            value: engine.to_string(),
            holds: formula == engine,
            note,
        });
    };

    let d11_formula = alg.add(
        &FreePoly::monomial(spec, &[a(1, 1), b(1, 1)], 1),
        &FreePoly::monomial(spec, &[a(1, 2), b(2, 1)], 1),
    );
    push(
        "d11",
        "1 = d11 = a11 b11 + a12 b21",
        &d11_formula,
        &d11,
        None,
    );

    let left1 = word_sum(&[
        [a(2, 1), a(1, 1), b(1, 1), b(1, 2)],
        [a(2, 1), a(1, 2), b(2, 1), b(1, 2)],
    ]);
    push(
        "a21 d11 b12",
        "a21 b12 = a21 1 b12 = a21 (a11 b11 + a12 b21) b12 = a21 a11 b11 b12 + a21 a12 b21 b12",
        &left1,
        &sandwich(a(2, 1), &d11, b(1, 2)),
        None,
    );
    let left2 = word_sum(&[
        [a(2, 2), a(1, 1), b(1, 1), b(2, 2)],
        [a(2, 2), a(1, 2), b(2, 1), b(2, 2)],
    ]);
    push(
        "a22 d11 b22",
        "a22 b22 = a22 1 b22 = a22 (a11 b11 + a12 b21) b22 = a22 a11 b11 b22 + a22 a12 b21 b22",
        &left2,
        &sandwich(a(2, 2), &d11, b(2, 2)),
        None,
    );
    push(
        "d11 d22",
        "1 = a21 a11 b11 b12 + a21 a12 b21 b12 + a22 a11 b11 b22 + a22 a12 b21 b22",
        &alg.add(&left1, &left2),
        &engine_d11d22,
        None,
    );
    let mut sum_a2j_a1i = FreePoly::zero(spec);
    let mut sum_a1i_a2j = FreePoly::zero(spec);
    let mut sum_a1j_a2i = FreePoly::zero(spec);
    let mut regrouped = FreePoly::zero(spec);
    let mut cofactor_form = FreePoly::zero(spec);
    for i in 1..=2 {
        for j in 1..=2 {
            let bb = alg.mul(&g(b(i, 1)), &g(b(j, 2)));
            let a1i_a2j = alg.mul(&g(a(1, i)), &g(a(2, j)));
            let a1j_a2i = alg.mul(&g(a(1, j)), &g(a(2, i)));
            sum_a2j_a1i = alg.add(
                &sum_a2j_a1i,
                &alg.mul(&alg.mul(&g(a(2, j)), &g(a(1, i))), &bb),
            );
            sum_a1i_a2j = alg.add(&sum_a1i_a2j, &alg.mul(&a1i_a2j, &bb));
            sum_a1j_a2i = alg.add(&sum_a1j_a2i, &alg.mul(&a1j_a2i, &bb));
            regrouped = alg.add(&regrouped, &alg.mul(&alg.sub(&a1i_a2j, &a1j_a2i), &bb));
            let minor = Matrix::from_fn(2, |r, c| g(a(r + 1, if c == 0 { i } else { j })));
            let minor_det = det_leibniz(alg, &minor).expect("A-entries commute");
            cofactor_form = alg.add(&cofactor_form, &alg.mul(&minor_det, &bb));
        }
    }
    push(
        "sum a2j a1i",
        "1 = Σ_{i,j} a2j a1i bi1 bj2",
        &sum_a2j_a1i,
        &engine_d11d22,
        None,
    );
    push(
        "sum a1i a2j",
        "1 = Σ_{i,j} a1i a2j bi1 bj2   (entries of A commute)",
        &sum_a1i_a2j,
        &engine_d11d22,
        None,
    );

    push(
        "d21",
        "0 = d21 = a21 b11 + a22 b21",
        &alg.add(
            &FreePoly::monomial(spec, &[a(2, 1), b(1, 1)], 1),
            &FreePoly::monomial(spec, &[a(2, 2), b(2, 1)], 1),
        ),
        &d21,
        None,
    );
    let right1 = word_sum(&[
        [a(1, 1), a(2, 1), b(1, 1), b(1, 2)],
        [a(1, 1), a(2, 2), b(2, 1), b(1, 2)],
    ]);
    push(
        "a11 d21 b12",
        "0 = a11 0 b12 = a11 (a21 b11 + a22 b21) b12 = a11 a21 b11 b12 + a11 a22 b21 b12",
        &right1,
        &sandwich(a(1, 1), &d21, b(1, 2)),
        None,
    );
    let printed_right2 = word_sum(&[
        [a(1, 2), a(2, 1), b(1, 1), b(2, 2)],
        [a(1, 1), a(2, 2), b(2, 1), b(2, 2)],
    ]);
    let right2 = word_sum(&[
        [a(1, 2), a(2, 1), b(1, 1), b(2, 2)],
        [a(1, 2), a(2, 2), b(2, 1), b(2, 2)],
    ]);
    let engine_right2 = sandwich(a(1, 2), &d21, b(2, 2));
    let typo = if printed_right2 == engine_right2 {
        None
    } else {
        Some(
            "displayed term a11 a22 b21 b22 should read a12 a22 b21 b22: expanding \
             a12 (a21 b11 + a22 b21) b22 gives the latter, and the engine uses it"
                .to_string(),
        )
    };
    push(
        "a12 d21 b22",
        "0 = a12 0 b22 = a12 (a21 b11 + a22 b21) b22 = a12 a21 b11 b22 + a11 a22 b21 b22",
        &right2,
        &engine_right2,
        typo.clone(),
    );
    push(
        "d21 d12",
        "0 = a11 a21 b11 b12 + a11 a22 b21 b12 + a12 a21 b11 b22 + a11 a22 b21 b22",
        &alg.add(&right1, &right2),
        &engine_d21d12,
        typo,
    );
    push(
        "sum a1j a2i",
        "0 = Σ_{i,j} a1j a2i bi1 bj2",
        &sum_a1j_a2i,
        &engine_d21d12,
        None,
    );

    push(
        "difference",
        "1 = d11 d22 - d21 d12 = Σ_{i,j} a1i a2j bi1 bj2 - Σ_{i,j} a1j a2i bi1 bj2",
        &alg.sub(&sum_a1i_a2j, &sum_a1j_a2i),
        &engine_p,
        None,
    );
    push(
        "regrouped",
        "1 = Σ_{i,j} (a1i a2j - a1j a2i) bi1 bj2",
        &regrouped,
        &engine_p,
        None,
    );
    push(
        "cofactor",
        "1 = Σ_{i,j} |a1i a1j; a2i a2j| bi1 bj2   (vanishes for i = j)",
        &cofactor_form,
        &engine_p,
        None,
    );
    let det = det_leibniz(alg, setup.a()).expect("A-entries commute");
    let mut signed = FreePoly::zero(spec);
    for sigma in permutations_with_sign(2) {
        let (i, j) = (sigma.apply(0) + 1, sigma.apply(1) + 1);
        let term = alg.mul(&alg.mul(&det, &g(b(i, 1))), &g(b(j, 2)));
        signed = alg.add(&signed, &alg.signed(sigma.sign(), &term));
    }
    push(
        "signed",
        "1 = Σ_{σ={i,j}∈S2} sgn(σ) det(A) bi1 bj2",
        &signed,
        &engine_p,
        None,
    );
    let factored = alg.mul(
        &det,
        &alg.sub(
            &alg.mul(&g(b(1, 1)), &g(b(2, 2))),
            &alg.mul(&g(b(2, 1)), &g(b(1, 2))),
        ),
    );
    push(
        "factored",
        "1 = det(A) · (b11 b22 - b21 b12)",
        &factored,
        &engine_q,
        None,
    );

    Trace { steps }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn n1_is_single_product() {
        let setup = SymbolicSetup::new(1);
        let p = expand_identity_det(&setup, Side::Right);
        assert_eq!(p.poly.to_string(), "a11 b11");
        assert_eq!(p.raw_terms, 1);
        assert_eq!(target_poly(&setup, Side::Right).to_string(), "a11 b11");
        assert_eq!(target_poly(&setup, Side::Left).to_string(), "b11 a11");
    }

    #[test]
    fn identity_term_for_n2() {
        let setup = SymbolicSetup::new(2);
        let e = expand_permutation_product(&setup, &Permutation::identity(2), Side::Right);
        assert_eq!(
            e.poly.to_string(),
            "a11 a21 b11 b12 + a11 a22 b11 b22 + a12 a21 b21 b12 + a12 a22 b21 b22"
        );
        assert_eq!(e.raw_terms, 4);
    }

    #[test]
    fn raw_count_for_n2() {
        let p = expand_identity_det(&SymbolicSetup::new(2), Side::Right);
        assert_eq!(p.raw_terms, 8);
        assert_eq!(raw_term_count(2), 8);
    }

    #[test]
    fn cap_is_enforced() {
        assert_eq!(
            verify_theorem(6, Side::Right, DEFAULT_CAP),
            Err(Error::CapExceeded {
                n: 6,
                cap: 4,
                raw_terms: 720 * 46656
            })
        );
        assert!(verify_theorem(0, Side::Right, DEFAULT_CAP).is_err());
    }

    #[test]
    fn adjugate_identity_range() {
        assert!(verify_adjugate_identity(1).unwrap());
        assert!(verify_adjugate_identity(2).unwrap());
        assert!(verify_adjugate_identity(0).is_err());
        assert!(verify_adjugate_identity(5).is_err());
    }

    #[test]
    fn side_parsing() {
        assert_eq!("left".parse::<Side>().unwrap(), Side::Left);
        assert!("both".parse::<Side>().is_err());
    }
}
