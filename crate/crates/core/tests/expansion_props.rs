use detinv::expansion::{
    adjugate, det_leibniz, flatten, invert_via_adjugate, ocdet_fwd, ocdet_left, ocdet_recursive,
    unflatten,
};
use detinv::freealg::{CommutationSpec, FreeAlgebra, Kind};
use detinv::matrix::{self, Matrix};
use detinv::permutation::{factorial, permutations_with_sign};
use detinv::rings::{DenomPredicate, Integers, Localization, MatRing, Zmod};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Fraction-free Bareiss elimination over `i128`; small entries only.
fn bareiss(m: &Matrix<BigInt>) -> i128 {
    let n = m.n();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m
        .rows()
        .map(|r| r.iter().map(|x| i128::try_from(x).unwrap()).collect())
        .collect();
    let mut sign = 1;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            match (k + 1..n).find(|&i| a[i][k] != 0) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

fn small_int_matrix(n: usize, seed: u64) -> Matrix<BigInt> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    use rand::Rng as _;
    Matrix::from_fn(n, |_, _| BigInt::from(rng.gen_range(-9i64..=9)))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn expansions_agree_over_residues(seed: u64, n in 0usize..5, m in 2u64..30) {
        let r = Zmod::new(m).unwrap();
        let a = matrix::random(&r, n, &mut ChaCha8Rng::seed_from_u64(seed));
        let det = det_leibniz(&r, &a).unwrap();
        prop_assert_eq!(ocdet_fwd(&r, &a), det);
        prop_assert_eq!(ocdet_left(&r, &a), det);
        prop_assert_eq!(ocdet_recursive(&r, &a), det);
        prop_assert_eq!(det_leibniz(&r, &a.transpose()).unwrap(), det);
    }

    #[test]
    fn leibniz_matches_bareiss(seed: u64, n in 0usize..6) {
        let a = small_int_matrix(n, seed);
        prop_assert_eq!(det_leibniz(&Integers, &a).unwrap(), BigInt::from(bareiss(&a)));
    }

    #[test]
    fn determinant_is_multiplicative(s1: u64, s2: u64, n in 1usize..5) {
        let (a, b) = (small_int_matrix(n, s1), small_int_matrix(n, s2));
        let ab = matrix::mul(&Integers, &a, &b).unwrap();
        prop_assert_eq!(
            det_leibniz(&Integers, &ab).unwrap(),
            det_leibniz(&Integers, &a).unwrap() * det_leibniz(&Integers, &b).unwrap()
        );
    }

    #[test]
    fn adjugate_identity_on_integers(seed: u64, n in 1usize..5) {
        let a = small_int_matrix(n, seed);
        let adj = adjugate(&Integers, &a).unwrap();
        let scaled = matrix::scalar(&Integers, n, &det_leibniz(&Integers, &a).unwrap());
        prop_assert_eq!(matrix::mul(&Integers, &a, &adj).unwrap(), scaled.clone());
        prop_assert_eq!(matrix::mul(&Integers, &adj, &a).unwrap(), scaled);
    }

    #[test]
    fn adjugate_inverse_is_two_sided(seed: u64, n in 1usize..5) {
        let a = small_int_matrix(n, seed);
        prop_assume!(det_leibniz(&Integers, &a).unwrap() != BigInt::from(0));
        let loc = Localization::new(Integers, DenomPredicate::nonzero());
        let inv = invert_via_adjugate(&loc, &a).unwrap();
        let a_frac = a.map(|x| loc.embed(x.clone()));
        prop_assert!(matrix::is_identity(&loc, &matrix::mul(&loc, &a_frac, &inv).unwrap()));
        prop_assert!(matrix::is_identity(&loc, &matrix::mul(&loc, &inv, &a_frac).unwrap()));
    }

    #[test]
    fn flatten_is_a_ring_homomorphism(s1: u64, s2: u64, n in 1usize..4, k in 1usize..4) {
        let s = MatRing::new(k, Zmod::new(6).unwrap()).unwrap();
        let base = *s.base();
        let x = matrix::random(&s, n, &mut ChaCha8Rng::seed_from_u64(s1));
        let y = matrix::random(&s, n, &mut ChaCha8Rng::seed_from_u64(s2));
        let (fx, fy) = (flatten(&x).unwrap(), flatten(&y).unwrap());
        prop_assert_eq!(flatten(&matrix::mul(&s, &x, &y).unwrap()).unwrap(), matrix::mul(&base, &fx, &fy).unwrap());
        prop_assert_eq!(flatten(&matrix::add(&s, &x, &y).unwrap()).unwrap(), matrix::add(&base, &fx, &fy).unwrap());
        prop_assert_eq!(unflatten(&fx, k).unwrap(), x);
    }

    #[test]
    fn left_expansion_is_opposite_transport_over_matrices(seed: u64, n in 1usize..4) {
        // Over Mat₂(ℤ/5) ocdet_left is ocdet_fwd of the transpose read in the opposite ring.
        let s = MatRing::new(2, Zmod::new(5).unwrap()).unwrap();
        let b = matrix::random(&s, n, &mut ChaCha8Rng::seed_from_u64(seed));
        let op = |x: &Matrix<u64>| x.transpose();
        // Transposition is an isomorphism Mat₂(k) → Mat₂(k)^op.
        let bt = b.transpose().map(op);
        let fwd_op = ocdet_fwd(&s, &bt);
        prop_assert_eq!(op(&fwd_op), ocdet_left(&s, &b));
        prop_assert_eq!(ocdet_recursive(&s, &b), ocdet_fwd(&s, &b));
    }
}

#[test]
fn symbolic_fwd_equals_recursive() {
    for spec in [CommutationSpec::free(), CommutationSpec::proof_replay()] {
        let alg = FreeAlgebra::new(spec, 4);
        for n in 0..=4 {
            let b = alg.symbolic_matrix(Kind::B, n);
            let fwd = ocdet_fwd(&alg, &b);
            assert_eq!(fwd, ocdet_recursive(&alg, &b), "n = {n}");
            assert_eq!(fwd.len() as u128, factorial(n));
        }
    }
}

#[test]
fn symbolic_left_is_opposite_transport() {
    let alg = FreeAlgebra::new(CommutationSpec::free(), 4);
    for n in 1..=4 {
        let b = alg.symbolic_matrix(Kind::B, n);
        assert_eq!(
            ocdet_left(&alg, &b),
            ocdet_fwd(&alg, &b.transpose()).reversed(),
            "n = {n}"
        );
    }
    // The two variants are different polynomials once n ≥ 2.
    let b = alg.symbolic_matrix(Kind::B, 2);
    assert_ne!(ocdet_left(&alg, &b), ocdet_fwd(&alg, &b));
}

#[test]
fn permutation_signs_match_cycle_parity() {
    for n in 0..=7 {
        let mut count = 0u128;
        for p in permutations_with_sign(n) {
            count += 1;
            let images = p.images();
            let mut seen = vec![false; n];
            let mut transpositions = 0;
            for start in 0..n {
                let mut len = 0;
                let mut i = start;
                while !seen[i] {
                    seen[i] = true;
                    i = images[i];
                    len += 1;
                }
                transpositions += len.max(1) - 1;
            }
            assert_eq!(p.sign(), if transpositions % 2 == 0 { 1 } else { -1 });
        }
        assert_eq!(count, factorial(n));
    }
}

#[test]
fn empty_matrix_conventions() {
    let r = Zmod::new(7).unwrap();
    let e: Matrix<u64> = Matrix::from_vec(0, vec![]).unwrap();
    assert_eq!(det_leibniz(&r, &e).unwrap(), 1);
    assert_eq!(ocdet_fwd(&r, &e), 1);
    assert_eq!(ocdet_left(&r, &e), 1);
    let loc = Localization::new(Integers, DenomPredicate::nonzero());
    let e: Matrix<BigInt> = Matrix::from_vec(0, vec![]).unwrap();
    assert_eq!(invert_via_adjugate(&loc, &e).unwrap().n(), 0);
}
