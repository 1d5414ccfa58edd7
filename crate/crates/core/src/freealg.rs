//! Integer polynomials in a partially commutative free algebra.
//!
//! Generators are the symbolic matrix entries `a_ij` and `b_ij`. A
//! [`CommutationSpec`] declares which kinds of generators commute; words are
//! kept in normal form (the lexicographically least word of their trace
//! class), so two polynomials are equal iff they are structurally equal.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::Rng as RandRng;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::Ring;

/// Products with more term pairs than this are split across threads.
const PAR_MUL_THRESHOLD: usize = 1 << 14;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Kind {
    A,
    B,
}

/// `a_ij` or `b_ij` with 1-based indices. The derived order puts every
/// A-entry before every B-entry, each kind row-major.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Generator {
    pub kind: Kind,
    pub row: u8,
    pub col: u8,
}

impl Generator {
    pub fn a(row: usize, col: usize) -> Self {
        Self::new(Kind::A, row, col)
    }

    pub fn b(row: usize, col: usize) -> Self {
        Self::new(Kind::B, row, col)
    }

    pub fn new(kind: Kind, row: usize, col: usize) -> Self {
        assert!(
            (1..=255).contains(&row) && (1..=255).contains(&col),
            "generator index out of range"
        );
        Self {
            kind,
            row: row as u8,
            col: col as u8,
        }
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let letter = match self.kind {
            Kind::A => 'a',
            Kind::B => 'b',
        };
        if self.row < 10 && self.col < 10 {
            write!(f, "{letter}{}{}", self.row, self.col)
        } else {
            write!(f, "{letter}{},{}", self.row, self.col)
        }
    }
}

/// Symmetric commutation relation on generator kinds. Equal generators
/// trivially commute and never need swapping, so only distinct pairs matter.
///
/// The relation must be transitive (a disjoint union of cliques). Stable
/// insertion then yields the least word of each trace class.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct CommutationSpec {
    aa: bool,
    ab: bool,
    bb: bool,
}

impl CommutationSpec {
    pub fn new(aa: bool, ab: bool, bb: bool) -> Result<Self> {
        if ab && !(aa && bb) {
            return Err(Error::Unsupported(
                "non-transitive commutation relation".into(),
            ));
        }
        Ok(Self { aa, ab, bb })
    }

    /// A-entries commute with each other; nothing else commutes.
    pub fn proof_replay() -> Self {
        Self {
            aa: true,
            ab: false,
            bb: false,
        }
    }

    pub fn fully_commuting() -> Self {
        Self {
            aa: true,
            ab: true,
            bb: true,
        }
    }

    pub fn free() -> Self {
        Self {
            aa: false,
            ab: false,
            bb: false,
        }
    }

    pub fn is_fully_commuting(&self) -> bool {
        self.aa && self.ab && self.bb
    }

    pub fn commutes(&self, x: Generator, y: Generator) -> bool {
        match (x.kind, y.kind) {
            (Kind::A, Kind::A) => self.aa,
            (Kind::B, Kind::B) => self.bb,
            _ => self.ab,
        }
    }
}

impl fmt::Display for CommutationSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if self.aa {
            parts.push("aa");
        }
        if self.ab {
            parts.push("ab");
        }
        if self.bb {
            parts.push("bb");
        }
        if parts.is_empty() {
            f.write_str("free")
        } else {
            f.write_str(&parts.join("+"))
        }
    }
}

/// Brings a word to normal form by stable insertion: scanning left to right,
/// each letter moves left past strictly greater letters it commutes with.
pub fn normalize_monomial(word: &[Generator], spec: &CommutationSpec) -> Vec<Generator> {
    let mut out: Vec<Generator> = Vec::with_capacity(word.len());
    for &g in word {
        push_normalized(&mut out, g, spec);
    }
    out
}

fn push_normalized(out: &mut Vec<Generator>, g: Generator, spec: &CommutationSpec) {
    let mut pos = out.len();
    while pos > 0 && out[pos - 1] > g && spec.commutes(out[pos - 1], g) {
        pos -= 1;
    }
    out.insert(pos, g);
}

/// A word in normal form.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(Vec<Generator>);

impl Monomial {
    pub fn new(word: &[Generator], spec: &CommutationSpec) -> Self {
        Self(normalize_monomial(word, spec))
    }

    pub fn unit() -> Self {
        Self(Vec::new())
    }

    pub fn letters(&self) -> &[Generator] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    /// Concatenation followed by normalization. `self` is already normal, so
    /// only the letters of `other` need inserting.
    pub fn mul(&self, other: &Monomial, spec: &CommutationSpec) -> Monomial {
        let mut out = Vec::with_capacity(self.0.len() + other.0.len());
        out.extend_from_slice(&self.0);
        for &g in &other.0 {
            push_normalized(&mut out, g, spec);
        }
        Monomial(out)
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{g}")?;
        }
        Ok(())
    }
}

/// Finite `ℤ`-linear combination of normal-form monomials. No stored
/// coefficient is zero, and the map order is the canonical term order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FreePoly {
    spec: CommutationSpec,
    terms: BTreeMap<Monomial, BigInt>,
}

impl FreePoly {
    pub fn zero(spec: CommutationSpec) -> Self {
        Self {
            spec,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(spec: CommutationSpec, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(spec);
        p.add_term(Monomial::unit(), c.into());
        p
    }

    pub fn one(spec: CommutationSpec) -> Self {
        Self::constant(spec, 1)
    }

    pub fn generator(spec: CommutationSpec, g: Generator) -> Self {
        Self::monomial(spec, &[g], 1)
    }

    pub fn monomial(spec: CommutationSpec, word: &[Generator], c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(spec);
        p.add_term(Monomial::new(word, &spec), c.into());
        p
    }

    pub fn spec(&self) -> CommutationSpec {
        self.spec
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, m: &Monomial) -> BigInt {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    /// Adds `c·m`; `m` must already be in normal form for this spec.
    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn add_assign_unchecked(&mut self, other: &FreePoly) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &BigInt) -> FreePoly {
        let mut out = FreePoly::zero(self.spec);
        for (m, k) in &self.terms {
            out.add_term(m.clone(), k * c);
        }
        out
    }

    pub fn neg(&self) -> FreePoly {
        FreePoly {
            spec: self.spec,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    /// Reverses every word and renormalizes. This is the identity map viewed
    /// as an isomorphism onto the opposite algebra.
    pub fn reversed(&self) -> FreePoly {
        let mut out = FreePoly::zero(self.spec);
        for (m, c) in &self.terms {
            let mut w = m.0.clone();
            w.reverse();
            out.add_term(Monomial::new(&w, &self.spec), c.clone());
        }
        out
    }

    /// Applies a letter substitution `g ↦ f(g)` to every word.
    pub fn map_letters(&self, f: impl Fn(Generator) -> Generator) -> FreePoly {
        let mut out = FreePoly::zero(self.spec);
        for (m, c) in &self.terms {
            let w: Vec<_> = m.0.iter().map(|&g| f(g)).collect();
            out.add_term(Monomial::new(&w, &self.spec), c.clone());
        }
        out
    }
}

impl fmt::Display for FreePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let negative = c.is_negative();
            match (i, negative) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let mag = c.abs();
            if m.0.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{m}")?;
            } else {
                write!(f, "{mag} {m}")?;
            }
        }
        Ok(())
    }
}

fn check_spec(p: &FreePoly, q: &FreePoly) -> Result<()> {
    if p.spec != q.spec {
        return Err(Error::SpecMismatch);
    }
    Ok(())
}

pub fn poly_add(p: &FreePoly, q: &FreePoly) -> Result<FreePoly> {
    check_spec(p, q)?;
    let (big, small) = if p.len() >= q.len() { (p, q) } else { (q, p) };
    let mut out = big.clone();
    out.add_assign_unchecked(small);
    Ok(out)
}

/// Bilinear extension of word concatenation, each product renormalized.
pub fn poly_mul(p: &FreePoly, q: &FreePoly) -> Result<FreePoly> {
    check_spec(p, q)?;
    let spec = p.spec;
    let mul_row = |(m1, c1): (&Monomial, &BigInt)| {
        let mut part = FreePoly::zero(spec);
        for (m2, c2) in &q.terms {
            part.add_term(m1.mul(m2, &spec), c1 * c2);
        }
        part
    };
    if p.len().saturating_mul(q.len()) < PAR_MUL_THRESHOLD {
        let mut out = FreePoly::zero(spec);
        for term in &p.terms {
            out.add_assign_unchecked(&mul_row(term));
        }
        return Ok(out);
    }
    // Exact integer sums make the merge order irrelevant to the result.
    let terms: Vec<_> = p.terms.iter().collect();
    Ok(terms.into_par_iter().map(mul_row).reduce(
        || FreePoly::zero(spec),
        |mut a, b| {
            a.add_assign_unchecked(&b);
            a
        },
    ))
}

/// The ring handle for [`FreePoly`] under a fixed commutation spec.
/// `sample_n` bounds the indices of generators drawn by `random_element`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FreeAlgebra {
    spec: CommutationSpec,
    sample_n: usize,
}

impl FreeAlgebra {
    pub fn new(spec: CommutationSpec, sample_n: usize) -> Self {
        Self {
            spec,
            sample_n: sample_n.max(1),
        }
    }

    pub fn spec(&self) -> CommutationSpec {
        self.spec
    }

    pub fn gen(&self, g: Generator) -> FreePoly {
        FreePoly::generator(self.spec, g)
    }

    /// The `n × n` matrix whose `(i,j)` entry is the generator of `kind` at `(i+1, j+1)`.
    pub fn symbolic_matrix(&self, kind: Kind, n: usize) -> Matrix<FreePoly> {
        Matrix::from_fn(n, |i, j| self.gen(Generator::new(kind, i + 1, j + 1)))
    }
}

impl Ring for FreeAlgebra {
    type Elem = FreePoly;

    fn descriptor(&self) -> String {
        format!("freealg:{}", self.spec)
    }

    fn is_commutative(&self) -> bool {
        self.spec.is_fully_commuting()
    }

    fn is_finite(&self) -> bool {
        false
    }

    fn zero(&self) -> FreePoly {
        FreePoly::zero(self.spec)
    }

    fn one(&self) -> FreePoly {
        FreePoly::one(self.spec)
    }

    fn from_i64(&self, value: i64) -> FreePoly {
        FreePoly::constant(self.spec, value)
    }

    fn add(&self, a: &FreePoly, b: &FreePoly) -> FreePoly {
        poly_add(a, b).expect("operands from this algebra")
    }

    fn neg(&self, a: &FreePoly) -> FreePoly {
        a.neg()
    }

    fn mul(&self, a: &FreePoly, b: &FreePoly) -> FreePoly {
        poly_mul(a, b).expect("operands from this algebra")
    }

    fn validate(&self, a: &FreePoly) -> Result<()> {
        if a.spec != self.spec {
            return Err(Error::SpecMismatch);
        }
        Ok(())
    }

    // The algebra is graded with no zero divisors in top degree, so the
    // units are the constants ±1.
    fn try_invert(&self, x: &FreePoly) -> Result<Option<FreePoly>> {
        self.validate(x)?;
        let c = x.coefficient(&Monomial::unit());
        Ok((x.len() == 1 && c.abs().is_one()).then(|| x.clone()))
    }

    fn random_element<G: RandRng + ?Sized>(&self, rng: &mut G) -> FreePoly {
        let mut p = self.zero();
        for _ in 0..rng.gen_range(0..=3) {
            let len = rng.gen_range(0..=3);
            let word: Vec<_> = (0..len)
                .map(|_| {
                    let kind = if rng.gen_bool(0.5) { Kind::A } else { Kind::B };
                    Generator::new(
                        kind,
                        rng.gen_range(1..=self.sample_n),
                        rng.gen_range(1..=self.sample_n),
                    )
                })
                .collect();
            p.add_term(
                Monomial::new(&word, &self.spec),
                BigInt::from(rng.gen_range(-3i64..=3)),
            );
        }
        p
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(i: usize, j: usize) -> Generator {
        Generator::a(i, j)
    }

    fn b(i: usize, j: usize) -> Generator {
        Generator::b(i, j)
    }

    #[test]
    fn regroups_commuting_a_entries() {
        let spec = CommutationSpec::proof_replay();
        assert_eq!(
            normalize_monomial(&[a(2, 1), a(1, 1), b(1, 1), b(1, 2)], &spec),
            vec![a(1, 1), a(2, 1), b(1, 1), b(1, 2)]
        );
    }

    #[test]
    fn a_and_b_never_swap() {
        let spec = CommutationSpec::proof_replay();
        assert_eq!(
            normalize_monomial(&[b(1, 1), a(1, 1)], &spec),
            vec![b(1, 1), a(1, 1)]
        );
        assert_eq!(normalize_monomial(&[], &spec), vec![]);
    }

    #[test]
    fn a_runs_separated_by_b_sort_independently() {
        let spec = CommutationSpec::proof_replay();
        let w = [a(2, 2), a(1, 2), b(2, 1), a(2, 1), a(1, 1)];
        assert_eq!(
            normalize_monomial(&w, &spec),
            vec![a(1, 2), a(2, 2), b(2, 1), a(1, 1), a(2, 1)]
        );
    }

    #[test]
    fn add_identity_and_cancellation() {
        let spec = CommutationSpec::proof_replay();
        let p = FreePoly::monomial(spec, &[a(1, 1), b(1, 1)], 3);
        assert_eq!(poly_add(&p, &FreePoly::zero(spec)).unwrap(), p);
        assert!(poly_add(&p, &p.neg()).unwrap().is_zero());
    }

    #[test]
    fn d11_is_two_terms() {
        let spec = CommutationSpec::proof_replay();
        let d11 = poly_add(
            &FreePoly::monomial(spec, &[a(1, 1), b(1, 1)], 1),
            &FreePoly::monomial(spec, &[a(1, 2), b(2, 1)], 1),
        )
        .unwrap();
        assert_eq!(d11.len(), 2);
        assert_eq!(d11.to_string(), "a11 b11 + a12 b21");
    }

    #[test]
    fn sandwich_product_normalizes() {
        let alg = FreeAlgebra::new(CommutationSpec::proof_replay(), 2);
        let spec = alg.spec();
        let d11 = poly_add(
            &FreePoly::monomial(spec, &[a(1, 1), b(1, 1)], 1),
            &FreePoly::monomial(spec, &[a(1, 2), b(2, 1)], 1),
        )
        .unwrap();
        let p = alg.mul(&alg.mul(&alg.gen(a(2, 1)), &d11), &alg.gen(b(1, 2)));
        let expected = poly_add(
            &FreePoly::monomial(spec, &[a(1, 1), a(2, 1), b(1, 1), b(1, 2)], 1),
            &FreePoly::monomial(spec, &[a(1, 2), a(2, 1), b(2, 1), b(1, 2)], 1),
        )
        .unwrap();
        assert_eq!(p, expected);
        assert_eq!(alg.mul(&p, &alg.one()), p);
    }

    #[test]
    fn b_entries_do_not_commute() {
        let alg = FreeAlgebra::new(CommutationSpec::proof_replay(), 2);
        let x = alg.mul(&alg.gen(b(1, 1)), &alg.gen(b(2, 2)));
        let y = alg.mul(&alg.gen(b(2, 2)), &alg.gen(b(1, 1)));
        assert_ne!(x, y);
    }

    #[test]
    fn spec_mismatch_is_an_error() {
        let p = FreePoly::one(CommutationSpec::proof_replay());
        let q = FreePoly::one(CommutationSpec::fully_commuting());
        assert_eq!(poly_add(&p, &q), Err(Error::SpecMismatch));
        assert_eq!(poly_mul(&p, &q), Err(Error::SpecMismatch));
    }

    #[test]
    fn rendering() {
        let spec = CommutationSpec::proof_replay();
        let mut p = FreePoly::monomial(spec, &[a(1, 1), a(2, 2)], 1);
        p.add_term(Monomial::new(&[a(1, 2), a(2, 1)], &spec), BigInt::from(-1));
        assert_eq!(p.to_string(), "a11 a22 - a12 a21");
        assert_eq!(FreePoly::zero(spec).to_string(), "0");
        assert_eq!(FreePoly::constant(spec, -2).to_string(), "-2");
        let q = FreePoly::monomial(spec, &[b(1, 1)], 3);
        assert_eq!(q.to_string(), "3 b11");
    }

    #[test]
    fn units_are_plus_minus_one() {
        let alg = FreeAlgebra::new(CommutationSpec::proof_replay(), 2);
        assert!(alg.try_invert(&alg.from_i64(-1)).unwrap().is_some());
        assert!(alg.try_invert(&alg.from_i64(2)).unwrap().is_none());
        assert!(alg.try_invert(&alg.gen(a(1, 1))).unwrap().is_none());
    }
}
