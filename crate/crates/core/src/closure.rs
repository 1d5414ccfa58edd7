//! Subring closures inside a finite ring.
//!
//! For finite `S` every unit has finite multiplicative order, so `u⁻¹` is a
//! power of `u` and lies in any subring containing `u`. Consequently
//! `RT⁻¹`, the division closure and the bounded rational closure all
//! collapse to `R` itself. The report computes each set independently
//! anyway and records the comparisons; that collapse is the expected
//! (degenerate) outcome on these instances.

use std::collections::{BTreeSet, HashMap};

use rand::{Rng as _, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::ring::{finite_unit_inverse_by_powers, Ring};

/// Index of an element in a [`FiniteRingTable`].
pub type Ix = u32;

pub type ElemSet = BTreeSet<Ix>;

/// Tables larger than this are refused.
pub const MAX_TABLE: usize = 4096;

/// Exhaustive axiom validation is used up to this many triples; past it a
/// fixed-seed sample of the same size is checked instead.
const EXHAUSTIVE_TRIPLES: usize = 1 << 20;

/// Default cap on the number of candidate matrices for the bounded
/// rational closure.
pub const DEFAULT_BUDGET: u128 = 1 << 20;

#[derive(Clone, Debug)]
pub struct FiniteRingTable<R: Ring> {
    ring: R,
    elems: Vec<R::Elem>,
    index: HashMap<R::Elem, Ix>,
    add: Vec<Ix>,
    mul: Vec<Ix>,
    neg: Vec<Ix>,
    inv: Vec<Option<Ix>>,
    zero: Ix,
    one: Ix,
}

impl<R: Ring> FiniteRingTable<R> {
    /// Tabulates a finite ring and validates the tables: ring axioms on all
    /// (or sampled) triples, and agreement of the unit table with both
    /// `try_invert` and the power-walk inverse.
    pub fn build(ring: R) -> Result<Self> {
        if !ring.is_finite() {
            return Err(Error::NotFinite(ring.descriptor()));
        }
        let elems = ring
            .elements()
            .ok_or_else(|| Error::NotFinite(ring.descriptor()))?;
        if elems.len() > MAX_TABLE {
            return Err(Error::BudgetExceeded {
                required: elems.len() as u128,
                budget: MAX_TABLE as u128,
            });
        }
        let index: HashMap<R::Elem, Ix> = elems
            .iter()
            .enumerate()
            .map(|(i, e)| (e.clone(), i as Ix))
            .collect();
        if index.len() != elems.len() {
            return Err(Error::Unsupported(format!(
                "{} has no canonical element form",
                ring.descriptor()
            )));
        }
        let size = elems.len();
        let lookup = |e: &R::Elem| -> Result<Ix> {
            index
                .get(e)
                .copied()
                .ok_or_else(|| Error::Unsupported("operation left the element list".into()))
        };
        let mut add = Vec::with_capacity(size * size);
        let mut mul = Vec::with_capacity(size * size);
        for a in &elems {
            for b in &elems {
                add.push(lookup(&ring.add(a, b))?);
                mul.push(lookup(&ring.mul(a, b))?);
            }
        }
        let neg = elems
            .iter()
            .map(|a| lookup(&ring.neg(a)))
            .collect::<Result<Vec<_>>>()?;
        let zero = lookup(&ring.zero())?;
        let one = lookup(&ring.one())?;
        let mut inv = Vec::with_capacity(size);
        for a in &elems {
            let oracle = ring.try_invert(a)?;
            let by_powers = finite_unit_inverse_by_powers(&ring, a)?;
            if oracle != by_powers {
                return Err(Error::Unsupported(format!(
                    "unit oracles disagree on an element of {}",
                    ring.descriptor()
                )));
            }
            inv.push(oracle.as_ref().map(&lookup).transpose()?);
        }
        let table = Self {
            ring,
            elems,
            index,
            add,
            mul,
            neg,
            inv,
            zero,
            one,
        };
        table.check_axioms()?;
        Ok(table)
    }

    fn check_axioms(&self) -> Result<()> {
        let size = self.len() as Ix;
        let fail = |what: &str| {
            Err(Error::Unsupported(format!(
                "{} violates {what}",
                self.ring.descriptor()
            )))
        };
        for a in 0..size {
            if self.add(a, self.zero) != a
                || self.mul(a, self.one) != a
                || self.mul(self.one, a) != a
            {
                return fail("unit laws");
            }
            if self.add(a, self.neg(a)) != self.zero {
                return fail("additive inverses");
            }
            if let Some(b) = self.inverse(a) {
                if self.mul(a, b) != self.one || self.mul(b, a) != self.one {
                    return fail("inverse table soundness");
                }
            }
        }
        let check = |a: Ix, b: Ix, c: Ix| {
            self.add(self.add(a, b), c) == self.add(a, self.add(b, c))
                && self.add(a, b) == self.add(b, a)
                && self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
                && self.mul(a, self.add(b, c)) == self.add(self.mul(a, b), self.mul(a, c))
                && self.mul(self.add(a, b), c) == self.add(self.mul(a, c), self.mul(b, c))
        };
        let n = self.len();
        if n.pow(3) <= EXHAUSTIVE_TRIPLES {
            for a in 0..size {
                for b in 0..size {
                    for c in 0..size {
                        if !check(a, b, c) {
                            return fail("ring axioms");
                        }
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(0);
            for _ in 0..EXHAUSTIVE_TRIPLES {
                let (a, b, c) = (
                    rng.gen_range(0..size),
                    rng.gen_range(0..size),
                    rng.gen_range(0..size),
                );
                if !check(a, b, c) {
                    return fail("ring axioms");
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> &R {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    pub fn element(&self, i: Ix) -> &R::Elem {
        &self.elems[i as usize]
    }

    pub fn index_of(&self, e: &R::Elem) -> Option<Ix> {
        self.index.get(e).copied()
    }

    pub fn zero(&self) -> Ix {
        self.zero
    }

    pub fn one(&self) -> Ix {
        self.one
    }

    pub fn add(&self, a: Ix, b: Ix) -> Ix {
        self.add[a as usize * self.len() + b as usize]
    }

    pub fn mul(&self, a: Ix, b: Ix) -> Ix {
        self.mul[a as usize * self.len() + b as usize]
    }

    pub fn neg(&self, a: Ix) -> Ix {
        self.neg[a as usize]
    }

    pub fn inverse(&self, a: Ix) -> Option<Ix> {
        self.inv[a as usize]
    }

    pub fn all(&self) -> ElemSet {
        (0..self.len() as Ix).collect()
    }

    pub fn is_subring(&self, set: &ElemSet) -> bool {
        set.contains(&self.zero)
            && set.contains(&self.one)
            && set.iter().all(|&a| {
                set.contains(&self.neg(a))
                    && set
                        .iter()
                        .all(|&b| set.contains(&self.add(a, b)) && set.contains(&self.mul(a, b)))
            })
    }

    pub fn is_commutative_set(&self, set: &ElemSet) -> bool {
        set.iter()
            .all(|&a| set.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Period of `a` under the power walk, if `a` is a unit: the least
    /// `p ≥ 1` with `a^p = 1`.
    pub fn unit_order(&self, a: Ix) -> Option<u64> {
        self.inverse(a)?;
        let mut x = a;
        let mut p = 1;
        while x != self.one {
            x = self.mul(x, a);
            p += 1;
        }
        Some(p)
    }
}

/// Least subset containing `gens`, `0` and `1`, closed under `+`, `−`, `·`.
pub fn generated_subring<R: Ring>(gens: &ElemSet, s: &FiniteRingTable<R>) -> ElemSet {
    let mut set: ElemSet = gens.clone();
    set.insert(s.zero());
    set.insert(s.one());
    let mut frontier: Vec<Ix> = set.iter().copied().collect();
    while let Some(a) = frontier.pop() {
        let members: Vec<Ix> = set.iter().copied().collect();
        let mut fresh = vec![s.neg(a)];
        for b in members {
            fresh.extend([s.add(a, b), s.mul(a, b), s.mul(b, a)]);
        }
        for x in fresh {
            if set.insert(x) {
                frontier.push(x);
            }
        }
    }
    set
}

/// `{t ∈ R : t is a unit of S}`.
pub fn unit_denominators<R: Ring>(r: &ElemSet, s: &FiniteRingTable<R>) -> ElemSet {
    r.iter()
        .copied()
        .filter(|&t| s.inverse(t).is_some())
        .collect()
}

/// `{r·t⁻¹ : r ∈ R, t ∈ T}`.
pub fn rt_inverse<R: Ring>(r: &ElemSet, t: &ElemSet, s: &FiniteRingTable<R>) -> ElemSet {
    let mut out = ElemSet::new();
    for &x in r {
        for &d in t {
            out.insert(s.mul(x, s.inverse(d).expect("T holds units")));
        }
    }
    out
}

/// Least subring containing `R` that holds the inverse of each of its
/// elements that is a unit of `S`. Returns the set and the number of
/// inverse-adjunction rounds that added something.
pub fn division_closure<R: Ring>(r: &ElemSet, s: &FiniteRingTable<R>) -> (ElemSet, usize) {
    let mut d = generated_subring(r, s);
    let mut rounds = 0;
    loop {
        let inverses: ElemSet = d.iter().filter_map(|&x| s.inverse(x)).collect();
        if inverses.is_subset(&d) {
            return (d, rounds);
        }
        rounds += 1;
        d.extend(inverses);
        d = generated_subring(&d, s);
    }
}

/// Number of candidate matrices `Σ_{n ≤ N} |R|^{n²}`.
pub fn rational_closure_cost(r_size: usize, max_n: usize) -> u128 {
    (1..=max_n)
        .map(|n| {
            (r_size as u128)
                .checked_pow((n * n) as u32)
                .unwrap_or(u128::MAX)
        })
        .fold(0u128, |a, b| a.saturating_add(b))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalClosure {
    pub max_n: usize,
    pub set: ElemSet,
    /// Whether the size-`N` matrices contributed entries beyond sizes `< N`.
    pub grew_at_max: bool,
}

/// Entries of `A⁻¹` for every `A ∈ Mat_n(R)`, `n ≤ N`, invertible over `S`.
///
/// Inverses over `Mat_n(S)` are found by walking powers of `A`: the matrix
/// ring is finite, so a unit satisfies `A^p = I` and `A⁻¹ = A^{p-1}`.
pub fn rational_closure_bounded<R: Ring>(
    r: &ElemSet,
    s: &FiniteRingTable<R>,
    max_n: usize,
    budget: u128,
) -> Result<RationalClosure> {
    let required = rational_closure_cost(r.len(), max_n);
    if required > budget {
        return Err(Error::BudgetExceeded { required, budget });
    }
    let r_list: Vec<Ix> = r.iter().copied().collect();
    let mut set = ElemSet::new();
    let mut grew_at_max = false;
    for n in 1..=max_n {
        let before = set.len();
        let cells = n * n;
        let mut digits = vec![0usize; cells];
        'enumerate: loop {
            let a: Vec<Ix> = digits.iter().map(|&d| r_list[d]).collect();
            if let Some(inv) = matrix_inverse_by_powers(s, n, &a) {
                set.extend(inv);
            }
            let mut pos = cells;
            loop {
                if pos == 0 {
                    break 'enumerate;
                }
                pos -= 1;
                digits[pos] += 1;
                if digits[pos] < r_list.len() {
                    break;
                }
                digits[pos] = 0;
            }
        }
        grew_at_max = set.len() > before;
    }
    Ok(RationalClosure {
        max_n,
        set,
        grew_at_max,
    })
}

fn mat_mul<R: Ring>(s: &FiniteRingTable<R>, n: usize, a: &[Ix], b: &[Ix]) -> Vec<Ix> {
    let mut out = vec![s.zero(); n * n];
    for i in 0..n {
        for j in 0..n {
            let mut acc = s.zero();
            for k in 0..n {
                acc = s.add(acc, s.mul(a[i * n + k], b[k * n + j]));
            }
            out[i * n + j] = acc;
        }
    }
    out
}

/// Two-sided inverse of `a` in `Mat_n(S)` by the power walk, or `None`.
pub fn matrix_inverse_by_powers<R: Ring>(
    s: &FiniteRingTable<R>,
    n: usize,
    a: &[Ix],
) -> Option<Vec<Ix>> {
    let id: Vec<Ix> = (0..n * n)
        .map(|i| if i / n == i % n { s.one() } else { s.zero() })
        .collect();
    let mut seen: std::collections::HashSet<Vec<Ix>> = std::collections::HashSet::new();
    let mut prev = id.clone();
    let mut power = a.to_vec();
    loop {
        if power == id {
            return Some(prev);
        }
        if !seen.insert(power.clone()) {
            return None;
        }
        prev = power;
        power = mat_mul(s, n, &prev, a);
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatReport {
    #[serde(rename = "N")]
    pub n: usize,
    pub set: Vec<Ix>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClosureChecks {
    pub rt_subset_d: bool,
    pub eq1_holds: bool,
    pub r_commutative: bool,
    pub d_subset_rat_union_d: bool,
    pub rat_subset_rt: bool,
    pub rt_is_subring: bool,
    pub rt_is_commutative: bool,
    pub d_converged: bool,
    pub rat_grew_at_n: bool,
    /// Every closure equals `R`, as forced by finiteness.
    pub degenerate: bool,
}

/// Serialized as `{ "ring", "R", "T", "RTinv", "D", "Rat": {"N", "set"}, "checks" }`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SubsetReport {
    pub ring: String,
    #[serde(rename = "R")]
    pub r: Vec<Ix>,
    #[serde(rename = "T")]
    pub t: Vec<Ix>,
    #[serde(rename = "RTinv")]
    pub rt_inv: Vec<Ix>,
    #[serde(rename = "D")]
    pub d: Vec<Ix>,
    #[serde(rename = "Rat")]
    pub rat: RatReport,
    pub regime: String,
    pub checks: ClosureChecks,
}

impl SubsetReport {
    /// The containments that must hold for every instance, plus the
    /// equalities that must hold when `R` is commutative.
    pub fn consistent(&self) -> bool {
        let c = &self.checks;
        c.rt_subset_d
            && c.d_subset_rat_union_d
            && (!c.r_commutative || (c.eq1_holds && c.rt_is_commutative))
    }
}

pub fn closure_report<R: Ring>(
    gens: &ElemSet,
    s: &FiniteRingTable<R>,
    max_n: usize,
    budget: u128,
) -> Result<SubsetReport> {
    let r = generated_subring(gens, s);
    let t = unit_denominators(&r, s);
    let rt = rt_inverse(&r, &t, s);
    let (d, _rounds) = division_closure(&r, s);
    let rat = rational_closure_bounded(&r, s, max_n, budget)?;
    let r_commutative = s.is_commutative_set(&r);
    let rat_union_d: ElemSet = rat.set.union(&d).copied().collect();
    let rat_subset_rt = rat.set.is_subset(&rt);
    let checks = ClosureChecks {
        rt_subset_d: rt.is_subset(&d),
        eq1_holds: rt == d && rat_subset_rt,
        r_commutative,
        d_subset_rat_union_d: d.is_subset(&rat_union_d),
        rat_subset_rt,
        rt_is_subring: s.is_subring(&rt),
        rt_is_commutative: s.is_commutative_set(&rt),
        // The fixpoint loop only returns once no new inverse appears.
        d_converged: d
            .iter()
            .all(|&x| s.inverse(x).is_none_or(|y| d.contains(&y))),
        rat_grew_at_n: rat.grew_at_max,
        degenerate: rt == r && d == r && rat.set.is_subset(&r),
    };
    Ok(SubsetReport {
        ring: s.ring().descriptor(),
        r: r.into_iter().collect(),
        t: t.into_iter().collect(),
        rt_inv: rt.into_iter().collect(),
        d: d.into_iter().collect(),
        rat: RatReport {
            n: max_n,
            set: rat.set.into_iter().collect(),
        },
        regime: "finite ring: inverses are powers, so every closure collapses to R".into(),
        checks,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrix::Matrix;
    use crate::rings::{MatRing, Zmod};

    fn z6() -> FiniteRingTable<Zmod> {
        FiniteRingTable::build(Zmod::new(6).unwrap()).unwrap()
    }

    fn m2z2() -> FiniteRingTable<MatRing<Zmod>> {
        FiniteRingTable::build(MatRing::new(2, Zmod::new(2).unwrap()).unwrap()).unwrap()
    }

    fn ix<R: Ring<Elem = Matrix<u64>>>(s: &FiniteRingTable<R>, rows: [[u64; 2]; 2]) -> Ix {
        s.index_of(&Matrix::from_rows(rows.iter().map(|r| r.to_vec()).collect()).unwrap())
            .unwrap()
    }

    #[test]
    fn prime_subring_of_z6_is_everything() {
        let s = z6();
        assert_eq!(generated_subring(&ElemSet::new(), &s), s.all());
        assert_eq!(generated_subring(&[1].into(), &s), s.all());
    }

    #[test]
    fn units_of_z6() {
        let s = z6();
        assert_eq!(unit_denominators(&s.all(), &s), [1, 5].into());
        assert_eq!(unit_denominators(&[0, 1].into(), &s), [1].into());
    }

    #[test]
    fn nilpotent_generates_dual_numbers_mod_two() {
        let s = m2z2();
        let e = ix(&s, [[0, 1], [0, 0]]);
        let r = generated_subring(&[e].into(), &s);
        let expected: ElemSet = [
            ix(&s, [[0, 0], [0, 0]]),
            ix(&s, [[1, 0], [0, 1]]),
            e,
            ix(&s, [[1, 1], [0, 1]]),
        ]
        .into();
        assert_eq!(r, expected);
        let t = unit_denominators(&r, &s);
        assert_eq!(
            t,
            [ix(&s, [[1, 0], [0, 1]]), ix(&s, [[1, 1], [0, 1]])].into()
        );
        assert_eq!(rt_inverse(&r, &[s.one()].into(), &s), r);
    }

    #[test]
    fn budget_is_enforced() {
        let s = z6();
        let err = rational_closure_bounded(&s.all(), &s, 3, DEFAULT_BUDGET).unwrap_err();
        assert_eq!(
            err,
            Error::BudgetExceeded {
                required: 6 + 6u128.pow(4) + 6u128.pow(9),
                budget: DEFAULT_BUDGET
            }
        );
    }

    #[test]
    fn one_by_one_rational_closure_contains_inverses() {
        let s = z6();
        let rat = rational_closure_bounded(&s.all(), &s, 1, DEFAULT_BUDGET).unwrap();
        assert!(rat.set.contains(&5) && rat.set.contains(&1));
    }

    #[test]
    fn infinite_rings_are_refused() {
        assert!(FiniteRingTable::build(crate::rings::Integers).is_err());
    }

    #[test]
    fn unit_orders() {
        let s = z6();
        assert_eq!(s.unit_order(5), Some(2));
        assert_eq!(s.unit_order(1), Some(1));
        assert_eq!(s.unit_order(2), None);
    }
}
