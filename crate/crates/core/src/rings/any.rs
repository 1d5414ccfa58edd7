//! Runtime-selected rings, built from ring-spec strings.
//!
//! ```text
//! spec := "int" | "zmod:<m>" | "mat:<k>:<spec>" | "dualnum:<spec>" | "frac:<spec>"
//! ```
//!
//! Entries are encoded in JSON as integers (`int`, `zmod`), `k` nested rows
//! (`mat:k`), and pairs `[x, y]` (`dualnum` for `x·I + y·E`, `frac` for
//! `x/y`).

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use rand::Rng as RandRng;
use serde_json::Value;

use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::ring::Ring;
use crate::rings::dual::{Dual, DualNumbers};
use crate::rings::frac::{DenomPredicate, Fraction, Localization};
use crate::rings::int::Integers;
use crate::rings::matring::MatRing;
use crate::rings::zmod::Zmod;

#[derive(Clone, Debug)]
pub enum AnyRing {
    Int(Integers),
    Zmod(Zmod),
    Mat(Box<MatRing<AnyRing>>),
    Dual(Box<DualNumbers<AnyRing>>),
    Frac(Box<Localization<AnyRing>>),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AnyElem {
    Int(BigInt),
    Zmod(u64),
    Mat(Matrix<AnyElem>),
    Dual(Box<Dual<AnyElem>>),
    Frac(Box<Fraction<AnyElem>>),
}

impl AnyElem {
    fn kind(&self) -> &'static str {
        match self {
            AnyElem::Int(_) => "int",
            AnyElem::Zmod(_) => "zmod",
            AnyElem::Mat(_) => "mat",
            AnyElem::Dual(_) => "dualnum",
            AnyElem::Frac(_) => "frac",
        }
    }

    pub fn as_int(&self) -> &BigInt {
        match self {
            AnyElem::Int(x) => x,
            other => panic!("expected an int element, found {}", other.kind()),
        }
    }

    pub fn as_zmod(&self) -> &u64 {
        match self {
            AnyElem::Zmod(x) => x,
            other => panic!("expected a zmod element, found {}", other.kind()),
        }
    }

    pub fn as_mat(&self) -> &Matrix<AnyElem> {
        match self {
            AnyElem::Mat(x) => x,
            other => panic!("expected a mat element, found {}", other.kind()),
        }
    }

    pub fn as_dual(&self) -> &Dual<AnyElem> {
        match self {
            AnyElem::Dual(x) => x,
            other => panic!("expected a dualnum element, found {}", other.kind()),
        }
    }

    pub fn as_frac(&self) -> &Fraction<AnyElem> {
        match self {
            AnyElem::Frac(x) => x,
            other => panic!("expected a frac element, found {}", other.kind()),
        }
    }
}

impl Eq for AnyRing {}

impl PartialEq for AnyRing {
    fn eq(&self, other: &Self) -> bool {
        self.descriptor() == other.descriptor()
    }
}

impl fmt::Display for AnyRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

impl FromStr for AnyRing {
    type Err = Error;

    fn from_str(spec: &str) -> Result<Self> {
        AnyRing::parse(spec)
    }
}

fn spec_err(spec: &str) -> Error {
    Error::RingSpec(spec.to_string())
}

impl AnyRing {
    pub fn parse(spec: &str) -> Result<Self> {
        let spec = spec.trim();
        if spec == "int" {
            return Ok(AnyRing::Int(Integers));
        }
        if let Some(m) = spec.strip_prefix("zmod:") {
            let m: u64 = m.parse().map_err(|_| spec_err(spec))?;
            return Ok(AnyRing::Zmod(Zmod::new(m)?));
        }
        if let Some(rest) = spec.strip_prefix("mat:") {
            let (k, inner) = rest.split_once(':').ok_or_else(|| spec_err(spec))?;
            let k: usize = k.parse().map_err(|_| spec_err(spec))?;
            let base = AnyRing::parse(inner)?;
            return Ok(AnyRing::Mat(Box::new(MatRing::new(k, base)?)));
        }
        if let Some(inner) = spec.strip_prefix("dualnum:") {
            return Ok(AnyRing::Dual(Box::new(DualNumbers::new(AnyRing::parse(
                inner,
            )?))));
        }
        if let Some(inner) = spec.strip_prefix("frac:") {
            let base = AnyRing::parse(inner)?;
            if !base.is_commutative() {
                return Err(Error::NotCommutative);
            }
            let pred = DenomPredicate::units_of(base.clone());
            return Ok(AnyRing::Frac(Box::new(Localization::new(base, pred))));
        }
        Err(spec_err(spec))
    }

    /// The image of an integer.
    pub fn from_bigint(&self, v: &BigInt) -> AnyElem {
        match self {
            AnyRing::Int(_) => AnyElem::Int(v.clone()),
            AnyRing::Zmod(r) => {
                let m = BigInt::from(r.modulus());
                let red = ((v % &m) + &m) % &m;
                AnyElem::Zmod(red.to_u64().unwrap())
            }
            AnyRing::Mat(r) => AnyElem::Mat(r.scalar(&r.base().from_bigint(v))),
            AnyRing::Dual(r) => AnyElem::Dual(Box::new(Dual {
                re: r.base().from_bigint(v),
                eps: r.base().zero(),
            })),
            AnyRing::Frac(r) => AnyElem::Frac(Box::new(r.embed(r.base().from_bigint(v)))),
        }
    }

    /// Maps `x ∈ from` into `self` along the canonical inclusion, when one of
    /// the supported inclusions applies: identity, `ℤ → anything`,
    /// `ℤ/m → ℤ/d` for `d | m`, `dualnum:B → mat:2:B`, and scalar inclusions
    /// into `mat`, `dualnum` and `frac`.
    pub fn embed_from(&self, from: &AnyRing, x: &AnyElem) -> Result<AnyElem> {
        if self == from {
            return Ok(x.clone());
        }
        match (from, self) {
            (AnyRing::Int(_), _) => return Ok(self.from_bigint(x.as_int())),
            (AnyRing::Zmod(a), AnyRing::Zmod(b)) if a.modulus() % b.modulus() == 0 => {
                return Ok(AnyElem::Zmod(x.as_zmod() % b.modulus()));
            }
            (AnyRing::Dual(d), AnyRing::Mat(m)) if m.k() == 2 => {
                let dx = x.as_dual();
                let re = m.base().embed_from(d.base(), &dx.re)?;
                let eps = m.base().embed_from(d.base(), &dx.eps)?;
                let zero = m.base().zero();
                return Ok(AnyElem::Mat(Matrix::from_vec(
                    2,
                    vec![re.clone(), eps, zero, re],
                )?));
            }
            _ => {}
        }
        match self {
            AnyRing::Mat(m) => Ok(AnyElem::Mat(m.scalar(&m.base().embed_from(from, x)?))),
            AnyRing::Dual(d) => Ok(AnyElem::Dual(Box::new(Dual {
                re: d.base().embed_from(from, x)?,
                eps: d.base().zero(),
            }))),
            AnyRing::Frac(f) => Ok(AnyElem::Frac(Box::new(
                f.embed(f.base().embed_from(from, x)?),
            ))),
            _ => Err(Error::Unsupported(format!("no inclusion {from} → {self}"))),
        }
    }

    /// Parses a denominator predicate for localizing `self`:
    /// `nonzero`, `powersof:<b>` (both over `int`), `units`, or
    /// `unitsof:<ring-spec>` (elements invertible in the named ambient ring).
    pub fn parse_denoms(&self, spec: &str) -> Result<DenomPredicate<AnyElem>> {
        let spec = spec.trim();
        let int_only =
            |what: &str| Error::Parse(format!("denominator predicate `{what}` needs ring int"));
        if spec == "nonzero" {
            if !matches!(self, AnyRing::Int(_)) {
                return Err(int_only(spec));
            }
            return Ok(lift_int_predicate(DenomPredicate::nonzero()));
        }
        if let Some(b) = spec.strip_prefix("powersof:") {
            if !matches!(self, AnyRing::Int(_)) {
                return Err(int_only(spec));
            }
            let b: BigInt = b
                .parse()
                .map_err(|_| Error::Parse(format!("bad base in `{spec}`")))?;
            if b == BigInt::from(0) {
                return Err(Error::Parse("powersof:0 is not a denominator set".into()));
            }
            return Ok(lift_int_predicate(DenomPredicate::powers_of(b)));
        }
        if spec == "units" {
            return Ok(DenomPredicate::units_of(self.clone()));
        }
        if let Some(s) = spec.strip_prefix("unitsof:") {
            let ambient = AnyRing::parse(s)?;
            ambient.embed_from(self, &self.one())?;
            let label = format!("unitsof:{}", ambient.descriptor());
            let (r1, s1) = (self.clone(), ambient.clone());
            let in_t = move |t: &AnyElem| {
                s1.embed_from(&r1, t)
                    .ok()
                    .is_some_and(|y| matches!(s1.try_invert(&y), Ok(Some(_))))
            };
            let in_t2 = in_t.clone();
            let one = self.one();
            // r·s ∈ T forces r itself to be a unit of the ambient ring.
            return Ok(DenomPredicate::new(label, in_t, move |r| {
                in_t2(r).then(|| one.clone())
            }));
        }
        Err(Error::Parse(format!(
            "unknown denominator predicate `{spec}`"
        )))
    }

    pub fn elem_from_json(&self, v: &Value) -> Result<AnyElem> {
        let bad = || Error::Parse(format!("`{v}` is not an element of {}", self.descriptor()));
        let elem = match self {
            AnyRing::Int(_) | AnyRing::Zmod(_) => {
                let Value::Number(n) = v else {
                    return Err(bad());
                };
                let big: BigInt = n.to_string().parse().map_err(|_| bad())?;
                match self {
                    // Residues must already be reduced, so files round-trip unchanged.
                    AnyRing::Zmod(r) => {
                        AnyElem::Zmod(big.to_u64().filter(|&v| v < r.modulus()).ok_or_else(bad)?)
                    }
                    _ => self.from_bigint(&big),
                }
            }
            AnyRing::Mat(m) => {
                let rows = v.as_array().ok_or_else(bad)?;
                let rows = rows
                    .iter()
                    .map(|row| {
                        row.as_array()
                            .ok_or_else(bad)?
                            .iter()
                            .map(|e| m.base().elem_from_json(e))
                            .collect::<Result<Vec<_>>>()
                    })
                    .collect::<Result<Vec<_>>>()?;
                AnyElem::Mat(Matrix::from_rows(rows).map_err(|_| bad())?)
            }
            AnyRing::Dual(d) => {
                let [x, y] = pair(v).ok_or_else(bad)?;
                AnyElem::Dual(Box::new(Dual {
                    re: d.base().elem_from_json(x)?,
                    eps: d.base().elem_from_json(y)?,
                }))
            }
            AnyRing::Frac(f) => {
                let [x, y] = pair(v).ok_or_else(bad)?;
                let num = f.base().elem_from_json(x)?;
                let den = f.base().elem_from_json(y)?;
                AnyElem::Frac(Box::new(f.fraction(num, den)?))
            }
        };
        self.validate(&elem)?;
        Ok(elem)
    }

    pub fn elem_to_json(&self, x: &AnyElem) -> Value {
        match self {
            AnyRing::Int(_) => Value::Number(x.as_int().to_string().parse().unwrap()),
            AnyRing::Zmod(_) => Value::from(*x.as_zmod()),
            AnyRing::Mat(m) => Value::Array(
                x.as_mat()
                    .rows()
                    .map(|row| Value::Array(row.iter().map(|e| m.base().elem_to_json(e)).collect()))
                    .collect(),
            ),
            AnyRing::Dual(d) => {
                let dx = x.as_dual();
                Value::Array(vec![
                    d.base().elem_to_json(&dx.re),
                    d.base().elem_to_json(&dx.eps),
                ])
            }
            AnyRing::Frac(f) => {
                let fx = x.as_frac();
                Value::Array(vec![
                    f.base().elem_to_json(fx.num()),
                    f.base().elem_to_json(fx.den()),
                ])
            }
        }
    }

    /// Compact rendering, identical to the JSON entry encoding.
    pub fn render(&self, x: &AnyElem) -> String {
        self.elem_to_json(x).to_string()
    }
}

fn pair(v: &Value) -> Option<[&Value; 2]> {
    match v.as_array()?.as_slice() {
        [x, y] => Some([x, y]),
        _ => None,
    }
}

fn lift_int_predicate(p: DenomPredicate<BigInt>) -> DenomPredicate<AnyElem> {
    let label = p.label().to_string();
    let p2 = p.clone();
    DenomPredicate::new(
        label,
        move |t: &AnyElem| matches!(t, AnyElem::Int(x) if p.accepts(x)),
        move |r: &AnyElem| match r {
            AnyElem::Int(x) => p2.cofactor(x).map(AnyElem::Int),
            _ => None,
        },
    )
}

macro_rules! dispatch {
    ($self:expr, $r:ident => $body:expr) => {
        match $self {
            AnyRing::Int($r) => $body,
            AnyRing::Zmod($r) => $body,
            AnyRing::Mat($r) => $body,
            AnyRing::Dual($r) => $body,
            AnyRing::Frac($r) => $body,
        }
    };
}

fn wrong_kind(ring: &AnyRing, x: &AnyElem) -> Error {
    Error::Parse(format!(
        "{} element used in ring {}",
        x.kind(),
        ring.descriptor()
    ))
}

impl Ring for AnyRing {
    type Elem = AnyElem;

    fn descriptor(&self) -> String {
        dispatch!(self, r => r.descriptor())
    }

    fn is_commutative(&self) -> bool {
        dispatch!(self, r => r.is_commutative())
    }

    fn is_finite(&self) -> bool {
        dispatch!(self, r => r.is_finite())
    }

    fn zero(&self) -> AnyElem {
        self.from_i64(0)
    }

    fn one(&self) -> AnyElem {
        self.from_i64(1)
    }

    fn from_i64(&self, value: i64) -> AnyElem {
        self.from_bigint(&BigInt::from(value))
    }

    fn add(&self, a: &AnyElem, b: &AnyElem) -> AnyElem {
        match self {
            AnyRing::Int(r) => AnyElem::Int(r.add(a.as_int(), b.as_int())),
            AnyRing::Zmod(r) => AnyElem::Zmod(r.add(a.as_zmod(), b.as_zmod())),
            AnyRing::Mat(r) => AnyElem::Mat(r.add(a.as_mat(), b.as_mat())),
            AnyRing::Dual(r) => AnyElem::Dual(Box::new(r.add(a.as_dual(), b.as_dual()))),
            AnyRing::Frac(r) => AnyElem::Frac(Box::new(r.add(a.as_frac(), b.as_frac()))),
        }
    }

    fn neg(&self, a: &AnyElem) -> AnyElem {
        match self {
            AnyRing::Int(r) => AnyElem::Int(r.neg(a.as_int())),
            AnyRing::Zmod(r) => AnyElem::Zmod(r.neg(a.as_zmod())),
            AnyRing::Mat(r) => AnyElem::Mat(r.neg(a.as_mat())),
            AnyRing::Dual(r) => AnyElem::Dual(Box::new(r.neg(a.as_dual()))),
            AnyRing::Frac(r) => AnyElem::Frac(Box::new(r.neg(a.as_frac()))),
        }
    }

    fn mul(&self, a: &AnyElem, b: &AnyElem) -> AnyElem {
        match self {
            AnyRing::Int(r) => AnyElem::Int(r.mul(a.as_int(), b.as_int())),
            AnyRing::Zmod(r) => AnyElem::Zmod(r.mul(a.as_zmod(), b.as_zmod())),
            AnyRing::Mat(r) => AnyElem::Mat(r.mul(a.as_mat(), b.as_mat())),
            AnyRing::Dual(r) => AnyElem::Dual(Box::new(r.mul(a.as_dual(), b.as_dual()))),
            AnyRing::Frac(r) => AnyElem::Frac(Box::new(r.mul(a.as_frac(), b.as_frac()))),
        }
    }

    fn elem_eq(&self, a: &AnyElem, b: &AnyElem) -> bool {
        match self {
            AnyRing::Int(r) => r.elem_eq(a.as_int(), b.as_int()),
            AnyRing::Zmod(r) => r.elem_eq(a.as_zmod(), b.as_zmod()),
            AnyRing::Mat(r) => r.elem_eq(a.as_mat(), b.as_mat()),
            AnyRing::Dual(r) => r.elem_eq(a.as_dual(), b.as_dual()),
            AnyRing::Frac(r) => r.elem_eq(a.as_frac(), b.as_frac()),
        }
    }

    fn validate(&self, a: &AnyElem) -> Result<()> {
        match (self, a) {
            (AnyRing::Int(r), AnyElem::Int(x)) => r.validate(x),
            (AnyRing::Zmod(r), AnyElem::Zmod(x)) => r.validate(x),
            (AnyRing::Mat(r), AnyElem::Mat(x)) => r.validate(x),
            (AnyRing::Dual(r), AnyElem::Dual(x)) => r.validate(x),
            (AnyRing::Frac(r), AnyElem::Frac(x)) => r.validate(x),
            _ => Err(wrong_kind(self, a)),
        }
    }

    fn try_invert(&self, x: &AnyElem) -> Result<Option<AnyElem>> {
        self.validate(x)?;
        Ok(match self {
            AnyRing::Int(r) => r.try_invert(x.as_int())?.map(AnyElem::Int),
            AnyRing::Zmod(r) => r.try_invert(x.as_zmod())?.map(AnyElem::Zmod),
            AnyRing::Mat(r) => r.try_invert(x.as_mat())?.map(AnyElem::Mat),
            AnyRing::Dual(r) => r
                .try_invert(x.as_dual())?
                .map(|d| AnyElem::Dual(Box::new(d))),
            AnyRing::Frac(r) => r
                .try_invert(x.as_frac())?
                .map(|f| AnyElem::Frac(Box::new(f))),
        })
    }

    fn elements(&self) -> Option<Vec<AnyElem>> {
        match self {
            AnyRing::Int(_) | AnyRing::Frac(_) => None,
            AnyRing::Zmod(r) => Some(r.elements()?.into_iter().map(AnyElem::Zmod).collect()),
            AnyRing::Mat(r) => Some(r.elements()?.into_iter().map(AnyElem::Mat).collect()),
            AnyRing::Dual(r) => Some(
                r.elements()?
                    .into_iter()
                    .map(|d| AnyElem::Dual(Box::new(d)))
                    .collect(),
            ),
        }
    }

    fn random_element<G: RandRng + ?Sized>(&self, rng: &mut G) -> AnyElem {
        match self {
            AnyRing::Int(r) => AnyElem::Int(r.random_element(rng)),
            AnyRing::Zmod(r) => AnyElem::Zmod(r.random_element(rng)),
            AnyRing::Mat(r) => AnyElem::Mat(r.random_element(rng)),
            AnyRing::Dual(r) => AnyElem::Dual(Box::new(r.random_element(rng))),
            AnyRing::Frac(r) => AnyElem::Frac(Box::new(r.random_element(rng))),
        }
    }
}
