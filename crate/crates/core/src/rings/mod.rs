//! Concrete rings.

pub mod any;
pub mod dual;
pub mod frac;
pub mod int;
pub mod matring;
pub mod zmod;

pub use any::{AnyElem, AnyRing};
pub use dual::{Dual, DualNumbers};
pub use frac::{DenomPredicate, Fraction, Localization};
pub use int::Integers;
pub use matring::MatRing;
pub use zmod::Zmod;
