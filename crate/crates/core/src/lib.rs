//! Exact computation with union-closed set families on small ground sets.
//!
//! Subsets are bitmasks ([`SubsetMask`]) over a [`GroundSet`] of at most 16 elements.
//! The modules build on each other:
//!
//! * [`setfam`]: families, closure, extremes, upsets, ideals, join-irreducibles;
//! * [`rising`]: the rising operator along a word, star closure, fibers, `U(F)`;
//! * [`accounting`]: spurious/pure sets, their hyper variants, covering sets;
//! * [`bounds`]: Frankl witnesses, localized average bounds, removal traces;
//! * [`antichain`]: shade, first upward level, augmenting maps, symmetric chains;
//! * [`harness`]: enumeration, sampling and the verification suite.

pub mod accounting;
pub mod antichain;
pub mod bounds;
pub mod error;
pub mod harness;
pub mod rising;
pub mod setfam;

pub use error::{Error, Result};
pub use setfam::{GroundSet, SetFamily, SubsetMask, Word};

/// Exact rational arithmetic used throughout.
pub type Rational = num_rational::Ratio<i64>;

pub(crate) fn ser_rational<S: serde::Serializer>(r: &Rational, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&r.to_string())
}

/// One named statement evaluated on a concrete input.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
pub struct Assertion {
    pub name: String,
    pub holds: bool,
}

impl Assertion {
    pub fn new(name: impl Into<String>, holds: bool) -> Self {
        Assertion { name: name.into(), holds }
    }
}

/// The first failing entry, if any.
pub fn first_failure(list: &[Assertion]) -> Option<&Assertion> {
    list.iter().find(|a| !a.holds)
}
