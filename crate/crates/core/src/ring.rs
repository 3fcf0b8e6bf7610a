//! Weight domain for generating functions: any commutative ring with a unit.
//!
//! The two instances shipped here are [`ExactInt`] (arbitrary-precision
//! integers, backed by `num_bigint::BigInt`) and [`ExactRational`]
//! (arbitrary-precision rationals, backed by `num_rational::BigRational`).
//! Every counting routine in this crate is generic over [`Ring`], so all
//! arithmetic stays exact end to end.

use std::fmt::Debug;
use std::ops::Sub;

use num_traits::{One, Zero};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Arbitrary-precision integer weight.
pub type ExactInt = BigInt;
/// Arbitrary-precision rational weight.
pub type ExactRational = BigRational;

/// Element of a commutative ring with a unit.
///
/// `Zero`/`One` provide the additive and multiplicative identities together
/// with `+` and `*`; subtraction gives the additive inverse. Commutativity
/// and distributivity are not expressible in the type system and are checked
/// by property tests instead.
pub trait Ring: Clone + PartialEq + Debug + Zero + One + Sub<Output = Self> {}

impl<T> Ring for T where T: Clone + PartialEq + Debug + Zero + One + Sub<Output = T> {}

/// Shorthand for an exact integer.
pub fn int(n: i64) -> ExactInt {
    ExactInt::from(n)
}

/// Shorthand for an exact rational `n/d`.
pub fn rational(n: i64, d: i64) -> ExactRational {
    ExactRational::new(n.into(), d.into())
}

/// Renders a rational losslessly: `a/b`, or plain `a` when the denominator
/// is one.
pub fn format_exact(r: &ExactRational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}
