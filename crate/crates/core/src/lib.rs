//! Exact arithmetic in the reciprocal complement of a polynomial ring over the
//! rationals: reciprocal sums, the variable-inverting involution, valuations
//! and executable certificates.

pub mod certificates;
pub mod cli;
pub mod error;
pub mod kernel;
pub mod recip;
pub mod valuation;

pub use error::{Error, Result};
pub use kernel::{gcd, normalize_fraction, Polynomial, Rational, RationalFunction};
pub use recip::RecipSum;
pub use valuation::{value, ValuationSpec, Value};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/kernel.md")]
    mod kernel {}
    #[doc = include_str!("../../../book/src/reciprocal-sums.md")]
    mod reciprocal_sums {}
    #[doc = include_str!("../../../book/src/involution.md")]
    mod involution {}
    #[doc = include_str!("../../../book/src/valuations.md")]
    mod valuations {}
    #[doc = include_str!("../../../book/src/certificates.md")]
    mod certificates {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
