//! Exact numerator/denominator pairs of partition-reciprocal sums.
//!
//! For a class of partitions (ordinary, odd, binary or ternary) the crate
//! computes the reduced pair `num(n, x) / den(n, x)` of
//! `sum 1 / prod_j (1 + x^{lambda_j})` over the partitions `lambda` of `n`,
//! and checks the arithmetic statements made about these pairs: coprimality,
//! cyclotomic non-divisibility, special values at `x = -1` and `x = 1`, and a
//! recurrence, together with empirical coefficient-shape checks.
//!
//! ```
//! use subsum::{reduced_pair, IntPoly, PartitionClass};
//!
//! let pair = reduced_pair(4, PartitionClass::Ordinary).unwrap();
//! assert_eq!(pair.num, IntPoly::from_i64s(&[5, 8, 15, 14, 24, 20, 24, 14, 15, 8, 5]));
//! assert_eq!(pair.g_expanded(), IntPoly::from_i64s(&[1, 1]));
//! ```

pub mod cyclotomic;
pub mod intpoly;
pub mod partitions;
pub mod subsum;
pub mod verify;

pub use cyclotomic::{phi, CycloExponentVector, FactoredBinomialProduct};
pub use intpoly::{gcd_primitive, IntPoly, LogConcavity, ModPVerdict, PolyError};
pub use partitions::{enumerate, MultiplicityMap, Partition, PartitionClass};
pub use subsum::{reduced_pair, reduced_pair_with, Engine, ReducedPair, SubsumError};

// The guide's snippets run as doctests so the book cannot drift from the code.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub struct Introduction;
    #[doc = include_str!("../../../book/src/partitions.md")]
    pub struct Partitions;
    #[doc = include_str!("../../../book/src/polynomials.md")]
    pub struct Polynomials;
    #[doc = include_str!("../../../book/src/cyclotomic.md")]
    pub struct Cyclotomic;
    #[doc = include_str!("../../../book/src/reduction.md")]
    pub struct Reduction;
    #[doc = include_str!("../../../book/src/verification.md")]
    pub struct Verification;
}
