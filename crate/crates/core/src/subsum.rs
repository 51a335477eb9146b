//! Subsum polynomials and the reduced numerator/denominator of the
//! partition-reciprocal sum
//!
//! ```text
//! sr_C(n, x) = sum over lambda in C(n) of 1 / sp(lambda, x),
//! sp(lambda, x) = prod_j (1 + x^{lambda_j}).
//! ```
//!
//! Over the common denominator `den* = prod_{i in A_C} (1 + x^i)^{floor(n/i)}`
//! each summand becomes `h_lambda = prod_i (1 + x^i)^{floor(n/i) - m_lambda(i)}`
//! and `num* = sum h_lambda`. Dividing both by `G = gcd(h_lambda)` gives the
//! reduced pair `(num, den)`.
//!
//! `num*` has two interchangeable engines. [`Engine::Dp`] runs a dynamic
//! program over the allowed parts and is the production path;
//! [`Engine::Enumerate`] folds over every partition and serves as the oracle.
//! `G` likewise has a closed-form fast path ([`big_g`]) and a brute-force
//! minimum over the enumerated summands ([`big_g_oracle`]).

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{self, CycloExponentVector, FactoredBinomialProduct};
use crate::intpoly::{IntPoly, PolyError};
use crate::partitions::{allowed_parts, enumerate, MultiplicityMap, Partition, PartitionClass};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SubsumError {
    #[error("multiplicities do not describe a {class} partition of {n}")]
    InvalidPartition { n: usize, class: PartitionClass },
    #[error("exact division failed while reducing n={n} ({class}): {source}")]
    NotDivisible {
        n: usize,
        class: PartitionClass,
        source: PolyError,
    },
    #[error("some sp(lambda, x0) vanishes at the requested point")]
    PoleAtX0,
    #[error("dp and enumeration engines disagree on num* for n={n} ({class})")]
    EngineDisagreement { n: usize, class: PartitionClass },
}

/// Strategy for accumulating the unreduced numerator.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Engine {
    /// Dynamic program over the allowed parts.
    #[default]
    Dp,
    /// Streaming fold over every partition.
    Enumerate,
    /// Both, failing on any disagreement.
    Both,
}

impl fmt::Display for Engine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Engine::Dp => "dp",
            Engine::Enumerate => "enumerate",
            Engine::Both => "both",
        })
    }
}

impl FromStr for Engine {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dp" => Ok(Engine::Dp),
            "enumerate" => Ok(Engine::Enumerate),
            "both" => Ok(Engine::Both),
            _ => Err(format!("unknown engine `{s}` (expected dp, enumerate or both)")),
        }
    }
}

/// `sp(lambda, x)`; the empty partition gives 1.
pub fn spol(p: &Partition) -> IntPoly {
    let mut out = IntPoly::one();
    for &part in p.parts() {
        out.mul_binomial_assign(part);
    }
    out
}

/// The unreduced common denominator in binomial form.
pub fn den_star(n: usize, class: PartitionClass) -> FactoredBinomialProduct {
    allowed_parts(class, n).into_iter().map(|i| (i, n / i)).collect()
}

/// `h_lambda` in binomial form, from the multiplicities of `lambda`.
pub fn h_factored(
    n: usize,
    class: PartitionClass,
    m: &MultiplicityMap,
) -> Result<FactoredBinomialProduct, SubsumError> {
    let invalid = || SubsumError::InvalidPartition { n, class };
    if m.weight() != n || m.iter().any(|(i, _)| !class.allows(i)) {
        return Err(invalid());
    }
    let mut out = FactoredBinomialProduct::new();
    for i in allowed_parts(class, n) {
        let e = (n / i).checked_sub(m.get(i)).ok_or_else(invalid)?;
        out.set(i, e);
    }
    Ok(out)
}

/// Exponent of `Phi_{2d}` in `G(n, x)` for ordinary partitions:
/// the sum of `floor(n / (d j))` over odd `j > 1`.
pub fn g_exponent_ordinary(n: usize, d: usize) -> usize {
    assert!(d >= 1, "d must be positive");
    (3..)
        .step_by(2)
        .map(|j| d * j)
        .take_while(|&dj| dj <= n)
        .map(|dj| n / dj)
        .sum()
}

/// `G_C(n, x)` in cyclotomic form, from the closed-form exponents.
pub fn big_g(n: usize, class: PartitionClass) -> CycloExponentVector {
    let mut g = CycloExponentVector::new();
    match class {
        PartitionClass::Ordinary => {
            for d in 1..=n {
                g.set(d, g_exponent_ordinary(n, d));
            }
        }
        // only odd d can divide an odd binomial; the sum is the same
        PartitionClass::Odd => {
            for d in (1..=n).step_by(2) {
                g.set(d, g_exponent_ordinary(n, d));
            }
        }
        PartitionClass::Binary => {}
        PartitionClass::Ternary => {
            let powers = allowed_parts(PartitionClass::Ternary, n);
            for (a, &d) in powers.iter().enumerate() {
                let e = powers[a + 1..].iter().map(|&q| n / q).sum();
                g.set(d, e);
            }
        }
    }
    g
}

/// `G_C(n, x)` as the entrywise minimum over every enumerated summand.
pub fn big_g_oracle(n: usize, class: PartitionClass) -> CycloExponentVector {
    let hs = enumerate(n, class).map(|p| {
        h_factored(n, class, &p.multiplicities())
            .expect("enumerated partitions are valid")
            .to_cyclo_exponents()
    });
    cyclotomic::min_exponents_owned(hs).expect("every n has at least one partition")
}

/// `num*` by a dynamic program over the allowed parts.
///
/// With parts `a_0 = 1 < a_1 < ...` and `B_a = 1 + x^a`, let `f_k[r]` be the
/// sum over partitions of `r` into parts `a_0..=a_k` of
/// `prod B_a^{floor(n/a) - m(a)}`. Then `f_0[r] = B_1^{n-r}` and
/// `f_k[r] = sum_m B^{N-m} f_{k-1}[r - m a]`, evaluated by Horner's rule in
/// `B`, with `N = floor(n/a_k)`.
pub fn num_star_dp(n: usize, class: PartitionClass) -> IntPoly {
    if n == 0 {
        return IntPoly::one();
    }
    let parts = allowed_parts(class, n);
    let mut layer: Vec<IntPoly> = (0..=n)
        .map(|r| {
            let mut p = IntPoly::one();
            p.mul_binomial_pow_assign(1, n - r);
            p
        })
        .collect();
    for &a in &parts[1..] {
        let full = n / a;
        let next: Vec<IntPoly> = (0..=n)
            .map(|r| {
                let most = r / a;
                let mut acc = layer[r].clone();
                for m in 1..=most {
                    acc.mul_binomial_assign(a);
                    acc += &layer[r - m * a];
                }
                acc.mul_binomial_pow_assign(a, full - most);
                acc
            })
            .collect();
        layer = next;
    }
    layer.swap_remove(n)
}

fn expand_h(n: usize, class: PartitionClass, p: &Partition) -> IntPoly {
    h_factored(n, class, &p.multiplicities())
        .expect("enumerated partitions are valid")
        .expand()
}

/// `num*` by a streaming fold over every partition.
pub fn num_star_enumerate(n: usize, class: PartitionClass) -> IntPoly {
    enumerate(n, class).fold(IntPoly::zero(), |mut acc, p| {
        acc += &expand_h(n, class, &p);
        acc
    })
}

/// Parallel chunked variant of [`num_star_enumerate`]. Integer addition is
/// exact, so the reduction tree does not affect the result.
pub fn num_star_enumerate_par(n: usize, class: PartitionClass) -> IntPoly {
    enumerate(n, class)
        .par_bridge()
        .fold(IntPoly::zero, |mut acc, p| {
            acc += &expand_h(n, class, &p);
            acc
        })
        .reduce(IntPoly::zero, |a, b| a + b)
}

pub fn num_star(n: usize, class: PartitionClass, engine: Engine) -> Result<IntPoly, SubsumError> {
    match engine {
        Engine::Dp => Ok(num_star_dp(n, class)),
        Engine::Enumerate => Ok(num_star_enumerate(n, class)),
        Engine::Both => {
            let dp = num_star_dp(n, class);
            if dp != num_star_enumerate(n, class) {
                return Err(SubsumError::EngineDisagreement { n, class });
            }
            Ok(dp)
        }
    }
}

/// `num/den` with `den` and `G` kept as cyclotomic products.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedPair {
    pub n: usize,
    pub class: PartitionClass,
    pub num: IntPoly,
    pub den: CycloExponentVector,
    pub g: CycloExponentVector,
}

impl ReducedPair {
    pub fn den_expanded(&self) -> IntPoly {
        self.den.expand()
    }

    pub fn g_expanded(&self) -> IntPoly {
        self.g.expand()
    }

    /// `G * num`, which must equal `num*`.
    pub fn reconstruct_num_star(&self) -> IntPoly {
        &self.g_expanded() * &self.num
    }

    /// `G * den` in cyclotomic form, which must equal `den*`.
    pub fn reconstruct_den_star(&self) -> CycloExponentVector {
        self.g.plus(&self.den)
    }
}

/// The reduced pair via the production engine.
pub fn reduced_pair(n: usize, class: PartitionClass) -> Result<ReducedPair, SubsumError> {
    reduced_pair_with(n, class, Engine::Dp)
}

pub fn reduced_pair_with(
    n: usize,
    class: PartitionClass,
    engine: Engine,
) -> Result<ReducedPair, SubsumError> {
    if n == 0 {
        return Ok(ReducedPair {
            n,
            class,
            num: IntPoly::one(),
            den: CycloExponentVector::new(),
            g: CycloExponentVector::new(),
        });
    }
    let unreduced = num_star(n, class, engine)?;
    let g = big_g(n, class);
    let num = unreduced
        .exact_div(&g.expand())
        .map_err(|source| SubsumError::NotDivisible { n, class, source })?;
    let den = den_star(n, class)
        .to_cyclo_exponents()
        .checked_sub(&g)
        .ok_or(SubsumError::NotDivisible {
            n,
            class,
            source: PolyError::NotDivisible,
        })?;
    Ok(ReducedPair {
        n,
        class,
        num,
        den,
        g,
    })
}

/// `sum 1/sp(lambda, x0)` over the class, in exact rationals.
pub fn sr_eval_rational(
    n: usize,
    class: PartitionClass,
    x0: &BigRational,
) -> Result<BigRational, SubsumError> {
    let mut total = BigRational::zero();
    for p in enumerate(n, class) {
        let mut value = BigRational::one();
        for &part in p.parts() {
            value *= BigRational::one() + num_traits::pow(x0.clone(), part);
        }
        if value.is_zero() {
            return Err(SubsumError::PoleAtX0);
        }
        total += value.recip();
    }
    Ok(total)
}

/// `num(x0) / den(x0)` of a reduced pair.
pub fn reduced_eval_rational(pair: &ReducedPair, x0: &BigRational) -> Result<BigRational, SubsumError> {
    let den = pair.den_expanded().eval_rational(x0);
    if den.is_zero() {
        return Err(SubsumError::PoleAtX0);
    }
    Ok(pair.num.eval_rational(x0) / den)
}

/// `t(n) = sum over ternary partitions of 2^{n - length}`; `t(0) = 1`.
pub fn t_direct(n: usize) -> BigUint {
    enumerate(n, PartitionClass::Ternary)
        .map(|p| BigUint::one() << (n - p.len()))
        .sum()
}

/// Value of the reduced ternary numerator at `x = 1`.
pub fn t_from_polynomial(n: usize) -> Result<BigInt, SubsumError> {
    Ok(reduced_pair(n, PartitionClass::Ternary)?.num.eval_at_int(1))
}
