//! Cyclotomic polynomials and the two factored representations used by the
//! reduction pipeline.
//!
//! Every binomial `1 + x^i` splits into distinct cyclotomic factors
//! `Phi_{2d}` with `i = d * j`, `j` odd, each appearing exactly once. A product
//! of binomials is therefore described equally well by binomial exponents
//! ([`FactoredBinomialProduct`]) or by cyclotomic exponents
//! ([`CycloExponentVector`]), and in the second form a gcd is just an
//! entrywise minimum.

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::intpoly::IntPoly;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CycloError {
    #[error("gcd of an empty collection is undefined")]
    EmptyCollection,
}

fn phi_table() -> &'static RwLock<HashMap<usize, Arc<IntPoly>>> {
    static TABLE: OnceLock<RwLock<HashMap<usize, Arc<IntPoly>>>> = OnceLock::new();
    TABLE.get_or_init(Default::default)
}

/// The `m`-th cyclotomic polynomial, memoized for the life of the process.
///
/// Built as `(x^m - 1) / prod_{d | m, d < m} Phi_d` by exact division.
///
/// # Panics
///
/// If `m == 0`.
pub fn phi(m: usize) -> Arc<IntPoly> {
    assert!(m >= 1, "cyclotomic index must be positive");
    if let Some(p) = phi_table().read().expect("phi table poisoned").get(&m) {
        return Arc::clone(p);
    }
    let mut poly = IntPoly::monomial(BigInt::one(), m) - IntPoly::one();
    for d in divisors(m).into_iter().filter(|&d| d < m) {
        poly = poly
            .exact_div(&phi(d))
            .expect("x^m - 1 is divisible by every Phi_d with d | m");
    }
    let mut table = phi_table().write().expect("phi table poisoned");
    Arc::clone(table.entry(m).or_insert_with(|| Arc::new(poly)))
}

/// Whether `Phi_{2d}` divides `1 + x^i`: true iff `i = d * j` with `j` odd.
pub fn binomial_cyclo_divides(d: usize, i: usize) -> bool {
    d >= 1 && i % d == 0 && (i / d) % 2 == 1
}

/// `Phi_m(1)`: `p` when `m` is a power of the prime `p`, otherwise 1.
///
/// # Panics
///
/// If `m <= 1`.
pub fn phi_at_one(m: usize) -> BigInt {
    assert!(m > 1, "Phi_m(1) closed form needs m > 1");
    match prime_power_base(m) {
        Some(p) => BigInt::from(p),
        None => BigInt::one(),
    }
}

/// `Phi_m(-1)` by direct evaluation of the constructed polynomial.
///
/// For `m = 2k` with `k > 1` odd this equals `Phi_k(1)`; in particular
/// `Phi_{2*3^a}(-1) = 3`.
///
/// # Panics
///
/// If `m <= 1`.
pub fn phi_at_minus_one(m: usize) -> BigInt {
    assert!(m > 1, "Phi_m(-1) needs m > 1");
    let value = phi(m).eval_at_int(-1);
    if m % 2 == 0 && (m / 2) % 2 == 1 && m / 2 > 1 {
        debug_assert_eq!(value, phi_at_one(m / 2));
    }
    value
}

/// Prime `p` if `m = p^a` with `a >= 1`.
pub fn prime_power_base(m: usize) -> Option<usize> {
    if m < 2 {
        return None;
    }
    let p = smallest_prime_factor(m);
    let mut r = m;
    while r % p == 0 {
        r /= p;
    }
    (r == 1).then_some(p)
}

fn smallest_prime_factor(m: usize) -> usize {
    let mut d = 2;
    while d * d <= m {
        if m % d == 0 {
            return d;
        }
        d += 1;
    }
    m
}

/// Positive divisors of `m`, ascending.
pub fn divisors(m: usize) -> Vec<usize> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= m {
        if m % d == 0 {
            small.push(d);
            if d * d != m {
                large.push(m / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// Euler's totient, the degree of `Phi_m`.
pub fn totient(m: usize) -> usize {
    let mut result = m;
    let mut r = m;
    let mut p = 2;
    while p * p <= r {
        if r % p == 0 {
            while r % p == 0 {
                r /= p;
            }
            result -= result / p;
        }
        p += 1;
    }
    if r > 1 {
        result -= result / r;
    }
    result
}

/// `prod_i (1 + x^i)^{e_i}`, zero exponents omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FactoredBinomialProduct {
    exps: BTreeMap<usize, usize>,
}

impl FactoredBinomialProduct {
    pub fn new() -> Self {
        Self::default()
    }

    /// Exponent of `1 + x^i`.
    pub fn get(&self, i: usize) -> usize {
        self.exps.get(&i).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: usize, e: usize) {
        if e == 0 {
            self.exps.remove(&i);
        } else {
            self.exps.insert(i, e);
        }
    }

    /// `(i, e_i)` pairs, ascending in `i`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.exps.iter().map(|(&i, &e)| (i, e))
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.iter().map(|(i, e)| i * e).sum()
    }

    pub fn expand(&self) -> IntPoly {
        let mut out = IntPoly::one();
        for (i, e) in self.iter() {
            out.mul_binomial_pow_assign(i, e);
        }
        out
    }

    /// Exponent of `Phi_{2d}` is the sum of `e_{dj}` over odd `j`.
    pub fn to_cyclo_exponents(&self) -> CycloExponentVector {
        let mut out = CycloExponentVector::new();
        for (i, e) in self.iter() {
            for d in divisors(i) {
                if binomial_cyclo_divides(d, i) {
                    out.add(d, e);
                }
            }
        }
        out
    }
}

impl FromIterator<(usize, usize)> for FactoredBinomialProduct {
    fn from_iter<T: IntoIterator<Item = (usize, usize)>>(iter: T) -> Self {
        let mut f = FactoredBinomialProduct::new();
        for (i, e) in iter {
            let total = f.get(i) + e;
            f.set(i, total);
        }
        f
    }
}

pub fn to_cyclo_exponents(f: &FactoredBinomialProduct) -> CycloExponentVector {
    f.to_cyclo_exponents()
}

pub fn expand(f: &FactoredBinomialProduct) -> IntPoly {
    f.expand()
}

/// `prod_d Phi_{2d}^{e_d}`, keyed by `d`, zero exponents omitted.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CycloExponentVector {
    exps: BTreeMap<usize, usize>,
}

impl CycloExponentVector {
    pub fn new() -> Self {
        Self::default()
    }

    /// A single factor `Phi_{2d}^e`.
    pub fn single(d: usize, e: usize) -> Self {
        let mut v = Self::new();
        v.set(d, e);
        v
    }

    /// Exponent of `Phi_{2d}`.
    pub fn get(&self, d: usize) -> usize {
        self.exps.get(&d).copied().unwrap_or(0)
    }

    pub fn set(&mut self, d: usize, e: usize) {
        if e == 0 {
            self.exps.remove(&d);
        } else {
            self.exps.insert(d, e);
        }
    }

    pub fn add(&mut self, d: usize, e: usize) {
        let total = self.get(d) + e;
        self.set(d, total);
    }

    /// `(d, e_d)` pairs, ascending in `d`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.exps.iter().map(|(&d, &e)| (d, e))
    }

    /// The `d` with a positive exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps.keys().copied()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> usize {
        self.iter().map(|(d, e)| totient(2 * d) * e).sum()
    }

    pub fn min_with(&self, other: &CycloExponentVector) -> CycloExponentVector {
        let mut out = CycloExponentVector::new();
        for (d, e) in self.iter() {
            out.set(d, e.min(other.get(d)));
        }
        out
    }

    /// `self / other`, or `None` if `other` is not a factor.
    pub fn checked_sub(&self, other: &CycloExponentVector) -> Option<CycloExponentVector> {
        let mut out = self.clone();
        for (d, e) in other.iter() {
            let have = out.get(d);
            out.set(d, have.checked_sub(e)?);
        }
        Some(out)
    }

    pub fn plus(&self, other: &CycloExponentVector) -> CycloExponentVector {
        let mut out = self.clone();
        for (d, e) in other.iter() {
            out.add(d, e);
        }
        out
    }

    pub fn expand(&self) -> IntPoly {
        let mut out = IntPoly::one();
        for (d, e) in self.iter() {
            out = &out * &phi(2 * d).pow(e as u64);
        }
        out
    }
}

impl FromIterator<(usize, usize)> for CycloExponentVector {
    fn from_iter<T: IntoIterator<Item = (usize, usize)>>(iter: T) -> Self {
        let mut v = CycloExponentVector::new();
        for (d, e) in iter {
            v.add(d, e);
        }
        v
    }
}

/// Gcd of binomial products: convert to cyclotomic exponents and take the
/// entrywise minimum.
pub fn min_exponents<'a, I>(fs: I) -> Result<CycloExponentVector, CycloError>
where
    I: IntoIterator<Item = &'a FactoredBinomialProduct>,
{
    min_exponents_owned(fs.into_iter().map(|f| f.to_cyclo_exponents()))
}

/// Entrywise minimum over a stream of cyclotomic exponent vectors.
pub fn min_exponents_owned<I>(vs: I) -> Result<CycloExponentVector, CycloError>
where
    I: IntoIterator<Item = CycloExponentVector>,
{
    let mut it = vs.into_iter();
    let mut acc = it.next().ok_or(CycloError::EmptyCollection)?;
    for v in it {
        if acc.is_empty() {
            break;
        }
        acc = acc.min_with(&v);
    }
    Ok(acc)
}

/// Whether `Phi_m` divides `poly`, decided by exact remainder.
pub fn phi_divides(m: usize, poly: &IntPoly) -> bool {
    poly.remainder_mod_monic(&phi(m))
        .expect("cyclotomic polynomials are monic")
        .is_zero()
}

#[doc(hidden)]
pub fn phi_memo_len() -> usize {
    phi_table().read().map(|t| t.len()).unwrap_or(0)
}
