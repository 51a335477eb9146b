//! Dense univariate polynomials over the integers.
//!
//! Coefficients are stored ascending (`coeffs[k]` multiplies `x^k`) and are
//! kept normalized: the last stored coefficient is never zero, and the zero
//! polynomial is the empty vector.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("polynomial is not exactly divisible by the given divisor")]
    NotDivisible,
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("modulus must be a monic polynomial")]
    NotMonic,
    #[error("log-concavity needs nonnegative coefficients, found a negative one at index {index}")]
    NegativeCoefficient { index: usize },
    #[error("{p} divides the leading coefficient")]
    BadPrime { p: u64 },
    #[error("{p} is not a prime")]
    NotPrime { p: u64 },
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

/// Outcome of a log-concavity scan.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogConcavity {
    Holds,
    /// `a[index]^2 < a[index-1] * a[index+1]` at the first such internal index.
    FailsAt { index: usize },
}

impl LogConcavity {
    pub fn holds(self) -> bool {
        matches!(self, LogConcavity::Holds)
    }
}

/// Verdict of the finite-field irreducibility test.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ModPVerdict {
    /// Irreducible modulo p, hence the primitive part is irreducible over Q.
    Irreducible,
    /// Reducible modulo p. Says nothing about the integers.
    Reducible,
    /// Degree zero or the zero polynomial.
    Inconclusive,
}

impl IntPoly {
    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigInt::one())
    }

    pub fn constant(c: BigInt) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c * x^k`
    pub fn monomial(c: BigInt, k: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); k + 1];
        coeffs[k] = c;
        Self::from_coeffs(coeffs)
    }

    /// `1 + x^i`; for `i = 0` this is the constant 2.
    pub fn binomial(i: usize) -> Self {
        let mut p = Self::one();
        p.mul_binomial_assign(i);
        p
    }

    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<BigInt> {
        self.coeffs
    }

    /// Coefficient of `x^k`, zero past the end.
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    /// `self *= 1 + x^i` in place.
    pub fn mul_binomial_assign(&mut self, i: usize) {
        if self.is_zero() {
            return;
        }
        if i == 0 {
            for c in &mut self.coeffs {
                *c <<= 1;
            }
            return;
        }
        let len = self.coeffs.len();
        self.coeffs.resize(len + i, BigInt::zero());
        for k in (i..len + i).rev() {
            let (lo, hi) = self.coeffs.split_at_mut(k);
            hi[0] += &lo[k - i];
        }
    }

    /// `self *= (1 + x^i)^e` in place.
    pub fn mul_binomial_pow_assign(&mut self, i: usize, e: usize) {
        for _ in 0..e {
            self.mul_binomial_assign(i);
        }
    }

    pub fn scale(&self, c: &BigInt) -> IntPoly {
        if c.is_zero() {
            return IntPoly::zero();
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, mut e: u64) -> IntPoly {
        let mut result = IntPoly::one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Nonnegative gcd of all coefficients; zero for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// `self / content`, sign-normalized to a positive leading coefficient.
    pub fn primitive_part(&self) -> IntPoly {
        if self.is_zero() {
            return IntPoly::zero();
        }
        let mut c = self.content();
        if self.leading().is_some_and(Signed::is_negative) {
            c = -c;
        }
        IntPoly {
            coeffs: self.coeffs.iter().map(|a| a / &c).collect(),
        }
    }

    fn with_positive_leading(self) -> IntPoly {
        if self.leading().is_some_and(Signed::is_negative) {
            -self
        } else {
            self
        }
    }

    /// Quotient of an exact division. Fails if any step leaves a fraction or
    /// the final remainder is nonzero.
    pub fn exact_div(&self, divisor: &IntPoly) -> Result<IntPoly, PolyError> {
        let ld = divisor.leading().ok_or(PolyError::DivisionByZero)?;
        let db = divisor.coeffs.len() - 1;
        if self.is_zero() {
            return Ok(IntPoly::zero());
        }
        if self.coeffs.len() <= db {
            return Err(PolyError::NotDivisible);
        }
        let monic = ld.is_one();
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - db;
        let mut quot = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let top = &rem[k + db];
            if top.is_zero() {
                continue;
            }
            let q = if monic {
                top.clone()
            } else {
                let (q, r) = top.div_rem(ld);
                if !r.is_zero() {
                    return Err(PolyError::NotDivisible);
                }
                q
            };
            for (j, b) in divisor.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    rem[k + j] -= &q * b;
                }
            }
            quot[k] = q;
        }
        if rem.iter().any(|c| !c.is_zero()) {
            return Err(PolyError::NotDivisible);
        }
        Ok(IntPoly::from_coeffs(quot))
    }

    /// Quotient and remainder by a monic modulus, `self = q * m + r`.
    pub fn div_rem_monic(&self, m: &IntPoly) -> Result<(IntPoly, IntPoly), PolyError> {
        if !m.is_monic() {
            return Err(PolyError::NotMonic);
        }
        let dm = m.coeffs.len() - 1;
        if self.coeffs.len() <= dm {
            return Ok((IntPoly::zero(), self.clone()));
        }
        let mut rem = self.coeffs.clone();
        let qlen = rem.len() - dm;
        let mut quot = vec![BigInt::zero(); qlen];
        for k in (0..qlen).rev() {
            let q = std::mem::take(&mut rem[k + dm]);
            if q.is_zero() {
                continue;
            }
            for (j, b) in m.coeffs[..dm].iter().enumerate() {
                if !b.is_zero() {
                    rem[k + j] -= &q * b;
                }
            }
            quot[k] = q;
        }
        rem.truncate(dm);
        Ok((IntPoly::from_coeffs(quot), IntPoly::from_coeffs(rem)))
    }

    /// Remainder modulo a monic polynomial.
    pub fn remainder_mod_monic(&self, m: &IntPoly) -> Result<IntPoly, PolyError> {
        self.div_rem_monic(m).map(|(_, r)| r)
    }

    /// `lc(b)^k * self mod b` for a suitable `k`; only its primitive part is
    /// meaningful.
    fn pseudo_rem(&self, b: &IntPoly) -> IntPoly {
        let db = b.coeffs.len() - 1;
        let lb = b.coeffs[db].clone();
        let mut r = self.clone();
        while !r.is_zero() && r.coeffs.len() > db {
            let dr = r.coeffs.len() - 1;
            let lr = r.coeffs[dr].clone();
            let shift = dr - db;
            for c in &mut r.coeffs {
                *c *= &lb;
            }
            for (j, bc) in b.coeffs.iter().enumerate() {
                if !bc.is_zero() {
                    r.coeffs[shift + j] -= &lr * bc;
                }
            }
            r.trim();
        }
        r
    }

    /// Exact value at an integer point, by Horner's rule.
    pub fn eval(&self, x0: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x0 + c)
    }

    pub fn eval_at_int(&self, x0: i64) -> BigInt {
        self.eval(&BigInt::from(x0))
    }

    pub fn eval_rational(&self, x0: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * x0 + BigRational::from_integer(c.clone())
        })
    }

    /// Weakly increasing, then weakly decreasing.
    pub fn is_unimodal(&self) -> bool {
        is_unimodal(&self.coeffs)
    }

    pub fn log_concavity(&self) -> Result<LogConcavity, PolyError> {
        log_concavity(&self.coeffs)
    }

    pub fn is_log_concave(&self) -> Result<bool, PolyError> {
        self.log_concavity().map(LogConcavity::holds)
    }

    /// Splits into the even-exponent part and the odd-exponent part.
    pub fn even_odd_split(&self) -> (IntPoly, IntPoly) {
        let mut even = Vec::with_capacity(self.coeffs.len());
        let mut odd = Vec::with_capacity(self.coeffs.len());
        for (k, c) in self.coeffs.iter().enumerate() {
            if k % 2 == 0 {
                even.push(c.clone());
                odd.push(BigInt::zero());
            } else {
                even.push(BigInt::zero());
                odd.push(c.clone());
            }
        }
        (IntPoly::from_coeffs(even), IntPoly::from_coeffs(odd))
    }

    /// Coefficients on even exponents only: `[a0, a2, a4, ...]`.
    pub fn even_coefficients(&self) -> Vec<BigInt> {
        self.coeffs.iter().step_by(2).cloned().collect()
    }

    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().eq(self.coeffs.iter().rev())
    }

    /// Reduces the primitive part modulo `p` and tests irreducibility over
    /// GF(p) by distinct-degree gcds against `x^(p^k) - x`.
    pub fn irreducible_mod_p(&self, p: u64) -> Result<ModPVerdict, PolyError> {
        if !is_prime(p) {
            return Err(PolyError::NotPrime { p });
        }
        let prim = self.primitive_part();
        let Some(lead) = prim.leading() else {
            return Ok(ModPVerdict::Inconclusive);
        };
        if (lead % BigInt::from(p)).is_zero() {
            return Err(PolyError::BadPrime { p });
        }
        if prim.coeffs.len() <= 1 {
            return Ok(ModPVerdict::Inconclusive);
        }
        let f = modp::reduce(&prim.coeffs, p);
        Ok(if modp::is_irreducible(&f, p) {
            ModPVerdict::Irreducible
        } else {
            ModPVerdict::Reducible
        })
    }
}

/// Gcd in `Z[x]`, content included, normalized to a positive leading
/// coefficient. Computed by a primitive pseudo-remainder sequence. Returns the
/// zero polynomial when both inputs are zero.
pub fn gcd_primitive(a: &IntPoly, b: &IntPoly) -> IntPoly {
    match (a.is_zero(), b.is_zero()) {
        (true, true) => return IntPoly::zero(),
        (false, true) => return a.clone().with_positive_leading(),
        (true, false) => return b.clone().with_positive_leading(),
        _ => {}
    }
    let content = a.content().gcd(&b.content());
    let (mut u, mut v) = (a.primitive_part(), b.primitive_part());
    if u.coeffs.len() < v.coeffs.len() {
        std::mem::swap(&mut u, &mut v);
    }
    loop {
        let r = u.pseudo_rem(&v);
        if r.is_zero() {
            break;
        }
        u = v;
        v = r.primitive_part();
    }
    v.primitive_part().scale(&content)
}

pub fn is_unimodal(seq: &[BigInt]) -> bool {
    let mut descending = false;
    for w in seq.windows(2) {
        if w[1] > w[0] {
            if descending {
                return false;
            }
        } else if w[1] < w[0] {
            descending = true;
        }
    }
    true
}

pub fn log_concavity(seq: &[BigInt]) -> Result<LogConcavity, PolyError> {
    if let Some(index) = seq.iter().position(Signed::is_negative) {
        return Err(PolyError::NegativeCoefficient { index });
    }
    for i in 1..seq.len().saturating_sub(1) {
        if &seq[i] * &seq[i] < &seq[i - 1] * &seq[i + 1] {
            return Ok(LogConcavity::FailsAt { index: i });
        }
    }
    Ok(LogConcavity::Holds)
}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomials over GF(p) as ascending `u64` residues.
mod modp {
    use num_bigint::BigInt;
    use num_integer::Integer;
    use num_traits::ToPrimitive;

    type P = Vec<u64>;

    fn trim(a: &mut P) {
        while a.last() == Some(&0) {
            a.pop();
        }
    }

    fn mulmod(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    fn inv(a: u64, p: u64) -> u64 {
        // p prime
        let mut result = 1u64;
        let mut base = a % p;
        let mut e = p - 2;
        while e > 0 {
            if e & 1 == 1 {
                result = mulmod(result, base, p);
            }
            base = mulmod(base, base, p);
            e >>= 1;
        }
        result
    }

    pub(super) fn reduce(coeffs: &[BigInt], p: u64) -> P {
        let modulus = BigInt::from(p);
        let mut out: P = coeffs
            .iter()
            .map(|c| c.mod_floor(&modulus).to_u64().expect("residue fits in u64"))
            .collect();
        trim(&mut out);
        out
    }

    fn make_monic(a: &mut P, p: u64) {
        if let Some(&l) = a.last() {
            let li = inv(l, p);
            for c in a.iter_mut() {
                *c = mulmod(*c, li, p);
            }
        }
    }

    fn rem(a: &P, f: &P, p: u64) -> P {
        // f monic
        let mut r = a.clone();
        let df = f.len() - 1;
        while r.len() > df {
            let top = r.len() - 1;
            let q = r[top];
            if q != 0 {
                let shift = top - df;
                for (j, &fc) in f.iter().enumerate() {
                    let t = mulmod(q, fc, p);
                    r[shift + j] = (r[shift + j] + p - t) % p;
                }
            }
            r.pop();
            trim(&mut r);
        }
        trim(&mut r);
        r
    }

    fn mul(a: &P, b: &P, p: u64) -> P {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut acc = vec![0u128; a.len() + b.len() - 1];
        let pp = p as u128;
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                acc[i + j] = (acc[i + j] + x as u128 * y as u128) % pp;
            }
        }
        let mut out: P = acc.into_iter().map(|c| c as u64).collect();
        trim(&mut out);
        out
    }

    fn mulmod_poly(a: &P, b: &P, f: &P, p: u64) -> P {
        rem(&mul(a, b, p), f, p)
    }

    fn pow_mod(base: &P, mut e: u64, f: &P, p: u64) -> P {
        let mut result: P = vec![1];
        let mut b = rem(base, f, p);
        while e > 0 {
            if e & 1 == 1 {
                result = mulmod_poly(&result, &b, f, p);
            }
            e >>= 1;
            if e > 0 {
                b = mulmod_poly(&b, &b, f, p);
            }
        }
        result
    }

    fn gcd(a: &P, b: &P, p: u64) -> P {
        let mut u = a.clone();
        let mut v = b.clone();
        trim(&mut u);
        trim(&mut v);
        while !v.is_empty() {
            make_monic(&mut v, p);
            let r = rem(&u, &v, p);
            u = v;
            v = r;
        }
        make_monic(&mut u, p);
        u
    }

    /// Distinct-degree criterion: `f` of degree `n` is irreducible iff
    /// `gcd(x^(p^k) - x, f) = 1` for every `1 <= k <= n/2`.
    pub(super) fn is_irreducible(f: &P, p: u64) -> bool {
        let mut f = f.clone();
        make_monic(&mut f, p);
        let n = f.len() - 1;
        let x: P = vec![0, 1];
        let mut h = rem(&x, &f, p);
        for _ in 1..=n / 2 {
            h = pow_mod(&h, p, &f, p);
            let mut diff = h.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            trim(&mut diff);
            if diff.is_empty() {
                // x^(p^k) == x mod f: every irreducible factor has degree dividing k
                return false;
            }
            if gcd(&diff, &f, p).len() > 1 {
                return false;
            }
        }
        true
    }
}

impl Neg for IntPoly {
    type Output = IntPoly;

    fn neg(mut self) -> IntPoly {
        for c in &mut self.coeffs {
            *c = -std::mem::take(c);
        }
        self
    }
}

impl Neg for &IntPoly {
    type Output = IntPoly;

    fn neg(self) -> IntPoly {
        -self.clone()
    }
}

impl AddAssign<&IntPoly> for IntPoly {
    fn add_assign(&mut self, rhs: &IntPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a += b;
        }
        self.trim();
    }
}

impl SubAssign<&IntPoly> for IntPoly {
    fn sub_assign(&mut self, rhs: &IntPoly) {
        if self.coeffs.len() < rhs.coeffs.len() {
            self.coeffs.resize(rhs.coeffs.len(), BigInt::zero());
        }
        for (a, b) in self.coeffs.iter_mut().zip(&rhs.coeffs) {
            *a -= b;
        }
        self.trim();
    }
}

impl Add for &IntPoly {
    type Output = IntPoly;

    fn add(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Add for IntPoly {
    type Output = IntPoly;

    fn add(mut self, rhs: IntPoly) -> IntPoly {
        self += &rhs;
        self
    }
}

impl Sub for &IntPoly {
    type Output = IntPoly;

    fn sub(self, rhs: &IntPoly) -> IntPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl Sub for IntPoly {
    type Output = IntPoly;

    fn sub(mut self, rhs: IntPoly) -> IntPoly {
        self -= &rhs;
        self
    }
}

impl Mul for &IntPoly {
    type Output = IntPoly;

    /// Schoolbook product, skipping zero coefficients (binomial powers are
    /// sparse).
    fn mul(self, rhs: &IntPoly) -> IntPoly {
        if self.is_zero() || rhs.is_zero() {
            return IntPoly::zero();
        }
        let (a, b) = if self.coeffs.len() <= rhs.coeffs.len() {
            (self, rhs)
        } else {
            (rhs, self)
        };
        let mut out = vec![BigInt::zero(); a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if !y.is_zero() {
                    out[i + j] += x * y;
                }
            }
        }
        IntPoly::from_coeffs(out)
    }
}

impl Mul for IntPoly {
    type Output = IntPoly;

    fn mul(self, rhs: IntPoly) -> IntPoly {
        &self * &rhs
    }
}

impl fmt::Display for IntPoly {
    /// Ascending powers with explicit signs, e.g. `5 + 8x + 15x^2`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else if c.is_negative() {
                f.write_str(" - ")?;
            } else {
                f.write_str(" + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    f.write_str("x")?;
                    if k > 1 {
                        write!(f, "^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}
