//! Executable checks of the numbered statements about reduced pairs.
//!
//! Statements 2, 5, 7, 8, 9, 10 and the remainder-reduction lemma are
//! proved, so a report for them is [`Verdict::AllHold`] or
//! [`Verdict::FailuresFound`]. Statements 1, 3, 4 and 6 are open; their
//! reports are always [`Verdict::WitnessOnly`]. Their `failures` list every
//! observed violation of the tested property, and `findings` the subset that
//! contradicts the statement as conjectured; neither turns the verdict red.
//!
//! | id | statement |
//! |----|-----------|
//! | 1 | `num(n, x)` irreducible (mod-p witness only) |
//! | 2 | `gcd(num, den) = 1`, ordinary |
//! | 3 | even part of `num(n, x)` unimodal |
//! | 4 | `den(n, x)` log-concave except `n = 3, 5, 6, 7` |
//! | 5 | `gcd(num_B, den_B) = 1` |
//! | 6 | `num_B(n, x)` unimodal for `n > 5` (log-concavity fails at `n = 4`) |
//! | 7 | `1 + x^(2^s)` does not divide `num_B(n, x)` for `2^s <= n` |
//! | 8 | `num_O(n, -1)` is the odd part of `n!` |
//! | 9 | `num_T(n, -1) = 3^(v_3(n!))` |
//! | 10 | `t(3n) = t(3n+1) = t(3n+2)`, `t(3n) - t(3n-2) = 4^n t(n)` |
//! | lemma4 | `Phi_2d` divides `num(n)` iff it divides `num(n mod d)` |

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cyclotomic::{phi, phi_divides};
use crate::intpoly::{IntPoly, LogConcavity, ModPVerdict, PolyError};
use crate::partitions::PartitionClass;
use crate::subsum::{reduced_pair_with, t_direct, Engine, ReducedPair, SubsumError};

/// Which statement a report covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConjectureId {
    Numbered(u8),
    RemainderReduction,
}

impl ConjectureId {
    pub const ALL: [ConjectureId; 11] = [
        ConjectureId::Numbered(1),
        ConjectureId::Numbered(2),
        ConjectureId::Numbered(3),
        ConjectureId::Numbered(4),
        ConjectureId::Numbered(5),
        ConjectureId::Numbered(6),
        ConjectureId::Numbered(7),
        ConjectureId::Numbered(8),
        ConjectureId::Numbered(9),
        ConjectureId::Numbered(10),
        ConjectureId::RemainderReduction,
    ];

    /// Proved statements gate the exit status; open ones only gather evidence.
    pub fn is_proved(self) -> bool {
        !matches!(self, ConjectureId::Numbered(1 | 3 | 4 | 6))
    }
}

impl fmt::Display for ConjectureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConjectureId::Numbered(k) => write!(f, "{k}"),
            ConjectureId::RemainderReduction => f.write_str("lemma4"),
        }
    }
}

impl FromStr for ConjectureId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s == "lemma4" {
            return Ok(ConjectureId::RemainderReduction);
        }
        match s.parse::<u8>() {
            Ok(k @ 1..=10) => Ok(ConjectureId::Numbered(k)),
            _ => Err(format!("unknown conjecture id `{s}` (expected 1..10 or lemma4)")),
        }
    }
}

impl Serialize for ConjectureId {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for ConjectureId {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Verdict {
    AllHold,
    FailuresFound,
    WitnessOnly,
}

/// One failure or witness line. `d` and `index` are set when the statement
/// is about a cyclotomic factor or a coefficient position.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Record {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub index: Option<usize>,
    pub detail: String,
}

impl Record {
    pub fn new(n: usize, detail: impl Into<String>) -> Self {
        Record {
            n,
            d: None,
            index: None,
            detail: detail.into(),
        }
    }

    pub fn with_d(mut self, d: usize) -> Self {
        self.d = Some(d);
        self
    }

    pub fn with_index(mut self, index: usize) -> Self {
        self.index = Some(index);
        self
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConjectureReport {
    pub conjecture: ConjectureId,
    /// Inclusive `[lo, hi]`.
    pub n_range: (usize, usize),
    pub verdict: Verdict,
    pub failures: Vec<Record>,
    pub witnesses: Vec<Record>,
    /// Errors raised by the computation itself (engine disagreement, a
    /// failed exact division). Any entry makes the verdict `FailuresFound`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub pipeline_errors: Vec<Record>,
    /// For open statements: observations that contradict the statement as
    /// conjectured. Never affects the verdict.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub findings: Vec<Record>,
    pub elapsed_us: u64,
}

impl ConjectureReport {
    fn finish(
        conjecture: ConjectureId,
        n_range: (usize, usize),
        failures: Vec<Record>,
        witnesses: Vec<Record>,
        pipeline_errors: Vec<Record>,
        started: Instant,
    ) -> Self {
        let verdict = if !pipeline_errors.is_empty() {
            Verdict::FailuresFound
        } else if !conjecture.is_proved() {
            Verdict::WitnessOnly
        } else if failures.is_empty() {
            Verdict::AllHold
        } else {
            Verdict::FailuresFound
        };
        ConjectureReport {
            conjecture,
            n_range,
            verdict,
            failures,
            witnesses,
            pipeline_errors,
            findings: Vec::new(),
            elapsed_us: started.elapsed().as_micros() as u64,
        }
    }

    fn with_findings(mut self, findings: Vec<Record>) -> Self {
        self.findings = findings;
        self
    }

    /// True when the report should fail a build: a failure among proved
    /// statements, or any pipeline error.
    pub fn is_blocking(&self) -> bool {
        !self.pipeline_errors.is_empty()
            || (self.conjecture.is_proved() && !self.failures.is_empty())
    }

    /// The set of `n` with at least one failure record.
    pub fn failing_n(&self) -> BTreeSet<usize> {
        self.failures.iter().map(|r| r.n).collect()
    }

    /// Same report with the timing zeroed, for reproducibility comparisons.
    pub fn without_timing(&self) -> Self {
        ConjectureReport {
            elapsed_us: 0,
            ..self.clone()
        }
    }
}

/// Largest odd divisor.
pub fn odd_part(m: u128) -> u128 {
    assert!(m >= 1, "odd part of zero is undefined");
    m >> m.trailing_zeros()
}

/// `v_p(n!) = sum_{a >= 1} floor(n / p^a)`.
pub fn legendre_valuation(p: u64, n: u64) -> u64 {
    assert!(p >= 2, "p must be prime");
    let mut total = 0;
    let mut q = n / p;
    while q > 0 {
        total += q;
        q /= p;
    }
    total
}

/// Primes `<= n`, by a sieve.
pub fn primes_up_to(n: usize) -> Vec<usize> {
    if n < 2 {
        return Vec::new();
    }
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            out.push(i);
            let mut j = i * i;
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Odd part of `n!` as the product of `p^(v_p(n!))` over odd primes `p <= n`.
pub fn odd_part_factorial(n: usize) -> BigUint {
    primes_up_to(n)
        .into_iter()
        .filter(|&p| p != 2)
        .map(|p| num_traits::pow(BigUint::from(p), legendre_valuation(p as u64, n as u64) as usize))
        .product()
}

/// `3^(v_3(n!))`.
pub fn ternary_special_value(n: usize) -> BigUint {
    num_traits::pow(BigUint::from(3u32), legendre_valuation(3, n as u64) as usize)
}

/// Toggles for the three sub-checks of statement 10.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TernaryOneChecks {
    /// `t_direct(m)` equals the reduced ternary numerator at `x = 1`.
    pub direct_vs_polynomial: bool,
    pub block_constancy: bool,
    pub recurrence: bool,
}

impl Default for TernaryOneChecks {
    fn default() -> Self {
        TernaryOneChecks {
            direct_vs_polynomial: true,
            block_constancy: true,
            recurrence: true,
        }
    }
}

/// Outcome of the coprimality check for one ordinary `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoprimalityOutcome {
    /// Every `d` with `Phi_2d` in `den`, ascending.
    pub checked: Vec<usize>,
    /// The `d` whose `Phi_2d` also divides `num`. Empty when coprime.
    pub dividing: Vec<usize>,
    pub den_constant_term: BigInt,
    pub den_content: BigInt,
}

impl CoprimalityOutcome {
    pub fn coprime(&self) -> bool {
        self.dividing.is_empty() && self.den_content.is_one()
    }
}

pub fn coprimality_outcome(pair: &ReducedPair) -> CoprimalityOutcome {
    let checked: Vec<usize> = pair.den.support().collect();
    let dividing = checked
        .iter()
        .copied()
        .filter(|&d| phi_divides(2 * d, &pair.num))
        .collect();
    let den = pair.den_expanded();
    CoprimalityOutcome {
        checked,
        dividing,
        den_constant_term: den.coeff(0),
        den_content: den.content(),
    }
}

/// Whether `1 + x^(2^s)` divides `num`.
fn binary_factor_divides(num: &IntPoly, s: u32) -> bool {
    num.remainder_mod_monic(&IntPoly::binomial(1 << s))
        .expect("binomials are monic")
        .is_zero()
}

/// Log-concavity of the expanded ordinary denominator.
pub fn den_log_concavity(pair: &ReducedPair) -> LogConcavity {
    pair.den_expanded()
        .log_concavity()
        .expect("denominators have nonnegative coefficients")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum IrreducibilityVerdict {
    /// The primitive part is irreducible modulo this prime.
    IrreducibleCertified(u64),
    Inconclusive,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityWitness {
    pub n: usize,
    pub content: BigInt,
    pub degree: Option<usize>,
    pub verdict: IrreducibilityVerdict,
    /// Primes for which the reduction was reducible.
    pub reducible_mod: Vec<u64>,
    /// Primes skipped because they divide the leading coefficient.
    pub skipped: Vec<u64>,
}

pub const DEFAULT_WITNESS_PRIMES: [u64; 15] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47];

/// Mod-p irreducibility witness for an already computed numerator.
pub fn irreducibility_witness_for(n: usize, num: &IntPoly, primes: &[u64]) -> IrreducibilityWitness {
    let mut w = IrreducibilityWitness {
        n,
        content: num.content(),
        degree: num.degree(),
        verdict: IrreducibilityVerdict::Inconclusive,
        reducible_mod: Vec::new(),
        skipped: Vec::new(),
    };
    for &p in primes {
        match num.irreducible_mod_p(p) {
            Ok(ModPVerdict::Irreducible) => {
                w.verdict = IrreducibilityVerdict::IrreducibleCertified(p);
                break;
            }
            Ok(ModPVerdict::Reducible) => w.reducible_mod.push(p),
            Ok(ModPVerdict::Inconclusive) => break,
            Err(PolyError::BadPrime { .. } | PolyError::NotPrime { .. }) => w.skipped.push(p),
            Err(e) => unreachable!("irreducible_mod_p only fails on the prime: {e}"),
        }
    }
    w
}

type NumeratorHook = Arc<dyn Fn(PartitionClass, usize, &mut IntPoly) + Send + Sync>;

/// Drives the checks. Holds the engine choice, the worker count and an
/// optional hook that can rewrite numerators before they are checked.
#[derive(Clone, Default)]
pub struct Verifier {
    engine: Engine,
    jobs: usize,
    hook: Option<NumeratorHook>,
    witness_primes: Option<Vec<u64>>,
}

impl fmt::Debug for Verifier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Verifier")
            .field("engine", &self.engine)
            .field("jobs", &self.jobs)
            .field("hook", &self.hook.is_some())
            .finish()
    }
}

type PairResult = Result<ReducedPair, SubsumError>;

impl Verifier {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn engine(mut self, engine: Engine) -> Self {
        self.engine = engine;
        self
    }

    /// Worker threads for independent `n`. 0 or 1 runs on the caller's thread.
    pub fn jobs(mut self, jobs: usize) -> Self {
        self.jobs = jobs;
        self
    }

    pub fn witness_primes(mut self, primes: Vec<u64>) -> Self {
        self.witness_primes = Some(primes);
        self
    }

    /// Rewrites every numerator after reduction. Used to check that the
    /// reports and exit codes actually react to a broken pipeline.
    #[doc(hidden)]
    pub fn numerator_hook(
        mut self,
        hook: impl Fn(PartitionClass, usize, &mut IntPoly) + Send + Sync + 'static,
    ) -> Self {
        self.hook = Some(Arc::new(hook));
        self
    }

    pub fn pair(&self, n: usize, class: PartitionClass) -> PairResult {
        let mut pair = reduced_pair_with(n, class, self.engine)?;
        if let Some(hook) = &self.hook {
            hook(class, n, &mut pair.num);
        }
        Ok(pair)
    }

    /// Maps `f` over `ns`, in parallel when `jobs > 1`, keeping input order.
    fn per_n<T, F>(&self, ns: Vec<usize>, f: F) -> Vec<T>
    where
        T: Send,
        F: Fn(usize) -> T + Sync + Send,
    {
        if self.jobs <= 1 {
            return ns.into_iter().map(f).collect();
        }
        match rayon::ThreadPoolBuilder::new().num_threads(self.jobs).build() {
            Ok(pool) => pool.install(|| ns.into_par_iter().map(&f).collect()),
            Err(e) => {
                log::warn!("could not build a {}-thread pool ({e}); running serially", self.jobs);
                ns.into_iter().map(f).collect()
            }
        }
    }

    fn pairs(&self, ns: Vec<usize>, class: PartitionClass) -> Vec<(usize, PairResult)> {
        self.per_n(ns, |n| (n, self.pair(n, class)))
    }

    /// Runs one statement. Statements 5 and 7 share a pass and both come
    /// back from either id.
    pub fn run(&self, id: ConjectureId, max_n: usize) -> Vec<ConjectureReport> {
        log::info!("checking {id} up to n={max_n} with engine {}", self.engine);
        match id {
            ConjectureId::Numbered(1) => vec![self.irreducibility(max_n)],
            ConjectureId::Numbered(2) => vec![self.coprimality_ordinary(max_n)],
            ConjectureId::Numbered(3) => vec![self.unimodal_even_part(max_n)],
            ConjectureId::Numbered(4) => vec![self.den_log_concave(max_n)],
            ConjectureId::Numbered(5 | 7) => {
                let (seven, five) = self.binary_nondivisibility(max_n);
                vec![seven, five]
            }
            ConjectureId::Numbered(6) => vec![self.binary_numerator_shape(max_n)],
            ConjectureId::Numbered(8) => vec![self.odd_special_value(max_n)],
            ConjectureId::Numbered(9) => vec![self.ternary_minus_one(max_n)],
            ConjectureId::Numbered(10) => vec![self.ternary_one(max_n, TernaryOneChecks::default())],
            ConjectureId::RemainderReduction => vec![self.remainder_reduction(max_n)],
            ConjectureId::Numbered(k) => unreachable!("no statement {k}"),
        }
    }

    /// Every statement, in id order; 5 and 7 run once.
    pub fn run_all(&self, max_n: usize) -> Vec<ConjectureReport> {
        let mut out = Vec::new();
        for id in ConjectureId::ALL {
            if id == ConjectureId::Numbered(5) {
                continue;
            }
            out.extend(self.run(id, max_n));
        }
        out
    }

    /// Statement 2: for every `Phi_2d` in `den`, `num mod Phi_2d != 0`, and
    /// `den` has constant term 1.
    pub fn coprimality_ordinary(&self, max_n: usize) -> ConjectureReport {
        let started = Instant::now();
        let id = ConjectureId::Numbered(2);
        let (mut failures, mut witnesses, mut errors) = (Vec::new(), Vec::new(), Vec::new());
        let outcomes = self.per_n((1..=max_n).collect(), |n| {
            (n, self.pair(n, PartitionClass::Ordinary).map(|p| coprimality_outcome(&p)))
        });
        for (n, outcome) in outcomes {
            let outcome = match outcome {
                Ok(o) => o,
                Err(e) => {
                    errors.push(Record::new(n, e.to_string()));
                    continue;
                }
            };
            for &d in &outcome.dividing {
                failures.push(
                    Record::new(n, format!("Phi_{} divides both num({n},x) and den({n},x)", 2 * d))
                        .with_d(d),
                );
            }
            if !outcome.den_constant_term.is_one() {
                failures.push(Record::new(
                    n,
                    format!("den({n},x) has constant term {}", outcome.den_constant_term),
                ));
            }
            witnesses.push(Record::new(n, format!("checked d = {:?}", outcome.checked)));
        }
        ConjectureReport::finish(id, (1, max_n), failures, witnesses, errors, started)
    }

    /// Statement 7, and statement 5 derived from the same pass.
    pub fn binary_nondivisibility(&self, max_n: usize) -> (ConjectureReport, ConjectureReport) {
        let started = Instant::now();
        let (mut failures, mut witnesses, mut errors) = (Vec::new(), Vec::new(), Vec::new());
        for (n, pair) in self.pairs((1..=max_n).collect(), PartitionClass::Binary) {
            let pair = match pair {
                Ok(p) => p,
                Err(e) => {
                    errors.push(Record::new(n, e.to_string()));
                    continue;
                }
            };
            let mut checked = Vec::new();
            let mut s = 0u32;
            while (1usize << s) <= n {
                checked.push(s);
                if binary_factor_divides(&pair.num, s) {
                    failures.push(
                        Record::new(n, format!("1 + x^{} divides num_B({n},x)", 1usize << s))
                            .with_d(1 << s),
                    );
                }
                s += 1;
            }
            witnesses.push(Record::new(n, format!("checked s = {checked:?}")));
        }
        let seven = ConjectureReport::finish(
            ConjectureId::Numbered(7),
            (2, max_n),
            failures.iter().filter(|r| r.n >= 2).cloned().collect(),
            witnesses.iter().filter(|r| r.n >= 2).cloned().collect(),
            errors.clone(),
            started,
        );
        let five_witnesses = (1..=max_n)
            .filter(|n| !failures.iter().any(|r| r.n == *n))
            .map(|n| Record::new(n, "coprime: no 1 + x^(2^s) factor of den_B divides num_B"))
            .collect();
        let five = ConjectureReport::finish(
            ConjectureId::Numbered(5),
            (1, max_n),
            failures,
            five_witnesses,
            errors,
            started,
        );
        (seven, five)
    }

    /// Statement 8: `num_O(n, -1)` equals the odd part of `n!`, the latter
    /// computed from valuations and, for `n <= 20`, also by dividing `n!`.
    pub fn odd_special_value(&self, max_n: usize) -> ConjectureReport {
        let started = Instant::now();
        let (mut failures, mut witnesses, mut errors) = (Vec::new(), Vec::new(), Vec::new());
        for (n, pair) in self.pairs((1..=max_n).collect(), PartitionClass::Odd) {
            let value = match pair {
                Ok(p) => p.num.eval_at_int(-1),
                Err(e) => {
                    errors.push(Record::new(n, e.to_string()));
                    continue;
                }
            };
            let expected = odd_part_factorial(n);
            if n <= 20 {
                let factorial: u128 = (1..=n as u128).product();
                if BigUint::from(odd_part(factorial)) != expected {
                    failures.push(Record::new(n, "valuation and division routes to o(n!) disagree"));
                }
            }
            if value != BigInt::from(expected.clone()) {
                failures.push(Record::new(n, format!("num_O({n},-1) = {value} but o({n}!) = {expected}")));
            } else {
                witnesses.push(Record::new(n, format!("num_O({n},-1) = {value}")));
            }
        }
        ConjectureReport::finish(ConjectureId::Numbered(8), (1, max_n), failures, witnesses, errors, started)
    }

    /// Statement 9: `s(n) = num_T(n, -1) = 3^(v_3(n!))`, plus block constancy
    /// `s(3k) = s(3k+1) = s(3k+2)`.
    pub fn ternary_minus_one(&self, max_n: usize) -> ConjectureReport {
        let started = Instant::now();
        let (mut failures, mut witnesses, mut errors) = (Vec::new(), Vec::new(), Vec::new());
        let mut s_values = vec![None; max_n + 1];
        for (n, pair) in self.pairs((1..=max_n).collect(), PartitionClass::Ternary) {
            let value = match pair {
                Ok(p) => p.num.eval_at_int(-1),
                Err(e) => {
                    errors.push(Record::new(n, e.to_string()));
                    continue;
                }
            };
            let expected = BigInt::from(ternary_special_value(n));
            if value != expected {
                failures.push(Record::new(n, format!("s({n}) = {value} but 3^v3({n}!) = {expected}")));
            } else {
                witnesses.push(Record::new(n, format!("s({n}) = {value}")));
            }
            s_values[n] = Some(value);
        }
        for n in [1, 2] {
            if let Some(Some(v)) = s_values.get(n) {
                if !v.is_one() {
                    failures.push(Record::new(n, format!("s({n}) = {v}, expected 1")));
                }
            }
        }
        let mut k = 1;
        while 3 * k + 2 <= max_n {
            if let (Some(a), Some(b), Some(c)) = (&s_values[3 * k], &s_values[3 * k + 1], &s_values[3 * k + 2]) {
                let block = BigInt::from(ternary_special_value(3 * k));
                if !(a == b && b == c && *a == block) {
                    failures.push(Record::new(
                        3 * k,
                        format!("block {k}: s = ({a}, {b}, {c}), expected all {block}"),
                    ));
                }
            }
            k += 1;
        }
        ConjectureReport::finish(ConjectureId::Numbered(9), (1, max_n), failures, witnesses, errors, started)
    }

    /// The `t` table `t(0..=3 max_n + 2)` from [`t_direct`].
    pub fn t_table(max_n: usize) -> Vec<BigUint> {
        (0..=3 * max_n + 2).map(t_direct).collect()
    }

    /// Statement 10 on `t(m) = num_T(m, 1)`.
    pub fn ternary_one(&self, max_n: usize, checks: TernaryOneChecks) -> ConjectureReport {
        let started = Instant::now();
        let (mut failures, mut witnesses, mut errors) = (Vec::new(), Vec::new(), Vec::new());
        let t = Self::t_table(max_n);

        if checks.direct_vs_polynomial {
            for (m, pair) in self.pairs((0..t.len()).collect(), PartitionClass::Ternary) {
                match pair {
                    Ok(p) => {
                        let from_poly = p.num.eval_at_int(1);
                        if from_poly != BigInt::from(t[m].clone()) {
                            failures.push(Record::new(
                                m,
                                format!("t_direct({m}) = {} but num_T({m},1) = {from_poly}", t[m]),
                            ));
                        }
                    }
                    Err(e) => errors.push(Record::new(m, e.to_string())),
                }
            }
        }
        if checks.block_constancy {
            for k in 0..=max_n {
                let (a, b, c) = (&t[3 * k], &t[3 * k + 1], &t[3 * k + 2]);
                if !(a == b && b == c) {
                    failures.push(Record::new(3 * k, format!("t block {k} = ({a}, {b}, {c})")));
                }
            }
        }
        if checks.recurrence {
            for k in 1..=max_n {
                let lhs = BigInt::from(t[3 * k].clone()) - BigInt::from(t[3 * k - 2].clone());
                let rhs = BigInt::from(t[k].clone() << (2 * k));
                if lhs != rhs {
                    failures.push(Record::new(
                        3 * k,
                        format!("t({}) - t({}) = {lhs} but 4^{k} t({k}) = {rhs}", 3 * k, 3 * k - 2),
                    ));
                }
            }
        }
        for m in [1, 2] {
            if !t[m].is_one() {
                failures.push(Record::new(m, format!("t({m}) = {}, expected 1", t[m])));
            }
        }
        for (m, v) in t.iter().enumerate() {
            witnesses.push(Record::new(m, format!("t({m}) = {v}")));
        }
        ConjectureReport::finish(ConjectureId::Numbered(10), (0, max_n), failures, witnesses, errors, started)
    }

    /// Statement 3 (open): the even-exponent coefficients of `num(n, x)` are
    /// unimodal.
    pub fn unimodal_even_part(&self, max_n: usize) -> ConjectureReport {
        let started = Instant::now();
        let (mut failures, mut witnesses, mut errors) = (Vec::new(), Vec::new(), Vec::new());
        for (n, pair) in self.pairs((1..=max_n).collect(), PartitionClass::Ordinary) {
            match pair {
                Ok(p) => {
                    let even = p.num.even_coefficients();
                    if crate::intpoly::is_unimodal(&even) {
                        witnesses.push(Record::new(n, format!("even part unimodal ({} terms)", even.len())));
                    } else {
                        failures.push(Record::new(n, format!("even part of num({n},x) is not unimodal")));
                    }
                }
                Err(e) => errors.push(Record::new(n, e.to_string())),
            }
        }
        let findings = failures.clone();
        ConjectureReport::finish(ConjectureId::Numbered(3), (1, max_n), failures, witnesses, errors, started)
            .with_findings(findings)
    }

    /// Statement 4 (open): `den(n, x)` is log-concave except for
    /// `n in {3, 5, 6, 7}`. Every non-log-concave `n` is a failure record;
    /// a failure set that differs from the exceptions (over the checked
    /// range) is a finding.
    pub fn den_log_concave(&self, max_n: usize) -> ConjectureReport {
        const EXCEPTIONS: [usize; 4] = [3, 5, 6, 7];
        let started = Instant::now();
        let (mut failures, mut witnesses, mut errors) = (Vec::new(), Vec::new(), Vec::new());
        for (n, pair) in self.pairs((1..=max_n).collect(), PartitionClass::Ordinary) {
            let pair = match pair {
                Ok(p) => p,
                Err(e) => {
                    errors.push(Record::new(n, e.to_string()));
                    continue;
                }
            };
            match den_log_concavity(&pair) {
                LogConcavity::FailsAt { index } => {
                    let c = pair.den_expanded();
                    failures.push(
                        Record::new(
                            n,
                            format!(
                                "den({n},x) not log-concave at {index}: {}^2 < {}*{}",
                                c.coeff(index),
                                c.coeff(index - 1),
                                c.coeff(index + 1)
                            ),
                        )
                        .with_index(index),
                    );
                }
                LogConcavity::Holds => witnesses.push(Record::new(n, format!("den({n},x) log-concave"))),
            }
        }
        let mut findings = Vec::new();
        for r in &failures {
            if !EXCEPTIONS.contains(&r.n) {
                findings.push(Record::new(r.n, format!("unexpected exception: {}", r.detail)));
            }
        }
        for n in EXCEPTIONS.into_iter().filter(|&n| n <= max_n) {
            if witnesses.iter().any(|w| w.n == n) {
                findings.push(Record::new(n, format!("den({n},x) is log-concave, expected an exception")));
            }
        }
        ConjectureReport::finish(ConjectureId::Numbered(4), (1, max_n), failures, witnesses, errors, started)
            .with_findings(findings)
    }

    /// Statement 6 (open, corrected form): `num_B(n, x)` is unimodal, and
    /// log-concave for `n > 5`; log-concavity fails at `n = 4` (index 3).
    /// Each unimodality or log-concavity violation is a failure record; the
    /// ones outside `{4, 5}`, or a log-concave `n = 4`, are findings.
    pub fn binary_numerator_shape(&self, max_n: usize) -> ConjectureReport {
        let started = Instant::now();
        let (mut failures, mut witnesses, mut errors, mut findings) =
            (Vec::new(), Vec::new(), Vec::new(), Vec::new());
        for (n, pair) in self.pairs((2..=max_n).collect(), PartitionClass::Binary) {
            let num = match pair {
                Ok(p) => p.num,
                Err(e) => {
                    errors.push(Record::new(n, e.to_string()));
                    continue;
                }
            };
            let unimodal = num.is_unimodal();
            let concavity = match num.log_concavity() {
                Ok(c) => c,
                Err(e) => {
                    failures.push(Record::new(n, format!("num_B({n},x): {e}")));
                    continue;
                }
            };
            if !unimodal {
                let rec = Record::new(n, format!("num_B({n},x) is not unimodal"));
                if n > 5 {
                    findings.push(rec.clone());
                }
                failures.push(rec);
            }
            match concavity {
                LogConcavity::FailsAt { index } => {
                    let rec = Record::new(
                        n,
                        format!(
                            "num_B({n},x) not log-concave at {index}: {}^2 < {}*{}",
                            num.coeff(index),
                            num.coeff(index - 1),
                            num.coeff(index + 1)
                        ),
                    )
                    .with_index(index);
                    if n > 5 || (n == 4 && index != 3) {
                        findings.push(rec.clone());
                    }
                    failures.push(rec);
                }
                LogConcavity::Holds => {
                    if n == 4 {
                        findings.push(Record::new(4, "num_B(4,x) is log-concave, expected failure at 3"));
                    }
                    if unimodal {
                        witnesses.push(Record::new(n, format!("num_B({n},x) unimodal and log-concave")));
                    }
                }
            }
        }
        ConjectureReport::finish(ConjectureId::Numbered(6), (2, max_n), failures, witnesses, errors, started)
            .with_findings(findings)
    }

    /// The remainder-reduction lemma for every `1 <= d <= n <= max_n`.
    pub fn remainder_reduction(&self, max_n: usize) -> ConjectureReport {
        let started = Instant::now();
        let (mut failures, mut witnesses, mut errors) = (Vec::new(), Vec::new(), Vec::new());
        let mut nums: Vec<Option<IntPoly>> = vec![None; max_n + 1];
        for (n, pair) in self.pairs((0..=max_n).collect(), PartitionClass::Ordinary) {
            match pair {
                Ok(p) => nums[n] = Some(p.num),
                Err(e) => errors.push(Record::new(n, e.to_string())),
            }
        }
        for n in 1..=max_n {
            let Some(num_n) = &nums[n] else { continue };
            for d in 1..=n {
                let r = n % d;
                let Some(num_r) = &nums[r] else { continue };
                let m = 2 * d;
                let (lhs, rhs) = (!phi_divides(m, num_n), !phi_divides(m, num_r));
                if lhs != rhs {
                    failures.push(
                        Record::new(
                            n,
                            format!("Phi_{m} ∤ num({n},x) is {lhs} but Phi_{m} ∤ num({r},x) is {rhs}"),
                        )
                        .with_d(d),
                    );
                }
            }
            witnesses.push(Record::new(n, format!("checked d = 1..={n}")));
        }
        ConjectureReport::finish(ConjectureId::RemainderReduction, (1, max_n), failures, witnesses, errors, started)
    }

    /// Statement 1 (open): mod-p irreducibility witnesses for `2 <= n <= max_n`.
    pub fn irreducibility(&self, max_n: usize) -> ConjectureReport {
        let started = Instant::now();
        let primes = self
            .witness_primes
            .clone()
            .unwrap_or_else(|| DEFAULT_WITNESS_PRIMES.to_vec());
        let (failures, mut witnesses, mut errors) = (Vec::new(), Vec::new(), Vec::new());
        let results = self.per_n((2..=max_n).collect(), |n| {
            (
                n,
                self.pair(n, PartitionClass::Ordinary)
                    .map(|p| irreducibility_witness_for(n, &p.num, &primes)),
            )
        });
        for (n, w) in results {
            match w {
                Ok(w) => {
                    let detail = match &w.verdict {
                        IrreducibilityVerdict::IrreducibleCertified(p) => format!(
                            "content {}, degree {:?}, primitive part irreducible mod {p}",
                            w.content, w.degree
                        ),
                        IrreducibilityVerdict::Inconclusive => format!(
                            "content {}, degree {:?}, inconclusive (reducible mod {:?})",
                            w.content, w.degree, w.reducible_mod
                        ),
                    };
                    witnesses.push(Record::new(n, detail));
                }
                Err(e) => errors.push(Record::new(n, e.to_string())),
            }
        }
        ConjectureReport::finish(ConjectureId::Numbered(1), (2, max_n), failures, witnesses, errors, started)
    }
}

pub fn verify_coprimality_ordinary(max_n: usize) -> ConjectureReport {
    Verifier::new().coprimality_ordinary(max_n)
}

/// Statement 7 report and the derived statement 5 report.
pub fn verify_binary_nondivisibility(max_n: usize) -> (ConjectureReport, ConjectureReport) {
    Verifier::new().binary_nondivisibility(max_n)
}

pub fn verify_odd_special_value(max_n: usize) -> ConjectureReport {
    Verifier::new().odd_special_value(max_n)
}

pub fn verify_ternary_minus_one(max_n: usize) -> ConjectureReport {
    Verifier::new().ternary_minus_one(max_n)
}

pub fn verify_ternary_one(max_n: usize) -> ConjectureReport {
    Verifier::new().ternary_one(max_n, TernaryOneChecks::default())
}

pub fn check_unimodal_even_part(max_n: usize) -> ConjectureReport {
    Verifier::new().unimodal_even_part(max_n)
}

pub fn check_den_log_concave(max_n: usize) -> ConjectureReport {
    Verifier::new().den_log_concave(max_n)
}

pub fn check_binary_numerator_shape(max_n: usize) -> ConjectureReport {
    Verifier::new().binary_numerator_shape(max_n)
}

/// Whether `Phi_2d ∤ num(n)` agrees with `Phi_2d ∤ num(n mod d)`.
pub fn remainder_reduction_check(n: usize, d: usize) -> Result<bool, SubsumError> {
    assert!(1 <= d && d <= n, "need 1 <= d <= n");
    let r = n % d;
    let num_n = reduced_pair_with(n, PartitionClass::Ordinary, Engine::Dp)?.num;
    let num_r = reduced_pair_with(r, PartitionClass::Ordinary, Engine::Dp)?.num;
    let m = phi(2 * d);
    let nonzero = |p: &IntPoly| !p.remainder_mod_monic(&m).expect("monic").is_zero();
    Ok(nonzero(&num_n) == nonzero(&num_r))
}

pub fn irreducibility_witness(n: usize, primes: &[u64]) -> Result<IrreducibilityWitness, SubsumError> {
    let num = reduced_pair_with(n, PartitionClass::Ordinary, Engine::Dp)?.num;
    Ok(irreducibility_witness_for(n, &num, primes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn odd_part_examples() {
        assert_eq!(odd_part(24), 3);
        assert_eq!(odd_part(1), 1);
        assert_eq!(odd_part(40), 5);
    }

    #[test]
    fn legendre_examples() {
        assert_eq!(legendre_valuation(3, 9), 4);
        assert_eq!(legendre_valuation(5, 0), 0);
        assert_eq!(legendre_valuation(2, 4), 3);
    }

    #[test]
    fn odd_part_factorial_two_routes() {
        for n in 0..=30usize {
            let factorial: u128 = (1..=n as u128).product();
            assert_eq!(odd_part_factorial(n), BigUint::from(odd_part(factorial)), "n={n}");
        }
    }

    #[test]
    fn conjecture_ids_round_trip() {
        for id in ConjectureId::ALL {
            assert_eq!(id.to_string().parse::<ConjectureId>().unwrap(), id);
        }
        assert!("11".parse::<ConjectureId>().is_err());
        assert!("0".parse::<ConjectureId>().is_err());
    }

    #[test]
    fn coprimality_small() {
        let r = verify_coprimality_ordinary(4);
        assert_eq!(r.verdict, Verdict::AllHold);
        let n4 = r.witnesses.iter().find(|w| w.n == 4).unwrap();
        assert_eq!(n4.detail, "checked d = [1, 2, 3, 4]");
        assert_eq!(verify_coprimality_ordinary(1).verdict, Verdict::AllHold);
    }

    #[test]
    fn binary_examples() {
        let num4 = IntPoly::from_i64s(&[4, 10, 18, 18, 20, 18, 18, 10, 4]);
        assert!(!binary_factor_divides(&num4, 2));
        let r = num4.remainder_mod_monic(&IntPoly::binomial(4)).unwrap();
        assert_eq!(r.coeff(0), BigInt::from(4 - 20 + 4));
        let num2 = &IntPoly::from_i64s(&[1, 1]).pow(2) + &IntPoly::from_i64s(&[1, 0, 1]);
        assert_eq!(num2.eval_at_int(-1), BigInt::from(2));
        assert!(!binary_factor_divides(&num2, 0));
        let (seven, five) = verify_binary_nondivisibility(8);
        assert_eq!(seven.verdict, Verdict::AllHold);
        assert_eq!(five.verdict, Verdict::AllHold);
        assert_eq!(five.conjecture, ConjectureId::Numbered(5));
    }

    #[test]
    fn special_values_small() {
        assert_eq!(verify_odd_special_value(8).verdict, Verdict::AllHold);
        assert_eq!(verify_ternary_minus_one(9).verdict, Verdict::AllHold);
        assert_eq!(ternary_special_value(9), BigUint::from(81u32));
        assert_eq!(ternary_special_value(3), BigUint::from(3u32));
        assert_eq!(verify_ternary_one(3).verdict, Verdict::AllHold);
    }

    #[test]
    fn remainder_reduction_examples() {
        assert!(remainder_reduction_check(7, 3).unwrap());
        assert!(remainder_reduction_check(5, 5).unwrap());
        assert!(remainder_reduction_check(4, 1).unwrap());
    }

    #[test]
    fn irreducibility_examples() {
        let w = irreducibility_witness(2, &[2]).unwrap();
        assert_eq!(w.content, BigInt::from(2));
        assert_eq!(w.verdict, IrreducibilityVerdict::IrreducibleCertified(2));
        let w = irreducibility_witness(1, &[2, 3]).unwrap();
        assert_eq!(w.verdict, IrreducibilityVerdict::Inconclusive);
        let w = irreducibility_witness(4, &[2, 3, 5, 7, 11, 13]).unwrap();
        assert_eq!(w.content, BigInt::one());
    }

    #[test]
    fn hook_breaks_coprimality() {
        let v = Verifier::new().numerator_hook(|_, n, num| {
            if n == 3 {
                num.mul_binomial_assign(1);
            }
        });
        let r = v.coprimality_ordinary(4);
        assert_eq!(r.verdict, Verdict::FailuresFound);
        assert_eq!(r.failing_n(), BTreeSet::from([3]));
        assert_eq!(r.failures[0].d, Some(1));
        assert!(r.is_blocking());
    }

    #[test]
    fn open_reports_are_witness_only() {
        let r = check_binary_numerator_shape(6);
        assert_eq!(r.verdict, Verdict::WitnessOnly);
        let n4 = r.failures.iter().find(|w| w.n == 4).unwrap();
        assert_eq!(n4.index, Some(3));
        assert!(n4.detail.contains("18^2 < 18*20"));
        assert!(r.findings.is_empty());
        assert!(!r.is_blocking());
    }
}
