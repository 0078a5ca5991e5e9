//! Per-`k` certification for `x^2 + (2k - 1)^y = k^z`.
//!
//! Write `k - 1 = a b^2` with `a` squarefree. Any solution has `ab | x`, and when
//! `4 | k` with `2k - 1` a prime power, `y` and `z` are odd. So for a divisor
//! `d > 1` of `ab`, `F = (d^2, 0, 2k - 1)` primitively represents `k^z`. If every
//! form `f_i = (4k, 2l_i, (l_i^2 + D)/4k)` (`D = d^2 (2k - 1)`) has even order
//! and every exponent `m <= M + 1` with `k^m` represented by `F` is even, then
//! `F` represents only even powers of `k`, and the only solution is `(k-1, 1, 2)`.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::certificate::{Certificate, FailureReason, Verdict};
use crate::error::{Error, Result};
use crate::form::{class_number, compose_raw, Form};
use crate::modular::{
    exact_sqrt, factorize, is_prime_power, solve_terai_congruence, solve_terai_congruence_scan,
    CongruenceSolutionSet, Factorization,
};
use crate::represent::{direct_represented_exponents, represented_exponents_with};

/// Default ceiling on `M`, the largest order among the `f_i`.
pub const DEFAULT_MAX_ORDER: u64 = 1_000_000;

/// Bit budget for `k^z_max` in the brute-force searcher.
pub const SEARCH_BIT_BUDGET: u64 = 1 << 20;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum EligibilityMode {
    /// `k = 4 (mod 8)` and `2k - 1` a prime power.
    #[default]
    Strict,
    /// `4 | k` and `2k - 1` a prime power.
    Relaxed,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EligibilityReport {
    pub k: u64,
    pub divisible_by_4: bool,
    /// `4 || k`, i.e. `k = 4 (mod 8)`.
    pub exactly_divisible_by_4: bool,
    /// `(p, e)` with `2k - 1 = p^e`.
    pub prime_power: Option<(u64, u32)>,
    pub mode: EligibilityMode,
}

impl EligibilityReport {
    pub fn is_eligible(&self) -> bool {
        let divisibility = match self.mode {
            EligibilityMode::Strict => self.exactly_divisible_by_4,
            EligibilityMode::Relaxed => self.divisible_by_4,
        };
        divisibility && self.prime_power.is_some()
    }

    /// Human-readable reason for ineligibility, `None` if eligible.
    pub fn reason(&self) -> Option<String> {
        if !self.divisible_by_4 {
            return Some(format!("4 does not divide k = {}", self.k));
        }
        if self.mode == EligibilityMode::Strict && !self.exactly_divisible_by_4 {
            return Some(format!("8 divides k = {}, so 4 does not exactly divide it", self.k));
        }
        if self.prime_power.is_none() {
            return Some(format!("2k - 1 = {} is not a prime power", 2 * self.k as u128 - 1));
        }
        None
    }
}

pub fn eligibility(k: u64, mode: EligibilityMode) -> Result<EligibilityReport> {
    if k < 2 {
        return Err(Error::domain(format!("k = {k} must be at least 2")));
    }
    let two_k_minus_1 = k
        .checked_mul(2)
        .map(|v| v - 1)
        .ok_or_else(|| Error::Capacity(format!("2k - 1 overflows for k = {k}")))?;
    Ok(EligibilityReport {
        k,
        divisible_by_4: k % 4 == 0,
        exactly_divisible_by_4: k % 8 == 4,
        prime_power: is_prime_power(two_k_minus_1)?,
        mode,
    })
}

/// `n = a b^2` with `a` squarefree.
pub fn decompose_squarefree(n: u64) -> Result<(u64, u64)> {
    let f = factorize(n)?;
    let (mut a, mut b) = (1u64, 1u64);
    for &(p, e) in f.factors() {
        if e % 2 == 1 {
            a *= p;
        }
        b *= p.pow(e / 2);
    }
    Ok((a, b))
}

/// Everything about `k` that does not depend on the chosen divisor.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KContext {
    pub k: u64,
    pub k_factorization: Factorization,
    pub prime_power: (u64, u32),
    pub a: u64,
    pub b: u64,
    /// Divisors of `ab` exceeding 1, ascending.
    pub ab_divisors: Vec<u64>,
    pub strictly_eligible: bool,
}

impl KContext {
    pub fn new(k: u64, mode: EligibilityMode) -> Result<Self> {
        let report = eligibility(k, mode)?;
        if let Some(reason) = report.reason() {
            return Err(Error::domain(format!("k = {k} is ineligible: {reason}")));
        }
        let (a, b) = decompose_squarefree(k - 1)?;
        let ab_divisors = factorize(a * b)?.divisors().into_iter().filter(|&d| d > 1).collect();
        Ok(KContext {
            k,
            k_factorization: factorize(k)?,
            prime_power: report.prime_power.expect("eligible"),
            a,
            b,
            ab_divisors,
            strictly_eligible: report.exactly_divisible_by_4,
        })
    }

    pub fn ab(&self) -> u64 {
        self.a * self.b
    }

    /// `D = d^2 (2k - 1)`.
    pub fn d_value(&self, d: u64) -> BigInt {
        BigInt::from(d).pow(2) * (BigInt::from(self.k) * 2 - 1)
    }

    fn check_divisor(&self, d: u64) -> Result<()> {
        if d <= 1 || self.ab() % d != 0 {
            return Err(Error::domain(format!("d = {d} must be a divisor of ab = {} exceeding 1", self.ab())));
        }
        Ok(())
    }

    /// The congruence solutions with their forms `f_i`, and `F = (d^2, 0, 2k - 1)`.
    pub fn build_candidate_forms(&self, d: u64) -> Result<(CongruenceSolutionSet, Form)> {
        self.check_divisor(d)?;
        let d_value = self.d_value(d);
        let solutions = solve_terai_congruence(self.k, &d_value)?;
        let f = Form::new(BigInt::from(d).pow(2), BigInt::zero(), BigInt::from(self.k) * 2 - 1)?;
        assert_eq!(f.discriminant(), -BigInt::from(4) * &d_value);
        Ok((solutions, f))
    }

    /// Runs the even-order / even-exponent test for one divisor.
    pub fn certify_d(&self, d: u64, max_order_cap: u64) -> Result<Certificate> {
        let (solutions, f) = self.build_candidate_forms(d)?;
        let discriminant = f.discriminant();
        let h = class_number(&discriminant)?;
        let mut cert = Certificate {
            k: self.k,
            d,
            d_value: solutions.d_value.clone(),
            discriminant,
            congruence_solutions: solutions.solutions.clone(),
            forms: solutions.forms.clone(),
            orders: Vec::new(),
            class_number: h,
            max_order: 0,
            represented_exponents: Vec::new(),
            verdict: Verdict::Failed,
            failure_reason: None,
        };
        if solutions.is_empty() {
            cert.failure_reason = Some(FailureReason::NoCongruenceSolutions);
            return Ok(cert);
        }
        for fi in &solutions.forms {
            let n = fi.order_dividing(h, u64::MAX)?;
            // (1, 0, D) cannot primitively represent 4k when d > 1
            if n <= 1 {
                return Err(Error::domain(format!("form {fi} lies in the identity class for k = {}, d = {d}", self.k)));
            }
            cert.orders.push(n);
        }
        cert.max_order = *cert.orders.iter().max().expect("nonempty");
        if cert.max_order > max_order_cap {
            cert.failure_reason = Some(FailureReason::OrderOverflow);
            return Ok(cert);
        }
        cert.represented_exponents =
            represented_exponents_with(&f, &self.k_factorization, cert.max_order + 1, Some(h))?;
        cert.failure_reason = judge(&cert.orders, &cert.represented_exponents);
        if cert.failure_reason.is_none() {
            cert.verdict = Verdict::EvenOnly;
        }
        Ok(cert)
    }

    /// Divisor candidates in search order.
    pub fn candidates(&self, strategy: DivisorStrategy) -> Vec<u64> {
        match strategy {
            DivisorStrategy::Ascending => self.ab_divisors.clone(),
            DivisorStrategy::AbFirst => {
                let ab = self.ab();
                std::iter::once(ab).chain(self.ab_divisors.iter().copied().filter(|&d| d != ab)).collect()
            }
        }
    }
}

fn judge(orders: &[u64], exponents: &[u64]) -> Option<FailureReason> {
    if let Some(i) = orders.iter().position(|n| n % 2 == 1) {
        return Some(FailureReason::OddOrder(i));
    }
    exponents.iter().find(|m| *m % 2 == 1).map(|&m| FailureReason::OddExponent(m))
}

/// Order in which divisors `d | ab` are tried.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DivisorStrategy {
    /// `d = ab` first, then the remaining divisors ascending.
    #[default]
    AbFirst,
    Ascending,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub strategy: DivisorStrategy,
    pub mode: EligibilityMode,
    pub max_order: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { strategy: DivisorStrategy::AbFirst, mode: EligibilityMode::Strict, max_order: DEFAULT_MAX_ORDER }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Attempt {
    pub d: u64,
    pub outcome: std::result::Result<Certificate, Error>,
}

/// Outcome of the divisor search for one `k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub k: u64,
    pub a: u64,
    pub b: u64,
    /// Every candidate tried, in order; the last one is the certificate when found.
    pub attempts: Vec<Attempt>,
}

impl VerifyReport {
    pub fn certificate(&self) -> Option<&Certificate> {
        self.attempts.iter().rev().find_map(|a| a.outcome.as_ref().ok().filter(|c| c.is_even_only()))
    }

    pub fn is_exhausted(&self) -> bool {
        self.certificate().is_none()
    }
}

/// Searches divisors of `ab` until one certifies.
pub fn verify_k(k: u64, options: VerifyOptions) -> Result<VerifyReport> {
    let ctx = KContext::new(k, options.mode)?;
    let mut attempts = Vec::new();
    for d in ctx.candidates(options.strategy) {
        let outcome = ctx.certify_d(d, options.max_order);
        let done = matches!(&outcome, Ok(c) if c.is_even_only());
        attempts.push(Attempt { d, outcome });
        if done {
            break;
        }
    }
    Ok(VerifyReport { k, a: ctx.a, b: ctx.b, attempts })
}

/// One-shot certification of `(k, d)` under relaxed eligibility.
pub fn certify_d(k: u64, d: u64, max_order_cap: u64) -> Result<Certificate> {
    KContext::new(k, EligibilityMode::Relaxed)?.certify_d(d, max_order_cap)
}

/// Tests whether `d = ab` alone certifies `k`, without falling back.
pub fn check_ab_conjecture(k: u64, max_order_cap: u64) -> Result<Certificate> {
    let ctx = KContext::new(k, EligibilityMode::Strict)?;
    ctx.certify_d(ctx.ab(), max_order_cap)
}

/// Strictly (or relaxed-) eligible `k` in `[from, to]`.
pub fn eligible_in_range(from: u64, to: u64, mode: EligibilityMode) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for k in from.max(2)..=to {
        if k % 4 == 0 && eligibility(k, mode)?.is_eligible() {
            out.push(k);
        }
    }
    Ok(out)
}

/// Runs `job` over `ks` on a pool of `jobs` workers (all cores when `None`),
/// returning results in the order of `ks` together with wall time per item.
pub fn run_parallel<T, F>(ks: &[u64], jobs: Option<usize>, job: F) -> Result<Vec<(u64, T, Duration)>>
where
    T: Send,
    F: Fn(u64) -> T + Sync,
{
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = jobs {
        builder = builder.num_threads(n.max(1));
    }
    let pool = builder.build().map_err(|e| Error::domain(format!("cannot build worker pool: {e}")))?;
    Ok(pool.install(|| {
        ks.par_iter()
            .map(|&k| {
                let start = Instant::now();
                let out = job(k);
                (k, out, start.elapsed())
            })
            .collect()
    }))
}

/// A solution of `x^2 + (2k - 1)^y = k^z` in positive integers.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct SolutionTriple {
    pub x: BigInt,
    pub y: u32,
    pub z: u32,
}

impl SolutionTriple {
    pub fn satisfies(&self, k: u64) -> bool {
        let k = BigInt::from(k);
        let base: BigInt = &k * 2 - 1;
        &self.x * &self.x + base.pow(self.y) == k.pow(self.z)
    }
}

impl std::fmt::Display for SolutionTriple {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.z)
    }
}

/// Exhaustive search over `1 <= z <= z_max`.
pub fn brute_force_solutions(k: u64, z_max: u32) -> Result<Vec<SolutionTriple>> {
    if k < 2 {
        return Err(Error::domain(format!("k = {k} must be at least 2")));
    }
    let bits = (64 - k.leading_zeros()) as u64 * z_max as u64;
    if bits > SEARCH_BIT_BUDGET {
        return Err(Error::Capacity(format!("k^{z_max} exceeds the {SEARCH_BIT_BUDGET}-bit search budget")));
    }
    let kb = BigInt::from(k);
    let base: BigInt = &kb * 2 - 1;
    let mut out = Vec::new();
    let mut k_pow = BigInt::one();
    for z in 1..=z_max {
        k_pow *= &kb;
        let mut b_pow = base.clone();
        let mut y = 1u32;
        while b_pow < k_pow {
            if let Some(x) = exact_sqrt(&(&k_pow - &b_pow)) {
                out.push(SolutionTriple { x, y, z });
            }
            b_pow *= &base;
            y += 1;
        }
    }
    Ok(out)
}

/// Composes `f` with itself step by step, unreduced:
/// `g_1 = f`, `g_j = compose(g_(j-1), f)`, returning `[g_1, ..., g_j_max]`.
pub fn stepwise_powers(f: &Form, j_max: u32) -> Vec<Form> {
    let disc = f.discriminant();
    let mut out = vec![f.clone()];
    for _ in 2..=j_max {
        let next = compose_raw(out.last().expect("nonempty"), f, &disc);
        out.push(next);
    }
    out
}

/// `g_j = (4k^j, 2L, C)` with `L = 2k + l (mod 4k)` for `2 <= j <= j_max`.
pub fn power_law_holds(k: u64, l: u64, f: &Form, j_max: u32) -> bool {
    let kb = BigInt::from(k);
    let eight_k = &kb * 8;
    let expected_b: BigInt = (BigInt::from(2) * (&kb * 2u32 + l)).mod_floor(&eight_k);
    stepwise_powers(f, j_max).iter().enumerate().skip(1).all(|(i, g)| {
        let j = i as u32 + 1;
        *g.a() == kb.pow(j) * 4 && g.b().mod_floor(&eight_k) == expected_b
    })
}

/// Exponent cross-check limit for [`reverify_certificate`].
const REVERIFY_DIRECT_EXPONENT: u64 = 6;

/// Recomputes a certificate from `(k, d)` alone and lists every field that differs.
///
/// Independent of [`KContext::certify_d`] where it can be: congruence solutions
/// come from the exhaustive scan, orders are checked by exact-order tests
/// (`f^n ~ 1` and `f^(n/q) !~ 1` for each prime `q | n`), and small exponents
/// are re-derived by direct root enumeration.
pub fn reverify_certificate(cert: &Certificate) -> std::result::Result<(), Vec<String>> {
    let mut problems = Vec::new();
    let mut check = |ok: bool, what: String| {
        if !ok {
            problems.push(what);
        }
    };
    let ctx = match KContext::new(cert.k, EligibilityMode::Relaxed) {
        Ok(ctx) => ctx,
        Err(e) => return Err(vec![format!("k: {e}")]),
    };
    if let Err(e) = ctx.check_divisor(cert.d) {
        return Err(vec![format!("d: {e}")]);
    }
    let d_value = ctx.d_value(cert.d);
    let disc = -BigInt::from(4) * &d_value;
    check(cert.d_value == d_value, format!("D: expected {d_value}, found {}", cert.d_value));
    check(cert.discriminant == disc, format!("discriminant: expected {disc}, found {}", cert.discriminant));

    let solutions = if cert.k <= 1_000_000 {
        solve_terai_congruence_scan(cert.k, &d_value)
    } else {
        solve_terai_congruence(cert.k, &d_value).map(|s| s.solutions)
    };
    let solutions = match solutions {
        Ok(s) => s,
        Err(e) => return Err(vec![format!("congruence: {e}")]),
    };
    check(
        cert.congruence_solutions == solutions,
        format!("congruence_solutions: expected {solutions:?}, found {:?}", cert.congruence_solutions),
    );
    let four_k = BigInt::from(4 * cert.k);
    let forms: Vec<Form> = solutions
        .iter()
        .filter_map(|&l| {
            let l = BigInt::from(l);
            Form::new(four_k.clone(), &l * 2, (&l * &l + &d_value) / &four_k).ok()
        })
        .collect();
    check(cert.forms == forms, "forms differ from (4k, 2l, (l^2 + D)/4k)".to_string());

    let h = match class_number(&disc) {
        Ok(h) => h,
        Err(e) => return Err(vec![format!("class_number: {e}")]),
    };
    check(cert.class_number == h, format!("class_number: expected {h}, found {}", cert.class_number));

    if forms.is_empty() {
        check(
            cert.failure_reason == Some(FailureReason::NoCongruenceSolutions) && cert.verdict == Verdict::Failed,
            "empty congruence set must fail with no-congruence-solutions".to_string(),
        );
        return if problems.is_empty() { Ok(()) } else { Err(problems) };
    }

    check(cert.orders.len() == forms.len(), format!("orders: expected {} entries", forms.len()));
    for (i, (f, &n)) in forms.iter().zip(&cert.orders).enumerate() {
        check(n > 1 && h % n == 0, format!("orders[{i}] = {n} must exceed 1 and divide h = {h}"));
        check(is_exact_order(f, n), format!("orders[{i}] = {n} is not the exact order of {f}"));
    }
    let m_max = cert.orders.iter().copied().max().unwrap_or(0);
    check(cert.max_order == m_max, format!("M: expected {m_max}, found {}", cert.max_order));

    if cert.failure_reason == Some(FailureReason::OrderOverflow) {
        check(cert.verdict == Verdict::Failed, "order-overflow must fail".to_string());
        check(cert.represented_exponents.is_empty(), "order-overflow carries no exponents".to_string());
        return if problems.is_empty() { Ok(()) } else { Err(problems) };
    }

    let f_big = Form::new_unchecked(BigInt::from(cert.d).pow(2), BigInt::zero(), BigInt::from(cert.k) * 2 - 1);
    match represented_exponents_with(&f_big, &ctx.k_factorization, m_max + 1, Some(h)) {
        Ok(exps) => check(
            cert.represented_exponents == exps,
            format!("represented_exponents: expected {exps:?}, found {:?}", cert.represented_exponents),
        ),
        Err(e) => check(false, format!("represented_exponents: {e}")),
    }
    let direct_cap = REVERIFY_DIRECT_EXPONENT.min(m_max + 1);
    if let Ok(direct) = direct_represented_exponents(&f_big, &ctx.k_factorization, direct_cap) {
        let claimed: Vec<u64> = cert.represented_exponents.iter().copied().filter(|&m| m <= direct_cap).collect();
        check(claimed == direct, format!("exponents <= {direct_cap}: direct check gives {direct:?}"));
    }

    let reason = judge(&cert.orders, &cert.represented_exponents);
    let verdict = if reason.is_none() { Verdict::EvenOnly } else { Verdict::Failed };
    check(cert.verdict == verdict, format!("verdict: expected {verdict}, found {}", cert.verdict));
    check(
        cert.failure_reason == reason,
        format!("failure_reason: expected {reason:?}, found {:?}", cert.failure_reason),
    );
    if problems.is_empty() {
        Ok(())
    } else {
        Err(problems)
    }
}

fn is_exact_order(f: &Form, n: u64) -> bool {
    if n == 0 || !f.power(n).is_identity_class() {
        return false;
    }
    match factorize(n) {
        Ok(fac) => fac.factors().iter().all(|&(q, _)| !f.power(n / q).is_identity_class()),
        Err(_) => false,
    }
}

/// Number of digits of `k^m`, for reporting.
pub fn power_digits(k: u64, m: u64) -> u64 {
    ((k as f64).log10() * m as f64).floor().to_u64().unwrap_or(u64::MAX) + 1
}
