//! Desk-scale factorization, modular square roots and the congruence
//! solver that produces the forms `(4k, 2l, (l^2 + D) / 4k)`.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::form::Form;

/// Trial division bound used by [`factorize`].
pub const TRIAL_DIVISION_BOUND: u64 = 10_000_000;

/// Below this bound modular square roots mod a prime are found by scanning.
const SCAN_BOUND: u64 = 10_000;

/// Prime factorization of a positive integer, primes strictly increasing.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    value: BigUint,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    /// Builds a factorization from `(prime, exponent)` pairs. Pairs are sorted,
    /// zero exponents dropped; primality of the entries is the caller's promise.
    pub fn from_factors(mut factors: Vec<(u64, u32)>) -> Self {
        factors.retain(|&(_, e)| e > 0);
        factors.sort_unstable();
        factors.dedup_by(|next, prev| {
            if next.0 == prev.0 {
                prev.1 += next.1;
                true
            } else {
                false
            }
        });
        let value = factors
            .iter()
            .fold(BigUint::one(), |acc, &(p, e)| acc * BigUint::from(p).pow(e));
        Factorization { value, factors }
    }

    pub fn one() -> Self {
        Factorization { value: BigUint::one(), factors: Vec::new() }
    }

    pub fn value(&self) -> &BigUint {
        &self.value
    }

    pub fn value_u64(&self) -> Option<u64> {
        self.value.to_u64()
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Number of distinct prime divisors.
    pub fn omega(&self) -> usize {
        self.factors.len()
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors.iter().find(|&&(q, _)| q == p).map_or(0, |&(_, e)| e)
    }

    /// Factorization of `value^m`, obtained by scaling exponents.
    pub fn pow(&self, m: u32) -> Self {
        Factorization::from_factors(self.factors.iter().map(|&(p, e)| (p, e * m)).collect())
    }

    /// Factorization of the product of two factored integers.
    pub fn mul(&self, other: &Factorization) -> Self {
        let mut all = self.factors.clone();
        all.extend_from_slice(&other.factors);
        Factorization::from_factors(all)
    }

    /// All positive divisors, ascending. Only for values that fit in `u64`.
    pub fn divisors(&self) -> Vec<u64> {
        let mut divs = vec![1u64];
        for &(p, e) in &self.factors {
            let len = divs.len();
            let mut pk = 1u64;
            for _ in 0..e {
                pk *= p;
                for i in 0..len {
                    divs.push(divs[i] * pk);
                }
            }
        }
        divs.sort_unstable();
        divs
    }
}

impl fmt::Display for Factorization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|&(p, e)| if e == 1 { p.to_string() } else { format!("{p}^{e}") })
            .collect();
        write!(f, "{}", parts.join(" * "))
    }
}

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &p in &BASES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Complete factorization by trial division up to [`TRIAL_DIVISION_BOUND`]
/// followed by a primality test on the remaining cofactor.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::domain("cannot factor 0"));
    }
    let mut rest = n;
    let mut factors = Vec::new();
    let mut push = |p: u64, rest: &mut u64| {
        let mut e = 0;
        while *rest % p == 0 {
            *rest /= p;
            e += 1;
        }
        if e > 0 {
            factors.push((p, e));
        }
    };
    push(2, &mut rest);
    push(3, &mut rest);
    // 6j +- 1 wheel
    let mut p = 5u64;
    while p <= TRIAL_DIVISION_BOUND && p.saturating_mul(p) <= rest {
        push(p, &mut rest);
        push(p + 2, &mut rest);
        p += 6;
    }
    if rest > 1 {
        if p.saturating_mul(p) > rest || is_prime(rest) {
            factors.push((rest, 1));
        } else {
            return Err(Error::Capacity(format!(
                "composite cofactor {rest} of {n} has no prime factor below {TRIAL_DIVISION_BOUND}"
            )));
        }
    }
    Ok(Factorization::from_factors(factors))
}

/// `Some((p, e))` when `n = p^e` for a prime `p`.
pub fn is_prime_power(n: u64) -> Result<Option<(u64, u32)>> {
    if n < 2 {
        return Err(Error::domain("is_prime_power needs n >= 2"));
    }
    let f = factorize(n)?;
    Ok(match f.factors() {
        [single] => Some(*single),
        _ => None,
    })
}

/// Euclidean residue of `a` modulo `m`, in `[0, m)`.
pub fn residue(a: &BigInt, m: &BigInt) -> BigInt {
    a.mod_floor(m)
}

fn residue_u64(a: &BigInt, m: u64) -> u64 {
    a.mod_floor(&BigInt::from(m)).to_u64().expect("residue below u64 modulus")
}

/// Tonelli-Shanks over `u64`; `p` odd prime, `a` a nonzero residue.
fn tonelli_shanks(a: u64, p: u64) -> Option<u64> {
    if pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let mut q = p - 1;
    let mut s = 0u32;
    while q % 2 == 0 {
        q /= 2;
        s += 1;
    }
    if s == 1 {
        return Some(pow_mod(a, (p + 1) / 4, p));
    }
    let mut z = 2;
    while pow_mod(z, (p - 1) / 2, p) != p - 1 {
        z += 1;
    }
    let mut m = s;
    let mut c = pow_mod(z, q, p);
    let mut t = pow_mod(a, q, p);
    let mut r = pow_mod(a, (q + 1) / 2, p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = mul_mod(t2, t2, p);
            i += 1;
        }
        let b = pow_mod(c, 1u64 << (m - i - 1), p);
        m = i;
        c = mul_mod(b, b, p);
        t = mul_mod(t, c, p);
        r = mul_mod(r, b, p);
    }
    Some(r)
}

pub(crate) fn sqrt_mod_prime_u64(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 {
        return Some(0);
    }
    if p == 2 {
        return Some(a);
    }
    if p < SCAN_BOUND {
        return (1..p).find(|&r| r * r % p == a);
    }
    tonelli_shanks(a, p)
}

/// Some square root of `a` modulo the odd prime `p`, or `None` for a non-residue.
/// The root is canonical in `[0, p)`; `0` when `p | a`.
pub fn sqrt_mod_prime(a: &BigInt, p: u64) -> Result<Option<u64>> {
    if p < 3 || !is_prime(p) {
        return Err(Error::domain(format!("{p} is not an odd prime")));
    }
    Ok(sqrt_mod_prime_u64(residue_u64(a, p), p))
}

/// Lifts a square root `r` of `a` mod `p` to the unique root mod `p^e`
/// congruent to `r` mod `p`.
pub fn hensel_lift(r: &BigInt, a: &BigInt, p: u64, e: u32) -> Result<BigInt> {
    if e == 0 {
        return Err(Error::domain("hensel_lift needs e >= 1"));
    }
    let pb = BigInt::from(p);
    let r = residue(r, &pb);
    if (&r * &r - a).mod_floor(&pb) != BigInt::zero() {
        return Err(Error::domain(format!("{r}^2 is not congruent to {a} mod {p}")));
    }
    if p == 2 || r.is_zero() {
        return Err(Error::SingularLift { p });
    }
    let mut root = r;
    let mut modulus = pb.clone();
    for _ in 1..e {
        modulus *= &pb;
        // root <- root - (root^2 - a) / (2 root)  mod p^(i+1)
        let f = (&root * &root - a).mod_floor(&modulus);
        let inv = mod_inverse(&(BigInt::from(2) * &root), &modulus)
            .ok_or(Error::SingularLift { p })?;
        root = (&root - f * inv).mod_floor(&modulus);
    }
    Ok(root)
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let eg = a.mod_floor(m).extended_gcd(m);
    if eg.gcd.is_one() {
        Some(eg.x.mod_floor(m))
    } else {
        None
    }
}

/// All `x mod 2^j` with `x^2 = a (mod 2^j)` for odd `a`, ascending.
pub fn sqrts_mod_2pow(a: &BigInt, j: u32) -> Vec<BigInt> {
    assert!(a.is_odd(), "sqrts_mod_2pow expects an odd argument");
    match j {
        0 => vec![BigInt::zero()],
        1 => vec![BigInt::one()],
        2 => {
            if residue_u64(a, 4) == 1 {
                vec![BigInt::from(1), BigInt::from(3)]
            } else {
                Vec::new()
            }
        }
        _ => {
            if residue_u64(a, 8) != 1 {
                return Vec::new();
            }
            // Invariant: x^2 = a mod 2^(i+1), x odd.
            let mut x = BigInt::one();
            for i in 3..j {
                let modulus = BigInt::one() << (i + 1);
                if (&x * &x - a).mod_floor(&modulus) != BigInt::zero() {
                    x += BigInt::one() << (i - 1);
                }
            }
            let modulus = BigInt::one() << j;
            let half = BigInt::one() << (j - 1);
            let mut roots = vec![
                x.mod_floor(&modulus),
                (-&x).mod_floor(&modulus),
                (&x + &half).mod_floor(&modulus),
                (-&x + &half).mod_floor(&modulus),
            ];
            roots.sort();
            roots.dedup();
            roots
        }
    }
}

/// All roots of `x^2 = a` modulo `p^e`, including the case `p | a`.
fn sqrts_mod_prime_power(a: &BigInt, p: u64, e: u32) -> Vec<BigInt> {
    let pb = BigInt::from(p);
    let pe = pb.pow(e);
    let a_red = residue(a, &pe);
    if p == 2 && a_red.is_odd() {
        return sqrts_mod_2pow(&a_red, e);
    }
    if p != 2 && !(&a_red % &pb).is_zero() {
        let Some(r) = sqrt_mod_prime_u64(residue_u64(&a_red, p), p) else {
            return Vec::new();
        };
        let lifted = hensel_lift(&BigInt::from(r), &a_red, p, e).expect("nonsingular lift");
        let mut roots = vec![lifted.clone(), (-lifted).mod_floor(&pe)];
        roots.sort();
        return roots;
    }
    // Singular case: extend roots one power of p at a time by enumeration.
    let mut roots: Vec<BigInt> = (0..p)
        .map(BigInt::from)
        .filter(|x| ((x * x) - &a_red).mod_floor(&pb).is_zero())
        .collect();
    let mut modulus = pb.clone();
    for _ in 1..e {
        let next = &modulus * &pb;
        let mut lifted = Vec::new();
        for r in &roots {
            for t in 0..p {
                let x = r + &modulus * t;
                if (&x * &x - &a_red).mod_floor(&next).is_zero() {
                    lifted.push(x);
                }
            }
        }
        roots = lifted;
        modulus = next;
    }
    roots.sort();
    roots
}

/// Chinese remaindering of per-modulus root lists into roots mod the product.
fn crt_combine(parts: Vec<(BigInt, Vec<BigInt>)>) -> Vec<BigInt> {
    let mut acc_mod = BigInt::one();
    let mut acc: Vec<BigInt> = vec![BigInt::zero()];
    for (m, roots) in parts {
        let inv = mod_inverse(&acc_mod, &m).expect("pairwise coprime moduli");
        let new_mod = &acc_mod * &m;
        let mut next = Vec::with_capacity(acc.len() * roots.len());
        for x in &acc {
            for r in &roots {
                // y = x + acc_mod * ((r - x) * inv mod m)
                let t = ((r - x) * &inv).mod_floor(&m);
                next.push((x + &acc_mod * t).mod_floor(&new_mod));
            }
        }
        acc = next;
        acc_mod = new_mod;
    }
    acc.sort();
    acc.dedup();
    acc
}

/// All `x` in `[0, m)` with `x^2 = a (mod m)`, for `gcd(a, m) = 1`.
pub fn sqrts_mod(a: &BigInt, m: &Factorization) -> Result<Vec<BigInt>> {
    let modulus = BigInt::from_biguint(Sign::Plus, m.value().clone());
    if !a.gcd(&modulus).is_one() {
        return Err(Error::domain(format!("sqrts_mod needs gcd({a}, {modulus}) = 1")));
    }
    Ok(sqrts_mod_any(a, m))
}

/// Same as [`sqrts_mod`] but without the coprimality requirement.
pub(crate) fn sqrts_mod_any(a: &BigInt, m: &Factorization) -> Vec<BigInt> {
    let mut parts = Vec::with_capacity(m.omega());
    for &(p, e) in m.factors() {
        let roots = sqrts_mod_prime_power(a, p, e);
        if roots.is_empty() {
            return Vec::new();
        }
        parts.push((BigInt::from(p).pow(e), roots));
    }
    crt_combine(parts)
}

/// Roots of `x^2 = a (mod m)` over machine words, for the class-number loop.
/// `m` is given by its factorization; all roots returned in `[0, m)`.
pub(crate) fn sqrts_mod_u64(a: i128, factors: &[(u64, u32)]) -> Vec<u64> {
    let mut acc_mod: u64 = 1;
    let mut acc: Vec<u64> = vec![0];
    for &(p, e) in factors {
        let pe = p.pow(e);
        let a_red = a.rem_euclid(pe as i128) as u64;
        let roots = prime_power_roots_u64(a_red, p, e, pe);
        if roots.is_empty() {
            return Vec::new();
        }
        let inv = inverse_u64(acc_mod % pe, pe);
        let new_mod = acc_mod * pe;
        let mut next = Vec::with_capacity(acc.len() * roots.len());
        for &x in &acc {
            for &r in &roots {
                let diff = (r + pe - x % pe) % pe;
                let t = mul_mod(diff, inv, pe);
                next.push(x + acc_mod * t);
            }
        }
        acc = next;
        acc_mod = new_mod;
    }
    acc
}

fn inverse_u64(a: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1);
    old_s.rem_euclid(m as i128) as u64
}

fn prime_power_roots_u64(a: u64, p: u64, e: u32, pe: u64) -> Vec<u64> {
    if a % p != 0 && p != 2 {
        let Some(r) = sqrt_mod_prime_u64(a, p) else {
            return Vec::new();
        };
        let mut root = r;
        let mut modulus = p;
        for _ in 1..e {
            modulus *= p;
            let f = ((root as u128 * root as u128) % modulus as u128) as u64;
            let f = (f + modulus - a % modulus) % modulus;
            let inv = inverse_u64(2 * root % modulus, modulus);
            root = (root + modulus - mul_mod(f, inv, modulus)) % modulus;
        }
        let other = (pe - root) % pe;
        return if other == root { vec![root] } else { vec![root, other] };
    }
    // p = 2 or p | a: build roots level by level.
    let mut roots: Vec<u64> = (0..p).filter(|&x| mul_mod(x, x, p) == a % p).collect();
    let mut modulus = p;
    for _ in 1..e {
        let next = modulus * p;
        let target = a % next;
        let mut lifted = Vec::new();
        for &r in &roots {
            for t in 0..p {
                let x = r + modulus * t;
                if mul_mod(x, x, next) == target {
                    lifted.push(x);
                }
            }
        }
        roots = lifted;
        modulus = next;
    }
    roots
}

/// Solutions `l` of `l^2 = -D (mod 4k)`, `0 < l < 2k`, with
/// `gcd(4k, 2l, (l^2 + D) / 4k) = 1`, and the forms `(4k, 2l, (l^2 + D) / 4k)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CongruenceSolutionSet {
    pub k: u64,
    pub d_value: BigInt,
    pub solutions: Vec<u64>,
    pub forms: Vec<Form>,
}

impl CongruenceSolutionSet {
    pub fn is_empty(&self) -> bool {
        self.solutions.is_empty()
    }

    pub fn len(&self) -> usize {
        self.solutions.len()
    }
}

fn check_terai_preconditions(k: u64, d_value: &BigInt) -> Result<()> {
    if k == 0 || k % 4 != 0 {
        return Err(Error::domain(format!("k = {k} must be a positive multiple of 4")));
    }
    if !d_value.is_positive() || d_value.is_even() {
        return Err(Error::domain(format!("D = {d_value} must be odd and positive")));
    }
    if !d_value.gcd(&BigInt::from(k)).is_one() {
        return Err(Error::domain(format!("gcd(D, k) must be 1 for D = {d_value}, k = {k}")));
    }
    Ok(())
}

/// All raw roots of `l^2 = -D (mod 4k)` lying in `(0, 2k)`, before the gcd filter.
pub fn raw_terai_roots(k: u64, d_value: &BigInt) -> Result<Vec<u64>> {
    check_terai_preconditions(k, d_value)?;
    let modulus = 4 * k;
    let fac = factorize(modulus)?;
    let neg_d = -d_value;
    let roots = sqrts_mod(&neg_d, &fac)?;
    Ok(roots
        .into_iter()
        .map(|r| r.to_u64().expect("root below 4k"))
        .filter(|&l| l > 0 && l < 2 * k)
        .collect())
}

fn passes_terai_gcd(k: u64, l: u64, d_value: &BigInt) -> bool {
    let four_k = BigInt::from(4 * k);
    let l = BigInt::from(l);
    let c = (&l * &l + d_value) / &four_k;
    four_k.gcd(&(BigInt::from(2) * l)).gcd(&c).is_one()
}

/// Solves the congruence via CRT root enumeration over `4k` and applies the gcd filter.
pub fn solve_terai_congruence(k: u64, d_value: &BigInt) -> Result<CongruenceSolutionSet> {
    let raw = raw_terai_roots(k, d_value)?;
    let solutions: Vec<u64> = raw.into_iter().filter(|&l| passes_terai_gcd(k, l, d_value)).collect();
    let four_k = BigInt::from(4 * k);
    let forms = solutions
        .iter()
        .map(|&l| {
            let lb = BigInt::from(l);
            let c = (&lb * &lb + d_value) / &four_k;
            Form::new(four_k.clone(), BigInt::from(2) * lb, c)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CongruenceSolutionSet { k, d_value: d_value.clone(), solutions, forms })
}

/// `O(k)` scan of `(0, 2k)`; the test oracle for [`solve_terai_congruence`].
pub fn solve_terai_congruence_scan(k: u64, d_value: &BigInt) -> Result<Vec<u64>> {
    check_terai_preconditions(k, d_value)?;
    if k > 1_000_000 {
        return Err(Error::Capacity(format!("exhaustive congruence scan limited to k <= 10^6, got {k}")));
    }
    let modulus = 4 * k;
    let neg_d = residue_u64(&-d_value, modulus);
    Ok((1..2 * k)
        .filter(|&l| mul_mod(l, l, modulus) == neg_d && passes_terai_gcd(k, l, d_value))
        .collect())
}

/// Integer square root for non-negative big integers, `None` for negatives.
pub fn isqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        None
    } else {
        Some(n.sqrt())
    }
}

/// `Some(r)` if `n = r^2` exactly.
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    let r = isqrt(n)?;
    (&r * &r == *n).then_some(r)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    fn scan_roots(a: i64, m: u64) -> Vec<BigInt> {
        (0..m)
            .filter(|&x| ((x as i128 * x as i128 - a as i128).rem_euclid(m as i128)) == 0)
            .map(BigInt::from)
            .collect()
    }

    #[test]
    fn factorize_small() {
        assert_eq!(factorize(12).unwrap().factors(), &[(2, 2), (3, 1)]);
        let one = factorize(1).unwrap();
        assert!(one.factors().is_empty());
        assert_eq!(one.omega(), 0);
        assert_eq!(factorize(2783).unwrap().factors(), &[(11, 2), (23, 1)]);
        assert_eq!(factorize(0), Err(Error::domain("cannot factor 0")));
    }

    #[test]
    fn factorize_large_values() {
        let p = 18_446_744_073_709_551_557u64; // largest u64 prime
        assert_eq!(factorize(p).unwrap().factors(), &[(p, 1)]);
        assert_eq!(factorize(1 << 63).unwrap().factors(), &[(2, 63)]);
        assert!(is_prime(9_999_991) && is_prime(1_000_000_007));
        let n = 9_999_991u64 * 1_000_000_007;
        assert_eq!(factorize(n).unwrap().factors(), &[(9_999_991, 1), (1_000_000_007, 1)]);
        let n = 1u64 << 40 | 1;
        let f = factorize(n).unwrap();
        assert_eq!(f.value_u64(), Some(n));
        assert!(f.factors().iter().all(|&(p, _)| is_prime(p)));
    }

    #[test]
    fn factorize_reports_capacity() {
        // product of two primes just above the trial-division bound
        let n = 10_000_019u64 * 10_000_079u64;
        assert!(matches!(factorize(n), Err(Error::Capacity(_))));
    }

    #[test]
    fn prime_power_detection() {
        assert_eq!(is_prime_power(7).unwrap(), Some((7, 1)));
        assert_eq!(is_prime_power(49).unwrap(), Some((7, 2)));
        assert_eq!(is_prime_power(39).unwrap(), None);
        assert!(is_prime_power(1).is_err());
    }

    #[test]
    fn sqrt_mod_prime_examples() {
        let r = sqrt_mod_prime(&big(2), 7).unwrap().unwrap();
        assert!(r == 3 || r == 4);
        assert_eq!(sqrt_mod_prime(&big(3), 5).unwrap(), None);
        let r = sqrt_mod_prime(&big(4), 5).unwrap().unwrap();
        assert!(r == 2 || r == 3);
        assert_eq!(sqrt_mod_prime(&big(14), 7).unwrap(), Some(0));
        assert!(sqrt_mod_prime(&big(1), 9).is_err());
    }

    #[test]
    fn tonelli_shanks_large_primes() {
        // p = 1 mod 2^k with large k exercises the main loop
        for &p in &[65_537u64, 998_244_353, 1_000_000_007, 18_446_744_073_709_551_557] {
            for a in 2..60u64 {
                match sqrt_mod_prime(&BigInt::from(a), p).unwrap() {
                    Some(r) => assert_eq!(mul_mod(r, r, p), a % p),
                    None => assert_eq!(pow_mod(a, (p - 1) / 2, p), p - 1),
                }
            }
        }
    }

    #[test]
    fn hensel_examples() {
        assert_eq!(hensel_lift(&big(3), &big(2), 7, 2).unwrap(), big(10));
        assert_eq!(hensel_lift(&big(3), &big(2), 7, 1).unwrap(), big(3));
        assert_eq!(hensel_lift(&big(2), &big(4), 5, 3).unwrap(), big(2));
        assert_eq!(hensel_lift(&big(0), &big(0), 5, 2), Err(Error::SingularLift { p: 5 }));
        let lifted = hensel_lift(&big(3), &big(2), 7, 9).unwrap();
        let m = big(7).pow(9);
        assert_eq!((&lifted * &lifted - big(2)).mod_floor(&m), BigInt::zero());
    }

    #[test]
    fn two_power_roots() {
        assert_eq!(sqrts_mod_2pow(&big(1), 4), vec![big(1), big(7), big(9), big(15)]);
        assert_eq!(sqrts_mod_2pow(&big(17), 5), vec![big(7), big(9), big(23), big(25)]);
        assert!(sqrts_mod_2pow(&big(3), 3).is_empty());
        assert_eq!(sqrts_mod_2pow(&big(5), 1), vec![big(1)]);
        assert_eq!(sqrts_mod_2pow(&big(5), 2), vec![big(1), big(3)]);
        assert!(sqrts_mod_2pow(&big(3), 2).is_empty());
        for j in 1..=12u32 {
            for a in (1..200i64).step_by(2) {
                assert_eq!(sqrts_mod_2pow(&big(a), j), scan_roots(a, 1 << j), "a={a} j={j}");
            }
        }
    }

    #[test]
    fn composite_roots() {
        let f49 = factorize(49).unwrap();
        assert_eq!(sqrts_mod(&big(2), &f49).unwrap(), vec![big(10), big(39)]);
        let f16 = factorize(16).unwrap();
        assert_eq!(sqrts_mod(&big(1), &f16).unwrap(), vec![big(1), big(7), big(9), big(15)]);
        let f101 = factorize(101).unwrap();
        assert_eq!(sqrts_mod(&big(1), &f101).unwrap(), vec![big(1), big(100)]);
        assert!(sqrts_mod(&big(7), &f49).is_err());
    }

    #[test]
    fn any_roots_match_scan_including_singular() {
        for m in 1..400u64 {
            let fac = factorize(m).unwrap();
            for a in -30..30i64 {
                assert_eq!(sqrts_mod_any(&big(a), &fac), scan_roots(a, m), "a={a} m={m}");
                let mut fast = sqrts_mod_u64(a as i128, fac.factors());
                fast.sort_unstable();
                fast.dedup();
                let fast: Vec<BigInt> = fast.into_iter().map(BigInt::from).collect();
                assert_eq!(fast, scan_roots(a, m), "u64 a={a} m={m}");
            }
        }
    }

    #[test]
    fn terai_congruence_examples() {
        let s = solve_terai_congruence(4, &big(63)).unwrap();
        assert_eq!(s.solutions, vec![7]);
        assert_eq!(s.forms, vec![Form::new(big(16), big(14), big(7)).unwrap()]);

        let s = solve_terai_congruence(12, &big(2783)).unwrap();
        assert_eq!(s.solutions, vec![7, 23]);
        assert_eq!(
            s.forms,
            vec![
                Form::new(big(48), big(14), big(59)).unwrap(),
                Form::new(big(48), big(46), big(69)).unwrap()
            ]
        );
        assert_eq!(s.len(), 1 << (factorize(12).unwrap().omega() - 1));
    }

    #[test]
    fn terai_congruence_matches_scan() {
        for k in (4..400u64).step_by(4) {
            for d_value in (1..60i64).step_by(2) {
                let dv = big(d_value);
                if !dv.gcd(&BigInt::from(k)).is_one() {
                    continue;
                }
                let fast = solve_terai_congruence(k, &dv).unwrap();
                assert_eq!(fast.solutions, solve_terai_congruence_scan(k, &dv).unwrap(), "k={k} D={d_value}");
            }
        }
    }

    #[test]
    fn terai_preconditions() {
        assert!(solve_terai_congruence(6, &big(7)).is_err());
        assert!(solve_terai_congruence(4, &big(8)).is_err());
        assert!(solve_terai_congruence(12, &big(9)).is_err());
    }

    #[test]
    fn factorization_helpers() {
        let f = factorize(12).unwrap();
        assert_eq!(f.pow(3).factors(), &[(2, 6), (3, 3)]);
        assert_eq!(f.pow(3).value_u64(), Some(1728));
        assert_eq!(f.divisors(), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(f.to_string(), "2^2 * 3");
        assert_eq!(f.mul(&factorize(10).unwrap()).factors(), &[(2, 3), (3, 1), (5, 1)]);
    }

    #[test]
    fn exact_sqrt_checks() {
        assert_eq!(exact_sqrt(&big(144)), Some(big(12)));
        assert_eq!(exact_sqrt(&big(145)), None);
        assert_eq!(exact_sqrt(&big(-4)), None);
        let huge = BigInt::from(10).pow(60) + 7;
        assert_eq!(exact_sqrt(&(&huge * &huge)), Some(huge));
    }
}
