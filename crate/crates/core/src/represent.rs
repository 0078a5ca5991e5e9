//! Primitive representation of integers by forms of discriminant `-4D`, `D` odd.
//!
//! A form `F` primitively represents `N` iff `F ~ (N, 2L, (L^2 + D)/N)` for a
//! root `L` of `L^2 = -D (mod N)` whose form is primitive. For `N = k^m` with
//! `m` large the forms `(k^m, 2L, .)` are far too big to reduce one by one,
//! so [`represented_exponents`] works with the local pieces instead:
//!
//! * for an odd prime `p | k`, the forms representing `p^e` primitively are
//!   `P^e` and `P^-e`, with `P = (p, 2l, (l^2 + D)/p)`;
//! * when `-D = 1 (mod 8)`, the forms representing `2^j` primitively are
//!   `Q^(j-2)` and `Q^-(j-2)` for `j >= 3` (none for `j = 1, 2`), with `Q` the
//!   primitive form `(8, 2L, (L^2 + D)/8)`;
//! * coprime pieces combine by composition.
//!
//! Each sign pattern `s` gives an arithmetic progression of exponents found
//! with one discrete logarithm. Other discriminants fall back to the direct
//! root enumeration.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive};

use crate::error::{Error, Result};
use crate::form::{class_number, discrete_log, Form};
use crate::modular::{factorize, sqrt_mod_prime, sqrts_mod, Factorization};

/// Largest `N` accepted by [`brute_force_representations`].
pub const BRUTE_FORCE_BOUND: u64 = 100_000_000;

/// Size limit, in bits of `N`, for the direct root-enumeration check.
pub const DIRECT_BIT_LIMIT: u64 = 1 << 16;

/// Proof that a form primitively represents `n`: the root `L` and the reduced
/// class representative of `(n, 2L, (L^2 + D)/n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentationWitness {
    pub n: BigInt,
    pub root: BigInt,
    pub matched_form: Form,
}

impl RepresentationWitness {
    /// Re-checks both witness invariants against the queried form.
    pub fn is_valid_for(&self, f: &Form) -> bool {
        let Ok(d_value) = odd_half_discriminant(f) else {
            return false;
        };
        if !self.n.is_positive() {
            return false;
        }
        let num = &self.root * &self.root + &d_value;
        if !num.is_multiple_of(&self.n) {
            return false;
        }
        let g = Form::new_unchecked(self.n.clone(), BigInt::from(2) * &self.root, num / &self.n);
        g.reduced() == self.matched_form && f.reduced() == self.matched_form
    }
}

/// `D` for a form of discriminant `-4D` with `D` odd.
pub fn odd_half_discriminant(f: &Form) -> Result<BigInt> {
    let disc = f.discriminant();
    let four = BigInt::from(4);
    if !disc.is_multiple_of(&four) {
        return Err(Error::domain(format!("discriminant {disc} of {f} is not divisible by 4")));
    }
    let d_value = -disc / four;
    if d_value.is_even() {
        return Err(Error::domain(format!("form {f} has discriminant -4D with D = {d_value} even")));
    }
    Ok(d_value)
}

/// Does `f` primitively represent `n` (given factored)? Returns a witness if so.
pub fn primitively_represents(f: &Form, n: &Factorization) -> Result<Option<RepresentationWitness>> {
    let d_value = odd_half_discriminant(f)?;
    let big_n = BigInt::from_biguint(Sign::Plus, n.value().clone());
    if big_n.bits() > DIRECT_BIT_LIMIT {
        return Err(Error::Capacity(format!("{}-bit target exceeds the direct check limit", big_n.bits())));
    }
    if !big_n.gcd(&d_value).is_one() {
        return Err(Error::domain(format!("gcd({big_n}, {d_value}) must be 1")));
    }
    let target = f.reduced();
    let two = BigInt::from(2);
    for root in sqrts_mod(&-&d_value, n)? {
        let c = (&root * &root + &d_value) / &big_n;
        let b = &two * &root;
        if !big_n.gcd(&b).gcd(&c).is_one() {
            continue;
        }
        let g = Form::new_unchecked(big_n.clone(), b, c).reduced();
        if g == target {
            return Ok(Some(RepresentationWitness { n: big_n, root, matched_form: g }));
        }
    }
    Ok(None)
}

/// All solutions of `F(x, y) = n` with `y >= 0`, flagged primitive when `gcd(x, y) = 1`.
pub fn brute_force_representations(f: &Form, n: u64) -> Result<Vec<(i64, i64, bool)>> {
    if n == 0 || n > BRUTE_FORCE_BOUND {
        return Err(Error::Capacity(format!("brute-force representation needs 1 <= N <= {BRUTE_FORCE_BOUND}")));
    }
    let (Some(a), Some(b), Some(c)) = (f.a().to_i128(), f.b().to_i128(), f.c().to_i128()) else {
        return Err(Error::Capacity(format!("coefficients of {f} exceed 128 bits")));
    };
    let neg_disc = 4 * a * c - b * b;
    let n = n as i128;
    // F(x, y) >= |disc| y^2 / (4a)
    let y_max = isqrt_i128(4 * a * n / neg_disc) + 1;
    let mut out = Vec::new();
    for y in 0..=y_max {
        // a x^2 + (b y) x + (c y^2 - n) = 0
        let disc_x = b * b * y * y - 4 * a * (c * y * y - n);
        if disc_x < 0 {
            continue;
        }
        let s = isqrt_i128(disc_x);
        if s * s != disc_x {
            continue;
        }
        let mut xs = vec![-b * y + s, -b * y - s];
        xs.dedup();
        for num in xs {
            if num % (2 * a) != 0 {
                continue;
            }
            let x = num / (2 * a);
            debug_assert_eq!(a * x * x + b * x * y + c * y * y, n);
            let primitive = num_integer::gcd(x, y) == 1;
            out.push((x as i64, y as i64, primitive));
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

fn isqrt_i128(n: i128) -> i128 {
    if n <= 0 {
        return 0;
    }
    let mut r = (n as f64).sqrt() as i128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// All `m` in `[1, cap]` such that `f` primitively represents `k^m`, ascending.
pub fn represented_exponents(f: &Form, k: &Factorization, cap: u64) -> Result<Vec<u64>> {
    represented_exponents_with(f, k, cap, None)
}

/// As [`represented_exponents`], reusing a known class number of `disc(f)`.
pub fn represented_exponents_with(
    f: &Form,
    k: &Factorization,
    cap: u64,
    class_number_hint: Option<u64>,
) -> Result<Vec<u64>> {
    let d_value = odd_half_discriminant(f)?;
    let k_value = BigInt::from_biguint(Sign::Plus, k.value().clone());
    if !k_value.gcd(&d_value).is_one() {
        return Err(Error::domain(format!("gcd(k, D) must be 1 for k = {k_value}, D = {d_value}")));
    }
    if cap == 0 {
        return Err(Error::domain("exponent cap must be at least 1"));
    }
    if k_value.is_one() {
        return Ok(if f.is_identity_class() { (1..=cap).collect() } else { Vec::new() });
    }
    let two_adic_ok = k.exponent_of(2) == 0 || (-&d_value).mod_floor(&BigInt::from(8)).is_one();
    if two_adic_ok {
        let h = match class_number_hint {
            Some(h) => h,
            None => class_number(&f.discriminant())?,
        };
        local_represented_exponents(f, &d_value, k, cap, h)
    } else {
        direct_represented_exponents(f, k, cap)
    }
}

/// Exponent scan by root enumeration over every `k^m`; small instances only.
pub fn direct_represented_exponents(f: &Form, k: &Factorization, cap: u64) -> Result<Vec<u64>> {
    let mut out = Vec::new();
    for m in 1..=cap {
        let m32 = u32::try_from(m).map_err(|_| Error::Capacity(format!("exponent {m} too large")))?;
        if primitively_represents(f, &k.pow(m32))?.is_some() {
            out.push(m);
        }
    }
    Ok(out)
}

/// The primitive form `(p, 2l, (l^2 + D)/p)` for an odd prime `p` not dividing `D`.
/// `None` when `-D` is a non-residue mod `p`.
fn odd_prime_form(p: u64, d_value: &BigInt) -> Result<Option<Form>> {
    let Some(l) = sqrt_mod_prime(&-d_value, p)? else {
        return Ok(None);
    };
    let l = BigInt::from(l);
    let p_big = BigInt::from(p);
    let c = (&l * &l + d_value) / &p_big;
    Form::new(p_big, BigInt::from(2) * l, c).map(Some)
}

/// The primitive form `(8, 2L, (L^2 + D)/8)`; requires `-D = 1 (mod 8)`.
fn two_adic_form(d_value: &BigInt) -> Result<Form> {
    let eight = BigInt::from(8);
    for l in [1i64, 3] {
        let l = BigInt::from(l);
        let num = &l * &l + d_value;
        if !num.is_multiple_of(&eight) {
            continue;
        }
        let c = num / &eight;
        if c.is_odd() {
            return Form::new(eight, BigInt::from(2) * l, c);
        }
    }
    Err(Error::domain(format!("no primitive form (8, 2L, .) for D = {d_value}")))
}

fn local_represented_exponents(
    f: &Form,
    d_value: &BigInt,
    k: &Factorization,
    cap: u64,
    h: u64,
) -> Result<Vec<u64>> {
    let disc = f.discriminant();
    let two_exp = k.exponent_of(2) as u64;
    let mut generators: Vec<(Form, u64)> = Vec::new();
    for &(p, e) in k.factors() {
        if p != 2 {
            match odd_prime_form(p, d_value)? {
                Some(g) => generators.push((g, e as u64)),
                // every k^m is divisible by p, which has no primitive representation
                None => return Ok(Vec::new()),
            }
        }
    }
    let q = if two_exp > 0 { Some(two_adic_form(d_value)?) } else { None };
    let target_base = f.reduced();
    let identity = Form::identity(&disc)?;

    let slots = generators.len() + usize::from(q.is_some());
    let mut exponents = Vec::new();
    for signs in 0u32..(1 << slots) {
        let negated = |slot: usize| signs >> slot & 1 == 1;
        let mut step = identity.clone();
        for (slot, (g, e)) in generators.iter().enumerate() {
            let piece = g.power(*e);
            let piece = if negated(slot) { piece.inverse() } else { piece };
            step = step.compose_reduced(&piece)?;
        }
        // With the 2-part sign fixed, the class for k^m is Q^(-2s) * step^m, so we
        // need step^m ~ F * Q^(2s).
        let mut target = target_base.clone();
        if let Some(q) = &q {
            let q = if negated(generators.len()) { q.inverse() } else { q.clone() };
            step = step.compose_reduced(&q.power(two_exp))?;
            target = target.compose_reduced(&q.power(2))?;
        }
        let n = step.order_dividing(h, u64::MAX)?;
        let Some(m0) = discrete_log(&step, &target, n)? else {
            continue;
        };
        let mut m = if m0 == 0 { n } else { m0 };
        while m <= cap {
            // no primitive form represents 2 or 4
            if two_exp == 0 || two_exp * m >= 3 {
                exponents.push(m);
            }
            m = match m.checked_add(n) {
                Some(next) => next,
                None => break,
            };
        }
    }
    exponents.sort_unstable();
    exponents.dedup();
    Ok(exponents)
}

/// Convenience for callers holding `k` as a machine integer.
pub fn represented_exponents_for_k(f: &Form, k: u64, cap: u64) -> Result<Vec<u64>> {
    represented_exponents(f, &factorize(k)?, cap)
}
