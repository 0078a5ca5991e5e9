//! Positive definite primitive binary quadratic forms `ax^2 + bxy + cy^2`
//! and their class-group arithmetic.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::modular::{factorize, sqrts_mod_u64};

/// Orders at or below this value are re-derived by plain iteration.
pub const ORDER_CROSS_CHECK_LIMIT: u64 = 10_000;

/// Largest `sqrt(|disc| / 3)` the class-number enumeration will attempt.
pub const CLASS_NUMBER_BOUND: u64 = 200_000_000;

/// A primitive positive definite binary quadratic form `(a, b, c)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Form {
    a: BigInt,
    b: BigInt,
    c: BigInt,
}

/// A unimodular change of variables `(x, y) -> (alpha x + beta y, gamma x + delta y)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransformMatrix {
    pub alpha: BigInt,
    pub beta: BigInt,
    pub gamma: BigInt,
    pub delta: BigInt,
}

impl TransformMatrix {
    pub fn new(alpha: BigInt, beta: BigInt, gamma: BigInt, delta: BigInt) -> Result<Self> {
        let m = TransformMatrix { alpha, beta, gamma, delta };
        let det = m.determinant();
        if !det.is_one() {
            return Err(Error::InvalidMatrix(det));
        }
        Ok(m)
    }

    pub fn from_i64(alpha: i64, beta: i64, gamma: i64, delta: i64) -> Result<Self> {
        Self::new(alpha.into(), beta.into(), gamma.into(), delta.into())
    }

    pub fn identity() -> Self {
        TransformMatrix {
            alpha: BigInt::one(),
            beta: BigInt::zero(),
            gamma: BigInt::zero(),
            delta: BigInt::one(),
        }
    }

    pub fn determinant(&self) -> BigInt {
        &self.alpha * &self.delta - &self.beta * &self.gamma
    }

    /// Matrix product `self * rhs`; transforming by `self` then by `rhs`
    /// equals transforming once by the product.
    pub fn mul(&self, rhs: &TransformMatrix) -> TransformMatrix {
        TransformMatrix {
            alpha: &self.alpha * &rhs.alpha + &self.beta * &rhs.gamma,
            beta: &self.alpha * &rhs.beta + &self.beta * &rhs.delta,
            gamma: &self.gamma * &rhs.alpha + &self.delta * &rhs.gamma,
            delta: &self.gamma * &rhs.beta + &self.delta * &rhs.delta,
        }
    }

    fn translation(r: BigInt) -> Self {
        TransformMatrix { alpha: BigInt::one(), beta: r, gamma: BigInt::zero(), delta: BigInt::one() }
    }

    fn swap() -> Self {
        TransformMatrix {
            alpha: BigInt::zero(),
            beta: -BigInt::one(),
            gamma: BigInt::one(),
            delta: BigInt::zero(),
        }
    }
}

pub(crate) fn validate_discriminant(disc: &BigInt) -> Result<()> {
    let r = disc.mod_floor(&BigInt::from(4));
    if !disc.is_negative() || !(r.is_zero() || r.is_one()) {
        return Err(Error::InvalidDiscriminant(disc.clone()));
    }
    Ok(())
}

/// Extended gcd with non-negative gcd: returns `(g, x, y)` with `a x + b y = g`.
pub(crate) fn ext_gcd(a: &BigInt, b: &BigInt) -> (BigInt, BigInt, BigInt) {
    let (mut old_r, mut r) = (a.clone(), b.clone());
    let (mut old_s, mut s) = (BigInt::one(), BigInt::zero());
    let (mut old_t, mut t) = (BigInt::zero(), BigInt::one());
    while !r.is_zero() {
        let q = old_r.div_floor(&r);
        let next_r = &old_r - &q * &r;
        old_r = std::mem::replace(&mut r, next_r);
        let next_s = &old_s - &q * &s;
        old_s = std::mem::replace(&mut s, next_s);
        let next_t = &old_t - &q * &t;
        old_t = std::mem::replace(&mut t, next_t);
    }
    if old_r.is_negative() {
        (-old_r, -old_s, -old_t)
    } else {
        (old_r, old_s, old_t)
    }
}

impl Form {
    /// Validates positivity, negative discriminant and primitivity.
    pub fn new(a: BigInt, b: BigInt, c: BigInt) -> Result<Self> {
        if !a.is_positive() {
            return Err(Error::domain(format!("leading coefficient {a} must be positive")));
        }
        let f = Form { a, b, c };
        let disc = f.discriminant();
        if !disc.is_negative() {
            return Err(Error::domain(format!("form {f} is not positive definite (disc {disc})")));
        }
        if !f.a.gcd(&f.b).gcd(&f.c).is_one() {
            return Err(Error::domain(format!("form {f} is not primitive")));
        }
        Ok(f)
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new(a.into(), b.into(), c.into())
    }

    pub(crate) fn new_unchecked(a: BigInt, b: BigInt, c: BigInt) -> Self {
        Form { a, b, c }
    }

    /// The form `(a, b, c)` with `c` recovered from the discriminant.
    pub fn from_discriminant(a: BigInt, b: BigInt, disc: &BigInt) -> Result<Self> {
        let num = &b * &b - disc;
        let four_a = BigInt::from(4) * &a;
        if !a.is_positive() || !num.is_multiple_of(&four_a) {
            return Err(Error::domain(format!("no form ({a}, {b}, .) of discriminant {disc}")));
        }
        Form::new(a, b, num / four_a)
    }

    pub fn a(&self) -> &BigInt {
        &self.a
    }

    pub fn b(&self) -> &BigInt {
        &self.b
    }

    pub fn c(&self) -> &BigInt {
        &self.c
    }

    pub fn into_parts(self) -> (BigInt, BigInt, BigInt) {
        (self.a, self.b, self.c)
    }

    pub fn discriminant(&self) -> BigInt {
        &self.b * &self.b - BigInt::from(4) * &self.a * &self.c
    }

    /// `F(x, y)`.
    pub fn evaluate(&self, x: &BigInt, y: &BigInt) -> BigInt {
        &self.a * x * x + &self.b * x * y + &self.c * y * y
    }

    /// The identity of the class group: `(1, 0, -disc/4)` or `(1, 1, (1 - disc)/4)`.
    pub fn identity(disc: &BigInt) -> Result<Self> {
        validate_discriminant(disc)?;
        let (b, c) = if disc.is_even() {
            (BigInt::zero(), -disc / 4)
        } else {
            (BigInt::one(), (BigInt::one() - disc) / 4)
        };
        Ok(Form { a: BigInt::one(), b, c })
    }

    /// `(a, -b, c)`.
    pub fn inverse(&self) -> Self {
        Form { a: self.a.clone(), b: -&self.b, c: self.c.clone() }
    }

    pub fn transform(&self, m: &TransformMatrix) -> Result<Self> {
        let det = m.determinant();
        if !det.is_one() {
            return Err(Error::InvalidMatrix(det));
        }
        Ok(self.transform_unchecked(m))
    }

    fn transform_unchecked(&self, m: &TransformMatrix) -> Self {
        let a = self.evaluate(&m.alpha, &m.gamma);
        let b = BigInt::from(2) * (&self.a * &m.alpha * &m.beta + &self.c * &m.gamma * &m.delta)
            + &self.b * (&m.alpha * &m.delta + &m.beta * &m.gamma);
        let c = self.evaluate(&m.beta, &m.delta);
        Form { a, b, c }
    }

    /// `-a < b <= a <= c`, with `b >= 0` when `a == c`.
    pub fn is_reduced(&self) -> bool {
        let neg_a = -&self.a;
        neg_a < self.b && self.b <= self.a && self.a <= self.c && (self.a != self.c || !self.b.is_negative())
    }

    /// Reduced representative together with the matrix carrying `self` to it.
    pub fn reduce(&self) -> (Form, TransformMatrix) {
        let mut f = self.clone();
        let mut m = TransformMatrix::identity();
        loop {
            if let Some(r) = f.normalizing_shift() {
                let step = TransformMatrix::translation(r);
                f = f.transform_unchecked(&step);
                m = m.mul(&step);
            }
            if f.a > f.c || (f.a == f.c && f.b.is_negative()) {
                let step = TransformMatrix::swap();
                f = f.transform_unchecked(&step);
                m = m.mul(&step);
                continue;
            }
            break;
        }
        (f, m)
    }

    /// Reduced representative only; the hot path used by composition.
    pub fn reduced(&self) -> Form {
        let mut f = self.clone();
        f.reduce_in_place();
        f
    }

    fn normalizing_shift(&self) -> Option<BigInt> {
        let neg_a = -&self.a;
        if self.b > neg_a && self.b <= self.a {
            return None;
        }
        let two_a = BigInt::from(2) * &self.a;
        Some((&self.a - &self.b).div_floor(&two_a))
    }

    fn reduce_in_place(&mut self) {
        loop {
            if let Some(r) = self.normalizing_shift() {
                // c <- a r^2 + b r + c, then b <- b + 2 a r
                self.c += (&self.a * &r + &self.b) * &r;
                self.b += BigInt::from(2) * &self.a * r;
            }
            if self.a > self.c {
                std::mem::swap(&mut self.a, &mut self.c);
                self.b = -std::mem::take(&mut self.b);
                continue;
            }
            if self.a == self.c && self.b.is_negative() {
                self.b = -std::mem::take(&mut self.b);
            }
            break;
        }
    }

    pub fn equivalent(&self, other: &Form) -> Result<bool> {
        self.ensure_same_discriminant(other)?;
        Ok(self.reduced() == other.reduced())
    }

    fn ensure_same_discriminant(&self, other: &Form) -> Result<BigInt> {
        let d1 = self.discriminant();
        let d2 = other.discriminant();
        if d1 != d2 {
            return Err(Error::DiscriminantMismatch(d1, d2));
        }
        Ok(d1)
    }

    /// Composition of two forms of equal discriminant, unreduced.
    ///
    /// With `l = gcd(a1, a2, (b1 + b2)/2) = v1 a1 + v2 a2 + w (b1 + b2)/2`:
    /// `a3 = a1 a2 / l^2`, `b3 = b2 + 2 (a2 / l) ((b1 - b2)/2 v2 - c2 w)`,
    /// and `c3` from the discriminant. The Bezout triple comes from two
    /// chained two-term extended gcds.
    pub fn compose(&self, other: &Form) -> Result<Form> {
        let disc = self.ensure_same_discriminant(other)?;
        Ok(compose_raw(self, other, &disc))
    }

    /// Reduced representative of the composition.
    pub fn compose_reduced(&self, other: &Form) -> Result<Form> {
        let mut f = self.compose(other)?;
        f.reduce_in_place();
        Ok(f)
    }

    /// Reduced representative of `self^n`; `n = 0` gives the reduced identity.
    pub fn power(&self, n: u64) -> Form {
        let disc = self.discriminant();
        let mut acc = Form::identity(&disc).expect("form discriminant is valid");
        let mut base = self.reduced();
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = mul_reduced(&acc, &base, &disc);
            }
            e >>= 1;
            if e > 0 {
                base = mul_reduced(&base, &base, &disc);
            }
        }
        acc
    }

    pub fn is_identity_class(&self) -> bool {
        let r = self.reduced();
        r.a.is_one()
    }

    /// Order of the class in the class group, via the class number.
    pub fn order(&self) -> Result<u64> {
        let h = class_number(&self.discriminant())?;
        self.order_dividing(h, u64::MAX)
    }

    /// Order of the class given a multiple `h` of it (typically the class number).
    /// Fails with [`Error::OrderOverflow`] when the order exceeds `cap`.
    pub fn order_dividing(&self, h: u64, cap: u64) -> Result<u64> {
        if h == 0 {
            return Err(Error::domain("group exponent multiple must be positive"));
        }
        let disc = self.discriminant();
        let base = self.reduced();
        if !base.power(h).is_identity_class() {
            return Err(Error::domain(format!("class of {self} does not have order dividing {h}")));
        }
        let mut n = h;
        for &(p, _) in factorize(h)?.factors() {
            while n % p == 0 && base.power(n / p).is_identity_class() {
                n /= p;
            }
        }
        if n <= ORDER_CROSS_CHECK_LIMIT {
            let iterated = order_by_iteration(&base, &disc, ORDER_CROSS_CHECK_LIMIT)
                .expect("iteration reaches an order below the limit");
            assert_eq!(iterated, n, "order cross-check failed for {self}");
        }
        if n > cap {
            return Err(Error::OrderOverflow { cap });
        }
        Ok(n)
    }
}

fn mul_reduced(x: &Form, y: &Form, disc: &BigInt) -> Form {
    let mut f = compose_raw(x, y, disc);
    f.reduce_in_place();
    f
}

pub(crate) fn compose_raw(f1: &Form, f2: &Form, disc: &BigInt) -> Form {
    let two = BigInt::from(2);
    let s = (&f1.b + &f2.b) / &two;
    let half_diff = (&f1.b - &f2.b) / &two;
    let (g1, x, y) = ext_gcd(&f1.a, &f2.a);
    let (l, u, w) = ext_gcd(&g1, &s);
    let v2 = &u * y;
    debug_assert_eq!(&u * x * &f1.a + &v2 * &f2.a + &w * &s, l);
    let a2_over_l = &f2.a / &l;
    let a3 = &f1.a * &a2_over_l / &l;
    let b3 = &f2.b + &two * &a2_over_l * (half_diff * v2 - &f2.c * w);
    let num = &b3 * &b3 - disc;
    let four_a3 = BigInt::from(4) * &a3;
    debug_assert!(num.is_multiple_of(&four_a3));
    let c3 = num / four_a3;
    Form { a: a3, b: b3, c: c3 }
}

/// Least `n` in `1..=limit` with `f^n` in the identity class.
pub fn order_by_iteration(f: &Form, disc: &BigInt, limit: u64) -> Option<u64> {
    let base = f.reduced();
    let mut acc = base.clone();
    for n in 1..=limit {
        if acc.a.is_one() {
            return Some(n);
        }
        acc = mul_reduced(&acc, &base, disc);
    }
    None
}

/// Least `m` in `[0, group_order)` with `base^m ~ target`, by baby-step giant-step.
/// `group_order` must be a multiple of the order of `base`.
pub fn discrete_log(base: &Form, target: &Form, group_order: u64) -> Result<Option<u64>> {
    let disc = base.ensure_same_discriminant(target)?;
    if group_order == 0 {
        return Err(Error::domain("group order must be positive"));
    }
    let steps = (group_order as f64).sqrt().ceil() as u64;
    let steps = steps.max(1);
    let base = base.reduced();
    let target = target.reduced();
    let mut table: HashMap<Form, u64> = HashMap::with_capacity(steps as usize);
    let mut acc = Form::identity(&disc)?;
    for j in 0..steps {
        table.entry(acc.clone()).or_insert(j);
        acc = mul_reduced(&acc, &base, &disc);
    }
    // acc = base^steps
    let giant = acc.inverse().reduced();
    let mut gamma = target;
    for i in 0..steps {
        if let Some(&j) = table.get(&gamma) {
            let m = i * steps + j;
            return Ok((m < group_order).then_some(m));
        }
        gamma = mul_reduced(&gamma, &giant, &disc);
    }
    Ok(None)
}

fn smallest_prime_factors(limit: usize) -> Vec<u32> {
    let mut spf = vec![0u32; limit + 1];
    for i in 2..=limit {
        if spf[i] == 0 {
            let mut j = i;
            while j <= limit {
                if spf[j] == 0 {
                    spf[j] = i as u32;
                }
                j += i;
            }
        }
    }
    spf
}

/// Calls `visit(a, b, c)` for every primitive reduced form of discriminant `disc`.
///
/// Runs over leading coefficients `a <= sqrt(|disc|/3)` and, for each, over the
/// square roots `b` of `disc` modulo `4a` lying in `(-a, a]`.
pub fn for_each_reduced_form(disc: &BigInt, mut visit: impl FnMut(i128, i128, i128)) -> Result<()> {
    validate_discriminant(disc)?;
    let disc_i = disc
        .to_i128()
        .filter(|d| *d > -(1i128 << 100))
        .ok_or_else(|| Error::Capacity(format!("discriminant {disc} too large for enumeration")))?;
    let bound = ((-disc_i) as f64 / 3.0).sqrt() as u64 + 1;
    if bound > CLASS_NUMBER_BOUND {
        return Err(Error::Capacity(format!("class number enumeration bound {bound} exceeds {CLASS_NUMBER_BOUND}")));
    }
    let spf = smallest_prime_factors(bound as usize);
    let mut factors: Vec<(u64, u32)> = Vec::with_capacity(16);
    let mut bs: Vec<i128> = Vec::new();
    for a in 1..=bound {
        if 3 * (a as i128) * (a as i128) > -disc_i {
            break;
        }
        // factorization of 4a
        factors.clear();
        let mut rest = a;
        let mut twos = 2u32;
        while rest % 2 == 0 {
            rest /= 2;
            twos += 1;
        }
        factors.push((2, twos));
        while rest > 1 {
            let p = spf[rest as usize] as u64;
            let mut e = 0;
            while rest % p == 0 {
                rest /= p;
                e += 1;
            }
            factors.push((p, e));
        }
        let two_a = 2 * a as i128;
        bs.clear();
        for x in sqrts_mod_u64(disc_i, &factors) {
            let mut b = x as i128 % two_a;
            if b > a as i128 {
                b -= two_a;
            }
            bs.push(b);
        }
        bs.sort_unstable();
        bs.dedup();
        let a_i = a as i128;
        for &b in &bs {
            let c = (b * b - disc_i) / (4 * a_i);
            if c < a_i || (c == a_i && b < 0) {
                continue;
            }
            if gcd_i128(gcd_i128(a_i, b), c) != 1 {
                continue;
            }
            visit(a_i, b, c);
        }
    }
    Ok(())
}

fn gcd_i128(a: i128, b: i128) -> i128 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// All primitive reduced forms of discriminant `disc`, sorted.
pub fn reduced_forms(disc: &BigInt) -> Result<Vec<Form>> {
    let mut out = Vec::new();
    for_each_reduced_form(disc, |a, b, c| out.push(Form::new_unchecked(a.into(), b.into(), c.into())))?;
    out.sort();
    Ok(out)
}

/// Number of classes of primitive positive definite forms of discriminant `disc`.
pub fn class_number(disc: &BigInt) -> Result<u64> {
    let mut h = 0u64;
    for_each_reduced_form(disc, |_, _, _| h += 1)?;
    Ok(h)
}

impl fmt::Display for Form {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.a, self.b, self.c)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn form(a: i64, b: i64, c: i64) -> Form {
        Form::from_i64(a, b, c).unwrap()
    }

    fn big(v: i64) -> BigInt {
        BigInt::from(v)
    }

    /// Enumerates all matrices with entries in [-bound, bound] and determinant 1.
    fn small_unimodular(bound: i64) -> Vec<TransformMatrix> {
        let mut out = Vec::new();
        for al in -bound..=bound {
            for be in -bound..=bound {
                for ga in -bound..=bound {
                    for de in -bound..=bound {
                        if al * de - be * ga == 1 {
                            out.push(TransformMatrix::from_i64(al, be, ga, de).unwrap());
                        }
                    }
                }
            }
        }
        out
    }

    /// Reduced forms by the naive double loop over `b` and `a`.
    fn brute_reduced(disc: i64) -> Vec<(i64, i64, i64)> {
        let n = -disc;
        let mut out = Vec::new();
        let mut a = 1;
        while 3 * a * a <= n {
            for b in (-a + 1)..=a {
                if (b * b - disc) % (4 * a) != 0 {
                    continue;
                }
                let c = (b * b - disc) / (4 * a);
                if c < a || (c == a && b < 0) {
                    continue;
                }
                if num_integer::gcd(num_integer::gcd(a, b), c) == 1 {
                    out.push((a, b, c));
                }
            }
            a += 1;
        }
        out.sort();
        out
    }

    #[test]
    fn discriminant_examples() {
        assert_eq!(form(1, 0, 63).discriminant(), big(-252));
        assert_eq!(form(16, 14, 7).discriminant(), big(-252));
        assert_eq!(form(9, 0, 7).discriminant(), big(-252));
    }

    #[test]
    fn new_rejects_bad_forms() {
        assert!(Form::from_i64(0, 1, 1).is_err());
        assert!(Form::from_i64(-1, 0, -1).is_err());
        assert!(Form::from_i64(1, 3, 1).is_err()); // indefinite
        assert!(Form::from_i64(2, 2, 2).is_err()); // imprimitive
    }

    #[test]
    fn identity_examples() {
        assert_eq!(Form::identity(&big(-252)).unwrap(), form(1, 0, 63));
        assert_eq!(Form::identity(&big(-3)).unwrap(), form(1, 1, 1));
        assert_eq!(Form::identity(&big(-4)).unwrap(), form(1, 0, 1));
        assert_eq!(Form::identity(&big(-5)), Err(Error::InvalidDiscriminant(big(-5))));
        assert!(Form::identity(&big(5)).is_err());
    }

    #[test]
    fn inverse_examples() {
        assert_eq!(form(8, 6, 9).inverse(), form(8, -6, 9));
        assert_eq!(form(1, 0, 63).inverse(), form(1, 0, 63));
        assert_eq!(form(16, 14, 7).inverse(), form(16, -14, 7));
    }

    #[test]
    fn transform_examples() {
        let f = form(7, 0, 9);
        assert_eq!(f.transform(&TransformMatrix::identity()).unwrap(), f);
        let g = form(5, 3, 11);
        let shifted = g.transform(&TransformMatrix::from_i64(1, 4, 0, 1).unwrap()).unwrap();
        assert_eq!(shifted.a(), &big(5));
        assert_eq!(shifted.b(), &big(3 + 2 * 5 * 4));
        // oracle: direct evaluation of a' = F(0,1), b' = 2(a*0*(-1) + c*1*0) + b(0 - 1), c' = F(-1, 0)
        let swapped = form(16, 14, 7).transform(&TransformMatrix::from_i64(0, -1, 1, 0).unwrap()).unwrap();
        assert_eq!(swapped, Form::new_unchecked(big(7), big(-14), big(16)));
        assert_eq!(TransformMatrix::from_i64(1, 1, 1, 1), Err(Error::InvalidMatrix(big(0))));
        let bad = TransformMatrix { alpha: big(2), beta: big(0), gamma: big(0), delta: big(1) };
        assert_eq!(f.transform(&bad), Err(Error::InvalidMatrix(big(2))));
    }

    #[test]
    fn reduce_examples() {
        let (r, m) = form(1, 0, 63).reduce();
        assert_eq!(r, form(1, 0, 63));
        assert_eq!(m, TransformMatrix::identity());

        for (input, expected) in [(form(16, 14, 7), form(7, 0, 9)), (form(9, 0, 7), form(7, 0, 9))] {
            let (r, m) = input.reduce();
            assert_eq!(r, expected);
            assert_eq!(input.transform(&m).unwrap(), r);
            // oracle: some small unimodular matrix carries input to the expected reduced form
            assert!(small_unimodular(3).iter().any(|a| input.transform(a).unwrap() == expected));
        }
    }

    #[test]
    fn reduce_tie_breaking() {
        // b = -a normalizes to b = a
        assert_eq!(form(3, -3, 5).reduced(), form(3, 3, 5));
        // a = c forces b >= 0
        assert_eq!(form(5, -2, 5).reduced(), form(5, 2, 5));
        assert!(form(5, 2, 5).is_reduced());
        assert!(!form(5, -2, 5).is_reduced());
    }

    #[test]
    fn equivalence_examples() {
        assert!(form(16, 14, 7).equivalent(&form(9, 0, 7)).unwrap());
        assert!(!form(1, 0, 63).equivalent(&form(7, 0, 9)).unwrap());
        let a = TransformMatrix::from_i64(3, 2, 4, 3).unwrap();
        let f = form(8, 6, 9);
        assert!(f.equivalent(&f.transform(&a).unwrap()).unwrap());
        assert!(matches!(f.equivalent(&form(1, 0, 1)), Err(Error::DiscriminantMismatch(_, _))));
    }

    #[test]
    fn compose_examples() {
        let id = Form::identity(&big(-252)).unwrap();
        let f = form(7, 0, 9);
        assert!(id.compose(&f).unwrap().equivalent(&f).unwrap());
        assert_eq!(form(16, 14, 7).compose_reduced(&form(16, 14, 7)).unwrap(), form(1, 0, 63));

        let g = form(48, 14, 59);
        let sq = g.compose(&g).unwrap();
        assert_eq!(sq.a(), &big(576));
        assert_eq!(sq.b().mod_floor(&big(96)), big(2 * (24 + 7)));
        assert!(matches!(g.compose(&f), Err(Error::DiscriminantMismatch(_, _))));
    }

    #[test]
    fn compose_matches_hand_evaluation() {
        // (48,14,59)^2: l = gcd(48,48,14) = 2 and gcd(48,14) = 2 = -2*48 + 7*14, so w = 7.
        // b1 = b2 kills the v2 term: b3 = 14 + 2*24*(0 - 59*7) = -19810
        let g = form(48, 14, 59);
        let sq = g.compose(&g).unwrap();
        assert_eq!(sq.b(), &big(-19810));
        assert_eq!(sq.discriminant(), g.discriminant());
    }

    #[test]
    fn power_examples() {
        assert_eq!(form(7, 0, 9).power(2), form(1, 0, 63));
        assert_eq!(form(16, 14, 7).power(1), form(7, 0, 9));
        assert_eq!(form(8, 6, 9).power(4), form(1, 0, 63));
        assert_eq!(form(8, 6, 9).power(0), form(1, 0, 63));
        // oracle: iterated composition
        let mut acc = form(8, 6, 9);
        for _ in 1..4 {
            acc = acc.compose_reduced(&form(8, 6, 9)).unwrap();
        }
        assert_eq!(acc, form(1, 0, 63));
    }

    #[test]
    fn order_examples() {
        assert_eq!(form(1, 0, 63).order().unwrap(), 1);
        assert_eq!(form(7, 0, 9).order().unwrap(), 2);
        assert_eq!(form(8, 6, 9).order().unwrap(), 4);
        assert_eq!(form(16, 14, 7).order().unwrap(), 2);
        assert_eq!(form(8, 6, 9).order_dividing(4, 3), Err(Error::OrderOverflow { cap: 3 }));
        assert!(form(8, 6, 9).order_dividing(2, 100).is_err());
    }

    #[test]
    fn class_number_examples() {
        assert_eq!(class_number(&big(-4)).unwrap(), 1);
        assert_eq!(class_number(&big(-3)).unwrap(), 1);
        assert_eq!(class_number(&big(-252)).unwrap(), 4);
        assert_eq!(
            reduced_forms(&big(-252)).unwrap(),
            vec![form(1, 0, 63), form(7, 0, 9), form(8, -6, 9), form(8, 6, 9)]
        );
        assert!(class_number(&big(-6)).is_err());
        // h(-23) = 3, h(-47) = 5, h(-71) = 7, h(-420) = 8
        assert_eq!(class_number(&big(-23)).unwrap(), 3);
        assert_eq!(class_number(&big(-47)).unwrap(), 5);
        assert_eq!(class_number(&big(-71)).unwrap(), 7);
        assert_eq!(class_number(&big(-420)).unwrap(), 8);
    }

    #[test]
    fn class_enumeration_matches_naive_loop() {
        for n in 3..3000i64 {
            let disc = -n;
            if disc.rem_euclid(4) > 1 {
                continue;
            }
            let fast: Vec<(i64, i64, i64)> = reduced_forms(&big(disc))
                .unwrap()
                .into_iter()
                .map(|f| (f.a.to_i64().unwrap(), f.b.to_i64().unwrap(), f.c.to_i64().unwrap()))
                .collect();
            assert_eq!(fast, brute_reduced(disc), "disc {disc}");
        }
    }

    #[test]
    fn discrete_log_finds_least_exponent() {
        let g = form(8, 6, 9);
        for m in 0..4 {
            let t = g.power(m);
            assert_eq!(discrete_log(&g, &t, 4).unwrap(), Some(m));
            assert_eq!(discrete_log(&g, &t, 8).unwrap(), Some(m));
        }
        assert_eq!(discrete_log(&form(7, 0, 9), &form(8, 6, 9), 4).unwrap(), None);
    }

    #[test]
    fn ext_gcd_signs() {
        for (a, b) in [(48, 48), (48, 14), (0, 5), (-12, 18), (7, 0), (0, 0)] {
            let (g, x, y) = ext_gcd(&big(a), &big(b));
            assert!(!g.is_negative());
            assert_eq!(big(a) * x + big(b) * y, g);
        }
    }
}
