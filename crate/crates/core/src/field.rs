//! Arithmetic in the prime field F_p and integer binomial coefficients
//! reduced mod p.
//!
//! Binomials `binom(m, k)` are defined for every integer `m` and `k >= 0` as
//! `m (m-1) ... (m-k+1) / k!`, an integer, and then reduced. For `m >= 0` the
//! reduction goes through Lucas' theorem; negative `m` is first rewritten as
//! `(-1)^k binom(k - m - 1, k)` so no inverse of `k!` is ever needed.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest modulus for which full factorial tables are precomputed.
const TABLE_LIMIT: u32 = 1 << 20;

/// A residue modulo an odd prime `p`, kept in `[0, p)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fp {
    value: u32,
    modulus: u32,
}

impl Fp {
    #[inline]
    fn raw(value: u32, modulus: u32) -> Self {
        debug_assert!(value < modulus);
        Fp { value, modulus }
    }

    #[inline]
    pub fn value(self) -> u32 {
        self.value
    }

    #[inline]
    pub fn modulus(self) -> u32 {
        self.modulus
    }

    /// Zero in the same field.
    #[inline]
    pub fn zero_like(self) -> Fp {
        Fp::raw(0, self.modulus)
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    /// Representative in `(-p/2, p/2]`.
    pub fn signed(self) -> i64 {
        let v = self.value as i64;
        let p = self.modulus as i64;
        if 2 * v > p {
            v - p
        } else {
            v
        }
    }

    pub fn pow(self, mut e: u64) -> Fp {
        let p = self.modulus as u64;
        let mut base = self.value as u64;
        let mut acc = 1u64 % p;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        Fp::raw(acc as u32, self.modulus)
    }

    pub fn inv(self) -> Option<Fp> {
        if self.is_zero() {
            None
        } else {
            Some(self.pow(self.modulus as u64 - 2))
        }
    }
}

impl fmt::Debug for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} (mod {})", self.value, self.modulus)
    }
}

impl fmt::Display for Fp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

impl Add for Fp {
    type Output = Fp;
    #[inline]
    fn add(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let s = self.value as u64 + rhs.value as u64;
        let p = self.modulus as u64;
        Fp::raw(if s >= p { s - p } else { s } as u32, self.modulus)
    }
}

impl Sub for Fp {
    type Output = Fp;
    #[inline]
    fn sub(self, rhs: Fp) -> Fp {
        self + (-rhs)
    }
}

impl Neg for Fp {
    type Output = Fp;
    #[inline]
    fn neg(self) -> Fp {
        if self.value == 0 {
            self
        } else {
            Fp::raw(self.modulus - self.value, self.modulus)
        }
    }
}

impl Mul for Fp {
    type Output = Fp;
    #[inline]
    fn mul(self, rhs: Fp) -> Fp {
        debug_assert_eq!(self.modulus, rhs.modulus);
        let v = self.value as u64 * rhs.value as u64 % self.modulus as u64;
        Fp::raw(v as u32, self.modulus)
    }
}

impl AddAssign for Fp {
    #[inline]
    fn add_assign(&mut self, rhs: Fp) {
        *self = *self + rhs;
    }
}

impl SubAssign for Fp {
    #[inline]
    fn sub_assign(&mut self, rhs: Fp) {
        *self = *self - rhs;
    }
}

impl MulAssign for Fp {
    #[inline]
    fn mul_assign(&mut self, rhs: Fp) {
        *self = *self * rhs;
    }
}

/// Factorials and inverse factorials below `p`, used for the digit
/// binomials in Lucas' theorem.
#[derive(Debug)]
struct DigitBinomials {
    fact: Vec<u32>,
    inv_fact: Vec<u32>,
}

impl DigitBinomials {
    fn new(p: u32) -> Self {
        if p > TABLE_LIMIT {
            return DigitBinomials {
                fact: Vec::new(),
                inv_fact: Vec::new(),
            };
        }
        let n = p as usize;
        let pm = p as u64;
        let mut fact = vec![1u32; n];
        for i in 1..n {
            fact[i] = (fact[i - 1] as u64 * i as u64 % pm) as u32;
        }
        let mut inv_fact = vec![1u32; n];
        inv_fact[n - 1] = Fp::raw(fact[n - 1], p).inv().expect("unit").value;
        for i in (1..n).rev() {
            inv_fact[i - 1] = (inv_fact[i] as u64 * i as u64 % pm) as u32;
        }
        DigitBinomials { fact, inv_fact }
    }
}

/// The prime field F_p together with its binomial machinery.
///
/// Cloning is cheap; the factorial tables are shared.
#[derive(Clone)]
pub struct PrimeField {
    p: u32,
    digits: Arc<DigitBinomials>,
}

impl fmt::Debug for PrimeField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}", self.p)
    }
}

impl PartialEq for PrimeField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
    }
}

impl Eq for PrimeField {}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

impl PrimeField {
    pub fn new(p: u64) -> Result<Self> {
        if p == 2 || p >= (1u64 << 31) || !is_prime(p) {
            return Err(Error::InvalidModulus(p));
        }
        let p = p as u32;
        Ok(PrimeField {
            p,
            digits: Arc::new(DigitBinomials::new(p)),
        })
    }

    #[inline]
    pub fn p(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn zero(&self) -> Fp {
        Fp::raw(0, self.p)
    }

    #[inline]
    pub fn one(&self) -> Fp {
        Fp::raw(1, self.p)
    }

    pub fn elem(&self, n: i64) -> Fp {
        Fp::raw(n.rem_euclid(self.p as i64) as u32, self.p)
    }

    pub fn elem_i128(&self, n: i128) -> Fp {
        Fp::raw(n.rem_euclid(self.p as i128) as u32, self.p)
    }

    /// `(-1)^k`.
    #[inline]
    pub fn sign(&self, k: i64) -> Fp {
        if k.rem_euclid(2) == 0 {
            self.one()
        } else {
            -self.one()
        }
    }

    /// The inverse of 2, which exists because p is odd.
    pub fn half(&self) -> Fp {
        Fp::raw(self.p.div_ceil(2), self.p)
    }

    /// `binom(a, b)` for `0 <= b <= a < p`.
    fn digit_binom(&self, a: u32, b: u32) -> Fp {
        if b > a {
            return self.zero();
        }
        let p = self.p as u64;
        if !self.digits.fact.is_empty() {
            let t = &self.digits;
            let v = t.fact[a as usize] as u64 * t.inv_fact[b as usize] as u64 % p
                * t.inv_fact[(a - b) as usize] as u64
                % p;
            return Fp::raw(v as u32, self.p);
        }
        let b = b.min(a - b);
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 0..b as u64 {
            num = num * (a as u64 - i) % p;
            den = den * (i + 1) % p;
        }
        Fp::raw(num as u32, self.p) * Fp::raw(den as u32, self.p).inv().expect("unit")
    }

    /// Lucas' theorem for nonnegative arguments.
    fn lucas(&self, mut m: u128, mut k: u128) -> Fp {
        let p = self.p as u128;
        let mut acc = self.one();
        while k > 0 {
            let (mi, ki) = ((m % p) as u32, (k % p) as u32);
            if ki > mi {
                return self.zero();
            }
            acc *= self.digit_binom(mi, ki);
            m /= p;
            k /= p;
        }
        acc
    }

    /// `binom(m, k)` reduced mod p, for any integer `m` and `k >= 0`.
    pub fn binom(&self, m: i64, k: u64) -> Fp {
        if k == 0 {
            return self.one();
        }
        if m >= 0 {
            if (m as u64) < k {
                return self.zero();
            }
            self.lucas(m as u128, k as u128)
        } else {
            // binom(-n, k) = (-1)^k binom(n + k - 1, k)
            let top = k as i128 - m as i128 - 1;
            let v = self.lucas(top as u128, k as u128);
            if k.is_multiple_of(2) {
                v
            } else {
                -v
            }
        }
    }

    /// Convenience wrapper taking a signed lower index; negative `k` gives 0.
    pub fn binom_i(&self, m: i64, k: i64) -> Fp {
        if k < 0 {
            self.zero()
        } else {
            self.binom(m, k as u64)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u64) -> PrimeField {
        PrimeField::new(p).unwrap()
    }

    #[test]
    fn rejects_bad_moduli() {
        for p in [0, 1, 2, 4, 9, 15, 1u64 << 31] {
            assert_eq!(PrimeField::new(p).unwrap_err(), Error::InvalidModulus(p));
        }
        assert!(PrimeField::new(2_147_483_647).is_ok());
    }

    #[test]
    fn arithmetic_and_inverse() {
        let k = f(7);
        let a = k.elem(3);
        let b = k.elem(-2);
        assert_eq!((a + b).value(), 1);
        assert_eq!((a * b).value(), 1);
        assert_eq!((a - b).value(), 5);
        assert_eq!(k.half().value(), 4);
        assert_eq!((a * a.inv().unwrap()).value(), 1);
        assert!(k.zero().inv().is_none());
        assert_eq!(k.elem(5).signed(), -2);
        assert_eq!(k.elem(3).signed(), 3);
    }

    #[test]
    fn binom_examples() {
        // 252 mod 5 = 2
        assert_eq!(f(5).binom(10, 5).value(), 2);
        assert_eq!(f(5).binom(17, 0).value(), 1);
        assert_eq!(f(5).binom(-17, 0).value(), 1);
        // (-2)(-3)(-4)/6 = -4
        assert_eq!(f(7).binom(-2, 3), f(7).elem(-4));
        assert_eq!(f(7).binom(3, 5).value(), 0);
        assert_eq!(f(7).binom_i(3, -1).value(), 0);
    }

    #[test]
    fn large_modulus_uses_direct_digits() {
        let k = f(2_147_483_647);
        // binom(40, 20) = 137846528820
        assert_eq!(k.binom(40, 20), k.elem(137_846_528_820));
        assert_eq!(k.binom(-1, 9), k.elem(-1));
    }
}
