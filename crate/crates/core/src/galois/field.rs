use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

const MODULUS_LIMIT: u64 = 1 << 31;

/// Deterministic trial-division primality test.
///
/// Only used on moduli below 2^31, so at most ~46k divisions.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) || n.is_multiple_of(3) {
        return false;
    }
    let mut d = 5u64;
    while d * d <= n {
        if n.is_multiple_of(d) || n.is_multiple_of(d + 2) {
            return false;
        }
        d += 6;
    }
    true
}

/// A prime modulus `p` with `2 <= p < 2^31`.
///
/// Residues are plain `u32` values kept in `[0, p)`. All products are formed
/// in `u64`, which cannot overflow under the 2^31 cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "u64", into = "u64")]
pub struct FieldModulus(u32);

impl FieldModulus {
    pub fn new(p: u64) -> Result<Self> {
        if p >= MODULUS_LIMIT || !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        Ok(FieldModulus(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn reduce(self, a: u64) -> u32 {
        (a % self.0 as u64) as u32
    }

    /// Reduces a signed integer into `[0, p)`.
    #[inline]
    pub fn reduce_signed(self, a: i64) -> u32 {
        a.rem_euclid(self.0 as i64) as u32
    }

    #[inline]
    pub fn add(self, a: u32, b: u32) -> u32 {
        let s = a as u64 + b as u64;
        let p = self.0 as u64;
        (if s >= p { s - p } else { s }) as u32
    }

    #[inline]
    pub fn sub(self, a: u32, b: u32) -> u32 {
        if a >= b {
            a - b
        } else {
            a + self.0 - b
        }
    }

    #[inline]
    pub fn neg(self, a: u32) -> u32 {
        if a == 0 {
            0
        } else {
            self.0 - a
        }
    }

    #[inline]
    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.0;
        let mut acc = 1 % self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inv(self, a: u32) -> Result<u32> {
        let a = a % self.0;
        if a == 0 {
            return Err(Error::DivisionByZero(self.0));
        }
        let (mut r0, mut r1) = (self.0 as i64, a as i64);
        let (mut t0, mut t1) = (0i64, 1i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (t0, t1) = (t1, t0 - q * t1);
        }
        Ok(self.reduce_signed(t0))
    }

    /// Smallest `m >= 1` with `a^m = 1`. Always a divisor of `p - 1`.
    pub fn order(self, a: u32) -> Result<u64> {
        let a = a % self.0;
        if a == 0 {
            return Err(Error::UndefinedOrder(self.0));
        }
        let group = self.0 as u64 - 1;
        let mut order = group;
        for (q, _) in factorize(group) {
            while order.is_multiple_of(q) && self.pow(a, order / q) == 1 {
                order /= q;
            }
        }
        Ok(order)
    }

    /// Whether `a` generates the multiplicative group.
    pub fn is_primitive(self, a: u32) -> bool {
        matches!(self.order(a), Ok(m) if m == self.0 as u64 - 1)
    }

    /// All primitive elements in increasing order.
    pub fn primitive_elements(self) -> Vec<u32> {
        let group = self.0 as u64 - 1;
        let primes: Vec<u64> = factorize(group).into_iter().map(|(q, _)| q).collect();
        (1..self.0)
            .filter(|&a| primes.iter().all(|&q| self.pow(a, group / q) != 1))
            .collect()
    }
}

impl fmt::Display for FieldModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl TryFrom<u64> for FieldModulus {
    type Error = Error;

    fn try_from(p: u64) -> Result<Self> {
        FieldModulus::new(p)
    }
}

impl From<FieldModulus> for u64 {
    fn from(p: FieldModulus) -> u64 {
        p.0 as u64
    }
}

fn factorize(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            let mut e = 0;
            while n.is_multiple_of(d) {
                n /= d;
                e += 1;
            }
            out.push((d, e));
        }
        d += 1;
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}
