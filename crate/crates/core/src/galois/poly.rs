use std::fmt;

use super::FieldModulus;
use crate::error::{Error, Result};

/// Dense univariate polynomial over F_p.
///
/// Coefficients are stored constant term first and trailing zeros are trimmed,
/// so the zero polynomial has an empty coefficient list and degree `-1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimePoly {
    p: FieldModulus,
    coeffs: Vec<u32>,
}

impl PrimePoly {
    pub fn new(p: FieldModulus, coeffs: Vec<u32>) -> Self {
        let mut coeffs = coeffs;
        for c in coeffs.iter_mut() {
            *c %= p.get();
        }
        let mut poly = PrimePoly { p, coeffs };
        poly.trim();
        poly
    }

    /// Builds a polynomial from signed coefficients, e.g. `[-1, 1, 1]` for `x^2 + x - 1`.
    pub fn from_signed(p: FieldModulus, coeffs: &[i64]) -> Self {
        Self::new(p, coeffs.iter().map(|&c| p.reduce_signed(c)).collect())
    }

    pub fn zero(p: FieldModulus) -> Self {
        PrimePoly {
            p,
            coeffs: Vec::new(),
        }
    }

    pub fn one(p: FieldModulus) -> Self {
        Self::new(p, vec![1])
    }

    /// `c * x^n`.
    pub fn monomial(p: FieldModulus, c: u32, n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[n] = c;
        Self::new(p, coeffs)
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(p: FieldModulus, n: usize) -> Self {
        let mut coeffs = vec![0; n + 1];
        coeffs[n] = 1;
        coeffs[0] = p.neg(1);
        Self::new(p, coeffs)
    }

    /// The Fibonacci characteristic polynomial `x^2 + x - 1`.
    pub fn fibonacci_characteristic(p: FieldModulus) -> Self {
        Self::from_signed(p, &[-1, 1, 1])
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> FieldModulus {
        self.p
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<u32> {
        self.coeffs
    }

    /// Degree, with `-1` for the zero polynomial.
    pub fn degree(&self) -> isize {
        self.coeffs.len() as isize - 1
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn leading(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    /// Number of nonzero coefficients.
    pub fn weight(&self) -> usize {
        self.coeffs.iter().filter(|&&c| c != 0).count()
    }

    fn check(&self, other: &PrimePoly) -> Result<()> {
        if self.p != other.p {
            return Err(Error::ModulusMismatch(self.p.get(), other.p.get()));
        }
        Ok(())
    }

    pub fn add(&self, other: &PrimePoly) -> Result<PrimePoly> {
        self.check(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| self.p.add(self.coeff(i), other.coeff(i)))
            .collect();
        Ok(Self::new(self.p, coeffs))
    }

    pub fn sub(&self, other: &PrimePoly) -> Result<PrimePoly> {
        self.check(other)?;
        let len = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..len)
            .map(|i| self.p.sub(self.coeff(i), other.coeff(i)))
            .collect();
        Ok(Self::new(self.p, coeffs))
    }

    pub fn scale(&self, c: u32) -> PrimePoly {
        let coeffs = self.coeffs.iter().map(|&a| self.p.mul(a, c)).collect();
        Self::new(self.p, coeffs)
    }

    pub fn mul(&self, other: &PrimePoly) -> Result<PrimePoly> {
        self.check(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(self.p));
        }
        let p = self.p.get() as u64;
        let mut acc = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % p;
            }
        }
        Ok(Self::new(
            self.p,
            acc.into_iter().map(|c| c as u32).collect(),
        ))
    }

    /// Euclidean division: `self = q * divisor + r` with `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &PrimePoly) -> Result<(PrimePoly, PrimePoly)> {
        self.check(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero(self.p.get()));
        }
        let p = self.p;
        let db = divisor.coeffs.len() - 1;
        if self.coeffs.len() <= db {
            return Ok((Self::zero(p), self.clone()));
        }
        let lead_inv = p.inv(divisor.leading())?;
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u32; rem.len() - db];
        for i in (0..quot.len()).rev() {
            let c = p.mul(rem[i + db], lead_inv);
            if c == 0 {
                continue;
            }
            quot[i] = c;
            for (j, &d) in divisor.coeffs.iter().enumerate() {
                rem[i + j] = p.sub(rem[i + j], p.mul(c, d));
            }
        }
        rem.truncate(db);
        Ok((Self::new(p, quot), Self::new(p, rem)))
    }

    pub fn rem(&self, divisor: &PrimePoly) -> Result<PrimePoly> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Whether `self` divides `other` exactly.
    pub fn divides(&self, other: &PrimePoly) -> Result<bool> {
        Ok(other.rem(self)?.is_zero())
    }

    /// Scales to leading coefficient 1; the zero polynomial is returned unchanged.
    pub fn monic(&self) -> PrimePoly {
        match self.leading() {
            0 | 1 => self.clone(),
            lead => self.scale(self.p.inv(lead).expect("nonzero leading coefficient")),
        }
    }

    /// Monic greatest common divisor. `gcd(a, 0)` is `monic(a)`.
    pub fn gcd(&self, other: &PrimePoly) -> Result<PrimePoly> {
        self.check(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::UndefinedGcd);
        }
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    pub fn eval(&self, x: u32) -> u32 {
        self.coeffs
            .iter()
            .rev()
            .fold(0, |acc, &c| self.p.add(self.p.mul(acc, x), c))
    }

    /// `x^deg * self(1/x)`: the coefficient list reversed.
    pub fn reciprocal(&self) -> PrimePoly {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        Self::new(self.p, coeffs)
    }

    /// Coefficient vector of length `n` after reduction modulo `x^n - 1`.
    pub fn cyclic_vector(&self, n: usize) -> Vec<u32> {
        let mut out = vec![0u32; n];
        for (i, &c) in self.coeffs.iter().enumerate() {
            out[i % n] = self.p.add(out[i % n], c);
        }
        out
    }
}

impl fmt::Display for PrimePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => write!(f, "x")?,
                (1, c) => write!(f, "{c}x")?,
                (i, 1) => write!(f, "x^{i}")?,
                (i, c) => write!(f, "{c}x^{i}")?,
            }
        }
        Ok(())
    }
}
