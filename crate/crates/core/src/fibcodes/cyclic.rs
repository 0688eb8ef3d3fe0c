use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::{FieldModulus, FpMatrix, PrimePoly};

/// Where a code came from; drives regime classification.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CodeOrigin {
    Custom,
    Fibonacci,
    Extended { steps: usize },
    Dual,
}

/// A cyclic code `<g(x)>` in `F_p[x]/(x^n - 1)` with its shift-basis generator matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicCode {
    p: FieldModulus,
    n: usize,
    generator: PrimePoly,
    dimension: usize,
    matrix: FpMatrix,
    origin: CodeOrigin,
    source: Option<PrimePoly>,
    experimental: bool,
}

impl CyclicCode {
    pub fn modulus(&self) -> FieldModulus {
        self.p
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Canonical monic generator `g(x)`.
    pub fn generator(&self) -> &PrimePoly {
        &self.generator
    }

    /// `k x n` matrix whose row `i` is `x^i g(x)`.
    pub fn generator_matrix(&self) -> &FpMatrix {
        &self.matrix
    }

    pub fn origin(&self) -> CodeOrigin {
        self.origin
    }

    /// The polynomial the generator was derived from, e.g. a Fibonacci polynomial.
    pub fn source(&self) -> Option<&PrimePoly> {
        self.source.as_ref()
    }

    /// Set when parameters come from computation outside any proven case.
    pub fn is_experimental(&self) -> bool {
        self.experimental
    }

    /// `h(x) = (x^n - 1) / g(x)`.
    pub fn check_polynomial(&self) -> PrimePoly {
        let (h, _) = PrimePoly::x_pow_minus_one(self.p, self.n)
            .divmod(&self.generator)
            .expect("generator is nonzero");
        h
    }

    /// Membership: `g(x)` divides the word's polynomial.
    pub fn contains(&self, word: &[u32]) -> bool {
        if word.len() != self.n {
            return false;
        }
        let poly = PrimePoly::new(self.p, word.to_vec());
        self.generator.divides(&poly).unwrap_or(false)
    }

    /// Encodes a message of length `k` as `u * G`.
    pub fn encode(&self, message: &[u32]) -> Result<Vec<u32>> {
        self.matrix.vec_mul(message)
    }

    pub(crate) fn with_origin(
        mut self,
        origin: CodeOrigin,
        source: Option<PrimePoly>,
        experimental: bool,
    ) -> Self {
        self.origin = origin;
        self.source = source;
        self.experimental = experimental;
        self
    }
}

/// Cyclic right shift `(a_0, ..., a_{n-1}) -> (a_{n-1}, a_0, ..., a_{n-2})`.
pub fn cyclic_shift(word: &[u32]) -> Vec<u32> {
    let mut out = word.to_vec();
    out.rotate_right(1);
    out
}

/// Monic `gcd(f, x^n - 1)`, the generator of the ideal `<f>` in `F_p[x]/(x^n - 1)`.
pub fn canonical_generator(f: &PrimePoly, n: usize) -> Result<PrimePoly> {
    if f.is_zero() {
        return Err(Error::InvalidArgument("source polynomial is zero".into()));
    }
    if n == 0 {
        return Err(Error::InvalidArgument(
            "code length must be positive".into(),
        ));
    }
    f.gcd(&PrimePoly::x_pow_minus_one(f.modulus(), n))
}

/// Builds the cyclic code generated by `g`, which must divide `x^n - 1`.
/// A non-monic `g` is normalised; it generates the same ideal.
pub fn build_cyclic_code(p: FieldModulus, n: usize, g: &PrimePoly) -> Result<CyclicCode> {
    if g.modulus() != p {
        return Err(Error::ModulusMismatch(p.get(), g.modulus().get()));
    }
    if n == 0 {
        return Err(Error::InvalidArgument(
            "code length must be positive".into(),
        ));
    }
    if g.is_zero() || !g.divides(&PrimePoly::x_pow_minus_one(p, n))? {
        return Err(Error::NotCyclicGenerator(n));
    }
    let generator = g.monic();
    let dimension = n - generator.degree() as usize;
    let rows: Vec<Vec<u32>> = (0..dimension)
        .map(|i| {
            let mut row = vec![0u32; n];
            row[i..i + generator.coeffs().len()].copy_from_slice(generator.coeffs());
            row
        })
        .collect();
    let matrix = FpMatrix::from_rows(p, n, &rows)?;
    Ok(CyclicCode {
        p,
        n,
        generator,
        dimension,
        matrix,
        origin: CodeOrigin::Custom,
        source: None,
        experimental: false,
    })
}

/// The dual code, generated by the monic reciprocal of `h(x) = (x^n - 1)/g(x)`.
pub fn dual_code(c: &CyclicCode) -> CyclicCode {
    let generator = c.check_polynomial().reciprocal().monic();
    build_cyclic_code(c.p, c.n, &generator)
        .expect("reciprocal of a divisor of x^n - 1 divides x^n - 1")
        .with_origin(CodeOrigin::Dual, None, c.experimental)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::galois::is_prime;

    fn fp(p: u64) -> FieldModulus {
        FieldModulus::new(p).unwrap()
    }

    fn poly(p: u64, c: &[i64]) -> PrimePoly {
        PrimePoly::from_signed(fp(p), c)
    }

    #[test]
    fn ternary_repetition_code() {
        let c = build_cyclic_code(fp(3), 3, &poly(3, &[1, 1, 1])).unwrap();
        assert_eq!(c.dimension(), 1);
        let words: Vec<Vec<u32>> = (0..3).map(|u| c.encode(&[u]).unwrap()).collect();
        assert_eq!(words, vec![vec![0, 0, 0], vec![1, 1, 1], vec![2, 2, 2]]);
    }

    #[test]
    fn full_space_and_zero_code() {
        let p = fp(5);
        let full = build_cyclic_code(p, 4, &PrimePoly::one(p)).unwrap();
        assert_eq!(full.dimension(), 4);
        let g = canonical_generator(&PrimePoly::x_pow_minus_one(p, 4), 4).unwrap();
        assert_eq!(g, PrimePoly::x_pow_minus_one(p, 4));
        let zero = build_cyclic_code(p, 4, &g).unwrap();
        assert_eq!(zero.dimension(), 0);
        assert_eq!(dual_code(&zero).dimension(), 4);
        assert_eq!(dual_code(&full).dimension(), 0);
    }

    #[test]
    fn rejects_non_divisors() {
        // x^2 + 1 is irreducible over F_11 and has no root among the 10th roots of unity
        let err = build_cyclic_code(fp(11), 10, &poly(11, &[1, 0, 1])).unwrap_err();
        assert_eq!(err, Error::NotCyclicGenerator(10));
        assert!(canonical_generator(&PrimePoly::zero(fp(11)), 10).is_err());
    }

    #[test]
    fn non_monic_generator_is_normalised() {
        let c = build_cyclic_code(fp(3), 3, &poly(3, &[2, 2, 2])).unwrap();
        assert_eq!(c.generator(), &poly(3, &[1, 1, 1]));
    }

    #[test]
    fn dual_is_orthogonal_and_involutive() {
        for m in (3..40).filter(|&n| is_prime(n)) {
            let p = fp(m);
            let x_n = PrimePoly::x_pow_minus_one(p, m as usize - 1);
            // every monic divisor x - a of x^{p-1} - 1 gives a code
            for a in 1..m.min(6) as u32 {
                let g = PrimePoly::new(p, vec![p.neg(a), 1]);
                assert!(g.divides(&x_n).unwrap());
                let c = build_cyclic_code(p, m as usize - 1, &g).unwrap();
                let d = dual_code(&c);
                assert_eq!(c.dimension() + d.dimension(), c.length());
                let prod = c
                    .generator_matrix()
                    .mul(&d.generator_matrix().transpose())
                    .unwrap();
                assert!((0..prod.rows()).all(|r| prod.row(r).iter().all(|&x| x == 0)));
                let dd = dual_code(&d);
                assert!(dd
                    .generator_matrix()
                    .same_row_space(c.generator_matrix())
                    .unwrap());
            }
        }
    }

    #[test]
    fn shifted_rows_stay_in_code() {
        let p = fp(7);
        let g = poly(7, &[-1, 1, 1]); // x^2 + x - 1 divides x^16 - 1 over F_7
        let c = build_cyclic_code(p, 16, &g).unwrap();
        for r in 0..c.dimension() {
            let shifted = cyclic_shift(c.generator_matrix().row(r));
            assert!(c.contains(&shifted));
            assert!(c.generator_matrix().row_space_contains(&shifted));
        }
    }
}
