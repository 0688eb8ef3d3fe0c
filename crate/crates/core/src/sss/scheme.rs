use std::collections::BTreeMap;

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};

use super::access::{minimal_codewords, Support, MINIMAL_VECTOR_CAP};
use crate::error::{Error, Result};
use crate::fibcodes::{codeword_count, dual_code, CyclicCode};
use crate::galois::{solve_linear, FieldModulus, PrimePoly};

/// Shares of one secret. The secret sits at coordinate 0; participant `i`
/// holds coordinate `i` of a codeword of the dealing code.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShareSet {
    pub p: FieldModulus,
    pub n: usize,
    pub secret_index: usize,
    pub shares: BTreeMap<usize, u32>,
    pub code_generator: PrimePoly,
    pub dealing_generator: PrimePoly,
}

/// Massey scheme over `C`: secrets are dealt with codewords of `C^⊥` and
/// recovered through codewords of `C` with first coordinate 1.
#[derive(Clone, Debug)]
pub struct MasseyScheme {
    code: CyclicCode,
    dealing: CyclicCode,
    /// Present when `C` is small enough to enumerate.
    minimal: Option<Vec<(Support, Vec<u32>)>>,
}

impl MasseyScheme {
    pub fn new(code: CyclicCode) -> Result<Self> {
        let dealing = dual_code(&code);
        if dealing.dimension() == 0 {
            return Err(Error::SchemeUndefined("the dealing code is zero".into()));
        }
        if dealing.generator_matrix().column(0).iter().all(|&x| x == 0) {
            return Err(Error::SchemeUndefined(
                "coordinate 0 vanishes on the dealing code".into(),
            ));
        }
        let minimal =
            if codeword_count(code.modulus().get(), code.dimension(), MINIMAL_VECTOR_CAP).is_ok() {
                let words = minimal_codewords(&code)?;
                Some(
                    words
                        .into_iter()
                        .map(|w| {
                            let mut s = Support::of(&w);
                            // coordinate 0 belongs to the dealer
                            s.remove(0);
                            (s, w)
                        })
                        .collect(),
                )
            } else {
                None
            };
        Ok(MasseyScheme {
            code,
            dealing,
            minimal,
        })
    }

    pub fn code(&self) -> &CyclicCode {
        &self.code
    }

    pub fn dealing_code(&self) -> &CyclicCode {
        &self.dealing
    }

    /// Number of participants, `n - 1`.
    pub fn participants(&self) -> usize {
        self.code.length() - 1
    }

    /// Deals `secret` using a ChaCha20 stream seeded from `seed`.
    pub fn deal(&self, secret: u32, seed: u64) -> Result<ShareSet> {
        let p = self.code.modulus();
        if secret >= p.get() {
            return Err(Error::InvalidArgument(format!(
                "secret {secret} is not below {p}",
                p = p.get()
            )));
        }
        let g = self.dealing.generator_matrix();
        let column = g.column(0);
        let pivot = column
            .iter()
            .position(|&x| x != 0)
            .expect("checked at construction");

        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let mut u: Vec<u32> = (0..self.dealing.dimension())
            .map(|_| uniform(&mut rng, p))
            .collect();
        // adjust one message symbol so that coordinate 0 equals the secret
        let current = dot(p, &u, &column);
        let delta = p.mul(p.sub(secret, current), p.inv(column[pivot])?);
        u[pivot] = p.add(u[pivot], delta);

        let v = g.vec_mul(&u)?;
        debug_assert_eq!(v[0], secret);
        Ok(ShareSet {
            p,
            n: self.code.length(),
            secret_index: 0,
            shares: (1..v.len()).map(|i| (i, v[i])).collect(),
            code_generator: self.code.generator().clone(),
            dealing_generator: self.dealing.generator().clone(),
        })
    }

    /// Whether the participants in `access` determine the secret.
    pub fn is_authorized(&self, access: &[usize]) -> Result<bool> {
        let set = self.access_set(access)?;
        match &self.minimal {
            Some(minimal) => {
                let bits = self.access_bits(&set);
                Ok(minimal.iter().any(|(s, _)| s.is_subset(&bits)))
            }
            None => Ok(self.solve(&set)?.is_some()),
        }
    }

    /// Recovers the secret from the shares of `access`.
    pub fn reconstruct(&self, access: &[usize], shares: &BTreeMap<usize, u32>) -> Result<u32> {
        let p = self.code.modulus();
        let set = self.access_set(access)?;
        let mut values = Vec::with_capacity(set.len());
        for &i in &set {
            let v = *shares.get(&i).ok_or(Error::MissingShare(i))?;
            if v >= p.get() {
                return Err(Error::InvalidArgument(format!(
                    "share of participant {i} is not below {}",
                    p.get()
                )));
            }
            values.push(v);
        }

        if let Some(minimal) = &self.minimal {
            let bits = self.access_bits(&set);
            let mut found = None;
            for (_, w) in minimal.iter().filter(|(s, _)| s.is_subset(&bits)) {
                // w . v = 0 with w_0 = 1 gives s = -sum w_i v_i
                let sum = set
                    .iter()
                    .zip(&values)
                    .fold(0, |acc, (&i, &v)| p.add(acc, p.mul(w[i], v)));
                let secret = p.neg(sum);
                match found {
                    None => found = Some(secret),
                    Some(prev) if prev != secret => {
                        return Err(Error::Internal(format!(
                            "minimal codewords disagree on the secret ({prev} vs {secret}); shares are inconsistent"
                        )))
                    }
                    Some(_) => {}
                }
                if !cfg!(debug_assertions) {
                    break;
                }
            }
            return found.ok_or(Error::Unauthorized);
        }

        let x = self.solve(&set)?.ok_or(Error::Unauthorized)?;
        Ok(x.iter()
            .zip(&values)
            .fold(0, |acc, (&a, &v)| p.add(acc, p.mul(a, v))))
    }

    /// Coefficients `x` with `sum x_j col_{i_j} = col_0` over the dealing matrix.
    fn solve(&self, set: &[usize]) -> Result<Option<Vec<u32>>> {
        let g = self.dealing.generator_matrix();
        let a = g.select_columns(set)?;
        solve_linear(&a, &g.column(0))
    }

    fn access_set(&self, access: &[usize]) -> Result<Vec<usize>> {
        let n = self.code.length();
        let mut set = access.to_vec();
        set.sort_unstable();
        set.dedup();
        if let Some(&bad) = set.iter().find(|&&i| i == 0 || i >= n) {
            return Err(Error::InvalidArgument(format!(
                "participant {bad} is outside 1..={}",
                n - 1
            )));
        }
        Ok(set)
    }

    fn access_bits(&self, set: &[usize]) -> Support {
        let mut bits = Support::empty(self.code.length());
        for &i in set {
            bits.insert(i);
        }
        bits
    }
}

fn dot(p: FieldModulus, a: &[u32], b: &[u32]) -> u32 {
    a.iter()
        .zip(b)
        .fold(0, |acc, (&x, &y)| p.add(acc, p.mul(x, y)))
}

/// Uniform draw from `0..p` by rejection on 32-bit words.
fn uniform(rng: &mut ChaCha20Rng, p: FieldModulus) -> u32 {
    let m = p.get() as u64;
    let zone = (1u64 << 32) / m * m;
    loop {
        let x = rng.next_u32() as u64;
        if x < zone {
            return (x % m) as u32;
        }
    }
}

/// Deals `secret` with the dual of `c` as dealing code.
pub fn deal_shares(c: &CyclicCode, secret: u32, seed: u64) -> Result<ShareSet> {
    MasseyScheme::new(c.clone())?.deal(secret, seed)
}

pub fn reconstruct_secret(
    c: &CyclicCode,
    access: &[usize],
    shares: &BTreeMap<usize, u32>,
) -> Result<u32> {
    MasseyScheme::new(c.clone())?.reconstruct(access, shares)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibcodes::{build_cyclic_code, fibonacci_code};
    use crate::sss::access_structure;

    fn fp(p: u64) -> FieldModulus {
        FieldModulus::new(p).unwrap()
    }

    #[test]
    fn dealt_vector_is_a_dealing_codeword() {
        for m in [7u64, 11, 13] {
            let c = fibonacci_code(fp(m)).unwrap();
            let scheme = MasseyScheme::new(c.clone()).unwrap();
            for seed in 0..5 {
                let shares = scheme.deal(3, seed).unwrap();
                assert_eq!(shares.shares.len(), c.length() - 1);
                let mut v = vec![3u32];
                v.extend(shares.shares.values());
                assert!(scheme.dealing_code().contains(&v));
                // every codeword of C is orthogonal to v
                for r in c.generator_matrix().row_vecs() {
                    assert_eq!(dot(c.modulus(), &r, &v), 0);
                }
            }
        }
    }

    #[test]
    fn dealing_is_deterministic() {
        let c = fibonacci_code(fp(11)).unwrap();
        assert_eq!(
            deal_shares(&c, 4, 99).unwrap(),
            deal_shares(&c, 4, 99).unwrap()
        );
        assert_ne!(
            deal_shares(&c, 4, 99).unwrap(),
            deal_shares(&c, 4, 100).unwrap()
        );
    }

    #[test]
    fn minimal_sets_recover() {
        for m in [7u64, 11, 13] {
            let c = fibonacci_code(fp(m)).unwrap();
            let scheme = MasseyScheme::new(c.clone()).unwrap();
            let a = access_structure(&c).unwrap();
            for secret in [0, 1, m as u32 - 1] {
                let shares = scheme.deal(secret, secret as u64 + 17).unwrap();
                for set in &a.minimal_sets {
                    assert_eq!(scheme.reconstruct(set, &shares.shares).unwrap(), secret);
                    // the linear-algebra route agrees
                    let x = scheme.solve(set).unwrap().unwrap();
                    let s = set.iter().zip(&x).fold(0, |acc, (i, &xi)| {
                        c.modulus().add(acc, c.modulus().mul(xi, shares.shares[i]))
                    });
                    assert_eq!(s, secret);
                }
            }
        }
    }

    #[test]
    fn authorization_matches_solver() {
        let c = fibonacci_code(fp(7)).unwrap();
        let scheme = MasseyScheme::new(c).unwrap();
        let n = 16usize;
        for mask in 0u32..(1 << (n - 1)) {
            let set: Vec<usize> = (1..n).filter(|i| mask >> (i - 1) & 1 == 1).collect();
            assert_eq!(
                scheme.is_authorized(&set).unwrap(),
                scheme.solve(&set).unwrap().is_some(),
                "{set:?}"
            );
        }
    }

    #[test]
    fn unauthorized_and_missing() {
        let c = fibonacci_code(fp(7)).unwrap();
        let shares = deal_shares(&c, 5, 1).unwrap();
        assert_eq!(
            reconstruct_secret(&c, &[1, 2, 3], &shares.shares),
            Err(Error::Unauthorized)
        );
        let mut partial = shares.shares.clone();
        partial.remove(&8);
        assert_eq!(
            reconstruct_secret(&c, &[8, 9], &partial),
            Err(Error::MissingShare(8))
        );
        assert!(matches!(
            reconstruct_secret(&c, &[0, 8], &shares.shares),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            reconstruct_secret(&c, &[16], &shares.shares),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            deal_shares(&c, 7, 0),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn undefined_schemes() {
        let p = fp(5);
        // C = full space: the dealing code is zero
        let full = build_cyclic_code(p, 4, &PrimePoly::one(p)).unwrap();
        assert!(matches!(
            MasseyScheme::new(full),
            Err(Error::SchemeUndefined(_))
        ));
    }

    #[test]
    fn solver_route_without_enumeration() {
        // enumeration would work here; dropping the minimal codewords forces the solver
        let c = fibonacci_code(fp(101)).unwrap();
        let mut scheme = MasseyScheme::new(c.clone()).unwrap();
        let shares = scheme.deal(42, 7).unwrap();
        let everyone: Vec<usize> = (1..c.length()).collect();
        let with_minimal = scheme.reconstruct(&everyone, &shares.shares).unwrap();
        scheme.minimal = None;
        assert_eq!(scheme.reconstruct(&everyone, &shares.shares).unwrap(), 42);
        assert_eq!(with_minimal, 42);
        assert_eq!(
            scheme.reconstruct(&[1], &shares.shares),
            Err(Error::Unauthorized)
        );
    }
}
