use num_bigint::{BigInt, BigUint};
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::enumerate::{codeword_count, fold_codewords, DEFAULT_ENUMERATION_CAP};
use super::{dual_code, CyclicCode};
use crate::error::{Error, Result};

/// Exact count of codewords of each Hamming weight `0..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WeightDistribution {
    n: usize,
    counts: Vec<BigUint>,
}

impl WeightDistribution {
    pub fn from_counts(n: usize, counts: Vec<BigUint>) -> Result<Self> {
        if counts.len() != n + 1 {
            return Err(Error::DimensionMismatch(format!(
                "{} weight counts for length {n}",
                counts.len()
            )));
        }
        Ok(WeightDistribution { n, counts })
    }

    /// Builds a distribution from `(weight, count)` pairs; unlisted weights are zero.
    pub fn from_pairs(n: usize, pairs: &[(usize, u64)]) -> Result<Self> {
        let mut counts = vec![BigUint::zero(); n + 1];
        for &(w, a) in pairs {
            if w > n {
                return Err(Error::DimensionMismatch(format!(
                    "weight {w} exceeds length {n}"
                )));
            }
            counts[w] += a;
        }
        Ok(WeightDistribution { n, counts })
    }

    pub fn length(&self) -> usize {
        self.n
    }

    pub fn count(&self, w: usize) -> &BigUint {
        &self.counts[w]
    }

    pub fn counts(&self) -> &[BigUint] {
        &self.counts
    }

    pub fn total(&self) -> BigUint {
        self.counts.iter().sum()
    }

    /// `(weight, count)` for every weight with a nonzero count, ascending.
    pub fn support(&self) -> Vec<(usize, &BigUint)> {
        self.counts
            .iter()
            .enumerate()
            .filter(|(_, a)| !a.is_zero())
            .collect()
    }

    /// Same as [`support`](Self::support) when every count fits in a `u64`.
    pub fn to_u64_pairs(&self) -> Option<Vec<(usize, u64)>> {
        self.support()
            .into_iter()
            .map(|(w, a)| a.to_u64().map(|a| (w, a)))
            .collect()
    }

    pub fn min_nonzero_weight(&self) -> Option<usize> {
        (1..=self.n).find(|&w| !self.counts[w].is_zero())
    }

    pub fn max_nonzero_weight(&self) -> Option<usize> {
        (1..=self.n).rev().find(|&w| !self.counts[w].is_zero())
    }
}

pub fn weight_distribution(c: &CyclicCode) -> Result<WeightDistribution> {
    weight_distribution_with_cap(c, DEFAULT_ENUMERATION_CAP)
}

/// Counts weights over all `p^k` codewords.
pub fn weight_distribution_with_cap(c: &CyclicCode, cap: u64) -> Result<WeightDistribution> {
    let n = c.length();
    let counts = fold_codewords(
        c,
        cap,
        || vec![0u64; n + 1],
        |mut acc, w| {
            acc[w.iter().filter(|&&x| x != 0).count()] += 1;
            acc
        },
        |mut a, b| {
            for (x, y) in a.iter_mut().zip(b) {
                *x += y;
            }
            a
        },
    )?;
    WeightDistribution::from_counts(n, counts.into_iter().map(BigUint::from).collect())
}

/// Dual weight distribution from `W(u + (p-1)v, u - v) / p^k`, in exact integers.
pub fn macwilliams_transform(
    wd: &WeightDistribution,
    p: u32,
    n: usize,
    k: usize,
) -> Result<WeightDistribution> {
    if wd.n != n {
        return Err(Error::InconsistentDistribution(format!(
            "distribution of length {} for n = {n}",
            wd.n
        )));
    }
    let size = BigUint::from(p).pow(k as u32);
    if wd.total() != size {
        return Err(Error::InconsistentDistribution(format!(
            "counts sum to {} instead of {p}^{k}",
            wd.total()
        )));
    }
    if !wd.counts[0].is_one() {
        return Err(Error::InconsistentDistribution("A_0 must be 1".into()));
    }

    let binom = binomial_table(n);
    let q_minus_one = BigInt::from(p - 1);
    let powers: Vec<BigInt> = (0..=n).map(|e| q_minus_one.pow(e as u32)).collect();
    let size = BigInt::from(size);

    let mut dual = Vec::with_capacity(n + 1);
    for j in 0..=n {
        let mut acc = BigInt::zero();
        for (w, a) in wd.support() {
            // coefficient of v^j in (u + (p-1)v)^(n-w) (u - v)^w
            let mut k_j = BigInt::zero();
            for s in 0..=j.min(w) {
                if j - s > n - w {
                    continue;
                }
                let term = &binom[w][s] * &binom[n - w][j - s] * &powers[j - s];
                if s % 2 == 0 {
                    k_j += term;
                } else {
                    k_j -= term;
                }
            }
            acc += BigInt::from(a.clone()) * k_j;
        }
        if acc.is_negative() || !(&acc % &size).is_zero() {
            return Err(Error::Internal(format!(
                "MacWilliams coefficient for weight {j} is not a nonnegative multiple of {size}"
            )));
        }
        dual.push((acc / &size).to_biguint().expect("nonnegative"));
    }
    WeightDistribution::from_counts(n, dual)
}

fn binomial_table(n: usize) -> Vec<Vec<BigInt>> {
    let mut rows: Vec<Vec<BigInt>> = Vec::with_capacity(n + 1);
    for i in 0..=n {
        let mut row = vec![BigInt::one(); i + 1];
        for j in 1..i {
            row[j] = &rows[i - 1][j - 1] + &rows[i - 1][j];
        }
        rows.push(row);
    }
    rows
}

pub fn min_distance(c: &CyclicCode) -> Result<usize> {
    min_distance_with_cap(c, DEFAULT_ENUMERATION_CAP)
}

/// Smallest nonzero weight, enumerating whichever of the code or its dual is
/// within the cap. The dual route goes through the MacWilliams transform.
pub fn min_distance_with_cap(c: &CyclicCode, cap: u64) -> Result<usize> {
    let wd = distribution_by_any_route(c, cap)?;
    wd.min_nonzero_weight()
        .ok_or_else(|| Error::NotApplicable("the zero code has no nonzero codeword".into()))
}

/// Weight distribution of `c`, enumerated directly or recovered from its dual.
pub fn distribution_by_any_route(c: &CyclicCode, cap: u64) -> Result<WeightDistribution> {
    let p = c.modulus().get();
    let (n, k) = (c.length(), c.dimension());
    match codeword_count(p, k, cap) {
        Ok(_) => weight_distribution_with_cap(c, cap),
        Err(direct) => {
            if codeword_count(p, n - k, cap).is_err() {
                return Err(direct);
            }
            let dual = dual_code(c);
            let dual_wd = weight_distribution_with_cap(&dual, cap)?;
            macwilliams_transform(&dual_wd, p, n, n - k)
        }
    }
}
