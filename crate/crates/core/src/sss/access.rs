use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::fibcodes::{all_codewords, predict_regime, weight_distribution, CyclicCode, Regime};
use crate::galois::FieldModulus;

/// Ceiling on `p^k` for the pairwise covering search.
pub const MINIMAL_VECTOR_CAP: u64 = 1 << 16;

/// Support of a vector as a bitset over coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub(crate) struct Support {
    bits: Vec<u64>,
}

impl Support {
    pub(crate) fn empty(n: usize) -> Self {
        Support {
            bits: vec![0; n.div_ceil(64)],
        }
    }

    pub(crate) fn of(word: &[u32]) -> Self {
        let mut s = Self::empty(word.len());
        for (i, &x) in word.iter().enumerate() {
            if x != 0 {
                s.insert(i);
            }
        }
        s
    }

    pub(crate) fn insert(&mut self, i: usize) {
        self.bits[i / 64] |= 1 << (i % 64);
    }

    pub(crate) fn remove(&mut self, i: usize) {
        self.bits[i / 64] &= !(1 << (i % 64));
    }

    pub(crate) fn is_subset(&self, other: &Support) -> bool {
        self.bits.iter().zip(&other.bits).all(|(a, b)| a & !b == 0)
    }
}

/// Nonzero codewords whose first nonzero entry is 1: one per projective class.
fn class_representatives(words: Vec<Vec<u32>>) -> Vec<Vec<u32>> {
    words
        .into_iter()
        .filter(|w| w.iter().find(|&&x| x != 0) == Some(&1))
        .collect()
}

/// Representatives that cover no codeword outside their own class.
fn minimal_representatives(c: &CyclicCode) -> Result<Vec<Vec<u32>>> {
    let words = all_codewords(c, MINIMAL_VECTOR_CAP)?;
    let reps = class_representatives(words);
    let supports: Vec<(usize, Support)> = reps
        .iter()
        .map(|w| (w.iter().filter(|&&x| x != 0).count(), Support::of(w)))
        .collect();
    // scalar multiples share a support, so comparing classes is the full pairwise check
    let minimal: Vec<bool> = (0..reps.len())
        .into_par_iter()
        .map(|i| {
            let (wi, ref si) = supports[i];
            !supports
                .iter()
                .enumerate()
                .any(|(j, (wj, sj))| j != i && *wj <= wi && sj.is_subset(si))
        })
        .collect();
    let mut out: Vec<Vec<u32>> = reps
        .into_iter()
        .zip(minimal)
        .filter_map(|(w, keep)| keep.then_some(w))
        .collect();
    out.sort();
    Ok(out)
}

/// All minimal vectors of `c`: nonzero codewords covering only their scalar multiples.
pub fn minimal_vectors(c: &CyclicCode) -> Result<Vec<Vec<u32>>> {
    let p = c.modulus();
    let mut out: Vec<Vec<u32>> = minimal_representatives(c)?
        .into_iter()
        .flat_map(|w| (1..p.get()).map(move |lambda| w.iter().map(|&x| p.mul(x, lambda)).collect()))
        .collect();
    out.sort();
    Ok(out)
}

/// Minimal vectors with a nonzero first coordinate, scaled so that coordinate is 1.
pub fn minimal_codewords(c: &CyclicCode) -> Result<Vec<Vec<u32>>> {
    Ok(minimal_representatives(c)?
        .into_iter()
        .filter(|w| w.first() == Some(&1))
        .collect())
}

/// Minimal access sets of the scheme dealt with the dual of a code.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AccessStructure {
    pub p: FieldModulus,
    pub n: usize,
    /// Sorted participant sets in `1..n`, ordered lexicographically.
    pub minimal_sets: Vec<Vec<usize>>,
    /// Participants present in every minimal set.
    pub dictatorial: Vec<usize>,
    /// Number of minimal sets containing each participant `1..n`.
    pub frequency: BTreeMap<usize, usize>,
}

impl AccessStructure {
    /// Distinct frequencies among participants that are not dictatorial.
    pub fn other_frequencies(&self) -> Vec<usize> {
        let mut f: Vec<usize> = self
            .frequency
            .iter()
            .filter(|(i, _)| !self.dictatorial.contains(i))
            .map(|(_, &k)| k)
            .collect();
        f.sort_unstable();
        f.dedup();
        f
    }

    /// No minimal set contains another.
    pub fn is_antichain(&self) -> bool {
        let sets = &self.minimal_sets;
        sets.iter().enumerate().all(|(i, a)| {
            sets.iter()
                .enumerate()
                .all(|(j, b)| i == j || !a.iter().all(|x| b.binary_search(x).is_ok()))
        })
    }
}

/// Access structure of the Massey scheme on `C^⊥`, read off the minimal codewords of `C`.
pub fn access_structure(c: &CyclicCode) -> Result<AccessStructure> {
    let n = c.length();
    let mut minimal_sets: Vec<Vec<usize>> = minimal_codewords(c)?
        .iter()
        .map(|w| (1..n).filter(|&i| w[i] != 0).collect())
        .collect();
    minimal_sets.sort();

    let mut frequency: BTreeMap<usize, usize> = (1..n).map(|i| (i, 0)).collect();
    for set in &minimal_sets {
        for &i in set {
            *frequency.entry(i).or_default() += 1;
        }
    }
    let dictatorial = if minimal_sets.is_empty() {
        Vec::new()
    } else {
        frequency
            .iter()
            .filter(|(_, &k)| k == minimal_sets.len())
            .map(|(&i, _)| i)
            .collect()
    };
    Ok(AccessStructure {
        p: c.modulus(),
        n,
        minimal_sets,
        dictatorial,
        frequency,
    })
}

/// Closed-form access counts for a Fibonacci code in a proven regime.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PredictedAccess {
    pub p: FieldModulus,
    pub regime: Regime,
    pub set_count: usize,
    pub dictatorial: Vec<usize>,
    /// Sets containing each non-dictatorial participant.
    pub frequency: usize,
}

pub fn predict_access_counts(p: FieldModulus) -> Result<PredictedAccess> {
    let prediction = predict_regime(p)?;
    let m = p.get() as usize;
    let (set_count, dictatorial, frequency) = match (prediction.regime, prediction.zero_count) {
        (Regime::Fib2p2, 2) => (m, vec![m + 1], m - 1),
        (Regime::Fib2p2, 4) => (
            (m - 1) / 2,
            vec![m.div_ceil(2), m + 1, 3 * (m + 1) / 2],
            (m - 3) / 2,
        ),
        (Regime::FibMds, _) => (m - 2, Vec::new(), m - 3),
        (Regime::FibPm1, 2) => ((m - 3) / 2, vec![(m - 1) / 2], (m - 5) / 2),
        (Regime::FibPm1, 4) => (
            (m - 5) / 4,
            vec![(m - 1) / 4, (m - 1) / 2, 3 * (m - 1) / 4],
            (m - 9) / 4,
        ),
        _ => {
            return Err(Error::NotApplicable(format!(
                "p = {m} is in the generic regime"
            )))
        }
    };
    Ok(PredictedAccess {
        p,
        regime: prediction.regime,
        set_count,
        dictatorial,
        frequency,
    })
}

/// Sufficient condition for every nonzero codeword to be minimal:
/// `w_min / w_max > (p - 1) / p`, compared as `w_min * p > w_max * (p - 1)`.
pub fn ab_minimality_check(c: &CyclicCode) -> Result<bool> {
    let wd = weight_distribution(c)?;
    let (Some(lo), Some(hi)) = (wd.min_nonzero_weight(), wd.max_nonzero_weight()) else {
        return Err(Error::NotApplicable(
            "the zero code has no nonzero weights".into(),
        ));
    };
    let p = c.modulus().get() as u64;
    Ok(lo as u64 * p > hi as u64 * (p - 1))
}
