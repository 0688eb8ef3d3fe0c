//! Fibonacci-type sequences modulo a prime and their period invariants.
//!
//! The sequence profile of a prime `p` carries the Pisano period `l`, the
//! index `alpha` of the first positive-index zero, the residue `s = F_{alpha+1}`
//! and its multiplicative order `beta`, which also counts the zeros per period.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::galois::{FieldModulus, PrimePoly};

/// One Pisano period of the Fibonacci sequence modulo `p` with its invariants.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SequenceProfile {
    pub p: FieldModulus,
    /// Pisano period `l_p`.
    pub period: usize,
    /// `alpha(p)`: index of the first zero with positive index.
    pub first_zero: usize,
    /// `s(p)`: least residue of `F_{alpha+1}`.
    pub residue_after_zero: u32,
    /// `beta(p)`: order of `s(p)`, equal to the number of zeros per period.
    pub zero_count: usize,
    /// `F_0, ..., F_{l-1}`.
    pub terms: Vec<u32>,
}

impl SequenceProfile {
    /// `F_n mod p` for any index, read off the period.
    pub fn term(&self, n: u64) -> u32 {
        self.terms[(n % self.period as u64) as usize]
    }
}

/// One period of the r-step sequence `E_n = E_{n-1} + ... + E_{n-r}` seeded `0, 1, ..., 1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtendedProfile {
    pub p: FieldModulus,
    pub steps: usize,
    pub period: usize,
    pub zero_count: usize,
    pub terms: Vec<u32>,
}

/// Residue class of `p` that selects which Wall divisibility clause applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum WallClass {
    /// `p = ±1 (mod 10)`: `l_p | p - 1`.
    PlusMinusOne,
    /// `p = ±3 (mod 10)`: `l_p | 2(p + 1)`.
    PlusMinusThree,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Clause {
    pub name: String,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WallReport {
    pub p: FieldModulus,
    pub class: WallClass,
    pub period: usize,
    /// `p - 1` or `2(p + 1)` depending on the class.
    pub bound: u64,
    pub clauses: Vec<Clause>,
}

impl WallReport {
    pub fn all_pass(&self) -> bool {
        self.clauses.iter().all(|c| c.pass)
    }
}

/// Iterates `F_n` until the state pair returns to `(0, 1)`.
pub fn fib_period_sequence(p: FieldModulus) -> Result<SequenceProfile> {
    let m = p.get();
    let cap = 6 * m as usize + 2;
    let mut terms = Vec::new();
    let (mut a, mut b) = (0u32, 1 % m);
    loop {
        terms.push(a);
        (a, b) = (b, p.add(a, b));
        if (a, b) == (0, 1 % m) {
            break;
        }
        if terms.len() > cap {
            return Err(Error::Internal(format!(
                "Pisano search for p = {m} exceeded {cap} steps"
            )));
        }
    }
    let period = terms.len();
    // F_l = F_0 = 0, so the search always terminates within one period
    let first_zero = (1..=period)
        .find(|&i| terms[i % period] == 0)
        .expect("F_l = 0");
    let residue_after_zero = terms[(first_zero + 1) % period];
    let zero_count = p.order(residue_after_zero)? as usize;
    let profile = SequenceProfile {
        p,
        period,
        first_zero,
        residue_after_zero,
        zero_count,
        terms,
    };
    check_profile(&profile)?;
    Ok(profile)
}

fn check_profile(s: &SequenceProfile) -> Result<()> {
    let m = s.p.get();
    let breach = |what: &str| Err(Error::Internal(format!("p = {m}: {what}")));
    if s.period >= 2 && (s.terms[0] != 0 || s.terms[1] != 1) {
        return breach("period does not start 0, 1");
    }
    if s.period != s.first_zero * s.zero_count {
        return breach("l != alpha * beta");
    }
    if s.terms.iter().filter(|&&t| t == 0).count() != s.zero_count {
        return breach("zero count differs from beta");
    }
    if m > 2 {
        if ![1, 2, 4].contains(&s.zero_count) {
            return breach("beta not in {1, 2, 4}");
        }
        if !s.period.is_multiple_of(2) {
            return breach("odd period");
        }
    }
    Ok(())
}

pub fn pisano_period(p: FieldModulus) -> Result<usize> {
    Ok(fib_period_sequence(p)?.period)
}

/// Checks the Wall divisibility bound and the matching pair of congruences on
/// `F_{p-1}, F_p, F_{p+1}` for `p` outside `{2, 5}`.
pub fn wall_vajda_check(p: FieldModulus) -> Result<WallReport> {
    let m = p.get() as u64;
    let class = match m % 10 {
        1 | 9 => WallClass::PlusMinusOne,
        3 | 7 => WallClass::PlusMinusThree,
        _ => {
            return Err(Error::NotApplicable(format!(
                "p = {m} is in neither residue class mod 10"
            )))
        }
    };
    let profile = fib_period_sequence(p)?;
    let period = profile.period as u64;
    let minus_one = p.neg(1);
    let (bound, clauses) = match class {
        WallClass::PlusMinusOne => (
            m - 1,
            vec![
                Clause {
                    name: "l_p | p - 1".into(),
                    pass: (m - 1).is_multiple_of(period),
                },
                Clause {
                    name: "F_{p-1} = 0".into(),
                    pass: profile.term(m - 1) == 0,
                },
                Clause {
                    name: "F_p = 1".into(),
                    pass: profile.term(m) == 1,
                },
            ],
        ),
        WallClass::PlusMinusThree => (
            2 * (m + 1),
            vec![
                Clause {
                    name: "l_p | 2(p + 1)".into(),
                    pass: (2 * (m + 1)).is_multiple_of(period),
                },
                Clause {
                    name: "F_p = -1".into(),
                    pass: profile.term(m) == minus_one,
                },
                Clause {
                    name: "F_{p+1} = 0".into(),
                    pass: profile.term(m + 1) == 0,
                },
            ],
        ),
    };
    Ok(WallReport {
        p,
        class,
        period: profile.period,
        bound,
        clauses,
    })
}

/// The `i`-th term of `G_0 = a, G_1 = b, G_n = G_{n-1} + G_{n-2}` mod p.
///
/// Uses 2x2 matrix powering, so `i` may be huge.
pub fn generalized_term(p: FieldModulus, a: u32, b: u32, i: u64) -> u32 {
    let (a, b) = (a % p.get(), b % p.get());
    // [[0, 1], [1, 1]]^i applied to (a, b) gives (G_i, G_{i+1})
    let mut result = [1u32, 0, 0, 1];
    let mut base = [0u32, 1, 1, 1];
    let mul = |x: [u32; 4], y: [u32; 4]| {
        [
            p.add(p.mul(x[0], y[0]), p.mul(x[1], y[2])),
            p.add(p.mul(x[0], y[1]), p.mul(x[1], y[3])),
            p.add(p.mul(x[2], y[0]), p.mul(x[3], y[2])),
            p.add(p.mul(x[2], y[1]), p.mul(x[3], y[3])),
        ]
    };
    let mut e = i;
    while e > 0 {
        if e & 1 == 1 {
            result = mul(result, base);
        }
        base = mul(base, base);
        e >>= 1;
    }
    p.add(p.mul(result[0], a), p.mul(result[1], b))
}

pub const MAX_STEPS: usize = 5;

/// One period of the r-step sequence, found by waiting for the seed state to recur.
pub fn extended_period_sequence(p: FieldModulus, steps: usize) -> Result<ExtendedProfile> {
    if !(2..=MAX_STEPS).contains(&steps) {
        return Err(Error::InvalidArgument(format!(
            "step count r = {steps} outside 2..={MAX_STEPS}"
        )));
    }
    let m = p.get();
    let cap = (m as u64)
        .saturating_pow(steps as u32)
        .saturating_add(steps as u64);
    let mut seed = vec![1 % m; steps];
    seed[0] = 0;
    let mut state = seed.clone();
    let mut terms = Vec::new();
    loop {
        terms.push(state[0]);
        let next = state.iter().fold(0, |acc, &x| p.add(acc, x));
        state.rotate_left(1);
        state[steps - 1] = next;
        if state == seed {
            break;
        }
        if terms.len() as u64 > cap {
            return Err(Error::Internal(format!(
                "{steps}-step period search for p = {m} exceeded {cap} steps"
            )));
        }
    }
    let zero_count = terms.iter().filter(|&&t| t == 0).count();
    Ok(ExtendedProfile {
        p,
        steps,
        period: terms.len(),
        zero_count,
        terms,
    })
}

/// `f(x) = sum F_i x^i` over one Pisano period.
pub fn fibonacci_polynomial(p: FieldModulus) -> Result<PrimePoly> {
    Ok(PrimePoly::new(p, fib_period_sequence(p)?.terms))
}

/// `t(x) = sum E_i x^i` over one period of the r-step sequence.
pub fn extended_polynomial(p: FieldModulus, steps: usize) -> Result<PrimePoly> {
    Ok(PrimePoly::new(p, extended_period_sequence(p, steps)?.terms))
}

/// Number of projectively distinct consecutive pairs `(F_i, F_{i+1})` with both
/// entries nonzero, given by `(l - beta)/beta - 1` and cross-checked by enumeration.
pub fn pair_classes(p: FieldModulus) -> Result<usize> {
    if p.get() == 2 {
        return Err(Error::InvalidArgument("pair classes need p > 2".into()));
    }
    let profile = fib_period_sequence(p)?;
    let (l, beta) = (profile.period, profile.zero_count);
    let formula = (l - beta) / beta - 1;

    let terms = &profile.terms;
    let classes: BTreeSet<u32> = (0..l)
        .map(|i| (terms[i], terms[(i + 1) % l]))
        .filter(|&(a, b)| a != 0 && b != 0)
        .map(|(a, b)| p.mul(b, p.inv(a).expect("nonzero")))
        .collect();
    if classes.len() != formula {
        return Err(Error::Internal(format!(
            "p = {}: {} enumerated pair classes vs {formula} from the formula",
            p.get(),
            classes.len()
        )));
    }
    Ok(formula)
}
