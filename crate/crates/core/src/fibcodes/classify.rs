use serde::Serialize;

use super::enumerate::DEFAULT_ENUMERATION_CAP;
use super::weights::{min_distance_with_cap, WeightDistribution};
use super::{canonical_generator, CodeOrigin, CyclicCode};
use crate::error::{Error, Result};
use crate::fibseq::{fib_period_sequence, fibonacci_polynomial, SequenceProfile};
use crate::galois::FieldModulus;

/// Which closed-form family a code falls into.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Regime {
    /// `l = p - 1`, `beta = 1`.
    FibMds,
    /// `l = p - 1`, `beta` in `{2, 4}`.
    FibPm1,
    /// `l = 2p + 2`, `beta` in `{2, 4}`.
    #[serde(rename = "FIB_2P2")]
    Fib2p2,
    Extended,
    Generic,
}

impl Regime {
    pub fn has_closed_form(self) -> bool {
        matches!(self, Regime::FibMds | Regime::FibPm1 | Regime::Fib2p2)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CodeParameters {
    pub n: usize,
    pub k: usize,
    pub d: usize,
}

impl CodeParameters {
    pub fn singleton_defect(&self) -> i64 {
        self.n as i64 + 1 - self.k as i64 - self.d as i64
    }

    /// `sum_{i<k} ceil(d / p^i)`.
    pub fn griesmer_sum(&self, p: u32) -> u64 {
        let d = self.d as u64;
        let mut power = 1u64;
        let mut sum = 0u64;
        for _ in 0..self.k {
            sum += d.div_ceil(power);
            power = power.saturating_mul(p as u64);
        }
        sum
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RegimePrediction {
    pub p: FieldModulus,
    pub period: usize,
    pub zero_count: usize,
    pub regime: Regime,
    /// `None` in the generic regime.
    pub parameters: Option<CodeParameters>,
    pub mds: bool,
    pub griesmer_optimal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CodeClassification {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub is_mds: bool,
    /// `n + 1 - k - d`.
    pub singleton_defect: i64,
    pub meets_griesmer: bool,
    pub griesmer_lhs: u64,
    pub griesmer_rhs: u64,
    pub regime: Regime,
}

fn regime_of(profile: &SequenceProfile) -> Regime {
    let m = profile.p.get() as usize;
    match (profile.period, profile.zero_count) {
        (l, 1) if l == m - 1 => Regime::FibMds,
        (l, 2 | 4) if l == m - 1 => Regime::FibPm1,
        (l, 2 | 4) if l == 2 * m + 2 => Regime::Fib2p2,
        _ => Regime::Generic,
    }
}

fn check_supported_prime(p: FieldModulus) -> Result<()> {
    if matches!(p.get(), 2 | 5) {
        return Err(Error::NotApplicable(format!(
            "no closed-form parameters for p = {}",
            p.get()
        )));
    }
    Ok(())
}

/// Parameters the Fibonacci code of `p` is proven to have, read off its profile.
pub fn predict_regime(p: FieldModulus) -> Result<RegimePrediction> {
    check_supported_prime(p)?;
    let profile = fib_period_sequence(p)?;
    let regime = regime_of(&profile);
    let (l, beta) = (profile.period, profile.zero_count);
    let parameters = regime.has_closed_form().then_some(CodeParameters {
        n: l,
        k: 2,
        d: l - beta,
    });
    let (mds, griesmer_optimal) = match parameters {
        Some(params) => (
            params.singleton_defect() == 0,
            params.griesmer_sum(p.get()) == params.n as u64,
        ),
        None => (false, false),
    };
    Ok(RegimePrediction {
        p,
        period: l,
        zero_count: beta,
        regime,
        parameters,
        mds,
        griesmer_optimal,
    })
}

/// Closed-form two-weight distribution: weight `l - beta` with multiplicity
/// `2(p-1) + ((l - beta)/beta - 1)(p-1)`, the rest of the `p^2 - 1` nonzero
/// codewords at full weight `l`.
pub fn predicted_weight_distribution(p: FieldModulus) -> Result<WeightDistribution> {
    let prediction = predict_regime(p)?;
    if !prediction.regime.has_closed_form() {
        return Err(Error::NotApplicable(format!(
            "p = {} is in the generic regime",
            p.get()
        )));
    }
    let m = p.get() as u64;
    let (l, beta) = (prediction.period, prediction.zero_count);
    let classes = ((l - beta) / beta - 1) as u64;
    let low = 2 * (m - 1) + classes * (m - 1);
    let high = m * m - 1 - low;
    WeightDistribution::from_pairs(l, &[(0, 1), (l - beta, low), (l, high)])
}

fn regime_for_code(c: &CyclicCode) -> Result<Regime> {
    let p = c.modulus();
    match c.origin() {
        CodeOrigin::Extended { .. } => return Ok(Regime::Extended),
        CodeOrigin::Dual => return Ok(Regime::Generic),
        CodeOrigin::Fibonacci | CodeOrigin::Custom => {}
    }
    if matches!(p.get(), 2 | 5) {
        return Ok(Regime::Generic);
    }
    let profile = fib_period_sequence(p)?;
    if c.length() != profile.period {
        return Ok(Regime::Generic);
    }
    if c.origin() == CodeOrigin::Custom {
        let f = fibonacci_polynomial(p)?;
        if canonical_generator(&f, profile.period)? != *c.generator() {
            return Ok(Regime::Generic);
        }
    }
    Ok(regime_of(&profile))
}

pub fn classify_code(c: &CyclicCode) -> Result<CodeClassification> {
    classify_code_with_cap(c, DEFAULT_ENUMERATION_CAP)
}

/// Bound arithmetic for `c` against Singleton and Griesmer.
pub fn classify_code_with_cap(c: &CyclicCode, cap: u64) -> Result<CodeClassification> {
    let d = min_distance_with_cap(c, cap)?;
    let params = CodeParameters {
        n: c.length(),
        k: c.dimension(),
        d,
    };
    let singleton_defect = params.singleton_defect();
    let griesmer_rhs = params.griesmer_sum(c.modulus().get());
    Ok(CodeClassification {
        n: params.n,
        k: params.k,
        d,
        is_mds: singleton_defect == 0,
        singleton_defect,
        meets_griesmer: griesmer_rhs == params.n as u64,
        griesmer_lhs: params.n as u64,
        griesmer_rhs,
        regime: regime_for_code(c)?,
    })
}

/// Whether a length `p - 1` code is Reed-Solomon: `g` splits over F_p and its
/// roots are `delta - 1` consecutive powers of some primitive element, for
/// some `2 <= delta <= p - 1`.
pub fn rs_check(c: &CyclicCode) -> Result<bool> {
    let p = c.modulus();
    let m = p.get();
    if c.length() != m as usize - 1 {
        return Err(Error::NotApplicable(format!(
            "RS codes over F_{m} have length {}, not {}",
            m - 1,
            c.length()
        )));
    }
    let g = c.generator();
    let roots: Vec<u32> = (1..m).filter(|&a| g.eval(a) == 0).collect();
    let degree = g.degree() as usize;
    // g divides x^{p-1} - 1, which is squarefree, so distinct roots = degree iff g splits
    if roots.len() != degree || degree == 0 || degree > m as usize - 2 {
        return Ok(false);
    }
    let order = m as usize - 1;
    for alpha in p.primitive_elements() {
        let mut x = 1u32;
        let is_root: Vec<bool> = (0..order)
            .map(|_| {
                let hit = g.eval(x) == 0;
                x = p.mul(x, alpha);
                hit
            })
            .collect();
        // the roots form a cyclic run iff exactly one root follows a non-root
        let starts = (0..order)
            .filter(|&e| is_root[e] && !is_root[(e + order - 1) % order])
            .count();
        if starts == 1 {
            return Ok(true);
        }
    }
    Ok(false)
}
