//! Code families selectable by name.
//!
//! Each family turns a periodic sequence over F_p into a cyclic code. The
//! registry maps a name such as `"fibonacci"` to a factory so front ends can
//! pick a family at runtime.

use std::collections::BTreeMap;
use std::fmt;

use super::classify::{predict_regime, CodeParameters};
use super::{build_cyclic_code, canonical_generator, CodeOrigin, CyclicCode};
use crate::error::{Error, Result};
use crate::fibseq::{extended_period_sequence, fib_period_sequence};
use crate::galois::{FieldModulus, PrimePoly};

pub trait CodeFamily: Send + Sync {
    fn name(&self) -> &'static str;

    /// One period of the defining sequence.
    fn sequence(&self, p: FieldModulus) -> Result<Vec<u32>>;

    /// The cyclic code of length equal to the period.
    fn build(&self, p: FieldModulus) -> Result<CyclicCode>;

    /// Parameters proven for this family at `p`, if any.
    fn predict(&self, p: FieldModulus) -> Result<Option<CodeParameters>>;
}

/// Options forwarded to family factories.
#[derive(Clone, Debug, Default)]
pub struct FamilyOptions {
    /// Step count for r-step families.
    pub steps: Option<usize>,
}

pub type FamilyFactory = fn(&FamilyOptions) -> Result<Box<dyn CodeFamily>>;

pub struct FamilyRegistry {
    factories: BTreeMap<&'static str, FamilyFactory>,
}

impl FamilyRegistry {
    pub fn empty() -> Self {
        FamilyRegistry {
            factories: BTreeMap::new(),
        }
    }

    /// Registry with the `fibonacci` and `extended` families.
    pub fn builtin() -> Self {
        let mut registry = Self::empty();
        registry.register("fibonacci", |_| Ok(Box::new(FibonacciFamily)));
        registry.register("extended", |opts| {
            Ok(Box::new(ExtendedFamily::new(opts.steps.unwrap_or(3))?))
        });
        registry
    }

    /// Adds or replaces a factory.
    pub fn register(&mut self, name: &'static str, factory: FamilyFactory) {
        self.factories.insert(name, factory);
    }

    pub fn names(&self) -> impl Iterator<Item = &'static str> + '_ {
        self.factories.keys().copied()
    }

    pub fn create(&self, name: &str, opts: &FamilyOptions) -> Result<Box<dyn CodeFamily>> {
        let factory = self.factories.get(name).ok_or_else(|| {
            let known: Vec<_> = self.names().collect();
            Error::InvalidArgument(format!(
                "unknown code family `{name}` (known: {})",
                known.join(", ")
            ))
        })?;
        factory(opts)
    }
}

impl Default for FamilyRegistry {
    fn default() -> Self {
        Self::builtin()
    }
}

impl fmt::Debug for FamilyRegistry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.factories.keys()).finish()
    }
}

/// Codes `<gcd(f(x), x^l - 1)>` from the Fibonacci polynomial over one Pisano period.
#[derive(Clone, Copy, Debug, Default)]
pub struct FibonacciFamily;

impl CodeFamily for FibonacciFamily {
    fn name(&self) -> &'static str {
        "fibonacci"
    }

    fn sequence(&self, p: FieldModulus) -> Result<Vec<u32>> {
        Ok(fib_period_sequence(p)?.terms)
    }

    fn build(&self, p: FieldModulus) -> Result<CyclicCode> {
        if p.get() == 2 {
            return Err(Error::InvalidArgument("Fibonacci codes need p > 2".into()));
        }
        let terms = self.sequence(p)?;
        let n = terms.len();
        let f = PrimePoly::new(p, terms);
        let g = canonical_generator(&f, n)?;
        Ok(build_cyclic_code(p, n, &g)?.with_origin(CodeOrigin::Fibonacci, Some(f), false))
    }

    fn predict(&self, p: FieldModulus) -> Result<Option<CodeParameters>> {
        Ok(predict_regime(p)?.parameters)
    }
}

/// Codes from the r-step sequence `0, 1, ..., 1, E_n = E_{n-1} + ... + E_{n-r}`.
///
/// Parameters are proven only for `r = 3` and `p` in `{7, 13}`; every other
/// combination is built and measured but flagged experimental.
#[derive(Clone, Copy, Debug)]
pub struct ExtendedFamily {
    steps: usize,
}

impl ExtendedFamily {
    pub fn new(steps: usize) -> Result<Self> {
        if !(2..=crate::fibseq::MAX_STEPS).contains(&steps) {
            return Err(Error::InvalidArgument(format!(
                "step count r = {steps} outside 2..={}",
                crate::fibseq::MAX_STEPS
            )));
        }
        Ok(ExtendedFamily { steps })
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn is_proven(&self, p: FieldModulus) -> bool {
        self.steps == 3 && matches!(p.get(), 7 | 13)
    }
}

impl CodeFamily for ExtendedFamily {
    fn name(&self) -> &'static str {
        "extended"
    }

    fn sequence(&self, p: FieldModulus) -> Result<Vec<u32>> {
        Ok(extended_period_sequence(p, self.steps)?.terms)
    }

    fn build(&self, p: FieldModulus) -> Result<CyclicCode> {
        let terms = self.sequence(p)?;
        let n = terms.len();
        let t = PrimePoly::new(p, terms);
        let g = canonical_generator(&t, n)?;
        let origin = CodeOrigin::Extended { steps: self.steps };
        Ok(build_cyclic_code(p, n, &g)?.with_origin(origin, Some(t), !self.is_proven(p)))
    }

    fn predict(&self, p: FieldModulus) -> Result<Option<CodeParameters>> {
        if !self.is_proven(p) {
            return Ok(None);
        }
        let profile = extended_period_sequence(p, self.steps)?;
        let n = (p.get() as usize).pow(self.steps as u32 - 1) - 1;
        Ok(Some(CodeParameters {
            n,
            k: self.steps,
            d: n - profile.zero_count,
        }))
    }
}

/// The cyclic code generated by the Fibonacci polynomial of `p` at length `l_p`.
pub fn fibonacci_code(p: FieldModulus) -> Result<CyclicCode> {
    FibonacciFamily.build(p)
}

/// The cyclic code generated by the r-step extended polynomial of `p`.
pub fn extended_fibonacci_code(p: FieldModulus, steps: usize) -> Result<CyclicCode> {
    ExtendedFamily::new(steps)?.build(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fibcodes::{classify_code, min_distance, weight_distribution};

    fn fp(p: u64) -> FieldModulus {
        FieldModulus::new(p).unwrap()
    }

    #[test]
    fn registry_resolves_builtin_names() {
        let registry = FamilyRegistry::builtin();
        assert_eq!(
            registry.names().collect::<Vec<_>>(),
            vec!["extended", "fibonacci"]
        );
        let fam = registry
            .create("fibonacci", &FamilyOptions::default())
            .unwrap();
        assert_eq!(fam.name(), "fibonacci");
        let fam = registry
            .create("extended", &FamilyOptions { steps: Some(4) })
            .unwrap();
        assert_eq!(fam.sequence(fp(3)).unwrap().len(), 26);
        assert!(matches!(
            registry.create("lucas", &FamilyOptions::default()),
            Err(Error::InvalidArgument(_))
        ));
        assert!(registry
            .create("extended", &FamilyOptions { steps: Some(9) })
            .is_err());
    }

    #[test]
    fn custom_family_can_be_registered() {
        struct Repetition;
        impl CodeFamily for Repetition {
            fn name(&self) -> &'static str {
                "repetition"
            }
            fn sequence(&self, _: FieldModulus) -> Result<Vec<u32>> {
                Ok(vec![1, 1, 1])
            }
            fn build(&self, p: FieldModulus) -> Result<CyclicCode> {
                build_cyclic_code(p, 3, &PrimePoly::new(p, vec![1, 1, 1]))
            }
            fn predict(&self, _: FieldModulus) -> Result<Option<CodeParameters>> {
                Ok(Some(CodeParameters { n: 3, k: 1, d: 3 }))
            }
        }
        let mut registry = FamilyRegistry::empty();
        registry.register("repetition", |_| Ok(Box::new(Repetition)));
        let fam = registry
            .create("repetition", &FamilyOptions::default())
            .unwrap();
        let code = fam.build(fp(3)).unwrap();
        assert_eq!(min_distance(&code).unwrap(), 3);
    }

    #[test]
    fn fibonacci_codes_have_dimension_two() {
        for (m, n, d) in [(11, 10, 9), (7, 16, 14), (19, 18, 17)] {
            let c = fibonacci_code(fp(m)).unwrap();
            assert_eq!((c.length(), c.dimension()), (n, 2));
            assert_eq!(min_distance(&c).unwrap(), d);
            assert_eq!(
                FibonacciFamily.predict(fp(m)).unwrap(),
                Some(CodeParameters { n, k: 2, d })
            );
        }
        assert!(fibonacci_code(fp(2)).is_err());
    }

    #[test]
    fn extended_codes() {
        let c = extended_fibonacci_code(fp(7), 3).unwrap();
        assert!(!c.is_experimental());
        assert_eq!((c.length(), c.dimension()), (48, 3));
        assert_eq!(min_distance(&c).unwrap(), 36);
        assert_eq!(
            classify_code(&c).unwrap().regime,
            super::super::Regime::Extended
        );

        let c = extended_fibonacci_code(fp(3), 3).unwrap();
        assert!(c.is_experimental());
        assert_eq!((c.length(), c.dimension()), (13, 3));
        // brute force over all 27 codewords: 26 nonzero words of weight 9
        assert_eq!(
            weight_distribution(&c).unwrap().to_u64_pairs(),
            Some(vec![(0, 1), (9, 26)])
        );
        assert_eq!(
            ExtendedFamily::new(3).unwrap().predict(fp(3)).unwrap(),
            None
        );
        assert_eq!(
            ExtendedFamily::new(3).unwrap().predict(fp(13)).unwrap(),
            Some(CodeParameters {
                n: 168,
                k: 3,
                d: 150
            })
        );
    }
}
