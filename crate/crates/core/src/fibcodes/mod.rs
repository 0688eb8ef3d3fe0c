//! Cyclic codes built from Fibonacci-type polynomials: construction, duals,
//! exact weight distributions and bound classification.

mod classify;
mod cyclic;
mod enumerate;
mod family;
mod weights;

pub use classify::{
    classify_code, classify_code_with_cap, predict_regime, predicted_weight_distribution, rs_check,
    CodeClassification, CodeParameters, Regime, RegimePrediction,
};
pub use cyclic::{
    build_cyclic_code, canonical_generator, cyclic_shift, dual_code, CodeOrigin, CyclicCode,
};
pub use enumerate::DEFAULT_ENUMERATION_CAP;
pub use family::{
    extended_fibonacci_code, fibonacci_code, CodeFamily, ExtendedFamily, FamilyFactory,
    FamilyOptions, FamilyRegistry, FibonacciFamily,
};
pub use weights::{
    distribution_by_any_route, macwilliams_transform, min_distance, min_distance_with_cap,
    weight_distribution, weight_distribution_with_cap, WeightDistribution,
};

pub(crate) use enumerate::{all_codewords, codeword_count};
