//! Massey secret sharing over a cyclic code `C`: shares are coordinates of a
//! codeword of `C^⊥`, and the minimal access sets are the supports of the
//! minimal codewords of `C` with a nonzero first coordinate.

mod access;
mod scheme;
mod sharefile;

pub use access::{
    ab_minimality_check, access_structure, minimal_codewords, minimal_vectors,
    predict_access_counts, AccessStructure, PredictedAccess, MINIMAL_VECTOR_CAP,
};
pub use scheme::{deal_shares, reconstruct_secret, MasseyScheme, ShareSet};
pub use sharefile::{SchemeDescriptor, ShareEntry, ShareFile, SHARE_FILE_FORMAT};
