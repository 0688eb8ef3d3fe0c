use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::scheme::ShareSet;
use crate::error::{Error, Result};
use crate::fibcodes::{build_cyclic_code, dual_code, CyclicCode};
use crate::galois::{FieldModulus, PrimePoly};

pub const SHARE_FILE_FORMAT: &str = "fibcode-shares/1";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SchemeDescriptor {
    pub prime: u32,
    /// Ascending coefficients of the code generator.
    pub code_generator: Vec<u32>,
    /// Ascending coefficients of the dealing-code generator.
    pub dealing_generator: Vec<u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShareEntry {
    pub participant: usize,
    pub value: u32,
}

/// On-disk form of a share set. May hold any subset of the shares.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShareFile {
    pub format: String,
    pub p: u32,
    pub n: usize,
    pub scheme: SchemeDescriptor,
    pub secret_index: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub shares: Vec<ShareEntry>,
}

impl ShareFile {
    pub fn from_share_set(set: &ShareSet, seed: Option<u64>) -> Self {
        ShareFile {
            format: SHARE_FILE_FORMAT.to_string(),
            p: set.p.get(),
            n: set.n,
            scheme: SchemeDescriptor {
                prime: set.p.get(),
                code_generator: set.code_generator.coeffs().to_vec(),
                dealing_generator: set.dealing_generator.coeffs().to_vec(),
            },
            secret_index: set.secret_index,
            seed,
            shares: set
                .shares
                .iter()
                .map(|(&participant, &value)| ShareEntry { participant, value })
                .collect(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("share files always serialize")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::ShareFile(e.to_string()))
    }

    pub fn read(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::ShareFile(format!("{}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn write(&self, path: &Path) -> Result<()> {
        std::fs::write(path, self.to_json() + "\n")
            .map_err(|e| Error::ShareFile(format!("{}: {e}", path.display())))
    }

    /// Validates the file and returns the code `C` with the shares it holds.
    pub fn open(&self) -> Result<(CyclicCode, BTreeMap<usize, u32>)> {
        let bad = |msg: String| Err(Error::ShareFile(msg));
        if self.format != SHARE_FILE_FORMAT {
            return bad(format!("unknown format {:?}", self.format));
        }
        if self.scheme.prime != self.p {
            return bad(format!(
                "scheme prime {} differs from p = {}",
                self.scheme.prime, self.p
            ));
        }
        if self.secret_index != 0 {
            return bad(format!("secret index {} is not 0", self.secret_index));
        }
        let p = FieldModulus::new(self.p as u64)?;
        let generator = PrimePoly::new(p, self.scheme.code_generator.clone());
        if generator.coeffs() != self.scheme.code_generator.as_slice() {
            return bad("code generator is not reduced".into());
        }
        let code = build_cyclic_code(p, self.n, &generator)?;
        if dual_code(&code).generator().coeffs() != self.scheme.dealing_generator.as_slice() {
            return bad("dealing generator is not the dual of the code generator".into());
        }
        let mut shares = BTreeMap::new();
        for e in &self.shares {
            if e.participant == 0 || e.participant >= self.n {
                return bad(format!(
                    "participant {} is outside 1..={}",
                    e.participant,
                    self.n - 1
                ));
            }
            if e.value >= self.p {
                return bad(format!(
                    "share of participant {} is not below {}",
                    e.participant, self.p
                ));
            }
            if shares.insert(e.participant, e.value).is_some() {
                return bad(format!("participant {} appears twice", e.participant));
            }
        }
        Ok((code, shares))
    }
}
