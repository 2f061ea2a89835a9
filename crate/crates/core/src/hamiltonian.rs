//! Local Hamiltonian terms shared by every quantum compiler.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{self, CMat};

/// Where a term came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TermTag {
    In,
    Prop,
    Out,
    Stab,
    Amp,
    Gated,
}

/// `coeff * block` acting on `support` (`support[0]` most significant).
#[derive(Clone, Debug, PartialEq)]
pub struct LocalTerm {
    pub support: Vec<usize>,
    pub block: CMat,
    pub coeff: f64,
    pub tag: TermTag,
    pub label: Option<String>,
}

impl LocalTerm {
    pub fn new(support: Vec<usize>, block: CMat, tag: TermTag) -> Self {
        LocalTerm {
            support,
            block,
            coeff: 1.0,
            tag,
            label: None,
        }
    }

    pub fn labelled(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn with_coeff(mut self, coeff: f64) -> Self {
        self.coeff = coeff;
        self
    }

    /// `self (x) block` on `support ++ extra`.
    pub fn tensor(&self, extra: &[usize], block: &CMat) -> Self {
        let mut support = self.support.clone();
        support.extend_from_slice(extra);
        LocalTerm {
            support,
            block: linalg::kron(&self.block, block),
            coeff: self.coeff,
            tag: self.tag,
            label: self.label.clone(),
        }
    }

    pub fn locality(&self) -> usize {
        self.support.len()
    }

    pub fn is_diagonal(&self) -> bool {
        let d = self.block.nrows();
        (0..d).all(|r| (0..d).all(|c| r == c || self.block[(r, c)].norm() == 0.0))
    }

    /// Operator norm of `block` (without the coefficient).
    pub fn block_norm(&self) -> f64 {
        linalg::hermitian_norm(&self.block)
    }

    pub fn check(&self) -> Result<()> {
        let s = self.support.len();
        if self.block.nrows() != 1 << s || self.block.ncols() != 1 << s {
            return Err(Error::DimensionMismatch {
                expected: 1 << s,
                got: self.block.nrows(),
            });
        }
        let mut sorted = self.support.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != s {
            return Err(Error::Domain(format!(
                "term repeats a qubit: {:?}",
                self.support
            )));
        }
        if linalg::hermiticity_deviation(&self.block) > 1e-9 {
            return Err(Error::Domain("term block is not Hermitian".into()));
        }
        Ok(())
    }
}

/// Smallest qubit count that covers every term's support.
pub fn qubits_spanned(terms: &[LocalTerm]) -> usize {
    terms
        .iter()
        .flat_map(|t| t.support.iter())
        .map(|&q| q + 1)
        .max()
        .unwrap_or(0)
}
