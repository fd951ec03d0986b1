//! Process parameters for the bifractional family.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Which covariance kernel a [`ProcessParams`] selects.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KernelKind {
    /// R(s,t) = 2^{-β}((t^{2α}+s^{2α})^β − |t−s|^{2αβ})
    Bifractional,
    /// The β = 1 specialization: ½(t^{2α}+s^{2α}−|t−s|^{2α}).
    Fractional,
    /// s^{2α}+t^{2α} − ½[(s+t)^{2α}+|t−s|^{2α}]
    Subfractional,
}

impl KernelKind {
    pub fn as_str(self) -> &'static str {
        match self {
            KernelKind::Bifractional => "bifractional",
            KernelKind::Fractional => "fractional",
            KernelKind::Subfractional => "subfractional",
        }
    }
}

impl std::str::FromStr for KernelKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "bifractional" | "bbm" => Ok(KernelKind::Bifractional),
            "fractional" | "fbm" => Ok(KernelKind::Fractional),
            "subfractional" | "subfbm" => Ok(KernelKind::Subfractional),
            other => Err(Error::domain(format!(
                "unknown kernel kind `{other}` (expected bifractional, fractional or subfractional)"
            ))),
        }
    }
}

/// Validated parameter pair (α, β) plus kernel selection.
///
/// Invariants enforced at construction: α ∈ (0,1), β ∈ (0,1], and the
/// fractional/sub-fractional kinds require β = 1 (they are β = 1 semantics).
/// The derived regularity index αβ therefore always lies in (0,1).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ProcessParams {
    alpha: f64,
    beta: f64,
    kind: KernelKind,
}

impl ProcessParams {
    /// General constructor; validates ranges once so call sites stay branch-free.
    pub fn new(alpha: f64, beta: f64, kind: KernelKind) -> Result<Self> {
        if !(alpha > 0.0 && alpha < 1.0) {
            return Err(Error::domain(format!(
                "alpha must lie in (0,1), got {alpha}"
            )));
        }
        if !(beta > 0.0 && beta <= 1.0) {
            return Err(Error::domain(format!(
                "beta must lie in (0,1], got {beta}"
            )));
        }
        if matches!(kind, KernelKind::Fractional | KernelKind::Subfractional) && beta != 1.0 {
            return Err(Error::domain(format!(
                "{} kernel requires beta = 1, got {beta}",
                kind.as_str()
            )));
        }
        Ok(ProcessParams { alpha, beta, kind })
    }

    /// Bifractional kernel with the given (α, β).
    pub fn bifractional(alpha: f64, beta: f64) -> Result<Self> {
        Self::new(alpha, beta, KernelKind::Bifractional)
    }

    /// Fractional Brownian motion with Hurst parameter α (β fixed to 1).
    pub fn fractional(alpha: f64) -> Result<Self> {
        Self::new(alpha, 1.0, KernelKind::Fractional)
    }

    /// Sub-fractional Brownian motion with index α (β fixed to 1).
    pub fn subfractional(alpha: f64) -> Result<Self> {
        Self::new(alpha, 1.0, KernelKind::Subfractional)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn kind(&self) -> KernelKind {
        self.kind
    }

    /// The self-similarity / regularity index αβ.
    pub fn hurst(&self) -> f64 {
        self.alpha * self.beta
    }
}
