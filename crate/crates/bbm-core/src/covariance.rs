//! Closed-form covariance kernels of the bifractional family and their
//! structural identities (self-similarity, quasi-helix increment bounds).

use crate::error::{Error, Result};
use crate::params::{KernelKind, ProcessParams};

fn check_time(name: &str, v: f64) -> Result<()> {
    if !v.is_finite() || v < 0.0 {
        return Err(Error::domain(format!(
            "{name} must be a finite nonnegative time, got {v}"
        )));
    }
    Ok(())
}

/// Bifractional covariance R(s,t) = 2^{-β}((t^{2α}+s^{2α})^β − |t−s|^{2αβ}).
///
/// Arguments larger than 1 are accepted: the moment identities evaluate the
/// kernel at integer points. Exact zeros at s = 0 or t = 0 and the diagonal
/// closed form t^{2αβ} are special-cased so grid degeneracies stay noise-free.
pub fn bbm_cov(params: &ProcessParams, s: f64, t: f64) -> Result<f64> {
    check_time("s", s)?;
    check_time("t", t)?;
    Ok(bbm_cov_raw(params.alpha(), params.beta(), s, t))
}

pub(crate) fn bbm_cov_raw(alpha: f64, beta: f64, s: f64, t: f64) -> f64 {
    if s == 0.0 || t == 0.0 {
        return 0.0;
    }
    if s == t {
        return t.powf(2.0 * alpha * beta);
    }
    let a2 = 2.0 * alpha;
    let sum = t.powf(a2) + s.powf(a2);
    let gap = (t - s).abs().powf(a2 * beta);
    (sum.powf(beta) - gap) * 0.5f64.powf(beta)
}

/// Fractional Brownian motion covariance ½(t^{2α}+s^{2α}−|t−s|^{2α}), the
/// β = 1 closed form. Kept separate so the β = 1 reduction of [`bbm_cov`] can
/// be asserted against an independent expression.
pub fn fbm_cov(alpha: f64, s: f64, t: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(format!(
            "alpha must lie in (0,1), got {alpha}"
        )));
    }
    check_time("s", s)?;
    check_time("t", t)?;
    if s == 0.0 || t == 0.0 {
        return Ok(0.0);
    }
    let a2 = 2.0 * alpha;
    Ok(0.5 * (t.powf(a2) + s.powf(a2) - (t - s).abs().powf(a2)))
}

/// Sub-fractional Brownian motion covariance
/// s^{2α}+t^{2α} − ½[(s+t)^{2α}+|t−s|^{2α}].
pub fn subfbm_cov(alpha: f64, s: f64, t: f64) -> Result<f64> {
    if !(alpha > 0.0 && alpha < 1.0) {
        return Err(Error::domain(format!(
            "alpha must lie in (0,1), got {alpha}"
        )));
    }
    check_time("s", s)?;
    check_time("t", t)?;
    Ok(subfbm_cov_raw(alpha, s, t))
}

pub(crate) fn subfbm_cov_raw(alpha: f64, s: f64, t: f64) -> f64 {
    if s == 0.0 || t == 0.0 {
        return 0.0;
    }
    let a2 = 2.0 * alpha;
    s.powf(a2) + t.powf(a2) - 0.5 * ((s + t).powf(a2) + (t - s).abs().powf(a2))
}

impl ProcessParams {
    /// Covariance of the selected kernel at (s, t).
    pub fn cov(&self, s: f64, t: f64) -> Result<f64> {
        match self.kind() {
            KernelKind::Bifractional | KernelKind::Fractional => bbm_cov(self, s, t),
            KernelKind::Subfractional => subfbm_cov(self.alpha(), s, t),
        }
    }

    /// Kernel evaluation without the argument checks; callers guarantee
    /// s, t ≥ 0 (grid points, integer stencil points).
    pub(crate) fn cov_raw(&self, s: f64, t: f64) -> f64 {
        match self.kind() {
            KernelKind::Bifractional | KernelKind::Fractional => {
                bbm_cov_raw(self.alpha(), self.beta(), s, t)
            }
            KernelKind::Subfractional => subfbm_cov_raw(self.alpha(), s, t),
        }
    }
}

/// E|B(t) − B(s)|² = R(t,t) + R(s,s) − 2R(s,t).
pub fn increment_variance(params: &ProcessParams, s: f64, t: f64) -> Result<f64> {
    let d = params.cov(t, t)? + params.cov(s, s)? - 2.0 * params.cov(s, t)?;
    Ok(d)
}

/// The quasi-helix sandwich: 2^{−β}|t−s|^{2αβ} ≤ increment variance
/// ≤ 2^{1−β}|t−s|^{2αβ}. Returns (lower, upper). Only meaningful for the
/// bifractional/fractional kernels.
pub fn quasi_helix_bounds(params: &ProcessParams, s: f64, t: f64) -> Result<(f64, f64)> {
    check_time("s", s)?;
    check_time("t", t)?;
    let gap = (t - s).abs().powf(2.0 * params.hurst());
    let beta = params.beta();
    Ok((0.5f64.powf(beta) * gap, 2.0f64.powf(1.0 - beta) * gap))
}

/// Both sides of the self-similarity identity R(as, at) = a^{2αβ} R(s, t);
/// the caller asserts equality within tolerance.
pub fn self_similarity_pair(
    params: &ProcessParams,
    a: f64,
    s: f64,
    t: f64,
) -> Result<(f64, f64)> {
    if !(a > 0.0) || !a.is_finite() {
        return Err(Error::domain(format!(
            "scale must be finite and positive, got {a}"
        )));
    }
    let lhs = params.cov(a * s, a * t)?;
    let rhs = a.powf(2.0 * params.hurst()) * params.cov(s, t)?;
    Ok((lhs, rhs))
}
