//! Monte Carlo drivers: the LLN statistic 2^{−j}Σ_k|v_{jk}|^p and its
//! convergence to c_p, Besov-membership slope trends of the level terms T_j,
//! and the truncated orthonormal (Cholesky/innovations) expansion with exact
//! residual coefficient variances ϱ^N_{jk}.
//!
//! All drivers derive one seed per path, process paths in parallel, and
//! aggregate in fixed path order, so results are identical with and without
//! the `parallel` feature.

use crate::error::{Error, Result};
use crate::grid::DyadicGrid;
use crate::linalg::{cholesky_spd, SpdFactor};
use crate::moments;
use crate::par;
use crate::params::ProcessParams;
use crate::quadrature;
use crate::sampling::{self, SampleOptions};
use crate::schauder;
use serde::Serialize;

/// Minimum grid level for the LLN driver (the statistic needs a usable level
/// trend below J).
pub const MIN_LLN_LEVEL: u32 = 6;

/// Median-monotonicity slack for residual norms across truncations; Monte
/// Carlo medians may wobble by a few percent at realistic path counts.
pub const MEDIAN_TREND_TOL: f64 = 0.05;

fn median_of(xs: &[f64]) -> f64 {
    let mut v = xs.to_vec();
    v.sort_by(|a, b| a.total_cmp(b));
    let n = v.len();
    if n % 2 == 1 {
        v[n / 2]
    } else {
        0.5 * (v[n / 2 - 1] + v[n / 2])
    }
}

fn mean_of(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}

// ---------------------------------------------------------------------------
// LLN statistic: s_j = 2^{−j} Σ_k |v_{jk}|^p → c_p
// ---------------------------------------------------------------------------

/// Across-path summary of s_j at one level.
#[derive(Debug, Clone, Serialize)]
pub struct LlnLevelStat {
    pub j: u32,
    pub mean: f64,
    pub sd: f64,
    pub se: f64,
}

/// Result of one LLN run: per-level statistics of s_j plus the target c_p.
#[derive(Debug, Clone, Serialize)]
pub struct LlnRunResult {
    pub params: ProcessParams,
    pub p: f64,
    pub level: u32,
    pub n_paths: usize,
    pub seed: u64,
    pub target: f64,
    pub levels: Vec<LlnLevelStat>,
}

impl LlnRunResult {
    /// The finest computed level, j = J−1 (the convergence readout).
    pub fn top(&self) -> &LlnLevelStat {
        self.levels.last().expect("levels nonempty by construction")
    }
}

/// Sample `n_paths` on the level-J grid and report the across-path mean and
/// spread of s_j = 2^{−j}Σ_k|u_{jk}/σ_{jk}|^p for j = 1…J−1.
///
/// The integrability gate admits p·αβ = 1 exactly (up to 1e−12): the boundary
/// case is the Brownian p = 2 run, where the statistic is still an unbiased
/// estimator of c_p with O(2^{−j}) variance.
pub fn run_lln(
    params: &ProcessParams,
    p: f64,
    level: u32,
    n_paths: usize,
    seed: u64,
) -> Result<LlnRunResult> {
    if !(p > 0.0 && p.is_finite()) {
        return Err(Error::domain(format!("p must be positive, got {p}")));
    }
    let ab = params.hurst();
    if p < 1.0 / ab - 1e-12 {
        return Err(Error::domain(format!(
            "integrability requires p·αβ ≥ 1: p = {p}, αβ = {ab}"
        )));
    }
    if level < MIN_LLN_LEVEL {
        return Err(Error::domain(format!(
            "LLN runs need level ≥ {MIN_LLN_LEVEL}, got {level}"
        )));
    }
    if n_paths < 2 {
        return Err(Error::domain(format!(
            "need at least 2 paths for a spread estimate, got {n_paths}"
        )));
    }
    let grid = DyadicGrid::new(level)?;
    let factor = sampling::factor_for(params, &grid, SampleOptions::default())?;
    let sigmas: Vec<Vec<f64>> = (1..level)
        .map(|j| moments::second_diff_sigmas(params, j))
        .collect::<Result<_>>()?;
    let per_path: Vec<Result<Vec<f64>>> =
        sampling::map_paths(&factor, n_paths, seed, |_, values| {
            let coeffs = schauder::schauder_coeffs(values)?;
            let mut stats = Vec::with_capacity((level - 1) as usize);
            for j in 1..level {
                let row = coeffs.level(j as usize);
                let sig = &sigmas[(j - 1) as usize];
                let mut acc = 0.0f64;
                for (v, s) in row.iter().zip(sig) {
                    acc += (v / s).abs().powf(p);
                }
                stats.push(acc / row.len() as f64);
            }
            Ok(stats)
        });
    let per_path: Vec<Vec<f64>> = per_path.into_iter().collect::<Result<_>>()?;
    let n = n_paths as f64;
    let levels = (1..level)
        .map(|j| {
            let idx = (j - 1) as usize;
            let mean = per_path.iter().map(|s| s[idx]).sum::<f64>() / n;
            let ss = per_path
                .iter()
                .map(|s| (s[idx] - mean) * (s[idx] - mean))
                .sum::<f64>();
            let sd = (ss / (n - 1.0)).sqrt();
            LlnLevelStat {
                j,
                mean,
                sd,
                se: sd / n.sqrt(),
            }
        })
        .collect();
    Ok(LlnRunResult {
        params: *params,
        p,
        level,
        n_paths,
        seed,
        target: quadrature::gaussian_abs_moment_raw(p),
        levels,
    })
}

// ---------------------------------------------------------------------------
// Besov membership trends: slope of mean log₂ T_j against j
// ---------------------------------------------------------------------------

/// Aggregated level-term curve for one γ = αβ + δ.
#[derive(Debug, Clone, Serialize)]
pub struct MembershipCurve {
    pub offset: f64,
    pub gamma: f64,
    /// log₂ of the pooled level term (mean over paths of T_j^p)^{1/p}, j = 0…J−1.
    pub log2_level_terms: Vec<f64>,
    /// Least-squares slope over the upper half of levels; ≈ γ − αβ for bBm.
    pub slope: f64,
}

/// Result of one membership run: one curve per requested offset δ.
#[derive(Debug, Clone, Serialize)]
pub struct MembershipRunResult {
    pub params: ProcessParams,
    pub p: f64,
    pub level: u32,
    pub n_paths: usize,
    pub seed: u64,
    pub curves: Vec<MembershipCurve>,
}

/// For each δ in `gamma_offsets`, aggregate the sequence-norm level terms
/// T_j(γ = αβ+δ) over a shared path batch and fit their log₂ slope.
///
/// Levels are pooled across paths in p-th mean, T̄_j = (mean_i T_{j,i}^p)^{1/p},
/// the unbiased-in-T^p estimate of the population level term: E T̄_j^p =
/// c_p·Σ_k σ_{jk}^p·2^{−j(…)} exactly, so the fitted log₂ slope is free of the
/// per-path Jensen bias that depresses mean-of-log aggregation at coarse j.
///
/// Only one batch is sampled: T_j(γ) = 2^{jγ}·[2^{−j(1/2+1/p)}‖f_{j·}‖_p], so
/// every offset is an affine shift of the same per-level data.
pub fn run_besov_membership(
    params: &ProcessParams,
    p: f64,
    level: u32,
    n_paths: usize,
    seed: u64,
    gamma_offsets: &[f64],
) -> Result<MembershipRunResult> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::domain(format!("p must lie in (1,∞), got {p}")));
    }
    if gamma_offsets.is_empty() {
        return Err(Error::domain("no gamma offsets given".to_string()));
    }
    let ab = params.hurst();
    for &d in gamma_offsets {
        let gamma = ab + d;
        if !(gamma > 1.0 / p && gamma < 1.0) {
            return Err(Error::domain(format!(
                "γ = αβ+δ = {gamma} outside the sequence-norm range (1/p, 1) = ({}, 1)",
                1.0 / p
            )));
        }
    }
    if level < 4 {
        return Err(Error::domain(format!(
            "membership trends need level ≥ 4, got {level}"
        )));
    }
    if n_paths == 0 {
        return Err(Error::domain("need at least one path".to_string()));
    }
    let grid = DyadicGrid::new(level)?;
    let factor = sampling::factor_for(params, &grid, SampleOptions::default())?;
    // per path: the γ-free base term 2^{−j(1/2+1/p)}‖f_{j·}‖_p
    let per_path: Vec<Result<Vec<f64>>> =
        sampling::map_paths(&factor, n_paths, seed, |_, values| {
            let coeffs = schauder::schauder_coeffs(values)?;
            coeffs
                .levels()
                .iter()
                .enumerate()
                .map(|(j, row)| {
                    Ok(2.0f64.powf(-(j as f64) * (0.5 + 1.0 / p))
                        * schauder::scaled_p_norm(row, p))
                })
                .collect()
        });
    let per_path: Vec<Vec<f64>> = per_path.into_iter().collect::<Result<_>>()?;
    let n_levels = level as usize;
    // pooled p-th mean per level, max-factored so b^p cannot underflow
    let pooled_log2: Vec<f64> = (0..n_levels)
        .map(|j| {
            let m = per_path.iter().fold(0.0f64, |acc, b| acc.max(b[j]));
            if m == 0.0 {
                return Err(Error::Internal(format!(
                    "level {j} coefficients identically zero across all paths"
                )));
            }
            let mean_pow = per_path
                .iter()
                .map(|b| (b[j] / m).powf(p))
                .sum::<f64>()
                / n_paths as f64;
            Ok(m.log2() + mean_pow.log2() / p)
        })
        .collect::<Result<_>>()?;
    let window_start = n_levels / 2;
    let xs: Vec<f64> = (window_start..n_levels).map(|j| j as f64).collect();
    let curves = gamma_offsets
        .iter()
        .map(|&d| {
            let gamma = ab + d;
            let log2_level_terms: Vec<f64> = pooled_log2
                .iter()
                .enumerate()
                .map(|(j, b)| b + gamma * j as f64)
                .collect();
            let ys: Vec<f64> = log2_level_terms[window_start..].to_vec();
            MembershipCurve {
                offset: d,
                gamma,
                log2_level_terms,
                slope: schauder::ls_slope(&xs, &ys),
            }
        })
        .collect();
    Ok(MembershipRunResult {
        params: *params,
        p,
        level,
        n_paths,
        seed,
        curves,
    })
}

// ---------------------------------------------------------------------------
// Orthonormal (Cholesky/innovations) basis and the truncated expansion
// ---------------------------------------------------------------------------

/// The lower-triangular coordinate matrix L of the grid-restricted RKHS
/// basis (G = LLᵀ over the nonzero grid points), together with its measured
/// orthonormality residual ‖L^{-1}GL^{-T} − I‖_max.
pub fn orthonormal_basis_coordinates(
    params: &ProcessParams,
    level: u32,
) -> Result<(SpdFactor, f64)> {
    let grid = DyadicGrid::new(level)?;
    let gram = sampling::gram_matrix(params, &grid);
    let factor = cholesky_spd(&gram)?;
    let residual = factor.orthonormality_residual(&gram)?;
    Ok((factor, residual))
}

/// θ_{jk,·}: the second-difference stencil applied to each column of L, so
/// that u_{jk} = Σ_n θ_{jk,n} Z_n. Column n ≥ 2k·stride is identically zero.
fn theta_row(factor: &SpdFactor, big_j: u32, j: u32, k: usize) -> Vec<f64> {
    let stride = 1usize << (big_j - j - 1);
    let amp = 2.0 * 2.0f64.powi(j as i32).sqrt();
    let m_left = (2 * k - 2) * stride;
    let m_mid = (2 * k - 1) * stride;
    let m_right = 2 * k * stride;
    let mut theta = vec![0.0f64; factor.n()];
    for (n, slot) in theta.iter_mut().enumerate().take(m_right) {
        let mut v = factor.at(m_mid - 1, n) - 0.5 * factor.at(m_right - 1, n);
        if m_left >= 1 {
            v -= 0.5 * factor.at(m_left - 1, n);
        }
        *slot = amp * v;
    }
    theta
}

/// Suffix sums Σ_{n>N} θ_n² at each cut (cuts ascending); the cut at the full
/// basis has an empty tail. Also returns the total Σθ² = Var(u_{jk}).
fn tail_sq_at_cuts(theta: &[f64], cuts: &[usize]) -> (Vec<f64>, f64) {
    let mut out = vec![0.0f64; cuts.len()];
    // cuts at or past the full basis have empty tails; skip them so the
    // descending walk below can match the remaining ones
    let mut ci = cuts.partition_point(|&c| c < theta.len());
    let mut acc = 0.0f64;
    for idx in (0..theta.len()).rev() {
        acc += theta[idx] * theta[idx];
        while ci > 0 && cuts[ci - 1] == idx {
            out[ci - 1] = acc;
            ci -= 1;
        }
    }
    (out, acc)
}

fn check_truncations(truncations: &[usize], full: usize) -> Result<()> {
    if truncations.is_empty() {
        return Err(Error::domain("truncation list is empty".to_string()));
    }
    for w in truncations.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::domain(format!(
                "truncations must be strictly increasing, got {} after {}",
                w[1], w[0]
            )));
        }
    }
    let last = *truncations.last().expect("nonempty");
    if last != full {
        return Err(Error::domain(format!(
            "the final truncation must be the full basis 2^J = {full}, got {last}"
        )));
    }
    Ok(())
}

/// Exact residual variances at one cut: ϱ² per coefficient at one level.
#[derive(Debug, Clone, Serialize)]
pub struct LevelTailSq {
    pub j: u32,
    /// (ϱ^N_{jk})² for k = 1…2^j, exact suffix sums of θ².
    pub rho_sq: Vec<f64>,
}

/// Everything attached to one truncation N.
#[derive(Debug, Clone, Serialize)]
pub struct TruncationSummary {
    pub n_terms: usize,
    /// Per-path residual sequence norms in Bes(αβ−ε, p).
    pub besov_norms: Vec<f64>,
    /// Per-path residual Hölder-γ norms.
    pub holder_norms: Vec<f64>,
    pub besov_median: f64,
    pub besov_mean: f64,
    pub holder_median: f64,
    pub holder_mean: f64,
    /// Exact (ϱ^N_{jk})² per level j = 1…J−1.
    pub tails: Vec<LevelTailSq>,
    /// max over (j,k) of ϱ^N_{jk}.
    pub max_rho: f64,
}

/// Result of one truncated-expansion run.
#[derive(Debug, Clone, Serialize)]
pub struct ItoNisioRunResult {
    pub params: ProcessParams,
    pub level: u32,
    pub epsilon: f64,
    pub p: f64,
    /// γ = αβ − ε, the Besov regularity of the residual norm.
    pub besov_gamma: f64,
    pub holder_gamma: f64,
    pub n_paths: usize,
    pub seed: u64,
    /// ‖L^{-1}GL^{-T} − I‖_max of the basis actually used.
    pub basis_residual: f64,
    pub truncations: Vec<TruncationSummary>,
}

/// Besov and Hölder norm series for one path, one entry per cut.
type PathNorms = (Vec<f64>, Vec<f64>);
/// Norm values regrouped per cut: outer index = cut, inner = path.
type NormsByCut = Vec<Vec<f64>>;

/// Truncated synthesis shared by the Itô–Nisio and Hölder drivers: per path,
/// accumulate B = L·Z column by column, snapshot X_N at each cut, and apply
/// the requested norms to the residual B − X_N (zero prepended at t = 0).
///
/// Column-order accumulation performs, per grid point, the same additions in
/// the same order as the row-wise synthesis in `sampling`, so the full-basis
/// snapshot reproduces the sampled path bit for bit.
fn residual_norms(
    factor: &SpdFactor,
    cuts: &[usize],
    n_paths: usize,
    seed: u64,
    besov: Option<(f64, f64)>,
    holder: Option<f64>,
) -> Result<(NormsByCut, NormsByCut)> {
    let m = factor.n();
    let per_path: Vec<Result<PathNorms>> = par::map_indexed(n_paths, |i| {
        let z = sampling::path_normals(seed, i as u64, m);
        let mut x = vec![0.0f64; m];
        let mut snaps: Vec<Vec<f64>> = Vec::with_capacity(cuts.len());
        let mut ci = 0usize;
        while ci < cuts.len() && cuts[ci] == 0 {
            snaps.push(x.clone());
            ci += 1;
        }
        for n in 0..m {
            let zn = z[n];
            for r in n..m {
                x[r] += factor.at(r, n) * zn;
            }
            while ci < cuts.len() && cuts[ci] == n + 1 {
                snaps.push(x.clone());
                ci += 1;
            }
        }
        let mut bes = Vec::with_capacity(cuts.len());
        let mut hol = Vec::with_capacity(cuts.len());
        let mut resid = vec![0.0f64; m + 1];
        for snap in &snaps {
            for r in 0..m {
                resid[r + 1] = x[r] - snap[r];
            }
            if let Some((gamma, p)) = besov {
                let coeffs = schauder::schauder_coeffs(&resid)?;
                bes.push(schauder::besov_seq_norm(&coeffs, gamma, p)?.seq_norm);
            }
            if let Some(gamma) = holder {
                hol.push(schauder::holder_norm(&resid, gamma)?);
            }
        }
        Ok((bes, hol))
    });
    let per_path: Vec<PathNorms> = per_path.into_iter().collect::<Result<_>>()?;
    let collect_cut = |pick: fn(&PathNorms) -> &Vec<f64>| -> NormsByCut {
        (0..cuts.len())
            .map(|c| {
                per_path
                    .iter()
                    .map(|pp| pick(pp).get(c).copied().unwrap_or(f64::NAN))
                    .collect()
            })
            .collect()
    };
    let bes_by_cut = if besov.is_some() {
        collect_cut(|pp| &pp.0)
    } else {
        vec![Vec::new(); cuts.len()]
    };
    let hol_by_cut = if holder.is_some() {
        collect_cut(|pp| &pp.1)
    } else {
        vec![Vec::new(); cuts.len()]
    };
    Ok((bes_by_cut, hol_by_cut))
}

/// Exact tails per cut: for every level j = 1…J−1 and coefficient k, the
/// suffix sums (ϱ^N_{jk})², plus the full-basis variances Σθ² for
/// cross-checking against the closed-form σ²_{jk}.
fn exact_tails(
    factor: &SpdFactor,
    level: u32,
    cuts: &[usize],
) -> (Vec<Vec<LevelTailSq>>, Vec<Vec<f64>>) {
    let mut per_cut: Vec<Vec<LevelTailSq>> = (0..cuts.len()).map(|_| Vec::new()).collect();
    let mut totals: Vec<Vec<f64>> = Vec::new();
    for j in 1..level {
        let n_k = 1usize << j;
        let rows = par::map_indexed(n_k, |i| {
            let theta = theta_row(factor, level, j, i + 1);
            tail_sq_at_cuts(&theta, cuts)
        });
        let mut level_totals = Vec::with_capacity(n_k);
        let mut by_cut: Vec<Vec<f64>> = (0..cuts.len()).map(|_| Vec::with_capacity(n_k)).collect();
        for (tails, total) in rows {
            for (c, t) in tails.into_iter().enumerate() {
                by_cut[c].push(t);
            }
            level_totals.push(total);
        }
        for (c, rho_sq) in by_cut.into_iter().enumerate() {
            per_cut[c].push(LevelTailSq { j, rho_sq });
        }
        totals.push(level_totals);
    }
    (per_cut, totals)
}

/// Run the truncated Itô–Nisio expansion experiment.
///
/// Gates: the theorem hypothesis ½ < αβ − ε − 1/p (which also forces
/// αβ > ½), 0 < holder_gamma < αβ, and a strictly increasing truncation list
/// ending at the full basis 2^J.
#[allow(clippy::too_many_arguments)]
pub fn run_ito_nisio(
    params: &ProcessParams,
    level: u32,
    truncations: &[usize],
    epsilon: f64,
    p: f64,
    holder_gamma: f64,
    n_paths: usize,
    seed: u64,
) -> Result<ItoNisioRunResult> {
    let ab = params.hurst();
    if ab <= 0.5 {
        return Err(Error::domain(format!(
            "the expansion theorem requires αβ > 1/2, got αβ = {ab}"
        )));
    }
    if !(epsilon > 0.0 && epsilon < ab) {
        return Err(Error::domain(format!(
            "epsilon must lie in (0, αβ), got {epsilon}"
        )));
    }
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::domain(format!("p must lie in (1,∞), got {p}")));
    }
    if !(ab - epsilon - 1.0 / p > 0.5) {
        return Err(Error::domain(format!(
            "hypothesis violated: need 1/2 < αβ − ε − 1/p, got {}",
            ab - epsilon - 1.0 / p
        )));
    }
    if !(holder_gamma > 0.0 && holder_gamma < ab) {
        return Err(Error::domain(format!(
            "holder gamma must lie in (0, αβ), got {holder_gamma}"
        )));
    }
    if n_paths == 0 {
        return Err(Error::domain("need at least one path".to_string()));
    }
    let grid = DyadicGrid::new(level)?;
    let gram = sampling::gram_matrix(params, &grid);
    let factor = cholesky_spd(&gram)?;
    let basis_residual = factor.orthonormality_residual(&gram)?;
    check_truncations(truncations, factor.n())?;
    let besov_gamma = ab - epsilon;
    let (bes_by_cut, hol_by_cut) = residual_norms(
        &factor,
        truncations,
        n_paths,
        seed,
        Some((besov_gamma, p)),
        Some(holder_gamma),
    )?;
    let (tails_by_cut, _) = exact_tails(&factor, level, truncations);
    let mut cuts = Vec::with_capacity(truncations.len());
    for (c, &n_terms) in truncations.iter().enumerate() {
        let tails = tails_by_cut[c].clone();
        let max_rho_sq = tails
            .iter()
            .flat_map(|lt| lt.rho_sq.iter())
            .fold(0.0f64, |m, &v| m.max(v));
        cuts.push(TruncationSummary {
            n_terms,
            besov_median: median_of(&bes_by_cut[c]),
            besov_mean: mean_of(&bes_by_cut[c]),
            holder_median: median_of(&hol_by_cut[c]),
            holder_mean: mean_of(&hol_by_cut[c]),
            besov_norms: bes_by_cut[c].clone(),
            holder_norms: hol_by_cut[c].clone(),
            tails,
            max_rho: max_rho_sq.sqrt(),
        });
    }
    // structural guards: the full basis reproduces every path, and the exact
    // tails cannot grow when more terms are kept
    let last = cuts.last().expect("nonempty");
    for (&b, &h) in last.besov_norms.iter().zip(&last.holder_norms) {
        if b.abs() > 1e-10 || h.abs() > 1e-10 {
            return Err(Error::Internal(format!(
                "nonzero residual at the full basis: besov {b}, holder {h}"
            )));
        }
    }
    for w in cuts.windows(2) {
        if w[1].max_rho > w[0].max_rho {
            return Err(Error::Internal(format!(
                "exact residual tail grew from N={} to N={}",
                w[0].n_terms, w[1].n_terms
            )));
        }
    }
    Ok(ItoNisioRunResult {
        params: *params,
        level,
        epsilon,
        p,
        besov_gamma,
        holder_gamma,
        n_paths,
        seed,
        basis_residual,
        truncations: cuts,
    })
}

/// Exact (ϱ^N_{jk})² for a single coefficient, directly from the factor.
pub fn exact_residual_tail_sq(
    factor: &SpdFactor,
    level: u32,
    n_cut: usize,
    j: u32,
    k: usize,
) -> Result<f64> {
    if !(1..level).contains(&j) {
        return Err(Error::domain(format!(
            "coefficient level must lie in 1..{level}, got {j}"
        )));
    }
    if k < 1 || k > (1usize << j) {
        return Err(Error::shape(format!(
            "index k must lie in 1..={} at level {j}, got {k}",
            1usize << j
        )));
    }
    if n_cut > factor.n() {
        return Err(Error::domain(format!(
            "truncation {n_cut} exceeds the basis size {}",
            factor.n()
        )));
    }
    let theta = theta_row(factor, level, j, k);
    let (tails, _) = tail_sq_at_cuts(&theta, &[n_cut]);
    Ok(tails[0])
}

/// One spot check of the empirical residual variance against the exact tail.
#[derive(Debug, Clone, Serialize)]
pub struct ResidualSpotCheck {
    pub j: u32,
    pub k: usize,
    pub n_cut: usize,
    pub exact_sq: f64,
    pub empirical_sq: f64,
    /// Standard error of the empirical mean of u², from Var(u²) = 2(ϱ²)².
    pub se: f64,
}

/// Monte Carlo means of (u_{jk} − z_{jk})² at the given spots, with the
/// exact tail sums and their sampling standard errors. Gaussianity gives
/// Var(u²) = 2(ϱ²)², so se = ϱ²·√(2/n).
pub fn empirical_residual_variance(
    params: &ProcessParams,
    level: u32,
    n_cut: usize,
    spots: &[(u32, usize)],
    n_paths: usize,
    seed: u64,
) -> Result<Vec<ResidualSpotCheck>> {
    if spots.is_empty() {
        return Err(Error::domain("no spots given".to_string()));
    }
    if n_paths < 2 {
        return Err(Error::domain(format!(
            "need at least 2 paths, got {n_paths}"
        )));
    }
    let grid = DyadicGrid::new(level)?;
    let factor = sampling::factor_for(params, &grid, SampleOptions::default())?;
    let m = factor.n();
    if n_cut > m {
        return Err(Error::domain(format!(
            "truncation {n_cut} exceeds the basis size {m}"
        )));
    }
    let mut thetas = Vec::with_capacity(spots.len());
    let mut exact = Vec::with_capacity(spots.len());
    for &(j, k) in spots {
        exact.push(exact_residual_tail_sq(&factor, level, n_cut, j, k)?);
        thetas.push(theta_row(&factor, level, j, k));
    }
    let per_path: Vec<Vec<f64>> = par::map_indexed(n_paths, |i| {
        let z = sampling::path_normals(seed, i as u64, m);
        thetas
            .iter()
            .map(|theta| {
                let mut u = 0.0f64;
                for idx in n_cut..m {
                    u += theta[idx] * z[idx];
                }
                u * u
            })
            .collect()
    });
    Ok(spots
        .iter()
        .enumerate()
        .map(|(s, &(j, k))| {
            let mean = per_path.iter().map(|row| row[s]).sum::<f64>() / n_paths as f64;
            ResidualSpotCheck {
                j,
                k,
                n_cut,
                exact_sq: exact[s],
                empirical_sq: mean,
                se: exact[s] * (2.0 / n_paths as f64).sqrt(),
            }
        })
        .collect())
}

/// Per-truncation Hölder residual summary.
#[derive(Debug, Clone, Serialize)]
pub struct HolderCut {
    pub n_terms: usize,
    pub median: f64,
    pub mean: f64,
    pub norms: Vec<f64>,
}

/// Result of the Hölder-corollary driver.
#[derive(Debug, Clone, Serialize)]
pub struct HolderRunResult {
    pub params: ProcessParams,
    pub level: u32,
    pub gamma: f64,
    pub n_paths: usize,
    pub seed: u64,
    pub cuts: Vec<HolderCut>,
}

/// The Hölder-corollary experiment: the same truncated synthesis, but only
/// the Hölder-γ residual norm is tracked (0 < γ < αβ, αβ > ½).
pub fn run_holder_corollary(
    params: &ProcessParams,
    level: u32,
    truncations: &[usize],
    gamma: f64,
    n_paths: usize,
    seed: u64,
) -> Result<HolderRunResult> {
    let ab = params.hurst();
    if ab <= 0.5 {
        return Err(Error::domain(format!(
            "the corollary requires αβ > 1/2, got αβ = {ab}"
        )));
    }
    if !(gamma > 0.0 && gamma < ab) {
        return Err(Error::domain(format!(
            "gamma must lie in (0, αβ) = (0, {ab}), got {gamma}"
        )));
    }
    if n_paths == 0 {
        return Err(Error::domain("need at least one path".to_string()));
    }
    let grid = DyadicGrid::new(level)?;
    let factor = sampling::factor_for(params, &grid, SampleOptions::default())?;
    check_truncations(truncations, factor.n())?;
    let (_, hol_by_cut) = residual_norms(&factor, truncations, n_paths, seed, None, Some(gamma))?;
    let cuts: Vec<HolderCut> = truncations
        .iter()
        .zip(hol_by_cut)
        .map(|(&n_terms, norms)| HolderCut {
            n_terms,
            median: median_of(&norms),
            mean: mean_of(&norms),
            norms,
        })
        .collect();
    let last = cuts.last().expect("nonempty");
    if last.norms.iter().any(|&h| h.abs() > 1e-10) {
        return Err(Error::Internal(
            "nonzero Hölder residual at the full basis".to_string(),
        ));
    }
    Ok(HolderRunResult {
        params: *params,
        level,
        gamma,
        n_paths,
        seed,
        cuts,
    })
}
