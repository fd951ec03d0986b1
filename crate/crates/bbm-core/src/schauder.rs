//! Faber-Schauder coefficients on dyadic grids and the Besov / Hölder
//! sequence norms built from them, plus the direct modulus-of-continuity
//! norm used as a cross-validation oracle.
//!
//! Coefficients follow the classical normalization
//! f_{jk} = 2·2^{j/2}{ f((2k−1)/2^{j+1}) − ½f(2k/2^{j+1}) − ½f((2k−2)/2^{j+1}) },
//! with f_0 = f(0), f_1 = f(1) − f(0).

use crate::error::{Error, Result};
use serde::Serialize;

/// The dyadic coefficient array: f0, f1 and one row of 2^j entries per level
/// j = 0 … J−1.
#[derive(Debug, Clone, PartialEq)]
pub struct SchauderCoeffs {
    f0: f64,
    f1: f64,
    levels: Vec<Vec<f64>>,
}

impl SchauderCoeffs {
    /// Assemble from raw parts, validating the triangular shape.
    pub fn from_parts(f0: f64, f1: f64, levels: Vec<Vec<f64>>) -> Result<Self> {
        for (j, row) in levels.iter().enumerate() {
            let want = 1usize << j;
            if row.len() != want {
                return Err(Error::shape(format!(
                    "level {j} must hold {want} coefficients, got {}",
                    row.len()
                )));
            }
        }
        Ok(SchauderCoeffs { f0, f1, levels })
    }

    pub fn f0(&self) -> f64 {
        self.f0
    }

    pub fn f1(&self) -> f64 {
        self.f1
    }

    pub fn n_levels(&self) -> usize {
        self.levels.len()
    }

    /// Coefficients f_{j·} at level j (length 2^j).
    pub fn level(&self, j: usize) -> &[f64] {
        &self.levels[j]
    }

    pub fn levels(&self) -> &[Vec<f64>] {
        &self.levels
    }
}

fn infer_level(len: usize) -> Result<u32> {
    if len < 3 {
        return Err(Error::shape(format!(
            "need at least 3 grid values (level ≥ 1), got {len}"
        )));
    }
    let steps = len - 1;
    if !steps.is_power_of_two() {
        return Err(Error::shape(format!(
            "input length must be 2^J + 1, got {len}"
        )));
    }
    Ok(steps.trailing_zeros())
}

/// 2^{j/2} with the exact power of two taken first so even levels stay exact.
#[inline]
fn two_pow_half(j: u32) -> f64 {
    2.0f64.powi(j as i32).sqrt()
}

/// Analysis: coefficients of a function given by its values on the level-J
/// dyadic grid (length 2^J + 1).
pub fn schauder_coeffs(values: &[f64]) -> Result<SchauderCoeffs> {
    let big_j = infer_level(values.len())?;
    let f0 = values[0];
    let f1 = values[values.len() - 1] - values[0];
    let mut levels = Vec::with_capacity(big_j as usize);
    for j in 0..big_j {
        let stride = 1usize << (big_j - j - 1);
        let n_k = 1usize << j;
        let scale = 2.0 * two_pow_half(j);
        let row: Vec<f64> = (1..=n_k)
            .map(|k| {
                let mid = values[(2 * k - 1) * stride];
                let right = values[2 * k * stride];
                let left = values[(2 * k - 2) * stride];
                scale * (mid - 0.5 * right - 0.5 * left)
            })
            .collect();
        levels.push(row);
    }
    Ok(SchauderCoeffs {
        f0,
        f1,
        levels,
    })
}

/// Synthesis: values on the level-J grid. Levels beyond those stored are
/// treated as zero (so coefficient arrays may be coarser than the target
/// grid); `level` must cover every stored level.
pub fn reconstruct(coeffs: &SchauderCoeffs, level: u32) -> Result<Vec<f64>> {
    let big_j = level;
    if big_j == 0 || (big_j as usize) < coeffs.n_levels() {
        return Err(Error::domain(format!(
            "target level {big_j} cannot represent {} coefficient levels",
            coeffs.n_levels()
        )));
    }
    if big_j > crate::grid::MAX_LEVEL {
        return Err(Error::domain(format!(
            "target level {big_j} exceeds the maximum {}",
            crate::grid::MAX_LEVEL
        )));
    }
    // start on the {0, 1} grid and insert midpoints level by level
    let mut values = vec![coeffs.f0, coeffs.f0 + coeffs.f1];
    for j in 0..big_j {
        let mut next = vec![0.0f64; 2 * values.len() - 1];
        let half_hat = 0.5 / two_pow_half(j);
        for (i, &v) in values.iter().enumerate() {
            next[2 * i] = v;
        }
        for k in 1..values.len() {
            let base = 0.5 * (values[k - 1] + values[k]);
            let coef = if (j as usize) < coeffs.n_levels() {
                coeffs.levels[j as usize][k - 1]
            } else {
                0.0
            };
            next[2 * k - 1] = base + coef * half_hat;
        }
        values = next;
    }
    Ok(values)
}

/// Verdict of the finite-level little-Besov trend heuristic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TailVerdict {
    /// T_j decays across the fitted window (consistent with bes membership).
    Decaying,
    /// T_j is flat: bounded away from zero with |slope| inside the threshold.
    Flat,
    /// T_j grows across the window (norm blow-up trend).
    Growing,
}

/// Slope threshold for calling a trend flat rather than decaying/growing.
pub const TREND_SLOPE_TOL: f64 = 0.02;

/// Fitted tail behaviour of the level terms T_j.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BesTrend {
    /// All level terms T_j, j = 0 … n_levels−1.
    pub level_terms: Vec<f64>,
    /// First level included in the fitted window (upper half of levels).
    pub window_start: usize,
    /// Least-squares slope of log₂ T_j over the window; `None` when a window
    /// term is exactly zero (finitely supported coefficients — the tail
    /// vanishes and the trend is trivially decaying).
    pub slope: Option<f64>,
    pub verdict: TailVerdict,
}

/// Besov sequence-norm report for one (γ, p) pair.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BesovReport {
    pub gamma: f64,
    pub p: f64,
    /// T_j = 2^{−j(1/2−γ+1/p)} (Σ_k |f_{jk}|^p)^{1/p}
    pub level_terms: Vec<f64>,
    /// max(|f0|, |f1|, sup_j T_j)
    pub seq_norm: f64,
    /// Tail diagnostics; present when at least 4 levels are available.
    pub tail_trend: Option<BesTrend>,
}

/// (Σ|x|^p)^{1/p} with the largest magnitude factored out, so extreme p
/// neither overflows nor flushes small coefficients to zero.
pub(crate) fn scaled_p_norm(xs: &[f64], p: f64) -> f64 {
    let m = xs.iter().fold(0.0f64, |acc, &v| acc.max(v.abs()));
    if m == 0.0 {
        return 0.0;
    }
    let mut acc = 0.0f64;
    for &v in xs {
        acc += (v.abs() / m).powf(p);
    }
    m * acc.powf(1.0 / p)
}

/// Least-squares slope of y against x.
pub(crate) fn ls_slope(x: &[f64], y: &[f64]) -> f64 {
    let n = x.len() as f64;
    let xm = x.iter().sum::<f64>() / n;
    let ym = y.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (&a, &b) in x.iter().zip(y) {
        num += (a - xm) * (b - ym);
        den += (a - xm) * (a - xm);
    }
    num / den
}

fn check_seq_norm_range(gamma: f64, p: f64) -> Result<()> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::domain(format!("p must lie in (1,∞), got {p}")));
    }
    if !(gamma > 1.0 / p && gamma < 1.0) {
        return Err(Error::domain(format!(
            "gamma must lie in (1/p, 1) = ({}, 1), got {gamma}",
            1.0 / p
        )));
    }
    Ok(())
}

fn level_terms(coeffs: &SchauderCoeffs, gamma: f64, p: f64) -> Vec<f64> {
    coeffs
        .levels
        .iter()
        .enumerate()
        .map(|(j, row)| {
            let weight = 2.0f64.powf(-(j as f64) * (0.5 - gamma + 1.0 / p));
            weight * scaled_p_norm(row, p)
        })
        .collect()
}

fn trend_from_terms(terms: &[f64]) -> BesTrend {
    let window_start = terms.len() / 2;
    let window = &terms[window_start..];
    let slope = if window.iter().all(|&t| t > 0.0) {
        let xs: Vec<f64> = (window_start..terms.len()).map(|j| j as f64).collect();
        let ys: Vec<f64> = window.iter().map(|t| t.log2()).collect();
        Some(ls_slope(&xs, &ys))
    } else {
        None
    };
    let verdict = match slope {
        None => TailVerdict::Decaying,
        Some(s) if s < -TREND_SLOPE_TOL => TailVerdict::Decaying,
        Some(s) if s > TREND_SLOPE_TOL => TailVerdict::Growing,
        Some(_) => TailVerdict::Flat,
    };
    BesTrend {
        level_terms: terms.to_vec(),
        window_start,
        slope,
        verdict,
    }
}

/// The sequence norm of Theorem-2.1 type for (γ, p) with 1/p < γ < 1,
/// 1 < p < ∞.
pub fn besov_seq_norm(coeffs: &SchauderCoeffs, gamma: f64, p: f64) -> Result<BesovReport> {
    check_seq_norm_range(gamma, p)?;
    let terms = level_terms(coeffs, gamma, p);
    let sup_t = terms.iter().fold(0.0f64, |m, &t| m.max(t));
    let seq_norm = coeffs.f0.abs().max(coeffs.f1.abs()).max(sup_t);
    let tail_trend = if terms.len() >= 4 {
        Some(trend_from_terms(&terms))
    } else {
        None
    };
    Ok(BesovReport {
        gamma,
        p,
        level_terms: terms,
        seq_norm,
        tail_trend,
    })
}

/// The little-bes membership heuristic: level terms plus the fitted
/// log₂-slope over the upper half of levels. Requires ≥ 4 levels.
pub fn bes_criterion(coeffs: &SchauderCoeffs, gamma: f64, p: f64) -> Result<BesTrend> {
    check_seq_norm_range(gamma, p)?;
    if coeffs.n_levels() < 4 {
        return Err(Error::InsufficientData(format!(
            "bes criterion needs at least 4 levels, got {}",
            coeffs.n_levels()
        )));
    }
    Ok(trend_from_terms(&level_terms(coeffs, gamma, p)))
}

/// Discrete version of ‖f‖_{L^p} + sup_{0<t≤1} Δ_p(f)(t)/t^γ with shifts and
/// the sup restricted to grid multiples m/2^J; integrals are left-endpoint
/// grid averages and Δ_p is the cumulative max over shifts ≤ t.
pub fn direct_besov_norm(values: &[f64], gamma: f64, p: f64) -> Result<f64> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(Error::domain(format!("p must lie in [1,∞), got {p}")));
    }
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::domain(format!(
            "gamma must lie in (0,1), got {gamma}"
        )));
    }
    let big_j = infer_level(values.len())?;
    let n = 1usize << big_j; // number of cells
    let h = 1.0 / n as f64;

    let lp_part = {
        // left endpoints only: (2^{-J} Σ_{i<2^J} |f_i|^p)^{1/p}
        let scaled = scaled_p_norm(&values[..n], p);
        scaled * h.powf(1.0 / p)
    };

    let mut worst_ratio = 0.0f64;
    let mut running_max = 0.0f64; // cumulative max of D(m) over shifts ≤ m
    let mut diffs = Vec::with_capacity(n);
    for m in 1..=n {
        diffs.clear();
        // overlap I_s = [0, 1−s] discretized by the left endpoints of its cells
        for i in 0..(n - m) {
            diffs.push(values[i + m] - values[i]);
        }
        let d_m = if diffs.is_empty() {
            0.0
        } else {
            scaled_p_norm(&diffs, p) * h.powf(1.0 / p)
        };
        running_max = running_max.max(d_m);
        let t = m as f64 * h;
        worst_ratio = worst_ratio.max(running_max / t.powf(gamma));
    }
    Ok(lp_part + worst_ratio)
}

/// Discrete Hölder norm: sup_i |f_i| + max over grid pairs of
/// |f(t) − f(s)| / |t − s|^γ. Accepts any uniform partition of [0,1].
pub fn holder_norm(values: &[f64], gamma: f64) -> Result<f64> {
    if !(gamma > 0.0 && gamma < 1.0) {
        return Err(Error::domain(format!(
            "gamma must lie in (0,1), got {gamma}"
        )));
    }
    if values.len() < 2 {
        return Err(Error::shape(
            "holder_norm needs at least two grid values".to_string(),
        ));
    }
    let n = values.len() - 1;
    let h = 1.0 / n as f64;
    let sup = values.iter().fold(0.0f64, |m, &v| m.max(v.abs()));
    // precompute (d·h)^{-γ} per gap length d
    let inv_gap: Vec<f64> = (1..=n).map(|d| (d as f64 * h).powf(-gamma)).collect();
    let mut worst = 0.0f64;
    for i in 0..n {
        for l in (i + 1)..=n {
            let r = (values[l] - values[i]).abs() * inv_gap[l - i - 1];
            if r > worst {
                worst = r;
            }
        }
    }
    Ok(sup + worst)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn grid_values(big_j: u32, f: impl Fn(f64) -> f64) -> Vec<f64> {
        let n = 1usize << big_j;
        (0..=n).map(|i| f(i as f64 / n as f64)).collect()
    }

    #[test]
    fn constants_have_trivial_coefficients() {
        let c = schauder_coeffs(&grid_values(4, |_| 2.5)).unwrap();
        assert_eq!(c.f0(), 2.5);
        assert_eq!(c.f1(), 0.0);
        for j in 0..c.n_levels() {
            assert!(c.level(j).iter().all(|&v| v == 0.0));
        }
    }

    #[test]
    fn affine_maps_to_f1_only() {
        let c = schauder_coeffs(&grid_values(5, |t| 3.0 * t - 1.0)).unwrap();
        assert_eq!(c.f0(), -1.0);
        assert_relative_eq!(c.f1(), 3.0, epsilon = 1e-15);
        for j in 0..c.n_levels() {
            for &v in c.level(j) {
                assert!(v.abs() <= 1e-13, "level {j} leaked {v}");
            }
        }
    }

    #[test]
    fn unit_hat_gives_unit_coefficient() {
        // hat of height 2^{-j0/2}/2 peaking at (2k0−1)/2^{j0+1} → f_{j0,k0} = 1
        let (j0, k0, big_j) = (2u32, 3usize, 5u32);
        let peak_t = (2.0 * k0 as f64 - 1.0) / 2.0f64.powi(j0 as i32 + 1);
        let left = (2.0 * k0 as f64 - 2.0) / 2.0f64.powi(j0 as i32 + 1);
        let right = 2.0 * k0 as f64 / 2.0f64.powi(j0 as i32 + 1);
        let height = 0.5 / 2.0f64.powi(j0 as i32).sqrt();
        let hat = |t: f64| {
            if t <= left || t >= right {
                0.0
            } else if t <= peak_t {
                height * (t - left) / (peak_t - left)
            } else {
                height * (right - t) / (right - peak_t)
            }
        };
        let c = schauder_coeffs(&grid_values(big_j, hat)).unwrap();
        for j in 0..c.n_levels() {
            for (idx, &v) in c.level(j).iter().enumerate() {
                let expect = if j == j0 as usize && idx == k0 - 1 { 1.0 } else { 0.0 };
                assert_relative_eq!(v, expect, epsilon = 1e-12);
            }
        }
    }

    #[test]
    fn quadratic_has_constant_rows() {
        // f(t)=t²: f_{jk} = −2^{−3j/2−1} for every k
        let c = schauder_coeffs(&grid_values(6, |t| t * t)).unwrap();
        for j in 0..c.n_levels() {
            let expect = -2.0f64.powf(-1.5 * j as f64 - 1.0);
            for &v in c.level(j) {
                assert_relative_eq!(v, expect, max_relative = 1e-12);
            }
        }
    }

    #[test]
    fn round_trip_is_exact() {
        // wiggly but deterministic values
        let vals = grid_values(8, |t| (7.0 * t).sin() + 0.3 * (31.0 * t).cos());
        let c = schauder_coeffs(&vals).unwrap();
        let back = reconstruct(&c, 8).unwrap();
        for (a, b) in vals.iter().zip(&back) {
            assert!((a - b).abs() <= 1e-12, "{a} vs {b}");
        }
        // and the other direction
        let c2 = schauder_coeffs(&back).unwrap();
        assert_eq!(c.f0(), c2.f0());
        assert_eq!(c.f1(), c2.f1());
        for j in 0..c.n_levels() {
            for (x, y) in c.level(j).iter().zip(c2.level(j)) {
                assert!((x - y).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn reconstruct_extends_coarse_coefficients_affinely() {
        let c = SchauderCoeffs::from_parts(0.0, 1.0, vec![]).unwrap();
        let vals = reconstruct(&c, 3).unwrap();
        for (i, &v) in vals.iter().enumerate() {
            assert_relative_eq!(v, i as f64 / 8.0, epsilon = 1e-15);
        }
    }

    #[test]
    fn reconstruct_rejects_insufficient_target_level() {
        let c = SchauderCoeffs::from_parts(0.0, 0.0, vec![vec![1.0], vec![0.0, 0.0]]).unwrap();
        assert!(reconstruct(&c, 1).is_err());
        assert!(reconstruct(&c, 2).is_ok());
    }

    #[test]
    fn transform_is_linear() {
        let f = grid_values(6, |t| (5.0 * t).sin());
        let g = grid_values(6, |t| t * t * t - 0.2 * t);
        let (a, b) = (1.7, -0.4);
        let combo: Vec<f64> = f.iter().zip(&g).map(|(x, y)| a * x + b * y).collect();
        let cf = schauder_coeffs(&f).unwrap();
        let cg = schauder_coeffs(&g).unwrap();
        let cc = schauder_coeffs(&combo).unwrap();
        assert!((cc.f1() - (a * cf.f1() + b * cg.f1())).abs() <= 1e-12);
        for j in 0..cc.n_levels() {
            for k in 0..cc.level(j).len() {
                let want = a * cf.level(j)[k] + b * cg.level(j)[k];
                assert!((cc.level(j)[k] - want).abs() <= 1e-12);
            }
        }
    }

    #[test]
    fn shape_errors() {
        assert!(schauder_coeffs(&[0.0, 1.0]).is_err()); // level 0
        assert!(schauder_coeffs(&[0.0, 1.0, 2.0, 3.0]).is_err()); // not 2^J+1
        assert!(SchauderCoeffs::from_parts(0.0, 0.0, vec![vec![1.0, 2.0]]).is_err());
    }

    #[test]
    fn seq_norm_single_coefficient() {
        let mut levels = vec![vec![0.0f64; 1], vec![0.0; 2], vec![0.0; 4]];
        levels[2][1] = 1.0;
        let c = SchauderCoeffs::from_parts(0.0, 0.0, levels).unwrap();
        let (gamma, p) = (0.6, 2.0);
        let r = besov_seq_norm(&c, gamma, p).unwrap();
        let expect = 2.0f64.powf(-2.0 * (0.5 - gamma + 1.0 / p));
        assert_relative_eq!(r.seq_norm, expect, max_relative = 1e-14);
        assert_eq!(r.level_terms[0], 0.0);
        assert_eq!(r.level_terms[1], 0.0);
    }

    #[test]
    fn seq_norm_zero_iff_all_zero() {
        let c = SchauderCoeffs::from_parts(0.0, 0.0, vec![vec![0.0]]).unwrap();
        assert_eq!(besov_seq_norm(&c, 0.7, 2.0).unwrap().seq_norm, 0.0);
        let c = SchauderCoeffs::from_parts(0.1, 0.0, vec![vec![0.0]]).unwrap();
        assert!(besov_seq_norm(&c, 0.7, 2.0).unwrap().seq_norm > 0.0);
    }

    #[test]
    fn seq_norm_matches_brute_force() {
        // independently coded brute-force of the same formula
        let vals = grid_values(6, |t| (13.0 * t).sin() * t);
        let c = schauder_coeffs(&vals).unwrap();
        let (gamma, p) = (0.55, 3.0);
        let r = besov_seq_norm(&c, gamma, p).unwrap();
        let mut brute = c.f0().abs().max(c.f1().abs());
        for j in 0..c.n_levels() {
            let mut s = 0.0f64;
            for &v in c.level(j) {
                s += v.abs().powf(p);
            }
            let t_j = 2.0f64.powf(-(j as f64) * (0.5 - gamma + 1.0 / p)) * s.powf(1.0 / p);
            assert_relative_eq!(r.level_terms[j], t_j, max_relative = 1e-12);
            brute = brute.max(t_j);
        }
        assert_relative_eq!(r.seq_norm, brute, max_relative = 1e-12);
    }

    #[test]
    fn embedding_identity_is_algebraically_exact() {
        // T_j(γ) = T_j(γ')·2^{j(γ−γ')}
        let vals = grid_values(7, |t| (3.0 * t).cos() - 1.0 + t);
        let c = schauder_coeffs(&vals).unwrap();
        let p = 4.0;
        let (g1, g2) = (0.4, 0.7);
        let r1 = besov_seq_norm(&c, g1, p).unwrap();
        let r2 = besov_seq_norm(&c, g2, p).unwrap();
        for j in 0..c.n_levels() {
            let expect = r2.level_terms[j] * 2.0f64.powf(j as f64 * (g1 - g2));
            assert_relative_eq!(r1.level_terms[j], expect, max_relative = 1e-12);
        }
    }

    #[test]
    fn seq_norm_validates_range() {
        let c = SchauderCoeffs::from_parts(0.0, 0.0, vec![vec![1.0]]).unwrap();
        assert!(besov_seq_norm(&c, 0.3, 2.0).is_err()); // γ ≤ 1/p
        assert!(besov_seq_norm(&c, 1.0, 2.0).is_err());
        assert!(besov_seq_norm(&c, 0.5, 1.0).is_err()); // p ≤ 1
        assert!(besov_seq_norm(&c, 0.5, f64::INFINITY).is_err());
    }

    #[test]
    fn bes_criterion_trivial_cases() {
        // affine → all T_j = 0 → trivially decaying tail
        let c = schauder_coeffs(&grid_values(5, |t| t)).unwrap();
        let tr = bes_criterion(&c, 0.6, 2.0).unwrap();
        assert!(tr.level_terms.iter().all(|&t| t == 0.0));
        assert_eq!(tr.slope, None);
        assert_eq!(tr.verdict, TailVerdict::Decaying);

        // constructed constant T_j sequence → slope 0 → flat (not in bes)
        let (gamma, p) = (0.6, 2.0);
        let levels: Vec<Vec<f64>> = (0..6)
            .map(|j| {
                let v = 2.0f64.powf(j as f64 * (0.5 - gamma + 1.0 / p))
                    * 2.0f64.powf(-(j as f64) / p);
                vec![v; 1 << j]
            })
            .collect();
        let c = SchauderCoeffs::from_parts(0.0, 0.0, levels).unwrap();
        let tr = bes_criterion(&c, gamma, p).unwrap();
        for &t in &tr.level_terms {
            assert_relative_eq!(t, 1.0, max_relative = 1e-12);
        }
        assert!(tr.slope.unwrap().abs() <= 1e-12);
        assert_eq!(tr.verdict, TailVerdict::Flat);
    }

    #[test]
    fn bes_criterion_needs_four_levels() {
        let c = schauder_coeffs(&grid_values(3, |t| t * t)).unwrap();
        assert!(matches!(
            bes_criterion(&c, 0.6, 2.0),
            Err(Error::InsufficientData(_))
        ));
        let c = schauder_coeffs(&grid_values(4, |t| t * t)).unwrap();
        assert!(bes_criterion(&c, 0.6, 2.0).is_ok());
    }

    #[test]
    fn direct_norm_zero_and_affine() {
        let zero = vec![0.0; 17];
        assert_eq!(direct_besov_norm(&zero, 0.5, 2.0).unwrap(), 0.0);

        // f(t) = t at γ = 1/2, p = 2: L^p part ≈ (1/(p+1))^{1/p}; the modulus
        // integrates over the overlap [0, 1−s], so Δ₂(s)/s^γ = √(s(1−s))
        // with maximum 1/2 at s = 1/2
        let vals = grid_values(10, |t| t);
        let norm = direct_besov_norm(&vals, 0.5, 2.0).unwrap();
        let expect = (1.0f64 / 3.0).powf(0.5) + 0.5;
        assert!((norm - expect).abs() < 0.01, "{norm} vs {expect}");
    }

    #[test]
    fn holder_norm_reference_cases() {
        let zero = vec![0.0; 9];
        assert_eq!(holder_norm(&zero, 0.5).unwrap(), 0.0);

        let vals = grid_values(8, |t| t);
        let n = holder_norm(&vals, 0.5).unwrap();
        assert_relative_eq!(n, 2.0, max_relative = 1e-12);
    }

    #[test]
    fn holder_norm_monotone_in_gamma() {
        let vals = grid_values(6, |t| (9.0 * t).sin() * 0.2);
        let a = holder_norm(&vals, 0.3).unwrap();
        let b = holder_norm(&vals, 0.6).unwrap();
        assert!(b >= a);
    }

    #[test]
    fn validates_gamma_and_p() {
        let vals = vec![0.0, 0.5, 1.0];
        assert!(direct_besov_norm(&vals, 0.0, 2.0).is_err());
        assert!(direct_besov_norm(&vals, 1.0, 2.0).is_err());
        assert!(direct_besov_norm(&vals, 0.5, 0.5).is_err());
        assert!(holder_norm(&vals, 0.0).is_err());
        assert!(holder_norm(&vals, 1.0).is_err());
    }
}
