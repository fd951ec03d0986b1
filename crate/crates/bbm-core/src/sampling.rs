//! Exact Gaussian path synthesis on dyadic grids.
//!
//! The Gram matrix of the kernel over the nonzero grid points is factored
//! once (dense Cholesky, no approximation), and each path is L·z with i.i.d.
//! standard normal z drawn from a per-path deterministic stream. The sampled
//! vectors therefore carry the exact finite-dimensional law of the process.

use crate::error::{Error, Result};
use crate::grid::DyadicGrid;
use crate::linalg::{cholesky_spd, SpdFactor, SquareMatrix};
use crate::par;
use crate::params::ProcessParams;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// Diagonal jitter added on explicit opt-in only (recorded by callers in
/// output metadata; never applied silently).
pub const JITTER_EPS: f64 = 1e-12;

/// Sampling options; the default is jitter-free.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SampleOptions {
    /// Add [`JITTER_EPS`] to the Gram diagonal before factorization.
    pub jitter: bool,
}

/// One realization on the grid; `values` has length 2^J + 1 with
/// `values[0] == 0` exactly.
#[derive(Debug, Clone, PartialEq)]
pub struct PathSample {
    pub path_index: u64,
    pub values: Vec<f64>,
}

/// A batch of paths plus everything needed to regenerate them bit-for-bit.
#[derive(Debug, Clone)]
pub struct SampleSet {
    pub params: ProcessParams,
    pub level: u32,
    pub seed: u64,
    pub jitter: bool,
    pub paths: Vec<PathSample>,
}

/// Gram matrix G_{il} = R(t_i, t_l) over the 2^J nonzero grid points
/// (t = 0 is excluded: R(0,·) = 0 would make the matrix singular).
pub fn gram_matrix(params: &ProcessParams, grid: &DyadicGrid) -> SquareMatrix {
    let pts = grid.nonzero_points();
    let n = pts.len();
    let mut data = vec![0.0f64; n * n];
    par::for_each_row_mut(&mut data, n, |i, row| {
        let ti = pts[i];
        for (l, slot) in row.iter_mut().enumerate() {
            // fill from the ordered pair so (i,l) and (l,i) get identical bits
            let (a, b) = if pts[l] <= ti { (pts[l], ti) } else { (ti, pts[l]) };
            *slot = params.cov_raw(a, b);
        }
    });
    SquareMatrix::from_flat(n, data)
}

/// Factor the Gram matrix for (params, grid), applying jitter only on opt-in.
pub fn factor_for(
    params: &ProcessParams,
    grid: &DyadicGrid,
    opts: SampleOptions,
) -> Result<SpdFactor> {
    let mut g = gram_matrix(params, grid);
    if opts.jitter {
        g.add_diagonal(JITTER_EPS);
    }
    cholesky_spd(&g)
}

/// Stable per-path seed derivation (splitmix64 over the pair); every
/// (seed, path_index) maps to one reproducible normal stream.
fn derive_seed(master: u64, path_index: u64) -> u64 {
    let mut z = master ^ path_index.wrapping_mul(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// The i.i.d. standard normal variates for one path, independent of how many
/// other paths exist or on which thread they are drawn.
pub(crate) fn path_normals(master_seed: u64, path_index: u64, count: usize) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(derive_seed(master_seed, path_index));
    (0..count)
        .map(|_| StandardNormal.sample(&mut rng))
        .collect()
}

/// Synthesize one path from the factor: values[0] = 0, values[1..] = L·z
/// with fixed row-wise accumulation order.
pub(crate) fn synth_path(factor: &SpdFactor, master_seed: u64, path_index: u64) -> Vec<f64> {
    let n = factor.n();
    let z = path_normals(master_seed, path_index, n);
    let mut values = Vec::with_capacity(n + 1);
    values.push(0.0);
    for i in 0..n {
        let row = factor.row(i);
        let mut acc = 0.0;
        for k in 0..=i {
            acc += row[k] * z[k];
        }
        values.push(acc);
    }
    values
}

/// Draw `n_paths` exact realizations. Deterministic in (params, grid, seed):
/// the same inputs reproduce the same bits regardless of thread count.
pub fn sample_paths(
    params: &ProcessParams,
    grid: &DyadicGrid,
    n_paths: usize,
    seed: u64,
) -> Result<SampleSet> {
    sample_paths_with(params, grid, n_paths, seed, SampleOptions::default())
}

/// As [`sample_paths`] with explicit options.
pub fn sample_paths_with(
    params: &ProcessParams,
    grid: &DyadicGrid,
    n_paths: usize,
    seed: u64,
    opts: SampleOptions,
) -> Result<SampleSet> {
    if n_paths == 0 {
        return Err(Error::domain("n_paths must be at least 1".to_string()));
    }
    let factor = factor_for(params, grid, opts)?;
    let paths = par::map_indexed(n_paths, |i| PathSample {
        path_index: i as u64,
        values: synth_path(&factor, seed, i as u64),
    });
    Ok(SampleSet {
        params: *params,
        level: grid.level(),
        seed,
        jitter: opts.jitter,
        paths,
    })
}

/// Map `f` over freshly synthesized paths without retaining them, collecting
/// the per-path results in path order. The closure receives the full value
/// array (t = 0 included).
pub fn map_paths<T, F>(
    factor: &SpdFactor,
    n_paths: usize,
    seed: u64,
    f: F,
) -> Vec<T>
where
    T: Send,
    F: Fn(u64, &[f64]) -> T + Sync + Send,
{
    par::map_indexed(n_paths, |i| {
        let values = synth_path(factor, seed, i as u64);
        f(i as u64, &values)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn brownian_gram_level_one() {
        // α = 0.5, β = 1 is standard Brownian motion: G = min(s,t)
        let p = ProcessParams::bifractional(0.5, 1.0).unwrap();
        let g = gram_matrix(&p, &DyadicGrid::new(1).unwrap());
        assert_relative_eq!(g.at(0, 0), 0.5, epsilon = 1e-15);
        assert_relative_eq!(g.at(0, 1), 0.5, epsilon = 1e-15);
        assert_relative_eq!(g.at(1, 0), 0.5, epsilon = 1e-15);
        assert_relative_eq!(g.at(1, 1), 1.0, epsilon = 1e-15);
    }

    #[test]
    fn gram_diagonal_is_power_law() {
        let p = ProcessParams::bifractional(0.6, 0.8).unwrap();
        let grid = DyadicGrid::new(4).unwrap();
        let g = gram_matrix(&p, &grid);
        for (i, &t) in grid.nonzero_points().iter().enumerate() {
            assert_relative_eq!(g.at(i, i), t.powf(2.0 * 0.48), epsilon = 1e-15);
        }
    }

    #[test]
    fn gram_matches_entrywise_oracle() {
        let p = ProcessParams::bifractional(0.7, 0.6).unwrap();
        let grid = DyadicGrid::new(3).unwrap();
        let g = gram_matrix(&p, &grid);
        let pts = grid.nonzero_points();
        for i in 0..pts.len() {
            for l in 0..pts.len() {
                let want = crate::covariance::bbm_cov(&p, pts[i], pts[l]).unwrap();
                assert_relative_eq!(g.at(i, l), want, max_relative = 1e-15);
            }
        }
        assert!(g.is_symmetric());
    }

    #[test]
    fn factorization_reconstructs_gram() {
        let p = ProcessParams::bifractional(0.5, 0.5).unwrap();
        let grid = DyadicGrid::new(6).unwrap();
        let g = gram_matrix(&p, &grid);
        let f = cholesky_spd(&g).unwrap();
        assert!(f.reconstruction_error(&g) <= 1e-10 * g.max_abs());
    }

    #[test]
    fn linear_functional_variance_is_exact() {
        // Var(wᵀB) from the factor must equal wᵀGw
        let p = ProcessParams::bifractional(0.7, 0.8).unwrap();
        let grid = DyadicGrid::new(5).unwrap();
        let g = gram_matrix(&p, &grid);
        let f = cholesky_spd(&g).unwrap();
        let n = g.n();
        let w: Vec<f64> = (0..n).map(|i| ((i * 13 % 7) as f64 - 3.0) / 3.0).collect();
        // ‖Lᵀw‖²
        let mut var_factor = 0.0;
        for k in 0..n {
            let mut acc = 0.0;
            for i in k..n {
                acc += f.at(i, k) * w[i];
            }
            var_factor += acc * acc;
        }
        let mut var_gram = 0.0;
        for i in 0..n {
            for l in 0..n {
                var_gram += w[i] * g.at(i, l) * w[l];
            }
        }
        assert_relative_eq!(var_factor, var_gram, max_relative = 1e-10);
    }

    #[test]
    fn paths_are_deterministic_and_anchored() {
        let p = ProcessParams::bifractional(0.5, 0.5).unwrap();
        let grid = DyadicGrid::new(4).unwrap();
        let a = sample_paths(&p, &grid, 6, 42).unwrap();
        let b = sample_paths(&p, &grid, 6, 42).unwrap();
        for (pa, pb) in a.paths.iter().zip(&b.paths) {
            assert_eq!(pa.values, pb.values);
            assert_eq!(pa.values[0], 0.0);
            assert_eq!(pa.values.len(), grid.len());
        }
        let c = sample_paths(&p, &grid, 6, 43).unwrap();
        assert_ne!(a.paths[0].values, c.paths[0].values);
    }

    #[test]
    fn path_prefix_is_stable_in_path_count() {
        // adding more paths must not change earlier ones
        let p = ProcessParams::bifractional(0.6, 1.0).unwrap();
        let grid = DyadicGrid::new(3).unwrap();
        let small = sample_paths(&p, &grid, 2, 7).unwrap();
        let big = sample_paths(&p, &grid, 5, 7).unwrap();
        for i in 0..2 {
            assert_eq!(small.paths[i].values, big.paths[i].values);
        }
    }

    #[test]
    fn map_paths_agrees_with_sample_paths() {
        let p = ProcessParams::bifractional(0.5, 1.0).unwrap();
        let grid = DyadicGrid::new(3).unwrap();
        let factor = factor_for(&p, &grid, SampleOptions::default()).unwrap();
        let endpoints = map_paths(&factor, 4, 11, |_, v| *v.last().unwrap());
        let set = sample_paths(&p, &grid, 4, 11).unwrap();
        for (e, path) in endpoints.iter().zip(&set.paths) {
            assert_eq!(*e, *path.values.last().unwrap());
        }
    }

    #[test]
    fn jitter_is_recorded_and_changes_factor_only_slightly() {
        let p = ProcessParams::bifractional(0.5, 0.5).unwrap();
        let grid = DyadicGrid::new(3).unwrap();
        let plain = sample_paths(&p, &grid, 1, 5).unwrap();
        let jittered =
            sample_paths_with(&p, &grid, 1, 5, SampleOptions { jitter: true }).unwrap();
        assert!(!plain.jitter);
        assert!(jittered.jitter);
        for (a, b) in plain.paths[0].values.iter().zip(&jittered.paths[0].values) {
            assert_relative_eq!(a, b, epsilon = 1e-9);
        }
    }

    #[test]
    fn rejects_zero_paths() {
        let p = ProcessParams::bifractional(0.5, 0.5).unwrap();
        let grid = DyadicGrid::new(2).unwrap();
        assert!(sample_paths(&p, &grid, 0, 1).is_err());
    }
}

#[cfg(test)]
mod mode_fixture {
    use super::*;

    #[test]
    fn canonical_path_value_bits_are_frozen() {
        // cross-mode fixture: the same bits must come out of the parallel and
        // sequential builds (ordered collection, fixed reduction order)
        let p = ProcessParams::bifractional(0.7, 0.8).unwrap();
        let grid = DyadicGrid::new(3).unwrap();
        let set = sample_paths(&p, &grid, 2, 1).unwrap();
        assert_eq!(set.paths[0].values[8].to_bits(), 4603601069923982366u64, "path0 t=1");
        assert_eq!(set.paths[1].values[4].to_bits(), 4585380059489399559u64, "path1 t=1/2");
    }
}
