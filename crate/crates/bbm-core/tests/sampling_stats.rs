//! Monte Carlo validation of the exact sampler: empirical second moments
//! against the closed-form kernel, with 4-standard-error tolerances.

use bbm_core::sampling::sample_paths;
use bbm_core::{DyadicGrid, ProcessParams};

/// Var(X_s·X_t) = R_ss·R_tt + R_st² for centred jointly Gaussian X.
fn product_se(params: &ProcessParams, s: f64, t: f64, n: usize) -> f64 {
    let rss = params.cov(s, s).unwrap();
    let rtt = params.cov(t, t).unwrap();
    let rst = params.cov(s, t).unwrap();
    ((rss * rtt + rst * rst) / n as f64).sqrt()
}

#[test]
fn empirical_covariance_matches_kernel() {
    let params = ProcessParams::bifractional(0.7, 0.8).unwrap();
    let grid = DyadicGrid::new(4).unwrap();
    let n = 20_000usize;
    let set = sample_paths(&params, &grid, n, 90_210).unwrap();
    let pts = grid.points();
    for &(i, l) in &[(16usize, 16usize), (9, 16), (5, 11), (3, 3)] {
        let (s, t) = (pts[i], pts[l]);
        let mut acc = 0.0f64;
        for path in &set.paths {
            acc += path.values[i] * path.values[l];
        }
        let emp = acc / n as f64;
        let exact = params.cov(s, t).unwrap();
        let se = product_se(&params, s, t, n);
        assert!(
            (emp - exact).abs() <= 4.0 * se,
            "cov({s},{t}): empirical {emp}, exact {exact}, se {se}"
        );
    }
}

#[test]
fn empirical_increment_variance_within_quasi_helix() {
    let params = ProcessParams::bifractional(0.6, 0.9).unwrap();
    let grid = DyadicGrid::new(4).unwrap();
    let n = 20_000usize;
    let set = sample_paths(&params, &grid, n, 7_171).unwrap();
    let pts = grid.points();
    let (i, l) = (4usize, 13usize);
    let (s, t) = (pts[i], pts[l]);
    let mut acc = 0.0f64;
    for path in &set.paths {
        let d = path.values[l] - path.values[i];
        acc += d * d;
    }
    let emp = acc / n as f64;
    let exact = bbm_core::covariance::increment_variance(&params, s, t).unwrap();
    let (lo, hi) = bbm_core::covariance::quasi_helix_bounds(&params, s, t).unwrap();
    // SE of a mean of squares: Var(D²) = 2·Var(D)²
    let se = exact * (2.0 / n as f64).sqrt();
    assert!((emp - exact).abs() <= 4.0 * se, "{emp} vs {exact} (se {se})");
    assert!(lo <= exact && exact <= hi);
}

#[test]
fn paths_start_at_zero_and_differ() {
    let params = ProcessParams::subfractional(0.7).unwrap();
    let grid = DyadicGrid::new(5).unwrap();
    let set = sample_paths(&params, &grid, 3, 5).unwrap();
    for path in &set.paths {
        assert_eq!(path.values[0], 0.0);
        assert_eq!(path.values.len(), grid.len());
    }
    assert_ne!(set.paths[0].values[32], set.paths[1].values[32]);
    assert_ne!(set.paths[1].values[32], set.paths[2].values[32]);
}
