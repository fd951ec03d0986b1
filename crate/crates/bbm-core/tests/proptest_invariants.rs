//! Property-based invariants across randomly drawn parameters, times and
//! coefficient arrays.

use proptest::prelude::*;

use bbm_core::covariance::{self, quasi_helix_bounds, self_similarity_pair};
use bbm_core::moments::{second_diff_cov_direct, second_diff_cov_identity};
use bbm_core::schauder::{reconstruct, schauder_coeffs};
use bbm_core::ProcessParams;

fn params_strategy() -> impl Strategy<Value = ProcessParams> {
    (0.05f64..0.95, 0.05f64..=1.0)
        .prop_map(|(a, b)| ProcessParams::bifractional(a, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn covariance_symmetry_and_diagonal(
        params in params_strategy(),
        s in 0.0f64..=1.0,
        t in 0.0f64..=1.0,
    ) {
        let fwd = params.cov(s, t).unwrap();
        let bwd = params.cov(t, s).unwrap();
        prop_assert_eq!(fwd.to_bits(), bwd.to_bits());
        let diag = params.cov(t, t).unwrap();
        let hurst2 = 2.0 * params.hurst();
        prop_assert!((diag - t.powf(hurst2)).abs() <= 1e-14 * diag.abs().max(1.0));
    }

    #[test]
    fn quasi_helix_brackets_increment_variance(
        params in params_strategy(),
        s in 0.0f64..=1.0,
        t in 0.0f64..=1.0,
    ) {
        let v = covariance::increment_variance(&params, s, t).unwrap();
        let (lo, hi) = quasi_helix_bounds(&params, s, t).unwrap();
        let slack = 1e-12 * hi.max(1.0);
        prop_assert!(v >= lo - slack, "{v} < {lo}");
        prop_assert!(v <= hi + slack, "{v} > {hi}");
    }

    #[test]
    fn self_similarity_identity(
        params in params_strategy(),
        a in 0.05f64..=1.0,
        s in 0.0f64..=1.0,
        t in 0.0f64..=1.0,
    ) {
        let (scaled, predicted) = self_similarity_pair(&params, a, s, t).unwrap();
        prop_assert!(
            (scaled - predicted).abs() <= 1e-12 * predicted.abs().max(1e-12),
            "R(as,at) = {scaled} vs a^2αβ R(s,t) = {predicted}"
        );
    }

    #[test]
    fn transform_round_trip_and_linearity(
        raw_a in prop::collection::vec(-100.0f64..100.0, 17),
        raw_b in prop::collection::vec(-100.0f64..100.0, 17),
        c1 in -4.0f64..4.0,
        c2 in -4.0f64..4.0,
    ) {
        let ca = schauder_coeffs(&raw_a).unwrap();
        let back = reconstruct(&ca, 4).unwrap();
        for (x, y) in raw_a.iter().zip(&back) {
            prop_assert!((x - y).abs() <= 1e-12 * x.abs().max(1.0));
        }

        let combo: Vec<f64> = raw_a.iter().zip(&raw_b).map(|(x, y)| c1 * x + c2 * y).collect();
        let cb = schauder_coeffs(&raw_b).unwrap();
        let cc = schauder_coeffs(&combo).unwrap();
        for j in 0..cc.n_levels() {
            for (k, &v) in cc.level(j).iter().enumerate() {
                let lin = c1 * ca.level(j)[k] + c2 * cb.level(j)[k];
                prop_assert!((v - lin).abs() <= 1e-10 * lin.abs().max(1.0));
            }
        }
    }

    #[test]
    fn moment_identity_matches_oracle(
        params in params_strategy(),
        j in 1u32..=5,
        seed_k in 0usize..1024,
        seed_kp in 0usize..1024,
    ) {
        let n = 1usize << j;
        let k = seed_k % n + 1;
        let kp = seed_kp % n + 1;
        let direct = second_diff_cov_direct(&params, j, k, kp).unwrap();
        let ident = second_diff_cov_identity(&params, j, k, kp).unwrap();
        prop_assert!(
            (direct - ident).abs() <= 1e-10 * direct.abs().max(1.0),
            "j={j} k={k} k'={kp}: {direct} vs {ident}"
        );
    }
}
