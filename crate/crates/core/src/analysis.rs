//! Closed-form estimates of the mean total transmission time and related
//! quantities.
//!
//! These are analysis aids, kept strictly separate from the exact solver:
//! the chained approximations (`u(n) ~ W / (n ln 2)` and a linear output-size
//! map) make the mean schedule length affine in the offloader count,
//! `E[T(n)] ~ K*mean_B/v + n*theta`, which yields a cheap cap on how many
//! users can offload within a budget. The optimizer only ever consumes that
//! cap when explicitly asked ([`crate::optimizer::optimize_capped`]).

use crate::channel::{downlink_rate, RadioParams};
use crate::scenario::OutputSizeMap;

/// Inputs for the mean-time estimates.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeanTimeParams {
    pub user_count: usize,
    pub mean_local_bits: f64,
    pub mean_server_bits: f64,
    pub output_map: OutputSizeMap,
    pub radio: RadioParams,
}

/// Exact mean of the maximum of `K` iid exponential draws with the given
/// mean: `mean * H_K` with `H_K` the K-th harmonic number.
pub fn expected_max_local_bits(user_count: usize, mean_local_bits: f64) -> f64 {
    assert!(user_count >= 1, "need at least one user");
    debug_assert!(mean_local_bits > 0.0);
    let harmonic: f64 = (1..=user_count).map(|k| 1.0 / k as f64).sum();
    mean_local_bits * harmonic
}

/// Mean schedule-length increment per additional offloader:
/// `E[L_max] ln2 / W + (c0 + c1*mean_L - (1 - c1)*mean_B) / v`.
///
/// Negative values mean offloading shortens the expected schedule (large
/// server data no longer needs downloading); the budget then stops binding
/// in the mean.
pub fn theta(params: &MeanTimeParams) -> f64 {
    let v = downlink_rate(&params.radio);
    let expected_max = expected_max_local_bits(params.user_count, params.mean_local_bits);
    let map = params.output_map;
    expected_max * std::f64::consts::LN_2 / params.radio.bandwidth()
        + (map.constant + map.slope * params.mean_local_bits
            - (1.0 - map.slope) * params.mean_server_bits)
            / v
}

/// Affine estimate of the mean total transmission time with `n` offloaders:
/// `K * mean_B / v + n * theta`.
pub fn mean_total_time(n: usize, params: &MeanTimeParams) -> f64 {
    debug_assert!(n <= params.user_count);
    let v = downlink_rate(&params.radio);
    params.user_count as f64 * params.mean_server_bits / v + n as f64 * theta(params)
}

/// Largest offloader count whose mean schedule fits the budget.
///
/// With a positive per-offloader increment this is the largest `n` in
/// `0..=K` such that `mean_total_time(n) <= tau` (zero if even `n = 0`
/// misses). A nonpositive increment means the budget does not bind in the
/// mean and every user may offload.
pub fn max_offloading_users(tau: f64, params: &MeanTimeParams) -> usize {
    debug_assert!(tau > 0.0);
    let slope = theta(params);
    if slope <= 0.0 {
        return params.user_count;
    }
    let v = downlink_rate(&params.radio);
    let floor_time = params.user_count as f64 * params.mean_server_bits / v;
    if floor_time > tau {
        return 0;
    }
    (((tau - floor_time) / slope).floor() as usize).min(params.user_count)
}

/// Per-user uplink rates with `K` equal received powers:
/// simultaneous transmission (interference-limited) versus TDMA (the slot
/// split `K` ways). Returns `(simultaneous, tdma)`.
pub fn rate_comparison(user_count: usize, received_power: f64, radio: &RadioParams) -> (f64, f64) {
    assert!(user_count >= 1, "need at least one user");
    let w = radio.bandwidth();
    let n0 = radio.noise_power();
    let simultaneous = w * (1.0
        + received_power / ((user_count - 1) as f64 * received_power + n0))
        .log2();
    let tdma = w / user_count as f64 * (1.0 + received_power / n0).log2();
    (simultaneous, tdma)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{exp_inv_cdf, seeded_rng};

    fn paper_params(mean_server_bits: f64) -> MeanTimeParams {
        MeanTimeParams {
            user_count: 10,
            mean_local_bits: 2.0,
            mean_server_bits,
            output_map: OutputSizeMap::default(),
            radio: RadioParams::from_snr(3.0, 6.0).unwrap(),
        }
    }

    #[test]
    fn expected_max_values() {
        assert_eq!(expected_max_local_bits(1, 2.0), 2.0);
        assert!((expected_max_local_bits(4, 2.0) - 25.0 / 6.0).abs() < 1e-12);
        assert!((expected_max_local_bits(10, 2.0) - 5.8579365079365076).abs() < 1e-12);
    }

    #[test]
    fn expected_max_matches_monte_carlo() {
        let mut rng = seeded_rng(41);
        for k in [1usize, 4, 10] {
            let trials = 100_000;
            let mut sum = 0.0;
            let mut sum_sq = 0.0;
            for _ in 0..trials {
                let max = (0..k)
                    .map(|_| exp_inv_cdf(2.0, &mut rng))
                    .fold(f64::NEG_INFINITY, f64::max);
                sum += max;
                sum_sq += max * max;
            }
            let mean = sum / trials as f64;
            let var = sum_sq / trials as f64 - mean * mean;
            let se = (var / trials as f64).sqrt();
            let exact = expected_max_local_bits(k, 2.0);
            assert!(
                (mean - exact).abs() < 3.0 * se,
                "K={k}: mc {mean} vs exact {exact} (se {se})"
            );
        }
    }

    #[test]
    fn theta_paper_defaults() {
        let t = theta(&paper_params(4.0));
        assert!((t - 2.8493077382080862).abs() < 1e-12, "{t}");
    }

    #[test]
    fn theta_slope_one_cancels_server_term() {
        // slope 1: output equals full input, downloading fully offset
        let mut params = paper_params(4.0);
        params.output_map = OutputSizeMap::new(0.0, 1.0).unwrap();
        let v = downlink_rate(&params.radio);
        let expected =
            expected_max_local_bits(10, 2.0) * std::f64::consts::LN_2 + 2.0 / v;
        assert!((theta(&params) - expected).abs() < 1e-12);
    }

    #[test]
    fn theta_negative_for_large_server_data() {
        assert!(theta(&paper_params(40.0)) < 0.0);
    }

    #[test]
    fn mean_total_time_values() {
        let params = paper_params(4.0);
        let v = downlink_rate(&params.radio);
        assert_eq!(mean_total_time(0, &params), 40.0 / v);
        assert!((mean_total_time(3, &params) - 22.796210698945146).abs() < 1e-12);
    }

    #[test]
    fn mean_total_time_is_affine() {
        let params = paper_params(4.0);
        let slope = theta(&params);
        let at0 = mean_total_time(0, &params);
        for n in 0..=10 {
            let direct = mean_total_time(n, &params);
            let affine = at0 + n as f64 * slope;
            assert!((direct - affine).abs() < 1e-12 * direct.abs().max(1.0));
        }
    }

    #[test]
    fn max_offloaders_branches() {
        let params = paper_params(4.0);
        let v = downlink_rate(&params.radio);
        let floor_time = 40.0 / v;
        let slope = theta(&params);

        // budget below the no-offloading floor
        assert_eq!(max_offloading_users(floor_time * 0.5, &params), 0);
        // budget worth exactly 2.5 increments
        assert_eq!(max_offloading_users(floor_time + 2.5 * slope, &params), 2);
        // nonpositive increment: unconstrained in the mean
        let heavy = paper_params(40.0);
        assert!(theta(&heavy) < 0.0);
        assert_eq!(max_offloading_users(1.0, &heavy), 10);
    }

    #[test]
    fn max_offloaders_monotonicity() {
        let params = paper_params(4.0);
        let mut previous = 0;
        for step in 0..20 {
            let tau = 10.0 + step as f64 * 2.0;
            let n = max_offloading_users(tau, &params);
            assert!(n >= previous, "tau {tau}: {n} < {previous}");
            previous = n;
        }
        // larger theta (bigger mean L) allows no more offloaders at fixed tau
        let slower = MeanTimeParams {
            mean_local_bits: 6.0,
            ..params
        };
        assert!(theta(&slower) > theta(&params));
        for tau in [16.0, 20.0, 30.0] {
            assert!(max_offloading_users(tau, &slower) <= max_offloading_users(tau, &params));
        }
    }

    #[test]
    fn rate_comparison_values() {
        let radio = RadioParams::from_snr(3.0, 6.0).unwrap();
        let (sim, tdma) = rate_comparison(1, 3.0, &radio);
        assert_eq!(sim, tdma);
        assert_eq!(sim, 2.0);

        let (sim, tdma) = rate_comparison(20, 3.0, &radio);
        assert!((sim - 0.07275634243531415).abs() < 1e-12, "{sim}");
        assert!((tdma - 0.1).abs() < 1e-15, "{tdma}");
    }

    #[test]
    fn simultaneous_rate_limit_for_large_k() {
        // K * U_sim approaches W * log2(e)
        let radio = RadioParams::from_snr(3.0, 6.0).unwrap();
        let (sim, _) = rate_comparison(1000, 1000.0, &radio);
        let limit = std::f64::consts::LOG2_E;
        assert!(
            ((sim * 1000.0 - limit) / limit).abs() < 0.01,
            "{} vs {limit}",
            sim * 1000.0
        );
    }
}
