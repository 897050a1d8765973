//! Exact total-time and total-energy evaluation for any decision vector,
//! and the affine coefficient extraction that turns both into linear
//! functions of the decision at a fixed offloader count.
//!
//! Time model: every offloading user uploads simultaneously at the common
//! rate `u(n)`, so the uplink phase lasts `max_{k offloading} L_k / u(n)`;
//! the downlink is TDMA, adding `Y_k/v` per offloader and `B_k/v` per local
//! user. The linearized form used by the solver replaces the offloader-only
//! maximum with the maximum over *all* users, which is what makes it affine
//! in the decision; it therefore upper-bounds the literal time whenever the
//! user with the largest `L_k` stays local. [`linearize`] documents this as
//! the only place the affine model is conservative; energy has no such
//! caveat and decomposes exactly.

use serde::{Deserialize, Serialize};

use crate::channel::{downlink_rate, inversion_powers, uplink_rate_inversion};
use crate::error::Error;
use crate::scenario::Scenario;
use crate::Result;

/// A binary offloading decision with its cached population count.
///
/// Entries are `true` for offloading users; the count is fixed at
/// construction so it can never drift from the bits.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DecisionVector {
    bits: Vec<bool>,
    ones: usize,
}

impl DecisionVector {
    pub fn from_bits(bits: Vec<bool>) -> Self {
        let ones = bits.iter().filter(|&&b| b).count();
        Self { bits, ones }
    }

    /// Everyone computes locally.
    pub fn all_local(k: usize) -> Self {
        Self {
            bits: vec![false; k],
            ones: 0,
        }
    }

    /// Everyone offloads.
    pub fn all_offload(k: usize) -> Self {
        Self {
            bits: vec![true; k],
            ones: k,
        }
    }

    pub fn from_offloaders(k: usize, offloaders: &[usize]) -> Self {
        let mut bits = vec![false; k];
        for &i in offloaders {
            bits[i] = true;
        }
        Self::from_bits(bits)
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Number of offloading users `n`.
    pub fn ones(&self) -> usize {
        self.ones
    }

    pub fn is_offloading(&self, user: usize) -> bool {
        self.bits[user]
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    /// Decision entries as 0/1 integers, for display and JSON output.
    pub fn to_ints(&self) -> Vec<u8> {
        self.bits.iter().map(|&b| b as u8).collect()
    }
}

/// Per-user and aggregate cost of one decision.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CostBreakdown {
    pub total_energy: f64,
    pub total_time: f64,
    pub uplink_time: f64,
    pub per_user_energy: Vec<f64>,
    pub per_user_downlink_time: Vec<f64>,
}

/// Coefficients of the affine cost model at a fixed offloader count `n`:
/// energy is `base_energy + energy_delta . a` and (linearized) time is
/// `base_time + time_delta . a` over decisions with `n` ones.
#[derive(Debug, Clone, PartialEq)]
pub struct LinearCoefficients {
    /// Decision-independent energy floor: all-local compute plus every
    /// server-data download.
    pub base_energy: f64,
    /// Per-user energy change when offloading; depends on `n` only through
    /// the uplink rate term.
    pub energy_delta: Vec<f64>,
    /// Decision-independent time at this `n`: worst-case uplink plus all
    /// server-data downloads.
    pub base_time: f64,
    /// Per-user downlink time change when offloading; independent of `n`.
    pub time_delta: Vec<f64>,
}

/// Literal total transmission time of a decision.
///
/// Uplink phase uses the maximum over offloading users only; zero when
/// nobody offloads.
pub fn total_time(scenario: &Scenario, decision: &DecisionVector) -> f64 {
    debug_assert_eq!(decision.len(), scenario.user_count());
    let v = downlink_rate(&scenario.config.radio);
    let n = decision.ones();

    let uplink = if n == 0 {
        0.0
    } else {
        let u = uplink_rate_inversion(n, &scenario.config.radio);
        let max_local: f64 = scenario
            .users
            .iter()
            .zip(decision.bits())
            .filter(|(_, &a)| a)
            .map(|(user, _)| user.local_bits)
            .fold(f64::NEG_INFINITY, f64::max);
        max_local / u
    };

    let downlink: f64 = scenario
        .users
        .iter()
        .zip(decision.bits())
        .map(|(user, &a)| if a { user.output_bits } else { user.server_bits } / v)
        .sum();

    uplink + downlink
}

/// Literal total consumed energy of a decision (server and users combined).
pub fn total_energy(scenario: &Scenario, decision: &DecisionVector) -> f64 {
    debug_assert_eq!(decision.len(), scenario.user_count());
    per_user_energy(scenario, decision).into_iter().sum()
}

fn per_user_energy(scenario: &Scenario, decision: &DecisionVector) -> Vec<f64> {
    let config = &scenario.config;
    let v = downlink_rate(&config.radio);
    let n = decision.ones();
    let u = (n > 0).then(|| uplink_rate_inversion(n, &config.radio));

    scenario
        .users
        .iter()
        .zip(decision.bits())
        .map(|(user, &a)| {
            let (p_up, p_down) = inversion_powers(user.channel_gain, &config.fading, &config.radio)
                .expect("scenario invariant: gains are above the deep-fading cutoff");
            if a {
                config.server_energy_per_cycle * user.cpu_cycles
                    + p_up * user.local_bits / u.expect("offloader implies n > 0")
                    + p_down * user.output_bits / v
            } else {
                user.energy_per_cycle * user.cpu_cycles + p_down * user.server_bits / v
            }
        })
        .collect()
}

/// Full per-user and aggregate cost of one decision.
pub fn cost_breakdown(scenario: &Scenario, decision: &DecisionVector) -> CostBreakdown {
    let v = downlink_rate(&scenario.config.radio);
    let n = decision.ones();
    let uplink_time = if n == 0 {
        0.0
    } else {
        let u = uplink_rate_inversion(n, &scenario.config.radio);
        scenario
            .users
            .iter()
            .zip(decision.bits())
            .filter(|(_, &a)| a)
            .map(|(user, _)| user.local_bits)
            .fold(f64::NEG_INFINITY, f64::max)
            / u
    };
    let per_user_downlink_time: Vec<f64> = scenario
        .users
        .iter()
        .zip(decision.bits())
        .map(|(user, &a)| if a { user.output_bits } else { user.server_bits } / v)
        .collect();
    let per_user_energy = per_user_energy(scenario, decision);
    CostBreakdown {
        total_energy: per_user_energy.iter().sum(),
        total_time: uplink_time + per_user_downlink_time.iter().sum::<f64>(),
        uplink_time,
        per_user_energy,
        per_user_downlink_time,
    }
}

/// Extract the affine cost coefficients at offloader count `n` (`1..=K`).
///
/// The energy identity `base_energy + energy_delta . a == total_energy` is
/// exact for every decision with `n` ones. The time identity
/// `base_time + time_delta . a == total_time` holds when the offloading set
/// contains the user with the globally largest local data size and is an
/// upper bound otherwise (`base_time` uses the all-users maximum).
pub fn linearize(scenario: &Scenario, n: usize) -> Result<LinearCoefficients> {
    let k = scenario.user_count();
    if n < 1 || n > k {
        return Err(Error::CardinalityOutOfRange { n, k });
    }
    let config = &scenario.config;
    let u = uplink_rate_inversion(n, &config.radio);
    let v = downlink_rate(&config.radio);
    let g0 = config.server_energy_per_cycle;
    let p_bs = config.radio.bs_rx_power();
    let p_user = config.radio.user_rx_power();

    let mut base_energy = 0.0;
    let mut energy_delta = Vec::with_capacity(k);
    let mut server_bits_time = 0.0;
    let mut time_delta = Vec::with_capacity(k);
    let mut max_local = f64::NEG_INFINITY;

    for user in &scenario.users {
        let beta = user.channel_gain;
        base_energy +=
            user.energy_per_cycle * user.cpu_cycles + p_user * user.server_bits / (beta * v);
        energy_delta.push(
            (g0 - user.energy_per_cycle) * user.cpu_cycles
                + p_bs * user.local_bits / (beta * u)
                + p_user * (user.output_bits - user.server_bits) / (beta * v),
        );
        server_bits_time += user.server_bits / v;
        time_delta.push((user.output_bits - user.server_bits) / v);
        max_local = max_local.max(user.local_bits);
    }

    Ok(LinearCoefficients {
        base_energy,
        energy_delta,
        base_time: max_local / u + server_bits_time,
        time_delta,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::{FadingParams, RadioParams};
    use crate::scenario::{SystemConfig, UserTask};
    use proptest::prelude::*;

    fn config36(tau: f64) -> SystemConfig {
        SystemConfig::new(
            RadioParams::from_snr(3.0, 6.0).unwrap(),
            FadingParams::default(),
            1.0,
            tau,
            None,
        )
        .unwrap()
    }

    fn user(l: f64, b: f64, c: f64, y: f64, g: f64, beta: f64) -> UserTask {
        UserTask {
            local_bits: l,
            server_bits: b,
            cpu_cycles: c,
            output_bits: y,
            energy_per_cycle: g,
            channel_gain: beta,
        }
    }

    fn dot_selected(values: &[f64], bits: &[bool]) -> f64 {
        values
            .iter()
            .zip(bits)
            .filter(|(_, &a)| a)
            .map(|(&v, _)| v)
            .sum()
    }

    #[test]
    fn all_local_time_is_download_floor() {
        // K = 10, B_k = 10 each, v = log2(7): 100 / log2(7)
        let users: Vec<UserTask> = (0..10).map(|_| user(2.0, 10.0, 1.0, 1.2, 0.5, 1.0)).collect();
        let s = Scenario::new(config36(100.0), users).unwrap();
        let t = total_time(&s, &DecisionVector::all_local(10));
        assert!((t - 35.620718710802215).abs() < 1e-12, "{t}");
    }

    #[test]
    fn two_user_all_offload_time() {
        let users = vec![
            user(2.0, 1.0, 1.0, 0.3, 0.5, 1.0),
            user(4.0, 1.0, 1.0, 0.5, 0.5, 1.0),
        ];
        let s = Scenario::new(config36(100.0), users).unwrap();
        let t = total_time(&s, &DecisionVector::all_offload(2));
        // T_up = 4/u(2), downlink = (0.3 + 0.5)/v
        assert!((t - 5.239416253073085).abs() < 1e-12, "{t}");
    }

    #[test]
    fn single_user_offload_energy() {
        let s = Scenario::new(config36(100.0), vec![user(2.0, 0.0, 1.0, 0.2, 0.5, 1.0)]).unwrap();
        let e = total_energy(&s, &DecisionVector::all_offload(1));
        assert!((e - 4.427448624529626).abs() < 1e-12, "{e}");
    }

    #[test]
    fn local_user_without_server_data_pays_only_compute() {
        let s = Scenario::new(config36(100.0), vec![user(2.0, 0.0, 1.0, 0.2, 0.5, 1.0)]).unwrap();
        let e = total_energy(&s, &DecisionVector::all_local(1));
        assert!((e - 0.5).abs() < 1e-15, "{e}");
    }

    #[test]
    fn all_local_energy_matches_base_energy() {
        let users = vec![
            user(2.0, 1.5, 1.0, 0.35, 0.5, 1.0),
            user(4.0, 0.5, 2.0, 0.45, 3.0, 0.7),
            user(1.0, 3.0, 0.5, 0.4, 7.0, 1.4),
        ];
        let s = Scenario::new(config36(100.0), users).unwrap();
        let e0 = linearize(&s, 1).unwrap().base_energy;
        let e = total_energy(&s, &DecisionVector::all_local(3));
        assert!(((e - e0) / e0).abs() < 1e-12, "{e} vs {e0}");
    }

    #[test]
    fn linearize_rejects_out_of_range() {
        let s = Scenario::new(config36(10.0), vec![user(1.0, 1.0, 1.0, 0.2, 0.5, 1.0)]).unwrap();
        assert!(matches!(
            linearize(&s, 0),
            Err(Error::CardinalityOutOfRange { .. })
        ));
        assert!(matches!(
            linearize(&s, 2),
            Err(Error::CardinalityOutOfRange { .. })
        ));
    }

    #[test]
    fn offloading_delta_can_be_negative() {
        // g > g0, Y < B, good channel: offloading saves energy
        let users = vec![
            user(0.5, 6.0, 1.0, 0.6, 9.0, 2.0),
            user(1.0, 1.0, 1.0, 0.2, 0.5, 1.0),
        ];
        let s = Scenario::new(config36(10.0), users).unwrap();
        let lin = linearize(&s, 1).unwrap();
        assert!(lin.energy_delta[0] < 0.0, "{:?}", lin.energy_delta);
    }

    #[test]
    fn equal_sizes_give_zero_time_delta() {
        let users = vec![user(1.0, 0.7, 1.0, 0.7, 0.5, 1.0)];
        let s = Scenario::new(config36(10.0), users).unwrap();
        let lin = linearize(&s, 1).unwrap();
        assert_eq!(lin.time_delta[0], 0.0);
    }

    #[test]
    fn breakdown_sums_are_consistent() {
        let users = vec![
            user(2.0, 1.5, 1.0, 0.35, 0.5, 1.0),
            user(4.0, 0.5, 2.0, 0.45, 3.0, 0.7),
            user(1.0, 3.0, 0.5, 0.4, 7.0, 1.4),
        ];
        let s = Scenario::new(config36(100.0), users).unwrap();
        for bits in [
            vec![false, false, false],
            vec![true, false, true],
            vec![true, true, true],
        ] {
            let d = DecisionVector::from_bits(bits);
            let b = cost_breakdown(&s, &d);
            let esum: f64 = b.per_user_energy.iter().sum();
            let tsum: f64 = b.uplink_time + b.per_user_downlink_time.iter().sum::<f64>();
            assert!(((b.total_energy - esum) / esum.max(1e-300)).abs() < 1e-9);
            assert!(((b.total_time - tsum) / tsum.max(1e-300)).abs() < 1e-9);
            assert_eq!(b.total_energy, total_energy(&s, &d));
            assert_eq!(b.total_time, total_time(&s, &d));
        }
    }

    // ---- property tests -------------------------------------------------

    prop_compose! {
        fn arb_user()(
            l in 0.01f64..8.0,
            b in 0.0f64..8.0,
            c in 0.0f64..4.0,
            y_scale in 0.0f64..1.5,
            g in 0.0f64..10.0,
            beta in 0.05f64..3.0,
        ) -> UserTask {
            user(l, b, c, y_scale * (l + b), g, beta)
        }
    }

    prop_compose! {
        fn arb_scenario()(
            users in proptest::collection::vec(arb_user(), 1..9),
        ) -> Scenario {
            Scenario::new(config36(50.0), users).unwrap()
        }
    }

    fn arb_decision(k: usize) -> impl Strategy<Value = DecisionVector> {
        proptest::collection::vec(proptest::bool::ANY, k).prop_map(DecisionVector::from_bits)
    }

    proptest! {
        // Energy decomposes exactly (up to rounding) for every decision.
        #[test]
        fn energy_decomposition_identity(s in arb_scenario(), seed in 0u64..4096) {
            let k = s.user_count();
            let mut rng = crate::rng::seeded_rng(seed);
            let bits: Vec<bool> = (0..k).map(|_| rand::Rng::gen_bool(&mut rng, 0.5)).collect();
            let d = DecisionVector::from_bits(bits);
            prop_assume!(d.ones() >= 1);
            let lin = linearize(&s, d.ones()).unwrap();
            let affine = lin.base_energy + dot_selected(&lin.energy_delta, d.bits());
            let literal = total_energy(&s, &d);
            prop_assert!(((affine - literal) / literal).abs() < 1e-9,
                "affine {affine} literal {literal}");
        }

        // Time decomposes exactly when the offloading set contains the
        // globally largest local size, and upper-bounds otherwise.
        #[test]
        fn time_decomposition_branches(s in arb_scenario(), seed in 0u64..4096) {
            let k = s.user_count();
            let mut rng = crate::rng::seeded_rng(seed);
            let bits: Vec<bool> = (0..k).map(|_| rand::Rng::gen_bool(&mut rng, 0.5)).collect();
            let d = DecisionVector::from_bits(bits);
            prop_assume!(d.ones() >= 1);
            let lin = linearize(&s, d.ones()).unwrap();
            let affine = lin.base_time + dot_selected(&lin.time_delta, d.bits());
            let literal = total_time(&s, &d);
            let argmax = s.users.iter().enumerate()
                .max_by(|(_, a), (_, b)| a.local_bits.total_cmp(&b.local_bits))
                .map(|(i, _)| i)
                .unwrap();
            if d.is_offloading(argmax) {
                prop_assert!(((affine - literal) / literal).abs() < 1e-9,
                    "affine {affine} literal {literal}");
            } else {
                prop_assert!(affine >= literal - 1e-9 * literal.abs(),
                    "affine {affine} below literal {literal}");
            }
        }

        // Conventional offloading (no server data): adding offloaders never
        // shortens the schedule, and every time delta is nonnegative.
        #[test]
        fn no_server_data_time_monotone(
            mut s in arb_scenario(),
            seed in 0u64..4096,
        ) {
            for u in &mut s.users {
                u.server_bits = 0.0;
            }
            let k = s.user_count();
            let lin = linearize(&s, 1).unwrap();
            for &dk in &lin.time_delta {
                prop_assert!(dk >= 0.0);
            }
            let mut rng = crate::rng::seeded_rng(seed);
            let bits: Vec<bool> = (0..k).map(|_| rand::Rng::gen_bool(&mut rng, 0.5)).collect();
            let d = DecisionVector::from_bits(bits.clone());
            if let Some(local_user) = bits.iter().position(|&a| !a) {
                let mut grown = bits;
                grown[local_user] = true;
                let d2 = DecisionVector::from_bits(grown);
                prop_assert!(total_time(&s, &d2) >= total_time(&s, &d) - 1e-12);
            }
        }

        // Permuting users together with the decision leaves both totals
        // unchanged up to rounding.
        #[test]
        fn permutation_invariance(s in arb_scenario(), seed in 0u64..4096) {
            let k = s.user_count();
            let mut rng = crate::rng::seeded_rng(seed);
            let bits: Vec<bool> = (0..k).map(|_| rand::Rng::gen_bool(&mut rng, 0.5)).collect();
            let d = DecisionVector::from_bits(bits.clone());

            // simple deterministic shuffle
            let mut order: Vec<usize> = (0..k).collect();
            for i in (1..k).rev() {
                let j = (rand::Rng::gen::<u64>(&mut rng) % (i as u64 + 1)) as usize;
                order.swap(i, j);
            }
            let users: Vec<UserTask> = order.iter().map(|&i| s.users[i]).collect();
            let perm_bits: Vec<bool> = order.iter().map(|&i| bits[i]).collect();
            let s2 = Scenario::new(s.config, users).unwrap();
            let d2 = DecisionVector::from_bits(perm_bits);

            let (e1, e2) = (total_energy(&s, &d), total_energy(&s2, &d2));
            let (t1, t2) = (total_time(&s, &d), total_time(&s2, &d2));
            prop_assert!(((e1 - e2) / e1.max(1e-300)).abs() < 1e-12);
            if t1 > 0.0 {
                prop_assert!(((t1 - t2) / t1).abs() < 1e-12);
            } else {
                prop_assert_eq!(t1, t2);
            }
        }
    }
}
