//! Per-user task data, system configuration, and scenario sampling.
//!
//! A [`Scenario`] (one [`SystemConfig`] plus `K` [`UserTask`]s) is the unit
//! of optimization. Scenarios are either sampled from a
//! [`ScenarioDistribution`] or loaded from the JSON format documented in
//! `docs/formats.md`.
//!
//! Data sizes are in bits normalized by the bandwidth (bits per Hz); CPU
//! cycle counts and energy rates carry their natural units.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::channel::{FadingParams, RadioParams};
use crate::error::Error;
use crate::rng::{exp_inv_cdf, uniform};
use crate::Result;

/// One user's task: data sizes, compute demand, energy rate, channel gain.
///
/// The task output size is stored rather than derived, so hand-constructed
/// scenarios may set it independently of any output-size map; nothing
/// downstream assumes a functional relation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct UserTask {
    /// Local data size `L` (bits/Hz), stored at the user.
    #[serde(rename = "L")]
    pub local_bits: f64,
    /// Server data size `B` (bits/Hz), stored at the base station.
    #[serde(rename = "B")]
    pub server_bits: f64,
    /// CPU cycles `C` to complete the task.
    #[serde(rename = "C")]
    pub cpu_cycles: f64,
    /// Task output size `Y` (bits/Hz).
    #[serde(rename = "Y")]
    pub output_bits: f64,
    /// User energy per CPU cycle `g` (J/cycle).
    #[serde(rename = "g")]
    pub energy_per_cycle: f64,
    /// Channel power gain.
    #[serde(rename = "beta")]
    pub channel_gain: f64,
}

impl UserTask {
    /// Aggregated input size `L + B`; derived, never stored.
    pub fn aggregated_bits(&self) -> f64 {
        self.local_bits + self.server_bits
    }

    fn validate(&self, index: usize, min_gain: f64) -> Result<()> {
        let nonneg = [
            ("L", self.local_bits),
            ("B", self.server_bits),
            ("C", self.cpu_cycles),
            ("Y", self.output_bits),
            ("g", self.energy_per_cycle),
        ];
        for (name, value) in nonneg {
            if !(value >= 0.0) || !value.is_finite() {
                return Err(Error::InvalidScenario(format!(
                    "user {index}: {name} must be finite and nonnegative, got {value}"
                )));
            }
        }
        if !(self.channel_gain >= min_gain) {
            return Err(Error::InvalidScenario(format!(
                "user {index}: channel gain {} below the deep-fading cutoff {min_gain}",
                self.channel_gain
            )));
        }
        Ok(())
    }
}

/// Affine map from aggregated input size to task output size.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OutputSizeMap {
    /// Input-independent part of the output (bits/Hz).
    pub constant: f64,
    /// Linear coefficient on the input size.
    pub slope: f64,
}

impl OutputSizeMap {
    pub fn new(constant: f64, slope: f64) -> Result<Self> {
        if !(constant >= 0.0) || !(slope >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "output size map requires nonnegative coefficients, got ({constant}, {slope})"
            )));
        }
        Ok(Self { constant, slope })
    }
}

impl Default for OutputSizeMap {
    /// `Y = 0.1 * (L + B)`.
    fn default() -> Self {
        Self {
            constant: 0.0,
            slope: 0.1,
        }
    }
}

/// Task output size for a given aggregated input size.
pub fn output_size(input_bits: f64, map: &OutputSizeMap) -> f64 {
    debug_assert!(input_bits >= 0.0);
    map.constant + map.slope * input_bits
}

/// System-wide parameters shared by all users.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SystemConfig {
    pub radio: RadioParams,
    pub fading: FadingParams,
    /// Server energy per CPU cycle (J/cycle); normalized to 1 by default.
    pub server_energy_per_cycle: f64,
    /// Total transmission-time budget (normalized seconds).
    pub time_budget: f64,
    /// Optional cap on total server CPU cycles across offloaded tasks.
    pub cpu_cap: Option<f64>,
}

impl SystemConfig {
    pub fn new(
        radio: RadioParams,
        fading: FadingParams,
        server_energy_per_cycle: f64,
        time_budget: f64,
        cpu_cap: Option<f64>,
    ) -> Result<Self> {
        if !(time_budget > 0.0) || !time_budget.is_finite() {
            return Err(Error::NonPositive {
                name: "time_budget",
                value: time_budget,
            });
        }
        if !(server_energy_per_cycle >= 0.0) {
            return Err(Error::InvalidParameter(format!(
                "server energy per cycle must be nonnegative, got {server_energy_per_cycle}"
            )));
        }
        if let Some(cap) = cpu_cap {
            if !(cap > 0.0) {
                return Err(Error::NonPositive {
                    name: "cpu_cap",
                    value: cap,
                });
            }
        }
        Ok(Self {
            radio,
            fading,
            server_energy_per_cycle,
            time_budget,
            cpu_cap,
        })
    }
}

/// A system configuration together with its `K` users.
#[derive(Debug, Clone, PartialEq)]
pub struct Scenario {
    pub config: SystemConfig,
    pub users: Vec<UserTask>,
}

impl Scenario {
    pub fn new(config: SystemConfig, users: Vec<UserTask>) -> Result<Self> {
        if users.is_empty() {
            return Err(Error::InvalidScenario("at least one user required".into()));
        }
        for (i, user) in users.iter().enumerate() {
            user.validate(i, config.fading.min_gain())?;
        }
        Ok(Self { config, users })
    }

    /// Number of users `K`.
    pub fn user_count(&self) -> usize {
        self.users.len()
    }

    /// Serialize to the documented JSON format.
    pub fn to_json(&self) -> String {
        let doc = ScenarioDoc::from(self);
        serde_json::to_string_pretty(&doc).expect("scenario serialization cannot fail")
    }

    /// Parse from the documented JSON format, enforcing all invariants.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ScenarioDoc = serde_json::from_str(text).map_err(|source| Error::Json {
            path: "<inline>".into(),
            source,
        })?;
        doc.try_into()
    }

    pub fn write_file(&self, path: impl AsRef<std::path::Path>) -> Result<()> {
        let path = path.as_ref();
        std::fs::write(path, self.to_json()).map_err(|e| Error::io(path, e))
    }

    pub fn read_file(path: impl AsRef<std::path::Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let doc: ScenarioDoc = serde_json::from_str(&text).map_err(|source| Error::Json {
            path: path.into(),
            source,
        })?;
        doc.try_into()
    }
}

/// On-disk shape of a scenario file. Field names are part of the format.
#[derive(Serialize, Deserialize)]
struct ScenarioDoc {
    config: ConfigDoc,
    users: Vec<UserTask>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigDoc {
    #[serde(rename = "W")]
    bandwidth: f64,
    #[serde(rename = "N0")]
    noise_power: f64,
    #[serde(rename = "P_BS")]
    bs_rx_power: f64,
    #[serde(rename = "P_user")]
    user_rx_power: f64,
    epsilon: f64,
    g0: f64,
    tau: f64,
    cpu_cap: Option<f64>,
}

impl From<&Scenario> for ScenarioDoc {
    fn from(s: &Scenario) -> Self {
        ScenarioDoc {
            config: ConfigDoc {
                bandwidth: s.config.radio.bandwidth(),
                noise_power: s.config.radio.noise_power(),
                bs_rx_power: s.config.radio.bs_rx_power(),
                user_rx_power: s.config.radio.user_rx_power(),
                epsilon: s.config.fading.min_gain(),
                g0: s.config.server_energy_per_cycle,
                tau: s.config.time_budget,
                cpu_cap: s.config.cpu_cap,
            },
            users: s.users.clone(),
        }
    }
}

impl TryFrom<ScenarioDoc> for Scenario {
    type Error = Error;

    fn try_from(doc: ScenarioDoc) -> Result<Self> {
        let radio = RadioParams::new(
            doc.config.bandwidth,
            doc.config.noise_power,
            doc.config.bs_rx_power,
            doc.config.user_rx_power,
        )?;
        let fading = FadingParams::new(doc.config.epsilon)?;
        let config = SystemConfig::new(
            radio,
            fading,
            doc.config.g0,
            doc.config.tau,
            doc.config.cpu_cap,
        )?;
        Scenario::new(config, doc.users)
    }
}

/// Sampling distributions for random scenarios.
///
/// Data sizes and cycle counts are exponential, the user energy rate is
/// uniform on `[0, g_max]`, and the channel gain follows the shifted
/// exponential of [`FadingParams`].
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioDistribution {
    pub user_count: usize,
    pub mean_local_bits: f64,
    pub mean_server_bits: f64,
    pub mean_cpu_cycles: f64,
    /// Upper bound of the uniform user energy rate.
    pub max_energy_per_cycle: f64,
    pub output_map: OutputSizeMap,
    pub fading: FadingParams,
}

impl ScenarioDistribution {
    pub fn validate(&self) -> Result<()> {
        if self.user_count == 0 {
            return Err(Error::InvalidParameter("user_count must be >= 1".into()));
        }
        for (name, value) in [
            ("mean_local_bits", self.mean_local_bits),
            ("mean_server_bits", self.mean_server_bits),
            ("mean_cpu_cycles", self.mean_cpu_cycles),
            ("max_energy_per_cycle", self.max_energy_per_cycle),
        ] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::NonPositive { name, value });
            }
        }
        Ok(())
    }
}

/// Draw one scenario.
///
/// Per user, draws are made in the fixed order `L, B, C, g, beta` (this
/// order is part of the reproducibility contract), and the output size is
/// materialized as `output_map(L + B)`.
pub fn sample_scenario<R: Rng + ?Sized>(
    dist: &ScenarioDistribution,
    config: &SystemConfig,
    rng: &mut R,
) -> Scenario {
    debug_assert!(dist.validate().is_ok());
    let users = (0..dist.user_count)
        .map(|_| {
            let local_bits = exp_inv_cdf(dist.mean_local_bits, rng);
            let server_bits = exp_inv_cdf(dist.mean_server_bits, rng);
            let cpu_cycles = exp_inv_cdf(dist.mean_cpu_cycles, rng);
            let energy_per_cycle = uniform(dist.max_energy_per_cycle, rng);
            let channel_gain = crate::channel::sample_fading(&dist.fading, rng);
            UserTask {
                local_bits,
                server_bits,
                cpu_cycles,
                output_bits: output_size(local_bits + server_bits, &dist.output_map),
                energy_per_cycle,
                channel_gain,
            }
        })
        .collect();
    Scenario {
        config: *config,
        users,
    }
}
