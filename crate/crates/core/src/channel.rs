//! Radio-layer closed forms.
//!
//! Uplink transmissions by offloading users are simultaneous, so each sees
//! the others as interference; the downlink is TDMA and interference-free.
//! Under channel-inversion power control the received power is the same for
//! every user, which collapses the per-user uplink SINR rate to a function
//! `u(n)` of the offloader count alone and makes the downlink rate `v` a
//! single constant.
//!
//! Data sizes elsewhere in the crate are normalized by the bandwidth
//! (bits per Hz), so `bandwidth = 1.0` in all default configurations.

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::rng::exp_inv_cdf;
use crate::Result;

/// Shared radio parameters with cached SNRs.
///
/// The SNR fields are derived from the power fields at construction and are
/// never recomputed afterwards, so `uplink_snr() == bs_rx_power()/noise_power()`
/// holds exactly as stored.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RadioParams {
    bandwidth: f64,
    noise_power: f64,
    bs_rx_power: f64,
    user_rx_power: f64,
    uplink_snr: f64,
    downlink_snr: f64,
}

impl RadioParams {
    /// Construct from bandwidth `W`, noise power `N0`, and the target
    /// received powers at the base station and at a user.
    pub fn new(
        bandwidth: f64,
        noise_power: f64,
        bs_rx_power: f64,
        user_rx_power: f64,
    ) -> Result<Self> {
        for (name, value) in [
            ("bandwidth", bandwidth),
            ("noise_power", noise_power),
            ("bs_rx_power", bs_rx_power),
            ("user_rx_power", user_rx_power),
        ] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::NonPositive { name, value });
            }
        }
        Ok(Self {
            bandwidth,
            noise_power,
            bs_rx_power,
            user_rx_power,
            uplink_snr: bs_rx_power / noise_power,
            downlink_snr: user_rx_power / noise_power,
        })
    }

    /// Construct directly from the two SNRs with `W = 1`, `N0 = 1`
    /// (the normalized-units configuration).
    pub fn from_snr(uplink_snr: f64, downlink_snr: f64) -> Result<Self> {
        Self::new(1.0, 1.0, uplink_snr, downlink_snr)
    }

    pub fn bandwidth(&self) -> f64 {
        self.bandwidth
    }

    pub fn noise_power(&self) -> f64 {
        self.noise_power
    }

    /// Target received power at the base station (uplink).
    pub fn bs_rx_power(&self) -> f64 {
        self.bs_rx_power
    }

    /// Target received power at a user (downlink).
    pub fn user_rx_power(&self) -> f64 {
        self.user_rx_power
    }

    pub fn uplink_snr(&self) -> f64 {
        self.uplink_snr
    }

    pub fn downlink_snr(&self) -> f64 {
        self.downlink_snr
    }
}

/// Shifted-exponential fading model for the channel power gain.
///
/// Gains below `min_gain` would require transmit powers beyond any cap under
/// channel inversion; such users are excluded at the sampling stage, so the
/// support of the distribution starts at `min_gain` (no power truncation is
/// ever applied). The rate is `1/(1 - min_gain)`, which puts the population
/// mean at exactly 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FadingParams {
    min_gain: f64,
    rate: f64,
}

impl FadingParams {
    pub const DEFAULT_MIN_GAIN: f64 = 0.05;

    pub fn new(min_gain: f64) -> Result<Self> {
        if !(min_gain > 0.0 && min_gain < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "fading min_gain must lie in (0, 1), got {min_gain}"
            )));
        }
        Ok(Self {
            min_gain,
            rate: 1.0 / (1.0 - min_gain),
        })
    }

    /// Minimum channel power gain (the deep-fading exclusion cutoff).
    pub fn min_gain(&self) -> f64 {
        self.min_gain
    }

    /// Rate of the shifted exponential.
    pub fn rate(&self) -> f64 {
        self.rate
    }
}

impl Default for FadingParams {
    fn default() -> Self {
        Self::new(Self::DEFAULT_MIN_GAIN).expect("default cutoff is valid")
    }
}

/// Per-user uplink rates for an arbitrary decision vector and arbitrary
/// transmit powers: `W log2(1 + P_k b_k / (sum_{i active, i != k} P_i b_i + N0))`.
///
/// Returns `Some(rate)` for active users and `None` for inactive ones.
pub fn uplink_rate_general(
    active: &[bool],
    powers: &[f64],
    gains: &[f64],
    radio: &RadioParams,
) -> Result<Vec<Option<f64>>> {
    if powers.len() != active.len() {
        return Err(Error::DimensionMismatch {
            expected: active.len(),
            got: powers.len(),
        });
    }
    if gains.len() != active.len() {
        return Err(Error::DimensionMismatch {
            expected: active.len(),
            got: gains.len(),
        });
    }
    for (&p, &b) in powers.iter().zip(gains) {
        if !(p > 0.0) {
            return Err(Error::NonPositive {
                name: "transmit power",
                value: p,
            });
        }
        if !(b > 0.0) {
            return Err(Error::NonPositive {
                name: "channel gain",
                value: b,
            });
        }
    }

    let received: Vec<f64> = powers.iter().zip(gains).map(|(&p, &b)| p * b).collect();
    let active_sum: f64 = active
        .iter()
        .zip(&received)
        .filter(|(&a, _)| a)
        .map(|(_, &r)| r)
        .sum();

    Ok(active
        .iter()
        .zip(&received)
        .map(|(&a, &r)| {
            a.then(|| {
                let interference = active_sum - r;
                radio.bandwidth * (1.0 + r / (interference + radio.noise_power)).log2()
            })
        })
        .collect())
}

/// Common uplink rate `u(n)` of `n` simultaneously transmitting offloading
/// users under channel inversion: `W log2(1 + snr / ((n-1) snr + 1))`.
///
/// `u` is undefined for an empty offloading set; callers special-case `n = 0`.
pub fn uplink_rate_inversion(n: usize, radio: &RadioParams) -> f64 {
    assert!(n >= 1, "uplink rate is undefined for an empty offloading set");
    let snr = radio.uplink_snr;
    radio.bandwidth * (1.0 + snr / ((n - 1) as f64 * snr + 1.0)).log2()
}

/// Downlink rate `v = W log2(1 + snr)`; identical for every user under
/// channel inversion.
pub fn downlink_rate(radio: &RadioParams) -> f64 {
    radio.bandwidth * (1.0 + radio.downlink_snr).log2()
}

/// Channel-inversion transmit powers `(uplink, downlink)` for a user with
/// the given power gain.
///
/// Errors with [`Error::DeepFading`] when the gain is below the exclusion
/// cutoff; such users must never reach the cost model.
pub fn inversion_powers(gain: f64, fading: &FadingParams, radio: &RadioParams) -> Result<(f64, f64)> {
    if !(gain >= fading.min_gain) {
        return Err(Error::DeepFading {
            gain,
            cutoff: fading.min_gain,
        });
    }
    Ok((radio.bs_rx_power / gain, radio.user_rx_power / gain))
}

/// Draw a channel power gain: `min_gain + Exp(rate)`.
///
/// Always at least `min_gain`; the population mean is exactly 1.
pub fn sample_fading<R: Rng + ?Sized>(fading: &FadingParams, rng: &mut R) -> f64 {
    fading.min_gain + exp_inv_cdf(1.0 / fading.rate, rng)
}
