//! Deterministic Monte Carlo parameter sweeps.
//!
//! A sweep fixes a base configuration, varies one parameter over a grid, and
//! runs `trials` independent scenarios per grid value. Each trial's RNG seed
//! derives from `(base seed, value index, trial index)` alone
//! ([`crate::rng::trial_seed`]), so results are byte-identical regardless of
//! worker count or scheduling; aggregation is a fold in trial order.
//!
//! Infeasible trials are recorded with a `+inf` energy sentinel and excluded
//! from `mean_energy`/`mean_n`, with the exclusion visible through
//! `feasible_trials`; dropping them silently would bias tight-budget grids.
//!
//! Numbers in rows and aggregates are canonicalized to 12 significant
//! decimal digits (the emitted precision) at construction, so re-reading an
//! emitted file and re-aggregating reproduces the aggregate file exactly.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::channel::RadioParams;
use crate::error::Error;
use crate::optimizer::{optimize, OutcomeStatus};
use crate::rng::{seeded_rng, trial_seed};
use crate::scenario::{sample_scenario, ScenarioDistribution, SystemConfig};
use crate::Result;

/// The parameter a sweep varies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum SweptParam {
    #[serde(rename = "mean_b")]
    MeanServerBits,
    #[serde(rename = "tau")]
    TimeBudget,
    #[serde(rename = "mean_l")]
    MeanLocalBits,
    #[serde(rename = "gamma_bs")]
    UplinkSnr,
    #[serde(rename = "gamma_user")]
    DownlinkSnr,
    #[serde(rename = "k")]
    UserCount,
}

impl SweptParam {
    pub fn name(self) -> &'static str {
        match self {
            SweptParam::MeanServerBits => "mean_b",
            SweptParam::TimeBudget => "tau",
            SweptParam::MeanLocalBits => "mean_l",
            SweptParam::UplinkSnr => "gamma_bs",
            SweptParam::DownlinkSnr => "gamma_user",
            SweptParam::UserCount => "k",
        }
    }

    pub fn parse(name: &str) -> Result<Self> {
        Ok(match name {
            "mean_b" => SweptParam::MeanServerBits,
            "tau" => SweptParam::TimeBudget,
            "mean_l" => SweptParam::MeanLocalBits,
            "gamma_bs" => SweptParam::UplinkSnr,
            "gamma_user" => SweptParam::DownlinkSnr,
            "k" => SweptParam::UserCount,
            other => {
                return Err(Error::InvalidParameter(format!(
                    "unknown sweep parameter {other:?} \
                     (expected mean_b, tau, mean_l, gamma_bs, gamma_user, or k)"
                )))
            }
        })
    }
}

/// Full description of one sweep.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepSpec {
    pub dist: ScenarioDistribution,
    pub config: SystemConfig,
    pub param: SweptParam,
    pub values: Vec<f64>,
    pub trials: usize,
    pub seed: u64,
}

/// One optimizer run at one grid value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TrialRow {
    pub value: f64,
    pub trial: usize,
    pub seed: u64,
    pub n_star: usize,
    /// `+inf` when the trial was infeasible.
    #[serde(with = "inf_as_null")]
    pub total_energy: f64,
    pub total_time: f64,
    pub feasible: bool,
    pub linearization_gap: f64,
}

/// Per-grid-value summary.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValueAggregate {
    pub value: f64,
    pub trials: usize,
    pub feasible_trials: usize,
    /// Mean over feasible trials; `+inf` when none were feasible.
    #[serde(with = "inf_as_null")]
    pub mean_energy: f64,
    /// Mean offloader count over feasible trials; 0 when none were feasible.
    pub mean_n: f64,
    pub feasibility_rate: f64,
    /// Counts of `n_star` over 0..=k_max across *all* trials (infeasible
    /// trials land in bin 0); sums to `trials`.
    pub histogram: Vec<u64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub param: String,
    /// Histogram width: the largest user count that occurs in the sweep.
    pub max_user_count: usize,
    pub rows: Vec<TrialRow>,
    pub aggregates: Vec<ValueAggregate>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EmitFormat {
    Csv,
    Json,
}

// ---------------------------------------------------------------------------
// number formatting

/// Render with 12 significant decimal digits; `inf` spelled so that
/// `f64::from_str` round-trips it.
pub fn format_number(x: f64) -> String {
    if x.is_finite() {
        format!("{:.11e}", x)
    } else if x == f64::INFINITY {
        "inf".to_string()
    } else if x == f64::NEG_INFINITY {
        "-inf".to_string()
    } else {
        "nan".to_string()
    }
}

/// Snap to the emitted 12-digit grid, so in-memory values equal their
/// parsed-back file representation bit-for-bit.
fn canonical(x: f64) -> f64 {
    if x.is_finite() {
        format_number(x).parse().expect("formatter output parses")
    } else {
        x
    }
}

// ---------------------------------------------------------------------------
// sweep execution

fn apply_param(
    dist: &ScenarioDistribution,
    config: &SystemConfig,
    param: SweptParam,
    value: f64,
) -> Result<(ScenarioDistribution, SystemConfig)> {
    let mut dist = dist.clone();
    let mut config = *config;
    match param {
        SweptParam::MeanServerBits => dist.mean_server_bits = value,
        SweptParam::MeanLocalBits => dist.mean_local_bits = value,
        SweptParam::TimeBudget => {
            if !(value > 0.0) {
                return Err(Error::NonPositive {
                    name: "tau",
                    value,
                });
            }
            config.time_budget = value;
        }
        SweptParam::UplinkSnr => {
            let r = &config.radio;
            config.radio =
                RadioParams::new(r.bandwidth(), r.noise_power(), value * r.noise_power(), r.user_rx_power())?;
        }
        SweptParam::DownlinkSnr => {
            let r = &config.radio;
            config.radio =
                RadioParams::new(r.bandwidth(), r.noise_power(), r.bs_rx_power(), value * r.noise_power())?;
        }
        SweptParam::UserCount => {
            if !(value >= 1.0) || (value - value.round()).abs() > 1e-9 {
                return Err(Error::InvalidParameter(format!(
                    "user count grid values must be positive integers, got {value}"
                )));
            }
            dist.user_count = value.round() as usize;
        }
    }
    dist.validate()?;
    Ok((dist, config))
}

fn run_trial(
    dist: &ScenarioDistribution,
    config: &SystemConfig,
    value: f64,
    trial: usize,
    seed: u64,
) -> TrialRow {
    let mut rng = seeded_rng(seed);
    let scenario = sample_scenario(dist, config, &mut rng);
    let outcome = optimize(&scenario);
    let feasible = outcome.status == OutcomeStatus::Optimal;
    TrialRow {
        value: canonical(value),
        trial,
        seed,
        n_star: outcome.n_star,
        total_energy: canonical(outcome.energy),
        total_time: canonical(outcome.time),
        feasible,
        linearization_gap: canonical(outcome.linearization_gap),
    }
}

/// Run every `(value, trial)` cell on a bounded worker pool and fold the
/// results in trial order.
pub fn run_sweep(spec: &SweepSpec, workers: usize) -> Result<SweepResult> {
    spec.dist.validate()?;
    if spec.values.is_empty() {
        return Err(Error::InvalidParameter("sweep grid must be nonempty".into()));
    }
    if spec.trials == 0 {
        return Err(Error::InvalidParameter("trials must be >= 1".into()));
    }
    if workers == 0 {
        return Err(Error::InvalidParameter("workers must be >= 1".into()));
    }

    // Fail fast on any bad grid value before spawning work.
    let mut per_value = Vec::with_capacity(spec.values.len());
    let mut max_user_count = 0usize;
    for &value in &spec.values {
        let applied = apply_param(&spec.dist, &spec.config, spec.param, value)?;
        max_user_count = max_user_count.max(applied.0.user_count);
        per_value.push((value, applied));
    }

    let jobs: Vec<(usize, usize)> = (0..spec.values.len())
        .flat_map(|vi| (0..spec.trials).map(move |ti| (vi, ti)))
        .collect();

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("worker pool: {e}")))?;
    let rows: Vec<TrialRow> = pool.install(|| {
        jobs.par_iter()
            .map(|&(vi, ti)| {
                let (value, (dist, config)) = &per_value[vi];
                run_trial(dist, config, *value, ti, trial_seed(spec.seed, vi, ti))
            })
            .collect()
    });

    let aggregates = aggregate_rows(&rows, max_user_count);
    Ok(SweepResult {
        param: spec.param.name().to_string(),
        max_user_count,
        rows,
        aggregates,
    })
}

/// Fold rows into per-value aggregates. Groups start wherever the trial
/// index resets to zero, which matches both fresh results and files read
/// back from disk.
pub fn aggregate_rows(rows: &[TrialRow], max_user_count: usize) -> Vec<ValueAggregate> {
    let mut aggregates = Vec::new();
    let mut start = 0usize;
    for i in 0..=rows.len() {
        let boundary = i == rows.len() || (i > start && rows[i].trial == 0);
        if !boundary {
            continue;
        }
        if i > start {
            aggregates.push(aggregate_group(&rows[start..i], max_user_count));
        }
        start = i;
    }
    aggregates
}

fn aggregate_group(rows: &[TrialRow], max_user_count: usize) -> ValueAggregate {
    let trials = rows.len();
    let mut feasible_trials = 0usize;
    let mut energy_sum = 0.0;
    let mut n_sum = 0.0;
    let mut histogram = vec![0u64; max_user_count + 1];
    for row in rows {
        histogram[row.n_star] += 1;
        if row.feasible {
            feasible_trials += 1;
            energy_sum += row.total_energy;
            n_sum += row.n_star as f64;
        }
    }
    let (mean_energy, mean_n) = if feasible_trials > 0 {
        (
            canonical(energy_sum / feasible_trials as f64),
            canonical(n_sum / feasible_trials as f64),
        )
    } else {
        (f64::INFINITY, 0.0)
    };
    ValueAggregate {
        value: rows[0].value,
        trials,
        feasible_trials,
        mean_energy,
        mean_n,
        feasibility_rate: canonical(feasible_trials as f64 / trials as f64),
        histogram,
    }
}

// ---------------------------------------------------------------------------
// emission and read-back

pub const ROWS_HEADER: &str =
    "param,value,trial,seed,n_star,total_energy,total_time,feasible,linearization_gap";

/// Write the result; returns the paths produced.
///
/// CSV mode writes the row file at `path` plus a companion aggregate file
/// with `_aggregate` appended to the stem (histogram columns `n0..nK`).
/// JSON mode writes a single document. UTF-8, LF line endings.
pub fn emit(result: &SweepResult, format: EmitFormat, path: &Path) -> Result<Vec<PathBuf>> {
    if result.rows.is_empty() {
        return Err(Error::InvalidParameter("refusing to emit an empty sweep".into()));
    }
    match format {
        EmitFormat::Csv => {
            let mut rows_text = String::new();
            rows_text.push_str(ROWS_HEADER);
            rows_text.push('\n');
            for row in &result.rows {
                let _ = writeln!(
                    rows_text,
                    "{},{},{},{},{},{},{},{},{}",
                    result.param,
                    format_number(row.value),
                    row.trial,
                    row.seed,
                    row.n_star,
                    format_number(row.total_energy),
                    format_number(row.total_time),
                    row.feasible,
                    format_number(row.linearization_gap),
                );
            }

            let mut agg_text = String::new();
            agg_text.push_str("param,value,trials,feasible_trials,mean_energy,mean_n,feasibility_rate");
            for n in 0..=result.max_user_count {
                let _ = write!(agg_text, ",n{n}");
            }
            agg_text.push('\n');
            for agg in &result.aggregates {
                let _ = write!(
                    agg_text,
                    "{},{},{},{},{},{},{}",
                    result.param,
                    format_number(agg.value),
                    agg.trials,
                    agg.feasible_trials,
                    format_number(agg.mean_energy),
                    format_number(agg.mean_n),
                    format_number(agg.feasibility_rate),
                );
                for n in 0..=result.max_user_count {
                    let count = agg.histogram.get(n).copied().unwrap_or(0);
                    let _ = write!(agg_text, ",{count}");
                }
                agg_text.push('\n');
            }

            let agg_path = companion_path(path, "_aggregate");
            std::fs::write(path, rows_text).map_err(|e| Error::io(path, e))?;
            std::fs::write(&agg_path, agg_text).map_err(|e| Error::io(&agg_path, e))?;
            Ok(vec![path.to_path_buf(), agg_path])
        }
        EmitFormat::Json => {
            let text =
                serde_json::to_string_pretty(result).expect("sweep serialization cannot fail");
            std::fs::write(path, text).map_err(|e| Error::io(path, e))?;
            Ok(vec![path.to_path_buf()])
        }
    }
}

fn companion_path(path: &Path, suffix: &str) -> PathBuf {
    let stem = path.file_stem().unwrap_or_default().to_string_lossy();
    let ext = path.extension().map(|e| e.to_string_lossy().into_owned());
    let name = match ext {
        Some(ext) => format!("{stem}{suffix}.{ext}"),
        None => format!("{stem}{suffix}"),
    };
    path.with_file_name(name)
}

/// Read back a row CSV written by [`emit`]; returns the parameter name and
/// the rows.
pub fn read_rows_csv(path: &Path) -> Result<(String, Vec<TrialRow>)> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut lines = text.lines().enumerate();
    match lines.next() {
        Some((_, header)) if header == ROWS_HEADER => {}
        _ => {
            return Err(Error::Parse {
                path: path.into(),
                line: 1,
                message: format!("expected header {ROWS_HEADER:?}"),
            })
        }
    }

    let mut param = String::new();
    let mut rows = Vec::new();
    for (idx, line) in lines {
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != 9 {
            return Err(Error::Parse {
                path: path.into(),
                line: idx + 1,
                message: format!("expected 9 fields, got {}", fields.len()),
            });
        }
        let parse_err = |message: String| Error::Parse {
            path: path.into(),
            line: idx + 1,
            message,
        };
        if param.is_empty() {
            param = fields[0].to_string();
        } else if param != fields[0] {
            return Err(parse_err(format!(
                "mixed sweep parameters {param:?} and {:?}",
                fields[0]
            )));
        }
        rows.push(TrialRow {
            value: fields[1]
                .parse()
                .map_err(|e| parse_err(format!("value: {e}")))?,
            trial: fields[2]
                .parse()
                .map_err(|e| parse_err(format!("trial: {e}")))?,
            seed: fields[3]
                .parse()
                .map_err(|e| parse_err(format!("seed: {e}")))?,
            n_star: fields[4]
                .parse()
                .map_err(|e| parse_err(format!("n_star: {e}")))?,
            total_energy: fields[5]
                .parse()
                .map_err(|e| parse_err(format!("total_energy: {e}")))?,
            total_time: fields[6]
                .parse()
                .map_err(|e| parse_err(format!("total_time: {e}")))?,
            feasible: fields[7]
                .parse()
                .map_err(|e| parse_err(format!("feasible: {e}")))?,
            linearization_gap: fields[8]
                .parse()
                .map_err(|e| parse_err(format!("linearization_gap: {e}")))?,
        });
    }
    Ok((param, rows))
}

/// Read back a JSON document written by [`emit`].
pub fn read_json(path: &Path) -> Result<SweepResult> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    serde_json::from_str(&text).map_err(|source| Error::Json {
        path: path.into(),
        source,
    })
}

/// Serialize non-finite energies as `null` (JSON has no infinities).
mod inf_as_null {
    use serde::{Deserialize, Deserializer, Serializer};

    pub fn serialize<S: Serializer>(x: &f64, ser: S) -> std::result::Result<S::Ok, S::Error> {
        if x.is_finite() {
            ser.serialize_some(x)
        } else {
            ser.serialize_none()
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(de: D) -> std::result::Result<f64, D::Error> {
        Ok(Option::<f64>::deserialize(de)?.unwrap_or(f64::INFINITY))
    }
}
