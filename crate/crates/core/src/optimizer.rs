//! Top-level solve: minimize total consumed energy subject to the total
//! transmission-time budget.
//!
//! The search iterates the offloader count `n` from 0 to `K`. The endpoints
//! need no optimization (the decision is forced); each interior `n` becomes
//! one cardinality-constrained binary program built from the affine cost
//! coefficients at that `n`, with budget `tau - base_time(n)`. The best
//! per-`n` energy wins, ties broken toward fewer offloaders (less uplink
//! interference).
//!
//! The affine time model is conservative: it charges the uplink phase for
//! the largest local data size over *all* users, so a decision it accepts is
//! always feasible under the literal clock, and every candidate is
//! re-verified against the literal [`total_time`] before being reported.
//! The price is that a decision that is literally feasible only because the
//! largest-`L` user stays local can be missed; the reported
//! `linearization_gap` measures exactly this slack on the returned decision.

use serde::{Deserialize, Serialize};

use crate::bilp::{self, BilpInstance, SideConstraint, SolveStatus};
use crate::cost::{cost_breakdown, linearize, total_energy, total_time, CostBreakdown, DecisionVector};
use crate::scenario::Scenario;

/// Feasibility slack on the time budget and CPU cap, shared with the BILP
/// layer so the two never disagree.
pub const TIME_TOL: f64 = bilp::FEASIBILITY_TOL;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OutcomeStatus {
    Optimal,
    Infeasible,
}

/// Energy and feasibility of the best decision at one offloader count.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NCandidate {
    pub n: usize,
    /// Minimum energy with exactly `n` offloaders; `+inf` when no decision
    /// of that size fits the budget.
    pub energy: f64,
    pub feasible: bool,
}

/// Result of [`optimize`].
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolveOutcome {
    pub status: OutcomeStatus,
    pub decision: DecisionVector,
    pub n_star: usize,
    /// Minimized total energy; `+inf` when infeasible.
    pub energy: f64,
    /// Literal total transmission time of the returned decision. When
    /// infeasible, the smallest achievable total time instead (the budget
    /// any feasible schedule would need).
    pub time: f64,
    pub breakdown: CostBreakdown,
    /// The per-`n` table the winner was selected from.
    pub per_n: Vec<NCandidate>,
    /// Slack of the affine time model on the returned decision:
    /// `(max_all L - max_offloaders L) / u(n)`; zero when the offloading set
    /// contains the largest local data size (or is empty).
    pub linearization_gap: f64,
    /// Present exactly when infeasible: same value as `time`.
    pub min_feasible_time: Option<f64>,
}

struct Candidate {
    n: usize,
    energy: f64,
    decision: Option<DecisionVector>,
}

/// Best decision of exactly `n` offloaders under the affine time model,
/// re-verified against the literal clock.
fn candidate_for_n(scenario: &Scenario, n: usize) -> Candidate {
    let k = scenario.user_count();
    let tau = scenario.config.time_budget;

    let literal_candidate = |decision: DecisionVector| -> Candidate {
        let time = total_time(scenario, &decision);
        let cap_ok = match scenario.config.cpu_cap {
            Some(cap) => offloaded_cycles(scenario, &decision) <= cap + TIME_TOL,
            None => true,
        };
        if time <= tau + TIME_TOL && cap_ok {
            Candidate {
                n,
                energy: total_energy(scenario, &decision),
                decision: Some(decision),
            }
        } else {
            Candidate {
                n,
                energy: f64::INFINITY,
                decision: None,
            }
        }
    };

    if n == 0 {
        return literal_candidate(DecisionVector::all_local(k));
    }
    if n == k {
        return literal_candidate(DecisionVector::all_offload(k));
    }

    let lin = linearize(scenario, n).expect("1 <= n <= K");
    let instance = BilpInstance {
        costs: lin.energy_delta,
        weights: lin.time_delta,
        budget: tau - lin.base_time,
        cardinality: n,
        extra: scenario.config.cpu_cap.map(|cap| SideConstraint {
            weights: scenario.users.iter().map(|u| u.cpu_cycles).collect(),
            cap,
        }),
    };
    let sol = bilp::solve(&instance);
    if sol.status != SolveStatus::Optimal {
        return Candidate {
            n,
            energy: f64::INFINITY,
            decision: None,
        };
    }
    let decision = DecisionVector::from_bits(sol.decision);
    // The affine model upper-bounds the literal clock, so this re-check can
    // only fail on pathological float boundaries; treat that as infeasible
    // rather than ever reporting a decision that misses the budget.
    if total_time(scenario, &decision) > tau + TIME_TOL {
        return Candidate {
            n,
            energy: f64::INFINITY,
            decision: None,
        };
    }
    Candidate {
        n,
        energy: lin.base_energy + sol.objective,
        decision: Some(decision),
    }
}

fn offloaded_cycles(scenario: &Scenario, decision: &DecisionVector) -> f64 {
    scenario
        .users
        .iter()
        .zip(decision.bits())
        .filter(|(_, &a)| a)
        .map(|(u, _)| u.cpu_cycles)
        .sum()
}

fn linearization_gap(scenario: &Scenario, decision: &DecisionVector) -> f64 {
    let n = decision.ones();
    if n == 0 {
        return 0.0;
    }
    let max_all = scenario
        .users
        .iter()
        .map(|u| u.local_bits)
        .fold(f64::NEG_INFINITY, f64::max);
    let max_offloading = scenario
        .users
        .iter()
        .zip(decision.bits())
        .filter(|(_, &a)| a)
        .map(|(u, _)| u.local_bits)
        .fold(f64::NEG_INFINITY, f64::max);
    (max_all - max_offloading) / crate::channel::uplink_rate_inversion(n, &scenario.config.radio)
}

/// Solve the full problem: evaluate every offloader count and keep the best.
pub fn optimize(scenario: &Scenario) -> SolveOutcome {
    optimize_capped(scenario, None)
}

/// [`optimize`] with an optional cap on the offloader count (for example the
/// mean-level bound from [`crate::analysis::max_offloading_users`]). The cap
/// truncates the search; it can exclude the true optimum on individual
/// realizations, which is the caller's trade-off to make.
pub fn optimize_capped(scenario: &Scenario, max_offloaders: Option<usize>) -> SolveOutcome {
    let k = scenario.user_count();
    let n_max = max_offloaders.unwrap_or(k).min(k);

    let mut per_n = Vec::with_capacity(n_max + 1);
    let mut best: Option<Candidate> = None;
    for n in 0..=n_max {
        let candidate = candidate_for_n(scenario, n);
        per_n.push(NCandidate {
            n,
            energy: candidate.energy,
            feasible: candidate.decision.is_some(),
        });
        let improves = match &best {
            None => candidate.decision.is_some(),
            // strict: ties resolve to the smaller n seen first
            Some(incumbent) => candidate.energy < incumbent.energy,
        };
        if improves {
            best = Some(candidate);
        }
    }

    match best {
        Some(winner) => {
            let decision = winner.decision.expect("feasible winner carries a decision");
            let breakdown = cost_breakdown(scenario, &decision);
            let time = breakdown.total_time;
            let gap = linearization_gap(scenario, &decision);
            SolveOutcome {
                status: OutcomeStatus::Optimal,
                n_star: winner.n,
                energy: winner.energy,
                time,
                breakdown,
                per_n,
                linearization_gap: gap,
                min_feasible_time: None,
                decision,
            }
        }
        None => {
            let decision = DecisionVector::all_local(k);
            let breakdown = cost_breakdown(scenario, &decision);
            let floor = min_feasible_tau(scenario);
            SolveOutcome {
                status: OutcomeStatus::Infeasible,
                n_star: 0,
                energy: f64::INFINITY,
                time: floor,
                breakdown,
                per_n,
                linearization_gap: 0.0,
                min_feasible_time: Some(floor),
                decision,
            }
        }
    }
}

/// Smallest time budget for which [`optimize`] would return a feasible
/// decision.
///
/// Reuses the per-`n` machinery with the schedule length as the objective:
/// interior counts minimize the affine time model (the feasibility test
/// [`optimize`] itself applies), the endpoints use the literal clock.
pub fn min_feasible_tau(scenario: &Scenario) -> f64 {
    let k = scenario.user_count();
    let cap_ok = |decision: &DecisionVector| match scenario.config.cpu_cap {
        Some(cap) => offloaded_cycles(scenario, decision) <= cap + TIME_TOL,
        None => true,
    };

    let mut best = f64::INFINITY;
    let all_local = DecisionVector::all_local(k);
    if cap_ok(&all_local) {
        best = total_time(scenario, &all_local);
    }
    let all_offload = DecisionVector::all_offload(k);
    if cap_ok(&all_offload) {
        best = best.min(total_time(scenario, &all_offload));
    }

    for n in 1..k {
        let lin = linearize(scenario, n).expect("1 <= n < K");
        let instance = BilpInstance {
            costs: lin.time_delta,
            weights: vec![0.0; k],
            budget: 0.0,
            cardinality: n,
            extra: scenario.config.cpu_cap.map(|cap| SideConstraint {
                weights: scenario.users.iter().map(|u| u.cpu_cycles).collect(),
                cap,
            }),
        };
        let sol = bilp::solve(&instance);
        if sol.status == SolveStatus::Optimal {
            best = best.min(lin.base_time + sol.objective);
        }
    }
    best
}
