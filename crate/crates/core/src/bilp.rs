//! Exact solver for the cardinality-constrained binary program
//!
//! ```text
//! minimize    costs . a
//! subject to  weights . a <= budget
//!             sum(a) == cardinality
//!             extra.weights . a <= extra.cap     (optional)
//!             a in {0,1}^K
//! ```
//!
//! [`solve`] runs depth-first branch and bound; [`exhaustive_solve`] is the
//! independent enumeration oracle it is tested against. Weights may be
//! negative (a task whose output is smaller than its server data shortens
//! the schedule when offloaded), so no fractional-knapsack shortcut applies;
//! the pruning bound instead solves the continuous relaxation exactly via
//! its Lagrangian dual, which for a box LP with one equality and one
//! inequality is a one-dimensional piecewise-linear concave maximization
//! whose optimum sits at a multiplier where two modified costs cross.
//!
//! Determinism: both solvers break objective ties by the lexicographically
//! smallest decision vector, and all sums that feed reported objectives or
//! feasibility decisions run in user-index order, so the two paths agree
//! bit-for-bit.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::Result;

/// Absolute slack allowed on inequality-constraint satisfaction.
pub const FEASIBILITY_TOL: f64 = 1e-9;

/// Extra internal slack so float drift in incremental bookkeeping can never
/// prune a solution the canonical leaf check would accept.
const PRUNE_SLACK: f64 = 1e-9;

/// Guard for the enumeration oracle.
const EXHAUSTIVE_LIMIT: usize = 25;

/// One instance of the cardinality-constrained binary program.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BilpInstance {
    /// Objective coefficients (J); may be negative.
    pub costs: Vec<f64>,
    /// Budget-constraint coefficients (normalized s); may be negative.
    pub weights: Vec<f64>,
    /// Right-hand side of the weight constraint.
    pub budget: f64,
    /// Required number of selected items.
    pub cardinality: usize,
    /// Optional second inequality (server CPU cap).
    pub extra: Option<SideConstraint>,
}

/// A second `weights . a <= cap` inequality.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SideConstraint {
    pub weights: Vec<f64>,
    pub cap: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SolveStatus {
    Optimal,
    Infeasible,
}

/// Solver output. When infeasible, `decision` is all-zeros and the
/// objective is `+inf`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BilpSolution {
    pub decision: Vec<bool>,
    /// `costs . decision`, excluding any constant offset the caller carries.
    pub objective: f64,
    pub status: SolveStatus,
    /// Search nodes visited (diagnostics only).
    pub nodes_explored: u64,
}

impl BilpSolution {
    fn infeasible(k: usize, nodes: u64) -> Self {
        Self {
            decision: vec![false; k],
            objective: f64::INFINITY,
            status: SolveStatus::Infeasible,
            nodes_explored: nodes,
        }
    }
}

/// Sum of `values[i]` over selected indices, in index order.
///
/// Every reported objective and every accepted-constraint check goes through
/// this, so branch-and-bound and exhaustive enumeration produce identical
/// floating-point results for identical vectors.
fn dot_selected(values: &[f64], bits: &[bool]) -> f64 {
    values
        .iter()
        .zip(bits)
        .filter(|(_, &a)| a)
        .map(|(&v, _)| v)
        .sum()
}

/// `a` strictly before `b` in lexicographic order (false < true).
fn lex_less(a: &[bool], b: &[bool]) -> bool {
    a < b
}

fn leaf_feasible(instance: &BilpInstance, bits: &[bool]) -> bool {
    if dot_selected(&instance.weights, bits) > instance.budget + FEASIBILITY_TOL {
        return false;
    }
    if let Some(extra) = &instance.extra {
        if dot_selected(&extra.weights, bits) > extra.cap + FEASIBILITY_TOL {
            return false;
        }
    }
    true
}

/// Sum of the `n` smallest entries.
fn min_selection_sum(values: &[f64], n: usize) -> f64 {
    debug_assert!(n <= values.len());
    let mut sorted = values.to_vec();
    sorted.sort_unstable_by(f64::total_cmp);
    sorted[..n].iter().sum()
}

/// Exact optimum of the two-constraint box LP
/// `min c.x  s.t.  w.x <= budget, sum(x) == n, 0 <= x <= 1`,
/// via its Lagrangian dual. Returns `+inf` when infeasible.
///
/// For a fixed multiplier `t >= 0` the inner minimum is the sum of the `n`
/// smallest modified costs `c + t*w`, minus `t * budget`; the dual function
/// is concave piecewise linear in `t` with kinks only where two modified
/// costs cross, so scanning `t = 0` and all positive pairwise crossings
/// attains the LP optimum exactly (strong duality).
struct Lp2 {
    value: f64,
    /// Free-slice positions of items tied at the selection threshold under
    /// the maximizing multiplier: the potentially fractional variables.
    boundary: Vec<usize>,
}

fn lp_two_constraint(costs: &[f64], weights: &[f64], budget: f64, n: usize) -> Lp2 {
    let m = costs.len();
    debug_assert_eq!(weights.len(), m);
    if n > m {
        return Lp2 {
            value: f64::INFINITY,
            boundary: Vec::new(),
        };
    }
    if n == 0 {
        return Lp2 {
            value: if budget >= 0.0 { 0.0 } else { f64::INFINITY },
            boundary: Vec::new(),
        };
    }
    if min_selection_sum(weights, n) > budget {
        return Lp2 {
            value: f64::INFINITY,
            boundary: Vec::new(),
        };
    }

    let mut scratch = vec![0.0; m];
    let dual_value = |t: f64, scratch: &mut [f64]| -> f64 {
        for (slot, (&c, &w)) in scratch.iter_mut().zip(costs.iter().zip(weights)) {
            *slot = c + t * w;
        }
        scratch.sort_unstable_by(f64::total_cmp);
        scratch[..n].iter().sum::<f64>() - t * budget
    };

    let mut best_t = 0.0;
    let mut best = dual_value(0.0, &mut scratch);
    for i in 0..m {
        for j in (i + 1)..m {
            if weights[i] == weights[j] {
                continue;
            }
            let t = (costs[i] - costs[j]) / (weights[j] - weights[i]);
            if t > 0.0 && t.is_finite() {
                let g = dual_value(t, &mut scratch);
                if g > best {
                    best = g;
                    best_t = t;
                }
            }
        }
    }

    // Identify the selection-threshold tie group at the maximizing
    // multiplier; these are the variables that can be fractional in the
    // primal optimum. Only used to steer branching, so tolerance slop here
    // affects node counts, never answers.
    let modified: Vec<f64> = costs
        .iter()
        .zip(weights)
        .map(|(&c, &w)| c + best_t * w)
        .collect();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_unstable_by(|&a, &b| modified[a].total_cmp(&modified[b]).then(a.cmp(&b)));
    let threshold = modified[order[n - 1]];
    let scale = threshold.abs().max(1.0);
    let boundary: Vec<usize> = if best_t > 0.0 {
        order
            .iter()
            .copied()
            .filter(|&i| (modified[i] - threshold).abs() <= 1e-9 * scale)
            .collect()
    } else {
        Vec::new()
    };

    Lp2 {
        value: best,
        boundary,
    }
}

/// Lower bound on the optimum over all completions of a partial assignment
/// (`None` = undecided), from the continuous relaxation. Returns `+inf` when
/// the relaxation is infeasible, which is the caller's prune signal.
pub fn relaxation_bound(instance: &BilpInstance, fixed: &[Option<bool>]) -> f64 {
    let k = instance.costs.len();
    assert_eq!(fixed.len(), k, "partial assignment length mismatch");

    let chosen: Vec<bool> = fixed.iter().map(|f| f == &Some(true)).collect();
    let ones = chosen.iter().filter(|&&b| b).count();
    if ones > instance.cardinality {
        return f64::INFINITY;
    }
    let remaining = instance.cardinality - ones;
    let free: Vec<usize> = (0..k).filter(|&i| fixed[i].is_none()).collect();
    if remaining > free.len() {
        return f64::INFINITY;
    }

    let fixed_cost = dot_selected(&instance.costs, &chosen);
    let free_costs: Vec<f64> = free.iter().map(|&i| instance.costs[i]).collect();

    let free_weights: Vec<f64> = free.iter().map(|&i| instance.weights[i]).collect();
    let budget_rem =
        instance.budget + FEASIBILITY_TOL - dot_selected(&instance.weights, &chosen);
    let mut bound = lp_two_constraint(&free_costs, &free_weights, budget_rem, remaining).value;

    if let Some(extra) = &instance.extra {
        let free_extra: Vec<f64> = free.iter().map(|&i| extra.weights[i]).collect();
        let cap_rem = extra.cap + FEASIBILITY_TOL - dot_selected(&extra.weights, &chosen);
        let extra_bound =
            lp_two_constraint(&free_costs, &free_extra, cap_rem, remaining).value;
        bound = bound.max(extra_bound);
    }

    fixed_cost + bound
}

struct Search<'a> {
    instance: &'a BilpInstance,
    assign: Vec<Option<bool>>,
    ones: usize,
    used_weight: f64,
    used_extra: f64,
    incumbent: Option<(f64, Vec<bool>)>,
    nodes: u64,
}

impl<'a> Search<'a> {
    fn new(instance: &'a BilpInstance) -> Self {
        Self {
            instance,
            assign: vec![None; instance.costs.len()],
            ones: 0,
            used_weight: 0.0,
            used_extra: 0.0,
            incumbent: None,
            nodes: 0,
        }
    }

    /// Evaluate a complete assignment with canonical index-order sums and
    /// adopt it on strict improvement or on an equal-objective lexicographic
    /// win.
    fn try_leaf(&mut self, bits: &[bool]) {
        if !leaf_feasible(self.instance, bits) {
            return;
        }
        let objective = dot_selected(&self.instance.costs, bits);
        let adopt = match &self.incumbent {
            None => true,
            Some((best, best_bits)) => {
                objective < *best || (objective == *best && lex_less(bits, best_bits))
            }
        };
        if adopt {
            self.incumbent = Some((objective, bits.to_vec()));
        }
    }

    fn complete_free_as(&self, value: bool) -> Vec<bool> {
        self.assign
            .iter()
            .map(|slot| slot.unwrap_or(value))
            .collect()
    }

    fn dfs(&mut self) {
        self.nodes += 1;
        let instance = self.instance;
        if self.ones > instance.cardinality {
            return;
        }
        let remaining = instance.cardinality - self.ones;
        let free: Vec<usize> = (0..instance.costs.len())
            .filter(|&i| self.assign[i].is_none())
            .collect();
        if remaining > free.len() {
            return;
        }

        // Forced completions: cardinality already met, or every free
        // variable needed to meet it.
        if remaining == 0 {
            let bits = self.complete_free_as(false);
            self.try_leaf(&bits);
            return;
        }
        if remaining == free.len() {
            let bits = self.complete_free_as(true);
            self.try_leaf(&bits);
            return;
        }

        // Cheapest-completion feasibility prunes.
        let free_weights: Vec<f64> = free.iter().map(|&i| instance.weights[i]).collect();
        if self.used_weight + min_selection_sum(&free_weights, remaining)
            > instance.budget + FEASIBILITY_TOL + PRUNE_SLACK
        {
            return;
        }
        let free_extra: Vec<f64> = match &instance.extra {
            Some(extra) => {
                let fe: Vec<f64> = free.iter().map(|&i| extra.weights[i]).collect();
                if self.used_extra + min_selection_sum(&fe, remaining)
                    > extra.cap + FEASIBILITY_TOL + PRUNE_SLACK
                {
                    return;
                }
                fe
            }
            None => Vec::new(),
        };

        // Relaxation bound. Pruning requires strictly exceeding the
        // incumbent (plus slack), so equal-objective leaves stay reachable
        // and the lexicographic tie-break is globally exact.
        let free_costs: Vec<f64> = free.iter().map(|&i| instance.costs[i]).collect();
        let budget_rem =
            instance.budget + FEASIBILITY_TOL + PRUNE_SLACK - self.used_weight;
        let lp_main = lp_two_constraint(&free_costs, &free_weights, budget_rem, remaining);
        let mut bound = lp_main.value;
        let mut boundary = lp_main.boundary;
        if let Some(extra) = &instance.extra {
            let cap_rem = extra.cap + FEASIBILITY_TOL + PRUNE_SLACK - self.used_extra;
            let lp_extra = lp_two_constraint(&free_costs, &free_extra, cap_rem, remaining);
            if lp_extra.value > bound {
                bound = lp_extra.value;
                boundary = lp_extra.boundary;
            }
        }
        if bound == f64::INFINITY {
            return;
        }
        let fixed_cost = self.running_fixed_cost();
        if let Some((best, _)) = &self.incumbent {
            if fixed_cost + bound > best + PRUNE_SLACK {
                return;
            }
        }

        // Branch on the most impactful potentially fractional variable;
        // fall back to all free variables when the relaxation is integral.
        let candidates: Vec<usize> = if boundary.is_empty() {
            free.clone()
        } else {
            boundary.iter().map(|&pos| free[pos]).collect()
        };
        let branch = candidates
            .iter()
            .copied()
            .max_by(|&a, &b| {
                instance.costs[a]
                    .abs()
                    .total_cmp(&instance.costs[b].abs())
                    .then(b.cmp(&a)) // prefer the lower index on ties
            })
            .expect("at least one free variable");

        self.assign[branch] = Some(false);
        self.dfs();

        self.assign[branch] = Some(true);
        self.ones += 1;
        self.used_weight += instance.weights[branch];
        if let Some(extra) = &instance.extra {
            self.used_extra += extra.weights[branch];
        }
        self.dfs();
        self.assign[branch] = None;
        self.ones -= 1;
        self.used_weight -= instance.weights[branch];
        if let Some(extra) = &instance.extra {
            self.used_extra -= extra.weights[branch];
        }
    }

    fn running_fixed_cost(&self) -> f64 {
        self.instance
            .costs
            .iter()
            .zip(&self.assign)
            .filter(|(_, slot)| **slot == Some(true))
            .map(|(&c, _)| c)
            .sum()
    }
}

/// Solve to proven optimality by depth-first branch and bound.
///
/// Infeasibility is a status, not an error. Ties in the objective resolve
/// to the lexicographically smallest decision vector, matching
/// [`exhaustive_solve`] exactly.
pub fn solve(instance: &BilpInstance) -> BilpSolution {
    let k = instance.costs.len();
    assert_eq!(instance.weights.len(), k, "weights length mismatch");
    if let Some(extra) = &instance.extra {
        assert_eq!(extra.weights.len(), k, "extra weights length mismatch");
    }
    if instance.cardinality > k {
        return BilpSolution::infeasible(k, 0);
    }

    let mut search = Search::new(instance);
    search.dfs();
    match search.incumbent {
        Some((objective, decision)) => BilpSolution {
            decision,
            objective,
            status: SolveStatus::Optimal,
            nodes_explored: search.nodes,
        },
        None => BilpSolution::infeasible(k, search.nodes),
    }
}

/// Enumerate every subset of the required cardinality and return the exact
/// optimum; the independent oracle for [`solve`].
pub fn exhaustive_solve(instance: &BilpInstance) -> Result<BilpSolution> {
    let k = instance.costs.len();
    if k > EXHAUSTIVE_LIMIT {
        return Err(Error::TooManyUsers {
            k,
            limit: EXHAUSTIVE_LIMIT,
        });
    }
    assert_eq!(instance.weights.len(), k, "weights length mismatch");
    if let Some(extra) = &instance.extra {
        assert_eq!(extra.weights.len(), k, "extra weights length mismatch");
    }
    if instance.cardinality > k {
        return Ok(BilpSolution::infeasible(k, 0));
    }

    let mut best: Option<(f64, Vec<bool>)> = None;
    let mut examined: u64 = 0;
    let mut bits = vec![false; k];
    visit_combinations(&mut bits, 0, instance.cardinality, &mut |candidate| {
        examined += 1;
        if !leaf_feasible(instance, candidate) {
            return;
        }
        let objective = dot_selected(&instance.costs, candidate);
        let adopt = match &best {
            None => true,
            Some((inc, inc_bits)) => {
                objective < *inc || (objective == *inc && lex_less(candidate, inc_bits))
            }
        };
        if adopt {
            best = Some((objective, candidate.to_vec()));
        }
    });

    Ok(match best {
        Some((objective, decision)) => BilpSolution {
            decision,
            objective,
            status: SolveStatus::Optimal,
            nodes_explored: examined,
        },
        None => BilpSolution::infeasible(k, examined),
    })
}

fn visit_combinations(bits: &mut Vec<bool>, from: usize, remaining: usize, f: &mut impl FnMut(&[bool])) {
    if remaining == 0 {
        f(bits);
        return;
    }
    let k = bits.len();
    if from + remaining > k {
        return;
    }
    // include `from`
    bits[from] = true;
    visit_combinations(bits, from + 1, remaining - 1, f);
    bits[from] = false;
    // exclude `from`
    visit_combinations(bits, from + 1, remaining, f);
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn instance(costs: Vec<f64>, weights: Vec<f64>, budget: f64, n: usize) -> BilpInstance {
        BilpInstance {
            costs,
            weights,
            budget,
            cardinality: n,
            extra: None,
        }
    }

    #[test]
    fn empty_selection() {
        let sol = solve(&instance(vec![1.0, 2.0], vec![1.0, 1.0], 0.0, 0));
        assert_eq!(sol.status, SolveStatus::Optimal);
        assert_eq!(sol.decision, vec![false, false]);
        assert_eq!(sol.objective, 0.0);
    }

    #[test]
    fn empty_selection_negative_budget_infeasible() {
        let sol = solve(&instance(vec![1.0], vec![1.0], -1.0, 0));
        assert_eq!(sol.status, SolveStatus::Infeasible);
        let oracle = exhaustive_solve(&instance(vec![1.0], vec![1.0], -1.0, 0)).unwrap();
        assert_eq!(oracle.status, SolveStatus::Infeasible);
    }

    #[test]
    fn forced_full_selection() {
        let inst = instance(vec![1.0, -2.0, 3.0], vec![1.0, 1.0, 1.0], 3.0, 3);
        let sol = solve(&inst);
        assert_eq!(sol.status, SolveStatus::Optimal);
        assert_eq!(sol.decision, vec![true, true, true]);
        assert_eq!(sol.objective, 2.0);

        let tight = instance(vec![1.0, -2.0, 3.0], vec![1.0, 1.0, 1.5], 3.0, 3);
        assert_eq!(solve(&tight).status, SolveStatus::Infeasible);
    }

    #[test]
    fn cardinality_above_k_infeasible() {
        let sol = solve(&instance(vec![1.0], vec![1.0], 10.0, 2));
        assert_eq!(sol.status, SolveStatus::Infeasible);
        let oracle = exhaustive_solve(&instance(vec![1.0], vec![1.0], 10.0, 2)).unwrap();
        assert_eq!(oracle.status, SolveStatus::Infeasible);
    }

    #[test]
    fn three_item_hand_instance() {
        // pairs: {0,1} weight 2 obj -1+2=1; pairs with item 2 weigh 6 > 2
        let inst = instance(vec![-1.0, 2.0, -3.0], vec![1.0, 1.0, 5.0], 2.0, 2);
        let sol = solve(&inst);
        assert_eq!(sol.status, SolveStatus::Optimal);
        assert_eq!(sol.decision, vec![true, true, false]);
        assert_eq!(sol.objective, 1.0);
    }

    #[test]
    fn exhaustive_guard() {
        let inst = instance(vec![0.0; 26], vec![0.0; 26], 1.0, 1);
        assert!(matches!(
            exhaustive_solve(&inst),
            Err(Error::TooManyUsers { .. })
        ));
    }

    #[test]
    fn relaxation_bound_fully_fixed_equals_objective() {
        let inst = instance(vec![1.5, -2.25, 3.0], vec![1.0, 1.0, 1.0], 5.0, 2);
        let fixed = vec![Some(true), Some(true), Some(false)];
        assert_eq!(relaxation_bound(&inst, &fixed), 1.5 + -2.25);
    }

    #[test]
    fn relaxation_bound_zero_weights_is_smallest_costs() {
        let inst = instance(vec![5.0, -1.0, 2.0, 0.5], vec![0.0; 4], 0.0, 2);
        let bound = relaxation_bound(&inst, &[None, None, None, None]);
        assert_eq!(bound, -1.0 + 0.5);
    }

    #[test]
    fn relaxation_bound_infeasible_signals_infinity() {
        let inst = instance(vec![1.0, 1.0], vec![3.0, 3.0], 1.0, 2);
        assert_eq!(
            relaxation_bound(&inst, &[None, None]),
            f64::INFINITY
        );
        // inconsistent partial assignment
        let inst2 = instance(vec![1.0, 1.0], vec![0.0, 0.0], 1.0, 1);
        assert_eq!(
            relaxation_bound(&inst2, &[Some(true), Some(true)]),
            f64::INFINITY
        );
    }

    #[test]
    fn tie_break_is_lexicographic() {
        // both singletons cost 1; {0} is lexicographically larger than {1}?
        // vectors: [1,0] vs [0,1]; [0,1] < [1,0], so item 1 wins
        let inst = instance(vec![1.0, 1.0], vec![0.0, 0.0], 1.0, 1);
        let sol = solve(&inst);
        assert_eq!(sol.decision, vec![false, true]);
        let oracle = exhaustive_solve(&inst).unwrap();
        assert_eq!(oracle.decision, vec![false, true]);
    }

    fn random_instance(seed: u64, k: usize, with_extra: bool) -> BilpInstance {
        use rand::Rng;
        let mut rng = crate::rng::seeded_rng(seed);
        let costs: Vec<f64> = (0..k).map(|_| rng.gen_range(-5.0..5.0)).collect();
        let weights: Vec<f64> = (0..k).map(|_| rng.gen_range(-2.0..3.0)).collect();
        let cardinality = rng.gen_range(0..=k);
        let budget = rng.gen_range(-2.0..2.5 * cardinality.max(1) as f64);
        let extra = with_extra.then(|| SideConstraint {
            weights: (0..k).map(|_| rng.gen_range(0.0..2.0)).collect(),
            cap: rng.gen_range(0.0..1.5 * cardinality.max(1) as f64),
        });
        BilpInstance {
            costs,
            weights,
            budget,
            cardinality,
            extra,
        }
    }

    #[test]
    fn matches_oracle_on_random_instances() {
        for seed in 0..2000u64 {
            let inst = random_instance(seed, 1 + (seed % 9) as usize, seed % 3 == 0);
            let sol = solve(&inst);
            let oracle = exhaustive_solve(&inst).unwrap();
            assert_eq!(sol.status, oracle.status, "seed {seed}: {inst:?}");
            assert_eq!(sol.objective, oracle.objective, "seed {seed}: {inst:?}");
            assert_eq!(sol.decision, oracle.decision, "seed {seed}: {inst:?}");
        }
    }

    #[test]
    fn returned_solution_respects_constraints() {
        for seed in 0..500u64 {
            let inst = random_instance(seed.wrapping_add(10_000), 8, true);
            let sol = solve(&inst);
            if sol.status == SolveStatus::Optimal {
                let ones = sol.decision.iter().filter(|&&b| b).count();
                assert_eq!(ones, inst.cardinality);
                assert!(
                    dot_selected(&inst.weights, &sol.decision)
                        <= inst.budget + FEASIBILITY_TOL
                );
                let extra = inst.extra.as_ref().unwrap();
                assert!(
                    dot_selected(&extra.weights, &sol.decision) <= extra.cap + FEASIBILITY_TOL
                );
            }
        }
    }

    proptest! {
        // The relaxation never exceeds the integer optimum.
        #[test]
        fn relaxation_is_a_lower_bound(seed in 0u64..3000) {
            let inst = random_instance(seed.wrapping_add(50_000), 1 + (seed % 10) as usize, seed % 4 == 0);
            let oracle = exhaustive_solve(&inst).unwrap();
            prop_assume!(oracle.status == SolveStatus::Optimal);
            let fixed = vec![None; inst.costs.len()];
            let bound = relaxation_bound(&inst, &fixed);
            prop_assert!(bound <= oracle.objective + 1e-9,
                "bound {bound} above optimum {}", oracle.objective);
        }

        // Enlarging the budget never worsens the optimum.
        #[test]
        fn budget_monotonicity(seed in 0u64..1500, bump in 0.0f64..4.0) {
            let inst = random_instance(seed.wrapping_add(90_000), 1 + (seed % 8) as usize, false);
            let mut wider = inst.clone();
            wider.budget += bump;
            let a = solve(&inst);
            let b = solve(&wider);
            prop_assert!(b.objective <= a.objective);
        }
    }
}
