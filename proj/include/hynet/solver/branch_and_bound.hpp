#pragma once

// Branch-and-bound for mixed-binary/integer models over the bounded-variable
// simplex. Node selection is best-bound first (ties broken by node id, i.e.
// creation order); branching picks the most fractional integer variable with
// ties broken by lowest variable id. Child nodes warm-start the simplex from
// the parent's optimal basis. No cuts, presolve or rounding heuristics: the
// only incumbent sources are integral LP relaxations and an optional
// user-provided warm start.

#include <chrono>
#include <cmath>
#include <memory>
#include <queue>
#include <vector>

#include "hynet/solver/mip_model.hpp"
#include "hynet/solver/simplex.hpp"

namespace hynet {

inline SolverResult branch_and_bound_solve(const MipModel& model, const SolverConfig& config) {
    using clock = std::chrono::steady_clock;
    const auto t0 = clock::now();
    auto elapsed = [&] { return std::chrono::duration<double>(clock::now() - t0).count(); };

    constexpr double kIntTol = 1e-6;
    SolverResult out;
    out.best_bound = -kInf;

    std::vector<int> int_vars;
    for (int j = 0; j < model.variable_count(); ++j)
        if (model.variables[j].is_integer) int_vars.push_back(j);

    SimplexSolver lp(model);

    // Optional warm-start incumbent (must be genuinely feasible to count).
    if (!model.warm_start.empty() && model.is_feasible(model.warm_start, kIntTol)) {
        out.values = model.warm_start;
        out.objective = model.evaluate_objective(model.warm_start);
    }

    struct BoundChange {
        int var;
        double lower, upper;
    };
    struct Node {
        double bound;
        long id;
        std::vector<BoundChange> changes;
        std::shared_ptr<const std::vector<VarStatus>> basis;
    };
    struct NodeOrder {
        bool operator()(const Node& a, const Node& b) const {
            if (a.bound != b.bound) return a.bound > b.bound; // min-heap on bound
            return a.id > b.id;
        }
    };
    std::priority_queue<Node, std::vector<Node>, NodeOrder> open;
    long next_id = 0;
    open.push(Node{-kInf, next_id++, {}, nullptr});

    auto incumbent_scale = [&] { return std::max(std::abs(out.objective), 1e-10); };
    auto cutoff = [&] {
        if (!out.has_solution()) return kInf;
        // A node whose bound cannot beat the incumbent by more than the gap
        // target is not worth expanding.
        return out.objective - config.gap * incumbent_scale();
    };

    int numerical_prunes = 0;
    SolveStatus final_status = SolveStatus::OptimalWithinGap;

    while (!open.empty()) {
        out.best_bound = std::max(out.best_bound, open.top().bound);
        if (out.has_solution() && out.objective - out.best_bound <= config.gap * incumbent_scale())
            break;
        if (std::isfinite(config.time_limit) && elapsed() > config.time_limit) {
            final_status = SolveStatus::FeasibleTimeLimit;
            break;
        }
        if (config.node_limit >= 0 && out.node_count >= config.node_limit) {
            final_status = SolveStatus::FeasibleTimeLimit;
            break;
        }

        Node node = open.top();
        open.pop();
        if (node.bound >= cutoff()) continue;

        for (int j = 0; j < model.variable_count(); ++j)
            lp.set_variable_bounds(j, model.variables[j].lower, model.variables[j].upper);
        for (const BoundChange& ch : node.changes) lp.set_variable_bounds(ch.var, ch.lower, ch.upper);

        LpResult rel = node.basis ? lp.solve_from(*node.basis) : lp.solve();
        if (rel.status == LpStatus::IterationLimit || rel.status == LpStatus::NumericalError)
            rel = lp.solve(); // one cold retry
        ++out.node_count;

        if (rel.status == LpStatus::Infeasible) continue;
        if (rel.status == LpStatus::Unbounded) {
            if (node.changes.empty() && !out.has_solution()) {
                out.status = SolveStatus::Unbounded;
                out.wall_seconds = elapsed();
                return out;
            }
            continue;
        }
        if (rel.status != LpStatus::Optimal) {
            ++numerical_prunes;
            continue;
        }
        if (rel.objective >= cutoff()) continue;

        // Most fractional integer variable, ties by lowest id.
        int branch_var = -1;
        double best_frac = kIntTol;
        for (int j : int_vars) {
            const double frac = std::abs(rel.x[j] - std::round(rel.x[j]));
            if (frac > best_frac + 1e-12) {
                best_frac = frac;
                branch_var = j;
            }
        }

        if (branch_var < 0) {
            if (!out.has_solution() || rel.objective < out.objective) {
                out.objective = rel.objective;
                out.values = rel.x;
            }
            continue;
        }

        auto basis = std::make_shared<const std::vector<VarStatus>>(lp.basis_status());
        const double floor_val = std::floor(rel.x[branch_var]);
        Node down{rel.objective, next_id++, node.changes, basis};
        down.changes.push_back(
            BoundChange{branch_var, lp.variable_lower(branch_var), floor_val});
        Node up{rel.objective, next_id++, node.changes, basis};
        up.changes.push_back(
            BoundChange{branch_var, floor_val + 1.0, lp.variable_upper(branch_var)});
        if (down.changes.back().lower <= down.changes.back().upper) open.push(std::move(down));
        if (up.changes.back().lower <= up.changes.back().upper) open.push(std::move(up));
    }

    out.wall_seconds = elapsed();
    if (!out.has_solution()) {
        out.status = numerical_prunes == 0 && final_status == SolveStatus::OptimalWithinGap
                         ? SolveStatus::Infeasible
                         : SolveStatus::Error;
        if (out.status == SolveStatus::Error)
            out.message = "no incumbent; search stopped early or nodes lost to numerics";
        return out;
    }
    if (open.empty() && final_status == SolveStatus::OptimalWithinGap)
        out.best_bound = out.objective; // search exhausted
    out.status = final_status;
    if (numerical_prunes > 0)
        out.message = std::to_string(numerical_prunes) + " node(s) pruned on numerical failure";
    return out;
}

} // namespace hynet
