#pragma once

// Per-scenario recourse LP for a fixed first stage, and the simulation of a
// first-stage plan across every scenario. With y/b/z fixed, the only rows
// left are the inventory balances: flow capacities U_a * z become variable
// upper bounds, inventory capacities and initial inventories are bounds as
// well. Scenarios share the row/column structure, so one solver instance is
// reused with updated right-hand sides, bounds, and the previous scenario's
// basis as a warm start.

#include <stdexcept>
#include <string>
#include <vector>

#include "hynet/core/evaluate.hpp"
#include "hynet/core/instance.hpp"
#include "hynet/solver/simplex.hpp"

namespace hynet {

struct RecourseModel {
    MipModel model;       // pure LP
    Array3<int> x;        // (a, k, t)
    Array3<int> e;        // (i, k, t)
    Array3<int> inv;      // (i, k, t), t in 0..T
    Array3<int> balance;  // (i, k, t) -> row id
};

/// Builds the recourse LP for scenario `w` under the given first stage.
inline RecourseModel build_recourse_lp(const Instance& inst, const FirstStageSolution& fs, int w) {
    const int A = inst.arc_count();
    const int N = inst.node_count;
    const int K = inst.commodity_count;
    const int T = inst.period_count;

    RecourseModel rm;
    rm.x = Array3<int>(A, K, T, -1);
    rm.e = Array3<int>(N, K, T, -1);
    rm.inv = Array3<int>(N, K, T + 1, -1);
    rm.balance = Array3<int>(N, K, T, -1);
    MipModel& m = rm.model;

    auto tag = [](const char* base, int a, int k, int t) {
        return std::string(base) + "_" + std::to_string(a) + "_" + std::to_string(k) + "_" +
               std::to_string(t);
    };

    for (int a = 0; a < A; ++a)
        for (int k = 0; k < K; ++k)
            for (int t = 0; t < T; ++t) {
                const double cap = fs.assigned(a, k, t) ? inst.arcs[a].capacity : 0.0;
                rm.x(a, k, t) = m.add_variable(0.0, cap, false, inst.flow_cost(a, k, t),
                                               tag("x", a, k, t));
            }
    for (int i = 0; i < N; ++i)
        for (int k = 0; k < K; ++k)
            for (int t = 0; t < T; ++t)
                rm.e(i, k, t) = m.add_variable(0.0, kInf, false, inst.unmet_penalty, tag("e", i, k, t));
    for (int i = 0; i < N; ++i)
        for (int k = 0; k < K; ++k)
            for (int t = 0; t <= T; ++t) {
                const double o = inst.nodes[i].initial_inventory[k];
                const double cap = inst.nodes[i].inventory_capacity(t, k, w);
                rm.inv(i, k, t) = m.add_variable(t == 0 ? o : 0.0, t == 0 ? o : cap, false, 0.0,
                                                 tag("I", i, k, t));
            }

    std::vector<std::vector<int>> arcs_in(N), arcs_out(N);
    for (int a = 0; a < A; ++a) {
        arcs_out[inst.arcs[a].tail].push_back(a);
        arcs_in[inst.arcs[a].head].push_back(a);
    }
    for (int i = 0; i < N; ++i)
        for (int k = 0; k < K; ++k)
            for (int t = 0; t < T; ++t) {
                std::vector<std::pair<int, double>> row;
                row.push_back({rm.inv(i, k, t + 1), 1.0});
                row.push_back({rm.inv(i, k, t), -1.0});
                row.push_back({rm.e(i, k, t), -1.0});
                for (int a : arcs_out[i]) row.push_back({rm.x(a, k, t), 1.0});
                for (int a : arcs_in[i]) row.push_back({rm.x(a, k, t), -1.0});
                rm.balance(i, k, t) = m.add_constraint(std::move(row), Sense::LessEqual,
                                                       inst.nodes[i].net_supply(t, k, w),
                                                       tag("balance", i, k, t));
            }
    return rm;
}

struct SimulationResult {
    std::vector<ScenarioRecourse> recourse; // one per scenario
    SolutionEvaluation evaluation;
};

/// Solves the recourse LP independently for every scenario with the first
/// stage fixed, then evaluates the combined solution. Throws on LP failure,
/// naming the scenario.
inline SimulationResult simulate_first_stage(const Instance& inst, const FirstStageSolution& fs,
                                             SimplexOptions lp_options = SimplexOptions()) {
    const int N = inst.node_count;
    const int K = inst.commodity_count;
    const int T = inst.period_count;
    const int W = inst.scenario_count();

    RecourseModel rm = build_recourse_lp(inst, fs, 0);
    SimplexSolver solver(rm.model, lp_options);

    SimulationResult out;
    std::vector<VarStatus> basis;
    for (int w = 0; w < W; ++w) {
        if (w > 0) {
            for (int i = 0; i < N; ++i)
                for (int k = 0; k < K; ++k) {
                    for (int t = 0; t < T; ++t)
                        solver.set_rhs(rm.balance(i, k, t), inst.nodes[i].net_supply(t, k, w));
                    for (int t = 1; t <= T; ++t)
                        solver.set_variable_bounds(rm.inv(i, k, t), 0.0,
                                                   inst.nodes[i].inventory_capacity(t, k, w));
                }
        }
        LpResult res = basis.empty() ? solver.solve() : solver.solve_from(basis);
        if (res.status != LpStatus::Optimal) res = solver.solve(); // cold retry
        if (res.status != LpStatus::Optimal)
            throw std::runtime_error("recourse LP failed for scenario " + std::to_string(w) + ": " +
                                     to_string(res.status));
        basis = solver.basis_status();

        ScenarioRecourse r = ScenarioRecourse::zeros(inst);
        for (int a = 0; a < inst.arc_count(); ++a)
            for (int k = 0; k < K; ++k)
                for (int t = 0; t < T; ++t) r.flow(a, k, t) = res.x[rm.x(a, k, t)];
        for (int i = 0; i < N; ++i)
            for (int k = 0; k < K; ++k) {
                for (int t = 0; t < T; ++t) r.unmet(i, k, t) = res.x[rm.e(i, k, t)];
                for (int t = 0; t <= T; ++t) r.inventory(i, k, t) = res.x[rm.inv(i, k, t)];
            }
        out.recourse.push_back(std::move(r));
    }
    out.evaluation = evaluate_solution(inst, fs, out.recourse);
    return out;
}

} // namespace hynet
