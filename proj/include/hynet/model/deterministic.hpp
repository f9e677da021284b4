#pragma once

// Builds the deterministic-equivalent MIP: binary construction/conversion/
// assignment variables shared across scenarios, plus continuous flow, unmet
// demand and inventory variables per selected scenario. Scenario weights are
// given by the caller, so the same builder covers the full problem (weights =
// probabilities), probability-renormalized bundles, and single scenarios.
//
// Row families (names in parentheses):
//   balance          I[t+1] - I[t] - e + outflow - inflow <= s   per (i,k,t,w)
//   flowcap          x - U_a z <= 0                              per (a,k,t,w)
//   build_once       sum_{k,t} y <= 1                            per a
//   build_assign     y - z <= 0                                  per (a,k,t)
//   assign_built     sum_k sum_{t'<=t} y - sum_k z_t = 0         per (a,t)
//   convert_link     z_kt + sum_{k'!=k} z_{k',t-1} - b_kt <= 1   per (a,k,t>=1)
//   convert_once     sum_{k,t} b <= 1                            per a
// Inventory capacity, initial inventories and the prebuilt-network pins are
// variable bounds (I in [0, C], I_0 fixed at o, y_{a0}^k fixed at 1), which
// is the same feasible set with far fewer rows.

#include <stdexcept>
#include <string>
#include <vector>

#include "hynet/core/instance.hpp"
#include "hynet/solver/mip_model.hpp"

namespace hynet {

/// Variable ids of the deterministic equivalent, for reading solutions back
/// and for injecting side constraints (progressive hedging, Benders).
struct DeVarMap {
    Array3<int> y, b, z;            // (a, k, t)
    std::vector<Array3<int>> x;     // per selected scenario, (a, k, t)
    std::vector<Array3<int>> e;     // per selected scenario, (i, k, t)
    std::vector<Array3<int>> inv;   // per selected scenario, (i, k, t), t in 0..T
    std::vector<int> scenario_ids;  // original scenario index per slot
    std::vector<double> weights;    // objective weight per slot
};

struct DeModel {
    MipModel model;
    DeVarMap vars;
};

inline DeModel build_deterministic_equivalent(const Instance& inst,
                                              const std::vector<int>& scenario_ids,
                                              const std::vector<double>& weights) {
    if (scenario_ids.empty()) throw std::invalid_argument("scenario subset is empty");
    if (weights.size() != scenario_ids.size())
        throw std::invalid_argument("one weight per selected scenario required");
    for (std::size_t s = 0; s < scenario_ids.size(); ++s) {
        if (scenario_ids[s] < 0 || scenario_ids[s] >= inst.scenario_count())
            throw std::invalid_argument("unknown scenario id " + std::to_string(scenario_ids[s]));
        if (!(weights[s] > 0.0)) throw std::invalid_argument("weights must be positive");
    }

    const int A = inst.arc_count();
    const int N = inst.node_count;
    const int K = inst.commodity_count;
    const int T = inst.period_count;
    const int S = static_cast<int>(scenario_ids.size());

    DeModel de;
    MipModel& m = de.model;
    DeVarMap& v = de.vars;
    v.scenario_ids = scenario_ids;
    v.weights = weights;
    v.y = Array3<int>(A, K, T, -1);
    v.b = Array3<int>(A, K, T, -1);
    v.z = Array3<int>(A, K, T, -1);

    auto tag = [](const char* base, int a, int k, int t) {
        return std::string(base) + "_" + std::to_string(a) + "_" + std::to_string(k) + "_" +
               std::to_string(t);
    };

    for (int a = 0; a < A; ++a)
        for (int k = 0; k < K; ++k)
            for (int t = 0; t < T; ++t) {
                const bool pinned = t == 0 && inst.arcs[a].initial_commodity == k;
                v.y(a, k, t) = m.add_variable(pinned ? 1.0 : 0.0, 1.0, true,
                                              inst.construction_cost(a, k, t), tag("y", a, k, t));
            }
    for (int a = 0; a < A; ++a)
        for (int k = 0; k < K; ++k)
            for (int t = 0; t < T; ++t)
                v.b(a, k, t) = m.add_binary(inst.conversion_cost(a, k, t), tag("b", a, k, t));
    for (int a = 0; a < A; ++a)
        for (int k = 0; k < K; ++k)
            for (int t = 0; t < T; ++t)
                v.z(a, k, t) = m.add_binary(0.0, tag("z", a, k, t));

    for (int s = 0; s < S; ++s) {
        const int w = scenario_ids[s];
        const double q = weights[s];
        const std::string suffix = "_s" + std::to_string(w);
        Array3<int> xs(A, K, T, -1), es(N, K, T, -1), is(N, K, T + 1, -1);
        for (int a = 0; a < A; ++a)
            for (int k = 0; k < K; ++k)
                for (int t = 0; t < T; ++t)
                    xs(a, k, t) = m.add_variable(0.0, kInf, false, q * inst.flow_cost(a, k, t),
                                                 tag("x", a, k, t) + suffix);
        for (int i = 0; i < N; ++i)
            for (int k = 0; k < K; ++k)
                for (int t = 0; t < T; ++t)
                    es(i, k, t) = m.add_variable(0.0, kInf, false, q * inst.unmet_penalty,
                                                 tag("e", i, k, t) + suffix);
        for (int i = 0; i < N; ++i)
            for (int k = 0; k < K; ++k)
                for (int t = 0; t <= T; ++t) {
                    const double cap = inst.nodes[i].inventory_capacity(t, k, w);
                    const double lo = t == 0 ? inst.nodes[i].initial_inventory[k] : 0.0;
                    const double up = t == 0 ? inst.nodes[i].initial_inventory[k] : cap;
                    is(i, k, t) = m.add_variable(lo, up, false, 0.0, tag("I", i, k, t) + suffix);
                }
        v.x.push_back(std::move(xs));
        v.e.push_back(std::move(es));
        v.inv.push_back(std::move(is));
    }

    // Plain arrays of entering/leaving arcs per node.
    std::vector<std::vector<int>> arcs_in(N), arcs_out(N);
    for (int a = 0; a < A; ++a) {
        arcs_out[inst.arcs[a].tail].push_back(a);
        arcs_in[inst.arcs[a].head].push_back(a);
    }

    for (int s = 0; s < S; ++s) {
        const int w = scenario_ids[s];
        const std::string suffix = "_s" + std::to_string(w);
        for (int i = 0; i < N; ++i)
            for (int k = 0; k < K; ++k)
                for (int t = 0; t < T; ++t) {
                    std::vector<std::pair<int, double>> row;
                    row.push_back({v.inv[s](i, k, t + 1), 1.0});
                    row.push_back({v.inv[s](i, k, t), -1.0});
                    row.push_back({v.e[s](i, k, t), -1.0});
                    for (int a : arcs_out[i]) row.push_back({v.x[s](a, k, t), 1.0});
                    for (int a : arcs_in[i]) row.push_back({v.x[s](a, k, t), -1.0});
                    m.add_constraint(std::move(row), Sense::LessEqual,
                                     inst.nodes[i].net_supply(t, k, w),
                                     tag("balance", i, k, t) + suffix);
                }
        for (int a = 0; a < A; ++a)
            for (int k = 0; k < K; ++k)
                for (int t = 0; t < T; ++t)
                    m.add_constraint({{v.x[s](a, k, t), 1.0}, {v.z(a, k, t), -inst.arcs[a].capacity}},
                                     Sense::LessEqual, 0.0, tag("flowcap", a, k, t) + suffix);
    }

    for (int a = 0; a < A; ++a) {
        std::vector<std::pair<int, double>> once_y, once_b;
        for (int k = 0; k < K; ++k)
            for (int t = 0; t < T; ++t) {
                once_y.push_back({v.y(a, k, t), 1.0});
                once_b.push_back({v.b(a, k, t), 1.0});
                m.add_constraint({{v.y(a, k, t), 1.0}, {v.z(a, k, t), -1.0}}, Sense::LessEqual, 0.0,
                                 tag("build_assign", a, k, t));
            }
        m.add_constraint(std::move(once_y), Sense::LessEqual, 1.0, "build_once_" + std::to_string(a));
        m.add_constraint(std::move(once_b), Sense::LessEqual, 1.0, "convert_once_" + std::to_string(a));

        for (int t = 0; t < T; ++t) {
            std::vector<std::pair<int, double>> row;
            for (int k = 0; k < K; ++k) {
                for (int tp = 0; tp <= t; ++tp) row.push_back({v.y(a, k, tp), 1.0});
                row.push_back({v.z(a, k, t), -1.0});
            }
            m.add_constraint(std::move(row), Sense::Equal, 0.0,
                             "assign_built_" + std::to_string(a) + "_" + std::to_string(t));
        }

        for (int k = 0; k < K; ++k)
            for (int t = 1; t < T; ++t) {
                std::vector<std::pair<int, double>> row;
                row.push_back({v.z(a, k, t), 1.0});
                for (int k2 = 0; k2 < K; ++k2)
                    if (k2 != k) row.push_back({v.z(a, k2, t - 1), 1.0});
                row.push_back({v.b(a, k, t), -1.0});
                m.add_constraint(std::move(row), Sense::LessEqual, 1.0, tag("convert_link", a, k, t));
            }
    }

    return de;
}

/// Full deterministic equivalent: every scenario at its own probability.
inline DeModel build_deterministic_equivalent(const Instance& inst) {
    std::vector<int> ids(inst.scenario_count());
    for (int w = 0; w < inst.scenario_count(); ++w) ids[w] = w;
    return build_deterministic_equivalent(inst, ids, inst.scenario_probability);
}

inline FirstStageSolution extract_first_stage(const Instance& inst, const DeVarMap& vars,
                                              const std::vector<double>& values) {
    FirstStageSolution fs = FirstStageSolution::zeros(inst);
    for (int a = 0; a < inst.arc_count(); ++a)
        for (int k = 0; k < inst.commodity_count; ++k)
            for (int t = 0; t < inst.period_count; ++t) {
                fs.built(a, k, t) = values[vars.y(a, k, t)] > 0.5 ? 1 : 0;
                fs.converted(a, k, t) = values[vars.b(a, k, t)] > 0.5 ? 1 : 0;
                fs.assigned(a, k, t) = values[vars.z(a, k, t)] > 0.5 ? 1 : 0;
            }
    return fs;
}

/// Recourse tensors for the model's scenario slots, in slot order.
inline std::vector<ScenarioRecourse> extract_recourse(const Instance& inst, const DeVarMap& vars,
                                                      const std::vector<double>& values) {
    std::vector<ScenarioRecourse> out;
    for (std::size_t s = 0; s < vars.scenario_ids.size(); ++s) {
        ScenarioRecourse r = ScenarioRecourse::zeros(inst);
        for (int a = 0; a < inst.arc_count(); ++a)
            for (int k = 0; k < inst.commodity_count; ++k)
                for (int t = 0; t < inst.period_count; ++t) r.flow(a, k, t) = values[vars.x[s](a, k, t)];
        for (int i = 0; i < inst.node_count; ++i)
            for (int k = 0; k < inst.commodity_count; ++k) {
                for (int t = 0; t < inst.period_count; ++t) r.unmet(i, k, t) = values[vars.e[s](i, k, t)];
                for (int t = 0; t <= inst.period_count; ++t)
                    r.inventory(i, k, t) = values[vars.inv[s](i, k, t)];
            }
        out.push_back(std::move(r));
    }
    return out;
}

/// Packs a known solution into a warm-start vector for the built model.
/// `recourse` must hold one entry per scenario slot, in slot order.
inline std::vector<double> pack_warm_start(const Instance& inst, const DeVarMap& vars,
                                           const FirstStageSolution& fs,
                                           const std::vector<ScenarioRecourse>& recourse) {
    int total = 0;
    {
        // Highest variable id across the map +1 equals the model size here,
        // but derive it defensively from the map itself.
        total = vars.z(inst.arc_count() - 1, inst.commodity_count - 1, inst.period_count - 1) + 1;
        for (std::size_t s = 0; s < vars.scenario_ids.size(); ++s)
            total = std::max(total,
                             vars.inv[s](inst.node_count - 1, inst.commodity_count - 1,
                                         inst.period_count) +
                                 1);
    }
    std::vector<double> ws(total, 0.0);
    for (int a = 0; a < inst.arc_count(); ++a)
        for (int k = 0; k < inst.commodity_count; ++k)
            for (int t = 0; t < inst.period_count; ++t) {
                ws[vars.y(a, k, t)] = fs.built(a, k, t);
                ws[vars.b(a, k, t)] = fs.converted(a, k, t);
                ws[vars.z(a, k, t)] = fs.assigned(a, k, t);
            }
    for (std::size_t s = 0; s < vars.scenario_ids.size() && s < recourse.size(); ++s) {
        for (int a = 0; a < inst.arc_count(); ++a)
            for (int k = 0; k < inst.commodity_count; ++k)
                for (int t = 0; t < inst.period_count; ++t)
                    ws[vars.x[s](a, k, t)] = recourse[s].flow(a, k, t);
        for (int i = 0; i < inst.node_count; ++i)
            for (int k = 0; k < inst.commodity_count; ++k) {
                for (int t = 0; t < inst.period_count; ++t)
                    ws[vars.e[s](i, k, t)] = recourse[s].unmet(i, k, t);
                for (int t = 0; t <= inst.period_count; ++t)
                    ws[vars.inv[s](i, k, t)] = recourse[s].inventory(i, k, t);
            }
    }
    return ws;
}

} // namespace hynet
