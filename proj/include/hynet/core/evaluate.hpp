#pragma once

#include <cmath>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "hynet/core/instance.hpp"

namespace hynet {

namespace detail {

inline void require_dims(const Instance& inst, const FirstStageSolution& fs,
                         const std::vector<ScenarioRecourse>& recourse) {
    const int A = inst.arc_count();
    const int K = inst.commodity_count;
    const int T = inst.period_count;
    auto bad = [&](const char* what) {
        throw std::invalid_argument(std::string("dimension mismatch: ") + what);
    };
    if (fs.built.dim0() != A || fs.built.dim1() != K || fs.built.dim2() != T) bad("y");
    if (fs.converted.dim0() != A || fs.converted.dim1() != K || fs.converted.dim2() != T) bad("b");
    if (fs.assigned.dim0() != A || fs.assigned.dim1() != K || fs.assigned.dim2() != T) bad("z");
    if (static_cast<int>(recourse.size()) != inst.scenario_count()) bad("scenario count");
    for (const ScenarioRecourse& r : recourse) {
        if (r.flow.dim0() != A || r.flow.dim1() != K || r.flow.dim2() != T) bad("x");
        if (r.unmet.dim0() != inst.node_count || r.unmet.dim1() != K || r.unmet.dim2() != T) bad("e");
        if (r.inventory.dim0() != inst.node_count || r.inventory.dim1() != K ||
            r.inventory.dim2() != T + 1)
            bad("I");
    }
}

} // namespace detail

/// Sums the four cost components of a complete solution directly from the
/// tensors, without going through any model or solver:
///   total = sum f*y + sum g*b + sum_w p_w (sum c*x_w + sum h*e_w).
/// Throws std::invalid_argument if any tensor shape disagrees with the
/// instance.
inline SolutionEvaluation evaluate_solution(const Instance& inst, const FirstStageSolution& fs,
                                            const std::vector<ScenarioRecourse>& recourse) {
    detail::require_dims(inst, fs, recourse);

    const int A = inst.arc_count();
    const int N = inst.node_count;
    const int K = inst.commodity_count;
    const int T = inst.period_count;
    const int W = inst.scenario_count();

    SolutionEvaluation ev;
    ev.per_scenario.resize(W);
    ev.per_period.resize(T);

    for (int a = 0; a < A; ++a)
        for (int k = 0; k < K; ++k)
            for (int t = 0; t < T; ++t) {
                const double fc = inst.construction_cost(a, k, t) * fs.built(a, k, t);
                const double gc = inst.conversion_cost(a, k, t) * fs.converted(a, k, t);
                ev.construction_cost += fc;
                ev.conversion_cost += gc;
                ev.per_period[t].construction_cost += fc;
                ev.per_period[t].conversion_cost += gc;
            }

    const double first_stage = ev.construction_cost + ev.conversion_cost;
    for (int w = 0; w < W; ++w) {
        const double p = inst.scenario_probability[w];
        const ScenarioRecourse& r = recourse[w];
        double flow_cost = 0.0;
        double penalty_cost = 0.0;
        for (int t = 0; t < T; ++t) {
            double flow_t = 0.0;
            double pen_t = 0.0;
            for (int k = 0; k < K; ++k) {
                for (int a = 0; a < A; ++a) flow_t += inst.flow_cost(a, k, t) * r.flow(a, k, t);
                for (int i = 0; i < N; ++i) pen_t += inst.unmet_penalty * r.unmet(i, k, t);
            }
            flow_cost += flow_t;
            penalty_cost += pen_t;
            ev.per_period[t].expected_flow_cost += p * flow_t;
            ev.per_period[t].expected_penalty_cost += p * pen_t;
        }
        ev.per_scenario[w].flow_cost = flow_cost;
        ev.per_scenario[w].penalty_cost = penalty_cost;
        ev.per_scenario[w].total = first_stage + flow_cost + penalty_cost;
        ev.expected_flow_cost += p * flow_cost;
        ev.expected_penalty_cost += p * penalty_cost;
    }

    ev.total = first_stage + ev.expected_flow_cost + ev.expected_penalty_cost;
    return ev;
}

/// One violated constraint instance: which constraint family, the offending
/// index tuple rendered as text, and by how much the constraint is broken.
struct Violation {
    std::string constraint;
    std::string where;
    double amount = 0.0;
};

namespace detail {

inline void add_violation(std::vector<Violation>& out, const char* constraint,
                          const std::string& where, double amount) {
    out.push_back(Violation{constraint, where, amount});
}

inline std::string idx3(const char* l0, int v0, const char* l1, int v1, const char* l2, int v2) {
    std::ostringstream os;
    os << l0 << '=' << v0 << ' ' << l1 << '=' << v1 << ' ' << l2 << '=' << v2;
    return os.str();
}

inline std::string idx4(const char* l0, int v0, const char* l1, int v1, const char* l2, int v2,
                        const char* l3, int v3) {
    std::ostringstream os;
    os << idx3(l0, v0, l1, v1, l2, v2) << ' ' << l3 << '=' << v3;
    return os.str();
}

} // namespace detail

/// Enumerates every constraint of the deterministic-equivalent formulation
/// that the given solution violates by more than `tolerance` (absolute, on
/// constraint residuals). Returns an empty list iff the solution is feasible
/// within tolerance. Constraint names:
///   "balance"          I[t+1] <= I[t] + s + e + inflow - outflow
///   "inventory-cap"    I <= C
///   "flow-cap"         x <= U_a * z
///   "build-once"       sum_{k,t} y <= 1
///   "build-assigns"    y <= z
///   "assign-built"     sum_k sum_{t'<=t} y == sum_k z at t
///   "conversion-link"  z[k][t] + sum_{k'!=k} z[k'][t-1] <= 1 + b[k][t]
///   "convert-once"     sum_{k,t} b <= 1
///   "initial-network"  y[a][k][0] == 1 for prebuilt arcs
///   "initial-inventory" I[0] == o
///   "binary"           y,b,z in {0,1}
///   "nonnegative"      x,e,I >= 0
inline std::vector<Violation> check_feasibility(const Instance& inst, const FirstStageSolution& fs,
                                                const std::vector<ScenarioRecourse>& recourse,
                                                double tolerance = 1e-6) {
    using detail::add_violation;
    using detail::idx3;
    using detail::idx4;
    detail::require_dims(inst, fs, recourse);

    const int A = inst.arc_count();
    const int N = inst.node_count;
    const int K = inst.commodity_count;
    const int T = inst.period_count;
    const int W = inst.scenario_count();

    std::vector<Violation> out;

    auto check_binary = [&](const Array3<unsigned char>& v, const char* name) {
        for (int a = 0; a < A; ++a)
            for (int k = 0; k < K; ++k)
                for (int t = 0; t < T; ++t)
                    if (v(a, k, t) > 1)
                        add_violation(out, "binary",
                                      std::string(name) + " " + idx3("a", a, "k", k, "t", t),
                                      v(a, k, t) - 1.0);
    };
    check_binary(fs.built, "y");
    check_binary(fs.converted, "b");
    check_binary(fs.assigned, "z");

    for (int a = 0; a < A; ++a) {
        int built_total = 0;
        int converted_total = 0;
        for (int k = 0; k < K; ++k)
            for (int t = 0; t < T; ++t) {
                built_total += fs.built(a, k, t);
                converted_total += fs.converted(a, k, t);
            }
        if (built_total > 1)
            add_violation(out, "build-once", "a=" + std::to_string(a), built_total - 1.0);
        if (converted_total > 1)
            add_violation(out, "convert-once", "a=" + std::to_string(a), converted_total - 1.0);

        // y <= z and the prebuilt-network pin at t = 0.
        for (int k = 0; k < K; ++k)
            for (int t = 0; t < T; ++t)
                if (fs.built(a, k, t) > fs.assigned(a, k, t))
                    add_violation(out, "build-assigns", idx3("a", a, "k", k, "t", t),
                                  fs.built(a, k, t) - static_cast<double>(fs.assigned(a, k, t)));
        if (inst.arcs[a].prebuilt()) {
            const int k0 = inst.arcs[a].initial_commodity;
            if (fs.built(a, k0, 0) != 1)
                add_violation(out, "initial-network", idx3("a", a, "k", k0, "t", 0),
                              1.0 - fs.built(a, k0, 0));
        }

        // Cumulative construction equals current assignment count.
        int built_so_far = 0;
        for (int t = 0; t < T; ++t) {
            int assigned_t = 0;
            for (int k = 0; k < K; ++k) {
                built_so_far += fs.built(a, k, t);
                assigned_t += fs.assigned(a, k, t);
            }
            if (built_so_far != assigned_t)
                add_violation(out, "assign-built", idx3("a", a, "t", t, "dk", 0),
                              std::abs(built_so_far - assigned_t));
        }

        // Switching the assigned commodity requires a conversion that period.
        for (int t = 1; t < T; ++t)
            for (int k = 0; k < K; ++k) {
                int other_prev = 0;
                for (int k2 = 0; k2 < K; ++k2)
                    if (k2 != k) other_prev += fs.assigned(a, k2, t - 1);
                const int lhs = fs.assigned(a, k, t) + other_prev;
                const int rhs = 1 + fs.converted(a, k, t);
                if (lhs > rhs)
                    add_violation(out, "conversion-link", idx3("a", a, "k", k, "t", t), lhs - rhs);
            }
    }

    for (int w = 0; w < W; ++w) {
        const ScenarioRecourse& r = recourse[w];

        for (int a = 0; a < A; ++a)
            for (int k = 0; k < K; ++k)
                for (int t = 0; t < T; ++t) {
                    const double x = r.flow(a, k, t);
                    if (x < -tolerance)
                        add_violation(out, "nonnegative", "x " + idx4("a", a, "k", k, "t", t, "w", w),
                                      -x);
                    const double cap = inst.arcs[a].capacity * fs.assigned(a, k, t);
                    if (x > cap + tolerance)
                        add_violation(out, "flow-cap", idx4("a", a, "k", k, "t", t, "w", w), x - cap);
                }

        for (int i = 0; i < N; ++i) {
            const Node& node = inst.nodes[i];
            for (int k = 0; k < K; ++k) {
                const double i0 = r.inventory(i, k, 0);
                if (std::abs(i0 - node.initial_inventory[k]) > tolerance)
                    add_violation(out, "initial-inventory", idx4("i", i, "k", k, "t", 0, "w", w),
                                  std::abs(i0 - node.initial_inventory[k]));
                for (int t = 0; t <= T; ++t) {
                    const double inv = r.inventory(i, k, t);
                    if (inv < -tolerance)
                        add_violation(out, "nonnegative",
                                      "I " + idx4("i", i, "k", k, "t", t, "w", w), -inv);
                    const double cap = node.inventory_capacity(t, k, w);
                    if (inv > cap + tolerance)
                        add_violation(out, "inventory-cap", idx4("i", i, "k", k, "t", t, "w", w),
                                      inv - cap);
                }
                for (int t = 0; t < T; ++t) {
                    const double e = r.unmet(i, k, t);
                    if (e < -tolerance)
                        add_violation(out, "nonnegative",
                                      "e " + idx4("i", i, "k", k, "t", t, "w", w), -e);
                    double inflow = 0.0;
                    double outflow = 0.0;
                    for (int a = 0; a < A; ++a) {
                        if (inst.arcs[a].head == i) inflow += r.flow(a, k, t);
                        if (inst.arcs[a].tail == i) outflow += r.flow(a, k, t);
                    }
                    const double rhs = r.inventory(i, k, t) + node.net_supply(t, k, w) + e +
                                       inflow - outflow;
                    const double lhs = r.inventory(i, k, t + 1);
                    if (lhs > rhs + tolerance)
                        add_violation(out, "balance", idx4("i", i, "k", k, "t", t, "w", w),
                                      lhs - rhs);
                }
            }
        }
    }

    return out;
}

} // namespace hynet
