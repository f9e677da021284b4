#pragma once

// Small hand-built instances shared across the test suites.

#include <vector>

#include "hynet/core/instance.hpp"

namespace hytest {

using namespace hynet;

/// Instance skeleton: N nodes on a line, no arcs, zero supplies, uniform
/// scenario probabilities, inventory capacities `cap` everywhere, h = 1.
inline Instance blank_instance(int N, int T, int K, int W, double cap = 1e6) {
    Instance inst;
    inst.name = "test";
    inst.node_count = N;
    inst.period_count = T;
    inst.commodity_count = K;
    inst.scenario_probability.assign(W, 1.0 / W);
    inst.unmet_penalty = 1.0;
    for (int i = 0; i < N; ++i) {
        Node node;
        node.id = i;
        node.pos_x = i;
        node.pos_y = 0.0;
        node.initial_inventory.assign(K, 0.0);
        node.net_supply = Array3<double>(T, K, W);
        node.inventory_capacity = Array3<double>(T + 1, K, W, cap);
        inst.nodes.push_back(std::move(node));
    }
    return inst;
}

inline int add_arc(Instance& inst, int tail, int head, double length, double capacity,
                   int initial_commodity = Arc::kUnbuilt) {
    Arc arc;
    arc.id = inst.arc_count();
    arc.tail = tail;
    arc.head = head;
    arc.length = length;
    arc.capacity = capacity;
    arc.initial_commodity = initial_commodity;
    inst.arcs.push_back(arc);
    return arc.id;
}

/// Sizes the cost tensors to the current arc list, filled with constants.
inline void fill_costs(Instance& inst, double f, double g, double c) {
    const int A = inst.arc_count();
    const int K = inst.commodity_count;
    const int T = inst.period_count;
    inst.construction_cost = Array3<double>(A, K, T, f);
    inst.conversion_cost = Array3<double>(A, K, T, g);
    inst.flow_cost = Array3<double>(A, K, T, c);
}

/// Marks the prebuilt arcs of each commodity as constructed at t = 0 and
/// assigned to that commodity for the whole horizon (the do-nothing first
/// stage that still satisfies the initial-network pin).
inline FirstStageSolution initial_network_only(const Instance& inst) {
    FirstStageSolution fs = FirstStageSolution::zeros(inst);
    for (int a = 0; a < inst.arc_count(); ++a) {
        const Arc& arc = inst.arcs[a];
        if (!arc.prebuilt()) continue;
        fs.built(a, arc.initial_commodity, 0) = 1;
        for (int t = 0; t < inst.period_count; ++t) fs.assigned(a, arc.initial_commodity, t) = 1;
    }
    return fs;
}

} // namespace hytest
