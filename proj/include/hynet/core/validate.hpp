#pragma once

#include <cmath>
#include <sstream>
#include <string>
#include <vector>

#include "hynet/core/instance.hpp"

namespace hynet {

/// One violated invariant, with enough context to locate the offender.
struct Diagnostic {
    std::string invariant;
    std::string detail;
};

namespace detail {

inline void add_diag(std::vector<Diagnostic>& out, const std::string& inv, const std::string& msg) {
    out.push_back(Diagnostic{inv, msg});
}

} // namespace detail

/// Checks every Instance/Node/Arc invariant and returns one diagnostic per
/// violation. An empty result means the instance is well formed. This never
/// throws; malformed data is reported, not rejected.
inline std::vector<Diagnostic> validate_instance(const Instance& inst) {
    using detail::add_diag;
    std::vector<Diagnostic> diags;
    std::ostringstream os;

    const int N = inst.node_count;
    const int T = inst.period_count;
    const int K = inst.commodity_count;
    const int W = inst.scenario_count();
    const int A = inst.arc_count();

    if (N < 1) add_diag(diags, "node-count", "node_count must be >= 1");
    if (T < 1) add_diag(diags, "period-count", "period_count must be >= 1");
    if (K < 1) add_diag(diags, "commodity-count", "commodity_count must be >= 1");
    if (W < 1) add_diag(diags, "scenario-count", "scenario set is empty");
    if (static_cast<int>(inst.nodes.size()) != N)
        add_diag(diags, "node-count", "nodes.size() != node_count");

    double prob_sum = 0.0;
    for (int w = 0; w < W; ++w) {
        const double p = inst.scenario_probability[w];
        if (p <= 0.0) {
            os.str("");
            os << "scenario " << w << " has non-positive probability " << p;
            add_diag(diags, "probability-positive", os.str());
        }
        prob_sum += p;
    }
    if (W >= 1 && std::abs(prob_sum - 1.0) > 1e-9) {
        os.str("");
        os << "probability sum " << prob_sum << " != 1";
        add_diag(diags, "probability-sum", os.str());
    }

    if (inst.unmet_penalty < 0.0)
        add_diag(diags, "penalty-nonnegative", "unmet_penalty h < 0");

    for (int a = 0; a < A; ++a) {
        const Arc& arc = inst.arcs[a];
        if (arc.tail == arc.head) {
            os.str("");
            os << "arc " << a << " is a self-loop at node " << arc.tail;
            add_diag(diags, "arc-no-self-loop", os.str());
        }
        if (arc.tail < 0 || arc.tail >= N || arc.head < 0 || arc.head >= N) {
            os.str("");
            os << "arc " << a << " endpoints (" << arc.tail << "," << arc.head << ") out of range";
            add_diag(diags, "arc-endpoints", os.str());
        }
        if (!(arc.length > 0.0)) {
            os.str("");
            os << "arc " << a << " length " << arc.length << " must be > 0";
            add_diag(diags, "arc-length-positive", os.str());
        }
        if (!(arc.capacity > 0.0)) {
            os.str("");
            os << "arc " << a << " capacity " << arc.capacity << " must be > 0";
            add_diag(diags, "arc-capacity-positive", os.str());
        }
        if (arc.initial_commodity != Arc::kUnbuilt &&
            (arc.initial_commodity < 0 || arc.initial_commodity >= K)) {
            os.str("");
            os << "arc " << a << " initial commodity " << arc.initial_commodity << " out of range";
            add_diag(diags, "arc-initial-assignment", os.str());
        }
    }

    auto check_cost = [&](const Array3<double>& c, const char* what) {
        if (c.dim0() != A || c.dim1() != K || c.dim2() != T) {
            os.str("");
            os << what << " tensor has shape (" << c.dim0() << "," << c.dim1() << "," << c.dim2()
               << "), expected (" << A << "," << K << "," << T << ")";
            add_diag(diags, "cost-shape", os.str());
            return;
        }
        for (std::size_t idx = 0; idx < c.flat().size(); ++idx) {
            if (c.flat()[idx] < 0.0) {
                os.str("");
                os << what << " has negative entry at flat index " << idx;
                add_diag(diags, "cost-nonnegative", os.str());
                break;
            }
        }
    };
    check_cost(inst.construction_cost, "construction_cost");
    check_cost(inst.conversion_cost, "conversion_cost");
    check_cost(inst.flow_cost, "flow_cost");

    for (int i = 0; i < std::min<int>(N, static_cast<int>(inst.nodes.size())); ++i) {
        const Node& node = inst.nodes[i];
        if (static_cast<int>(node.initial_inventory.size()) != K) {
            os.str("");
            os << "node " << i << " initial_inventory has " << node.initial_inventory.size()
               << " entries, expected " << K;
            add_diag(diags, "initial-inventory-shape", os.str());
            continue;
        }
        if (node.net_supply.dim0() != T || node.net_supply.dim1() != K || node.net_supply.dim2() != W) {
            os.str("");
            os << "node " << i << " net_supply shape mismatch";
            add_diag(diags, "net-supply-shape", os.str());
        }
        if (node.inventory_capacity.dim0() != T + 1 || node.inventory_capacity.dim1() != K ||
            node.inventory_capacity.dim2() != W) {
            os.str("");
            os << "node " << i << " inventory_capacity must cover periods 0.." << T;
            add_diag(diags, "inventory-capacity-shape", os.str());
            continue;
        }
        for (std::size_t idx = 0; idx < node.inventory_capacity.flat().size(); ++idx) {
            if (node.inventory_capacity.flat()[idx] < 0.0) {
                os.str("");
                os << "node " << i << " has negative inventory capacity";
                add_diag(diags, "inventory-capacity-nonnegative", os.str());
                break;
            }
        }
        for (int k = 0; k < K; ++k) {
            const double o = node.initial_inventory[k];
            if (o < 0.0) {
                os.str("");
                os << "node " << i << " commodity " << k << " initial inventory " << o << " < 0";
                add_diag(diags, "initial-inventory-nonnegative", os.str());
            }
            for (int w = 0; w < W; ++w) {
                if (o > node.inventory_capacity(0, k, w) + 1e-12) {
                    os.str("");
                    os << "node " << i << " commodity " << k << " initial inventory " << o
                       << " exceeds capacity at t=0 in scenario " << w;
                    add_diag(diags, "initial-inventory-capacity", os.str());
                    break;
                }
            }
        }
    }

    return diags;
}

} // namespace hynet
