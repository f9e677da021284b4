#pragma once

#include <string>
#include <vector>

#include "hynet/core/array.hpp"

namespace hynet {

/// An arc is a directed pipeline candidate between two nodes. At the start
/// of the horizon it is either unbuilt or already carries one commodity.
struct Arc {
    int id = 0;
    int tail = 0;
    int head = 0;
    double length = 0.0;   // distance units
    double capacity = 0.0; // max flow per period (volume units)
    int initial_commodity = kUnbuilt;

    static constexpr int kUnbuilt = -1;

    bool prebuilt() const { return initial_commodity >= 0; }

    friend bool operator==(const Arc&, const Arc&) = default;
};

/// A network node with its stochastic supply/demand profile.
///
/// net_supply and inventory_capacity are indexed (period, commodity,
/// scenario). net_supply covers periods 0..T-1; inventory_capacity covers
/// periods 0..T inclusive, since the post-horizon inventory is capped too.
struct Node {
    int id = 0;
    double pos_x = 0.0;
    double pos_y = 0.0;
    std::vector<double> initial_inventory; // o[k]
    Array3<double> net_supply;             // s(t, k, w), negative = demand
    Array3<double> inventory_capacity;     // C(t, k, w), t in 0..T

    friend bool operator==(const Node&, const Node&) = default;
};

/// The complete problem datum: network, commodities, horizon, scenarios
/// and every cost/capacity parameter. Immutable once constructed.
struct Instance {
    std::string name;
    int node_count = 0;      // N
    int period_count = 0;    // T
    int commodity_count = 0; // K

    std::vector<double> scenario_probability; // p_w, sums to 1
    std::vector<Node> nodes;
    std::vector<Arc> arcs;

    double unmet_penalty = 0.0; // h, cost per unit of unsatisfied demand

    Array3<double> construction_cost; // f(a, k, t)
    Array3<double> conversion_cost;   // g(a, k, t)
    Array3<double> flow_cost;         // c(a, k, t)

    int scenario_count() const { return static_cast<int>(scenario_probability.size()); }
    int arc_count() const { return static_cast<int>(arcs.size()); }

    friend bool operator==(const Instance&, const Instance&) = default;
};

/// First-stage decisions: construction y, conversion b, assignment z,
/// all indexed (arc, commodity, period) with values in {0,1}.
struct FirstStageSolution {
    Array3<unsigned char> built;     // y
    Array3<unsigned char> converted; // b
    Array3<unsigned char> assigned;  // z

    static FirstStageSolution zeros(const Instance& inst) {
        FirstStageSolution fs;
        fs.built = Array3<unsigned char>(inst.arc_count(), inst.commodity_count, inst.period_count);
        fs.converted = fs.built;
        fs.assigned = fs.built;
        return fs;
    }

    friend bool operator==(const FirstStageSolution&, const FirstStageSolution&) = default;
};

/// Second-stage decisions for one scenario: flows x(a,k,t), unmet demand
/// e(i,k,t) and inventories I(i,k,t) with t running 0..T for inventory.
struct ScenarioRecourse {
    Array3<double> flow;      // x(a, k, t)
    Array3<double> unmet;     // e(i, k, t)
    Array3<double> inventory; // I(i, k, t), t in 0..T

    static ScenarioRecourse zeros(const Instance& inst) {
        ScenarioRecourse r;
        r.flow = Array3<double>(inst.arc_count(), inst.commodity_count, inst.period_count);
        r.unmet = Array3<double>(inst.node_count, inst.commodity_count, inst.period_count);
        r.inventory = Array3<double>(inst.node_count, inst.commodity_count, inst.period_count + 1);
        return r;
    }
};

/// Cost breakdown of a full solution. "Expected" components are weighted
/// by scenario probability.
struct SolutionEvaluation {
    double construction_cost = 0.0;
    double conversion_cost = 0.0;
    double expected_flow_cost = 0.0;
    double expected_penalty_cost = 0.0;
    double total = 0.0;

    struct ScenarioCost {
        double flow_cost = 0.0;
        double penalty_cost = 0.0;
        double total = 0.0; // first stage + this scenario's recourse
    };
    struct PeriodCost {
        double construction_cost = 0.0;
        double conversion_cost = 0.0;
        double expected_flow_cost = 0.0;
        double expected_penalty_cost = 0.0;
    };

    std::vector<ScenarioCost> per_scenario;
    std::vector<PeriodCost> per_period;
};

} // namespace hynet
