#pragma once

// JSON (de)serialization for instances and solutions.
//
// Schema, version 1:
//   * every document carries a top-level "format_version": 1
//   * arc-indexed tensors are nested arrays in order [arc][commodity][period]
//   * node-indexed stochastic tensors are nested arrays in order
//     [node][period][commodity][scenario]; inventory capacities and
//     inventories cover periods 0..T inclusive (T+1 entries)
//   * per-scenario flows are a scenario-major list of [arc][commodity][period]
//
// Instance document keys: format_version, name, node_count, period_count,
// commodity_count, scenario_probability, unmet_penalty, nodes (id, pos,
// initial_inventory), arcs (id, tail, head, length, capacity,
// initial_commodity with -1 = unbuilt), construction_cost, conversion_cost,
// flow_cost, net_supply, inventory_capacity.
//
// Solution document keys: format_version, instance, first_stage
// (built/converted/assigned), recourse (flow/unmet/inventory), evaluation.

#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "hynet/core/instance.hpp"

namespace hynet {

inline constexpr int kFormatVersion = 1;

namespace detail {

// [first][commodity][period] nesting for tensors indexed (first, k, t).
template <typename T>
nlohmann::json tensor_fkt(const Array3<T>& a) {
    nlohmann::json out = nlohmann::json::array();
    for (int i = 0; i < a.dim0(); ++i) {
        nlohmann::json ki = nlohmann::json::array();
        for (int k = 0; k < a.dim1(); ++k) {
            nlohmann::json ti = nlohmann::json::array();
            for (int t = 0; t < a.dim2(); ++t) ti.push_back(a(i, k, t));
            ki.push_back(std::move(ti));
        }
        out.push_back(std::move(ki));
    }
    return out;
}

template <typename T>
Array3<T> tensor_fkt_from(const nlohmann::json& j, int d0, int d1, int d2, const char* what) {
    if (static_cast<int>(j.size()) != d0)
        throw std::runtime_error(std::string("json: ") + what + ": outer dimension mismatch");
    Array3<T> a(d0, d1, d2);
    for (int i = 0; i < d0; ++i) {
        const nlohmann::json& ji = j.at(i);
        if (static_cast<int>(ji.size()) != d1)
            throw std::runtime_error(std::string("json: ") + what + ": middle dimension mismatch");
        for (int k = 0; k < d1; ++k) {
            const nlohmann::json& jk = ji.at(k);
            if (static_cast<int>(jk.size()) != d2)
                throw std::runtime_error(std::string("json: ") + what + ": inner dimension mismatch");
            for (int t = 0; t < d2; ++t) a(i, k, t) = jk.at(t).get<T>();
        }
    }
    return a;
}

} // namespace detail

inline nlohmann::json instance_to_json(const Instance& inst) {
    const int T = inst.period_count;
    const int K = inst.commodity_count;
    const int W = inst.scenario_count();

    nlohmann::json j;
    j["format_version"] = kFormatVersion;
    j["name"] = inst.name;
    j["node_count"] = inst.node_count;
    j["period_count"] = T;
    j["commodity_count"] = K;
    j["scenario_probability"] = inst.scenario_probability;
    j["unmet_penalty"] = inst.unmet_penalty;

    nlohmann::json nodes = nlohmann::json::array();
    nlohmann::json net_supply = nlohmann::json::array();
    nlohmann::json inv_cap = nlohmann::json::array();
    for (const Node& node : inst.nodes) {
        nodes.push_back({{"id", node.id},
                         {"pos", {node.pos_x, node.pos_y}},
                         {"initial_inventory", node.initial_inventory}});
        auto stochastic = [&](const Array3<double>& a, int periods) {
            nlohmann::json per_node = nlohmann::json::array();
            for (int t = 0; t < periods; ++t) {
                nlohmann::json per_t = nlohmann::json::array();
                for (int k = 0; k < K; ++k) {
                    nlohmann::json per_k = nlohmann::json::array();
                    for (int w = 0; w < W; ++w) per_k.push_back(a(t, k, w));
                    per_t.push_back(std::move(per_k));
                }
                per_node.push_back(std::move(per_t));
            }
            return per_node;
        };
        net_supply.push_back(stochastic(node.net_supply, T));
        inv_cap.push_back(stochastic(node.inventory_capacity, T + 1));
    }
    j["nodes"] = std::move(nodes);
    j["net_supply"] = std::move(net_supply);
    j["inventory_capacity"] = std::move(inv_cap);

    nlohmann::json arcs = nlohmann::json::array();
    for (const Arc& arc : inst.arcs)
        arcs.push_back({{"id", arc.id},
                        {"tail", arc.tail},
                        {"head", arc.head},
                        {"length", arc.length},
                        {"capacity", arc.capacity},
                        {"initial_commodity", arc.initial_commodity}});
    j["arcs"] = std::move(arcs);

    j["construction_cost"] = detail::tensor_fkt(inst.construction_cost);
    j["conversion_cost"] = detail::tensor_fkt(inst.conversion_cost);
    j["flow_cost"] = detail::tensor_fkt(inst.flow_cost);
    return j;
}

inline Instance instance_from_json(const nlohmann::json& j) {
    if (j.at("format_version").get<int>() != kFormatVersion)
        throw std::runtime_error("json: unsupported format_version");

    Instance inst;
    inst.name = j.at("name").get<std::string>();
    inst.node_count = j.at("node_count").get<int>();
    inst.period_count = j.at("period_count").get<int>();
    inst.commodity_count = j.at("commodity_count").get<int>();
    inst.scenario_probability = j.at("scenario_probability").get<std::vector<double>>();
    inst.unmet_penalty = j.at("unmet_penalty").get<double>();

    const int T = inst.period_count;
    const int K = inst.commodity_count;
    const int W = inst.scenario_count();

    const nlohmann::json& jn = j.at("nodes");
    const nlohmann::json& js = j.at("net_supply");
    const nlohmann::json& jc = j.at("inventory_capacity");
    if (static_cast<int>(jn.size()) != inst.node_count)
        throw std::runtime_error("json: nodes: dimension mismatch");
    for (int i = 0; i < inst.node_count; ++i) {
        Node node;
        node.id = jn.at(i).at("id").get<int>();
        node.pos_x = jn.at(i).at("pos").at(0).get<double>();
        node.pos_y = jn.at(i).at("pos").at(1).get<double>();
        node.initial_inventory = jn.at(i).at("initial_inventory").get<std::vector<double>>();
        auto stochastic = [&](const nlohmann::json& src, int periods, const char* what) {
            Array3<double> a(periods, K, W);
            const nlohmann::json& per_node = src.at(i);
            if (static_cast<int>(per_node.size()) != periods)
                throw std::runtime_error(std::string("json: ") + what + ": period dimension mismatch");
            for (int t = 0; t < periods; ++t)
                for (int k = 0; k < K; ++k)
                    for (int w = 0; w < W; ++w) a(t, k, w) = per_node.at(t).at(k).at(w).get<double>();
            return a;
        };
        node.net_supply = stochastic(js, T, "net_supply");
        node.inventory_capacity = stochastic(jc, T + 1, "inventory_capacity");
        inst.nodes.push_back(std::move(node));
    }

    for (const nlohmann::json& ja : j.at("arcs")) {
        Arc arc;
        arc.id = ja.at("id").get<int>();
        arc.tail = ja.at("tail").get<int>();
        arc.head = ja.at("head").get<int>();
        arc.length = ja.at("length").get<double>();
        arc.capacity = ja.at("capacity").get<double>();
        arc.initial_commodity = ja.at("initial_commodity").get<int>();
        inst.arcs.push_back(arc);
    }

    const int A = inst.arc_count();
    inst.construction_cost =
        detail::tensor_fkt_from<double>(j.at("construction_cost"), A, K, T, "construction_cost");
    inst.conversion_cost =
        detail::tensor_fkt_from<double>(j.at("conversion_cost"), A, K, T, "conversion_cost");
    inst.flow_cost = detail::tensor_fkt_from<double>(j.at("flow_cost"), A, K, T, "flow_cost");
    return inst;
}

inline nlohmann::json evaluation_to_json(const SolutionEvaluation& ev) {
    nlohmann::json j;
    j["construction_cost"] = ev.construction_cost;
    j["conversion_cost"] = ev.conversion_cost;
    j["expected_flow_cost"] = ev.expected_flow_cost;
    j["expected_penalty_cost"] = ev.expected_penalty_cost;
    j["total"] = ev.total;
    nlohmann::json per_scenario = nlohmann::json::array();
    for (const auto& sc : ev.per_scenario)
        per_scenario.push_back({{"flow_cost", sc.flow_cost},
                                {"penalty_cost", sc.penalty_cost},
                                {"total", sc.total}});
    j["per_scenario"] = std::move(per_scenario);
    nlohmann::json per_period = nlohmann::json::array();
    for (const auto& pc : ev.per_period)
        per_period.push_back({{"construction_cost", pc.construction_cost},
                              {"conversion_cost", pc.conversion_cost},
                              {"expected_flow_cost", pc.expected_flow_cost},
                              {"expected_penalty_cost", pc.expected_penalty_cost}});
    j["per_period"] = std::move(per_period);
    return j;
}

inline nlohmann::json solution_to_json(const Instance& inst, const FirstStageSolution& fs,
                                       const std::vector<ScenarioRecourse>& recourse,
                                       const SolutionEvaluation& ev) {
    const int N = inst.node_count;
    const int T = inst.period_count;
    const int K = inst.commodity_count;
    const int W = static_cast<int>(recourse.size());

    nlohmann::json j;
    j["format_version"] = kFormatVersion;
    j["instance"] = inst.name;
    j["first_stage"] = {{"built", detail::tensor_fkt(fs.built)},
                        {"converted", detail::tensor_fkt(fs.converted)},
                        {"assigned", detail::tensor_fkt(fs.assigned)}};

    nlohmann::json flow = nlohmann::json::array();
    for (int w = 0; w < W; ++w) flow.push_back(detail::tensor_fkt(recourse[w].flow));

    auto node_tensor = [&](auto&& pick, int periods) {
        nlohmann::json out = nlohmann::json::array();
        for (int i = 0; i < N; ++i) {
            nlohmann::json per_node = nlohmann::json::array();
            for (int t = 0; t < periods; ++t) {
                nlohmann::json per_t = nlohmann::json::array();
                for (int k = 0; k < K; ++k) {
                    nlohmann::json per_k = nlohmann::json::array();
                    for (int w = 0; w < W; ++w) per_k.push_back(pick(w, i, k, t));
                    per_t.push_back(std::move(per_k));
                }
                per_node.push_back(std::move(per_t));
            }
            out.push_back(std::move(per_node));
        }
        return out;
    };
    j["recourse"] = {
        {"flow", std::move(flow)},
        {"unmet", node_tensor([&](int w, int i, int k, int t) { return recourse[w].unmet(i, k, t); }, T)},
        {"inventory",
         node_tensor([&](int w, int i, int k, int t) { return recourse[w].inventory(i, k, t); }, T + 1)}};
    j["evaluation"] = evaluation_to_json(ev);
    return j;
}

/// Reads the first-stage tensors back from a solution document.
inline FirstStageSolution first_stage_from_json(const nlohmann::json& j, const Instance& inst) {
    if (j.at("format_version").get<int>() != kFormatVersion)
        throw std::runtime_error("json: unsupported format_version");
    const nlohmann::json& f = j.at("first_stage");
    const int A = inst.arc_count();
    const int K = inst.commodity_count;
    const int T = inst.period_count;
    FirstStageSolution fs;
    fs.built = detail::tensor_fkt_from<unsigned char>(f.at("built"), A, K, T, "built");
    fs.converted = detail::tensor_fkt_from<unsigned char>(f.at("converted"), A, K, T, "converted");
    fs.assigned = detail::tensor_fkt_from<unsigned char>(f.at("assigned"), A, K, T, "assigned");
    return fs;
}

inline void write_json_file(const std::string& path, const nlohmann::json& j, int indent = 2) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << j.dump(indent) << '\n';
}

inline nlohmann::json read_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open for reading: " + path);
    nlohmann::json j;
    in >> j;
    return j;
}

inline void save_instance(const std::string& path, const Instance& inst) {
    write_json_file(path, instance_to_json(inst));
}

inline Instance load_instance(const std::string& path) {
    return instance_from_json(read_json_file(path));
}

} // namespace hynet
