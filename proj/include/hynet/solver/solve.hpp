#pragma once

// Backend dispatch. "internal" runs the built-in branch-and-bound;
// "external" exchanges files with a user-configured solver command.
//
// The external command template comes from the HYNET_EXTERNAL_SOLVER
// environment variable (or inline as "external:<template>"). It must
// contain the placeholders {mps} and {sol}; the command is expected to read
// the model from {mps} and leave a solution file at {sol} in the documented
// "name value" line format. The returned objective is recomputed from the
// parsed values, and the values are verified against the model, so a
// misbehaving external solver surfaces as an error rather than a wrong
// number.

#include <unistd.h>

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "hynet/solver/branch_and_bound.hpp"
#include "hynet/solver/mps.hpp"

namespace hynet {

inline constexpr const char* kExternalSolverEnv = "HYNET_EXTERNAL_SOLVER";

namespace detail {

inline std::string replace_all(std::string s, const std::string& what, const std::string& with) {
    std::size_t pos = 0;
    while ((pos = s.find(what, pos)) != std::string::npos) {
        s.replace(pos, what.size(), with);
        pos += with.size();
    }
    return s;
}

inline SolverResult solve_external(const MipModel& model, const std::string& command_template) {
    namespace fs = std::filesystem;
    static std::atomic<unsigned> counter{0};
    const auto t0 = std::chrono::steady_clock::now();

    SolverResult res;
    if (command_template.find("{mps}") == std::string::npos ||
        command_template.find("{sol}") == std::string::npos) {
        res.message = "external solver command must contain {mps} and {sol} placeholders";
        return res;
    }

    const unsigned id = counter++;
    const fs::path base = fs::temp_directory_path() /
                          ("hynet_" + std::to_string(::getpid()) + "_" + std::to_string(id));
    const fs::path mps_path = base.string() + ".mps";
    const fs::path sol_path = base.string() + ".sol";

    MpsDocument doc = export_mps(model);
    {
        std::ofstream out(mps_path);
        if (!out) {
            res.message = "cannot write " + mps_path.string();
            return res;
        }
        out << doc.text;
    }

    std::string cmd = replace_all(command_template, "{mps}", mps_path.string());
    cmd = replace_all(cmd, "{sol}", sol_path.string());
    const int rc = std::system(cmd.c_str());

    std::error_code ec;
    if (rc != 0) {
        res.message = "external solver exited with code " + std::to_string(rc);
        fs::remove(mps_path, ec);
        fs::remove(sol_path, ec);
        return res;
    }

    std::ifstream in(sol_path);
    if (!in) {
        res.message = "external solver produced no solution file";
        fs::remove(mps_path, ec);
        return res;
    }
    std::stringstream buffer;
    buffer << in.rdbuf();
    fs::remove(mps_path, ec);
    fs::remove(sol_path, ec);

    std::vector<double> x = parse_solution(buffer.str(), doc.variable_names);
    if (!model.is_feasible(x, 1e-4)) {
        res.message = "external solution fails feasibility re-check";
        return res;
    }
    res.values = std::move(x);
    res.objective = model.evaluate_objective(res.values);
    res.best_bound = res.objective; // external solvers report optima
    res.status = SolveStatus::OptimalWithinGap;
    res.wall_seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    return res;
}

} // namespace detail

/// Solves `model` on the named backend: "internal", "external", or
/// "external:<command template>". Throws std::invalid_argument for unknown
/// backend names and std::runtime_error when "external" is unconfigured.
inline SolverResult solve(const MipModel& model, const SolverConfig& config,
                          const std::string& backend = "internal") {
    if (backend == "internal") return branch_and_bound_solve(model, config);
    if (backend == "external") {
        const char* cmd = std::getenv(kExternalSolverEnv);
        if (cmd == nullptr || *cmd == '\0')
            throw std::runtime_error(std::string("external backend requested but ") +
                                     kExternalSolverEnv + " is not set");
        return detail::solve_external(model, cmd);
    }
    if (backend.rfind("external:", 0) == 0)
        return detail::solve_external(model, backend.substr(9));
    throw std::invalid_argument("unknown solver backend '" + backend + "'");
}

/// True when an external MIP solver command is configured in the environment.
inline bool external_solver_configured() {
    const char* cmd = std::getenv(kExternalSolverEnv);
    return cmd != nullptr && *cmd != '\0';
}

} // namespace hynet
