#pragma once

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace hynet {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

enum class Sense : unsigned char { LessEqual, Equal, GreaterEqual };

/// Solver-agnostic mixed-integer linear program, always a minimization.
/// Rows and columns are referenced by dense integer ids in insertion order.
struct MipModel {
    struct Variable {
        double lower = 0.0;
        double upper = kInf;
        bool is_integer = false;
        double objective = 0.0;
        std::string name;
    };

    struct Constraint {
        std::vector<std::pair<int, double>> coefficients; // (variable id, value)
        Sense sense = Sense::LessEqual;
        double rhs = 0.0;
        std::string name;
    };

    std::vector<Variable> variables;
    std::vector<Constraint> constraints;
    std::vector<double> warm_start; // empty, or one value per variable

    int add_variable(double lower, double upper, bool is_integer, double objective,
                     std::string name) {
        if (!(lower <= upper))
            throw std::invalid_argument("variable '" + name + "': lower > upper");
        variables.push_back(Variable{lower, upper, is_integer, objective, std::move(name)});
        return static_cast<int>(variables.size()) - 1;
    }

    int add_binary(double objective, std::string name) {
        return add_variable(0.0, 1.0, true, objective, std::move(name));
    }

    int add_constraint(std::vector<std::pair<int, double>> coefficients, Sense sense, double rhs,
                       std::string name) {
        for (const auto& [var, coef] : coefficients) {
            (void)coef;
            if (var < 0 || var >= static_cast<int>(variables.size()))
                throw std::invalid_argument("constraint '" + name + "': unknown variable id " +
                                            std::to_string(var));
        }
        constraints.push_back(Constraint{std::move(coefficients), sense, rhs, std::move(name)});
        return static_cast<int>(constraints.size()) - 1;
    }

    int variable_count() const { return static_cast<int>(variables.size()); }
    int constraint_count() const { return static_cast<int>(constraints.size()); }

    double evaluate_objective(const std::vector<double>& x) const {
        double obj = 0.0;
        for (int j = 0; j < variable_count(); ++j) obj += variables[j].objective * x[j];
        return obj;
    }

    /// Checks bounds, integrality and every row at absolute tolerance `tol`.
    bool is_feasible(const std::vector<double>& x, double tol = 1e-6) const {
        if (static_cast<int>(x.size()) != variable_count()) return false;
        for (int j = 0; j < variable_count(); ++j) {
            const Variable& v = variables[j];
            if (x[j] < v.lower - tol || x[j] > v.upper + tol) return false;
            if (v.is_integer && std::abs(x[j] - std::round(x[j])) > tol) return false;
        }
        for (const Constraint& row : constraints) {
            double lhs = 0.0;
            for (const auto& [var, coef] : row.coefficients) lhs += coef * x[var];
            switch (row.sense) {
            case Sense::LessEqual:
                if (lhs > row.rhs + tol) return false;
                break;
            case Sense::GreaterEqual:
                if (lhs < row.rhs - tol) return false;
                break;
            case Sense::Equal:
                if (std::abs(lhs - row.rhs) > tol) return false;
                break;
            }
        }
        return true;
    }
};

/// Stopping rules for MIP solves. Infinite limits mean "none".
struct SolverConfig {
    double gap = 1e-6;            // relative (incumbent - bound) / max(|incumbent|, eps)
    double time_limit = kInf;     // seconds
    long node_limit = -1;         // < 0 means unlimited
    int verbosity = 0;            // 0 silent, 1 progress lines
};

enum class SolveStatus : unsigned char {
    OptimalWithinGap,
    FeasibleTimeLimit,
    Infeasible,
    Unbounded,
    Error,
};

inline const char* to_string(SolveStatus s) {
    switch (s) {
    case SolveStatus::OptimalWithinGap: return "optimal-within-gap";
    case SolveStatus::FeasibleTimeLimit: return "feasible-time-limit";
    case SolveStatus::Infeasible: return "infeasible";
    case SolveStatus::Unbounded: return "unbounded";
    case SolveStatus::Error: return "error";
    }
    return "error";
}

struct SolverResult {
    SolveStatus status = SolveStatus::Error;
    double objective = kInf;  // incumbent value (minimize)
    double best_bound = -kInf;
    std::vector<double> values; // incumbent variable values, empty if none
    double wall_seconds = 0.0;
    long node_count = 0;
    std::string message;

    bool has_solution() const { return !values.empty(); }

    double gap() const {
        if (!std::isfinite(objective) || !std::isfinite(best_bound)) return kInf;
        return (objective - best_bound) / std::max(std::abs(objective), 1e-10);
    }
};

} // namespace hynet
