#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hynet/solver/simplex.hpp"

using namespace hynet;

namespace {

/// Dual objective under our sign convention: y'b + sum of reduced costs
/// times the bound each nonbasic structural sits on.
double dual_objective(const MipModel& model, const LpResult& res, double tol = 1e-7) {
    double obj = 0.0;
    for (int i = 0; i < model.constraint_count(); ++i) obj += res.row_duals[i] * model.constraints[i].rhs;
    for (int j = 0; j < model.variable_count(); ++j) {
        const double d = res.reduced_costs[j];
        if (d > tol && std::isfinite(model.variables[j].lower)) obj += d * model.variables[j].lower;
        else if (d < -tol && std::isfinite(model.variables[j].upper)) obj += d * model.variables[j].upper;
    }
    return obj;
}

void check_complementary_slackness(const MipModel& model, const LpResult& res, double tol = 1e-6) {
    for (int i = 0; i < model.constraint_count(); ++i) {
        const auto& row = model.constraints[i];
        if (row.sense == Sense::Equal) continue;
        double lhs = 0.0;
        for (const auto& [var, coef] : row.coefficients) lhs += coef * res.x[var];
        if (std::abs(lhs - row.rhs) > tol) // slack strictly positive
            CHECK_THAT(res.row_duals[i], Catch::Matchers::WithinAbs(0.0, tol));
    }
    for (int j = 0; j < model.variable_count(); ++j) {
        const auto& v = model.variables[j];
        const bool interior = res.x[j] > v.lower + tol && res.x[j] < v.upper - tol;
        if (interior) CHECK_THAT(res.reduced_costs[j], Catch::Matchers::WithinAbs(0.0, tol));
    }
}

} // namespace

TEST_CASE("simplex: 2-variable LP with known optimum") {
    // min -x - 2y s.t. x + y <= 4, y <= 3, x,y >= 0 -> (1,3), obj -7.
    MipModel m;
    int x = m.add_variable(0, kInf, false, -1.0, "x");
    int y = m.add_variable(0, kInf, false, -2.0, "y");
    m.add_constraint({{x, 1.0}, {y, 1.0}}, Sense::LessEqual, 4.0, "cap");
    m.add_constraint({{y, 1.0}}, Sense::LessEqual, 3.0, "ycap");

    SimplexSolver solver(m);
    LpResult res = solver.solve();
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK_THAT(res.objective, Catch::Matchers::WithinAbs(-7.0, 1e-9));
    CHECK_THAT(res.x[x], Catch::Matchers::WithinAbs(1.0, 1e-9));
    CHECK_THAT(res.x[y], Catch::Matchers::WithinAbs(3.0, 1e-9));
    CHECK_THAT(dual_objective(m, res), Catch::Matchers::WithinAbs(res.objective, 1e-7));
    check_complementary_slackness(m, res);
}

TEST_CASE("simplex: max-flow bottleneck on a 3-node path") {
    // Path 0 -> 1 -> 2 with capacities 5 and 3; maximize flow = min -f.
    MipModel m;
    int f1 = m.add_variable(0, 5, false, 0.0, "f1");
    int f2 = m.add_variable(0, 3, false, -1.0, "f2");
    m.add_constraint({{f1, 1.0}, {f2, -1.0}}, Sense::Equal, 0.0, "conserve");

    SimplexSolver solver(m);
    LpResult res = solver.solve();
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK_THAT(res.objective, Catch::Matchers::WithinAbs(-3.0, 1e-9));
    CHECK_THAT(res.x[f1], Catch::Matchers::WithinAbs(3.0, 1e-9));
}

TEST_CASE("simplex: equality rows with negative RHS need phase 1") {
    // min x + y s.t. x - y = -5, x + y >= 1, 0 <= x,y <= 10 -> x=0,y=5.
    MipModel m;
    int x = m.add_variable(0, 10, false, 1.0, "x");
    int y = m.add_variable(0, 10, false, 1.0, "y");
    m.add_constraint({{x, 1.0}, {y, -1.0}}, Sense::Equal, -5.0, "eq");
    m.add_constraint({{x, 1.0}, {y, 1.0}}, Sense::GreaterEqual, 1.0, "ge");

    SimplexSolver solver(m);
    LpResult res = solver.solve();
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK_THAT(res.objective, Catch::Matchers::WithinAbs(5.0, 1e-9));
    CHECK_THAT(res.x[y], Catch::Matchers::WithinAbs(5.0, 1e-9));
    CHECK_THAT(dual_objective(m, res), Catch::Matchers::WithinAbs(res.objective, 1e-7));
}

TEST_CASE("simplex: infeasible system detected") {
    MipModel m;
    int x = m.add_variable(0, kInf, false, 1.0, "x");
    m.add_constraint({{x, 1.0}}, Sense::LessEqual, 0.0, "le");
    m.add_constraint({{x, 1.0}}, Sense::GreaterEqual, 1.0, "ge");
    SimplexSolver solver(m);
    CHECK(solver.solve().status == LpStatus::Infeasible);
}

TEST_CASE("simplex: unbounded detected") {
    MipModel m;
    int x = m.add_variable(0, kInf, false, -1.0, "x");
    m.add_constraint({{x, -1.0}}, Sense::LessEqual, 0.0, "dummy");
    SimplexSolver solver(m);
    CHECK(solver.solve().status == LpStatus::Unbounded);
}

TEST_CASE("simplex: free variables and upper-bounded entering") {
    // min x with x free, x >= -7 via row; optimum -7.
    MipModel m;
    int x = m.add_variable(-kInf, kInf, false, 1.0, "x");
    m.add_constraint({{x, 1.0}}, Sense::GreaterEqual, -7.0, "lb");
    SimplexSolver solver(m);
    LpResult res = solver.solve();
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK_THAT(res.objective, Catch::Matchers::WithinAbs(-7.0, 1e-9));

    // Bound flip: min -x, 2 <= x <= 9, plus an inactive row.
    MipModel m2;
    int x2 = m2.add_variable(2, 9, false, -1.0, "x");
    m2.add_constraint({{x2, 1.0}}, Sense::LessEqual, 100.0, "loose");
    SimplexSolver s2(m2);
    LpResult r2 = s2.solve();
    REQUIRE(r2.status == LpStatus::Optimal);
    CHECK_THAT(r2.x[x2], Catch::Matchers::WithinAbs(9.0, 1e-9));
}

TEST_CASE("simplex: degenerate LP terminates (anti-cycling)") {
    // Beale's classic cycling example for Dantzig pricing.
    MipModel m;
    int x1 = m.add_variable(0, kInf, false, -0.75, "x1");
    int x2 = m.add_variable(0, kInf, false, 150.0, "x2");
    int x3 = m.add_variable(0, kInf, false, -0.02, "x3");
    int x4 = m.add_variable(0, kInf, false, 6.0, "x4");
    m.add_constraint({{x1, 0.25}, {x2, -60.0}, {x3, -0.04}, {x4, 9.0}}, Sense::LessEqual, 0.0, "r1");
    m.add_constraint({{x1, 0.5}, {x2, -90.0}, {x3, -0.02}, {x4, 3.0}}, Sense::LessEqual, 0.0, "r2");
    m.add_constraint({{x3, 1.0}}, Sense::LessEqual, 1.0, "r3");
    SimplexSolver solver(m);
    LpResult res = solver.solve();
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK_THAT(res.objective, Catch::Matchers::WithinAbs(-0.05, 1e-9));
}

TEST_CASE("simplex: random dense LPs satisfy weak duality and slackness") {
    std::mt19937 rng(42);
    std::uniform_real_distribution<double> coef(-3.0, 3.0);
    std::uniform_real_distribution<double> pos(0.5, 4.0);
    for (int trial = 0; trial < 25; ++trial) {
        MipModel m;
        const int n = 6, rows = 5;
        for (int j = 0; j < n; ++j) m.add_variable(0.0, pos(rng), false, coef(rng), "v" + std::to_string(j));
        for (int i = 0; i < rows; ++i) {
            std::vector<std::pair<int, double>> cs;
            for (int j = 0; j < n; ++j) cs.push_back({j, coef(rng)});
            const Sense sense = i % 3 == 0   ? Sense::LessEqual
                                : i % 3 == 1 ? Sense::GreaterEqual
                                             : Sense::Equal;
            m.add_constraint(std::move(cs), sense, coef(rng), "r" + std::to_string(i));
        }
        SimplexSolver solver(m);
        LpResult res = solver.solve();
        if (res.status != LpStatus::Optimal) {
            CHECK(res.status == LpStatus::Infeasible); // bounded vars: never unbounded
            continue;
        }
        CHECK(m.is_feasible(res.x, 1e-6)); // no integer variables here
        CHECK(dual_objective(m, res) <= res.objective + 1e-6); // weak duality
        CHECK_THAT(dual_objective(m, res), Catch::Matchers::WithinAbs(res.objective, 1e-6));
        check_complementary_slackness(m, res);
    }
}

TEST_CASE("simplex: warm start from previous basis after a bound change") {
    // min -x - y, x + y <= 10, x <= 6, y <= 6.
    MipModel m;
    int x = m.add_variable(0, 6, false, -1.0, "x");
    int y = m.add_variable(0, 6, false, -1.0, "y");
    m.add_constraint({{x, 1.0}, {y, 1.0}}, Sense::LessEqual, 10.0, "cap");
    SimplexSolver solver(m);
    LpResult res = solver.solve();
    REQUIRE(res.status == LpStatus::Optimal);
    CHECK_THAT(res.objective, Catch::Matchers::WithinAbs(-10.0, 1e-9));

    std::vector<VarStatus> basis = solver.basis_status();
    solver.set_variable_bounds(x, 0.0, 2.0); // tighten x as a branch would
    LpResult res2 = solver.solve_from(basis);
    REQUIRE(res2.status == LpStatus::Optimal);
    CHECK_THAT(res2.objective, Catch::Matchers::WithinAbs(-8.0, 1e-9));
    CHECK_THAT(res2.x[x], Catch::Matchers::WithinAbs(2.0, 1e-9));
    CHECK(res2.iterations <= res.iterations + 3); // the warm start did help
}
