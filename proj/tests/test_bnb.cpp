#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hynet/solver/branch_and_bound.hpp"

using namespace hynet;

TEST_CASE("bnb: min integer x subject to x >= 2.5 gives 3") {
    MipModel m;
    int x = m.add_variable(0, 10, true, 1.0, "x");
    m.add_constraint({{x, 1.0}}, Sense::GreaterEqual, 2.5, "lb");
    SolverResult res = branch_and_bound_solve(m, SolverConfig{});
    REQUIRE(res.status == SolveStatus::OptimalWithinGap);
    CHECK_THAT(res.objective, Catch::Matchers::WithinAbs(3.0, 1e-6));
    CHECK(res.gap() <= 1e-6);
}

TEST_CASE("bnb: infeasible system reported") {
    MipModel m;
    int x = m.add_variable(0, 10, true, 1.0, "x");
    m.add_constraint({{x, 1.0}}, Sense::LessEqual, 0.0, "le");
    m.add_constraint({{x, 1.0}}, Sense::GreaterEqual, 1.0, "ge");
    CHECK(branch_and_bound_solve(m, SolverConfig{}).status == SolveStatus::Infeasible);
}

TEST_CASE("bnb: knapsacks match exhaustive enumeration") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> value(1.0, 10.0);
    std::uniform_real_distribution<double> weight(1.0, 6.0);
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 5;
        std::vector<double> v(n), w(n);
        for (int i = 0; i < n; ++i) {
            v[i] = value(rng);
            w[i] = weight(rng);
        }
        const double cap = 0.4 * (w[0] + w[1] + w[2] + w[3] + w[4]);

        MipModel m;
        std::vector<std::pair<int, double>> row;
        for (int i = 0; i < n; ++i) {
            m.add_binary(-v[i], "item" + std::to_string(i));
            row.push_back({i, w[i]});
        }
        m.add_constraint(row, Sense::LessEqual, cap, "capacity");

        double best = 0.0;
        for (int mask = 0; mask < (1 << n); ++mask) {
            double tv = 0.0, tw = 0.0;
            for (int i = 0; i < n; ++i)
                if (mask & (1 << i)) {
                    tv += v[i];
                    tw += w[i];
                }
            if (tw <= cap) best = std::max(best, tv);
        }

        SolverConfig cfg;
        cfg.gap = 1e-9;
        SolverResult res = branch_and_bound_solve(m, cfg);
        REQUIRE(res.status == SolveStatus::OptimalWithinGap);
        CHECK_THAT(-res.objective, Catch::Matchers::WithinAbs(best, 1e-6));
        CHECK(m.is_feasible(res.values, 1e-6));
    }
}

TEST_CASE("bnb: integral LP solved at the root node") {
    // Transportation LP with integral data is naturally integral.
    MipModel m;
    int x01 = m.add_variable(0, 4, true, 1.0, "x01");
    int x02 = m.add_variable(0, 4, true, 2.0, "x02");
    m.add_constraint({{x01, 1.0}, {x02, 1.0}}, Sense::GreaterEqual, 5.0, "demand");
    SolverResult res = branch_and_bound_solve(m, SolverConfig{});
    REQUIRE(res.status == SolveStatus::OptimalWithinGap);
    CHECK(res.node_count == 1);
    CHECK_THAT(res.objective, Catch::Matchers::WithinAbs(6.0, 1e-6));
}

TEST_CASE("bnb: loose gap target is honored and reported") {
    // Knapsack-like model with a fractional relaxation.
    MipModel m;
    std::vector<std::pair<int, double>> row;
    for (int i = 0; i < 8; ++i) {
        m.add_binary(-(3.0 + i), "b" + std::to_string(i));
        row.push_back({i, 2.0 + 0.7 * i});
    }
    m.add_constraint(row, Sense::LessEqual, 11.0, "cap");
    SolverConfig cfg;
    cfg.gap = 0.10;
    SolverResult res = branch_and_bound_solve(m, cfg);
    REQUIRE(res.status == SolveStatus::OptimalWithinGap);
    CHECK(res.gap() <= 0.10 + 1e-12);
    CHECK(res.best_bound <= res.objective + 1e-12);
}

TEST_CASE("bnb: warm start supplies the incumbent under a node limit") {
    MipModel m;
    std::vector<std::pair<int, double>> row;
    for (int i = 0; i < 6; ++i) {
        m.add_binary(-(1.0 + i), "b" + std::to_string(i));
        row.push_back({i, 1.5 + 0.3 * i});
    }
    m.add_constraint(row, Sense::LessEqual, 5.0, "cap");
    m.warm_start = {1, 0, 0, 0, 0, 1}; // weight 1.5 + 3.0 <= 5, value 7
    SolverConfig cfg;
    cfg.node_limit = 0;
    SolverResult res = branch_and_bound_solve(m, cfg);
    REQUIRE(res.status == SolveStatus::FeasibleTimeLimit);
    CHECK_THAT(res.objective, Catch::Matchers::WithinAbs(-7.0, 1e-9));
    CHECK(res.has_solution());
}
