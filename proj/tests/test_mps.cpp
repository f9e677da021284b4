#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "hynet/solver/mps.hpp"
#include "hynet/solver/solve.hpp"

using namespace hynet;

namespace {

MipModel random_mip(unsigned seed) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> coef(-4.0, 4.0);
    std::uniform_real_distribution<double> rhs(1.0, 8.0);
    MipModel m;
    for (int j = 0; j < 6; ++j) m.add_binary(coef(rng), "b" + std::to_string(j));
    for (int j = 0; j < 4; ++j)
        m.add_variable(0.0, 5.0, false, coef(rng), "v" + std::to_string(j));
    for (int i = 0; i < 5; ++i) {
        std::vector<std::pair<int, double>> cs;
        for (int j = 0; j < 10; ++j)
            if ((j + i) % 3 != 0) cs.push_back({j, coef(rng)});
        const Sense sense = i % 2 == 0 ? Sense::LessEqual : Sense::GreaterEqual;
        m.add_constraint(std::move(cs), sense, rhs(rng), "row" + std::to_string(i));
    }
    return m;
}

} // namespace

TEST_CASE("mps: one-variable model has all sections and BV for binaries") {
    MipModel m;
    m.add_binary(2.5, "pick");
    m.add_constraint({{0, 1.0}}, Sense::GreaterEqual, 1.0, "must");
    MpsDocument doc = export_mps(m);
    CHECK(doc.text.find("ROWS") != std::string::npos);
    CHECK(doc.text.find("COLUMNS") != std::string::npos);
    CHECK(doc.text.find("RHS") != std::string::npos);
    CHECK(doc.text.find("BOUNDS") != std::string::npos);
    CHECK(doc.text.find("ENDATA") != std::string::npos);
    CHECK(doc.text.find("'INTORG'") != std::string::npos);
    CHECK(doc.text.find(" BV ") != std::string::npos);
}

TEST_CASE("mps: name collisions get deterministic suffixes") {
    MipModel m;
    m.add_variable(0, 1, false, 1.0, "same");
    m.add_variable(0, 1, false, 2.0, "same");
    m.add_variable(0, 1, false, 3.0, "same");
    m.add_constraint({{0, 1.0}, {1, 1.0}, {2, 1.0}}, Sense::LessEqual, 2.0, "r");
    MpsDocument doc = export_mps(m);
    CHECK(doc.variable_names[0] == "same");
    CHECK(doc.variable_names[1] == "same_1");
    CHECK(doc.variable_names[2] == "same_2");
    MpsDocument again = export_mps(m);
    CHECK(again.text == doc.text);
}

TEST_CASE("mps: round trip preserves the optimum on random models") {
    for (unsigned seed : {11u, 12u, 13u, 14u, 15u}) {
        MipModel m = random_mip(seed);
        SolverConfig cfg;
        cfg.gap = 1e-9;
        SolverResult direct = branch_and_bound_solve(m, cfg);

        MipModel back = read_mps(export_mps(m).text);
        REQUIRE(back.variable_count() == m.variable_count());
        REQUIRE(back.constraint_count() == m.constraint_count());
        SolverResult round = branch_and_bound_solve(back, cfg);

        REQUIRE(direct.status == round.status);
        if (direct.status == SolveStatus::OptimalWithinGap)
            CHECK_THAT(round.objective, Catch::Matchers::WithinAbs(direct.objective, 1e-7));
    }
}

TEST_CASE("mps: bound round trip for free, fixed and shifted variables") {
    MipModel m;
    m.add_variable(-kInf, kInf, false, 1.0, "free");
    m.add_variable(2.5, 2.5, false, 1.0, "fixed");
    m.add_variable(-3.0, 7.0, false, 1.0, "shifted");
    m.add_variable(-kInf, 4.0, false, 1.0, "upper_only");
    m.add_variable(0.0, kInf, true, 1.0, "general_int");
    m.add_constraint({{0, 1.0}, {1, 1.0}, {2, 1.0}, {3, 1.0}, {4, 1.0}}, Sense::GreaterEqual, -20.0,
                     "r");
    MipModel back = read_mps(export_mps(m).text);
    for (int j = 0; j < m.variable_count(); ++j) {
        CAPTURE(j);
        CHECK(back.variables[j].lower == m.variables[j].lower);
        CHECK(back.variables[j].upper == m.variables[j].upper);
        CHECK(back.variables[j].is_integer == m.variables[j].is_integer);
    }
}

TEST_CASE("solution parser: names map to values, comments and junk ignored") {
    std::string text = "# solver log\nb0 1\nv0 2.5 # trailing\nnoise_line\nunknown 9\n";
    std::vector<double> x = parse_solution(text, {"b0", "b1", "v0"});
    CHECK(x[0] == 1.0);
    CHECK(x[1] == 0.0);
    CHECK(x[2] == 2.5);
}

TEST_CASE("solve dispatch: internal, unknown, and inline external command") {
    MipModel m;
    int x = m.add_variable(0, 10, true, 1.0, "x");
    m.add_constraint({{x, 1.0}}, Sense::GreaterEqual, 2.5, "lb");

    SolverResult internal = solve(m, SolverConfig{}, "internal");
    CHECK(internal.status == SolveStatus::OptimalWithinGap);
    CHECK_THAT(internal.objective, Catch::Matchers::WithinAbs(3.0, 1e-6));

    CHECK_THROWS_AS(solve(m, SolverConfig{}, "no-such-backend"), std::invalid_argument);

    // A fake external solver: ignores the model file, emits the known answer.
    SolverResult ext = solve(m, SolverConfig{}, "external:: {mps}; printf 'x 3\\n' > {sol}");
    REQUIRE(ext.status == SolveStatus::OptimalWithinGap);
    CHECK_THAT(ext.objective, Catch::Matchers::WithinAbs(3.0, 1e-9));

    // A fake external solver returning an infeasible point is rejected.
    SolverResult bad = solve(m, SolverConfig{}, "external:: {mps}; printf 'x 1\\n' > {sol}");
    CHECK(bad.status == SolveStatus::Error);
}
