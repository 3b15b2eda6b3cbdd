#include "equiprob/simplex.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

using namespace eqp;

namespace {

LinearRow row(std::vector<long long> a, long long b) { return {to_rational(a), from_int(b)}; }

FeasibilityProblem nonneg(std::size_t n) {
    FeasibilityProblem p;
    p.variables = n;
    p.nonnegative.assign(n, true);
    return p;
}

void expect_consistent(const FeasibilityProblem& p, const FeasibilityResult& r) {
    if (r.feasible) {
        EXPECT_TRUE(satisfies(p, r.assignment));
    } else {
        EXPECT_TRUE(refutes(p, r.certificate));
    }
}

// Oracle for problems with free variables: split each free x into p - q.
std::vector<oracle::Row> oracle_rows(const FeasibilityProblem& p, std::size_t& nv) {
    std::vector<std::size_t> col(p.variables);
    nv = 0;
    for (std::size_t j = 0; j < p.variables; ++j) {
        col[j] = nv;
        nv += p.nonnegative[j] ? 1 : 2;
    }
    std::vector<oracle::Row> out;
    auto expand = [&](const LinearRow& r, bool eq) {
        oracle::Row o;
        o.a.assign(nv, Rational(0));
        for (std::size_t j = 0; j < p.variables; ++j) {
            o.a[col[j]] = r.coeffs[j];
            if (!p.nonnegative[j]) o.a[col[j] + 1] = -r.coeffs[j];
        }
        o.b = r.rhs;
        o.equality = eq;
        out.push_back(o);
    };
    for (const auto& r : p.equalities) expand(r, true);
    for (const auto& r : p.inequalities) expand(r, false);
    return out;
}

}  // namespace

TEST(Simplex, EmptyProblemIsFeasible) {
    auto p = nonneg(0);
    auto r = solve_feasibility(p);
    EXPECT_TRUE(r.feasible);
    EXPECT_TRUE(r.assignment.empty());
}

TEST(Simplex, SingleBound) {
    auto p = nonneg(1);
    p.inequalities.push_back(row({1}, 3));
    auto r = solve_feasibility(p);
    ASSERT_TRUE(r.feasible);
    EXPECT_GE(r.assignment[0], 3);
}

TEST(Simplex, NegativeRequirementOnNonnegativeVariable) {
    auto p = nonneg(1);
    p.inequalities.push_back(row({-1}, 1));  // -x >= 1
    auto r = solve_feasibility(p);
    ASSERT_FALSE(r.feasible);
    EXPECT_TRUE(refutes(p, r.certificate));
}

TEST(Simplex, FreeVariableCanGoNegative) {
    FeasibilityProblem p;
    p.variables = 1;
    p.nonnegative = {false};
    p.equalities.push_back(row({1}, -5));
    auto r = solve_feasibility(p);
    ASSERT_TRUE(r.feasible);
    EXPECT_EQ(r.assignment[0], -5);
}

TEST(Simplex, ContradictoryEqualities) {
    auto p = nonneg(2);
    p.equalities.push_back(row({1, 1}, 1));
    p.equalities.push_back(row({1, 1}, 2));
    auto r = solve_feasibility(p);
    ASSERT_FALSE(r.feasible);
    EXPECT_TRUE(refutes(p, r.certificate));
}

TEST(Simplex, RedundantEqualitiesStayFeasible) {
    auto p = nonneg(2);
    p.equalities.push_back(row({1, 1}, 1));
    p.equalities.push_back(row({2, 2}, 2));
    auto r = solve_feasibility(p);
    ASSERT_TRUE(r.feasible);
    EXPECT_TRUE(satisfies(p, r.assignment));
}

TEST(Simplex, ExactFractionalSolution) {
    auto p = nonneg(2);
    p.equalities.push_back(row({3, 0}, 1));
    p.equalities.push_back(row({0, 7}, 2));
    auto r = solve_feasibility(p);
    ASSERT_TRUE(r.feasible);
    EXPECT_EQ(r.assignment[0], make_rational(1, 3));
    EXPECT_EQ(r.assignment[1], make_rational(2, 7));
}

TEST(Simplex, RejectsMalformedProblem) {
    FeasibilityProblem p;
    p.variables = 2;
    p.nonnegative = {true};
    EXPECT_THROW(solve_feasibility(p), std::invalid_argument);
    p.nonnegative = {true, true};
    p.inequalities.push_back(row({1}, 0));
    EXPECT_THROW(solve_feasibility(p), std::invalid_argument);
}

TEST(Simplex, CheckersRejectBadWitnesses) {
    auto p = nonneg(1);
    p.inequalities.push_back(row({1}, 1));
    EXPECT_FALSE(satisfies(p, {Rational(0)}));
    EXPECT_FALSE(satisfies(p, {}));
    // v = 1 gives r = 1 > 0 on a nonnegative column: not a refutation.
    EXPECT_FALSE(refutes(p, {{}, {Rational(1)}}));
    EXPECT_FALSE(refutes(p, {{}, {Rational(-1)}}));
}

// Random small systems against vertex enumeration.
TEST(SimplexProperty, AgreesWithVertexEnumeration) {
    int feasible = 0, infeasible = 0;
    for (std::uint64_t trial = 0; trial < 400; ++trial) {
        Stream rng(2024, trial);
        FeasibilityProblem p;
        p.variables = 1 + rng.next() % 4;
        for (std::size_t j = 0; j < p.variables; ++j) p.nonnegative.push_back(rng.next() % 4 != 0);
        std::size_t rows = 1 + rng.next() % 5;
        for (std::size_t i = 0; i < rows; ++i) {
            auto a = oracle::random_vec(rng, p.variables, -3, 3);
            long long b = static_cast<long long>(rng.next() % 7) - 3;
            if (rng.next() % 3 == 0) p.equalities.push_back(row(a, b));
            else p.inequalities.push_back(row(a, b));
        }
        auto r = solve_feasibility(p);
        expect_consistent(p, r);
        std::size_t nv = 0;
        auto orows = oracle_rows(p, nv);
        EXPECT_EQ(r.feasible, oracle::vertex_feasible(nv, orows).has_value()) << "trial " << trial;
        (r.feasible ? feasible : infeasible)++;
    }
    // The generator must exercise both outcomes.
    EXPECT_GT(feasible, 50);
    EXPECT_GT(infeasible, 50);
}

TEST(SimplexProperty, DegenerateSystemsTerminate) {
    // Many parallel, tight rows through the origin stress Bland's rule.
    for (std::uint64_t trial = 0; trial < 50; ++trial) {
        Stream rng(77, trial);
        auto p = nonneg(3);
        for (int i = 0; i < 8; ++i) p.inequalities.push_back(row(oracle::random_vec(rng, 3, -2, 2), 0));
        p.inequalities.push_back(row({1, 1, 1}, 1));
        auto r = solve_feasibility(p);
        expect_consistent(p, r);
        std::size_t nv = 0;
        auto orows = oracle_rows(p, nv);
        EXPECT_EQ(r.feasible, oracle::vertex_feasible(nv, orows).has_value());
    }
}
