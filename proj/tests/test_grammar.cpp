#include "equiprob/grammar.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace eqp;

namespace {

InputEntry make_input(std::vector<IntVec> rows) {
    InputEntry in;
    in.ur = "x";
    for (std::size_t i = 0; i < rows.size(); ++i) in.candidates.push_back({"c" + std::to_string(i), rows[i], std::nullopt});
    return in;
}

}  // namespace

TEST(Grammar, Harmony) {
    EXPECT_DOUBLE_EQ(harmony({1.0, 2.0}, {3, 1}), -5.0);
    EXPECT_DOUBLE_EQ(harmony({0.0, 0.0}, {3, 1}), 0.0);
    EXPECT_THROW(harmony({1.0}, {1, 2}), std::invalid_argument);
}

TEST(Grammar, HgWinnersIncludeTies) {
    auto in = make_input({{1, 0}, {0, 1}, {1, 1}});
    EXPECT_EQ(hg_winners({1.0, 2.0}, in), (std::set<std::string>{"c0"}));
    EXPECT_EQ(hg_winners({1.0, 1.0}, in), (std::set<std::string>{"c0", "c1"}));
    // 0.1 + 0.2 != 0.3 in doubles; exact comparison keeps the tie decision honest.
    auto t = make_input({{3, 0}, {0, 1}});
    EXPECT_EQ(hg_winners({0.1, 0.3}, t).size(), 1u);
}

TEST(Grammar, WeightsMustBeNonnegative) {
    EXPECT_THROW(check_weights({-0.5}), std::invalid_argument);
    EXPECT_THROW(check_weights({NAN}), std::invalid_argument);
    EXPECT_NO_THROW(check_weights({0.0, 2.0}));
}

TEST(Grammar, MeClosedForm) {
    // One loser with difference 1 at weight ln 3: 1 / (1 + 1/3) = 3/4.
    EXPECT_NEAR(me_probability({std::log(3.0)}, {{1}}), 0.75, 1e-15);
    // No losers: probability one.
    EXPECT_DOUBLE_EQ(me_probability({1.0}, {}), 1.0);
    // w = 0: uniform over the candidates.
    EXPECT_NEAR(me_probability({0.0, 0.0}, {{1, 2}, {3, -1}}), 1.0 / 3.0, 1e-15);
}

TEST(Grammar, MeDistributionSumsToOne) {
    for (std::uint64_t trial = 0; trial < 100; ++trial) {
        Stream rng(3, trial);
        std::size_t n = 1 + rng.next() % 4, c = 1 + rng.next() % 5;
        std::vector<IntVec> rows;
        for (std::size_t i = 0; i < c; ++i) rows.push_back(oracle::random_vec(rng, n, 0, 5));
        WeightVector w(n);
        for (auto& x : w) x = 5 * rng.uniform();
        auto p = me_distribution(w, make_input(rows));
        double s = 0;
        for (double x : p) s += x;
        EXPECT_NEAR(s, 1.0, 1e-12);
        // Matches the unshifted definition through difference vectors.
        std::vector<DifferenceVector> d;
        for (std::size_t i = 1; i < c; ++i) d.push_back(subtract(rows[i], rows[0]));
        EXPECT_NEAR(p[0], oracle::me_prob_direct(w, d), 1e-12);
        EXPECT_NEAR(p[0], me_probability(w, d), 1e-12);
    }
}

TEST(Grammar, MeStableAtLargeWeights) {
    double p = me_probability({1000.0}, {{1}, {2}});
    EXPECT_DOUBLE_EQ(p, 1.0);
    double q = me_probability({1000.0}, {{-1}});
    EXPECT_GE(q, 0.0);
    EXPECT_LT(q, 1e-300);
}

TEST(Grammar, NoiseModeNames) {
    EXPECT_EQ(parse_noise_mode("raw"), NoiseMode::raw);
    EXPECT_EQ(parse_noise_mode("clip"), NoiseMode::clip);
    EXPECT_EQ(parse_noise_mode("truncate"), NoiseMode::truncate);
    EXPECT_THROW(parse_noise_mode("none"), std::invalid_argument);
    EXPECT_STREQ(to_string(NoiseMode::clip), "clip");
}

TEST(Grammar, ShgMatchesGaussianCdf) {
    // Winner (0), loser (1) with one constraint: winner iff w + eps > 0,
    // probability Phi(w / sigma) under raw noise.
    const std::uint64_t trials = 100000;
    auto e = shg_estimate_mapping({1.0}, {{1}}, {}, trials, 11);
    EXPECT_NEAR(e.point, oracle::phi(1.0), 3 * e.standard_error);
    // Two losers (1,0),(0,1): needs both noisy weights positive.
    auto f = shg_estimate_mapping({0.5, 1.0}, {{1, 0}, {0, 1}}, {}, trials, 12);
    double exact = oracle::phi(0.5) * oracle::phi(1.0);
    EXPECT_NEAR(f.point, exact, 3 * f.standard_error);
    // sigma scales the argument.
    auto g = shg_estimate_mapping({1.0}, {{1}}, {2.0, NoiseMode::raw}, trials, 13);
    EXPECT_NEAR(g.point, oracle::phi(0.5), 3 * g.standard_error);
}

TEST(Grammar, ShgSymmetricAtZero) {
    auto in = make_input({{1, 0}, {0, 1}});
    auto e = shg_estimate({0.0, 0.0}, in, {}, 100000, 5);
    EXPECT_NEAR(e[0].point, 0.5, 3 * e[0].standard_error);
}

TEST(Grammar, ShgCreditIsExact) {
    // Three identical candidates tie on every trial: each gets exactly 1/3.
    auto in = make_input({{1}, {1}, {1}, {2}});
    auto e = shg_estimate({1.0}, in, {}, 10000, 1);
    std::uint64_t total = 0;
    for (const auto& x : e) total += x.credit;
    EXPECT_EQ(total, e[0].unit * 10000);
    EXPECT_EQ(e[0].unit, 12u);
    EXPECT_EQ(e[0].credit, e[1].credit);
    EXPECT_EQ(e[1].credit, e[2].credit);
}

TEST(Grammar, ShgCreditSumsOnRandomTableaux) {
    for (std::uint64_t trial = 0; trial < 20; ++trial) {
        Stream rng(8, trial);
        std::size_t n = 1 + rng.next() % 3, c = 1 + rng.next() % 5;
        std::vector<IntVec> rows;
        for (std::size_t i = 0; i < c; ++i) rows.push_back(oracle::random_vec(rng, n, 0, 2));
        auto e = shg_estimate(WeightVector(n, 1.0), make_input(rows), {}, 5000, trial);
        std::uint64_t total = 0;
        double s = 0;
        for (const auto& x : e) {
            total += x.credit;
            s += x.point;
        }
        EXPECT_EQ(total, e[0].unit * 5000);
        EXPECT_NEAR(s, 1.0, 1e-12);
    }
}

TEST(Grammar, ShgReproducibleAcrossThreadCounts) {
    auto in = make_input({{1, 0}, {0, 1}, {1, 1}});
    auto a = shg_estimate({1.0, 0.5}, in, {}, 20000, 99, 1);
    auto b = shg_estimate({1.0, 0.5}, in, {}, 20000, 99, 4);
    auto c = shg_estimate({1.0, 0.5}, in, {}, 20000, 100, 1);
    for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(a[i].credit, b[i].credit);
    EXPECT_NE(a[0].credit, c[0].credit);
}

TEST(Grammar, ShgSingleCandidate) {
    auto e = shg_estimate({1.0}, make_input({{4}}), {}, 10, 1);
    EXPECT_EQ(e[0].point, 1.0);
    EXPECT_EQ(e[0].standard_error, 0.0);
}

TEST(Grammar, ShgArgumentChecks) {
    auto in = make_input({{1}, {0}});
    EXPECT_THROW(shg_estimate({1.0}, in, {}, 0, 1), std::invalid_argument);
    EXPECT_THROW(shg_estimate({-1.0}, in, {}, 10, 1), std::invalid_argument);
    EXPECT_THROW(shg_estimate({1.0}, in, {0.0, NoiseMode::raw}, 10, 1), std::invalid_argument);
    EXPECT_THROW(shg_estimate({1.0, 1.0}, in, {}, 10, 1), std::invalid_argument);
}

TEST(Grammar, ClippedAndTruncatedWeightsAreNonnegative) {
    WeightVector out;
    for (std::uint64_t t = 0; t < 2000; ++t) {
        Stream r1(4, t), r2(4, t);
        draw_weights({0.0, 0.3}, {1.0, NoiseMode::clip}, r1, out);
        for (double x : out) EXPECT_GE(x, 0.0);
        draw_weights({0.0, 0.3}, {1.0, NoiseMode::truncate}, r2, out);
        for (double x : out) EXPECT_GE(x, 0.0);
    }
}

TEST(Grammar, ClipMatchesRawWhereNoiseStaysPositive) {
    // With both noisy weights clipped at zero a tie appears; raw noise never
    // produces that tie. At large w the two modes agree.
    auto raw = shg_estimate_mapping({8.0}, {{1}}, {}, 20000, 21);
    auto clip = shg_estimate_mapping({8.0}, {{1}}, {1.0, NoiseMode::clip}, 20000, 21);
    EXPECT_EQ(raw.credit, clip.credit);
    // At w = 0 clipping hands half the mass to the tie.
    auto c0 = shg_estimate_mapping({0.0}, {{1}}, {1.0, NoiseMode::clip}, 40000, 22);
    EXPECT_NEAR(c0.point, 0.75, 3 * c0.standard_error + 1e-9);
}

TEST(Grammar, ShgScaleInvariantWithSigma) {
    // Scaling w and sigma together leaves the argmax unchanged trial by trial.
    auto a = shg_estimate_mapping({1.0, 2.0}, {{1, -1}, {-1, 2}}, {1.0, NoiseMode::raw}, 8192, 3);
    auto b = shg_estimate_mapping({4.0, 8.0}, {{1, -1}, {-1, 2}}, {4.0, NoiseMode::raw}, 8192, 3);
    EXPECT_EQ(a.credit, b.credit);
}
