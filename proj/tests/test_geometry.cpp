#include "equiprob/geometry.hpp"
#include "oracles.hpp"

#include <gtest/gtest.h>

#include <algorithm>

using namespace eqp;

namespace {

const std::vector<DifferenceVector> kFig1 = {{-2, 5}, {0, 1}, {5, 2}, {3, 4}};

}  // namespace

TEST(Geometry, Fig1ExtremeGenerators) {
    EXPECT_EQ(extreme_generators(kFig1), (std::vector<std::size_t>{0, 1}));
}

TEST(Geometry, Fig1NonredundantLosers) {
    EXPECT_EQ(nonredundant_losers(kFig1), (std::vector<std::size_t>{0}));
}

TEST(Geometry, Fig1Memberships) {
    // (3,4) dominates (0,1): in the hull region with lambda on (0,1).
    auto h = hull_orthant_member({3, 4}, {{-2, 5}, {0, 1}});
    EXPECT_TRUE(h.member);
    EXPECT_TRUE(check_certificate(h, {3, 4}, {{-2, 5}, {0, 1}}));
    // lambda = 1/5 on (-2,5) stays below (0,1).
    auto c = cone_orthant_member({0, 1}, {{-2, 5}});
    EXPECT_TRUE(c.member);
    EXPECT_TRUE(check_certificate(c, {0, 1}, {{-2, 5}}));
    // (-2,5) is not dominated by any nonnegative multiple of the others.
    auto s = cone_orthant_member({-2, 5}, {{0, 1}, {5, 2}, {3, 4}});
    EXPECT_FALSE(s.member);
    EXPECT_TRUE(check_certificate(s, {-2, 5}, {{0, 1}, {5, 2}, {3, 4}}));
}

TEST(Geometry, HullConeSeparation) {
    const std::vector<DifferenceVector> g = {{2, 0}, {0, 2}};
    auto c = cone_orthant_member({0, 0}, g);
    auto h = hull_orthant_member({0, 0}, g);
    EXPECT_TRUE(c.member);
    EXPECT_FALSE(h.member);
    EXPECT_TRUE(check_certificate(c, {0, 0}, g));
    EXPECT_TRUE(check_certificate(h, {0, 0}, g));
    // Separator: w.t < threshold <= w.g.
    Rational wt = dot(h.separator, to_rational({0, 0}));
    EXPECT_LT(wt, h.threshold);
}

TEST(Geometry, EmptyGenerators) {
    EXPECT_TRUE(cone_orthant_member({0, 1}, {}).member);
    EXPECT_FALSE(cone_orthant_member({0, -1}, {}).member);
    EXPECT_THROW(hull_orthant_member({0, 0}, {}), DomainError);
}

TEST(Geometry, DimensionMismatch) {
    EXPECT_THROW(cone_orthant_member({0, 1}, {{1, 2, 3}}), std::invalid_argument);
    EXPECT_THROW(extreme_generators({{1, 2}, {1}}), std::invalid_argument);
    EXPECT_THROW(nonredundant_losers({{1, 2}, {1}}), std::invalid_argument);
}

TEST(Geometry, CanonicalRay) {
    EXPECT_EQ(canonical_ray({2, -4, 6}), (DifferenceVector{1, -2, 3}));
    EXPECT_EQ(canonical_ray({0, 3}), (DifferenceVector{0, 1}));
    EXPECT_EQ(canonical_ray({-5}), (DifferenceVector{-1}));
    EXPECT_FALSE(canonical_ray({0, 0}).has_value());
}

TEST(Geometry, DuplicatesAndScaledCopies) {
    // Duplicates report the lowest index only; a scaled copy shares the ray.
    EXPECT_EQ(extreme_generators({{1, -1}, {1, -1}, {-1, 1}}), (std::vector<std::size_t>{0, 2}));
    EXPECT_EQ(nonredundant_losers({{1, -1}, {2, -2}, {-1, 1}}), (std::vector<std::size_t>{0, 2}));
    // Zero vectors never count as nonredundant, and neither does a loser that
    // already lies in the orthant.
    EXPECT_EQ(nonredundant_losers({{0, 0}, {1, -1}}), (std::vector<std::size_t>{1}));
    EXPECT_TRUE(nonredundant_losers({{0, 0}, {1, 0}}).empty());
    // (-1,-1) plus the orthant is the whole plane; the other rays go.
    EXPECT_EQ(nonredundant_losers({{1, -1}, {-1, 1}, {-1, -1}}), (std::vector<std::size_t>{2}));
    // A single generator is extreme.
    EXPECT_EQ(extreme_generators({{4, 4}}), (std::vector<std::size_t>{0}));
}

TEST(Geometry, HarmonicallyBoundedLoserIsRedundant) {
    // (1,0) is entrywise nonnegative: the zero-lambda combination shows it
    // lies in the orthant region of any generator set.
    EXPECT_TRUE(cone_orthant_member({1, 0}, {{-1, 3}}).member);
    EXPECT_EQ(nonredundant_losers({{-1, 3}, {1, 0}}), (std::vector<std::size_t>{0}));
}

// Oracle cross-checks in dimensions <= 3 with up to 5 generators.
TEST(GeometryProperty, MembershipMatchesVertexEnumeration) {
    int members[2] = {0, 0}, total = 0;
    for (std::uint64_t trial = 0; trial < 600; ++trial) {
        Stream rng(31, trial);
        std::size_t n = 1 + rng.next() % 3, m = 1 + rng.next() % 5;
        std::vector<DifferenceVector> gens;
        for (std::size_t i = 0; i < m; ++i) gens.push_back(oracle::random_vec(rng, n, -3, 3));
        auto t = oracle::random_vec(rng, n, -3, 3);
        for (bool hull : {false, true}) {
            auto c = hull ? hull_orthant_member(t, gens) : cone_orthant_member(t, gens);
            ASSERT_EQ(c.member, oracle::member(t, gens, hull)) << "trial " << trial << " hull " << hull;
            EXPECT_TRUE(check_certificate(c, t, gens));
            if (c.member) ++members[hull];
            // Grid hits are proofs of membership.
            if (m <= 3 && oracle::grid_member(t, gens, hull)) EXPECT_TRUE(c.member);
        }
        ++total;
    }
    EXPECT_GT(members[0], 50);
    EXPECT_GT(members[1], 50);
    EXPECT_LT(members[0], total);
}

TEST(GeometryProperty, HullRegionInsideConeRegion) {
    for (std::uint64_t trial = 0; trial < 300; ++trial) {
        Stream rng(5, trial);
        std::size_t n = 1 + rng.next() % 3, m = 1 + rng.next() % 5;
        std::vector<DifferenceVector> gens;
        for (std::size_t i = 0; i < m; ++i) gens.push_back(oracle::random_vec(rng, n, -3, 3));
        auto t = oracle::random_vec(rng, n, -3, 3);
        if (hull_orthant_member(t, gens).member) EXPECT_TRUE(cone_orthant_member(t, gens).member);
    }
}

TEST(GeometryProperty, Monotonicity) {
    // Adding generators or raising the target never loses membership.
    for (std::uint64_t trial = 0; trial < 300; ++trial) {
        Stream rng(9, trial);
        std::size_t n = 1 + rng.next() % 3, m = 1 + rng.next() % 4;
        std::vector<DifferenceVector> gens;
        for (std::size_t i = 0; i < m; ++i) gens.push_back(oracle::random_vec(rng, n, -3, 3));
        auto t = oracle::random_vec(rng, n, -3, 3);
        auto more = gens;
        more.push_back(oracle::random_vec(rng, n, -3, 3));
        auto up = t;
        up[rng.next() % n] += 1 + static_cast<long long>(rng.next() % 3);
        for (bool hull : {false, true}) {
            auto in = [&](const DifferenceVector& x, const std::vector<DifferenceVector>& g) {
                return hull ? hull_orthant_member(x, g).member : cone_orthant_member(x, g).member;
            };
            if (in(t, gens)) {
                EXPECT_TRUE(in(up, gens));
                if (!hull) EXPECT_TRUE(in(t, more));
            }
        }
        // Every generator lies in its own regions.
        for (const auto& g : gens) {
            EXPECT_TRUE(cone_orthant_member(g, gens).member);
            EXPECT_TRUE(hull_orthant_member(g, gens).member);
        }
    }
}

TEST(GeometryProperty, ExtremeGeneratorsSpanTheHullRegion) {
    for (std::uint64_t trial = 0; trial < 200; ++trial) {
        Stream rng(13, trial);
        std::size_t n = 1 + rng.next() % 3, m = 1 + rng.next() % 5;
        std::vector<DifferenceVector> gens;
        for (std::size_t i = 0; i < m; ++i) gens.push_back(oracle::random_vec(rng, n, -3, 3));
        auto ext = extreme_generators(gens);
        ASSERT_FALSE(ext.empty());
        std::vector<DifferenceVector> sub;
        for (auto i : ext) sub.push_back(gens[i]);
        // Non-extreme generators are in the region of the extreme ones; each
        // extreme one is outside the region of the others.
        for (std::size_t i = 0; i < m; ++i) {
            bool is_ext = std::find(ext.begin(), ext.end(), i) != ext.end();
            if (!is_ext) EXPECT_TRUE(oracle::member(gens[i], sub, true)) << "trial " << trial;
        }
        for (std::size_t a = 0; a < ext.size(); ++a) {
            std::vector<DifferenceVector> others;
            for (const auto& g : gens)
                if (g != gens[ext[a]]) others.push_back(g);
            if (!others.empty()) EXPECT_FALSE(oracle::member(gens[ext[a]], others, true));
        }
        // Sampled targets: same hull region with and without the non-extreme generators.
        for (int s = 0; s < 5; ++s) {
            auto t = oracle::random_vec(rng, n, -4, 4);
            EXPECT_EQ(hull_orthant_member(t, gens).member, hull_orthant_member(t, sub).member);
        }
    }
}

TEST(GeometryProperty, NonredundantLosersSpanTheConeRegion) {
    for (std::uint64_t trial = 0; trial < 200; ++trial) {
        Stream rng(17, trial);
        std::size_t n = 1 + rng.next() % 3, m = 1 + rng.next() % 5;
        std::vector<DifferenceVector> vs;
        for (std::size_t i = 0; i < m; ++i) vs.push_back(oracle::random_vec(rng, n, -3, 3));
        auto nr = nonredundant_losers(vs);
        std::vector<DifferenceVector> sub;
        for (auto i : nr) sub.push_back(vs[i]);
        for (const auto& v : vs) EXPECT_TRUE(oracle::member(v, sub, false)) << "trial " << trial;
        for (int s = 0; s < 5; ++s) {
            auto t = oracle::random_vec(rng, n, -4, 4);
            EXPECT_EQ(cone_orthant_member(t, vs).member, cone_orthant_member(t, sub).member);
        }
    }
}
