#pragma once

// Membership in cone(G) + R^n_+ and conv(G) + R^n_+, extreme generators,
// nonredundant losers and canonical rays. All decisions are exact.

#include "equiprob/rational.hpp"
#include "equiprob/simplex.hpp"
#include "equiprob/tableau.hpp"

#include <numeric>
#include <optional>
#include <stdexcept>
#include <vector>

namespace eqp {

enum class Region { cone, hull };

struct MembershipCertificate {
    Region region = Region::cone;
    bool member = false;
    RationalVec lambdas;    // member: one per generator
    RationalVec slack;      // member: target - sum lambda_i g_i >= 0
    RationalVec separator;  // non-member: w >= 0
    // Non-member, hull only: w.target < threshold <= w.g for every g.
    // In the cone case the threshold is 0.
    Rational threshold;
};

namespace detail {

inline void check_dims(const DifferenceVector& target, const std::vector<DifferenceVector>& gens) {
    for (const auto& g : gens)
        if (g.size() != target.size()) throw std::invalid_argument("dimension mismatch between target and generator");
}

inline MembershipCertificate membership(const DifferenceVector& target,
                                        const std::vector<DifferenceVector>& gens, Region region) {
    check_dims(target, gens);
    const std::size_t n = target.size(), m = gens.size();
    // Variables lambda_1..lambda_m >= 0; rows -sum_i lambda_i g_ik >= -t_k.
    FeasibilityProblem p;
    p.variables = m;
    p.nonnegative.assign(m, true);
    for (std::size_t k = 0; k < n; ++k) {
        LinearRow row;
        row.coeffs.resize(m);
        for (std::size_t i = 0; i < m; ++i) row.coeffs[i] = from_int(-gens[i][k]);
        row.rhs = from_int(-target[k]);
        p.inequalities.push_back(std::move(row));
    }
    if (region == Region::hull) p.equalities.push_back({RationalVec(m, Rational(1)), Rational(1)});

    FeasibilityResult r = solve_feasibility(p);
    MembershipCertificate c;
    c.region = region;
    c.member = r.feasible;
    if (r.feasible) {
        c.lambdas = r.assignment;
        c.slack.resize(n);
        for (std::size_t k = 0; k < n; ++k) {
            Rational s = from_int(target[k]);
            for (std::size_t i = 0; i < m; ++i) s -= c.lambdas[i] * from_int(gens[i][k]);
            c.slack[k] = s;
        }
    } else {
        c.separator = r.certificate.ineq_multipliers;
        c.threshold = region == Region::hull ? r.certificate.eq_multipliers[0] : Rational(0);
    }
    return c;
}

}  // namespace detail

inline MembershipCertificate cone_orthant_member(const DifferenceVector& target,
                                                 const std::vector<DifferenceVector>& gens) {
    return detail::membership(target, gens, Region::cone);
}

class DomainError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

inline MembershipCertificate hull_orthant_member(const DifferenceVector& target,
                                                 const std::vector<DifferenceVector>& gens) {
    if (gens.empty()) throw DomainError("convex hull of an empty generator list is empty");
    return detail::membership(target, gens, Region::hull);
}

// Exact re-verification of a certificate against its inputs.
inline bool check_certificate(const MembershipCertificate& c, const DifferenceVector& target,
                              const std::vector<DifferenceVector>& gens) {
    const std::size_t n = target.size(), m = gens.size();
    if (c.member) {
        if (c.lambdas.size() != m || c.slack.size() != n) return false;
        Rational sum = 0;
        for (const auto& l : c.lambdas) {
            if (l < 0) return false;
            sum += l;
        }
        if (c.region == Region::hull && sum != 1) return false;
        for (std::size_t k = 0; k < n; ++k) {
            Rational s = from_int(target[k]);
            for (std::size_t i = 0; i < m; ++i) s -= c.lambdas[i] * from_int(gens[i][k]);
            if (s != c.slack[k] || s < 0) return false;
        }
        return true;
    }
    if (c.separator.size() != n) return false;
    for (const auto& w : c.separator)
        if (w < 0) return false;
    RationalVec t = to_rational(target);
    Rational wt = dot(c.separator, t);
    Rational bound = c.region == Region::hull ? c.threshold : Rational(0);
    if (!(wt < bound)) return false;
    for (const auto& g : gens)
        if (dot(c.separator, to_rational(g)) < bound) return false;
    return true;
}

// Zero vector has no ray.
inline std::optional<DifferenceVector> canonical_ray(const DifferenceVector& v) {
    long long g = 0;
    for (long long x : v) g = std::gcd(g, x < 0 ? -x : x);
    if (g == 0) return std::nullopt;
    DifferenceVector r(v.size());
    for (std::size_t k = 0; k < v.size(); ++k) r[k] = v[k] / g;
    return r;
}

inline std::vector<std::size_t> extreme_generators(const std::vector<DifferenceVector>& gens) {
    for (const auto& g : gens)
        if (g.size() != gens.front().size()) throw std::invalid_argument("dimension mismatch between generators");
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < gens.size(); ++i) {
        bool dup_before = false;
        for (std::size_t j = 0; j < i && !dup_before; ++j) dup_before = gens[j] == gens[i];
        if (dup_before) continue;
        std::vector<DifferenceVector> rest;
        for (const auto& g : gens)
            if (g != gens[i]) rest.push_back(g);
        if (rest.empty() || !hull_orthant_member(gens[i], rest).member) out.push_back(i);
    }
    return out;
}

inline std::vector<std::size_t> nonredundant_losers(const std::vector<DifferenceVector>& vs) {
    for (const auto& v : vs)
        if (v.size() != vs.front().size()) throw std::invalid_argument("dimension mismatch between difference vectors");
    std::vector<std::optional<DifferenceVector>> rays;
    for (const auto& v : vs) rays.push_back(canonical_ray(v));
    // One index per ray; zero vectors are absorbed by lambda = 0.
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < vs.size(); ++i) {
        if (!rays[i]) continue;
        bool dup = false;
        for (std::size_t j : out) dup = dup || rays[j] == rays[i];
        if (!dup) out.push_back(i);
    }
    // Drop redundant rays one at a time so that the survivors still span the
    // region. Without a line in the region the order does not matter.
    for (std::size_t pos = 0; pos < out.size();) {
        std::vector<DifferenceVector> rest;
        for (std::size_t q = 0; q < out.size(); ++q)
            if (q != pos) rest.push_back(vs[out[q]]);
        if (cone_orthant_member(vs[out[pos]], rest).member)
            out.erase(out.begin() + static_cast<long>(pos));
        else
            ++pos;
    }
    return out;
}

}  // namespace eqp
