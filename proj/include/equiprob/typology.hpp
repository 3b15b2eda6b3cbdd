#pragma once

#include "equiprob/geometry.hpp"
#include "equiprob/parallel.hpp"
#include "equiprob/tableau.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace eqp {

enum class Framework { shg, me_necessary, me, hg };

inline const char* to_string(Framework f) {
    switch (f) {
        case Framework::shg: return "shg";
        case Framework::me_necessary: return "me-necessary";
        case Framework::me: return "me";
        case Framework::hg: return "hg";
    }
    return "shg";
}

struct HgPossibility {
    bool possible = false;
    RationalVec witness;       // w >= 0 with w . c_i >= 1 for all losers
    DualCertificate refutation;  // present iff impossible
};

inline HgPossibility hg_possible(const std::vector<DifferenceVector>& diffs, std::size_t n) {
    HgPossibility out;
    if (diffs.empty()) {
        out.possible = true;
        out.witness.assign(n, Rational(0));
        return out;
    }
    // w . c > 0 for all c is feasible iff w . c >= 1 is (scale w up).
    FeasibilityProblem p;
    p.variables = n;
    p.nonnegative.assign(n, true);
    for (const auto& c : diffs) p.inequalities.push_back({to_rational(c), Rational(1)});
    FeasibilityResult r = solve_feasibility(p);
    out.possible = r.feasible;
    if (r.feasible) out.witness = r.assignment;
    else out.refutation = r.certificate;
    return out;
}

inline HgPossibility hg_possible(const Tableau& t, const MappingId& a) {
    return hg_possible(difference_vector_list(t, a), t.constraints.size());
}

struct UniformInequalityVerdict {
    Framework framework = Framework::shg;
    bool holds = false;
    bool vacuous = false;  // shg: left mapping impossible in HG
    // One per loser of the right-hand mapping, in candidate order.
    std::vector<std::string> losers;
    std::vector<MembershipCertificate> certificates;
    std::optional<HgPossibility> left_possibility;
};

// P_SHG(a) <= P_SHG(b) for every w >= 0, decided on difference vectors.
inline UniformInequalityVerdict shg_uniform_leq(const std::vector<DifferenceVector>& da,
                                                const std::vector<LabeledDifference>& db, std::size_t n) {
    UniformInequalityVerdict v;
    v.framework = Framework::shg;
    v.left_possibility = hg_possible(da, n);
    if (!v.left_possibility->possible) {
        v.holds = true;
        v.vacuous = true;
        return v;
    }
    v.holds = true;
    for (const auto& z : db) {
        v.losers.push_back(z.loser);
        v.certificates.push_back(cone_orthant_member(z.vec, da));
        if (!v.certificates.back().member) v.holds = false;
    }
    return v;
}

inline UniformInequalityVerdict shg_uniform_leq(const Tableau& t, const MappingId& a, const MappingId& b) {
    return shg_uniform_leq(difference_vector_list(t, a), difference_vectors(t, b), t.constraints.size());
}

// Necessary condition for P_ME(a) <= P_ME(b) for every w >= 0.
inline UniformInequalityVerdict me_uniform_leq_necessary(const std::vector<DifferenceVector>& da,
                                                         const std::vector<LabeledDifference>& db) {
    UniformInequalityVerdict v;
    v.framework = Framework::me_necessary;
    if (da.empty()) {
        // P_ME(a) is identically 1.
        v.holds = db.empty();
        return v;
    }
    v.holds = true;
    for (const auto& z : db) {
        v.losers.push_back(z.loser);
        v.certificates.push_back(hull_orthant_member(z.vec, da));
        if (!v.certificates.back().member) v.holds = false;
    }
    return v;
}

inline UniformInequalityVerdict me_uniform_leq_necessary(const Tableau& t, const MappingId& a, const MappingId& b) {
    return me_uniform_leq_necessary(difference_vector_list(t, a), difference_vectors(t, b));
}

struct EquiprobabilityVerdict {
    Framework framework = Framework::me;
    bool equal = false;
    // me: sorted multisets and their symmetric difference
    std::vector<DifferenceVector> multiset_a, multiset_b;
    std::vector<DifferenceVector> only_a, only_b;
    // shg / hg
    std::vector<std::size_t> nonredundant_a, nonredundant_b;
    std::set<DifferenceVector> rays_a, rays_b;
    std::vector<std::pair<std::size_t, std::size_t>> matched;  // index pairs into the difference lists
    bool possible_a = true, possible_b = true;
    std::vector<std::size_t> zero_a, zero_b;  // losers tying the winner everywhere
};

inline EquiprobabilityVerdict me_equiprobable(std::vector<DifferenceVector> da, std::vector<DifferenceVector> db) {
    EquiprobabilityVerdict v;
    v.framework = Framework::me;
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    std::set_difference(da.begin(), da.end(), db.begin(), db.end(), std::back_inserter(v.only_a));
    std::set_difference(db.begin(), db.end(), da.begin(), da.end(), std::back_inserter(v.only_b));
    v.equal = v.only_a.empty() && v.only_b.empty();
    v.multiset_a = std::move(da);
    v.multiset_b = std::move(db);
    return v;
}

inline EquiprobabilityVerdict me_equiprobable(const Tableau& t, const MappingId& a, const MappingId& b) {
    return me_equiprobable(difference_vector_list(t, a), difference_vector_list(t, b));
}

inline EquiprobabilityVerdict shg_equiprobable(const std::vector<DifferenceVector>& da,
                                               const std::vector<DifferenceVector>& db, std::size_t n,
                                               Framework tag = Framework::shg) {
    EquiprobabilityVerdict v;
    v.framework = tag;
    for (std::size_t i = 0; i < da.size(); ++i)
        if (!canonical_ray(da[i])) v.zero_a.push_back(i);
    for (std::size_t i = 0; i < db.size(); ++i)
        if (!canonical_ray(db[i])) v.zero_b.push_back(i);
    v.possible_a = hg_possible(da, n).possible;
    v.possible_b = hg_possible(db, n).possible;
    v.nonredundant_a = nonredundant_losers(da);
    v.nonredundant_b = nonredundant_losers(db);
    std::map<DifferenceVector, std::size_t> ra, rb;
    for (std::size_t i : v.nonredundant_a) ra.emplace(*canonical_ray(da[i]), i);
    for (std::size_t i : v.nonredundant_b) rb.emplace(*canonical_ray(db[i]), i);
    for (const auto& [r, i] : ra) v.rays_a.insert(r);
    for (const auto& [r, i] : rb) v.rays_b.insert(r);
    for (const auto& [r, i] : ra) {
        auto it = rb.find(r);
        if (it != rb.end()) v.matched.emplace_back(i, it->second);
    }
    if (!v.possible_a || !v.possible_b) {
        // Both impossible: both probabilities vanish in the HG sense and the
        // inequalities hold vacuously both ways.
        v.equal = !v.possible_a && !v.possible_b;
    } else {
        v.equal = v.rays_a == v.rays_b;
    }
    return v;
}

inline EquiprobabilityVerdict shg_equiprobable(const Tableau& t, const MappingId& a, const MappingId& b) {
    return shg_equiprobable(difference_vector_list(t, a), difference_vector_list(t, b), t.constraints.size());
}

inline EquiprobabilityVerdict hg_equivalent(const Tableau& t, const MappingId& a, const MappingId& b) {
    return shg_equiprobable(difference_vector_list(t, a), difference_vector_list(t, b), t.constraints.size(),
                            Framework::hg);
}

struct TOrderGraph {
    Framework framework = Framework::shg;
    std::vector<std::vector<MappingId>> blocks;
    std::set<std::pair<std::size_t, std::size_t>> closed;   // a <= b, transitively closed
    std::set<std::pair<std::size_t, std::size_t>> reduced;  // transitive reduction
    std::size_t block_of(const MappingId& m) const {
        for (std::size_t i = 0; i < blocks.size(); ++i)
            for (const auto& x : blocks[i])
                if (x == m) return i;
        throw LookupError("mapping " + m.str() + " is not in the graph");
    }
};

namespace detail {

struct UnionFind {
    std::vector<std::size_t> parent;
    explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
    std::size_t find(std::size_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

}  // namespace detail

inline TOrderGraph torder(const Tableau& t, Framework framework, const std::vector<MappingId>& mappings,
                          unsigned threads = 0) {
    if (framework != Framework::shg && framework != Framework::me_necessary)
        throw std::invalid_argument("torder supports shg and me-necessary");
    const std::size_t k = mappings.size();
    const std::size_t n = t.constraints.size();
    std::vector<std::vector<LabeledDifference>> ld(k);
    std::vector<std::vector<DifferenceVector>> d(k);
    for (std::size_t i = 0; i < k; ++i) {
        ld[i] = difference_vectors(t, mappings[i]);
        for (const auto& x : ld[i]) d[i].push_back(x.vec);
    }
    // leq[i][j]: mapping i <= mapping j. Every ordered pair is decided once,
    // then blocks are the mutual pairs (shg uses the ray test, which agrees).
    std::vector<char> leq(k * k, 0);
    parallel_for(
        k * k,
        [&](std::size_t idx) {
            std::size_t i = idx / k, j = idx % k;
            if (i == j) { leq[idx] = 1; return; }
            leq[idx] = framework == Framework::shg ? shg_uniform_leq(d[i], ld[j], n).holds
                                                   : me_uniform_leq_necessary(d[i], ld[j]).holds;
        },
        threads);
    detail::UnionFind uf(k);
    if (framework == Framework::shg) {
        std::vector<char> eq(k * k, 0);
        parallel_for(
            k * k,
            [&](std::size_t idx) {
                std::size_t i = idx / k, j = idx % k;
                if (i < j) eq[idx] = shg_equiprobable(d[i], d[j], n).equal;
            },
            threads);
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                if (eq[i * k + j]) uf.unite(i, j);
    } else {
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                if (leq[i * k + j] && leq[j * k + i]) uf.unite(i, j);
    }
    // Block relation over representatives, closed transitively, then any
    // cycle is merged (antisymmetry) and the closure recomputed.
    for (;;) {
        std::vector<std::size_t> roots;
        for (std::size_t i = 0; i < k; ++i)
            if (uf.find(i) == i) roots.push_back(i);
        const std::size_t B = roots.size();
        std::vector<char> R(B * B, 0);
        for (std::size_t a = 0; a < B; ++a)
            for (std::size_t b = 0; b < B; ++b) R[a * B + b] = leq[roots[a] * k + roots[b]];
        for (std::size_t m = 0; m < B; ++m)
            for (std::size_t a = 0; a < B; ++a)
                if (R[a * B + m])
                    for (std::size_t b = 0; b < B; ++b)
                        if (R[m * B + b]) R[a * B + b] = 1;
        bool merged = false;
        for (std::size_t a = 0; a < B; ++a)
            for (std::size_t b = a + 1; b < B; ++b)
                if (R[a * B + b] && R[b * B + a]) {
                    uf.unite(roots[a], roots[b]);
                    merged = true;
                }
        if (merged) continue;

        TOrderGraph g;
        g.framework = framework;
        // Blocks ordered by their first mapping in input order; members keep input order.
        std::vector<std::size_t> block_index(k, SIZE_MAX);
        std::vector<std::size_t> root_block(B);
        for (std::size_t i = 0; i < k; ++i) {
            std::size_t r = uf.find(i);
            if (block_index[r] == SIZE_MAX) {
                block_index[r] = g.blocks.size();
                g.blocks.emplace_back();
            }
            g.blocks[block_index[r]].push_back(mappings[i]);
        }
        for (std::size_t a = 0; a < B; ++a) root_block[a] = block_index[roots[a]];
        for (std::size_t a = 0; a < B; ++a)
            for (std::size_t b = 0; b < B; ++b)
                if (a != b && R[a * B + b]) g.closed.insert({root_block[a], root_block[b]});
        for (const auto& [a, b] : g.closed) {
            bool via = false;
            for (std::size_t m = 0; m < g.blocks.size() && !via; ++m)
                via = m != a && m != b && g.closed.count({a, m}) && g.closed.count({m, b});
            if (!via) g.reduced.insert({a, b});
        }
        return g;
    }
}

// Graphviz text for the reduced order.
inline std::string to_dot(const TOrderGraph& g) {
    auto esc = [](const std::string& s) {
        std::string o;
        for (char c : s) {
            if (c == '"' || c == '\\') o += '\\';
            o += c;
        }
        return o;
    };
    std::string out = "digraph torder {\n  rankdir=LR;\n  node [shape=box];\n";
    for (std::size_t i = 0; i < g.blocks.size(); ++i) {
        std::string label;
        for (const auto& m : g.blocks[i]) label += (label.empty() ? "" : "\\n") + esc(m.str());
        out += "  B" + std::to_string(i + 1) + " [label=\"" + label + "\"];\n";
    }
    const bool necessary = g.framework == Framework::me_necessary;
    for (const auto& [a, b] : g.reduced) {
        out += "  B" + std::to_string(a + 1) + " -> B" + std::to_string(b + 1);
        out += necessary ? " [style=dashed, label=\"necessary\"];\n" : ";\n";
    }
    out += "}\n";
    return out;
}

}  // namespace eqp
