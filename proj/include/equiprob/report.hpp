#pragma once

// JSON encodings for certificates, verdicts, graphs and verification runs.
// Rationals are written as exact "num/den" strings.

#include "equiprob/geometry.hpp"
#include "equiprob/tableau_io.hpp"
#include "equiprob/typology.hpp"
#include "equiprob/verifier.hpp"

#include <cmath>
#include <string>

namespace eqp {

inline constexpr const char* kToolVersion = "0.1.0";

inline ojson to_json(const RationalVec& v) {
    ojson a = ojson::array();
    for (const auto& x : v) a.push_back(to_string(x));
    return a;
}

inline ojson to_json(const MappingId& m) { return ojson{{"ur", m.ur}, {"sr", m.sr}}; }

inline ojson number_or_string(double x) {
    if (std::isfinite(x)) return x;
    return x > 0 ? "inf" : "-inf";
}

inline ojson to_json(const MembershipCertificate& c) {
    ojson j;
    j["region"] = c.region == Region::cone ? "cone" : "hull";
    j["kind"] = c.member ? "member" : "non-member";
    if (c.member) {
        j["lambdas"] = to_json(c.lambdas);
        j["slack"] = to_json(c.slack);
    } else {
        j["separator"] = to_json(c.separator);
        j["threshold"] = to_string(c.threshold);
    }
    return j;
}

inline ojson to_json(const HgPossibility& p) {
    ojson j;
    j["possible"] = p.possible;
    if (p.possible) j["witness"] = to_json(p.witness);
    else j["refutation"] = to_json(p.refutation.ineq_multipliers);
    return j;
}

inline ojson to_json(const UniformInequalityVerdict& v) {
    ojson j;
    j["framework"] = to_string(v.framework);
    j["holds"] = v.holds;
    if (v.framework == Framework::shg) {
        j["semantics"] = "exact";
        j["vacuous"] = v.vacuous;
        if (v.left_possibility) j["left_hg_possibility"] = to_json(*v.left_possibility);
    } else {
        j["semantics"] = v.holds ? "necessary condition passes; candidate arrow pending numeric confirmation"
                                 : "necessary condition fails; uniform inequality refuted";
    }
    ojson certs = ojson::array();
    for (std::size_t i = 0; i < v.certificates.size(); ++i) {
        ojson c = to_json(v.certificates[i]);
        c["loser"] = v.losers[i];
        certs.push_back(std::move(c));
    }
    j["certificates"] = std::move(certs);
    return j;
}

inline ojson to_json(const EquiprobabilityVerdict& v) {
    ojson j;
    j["framework"] = to_string(v.framework);
    j["equal"] = v.equal;
    if (v.framework == Framework::me) {
        j["multiset_a"] = v.multiset_a;
        j["multiset_b"] = v.multiset_b;
        j["only_a"] = v.only_a;
        j["only_b"] = v.only_b;
    } else {
        j["hg_possible_a"] = v.possible_a;
        j["hg_possible_b"] = v.possible_b;
        j["nonredundant_a"] = v.nonredundant_a;
        j["nonredundant_b"] = v.nonredundant_b;
        j["rays_a"] = ojson(std::vector<DifferenceVector>(v.rays_a.begin(), v.rays_a.end()));
        j["rays_b"] = ojson(std::vector<DifferenceVector>(v.rays_b.begin(), v.rays_b.end()));
        ojson m = ojson::array();
        for (const auto& [a, b] : v.matched) m.push_back({a, b});
        j["matched"] = std::move(m);
        j["zero_losers_a"] = v.zero_a;
        j["zero_losers_b"] = v.zero_b;
    }
    return j;
}

inline ojson to_json(const TOrderGraph& g) {
    ojson j;
    j["framework"] = to_string(g.framework);
    if (g.framework == Framework::me_necessary) j["edge_semantics"] = "necessary condition only";
    ojson blocks = ojson::array();
    for (const auto& b : g.blocks) {
        ojson jb = ojson::array();
        for (const auto& m : b) jb.push_back(to_json(m));
        blocks.push_back(std::move(jb));
    }
    j["blocks"] = std::move(blocks);
    ojson red = ojson::array(), closed = ojson::array();
    for (const auto& [a, b] : g.reduced) red.push_back({a, b});
    for (const auto& [a, b] : g.closed) closed.push_back({a, b});
    j["edges_reduced"] = std::move(red);
    j["edges_closed"] = std::move(closed);
    return j;
}

inline ojson to_json(const ProbabilityEstimate& e) {
    return ojson{{"point", e.point}, {"standard_error", e.standard_error}, {"trials", e.trials},
                 {"credit", e.credit}, {"unit", e.unit}};
}

inline ojson to_json(const PairRecord& r, bool with_cells) {
    ojson j;
    j["a"] = to_json(r.a);
    j["b"] = to_json(r.b);
    j["me_equal"] = r.me_equal;
    j["shg_equal"] = r.shg_equal;
    j["shg_leq_ab"] = r.shg_leq_ab;
    j["shg_leq_ba"] = r.shg_leq_ba;
    j["max_me_gap"] = r.max_me_gap;
    if (!r.cells.empty()) {
        j["max_me_gap_weights"] = r.cells[r.max_me_gap_at].w;
        j["max_shg_gap"] = r.max_shg_gap;
        j["max_shg_se"] = number_or_string(r.max_shg_z);
        j["max_shg_gap_weights"] = r.cells[r.max_shg_at].w;
        j["max_shg_gap_seed"] = r.cells[r.max_shg_at].seed;
        j["max_se_a_over_b"] = number_or_string(r.max_z_ab);
        j["max_se_b_over_a"] = number_or_string(r.max_z_ba);
    }
    j["me_agrees"] = r.me_agrees;
    j["shg_agrees"] = r.shg_agrees;
    j["uniform_inequalities_agree"] = r.leq_agrees;
    if (with_cells) {
        ojson cells = ojson::array();
        for (const auto& c : r.cells)
            cells.push_back({{"weights", c.w}, {"seed", c.seed}, {"me_a", c.me_a}, {"me_b", c.me_b},
                             {"shg_a", to_json(c.shg_a)}, {"shg_b", to_json(c.shg_b)}});
        j["cells"] = std::move(cells);
    }
    return j;
}

inline ojson to_json(const VerificationReport& r, bool with_cells = false) {
    ojson j;
    ojson pairs = ojson::array();
    for (const auto& p : r.pairs) pairs.push_back(to_json(p, with_cells));
    j["pairs"] = std::move(pairs);
    j["violations"] = r.violations;
    j["all_agree"] = r.all_agree();
    return j;
}

inline ojson to_json(const TOrderValidation& v) {
    ojson j;
    j["weights"] = v.weights;
    ojson checks = ojson::array();
    for (const auto& c : v.checks)
        checks.push_back({{"a", to_json(c.a)}, {"b", to_json(c.b)}, {"kind", c.edge ? "edge" : "block"},
                          {"worst_se", number_or_string(c.worst_z)}, {"worst_weights", c.worst_at}, {"ok", c.ok}});
    j["checks"] = std::move(checks);
    j["violations"] = v.violations;
    return j;
}

inline ojson to_json(const CounterexampleResult& r) {
    ojson j;
    if (r.weights) {
        j["found"] = true;
        j["weights"] = *r.weights;
        j["gap"] = r.gap;
    } else {
        j["found"] = false;
    }
    j["evaluations"] = r.evaluations;
    ojson tr = ojson::array();
    for (const auto& t : r.trace) tr.push_back({{"weights", t.w}, {"gap", t.gap}});
    j["trace"] = std::move(tr);
    return j;
}

// Tab-separated gap traces for external plotting.
inline std::string plot_data(const VerificationReport& r) {
    std::string out = "pair\ta\tb\tweight_index\tweights\tme_a\tme_b\tshg_a\tshg_b\tshg_se\n";
    for (std::size_t i = 0; i < r.pairs.size(); ++i) {
        const auto& p = r.pairs[i];
        for (std::size_t wi = 0; wi < p.cells.size(); ++wi) {
            const auto& c = p.cells[wi];
            std::string w;
            for (double x : c.w) w += (w.empty() ? "" : ",") + ojson(x).dump();
            out += std::to_string(i) + "\t" + p.a.str() + "\t" + p.b.str() + "\t" + std::to_string(wi) + "\t" + w +
                   "\t" + ojson(c.me_a).dump() + "\t" + ojson(c.me_b).dump() + "\t" + ojson(c.shg_a.point).dump() +
                   "\t" + ojson(c.shg_b.point).dump() + "\t" + ojson(combined_se(c.shg_a, c.shg_b)).dump() + "\n";
        }
    }
    return out;
}

}  // namespace eqp
