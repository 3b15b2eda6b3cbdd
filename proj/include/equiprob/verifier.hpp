#pragma once

// Numeric cross-checks of the symbolic verdicts. ME is evaluated in closed
// form, SHG by Monte Carlo with common random numbers per (pair, w) cell.

#include "equiprob/grammar.hpp"
#include "equiprob/parallel.hpp"
#include "equiprob/rng.hpp"
#include "equiprob/typology.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <vector>

namespace eqp {

struct Thresholds {
    double consistent_se = 3.0;
    double different_se = 5.0;
    double me_gap = 1e-6;
    double me_roundoff = 1e-12;
};

struct SweepSpec {
    // Either an explicit grid (one value list per constraint, Cartesian
    // product) or random draws; an explicit list of vectors is appended.
    std::vector<std::vector<double>> grid;
    std::size_t random_count = 20;
    double max_weight = 4.0;
    std::uint64_t weight_seed = 1;
    std::vector<WeightVector> extra;
    // Per failing uniform inequality, add weights built from the separator.
    bool guided = false;
    std::vector<double> guided_scales = {1.0, 3.0, 10.0};
    bool me = true;
    bool shg = true;
    NoiseSpec noise;
    std::uint64_t trials = 200000;
    std::uint64_t shg_seed = 1;
    Thresholds thresholds;
};

inline std::vector<WeightVector> generate_weights(const SweepSpec& s, std::size_t n) {
    std::vector<WeightVector> out;
    if (!s.grid.empty()) {
        if (s.grid.size() != n) throw std::invalid_argument("grid needs one value list per constraint");
        std::size_t total = 1;
        for (const auto& g : s.grid) {
            if (g.empty()) throw std::invalid_argument("grid value list is empty");
            total *= g.size();
        }
        for (std::size_t idx = 0; idx < total; ++idx) {
            WeightVector w(n);
            std::size_t r = idx;
            for (std::size_t k = n; k-- > 0;) {
                w[k] = s.grid[k][r % s.grid[k].size()];
                r /= s.grid[k].size();
            }
            out.push_back(w);
        }
    } else {
        for (std::size_t i = 0; i < s.random_count; ++i) {
            Stream rng(s.weight_seed, i);
            WeightVector w(n);
            for (auto& x : w) x = s.max_weight * rng.uniform();
            out.push_back(w);
        }
    }
    for (const auto& w : s.extra) {
        if (w.size() != n) throw std::invalid_argument("extra weight vector has wrong length");
        out.push_back(w);
    }
    for (const auto& w : out) check_weights(w);
    if (out.empty()) throw std::invalid_argument("sweep generates no weight vectors");
    return out;
}

// Weights where a beats all its losers while some loser of b beats b's
// winner, read off the non-membership certificate of a <= b.
inline std::vector<WeightVector> guided_weights(const std::vector<DifferenceVector>& da,
                                                const std::vector<LabeledDifference>& db, std::size_t n,
                                                const std::vector<double>& scales) {
    std::vector<WeightVector> out;
    UniformInequalityVerdict v = shg_uniform_leq(da, db, n);
    if (v.holds) return out;
    const HgPossibility& pa = *v.left_possibility;
    for (std::size_t j = 0; j < v.certificates.size(); ++j) {
        const auto& c = v.certificates[j];
        if (c.member) continue;
        const RationalVec z = to_rational(db[j].vec);
        RationalVec w = c.separator;
        // Tilt towards the HG witness of a so its losers lose strictly while z
        // still beats b's winner.
        Rational wz = dot(w, z), az = dot(pa.witness, z);
        Rational eps = 1;
        if (az > 0) eps = std::min(Rational(1), Rational(-wz / (2 * az)));
        for (std::size_t k = 0; k < n; ++k) w[k] += eps * pa.witness[k];
        Rational margin = -dot(w, z);
        double len = 0;
        for (const auto& g : da) {
            margin = std::min(margin, Rational(dot(w, to_rational(g))));
            for (long long x : g) len = std::max(len, std::fabs(static_cast<double>(x)));
        }
        for (long long x : db[j].vec) len = std::max(len, std::fabs(static_cast<double>(x)));
        if (margin <= 0) continue;
        double base = to_double(margin);
        for (double s : scales) {
            WeightVector wd(n);
            for (std::size_t k = 0; k < n; ++k) wd[k] = s * std::max(1.0, len) * to_double(w[k]) / base;
            out.push_back(wd);
        }
        break;
    }
    return out;
}

struct CellResult {
    WeightVector w;
    double me_a = 0, me_b = 0;
    ProbabilityEstimate shg_a, shg_b;
    std::uint64_t seed = 0;
};

inline double combined_se(const ProbabilityEstimate& a, const ProbabilityEstimate& b) {
    return std::sqrt(a.standard_error * a.standard_error + b.standard_error * b.standard_error);
}

// Signed gap P(a) - P(b) in units of combined standard error.
inline double z_score(const ProbabilityEstimate& a, const ProbabilityEstimate& b) {
    double gap = a.point - b.point, se = combined_se(a, b);
    if (se == 0) return gap == 0 ? 0.0 : std::copysign(std::numeric_limits<double>::infinity(), gap);
    return gap / se;
}

struct PairRecord {
    MappingId a, b;
    bool me_equal = false;
    bool shg_equal = false;
    bool shg_leq_ab = false, shg_leq_ba = false;
    double max_me_gap = 0;
    std::size_t max_me_gap_at = 0;
    double max_shg_gap = 0;  // |P(a) - P(b)|
    double max_shg_z = 0;    // |z|
    std::size_t max_shg_at = 0;
    double max_z_ab = -std::numeric_limits<double>::infinity();  // max (P(a)-P(b))/se
    double max_z_ba = -std::numeric_limits<double>::infinity();
    std::size_t max_z_ab_at = 0, max_z_ba_at = 0;
    bool me_agrees = true;
    bool shg_agrees = true;
    bool leq_agrees = true;  // uniform inequality verdicts vs reverse gaps
    std::vector<CellResult> cells;
};

struct VerificationReport {
    std::vector<PairRecord> pairs;
    std::vector<std::string> violations;
    bool all_agree() const {
        for (const auto& p : pairs)
            if (!p.me_agrees || !p.shg_agrees || !p.leq_agrees) return false;
        return true;
    }
};

struct PairInput {
    MappingId a, b;
    std::vector<LabeledDifference> la, lb;
};

inline PairRecord compare_pair(const PairInput& in, std::size_t n, const SweepSpec& spec,
                               const std::vector<WeightVector>& base, std::size_t pair_index) {
    PairRecord r;
    r.a = in.a;
    r.b = in.b;
    std::vector<DifferenceVector> da, db;
    for (const auto& x : in.la) da.push_back(x.vec);
    for (const auto& x : in.lb) db.push_back(x.vec);
    r.me_equal = me_equiprobable(da, db).equal;
    if (spec.shg) {
        r.shg_equal = shg_equiprobable(da, db, n).equal;
        r.shg_leq_ab = shg_uniform_leq(da, in.lb, n).holds;
        r.shg_leq_ba = shg_uniform_leq(db, in.la, n).holds;
    }
    std::vector<WeightVector> ws = base;
    if (spec.guided && spec.shg) {
        // a not <= b: look for P(a) > P(b), and the mirror image.
        for (auto& w : guided_weights(da, in.lb, n, spec.guided_scales)) ws.push_back(w);
        for (auto& w : guided_weights(db, in.la, n, spec.guided_scales)) ws.push_back(w);
    }
    for (std::size_t wi = 0; wi < ws.size(); ++wi) {
        CellResult c;
        c.w = ws[wi];
        c.seed = mix_seed(spec.shg_seed, (static_cast<std::uint64_t>(pair_index) << 20) ^ wi);
        if (spec.me) {
            c.me_a = me_probability(c.w, da);
            c.me_b = me_probability(c.w, db);
            double gap = std::fabs(c.me_a - c.me_b);
            if (gap > r.max_me_gap) {
                r.max_me_gap = gap;
                r.max_me_gap_at = wi;
            }
        }
        if (spec.shg) {
            c.shg_a = shg_estimate_mapping(c.w, da, spec.noise, spec.trials, c.seed, 1);
            c.shg_b = shg_estimate_mapping(c.w, db, spec.noise, spec.trials, c.seed, 1);
            double z = z_score(c.shg_a, c.shg_b);
            double gap = std::fabs(c.shg_a.point - c.shg_b.point);
            if (wi == 0 || std::fabs(z) > r.max_shg_z) {
                r.max_shg_z = std::fabs(z);
                r.max_shg_gap = gap;
                r.max_shg_at = wi;
            }
            if (z > r.max_z_ab) { r.max_z_ab = z; r.max_z_ab_at = wi; }
            if (-z > r.max_z_ba) { r.max_z_ba = -z; r.max_z_ba_at = wi; }
        }
        r.cells.push_back(std::move(c));
    }
    const Thresholds& th = spec.thresholds;
    if (spec.me) r.me_agrees = r.me_equal ? r.max_me_gap <= th.me_roundoff : r.max_me_gap > th.me_gap;
    if (spec.shg) {
        r.shg_agrees = r.shg_equal ? r.max_shg_z <= th.consistent_se : r.max_shg_z >= th.different_se;
        // a <= b holds: no reverse gap of 5 se; fails: some w with P(a) > P(b) by 5 se.
        bool ab = r.shg_leq_ab ? r.max_z_ab < th.different_se : r.max_z_ab >= th.different_se;
        bool ba = r.shg_leq_ba ? r.max_z_ba < th.different_se : r.max_z_ba >= th.different_se;
        r.leq_agrees = ab && ba;
    }
    return r;
}

inline VerificationReport sweep_compare(const Tableau& t, const std::vector<std::pair<MappingId, MappingId>>& pairs,
                                        const SweepSpec& spec, unsigned threads = 0) {
    const std::size_t n = t.constraints.size();
    std::vector<WeightVector> base = generate_weights(spec, n);
    std::vector<PairInput> inputs;
    for (const auto& [a, b] : pairs) inputs.push_back({a, b, difference_vectors(t, a), difference_vectors(t, b)});
    VerificationReport rep;
    rep.pairs.resize(pairs.size());
    parallel_for(
        pairs.size(), [&](std::size_t i) { rep.pairs[i] = compare_pair(inputs[i], n, spec, base, i); }, threads);
    for (const auto& p : rep.pairs) {
        if (!p.me_agrees) rep.violations.push_back("me verdict disagrees with sweep for " + p.a.str() + " vs " + p.b.str());
        if (!p.shg_agrees) rep.violations.push_back("shg verdict disagrees with sweep for " + p.a.str() + " vs " + p.b.str());
        if (!p.leq_agrees) rep.violations.push_back("shg uniform inequality disagrees with sweep for " + p.a.str() + " vs " + p.b.str());
    }
    return rep;
}

struct CounterexampleResult {
    std::optional<WeightVector> weights;
    double gap = 0;
    std::size_t evaluations = 0;
    struct TracePoint {
        WeightVector w;
        double gap;
    };
    std::vector<TracePoint> trace;  // best point of each start
};

// Multi-start random search with coordinate ascent on |P_ME(a) - P_ME(b)|.
inline CounterexampleResult find_me_counterexample(const std::vector<DifferenceVector>& da,
                                                   const std::vector<DifferenceVector>& db, std::size_t n,
                                                   std::size_t budget, std::uint64_t seed,
                                                   double min_gap = 1e-6) {
    if (me_equiprobable(da, db).equal) throw DomainError("mappings are ME-equiprobable; no counterexample exists");
    CounterexampleResult res;
    auto gap_at = [&](const WeightVector& w) {
        ++res.evaluations;
        return std::fabs(me_probability(w, da) - me_probability(w, db));
    };
    const double scales[] = {1.0, 4.0, 16.0};
    for (std::size_t start = 0; res.evaluations < budget; ++start) {
        WeightVector w(n, 0.0);
        double s = scales[start % 3];
        if (start > 0) {
            Stream rng(seed, start);
            for (auto& x : w) x = s * rng.uniform();
        }
        double best = gap_at(w);
        if (best > min_gap) {
            res.weights = w;
            res.gap = best;
            res.trace.push_back({w, best});
            return res;
        }
        for (double step = s / 2; step > 1e-3 && res.evaluations < budget; step /= 2) {
            bool improved = true;
            while (improved && res.evaluations < budget) {
                improved = false;
                for (std::size_t k = 0; k < n && res.evaluations < budget; ++k)
                    for (double dir : {1.0, -1.0}) {
                        if (res.evaluations >= budget) break;
                        WeightVector c = w;
                        c[k] = std::max(0.0, c[k] + dir * step);
                        if (c[k] == w[k]) continue;
                        double g = gap_at(c);
                        if (g > min_gap) {
                            res.weights = c;
                            res.gap = g;
                            res.trace.push_back({c, g});
                            return res;
                        }
                        if (g > best) {
                            best = g;
                            w = c;
                            improved = true;
                        }
                    }
            }
        }
        res.trace.push_back({w, best});
    }
    return res;
}

inline CounterexampleResult find_me_counterexample(const Tableau& t, const MappingId& a, const MappingId& b,
                                                   std::size_t budget, std::uint64_t seed) {
    return find_me_counterexample(difference_vector_list(t, a), difference_vector_list(t, b), t.constraints.size(),
                                  budget, seed);
}

struct MonteCarloCheck {
    MappingId a, b;
    bool edge = false;  // true: expects P(a) <= P(b); false: block pair, expects equality
    double worst_z = 0;
    std::size_t worst_at = 0;
    bool ok = true;
};

struct TOrderValidation {
    std::vector<WeightVector> weights;
    std::vector<MonteCarloCheck> checks;
    std::vector<std::string> violations;
};

// Every reduced edge is checked on block representatives; every block
// member is checked against its representative.
inline TOrderValidation mc_validate_torder(const Tableau& t, const TOrderGraph& g, const NoiseSpec& noise,
                                           std::uint64_t trials, const SweepSpec& weights,
                                           double consistent_se = 3.0, unsigned threads = 0) {
    TOrderValidation out;
    out.weights = generate_weights(weights, t.constraints.size());
    for (const auto& [a, b] : g.reduced) out.checks.push_back({g.blocks[a].front(), g.blocks[b].front(), true});
    for (const auto& blk : g.blocks)
        for (std::size_t i = 1; i < blk.size(); ++i) out.checks.push_back({blk.front(), blk[i], false});
    parallel_for(
        out.checks.size(),
        [&](std::size_t ci) {
            auto& c = out.checks[ci];
            auto da = difference_vector_list(t, c.a), db = difference_vector_list(t, c.b);
            for (std::size_t wi = 0; wi < out.weights.size(); ++wi) {
                std::uint64_t seed = mix_seed(weights.shg_seed, (static_cast<std::uint64_t>(ci) << 20) ^ wi);
                auto pa = shg_estimate_mapping(out.weights[wi], da, noise, trials, seed, 1);
                auto pb = shg_estimate_mapping(out.weights[wi], db, noise, trials, seed, 1);
                double z = z_score(pa, pb);
                double bad = c.edge ? z : std::fabs(z);
                if (wi == 0 || bad > c.worst_z) {
                    c.worst_z = bad;
                    c.worst_at = wi;
                }
            }
            c.ok = c.worst_z <= consistent_se;
        },
        threads);
    for (const auto& c : out.checks)
        if (!c.ok)
            out.violations.push_back(std::string(c.edge ? "edge " : "block pair ") + c.a.str() + " vs " + c.b.str() +
                                     ": " + std::to_string(c.worst_z) + " se at weight vector " +
                                     std::to_string(c.worst_at));
    return out;
}

}  // namespace eqp
