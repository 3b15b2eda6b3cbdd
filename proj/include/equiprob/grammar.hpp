#pragma once

#include "equiprob/parallel.hpp"
#include "equiprob/rational.hpp"
#include "equiprob/rng.hpp"
#include "equiprob/tableau.hpp"

#include <cmath>
#include <cstdint>
#include <numeric>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace eqp {

using WeightVector = std::vector<double>;

inline void check_weights(const WeightVector& w) {
    for (double x : w)
        if (!(x >= 0) || !std::isfinite(x)) throw std::invalid_argument("weights must be finite and nonnegative");
}

inline double harmony(const WeightVector& w, const IntVec& violations) {
    if (w.size() != violations.size()) throw std::invalid_argument("dimension mismatch between weights and violations");
    double h = 0;
    for (std::size_t k = 0; k < w.size(); ++k) h -= w[k] * static_cast<double>(violations[k]);
    return h;
}

// Argmax set, compared exactly (doubles are exact dyadic rationals).
inline std::set<std::string> hg_winners(const WeightVector& w, const InputEntry& in) {
    if (in.candidates.empty()) throw std::invalid_argument("input has no candidates");
    RationalVec wq;
    for (double x : w) wq.emplace_back(x);
    std::vector<Rational> h;
    for (const auto& c : in.candidates) {
        if (c.violations.size() != w.size()) throw std::invalid_argument("dimension mismatch between weights and violations");
        Rational s = 0;
        for (std::size_t k = 0; k < w.size(); ++k) s -= wq[k] * from_int(c.violations[k]);
        h.push_back(s);
    }
    Rational best = *std::max_element(h.begin(), h.end());
    std::set<std::string> out;
    for (std::size_t i = 0; i < h.size(); ++i)
        if (h[i] == best) out.insert(in.candidates[i].sr);
    return out;
}

inline std::vector<double> me_distribution(const WeightVector& w, const InputEntry& in) {
    if (in.candidates.empty()) throw std::invalid_argument("input has no candidates");
    std::vector<double> h;
    for (const auto& c : in.candidates) h.push_back(harmony(w, c.violations));
    double mx = *std::max_element(h.begin(), h.end());
    double z = 0;
    for (double& x : h) {
        x = std::exp(x - mx);
        z += x;
    }
    for (double& x : h) x /= z;
    return h;
}

// ME probability of a winner from its difference vectors:
// 1 / (1 + sum_i exp(-w . c_i)), shifted for stability.
inline double me_probability(const WeightVector& w, const std::vector<DifferenceVector>& diffs) {
    std::vector<double> e;
    e.reserve(diffs.size() + 1);
    e.push_back(0.0);
    for (const auto& c : diffs) e.push_back(harmony(w, c));
    double mx = *std::max_element(e.begin(), e.end());
    double z = 0;
    for (double x : e) z += std::exp(x - mx);
    return std::exp(-mx) / z;
}

enum class NoiseMode {
    raw,       // w + eps, effective weights may go negative
    clip,      // max(0, w + eps)
    truncate,  // eps redrawn until w + eps >= 0
};

inline const char* to_string(NoiseMode m) {
    switch (m) {
        case NoiseMode::raw: return "raw";
        case NoiseMode::clip: return "clip";
        case NoiseMode::truncate: return "truncate";
    }
    return "raw";
}

inline NoiseMode parse_noise_mode(const std::string& s) {
    if (s == "raw") return NoiseMode::raw;
    if (s == "clip") return NoiseMode::clip;
    if (s == "truncate") return NoiseMode::truncate;
    throw std::invalid_argument("unknown noise mode '" + s + "' (raw | clip | truncate)");
}

struct NoiseSpec {
    double sigma = 1.0;
    NoiseMode mode = NoiseMode::raw;
};

inline void check_noise(const NoiseSpec& n) {
    if (!(n.sigma > 0) || !std::isfinite(n.sigma)) throw std::invalid_argument("sigma must be positive");
}

struct ProbabilityEstimate {
    double point = 0;
    double standard_error = 0;
    std::uint64_t trials = 0;
    // Exact credit in units of 1/(unit * trials); summed over candidates it
    // equals unit * trials.
    std::uint64_t credit = 0;
    std::uint64_t unit = 1;
};

inline std::uint64_t tie_unit(std::size_t candidates) {
    std::uint64_t l = 1;
    for (std::uint64_t k = 2; k <= candidates; ++k) l = std::lcm(l, k);
    return l;
}

// Noisy weights for one trial.
inline void draw_weights(const WeightVector& w, const NoiseSpec& noise, Stream& rng, WeightVector& out) {
    out.resize(w.size());
    for (std::size_t k = 0; k < w.size(); ++k) {
        double v = w[k] + noise.sigma * rng.normal();
        if (noise.mode == NoiseMode::truncate) {
            // Rejection is cheap unless w_k / sigma is very negative, which
            // cannot happen for w >= 0 (acceptance >= 1/2).
            while (v < 0) v = w[k] + noise.sigma * rng.normal();
        } else if (noise.mode == NoiseMode::clip && v < 0) {
            v = 0;
        }
        out[k] = v;
    }
}

constexpr std::uint64_t kTrialBlock = 4096;

inline std::vector<ProbabilityEstimate> shg_estimate(const WeightVector& w, const InputEntry& in,
                                                     const NoiseSpec& noise, std::uint64_t trials,
                                                     std::uint64_t seed, unsigned threads = 0) {
    check_weights(w);
    check_noise(noise);
    if (trials == 0) throw std::invalid_argument("trials must be positive");
    const std::size_t C = in.candidates.size();
    if (C == 0) throw std::invalid_argument("input has no candidates");
    for (const auto& c : in.candidates)
        if (c.violations.size() != w.size()) throw std::invalid_argument("dimension mismatch between weights and violations");
    const std::uint64_t unit = tie_unit(C);
    std::vector<ProbabilityEstimate> out(C);
    if (C == 1) {
        out[0] = {1.0, 0.0, trials, unit * trials, unit};
        return out;
    }
    const std::size_t blocks = (trials + kTrialBlock - 1) / kTrialBlock;
    std::vector<std::vector<std::uint64_t>> credit(blocks, std::vector<std::uint64_t>(C, 0));
    parallel_for(
        blocks,
        [&](std::size_t b) {
            WeightVector eff;
            std::vector<double> h(C);
            std::vector<std::size_t> tied;
            const std::uint64_t lo = b * kTrialBlock, hi = std::min<std::uint64_t>(trials, lo + kTrialBlock);
            for (std::uint64_t t = lo; t < hi; ++t) {
                Stream rng(seed, t);
                draw_weights(w, noise, rng, eff);
                double best = -INFINITY;
                for (std::size_t i = 0; i < C; ++i) {
                    h[i] = harmony(eff, in.candidates[i].violations);
                    if (h[i] > best) best = h[i];
                }
                tied.clear();
                for (std::size_t i = 0; i < C; ++i)
                    if (h[i] == best) tied.push_back(i);
                for (std::size_t i : tied) credit[b][i] += unit / tied.size();
            }
        },
        threads);
    for (std::size_t i = 0; i < C; ++i) {
        std::uint64_t c = 0;
        for (std::size_t b = 0; b < blocks; ++b) c += credit[b][i];
        double p = static_cast<double>(c) / static_cast<double>(unit * trials);
        out[i] = {p, std::sqrt(p * (1 - p) / static_cast<double>(trials)), trials, c, unit};
    }
    return out;
}

// SHG probability of one mapping's winner, estimated from its difference
// vectors (the winner is the zero row).
inline ProbabilityEstimate shg_estimate_mapping(const WeightVector& w, const std::vector<DifferenceVector>& diffs,
                                                const NoiseSpec& noise, std::uint64_t trials,
                                                std::uint64_t seed, unsigned threads = 0) {
    InputEntry in;
    in.candidates.push_back({"winner", IntVec(w.size(), 0), std::nullopt});
    for (std::size_t i = 0; i < diffs.size(); ++i)
        in.candidates.push_back({"z" + std::to_string(i), diffs[i], std::nullopt});
    return shg_estimate(w, in, noise, trials, seed, threads)[0];
}

}  // namespace eqp
