#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace eqp {

using IntVec = std::vector<long long>;
using DifferenceVector = IntVec;

struct ConstraintSet {
    std::vector<std::string> names;
    std::size_t size() const { return names.size(); }
    bool operator==(const ConstraintSet&) const = default;
};

struct CandidateEntry {
    std::string sr;
    IntVec violations;
    std::optional<double> frequency;
    bool operator==(const CandidateEntry&) const = default;
};

struct InputEntry {
    std::string ur;
    std::vector<CandidateEntry> candidates;
    bool operator==(const InputEntry&) const = default;
};

struct Tableau {
    ConstraintSet constraints;
    std::vector<InputEntry> inputs;
    // Free-form annotations, kept as serialized JSON text so this header
    // does not depend on the JSON library.
    std::string metadata_json = "{}";
    bool operator==(const Tableau&) const = default;
};

struct MappingId {
    std::string ur;
    std::string sr;
    auto operator<=>(const MappingId&) const = default;
    std::string str() const { return ur + " -> " + sr; }
};

class LookupError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class SchemaError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct Diagnostic {
    std::string ur;
    std::string sr;
    std::string constraint;
    std::string message;
};

inline const InputEntry& find_input(const Tableau& t, const std::string& ur) {
    for (const auto& in : t.inputs)
        if (in.ur == ur) return in;
    throw LookupError("unknown input '" + ur + "'");
}

struct ResolvedMapping {
    const InputEntry* input;
    std::size_t winner;
};

inline ResolvedMapping resolve(const Tableau& t, const MappingId& m) {
    const InputEntry& in = find_input(t, m.ur);
    for (std::size_t i = 0; i < in.candidates.size(); ++i)
        if (in.candidates[i].sr == m.sr) return {&in, i};
    throw LookupError("input '" + m.ur + "' has no candidate '" + m.sr + "'");
}

inline DifferenceVector subtract(const IntVec& loser, const IntVec& winner) {
    if (loser.size() != winner.size())
        throw std::invalid_argument("violation vectors differ in length");
    DifferenceVector d(loser.size());
    for (std::size_t k = 0; k < d.size(); ++k) d[k] = loser[k] - winner[k];
    return d;
}

struct LabeledDifference {
    std::string loser;
    DifferenceVector vec;
};

inline std::vector<LabeledDifference> difference_vectors(const Tableau& t, const MappingId& m) {
    ResolvedMapping r = resolve(t, m);
    const auto& cands = r.input->candidates;
    std::vector<LabeledDifference> out;
    out.reserve(cands.size() - 1);
    for (std::size_t i = 0; i < cands.size(); ++i) {
        if (i == r.winner) continue;
        out.push_back({cands[i].sr, subtract(cands[i].violations, cands[r.winner].violations)});
    }
    return out;
}

inline std::vector<DifferenceVector> difference_vector_list(const Tableau& t, const MappingId& m) {
    std::vector<DifferenceVector> out;
    for (auto& d : difference_vectors(t, m)) out.push_back(std::move(d.vec));
    return out;
}

inline std::vector<Diagnostic> validate(const Tableau& t) {
    std::vector<Diagnostic> out;
    const std::size_t n = t.constraints.size();
    if (n == 0) out.push_back({"", "", "", "constraint set must be nonempty"});
    std::set<std::string> seen;
    for (const auto& c : t.constraints.names) {
        if (!seen.insert(c).second) out.push_back({"", "", c, "duplicate constraint name"});
        if (c.empty()) out.push_back({"", "", c, "empty constraint name"});
    }
    std::set<std::string> urs;
    for (const auto& in : t.inputs) {
        if (!urs.insert(in.ur).second) out.push_back({in.ur, "", "", "duplicate input label"});
        if (in.candidates.empty()) out.push_back({in.ur, "", "", "input has no candidates"});
        std::set<std::string> srs;
        for (const auto& c : in.candidates) {
            if (!srs.insert(c.sr).second) out.push_back({in.ur, c.sr, "", "duplicate candidate label"});
            if (c.violations.size() != n) {
                out.push_back({in.ur, c.sr, "",
                               "expected " + std::to_string(n) + " violations, found " +
                                   std::to_string(c.violations.size())});
                continue;
            }
            for (std::size_t k = 0; k < n; ++k)
                if (c.violations[k] < 0)
                    out.push_back({in.ur, c.sr, t.constraints.names[k], "violations must be nonnegative"});
            if (c.frequency && *c.frequency < 0)
                out.push_back({in.ur, c.sr, "", "frequency must be nonnegative"});
        }
    }
    return out;
}

inline std::string describe(const Diagnostic& d) {
    std::string loc;
    if (!d.ur.empty()) loc += "ur '" + d.ur + "'";
    if (!d.sr.empty()) loc += (loc.empty() ? "" : ", ") + std::string("sr '") + d.sr + "'";
    if (!d.constraint.empty()) loc += (loc.empty() ? "" : ", ") + std::string("constraint '") + d.constraint + "'";
    return loc.empty() ? d.message : loc + ": " + d.message;
}

inline void require_valid(const Tableau& t) {
    auto diags = validate(t);
    if (!diags.empty()) throw SchemaError(describe(diags.front()));
}

// Every (ur, sr) pair in file order.
inline std::vector<MappingId> all_mappings(const Tableau& t) {
    std::vector<MappingId> out;
    for (const auto& in : t.inputs)
        for (const auto& c : in.candidates) out.push_back({in.ur, c.sr});
    return out;
}

}  // namespace eqp
