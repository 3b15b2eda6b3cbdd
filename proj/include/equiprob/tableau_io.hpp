#pragma once

#include "equiprob/tableau.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

namespace eqp {

using ojson = nlohmann::ordered_json;

class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& msg, std::size_t line, std::size_t column)
        : std::runtime_error(msg + " (line " + std::to_string(line) + ", column " +
                             std::to_string(column) + ")"),
          line_(line), column_(column) {}
    std::size_t line() const { return line_; }
    std::size_t column() const { return column_; }

private:
    std::size_t line_, column_;
};

namespace detail {

inline std::pair<std::size_t, std::size_t> line_col(const std::string& text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
        if (text[i] == '\n') { ++line; col = 1; }
        else ++col;
    }
    return {line, col};
}

inline long long as_count(const ojson& v, const std::string& where) {
    if (!v.is_number_integer())
        throw SchemaError(where + ": violation counts must be integers");
    return v.get<long long>();
}

}  // namespace detail

inline Tableau tableau_from_json(const ojson& j) {
    if (!j.is_object()) throw SchemaError("tableau document must be an object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "constraints" && it.key() != "inputs" && it.key() != "metadata")
            throw SchemaError("unknown top-level key '" + it.key() + "'");
    if (!j.contains("constraints") || !j["constraints"].is_array())
        throw SchemaError("'constraints' must be a list of strings");
    if (!j.contains("inputs") || !j["inputs"].is_array())
        throw SchemaError("'inputs' must be a list");
    Tableau t;
    for (const auto& c : j["constraints"]) {
        if (!c.is_string()) throw SchemaError("constraint names must be strings");
        t.constraints.names.push_back(c.get<std::string>());
    }
    for (const auto& ji : j["inputs"]) {
        if (!ji.is_object() || !ji.contains("ur") || !ji["ur"].is_string())
            throw SchemaError("each input needs a string 'ur'");
        InputEntry in;
        in.ur = ji["ur"].get<std::string>();
        if (!ji.contains("candidates") || !ji["candidates"].is_array())
            throw SchemaError("ur '" + in.ur + "': 'candidates' must be a list");
        for (const auto& jc : ji["candidates"]) {
            if (!jc.is_object() || !jc.contains("sr") || !jc["sr"].is_string())
                throw SchemaError("ur '" + in.ur + "': each candidate needs a string 'sr'");
            CandidateEntry c;
            c.sr = jc["sr"].get<std::string>();
            const std::string where = "ur '" + in.ur + "', sr '" + c.sr + "'";
            if (!jc.contains("violations") || !jc["violations"].is_array())
                throw SchemaError(where + ": 'violations' must be a list");
            for (const auto& v : jc["violations"]) c.violations.push_back(detail::as_count(v, where));
            if (jc.contains("frequency")) {
                if (!jc["frequency"].is_number()) throw SchemaError(where + ": frequency must be a number");
                c.frequency = jc["frequency"].get<double>();
            }
            in.candidates.push_back(std::move(c));
        }
        t.inputs.push_back(std::move(in));
    }
    if (j.contains("metadata")) {
        if (!j["metadata"].is_object()) throw SchemaError("'metadata' must be an object");
        t.metadata_json = j["metadata"].dump();
    }
    require_valid(t);
    return t;
}

inline Tableau parse_tableau(const std::string& text) {
    ojson j;
    try {
        j = ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        auto [line, col] = detail::line_col(text, e.byte == 0 ? 0 : e.byte - 1);
        throw ParseError("malformed tableau document", line, col);
    }
    return tableau_from_json(j);
}

inline ojson tableau_to_json(const Tableau& t) {
    ojson j;
    j["constraints"] = t.constraints.names;
    j["inputs"] = ojson::array();
    for (const auto& in : t.inputs) {
        ojson ji;
        ji["ur"] = in.ur;
        ji["candidates"] = ojson::array();
        for (const auto& c : in.candidates) {
            ojson jc;
            jc["sr"] = c.sr;
            jc["violations"] = c.violations;
            if (c.frequency) jc["frequency"] = *c.frequency;
            ji["candidates"].push_back(std::move(jc));
        }
        j["inputs"].push_back(std::move(ji));
    }
    j["metadata"] = ojson::parse(t.metadata_json);
    return j;
}

inline std::string serialize_tableau(const Tableau& t) { return tableau_to_json(t).dump(2) + "\n"; }

inline std::vector<std::string> split_tabs(const std::string& line) {
    std::vector<std::string> out;
    std::size_t start = 0;
    for (;;) {
        std::size_t p = line.find('\t', start);
        out.push_back(line.substr(start, p == std::string::npos ? std::string::npos : p - start));
        if (p == std::string::npos) break;
        start = p + 1;
    }
    return out;
}

// Tab-separated import. The header lists the constraint names, optionally
// preceded by two label cells. An empty ur cell continues the previous input.
inline Tableau parse_tableau_tsv(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    std::size_t lineno = 0;
    Tableau t;
    bool have_header = false;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        auto cells = split_tabs(line);
        if (!have_header) {
            have_header = true;
            t.constraints.names = cells;
            continue;
        }
        if (t.inputs.empty() && cells.size() == t.constraints.size()) {
            // header had two label cells in front of the names
            t.constraints.names.erase(t.constraints.names.begin(), t.constraints.names.begin() + 2);
        }
        const std::size_t n = t.constraints.size();
        if (cells.size() != n + 2) {
            std::size_t col = line.size() + 1;
            throw ParseError("expected " + std::to_string(n + 2) + " cells, found " +
                                 std::to_string(cells.size()),
                             lineno, col);
        }
        std::string ur = cells[0];
        if (ur.empty()) {
            if (t.inputs.empty()) throw ParseError("first row needs an ur", lineno, 1);
            ur = t.inputs.back().ur;
        }
        if (t.inputs.empty() || t.inputs.back().ur != ur) t.inputs.push_back({ur, {}});
        CandidateEntry c;
        c.sr = cells[1];
        std::size_t col = cells[0].size() + cells[1].size() + 3;
        for (std::size_t k = 0; k < n; ++k) {
            const std::string& s = cells[k + 2];
            long long v = 0;
            std::size_t used = 0;
            try {
                v = s.empty() ? 0 : std::stoll(s, &used);
            } catch (const std::exception&) {
                throw ParseError("violation cell '" + s + "' is not an integer", lineno, col);
            }
            if (!s.empty() && used != s.size())
                throw ParseError("violation cell '" + s + "' is not an integer", lineno, col);
            c.violations.push_back(v);
            col += s.size() + 1;
        }
        t.inputs.back().candidates.push_back(std::move(c));
    }
    if (!have_header) throw ParseError("missing header row", lineno + 1, 1);
    require_valid(t);
    return t;
}

inline std::string serialize_tableau_tsv(const Tableau& t) {
    std::string out = "ur\tsr";
    for (const auto& c : t.constraints.names) out += "\t" + c;
    out += "\n";
    for (const auto& in : t.inputs)
        for (const auto& c : in.candidates) {
            out += in.ur + "\t" + c.sr;
            for (long long v : c.violations) out += "\t" + std::to_string(v);
            out += "\n";
        }
    return out;
}

inline std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

inline bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

inline Tableau load_tableau(const std::string& path) {
    std::string text = read_file(path);
    if (ends_with(path, ".tsv")) return parse_tableau_tsv(text);
    return parse_tableau(text);
}

// Weights: either a JSON object {name: value} or "name value" lines.
inline std::vector<double> parse_weights(const std::string& text, const ConstraintSet& cs) {
    std::vector<std::pair<std::string, double>> entries;
    std::size_t first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        ojson j;
        try {
            j = ojson::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            auto [line, col] = detail::line_col(text, e.byte == 0 ? 0 : e.byte - 1);
            throw ParseError("malformed weights document", line, col);
        }
        for (auto it = j.begin(); it != j.end(); ++it) {
            if (!it.value().is_number()) throw SchemaError("weight for '" + it.key() + "' must be a number");
            entries.emplace_back(it.key(), it.value().get<double>());
        }
    } else {
        std::istringstream in(text);
        std::string line;
        std::size_t lineno = 0;
        while (std::getline(in, line)) {
            ++lineno;
            std::istringstream ls(line);
            std::string name, value, extra;
            if (!(ls >> name) || name[0] == '#') continue;
            if (!(ls >> value) || (ls >> extra)) throw ParseError("expected 'name value'", lineno, 1);
            double v;
            std::size_t used = 0;
            try {
                v = std::stod(value, &used);
            } catch (const std::exception&) {
                throw ParseError("weight '" + value + "' is not a decimal", lineno, name.size() + 2);
            }
            if (used != value.size()) throw ParseError("weight '" + value + "' is not a decimal", lineno, name.size() + 2);
            entries.emplace_back(name, v);
        }
    }
    std::vector<double> w(cs.size(), 0.0);
    std::vector<bool> seen(cs.size(), false);
    for (const auto& [name, v] : entries) {
        std::size_t k = 0;
        while (k < cs.size() && cs.names[k] != name) ++k;
        if (k == cs.size()) throw SchemaError("unknown constraint '" + name + "' in weights");
        if (seen[k]) throw SchemaError("constraint '" + name + "' weighted twice");
        if (!(v >= 0) || !std::isfinite(v)) throw SchemaError("weight for '" + name + "' must be a nonnegative number");
        w[k] = v;
        seen[k] = true;
    }
    for (std::size_t k = 0; k < cs.size(); ++k)
        if (!seen[k]) throw SchemaError("missing weight for constraint '" + cs.names[k] + "'");
    return w;
}

}  // namespace eqp
