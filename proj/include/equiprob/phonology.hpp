#pragma once

// Prosodic candidate notation, the Finnish foot-structure constraints and the
// vowel-harmony constraints, plus builders for the bundled tableaux.

#include "equiprob/tableau.hpp"

#include <cmath>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace eqp {

class NotationError : public std::runtime_error {
public:
    NotationError(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " at position " + std::to_string(pos)), pos_(pos) {}
    std::size_t position() const { return pos_; }

private:
    std::size_t pos_;
};

// Splits UTF-8 text into one string per code point.
inline std::vector<std::string> utf8_chars(const std::string& s) {
    std::vector<std::string> out;
    for (std::size_t i = 0; i < s.size();) {
        unsigned char c = static_cast<unsigned char>(s[i]);
        std::size_t len = c < 0x80 ? 1 : (c >> 5) == 0x6 ? 2 : (c >> 4) == 0xE ? 3 : (c >> 3) == 0x1E ? 4 : 0;
        if (len == 0 || i + len > s.size()) throw NotationError("invalid UTF-8", i);
        out.push_back(s.substr(i, len));
        i += len;
    }
    return out;
}

inline bool is_vowel(const std::string& ch) {
    static const std::set<std::string> v = {"a", "e", "i", "o", "u", "y", "ä", "ö", "å",
                                            "A", "E", "I", "O", "U", "Y", "Ä", "Ö", "Å"};
    return v.count(ch) > 0;
}

// a, ä, o, ö are low; e, i, u, y are high.
inline bool is_low_vowel(const std::string& ch) {
    static const std::set<std::string> v = {"a", "ä", "o", "ö", "å", "A", "Ä", "O", "Ö", "Å"};
    return v.count(ch) > 0;
}

enum class Weight { light, heavy };
enum class HeavySource { none, long_vowel, coda };
enum class Sonority { low, high };
enum class Stress { none, secondary, primary };
enum class FootPosition { unfooted, head, dependent };

struct Syllable {
    std::string text;
    Weight weight = Weight::light;
    HeavySource heavy_source = HeavySource::none;
    Sonority sonority = Sonority::high;  // of the first nucleus vowel
    Sonority last_sonority = Sonority::high;  // of the last nucleus vowel
    bool identical_long_vowel = false;  // nucleus is a doubled vowel, not a diphthong
    Stress stress = Stress::none;
    FootPosition position = FootPosition::unfooted;
    std::optional<std::size_t> foot;
};

struct Foot {
    std::size_t start = 0;
    std::size_t size = 0;
    std::size_t head = 0;  // absolute syllable index
};

struct ProsodicParse {
    std::vector<Syllable> syllables;
    std::vector<Foot> feet;
};

namespace detail {

inline Syllable analyze_syllable(const std::string& text, std::size_t pos) {
    auto chars = utf8_chars(text);
    std::size_t i = 0;
    while (i < chars.size() && !is_vowel(chars[i])) ++i;
    if (i == chars.size()) throw NotationError("syllable '" + text + "' has no vowel", pos);
    std::size_t j = i;
    while (j < chars.size() && is_vowel(chars[j])) ++j;
    Syllable s;
    s.text = text;
    const bool vv = j - i >= 2;
    const bool coda = j < chars.size();
    s.weight = vv || coda ? Weight::heavy : Weight::light;
    s.heavy_source = vv ? HeavySource::long_vowel : coda ? HeavySource::coda : HeavySource::none;
    s.identical_long_vowel = vv && chars[i] == chars[i + 1];
    s.sonority = is_low_vowel(chars[i]) ? Sonority::low : Sonority::high;
    s.last_sonority = is_low_vowel(chars[j - 1]) ? Sonority::low : Sonority::high;
    return s;
}

}  // namespace detail

// Grammar (whitespace not allowed):
//   word     := item+
//   item     := foot | syllable
//   foot     := "(" fsyl ("." fsyl)* ")"
//   fsyl     := ["'"] syllable          "'" marks a non-initial head
//   syllable := one or more letters, at least one vowel
// Items may be separated by "."; a foot boundary also separates syllables.
// Heads are stressed, the first foot's head carries primary stress.
inline ProsodicParse parse_prosodic_candidate(const std::string& notation) {
    ProsodicParse p;
    std::string cur;
    std::size_t cur_start = 0;
    bool in_foot = false, cur_marked = false, last_was_sep = true;
    std::optional<std::size_t> marked_head;
    std::size_t foot_start = 0;

    auto flush = [&](std::size_t pos) {
        if (cur.empty()) {
            if (cur_marked) throw NotationError("head mark without a syllable", pos);
            return false;
        }
        Syllable s = detail::analyze_syllable(cur, cur_start);
        if (in_foot) s.foot = p.feet.size();
        if (cur_marked) {
            if (!in_foot) throw NotationError("head mark outside a foot", cur_start);
            if (marked_head) throw NotationError("foot has two marked heads", cur_start);
            marked_head = p.syllables.size();
        }
        p.syllables.push_back(std::move(s));
        cur.clear();
        cur_marked = false;
        return true;
    };

    for (std::size_t i = 0; i < notation.size(); ++i) {
        char ch = notation[i];
        if (ch == '(') {
            if (in_foot) throw NotationError("nested foot", i);
            flush(i);
            in_foot = true;
            foot_start = p.syllables.size();
            marked_head.reset();
            last_was_sep = true;
        } else if (ch == ')') {
            if (!in_foot) throw NotationError("unbalanced ')'", i);
            if (!flush(i)) throw NotationError(p.syllables.size() == foot_start ? "empty foot" : "empty syllable", i);
            Foot f;
            f.start = foot_start;
            f.size = p.syllables.size() - foot_start;
            f.head = marked_head.value_or(foot_start);
            p.feet.push_back(f);
            in_foot = false;
            last_was_sep = false;
        } else if (ch == '.') {
            if (!flush(i) && last_was_sep) throw NotationError("empty syllable", i);
            last_was_sep = true;
        } else if (ch == '\'') {
            if (!cur.empty() || cur_marked) throw NotationError("head mark inside a syllable", i);
            cur_marked = true;
            cur_start = i;
        } else if (ch == ' ' || ch == '\t' || ch == '\n' || ch == '\r') {
            throw NotationError("whitespace in notation", i);
        } else {
            if (cur.empty() && !cur_marked) cur_start = i;
            cur += ch;
            last_was_sep = false;
        }
    }
    if (in_foot) throw NotationError("unbalanced '('", notation.size());
    if (!flush(notation.size()) && (notation.empty() || notation.back() == '.'))
        throw NotationError("empty syllable", notation.size());

    for (std::size_t fi = 0; fi < p.feet.size(); ++fi) {
        const Foot& f = p.feet[fi];
        for (std::size_t s = f.start; s < f.start + f.size; ++s) {
            p.syllables[s].position = s == f.head ? FootPosition::head : FootPosition::dependent;
        }
        p.syllables[f.head].stress = fi == 0 ? Stress::primary : Stress::secondary;
    }
    return p;
}

inline std::string render(const ProsodicParse& p) {
    std::string out;
    std::size_t i = 0, fi = 0;
    while (i < p.syllables.size()) {
        if (fi < p.feet.size() && p.feet[fi].start == i) {
            const Foot& f = p.feet[fi];
            out += "(";
            for (std::size_t s = f.start; s < f.start + f.size; ++s) {
                if (s > f.start) out += ".";
                if (s == f.head && s != f.start) out += "'";
                out += p.syllables[s].text;
            }
            out += ")";
            i += f.size;
            ++fi;
        } else {
            if (!out.empty() && out.back() != ')') out += ".";
            out += p.syllables[i].text;
            ++i;
        }
    }
    return out;
}

// Definition switches for the Finnish constraints. Defaults are the
// readings frozen into data/finnish.json.
struct FinnishOptions {
    enum class PkProm { unstressed_light, stressed_light } pkprom = PkProm::stressed_light;
    enum class Flat { high_high, same_class } flat = Flat::high_high;
    enum class Dependent { first, last } dependent = Dependent::first;
    enum class HX { per_neighbor, per_stressed } hx = HX::per_neighbor;
    enum class Align { gradient, categorical } align = Align::gradient;
    enum class SonorityVowel { first, last } sonority_vowel = SonorityVowel::first;
    enum class LongVowel { any_vv, identical } long_vowel = LongVowel::any_vv;
};

inline const std::vector<std::string>& finnish_constraint_names() {
    static const std::vector<std::string> names = {"FtBin", "PkProm", "Align-L", "*Rev",
                                                   "*Flat", "*H.X",   "WSP",     "WSP/VV"};
    return names;
}

inline IntVec eval_finnish_constraints(const ProsodicParse& p, const FinnishOptions& o = {}) {
    using O = FinnishOptions;
    IntVec c(8, 0);
    const auto& S = p.syllables;
    const std::size_t n = S.size();
    auto son = [&](std::size_t i) {
        return o.sonority_vowel == O::SonorityVowel::first ? S[i].sonority : S[i].last_sonority;
    };
    auto stressed = [&](std::size_t i) { return S[i].stress != Stress::none; };
    auto heavy = [&](std::size_t i) { return S[i].weight == Weight::heavy; };

    for (const Foot& f : p.feet) {
        if (f.size != 2) ++c[0];
        c[2] += o.align == O::Align::gradient ? static_cast<long long>(f.start) : (f.start > 0 ? 1 : 0);
        if (f.size >= 2 && f.head == f.start) {  // trochees only
            std::size_t dep = o.dependent == O::Dependent::first ? f.start + 1 : f.start + f.size - 1;
            Sonority h = son(f.head), d = son(dep);
            if (h == Sonority::high && d == Sonority::low) ++c[3];
            if (o.flat == O::Flat::high_high ? (h == Sonority::high && d == Sonority::high) : h == d) ++c[4];
        }
    }
    for (std::size_t i = 0; i < n; ++i) {
        if (o.pkprom == O::PkProm::unstressed_light ? (!stressed(i) && !heavy(i)) : (stressed(i) && !heavy(i)))
            ++c[1];
        if (stressed(i)) {
            long long nb = (i > 0 && heavy(i - 1)) + (i + 1 < n && heavy(i + 1));
            c[5] += o.hx == O::HX::per_neighbor ? nb : (nb > 0 ? 1 : 0);
        }
        if (!stressed(i) && heavy(i)) {
            ++c[6];
            bool vv = S[i].heavy_source == HeavySource::long_vowel;
            if (o.long_vowel == O::LongVowel::identical) vv = vv && S[i].identical_long_vowel;
            if (vv) ++c[7];
        }
    }
    return c;
}

// Vowel harmony.

enum class Backness { back, front, neutral };

inline std::optional<Backness> backness(const std::string& ch) {
    if (ch == "a" || ch == "o" || ch == "u" || ch == "A" || ch == "O" || ch == "U") return Backness::back;
    if (ch == "ä" || ch == "ö" || ch == "y" || ch == "Ä" || ch == "Ö" || ch == "Y") return Backness::front;
    if (ch == "e" || ch == "i" || ch == "E" || ch == "I") return Backness::neutral;
    return std::nullopt;
}

struct SegmentalForm {
    std::vector<std::string> segments;  // boundaries removed
    std::vector<std::size_t> boundaries;  // segment index where each morpheme after the root starts
    std::size_t root_end() const { return boundaries.empty() ? segments.size() : boundaries.front(); }
};

// "maa-nä": "-" marks morpheme boundaries, the first morpheme is the root.
inline SegmentalForm parse_segmental(const std::string& s) {
    SegmentalForm f;
    bool any_vowel = false;
    std::size_t pos = 0;
    for (const auto& ch : utf8_chars(s)) {
        if (ch == "-") {
            if (f.segments.empty() || (!f.boundaries.empty() && f.boundaries.back() == f.segments.size()))
                throw NotationError("empty morpheme", pos);
            f.boundaries.push_back(f.segments.size());
        } else {
            if (is_vowel(ch)) any_vowel = true;
            f.segments.push_back(ch);
        }
        pos += ch.size();
    }
    if (!f.boundaries.empty() && f.boundaries.back() == f.segments.size()) throw NotationError("empty morpheme", pos);
    if (!any_vowel) throw NotationError("form has no vowel", 0);
    return f;
}

struct HarmonyOptions {
    // Whether neutral vowels after a harmonic vowel count as interveners.
    bool neutral_interveners = false;
};

inline const std::vector<std::string>& harmony_constraint_names() {
    static const std::vector<std::string> names = {"*Int[+back]", "*Int[-back]", "Ident-Root", "Ident"};
    return names;
}

class AlignmentError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

inline IntVec eval_harmony_constraints(const SegmentalForm& ur, const SegmentalForm& cand,
                                       const HarmonyOptions& o = {}) {
    if (ur.segments.size() != cand.segments.size())
        throw AlignmentError("candidate has " + std::to_string(cand.segments.size()) + " segments, input has " +
                             std::to_string(ur.segments.size()));
    IntVec c(4, 0);
    bool seen_back = false, seen_front = false;
    for (const auto& ch : cand.segments) {
        auto b = backness(ch);
        if (!b) continue;
        if (seen_back && (*b == Backness::front || (o.neutral_interveners && *b == Backness::neutral))) ++c[0];
        if (seen_front && (*b == Backness::back || (o.neutral_interveners && *b == Backness::neutral))) ++c[1];
        if (*b == Backness::back) seen_back = true;
        if (*b == Backness::front) seen_front = true;
    }
    for (std::size_t i = 0; i < ur.segments.size(); ++i) {
        const auto& u = ur.segments[i];
        if ((u == "a" || u == "ä") && cand.segments[i] != u) {
            ++c[3];
            if (i < ur.root_end()) ++c[2];
        }
    }
    return c;
}

enum class ConstraintFamily { finnish, harmony };

struct TableauEntry {
    std::string ur;    // label; for harmony also the segmental input form
    std::vector<std::string> candidates;
    std::vector<std::optional<double>> frequencies;  // optional, parallel to candidates
};

inline Tableau build_tableau(ConstraintFamily family, const std::vector<TableauEntry>& entries,
                             const FinnishOptions& fo = {}, const HarmonyOptions& ho = {}) {
    Tableau t;
    t.constraints.names = family == ConstraintFamily::finnish ? finnish_constraint_names() : harmony_constraint_names();
    for (const auto& e : entries) {
        InputEntry in;
        in.ur = e.ur;
        std::optional<SegmentalForm> urf;
        if (family == ConstraintFamily::harmony) urf = parse_segmental(e.ur);
        for (std::size_t i = 0; i < e.candidates.size(); ++i) {
            CandidateEntry c;
            if (family == ConstraintFamily::finnish) {
                ProsodicParse p = parse_prosodic_candidate(e.candidates[i]);
                c.sr = render(p);
                c.violations = eval_finnish_constraints(p, fo);
            } else {
                c.sr = e.candidates[i];
                c.violations = eval_harmony_constraints(*urf, parse_segmental(e.candidates[i]), ho);
            }
            if (i < e.frequencies.size()) c.frequency = e.frequencies[i];
            in.candidates.push_back(std::move(c));
        }
        t.inputs.push_back(std::move(in));
    }
    require_valid(t);
    return t;
}

struct StemType {
    std::string label;
    std::string stem;        // underlying stem
    std::string deletion;    // displayed -ja parse
    std::string retention;   // displayed retention parse, or constructed for (k)-(m)
    bool retention_displayed = true;
    double deletion_percent = 0;  // corpus annotation
};

// The thirteen stem types. (k)-(m) show only the deletion parse; their
// retention parse keeps the same two feet and leaves "ta" unfooted.
inline const std::vector<StemType>& finnish_stem_types() {
    static const std::vector<StemType> s = {
        {"a", "akvarellisti", "(ak.va)(rel.lis.te)ja", "(ak.va)(rel.lis)(tei.ta)", true, 100.0},
        {"b", "propagandisti", "(pro.pa)(gan.dis.te)ja", "(pro.pa)(gan.dis)(tei.ta)", true, 100.0},
        {"c", "symposiumi", "(sym.po)(si.u.me)ja", "(sym.po)(si.u)(mei.ta)", true, 98.6},
        {"d", "liirumlaarumi", "(lii.rum)(laa.ru.me)ja", "(lii.rum)(laa.ru)(mei.ta)", true, 18.6},
        {"e", "polyamidi", "(po.ly)(a.mi.de)ja", "(po.ly)(a.mi)(dei.ta)", true, 95.7},
        {"f", "inkunaabeli", "(in.ku)(naa.be.le)ja", "(in.ku)(naa.be)(lei.ta)", true, 9.5},
        {"g", "operaatio", "(o.pe)(raa.ti.o)ja", "(o.pe)(raa.ti)(oi.ta)", true, 0.0},
        {"h", "allegoria", "(al.le)(go.ri.o)ja", "(al.le)(go.ri)(oi.ta)", true, 0.0},
        {"i", "kommunikea", "(kom.mu)(ni.ke.o)ja", "(kom.mu)(ni.ke)(oi.ta)", true, 0.3},
        {"j", "konsultaatio", "(kon.sul)(taa.ti.o)ja", "(kon.sul)(taa.ti)(oi.ta)", true, 0.5},
        {"k", "termostaatti", "(ter.mos)(taat.te)ja", "(ter.mos)(taat.tei)ta", false, 100.0},
        {"l", "margariini", "(mar.ga)(rii.ne)ja", "(mar.ga)(rii.nei)ta", false, 100.0},
        {"m", "affrikaatta", "(af.fri)(kaat.to)ja", "(af.fri)(kaat.toi)ta", false, 99.7},
    };
    return s;
}

inline std::vector<TableauEntry> finnish_entries() {
    std::vector<TableauEntry> out;
    for (const auto& s : finnish_stem_types()) {
        TableauEntry e;
        e.ur = s.label;
        e.candidates = {s.deletion, s.retention};
        e.frequencies = {s.deletion_percent};
        if (s.retention_displayed) e.frequencies.push_back(std::round((100.0 - s.deletion_percent) * 10) / 10);
        out.push_back(std::move(e));
    }
    return out;
}

inline std::vector<TableauEntry> harmony_entries() {
    return {{"maa-nä", {"maana", "maanä"}, {}}, {"kaava-nä", {"kaavana", "kaavanä"}, {}}};
}

}  // namespace eqp
