// Command-line front end: analyze, eval, verify, derive, fmt.

#include "equiprob/equiprob.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

using namespace eqp;

namespace {

struct Common {
    std::string report_path;
    bool json_stdout = false;
    unsigned threads = 0;
};

struct Output {
    ojson result;
    std::string summary;
    int status = 0;
};

MappingId parse_mapping(const std::string& s) {
    auto p = s.find(':');
    if (p == std::string::npos || p == 0 || p + 1 == s.size())
        throw std::invalid_argument("mapping '" + s + "' must look like UR:SR");
    return {s.substr(0, p), s.substr(p + 1)};
}

std::vector<std::string> split_commas(const std::string& s) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) out.push_back(item);
    return out;
}

// Mappings named in metadata.mappings, else every (ur, sr) pair.
std::vector<MappingId> default_mappings(const Tableau& t) {
    ojson meta = ojson::parse(t.metadata_json);
    if (meta.contains("mappings")) {
        std::vector<MappingId> out;
        for (const auto& m : meta["mappings"]) out.push_back({m.at(0).get<std::string>(), m.at(1).get<std::string>()});
        return out;
    }
    return all_mappings(t);
}

std::vector<MappingId> select_mappings(const Tableau& t, const std::vector<std::string>& explicit_maps,
                                       const std::string& urs) {
    std::vector<MappingId> ms;
    if (!explicit_maps.empty()) {
        for (const auto& s : explicit_maps) ms.push_back(parse_mapping(s));
    } else {
        ms = default_mappings(t);
    }
    if (!urs.empty()) {
        auto keep = split_commas(urs);
        std::vector<MappingId> f;
        for (const auto& m : ms)
            if (std::find(keep.begin(), keep.end(), m.ur) != keep.end()) f.push_back(m);
        ms = f;
    }
    for (const auto& m : ms) resolve(t, m);
    return ms;
}

std::string fmt_vec(const IntVec& v) {
    std::string s = "(";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + std::to_string(v[i]);
    return s + ")";
}

std::string fmt_weights(const WeightVector& w) {
    std::string s = "(";
    for (std::size_t i = 0; i < w.size(); ++i) {
        std::ostringstream o;
        o.precision(6);
        o << w[i];
        s += (i ? "," : "") + o.str();
    }
    return s + ")";
}

std::string summarize_graph(const TOrderGraph& g) {
    std::ostringstream o;
    o << "framework " << to_string(g.framework) << ": " << g.blocks.size() << " block(s)\n";
    for (std::size_t i = 0; i < g.blocks.size(); ++i) {
        o << "  B" << i + 1 << ":";
        for (const auto& m : g.blocks[i]) o << "  " << m.str();
        o << "\n";
    }
    o << "edges (reduced, P(left) <= P(right)"
      << (g.framework == Framework::me_necessary ? ", necessary condition only" : "") << "):\n";
    for (const auto& [a, b] : g.reduced) o << "  B" << a + 1 << " <= B" << b + 1 << "\n";
    return o.str();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot write '" + path + "'");
    f << text;
}

NoiseSpec make_noise(double sigma, const std::string& mode) {
    NoiseSpec n;
    n.sigma = sigma;
    n.mode = parse_noise_mode(mode);
    check_noise(n);
    return n;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact equiprobability and T-order analysis for MaxEnt and stochastic HG"};
    app.require_subcommand(1);
    app.set_version_flag("--version", kToolVersion);
    Common common;
    app.add_option("--report", common.report_path, "Write the JSON report to this path");
    app.add_flag("--json", common.json_stdout, "Print the JSON report on stdout instead of the summary");
    app.add_option("--threads", common.threads,
                   "Worker threads (default: EQUIPROB_THREADS or hardware concurrency)");

    ojson config;
    std::function<Output()> action;

    // analyze
    auto* analyze = app.add_subcommand("analyze", "Symbolic verdicts: torder | equiprob | uniform-leq");
    std::string a_tab, a_relation = "torder", a_framework = "shg", a_urs, a_dot;
    std::vector<std::string> a_maps, a_pair;
    analyze->add_option("tableau", a_tab, "Tableau file (.json or .tsv)")->required();
    analyze->add_option("--relation", a_relation, "torder | equiprob | uniform-leq")
        ->check(CLI::IsMember({"torder", "equiprob", "uniform-leq"}));
    analyze->add_option("--framework", a_framework, "shg | me-necessary | me | hg")
        ->check(CLI::IsMember({"shg", "me-necessary", "me", "hg"}));
    analyze->add_option("--mapping", a_maps, "Mapping UR:SR to analyze (repeatable; default metadata.mappings)");
    analyze->add_option("--urs", a_urs, "Comma-separated UR labels to keep");
    analyze->add_option("--pair", a_pair, "Two mappings UR:SR for equiprob and uniform-leq")->expected(2);
    analyze->add_option("--dot", a_dot, "Write the reduced T-order in Graphviz format");
    analyze->callback([&] {
        config = {{"command", "analyze"}, {"tableau", a_tab}, {"relation", a_relation}, {"framework", a_framework},
                  {"mappings", a_maps}, {"urs", a_urs}, {"pair", a_pair}, {"dot", a_dot}};
        action = [&]() {
            Output out;
            Tableau t = load_tableau(a_tab);
            if (a_relation == "torder") {
                Framework f = a_framework == "shg" ? Framework::shg
                              : a_framework == "me-necessary"
                                  ? Framework::me_necessary
                                  : throw std::invalid_argument("torder needs --framework shg or me-necessary");
                auto ms = select_mappings(t, a_maps, a_urs);
                TOrderGraph g = torder(t, f, ms, common.threads);
                out.result = to_json(g);
                out.summary = summarize_graph(g);
                if (!a_dot.empty()) write_file(a_dot, to_dot(g));
                return out;
            }
            if (a_pair.size() != 2) throw std::invalid_argument("--pair A B is required for " + a_relation);
            MappingId x = parse_mapping(a_pair[0]), y = parse_mapping(a_pair[1]);
            std::ostringstream s;
            if (a_relation == "equiprob") {
                EquiprobabilityVerdict v = a_framework == "me"    ? me_equiprobable(t, x, y)
                                           : a_framework == "hg" ? hg_equivalent(t, x, y)
                                           : a_framework == "shg"
                                               ? shg_equiprobable(t, x, y)
                                               : throw std::invalid_argument("equiprob needs --framework me, shg or hg");
                out.result = to_json(v);
                s << to_string(v.framework) << " equiprobable(" << x.str() << ", " << y.str()
                  << "): " << (v.equal ? "equal" : "not equal") << "\n";
            } else {
                UniformInequalityVerdict v = a_framework == "shg" ? shg_uniform_leq(t, x, y)
                                             : a_framework == "me-necessary"
                                                 ? me_uniform_leq_necessary(t, x, y)
                                                 : throw std::invalid_argument(
                                                       "uniform-leq needs --framework shg or me-necessary");
                out.result = to_json(v);
                s << to_string(v.framework) << " P(" << x.str() << ") <= P(" << y.str()
                  << ") uniformly: " << (v.holds ? "holds" : "fails") << (v.vacuous ? " (vacuously)" : "")
                  << (v.framework == Framework::me_necessary ? " [necessary condition]" : "") << "\n";
            }
            out.summary = s.str();
            return out;
        };
    });

    // eval
    auto* eval = app.add_subcommand("eval", "Evaluate a grammar: me | hg | shg-sample");
    std::string e_tab, e_framework = "me", e_weights, e_input, e_noise = "raw";
    double e_sigma = 1.0;
    std::uint64_t e_trials = 100000, e_seed = 1;
    eval->add_option("tableau", e_tab, "Tableau file")->required();
    eval->add_option("--framework", e_framework, "me | hg | shg-sample")
        ->check(CLI::IsMember({"me", "hg", "shg-sample"}));
    eval->add_option("--weights", e_weights, "Weights file: 'name value' lines or a JSON object")->required();
    eval->add_option("--input", e_input, "UR label (default: every input)");
    eval->add_option("--trials", e_trials, "Monte Carlo trials for shg-sample");
    eval->add_option("--seed", e_seed, "Seed for shg-sample");
    eval->add_option("--sigma", e_sigma, "Noise scale for shg-sample");
    eval->add_option("--noise", e_noise, "raw | clip | truncate")->check(CLI::IsMember({"raw", "clip", "truncate"}));
    eval->callback([&] {
        config = {{"command", "eval"}, {"tableau", e_tab}, {"framework", e_framework}, {"weights", e_weights},
                  {"input", e_input}, {"trials", e_trials}, {"seed", e_seed}, {"sigma", e_sigma}, {"noise", e_noise}};
        action = [&]() {
            Output out;
            Tableau t = load_tableau(e_tab);
            WeightVector w = parse_weights(read_file(e_weights), t.constraints);
            NoiseSpec noise = make_noise(e_sigma, e_noise);
            std::ostringstream s;
            out.result = ojson::array();
            for (const auto& in : t.inputs) {
                if (!e_input.empty() && in.ur != e_input) continue;
                ojson ji{{"ur", in.ur}};
                s << in.ur << "\n";
                if (e_framework == "me") {
                    auto p = me_distribution(w, in);
                    ojson c = ojson::array();
                    for (std::size_t i = 0; i < p.size(); ++i) {
                        c.push_back({{"sr", in.candidates[i].sr}, {"probability", p[i]}});
                        s << "  " << in.candidates[i].sr << "  " << p[i] << "\n";
                    }
                    ji["candidates"] = std::move(c);
                } else if (e_framework == "hg") {
                    auto win = hg_winners(w, in);
                    ojson c = ojson::array();
                    for (const auto& cand : in.candidates) {
                        bool wn = win.count(cand.sr) > 0;
                        c.push_back({{"sr", cand.sr}, {"harmony", harmony(w, cand.violations)}, {"winner", wn}});
                        s << "  " << cand.sr << "  " << harmony(w, cand.violations) << (wn ? "  *" : "") << "\n";
                    }
                    ji["candidates"] = std::move(c);
                    ji["strict"] = win.size() == 1;
                } else {
                    auto est = shg_estimate(w, in, noise, e_trials, e_seed, common.threads);
                    ojson c = ojson::array();
                    for (std::size_t i = 0; i < est.size(); ++i) {
                        c.push_back({{"sr", in.candidates[i].sr}, {"estimate", to_json(est[i])}});
                        s << "  " << in.candidates[i].sr << "  " << est[i].point << " +- " << est[i].standard_error
                          << "\n";
                    }
                    ji["candidates"] = std::move(c);
                }
                out.result.push_back(std::move(ji));
            }
            if (!e_input.empty() && out.result.empty()) throw LookupError("unknown input '" + e_input + "'");
            out.summary = s.str();
            return out;
        };
    });

    // verify
    auto* verify = app.add_subcommand("verify", "Numeric cross-checks: sweep | counterexample | mc-torder");
    verify->require_subcommand(1);
    std::string v_tab, v_noise = "raw", v_urs;
    std::vector<std::vector<std::string>> v_pairs;
    std::vector<std::string> v_maps;
    std::size_t v_count = 20, v_budget = 10000;
    double v_max_weight = 4.0, v_sigma = 1.0, v_consistent = 3.0, v_different = 5.0;
    std::uint64_t v_trials = 200000, v_seed = 1, v_weight_seed = 1;
    bool v_guided = false, v_all_pairs = false, v_cells = false;
    std::string v_plot;
    int v_reverse_edge = -1;
    auto add_sweep_opts = [&](CLI::App* c) {
        c->add_option("--count", v_count, "Random weight vectors");
        c->add_option("--max-weight", v_max_weight, "Random weights are uniform on [0, max]");
        c->add_option("--weight-seed", v_weight_seed, "Seed for the random weight vectors");
        c->add_option("--trials", v_trials, "Monte Carlo trials per mapping and weight vector");
        c->add_option("--seed", v_seed, "Monte Carlo seed");
        c->add_option("--sigma", v_sigma, "Noise scale");
        c->add_option("--noise", v_noise, "raw | clip | truncate")->check(CLI::IsMember({"raw", "clip", "truncate"}));
        c->add_option("--consistent-se", v_consistent, "Standard errors allowed for equal verdicts");
        c->add_option("--different-se", v_different, "Standard errors required for unequal verdicts");
    };
    auto* v_sweep = verify->add_subcommand("sweep", "Compare pairs over a weight sweep");
    v_sweep->add_option("tableau", v_tab, "Tableau file")->required();
    v_sweep->add_option("--pair", v_pairs, "Two mappings UR:SR (repeatable)")->expected(2);
    v_sweep->add_flag("--all-pairs", v_all_pairs, "Compare every pair of the selected mappings");
    v_sweep->add_option("--mapping", v_maps, "Mapping UR:SR for --all-pairs (repeatable)");
    v_sweep->add_option("--urs", v_urs, "Comma-separated UR labels to keep for --all-pairs");
    v_sweep->add_flag("--guided", v_guided, "Add weight vectors read off non-membership certificates");
    v_sweep->add_flag("--cells", v_cells, "Include every (pair, weight) cell in the report");
    v_sweep->add_option("--plot-data", v_plot, "Write tab-separated gap traces");
    add_sweep_opts(v_sweep);
    v_sweep->callback([&] {
        config = {{"command", "verify sweep"}, {"tableau", v_tab}, {"pairs", v_pairs}, {"all_pairs", v_all_pairs},
                  {"mappings", v_maps}, {"urs", v_urs}, {"guided", v_guided}, {"count", v_count},
                  {"max_weight", v_max_weight}, {"weight_seed", v_weight_seed}, {"trials", v_trials},
                  {"seed", v_seed}, {"sigma", v_sigma}, {"noise", v_noise}, {"consistent_se", v_consistent},
                  {"different_se", v_different}, {"cells", v_cells}, {"plot_data", v_plot}};
        action = [&]() {
            Output out;
            Tableau t = load_tableau(v_tab);
            std::vector<std::pair<MappingId, MappingId>> pairs;
            for (const auto& p : v_pairs) pairs.emplace_back(parse_mapping(p[0]), parse_mapping(p[1]));
            if (v_all_pairs) {
                auto ms = select_mappings(t, v_maps, v_urs);
                for (std::size_t i = 0; i < ms.size(); ++i)
                    for (std::size_t j = i + 1; j < ms.size(); ++j) pairs.emplace_back(ms[i], ms[j]);
            }
            if (pairs.empty()) throw std::invalid_argument("no pairs: use --pair A B or --all-pairs");
            SweepSpec spec;
            spec.random_count = v_count;
            spec.max_weight = v_max_weight;
            spec.weight_seed = v_weight_seed;
            spec.guided = v_guided;
            spec.noise = make_noise(v_sigma, v_noise);
            spec.trials = v_trials;
            spec.shg_seed = v_seed;
            spec.thresholds.consistent_se = v_consistent;
            spec.thresholds.different_se = v_different;
            VerificationReport rep = sweep_compare(t, pairs, spec, common.threads);
            out.result = to_json(rep, v_cells);
            std::ostringstream s;
            for (const auto& p : rep.pairs) {
                s << p.a.str() << "  vs  " << p.b.str() << "\n"
                  << "  me " << (p.me_equal ? "equal" : "not equal") << ", max gap " << p.max_me_gap
                  << (p.me_agrees ? "" : "  DISAGREES") << "\n"
                  << "  shg " << (p.shg_equal ? "equal" : "not equal") << ", max |gap| " << p.max_shg_gap << " ("
                  << p.max_shg_z << " se)" << (p.shg_agrees ? "" : "  DISAGREES")
                  << (p.leq_agrees ? "" : "  [uniform inequality disagrees]") << "\n";
            }
            s << (rep.all_agree() ? "all verdicts agree with the sweep\n"
                                  : std::to_string(rep.violations.size()) + " disagreement(s)\n");
            out.summary = s.str();
            if (!v_plot.empty()) write_file(v_plot, plot_data(rep));
            return out;
        };
    });
    auto* v_cex = verify->add_subcommand("counterexample", "Search a weight vector separating two ME probabilities");
    std::vector<std::string> v_pair1;
    v_cex->add_option("tableau", v_tab, "Tableau file")->required();
    v_cex->add_option("--pair", v_pair1, "Two mappings UR:SR")->expected(2)->required();
    v_cex->add_option("--budget", v_budget, "Maximum ME evaluations");
    v_cex->add_option("--seed", v_seed, "Search seed");
    v_cex->callback([&] {
        config = {{"command", "verify counterexample"}, {"tableau", v_tab}, {"pair", v_pair1},
                  {"budget", v_budget}, {"seed", v_seed}};
        action = [&]() {
            Output out;
            Tableau t = load_tableau(v_tab);
            MappingId x = parse_mapping(v_pair1[0]), y = parse_mapping(v_pair1[1]);
            CounterexampleResult r = find_me_counterexample(t, x, y, v_budget, v_seed);
            out.result = to_json(r);
            out.summary = r.weights ? "weights " + fmt_weights(*r.weights) + "  gap " + std::to_string(r.gap) + "\n"
                                    : std::string("none\n");
            return out;
        };
    });
    auto* v_mc = verify->add_subcommand("mc-torder", "Monte Carlo spot check of a T-order");
    std::string v_framework = "shg";
    v_mc->add_option("tableau", v_tab, "Tableau file")->required();
    v_mc->add_option("--framework", v_framework, "shg | me-necessary")->check(CLI::IsMember({"shg", "me-necessary"}));
    v_mc->add_option("--mapping", v_maps, "Mapping UR:SR (repeatable; default metadata.mappings)");
    v_mc->add_option("--urs", v_urs, "Comma-separated UR labels to keep");
    v_mc->add_option("--reverse-edge", v_reverse_edge, "Negative control: reverse reduced edge number N (0-based)");
    add_sweep_opts(v_mc);
    v_mc->callback([&] {
        config = {{"command", "verify mc-torder"}, {"tableau", v_tab}, {"framework", v_framework},
                  {"mappings", v_maps}, {"urs", v_urs}, {"reverse_edge", v_reverse_edge}, {"count", v_count},
                  {"max_weight", v_max_weight}, {"weight_seed", v_weight_seed}, {"trials", v_trials},
                  {"seed", v_seed}, {"sigma", v_sigma}, {"noise", v_noise}, {"consistent_se", v_consistent}};
        action = [&]() {
            Output out;
            Tableau t = load_tableau(v_tab);
            auto ms = select_mappings(t, v_maps, v_urs);
            TOrderGraph g = torder(t, v_framework == "shg" ? Framework::shg : Framework::me_necessary, ms,
                                   common.threads);
            if (v_reverse_edge >= 0) {
                if (static_cast<std::size_t>(v_reverse_edge) >= g.reduced.size())
                    throw std::invalid_argument("--reverse-edge out of range");
                auto it = std::next(g.reduced.begin(), v_reverse_edge);
                auto e = *it;
                g.reduced.erase(it);
                g.reduced.insert({e.second, e.first});
            }
            SweepSpec spec;
            spec.random_count = v_count;
            spec.max_weight = v_max_weight;
            spec.weight_seed = v_weight_seed;
            spec.shg_seed = v_seed;
            TOrderValidation val =
                mc_validate_torder(t, g, make_noise(v_sigma, v_noise), v_trials, spec, v_consistent, common.threads);
            out.result = {{"graph", to_json(g)}, {"validation", to_json(val)}};
            std::ostringstream s;
            s << summarize_graph(g) << val.checks.size() << " checks over " << val.weights.size()
              << " weight vectors, " << val.violations.size() << " violation(s)\n";
            for (const auto& v : val.violations) s << "  " << v << "\n";
            out.summary = s.str();
            return out;
        };
    });

    // derive
    auto* derive = app.add_subcommand("derive", "Build a bundled tableau: finnish | harmony");
    std::string d_which, d_out, d_pk = "stressed-light", d_flat = "high-high", d_dep = "first",
                                d_hx = "per-neighbor", d_align = "gradient", d_son = "first", d_vv = "any-vv";
    bool d_neutral = false;
    derive->add_option("which", d_which, "finnish | harmony")->required()->check(CLI::IsMember({"finnish", "harmony"}));
    derive->add_option("--out", d_out, "Write the tableau here instead of stdout");
    derive->add_option("--pkprom", d_pk, "stressed-light | unstressed-light")
        ->check(CLI::IsMember({"stressed-light", "unstressed-light"}));
    derive->add_option("--flat", d_flat, "high-high | same-class")->check(CLI::IsMember({"high-high", "same-class"}));
    derive->add_option("--dependent", d_dep, "Dependent vowel of ternary trochees: first | last")
        ->check(CLI::IsMember({"first", "last"}));
    derive->add_option("--hx", d_hx, "per-neighbor | per-stressed")->check(CLI::IsMember({"per-neighbor", "per-stressed"}));
    derive->add_option("--align", d_align, "gradient | categorical")->check(CLI::IsMember({"gradient", "categorical"}));
    derive->add_option("--sonority-vowel", d_son, "Nucleus vowel deciding sonority: first | last")
        ->check(CLI::IsMember({"first", "last"}));
    derive->add_option("--long-vowel", d_vv, "WSP/VV nuclei: any-vv | identical")
        ->check(CLI::IsMember({"any-vv", "identical"}));
    derive->add_flag("--neutral-interveners", d_neutral, "Harmony: neutral vowels count as interveners");
    derive->callback([&] {
        config = {{"command", "derive"}, {"which", d_which}, {"pkprom", d_pk}, {"flat", d_flat},
                  {"dependent", d_dep}, {"hx", d_hx}, {"align", d_align}, {"sonority_vowel", d_son},
                  {"long_vowel", d_vv}, {"neutral_interveners", d_neutral}, {"out", d_out}};
        action = [&]() {
            using O = FinnishOptions;
            Output out;
            Tableau t;
            ojson meta;
            if (d_which == "finnish") {
                O o;
                o.pkprom = d_pk == "stressed-light" ? O::PkProm::stressed_light : O::PkProm::unstressed_light;
                o.flat = d_flat == "high-high" ? O::Flat::high_high : O::Flat::same_class;
                o.dependent = d_dep == "first" ? O::Dependent::first : O::Dependent::last;
                o.hx = d_hx == "per-neighbor" ? O::HX::per_neighbor : O::HX::per_stressed;
                o.align = d_align == "gradient" ? O::Align::gradient : O::Align::categorical;
                o.sonority_vowel = d_son == "first" ? O::SonorityVowel::first : O::SonorityVowel::last;
                o.long_vowel = d_vv == "any-vv" ? O::LongVowel::any_vv : O::LongVowel::identical;
                t = build_tableau(ConstraintFamily::finnish, finnish_entries(), o);
                meta["description"] = "Finnish partitive plural /t/-deletion vs retention, stem types (a)-(m)";
                meta["readings"] = {{"pkprom", d_pk}, {"flat", d_flat}, {"dependent", d_dep}, {"hx", d_hx},
                                    {"align", d_align}, {"sonority_vowel", d_son}, {"long_vowel", d_vv}};
                ojson stems = ojson::object(), maps = ojson::array();
                for (const auto& s : finnish_stem_types()) {
                    stems[s.label] = {{"stem", s.stem},
                                      {"deletion_percent", s.deletion_percent},
                                      {"retention_parse", s.retention_displayed ? "displayed" : "constructed"}};
                    const auto& in = find_input(t, s.label);
                    maps.push_back({s.label, in.candidates[0].sr});
                    if (s.retention_displayed) maps.push_back({s.label, in.candidates[1].sr});
                }
                meta["stems"] = std::move(stems);
                meta["mappings"] = std::move(maps);
            } else {
                HarmonyOptions h;
                h.neutral_interveners = d_neutral;
                t = build_tableau(ConstraintFamily::harmony, harmony_entries(), {}, h);
                meta["description"] = "Finnish back harmony on the essive suffix";
                meta["readings"] = {{"neutral_interveners", d_neutral}};
                meta["mappings"] = ojson::array({ojson::array({"maa-nä", "maana"}), ojson::array({"kaava-nä", "kaavana"})});
            }
            t.metadata_json = meta.dump();
            std::string text = serialize_tableau(t);
            if (!d_out.empty()) write_file(d_out, text);
            out.result = tableau_to_json(t);
            out.summary = d_out.empty() ? text : "wrote " + d_out + "\n";
            return out;
        };
    });

    // fmt
    auto* fmt = app.add_subcommand("fmt", "Validate a tableau and convert between JSON and TSV");
    std::string f_in, f_to = "json", f_out;
    bool f_check = false;
    fmt->add_option("input", f_in, "Tableau file (.json or .tsv)")->required();
    fmt->add_option("--to", f_to, "json | tsv")->check(CLI::IsMember({"json", "tsv"}));
    fmt->add_option("--out", f_out, "Output path (default stdout)");
    fmt->add_flag("--check", f_check, "Validate only");
    fmt->callback([&] {
        config = {{"command", "fmt"}, {"input", f_in}, {"to", f_to}, {"out", f_out}, {"check", f_check}};
        action = [&]() {
            Output out;
            Tableau t = load_tableau(f_in);
            out.result = {{"valid", true}, {"inputs", t.inputs.size()}, {"constraints", t.constraints.names}};
            if (f_check) {
                out.summary = "ok: " + std::to_string(t.inputs.size()) + " inputs, " +
                              std::to_string(t.constraints.size()) + " constraints\n";
                return out;
            }
            std::string text = f_to == "json" ? serialize_tableau(t) : serialize_tableau_tsv(t);
            if (!f_out.empty()) {
                write_file(f_out, text);
                out.summary = "wrote " + f_out + "\n";
            } else {
                out.summary = text;
            }
            return out;
        };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        Output out = action();
        ojson report;
        report["tool"] = {{"name", "equiprob"}, {"version", kToolVersion}};
        config["threads"] = common.threads;
        report["config"] = config;
        report["result"] = std::move(out.result);
        std::string text = report.dump(2) + "\n";
        if (!common.report_path.empty()) write_file(common.report_path, text);
        std::cout << (common.json_stdout ? text : out.summary);
        return out.status;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
