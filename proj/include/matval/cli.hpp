#pragma once

// Command-line front end: matroid construction from shorthand strings or
// JSON files, invariant evaluation, classification, subdivision checks and
// corpus sweeps. Exit codes: 0 success, 1 failed check, 2 parse error,
// 3 unresolvable term / oracle out of reach.

#include <matval/json_io.hpp>

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace matval {

struct SpecParseError : std::runtime_error {
    explicit SpecParseError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline std::vector<long> parse_numbers(const std::string& s, size_t want, const std::string& who) {
    std::vector<long> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            size_t pos = 0;
            out.push_back(std::stol(item, &pos));
            if (pos != item.size()) throw std::invalid_argument(item);
        } catch (...) {
            throw SpecParseError(who + ": expected an integer, got \"" + item + "\"");
        }
    }
    if (want != 0 && out.size() != want)
        throw SpecParseError(who + ": expected " + std::to_string(want) + " comma-separated integers");
    return out;
}

}  // namespace detail

// "uniform:k,n" | "cuspidal:r,k,h,n" | "minimal:k,n" | "cab:a,b" |
// "lpm:<L>,<U>" | "gs:k,n[,residue]" | "sum:(spec)+(spec)" | "file:<path>"
inline Matroid parse_matroid_spec(const std::string& spec) {
    auto colon = spec.find(':');
    if (colon == std::string::npos)
        throw SpecParseError("matroid spec needs the form kind:args, got \"" + spec + "\"");
    const std::string kind = spec.substr(0, colon), args = spec.substr(colon + 1);
    try {
        if (kind == "uniform") {
            auto v = detail::parse_numbers(args, 2, "uniform");
            return uniform(static_cast<int>(v[0]), static_cast<int>(v[1]));
        }
        if (kind == "cuspidal") {
            auto v = detail::parse_numbers(args, 4, "cuspidal");
            return cuspidal(static_cast<int>(v[0]), static_cast<int>(v[1]), static_cast<int>(v[2]),
                            static_cast<int>(v[3]));
        }
        if (kind == "minimal") {
            auto v = detail::parse_numbers(args, 2, "minimal");
            return minimal_matroid(static_cast<int>(v[0]), static_cast<int>(v[1]));
        }
        if (kind == "cab") {
            auto v = detail::parse_numbers(args, 2, "cab");
            return graphic_two_cycles(static_cast<int>(v[0]), static_cast<int>(v[1]));
        }
        if (kind == "lpm") {
            auto comma = args.find(',');
            if (comma == std::string::npos) throw SpecParseError("lpm: expected lpm:<L>,<U>");
            return lattice_path_matroid(args.substr(0, comma), args.substr(comma + 1));
        }
        if (kind == "gs") {
            auto v = detail::parse_numbers(args, 0, "gs");
            if (v.size() == 2) return graham_sloane(static_cast<int>(v[0]), static_cast<int>(v[1]));
            if (v.size() == 3)
                return graham_sloane(static_cast<int>(v[0]), static_cast<int>(v[1]),
                                     static_cast<int>(v[2]));
            throw SpecParseError("gs: expected gs:k,n or gs:k,n,residue");
        }
        if (kind == "sum") {
            // (spec)+(spec), possibly nested
            if (args.empty() || args.front() != '(')
                throw SpecParseError("sum: expected sum:(spec)+(spec)");
            int depth = 0;
            size_t split = std::string::npos;
            for (size_t i = 0; i < args.size(); ++i) {
                if (args[i] == '(') ++depth;
                if (args[i] == ')') --depth;
                if (depth == 0 && i + 1 < args.size() && args[i + 1] == '+') {
                    split = i + 1;
                    break;
                }
            }
            if (split == std::string::npos || split + 1 >= args.size() || args[split + 1] != '(' ||
                args.back() != ')')
                throw SpecParseError("sum: expected sum:(spec)+(spec)");
            std::string left = args.substr(1, split - 2);
            std::string right = args.substr(split + 2, args.size() - split - 3);
            return direct_sum(parse_matroid_spec(left), parse_matroid_spec(right));
        }
        if (kind == "file") {
            std::ifstream in(args);
            if (!in) throw SpecParseError("file: cannot open \"" + args + "\"");
            json j;
            in >> j;
            return matroid_from_json(j);
        }
    } catch (const SpecParseError&) {
        throw;
    } catch (const std::exception& e) {
        throw SpecParseError(kind + ": " + e.what());
    }
    throw SpecParseError("unknown matroid spec kind \"" + kind + "\"");
}

namespace detail {

inline RoutePreference parse_route(const std::string& s) {
    if (s == "auto") return RoutePreference::Auto;
    if (s == "profile") return RoutePreference::Profile;
    if (s == "oracle") return RoutePreference::Oracle;
    throw SpecParseError("route must be auto, profile or oracle");
}

inline int cmd_invariant(const std::string& spec, const std::string& name, const std::string& route,
                         const std::string& format, std::ostream& out) {
    Matroid m = parse_matroid_spec(spec);
    auto id = invariant_from_name(name);
    if (!id) throw SpecParseError("unknown invariant \"" + name + "\"");
    if (*id == InvariantId::Denham) {
        auto den = denham_oracle(m);
        if (format == "json") {
            json terms = json::array();
            for (const auto& [f, poly] : den) {
                json elems = json::array();
                for (int e : mask_elements(f)) elems.push_back(e);
                terms.push_back(json{{"flat", std::move(elems)},
                                     {"coefficient", value_to_json(InvariantId::Tutte, Value(poly))}});
            }
            out << json{{"invariant", "denham"}, {"route", "oracle"}, {"value", std::move(terms)}}.dump()
                << "\n";
        } else {
            for (const auto& [f, poly] : den) {
                out << "b_{";
                bool first = true;
                for (int e : mask_elements(f)) {
                    if (!first) out << ",";
                    out << e;
                    first = false;
                }
                out << "}: " << poly.to_string("x", "y") << "\n";
            }
        }
        return 0;
    }
    EvalResult res = eval_auto(*id, m, parse_route(route));
    if (format == "json")
        out << json{{"invariant", name}, {"route", res.route}, {"value", value_to_json(*id, res.value)}}
                   .dump()
            << "\n";
    else
        out << value_to_string(*id, res.value) << "\n";
    return 0;
}

inline std::string mask_to_set_string(Mask m) {
    std::string s = "{";
    bool first = true;
    for (int e : mask_elements(m)) {
        if (!first) s += ",";
        s += std::to_string(e);
        first = false;
    }
    return s + "}";
}

inline int cmd_classify(const std::string& spec, const std::string& format, std::ostream& out) {
    Matroid m = parse_matroid_spec(spec);
    auto cls = classify_split(m);
    if (format == "json") {
        json j;
        if (std::holds_alternative<ClassifyUniform>(cls)) {
            j = {{"class", "uniform"}, {"rank", m.rank()}, {"n", m.n()}};
        } else if (auto* es = std::get_if<ClassifyElementarySplit>(&cls)) {
            j = {{"class", "elementary-split"},
                 {"rank", m.rank()},
                 {"n", m.n()},
                 {"profile", profile_to_json(es->profile)}};
        } else {
            auto& bad = std::get<ClassifyNotElementarySplit>(cls);
            json w = json::array();
            for (int e : mask_elements(bad.witness_flat1)) w.push_back(e);
            json w2 = json::array();
            for (int e : mask_elements(bad.witness_flat2)) w2.push_back(e);
            j = {{"class", "not-elementary-split"}, {"witness", {std::move(w), std::move(w2)}}};
        }
        out << j.dump() << "\n";
        return 0;
    }
    if (std::holds_alternative<ClassifyUniform>(cls)) {
        out << "uniform U_{" << m.rank() << "," << m.n() << "}\n";
    } else if (auto* es = std::get_if<ClassifyElementarySplit>(&cls)) {
        out << "elementary split (rank " << m.rank() << ", " << m.n() << " elements)\n";
        out << "stressed subsets with non-empty cusp:\n";
        for (const auto& [rh, c] : es->profile.lambda)
            out << "  rank " << rh.first << ", size " << rh.second << ": " << c << "\n";
    } else {
        auto& bad = std::get<ClassifyNotElementarySplit>(cls);
        out << "not elementary split (comparable proper cyclic flats "
            << mask_to_set_string(bad.witness_flat1) << " < " << mask_to_set_string(bad.witness_flat2)
            << ")\n";
    }
    return 0;
}

// The input is read as the relaxed matroid; --flat names the subset along
// which the hyperplane split is taken, at level rank-1 of the subset unless
// --level is given.
inline int cmd_check_subdivision(const std::string& spec, const std::string& flat_arg, int level,
                                 long dilations, std::ostream& out) {
    Matroid rel = parse_matroid_spec(spec);
    Mask f = 0;
    for (long e : parse_numbers(flat_arg, 0, "--flat")) {
        if (e < 0 || e >= rel.n()) throw SpecParseError("--flat: element out of range");
        f |= bit(static_cast<int>(e));
    }
    if (f == 0) throw SpecParseError("--flat: empty subset");
    int r = level >= 0 ? level : rank(rel, f) - 1;
    std::vector<Mask> lower;
    for (Mask b : rel.bases())
        if (popcount(b & f) <= r) lower.push_back(b);
    if (lower.empty()) throw SpecParseError("the split along this subset has an empty lower piece");
    Matroid m(rel.n(), rel.rank(), std::move(lower));
    if (!is_stressed(m, f))
        throw SpecParseError("the subset is not stressed in the lower piece; no relaxation split here");
    if (relax(m, f) != rel)
        throw SpecParseError("relaxing the lower piece along this subset does not recover the input");
    auto rep = check_relaxation_subdivision(m, f, dilations);
    out << "pieces: lower " << m.bases().size() << " bases, cuspidal "
        << cusp_size(r, popcount(f), rel.rank(), rel.n()).get_str() << " cusp sets, input "
        << rel.bases().size() << " bases\n";
    out << "lattice points checked at dilations 1.." << dilations << ": " << rep.points_checked << "\n";
    if (rep.degenerate) out << "degenerate split (empty cusp)\n";
    if (rep.ok) {
        out << "PASS\n";
        return 0;
    }
    out << "FAIL at t=" << rep.witness->first << " point (";
    for (size_t i = 0; i < rep.witness->second.size(); ++i)
        out << (i ? "," : "") << rep.witness->second[i];
    out << ")\n";
    return 1;
}

inline int cmd_check_sweep(int max_n, unsigned seed, bool jsonl, std::ostream& out) {
    SweepOptions opt;
    opt.max_n = max_n;
    opt.seed = seed;
    SweepReport rep = consistency_sweep(opt);
    if (jsonl) out << sweep_report_jsonl(rep);
    out << "checked " << rep.records.size() << " (matroid, invariant, route) records up to n=" << max_n
        << "\n";
    if (rep.ok()) {
        out << "PASS\n";
        return 0;
    }
    out << "FAIL: " << rep.discrepancies << " discrepancies; first: " << rep.first_counterexample
        << "\n";
    return 1;
}

}  // namespace detail

inline int run_cli(std::vector<std::string> args, std::ostream& out, std::ostream& err) {
    CLI::App app{"matval: valuative invariants of matroids via cusps and relaxations"};
    app.require_subcommand(1);

    std::string spec, name, route = "auto", format = "text";
    auto* inv = app.add_subcommand("invariant", "evaluate an invariant of a matroid");
    inv->add_option("spec", spec, "matroid spec (uniform:k,n | cuspidal:r,k,h,n | minimal:k,n | "
                                  "cab:a,b | lpm:L,U | gs:k,n[,res] | sum:(s)+(s) | file:path)")
        ->required();
    inv->add_option("--name", name, "invariant name")->required();
    inv->add_option("--route", route, "auto | profile | oracle");
    inv->add_option("--format", format, "text | json");

    std::string cspec, cformat = "text";
    auto* cls = app.add_subcommand("classify", "classify a matroid as uniform / elementary split / other");
    cls->add_option("spec", cspec, "matroid spec")->required();
    cls->add_option("--format", cformat, "text | json");

    auto* check = app.add_subcommand("check", "verification drivers");
    check->require_subcommand(1);
    std::string sspec, flat_arg;
    int level = -1;
    long dilations = 3;
    auto* sub = check->add_subcommand("subdivision", "certify a relaxation split pointwise");
    sub->add_option("spec", sspec, "matroid spec of the relaxed matroid")->required();
    sub->add_option("--flat", flat_arg, "comma-separated 0-based elements of the split subset")
        ->required();
    sub->add_option("--level", level, "split level (default: rank of the subset minus one)");
    sub->add_option("--dilations", dilations, "check dilations 1..N (default 3)");
    int max_n = 7;
    unsigned seed = 7;
    bool jsonl = false;
    auto* sweep = check->add_subcommand("sweep", "closed-form vs oracle consistency sweep");
    sweep->add_option("--max-n", max_n, "largest ground set in the corpus (default 7)");
    sweep->add_option("--seed", seed, "seed for the randomized corpus entries");
    sweep->add_flag("--jsonl", jsonl, "emit one JSON record per check");

    std::reverse(args.begin(), args.end());
    try {
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << "error: " << e.what() << "\n";
        return 2;
    }

    try {
        if (inv->parsed()) return detail::cmd_invariant(spec, name, route, format, out);
        if (cls->parsed()) return detail::cmd_classify(cspec, cformat, out);
        if (sub->parsed()) return detail::cmd_check_subdivision(sspec, flat_arg, level, dilations, out);
        if (sweep->parsed()) return detail::cmd_check_sweep(max_n, seed, jsonl, out);
    } catch (const SpecParseError& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    } catch (const UnresolvableTerm& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const TooLargeForOracle& e) {
        err << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        err << "error: " << e.what() << "\n";
        return 2;
    }
    err << "error: no subcommand\n";
    return 2;
}

}  // namespace matval
