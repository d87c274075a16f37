#pragma once

// JSON wire formats: the matroid file schema {"n":…, "rank":…, "bases":[[…]]},
// stressed profiles, H-polytopes (debugging), and canonical value encodings.
// Element labels are 0-based; files carrying a label equal to n are rejected
// with a pointer to the convention.

#include <matval/master.hpp>

#include <json.hpp>

namespace matval {

using json = nlohmann::json;

inline json matroid_to_json(const Matroid& m) {
    json bases = json::array();
    for (Mask b : m.bases()) {
        json inner = json::array();
        for (int e : mask_elements(b)) inner.push_back(e);
        bases.push_back(std::move(inner));
    }
    return json{{"n", m.n()}, {"rank", m.rank()}, {"bases", std::move(bases)}};
}

inline Matroid matroid_from_json(const json& j) {
    if (!j.contains("n") || !j.contains("bases"))
        throw std::invalid_argument("matroid json needs \"n\" and \"bases\"");
    const int n = j.at("n").get<int>();
    std::vector<Mask> masks;
    for (const auto& inner : j.at("bases")) {
        Mask b = 0;
        for (const auto& e : inner) {
            long v = e.get<long>();
            if (v < 0 || v >= n)
                throw std::invalid_argument(
                    "matroid json: element label " + std::to_string(v) +
                    " out of range; labels must be 0-based integers below n");
            b |= bit(static_cast<int>(v));
        }
        masks.push_back(b);
    }
    Matroid m = from_bases(n, std::move(masks));
    if (j.contains("rank") && j.at("rank").get<int>() != m.rank())
        throw std::invalid_argument("matroid json: declared rank disagrees with the bases");
    return m;
}

inline json profile_to_json(const StressedProfile& p) {
    json lam = json::array();
    for (const auto& [rh, c] : p.lambda)
        lam.push_back(json{{"r", rh.first}, {"h", rh.second}, {"count", c}});
    return json{{"lambda", std::move(lam)}};
}

inline StressedProfile profile_from_json(const json& j) {
    StressedProfile p;
    for (const auto& e : j.at("lambda"))
        p.add(e.at("r").get<int>(), e.at("h").get<int>(), e.at("count").get<long>());
    return p;
}

inline json hpolytope_to_json(const HPolytope& p) {
    json ineqs = json::array();
    for (const auto& [mask, bound] : p.ineqs) {
        json elems = json::array();
        for (int e : mask_elements(mask)) elems.push_back(e);
        ineqs.push_back(json{{"subset", std::move(elems)}, {"bound", bound}});
    }
    return json{{"n", p.n}, {"sum", p.k}, {"ineqs", std::move(ineqs)}};
}

inline json value_to_json(InvariantId id, const Value& v) {
    if (auto* r = std::get_if<Rat>(&v)) return json{{"type", "rat"}, {"value", rat_to_string(*r)}};
    if (auto* i = std::get_if<Int>(&v)) return json{{"type", "int"}, {"value", i->get_str()}};
    if (auto* p = std::get_if<UniPoly>(&v)) {
        json coeffs = json::array();
        for (int d = 0; d <= p->degree(); ++d) coeffs.push_back(rat_to_string(p->coeff(d)));
        return json{{"type", "unipoly"}, {"var", "t"}, {"coeffs", std::move(coeffs)}};
    }
    if (auto* b = std::get_if<BiPoly>(&v)) {
        const bool tq = id == InvariantId::Spectrum;
        json terms = json::array();
        for (const auto& [key, c] : b->terms())
            terms.push_back(json{{tq ? "dt" : "dx", key.first},
                                 {tq ? "dq" : "dy", key.second},
                                 {"c", rat_to_string(c)}});
        return json{{"type", "bipoly"},
                    {"vars", tq ? json::array({"t", "q"}) : json::array({"x", "y"})},
                    {"terms", std::move(terms)}};
    }
    const auto& g = std::get<GInvariantVector>(v);
    json terms = json::array();
    for (const auto& [seq, w] : g.weights) {
        std::string bits;
        for (int i = 0; i < g.n; ++i) bits += has_bit(seq, i) ? '1' : '0';
        terms.push_back(json{{"seq", bits}, {"weight", w.get_str()}});
    }
    return json{{"type", "g_invariant"}, {"n", g.n}, {"terms", std::move(terms)}};
}

inline Value value_from_json(const json& j) {
    const std::string type = j.at("type").get<std::string>();
    auto parse_rat = [](const std::string& s) {
        Rat r(s);
        r.canonicalize();
        return r;
    };
    if (type == "rat") return parse_rat(j.at("value").get<std::string>());
    if (type == "int") return Int(j.at("value").get<std::string>());
    if (type == "unipoly") {
        std::vector<Rat> coeffs;
        for (const auto& c : j.at("coeffs")) coeffs.push_back(parse_rat(c.get<std::string>()));
        return UniPoly(std::move(coeffs));
    }
    if (type == "bipoly") {
        BiPoly out;
        const bool tq = j.at("vars")[0].get<std::string>() == "t";
        for (const auto& term : j.at("terms"))
            out.add(term.at(tq ? "dt" : "dx").get<int>(), term.at(tq ? "dq" : "dy").get<int>(),
                    parse_rat(term.at("c").get<std::string>()));
        return out;
    }
    if (type == "g_invariant") {
        GInvariantVector g;
        g.n = j.at("n").get<int>();
        for (const auto& term : j.at("terms")) {
            std::string bits = term.at("seq").get<std::string>();
            Mask seq = 0;
            for (size_t i = 0; i < bits.size(); ++i)
                if (bits[i] == '1') seq |= bit(static_cast<int>(i));
            g.weights[seq] = Int(term.at("weight").get<std::string>());
        }
        return g;
    }
    throw std::invalid_argument("unknown value type: " + type);
}

}  // namespace matval
