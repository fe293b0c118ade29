#pragma once

// JSON schemas for presentations, Betti tables, monomial modules and the
// experiment reports, plus CSV mirrors of the tabular outputs.

#include <fstream>
#include <json.hpp>
#include <sstream>

#include "exmod/equivariant.hpp"
#include "exmod/incmod.hpp"

namespace exmod {

using nlohmann::json;

inline std::vector<int> mask_to_list(Mask m) {
    std::vector<int> out;
    for (int i = 0; i < 32; ++i)
        if (m & (Mask{1} << i)) out.push_back(i);
    return out;
}

inline Mask list_to_mask(const std::vector<int>& v) {
    Mask m = 0;
    for (int i : v) {
        if (i < 0 || i >= 32) throw std::invalid_argument("wedge coordinate out of range");
        m |= Mask{1} << i;
    }
    return m;
}

// {"prime": p, "blocks": [[parts]...], "support_width": w,
//  "relations": [[{"block", "div", "wedge", "coeff"}...]...]}
// div lists one ascending coordinate row per partition row; wedge lists the
// exterior coordinates of the term.
inline json presentation_to_json(const EquivariantPresentation& M) {
    json j;
    j["prime"] = M.prime.p;
    j["blocks"] = json::array();
    for (const auto& b : M.blocks) j["blocks"].push_back(b.parts());
    j["support_width"] = M.support_width;
    j["relations"] = json::array();
    for (const auto& rel : M.relations) {
        json jr = json::array();
        for (const auto& t : rel)
            jr.push_back({{"block", t.block},
                          {"div", t.div},
                          {"wedge", mask_to_list(t.wedge)},
                          {"coeff", t.coeff}});
        j["relations"].push_back(std::move(jr));
    }
    return j;
}

inline EquivariantPresentation presentation_from_json(const json& j) {
    EquivariantPresentation M{PrimeChar(j.at("prime").get<int>()), {}, 0, {}};
    for (const auto& b : j.at("blocks"))
        M.blocks.push_back(Partition(b.get<std::vector<int>>()));
    M.support_width = j.at("support_width").get<int>();
    for (const auto& jr : j.at("relations")) {
        EqElem rel;
        for (const auto& jt : jr) {
            EqTerm t;
            t.block = jt.at("block").get<int>();
            if (t.block < 0 || t.block >= static_cast<int>(M.blocks.size()))
                throw std::invalid_argument("relation references a missing block");
            t.div = jt.at("div").get<DivTuple>();
            t.wedge = list_to_mask(jt.at("wedge").get<std::vector<int>>());
            t.coeff = jt.at("coeff").get<int>();
            rel.push_back(std::move(t));
        }
        M.relations.push_back(std::move(rel));
    }
    return M;
}

// flat entry list {"i", "j", "weight"?, "value"}
inline json betti_to_json(const BettiTable& b, bool weighted = false) {
    json out = json::array();
    if (weighted) {
        for (const auto& [key, v] : b.beta_weighted) {
            const auto& [i, jj, w] = key;
            out.push_back({{"i", i}, {"j", jj}, {"weight", w}, {"value", v}});
        }
    } else {
        for (const auto& [ij, v] : b.beta)
            out.push_back({{"i", ij.first}, {"j", ij.second}, {"value", v}});
    }
    return out;
}

inline std::string betti_to_csv(const BettiTable& b) {
    std::ostringstream os;
    os << "i,j,value\n";
    for (const auto& [ij, v] : b.beta) os << ij.first << "," << ij.second << "," << v << "\n";
    return os.str();
}

inline json torsion_to_json(const TorsionReport& t) {
    json out;
    out["rank"] = t.rank;
    out["s_max"] = t.s_max;
    out["d_max"] = t.d_max;
    out["total"] = t.total;
    out["inconclusive"] = t.inconclusive;
    out["degrees_stable"] = t.degrees_stable;
    out["classes"] = json::array();
    for (const auto& c : t.classes)
        out["classes"].push_back(
            {{"degree", c.degree}, {"count", c.count}, {"kill_exponent", c.kill_exponent}});
    return out;
}

inline json shift_experiment_to_json(const ShiftExperimentResult& r) {
    json out;
    out["l_found"] = r.l_found ? json(*r.l_found) : json(nullptr);
    out["trace"] = json::array();
    for (const auto& s : r.trace)
        out["trace"].push_back({{"l", s.l},
                                {"t0", s.t0},
                                {"t1", s.t1},
                                {"torsion_total", s.torsion_total},
                                {"semi_induced", s.semi_induced}});
    return out;
}

inline json resolution_to_json(const ResolutionExperimentReport& r) {
    json out;
    out["ok"] = r.ok;
    out["inconclusive"] = r.inconclusive;
    out["t0_M"] = r.t0_M;
    out["length"] = r.length;
    out["shift_amounts"] = r.shift_amounts;
    out["t0"] = r.t0;
    out["cohomology_torsion"] = r.cohomology_torsion;
    out["cohomology"] = json::array();
    for (const auto& pos : r.cohomology) {
        json jp = json::object();
        for (const auto& [d, n] : pos) jp[std::to_string(d)] = n;
        out["cohomology"].push_back(std::move(jp));
    }
    return out;
}

inline json regularity_to_json(const RegularityBoundReport& r) {
    return {{"t", r.t}, {"reg", r.reg}, {"bound", r.bound}, {"ok", r.ok}, {"truncated", r.truncated}};
}

// {"n": tensor length, "prime": p, "squarefree": bool, "generators": [text...]}
inline json monomial_module_to_json(const MonomialModule& M, int prime) {
    json out;
    out["n"] = M.n;
    out["prime"] = prime;
    out["squarefree"] = M.squarefree;
    out["generators"] = json::array();
    for (const auto& g : M.gens) out["generators"].push_back(g.str());
    return out;
}

inline MonomialModule monomial_module_from_json(const json& j) {
    MonomialModule M;
    M.n = j.at("n").get<int>();
    M.squarefree = j.value("squarefree", false);
    for (const auto& g : j.at("generators")) {
        PModMonomial m = parse_monomial(g.get<std::string>());
        if (static_cast<int>(m.tensor.size()) != M.n)
            throw std::invalid_argument("generator tensor length does not match n");
        M.gens.push_back(std::move(m));
    }
    return M;
}

inline json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    json j;
    in >> j;
    return j;
}

inline void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw std::invalid_argument("cannot write " + path);
    out << text;
}

}  // namespace exmod
