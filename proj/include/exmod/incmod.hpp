#pragma once

// Monomial machinery for the tensor-power modules P_n = E (x) V^(x n) and
// their squarefree shadows Q_n over B = S/(x_1^2, x_2^2, ...): the total
// monomial order, the Inc(N) action, initial terms/modules through finite
// windows, the Psi bijection, equivariant membership, and ACC experiments.

#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "exmod/fp.hpp"

namespace exmod {

// Monomial (x_{i_1} ^ x_{i_2} ^ ... ^ x_{i_r}) (x) (e_{j_1} (x) ... (x) e_{j_n})
// in normal form: wedge indices strictly decreasing, coefficient +1.
// The same data serves Q_n, where the wedge word is read as the squarefree
// product x_{i_1} x_{i_2} ... (multiplication in B, no signs).
struct PModMonomial {
    std::vector<int> wedge;   // strictly decreasing, 1-based
    std::vector<int> tensor;  // length n, 1-based

    int max_index() const {
        int m = 0;
        for (int i : wedge) m = std::max(m, i);
        for (int j : tensor) m = std::max(m, j);
        return m;
    }

    bool operator==(const PModMonomial&) const = default;

    std::string str() const {
        std::ostringstream os;
        if (wedge.empty()) {
            os << "1";
        } else {
            for (std::size_t k = 0; k < wedge.size(); ++k)
                os << (k ? "^" : "") << "x" << wedge[k];
        }
        os << " | ";
        for (std::size_t k = 0; k < tensor.size(); ++k)
            os << (k ? "," : "") << "e" << tensor[k];
        return os.str();
    }
};

using QModMonomial = PModMonomial;  // same word data, different ambient product

// Total order: lexicographic on the word pair (I, J). On the wedge word I
// (over N*) a proper prefix counts as SMALLER; this convention is a genuine
// choice (the defining total order only needs compatibility with disjoint
// multiplication) and is fixed here once and for all. Tensor words have the
// common length n, so plain lex applies.
inline int compare(const PModMonomial& a, const PModMonomial& b) {
    if (a.tensor.size() != b.tensor.size()) throw std::invalid_argument("ambient mismatch");
    std::size_t k = 0;
    for (; k < a.wedge.size() && k < b.wedge.size(); ++k) {
        if (a.wedge[k] != b.wedge[k]) return a.wedge[k] < b.wedge[k] ? -1 : 1;
    }
    if (a.wedge.size() != b.wedge.size()) return a.wedge.size() < b.wedge.size() ? -1 : 1;
    for (std::size_t t = 0; t < a.tensor.size(); ++t)
        if (a.tensor[t] != b.tensor[t]) return a.tensor[t] < b.tensor[t] ? -1 : 1;
    return 0;
}

struct MonomialGreater {
    bool operator()(const PModMonomial& a, const PModMonomial& b) const {
        return compare(a, b) > 0;
    }
};

// Elements ordered with the largest monomial first, so begin() is the
// initial term.
using PModElement = std::map<PModMonomial, int, MonomialGreater>;

inline PModElement element_normalized(const Fp& f, PModElement v) {
    for (auto it = v.begin(); it != v.end();) {
        it->second = f.norm(it->second);
        it = it->second == 0 ? v.erase(it) : std::next(it);
    }
    return v;
}

// Apply an increasing map given by its finite graph; must cover every index.
inline PModMonomial inc_apply(const std::map<int, int>& sigma, const PModMonomial& m) {
    int prev_src = 0, prev_dst = 0;
    for (const auto& [s, d] : sigma) {
        if (s <= prev_src && prev_src != 0) throw std::invalid_argument("graph not a map");
        if (d <= prev_dst) throw std::invalid_argument("map not increasing");
        prev_src = s;
        prev_dst = d;
    }
    auto apply = [&](int i) {
        auto it = sigma.find(i);
        if (it == sigma.end()) throw std::invalid_argument("index outside the map's domain");
        return it->second;
    };
    PModMonomial out;
    for (int i : m.wedge) out.wedge.push_back(apply(i));
    for (int j : m.tensor) out.tensor.push_back(apply(j));
    // increasing maps preserve the descending order of the wedge: no sign
    return out;
}

// Psi: replace the wedge by the squarefree product (word unchanged); the
// inverse reads the product back as a wedge.
inline QModMonomial psi(const PModMonomial& m) { return m; }
inline PModMonomial psi_inverse(const QModMonomial& m) { return m; }

// coefficient * monomial of the largest term
inline std::pair<PModMonomial, int> initial_term(const PModElement& v) {
    if (v.empty()) throw std::invalid_argument("zero element has no initial term");
    return *v.begin();
}

// x_i * m with the sign of moving x_i into its descending slot; zero (nullopt)
// if i already occurs. In Q_n the product is sign-free: pass with_sign=false.
inline std::optional<std::pair<PModMonomial, int>> wedge_multiply(int i, const PModMonomial& m,
                                                                 bool with_sign = true) {
    PModMonomial out = m;
    std::size_t pos = 0;
    while (pos < out.wedge.size() && out.wedge[pos] > i) ++pos;
    if (pos < out.wedge.size() && out.wedge[pos] == i) return std::nullopt;
    out.wedge.insert(out.wedge.begin() + pos, i);
    int sign = (with_sign && pos % 2 == 1) ? -1 : 1;
    return std::make_pair(out, sign);
}

struct MembershipWitness {
    bool member = false;
    int generator = -1;
    std::map<int, int> sigma;
    std::vector<int> wedge_factor;  // u with u * sigma(g) = +-m
};

struct MonomialModule {
    int n = 1;                   // tensor length of the ambient P_n / Q_n
    bool squarefree = false;     // true: ambient Q_n over B
    std::vector<PModMonomial> gens;
};

namespace detail {

inline std::vector<int> indices_of(const PModMonomial& m) {
    std::vector<int> s;
    for (int i : m.wedge) s.push_back(i);
    for (int j : m.tensor) s.push_back(j);
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

// all strictly increasing maps from `src` (ascending) into {1..hi}
inline void increasing_graphs(const std::vector<int>& src, int hi,
                              const std::function<void(const std::map<int, int>&)>& emit) {
    std::map<int, int> g;
    auto rec = [&](auto&& self, std::size_t k, int lo) -> void {
        if (k == src.size()) {
            emit(g);
            return;
        }
        for (int v = lo; v <= hi - static_cast<int>(src.size() - k) + 1; ++v) {
            g[src[k]] = v;
            self(self, k + 1, v + 1);
            g.erase(src[k]);
        }
    };
    rec(rec, 0, 1);
}

}  // namespace detail

// m lies in the Inc-stable module generated by M.gens iff some u * sigma(g)
// equals +-m with sigma increasing of range <= max index of m and u a
// squarefree wedge monomial.
inline MembershipWitness membership(const PModMonomial& m, const MonomialModule& M) {
    if (static_cast<int>(m.tensor.size()) != M.n) throw std::invalid_argument("ambient mismatch");
    int hi = std::max(m.max_index(), 1);
    MembershipWitness w;
    for (int gi = 0; gi < static_cast<int>(M.gens.size()); ++gi) {
        const PModMonomial& g = M.gens[gi];
        if (g.tensor.size() != m.tensor.size() || g.wedge.size() > m.wedge.size()) continue;
        auto src = detail::indices_of(g);
        bool found = false;
        detail::increasing_graphs(src, hi, [&](const std::map<int, int>& sg) {
            if (found) return;
            PModMonomial t = inc_apply(sg, g);
            if (t.tensor != m.tensor) return;
            // need t.wedge subset of m.wedge; u = complement
            std::vector<int> u;
            std::size_t k = 0;
            for (int i : m.wedge) {
                if (k < t.wedge.size() && t.wedge[k] == i) {
                    ++k;
                } else {
                    u.push_back(i);
                }
            }
            if (k != t.wedge.size()) return;
            found = true;
            w.member = true;
            w.generator = gi;
            w.sigma = sg;
            w.wedge_factor = u;
        });
        if (found) return w;
    }
    return w;
}

struct InitialModuleResult {
    MonomialModule module;
    bool truncated = true;
    long long span_dim = 0;  // rank of the windowed span (diagnostic)
};

// Initial module of the Inc-submodule generated by `gens`, within the window
// of monomials with wedge length <= degree_cap and indices <= index_cap:
// enumerate the orbit-and-multiply span, echelonize against the monomial
// order, read off the lead monomials, and keep a minimal generating set.
inline InitialModuleResult initial_module_truncated(const std::vector<PModElement>& gens, int n,
                                                    int p, int degree_cap, int index_cap) {
    Fp f(p);
    for (const auto& v : gens)
        for (const auto& [m, c] : v) {
            if (static_cast<int>(m.tensor.size()) != n)
                throw std::invalid_argument("ambient mismatch");
            if (m.max_index() > index_cap ||
                static_cast<int>(m.wedge.size()) > degree_cap)
                throw std::invalid_argument("window too small for the generators");
        }
    // orbit translates within the window
    std::vector<PModElement> span;
    for (const auto& v : gens) {
        if (v.empty()) continue;
        std::vector<int> src;
        for (const auto& [m, c] : v)
            for (int i : detail::indices_of(m)) src.push_back(i);
        std::sort(src.begin(), src.end());
        src.erase(std::unique(src.begin(), src.end()), src.end());
        detail::increasing_graphs(src, index_cap, [&](const std::map<int, int>& sg) {
            PModElement t;
            for (const auto& [m, c] : v) t[inc_apply(sg, m)] = c;
            span.push_back(std::move(t));
        });
    }
    // multiply by squarefree wedge monomials within the window; each u is
    // built once, factors taken in ascending order
    std::vector<PModElement> all;
    std::vector<std::pair<PModElement, int>> work;
    for (const auto& v : span) {
        all.push_back(v);
        work.push_back({v, 1});
    }
    while (!work.empty()) {
        auto [e, lo] = std::move(work.back());
        work.pop_back();
        for (int i = lo; i <= index_cap; ++i) {
            PModElement prod;
            bool ok = true;
            for (const auto& [m, c] : e) {
                auto r = wedge_multiply(i, m);
                if (!r) { ok = false; break; }
                if (static_cast<int>(r->first.wedge.size()) > degree_cap) { ok = false; break; }
                prod[r->first] = f.norm(c * r->second);
            }
            if (!ok) continue;
            prod = element_normalized(f, std::move(prod));
            if (prod.empty()) continue;
            all.push_back(prod);
            work.push_back({std::move(prod), i + 1});
        }
    }
    // echelonize by initial term
    std::map<PModMonomial, PModElement, MonomialGreater> echelon;
    for (PModElement e : all) {
        e = element_normalized(f, std::move(e));
        while (!e.empty()) {
            auto [lead, c] = *e.begin();
            auto it = echelon.find(lead);
            if (it == echelon.end()) {
                int inv = f.inv(c);
                for (auto& [m, cc] : e) cc = f.mul(cc, inv);
                echelon.emplace(lead, std::move(e));
                break;
            }
            // cancel the lead against the pivot row
            for (const auto& [m, cc] : it->second) e[m] = f.sub(e.count(m) ? e[m] : 0, f.mul(c, cc));
            e = element_normalized(f, std::move(e));
        }
    }
    InitialModuleResult out;
    out.module.n = n;
    out.span_dim = static_cast<long long>(echelon.size());
    // minimal generators among the lead monomials: sweep smallest-first so
    // redundant translates land on earlier gens, then prune survivors
    std::vector<PModMonomial> leads;
    for (const auto& [m, e] : echelon) leads.push_back(m);
    std::reverse(leads.begin(), leads.end());
    for (const auto& m : leads)
        if (!membership(m, out.module).member) out.module.gens.push_back(m);
    for (int k = static_cast<int>(out.module.gens.size()) - 1; k >= 0; --k) {
        MonomialModule rest = out.module;
        rest.gens.erase(rest.gens.begin() + k);
        if (membership(out.module.gens[k], rest).member) out.module.gens = rest.gens;
    }
    return out;
}

struct AccReport {
    int stabilization_index = 1;  // last step that contributed a new generator
    bool capped = false;          // true if the final tested step still escaped
    std::vector<int> new_gens_per_step;
};

// Walk an ascending chain step by step; a step "escapes" when one of its
// generators is not yet a member. ACC predicts a final escape index.
inline AccReport acc_experiment(const std::function<std::vector<PModMonomial>(int)>& step_gens,
                                int n, int step_cap) {
    MonomialModule acc;
    acc.n = n;
    AccReport rep;
    for (int t = 1; t <= step_cap; ++t) {
        int added = 0;
        for (const auto& g : step_gens(t)) {
            if (!membership(g, acc).member) {
                acc.gens.push_back(g);
                ++added;
            }
        }
        rep.new_gens_per_step.push_back(added);
        if (added > 0) rep.stabilization_index = t;
    }
    rep.capped = !rep.new_gens_per_step.empty() && rep.new_gens_per_step.back() > 0;
    return rep;
}

// Parse the text form "x3^x1 | e1,e4,e1" (empty wedge written "1").
inline PModMonomial parse_monomial(const std::string& text) {
    auto bar = text.find('|');
    if (bar == std::string::npos) throw std::invalid_argument("missing | separator");
    auto ints = [](const std::string& s, char prefix, char sep) {
        std::vector<int> out;
        std::size_t k = 0;
        while (k < s.size()) {
            while (k < s.size() && (s[k] == ' ' || s[k] == sep)) ++k;
            if (k >= s.size()) break;
            if (s[k] == '1' && (k + 1 >= s.size() || s[k + 1] == ' ')) { ++k; continue; }
            if (s[k] != prefix) throw std::invalid_argument("bad monomial text");
            ++k;
            int v = 0;
            while (k < s.size() && isdigit(static_cast<unsigned char>(s[k])))
                v = v * 10 + (s[k++] - '0');
            out.push_back(v);
        }
        return out;
    };
    PModMonomial m;
    m.wedge = ints(text.substr(0, bar), 'x', '^');
    m.tensor = ints(text.substr(bar + 1), 'e', ',');
    for (std::size_t k = 0; k + 1 < m.wedge.size(); ++k)
        if (m.wedge[k] <= m.wedge[k + 1]) throw std::invalid_argument("wedge not descending");
    return m;
}

}  // namespace exmod
