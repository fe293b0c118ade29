#pragma once

// Finitely presented graded modules over the finite exterior algebra
// E_m = Lambda(F_p^m): graded component dimensions, minimal free resolutions
// (Nakayama-style generator selection), Betti tables, regularity, truncation
// submodules. Everything is eliminated per (degree, weight) block so that
// multigraded inputs stay feasible at double-digit ranks.

#include <bit>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "exmod/fp.hpp"
#include "exmod/partition.hpp"

namespace exmod {

// Squarefree monomial of E_m as a bitmask: bit i set <=> x_{i+1} present.
using Mask = std::uint32_t;

inline int mask_degree(Mask s) { return std::popcount(s); }

// Sign of e_A wedge e_B with both sides internally ascending; 0 if they meet.
inline int wedge_sign(Mask a, Mask b) {
    if (a & b) return 0;
    int inv = 0;
    for (Mask t = b; t; t &= t - 1) {
        int j = std::countr_zero(t);
        inv += std::popcount(a >> (j + 1));
    }
    return inv % 2 == 0 ? 1 : -1;
}

struct ExteriorAlgebraRank {
    int m;
    PrimeChar p;
    ExteriorAlgebraRank(int m_, PrimeChar p_) : m(m_), p(p_) {
        if (m < 0 || m > 30) throw std::invalid_argument("rank out of range");
    }
};

struct FreeTerm {
    int gen;
    Mask mask;
    int coeff;
};
using FreeElem = std::vector<FreeTerm>;

struct GenLabel {
    int degree = 0;
    std::vector<int> weight;  // empty = no weight grading; else length m
};

struct GradedModule {
    ExteriorAlgebraRank alg;
    std::vector<GenLabel> gens;
    std::vector<FreeElem> rels;

    bool has_weights() const {
        for (const auto& g : gens)
            if (static_cast<int>(g.weight.size()) != alg.m) return false;
        return true;
    }

    int term_degree(const FreeTerm& t) const {
        return gens[t.gen].degree + mask_degree(t.mask);
    }

    std::vector<int> term_weight(const FreeTerm& t) const {
        std::vector<int> w = gens[t.gen].weight;
        for (int i = 0; i < alg.m; ++i)
            if (t.mask >> i & 1) w[i] += 1;
        return w;
    }

    // Combine like terms mod p, drop zeros; checks degree (and weight)
    // homogeneity of the result.
    FreeElem normalized(const FreeElem& e) const {
        Fp f(alg.p.p);
        std::map<std::pair<int, Mask>, int> acc;
        for (const auto& t : e) {
            if (t.gen < 0 || t.gen >= static_cast<int>(gens.size()))
                throw std::invalid_argument("term references missing generator");
            if (t.mask >> alg.m) throw std::invalid_argument("mask exceeds rank");
            acc[{t.gen, t.mask}] = f.add(acc[{t.gen, t.mask}], f.norm(t.coeff));
        }
        FreeElem out;
        for (const auto& [k, c] : acc)
            if (c != 0) out.push_back({k.first, k.second, c});
        for (std::size_t i = 1; i < out.size(); ++i) {
            if (term_degree(out[i]) != term_degree(out[0]))
                throw std::invalid_argument("inhomogeneous element");
            if (has_weights() && term_weight(out[i]) != term_weight(out[0]))
                throw std::invalid_argument("weight-inhomogeneous element");
        }
        return out;
    }

    void validate() const {
        for (const auto& r : rels) (void)normalized(r);
    }

    int max_gen_degree() const {
        int d = 0;
        for (const auto& g : gens) d = std::max(d, g.degree);
        return d;
    }

    // x_u * e, u a mask
    FreeElem act(Mask u, const FreeElem& e) const {
        Fp f(alg.p.p);
        FreeElem out;
        for (const auto& t : e) {
            int s = wedge_sign(u, t.mask);
            if (s == 0) continue;
            out.push_back({t.gen, static_cast<Mask>(u | t.mask), s == 1 ? t.coeff : f.neg(t.coeff)});
        }
        return out;
    }
};

namespace detail {

// Basis of one (degree, weight) block of the free module on `gens`.
struct Block {
    std::vector<std::pair<int, Mask>> items;  // (gen index, mask)
    std::map<std::pair<int, Mask>, int> index;
};

using WeightKey = std::vector<int>;

// All blocks of the free module at total degree d, keyed by weight
// (single empty key when the module carries no weights).
inline std::map<WeightKey, Block> degree_blocks(const GradedModule& M,
                                                const std::vector<GenLabel>& gens, int d) {
    bool weighted = true;
    for (const auto& g : gens)
        if (static_cast<int>(g.weight.size()) != M.alg.m) weighted = false;
    std::map<WeightKey, Block> out;
    for (int gi = 0; gi < static_cast<int>(gens.size()); ++gi) {
        int k = d - gens[gi].degree;
        if (k < 0 || k > M.alg.m) continue;
        for (Mask mask = 0; mask < (Mask{1} << M.alg.m); ++mask) {
            if (mask_degree(mask) != k) continue;
            WeightKey w;
            if (weighted) {
                w = gens[gi].weight;
                for (int i = 0; i < M.alg.m; ++i)
                    if (mask >> i & 1) w[i] += 1;
            }
            Block& b = out[w];
            b.index[{gi, mask}] = static_cast<int>(b.items.size());
            b.items.push_back({gi, mask});
        }
    }
    return out;
}

inline FpVec to_vec(const Block& b, const FreeElem& e) {
    FpVec v(b.items.size(), 0);
    for (const auto& t : e) {
        auto it = b.index.find({t.gen, t.mask});
        if (it == b.index.end()) throw std::logic_error("element leaves its block");
        v[it->second] = t.coeff;
    }
    return v;
}

// Combine like terms mod p without the homogeneity checks of
// GradedModule::normalized (for elements that legitimately mix weights,
// e.g. transvection images or full-degree class vectors).
inline FreeElem combine_terms(const Fp& f, const FreeElem& e) {
    std::map<std::pair<int, Mask>, int> acc;
    for (const auto& t : e) acc[{t.gen, t.mask}] = f.add(acc[{t.gen, t.mask}], f.norm(t.coeff));
    FreeElem out;
    for (const auto& [k, c] : acc)
        if (c != 0) out.push_back({k.first, k.second, c});
    return out;
}

inline FreeElem from_vec(const Block& b, const FpVec& v) {
    FreeElem out;
    for (std::size_t i = 0; i < v.size(); ++i)
        if (v[i] != 0) out.push_back({b.items[i].first, b.items[i].second, v[i]});
    return out;
}

}  // namespace detail

struct ComponentInfo {
    int degree = 0;
    long long dim = 0;
    std::map<std::vector<int>, long long> by_weight;  // empty when unweighted
};

struct BettiTable {
    int i_max = 0, d_max = 0;
    std::map<std::pair<int, int>, long long> beta;  // (i, j) -> value
    std::map<std::tuple<int, int, std::vector<int>>, long long> beta_weighted;
    std::vector<bool> complete;  // per homological index: no entries can hide beyond d_max

    long long value(int i, int j) const {
        auto it = beta.find({i, j});
        return it == beta.end() ? 0 : it->second;
    }
    // top internal degree of Tor_i within the window; -1 when it vanishes
    int t(int i) const {
        int best = -1;
        for (const auto& [k, v] : beta)
            if (k.first == i && v > 0) best = std::max(best, k.second);
        return best;
    }
};

namespace detail {

// Remove generators that a relation expresses through the others (a relation
// term with empty mask); coker-preserving substitution.
inline GradedModule minimalized(const GradedModule& M) {
    GradedModule out = M;
    Fp f(out.alg.p.p);
    for (auto& r : out.rels) r = out.normalized(r);
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t ri = 0; ri < out.rels.size() && !changed; ++ri) {
            const FreeElem& r = out.rels[ri];
            for (const auto& t : r) {
                if (t.mask != 0) continue;
                int g = t.gen;
                // substitution: (g, empty) = -c^{-1} * (r - t)
                int ci = f.inv(t.coeff);
                FreeElem sub;
                for (const auto& u : r)
                    if (!(u.gen == g && u.mask == 0))
                        sub.push_back({u.gen, u.mask, f.neg(f.mul(ci, u.coeff))});
                std::vector<FreeElem> nrels;
                for (std::size_t rj = 0; rj < out.rels.size(); ++rj) {
                    if (rj == ri) continue;
                    FreeElem nr;
                    for (const auto& u : out.rels[rj]) {
                        if (u.gen != g) {
                            nr.push_back(u);
                            continue;
                        }
                        for (const auto& s : out.act(u.mask, sub))
                            nr.push_back({s.gen, s.mask, f.mul(u.coeff, s.coeff)});
                    }
                    nrels.push_back(nr);
                }
                // drop generator g, reindex
                GradedModule next{out.alg, {}, {}};
                for (int gi = 0; gi < static_cast<int>(out.gens.size()); ++gi)
                    if (gi != g) next.gens.push_back(out.gens[gi]);
                auto remap = [&](FreeElem e) {
                    for (auto& u : e)
                        if (u.gen > g) u.gen -= 1;
                    return e;
                };
                for (auto& nr : nrels) {
                    FreeElem nn = next.normalized(remap(nr));
                    if (!nn.empty()) next.rels.push_back(nn);
                }
                out = next;
                changed = true;
                break;
            }
        }
    }
    return out;
}

}  // namespace detail

// dim_{F_p} M_d for d <= d_max, with weight refinement when present.
inline std::vector<ComponentInfo> component_dimensions(const GradedModule& M, int d_max) {
    Fp f(M.alg.p.p);
    std::vector<ComponentInfo> out;
    for (int d = 0; d <= d_max; ++d) {
        ComponentInfo info;
        info.degree = d;
        auto blocks = detail::degree_blocks(M, M.gens, d);
        for (auto& [w, b] : blocks) {
            SpanSet span(f, static_cast<int>(b.items.size()));
            for (const auto& r : M.rels) {
                FreeElem rn = M.normalized(r);
                if (rn.empty()) continue;
                int e = M.term_degree(rn[0]);
                int k = d - e;
                if (k < 0 || k > M.alg.m) continue;
                for (Mask u = 0; u < (Mask{1} << M.alg.m); ++u) {
                    if (mask_degree(u) != k) continue;
                    FreeElem img = M.normalized(M.act(u, rn));
                    if (img.empty()) continue;
                    // keep only translates landing in this weight block
                    if (!w.empty() && M.term_weight(img[0]) != w) continue;
                    span.add(detail::to_vec(b, img));
                }
            }
            long long dim = static_cast<long long>(b.items.size()) - span.dim();
            if (dim != 0 && !w.empty()) info.by_weight[w] = dim;
            info.dim += dim;
        }
        out.push_back(std::move(info));
    }
    return out;
}

struct Resolution {
    GradedModule presentation;                 // minimalized input
    std::vector<std::vector<GenLabel>> frees;  // frees[i] = generators of F_i
    std::vector<std::vector<FreeElem>> maps;   // maps[i][k] = image in F_{i-1} of F_i's gen k (i >= 1)
    BettiTable betti;
};

// Minimal graded free resolution up to homological index i_max and internal
// degree d_max. All differentials land in the maximal ideal by construction.
inline Resolution minimal_free_resolution(const GradedModule& M, int i_max, int d_max) {
    Resolution res{detail::minimalized(M), {}, {}, {}};
    const GradedModule& P = res.presentation;
    Fp f(P.alg.p.p);
    int m = P.alg.m;

    res.betti.i_max = i_max;
    res.betti.d_max = d_max;
    res.betti.complete.assign(i_max + 1, true);

    res.frees.push_back(P.gens);
    res.maps.push_back({});  // placeholder at i = 0
    for (const auto& g : P.gens) {
        res.betti.beta[{0, g.degree}] += 1;
        if (P.has_weights()) res.betti.beta_weighted[{0, g.degree, g.weight}] += 1;
    }

    for (int i = 1; i <= i_max; ++i) {
        const std::vector<GenLabel>& prev = res.frees[i - 1];
        int prev_max_deg = 0;
        for (const auto& g : prev) prev_max_deg = std::max(prev_max_deg, g.degree);
        res.betti.complete[i] =
            res.betti.complete[i - 1] && (prev.empty() || prev_max_deg + m <= d_max);
        if (prev.empty()) {  // resolution already finished
            res.frees.push_back({});
            res.maps.push_back({});
            continue;
        }

        std::vector<GenLabel> new_gens;
        std::vector<FreeElem> new_maps;
        // kernel spanning sets per (degree, weight), as elements of F_{i-1}
        std::map<std::pair<int, detail::WeightKey>, std::vector<FreeElem>> kernel;

        for (int d = 0; d <= d_max; ++d) {
            auto blocks = detail::degree_blocks(P, prev, d);
            for (auto& [w, b] : blocks) {
                // spanning set of the kernel of d_{i-1} in this block
                std::vector<FreeElem> kvecs;
                if (i == 1) {
                    for (const auto& r : P.rels) {
                        FreeElem rn = P.normalized(r);
                        if (rn.empty()) continue;
                        int e = P.term_degree(rn[0]);
                        int k = d - e;
                        if (k < 0 || k > m) continue;
                        for (Mask u = 0; u < (Mask{1} << m); ++u) {
                            if (mask_degree(u) != k) continue;
                            FreeElem img = P.normalized(P.act(u, rn));
                            if (img.empty()) continue;
                            if (!w.empty() && P.term_weight(img[0]) != w) continue;
                            kvecs.push_back(img);
                        }
                    }
                } else {
                    // kernel of the differential F_{i-1} -> F_{i-2} on this block
                    const std::vector<GenLabel>& prev2 = res.frees[i - 2];
                    auto cod_blocks = detail::degree_blocks(P, prev2, d);
                    const detail::Block* cod = nullptr;
                    auto it = cod_blocks.find(w);
                    if (it != cod_blocks.end()) cod = &it->second;
                    int cod_dim = cod ? static_cast<int>(cod->items.size()) : 0;
                    FpMat mat(f, static_cast<int>(b.items.size()));
                    std::vector<FpVec> cols;  // image vector per domain basis item
                    for (const auto& [gi, mask] : b.items) {
                        FreeElem img;
                        for (const auto& t : res.maps[i - 1][gi]) {
                            int s = wedge_sign(mask, t.mask);
                            if (s == 0) continue;
                            img.push_back({t.gen, static_cast<Mask>(mask | t.mask),
                                           s == 1 ? t.coeff : f.neg(t.coeff)});
                        }
                        // normalize against prev2 for like-term combination
                        GradedModule scratch{P.alg, prev2, {}};
                        FreeElem imgn = scratch.normalized(img);
                        cols.push_back(cod ? detail::to_vec(*cod, imgn)
                                           : FpVec(imgn.empty() ? 0 : throw std::logic_error(
                                                                          "image outside codomain")));
                    }
                    for (int rrow = 0; rrow < cod_dim; ++rrow) {
                        FpVec row(b.items.size());
                        for (std::size_t c = 0; c < cols.size(); ++c) row[c] = cols[c][rrow];
                        mat.add_row(std::move(row));
                    }
                    for (auto& kv : mat.kernel()) kvecs.push_back(detail::from_vec(b, kv));
                }
                if (kvecs.empty()) continue;

                // Nakayama: span x_j * (kernel at degree d-1, weight w - e_j)
                SpanSet reduced(f, static_cast<int>(b.items.size()));
                for (int j = 0; j < m; ++j) {
                    detail::WeightKey wl = w;
                    if (!wl.empty()) {
                        if (wl[j] == 0) continue;
                        wl[j] -= 1;
                    }
                    auto kit = kernel.find({d - 1, wl});
                    if (kit == kernel.end()) continue;
                    for (const auto& kv : kit->second) {
                        GradedModule scratch{P.alg, prev, {}};
                        FreeElem img = scratch.normalized(scratch.act(Mask{1} << j, kv));
                        if (img.empty()) continue;
                        if (!w.empty() && scratch.term_weight(img[0]) != w) continue;
                        reduced.add(detail::to_vec(b, img));
                    }
                }
                for (const auto& kv : kvecs) {
                    if (reduced.add(detail::to_vec(b, kv))) {
                        GenLabel lbl;
                        lbl.degree = d;
                        if (!w.empty()) lbl.weight = w;
                        new_gens.push_back(lbl);
                        new_maps.push_back(kv);
                        res.betti.beta[{i, d}] += 1;
                        if (!w.empty()) res.betti.beta_weighted[{i, d, w}] += 1;
                    }
                }
                auto& store = kernel[{d, w}];
                for (auto& kv : kvecs) store.push_back(std::move(kv));
            }
        }
        res.frees.push_back(std::move(new_gens));
        res.maps.push_back(std::move(new_maps));
    }
    return res;
}

// Graded (and weighted) dimensions of Tor_i(M, k), read off the minimal
// resolution: Tor_i = F_i tensor k.
inline std::vector<ComponentInfo> tor_with_k(const GradedModule& M, int i, int d_max) {
    auto res = minimal_free_resolution(M, i, d_max);
    std::vector<ComponentInfo> out;
    for (int d = 0; d <= d_max; ++d) {
        ComponentInfo info;
        info.degree = d;
        info.dim = res.betti.value(i, d);
        for (const auto& [k, v] : res.betti.beta_weighted)
            if (std::get<0>(k) == i && std::get<1>(k) == d)
                info.by_weight[std::get<2>(k)] = v;
        out.push_back(std::move(info));
    }
    return out;
}

struct RegularityResult {
    int value = -1;               // max over computed i of t_i - i; -1 for the zero module
    bool lower_bound_only = false;  // truncation hit: the true value may exceed this
    std::vector<int> t;             // t[i] for i <= i_max
};

inline RegularityResult regularity(const GradedModule& M, int i_max, int d_max) {
    auto res = minimal_free_resolution(M, i_max, d_max);
    RegularityResult out;
    for (int i = 0; i <= i_max; ++i) {
        int ti = res.betti.t(i);
        out.t.push_back(ti);
        if (ti >= 0) out.value = std::max(out.value, ti - i);
    }
    for (bool c : res.betti.complete)
        if (!c) out.lower_bound_only = true;
    return out;
}

// Presentations of the submodule generated by components of degree < n and of
// the corresponding quotient.
inline std::pair<GradedModule, GradedModule> submodule_generated_below(const GradedModule& M, int n) {
    Fp f(M.alg.p.p);
    int m = M.alg.m;
    int top = M.max_gen_degree() + m;  // M vanishes above this degree

    // coker basis representatives per degree < n
    GradedModule sub{M.alg, {}, {}};
    GradedModule quot = M;
    std::vector<FreeElem> reps;  // in F_0 of M
    for (int d = 0; d < n && d <= top; ++d) {
        auto blocks = detail::degree_blocks(M, M.gens, d);
        for (auto& [w, b] : blocks) {
            SpanSet span(f, static_cast<int>(b.items.size()));
            for (const auto& r : M.rels) {
                FreeElem rn = M.normalized(r);
                if (rn.empty()) continue;
                int e = M.term_degree(rn[0]);
                int k = d - e;
                if (k < 0 || k > m) continue;
                for (Mask u = 0; u < (Mask{1} << m); ++u) {
                    if (mask_degree(u) != k) continue;
                    FreeElem img = M.normalized(M.act(u, rn));
                    if (img.empty()) continue;
                    if (!w.empty() && M.term_weight(img[0]) != w) continue;
                    span.add(detail::to_vec(b, img));
                }
            }
            // non-pivot coordinates = coker basis in this block
            std::vector<char> piv(b.items.size(), 0);
            for (int c : span.pivots()) piv[c] = 1;
            for (std::size_t c = 0; c < b.items.size(); ++c) {
                if (piv[c]) continue;
                GenLabel lbl;
                lbl.degree = d;
                if (!w.empty()) lbl.weight = w;
                sub.gens.push_back(lbl);
                FreeElem rep{{b.items[c].first, b.items[c].second, 1}};
                reps.push_back(rep);
                quot.rels.push_back(rep);  // quotient kills the class of this element
            }
        }
    }

    // relations of the submodule: kernel of (free on reps) -> M, degree by degree
    for (int e = 0; e <= top; ++e) {
        auto dom_blocks = detail::degree_blocks(M, sub.gens, e);
        auto cod_blocks = detail::degree_blocks(M, M.gens, e);
        for (auto& [w, db] : dom_blocks) {
            auto cit = cod_blocks.find(w);
            const detail::Block* cod = cit == cod_blocks.end() ? nullptr : &cit->second;
            int cod_dim = cod ? static_cast<int>(cod->items.size()) : 0;
            // span of M's relations inside the codomain block (quotient structure)
            SpanSet span(f, cod_dim);
            if (cod) {
                for (const auto& r : M.rels) {
                    FreeElem rn = M.normalized(r);
                    if (rn.empty()) continue;
                    int deg = M.term_degree(rn[0]);
                    int k = e - deg;
                    if (k < 0 || k > m) continue;
                    for (Mask u = 0; u < (Mask{1} << m); ++u) {
                        if (mask_degree(u) != k) continue;
                        FreeElem img = M.normalized(M.act(u, rn));
                        if (img.empty()) continue;
                        if (!w.empty() && M.term_weight(img[0]) != w) continue;
                        span.add(detail::to_vec(*cod, img));
                    }
                }
            }
            FpMat mat(f, static_cast<int>(db.items.size()));
            std::vector<FpVec> cols;
            for (const auto& [gi, mask] : db.items) {
                FreeElem img = M.normalized(M.act(mask, reps[gi]));
                FpVec v = cod ? span.reduce(detail::to_vec(*cod, img)) : FpVec{};
                cols.push_back(std::move(v));
            }
            for (int row = 0; row < cod_dim; ++row) {
                FpVec rv(db.items.size());
                for (std::size_t c = 0; c < cols.size(); ++c) rv[c] = cols[c][row];
                mat.add_row(std::move(rv));
            }
            for (auto& kv : mat.kernel()) {
                FreeElem rel = detail::from_vec(db, kv);
                if (!rel.empty()) sub.rels.push_back(std::move(rel));
            }
        }
    }
    return {sub, quot};
}

}  // namespace exmod
