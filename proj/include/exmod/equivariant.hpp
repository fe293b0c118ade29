#pragma once

// Equivariant layer: finitely presented Inc(N)-equivariant modules over the
// infinite exterior algebra, probed through finite-rank evaluations.
//
// A presentation stores generator blocks R (x) Div^lambda and finitely many
// weight-homogeneous relations at a finite support width; evaluation at rank
// r extends relations along all increasing injections. The shift functor
// Sh^l and difference functors are computed as weight-1 slices in
// distinguished "stage" coordinates; composites are described by a list of
// stage blocks, each optionally "killed" (quotient by the image of the
// canonical map, i.e. a difference functor step). A module-level slice on a
// plain GradedModule provides the independent oracle for the staged route.

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <stdexcept>
#include <vector>

#include "exmod/character.hpp"
#include "exmod/exterior.hpp"
#include "exmod/partition.hpp"

namespace exmod {

// Divided-power monomial of Div^lambda(k^R): one weakly increasing index row
// (0-based coordinates) per row of lambda.
using DivTuple = std::vector<std::vector<int>>;

struct EqTerm {
    int block;
    DivTuple div;
    Mask wedge;
    int coeff;
};
using EqElem = std::vector<EqTerm>;

struct EquivariantPresentation {
    PrimeChar prime;
    std::vector<Partition> blocks;
    int support_width = 0;
    std::vector<EqElem> relations;
};

struct Stage {
    int size = 1;
    bool killed = false;
};

namespace detail {

inline void div_rows_rec(int k, int lo, int r, std::vector<int>& cur,
                         std::vector<std::vector<int>>& out) {
    if (k == 0) {
        out.push_back(cur);
        return;
    }
    for (int i = lo; i < r; ++i) {
        cur.push_back(i);
        div_rows_rec(k - 1, i, r, cur, out);
        cur.pop_back();
    }
}

// weakly increasing sequences of length k over {0..r-1}
inline std::vector<std::vector<int>> multisets(int k, int r) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    div_rows_rec(k, 0, r, cur, out);
    return out;
}

inline std::vector<DivTuple> div_basis(const Partition& lambda, int r) {
    std::vector<DivTuple> out{{}};
    for (int i = 0; i < lambda.rows(); ++i) {
        auto rows = multisets(lambda.part(i), r);
        std::vector<DivTuple> next;
        for (const auto& t : out)
            for (const auto& row : rows) {
                DivTuple n = t;
                n.push_back(row);
                next.push_back(n);
            }
        out = std::move(next);
    }
    return out;
}

inline std::vector<int> div_content(const DivTuple& t, int R) {
    std::vector<int> c(R, 0);
    for (const auto& row : t)
        for (int i : row) c[i] += 1;
    return c;
}

inline int binom_mod(int n, int k, const Fp& f) {
    if (k < 0 || k > n) return 0;
    long long c = 1;  // exact value; n stays small here
    for (int i = 0; i < k; ++i) c = c * (n - i) / (i + 1);
    return f.norm(c);
}

// all increasing injections {0..w-1} -> {0..R-1}
inline std::vector<std::vector<int>> increasing_maps(int w, int R) {
    std::vector<std::vector<int>> out;
    std::vector<int> cur;
    auto rec = [&](auto&& self, int next, int lo) -> void {
        if (next == w) {
            out.push_back(cur);
            return;
        }
        for (int v = lo; v < R; ++v) {
            cur.push_back(v);
            self(self, next + 1, v + 1);
            cur.pop_back();
        }
    };
    rec(rec, 0, 0);
    return out;
}

}  // namespace detail

// Rank evaluation of a staged view, together with generator bookkeeping.
struct RankEvaluation {
    GradedModule module{ExteriorAlgebraRank(0, PrimeChar(2)), {}, {}};  // over E_r
    int rank = 0;
    std::vector<Stage> stages;
    int stage_total = 0;  // T: number of stage coordinates
    // per generator: its block and full-coordinate div tuple (stage coords
    // 0..T-1, ambient T..T+r-1); the fixed stage wedge is the complement of
    // the div's stage support
    std::vector<std::pair<int, DivTuple>> gen_meta;
    std::map<std::pair<int, DivTuple>, int> gen_index;
};

// Evaluate a staged view of M at ambient rank r. With no stages this is the
// plain rank evaluation M(k^r); each stage block of size s contributes a
// weight-(1,...,1) slice (Sh^s); killed blocks additionally quotient by the
// image of multiplication with the block's wedge (a difference functor step).
inline RankEvaluation evaluate_view(const EquivariantPresentation& M,
                                    const std::vector<Stage>& stages, int r) {
    Fp f(M.prime.p);
    int T = 0;
    for (const auto& s : stages) T += s.size;
    int R = T + r;
    Mask stage_mask = (T == 0) ? 0 : ((Mask{1} << T) - 1);

    RankEvaluation ev;
    ev.rank = r;
    ev.stages = stages;
    ev.stage_total = T;
    ev.module = GradedModule{ExteriorAlgebraRank(r, M.prime), {}, {}};

    // generators: div tuples whose stage contents are all <= 1
    for (int bi = 0; bi < static_cast<int>(M.blocks.size()); ++bi) {
        for (const auto& d : detail::div_basis(M.blocks[bi], R)) {
            auto content = detail::div_content(d, R);
            bool ok = true;
            int used = 0;
            for (int c = 0; c < T; ++c) {
                if (content[c] > 1) ok = false;
                used += content[c];
            }
            if (!ok) continue;
            GenLabel lbl;
            lbl.degree = M.blocks[bi].size() - used;
            lbl.weight.assign(content.begin() + T, content.end());
            ev.gen_index[{bi, d}] = static_cast<int>(ev.module.gens.size());
            ev.gen_meta.push_back({bi, d});
            ev.module.gens.push_back(lbl);
        }
    }

    auto stage_wedge_of = [&](const DivTuple& d) -> Mask {
        auto content = detail::div_content(d, R);
        Mask ub = 0;
        for (int c = 0; c < T; ++c)
            if (content[c] == 0) ub |= Mask{1} << c;
        return ub;
    };

    // kill relations for killed stage blocks
    {
        int offset = 0;
        for (const auto& s : stages) {
            Mask blk = ((Mask{1} << s.size) - 1) << offset;
            if (s.killed) {
                for (int g = 0; g < static_cast<int>(ev.gen_meta.size()); ++g) {
                    Mask ub = stage_wedge_of(ev.gen_meta[g].second);
                    if ((ub & blk) == blk) ev.module.rels.push_back({{g, 0, 1}});
                }
            }
            offset += s.size;
        }
    }

    // translated relations, completed into the slice and re-expressed on the
    // generator basis: gen basis vector (g, A) stands for b (x) e_A ^ e_ub
    for (const auto& rel : M.relations) {
        // translate along increasing maps of the relation's actual support
        // (translating the declared width instead would miss orbit elements
        // whenever the relation uses fewer coordinates)
        std::vector<int> support;
        {
            std::vector<char> used(M.support_width, 0);
            for (const auto& term : rel) {
                for (const auto& row : term.div)
                    for (int i : row) used[i] = 1;
                for (int i = 0; i < M.support_width; ++i)
                    if (term.wedge >> i & 1) used[i] = 1;
            }
            for (int i = 0; i < M.support_width; ++i)
                if (used[i]) support.push_back(i);
        }
        std::vector<int> compress(M.support_width, -1);
        for (int k = 0; k < static_cast<int>(support.size()); ++k) compress[support[k]] = k;
        for (const auto& sigma : detail::increasing_maps(static_cast<int>(support.size()), R)) {
            // translate
            EqElem t;
            for (const auto& term : rel) {
                EqTerm nt;
                nt.block = term.block;
                nt.coeff = term.coeff;
                for (const auto& row : term.div) {
                    std::vector<int> nr;
                    for (int i : row) nr.push_back(sigma[compress[i]]);
                    nt.div.push_back(nr);
                }
                Mask wm = 0;
                for (int i = 0; i < M.support_width; ++i)
                    if (term.wedge >> i & 1) wm |= Mask{1} << sigma[compress[i]];
                nt.wedge = wm;
                t.push_back(nt);
            }
            if (t.empty()) continue;
            // stage-coordinate weights (homogeneous across terms)
            std::vector<int> w(R, 0);
            {
                auto c = detail::div_content(t[0].div, R);
                for (int i = 0; i < R; ++i)
                    w[i] = c[i] + ((t[0].wedge >> i) & 1);
            }
            bool ok = true;
            Mask completion = 0;
            for (int c = 0; c < T; ++c) {
                if (w[c] > 1) { ok = false; break; }
                if (w[c] == 0) completion |= Mask{1} << c;
            }
            if (!ok) continue;
            FreeElem out;
            for (const auto& term : t) {
                int s1 = wedge_sign(completion, term.wedge);
                if (s1 == 0) continue;  // cannot happen: completion misses the support
                Mask full = completion | term.wedge;
                Mask amb = full & ~stage_mask;
                Mask ub = full & stage_mask;  // equals the gen's fixed stage wedge
                int s2 = (mask_degree(amb) * mask_degree(ub)) % 2 == 0 ? 1 : -1;
                auto it = ev.gen_index.find({term.block, term.div});
                if (it == ev.gen_index.end()) throw std::logic_error("missing generator");
                int c = f.norm(static_cast<long long>(term.coeff) * s1 * s2);
                if (c != 0) out.push_back({it->second, amb >> T, c});
            }
            FreeElem norm = ev.module.normalized(out);
            if (!norm.empty()) ev.module.rels.push_back(std::move(norm));
        }
    }
    return ev;
}

inline RankEvaluation evaluate(const EquivariantPresentation& M, int r) {
    return evaluate_view(M, {}, r);
}

// ------------------------------------------------------------------
// Module-level slice oracle: the weight-1 slice of a weighted GradedModule
// in one coordinate. This is the semantic definition of Sh on values and is
// deliberately independent of the staged-view construction above.
// ------------------------------------------------------------------

// Weight-1 slice in coordinate j (0-based) of a weighted module over E_m;
// result lives over E_{m-1} with coordinate j removed.
inline GradedModule slice_module(const GradedModule& X, int j) {
    if (!X.has_weights()) throw std::invalid_argument("slice needs a weighted module");
    int m = X.alg.m;
    Fp f(X.alg.p.p);
    GradedModule out{ExteriorAlgebraRank(m - 1, X.alg.p), {}, {}};
    // new generators: (g, used) with used = 1 if x_j is consumed by the wedge
    std::map<std::pair<int, int>, int> idx;  // (old gen, used) -> new gen
    for (int g = 0; g < static_cast<int>(X.gens.size()); ++g) {
        int wj = X.gens[g].weight[j];
        if (wj > 1) continue;
        GenLabel lbl;
        // wj == 1: the vector g itself, slice degree deg(g) - 1;
        // wj == 0: the vector x_j * g, slice degree deg(g) + 1 - 1 = deg(g)
        lbl.degree = wj == 1 ? X.gens[g].degree - 1 : X.gens[g].degree;
        for (int c = 0; c < m; ++c)
            if (c != j) lbl.weight.push_back(X.gens[g].weight[c]);
        idx[{g, wj == 0 ? 1 : 0}] = static_cast<int>(out.gens.size());
        out.gens.push_back(lbl);
    }
    auto drop_bit = [&](Mask mk) {
        Mask lo = mk & ((Mask{1} << j) - 1);
        Mask hi = mk >> (j + 1);
        return lo | (hi << j);
    };
    // relations: per relation, its weight at coordinate j decides the completion
    for (const auto& r0 : X.rels) {
        FreeElem r = X.normalized(r0);
        if (r.empty()) continue;
        int wj = X.term_weight(r[0])[j];
        if (wj > 1) continue;
        FreeElem out_rel;
        for (const auto& t : r) {
            // complete to weight 1 at j when needed
            std::vector<std::pair<Mask, int>> pieces;  // (full mask, coeff)
            if (wj == 1) {
                pieces.push_back({t.mask, t.coeff});
            } else {
                int s = wedge_sign(Mask{1} << j, t.mask);
                if (s == 0) continue;
                pieces.push_back({static_cast<Mask>(t.mask | (Mask{1} << j)),
                                  s == 1 ? t.coeff : f.neg(t.coeff)});
            }
            for (auto [mk, c] : pieces) {
                int used = (mk >> j) & 1;
                // basis vector of the slice: (t.gen, used) with the remaining
                // wedge; convention: e_rest ^ (x_j if used)
                Mask rest = mk & ~(Mask{1} << j);
                if (used) {
                    // e_rest ^ x_j = wedge_sign(rest, 1<<j) * e_mk
                    int s2 = wedge_sign(rest, Mask{1} << j);
                    c = s2 == 1 ? c : f.neg(c);
                }
                auto it = idx.find({t.gen, used});
                if (it == idx.end()) throw std::logic_error("slice generator missing");
                out_rel.push_back({it->second, drop_bit(rest), c});
            }
        }
        FreeElem norm = out.normalized(out_rel);
        if (!norm.empty()) out.rels.push_back(std::move(norm));
    }
    return out;
}

// Module-level difference functor step: slice at coordinate j, then quotient
// by the image of multiplication with x_j (the (g, x_j)-generators).
inline GradedModule delta_module(const GradedModule& X, int j) {
    if (!X.has_weights()) throw std::invalid_argument("delta needs a weighted module");
    GradedModule out = slice_module(X, j);
    // (g, used=1) generators are exactly those appended for weight_j(g) == 0;
    // recompute the index map the same way slice_module does
    int m = X.alg.m;
    int next = 0;
    for (int g = 0; g < static_cast<int>(X.gens.size()); ++g) {
        int wj = X.gens[g].weight[j];
        if (wj > 1) continue;
        if (wj == 0) out.rels.push_back({{next, 0, 1}});
        ++next;
    }
    (void)m;
    return out;
}

// ------------------------------------------------------------------
// GL stability via transvections with divided-power expansion
// ------------------------------------------------------------------

namespace detail {

// relation span of a GradedModule in one full degree component (no weight split)
inline std::pair<Block, SpanSet> full_degree_span(const GradedModule& X, int d) {
    Fp f(X.alg.p.p);
    Block b;
    auto parts = degree_blocks(X, X.gens, d);
    for (auto& [w, bb] : parts)
        for (auto& item : bb.items) {
            b.index[item] = static_cast<int>(b.items.size());
            b.items.push_back(item);
        }
    SpanSet span(f, static_cast<int>(b.items.size()));
    for (const auto& r : X.rels) {
        FreeElem rn = X.normalized(r);
        if (rn.empty()) continue;
        int e = X.term_degree(rn[0]);
        int k = d - e;
        if (k < 0 || k > X.alg.m) continue;
        for (Mask u = 0; u < (Mask{1} << X.alg.m); ++u) {
            if (mask_degree(u) != k) continue;
            FreeElem img = X.normalized(X.act(u, rn));
            if (!img.empty()) span.add(to_vec(b, img));
        }
    }
    return {std::move(b), std::move(span)};
}

// Embed a view evaluation at rank r into the same view at rank r + s and
// multiply by the wedge of the s appended ambient coordinates.
inline FreeElem rank_wedge_image(const RankEvaluation& small, const RankEvaluation& big, int s,
                                 const FreeElem& e, const Fp& f) {
    Mask wedge = ((Mask{1} << s) - 1) << small.rank;
    FreeElem out;
    for (const auto& t : e) {
        auto it = big.gen_index.find(small.gen_meta[t.gen]);
        if (it == big.gen_index.end()) throw std::logic_error("rank inclusion missing gen");
        int sg = wedge_sign(wedge, t.mask);
        out.push_back({it->second, t.mask | wedge, sg == 1 ? t.coeff : f.neg(t.coeff)});
    }
    return combine_terms(f, out);
}

// apply the transvection e_j -> e_j + e_i (coordinates of k^r, 0-based) to a
// free-module element of a plain rank evaluation
inline FreeElem transvect(const RankEvaluation& ev, const EquivariantPresentation& M,
                          const FreeElem& e, int i, int j) {
    if (ev.stage_total != 0) throw std::invalid_argument("transvection needs a plain evaluation");
    Fp f(M.prime.p);
    FreeElem out;
    for (const auto& t : e) {
        const auto& [bi, div] = ev.gen_meta[t.gen];
        // expand the wedge: x_j -> x_j + x_i
        std::vector<std::pair<Mask, int>> wedges{{t.mask, 1}};
        if (t.mask >> j & 1) {
            Mask rest = t.mask & ~(Mask{1} << j);
            int s = wedge_sign(Mask{1} << i, rest);
            int sj = wedge_sign(Mask{1} << j, rest);
            if (s != 0 && !(rest >> i & 1))
                wedges.push_back({static_cast<Mask>(rest | (Mask{1} << i)),
                                  s * sj});  // e_[mask] = sj * x_j ^ e_rest
        }
        // expand the divided rows: (e_j + e_i)^{(a)} = sum_t e_j^{(a-t)} e_i^{(t)}
        std::vector<std::pair<DivTuple, int>> divs{{DivTuple{}, 1}};
        for (const auto& row : div) {
            int a = static_cast<int>(std::count(row.begin(), row.end(), j));
            int b = static_cast<int>(std::count(row.begin(), row.end(), i));
            std::vector<int> rest;
            for (int x : row)
                if (x != i && x != j) rest.push_back(x);
            std::vector<std::pair<std::vector<int>, int>> options;
            for (int mv = 0; mv <= a; ++mv) {
                int coeff = binom_mod(b + mv, mv, f);
                if (coeff == 0) continue;
                std::vector<int> nr = rest;
                for (int k = 0; k < a - mv; ++k) nr.push_back(j);
                for (int k = 0; k < b + mv; ++k) nr.push_back(i);
                std::sort(nr.begin(), nr.end());
                options.push_back({nr, coeff});
            }
            std::vector<std::pair<DivTuple, int>> nextd;
            for (const auto& [dt, c] : divs)
                for (const auto& [nr, c2] : options) {
                    DivTuple nd = dt;
                    nd.push_back(nr);
                    nextd.push_back({nd, f.mul(c, c2)});
                }
            divs = std::move(nextd);
        }
        for (const auto& [mk, ws] : wedges)
            for (const auto& [dt, dc] : divs) {
                auto it = ev.gen_index.find({bi, dt});
                if (it == ev.gen_index.end()) throw std::logic_error("transvection left basis");
                int c = f.norm(static_cast<long long>(t.coeff) * ws * dc);
                if (c != 0) out.push_back({it->second, mk, c});
            }
    }
    return combine_terms(f, out);  // transvections mix weights: no homogeneity check
}

}  // namespace detail

struct StabilityWitness {
    bool stable = true;
    int relation = -1, i = -1, j = -1;  // violating (orbit relation index, transvection)
};

// True iff the relation submodule at rank r is stable under all elementary
// transvections e_j -> e_j + e_i: each transvected orbit relation must lie in
// the degree component of the submodule generated by the orbit relations.
// (The bare F_p-span of the orbit relations is not the right test object:
// even for honest GL-ideals like m^2, a transvected syzygy returns as an
// E_r-multiple of other syzygies, not as a combination of raw translates.)
inline StabilityWitness check_gl_stability(const EquivariantPresentation& M, int r) {
    if (r < M.support_width + 1) throw std::invalid_argument("rank too small for the orbit span");
    RankEvaluation ev = evaluate(M, r);
    std::map<int, std::pair<detail::Block, SpanSet>> by_degree;
    auto span_of = [&](int d) -> std::pair<detail::Block, SpanSet>& {
        auto it = by_degree.find(d);
        if (it == by_degree.end())
            it = by_degree.emplace(d, detail::full_degree_span(ev.module, d)).first;
        return it->second;
    };
    for (int ri = 0; ri < static_cast<int>(ev.module.rels.size()); ++ri) {
        const auto& rel = ev.module.rels[ri];
        int d = ev.module.term_degree(rel[0]);
        auto& [b, span] = span_of(d);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < r; ++j) {
                if (i == j) continue;
                FreeElem g = detail::transvect(ev, M, rel, i, j);
                if (g.empty()) continue;
                if (!span.contains(detail::to_vec(b, g))) return {false, ri, i, j};
            }
    }
    return {true, -1, -1, -1};
}

// ------------------------------------------------------------------
// Torsion via the wedge-kill test
// ------------------------------------------------------------------

struct TorsionClass {
    int degree = 0;
    long long count = 0;     // independent torsion classes at this degree
    int kill_exponent = 0;   // smallest s with (x_{r+1}..x_{r+s}) * class = 0
};

struct TorsionReport {
    int rank = 0, s_max = 0, d_max = 0;
    std::vector<TorsionClass> classes;
    bool inconclusive = false;  // some class undecided at s_max (not certified non-torsion)
    long long total = 0;
    bool degrees_stable = false;  // same set of torsion degrees at rank+1

    std::vector<std::pair<int, long long>> profile() const {
        std::vector<std::pair<int, long long>> out;
        for (const auto& c : classes) out.push_back({c.degree, c.count});
        return out;
    }

    std::set<int> degrees() const {
        std::set<int> out;
        for (const auto& c : classes) out.insert(c.degree);
        return out;
    }
};

// Torsion classes of the view evaluation at rank r, degree by degree up to
// d_max, testing kill exponents s <= s_max.
inline TorsionReport torsion_submodule_view(const EquivariantPresentation& M,
                                            const std::vector<Stage>& stages, int r, int s_max,
                                            int d_max, bool check_next_rank = true) {
    Fp f(M.prime.p);
    TorsionReport rep;
    rep.rank = r;
    rep.s_max = s_max;
    rep.d_max = d_max;

    RankEvaluation ev = evaluate_view(M, stages, r);
    std::vector<RankEvaluation> bigger;
    for (int s = 1; s <= s_max; ++s) bigger.push_back(evaluate_view(M, stages, r + s));

    for (int d = 0; d <= d_max; ++d) {
        auto [b, span] = detail::full_degree_span(ev.module, d);
        if (b.items.empty()) continue;
        // coker classes: non-pivot coordinates
        std::vector<char> piv(b.items.size(), 0);
        for (int c : span.pivots()) piv[c] = 1;
        std::vector<int> classes;
        for (std::size_t c = 0; c < b.items.size(); ++c)
            if (!piv[c]) classes.push_back(static_cast<int>(c));
        if (classes.empty()) continue;

        // remaining = basis of the not-yet-killed quotient of the class space
        std::vector<FpVec> remaining;
        for (int c : classes) {
            FpVec v(b.items.size(), 0);
            v[c] = 1;
            remaining.push_back(std::move(v));
        }
        for (int s = 1; s <= s_max && !remaining.empty(); ++s) {
            const RankEvaluation& big = bigger[s - 1];
            auto [bb, bspan] = detail::full_degree_span(big.module, d + s);
            Mask wedge = ((Mask{1} << s) - 1) << r;
            // kernel of: class -> wedge * inclusion(class) mod big relations
            FpMat mat(f, static_cast<int>(remaining.size()));
            std::vector<FpVec> cols;
            for (const auto& v : remaining) {
                FreeElem e;
                for (std::size_t c = 0; c < v.size(); ++c)
                    if (v[c] != 0) e.push_back({b.items[c].first, b.items[c].second, v[c]});
                // inclusion: gen/div/mask indices unchanged (new coords appended);
                // generators correspond by (block, div tuple)
                FreeElem img;
                for (const auto& t : e) {
                    const auto& meta = ev.gen_meta[t.gen];
                    auto it = big.gen_index.find(meta);
                    if (it == big.gen_index.end()) throw std::logic_error("inclusion missing gen");
                    int sg = wedge_sign(wedge, t.mask);
                    img.push_back({it->second, t.mask | wedge,
                                   sg == 1 ? t.coeff : f.neg(t.coeff)});
                }
                FreeElem imgn = detail::combine_terms(f, img);
                FpVec w = bspan.reduce(detail::to_vec(bb, imgn));
                cols.push_back(std::move(w));
            }
            int codim = static_cast<int>(bb.items.size());
            for (int row = 0; row < codim; ++row) {
                FpVec rv(remaining.size());
                for (std::size_t c = 0; c < cols.size(); ++c) rv[c] = cols[c][row];
                mat.add_row(std::move(rv));
            }
            auto ker = mat.kernel();
            if (!ker.empty()) {
                TorsionClass tc;
                tc.degree = d;
                tc.count = static_cast<long long>(ker.size());
                tc.kill_exponent = s;
                rep.classes.push_back(tc);
                rep.total += tc.count;
                // continue with a complement of the killed classes
                std::vector<FpVec> next;
                SpanSet all(f, static_cast<int>(remaining.size()));
                for (const auto& kv : ker) all.add(kv);
                for (std::size_t c = 0; c < remaining.size(); ++c) {
                    FpVec unit(remaining.size(), 0);
                    unit[c] = 1;
                    if (all.add(unit)) next.push_back(remaining[c]);
                }
                remaining = std::move(next);
            }
        }
        // surviving classes are reported as torsion-free but cannot be
        // certified so by this test alone
        if (!remaining.empty()) rep.inconclusive = true;
    }

    if (check_next_rank) {
        TorsionReport other =
            torsion_submodule_view(M, stages, r + 1, s_max, d_max, false);
        rep.degrees_stable = rep.degrees() == other.degrees();
    }
    return rep;
}

inline TorsionReport torsion_submodule(const EquivariantPresentation& M, int r, int s_max,
                                       int d_max) {
    return torsion_submodule_view(M, {}, r, s_max, d_max);
}

// Weight-refined torsion profile: (degree, ambient weight) -> number of
// independent classes killed by the wedge of s_max appended coordinates.
// The torsion subspace is weight-homogeneous, so this refines the counts of
// torsion_submodule_view and feeds the Sh/Gamma commutation check.
inline std::map<std::pair<int, std::vector<int>>, long long> torsion_weight_profile(
    const EquivariantPresentation& M, const std::vector<Stage>& stages, int r, int s_max,
    int d_max) {
    Fp f(M.prime.p);
    RankEvaluation ev = evaluate_view(M, stages, r);
    RankEvaluation big = evaluate_view(M, stages, r + s_max);
    std::map<std::pair<int, std::vector<int>>, long long> out;
    for (int d = 0; d <= d_max; ++d) {
        auto blocks = detail::degree_blocks(ev.module, ev.module.gens, d);
        auto [bb, bspan] = detail::full_degree_span(big.module, d + s_max);
        // per-weight relation spans of the small evaluation
        std::map<std::vector<int>, SpanSet> spans;
        for (const auto& [w, b] : blocks) spans.emplace(w, SpanSet(f, static_cast<int>(b.items.size())));
        for (const auto& rel : ev.module.rels) {
            FreeElem rn = ev.module.normalized(rel);
            if (rn.empty()) continue;
            int e = ev.module.term_degree(rn[0]);
            int k = d - e;
            if (k < 0 || k > ev.module.alg.m) continue;
            for (Mask u = 0; u < (Mask{1} << ev.module.alg.m); ++u) {
                if (mask_degree(u) != k) continue;
                FreeElem img = ev.module.normalized(ev.module.act(u, rn));
                if (img.empty()) continue;
                auto w = ev.module.term_weight(img[0]);
                spans.at(w).add(detail::to_vec(blocks.at(w), img));
            }
        }
        for (const auto& [w, b] : blocks) {
            SpanSet& span = spans.at(w);
            std::vector<char> piv(b.items.size(), 0);
            for (int c : span.pivots()) piv[c] = 1;
            std::vector<int> classes;
            for (std::size_t c = 0; c < b.items.size(); ++c)
                if (!piv[c]) classes.push_back(static_cast<int>(c));
            if (classes.empty()) continue;
            FpMat mat(f, static_cast<int>(classes.size()));
            std::vector<FpVec> cols;
            for (int c : classes) {
                FreeElem e{{b.items[c].first, b.items[c].second, 1}};
                FreeElem img = detail::rank_wedge_image(ev, big, s_max, e, f);
                cols.push_back(bspan.reduce(detail::to_vec(bb, img)));
            }
            for (std::size_t row = 0; row < bb.items.size(); ++row) {
                FpVec rv(classes.size());
                for (std::size_t c = 0; c < cols.size(); ++c) rv[c] = cols[c][row];
                mat.add_row(std::move(rv));
            }
            auto ker = mat.kernel();
            if (!ker.empty()) out[{d, w}] = static_cast<long long>(ker.size());
        }
    }
    return out;
}

// ------------------------------------------------------------------
// Stabilized Betti tables, semi-inducedness, regularity bound
// ------------------------------------------------------------------

struct EquivariantBetti {
    BettiTable table;          // from the larger rank, truncated to j <= d_max
    int rank_lo = 0, rank_hi = 0;
    bool stabilized = false;
    std::vector<int> t;  // t_i for i <= i_max (within the degree window)
};

namespace detail {

// weight-class invariant: (i, j, weight class as a partition) -> multiplicity
// at the dominant (descending) representative weight. Totals per (i, j) grow
// with the rank, but the multiplicity at any fixed weight is rank-independent
// once the rank exceeds the degree window, and the dominant representative
// (length <= j <= d_cap) fits every tested rank — so these values must agree
// across ranks.
inline std::map<std::tuple<int, int, std::vector<int>>, long long> fold_weights(
    const BettiTable& t, int d_cap) {
    std::map<std::tuple<int, int, std::vector<int>>, long long> out;
    for (const auto& [k, v] : t.beta_weighted) {
        if (std::get<1>(k) > d_cap) continue;
        std::vector<int> w = std::get<2>(k);
        while (!w.empty() && w.back() == 0) w.pop_back();
        bool descending = true;
        for (std::size_t i = 0; i + 1 < w.size(); ++i)
            if (w[i] < w[i + 1]) descending = false;
        if (!descending || (!w.empty() && w[0] == 0)) continue;
        out[{std::get<0>(k), std::get<1>(k), w}] += v;
    }
    return out;
}

}  // namespace detail

inline EquivariantBetti equivariant_betti(const EquivariantPresentation& M, int i_max, int d_max,
                                          const std::vector<Stage>& stages = {}) {
    EquivariantBetti out;
    out.rank_lo = d_max + 1;
    out.rank_hi = d_max + 2;
    auto lo = minimal_free_resolution(evaluate_view(M, stages, out.rank_lo).module, i_max, d_max);
    auto hi = minimal_free_resolution(evaluate_view(M, stages, out.rank_hi).module, i_max, d_max);
    // stabilization: per (i, j <= d_max, weight class) agreement
    out.stabilized =
        detail::fold_weights(lo.betti, d_max) == detail::fold_weights(hi.betti, d_max);
    if (!out.stabilized)
        throw std::runtime_error("equivariant Betti table failed to stabilize across ranks");
    out.table = hi.betti;
    for (int i = 0; i <= i_max; ++i) out.t.push_back(out.table.t(i));
    return out;
}

struct SemiInducedResult {
    bool semi_induced = false;
    std::vector<int> filtration_degrees;  // certificate when true
    bool truncated = false;
};

inline SemiInducedResult is_semi_induced(const EquivariantPresentation& M, int d_max,
                                         const std::vector<Stage>& stages = {}) {
    SemiInducedResult out;
    auto eb = equivariant_betti(M, 1, d_max, stages);
    out.semi_induced = eb.t[1] == -1;
    if (!out.semi_induced) return out;
    // certificate: peel the induced filtration at the larger tested rank
    GradedModule X = evaluate_view(M, stages, d_max + 2).module;
    GradedModule cur = detail::minimalized(X);
    int guard = 0;
    while (!cur.gens.empty() && guard++ < 64) {
        int n = cur.gens[0].degree;
        for (const auto& g : cur.gens) n = std::min(n, g.degree);
        auto [sub, quot] = submodule_generated_below(cur, n + 1);
        // the layer generated in degree n must be free (induced at rank level)
        auto t1 = tor_with_k(sub, 1, d_max);
        for (const auto& info : t1)
            if (info.dim != 0) {
                out.semi_induced = false;
                return out;
            }
        out.filtration_degrees.push_back(n);
        cur = detail::minimalized(quot);
    }
    return out;
}

struct ShiftExperimentStep {
    int l = 0;
    int t0 = -1, t1 = -1;
    long long torsion_total = 0;
    bool semi_induced = false;
};

struct ShiftExperimentResult {
    std::optional<int> l_found;
    std::vector<ShiftExperimentStep> trace;
};

inline std::vector<Stage> shift_stages(int l) {
    std::vector<Stage> s;
    if (l > 0) s.push_back({l, false});
    return s;
}

inline ShiftExperimentResult shift_theorem_experiment(const EquivariantPresentation& M, int l_max,
                                                      int d_max) {
    ShiftExperimentResult out;
    for (int l = 0; l <= l_max; ++l) {
        ShiftExperimentStep step;
        step.l = l;
        auto eb = equivariant_betti(M, 1, d_max, shift_stages(l));
        step.t0 = eb.t[0];
        step.t1 = eb.t[1];
        auto tor = torsion_submodule_view(M, shift_stages(l), std::max(1, step.t0 + 1), 3,
                                          std::max(0, step.t0), false);
        step.torsion_total = tor.total;
        step.semi_induced = step.t1 == -1;
        out.trace.push_back(step);
        if (step.semi_induced) {
            out.l_found = l;
            break;
        }
    }
    return out;
}

inline RankEvaluation shift_evaluate(const EquivariantPresentation& M, int r, int l = 1) {
    return evaluate_view(M, shift_stages(l), r);
}

inline RankEvaluation delta_evaluate(const EquivariantPresentation& M, int r, int s = 1) {
    return evaluate_view(M, {Stage{s, true}}, r);
}

// ------------------------------------------------------------------
// The semi-induced resolution complex 0 -> M -> P^0 -> P^1 -> ...
// ------------------------------------------------------------------

namespace detail {

// Image of one free-module term of `dom` under the natural map into `cod`,
// where cod's stage list extends dom's by one new block of size snew
// (the previous final block switching to killed does not change the map).
inline FreeElem view_step_image(const RankEvaluation& dom, const RankEvaluation& cod, int snew,
                                const FreeTerm& t, const Fp& f) {
    const auto& [bi, div] = dom.gen_meta[t.gen];
    int T = dom.stage_total;
    // relabel: stage coords unchanged, ambient coords move up by snew
    DivTuple nd;
    for (const auto& row : div) {
        std::vector<int> nr;
        for (int i : row) nr.push_back(i < T ? i : i + snew);
        nd.push_back(nr);
    }
    auto it = cod.gen_index.find({bi, nd});
    if (it == cod.gen_index.end()) throw std::logic_error("step map left the generator basis");
    // fixed stage wedge size of the domain generator
    int used = 0;
    for (const auto& row : div)
        for (int i : row)
            if (i < T) ++used;
    int ub = T - used;
    int sign = (snew * (mask_degree(t.mask) + ub)) % 2 == 0 ? 1 : -1;
    return {{it->second, t.mask, sign == 1 ? t.coeff : f.neg(t.coeff)}};
}

inline FreeElem view_step_map(const RankEvaluation& dom, const RankEvaluation& cod, int snew,
                              const FreeElem& e, const Fp& f) {
    FreeElem out;
    for (const auto& t : e)
        for (const auto& u : view_step_image(dom, cod, snew, t, f)) out.push_back(u);
    return combine_terms(f, out);
}

}  // namespace detail

struct ResolutionExperimentReport {
    bool ok = true;            // all verified properties hold
    bool inconclusive = false; // a shift amount or torsion test hit its cap
    int t0_M = -1;
    int length = 0;                   // number of P^j built (complex length)
    std::vector<int> shift_amounts;   // l_j per step
    std::vector<int> t0;              // t0(P^j)
    // cohomology dims per position: index 0 = at M (kernel of M -> P^0),
    // index j+1 = at P^j
    std::vector<std::map<int, long long>> cohomology;
    bool cohomology_torsion = true;
};

inline ResolutionExperimentReport resolution_experiment(const EquivariantPresentation& M,
                                                        int d_max, int l_max = 6, int s_max = 3) {
    Fp f(M.prime.p);
    ResolutionExperimentReport rep;
    int r = d_max + 2;

    auto t01 = [&](const std::vector<Stage>& st) {
        auto eb = equivariant_betti(M, 1, d_max, st);
        return std::make_pair(eb.t[0], eb.t[1]);
    };
    rep.t0_M = t01({}).first;

    // choose the shift amounts step by step
    std::vector<std::vector<Stage>> views;  // views[j] = stages of P^{j-1} (views[0] = plain M)
    views.push_back({});
    std::vector<Stage> kills;
    int guard = std::max(1, rep.t0_M + 1);
    for (int j = 0; j < guard + 1; ++j) {
        // does the current cokernel already vanish? then the complex ends
        std::vector<Stage> probe = kills;
        bool zero = true;
        {
            auto dims = component_dimensions(evaluate_view(M, probe, r).module, d_max);
            for (const auto& ci : dims) zero = zero && ci.dim == 0;
        }
        if (zero) break;
        std::optional<int> l;
        for (int cand = 0; cand <= l_max; ++cand) {
            std::vector<Stage> st = kills;
            st.push_back({cand, false});
            if (cand == 0) st.pop_back();
            auto [t0, t1] = t01(st);
            if (t1 == -1) { l = cand; break; }
        }
        if (!l) {
            rep.inconclusive = true;
            break;
        }
        rep.shift_amounts.push_back(*l);
        std::vector<Stage> pj = kills;
        if (*l > 0) pj.push_back({*l, false});
        views.push_back(pj);
        rep.t0.push_back(t01(pj).first);
        if (*l > 0) {
            kills.push_back({*l, true});
        }
        rep.length += 1;
        if (*l == 0) break;  // semi-induced already: complex 0 -> M -> M -> 0
    }

    // verify degree bounds: t0(P^j) <= t0(M) - j and length <= t0(M) (for nonzero t0)
    for (int j = 0; j < static_cast<int>(rep.t0.size()); ++j)
        if (rep.t0[j] > rep.t0_M - j && !(j == 0 && rep.t0[j] == rep.t0_M))
            rep.ok = false;  // allow equality at j = 0 when M itself is semi-induced
    if (rep.length > std::max(1, rep.t0_M + 1)) rep.ok = false;

    // evaluate the complex and measure cohomology
    std::vector<RankEvaluation> evs, evs_big;
    for (const auto& st : views) {
        evs.push_back(evaluate_view(M, st, r));
        evs_big.push_back(evaluate_view(M, st, r + s_max));
    }
    for (int pos = 0; pos < static_cast<int>(evs.size()); ++pos) {
        std::map<int, long long> hdims;
        for (int d = 0; d <= d_max; ++d) {
            auto [b, span] = detail::full_degree_span(evs[pos].module, d);
            if (b.items.empty()) continue;
            int n = static_cast<int>(b.items.size());
            // numerator: kernel of the outgoing map (everything at the end)
            std::vector<FpVec> ker;
            if (pos + 1 < static_cast<int>(evs.size())) {
                auto [cb, cspan] = detail::full_degree_span(evs[pos + 1].module, d);
                int snew = rep.shift_amounts[pos];
                FpMat mat(f, n);
                std::vector<FpVec> cols;
                for (const auto& item : b.items) {
                    FreeElem e{{item.first, item.second, 1}};
                    FreeElem img = detail::view_step_map(evs[pos], evs[pos + 1], snew, e, f);
                    cols.push_back(cspan.reduce(detail::to_vec(cb, img)));
                }
                for (std::size_t row = 0; row < cb.items.size(); ++row) {
                    FpVec rv(n);
                    for (int c = 0; c < n; ++c) rv[c] = cols[c][row];
                    mat.add_row(std::move(rv));
                }
                ker = mat.kernel();
            } else {
                for (int c = 0; c < n; ++c) {
                    FpVec v(n, 0);
                    v[c] = 1;
                    ker.push_back(std::move(v));
                }
            }
            // denominator: relations plus the incoming image
            SpanSet denom(f, n);
            for (const auto& rv : span.rows()) denom.add(rv);
            if (pos > 0) {
                auto pb = detail::full_degree_span(evs[pos - 1].module, d).first;
                int snew = rep.shift_amounts[pos - 1];
                for (const auto& item : pb.items) {
                    FreeElem e{{item.first, item.second, 1}};
                    FreeElem img = detail::view_step_map(evs[pos - 1], evs[pos], snew, e, f);
                    denom.add(detail::to_vec(b, img));
                }
            }
            // cohomology classes: kernel vectors that enlarge the denominator
            std::vector<FpVec> hbasis;
            SpanSet acc(f, n);
            for (const auto& rv : denom.rows()) acc.add(rv);
            for (const auto& kv : ker)
                if (acc.add(kv)) hbasis.push_back(kv);
            if (!hbasis.empty()) hdims[d] = static_cast<long long>(hbasis.size());

            // wedge-kill torsion test for every cohomology class
            if (!hbasis.empty()) {
                auto [bb, bspan] = detail::full_degree_span(evs_big[pos].module, d + s_max);
                SpanSet bigdenom(f, static_cast<int>(bb.items.size()));
                for (const auto& rv : bspan.rows()) bigdenom.add(rv);
                if (pos > 0) {
                    auto pb2 = detail::full_degree_span(evs_big[pos - 1].module, d + s_max).first;
                    int snew = rep.shift_amounts[pos - 1];
                    for (const auto& item : pb2.items) {
                        FreeElem e{{item.first, item.second, 1}};
                        FreeElem img =
                            detail::view_step_map(evs_big[pos - 1], evs_big[pos], snew, e, f);
                        bigdenom.add(detail::to_vec(bb, img));
                    }
                }
                for (const auto& hv : hbasis) {
                    FreeElem e;
                    for (int c = 0; c < n; ++c)
                        if (hv[c] != 0) e.push_back({b.items[c].first, b.items[c].second, hv[c]});
                    FreeElem img = detail::rank_wedge_image(evs[pos], evs_big[pos], s_max, e, f);
                    if (!bigdenom.contains(detail::to_vec(bb, img)))
                        rep.cohomology_torsion = false;
                }
            }
        }
        rep.cohomology.push_back(std::move(hdims));
    }
    if (!rep.cohomology_torsion) rep.ok = false;
    return rep;
}

struct RegularityBoundReport {
    std::vector<int> t;
    int reg = -1;
    int bound = -1;
    bool ok = false;
    bool truncated = false;
};

inline RegularityBoundReport regularity_bound_check(const EquivariantPresentation& M, int i_max,
                                                    int d_max) {
    auto eb = equivariant_betti(M, i_max, d_max);
    RegularityBoundReport rep;
    rep.t = eb.t;
    for (int i = 0; i <= i_max; ++i)
        if (eb.t[i] >= 0) rep.reg = std::max(rep.reg, eb.t[i] - i);
    int t0 = eb.t[0], t1 = eb.t[1];
    if (t1 >= 0) {
        rep.bound = t0 + t1;
        rep.ok = rep.reg <= rep.bound;
    } else {
        // vanishing Tor_1: the module is semi-induced, where reg = t_0
        rep.bound = t0;
        rep.ok = rep.reg <= rep.bound;
    }
    for (bool c : eb.table.complete)
        if (!c) rep.truncated = true;
    return rep;
}

}  // namespace exmod
