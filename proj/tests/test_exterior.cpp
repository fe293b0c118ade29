#include <catch2/catch_amalgamated.hpp>

#include "exmod/exterior.hpp"

using namespace exmod;

namespace {

GradedModule residue_field(int m, int p) {
    GradedModule M{ExteriorAlgebraRank(m, PrimeChar(p)), {GenLabel{0, {}}}, {}};
    for (int j = 0; j < m; ++j) M.rels.push_back({{0, Mask{1} << j, 1}});
    return M;
}

long long binom(int n, int k) {
    if (k < 0 || k > n) return 0;
    long long r = 1;
    for (int i = 0; i < k; ++i) r = r * (n - i) / (i + 1);
    return r;
}

// ------------------------------------------------------------------
// Independent brute-force resolution oracle: dense, no weight blocks, greedy
// minimal-generator selection by explicit span membership.
// ------------------------------------------------------------------

using NaiveElem = std::map<std::pair<int, Mask>, int>;  // (gen, mask) -> coeff

NaiveElem naive_act(Fp f, Mask u, const NaiveElem& e) {
    NaiveElem out;
    for (const auto& [k, c] : e) {
        int s = wedge_sign(u, k.second);
        if (s == 0) continue;
        int& slot = out[{k.first, static_cast<Mask>(u | k.second)}];
        slot = f.add(slot, s == 1 ? c : f.neg(c));
    }
    for (auto it = out.begin(); it != out.end();)
        it = it->second == 0 ? out.erase(it) : std::next(it);
    return out;
}

int naive_degree(const std::vector<int>& gen_degs, const NaiveElem& e) {
    auto& [k, c] = *e.begin();
    return gen_degs[k.first] + mask_degree(k.second);
}

// all degree-d basis items of the free module with generator degrees gen_degs
std::vector<std::pair<int, Mask>> naive_basis(int m, const std::vector<int>& gen_degs, int d) {
    std::vector<std::pair<int, Mask>> out;
    for (int g = 0; g < static_cast<int>(gen_degs.size()); ++g)
        for (Mask u = 0; u < (Mask{1} << m); ++u)
            if (gen_degs[g] + mask_degree(u) == d) out.push_back({g, u});
    return out;
}

std::map<std::pair<int, int>, long long> brute_betti(const GradedModule& M, int i_max, int d_max) {
    Fp f(M.alg.p.p);
    int m = M.alg.m;
    std::map<std::pair<int, int>, long long> beta;

    std::vector<int> cur_gens;
    for (const auto& g : M.gens) {
        cur_gens.push_back(g.degree);
        beta[{0, g.degree}] += 1;
    }
    std::vector<NaiveElem> cur_rels;
    for (const auto& r : M.rels) {
        NaiveElem e;
        for (const auto& t : r) e[{t.gen, t.mask}] = f.add(e[{t.gen, t.mask}], f.norm(t.coeff));
        for (auto it = e.begin(); it != e.end();)
            it = it->second == 0 ? e.erase(it) : std::next(it);
        if (!e.empty()) cur_rels.push_back(e);
    }

    for (int i = 1; i <= i_max; ++i) {
        // greedy minimal generating subset of the module generated by cur_rels
        std::sort(cur_rels.begin(), cur_rels.end(),
                  [&](const NaiveElem& a, const NaiveElem& b) {
                      return naive_degree(cur_gens, a) < naive_degree(cur_gens, b);
                  });
        std::vector<NaiveElem> mingens;
        for (const auto& r : cur_rels) {
            int d = naive_degree(cur_gens, r);
            auto basis = naive_basis(m, cur_gens, d);
            std::map<std::pair<int, Mask>, int> idx;
            for (std::size_t b = 0; b < basis.size(); ++b) idx[basis[b]] = static_cast<int>(b);
            SpanSet span(f, static_cast<int>(basis.size()));
            for (const auto& g : mingens)
                for (Mask u = 0; u < (Mask{1} << m); ++u) {
                    NaiveElem img = naive_act(f, u, g);
                    if (img.empty() || naive_degree(cur_gens, img) != d) continue;
                    FpVec v(basis.size(), 0);
                    for (const auto& [k, c] : img) v[idx.at(k)] = c;
                    span.add(std::move(v));
                }
            FpVec v(basis.size(), 0);
            for (const auto& [k, c] : r) v[idx.at(k)] = c;
            if (!span.contains(v)) {
                mingens.push_back(r);
                beta[{i, d}] += 1;
            }
        }
        // syzygies of mingens per degree
        std::vector<int> next_gens;
        for (const auto& g : mingens) next_gens.push_back(naive_degree(cur_gens, g));
        std::vector<NaiveElem> next_rels;
        for (int d = 0; d <= d_max; ++d) {
            auto dom = naive_basis(m, next_gens, d);
            auto cod = naive_basis(m, cur_gens, d);
            std::map<std::pair<int, Mask>, int> cidx;
            for (std::size_t b = 0; b < cod.size(); ++b) cidx[cod[b]] = static_cast<int>(b);
            FpMat mat(f, static_cast<int>(dom.size()));
            std::vector<FpVec> cols;
            for (const auto& [g, u] : dom) {
                NaiveElem img = naive_act(f, u, mingens[g]);
                FpVec v(cod.size(), 0);
                for (const auto& [k, c] : img) v[cidx.at(k)] = c;
                cols.push_back(std::move(v));
            }
            for (std::size_t row = 0; row < cod.size(); ++row) {
                FpVec rv(dom.size());
                for (std::size_t c = 0; c < cols.size(); ++c) rv[c] = cols[c][row];
                mat.add_row(std::move(rv));
            }
            for (const auto& kv : mat.kernel()) {
                NaiveElem e;
                for (std::size_t c = 0; c < kv.size(); ++c)
                    if (kv[c] != 0) e[dom[c]] = kv[c];
                if (!e.empty()) next_rels.push_back(e);
            }
        }
        cur_gens = next_gens;
        cur_rels = next_rels;
    }
    return beta;
}

}  // namespace

TEST_CASE("wedge sign convention") {
    CHECK(wedge_sign(0b001, 0b010) == 1);   // x1 ^ x2
    CHECK(wedge_sign(0b010, 0b001) == -1);  // x2 ^ x1
    CHECK(wedge_sign(0b001, 0b001) == 0);
    CHECK(wedge_sign(0b100, 0b011) == 1);   // x3 ^ (x1 x2): two inversions
    CHECK(wedge_sign(0, 0b111) == 1);
}

TEST_CASE("component dimensions of pinned modules") {
    // free E_2
    GradedModule free2{ExteriorAlgebraRank(2, PrimeChar(2)), {GenLabel{0, {}}}, {}};
    auto dims = component_dimensions(free2, 2);
    REQUIRE(dims.size() == 3);
    CHECK(dims[0].dim == 1);
    CHECK(dims[1].dim == 2);
    CHECK(dims[2].dim == 1);

    // E_3 / m^2
    GradedModule t3{ExteriorAlgebraRank(3, PrimeChar(3)), {GenLabel{0, {}}}, {}};
    for (int a = 0; a < 3; ++a)
        for (int b = a + 1; b < 3; ++b)
            t3.rels.push_back({{0, static_cast<Mask>((1u << a) | (1u << b)), 1}});
    auto d3 = component_dimensions(t3, 3);
    CHECK(d3[0].dim == 1);
    CHECK(d3[1].dim == 3);
    CHECK(d3[2].dim == 0);
    CHECK(d3[3].dim == 0);

    // degree-shifted free E_2
    GradedModule sh{ExteriorAlgebraRank(2, PrimeChar(2)), {GenLabel{1, {}}}, {}};
    auto ds = component_dimensions(sh, 3);
    CHECK(ds[0].dim == 0);
    CHECK(ds[1].dim == 1);
    CHECK(ds[2].dim == 2);
    CHECK(ds[3].dim == 1);
}

TEST_CASE("koszul pattern for the residue field, engine vs binomials vs brute force") {
    for (int p : {2, 3}) {
        for (int m = 1; m <= 4; ++m) {
            int i_max = 4, d_max = 4 + m;
            auto M = residue_field(m, p);
            auto res = minimal_free_resolution(M, i_max, d_max);
            auto brute = brute_betti(M, i_max, d_max);
            for (int i = 0; i <= i_max; ++i)
                for (int j = 0; j <= d_max; ++j) {
                    long long expect = (j == i) ? binom(m + i - 1, i) : 0;
                    INFO("p=" << p << " m=" << m << " i=" << i << " j=" << j);
                    CHECK(res.betti.value(i, j) == expect);
                    auto it = brute.find({i, j});
                    CHECK((it == brute.end() ? 0 : it->second) == expect);
                }
        }
    }
}

TEST_CASE("single wedge relation") {
    GradedModule M{ExteriorAlgebraRank(2, PrimeChar(2)), {GenLabel{0, {}}}, {{{0, 0b11, 1}}}};
    auto res = minimal_free_resolution(M, 3, 6);
    CHECK(res.betti.value(0, 0) == 1);
    CHECK(res.betti.value(1, 2) == 1);
    // x1^x2 generates a one-dimensional free direct summand's socle; the
    // relation is itself free of syzygies? No: x_j * (x1^x2) = 0 in E_2.
    CHECK(res.betti.value(2, 3) == 2);
    auto brute = brute_betti(M, 3, 6);
    for (const auto& [k, v] : brute) CHECK(res.betti.value(k.first, k.second) == v);
    auto reg = regularity(M, 3, 6);
    CHECK(reg.value == 1);
}

TEST_CASE("free modules resolve themselves") {
    GradedModule M{ExteriorAlgebraRank(3, PrimeChar(2)),
                   {GenLabel{0, {}}, GenLabel{2, {}}}, {}};
    auto res = minimal_free_resolution(M, 3, 8);
    CHECK(res.betti.value(0, 0) == 1);
    CHECK(res.betti.value(0, 2) == 1);
    for (int i = 1; i <= 3; ++i)
        for (int j = 0; j <= 8; ++j) CHECK(res.betti.value(i, j) == 0);
    for (auto& info : tor_with_k(M, 1, 8)) CHECK(info.dim == 0);
    auto reg = regularity(M, 3, 8);
    CHECK(reg.value == 2);  // t_0 = 2, higher Tor vanish
    CHECK_FALSE(reg.lower_bound_only);
}

TEST_CASE("tor dimensions of the residue field") {
    auto M = residue_field(3, 2);
    auto t2 = tor_with_k(M, 2, 4);
    CHECK(t2[2].dim == 6);  // C(3+2-1,2)
    for (int d : {0, 1, 3, 4}) CHECK(t2[d].dim == 0);
    auto t0 = tor_with_k(M, 0, 2);
    CHECK(t0[0].dim == 1);
    CHECK(regularity(M, 4, 7).value == 0);
}

TEST_CASE("non-minimal presentations are minimalized") {
    // g1 = x1 * g0 forced by a relation; the cokernel is free on g0
    GradedModule M{ExteriorAlgebraRank(2, PrimeChar(3)),
                   {GenLabel{0, {}}, GenLabel{1, {}}},
                   {{{1, 0, 1}, {0, 0b01, 2}}}};
    auto res = minimal_free_resolution(M, 2, 5);
    CHECK(res.betti.value(0, 0) == 1);
    CHECK(res.betti.value(0, 1) == 0);
    for (int i = 1; i <= 2; ++i)
        for (int j = 0; j <= 5; ++j) CHECK(res.betti.value(i, j) == 0);
    // flat <=> free: Tor_1 vanishes and the minimalized presentation has no relations
    CHECK(res.presentation.rels.empty());
    // dimensions unchanged by minimalization
    auto dims = component_dimensions(M, 3);
    CHECK(dims[0].dim == 1);
    CHECK(dims[1].dim == 2);
    CHECK(dims[2].dim == 1);
    CHECK(dims[3].dim == 0);
}

TEST_CASE("minimality certificate: differentials land in the maximal ideal") {
    for (auto M : {residue_field(3, 2),
                   GradedModule{ExteriorAlgebraRank(2, PrimeChar(2)), {GenLabel{0, {}}},
                                {{{0, 0b11, 1}}}}}) {
        auto res = minimal_free_resolution(M, 3, 6);
        for (std::size_t i = 1; i < res.maps.size(); ++i)
            for (const auto& img : res.maps[i])
                for (const auto& t : img) CHECK(t.mask != 0);
    }
}

TEST_CASE("euler characteristic against hilbert dimensions") {
    std::vector<GradedModule> fixtures;
    fixtures.push_back(residue_field(2, 3));
    fixtures.push_back({ExteriorAlgebraRank(2, PrimeChar(2)), {GenLabel{0, {}}}, {{{0, 0b11, 1}}}});
    fixtures.push_back({ExteriorAlgebraRank(3, PrimeChar(2)),
                        {GenLabel{0, {}}},
                        {{{0, 0b011, 1}}, {{0, 0b110, 1}}}});
    for (const auto& M : fixtures) {
        int d_max = 4;
        int m = M.alg.m;
        auto res = minimal_free_resolution(M, d_max, d_max);
        auto dims = component_dimensions(M, d_max);
        for (int d = 0; d <= d_max; ++d) {
            long long sum = 0;
            for (int i = 0; i <= d_max; ++i)
                for (int j = 0; j <= d; ++j)
                    sum += (i % 2 == 0 ? 1 : -1) * res.betti.value(i, j) * binom(m, d - j);
            CHECK(sum == dims[d].dim);
        }
    }
}

TEST_CASE("weight refinement sums to the unrefined table") {
    // residue field of E_2 with weights
    GradedModule M{ExteriorAlgebraRank(2, PrimeChar(2)), {GenLabel{0, {0, 0}}}, {}};
    M.rels.push_back({{0, 0b01, 1}});
    M.rels.push_back({{0, 0b10, 1}});
    auto res = minimal_free_resolution(M, 3, 5);
    auto plain = minimal_free_resolution(residue_field(2, 2), 3, 5);
    CHECK(res.betti.beta == plain.betti.beta);
    std::map<std::pair<int, int>, long long> folded;
    for (const auto& [k, v] : res.betti.beta_weighted)
        folded[{std::get<0>(k), std::get<1>(k)}] += v;
    CHECK(folded == res.betti.beta);
    // the two linear syzygies carry distinct weights
    CHECK(res.betti.beta_weighted.at({1, 1, {1, 0}}) == 1);
    CHECK(res.betti.beta_weighted.at({1, 1, {0, 1}}) == 1);
}

TEST_CASE("submodule generated below a degree") {
    // free E_2 on a degree-0 generator: everything is generated below 1
    GradedModule F{ExteriorAlgebraRank(2, PrimeChar(2)), {GenLabel{0, {}}}, {}};
    auto [sub, quot] = submodule_generated_below(F, 1);
    auto sd = component_dimensions(sub, 3);
    auto qd = component_dimensions(quot, 3);
    for (int d = 0; d <= 2; ++d) {
        CHECK(sd[d].dim == component_dimensions(F, 2)[d].dim);
        CHECK(qd[d].dim == 0);
    }

    // k (degree 0) plus k shifted to degree 1
    GradedModule KK{ExteriorAlgebraRank(2, PrimeChar(2)),
                    {GenLabel{0, {}}, GenLabel{1, {}}}, {}};
    for (int g = 0; g < 2; ++g)
        for (int j = 0; j < 2; ++j) KK.rels.push_back({{g, Mask{1} << j, 1}});
    auto [s2, q2] = submodule_generated_below(KK, 1);
    auto s2d = component_dimensions(s2, 3);
    auto q2d = component_dimensions(q2, 3);
    CHECK(s2d[0].dim == 1);
    CHECK(s2d[1].dim == 0);
    CHECK(q2d[0].dim == 0);
    CHECK(q2d[1].dim == 1);
    CHECK(q2d[2].dim == 0);

    // E_2/(x1^x2) is generated in degree 0
    GradedModule W{ExteriorAlgebraRank(2, PrimeChar(3)), {GenLabel{0, {}}}, {{{0, 0b11, 1}}}};
    auto [s3, q3] = submodule_generated_below(W, 1);
    auto wd = component_dimensions(W, 3);
    auto s3d = component_dimensions(s3, 3);
    auto q3d = component_dimensions(q3, 3);
    for (int d = 0; d <= 3; ++d) {
        CHECK(s3d[d].dim == wd[d].dim);
        CHECK(q3d[d].dim == 0);
    }
}

TEST_CASE("truncation flags") {
    auto M = residue_field(2, 2);
    auto res = minimal_free_resolution(M, 4, 4);
    // F_4 lives in degree 4; its syzygies could hide above d_max = 4
    CHECK(res.betti.complete[3]);
    CHECK_FALSE(res.betti.complete[4]);
    auto full = minimal_free_resolution(M, 4, 6);
    for (bool c : full.betti.complete) CHECK(c);
}
