#pragma once

// Characters of the simple polynomial representations in characteristic p,
// computed from ranks of the contravariant form on Weyl modules.
//
// The Weyl module of shape lambda is realized Carter-Lusztig style: the
// standard basis is indexed by semistandard tableaux, and the form pairs a
// tableau S against T by summing signs over row rearrangements of S composed
// with column permutations whose row content reproduces T. Ranks are taken
// over F_p per weight space and reassembled into the Schur basis by
// unitriangular back-substitution.

#include <algorithm>
#include <map>
#include <optional>
#include <stdexcept>
#include <tuple>
#include <vector>

#include "exmod/character.hpp"
#include "exmod/fp.hpp"
#include "exmod/partition.hpp"

namespace exmod {

// A semistandard tableau stored row-major; entries 1-based.
using Tableau = std::vector<std::vector<int>>;

// All SSYT of the given shape and content (content[i] = multiplicity of i+1).
inline std::vector<Tableau> ssyt_enumerate(const Partition& shape, const std::vector<int>& content) {
    std::vector<Tableau> out;
    int rows = shape.rows();
    Tableau t(rows);
    for (int r = 0; r < rows; ++r) t[r].assign(shape.part(r), 0);
    std::vector<int> left(content);
    int maxe = static_cast<int>(content.size());
    auto rec = [&](auto&& self, int r, int c) -> void {
        if (r == rows) {
            out.push_back(t);
            return;
        }
        int nr = r, nc = c + 1;
        if (nc == shape.part(r)) { nr = r + 1; nc = 0; }
        int emin = 1;
        if (c > 0) emin = std::max(emin, t[r][c - 1]);
        if (r > 0 && c < shape.part(r - 1)) emin = std::max(emin, t[r - 1][c] + 1);
        for (int e = emin; e <= maxe; ++e) {
            if (left[e - 1] == 0) continue;
            t[r][c] = e;
            left[e - 1]--;
            self(self, nr, nc);
            left[e - 1]++;
        }
        t[r][c] = 0;
    };
    if (rows == 0) {
        bool empty_content = true;
        for (int x : content) empty_content = empty_content && x == 0;
        if (empty_content) out.push_back({});
        return out;
    }
    rec(rec, 0, 0);
    return out;
}

namespace detail {

// Row content key of a filled diagram: per row the sorted entry list.
using RowContent = std::vector<std::vector<int>>;

inline int perm_sign(std::vector<int> w) {
    int sign = 1;
    for (std::size_t i = 0; i < w.size(); ++i)
        for (std::size_t j = i + 1; j < w.size(); ++j)
            if (w[i] > w[j]) sign = -sign;
    return sign;
}

// Expand the contravariant image of the divided-power element of S into
// row-content coordinates: choose an arrangement of each row, require all
// columns distinct, then choose a permutation of each column; accumulate the
// product of column signs (relative to the first arrangement).
inline std::map<RowContent, long long> contravariant_image(const Partition& shape, const Tableau& S) {
    std::map<RowContent, long long> acc;
    int rows = shape.rows();
    int cols = rows == 0 ? 0 : shape.part(0);
    Partition conj = shape.conjugate();

    // current arrangement of each row
    std::vector<std::vector<int>> arr(rows);
    for (int r = 0; r < rows; ++r) arr[r] = S[r];  // sorted; next_permutation cycles all distinct

    auto process_arrangement = [&]() {
        // columns of the arranged diagram
        std::vector<std::vector<int>> col(cols);
        for (int c = 0; c < cols; ++c) {
            col[c].clear();
            for (int r = 0; r < rows; ++r)
                if (c < shape.part(r)) col[c].push_back(arr[r][c]);
        }
        // all entries in a column must be distinct
        for (int c = 0; c < cols; ++c) {
            std::vector<int> s(col[c]);
            std::sort(s.begin(), s.end());
            if (std::adjacent_find(s.begin(), s.end()) != s.end()) return;
        }
        // choose a permutation of every column, sign relative to col[c]
        std::vector<std::vector<int>> chosen(cols);
        auto rec = [&](auto&& self, int c, int sign) -> void {
            if (c == cols) {
                RowContent rc(rows);
                for (int r = 0; r < rows; ++r) {
                    rc[r].resize(shape.part(r));
                    for (int cc = 0; cc < shape.part(r); ++cc) rc[r][cc] = chosen[cc][r];
                    std::sort(rc[r].begin(), rc[r].end());
                }
                acc[rc] += sign;
                return;
            }
            std::vector<int> base(col[c]);
            std::vector<int> sorted(base);
            std::sort(sorted.begin(), sorted.end());
            int base_sign = perm_sign(base);
            std::vector<int> perm(sorted);
            do {
                chosen[c] = perm;
                self(self, c + 1, sign * base_sign * perm_sign(perm));
            } while (std::next_permutation(perm.begin(), perm.end()));
        };
        // chosen[c][r]: entry placed at row r of column c (rows where the column exists)
        rec(rec, 0, 1);
    };

    // iterate over distinct arrangements of every row
    auto rows_rec = [&](auto&& self, int r) -> void {
        if (r == rows) {
            process_arrangement();
            return;
        }
        std::vector<int> w(S[r]);
        std::sort(w.begin(), w.end());
        do {
            arr[r] = w;
            self(self, r + 1);
        } while (std::next_permutation(w.begin(), w.end()));
    };
    rows_rec(rows_rec, 0);
    return acc;
}

}  // namespace detail

// Gram matrix of the contravariant form on the weight space of the Weyl
// module of the given shape, in the SSYT basis, over the integers.
inline std::vector<std::vector<long long>> gram_matrix(const Partition& shape,
                                                       const std::vector<int>& content) {
    auto tabs = ssyt_enumerate(shape, content);
    int n = static_cast<int>(tabs.size());
    std::vector<detail::RowContent> keys(n);
    for (int i = 0; i < n; ++i) {
        keys[i].resize(shape.rows());
        for (int r = 0; r < shape.rows(); ++r) {
            keys[i][r] = tabs[i][r];
            std::sort(keys[i][r].begin(), keys[i][r].end());
        }
    }
    std::vector<std::vector<long long>> g(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i) {
        auto img = detail::contravariant_image(shape, tabs[i]);
        for (int j = 0; j < n; ++j) {
            auto it = img.find(keys[j]);
            if (it != img.end()) g[i][j] = it->second;
        }
    }
    return g;
}

inline int fp_rank(const std::vector<std::vector<long long>>& m, int p) {
    if (m.empty()) return 0;
    Fp f(p);
    FpMat mat(f, static_cast<int>(m[0].size()));
    for (const auto& row : m) {
        FpVec v(row.size());
        for (std::size_t j = 0; j < row.size(); ++j) v[j] = f.norm(row[j]);
        mat.add_row(std::move(v));
    }
    return mat.rank();
}

struct SimpleCharacter {
    Partition shape;
    PrimeChar prime;
    CharacterElement character;
};

// ch L_lambda from Gram ranks, Schur-expanded. m >= |lambda| required.
inline SimpleCharacter gram_rank_character(const Partition& lambda, const PrimeChar& pc, int m) {
    if (m < lambda.size()) throw std::invalid_argument("rank m must be at least |lambda|");
    static std::map<std::tuple<Partition, int>, CharacterElement> memo;
    auto key = std::make_tuple(lambda, pc.p);
    auto it = memo.find(key);
    if (it != memo.end()) return {lambda, pc, it->second};

    std::map<Partition, long long> weights;
    for (const auto& mu : partitions_of(lambda.size())) {
        if (mu.rows() > m) continue;
        std::vector<int> content(mu.parts());
        int r = fp_rank(gram_matrix(lambda, content), pc.p);
        if (r != 0) weights[mu] = r;
    }
    CharacterElement ch = schur_from_weights(std::move(weights));
    // unitriangularity guard: leading coefficient 1, all other shapes dominated
    if (ch.coeff(lambda) != 1) throw std::logic_error("gram character: leading coefficient not 1");
    for (const auto& [nu, c] : ch.terms())
        if (!(nu == lambda) && !nu.dominated_by(lambda))
            throw std::logic_error("gram character: non-dominated term");
    memo[key] = ch;
    return {lambda, pc, ch};
}

struct DecompositionMatrix {
    PrimeChar prime;
    int degree;
    std::vector<Partition> labels;                  // rows and columns, enum order
    std::vector<std::vector<long long>> entries;    // entries[row][col]
};

// Multiplicities of simples in a character, by unitriangular peeling.
// Throws on characters outside the nonnegative span when `require_nonneg`.
inline std::map<Partition, long long> decompose_into_simples(const CharacterElement& a,
                                                             const PrimeChar& pc, int m = -1,
                                                             bool require_nonneg = true) {
    std::map<Partition, long long> out;
    CharacterElement rest = a;
    while (!rest.is_zero()) {
        // earliest term in enumeration order: within a degree that is the
        // lex-largest shape, which is dominance-maximal
        Partition lead = rest.terms().begin()->first;
        for (const auto& [l, c] : rest.terms())
            if (PartitionEnumOrder{}(l, lead)) lead = l;
        long long c = rest.coeff(lead);
        int mm = m >= lead.size() ? m : lead.size();
        rest -= gram_rank_character(lead, pc, mm).character.scaled(c);
        if (require_nonneg && c < 0)
            throw std::domain_error("decompose_into_simples: negative multiplicity at " + lead.str());
        out[lead] += c;
    }
    return out;
}

inline DecompositionMatrix decomposition_matrix(int d, const PrimeChar& pc) {
    DecompositionMatrix out{pc, d, partitions_of(d), {}};
    int n = static_cast<int>(out.labels.size());
    std::map<Partition, int> index;
    for (int i = 0; i < n; ++i) index[out.labels[i]] = i;
    out.entries.assign(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i) {
        auto mults = decompose_into_simples(CharacterElement::schur(out.labels[i]), pc, d);
        for (const auto& [mu, c] : mults) out.entries[i][index.at(mu)] = c;
    }
    return out;
}

struct SteinbergReport {
    bool ok = false;
    std::vector<Partition> layers;
    CharacterElement lhs;  // ch L_lambda by Gram ranks
    CharacterElement rhs;  // product of twisted layer characters
};

inline SteinbergReport verify_steinberg(const Partition& lambda, const PrimeChar& pc) {
    SteinbergReport rep;
    auto dec = steinberg_decompose(lambda, pc);
    for (const auto& l : dec.layers) rep.layers.push_back(l);
    rep.lhs = gram_rank_character(lambda, pc, std::max(1, lambda.size())).character;
    CharacterElement prod = CharacterElement::unit();
    for (std::size_t i = 0; i < dec.layers.size(); ++i) {
        const Partition& li = dec.layers[i];
        CharacterElement ch = gram_rank_character(li, pc, std::max(1, li.size())).character;
        if (i > 0) ch = frobenius_twist(ch, pc, static_cast<int>(i));
        prod = multiply(prod, ch);
    }
    rep.rhs = prod;
    rep.ok = rep.lhs == rep.rhs;
    return rep;
}

struct WedgeLengthReport {
    int n = 0;
    PrimeChar prime;
    std::vector<long long> lengths;       // lengths[i] = len(Lambda^i tensor V^{otimes n})
    std::optional<int> detected_period;   // smallest q repeating over the computed tail
};

// Lengths of Lambda^i tensor V^{otimes n} as sums of simple multiplicities.
inline WedgeLengthReport wedge_tensor_length_report(int n, int i_max, const PrimeChar& pc) {
    if (n > 2) throw std::invalid_argument("wedge report capped at n <= 2");
    WedgeLengthReport rep{n, pc, {}, std::nullopt};
    CharacterElement v_power = CharacterElement::unit();
    for (int j = 0; j < n; ++j) v_power = multiply(v_power, CharacterElement::schur(Partition{1}));
    for (int i = 0; i <= i_max; ++i) {
        std::vector<int> col(i, 1);
        auto ch = multiply(CharacterElement::schur(Partition(std::move(col))), v_power);
        long long len = 0;
        for (const auto& [mu, c] : decompose_into_simples(ch, pc)) len += c;
        rep.lengths.push_back(len);
    }
    // report-only periodicity scan over the second half of the table
    int sz = static_cast<int>(rep.lengths.size());
    for (int q = 1; q <= sz / 2 && !rep.detected_period; ++q) {
        bool ok = true;
        for (int i = sz / 2; i + q < sz; ++i)
            if (rep.lengths[i] != rep.lengths[i + q]) { ok = false; break; }
        if (ok) rep.detected_period = q;
    }
    return rep;
}

}  // namespace exmod
