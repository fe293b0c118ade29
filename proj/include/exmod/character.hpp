#pragma once

// Formal characters of polynomial representations in the Schur basis:
// Littlewood-Richardson products, the Schur derivative, Frobenius twist,
// monomial expansion and limited plethysm.
//
// Characters are characteristic independent; the prime enters only through
// the Frobenius twist (variable substitution x -> x^{p^r}).

#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "exmod/kostka.hpp"
#include "exmod/partition.hpp"

namespace exmod {

class CharacterElement {
public:
    using Terms = std::map<Partition, long long>;

    CharacterElement() = default;

    static CharacterElement schur(const Partition& lambda, long long coeff = 1) {
        CharacterElement c;
        if (coeff != 0) c.terms_[lambda] = coeff;
        return c;
    }
    static CharacterElement unit() { return schur(Partition{}); }
    static CharacterElement zero() { return {}; }

    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    long long coeff(const Partition& lambda) const {
        auto it = terms_.find(lambda);
        return it == terms_.end() ? 0 : it->second;
    }

    void add_term(const Partition& lambda, long long c) {
        if (c == 0) return;
        auto it = terms_.find(lambda);
        if (it == terms_.end()) {
            terms_[lambda] = c;
        } else {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }

    CharacterElement& operator+=(const CharacterElement& o) {
        for (const auto& [l, c] : o.terms_) add_term(l, c);
        return *this;
    }
    CharacterElement& operator-=(const CharacterElement& o) {
        for (const auto& [l, c] : o.terms_) add_term(l, -c);
        return *this;
    }
    friend CharacterElement operator+(CharacterElement a, const CharacterElement& b) { return a += b; }
    friend CharacterElement operator-(CharacterElement a, const CharacterElement& b) { return a -= b; }
    friend bool operator==(const CharacterElement& a, const CharacterElement& b) {
        return a.terms_ == b.terms_;
    }

    CharacterElement scaled(long long s) const {
        CharacterElement out;
        if (s != 0)
            for (const auto& [l, c] : terms_) out.terms_[l] = c * s;
        return out;
    }

    int max_degree() const {
        int d = -1;
        for (const auto& [l, c] : terms_) d = std::max(d, l.size());
        return d;
    }

    // Homogeneous component of degree d.
    CharacterElement component(int d) const {
        CharacterElement out;
        for (const auto& [l, c] : terms_)
            if (l.size() == d) out.terms_[l] = c;
        return out;
    }

    std::vector<int> degrees() const {
        std::vector<int> ds;
        for (const auto& [l, c] : terms_)
            if (ds.empty() || ds.back() != l.size()) ds.push_back(l.size());
        std::sort(ds.begin(), ds.end());
        ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
        return ds;
    }

    // Text form "s[2,1] + 2*s[1,1,1]"; zero prints as "0".
    std::string str() const {
        if (terms_.empty()) return "0";
        // print by size, then lex descending
        std::vector<std::pair<Partition, long long>> items(terms_.begin(), terms_.end());
        std::sort(items.begin(), items.end(), [](const auto& a, const auto& b) {
            return PartitionEnumOrder{}(a.first, b.first);
        });
        std::ostringstream os;
        bool first = true;
        for (const auto& [l, c] : items) {
            if (first) {
                if (c < 0) os << "-";
                first = false;
            } else {
                os << (c < 0 ? " - " : " + ");
            }
            long long a = c < 0 ? -c : c;
            if (a != 1) os << a << "*";
            os << "s" << l.str();
        }
        return os.str();
    }

    static CharacterElement parse(const std::string& text);

private:
    Terms terms_;
};

namespace detail {

// c^lambda_{mu nu}: number of Littlewood-Richardson skew tableaux of shape
// lambda/mu and content nu (column-strict, row-weak, lattice reading word).
inline long long lr_coefficient(const Partition& lambda, const Partition& mu, const Partition& nu) {
    if (lambda.size() != mu.size() + nu.size()) return 0;
    int rows = lambda.rows();
    for (int i = 0; i < mu.rows(); ++i)
        if (mu.part(i) > lambda.part(i)) return 0;
    if (nu.empty()) return lambda == mu ? 1 : 0;
    int maxe = nu.rows();
    std::vector<std::vector<int>> fill(rows);
    for (int r = 0; r < rows; ++r) fill[r].assign(lambda.part(r), 0);
    std::vector<int> used(maxe + 1, 0);   // content so far
    std::vector<int> lattice(maxe + 2, 0);  // counts along the reverse reading word

    long long count = 0;
    // fill row by row; after completing a row, feed it (right to left) into
    // the lattice counter
    auto rec = [&](auto&& self, int r) -> void {
        if (r == rows) {
            ++count;
            return;
        }
        int lo = mu.part(r), hi = lambda.part(r);
        // choose entries for columns lo..hi-1, weakly increasing, column strict
        auto cell = [&](auto&& cself, int c) -> void {
            if (c == hi) {
                // lattice check for this row, right to left
                std::vector<int> snapshot(lattice);
                bool ok = true;
                for (int cc = hi - 1; cc >= lo; --cc) {
                    int e = fill[r][cc];
                    lattice[e]++;
                    if (e > 1 && lattice[e] > lattice[e - 1]) { ok = false; break; }
                }
                if (ok) self(self, r + 1);
                lattice = snapshot;
                return;
            }
            int emin = 1;
            if (c > lo) emin = std::max(emin, fill[r][c - 1]);          // row weak
            if (r > 0 && c < lambda.part(r - 1) && c >= mu.part(r - 1))  // column strict
                emin = std::max(emin, fill[r - 1][c] + 1);
            else if (r > 0 && c < mu.part(r - 1))
                ;  // above cell inside mu: no constraint
            for (int e = emin; e <= maxe; ++e) {
                if (used[e] >= nu.part(e - 1)) continue;
                fill[r][c] = e;
                used[e]++;
                cself(cself, c + 1);
                used[e]--;
            }
            fill[r][c] = 0;
        };
        cell(cell, lo);
    };
    rec(rec, 0);
    return count;
}

}  // namespace detail

// Product of two Schur functions, Schur-expanded via the LR rule.
inline CharacterElement schur_multiply(const Partition& mu, const Partition& nu) {
    static std::map<std::pair<Partition, Partition>, CharacterElement> memo;
    auto key = mu <= nu ? std::make_pair(mu, nu) : std::make_pair(nu, mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;
    CharacterElement out;
    for (const auto& lambda : partitions_of(mu.size() + nu.size())) {
        long long c = detail::lr_coefficient(lambda, key.first, key.second);
        if (c != 0) out.add_term(lambda, c);
    }
    memo[key] = out;
    return out;
}

inline CharacterElement multiply(const CharacterElement& a, const CharacterElement& b) {
    CharacterElement out;
    for (const auto& [la, ca] : a.terms())
        for (const auto& [lb, cb] : b.terms())
            out += schur_multiply(la, lb).scaled(ca * cb);
    return out;
}

// Sh(s_lambda) = sum of s_mu over corner-box removals; extended linearly.
inline CharacterElement schur_derivative(const CharacterElement& a) {
    CharacterElement out;
    for (const auto& [l, c] : a.terms()) {
        for (int i = 0; i < l.rows(); ++i) {
            if (l.part(i) > l.part(i + 1)) {
                std::vector<int> parts = l.parts();
                parts[i]--;
                out.add_term(Partition(std::move(parts)), c);
            }
        }
    }
    return out;
}

// Weight multiplicities (sorted representatives) in `vars` variables.
inline std::map<Partition, long long> monomial_expand(const CharacterElement& a, int vars) {
    std::map<Partition, long long> out;
    for (const auto& [l, c] : a.terms())
        for (const auto& [mu, k] : schur_weights(l, vars)) {
            out[mu] += c * k;
            if (out[mu] == 0) out.erase(mu);
        }
    return out;
}

// Inverse of monomial expansion by unitriangular back-substitution: at each
// step subtract the Schur function of the lex-largest surviving weight.
// Throws if a nonzero remainder is left (input not symmetric-in-Schur-span).
inline CharacterElement schur_from_weights(std::map<Partition, long long> weights) {
    CharacterElement out;
    std::map<int, std::map<Partition, long long>> by_degree;
    for (auto& [mu, m] : weights)
        if (m != 0) by_degree[mu.size()][mu] = m;
    for (auto& [d, table] : by_degree) {
        while (!table.empty()) {
            // lex-largest weight (refines dominance)
            auto lead = std::max_element(table.begin(), table.end(), [](const auto& x, const auto& y) {
                return x.first.parts() < y.first.parts();
            });
            Partition mu = lead->first;
            long long c = lead->second;
            out.add_term(mu, c);
            for (const auto& [nu, k] : schur_weights(mu, d)) {
                table[nu] -= c * k;
                if (table[nu] == 0) table.erase(nu);
            }
        }
    }
    return out;
}

// Substitute every variable by its p^r-th power: weights dilate by p^r.
inline CharacterElement frobenius_twist(const CharacterElement& a, const PrimeChar& pc, int r = 1) {
    long long q = 1;
    for (int i = 0; i < r; ++i) q *= pc.p;
    std::map<Partition, long long> dilated;
    for (int d : a.degrees()) {
        const CharacterElement comp = a.component(d);
        for (const auto& [mu, m] : monomial_expand(comp, d)) {
            std::vector<int> parts = mu.parts();
            for (int& x : parts) x *= static_cast<int>(q);
            dilated[Partition(std::move(parts))] += m;
        }
    }
    return schur_from_weights(std::move(dilated));
}

// True iff all weight multiplicities are nonnegative (checked at cap =
// degree of each component, which is faithful).
inline bool is_representation_character(const CharacterElement& a) {
    for (int d : a.degrees())
        for (const auto& [mu, m] : monomial_expand(a.component(d), d))
            if (m < 0) return false;
    return true;
}

// Plethysm f[g] computed through the monomial expansion of g in var_cap
// variables. Exact in total degree <= var_cap.
inline CharacterElement plethysm_compose(const CharacterElement& f, const CharacterElement& g,
                                         int var_cap) {
    if (!is_representation_character(g) || !is_representation_character(f))
        throw std::invalid_argument("plethysm requires representation characters");
    // monomial list of g with multiplicity
    std::vector<std::vector<int>> gmons;
    for (int d : g.degrees()) {
        for (const auto& [mon, mult] : expand_orbits(monomial_expand(g.component(d), var_cap), var_cap)) {
            for (long long i = 0; i < mult; ++i) gmons.push_back(mon);
        }
    }
    int n = static_cast<int>(gmons.size());
    std::map<std::vector<int>, long long> result_exponents;
    for (int d : f.degrees()) {
        for (const auto& [fmon, fmult] :
             expand_orbits(monomial_expand(f.component(d), n), n)) {
            std::vector<int> expo(var_cap, 0);
            for (int j = 0; j < n; ++j)
                for (int v = 0; v < var_cap; ++v) expo[v] += fmon[j] * gmons[j][v];
            result_exponents[expo] += fmult;
        }
    }
    // collapse to sorted representatives (one representative per orbit)
    std::map<Partition, long long> weights;
    for (const auto& [expo, mult] : result_exponents) {
        if (!std::is_sorted(expo.rbegin(), expo.rend())) continue;  // keep one per orbit
        std::vector<int> s(expo);
        while (!s.empty() && s.back() == 0) s.pop_back();
        weights[Partition(std::move(s))] = mult;
    }
    return schur_from_weights(std::move(weights));
}

inline CharacterElement CharacterElement::parse(const std::string& text) {
    // grammar: term (('+'|'-') term)*, term = [int '*'] 's' partition | int
    CharacterElement out;
    std::size_t i = 0;
    auto skip = [&] { while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i; };
    auto fail = [&] { throw std::invalid_argument("bad character expression: " + text); };
    skip();
    if (i == text.size()) fail();
    bool first = true;
    while (i < text.size()) {
        skip();
        long long sign = 1;
        if (text[i] == '+' || text[i] == '-') {
            sign = text[i] == '-' ? -1 : 1;
            ++i;
            skip();
        } else if (!first) {
            fail();
        }
        long long coeff = 1;
        if (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
            std::size_t j = i;
            while (j < text.size() && std::isdigit(static_cast<unsigned char>(text[j]))) ++j;
            coeff = std::stoll(text.substr(i, j - i));
            i = j;
            skip();
            if (i < text.size() && text[i] == '*') {
                ++i;
                skip();
            } else {
                // bare integer term: multiple of the unit
                out.add_term(Partition{}, sign * coeff);
                first = false;
                skip();
                continue;
            }
        }
        if (i >= text.size() || text[i] != 's') fail();
        ++i;
        std::size_t close = text.find(']', i);
        if (close == std::string::npos || i >= text.size() || text[i] != '[') fail();
        Partition l = Partition::parse(text.substr(i, close - i + 1));
        i = close + 1;
        out.add_term(l, sign * coeff);
        first = false;
        skip();
    }
    return out;
}

}  // namespace exmod
