#pragma once

// Kostka numbers via horizontal-strip chains, with a process-wide memo.
// K(lambda, mu) = number of semistandard tableaux of shape lambda and
// content mu; computed by peeling horizontal strips from the top entry down.

#include <map>
#include <vector>

#include "exmod/partition.hpp"

namespace exmod {

namespace detail {

// Enumerate all nu obtained from lambda by removing a horizontal strip of
// size s (nu_i in [lambda_{i+1}, lambda_i], total removed = s).
inline void strip_removals(const Partition& lambda, int s, std::vector<Partition>& out) {
    int rows = lambda.rows();
    std::vector<int> nu(rows, 0);
    // depth-first over rows
    auto rec = [&](auto&& self, int row, int left) -> void {
        if (row == rows) {
            if (left == 0) {
                std::vector<int> v(nu.begin(), nu.end());
                out.emplace_back(std::move(v));
            }
            return;
        }
        int lo = lambda.part(row + 1);
        int hi = lambda.part(row);
        for (int v = hi; v >= lo; --v) {
            int removed = hi - v;
            if (removed > left) break;
            nu[row] = v;
            self(self, row + 1, left - removed);
        }
    };
    rec(rec, 0, s);
}

}  // namespace detail

inline long long kostka(const Partition& lambda, const Partition& mu) {
    if (lambda.size() != mu.size()) return 0;
    if (lambda.empty()) return 1;
    if (!mu.dominated_by(lambda)) return 0;
    static std::map<std::pair<Partition, Partition>, long long> memo;
    auto key = std::make_pair(lambda, mu);
    auto it = memo.find(key);
    if (it != memo.end()) return it->second;

    // remove the strip of the largest entry (last part of mu)
    std::vector<int> rest(mu.parts().begin(), mu.parts().end() - 1);
    Partition mu_rest(std::move(rest));
    int s = mu.parts().back();
    std::vector<Partition> smaller;
    detail::strip_removals(lambda, s, smaller);
    long long total = 0;
    for (const auto& nu : smaller) total += kostka(nu, mu_rest);
    memo[key] = total;
    return total;
}

// Weight-multiplicity table of a single Schur function in `vars` variables,
// keyed by the sorted weight. Faithful whenever vars >= rows needed.
inline std::map<Partition, long long> schur_weights(const Partition& lambda, int vars) {
    std::map<Partition, long long> out;
    for (const auto& mu : partitions_of(lambda.size())) {
        if (mu.rows() > vars) continue;
        long long k = kostka(lambda, mu);
        if (k != 0) out[mu] = k;
    }
    return out;
}

// Expand a sorted-weight table into a full exponent-vector table over a
// fixed number of variables (all compositions in each S_n-orbit).
inline std::map<std::vector<int>, long long> expand_orbits(
    const std::map<Partition, long long>& weights, int vars) {
    std::map<std::vector<int>, long long> out;
    for (const auto& [mu, mult] : weights) {
        if (mu.rows() > vars) continue;
        std::vector<int> v(vars, 0);
        for (int i = 0; i < mu.rows(); ++i) v[i] = mu.part(i);
        std::sort(v.begin(), v.end());
        do {
            out[v] += mult;
        } while (std::next_permutation(v.begin(), v.end()));
    }
    return out;
}

}  // namespace exmod
