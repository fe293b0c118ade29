#pragma once

// Partition arithmetic: conjugation, enumeration, p-restrictedness and the
// Steinberg (base-p) layer decomposition.

#include <algorithm>
#include <cassert>
#include <compare>
#include <cstdint>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace exmod {

class Partition {
public:
    Partition() = default;

    explicit Partition(std::vector<int> parts) : parts_(std::move(parts)) {
        // strip trailing zeros, then validate
        while (!parts_.empty() && parts_.back() == 0) parts_.pop_back();
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (parts_[i] <= 0) throw std::invalid_argument("partition parts must be positive");
            if (i + 1 < parts_.size() && parts_[i] < parts_[i + 1])
                throw std::invalid_argument("partition parts must be weakly decreasing");
        }
    }

    Partition(std::initializer_list<int> parts) : Partition(std::vector<int>(parts)) {}

    const std::vector<int>& parts() const { return parts_; }
    bool empty() const { return parts_.empty(); }
    int rows() const { return static_cast<int>(parts_.size()); }
    int part(int i) const { return i < rows() ? parts_[i] : 0; }

    int size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

    Partition conjugate() const {
        std::vector<int> out;
        if (!parts_.empty()) {
            out.resize(parts_[0], 0);
            for (int p : parts_)
                for (int j = 0; j < p; ++j) out[j]++;
        }
        return Partition(std::move(out));
    }

    // "[4,2]"; the empty partition prints as "[]"
    std::string str() const {
        std::ostringstream os;
        os << '[';
        for (std::size_t i = 0; i < parts_.size(); ++i) {
            if (i) os << ',';
            os << parts_[i];
        }
        os << ']';
        return os.str();
    }

    static Partition parse(const std::string& text) {
        std::string s = text;
        auto bad = [&] { throw std::invalid_argument("bad partition literal: " + text); };
        std::size_t a = s.find('['), b = s.rfind(']');
        if (a == std::string::npos || b == std::string::npos || b < a) bad();
        s = s.substr(a + 1, b - a - 1);
        std::vector<int> parts;
        std::istringstream is(s);
        std::string tok;
        while (std::getline(is, tok, ',')) {
            if (tok.find_first_not_of(" \t") == std::string::npos) continue;
            parts.push_back(std::stoi(tok));
        }
        return Partition(std::move(parts));
    }

    auto operator<=>(const Partition& o) const = default;

    // true iff this is dominated-or-equal by o (partial order; sizes must match)
    bool dominated_by(const Partition& o) const {
        if (size() != o.size()) return false;
        int a = 0, b = 0;
        int n = std::max(rows(), o.rows());
        for (int i = 0; i < n; ++i) {
            a += part(i);
            b += o.part(i);
            if (a > b) return false;
        }
        return true;
    }

private:
    std::vector<int> parts_;
};

// Total order refining dominance within each degree: by size, then
// lexicographically descending on parts ((3) before (2,1) before (1,1,1)).
struct PartitionEnumOrder {
    bool operator()(const Partition& a, const Partition& b) const {
        if (a.size() != b.size()) return a.size() < b.size();
        return a.parts() > b.parts();
    }
};

inline bool is_prime(int p) {
    if (p < 2) return false;
    for (int d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

struct PrimeChar {
    int p;
    explicit PrimeChar(int p_) : p(p_) {
        if (!is_prime(p)) throw std::invalid_argument("characteristic must be prime");
    }
};

inline bool is_p_restricted(const Partition& lambda, const PrimeChar& pc) {
    for (int i = 0; i < lambda.rows(); ++i)
        if (lambda.part(i) - lambda.part(i + 1) >= pc.p) return false;
    return true;
}

struct SteinbergDecomposition {
    std::vector<Partition> layers;  // lambda^0, lambda^1, ...; trailing empties stripped
    PrimeChar prime;

    Partition reconstruct() const {
        std::vector<int> acc;
        long long q = 1;
        for (const auto& layer : layers) {
            if (layer.rows() > static_cast<int>(acc.size())) acc.resize(layer.rows(), 0);
            for (int i = 0; i < layer.rows(); ++i) acc[i] += static_cast<int>(q) * layer.part(i);
            q *= prime.p;
        }
        return Partition(std::move(acc));
    }
};

// The p-restricted gaps of each layer are the base-p digits of the gaps of
// lambda, which pins the decomposition of Theorem-of-Steinberg type uniquely.
inline SteinbergDecomposition steinberg_decompose(const Partition& lambda, const PrimeChar& pc) {
    int rows = lambda.rows();
    std::vector<std::vector<int>> layer_gaps;  // layer_gaps[i][j] = gap j of layer i
    for (int j = 0; j < rows; ++j) {
        int gap = lambda.part(j) - lambda.part(j + 1);
        int i = 0;
        while (gap > 0) {
            if (static_cast<int>(layer_gaps.size()) <= i) layer_gaps.emplace_back(rows, 0);
            layer_gaps[i][j] = gap % pc.p;
            gap /= pc.p;
            ++i;
        }
    }
    SteinbergDecomposition out{{}, pc};
    for (auto& gaps : layer_gaps) {
        std::vector<int> parts(rows, 0);
        int suffix = 0;
        for (int j = rows - 1; j >= 0; --j) {
            suffix += gaps[j];
            parts[j] = suffix;
        }
        out.layers.emplace_back(std::move(parts));
    }
    while (!out.layers.empty() && out.layers.back().empty()) out.layers.pop_back();

    Partition check = out.reconstruct();
    if (check != lambda) throw std::logic_error("steinberg_decompose: reconstruction failed");
    for (const auto& layer : out.layers) assert(is_p_restricted(layer, pc));
    return out;
}

namespace detail {
inline void enumerate_partitions_of(int n, int max_part, std::vector<int>& cur,
                                    std::vector<Partition>& out) {
    if (n == 0) {
        out.emplace_back(cur);
        return;
    }
    for (int p = std::min(n, max_part); p >= 1; --p) {
        cur.push_back(p);
        enumerate_partitions_of(n - p, p, cur, out);
        cur.pop_back();
    }
}
}  // namespace detail

// All partitions of exactly n, lexicographically descending.
inline std::vector<Partition> partitions_of(int n) {
    std::vector<Partition> out;
    std::vector<int> cur;
    detail::enumerate_partitions_of(n, n, cur, out);
    return out;
}

// All partitions of size <= max_size, ordered by size then lex descending.
inline std::vector<Partition> enumerate_partitions(int max_size) {
    std::vector<Partition> out;
    for (int n = 0; n <= max_size; ++n) {
        auto block = partitions_of(n);
        out.insert(out.end(), block.begin(), block.end());
    }
    return out;
}

}  // namespace exmod
