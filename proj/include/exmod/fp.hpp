#pragma once

// Exact linear algebra over F_p: dense row reduction with deterministic
// pivoting (lowest row, then lowest column) and an incremental echelon span.

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace exmod {

struct Fp {
    int p;
    explicit Fp(int p_) : p(p_) {}
    int norm(long long x) const {
        long long r = x % p;
        return static_cast<int>(r < 0 ? r + p : r);
    }
    int add(int a, int b) const { return (a + b) % p; }
    int sub(int a, int b) const { return (a - b + p) % p; }
    int mul(int a, int b) const { return static_cast<int>((static_cast<long long>(a) * b) % p); }
    int neg(int a) const { return a == 0 ? 0 : p - a; }
    int inv(int a) const {
        // extended Euclid
        int t = 0, newt = 1, r = p, newr = a % p;
        while (newr != 0) {
            int q = r / newr;
            int tmp = t - q * newt; t = newt; newt = tmp;
            tmp = r - q * newr; r = newr; newr = tmp;
        }
        if (r != 1) throw std::domain_error("not invertible mod p");
        return t < 0 ? t + p : t;
    }
};

using FpVec = std::vector<int>;

// Row-echelon reduction of a dense matrix. Rows are modified in place;
// returns pivot column of each surviving row in order.
class FpMat {
public:
    FpMat(Fp f, int cols) : f_(f), cols_(cols) {}

    int cols() const { return cols_; }
    int rows() const { return static_cast<int>(rows_.size()); }
    const FpVec& row(int i) const { return rows_[i]; }

    void add_row(FpVec v) {
        if (static_cast<int>(v.size()) != cols_) throw std::invalid_argument("row size mismatch");
        rows_.push_back(std::move(v));
    }

    // In-place RREF. Pivot choice: scan columns left to right, take the
    // first unused row with a nonzero entry (lowest row index).
    void rref() {
        int r = 0;
        pivots_.clear();
        for (int c = 0; c < cols_ && r < rows(); ++c) {
            int sel = -1;
            for (int i = r; i < rows(); ++i)
                if (rows_[i][c] != 0) { sel = i; break; }
            if (sel < 0) continue;
            std::swap(rows_[r], rows_[sel]);
            int iv = f_.inv(rows_[r][c]);
            for (int j = c; j < cols_; ++j) rows_[r][j] = f_.mul(rows_[r][j], iv);
            for (int i = 0; i < rows(); ++i) {
                if (i == r || rows_[i][c] == 0) continue;
                int m = rows_[i][c];
                for (int j = c; j < cols_; ++j)
                    rows_[i][j] = f_.sub(rows_[i][j], f_.mul(m, rows_[r][j]));
            }
            pivots_.push_back(c);
            ++r;
        }
        rows_.resize(r);
    }

    int rank() {
        rref();
        return rows();
    }

    const std::vector<int>& pivots() const { return pivots_; }

    // Kernel basis of the matrix as a linear map (rows = equations is NOT the
    // convention here: we treat the stored rows as the matrix A, kernel of
    // x -> A x would need columns; instead this gives the null space of the
    // row-space pairing, i.e. vectors v with A v = 0 where A's rows are the
    // stored rows).
    std::vector<FpVec> kernel() {
        rref();
        std::vector<char> is_pivot(cols_, 0);
        for (int c : pivots_) is_pivot[c] = 1;
        std::vector<FpVec> out;
        for (int c = 0; c < cols_; ++c) {
            if (is_pivot[c]) continue;
            FpVec v(cols_, 0);
            v[c] = 1;
            for (int i = 0; i < rows(); ++i)
                v[pivots_[i]] = f_.neg(rows_[i][c]);
            out.push_back(std::move(v));
        }
        return out;
    }

private:
    Fp f_;
    int cols_;
    std::vector<FpVec> rows_;
    std::vector<int> pivots_;
};

// Incremental echelon basis for a subspace of F_p^n. Supports membership
// tests and reduction of vectors modulo the span.
class SpanSet {
public:
    SpanSet(Fp f, int dim) : f_(f), dim_(dim) {}

    int dim_ambient() const { return dim_; }
    int dim() const { return static_cast<int>(rows_.size()); }

    // Reduce v modulo the current span (leading entries normalized to 1).
    FpVec reduce(FpVec v) const {
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            int c = pivots_[i];
            if (v[c] != 0) {
                int m = v[c];
                const FpVec& r = rows_[i];
                for (int j = c; j < dim_; ++j) v[j] = f_.sub(v[j], f_.mul(m, r[j]));
            }
        }
        return v;
    }

    bool contains(const FpVec& v) const {
        FpVec r = reduce(v);
        for (int x : r)
            if (x != 0) return false;
        return true;
    }

    // Returns true if v enlarged the span.
    bool add(FpVec v) {
        v = reduce(std::move(v));
        int c = 0;
        while (c < dim_ && v[c] == 0) ++c;
        if (c == dim_) return false;
        int iv = f_.inv(v[c]);
        for (int j = c; j < dim_; ++j) v[j] = f_.mul(v[j], iv);
        // back-reduce existing rows for a unique reduced basis
        for (std::size_t i = 0; i < rows_.size(); ++i) {
            int m = rows_[i][c];
            if (m != 0)
                for (int j = c; j < dim_; ++j) rows_[i][j] = f_.sub(rows_[i][j], f_.mul(m, v[j]));
        }
        // keep rows sorted by pivot column
        std::size_t pos = 0;
        while (pos < pivots_.size() && pivots_[pos] < c) ++pos;
        rows_.insert(rows_.begin() + pos, std::move(v));
        pivots_.insert(pivots_.begin() + pos, c);
        return true;
    }

    const std::vector<FpVec>& rows() const { return rows_; }
    const std::vector<int>& pivots() const { return pivots_; }

private:
    Fp f_;
    int dim_;
    std::vector<FpVec> rows_;
    std::vector<int> pivots_;
};

}  // namespace exmod
