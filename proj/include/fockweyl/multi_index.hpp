#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "fockweyl/errors.hpp"

namespace fockweyl {

/// Tuple of non-negative integer exponents indexing monomials and derivative orders.
class MultiIndex {
public:
    MultiIndex() = default;
    explicit MultiIndex(std::size_t n) : entries_(n, 0) {}
    MultiIndex(std::initializer_list<int> init) : entries_(init) {
        for (int e : entries_)
            if (e < 0) throw error("MultiIndex: negative exponent");
    }
    explicit MultiIndex(std::vector<int> entries) : entries_(std::move(entries)) {
        for (int e : entries_)
            if (e < 0) throw error("MultiIndex: negative exponent");
    }

    std::size_t size() const { return entries_.size(); }
    int operator[](std::size_t k) const { return entries_[k]; }
    int& operator[](std::size_t k) { return entries_[k]; }
    const std::vector<int>& entries() const { return entries_; }

    /// |p| = sum of entries.
    int degree() const { return std::accumulate(entries_.begin(), entries_.end(), 0); }

    bool operator==(const MultiIndex& o) const { return entries_ == o.entries_; }
    bool operator!=(const MultiIndex& o) const { return entries_ != o.entries_; }

    /// Componentwise p <= q.
    bool leq(const MultiIndex& q) const {
        if (size() != q.size()) throw dimension_mismatch("MultiIndex::leq: size mismatch");
        for (std::size_t k = 0; k < size(); ++k)
            if (entries_[k] > q.entries_[k]) return false;
        return true;
    }

    MultiIndex operator+(const MultiIndex& o) const {
        check_same_size(o);
        MultiIndex r(size());
        for (std::size_t k = 0; k < size(); ++k) r.entries_[k] = entries_[k] + o.entries_[k];
        return r;
    }

    /// Componentwise difference; requires o <= *this.
    MultiIndex operator-(const MultiIndex& o) const {
        check_same_size(o);
        MultiIndex r(size());
        for (std::size_t k = 0; k < size(); ++k) {
            r.entries_[k] = entries_[k] - o.entries_[k];
            if (r.entries_[k] < 0) throw error("MultiIndex: negative difference");
        }
        return r;
    }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t k = 0; k < size(); ++k) {
            if (k) s += ",";
            s += std::to_string(entries_[k]);
        }
        return s + ")";
    }

private:
    void check_same_size(const MultiIndex& o) const {
        if (size() != o.size()) throw dimension_mismatch("MultiIndex: size mismatch");
    }
    std::vector<int> entries_;
};

/// Graded lexicographic order: degree first, then entrywise lexicographic.
inline bool grlex_less(const MultiIndex& a, const MultiIndex& b) {
    int da = a.degree(), db = b.degree();
    if (da != db) return da < db;
    return std::lexicographical_compare(a.entries().begin(), a.entries().end(),
                                        b.entries().begin(), b.entries().end());
}

struct GrlexLess {
    bool operator()(const MultiIndex& a, const MultiIndex& b) const { return grlex_less(a, b); }
};

inline double factorial(int n) {
    double f = 1.0;
    for (int i = 2; i <= n; ++i) f *= i;
    return f;
}

/// p! = product of entry factorials.
inline double mi_factorial(const MultiIndex& p) {
    double f = 1.0;
    for (std::size_t k = 0; k < p.size(); ++k) f *= factorial(p[k]);
    return f;
}

/// (q choose p), defined for p <= q componentwise.
inline double mi_binomial(const MultiIndex& q, const MultiIndex& p) {
    if (!p.leq(q)) throw error("mi_binomial: p <= q required");
    double b = 1.0;
    for (std::size_t k = 0; k < p.size(); ++k)
        b *= factorial(q[k]) / (factorial(p[k]) * factorial(q[k] - p[k]));
    return b;
}

/// All multi-indices of length n with |p| <= degree, in graded lexicographic order.
inline std::vector<MultiIndex> multi_indices_up_to(std::size_t n, int degree) {
    std::vector<MultiIndex> out;
    MultiIndex cur(n);
    std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int remaining) {
        if (pos == n) {
            out.push_back(cur);
            return;
        }
        for (int e = 0; e <= remaining; ++e) {
            cur[pos] = e;
            rec(pos + 1, remaining - e);
        }
        cur[pos] = 0;
    };
    rec(0, degree);
    std::sort(out.begin(), out.end(), grlex_less);
    return out;
}

/// Iterate all r <= p componentwise (inclusive), calling f(r).
template <typename F>
void for_each_below(const MultiIndex& p, F&& f) {
    MultiIndex r(p.size());
    std::function<void(std::size_t)> rec = [&](std::size_t pos) {
        if (pos == p.size()) {
            f(r);
            return;
        }
        for (int e = 0; e <= p[pos]; ++e) {
            r[pos] = e;
            rec(pos + 1);
        }
        r[pos] = 0;
    };
    rec(0);
}

} // namespace fockweyl
