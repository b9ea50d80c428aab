#pragma once

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "fockweyl/multi_index.hpp"

namespace fockweyl {

using cplx = std::complex<double>;

/// Key of one sparse-polynomial term: exponents of the two variable groups.
/// For PolyZ the groups are (z, zbar); for PolyXY they are (x, y).
struct TermKey {
    MultiIndex p, q;
    bool operator==(const TermKey& o) const { return p == o.p && q == o.q; }
};

/// Canonical term order: total degree, then graded lexicographic on each group.
struct TermKeyLess {
    bool operator()(const TermKey& a, const TermKey& b) const {
        int da = a.p.degree() + a.q.degree();
        int db = b.p.degree() + b.q.degree();
        if (da != db) return da < db;
        if (a.p != b.p) return grlex_less(a.p, b.p);
        return grlex_less(a.q, b.q);
    }
};

namespace detail {
struct ZTag;
struct XYTag;
} // namespace detail

/// Sparse polynomial in two groups of n variables with complex coefficients.
/// Exact-zero terms are never stored; ring operations are pure.
template <typename Tag>
class SparsePoly {
public:
    using Terms = std::map<TermKey, cplx, TermKeyLess>;

    SparsePoly() = default;
    explicit SparsePoly(std::size_t n) : n_(n) {}

    static SparsePoly constant(std::size_t n, cplx c) {
        SparsePoly f(n);
        f.add_term(MultiIndex(n), MultiIndex(n), c);
        return f;
    }

    /// Monomial c * (group1)^p * (group2)^q.
    static SparsePoly monomial(const MultiIndex& p, const MultiIndex& q, cplx c) {
        if (p.size() != q.size()) throw dimension_mismatch("SparsePoly: group size mismatch");
        SparsePoly f(p.size());
        f.add_term(p, q, c);
        return f;
    }

    /// Single first-group variable (z_k resp. x_k).
    static SparsePoly var1(std::size_t n, std::size_t k) {
        MultiIndex p(n);
        p[k] = 1;
        return monomial(p, MultiIndex(n), cplx(1.0, 0.0));
    }

    /// Single second-group variable (zbar_k resp. y_k).
    static SparsePoly var2(std::size_t n, std::size_t k) {
        MultiIndex q(n);
        q[k] = 1;
        return monomial(MultiIndex(n), q, cplx(1.0, 0.0));
    }

    std::size_t dim() const { return n_; }
    const Terms& terms() const { return terms_; }
    std::size_t num_terms() const { return terms_.size(); }
    bool is_zero() const { return terms_.empty(); }

    int total_degree() const {
        int d = 0;
        for (const auto& [key, c] : terms_) d = std::max(d, key.p.degree() + key.q.degree());
        return d;
    }

    cplx coefficient(const MultiIndex& p, const MultiIndex& q) const {
        auto it = terms_.find(TermKey{p, q});
        return it == terms_.end() ? cplx(0.0, 0.0) : it->second;
    }

    void add_term(const MultiIndex& p, const MultiIndex& q, cplx c) {
        if (c == cplx(0.0, 0.0)) return;
        TermKey key{p, q};
        auto [it, inserted] = terms_.emplace(key, c);
        if (!inserted) {
            it->second += c;
            if (it->second == cplx(0.0, 0.0)) terms_.erase(it);
        }
    }

    SparsePoly operator+(const SparsePoly& o) const {
        check_dim(o);
        SparsePoly r = *this;
        for (const auto& [key, c] : o.terms_) r.add_term(key.p, key.q, c);
        return r;
    }

    SparsePoly operator-(const SparsePoly& o) const {
        check_dim(o);
        SparsePoly r = *this;
        for (const auto& [key, c] : o.terms_) r.add_term(key.p, key.q, -c);
        return r;
    }

    SparsePoly operator*(cplx s) const {
        SparsePoly r(n_);
        if (s == cplx(0.0, 0.0)) return r;
        for (const auto& [key, c] : terms_) r.terms_.emplace(key, c * s);
        return r;
    }

    SparsePoly operator*(const SparsePoly& o) const {
        check_dim(o);
        SparsePoly r(n_);
        for (const auto& [ka, ca] : terms_)
            for (const auto& [kb, cb] : o.terms_) r.add_term(ka.p + kb.p, ka.q + kb.q, ca * cb);
        return r;
    }

    /// Partial derivative: variable < n is in the first group, variable-n in the second.
    SparsePoly derivative(std::size_t variable, int order = 1) const {
        if (variable >= 2 * n_) throw error("SparsePoly::derivative: variable out of range");
        SparsePoly r = *this;
        for (int rep = 0; rep < order; ++rep) {
            SparsePoly next(n_);
            bool first = variable < n_;
            std::size_t k = first ? variable : variable - n_;
            for (const auto& [key, c] : r.terms_) {
                int e = first ? key.p[k] : key.q[k];
                if (e == 0) continue;
                MultiIndex p = key.p, q = key.q;
                if (first)
                    p[k] -= 1;
                else
                    q[k] -= 1;
                next.add_term(p, q, c * static_cast<double>(e));
            }
            r = next;
        }
        return r;
    }

    /// Max |difference of coefficients| against another polynomial.
    double max_coeff_distance(const SparsePoly& o) const {
        check_dim(o);
        double m = 0.0;
        for (const auto& [key, c] : terms_) m = std::max(m, std::abs(c - o.coefficient(key.p, key.q)));
        for (const auto& [key, c] : o.terms_)
            if (terms_.find(key) == terms_.end()) m = std::max(m, std::abs(c));
        return m;
    }

    /// Drop terms with |coefficient| <= tol. Display/test helper, not used by ring ops.
    SparsePoly pruned(double tol) const {
        SparsePoly r(n_);
        for (const auto& [key, c] : terms_)
            if (std::abs(c) > tol) r.terms_.emplace(key, c);
        return r;
    }

    /// Evaluate with the first group at v1 and the second group at v2.
    cplx evaluate_impl(const std::vector<cplx>& v1, const std::vector<cplx>& v2) const {
        if (v1.size() != n_ || v2.size() != n_)
            throw dimension_mismatch("SparsePoly::evaluate: point dimension mismatch");
        cplx sum(0.0, 0.0);
        for (const auto& [key, c] : terms_) {
            cplx m = c;
            for (std::size_t k = 0; k < n_; ++k) {
                for (int e = 0; e < key.p[k]; ++e) m *= v1[k];
                for (int e = 0; e < key.q[k]; ++e) m *= v2[k];
            }
            sum += m;
        }
        return sum;
    }

private:
    void check_dim(const SparsePoly& o) const {
        if (n_ != o.n_) throw dimension_mismatch("SparsePoly: dimension mismatch");
    }
    std::size_t n_ = 0;
    Terms terms_;
};

/// Polynomial in (z, zbar): sum of c_{pq} z^p zbar^q.
class PolyZ : public SparsePoly<detail::ZTag> {
public:
    using Base = SparsePoly<detail::ZTag>;
    PolyZ() = default;
    explicit PolyZ(std::size_t n) : Base(n) {}
    PolyZ(const Base& b) : Base(b) {}

    /// Evaluate at z, pairing the second group with conj(z).
    cplx evaluate(const std::vector<cplx>& z) const {
        std::vector<cplx> zb(z.size());
        for (std::size_t k = 0; k < z.size(); ++k) zb[k] = std::conj(z[k]);
        return evaluate_impl(z, zb);
    }

    /// Evaluate treating z and zbar as independent points (holomorphic extension).
    cplx evaluate_at(const std::vector<cplx>& z, const std::vector<cplx>& zbar) const {
        return evaluate_impl(z, zbar);
    }
};

/// Polynomial in phase-space variables (x, y) on R^n x R^n.
class PolyXY : public SparsePoly<detail::XYTag> {
public:
    using Base = SparsePoly<detail::XYTag>;
    PolyXY() = default;
    explicit PolyXY(std::size_t n) : Base(n) {}
    PolyXY(const Base& b) : Base(b) {}

    cplx evaluate(const std::vector<cplx>& x, const std::vector<cplx>& y) const {
        return evaluate_impl(x, y);
    }
    cplx evaluate(const std::vector<double>& x, const std::vector<double>& y) const {
        std::vector<cplx> cx(x.begin(), x.end()), cy(y.begin(), y.end());
        return evaluate_impl(cx, cy);
    }
};

/// Pullback along j(x,y) = x+iy: substitute z = x+iy, zbar = x-iy.
inline PolyXY polyz_to_polyxy(const PolyZ& f) {
    std::size_t n = f.dim();
    PolyXY r(n);
    const cplx I(0.0, 1.0);
    for (const auto& [key, c] : f.terms()) {
        PolyXY m = PolyXY::constant(n, c);
        for (std::size_t k = 0; k < n; ++k) {
            PolyXY zk = PolyXY::var1(n, k) + PolyXY::var2(n, k) * I;
            PolyXY zbk = PolyXY::var1(n, k) - PolyXY::var2(n, k) * I;
            for (int e = 0; e < key.p[k]; ++e) m = m * zk;
            for (int e = 0; e < key.q[k]; ++e) m = m * zbk;
        }
        r = r + m;
    }
    return r;
}

/// Inverse substitution x = (z+zbar)/2, y = (z-zbar)/(2i).
inline PolyZ polyxy_to_polyz(const PolyXY& f) {
    std::size_t n = f.dim();
    PolyZ r(n);
    const cplx half(0.5, 0.0);
    const cplx half_over_i(0.0, -0.5); // 1/(2i)
    for (const auto& [key, c] : f.terms()) {
        PolyZ m = PolyZ::constant(n, c);
        for (std::size_t k = 0; k < n; ++k) {
            PolyZ xk = (PolyZ::var1(n, k) + PolyZ::var2(n, k)) * half;
            PolyZ yk = (PolyZ::var1(n, k) - PolyZ::var2(n, k)) * half_over_i;
            for (int e = 0; e < key.p[k]; ++e) m = m * xk;
            for (int e = 0; e < key.q[k]; ++e) m = m * yk;
        }
        r = r + m;
    }
    return r;
}

/// Truncated exponential sum_{k} f^k / k! keeping total degree <= max_degree.
template <typename P>
P truncated_exp(const P& f, int max_degree) {
    std::size_t n = f.dim();
    auto truncate = [max_degree, n](const P& g) {
        P r(n);
        for (const auto& [key, c] : g.terms())
            if (key.p.degree() + key.q.degree() <= max_degree) r.add_term(key.p, key.q, c);
        return r;
    };
    P result = P::constant(n, cplx(1.0, 0.0));
    P power = P::constant(n, cplx(1.0, 0.0));
    // lowest total degree of f bounds the number of useful powers
    int min_deg = max_degree + 1;
    for (const auto& [key, c] : f.terms()) min_deg = std::min(min_deg, key.p.degree() + key.q.degree());
    if (f.is_zero()) return result;
    int kmax = (min_deg > 0) ? (max_degree / min_deg) : 64;
    double fact = 1.0;
    for (int k = 1; k <= kmax; ++k) {
        power = truncate(P(power * f));
        fact *= k;
        result = result + power * cplx(1.0 / fact, 0.0);
        if (power.is_zero()) break;
    }
    return result;
}

} // namespace fockweyl
