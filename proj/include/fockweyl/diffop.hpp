#pragma once

#include <complex>
#include <map>

#include "fockweyl/multi_index.hpp"
#include "fockweyl/poly.hpp"

namespace fockweyl {

/// Normal-ordered differential operator with polynomial coefficients:
/// sum of c_{ab} x^a d^b with every multiplication left of every derivative.
/// The same algebra serves the classical Weyl operators on R^n (variables x,
/// derivatives d/dx) and the holomorphic operators on Fock space (variables z,
/// derivatives d/dz).
class DiffOp {
public:
    using Terms = std::map<TermKey, cplx, TermKeyLess>;

    DiffOp() = default;
    explicit DiffOp(std::size_t n) : n_(n) {}

    static DiffOp identity(std::size_t n) {
        DiffOp d(n);
        d.add_term(MultiIndex(n), MultiIndex(n), cplx(1.0, 0.0));
        return d;
    }

    /// c * x^a d^b, already normal ordered.
    static DiffOp monomial(const MultiIndex& a, const MultiIndex& b, cplx c) {
        if (a.size() != b.size()) throw dimension_mismatch("DiffOp: group size mismatch");
        DiffOp d(a.size());
        d.add_term(a, b, c);
        return d;
    }

    std::size_t dim() const { return n_; }
    const Terms& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    cplx coefficient(const MultiIndex& a, const MultiIndex& b) const {
        auto it = terms_.find(TermKey{a, b});
        return it == terms_.end() ? cplx(0.0, 0.0) : it->second;
    }

    void add_term(const MultiIndex& a, const MultiIndex& b, cplx c) {
        if (c == cplx(0.0, 0.0)) return;
        auto [it, inserted] = terms_.emplace(TermKey{a, b}, c);
        if (!inserted) {
            it->second += c;
            if (it->second == cplx(0.0, 0.0)) terms_.erase(it);
        }
    }

    DiffOp operator+(const DiffOp& o) const {
        check_dim(o);
        DiffOp r = *this;
        for (const auto& [key, c] : o.terms_) r.add_term(key.p, key.q, c);
        return r;
    }

    DiffOp operator-(const DiffOp& o) const {
        check_dim(o);
        DiffOp r = *this;
        for (const auto& [key, c] : o.terms_) r.add_term(key.p, key.q, -c);
        return r;
    }

    DiffOp operator*(cplx s) const {
        DiffOp r(n_);
        for (const auto& [key, c] : terms_) r.add_term(key.p, key.q, c * s);
        return r;
    }

    double max_coeff_distance(const DiffOp& o) const {
        check_dim(o);
        double m = 0.0;
        for (const auto& [key, c] : terms_) m = std::max(m, std::abs(c - o.coefficient(key.p, key.q)));
        for (const auto& [key, c] : o.terms_)
            if (terms_.find(key) == terms_.end()) m = std::max(m, std::abs(c));
        return m;
    }

private:
    void check_dim(const DiffOp& o) const {
        if (n_ != o.n_) throw dimension_mismatch("DiffOp: dimension mismatch");
    }
    std::size_t n_ = 0;
    Terms terms_;
};

/// Normal-ordered composition. Uses d^b x^a' = sum_k binom(b,k) a'!/(a'-k)! x^(a'-k) d^(b-k).
inline DiffOp diffop_compose(const DiffOp& d1, const DiffOp& d2) {
    if (d1.dim() != d2.dim()) throw dimension_mismatch("diffop_compose: dimension mismatch");
    std::size_t n = d1.dim();
    DiffOp r(n);
    for (const auto& [k1, c1] : d1.terms()) {
        for (const auto& [k2, c2] : d2.terms()) {
            // (x^a1 d^b1)(x^a2 d^b2): commute d^b1 past x^a2
            MultiIndex kmax(n);
            for (std::size_t i = 0; i < n; ++i) kmax[i] = std::min(k1.q[i], k2.p[i]);
            for_each_below(kmax, [&](const MultiIndex& k) {
                double coef = 1.0;
                for (std::size_t i = 0; i < n; ++i) {
                    coef *= factorial(k1.q[i]) /
                            (factorial(k[i]) * factorial(k1.q[i] - k[i]));
                    coef *= factorial(k2.p[i]) / factorial(k2.p[i] - k[i]);
                }
                r.add_term(k1.p + (k2.p - k), (k1.q - k) + k2.q, c1 * c2 * coef);
            });
        }
    }
    return r;
}

inline DiffOp diffop_commutator(const DiffOp& a, const DiffOp& b) {
    return diffop_compose(a, b) - diffop_compose(b, a);
}

/// Apply to a polynomial in the operator's own variables. The polynomial's first
/// group holds the variables acted on; its second group must be empty.
template <typename P>
P diffop_apply(const DiffOp& d, const P& f) {
    if (d.dim() != f.dim()) throw dimension_mismatch("diffop_apply: dimension mismatch");
    std::size_t n = d.dim();
    P r(n);
    for (const auto& [key, c] : d.terms()) {
        P g = f;
        for (std::size_t k = 0; k < n; ++k)
            if (key.q[k] > 0) g = g.derivative(k, key.q[k]);
        g = g * c;
        P xs = P::monomial(key.p, MultiIndex(n), cplx(1.0, 0.0));
        r = r + xs * g;
    }
    return r;
}

/// Classical Weyl quantization of a phase-space polynomial: for f = x^a y^s,
/// W(f)phi(x) = (i d/dy)^s [ (x + y/2)^a phi(x+y) ] at y=0, extended linearly.
inline DiffOp weyl_quantize_poly(const PolyXY& f) {
    std::size_t n = f.dim();
    DiffOp r(n);
    const cplx I(0.0, 1.0);
    for (const auto& [key, c] : f.terms()) {
        const MultiIndex& a = key.p;
        const MultiIndex& s = key.q;
        cplx is = c;
        for (int e = 0; e < s.degree(); ++e) is *= I;
        MultiIndex kmax(n);
        for (std::size_t i = 0; i < n; ++i) kmax[i] = std::min(a[i], s[i]);
        for_each_below(kmax, [&](const MultiIndex& k) {
            double coef = 1.0;
            for (std::size_t i = 0; i < n; ++i) {
                coef *= factorial(s[i]) / (factorial(k[i]) * factorial(s[i] - k[i]));
                coef *= factorial(a[i]) / factorial(a[i] - k[i]);
            }
            coef *= std::pow(0.5, k.degree());
            r.add_term(a - k, s - k, is * coef);
        });
    }
    return r;
}

} // namespace fockweyl
