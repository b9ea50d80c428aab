#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "fockweyl/diffop.hpp"
#include "fockweyl/errors.hpp"
#include "fockweyl/group.hpp"
#include "fockweyl/poly.hpp"

namespace fockweyl {

/// l-th transvectant-type term of the Moyal expansion:
/// P^0(f,g) = fg, P^1 the Poisson bracket, and generally
/// P^l(f,g) = sum_{|gamma|+|delta|=l} l!/(gamma! delta!) (-1)^{|delta|}
///            (d_x^gamma d_y^delta f)(d_y^gamma d_x^delta g).
inline PolyXY moyal_Pl(const PolyXY& f, const PolyXY& g, int l) {
    if (f.dim() != g.dim()) throw dimension_mismatch("moyal_Pl: dimension mismatch");
    if (l < 0) throw error("moyal_Pl: l >= 0 required");
    std::size_t n = f.dim();
    if (l == 0) return f * g;
    PolyXY result(n);
    auto apply_orders = [&](const PolyXY& h, const MultiIndex& xo, const MultiIndex& yo) {
        PolyXY d = h;
        for (std::size_t k = 0; k < n; ++k) {
            if (xo[k] > 0) d = d.derivative(k, xo[k]);
            if (d.is_zero()) return d;
            if (yo[k] > 0) d = d.derivative(n + k, yo[k]);
            if (d.is_zero()) return d;
        }
        return d;
    };
    for (const MultiIndex& gamma : multi_indices_up_to(n, l)) {
        int rem = l - gamma.degree();
        for (const MultiIndex& delta : multi_indices_up_to(n, rem)) {
            if (delta.degree() != rem) continue;
            PolyXY df = apply_orders(f, gamma, delta);
            if (df.is_zero()) continue;
            PolyXY dg = apply_orders(g, delta, gamma);
            if (dg.is_zero()) continue;
            double coef = factorial(l) / (mi_factorial(gamma) * mi_factorial(delta));
            if (delta.degree() % 2 != 0) coef = -coef;
            result = result + PolyXY(df * dg) * cplx(coef, 0.0);
        }
    }
    return result;
}

/// Moyal product f *_M g = sum_l (1/l!)(-i/2)^l P^l(f,g); finite on polynomials.
inline PolyXY moyal(const PolyXY& f, const PolyXY& g) {
    int lmax = std::min(f.total_degree(), g.total_degree());
    PolyXY result(f.dim());
    cplx factor(1.0, 0.0);
    const cplx step(0.0, -0.5);
    for (int l = 0; l <= lmax; ++l) {
        result = result + moyal_Pl(f, g, l) * factor;
        factor *= step / static_cast<double>(l + 1);
    }
    return result;
}

/// f *_1 g = sum_l (1/l!)(-i/2 lambda)^l P^l(f,g), the product transported by W_1.
inline PolyXY star1(const PolyXY& f, const PolyXY& g, const WeightSystem& ws) {
    int lmax = std::min(f.total_degree(), g.total_degree());
    PolyXY result(f.dim());
    cplx factor(1.0, 0.0);
    const cplx step(0.0, -0.5 / ws.lambda);
    for (int l = 0; l <= lmax; ++l) {
        result = result + moyal_Pl(f, g, l) * factor;
        factor *= step / static_cast<double>(l + 1);
    }
    return result;
}

/// f *_0 g on C^n, the product transported by W_0: pull back along j(x,y) = x+iy,
/// apply *_1, push forward.
inline PolyZ star0(const PolyZ& f, const PolyZ& g, const WeightSystem& ws) {
    return polyxy_to_polyz(star1(polyz_to_polyxy(f), polyz_to_polyxy(g), ws));
}

/// Phase-space symbol of a normal-ordered operator: the inverse of
/// weyl_quantize_poly, by elimination from the top graded term.
inline PolyXY weyl_symbol_of_diffop(const DiffOp& d) {
    std::size_t n = d.dim();
    PolyXY symbol(n);
    DiffOp rest = d;
    const cplx I(0.0, 1.0);
    int guard = 0;
    while (!rest.is_zero()) {
        if (++guard > 100000) throw error("weyl_symbol_of_diffop: elimination failed");
        auto top = std::prev(rest.terms().end());
        const MultiIndex a = top->first.p;
        const MultiIndex b = top->first.q;
        cplx c = top->second;
        cplx is(1.0, 0.0);
        for (int e = 0; e < b.degree(); ++e) is *= I;
        PolyXY term = PolyXY::monomial(a, b, c / is);
        symbol = symbol + term;
        rest = rest - weyl_quantize_poly(term);
    }
    return symbol;
}

inline constexpr int kMaxStarExpOrder = 12;

/// Truncated power series in a formal parameter with polynomial coefficients.
template <typename P>
struct FormalSeries {
    std::vector<P> coefficients; // index = power of s
    int order() const { return static_cast<int>(coefficients.size()) - 1; }
};

/// exp_*(s P) = sum_k s^k P^{*k}/k! up to order K for any associative product.
template <typename P>
FormalSeries<P> star_exp_series(const P& p, int max_order,
                                const std::function<P(const P&, const P&)>& product) {
    if (max_order > kMaxStarExpOrder)
        throw order_too_large("star_exp_series: order above " + std::to_string(kMaxStarExpOrder));
    if (max_order < 0) throw error("star_exp_series: order >= 0 required");
    FormalSeries<P> series;
    series.coefficients.push_back(P::constant(p.dim(), cplx(1.0, 0.0)));
    P power = series.coefficients[0];
    for (int k = 1; k <= max_order; ++k) {
        power = product(power, p) * cplx(1.0 / k, 0.0);
        series.coefficients.push_back(power);
    }
    return series;
}

inline FormalSeries<PolyZ> star_exp_series_star0(const PolyZ& p, int max_order,
                                                 const WeightSystem& ws) {
    return star_exp_series<PolyZ>(
        p, max_order, [&ws](const PolyZ& a, const PolyZ& b) { return star0(a, b, ws); });
}

inline FormalSeries<PolyXY> star_exp_series_moyal(const PolyXY& p, int max_order) {
    return star_exp_series<PolyXY>(p, max_order,
                                   [](const PolyXY& a, const PolyXY& b) { return moyal(a, b); });
}

/// The admissible quadratic P(z) = i c0 + conj(a).z - a.zbar + i sum_k b_k |z_k|^2.
inline PolyZ star_exp_quadratic(const double c0, const cvec& a, const rvec& b, std::size_t n) {
    if (a.size() != n || b.size() != n) throw dimension_mismatch("star_exp_quadratic: dims");
    PolyZ p(n);
    p.add_term(MultiIndex(n), MultiIndex(n), cplx(0.0, c0));
    for (std::size_t k = 0; k < n; ++k) {
        MultiIndex zk(n), zbk(n);
        zk[k] = 1;
        zbk[k] = 1;
        p.add_term(zk, MultiIndex(n), std::conj(a[k]));
        p.add_term(MultiIndex(n), zbk, -a[k]);
        p.add_term(zk, zbk, cplx(0.0, b[k]));
    }
    return p;
}

/// Closed-form star exponential exp_{*0}(P)(z) for the quadratic above, all b_k != 0:
///   e^{i c0} prod_k cos(b_k/lambda)^{-1}
///   exp(i lambda sum |a_k|^2 (-1/(lambda b_k) + tan(b_k/lambda)/b_k^2))
///   exp(i lambda sum |z_k|^2 tan(b_k/lambda))
///   exp(lambda sum (1/b_k) tan(b_k/lambda)(z_k conj(a_k) - a_k conj(z_k))).
inline cplx star_exp_closed(double c0, const cvec& a, const rvec& b, const cvec& z,
                            const WeightSystem& ws) {
    std::size_t n = ws.n;
    if (a.size() != n || b.size() != n || z.size() != n)
        throw dimension_mismatch("star_exp_closed: dims");
    double l = ws.lambda;
    cplx e(0.0, c0);
    cplx value(1.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        if (b[k] == 0.0)
            throw degenerate_b("star_exp_closed: b_" + std::to_string(k + 1) +
                               " = 0, use the series instead");
        double cosv = std::cos(b[k] / l);
        if (std::abs(cosv) <= 1e-8)
            throw domain_error("star_exp_closed: cos(b_" + std::to_string(k + 1) +
                               "/lambda) vanishes");
        double tanv = std::tan(b[k] / l);
        value /= cosv;
        e += cplx(0.0, l * std::norm(a[k]) * (-1.0 / (l * b[k]) + tanv / (b[k] * b[k])));
        e += cplx(0.0, l * std::norm(z[k]) * tanv);
        e += (l / b[k]) * tanv * (z[k] * std::conj(a[k]) - a[k] * std::conj(z[k]));
    }
    return value * std::exp(e);
}

/// Closed Gaussian star identity e^{-sum u_k|z_k|^2} *0 e^{-sum v_k|z_k|^2}
///   = prod_k (1 + u_k v_k/lambda^2)^{-1} exp(-sum (u_k+v_k)/(1+u_k v_k/lambda^2)|z_k|^2).
struct GaussianStarProduct {
    cplx prefactor;
    cvec exponent; // coefficient of -|z_k|^2 per coordinate
};

inline GaussianStarProduct gaussian_star0(const cvec& u, const cvec& v, const WeightSystem& ws) {
    std::size_t n = ws.n;
    if (u.size() != n || v.size() != n) throw dimension_mismatch("gaussian_star0: dims");
    GaussianStarProduct r;
    r.prefactor = cplx(1.0, 0.0);
    r.exponent.resize(n);
    double l2 = ws.lambda * ws.lambda;
    for (std::size_t k = 0; k < n; ++k) {
        cplx denom = cplx(1.0, 0.0) + u[k] * v[k] / l2;
        if (std::abs(denom) <= 1e-10)
            throw singular_product("gaussian_star0: 1 + u_k v_k/lambda^2 vanishes at k = " +
                                   std::to_string(k + 1));
        r.prefactor /= denom;
        r.exponent[k] = (u[k] + v[k]) / denom;
    }
    return r;
}

} // namespace fockweyl
