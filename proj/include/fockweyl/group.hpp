#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "fockweyl/complex_matrix.hpp"
#include "fockweyl/errors.hpp"

namespace fockweyl {

/// Model parameters of the generalized diamond group G = R^m x| H_n:
/// the weight forms alpha_k(t) = sum_j alpha[j][k] t_j, the character
/// direction beta (chi(t) = exp(i<beta,t>)) and the central parameter lambda.
struct WeightSystem {
    std::size_t n = 1;
    std::size_t m = 1;
    std::vector<std::vector<double>> alpha; // m rows, n columns
    std::vector<double> beta;               // length m
    double lambda = 1.0;

    WeightSystem() : alpha{{1.0}}, beta{0.0} {}
    WeightSystem(std::size_t n_, std::size_t m_, std::vector<std::vector<double>> alpha_,
                 std::vector<double> beta_, double lambda_)
        : n(n_), m(m_), alpha(std::move(alpha_)), beta(std::move(beta_)), lambda(lambda_) {
        validate();
    }

    void validate() const {
        if (n < 1 || m < 1) throw config_error("WeightSystem: n, m >= 1 required");
        if (lambda <= 0.0 || !std::isfinite(lambda))
            throw config_error("WeightSystem: lambda > 0 required");
        if (alpha.size() != m) throw config_error("WeightSystem: alpha must have m rows");
        for (const auto& row : alpha) {
            if (row.size() != n) throw config_error("WeightSystem: alpha rows must have n entries");
            for (double v : row)
                if (!std::isfinite(v)) throw config_error("WeightSystem: alpha must be finite");
        }
        if (beta.size() != m) throw config_error("WeightSystem: beta must have m entries");
    }

    /// alpha_k(t) for k = 0..n-1.
    double alpha_of(const std::vector<double>& t, std::size_t k) const {
        double s = 0.0;
        for (std::size_t j = 0; j < m; ++j) s += alpha[j][k] * t[j];
        return s;
    }

    std::vector<double> alphas(const std::vector<double>& t) const {
        std::vector<double> a(n);
        for (std::size_t k = 0; k < n; ++k) a[k] = alpha_of(t, k);
        return a;
    }

    /// chi(t) = exp(i<beta,t>).
    cplx chi(const std::vector<double>& t) const {
        double s = 0.0;
        for (std::size_t j = 0; j < m; ++j) s += beta[j] * t[j];
        return std::polar(1.0, s);
    }

    /// d chi(t) = i<beta,t>.
    cplx dchi(const std::vector<double>& t) const {
        double s = 0.0;
        for (std::size_t j = 0; j < m; ++j) s += beta[j] * t[j];
        return cplx(0.0, s);
    }

    /// Diagonal of A(t) = Diag(exp(i alpha_k(t))).
    cvec torus_diag(const std::vector<double>& t) const {
        cvec d(n);
        for (std::size_t k = 0; k < n; ++k) d[k] = std::polar(1.0, alpha_of(t, k));
        return d;
    }

    /// t . z = A(t) z.
    cvec torus_act(const std::vector<double>& t, const cvec& z) const {
        if (z.size() != n) throw dimension_mismatch("torus_act: dim(z) != n");
        cvec r(n);
        for (std::size_t k = 0; k < n; ++k) r[k] = std::polar(1.0, alpha_of(t, k)) * z[k];
        return r;
    }
};

/// Element (t, z0, c0) of G.
struct GroupElement {
    std::vector<double> t;
    cvec z0;
    double c0 = 0.0;

    static GroupElement identity(const WeightSystem& ws) {
        return GroupElement{std::vector<double>(ws.m, 0.0), cvec(ws.n, cplx(0.0, 0.0)), 0.0};
    }
};

/// Element (t, u, c) of the Lie algebra of G.
struct LieElement {
    std::vector<double> t;
    cvec u;
    double c = 0.0;

    static LieElement zero(const WeightSystem& ws) {
        return LieElement{std::vector<double>(ws.m, 0.0), cvec(ws.n, cplx(0.0, 0.0)), 0.0};
    }
};

/// Element (s, v, d) of the dual of the Lie algebra; the pairing with X = (t,u,c)
/// is <s,t> + omega((v,vbar),(u,ubar)) + c d.
struct Covector {
    std::vector<double> s;
    cvec v;
    double d = 0.0;
};

/// omega((z,zbar),(w,wbar)) = (i/2)(z.wbar - w.zbar) = -Im(z.wbar).
inline double symplectic_form(const cvec& z, const cvec& w) {
    if (z.size() != w.size()) throw dimension_mismatch("symplectic_form: size mismatch");
    cplx s(0.0, 0.0);
    for (std::size_t k = 0; k < z.size(); ++k) s += z[k] * std::conj(w[k]);
    return -s.imag();
}

/// Pairing <xi, X>.
inline double pairing(const Covector& xi, const LieElement& x) {
    double r = 0.0;
    for (std::size_t j = 0; j < xi.s.size(); ++j) r += xi.s[j] * x.t[j];
    r += symplectic_form(xi.v, x.u);
    r += xi.d * x.c;
    return r;
}

/// Group law (t,z,c)(t',z',c') = (t+t', z + t.z', c+c'+ omega((z,zbar),(t.z',...))/2).
inline GroupElement group_multiply(const GroupElement& g1, const GroupElement& g2,
                                   const WeightSystem& ws) {
    if (g1.t.size() != ws.m || g2.t.size() != ws.m || g1.z0.size() != ws.n ||
        g2.z0.size() != ws.n)
        throw dimension_mismatch("group_multiply: element dimensions do not match ws");
    GroupElement r;
    r.t.resize(ws.m);
    for (std::size_t j = 0; j < ws.m; ++j) r.t[j] = g1.t[j] + g2.t[j];
    cvec tz2 = ws.torus_act(g1.t, g2.z0);
    r.z0.resize(ws.n);
    for (std::size_t k = 0; k < ws.n; ++k) r.z0[k] = g1.z0[k] + tz2[k];
    r.c0 = g1.c0 + g2.c0 + 0.5 * symplectic_form(g1.z0, tz2);
    return r;
}

inline GroupElement group_inverse(const GroupElement& g, const WeightSystem& ws) {
    GroupElement r;
    r.t.resize(ws.m);
    for (std::size_t j = 0; j < ws.m; ++j) r.t[j] = -g.t[j];
    cvec minus_z = g.z0;
    for (auto& z : minus_z) z = -z;
    r.z0 = ws.torus_act(r.t, minus_z);
    r.c0 = -g.c0;
    return r;
}

/// Affine action (t,z0,c0) . z = t.z + z0.
inline cvec act_on_Cn(const GroupElement& g, const cvec& z, const WeightSystem& ws) {
    cvec r = ws.torus_act(g.t, z);
    for (std::size_t k = 0; k < ws.n; ++k) r[k] += g.z0[k];
    return r;
}

/// [(t,u,c),(t',u',c')] = (0, i(alpha(t)u' - alpha(t')u), omega((u,ubar),(u',ubar'))).
inline LieElement lie_bracket(const LieElement& x, const LieElement& y, const WeightSystem& ws) {
    LieElement r = LieElement::zero(ws);
    const cplx I(0.0, 1.0);
    for (std::size_t k = 0; k < ws.n; ++k)
        r.u[k] = I * (ws.alpha_of(x.t, k) * y.u[k] - ws.alpha_of(y.t, k) * x.u[k]);
    r.c = symplectic_form(x.u, y.u);
    return r;
}

namespace detail {

/// (exp(w)-1)/w with a series branch near 0; keeps full double precision across
/// the removable singularity.
inline cplx expm1_over(cplx w) {
    if (std::abs(w) < 0.1) {
        cplx sum(1.0, 0.0), term(1.0, 0.0);
        for (int k = 1; k <= 12; ++k) {
            term *= w / static_cast<double>(k + 1);
            sum += term;
        }
        return sum;
    }
    return (std::exp(w) - 1.0) / w;
}

/// (w - sin w)/w^3 for real w with a series branch near 0.
inline double one_minus_sinc3(double w) {
    if (std::abs(w) < 0.1) {
        double w2 = w * w;
        return 1.0 / 6.0 - w2 / 120.0 + w2 * w2 / 5040.0 - w2 * w2 * w2 / 362880.0;
    }
    return (w - std::sin(w)) / (w * w * w);
}

} // namespace detail

/// One-parameter subgroup exp(sX) = (s t, z(s), c(s)) with
/// z_k(s) = u_k (e^{i a_k s} - 1)/(i a_k), c(s) = s c + (1/2) sum |u_k|^2 (a_k s - sin a_k s)/a_k^2,
/// a_k = alpha_k(t). The removable singularities at a_k = 0 are resolved by series.
inline GroupElement group_exp(const LieElement& x, double s, const WeightSystem& ws) {
    GroupElement g;
    g.t.resize(ws.m);
    for (std::size_t j = 0; j < ws.m; ++j) g.t[j] = s * x.t[j];
    g.z0.resize(ws.n);
    double csum = s * x.c;
    for (std::size_t k = 0; k < ws.n; ++k) {
        double a = ws.alpha_of(x.t, k);
        cplx w(0.0, a * s);
        g.z0[k] = x.u[k] * s * detail::expm1_over(w);
        csum += 0.5 * std::norm(x.u[k]) * s * s * s * a * detail::one_minus_sinc3(a * s);
    }
    g.c0 = csum;
    return g;
}

/// Ad(g)X for g = (t0,z0,c0), X = (tau,u,c), differentiating the group law:
/// Ad(g)X = (tau, A(t0)u - i alpha(tau) z0,
///           c + Im((A(t0)u).conj(z0)) - (1/2) sum alpha_k(tau)|z0_k|^2).
inline LieElement adjoint(const GroupElement& g, const LieElement& x, const WeightSystem& ws) {
    LieElement r;
    r.t = x.t;
    r.u.resize(ws.n);
    const cplx I(0.0, 1.0);
    cvec au = ws.torus_act(g.t, x.u);
    cplx dot(0.0, 0.0);
    double quad = 0.0;
    for (std::size_t k = 0; k < ws.n; ++k) {
        double ak_tau = ws.alpha_of(x.t, k);
        r.u[k] = au[k] - I * ak_tau * g.z0[k];
        dot += au[k] * std::conj(g.z0[k]);
        quad += ak_tau * std::norm(g.z0[k]);
    }
    r.c = x.c + dot.imag() - 0.5 * quad;
    return r;
}

/// Ad*(g)xi, built from the exact duality <Ad*(g)xi, X> = <xi, Ad(g^{-1})X>
/// pairing against the standard basis of the Lie algebra.
inline Covector coadjoint(const GroupElement& g, const Covector& xi, const WeightSystem& ws) {
    GroupElement ginv = group_inverse(g, ws);
    auto pair_with = [&](const LieElement& e) { return pairing(xi, adjoint(ginv, e, ws)); };
    Covector r;
    r.s.resize(ws.m);
    for (std::size_t j = 0; j < ws.m; ++j) {
        LieElement e = LieElement::zero(ws);
        e.t[j] = 1.0;
        r.s[j] = pair_with(e);
    }
    r.v.resize(ws.n);
    for (std::size_t k = 0; k < ws.n; ++k) {
        LieElement er = LieElement::zero(ws);
        er.u[k] = cplx(1.0, 0.0);
        LieElement ei = LieElement::zero(ws);
        ei.u[k] = cplx(0.0, 1.0);
        // <xi,(0,e_k,0)> = -Im(v_k), <xi,(0,i e_k,0)> = Re(v_k)
        r.v[k] = cplx(pair_with(ei), -pair_with(er));
    }
    LieElement ec = LieElement::zero(ws);
    ec.c = 1.0;
    r.d = pair_with(ec);
    return r;
}

} // namespace fockweyl
