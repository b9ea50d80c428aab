#pragma once

#include <cmath>
#include <complex>
#include <string>

#include "fockweyl/diffop.hpp"
#include "fockweyl/gaussian.hpp"
#include "fockweyl/group.hpp"

namespace fockweyl {

inline constexpr double kDomainGuard = 1e-8;

/// Distance of x to the lattice a + b*Z.
inline double lattice_distance(double x, double offset, double period) {
    double r = std::remainder(x - offset, period);
    return std::abs(r);
}

/// pi(g) needs alpha_k(t) away from pi + 2 pi Z.
inline void check_weyl_admissible(const std::vector<double>& t, const WeightSystem& ws,
                                  const char* who) {
    for (std::size_t k = 0; k < ws.n; ++k) {
        if (lattice_distance(ws.alpha_of(t, k), M_PI, 2.0 * M_PI) <= kDomainGuard)
            throw domain_error(std::string(who) + ": alpha_" + std::to_string(k + 1) +
                               "(t) within guard of pi + 2 pi Z");
    }
}

/// The Mehler kernel needs alpha_k(t) away from pi Z.
inline void check_mehler_admissible(const std::vector<double>& t, const WeightSystem& ws,
                                    const char* who) {
    for (std::size_t k = 0; k < ws.n; ++k) {
        if (lattice_distance(ws.alpha_of(t, k), 0.0, M_PI) <= kDomainGuard)
            throw domain_error(std::string(who) + ": alpha_" + std::to_string(k + 1) +
                               "(t) within guard of pi Z");
    }
}

/// Kernel of rho_lambda(z0,c0): from rho_lambda(h) e_w = exp(i lambda c0
/// - (lambda/2) z0.wbar - (lambda/4)|z0|^2) e_{w+z0},
///   c = e^{i lambda c0 - lambda|z0|^2/4}, a = (lambda/2) conj(z0),
///   b = -(lambda/2) z0, Q = (lambda/2) I.
inline GaussianKernelOp rho_kernel(const cvec& z0, double c0, const WeightSystem& ws) {
    if (z0.size() != ws.n) throw dimension_mismatch("rho_kernel: dim(z0) != n");
    double l = ws.lambda;
    double n2 = 0.0;
    for (const auto& z : z0) n2 += std::norm(z);
    GaussianKernelOp k;
    k.lambda = l;
    k.c = std::exp(cplx(-0.25 * l * n2, l * c0));
    k.a.resize(ws.n);
    k.b.resize(ws.n);
    for (std::size_t j = 0; j < ws.n; ++j) {
        k.a[j] = 0.5 * l * std::conj(z0[j]);
        k.b[j] = -0.5 * l * z0[j];
    }
    k.Q = CMat::identity(ws.n, cplx(0.5 * l, 0.0));
    return k;
}

/// Kernel of sigma(t) f = chi(t) f(t^{-1}.z): diagonal
/// Q_kk = (lambda/2) e^{-i alpha_k(t)}, c = chi(t).
inline GaussianKernelOp sigma_kernel(const std::vector<double>& t, const WeightSystem& ws) {
    if (t.size() != ws.m) throw dimension_mismatch("sigma_kernel: dim(t) != m");
    GaussianKernelOp k;
    k.lambda = ws.lambda;
    k.c = ws.chi(t);
    k.a.assign(ws.n, cplx(0.0, 0.0));
    k.b.assign(ws.n, cplx(0.0, 0.0));
    k.Q = CMat(ws.n, ws.n);
    for (std::size_t j = 0; j < ws.n; ++j)
        k.Q(j, j) = 0.5 * ws.lambda * std::polar(1.0, -ws.alpha_of(t, j));
    return k;
}

/// Kernel of pi(g) = rho_lambda(h) sigma(t) for g = (t, z0, c0):
///   c = chi(t) e^{i lambda c0 - lambda|z0|^2/4}, a = (lambda/2) conj(z0),
///   b = -(lambda/2) A(t)^{-1} z0, Q = (lambda/2) A(t)^{-1}.
inline GaussianKernelOp pi_kernel(const GroupElement& g, const WeightSystem& ws) {
    double l = ws.lambda;
    double n2 = 0.0;
    for (const auto& z : g.z0) n2 += std::norm(z);
    GaussianKernelOp k;
    k.lambda = l;
    k.c = ws.chi(g.t) * std::exp(cplx(-0.25 * l * n2, l * g.c0));
    k.a.resize(ws.n);
    k.b.resize(ws.n);
    k.Q = CMat(ws.n, ws.n);
    for (std::size_t j = 0; j < ws.n; ++j) {
        cplx phase = std::polar(1.0, -ws.alpha_of(g.t, j));
        k.a[j] = 0.5 * l * std::conj(g.z0[j]);
        k.b[j] = -0.5 * l * phase * g.z0[j];
        k.Q(j, j) = 0.5 * l * phase;
    }
    return k;
}

/// Kernel of the quantizer Omega_0(z0) f(w) = 2^n exp(lambda(w.conj(z0) - |z0|^2)) f(2 z0 - w):
///   c = 2^n e^{-lambda|z0|^2}, a = lambda conj(z0), b = lambda z0, Q = -(lambda/2) I.
inline GaussianKernelOp omega0_kernel(const cvec& z0, const WeightSystem& ws) {
    if (z0.size() != ws.n) throw dimension_mismatch("omega0_kernel: dim(z0) != n");
    double l = ws.lambda;
    double n2 = 0.0;
    for (const auto& z : z0) n2 += std::norm(z);
    GaussianKernelOp k;
    k.lambda = l;
    k.c = std::pow(2.0, static_cast<double>(ws.n)) * std::exp(cplx(-l * n2, 0.0));
    k.a.resize(ws.n);
    k.b.resize(ws.n);
    for (std::size_t j = 0; j < ws.n; ++j) {
        k.a[j] = l * std::conj(z0[j]);
        k.b[j] = l * z0[j];
    }
    k.Q = CMat::identity(ws.n, cplx(-0.5 * l, 0.0));
    return k;
}

/// dpi(X) = d/ds pi(exp sX)|_0 as a holomorphic differential operator in z:
///   [dchi(t) + i lambda c + (lambda/2) conj(u).z] - sum_k (u_k + i alpha_k(t) z_k) d/dz_k.
inline DiffOp dpi_symbolic(const LieElement& x, const WeightSystem& ws) {
    std::size_t n = ws.n;
    DiffOp d(n);
    d.add_term(MultiIndex(n), MultiIndex(n), ws.dchi(x.t) + cplx(0.0, ws.lambda * x.c));
    const cplx I(0.0, 1.0);
    for (std::size_t k = 0; k < n; ++k) {
        MultiIndex zk(n), dk(n);
        zk[k] = 1;
        dk[k] = 1;
        d.add_term(zk, MultiIndex(n), 0.5 * ws.lambda * std::conj(x.u[k]));
        d.add_term(MultiIndex(n), dk, -x.u[k]);
        d.add_term(zk, dk, -I * ws.alpha_of(x.t, k));
    }
    return d;
}

} // namespace fockweyl
