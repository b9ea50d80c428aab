#pragma once

#include <cmath>

#include "fockweyl/correspondences.hpp"
#include "fockweyl/group.hpp"

namespace fockweyl {

/// The moment-type map psi: C^n -> g* with W_0(dpi(X))(z) = i <psi(z), X>:
///   psi(z) = (beta + (1/2) sum_k (1 - lambda|z_k|^2) alpha_k, -lambda z, lambda).
inline Covector psi_map(const cvec& z, const WeightSystem& ws) {
    if (z.size() != ws.n) throw dimension_mismatch("psi_map: dim(z) != n");
    Covector xi;
    xi.s.resize(ws.m);
    for (std::size_t j = 0; j < ws.m; ++j) {
        double s = ws.beta[j];
        for (std::size_t k = 0; k < ws.n; ++k)
            s += 0.5 * (1.0 - ws.lambda * std::norm(z[k])) * ws.alpha[j][k];
        xi.s[j] = s;
    }
    xi.v.resize(ws.n);
    for (std::size_t k = 0; k < ws.n; ++k) xi.v[k] = -ws.lambda * z[k];
    xi.d = ws.lambda;
    return xi;
}

/// Base point xi_0 = psi(0) = (beta + (1/2) sum_k alpha_k, 0, lambda).
inline Covector orbit_base_point(const WeightSystem& ws) {
    return psi_map(cvec(ws.n, cplx(0.0, 0.0)), ws);
}

/// Euclidean norm of the equivariance defect psi(g.z) - Ad*(g) psi(z)
/// in the (s, Re v, Im v, d) coordinates.
inline double psi_equivariance_check(const GroupElement& g, const cvec& z,
                                     const WeightSystem& ws) {
    Covector lhs = psi_map(act_on_Cn(g, z, ws), ws);
    Covector rhs = coadjoint(g, psi_map(z, ws), ws);
    double s2 = 0.0;
    for (std::size_t j = 0; j < ws.m; ++j) s2 += (lhs.s[j] - rhs.s[j]) * (lhs.s[j] - rhs.s[j]);
    for (std::size_t k = 0; k < ws.n; ++k) s2 += std::norm(lhs.v[k] - rhs.v[k]);
    s2 += (lhs.d - rhs.d) * (lhs.d - rhs.d);
    return std::sqrt(s2);
}

inline constexpr double kOrbitChartTolerance = 1e-8;

/// Inverse chart: xi on the orbit determines z = -v/lambda; the s and d slots are
/// consistency checks, not free coordinates.
inline cvec psi_inverse(const Covector& xi, const WeightSystem& ws) {
    if (xi.v.size() != ws.n || xi.s.size() != ws.m)
        throw dimension_mismatch("psi_inverse: covector dimensions");
    if (std::abs(xi.d - ws.lambda) > kOrbitChartTolerance)
        throw off_orbit("psi_inverse: d-component differs from lambda");
    cvec z(ws.n);
    for (std::size_t k = 0; k < ws.n; ++k) z[k] = -xi.v[k] / ws.lambda;
    Covector check = psi_map(z, ws);
    double resid = 0.0;
    for (std::size_t j = 0; j < ws.m; ++j) resid = std::max(resid, std::abs(check.s[j] - xi.s[j]));
    if (resid > kOrbitChartTolerance)
        throw off_orbit("psi_inverse: s-component inconsistent with the orbit chart");
    return z;
}

/// Pullback correspondence W_0'(A)(xi) = W_0(A)(psi^{-1}(xi)).
inline cplx w0_prime(const GaussianKernelOp& a, const Covector& xi, const WeightSystem& ws) {
    return weyl0_symbol_trace(a, psi_inverse(xi, ws), ws);
}

} // namespace fockweyl
