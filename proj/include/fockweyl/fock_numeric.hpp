#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "fockweyl/complex_matrix.hpp"
#include "fockweyl/gaussian.hpp"
#include "fockweyl/multi_index.hpp"
#include "fockweyl/poly.hpp"
#include "fockweyl/quadrature.hpp"

namespace fockweyl {

/// Truncated Fock basis: normalized monomials phi_p = z^p / ||z^p|| with
/// ||z^p||^2 = (2/lambda)^{|p|} p!, over all |p| <= degree in graded
/// lexicographic order.
struct FockBasisSpec {
    std::size_t n = 1;
    double lambda = 1.0;
    int degree = 0;

    std::vector<MultiIndex> basis() const { return multi_indices_up_to(n, degree); }

    double norm(const MultiIndex& p) const {
        return std::sqrt(std::pow(2.0 / lambda, p.degree()) * mi_factorial(p));
    }

    /// phi_p(z) = z^p / ||z^p||.
    cplx basis_value(const MultiIndex& p, const cvec& z) const {
        cplx m(1.0, 0.0);
        for (std::size_t k = 0; k < n; ++k)
            for (int e = 0; e < p[k]; ++e) m *= z[k];
        return m / norm(p);
    }
};

/// Coefficients of the coherent state e_z in the normalized basis:
/// <e_z, phi_p> = conj(phi_p(z)) = zbar^p / ||z^p||.
inline cvec coherent_coeffs(const cvec& z, const FockBasisSpec& spec) {
    auto basis = spec.basis();
    cvec out(basis.size());
    for (std::size_t i = 0; i < basis.size(); ++i)
        out[i] = std::conj(spec.basis_value(basis[i], z));
    return out;
}

/// Orthonormal Hermite functions on R^n matched to lambda: the 1-D factor is
/// h_j(x) = (lambda/pi)^{1/4} (2^j j!)^{-1/2} H_j(sqrt(lambda) x) e^{-lambda x^2/2},
/// so that the Bargmann transform maps h_p to phi_p with unit phase.
inline double hermite_function_1d(int j, double x, double lambda) {
    double xi = std::sqrt(lambda) * x;
    double h0 = std::pow(lambda / M_PI, 0.25) * std::exp(-0.5 * xi * xi);
    if (j == 0) return h0;
    double prev = h0;
    double cur = std::sqrt(2.0) * xi * h0;
    for (int k = 1; k < j; ++k) {
        double next = std::sqrt(2.0 / (k + 1.0)) * xi * cur - std::sqrt(k / (k + 1.0)) * prev;
        prev = cur;
        cur = next;
    }
    return cur;
}

inline double hermite_function(const MultiIndex& p, const rvec& x, double lambda) {
    double v = 1.0;
    for (std::size_t k = 0; k < p.size(); ++k) v *= hermite_function_1d(p[k], x[k], lambda);
    return v;
}

/// Truncated-basis matrix of an operator: entries <A phi_q, phi_p>.
struct FockMatrix {
    FockBasisSpec spec;
    std::vector<MultiIndex> basis;
    CMat entries;

    cplx trace() const { return entries.trace(); }
};

/// Exact compression of a Gaussian kernel: the kernel expands as
/// k(u,v) = sum K_pq u^p vbar^q and <A phi_q, phi_p> = ||z^p|| ||z^q|| K_pq,
/// with the Taylor coefficients extracted from the truncated exponential series.
inline FockMatrix kernel_to_matrix(const GaussianKernelOp& k, const FockBasisSpec& spec) {
    if (k.dim() != spec.n) throw dimension_mismatch("kernel_to_matrix: dimension mismatch");
    if (std::abs(k.lambda - spec.lambda) > 1e-14 * std::max(k.lambda, spec.lambda))
        throw error("kernel_to_matrix: lambda mismatch");
    std::size_t n = spec.n;
    PolyZ exponent(n);
    for (std::size_t i = 0; i < n; ++i) {
        MultiIndex ei(n);
        ei[i] = 1;
        exponent.add_term(ei, MultiIndex(n), k.a[i]);
        exponent.add_term(MultiIndex(n), ei, k.b[i]);
        for (std::size_t j = 0; j < n; ++j) {
            MultiIndex ej(n);
            ej[j] = 1;
            exponent.add_term(ei, ej, k.Q(i, j));
        }
    }
    PolyZ series = truncated_exp(exponent, 2 * spec.degree);
    FockMatrix fm;
    fm.spec = spec;
    fm.basis = spec.basis();
    std::size_t nb = fm.basis.size();
    fm.entries = CMat(nb, nb);
    for (std::size_t i = 0; i < nb; ++i)
        for (std::size_t j = 0; j < nb; ++j)
            fm.entries(i, j) =
                k.c * series.coefficient(fm.basis[i], fm.basis[j]) * spec.norm(fm.basis[i]) *
                spec.norm(fm.basis[j]);
    return fm;
}

/// Quadrature route for the same compression, used as an independent check:
/// (A phi_q)(z) by the inner integral, then projections on the outer grid.
inline FockMatrix kernel_to_matrix_quad(const std::function<cplx(const cvec&, const cvec&)>& kernel,
                                        const FockBasisSpec& spec, int order) {
    std::size_t n = spec.n;
    GaussHermiteRule rule(order);
    double scale = std::sqrt(2.0 / spec.lambda);
    // flatten the C^n grid
    std::vector<cvec> pts;
    rvec wts;
    {
        std::vector<int> idx(2 * n, 0);
        for (;;) {
            double wt = 1.0;
            cvec w(n);
            for (std::size_t a = 0; a < 2 * n; ++a) wt *= rule.weights[idx[a]];
            for (std::size_t k = 0; k < n; ++k)
                w[k] = cplx(scale * rule.nodes[idx[2 * k]], scale * rule.nodes[idx[2 * k + 1]]);
            pts.push_back(w);
            wts.push_back(wt);
            std::size_t a = 0;
            for (; a < 2 * n; ++a) {
                if (++idx[a] < order) break;
                idx[a] = 0;
            }
            if (a == 2 * n) break;
        }
    }
    double mu_norm = std::pow(M_PI, -static_cast<double>(n));
    FockMatrix fm;
    fm.spec = spec;
    fm.basis = spec.basis();
    std::size_t nb = fm.basis.size();
    std::size_t np = pts.size();
    // basis values on the grid
    CMat phi(np, nb);
    for (std::size_t j = 0; j < np; ++j)
        for (std::size_t b = 0; b < nb; ++b) phi(j, b) = spec.basis_value(fm.basis[b], pts[j]);
    // inner integrals (A phi_q)(z_j)
    CMat az(np, nb);
    for (std::size_t j = 0; j < np; ++j) {
        for (std::size_t i = 0; i < np; ++i) {
            cplx kv = kernel(pts[j], pts[i]) * (wts[i] * mu_norm);
            for (std::size_t b = 0; b < nb; ++b) az(j, b) += kv * phi(i, b);
        }
    }
    fm.entries = CMat(nb, nb);
    for (std::size_t p = 0; p < nb; ++p)
        for (std::size_t q = 0; q < nb; ++q) {
            cplx s(0.0, 0.0);
            for (std::size_t j = 0; j < np; ++j)
                s += std::conj(phi(j, p)) * az(j, q) * (wts[j] * mu_norm);
            fm.entries(p, q) = s;
        }
    return fm;
}

} // namespace fockweyl
