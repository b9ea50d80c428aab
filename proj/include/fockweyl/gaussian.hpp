#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "fockweyl/complex_matrix.hpp"
#include "fockweyl/errors.hpp"

namespace fockweyl {

inline constexpr double kPosDefThreshold = 1e-12;
inline constexpr double kConditionBound = 1e12;

/// Result of integrating exp(-x^T Theta x + ell^T x) over R^d:
/// pi^{d/2} det(Theta)^{-1/2} exp( (1/4) ell^T Theta^{-1} ell ),
/// on the determinant branch continuous from positive definite matrices.
struct RealGaussianValue {
    cplx prefactor;  // pi^{d/2} det^{-1/2}
    CMat theta_inv;  // for callers that expand the quadratic form symbolically
};

/// Core engine. Theta complex symmetric; requires Re(Theta) positive definite,
/// or positive semidefinite with Theta invertible when allow_oscillatory is set
/// (Fresnel-type integrals, defined as improper limits).
inline RealGaussianValue real_gaussian_core(const CMat& theta, bool allow_oscillatory,
                                            const char* who) {
    std::size_t d = theta.rows();
    double scale = std::max(theta.max_abs(), 1e-30);
    double min_eig = min_real_symmetric_part_eigenvalue(theta);
    if (allow_oscillatory) {
        if (min_eig < -1e-10 * scale)
            throw not_integrable(std::string(who) + ": Re part not positive semidefinite");
    } else {
        if (min_eig < kPosDefThreshold)
            throw not_integrable(std::string(who) + ": Re part not positive definite");
    }
    double cond = 0.0;
    CMat inv;
    try {
        cond = condition_estimate(theta);
        lu_det(theta, &inv);
    } catch (const singular_m&) {
        throw singular_m(std::string(who) + ": quadratic form not invertible");
    }
    if (cond > kConditionBound) throw singular_m(std::string(who) + ": conditioning beyond 1e12");
    cplx sqrt_det = continuous_sqrt_det(theta);
    cplx pref = std::pow(M_PI, 0.5 * static_cast<double>(d)) / sqrt_det;
    return RealGaussianValue{pref, inv};
}

/// Integral over R^d of exp(-x^T Theta x + ell^T x) dx.
inline cplx real_gaussian_integral(const CMat& theta, const cvec& ell,
                                   bool allow_oscillatory = false) {
    auto core = real_gaussian_core(theta, allow_oscillatory, "real_gaussian_integral");
    cvec w = core.theta_inv * ell;
    cplx quad(0.0, 0.0);
    for (std::size_t i = 0; i < ell.size(); ++i) quad += ell[i] * w[i];
    return core.prefactor * std::exp(0.25 * quad);
}

/// Data of the complex Gaussian integral
///   int_{C^n} exp(-( w(Aw) + wbar(D wbar) + 2 wbar(B w) )) exp(u w + v wbar) dm(w).
/// A, D complex symmetric; Re(N) with N = U^T M U, M = [[A,B^t],[B,D]],
/// U = [[I,iI],[I,-iI]] must be positive definite.
struct GaussianIntegralSpec {
    CMat A, B, D;
    cvec u, v;

    std::size_t dim() const { return u.size(); }

    CMat block_m() const {
        std::size_t n = dim();
        CMat m(2 * n, 2 * n);
        CMat bt = B.transpose();
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j) {
                m(i, j) = A(i, j);
                m(i, n + j) = bt(i, j);
                m(n + i, j) = B(i, j);
                m(n + i, n + j) = D(i, j);
            }
        return m;
    }

    CMat block_n() const {
        std::size_t n = dim();
        CMat u_mat(2 * n, 2 * n);
        const cplx I(0.0, 1.0);
        for (std::size_t k = 0; k < n; ++k) {
            u_mat(k, k) = 1.0;
            u_mat(k, n + k) = I;
            u_mat(n + k, k) = 1.0;
            u_mat(n + k, n + k) = -I;
        }
        return u_mat.transpose() * block_m() * u_mat;
    }

    void validate() const {
        std::size_t n = dim();
        if (A.rows() != n || A.cols() != n || B.rows() != n || B.cols() != n ||
            D.rows() != n || D.cols() != n || v.size() != n)
            throw dimension_mismatch("GaussianIntegralSpec: inconsistent dimensions");
        if ((A - A.transpose()).max_abs() > 1e-12 * std::max(1.0, A.max_abs()) ||
            (D - D.transpose()).max_abs() > 1e-12 * std::max(1.0, D.max_abs()))
            throw error("GaussianIntegralSpec: A and D must be symmetric");
    }
};

/// Closed value of the lemma integral: pi^n Det(N)^{-1/2} exp((1/4)(u v) M^{-1} (u v)^T).
/// Writing w = x+iy turns the integrand into exp(-(x y) N (x y)^T + ell (x y)^T) with
/// ell = U^t (u; v), so the value is delegated to the real engine; the determinant
/// branch is the one continuous from positive definite N.
inline cplx gaussian_integral(const GaussianIntegralSpec& spec) {
    spec.validate();
    std::size_t n = spec.dim();
    CMat big_n = spec.block_n();
    cvec ell(2 * n);
    const cplx I(0.0, 1.0);
    for (std::size_t k = 0; k < n; ++k) {
        ell[k] = spec.u[k] + spec.v[k];
        ell[n + k] = I * (spec.u[k] - spec.v[k]);
    }
    return real_gaussian_integral(big_n, ell, false);
}

/// Integral kernel k(z,w) = c exp(a^T z + b^T wbar + z^T Q wbar) of an operator on
/// the Fock space F_lambda. The family is closed under composition, adjoint and
/// (when it exists) the diagonal-integral trace; the kernels of rho_lambda(h),
/// sigma(t), pi(g), Omega_0(z) and the coherent projectors all lie in it.
struct GaussianKernelOp {
    cplx c;
    cvec a, b;
    CMat Q;
    double lambda = 1.0;

    std::size_t dim() const { return a.size(); }

    static GaussianKernelOp identity(std::size_t n, double lambda) {
        return GaussianKernelOp{cplx(1.0, 0.0), cvec(n, cplx(0.0, 0.0)), cvec(n, cplx(0.0, 0.0)),
                                CMat::identity(n, cplx(0.5 * lambda, 0.0)), lambda};
    }

    /// Coherent-state projector |e_z0><e_z0| / <e_z0,e_z0>.
    static GaussianKernelOp coherent_projector(const cvec& z0, double lambda) {
        std::size_t n = z0.size();
        double n2 = 0.0;
        for (const auto& z : z0) n2 += std::norm(z);
        GaussianKernelOp k;
        k.lambda = lambda;
        k.c = std::exp(cplx(-0.5 * lambda * n2, 0.0));
        k.a.resize(n);
        k.b.resize(n);
        for (std::size_t j = 0; j < n; ++j) {
            k.a[j] = 0.5 * lambda * std::conj(z0[j]);
            k.b[j] = 0.5 * lambda * z0[j];
        }
        k.Q = CMat(n, n);
        return k;
    }

    void check_compatible(const GaussianKernelOp& o, const char* who) const {
        if (dim() != o.dim()) throw dimension_mismatch(std::string(who) + ": dimension mismatch");
        if (std::abs(lambda - o.lambda) > 1e-14 * std::max(lambda, o.lambda))
            throw error(std::string(who) + ": lambda mismatch");
    }
};

/// k(z,w) = c exp(a.z + b.wbar + z^T Q wbar).
inline cplx gk_evaluate(const GaussianKernelOp& k, const cvec& z, const cvec& w) {
    std::size_t n = k.dim();
    if (z.size() != n || w.size() != n) throw dimension_mismatch("gk_evaluate: point dimension");
    cplx e(0.0, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        e += k.a[i] * z[i] + k.b[i] * std::conj(w[i]);
        for (std::size_t j = 0; j < n; ++j) e += z[i] * k.Q(i, j) * std::conj(w[j]);
    }
    return k.c * std::exp(e);
}

/// Composition k12(z,w) = int k1(z,u) k2(u,w) e^{-lambda|u|^2/2} dmu_lambda(u).
/// The u-dependence is linear in (u, ubar), so the integral is always absolutely
/// convergent and the parameters are exact:
///   c12 = c1 c2 exp((2/lambda) a2.b1),  a12 = a1 + (2/lambda) Q1 a2,
///   b12 = b2 + (2/lambda) Q2^T b1,      Q12 = (2/lambda) Q1 Q2.
inline GaussianKernelOp gk_compose(const GaussianKernelOp& k1, const GaussianKernelOp& k2) {
    k1.check_compatible(k2, "gk_compose");
    std::size_t n = k1.dim();
    double two_over_lambda = 2.0 / k1.lambda;
    GaussianKernelOp r;
    r.lambda = k1.lambda;
    cplx dot(0.0, 0.0);
    for (std::size_t i = 0; i < n; ++i) dot += k2.a[i] * k1.b[i];
    r.c = k1.c * k2.c * std::exp(two_over_lambda * dot);
    cvec q1a2 = k1.Q * k2.a;
    cvec q2tb1 = k2.Q.transpose() * k1.b;
    r.a.resize(n);
    r.b.resize(n);
    for (std::size_t i = 0; i < n; ++i) {
        r.a[i] = k1.a[i] + two_over_lambda * q1a2[i];
        r.b[i] = k2.b[i] + two_over_lambda * q2tb1[i];
    }
    r.Q = (k1.Q * k2.Q) * cplx(two_over_lambda, 0.0);
    return r;
}

/// Adjoint kernel k*(z,w) = conj(k(w,z)): parameters (conj c, conj b, conj a, Q^dagger).
inline GaussianKernelOp gk_adjoint(const GaussianKernelOp& k) {
    GaussianKernelOp r;
    r.lambda = k.lambda;
    r.c = std::conj(k.c);
    r.a.resize(k.dim());
    r.b.resize(k.dim());
    for (std::size_t i = 0; i < k.dim(); ++i) {
        r.a[i] = std::conj(k.b[i]);
        r.b[i] = std::conj(k.a[i]);
    }
    r.Q = k.Q.adjoint();
    return r;
}

/// The Gaussian-integral spec of the diagonal trace integral
/// Tr k = int k(z,z) e^{-lambda|z|^2/2} dmu_lambda(z).
inline GaussianIntegralSpec gk_trace_spec(const GaussianKernelOp& k) {
    std::size_t n = k.dim();
    GaussianIntegralSpec spec;
    spec.A = CMat(n, n);
    spec.D = CMat(n, n);
    // z^T (Q - lambda/2 I) zbar = -2 zbar^T B z with B = (lambda/2 I - Q^T)/2
    spec.B = (CMat::identity(n, cplx(0.5 * k.lambda, 0.0)) - k.Q.transpose()) * cplx(0.5, 0.0);
    spec.u = k.a;
    spec.v = k.b;
    return spec;
}

/// Trace by the diagonal Gaussian integral; throws not_trace_class when it diverges.
inline cplx gk_trace(const GaussianKernelOp& k) {
    GaussianIntegralSpec spec = gk_trace_spec(k);
    cplx value;
    try {
        value = gaussian_integral(spec);
    } catch (const not_integrable& e) {
        throw not_trace_class(std::string("gk_trace: ") + e.what());
    } catch (const singular_m& e) {
        throw not_trace_class(std::string("gk_trace: ") + e.what());
    }
    double measure = std::pow(k.lambda / (2.0 * M_PI), static_cast<double>(k.dim()));
    return k.c * measure * value;
}

/// Hilbert-Schmidt inner product <k1,k2> = Tr(k1 k2*).
inline cplx gk_hs_inner(const GaussianKernelOp& k1, const GaussianKernelOp& k2) {
    return gk_trace(gk_compose(k1, gk_adjoint(k2)));
}

} // namespace fockweyl
