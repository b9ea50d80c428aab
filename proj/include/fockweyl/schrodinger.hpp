#pragma once

#include <cmath>
#include <complex>
#include <functional>

#include "fockweyl/gaussian.hpp"
#include "fockweyl/group.hpp"
#include "fockweyl/quadrature.hpp"
#include "fockweyl/representation.hpp"

namespace fockweyl {

/// Gaussian integral kernel on L^2(R^n):
///   K(x,y) = c exp(x^T P x + y^T R y + x^T S y + lx^T x + ly^T y),
/// P and R complex symmetric. Closed under composition by the real Gaussian
/// engine; oscillatory (Fresnel) compositions are taken as improper limits.
struct SchrodingerGaussianKernel {
    cplx c;
    CMat P, R, S;
    cvec lx, ly;
    double lambda = 1.0;

    std::size_t dim() const { return lx.size(); }

    cplx evaluate(const rvec& x, const rvec& y) const {
        std::size_t n = dim();
        cplx e(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            e += lx[i] * x[i] + ly[i] * y[i];
            for (std::size_t j = 0; j < n; ++j)
                e += x[i] * P(i, j) * x[j] + y[i] * R(i, j) * y[j] + x[i] * S(i, j) * y[j];
        }
        return c * std::exp(e);
    }
};

/// (K1 K2)(x,y) = int K1(x,u) K2(u,y) du, integrating out the u block.
inline SchrodingerGaussianKernel schro_compose(const SchrodingerGaussianKernel& k1,
                                               const SchrodingerGaussianKernel& k2) {
    if (k1.dim() != k2.dim()) throw dimension_mismatch("schro_compose: dimension mismatch");
    std::size_t n = k1.dim();
    CMat theta = (k1.R + k2.P) * cplx(-1.0, 0.0);
    auto core = real_gaussian_core(theta, /*allow_oscillatory=*/true, "schro_compose");
    CMat lx_mat = k1.S.transpose(); // coefficient of x in the u-linear term
    CMat ly_mat = k2.S;             // coefficient of y
    cvec ell0(n);
    for (std::size_t i = 0; i < n; ++i) ell0[i] = k1.ly[i] + k2.lx[i];

    CMat ti_lx = core.theta_inv * lx_mat;
    CMat ti_ly = core.theta_inv * ly_mat;
    cvec ti_l0 = core.theta_inv * ell0;

    SchrodingerGaussianKernel r;
    r.lambda = k1.lambda;
    r.P = k1.P + (lx_mat.transpose() * ti_lx) * cplx(0.25, 0.0);
    r.R = k2.R + (ly_mat.transpose() * ti_ly) * cplx(0.25, 0.0);
    r.S = (lx_mat.transpose() * ti_ly) * cplx(0.5, 0.0);
    r.lx.resize(n);
    r.ly.resize(n);
    cvec lx_l0 = lx_mat.transpose() * ti_l0;
    cvec ly_l0 = ly_mat.transpose() * ti_l0;
    for (std::size_t i = 0; i < n; ++i) {
        r.lx[i] = k1.lx[i] + 0.5 * lx_l0[i];
        r.ly[i] = k2.ly[i] + 0.5 * ly_l0[i];
    }
    cplx quad0(0.0, 0.0);
    for (std::size_t i = 0; i < n; ++i) quad0 += ell0[i] * ti_l0[i];
    r.c = k1.c * k2.c * core.prefactor * std::exp(0.25 * quad0);
    return r;
}

/// K*(x,y) = conj(K(y,x)).
inline SchrodingerGaussianKernel schro_adjoint(const SchrodingerGaussianKernel& k) {
    SchrodingerGaussianKernel r;
    r.lambda = k.lambda;
    r.c = std::conj(k.c);
    r.P = k.R.conj();
    r.R = k.P.conj();
    r.S = k.S.conj().transpose();
    r.lx.resize(k.dim());
    r.ly.resize(k.dim());
    for (std::size_t i = 0; i < k.dim(); ++i) {
        r.lx[i] = std::conj(k.ly[i]);
        r.ly[i] = std::conj(k.lx[i]);
    }
    return r;
}

/// (K phi)(x) = int K(x,y) phi(y) dy by quadrature.
inline cplx schro_apply(const SchrodingerGaussianKernel& k,
                        const std::function<cplx(const rvec&)>& phi, const rvec& x,
                        const QuadratureGrid& grid) {
    return grid.integrate_Rn(k.dim(), [&](const rvec& y) { return k.evaluate(x, y) * phi(y); });
}

/// Bargmann kernel B(z,x) = (lambda/pi)^{n/4} exp(-lambda z^2/4 + lambda z.x - lambda x^2/2)
/// (bilinear z^2 = sum z_k^2).
inline cplx bargmann_weight(const cvec& z, const rvec& x, const WeightSystem& ws) {
    double l = ws.lambda;
    cplx e(0.0, 0.0);
    for (std::size_t k = 0; k < ws.n; ++k)
        e += -0.25 * l * z[k] * z[k] + l * z[k] * x[k] - cplx(0.5 * l * x[k] * x[k], 0.0);
    return std::pow(l / M_PI, 0.25 * static_cast<double>(ws.n)) * std::exp(e);
}

/// (B phi)(z) by quadrature over R^n.
inline cplx bargmann_apply(const std::function<cplx(const rvec&)>& phi, const cvec& z,
                           const WeightSystem& ws, const QuadratureGrid& grid) {
    return grid.integrate_Rn(ws.n,
                             [&](const rvec& x) { return bargmann_weight(z, x, ws) * phi(x); });
}

/// (B^{-1} f)(x) by quadrature over C^n.
inline cplx bargmann_inverse(const std::function<cplx(const cvec&)>& f, const rvec& x,
                             const WeightSystem& ws, const QuadratureGrid& grid) {
    return grid.integrate_Cn(
        ws.n, [&](const cvec& z) { return std::conj(bargmann_weight(z, x, ws)) * f(z); });
}

/// Schroedinger representation (rho'_lambda(a+ib,c) phi)(x) = e^{i lambda (c - b.x + a.b/2)} phi(x-a).
inline cplx rho_prime_apply(const cvec& z0, double c0,
                            const std::function<cplx(const rvec&)>& phi, const rvec& x,
                            const WeightSystem& ws) {
    if (z0.size() != ws.n) throw dimension_mismatch("rho_prime_apply: dim(z0) != n");
    double phase = ws.lambda * c0;
    rvec shifted(ws.n);
    for (std::size_t k = 0; k < ws.n; ++k) {
        double a = z0[k].real(), b = z0[k].imag();
        phase += ws.lambda * (-b * x[k] + 0.5 * a * b);
        shifted[k] = x[k] - a;
    }
    return std::polar(1.0, phase) * phi(shifted);
}

/// (Omega_1(a,b) phi)(x) = 2^n exp(2 i lambda b.(a-x)) phi(2a - x).
inline cplx omega1_apply(const rvec& a, const rvec& b, const std::function<cplx(const rvec&)>& phi,
                         const rvec& x, const WeightSystem& ws) {
    double phase = 0.0;
    rvec reflected(ws.n);
    for (std::size_t k = 0; k < ws.n; ++k) {
        phase += 2.0 * ws.lambda * b[k] * (a[k] - x[k]);
        reflected[k] = 2.0 * a[k] - x[k];
    }
    return std::pow(2.0, static_cast<double>(ws.n)) * std::polar(1.0, phase) * phi(reflected);
}

/// Mehler-type kernel of sigma'(t) = B^{-1} sigma(t) B, for alpha_k(t) away from pi Z.
/// Built by integrating out z in int conj(B(z,x)) B(t^{-1}.z, y) e^{-lambda|z|^2/2} dmu(z):
/// the z-quadratic form has lemma blocks A = (lambda/4)A(t^{-1})^2, B = D = (lambda/4)I
/// and linear coefficients u = lambda A(t^{-1}) y, v = lambda x.
inline SchrodingerGaussianKernel mehler_kernel(const std::vector<double>& t,
                                               const WeightSystem& ws) {
    check_mehler_admissible(t, ws, "mehler_kernel");
    std::size_t n = ws.n;
    double l = ws.lambda;

    GaussianIntegralSpec spec;
    spec.A = CMat(n, n);
    spec.B = CMat::identity(n, cplx(0.25 * l, 0.0));
    spec.D = CMat::identity(n, cplx(0.25 * l, 0.0));
    for (std::size_t k = 0; k < n; ++k)
        spec.A(k, k) = 0.25 * l * std::polar(1.0, -2.0 * ws.alpha_of(t, k));
    spec.u = cvec(n, cplx(0.0, 0.0));
    spec.v = cvec(n, cplx(0.0, 0.0));

    CMat big_n = spec.block_n();
    auto core = real_gaussian_core(big_n, /*allow_oscillatory=*/false, "mehler_kernel");

    // (u; v) = L (x; y) and ell = U^t (u; v); quadratic form (1/4) W^T N^{-1} W
    CMat w_mat(2 * n, 2 * n);
    const cplx I(0.0, 1.0);
    for (std::size_t k = 0; k < n; ++k) {
        cplx uy = l * std::polar(1.0, -ws.alpha_of(t, k)); // u_k = lambda e^{-i alpha_k} y_k
        cplx vx = cplx(l, 0.0);                            // v_k = lambda x_k
        // ell = U^t (u; v): ell_k = u_k + v_k, ell_{n+k} = i(u_k - v_k)
        w_mat(k, n + k) += uy;
        w_mat(k, k) += vx;
        w_mat(n + k, n + k) += I * uy;
        w_mat(n + k, k) += -I * vx;
    }
    CMat z_form = (w_mat.transpose() * (core.theta_inv * w_mat)) * cplx(0.25, 0.0);

    SchrodingerGaussianKernel r;
    r.lambda = l;
    r.P = CMat(n, n);
    r.R = CMat(n, n);
    r.S = CMat(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            r.P(i, j) = z_form(i, j);
            r.R(i, j) = z_form(n + i, n + j);
            r.S(i, j) = z_form(i, n + j) + z_form(n + j, i);
        }
    for (std::size_t i = 0; i < n; ++i) {
        r.P(i, i) -= 0.5 * l;
        r.R(i, i) -= 0.5 * l;
    }
    r.lx.assign(n, cplx(0.0, 0.0));
    r.ly.assign(n, cplx(0.0, 0.0));
    // (lambda/pi)^{n/2} (lambda/2 pi)^n chi(t) * pi^n det(N)^{-1/2}
    r.c = std::pow(l / M_PI, 0.5 * static_cast<double>(n)) *
          std::pow(0.5 * l / M_PI, static_cast<double>(n)) * ws.chi(t) * core.prefactor;
    return r;
}

/// Kernel of pi'(g) = e^{i lambda (c - b.x + a.b/2)} b_t(x - a, y) for g = (t, a+ib, c).
inline SchrodingerGaussianKernel pi_prime_kernel(const GroupElement& g, const WeightSystem& ws) {
    SchrodingerGaussianKernel bt = mehler_kernel(g.t, ws);
    std::size_t n = ws.n;
    double l = ws.lambda;
    rvec a(n), b(n);
    for (std::size_t k = 0; k < n; ++k) {
        a[k] = g.z0[k].real();
        b[k] = g.z0[k].imag();
    }
    // shift x -> x - a and multiply the H_n phase
    SchrodingerGaussianKernel r = bt;
    cplx extra(0.0, 0.0);
    cvec pa(n, cplx(0.0, 0.0)), sta(n, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            pa[i] += bt.P(i, j) * a[j];
            sta[i] += bt.S(j, i) * a[j];
        }
    double ab = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        extra += a[i] * pa[i] - bt.lx[i] * a[i];
        ab += a[i] * b[i];
    }
    r.c = bt.c * std::exp(extra + cplx(0.0, l * (g.c0 + 0.5 * ab)));
    for (std::size_t i = 0; i < n; ++i) {
        r.lx[i] = bt.lx[i] - 2.0 * pa[i] + cplx(0.0, -l * b[i]);
        r.ly[i] = bt.ly[i] - sta[i];
    }
    return r;
}

} // namespace fockweyl
