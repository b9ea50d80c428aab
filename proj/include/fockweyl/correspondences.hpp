#pragma once

#include <cmath>
#include <complex>
#include <functional>

#include "fockweyl/diffop.hpp"
#include "fockweyl/gaussian.hpp"
#include "fockweyl/group.hpp"
#include "fockweyl/poly.hpp"
#include "fockweyl/quadrature.hpp"
#include "fockweyl/representation.hpp"
#include "fockweyl/schrodinger.hpp"

namespace fockweyl {

/// Berezin symbol S(A)(z) = <A e_z, e_z>/<e_z,e_z> = k(z,z) e^{-lambda|z|^2/2}.
inline cplx berezin_symbol(const GaussianKernelOp& k, const cvec& z) {
    double n2 = 0.0;
    for (const auto& zk : z) n2 += std::norm(zk);
    return gk_evaluate(k, z, z) * std::exp(-0.5 * k.lambda * n2);
}

/// Double symbol s(A)(z,w) = <A e_w, e_z>/<e_w,e_z> = k(z,w) e^{-lambda z.wbar/2}.
inline cplx double_symbol(const GaussianKernelOp& k, const cvec& z, const cvec& w) {
    cplx dot(0.0, 0.0);
    for (std::size_t i = 0; i < z.size(); ++i) dot += z[i] * std::conj(w[i]);
    return gk_evaluate(k, z, w) * std::exp(-0.5 * k.lambda * dot);
}

/// W_0(A)(z) = Tr(A Omega_0(z)) computed exactly in the Gaussian-kernel algebra.
inline cplx weyl0_symbol_trace(const GaussianKernelOp& k, const cvec& z, const WeightSystem& ws) {
    return gk_trace(gk_compose(k, omega0_kernel(z, ws)));
}

/// W_0(A) as a closed Gaussian function of z. The quadratic form of the trace
/// integral of A Omega_0(z) does not depend on z, so the determinant factor is
/// evaluated once and each symbol value costs a few dot products:
///   W_0(A)(z) = K exp(zbar^T Phi z + r.z + s.zbar).
class Weyl0SymbolClosure {
public:
    Weyl0SymbolClosure(const GaussianKernelOp& k, const WeightSystem& ws) : n_(k.dim()) {
        double l = ws.lambda;
        GaussianKernelOp composed_shape = k;
        composed_shape.Q = k.Q * cplx(-1.0, 0.0); // Q12 = -Q independently of z
        GaussianIntegralSpec spec = gk_trace_spec(composed_shape);
        CMat big_n = spec.block_n();
        RealGaussianValue core;
        try {
            core = real_gaussian_core(big_n, false, "Weyl0SymbolClosure");
        } catch (const not_integrable& e) {
            throw not_trace_class(std::string("Weyl0SymbolClosure: ") + e.what());
        }
        // M = B^{-1} for the n x n trace form B = (lambda/2 I + Q^T)/2
        CMat b_mat = (CMat::identity(n_, cplx(0.5 * l, 0.0)) + k.Q.transpose()) * cplx(0.5, 0.0);
        CMat m = inverse(b_mat);
        CMat qt_m = k.Q.transpose() * m;
        phi_ = (qt_m - CMat::identity(n_)) * cplx(l, 0.0);
        r_ = m.transpose() * k.a;
        for (auto& v : r_) v *= 0.5 * l;
        cvec qtmb = qt_m * k.b;
        s_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i) s_[i] = 2.0 * k.b[i] - qtmb[i];
        cplx amb(0.0, 0.0);
        cvec mb = m * k.b;
        for (std::size_t i = 0; i < n_; ++i) amb += k.a[i] * mb[i];
        constant_ = k.c * std::pow(2.0, static_cast<double>(n_)) *
                    std::pow(l / (2.0 * M_PI), static_cast<double>(n_)) * core.prefactor *
                    std::exp(-0.5 * amb);
    }

    cplx operator()(const cvec& z) const {
        cplx e(0.0, 0.0);
        for (std::size_t i = 0; i < n_; ++i) {
            e += r_[i] * z[i] + s_[i] * std::conj(z[i]);
            for (std::size_t j = 0; j < n_; ++j) e += std::conj(z[i]) * phi_(i, j) * z[j];
        }
        return constant_ * std::exp(e);
    }

private:
    std::size_t n_;
    cplx constant_;
    CMat phi_;
    cvec r_, s_;
};

/// Integral form of W_0 for an arbitrary kernel function:
/// 2^n int k(z+w, z-w) exp((lambda/2)(-z.zbar - w.wbar + z.wbar - zbar.w)) dmu(w).
inline cplx weyl0_symbol_integral(const std::function<cplx(const cvec&, const cvec&)>& kernel,
                                  const cvec& z, const WeightSystem& ws,
                                  const QuadratureGrid& grid) {
    std::size_t n = ws.n;
    double l = ws.lambda;
    double z2 = 0.0;
    for (const auto& zk : z) z2 += std::norm(zk);
    double two_n = std::pow(2.0, static_cast<double>(n));
    return grid.integrate_Cn(n, [&](const cvec& w) {
        cvec zp(n), zm(n);
        cplx cross(0.0, 0.0);
        for (std::size_t i = 0; i < n; ++i) {
            zp[i] = z[i] + w[i];
            zm[i] = z[i] - w[i];
            cross += z[i] * std::conj(w[i]) - std::conj(z[i]) * w[i];
        }
        return two_n * kernel(zp, zm) * std::exp(0.5 * l * (cross - z2));
    });
}

/// Kernel function of A_pq = z^p (d/dz)^q: k(z,w) = z^p (lambda/2)^{|q|} wbar^q e^{lambda z.wbar/2}.
inline cplx apq_kernel_value(const MultiIndex& p, const MultiIndex& q, double lambda,
                             const cvec& z, const cvec& w) {
    cplx m = std::pow(0.5 * lambda, q.degree());
    cplx dot(0.0, 0.0);
    for (std::size_t k = 0; k < p.size(); ++k) {
        for (int e = 0; e < p[k]; ++e) m *= z[k];
        for (int e = 0; e < q[k]; ++e) m *= std::conj(w[k]);
        dot += z[k] * std::conj(w[k]);
    }
    return m * std::exp(0.5 * lambda * dot);
}

/// Closed form of W_0(A_pq) as a polynomial:
/// 2^{-|q|} sum_{k <= p,q} (-1)^{|k|} p! q! / (k! (p-k)! (q-k)!) lambda^{|q|-|k|} z^{p-k} zbar^{q-k}.
inline PolyZ weyl0_apq_poly(const MultiIndex& p, const MultiIndex& q, const WeightSystem& ws) {
    std::size_t n = p.size();
    if (q.size() != n || n != ws.n) throw dimension_mismatch("weyl0_apq_poly: dimensions");
    PolyZ f(n);
    MultiIndex kmax(n);
    for (std::size_t i = 0; i < n; ++i) kmax[i] = std::min(p[i], q[i]);
    double scale = std::pow(2.0, -q.degree());
    for_each_below(kmax, [&](const MultiIndex& k) {
        double coef = scale * ((k.degree() % 2 == 0) ? 1.0 : -1.0);
        coef *= mi_factorial(p) * mi_factorial(q) /
                (mi_factorial(k) * mi_factorial(p - k) * mi_factorial(q - k));
        coef *= std::pow(ws.lambda, q.degree() - k.degree());
        f.add_term(p - k, q - k, cplx(coef, 0.0));
    });
    return f;
}

inline cplx weyl0_apq_closed(const MultiIndex& p, const MultiIndex& q, const cvec& z,
                             const WeightSystem& ws) {
    return weyl0_apq_poly(p, q, ws).evaluate(z);
}

/// W_0 of a normal-ordered holomorphic differential operator, term by term.
inline PolyZ weyl0_of_diffop(const DiffOp& d, const WeightSystem& ws) {
    PolyZ f(d.dim());
    for (const auto& [key, c] : d.terms()) f = f + weyl0_apq_poly(key.p, key.q, ws) * c;
    return f;
}

/// Berezin symbol of a normal-ordered operator: z^a ((lambda/2) zbar)^b per term.
inline PolyZ berezin_of_diffop(const DiffOp& d, const WeightSystem& ws) {
    PolyZ f(d.dim());
    for (const auto& [key, c] : d.terms())
        f.add_term(key.p, key.q, c * std::pow(0.5 * ws.lambda, key.q.degree()));
    return f;
}

/// Berezin symbol of pi(g), closed form:
/// chi(t) e^{i lambda c0} exp((lambda/2) conj(z0).z + (lambda/2) zbar.(t^{-1}.(z-z0))
///                            - (lambda/2)|z|^2 - (lambda/4)|z0|^2).
inline cplx berezin_pi_closed(const GroupElement& g, const cvec& z, const WeightSystem& ws) {
    double l = ws.lambda;
    cplx e(0.0, l * g.c0);
    double z2 = 0.0, z02 = 0.0;
    for (std::size_t k = 0; k < ws.n; ++k) {
        cplx phase = std::polar(1.0, -ws.alpha_of(g.t, k));
        e += 0.5 * l * std::conj(g.z0[k]) * z[k];
        e += 0.5 * l * std::conj(z[k]) * phase * (z[k] - g.z0[k]);
        z2 += std::norm(z[k]);
        z02 += std::norm(g.z0[k]);
    }
    e -= cplx(0.5 * l * z2 + 0.25 * l * z02, 0.0);
    return ws.chi(g.t) * std::exp(e);
}

/// W_0(pi(g)) in determinant form, for alpha_k(t) outside pi + 2 pi Z:
/// 2^n chi(t) e^{i lambda c0} Det(I + A(t^{-1}))^{-1}
///   exp(-lambda (t^{-1}.z0).zbar - lambda|z|^2 - (lambda/4)|z0|^2)
///   exp((lambda/2) sum_k (1+e^{i alpha_k})^{-1} (e^{-i alpha_k} z0_k + 2 z_k) conj(...)).
inline cplx weyl0_pi_closed_det(const GroupElement& g, const cvec& z, const WeightSystem& ws) {
    check_weyl_admissible(g.t, ws, "weyl0_pi_closed");
    double l = ws.lambda;
    std::size_t n = ws.n;
    cplx det(1.0, 0.0);
    cplx e(0.0, l * g.c0);
    double z2 = 0.0, z02 = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        double a = ws.alpha_of(g.t, k);
        cplx inv_phase = std::polar(1.0, -a);
        det *= (cplx(1.0, 0.0) + inv_phase);
        cplx w = inv_phase * g.z0[k] + 2.0 * z[k];
        e += 0.5 * l * w * std::conj(w) / (cplx(1.0, 0.0) + std::polar(1.0, a));
        e -= l * inv_phase * g.z0[k] * std::conj(z[k]);
        z2 += std::norm(z[k]);
        z02 += std::norm(g.z0[k]);
    }
    e -= cplx(l * z2 + 0.25 * l * z02, 0.0);
    return std::pow(2.0, static_cast<double>(n)) * ws.chi(g.t) * std::exp(e) / det;
}

/// W_0(pi(g)) in per-coordinate factored form; agrees with the determinant form.
inline cplx weyl0_pi_closed_factored(const GroupElement& g, const cvec& z, const WeightSystem& ws) {
    check_weyl_admissible(g.t, ws, "weyl0_pi_closed");
    double l = ws.lambda;
    std::size_t n = ws.n;
    cplx value = std::pow(2.0, static_cast<double>(n)) * ws.chi(g.t) *
                 std::exp(cplx(0.0, l * g.c0));
    cplx e(0.0, 0.0);
    for (std::size_t k = 0; k < n; ++k) {
        double a = ws.alpha_of(g.t, k);
        value /= (cplx(1.0, 0.0) + std::polar(1.0, -a));
        cplx w = std::polar(1.0, -a) * g.z0[k] + 2.0 * z[k];
        e += 0.5 * l * std::norm(w) / (cplx(1.0, 0.0) + std::polar(1.0, a));
        e -= l * std::polar(1.0, -a) * g.z0[k] * std::conj(z[k]);
        e -= cplx(l * std::norm(z[k]) + 0.25 * l * std::norm(g.z0[k]), 0.0);
    }
    return value * std::exp(e);
}

/// W_0(d pi(X)) display as a polynomial in (z, zbar):
/// dchi(t) + i lambda c + (lambda/2)(conj(u).z - zbar.u) + (i/2) sum alpha_k(t)(1 - lambda|z_k|^2).
inline PolyZ weyl0_dpi_poly(const LieElement& x, const WeightSystem& ws) {
    std::size_t n = ws.n;
    PolyZ f(n);
    cplx c0 = ws.dchi(x.t) + cplx(0.0, ws.lambda * x.c);
    for (std::size_t k = 0; k < n; ++k) {
        double a = ws.alpha_of(x.t, k);
        c0 += cplx(0.0, 0.5 * a);
        MultiIndex zk(n), zbk(n);
        zk[k] = 1;
        zbk[k] = 1;
        f.add_term(zk, MultiIndex(n), 0.5 * ws.lambda * std::conj(x.u[k]));
        f.add_term(MultiIndex(n), zbk, -0.5 * ws.lambda * x.u[k]);
        f.add_term(zk, zbk, cplx(0.0, -0.5 * a * ws.lambda));
    }
    f.add_term(MultiIndex(n), MultiIndex(n), c0);
    return f;
}

inline cplx weyl0_dpi(const LieElement& x, const cvec& z, const WeightSystem& ws) {
    return weyl0_dpi_poly(x, ws).evaluate(z);
}

/// S(d pi(X)) display as a polynomial:
/// dchi(t) + i lambda c + (lambda/2)(conj(u).z - zbar.u) - (i lambda/2) zbar.(alpha(t) z).
inline PolyZ berezin_dpi_poly(const LieElement& x, const WeightSystem& ws) {
    std::size_t n = ws.n;
    PolyZ f(n);
    f.add_term(MultiIndex(n), MultiIndex(n), ws.dchi(x.t) + cplx(0.0, ws.lambda * x.c));
    for (std::size_t k = 0; k < n; ++k) {
        double a = ws.alpha_of(x.t, k);
        MultiIndex zk(n), zbk(n);
        zk[k] = 1;
        zbk[k] = 1;
        f.add_term(zk, MultiIndex(n), 0.5 * ws.lambda * std::conj(x.u[k]));
        f.add_term(MultiIndex(n), zbk, -0.5 * ws.lambda * x.u[k]);
        f.add_term(zk, zbk, cplx(0.0, -0.5 * a * ws.lambda));
    }
    return f;
}

inline cplx berezin_dpi(const LieElement& x, const cvec& z, const WeightSystem& ws) {
    return berezin_dpi_poly(x, ws).evaluate(z);
}

/// Transport a classical Weyl operator to the Fock side through the Bargmann
/// transform: x_k -> z_k/2 + (1/lambda) d_k, d/dx_k -> d_k - (lambda/2) z_k.
inline DiffOp weyl_op_to_fock(const DiffOp& d, const WeightSystem& ws) {
    std::size_t n = d.dim();
    if (n != ws.n) throw dimension_mismatch("weyl_op_to_fock: dimension mismatch");
    std::vector<DiffOp> x_img, d_img;
    for (std::size_t k = 0; k < n; ++k) {
        MultiIndex zk(n), dk(n);
        zk[k] = 1;
        dk[k] = 1;
        DiffOp xi(n);
        xi.add_term(zk, MultiIndex(n), cplx(0.5, 0.0));
        xi.add_term(MultiIndex(n), dk, cplx(1.0 / ws.lambda, 0.0));
        x_img.push_back(xi);
        DiffOp di(n);
        di.add_term(MultiIndex(n), dk, cplx(1.0, 0.0));
        di.add_term(zk, MultiIndex(n), cplx(-0.5 * ws.lambda, 0.0));
        d_img.push_back(di);
    }
    DiffOp out(n);
    for (const auto& [key, c] : d.terms()) {
        DiffOp term = DiffOp::identity(n) * c;
        for (std::size_t k = 0; k < n; ++k)
            for (int e = 0; e < key.p[k]; ++e) term = diffop_compose(term, x_img[k]);
        for (std::size_t k = 0; k < n; ++k)
            for (int e = 0; e < key.q[k]; ++e) term = diffop_compose(term, d_img[k]);
        out = out + term;
    }
    return out;
}

/// W_1(W(f)) as a phase-space polynomial, computed through the Fock side:
/// W_1(A)(x,y) = W_0(B A B^{-1})(x+iy).
inline PolyXY weyl1_of_weyl_quantized(const PolyXY& f, const WeightSystem& ws) {
    DiffOp wf = weyl_quantize_poly(f);
    DiffOp fock_side = weyl_op_to_fock(wf, ws);
    PolyZ w0 = weyl0_of_diffop(fock_side, ws);
    return polyz_to_polyxy(w0);
}

/// Direct Schroedinger-side trace W_1(A)(x,y) = Tr(A Omega_1(x,y))
///   = 2^n int K(2x-u, u) exp(2 i lambda y.(x-u)) du.
inline cplx weyl1_direct(const SchrodingerGaussianKernel& k, const rvec& x, const rvec& y,
                         const WeightSystem& ws) {
    std::size_t n = k.dim();
    double l = ws.lambda;
    // exponent of K(2x-u,u) in u: u^T (P + R - sym(S)) u + linear
    CMat sym_s = (k.S + k.S.transpose()) * cplx(0.5, 0.0);
    CMat theta = (k.P + k.R - sym_s) * cplx(-1.0, 0.0);
    cvec ell(n, cplx(0.0, 0.0));
    cplx constant(0.0, 0.0);
    cvec px(n, cplx(0.0, 0.0)), stx(n, cplx(0.0, 0.0));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) {
            px[i] += k.P(i, j) * x[j];
            stx[i] += k.S(j, i) * x[j];
        }
    for (std::size_t i = 0; i < n; ++i) {
        ell[i] = -4.0 * px[i] + 2.0 * stx[i] - k.lx[i] + k.ly[i] + cplx(0.0, -2.0 * l * y[i]);
        constant += 4.0 * x[i] * px[i] + 2.0 * k.lx[i] * x[i] + cplx(0.0, 2.0 * l * x[i] * y[i]);
    }
    cplx integral = real_gaussian_integral(theta, ell, /*allow_oscillatory=*/true);
    return std::pow(2.0, static_cast<double>(n)) * k.c * std::exp(constant) * integral;
}

/// Max residuals of the four Stratonovich-Weyl axioms over the supplied samples.
struct SwAxiomsReport {
    double unit = 0.0;       // Tr Omega_0(z) = 1
    double reality = 0.0;    // W(A*) = conj(W(A))
    double covariance_berezin = 0.0;
    double covariance_weyl0 = 0.0;
    double traciality = 0.0; // int W(A) W(B) dmu = Tr(AB)
    std::size_t samples = 0;
};

inline SwAxiomsReport sw_axioms_check(const std::vector<GaussianKernelOp>& ops,
                                      const std::vector<GroupElement>& gs,
                                      const std::vector<cvec>& zs, const WeightSystem& ws,
                                      const QuadratureGrid& grid) {
    SwAxiomsReport rep;
    rep.samples = zs.size();
    for (const cvec& z : zs)
        rep.unit = std::max(rep.unit,
                            std::abs(gk_trace(omega0_kernel(z, ws)) - cplx(1.0, 0.0)));
    for (const auto& a : ops) {
        for (const cvec& z : zs) {
            cplx w_star = weyl0_symbol_trace(gk_adjoint(a), z, ws);
            cplx w = weyl0_symbol_trace(a, z, ws);
            rep.reality = std::max(rep.reality, std::abs(w_star - std::conj(w)));
        }
    }
    for (const auto& g : gs) {
        GaussianKernelOp pig = pi_kernel(g, ws);
        GaussianKernelOp pig_inv = pi_kernel(group_inverse(g, ws), ws);
        for (const auto& a : ops) {
            GaussianKernelOp conj_a = gk_compose(gk_compose(pig_inv, a), pig);
            for (const cvec& z : zs) {
                cvec gz = act_on_Cn(g, z, ws);
                rep.covariance_berezin =
                    std::max(rep.covariance_berezin,
                             std::abs(berezin_symbol(conj_a, z) - berezin_symbol(a, gz)));
                rep.covariance_weyl0 =
                    std::max(rep.covariance_weyl0, std::abs(weyl0_symbol_trace(conj_a, z, ws) -
                                                            weyl0_symbol_trace(a, gz, ws)));
            }
        }
    }
    for (std::size_t i = 0; i < ops.size(); ++i) {
        for (std::size_t j = i; j < ops.size(); ++j) {
            // the axiom integral is against mu_lambda itself, so the grid weight
            // e^{-lambda|z|^2/2} must be divided back out
            cplx lhs = grid.integrate_Cn(ws.n, [&](const cvec& z) {
                double z2 = 0.0;
                for (const auto& zk : z) z2 += std::norm(zk);
                return weyl0_symbol_trace(ops[i], z, ws) * weyl0_symbol_trace(ops[j], z, ws) *
                       std::exp(cplx(0.5 * ws.lambda * z2, 0.0));
            });
            cplx rhs = gk_trace(gk_compose(ops[i], ops[j]));
            rep.traciality = std::max(rep.traciality, std::abs(lhs - rhs));
        }
    }
    return rep;
}

} // namespace fockweyl
