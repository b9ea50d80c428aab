#include <doctest.h>

#include <cmath>

#include "fockweyl/gaussian.hpp"
#include "fockweyl/quadrature.hpp"
#include "fockweyl/rng.hpp"

using namespace fockweyl;

namespace {

const cplx I(0.0, 1.0);

CMat random_symmetric(Rng& rng, std::size_t n, double scale) {
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j) {
            cplx v(scale * rng.uniform(-1.0, 1.0), scale * rng.uniform(-1.0, 1.0));
            m(i, j) = v;
            m(j, i) = v;
        }
    return m;
}

CMat random_matrix(Rng& rng, std::size_t n, double scale) {
    CMat m(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m(i, j) = cplx(scale * rng.uniform(-1.0, 1.0), scale * rng.uniform(-1.0, 1.0));
    return m;
}

/// Integrable random spec: B dominated by a positive multiple of the identity.
GaussianIntegralSpec random_integrable_spec(Rng& rng, std::size_t n) {
    GaussianIntegralSpec spec;
    for (;;) {
        double gamma = rng.uniform(0.5, 1.2);
        spec.A = random_symmetric(rng, n, 0.12);
        spec.D = random_symmetric(rng, n, 0.12);
        spec.B = random_matrix(rng, n, 0.12) + CMat::identity(n, cplx(gamma, 0.0));
        spec.u = rng.complex_normal_vec(n, 0.5);
        spec.v = rng.complex_normal_vec(n, 0.5);
        if (min_real_symmetric_part_eigenvalue(spec.block_n()) > 0.3) return spec;
    }
}

/// Quadrature oracle for the lemma integral over plain Lebesgue measure dm(w).
cplx spec_integral_by_quadrature(const GaussianIntegralSpec& spec, int order) {
    std::size_t n = spec.dim();
    double min_eig = min_real_symmetric_part_eigenvalue(spec.block_n());
    double lambda = min_eig; // weight decays at half the integrand's slowest rate
    QuadratureGrid grid(order, lambda);
    auto f = [&](const cvec& w) {
        cplx quad(0.0, 0.0);
        double n2 = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            n2 += std::norm(w[i]);
            quad += spec.u[i] * w[i] + spec.v[i] * std::conj(w[i]);
            for (std::size_t j = 0; j < n; ++j) {
                quad -= w[i] * spec.A(i, j) * w[j];
                quad -= std::conj(w[i]) * spec.D(i, j) * std::conj(w[j]);
                quad -= 2.0 * std::conj(w[i]) * spec.B(i, j) * w[j];
            }
        }
        return std::exp(quad + 0.5 * lambda * n2);
    };
    cplx mu_value = grid.integrate_Cn(n, f);
    return mu_value * std::pow(2.0 * M_PI / lambda, static_cast<double>(n));
}

GaussianKernelOp random_trace_class_kernel(Rng& rng, std::size_t n, double lambda) {
    GaussianKernelOp k;
    k.lambda = lambda;
    k.c = std::polar(rng.uniform(0.3, 1.5), rng.uniform(-M_PI, M_PI));
    k.a = rng.complex_normal_vec(n, 0.25 * lambda);
    k.b = rng.complex_normal_vec(n, 0.25 * lambda);
    k.Q = random_matrix(rng, n, 0.3 * lambda / static_cast<double>(n));
    return k;
}

} // namespace

TEST_CASE("Gaussian integral closed values") {
    for (std::size_t n : {std::size_t(1), std::size_t(2)}) {
        for (double lambda : {0.7, 1.0, 2.0}) {
            GaussianIntegralSpec spec;
            spec.A = CMat(n, n);
            spec.D = CMat(n, n);
            spec.B = CMat::identity(n, cplx(lambda / 4.0, 0.0));
            spec.u = cvec(n, cplx(0.0, 0.0));
            spec.v = cvec(n, cplx(0.0, 0.0));
            double expected = std::pow(2.0 * M_PI / lambda, static_cast<double>(n));
            CHECK(std::abs(gaussian_integral(spec) - expected) <= 1e-12 * expected);

            // with linear terms: (2 pi/lambda)^n exp(2 u.v / lambda), the reproducing identity
            Rng rng(11 + static_cast<int>(n));
            spec.u = rng.complex_normal_vec(n, 0.7);
            spec.v = rng.complex_normal_vec(n, 0.7);
            cplx dot(0.0, 0.0);
            for (std::size_t k = 0; k < n; ++k) dot += spec.u[k] * spec.v[k];
            cplx expect2 = expected * std::exp(2.0 * dot / lambda);
            CHECK(std::abs(gaussian_integral(spec) - expect2) <= 1e-12 * std::abs(expect2));
        }
    }
}

TEST_CASE("Gaussian integral vs quadrature oracle") {
    Rng rng(12);
    for (int trial = 0; trial < 25; ++trial) {
        GaussianIntegralSpec spec = random_integrable_spec(rng, 1);
        cplx closed = gaussian_integral(spec);
        cplx quad = spec_integral_by_quadrature(spec, 60);
        CHECK(std::abs(closed - quad) <= 1e-8 * std::abs(closed));
    }
    for (int trial = 0; trial < 8; ++trial) {
        GaussianIntegralSpec spec = random_integrable_spec(rng, 2);
        cplx closed = gaussian_integral(spec);
        cplx quad = spec_integral_by_quadrature(spec, 40);
        CHECK(std::abs(closed - quad) <= 1e-7 * std::abs(closed));
    }
}

TEST_CASE("Gaussian integral rejects non-integrable and ill-conditioned specs") {
    GaussianIntegralSpec spec;
    spec.A = CMat(1, 1);
    spec.D = CMat(1, 1);
    spec.B = CMat(1, 1); // zero quadratic form
    spec.u = {cplx(0.0, 0.0)};
    spec.v = {cplx(0.0, 0.0)};
    CHECK_THROWS_AS(gaussian_integral(spec), not_integrable);

    spec.B(0, 0) = cplx(-1.0, 0.0);
    CHECK_THROWS_AS(gaussian_integral(spec), not_integrable);

    GaussianIntegralSpec bad;
    bad.A = CMat(2, 2);
    bad.D = CMat(2, 2);
    bad.B = CMat(2, 2);
    bad.B(0, 0) = cplx(1e8, 0.0);
    bad.B(1, 1) = cplx(1e-5, 0.0);
    bad.u = cvec(2, cplx(0.0, 0.0));
    bad.v = cvec(2, cplx(0.0, 0.0));
    CHECK_THROWS_AS(gaussian_integral(bad), singular_m);
}

TEST_CASE("kernel evaluation") {
    double lambda = 1.3;
    GaussianKernelOp id = GaussianKernelOp::identity(2, lambda);
    Rng rng(13);
    cvec z = rng.complex_normal_vec(2), w = rng.complex_normal_vec(2);
    cplx dot(0.0, 0.0);
    for (int k = 0; k < 2; ++k) dot += z[k] * std::conj(w[k]);
    CHECK(std::abs(gk_evaluate(id, z, w) - std::exp(0.5 * lambda * dot)) <= 1e-13);

    GaussianKernelOp k = random_trace_class_kernel(rng, 2, lambda);
    cvec zero(2, cplx(0.0, 0.0));
    CHECK(std::abs(gk_evaluate(k, zero, zero) - k.c) <= 1e-15);
}

TEST_CASE("composition: identity is neutral") {
    Rng rng(14);
    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 1 + (trial % 2);
        double lambda = (trial % 3 == 0) ? 0.7 : ((trial % 3 == 1) ? 1.0 : 2.0);
        GaussianKernelOp k = random_trace_class_kernel(rng, n, lambda);
        GaussianKernelOp id = GaussianKernelOp::identity(n, lambda);
        for (const GaussianKernelOp& prod : {gk_compose(k, id), gk_compose(id, k)}) {
            CHECK(std::abs(prod.c - k.c) <= 1e-13 * std::abs(k.c));
            for (std::size_t i = 0; i < n; ++i) {
                CHECK(std::abs(prod.a[i] - k.a[i]) <= 1e-13);
                CHECK(std::abs(prod.b[i] - k.b[i]) <= 1e-13);
            }
            CHECK((prod.Q - k.Q).max_abs() <= 1e-13);
        }
    }
}

TEST_CASE("composition closure matches numeric composition") {
    Rng rng(15);
    for (int trial = 0; trial < 6; ++trial) {
        double lambda = (trial % 3 == 0) ? 0.7 : ((trial % 3 == 1) ? 1.0 : 2.0);
        GaussianKernelOp k1 = random_trace_class_kernel(rng, 1, lambda);
        GaussianKernelOp k2 = random_trace_class_kernel(rng, 1, lambda);
        GaussianKernelOp k12 = gk_compose(k1, k2);
        QuadratureGrid grid(60, lambda);
        for (int pt = 0; pt < 10; ++pt) {
            cvec z = rng.complex_normal_vec(1, 0.7), w = rng.complex_normal_vec(1, 0.7);
            cplx numeric = grid.integrate_Cn(1, [&](const cvec& u) {
                return gk_evaluate(k1, z, u) * gk_evaluate(k2, u, w);
            });
            cplx closed = gk_evaluate(k12, z, w);
            CHECK(std::abs(closed - numeric) <= 1e-7 * std::abs(closed));
        }
    }
}

TEST_CASE("composition associativity") {
    Rng rng(16);
    for (int trial = 0; trial < 50; ++trial) {
        std::size_t n = 1 + (trial % 2);
        double lambda = (trial % 3 == 0) ? 0.7 : ((trial % 3 == 1) ? 1.0 : 2.0);
        GaussianKernelOp a = random_trace_class_kernel(rng, n, lambda);
        GaussianKernelOp b = random_trace_class_kernel(rng, n, lambda);
        GaussianKernelOp c = random_trace_class_kernel(rng, n, lambda);
        GaussianKernelOp lhs = gk_compose(gk_compose(a, b), c);
        GaussianKernelOp rhs = gk_compose(a, gk_compose(b, c));
        CHECK(std::abs(lhs.c - rhs.c) <= 1e-10 * std::abs(lhs.c));
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(lhs.a[i] - rhs.a[i]) <= 1e-10);
            CHECK(std::abs(lhs.b[i] - rhs.b[i]) <= 1e-10);
        }
        CHECK((lhs.Q - rhs.Q).max_abs() <= 1e-10);
    }
}

TEST_CASE("adjoint is an involution and antihomomorphism") {
    Rng rng(17);
    std::size_t n = 2;
    GaussianKernelOp id = GaussianKernelOp::identity(n, 1.0);
    GaussianKernelOp idstar = gk_adjoint(id);
    CHECK(std::abs(idstar.c - id.c) <= 1e-15);
    CHECK((idstar.Q - id.Q).max_abs() <= 1e-15);

    for (int trial = 0; trial < 30; ++trial) {
        GaussianKernelOp k1 = random_trace_class_kernel(rng, n, 1.0);
        GaussianKernelOp k2 = random_trace_class_kernel(rng, n, 1.0);
        GaussianKernelOp dbl = gk_adjoint(gk_adjoint(k1));
        CHECK(std::abs(dbl.c - k1.c) <= 1e-15);
        CHECK((dbl.Q - k1.Q).max_abs() <= 1e-15);
        GaussianKernelOp lhs = gk_adjoint(gk_compose(k1, k2));
        GaussianKernelOp rhs = gk_compose(gk_adjoint(k2), gk_adjoint(k1));
        CHECK(std::abs(lhs.c - rhs.c) <= 1e-12 * std::abs(lhs.c));
        CHECK((lhs.Q - rhs.Q).max_abs() <= 1e-12);
        for (std::size_t i = 0; i < n; ++i) {
            CHECK(std::abs(lhs.a[i] - rhs.a[i]) <= 1e-12);
            CHECK(std::abs(lhs.b[i] - rhs.b[i]) <= 1e-12);
        }
        // adjoint swaps kernel arguments with conjugation
        cvec z = rng.complex_normal_vec(n), w = rng.complex_normal_vec(n);
        CHECK(std::abs(gk_evaluate(gk_adjoint(k1), z, w) - std::conj(gk_evaluate(k1, w, z))) <=
              1e-12);
    }
}

TEST_CASE("trace: divergence, projector, cyclicity") {
    CHECK_THROWS_AS(gk_trace(GaussianKernelOp::identity(1, 1.0)), not_trace_class);
    CHECK_THROWS_AS(gk_trace(GaussianKernelOp::identity(2, 0.7)), not_trace_class);

    Rng rng(18);
    for (double lambda : {0.7, 1.0, 2.0}) {
        for (std::size_t n : {std::size_t(1), std::size_t(2)}) {
            cvec zero(n, cplx(0.0, 0.0));
            GaussianKernelOp p0 = GaussianKernelOp::coherent_projector(zero, lambda);
            CHECK(std::abs(gk_trace(p0) - cplx(1.0, 0.0)) <= 1e-12);

            // projector at random z0 still has unit trace
            cvec z0 = rng.complex_normal_vec(n);
            GaussianKernelOp pz = GaussianKernelOp::coherent_projector(z0, lambda);
            CHECK(std::abs(gk_trace(pz) - cplx(1.0, 0.0)) <= 1e-11);
        }
    }

    for (int trial = 0; trial < 30; ++trial) {
        std::size_t n = 1 + (trial % 2);
        GaussianKernelOp k1 = random_trace_class_kernel(rng, n, 1.0);
        GaussianKernelOp k2 = random_trace_class_kernel(rng, n, 1.0);
        cplx t12 = gk_trace(gk_compose(k1, k2));
        cplx t21 = gk_trace(gk_compose(k2, k1));
        CHECK(std::abs(t12 - t21) <= 1e-10 * std::max(1.0, std::abs(t12)));
    }
}

TEST_CASE("trace against numeric diagonal integral") {
    Rng rng(19);
    for (double lambda : {0.7, 1.0, 2.0}) {
        GaussianKernelOp k = random_trace_class_kernel(rng, 1, lambda);
        QuadratureGrid grid(60, lambda);
        cplx numeric = grid.integrate_Cn(1, [&](const cvec& z) { return gk_evaluate(k, z, z); });
        CHECK(std::abs(gk_trace(k) - numeric) <= 1e-8 * std::abs(numeric));
    }
}

TEST_CASE("Hilbert-Schmidt inner product") {
    Rng rng(20);
    cvec zero(1, cplx(0.0, 0.0));
    GaussianKernelOp p0 = GaussianKernelOp::coherent_projector(zero, 1.0);
    CHECK(std::abs(gk_hs_inner(p0, p0) - cplx(1.0, 0.0)) <= 1e-12);

    for (int trial = 0; trial < 20; ++trial) {
        std::size_t n = 1 + (trial % 2);
        GaussianKernelOp k = random_trace_class_kernel(rng, n, 1.0);
        cplx kk = gk_hs_inner(k, k);
        CHECK(kk.real() >= 0.0);
        CHECK(std::abs(kk.imag()) <= 1e-10 * std::max(1.0, kk.real()));

        GaussianKernelOp k2 = random_trace_class_kernel(rng, n, 1.0);
        GaussianKernelOp k3 = random_trace_class_kernel(rng, n, 1.0);
        // sesquilinearity in the first slot, via scaling the kernel amplitude
        cplx s(0.6, -0.4);
        GaussianKernelOp sk2 = k2;
        sk2.c *= s;
        CHECK(std::abs(gk_hs_inner(sk2, k3) - s * gk_hs_inner(k2, k3)) <= 1e-10);
        GaussianKernelOp sk3 = k3;
        sk3.c *= s;
        CHECK(std::abs(gk_hs_inner(k2, sk3) - std::conj(s) * gk_hs_inner(k2, k3)) <= 1e-10);
        // Hermitian symmetry
        cplx swapped = gk_hs_inner(k3, k);
        CHECK(std::abs(swapped - std::conj(gk_hs_inner(k, k3))) <= 1e-10);
    }
}
