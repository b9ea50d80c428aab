#include <doctest.h>

#include <cmath>

#include "fockweyl/group.hpp"
#include "fockweyl/rng.hpp"

using namespace fockweyl;

namespace {

const cplx I(0.0, 1.0);

WeightSystem random_ws(Rng& rng, std::size_t n, std::size_t m, double lambda) {
    std::vector<std::vector<double>> alpha(m, std::vector<double>(n));
    for (auto& row : alpha)
        for (auto& v : row) v = rng.uniform(-1.0, 1.0);
    std::vector<double> beta(m, 0.0);
    return WeightSystem(n, m, alpha, beta, lambda);
}

GroupElement random_group_element(Rng& rng, const WeightSystem& ws) {
    GroupElement g;
    g.t = rng.uniform_vec(ws.m, -2.0, 2.0);
    g.z0 = rng.complex_normal_vec(ws.n);
    g.c0 = rng.uniform(-M_PI, M_PI);
    return g;
}

LieElement random_lie_element(Rng& rng, const WeightSystem& ws) {
    LieElement x;
    x.t = rng.uniform_vec(ws.m, -2.0, 2.0);
    x.u = rng.complex_normal_vec(ws.n);
    x.c = rng.uniform(-M_PI, M_PI);
    return x;
}

double group_distance(const GroupElement& a, const GroupElement& b) {
    double d = std::abs(a.c0 - b.c0);
    for (std::size_t j = 0; j < a.t.size(); ++j) d = std::max(d, std::abs(a.t[j] - b.t[j]));
    for (std::size_t k = 0; k < a.z0.size(); ++k) d = std::max(d, std::abs(a.z0[k] - b.z0[k]));
    return d;
}

double group_scale(const GroupElement& a) {
    double s = 1.0 + std::abs(a.c0);
    for (double t : a.t) s = std::max(s, std::abs(t));
    for (const cplx& z : a.z0) s = std::max(s, std::abs(z));
    return s;
}

double lie_distance(const LieElement& a, const LieElement& b) {
    double d = std::abs(a.c - b.c);
    for (std::size_t j = 0; j < a.t.size(); ++j) d = std::max(d, std::abs(a.t[j] - b.t[j]));
    for (std::size_t k = 0; k < a.u.size(); ++k) d = std::max(d, std::abs(a.u[k] - b.u[k]));
    return d;
}

/// RK4 integration of the defining system z_k' = u_k + i alpha_k(t) z_k together with
/// c'(s) = c + (1/2) sum |u_k|^2 (1 - cos(alpha_k(t) s))/alpha_k(t).
GroupElement exp_by_ode(const LieElement& x, double s_end, const WeightSystem& ws, int steps) {
    std::size_t n = ws.n;
    cvec z(n, cplx(0.0, 0.0));
    double c = 0.0;
    double h = s_end / steps;
    auto zdot = [&](const cvec& zc) {
        cvec d(n);
        for (std::size_t k = 0; k < n; ++k)
            d[k] = x.u[k] + I * ws.alpha_of(x.t, k) * zc[k];
        return d;
    };
    auto cdot = [&](double s) {
        double d = x.c;
        for (std::size_t k = 0; k < n; ++k) {
            double a = ws.alpha_of(x.t, k);
            double term = (std::abs(a) < 1e-9) ? 0.5 * a * s * s : (1.0 - std::cos(a * s)) / a;
            d += 0.5 * std::norm(x.u[k]) * term;
        }
        return d;
    };
    for (int i = 0; i < steps; ++i) {
        double s = i * h;
        cvec k1 = zdot(z);
        cvec tmp(n);
        for (std::size_t k = 0; k < n; ++k) tmp[k] = z[k] + 0.5 * h * k1[k];
        cvec k2 = zdot(tmp);
        for (std::size_t k = 0; k < n; ++k) tmp[k] = z[k] + 0.5 * h * k2[k];
        cvec k3 = zdot(tmp);
        for (std::size_t k = 0; k < n; ++k) tmp[k] = z[k] + h * k3[k];
        cvec k4 = zdot(tmp);
        for (std::size_t k = 0; k < n; ++k)
            z[k] += h / 6.0 * (k1[k] + 2.0 * k2[k] + 2.0 * k3[k] + k4[k]);
        double c1 = cdot(s), c2 = cdot(s + 0.5 * h), c4 = cdot(s + h);
        c += h / 6.0 * (c1 + 4.0 * c2 + c4);
    }
    GroupElement g;
    g.t.resize(ws.m);
    for (std::size_t j = 0; j < ws.m; ++j) g.t[j] = s_end * x.t[j];
    g.z0 = z;
    g.c0 = c;
    return g;
}

} // namespace

TEST_CASE("symplectic form") {
    cvec z{cplx(1.0, 0.0)};
    CHECK(symplectic_form(z, z) == doctest::Approx(0.0));
    cvec w{cplx(0.0, 1.0)};
    CHECK(symplectic_form(z, w) == doctest::Approx(1.0));
    Rng rng(1);
    for (int trial = 0; trial < 30; ++trial) {
        cvec a = rng.complex_normal_vec(2), b = rng.complex_normal_vec(2), c = rng.complex_normal_vec(2);
        double s = rng.uniform(-2.0, 2.0);
        CHECK(symplectic_form(a, b) == doctest::Approx(-symplectic_form(b, a)).epsilon(1e-12));
        cvec sa_plus_c(2);
        for (int k = 0; k < 2; ++k) sa_plus_c[k] = s * a[k] + c[k];
        CHECK(symplectic_form(sa_plus_c, b) ==
              doctest::Approx(s * symplectic_form(a, b) + symplectic_form(c, b)).epsilon(1e-10));
    }
}

TEST_CASE("group law basics") {
    Rng rng(2);
    WeightSystem ws = random_ws(rng, 1, 2, 1.0);
    GroupElement e = GroupElement::identity(ws);

    // (0,1,0).(0,i,0) = (0,1+i,1/2)
    GroupElement g1 = e, g2 = e;
    g1.z0[0] = cplx(1.0, 0.0);
    g2.z0[0] = cplx(0.0, 1.0);
    GroupElement p = group_multiply(g1, g2, ws);
    CHECK(std::abs(p.z0[0] - cplx(1.0, 1.0)) <= 1e-15);
    CHECK(p.c0 == doctest::Approx(0.5));

    for (int trial = 0; trial < 100; ++trial) {
        GroupElement g = random_group_element(rng, ws);
        CHECK(group_distance(group_multiply(g, e, ws), g) <= 1e-15);
        CHECK(group_distance(group_multiply(e, g, ws), g) <= 1e-15);
        GroupElement gi = group_inverse(g, ws);
        CHECK(group_distance(group_multiply(g, gi, ws), e) <= 1e-13 * group_scale(g));
        CHECK(group_distance(group_multiply(gi, g, ws), e) <= 1e-13 * group_scale(g));
    }

    // central/abelian part inverts by sign flip
    GroupElement h = e;
    h.t = {0.3, -1.1};
    h.c0 = 2.0;
    GroupElement hi = group_inverse(h, ws);
    CHECK(hi.t[0] == doctest::Approx(-0.3));
    CHECK(hi.c0 == doctest::Approx(-2.0));
    CHECK(std::abs(hi.z0[0]) == doctest::Approx(0.0));

    // (0,z,0)^{-1} = (0,-z,0)
    GroupElement k = e;
    k.z0[0] = cplx(0.7, -0.2);
    GroupElement ki = group_inverse(k, ws);
    CHECK(std::abs(ki.z0[0] + k.z0[0]) <= 1e-15);
}

TEST_CASE("group multiplication associativity") {
    Rng rng(3);
    for (int trial = 0; trial < 500; ++trial) {
        std::size_t n = 1 + (trial % 2), m = 1 + ((trial / 2) % 2);
        WeightSystem ws = random_ws(rng, n, m, 1.0);
        GroupElement a = random_group_element(rng, ws);
        GroupElement b = random_group_element(rng, ws);
        GroupElement c = random_group_element(rng, ws);
        GroupElement lhs = group_multiply(group_multiply(a, b, ws), c, ws);
        GroupElement rhs = group_multiply(a, group_multiply(b, c, ws), ws);
        CHECK(group_distance(lhs, rhs) <= 1e-13 * group_scale(lhs));
    }
}

TEST_CASE("affine action on C^n") {
    Rng rng(4);
    WeightSystem ws(1, 1, {{M_PI / 2.0}}, {0.0}, 1.0);
    GroupElement rot = GroupElement::identity(ws);
    rot.t = {1.0}; // alpha(t) = pi/2
    cvec z{cplx(0.4, -0.3)};
    cvec rz = act_on_Cn(rot, z, ws);
    CHECK(std::abs(rz[0] - I * z[0]) <= 1e-15);

    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 1 + (trial % 2), m = 1 + ((trial / 2) % 2);
        WeightSystem w2 = random_ws(rng, n, m, 1.0);
        GroupElement g1 = random_group_element(rng, w2);
        GroupElement g2 = random_group_element(rng, w2);
        cvec pt = rng.complex_normal_vec(n);
        cvec lhs = act_on_Cn(group_multiply(g1, g2, w2), pt, w2);
        cvec rhs = act_on_Cn(g1, act_on_Cn(g2, pt, w2), w2);
        for (std::size_t k = 0; k < n; ++k) CHECK(std::abs(lhs[k] - rhs[k]) <= 1e-13);
    }
}

TEST_CASE("Lie bracket properties") {
    Rng rng(5);
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 1 + (trial % 2), m = 1 + ((trial / 2) % 2);
        WeightSystem ws = random_ws(rng, n, m, 1.0);
        LieElement x = random_lie_element(rng, ws);
        LieElement y = random_lie_element(rng, ws);
        LieElement z = random_lie_element(rng, ws);

        LieElement xx = lie_bracket(x, x, ws);
        CHECK(lie_distance(xx, LieElement::zero(ws)) <= 1e-14);

        // Jacobi identity
        LieElement j1 = lie_bracket(x, lie_bracket(y, z, ws), ws);
        LieElement j2 = lie_bracket(y, lie_bracket(z, x, ws), ws);
        LieElement j3 = lie_bracket(z, lie_bracket(x, y, ws), ws);
        LieElement sum = LieElement::zero(ws);
        sum.c = j1.c + j2.c + j3.c;
        for (std::size_t k = 0; k < ws.n; ++k) sum.u[k] = j1.u[k] + j2.u[k] + j3.u[k];
        CHECK(lie_distance(sum, LieElement::zero(ws)) <= 1e-12);
    }

    // [(t,0,0),(0,u,0)] = (0, i alpha(t) u, 0)
    WeightSystem ws(2, 1, {{0.5, -0.8}}, {0.0}, 1.0);
    LieElement tx = LieElement::zero(ws);
    tx.t = {1.3};
    LieElement uy = LieElement::zero(ws);
    uy.u = {cplx(1.0, 2.0), cplx(-0.5, 0.0)};
    LieElement br = lie_bracket(tx, uy, ws);
    CHECK(std::abs(br.u[0] - I * 0.5 * 1.3 * uy.u[0]) <= 1e-14);
    CHECK(std::abs(br.u[1] - I * (-0.8) * 1.3 * uy.u[1]) <= 1e-14);
    CHECK(br.c == doctest::Approx(0.0));
}

TEST_CASE("exponential map closed form") {
    // n=m=1, alpha(t)=t, X=(pi,1,0), s=1 -> (pi, 2i/pi, 1/(2 pi))
    WeightSystem ws(1, 1, {{1.0}}, {0.0}, 1.0);
    LieElement x;
    x.t = {M_PI};
    x.u = {cplx(1.0, 0.0)};
    x.c = 0.0;
    GroupElement g = group_exp(x, 1.0, ws);
    CHECK(g.t[0] == doctest::Approx(M_PI));
    CHECK(std::abs(g.z0[0] - cplx(0.0, 2.0 / M_PI)) <= 1e-14);
    CHECK(g.c0 == doctest::Approx(1.0 / (2.0 * M_PI)));

    // cross-check against RK4 integration of the defining system
    Rng rng(6);
    for (int trial = 0; trial < 10; ++trial) {
        std::size_t n = 1 + (trial % 2), m = 1 + ((trial / 2) % 2);
        WeightSystem w2 = random_ws(rng, n, m, 1.0);
        LieElement xr = random_lie_element(rng, w2);
        double s = rng.uniform(0.2, 1.5);
        GroupElement closed = group_exp(xr, s, w2);
        GroupElement ode = exp_by_ode(xr, s, w2, 4000);
        CHECK(group_distance(closed, ode) <= 1e-9);
    }

    // X = (0,u,c): exp(sX) = (0, su, sc)
    WeightSystem w3 = random_ws(rng, 2, 1, 1.0);
    LieElement xc = LieElement::zero(w3);
    xc.u = {cplx(0.3, 0.4), cplx(-1.0, 0.1)};
    xc.c = 0.7;
    GroupElement gc = group_exp(xc, 2.0, w3);
    CHECK(std::abs(gc.z0[0] - 2.0 * xc.u[0]) <= 1e-15);
    CHECK(std::abs(gc.z0[1] - 2.0 * xc.u[1]) <= 1e-15);
    CHECK(gc.c0 == doctest::Approx(1.4));
}

TEST_CASE("one-parameter subgroup property") {
    Rng rng(7);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + (trial % 2), m = 1 + ((trial / 2) % 2);
        WeightSystem ws = random_ws(rng, n, m, 1.0);
        LieElement x = random_lie_element(rng, ws);
        double s1 = rng.uniform(-1.5, 1.5), s2 = rng.uniform(-1.5, 1.5);
        if (trial % 5 == 0) {
            // force the series branch: |alpha(t) s| below 1e-6
            for (auto& tj : x.t) tj *= 1e-7;
        }
        GroupElement lhs = group_exp(x, s1 + s2, ws);
        GroupElement rhs = group_multiply(group_exp(x, s1, ws), group_exp(x, s2, ws), ws);
        CHECK(group_distance(lhs, rhs) <= 1e-12 * group_scale(lhs));
    }
}

TEST_CASE("exp consistency with the bracket") {
    // coordinates of exp(sX)exp(sY)exp(-sX)exp(-sY) match s^2 [X,Y] to O(s^3)
    Rng rng(8);
    WeightSystem ws = random_ws(rng, 2, 2, 1.0);
    LieElement x = random_lie_element(rng, ws);
    LieElement y = random_lie_element(rng, ws);
    LieElement br = lie_bracket(x, y, ws);
    for (double s : {1e-2, 1e-3}) {
        GroupElement comm = group_multiply(
            group_multiply(group_exp(x, s, ws), group_exp(y, s, ws), ws),
            group_multiply(group_exp(x, -s, ws), group_exp(y, -s, ws), ws), ws);
        GroupElement expected;
        expected.t.assign(ws.m, 0.0);
        expected.z0.resize(ws.n);
        for (std::size_t k = 0; k < ws.n; ++k) expected.z0[k] = s * s * br.u[k];
        expected.c0 = s * s * br.c;
        CHECK(group_distance(comm, expected) <= 10.0 * s * s * s);
    }
}

TEST_CASE("adjoint representation") {
    Rng rng(9);
    WeightSystem ws = random_ws(rng, 2, 2, 1.0);

    LieElement x = random_lie_element(rng, ws);
    LieElement adx = adjoint(GroupElement::identity(ws), x, ws);
    CHECK(lie_distance(adx, x) <= 1e-15);

    // Ad(g)[X,Y] = [Ad(g)X, Ad(g)Y]
    for (int trial = 0; trial < 100; ++trial) {
        std::size_t n = 1 + (trial % 2), m = 1 + ((trial / 2) % 2);
        WeightSystem w2 = random_ws(rng, n, m, 1.0);
        GroupElement g = random_group_element(rng, w2);
        LieElement a = random_lie_element(rng, w2);
        LieElement b = random_lie_element(rng, w2);
        LieElement lhs = adjoint(g, lie_bracket(a, b, w2), w2);
        LieElement rhs = lie_bracket(adjoint(g, a, w2), adjoint(g, b, w2), w2);
        CHECK(lie_distance(lhs, rhs) <= 1e-11);
    }

    // Ad(g1 g2) = Ad(g1) Ad(g2)
    for (int trial = 0; trial < 50; ++trial) {
        GroupElement g1 = random_group_element(rng, ws);
        GroupElement g2 = random_group_element(rng, ws);
        LieElement a = random_lie_element(rng, ws);
        LieElement lhs = adjoint(group_multiply(g1, g2, ws), a, ws);
        LieElement rhs = adjoint(g1, adjoint(g2, a, ws), ws);
        CHECK(lie_distance(lhs, rhs) <= 1e-12);
    }

    // finite-difference oracle on the conjugation map
    for (int trial = 0; trial < 20; ++trial) {
        GroupElement g = random_group_element(rng, ws);
        LieElement a = random_lie_element(rng, ws);
        double h = 1e-6;
        GroupElement plus = group_multiply(group_multiply(g, group_exp(a, h, ws), ws),
                                           group_inverse(g, ws), ws);
        GroupElement minus = group_multiply(group_multiply(g, group_exp(a, -h, ws), ws),
                                            group_inverse(g, ws), ws);
        LieElement fd;
        fd.t.resize(ws.m);
        for (std::size_t j = 0; j < ws.m; ++j) fd.t[j] = (plus.t[j] - minus.t[j]) / (2.0 * h);
        fd.u.resize(ws.n);
        for (std::size_t k = 0; k < ws.n; ++k) fd.u[k] = (plus.z0[k] - minus.z0[k]) / (2.0 * h);
        fd.c = (plus.c0 - minus.c0) / (2.0 * h);
        LieElement closed = adjoint(g, a, ws);
        CHECK(lie_distance(fd, closed) <= 1e-6);
    }
}

TEST_CASE("coadjoint dual to adjoint") {
    Rng rng(10);
    for (int trial = 0; trial < 200; ++trial) {
        std::size_t n = 1 + (trial % 2), m = 1 + ((trial / 2) % 2);
        WeightSystem ws = random_ws(rng, n, m, 1.0);
        GroupElement g = random_group_element(rng, ws);
        Covector xi;
        xi.s = rng.uniform_vec(m, -2.0, 2.0);
        xi.v = rng.complex_normal_vec(n);
        xi.d = rng.uniform(-2.0, 2.0);
        LieElement x = random_lie_element(rng, ws);

        double lhs = pairing(coadjoint(g, xi, ws), x);
        double rhs = pairing(xi, adjoint(group_inverse(g, ws), x, ws));
        CHECK(std::abs(lhs - rhs) <= 1e-10);

        // central coordinate invariant
        Covector cx = coadjoint(g, xi, ws);
        CHECK(cx.d == doctest::Approx(xi.d).epsilon(1e-13));
    }

    // Ad*(e) = id
    WeightSystem ws = random_ws(rng, 2, 1, 1.0);
    Covector xi;
    xi.s = {0.4};
    xi.v = {cplx(1.0, -0.5), cplx(0.2, 0.3)};
    xi.d = 1.7;
    Covector same = coadjoint(GroupElement::identity(ws), xi, ws);
    CHECK(same.s[0] == doctest::Approx(xi.s[0]));
    CHECK(std::abs(same.v[0] - xi.v[0]) <= 1e-14);
    CHECK(std::abs(same.v[1] - xi.v[1]) <= 1e-14);
    CHECK(same.d == doctest::Approx(xi.d));

    // Ad*(g1 g2) = Ad*(g1) Ad*(g2)
    for (int trial = 0; trial < 50; ++trial) {
        GroupElement g1 = random_group_element(rng, ws);
        GroupElement g2 = random_group_element(rng, ws);
        Covector a = coadjoint(group_multiply(g1, g2, ws), xi, ws);
        Covector b = coadjoint(g1, coadjoint(g2, xi, ws), ws);
        CHECK(std::abs(a.d - b.d) <= 1e-12);
        for (std::size_t j = 0; j < ws.m; ++j) CHECK(std::abs(a.s[j] - b.s[j]) <= 1e-11);
        for (std::size_t k = 0; k < ws.n; ++k) CHECK(std::abs(a.v[k] - b.v[k]) <= 1e-11);
    }
}
