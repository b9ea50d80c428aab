#pragma once

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <limits>
#include <memory>
#include <mutex>
#include <string>
#include <thread>
#include <vector>

#include "fockweyl/correspondences.hpp"
#include "fockweyl/fock_numeric.hpp"
#include "fockweyl/gaussian.hpp"
#include "fockweyl/group.hpp"
#include "fockweyl/orbit.hpp"
#include "fockweyl/representation.hpp"
#include "fockweyl/rng.hpp"
#include "fockweyl/schrodinger.hpp"
#include "fockweyl/star.hpp"

namespace fockweyl {

/// Runtime configuration of the verification suites.
struct Config {
    // model; empty alpha means "sweep the standard model grid from the seed"
    double lambda = 1.0;
    std::size_t n = 1;
    std::size_t m = 1;
    std::vector<std::vector<double>> alpha;
    std::vector<double> beta;
    std::uint64_t seed = 20250807;
    int truncation_degree = 24;
    int quad_order_n1 = 60;
    int quad_order_n2 = 40;
    std::map<std::string, double> tolerances;
    int jobs = 1;
    bool timings = false;

    int quad_order(std::size_t n_dims) const { return n_dims <= 1 ? quad_order_n1 : quad_order_n2; }
};

/// The model grid checks run over: either the explicit model of the config, or
/// lambda in {0.7, 1, 2} x n,m in {1,2} with seeded random weights, plus one
/// model with a nonzero character direction.
inline std::vector<WeightSystem> config_models(const Config& cfg) {
    std::vector<WeightSystem> models;
    if (!cfg.alpha.empty()) {
        std::vector<double> beta = cfg.beta.empty() ? std::vector<double>(cfg.m, 0.0) : cfg.beta;
        models.emplace_back(cfg.n, cfg.m, cfg.alpha, beta, cfg.lambda);
        return models;
    }
    Rng rng(cfg.seed ^ 0xabcdef12345ull);
    for (double lambda : {0.7, 1.0, 2.0}) {
        for (std::size_t n : {std::size_t(1), std::size_t(2)}) {
            for (std::size_t m : {std::size_t(1), std::size_t(2)}) {
                std::vector<std::vector<double>> alpha(m, std::vector<double>(n));
                for (auto& row : alpha)
                    for (auto& v : row) v = rng.uniform(-1.0, 1.0);
                models.emplace_back(n, m, alpha, std::vector<double>(m, 0.0), lambda);
            }
        }
    }
    std::vector<std::vector<double>> alpha(2, std::vector<double>(1));
    for (auto& row : alpha) row[0] = rng.uniform(-1.0, 1.0);
    models.emplace_back(1, 2, alpha, std::vector<double>{0.4, -0.7}, 1.0);
    return models;
}

struct CheckResult {
    std::string name;
    std::size_t samples = 0;
    double max_abs_residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
    double wall_time_ms = 0.0;
    std::string note;
};

struct SuiteReport {
    std::string suite;
    std::vector<CheckResult> checks;
    bool pass = true;
};

namespace verify_detail {

struct Accum {
    double residual = 0.0;
    std::size_t samples = 0;
    void record(double r) {
        residual = std::max(residual, r);
        ++samples;
    }
};

inline GroupElement random_group_element(Rng& rng, const WeightSystem& ws) {
    GroupElement g;
    g.t = rng.uniform_vec(ws.m, -2.0, 2.0);
    g.z0 = rng.complex_normal_vec(ws.n);
    g.c0 = rng.uniform(-M_PI, M_PI);
    return g;
}

inline LieElement random_lie_element(Rng& rng, const WeightSystem& ws) {
    LieElement x;
    x.t = rng.uniform_vec(ws.m, -2.0, 2.0);
    x.u = rng.complex_normal_vec(ws.n);
    x.c = rng.uniform(-M_PI, M_PI);
    return x;
}

/// Admissible sampler with margin; gives up on models whose weights cannot
/// reach the required distance (returns false).
inline bool random_admissible(Rng& rng, const WeightSystem& ws, bool mehler_set, double margin,
                              GroupElement& out, int attempts = 400) {
    for (int i = 0; i < attempts; ++i) {
        GroupElement g = random_group_element(rng, ws);
        bool ok = true;
        for (std::size_t k = 0; k < ws.n; ++k) {
            double a = ws.alpha_of(g.t, k);
            double d = mehler_set ? lattice_distance(a, 0.0, M_PI)
                                  : lattice_distance(a, M_PI, 2.0 * M_PI);
            if (d < margin) ok = false;
        }
        if (ok) {
            out = g;
            return true;
        }
    }
    return false;
}

inline GaussianKernelOp random_trace_class_kernel(Rng& rng, std::size_t n, double lambda) {
    GaussianKernelOp k;
    k.lambda = lambda;
    k.c = std::polar(rng.uniform(0.3, 1.5), rng.uniform(-M_PI, M_PI));
    k.a = rng.complex_normal_vec(n, 0.25 * lambda);
    k.b = rng.complex_normal_vec(n, 0.25 * lambda);
    k.Q = CMat(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            k.Q(i, j) = cplx(rng.uniform(-0.3, 0.3), rng.uniform(-0.3, 0.3)) * lambda /
                        static_cast<double>(n);
    return k;
}

inline double kernel_param_distance(const GaussianKernelOp& a, const GaussianKernelOp& b) {
    double d = std::abs(a.c - b.c);
    for (std::size_t i = 0; i < a.dim(); ++i) {
        d = std::max(d, std::abs(a.a[i] - b.a[i]));
        d = std::max(d, std::abs(a.b[i] - b.b[i]));
    }
    return std::max(d, (a.Q - b.Q).max_abs());
}

inline double group_distance(const GroupElement& a, const GroupElement& b) {
    double d = std::abs(a.c0 - b.c0);
    for (std::size_t j = 0; j < a.t.size(); ++j) d = std::max(d, std::abs(a.t[j] - b.t[j]));
    for (std::size_t k = 0; k < a.z0.size(); ++k) d = std::max(d, std::abs(a.z0[k] - b.z0[k]));
    return d;
}

inline double group_scale(const GroupElement& a) {
    double s = 1.0 + std::abs(a.c0);
    for (double t : a.t) s = std::max(s, std::abs(t));
    for (const cplx& z : a.z0) s = std::max(s, std::abs(z));
    return s;
}

} // namespace verify_detail

class VerifyRunner {
public:
    VerifyRunner(const Config& cfg) : cfg_(cfg), models_(config_models(cfg)) {}

    using CheckFn = std::function<void(Rng&, verify_detail::Accum&)>;

    const Config& config() const { return cfg_; }
    const std::vector<WeightSystem>& models() const { return models_; }

    /// Models restricted by dimension, handy for quadrature-bound checks.
    std::vector<WeightSystem> models_with_n(std::size_t n) const {
        std::vector<WeightSystem> out;
        for (const auto& ws : models_)
            if (ws.n == n) out.push_back(ws);
        return out;
    }

    void add_check(const std::string& name, double default_tol, CheckFn fn) {
        pending_.push_back(PendingCheck{name, default_tol, std::move(fn)});
    }

    std::vector<CheckResult> run() {
        std::vector<CheckResult> results(pending_.size());
        std::size_t jobs = std::max(1, cfg_.jobs);
        std::size_t next = 0;
        std::mutex mtx;
        auto worker = [&]() {
            for (;;) {
                std::size_t idx;
                {
                    std::lock_guard<std::mutex> lock(mtx);
                    if (next >= pending_.size()) return;
                    idx = next++;
                }
                results[idx] = run_one(pending_[idx]);
            }
        };
        if (jobs == 1) {
            worker();
        } else {
            std::vector<std::thread> pool;
            for (std::size_t i = 0; i < jobs; ++i) pool.emplace_back(worker);
            for (auto& t : pool) t.join();
        }
        pending_.clear();
        return results;
    }

private:
    struct PendingCheck {
        std::string name;
        double tol;
        CheckFn fn;
    };

    CheckResult run_one(const PendingCheck& check) {
        CheckResult r;
        r.name = check.name;
        auto it = cfg_.tolerances.find(check.name);
        r.tolerance = (it != cfg_.tolerances.end()) ? it->second : check.tol;
        Rng rng = Rng::for_check(cfg_.seed, check.name);
        verify_detail::Accum acc;
        auto start = std::chrono::steady_clock::now();
        try {
            check.fn(rng, acc);
            r.max_abs_residual = acc.residual;
            r.samples = acc.samples;
            r.pass = acc.residual <= r.tolerance;
        } catch (const std::exception& e) {
            r.note = e.what();
            r.max_abs_residual = std::numeric_limits<double>::infinity();
            r.pass = false;
        }
        auto stop = std::chrono::steady_clock::now();
        r.wall_time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
        return r;
    }

    Config cfg_;
    std::vector<WeightSystem> models_;
    std::vector<PendingCheck> pending_;
};

// ---------------------------------------------------------------------------
// suite: group
// ---------------------------------------------------------------------------

inline void register_group_suite(VerifyRunner& v) {
    using namespace verify_detail;
    const auto models = v.models();

    v.add_check("group-exp-one-parameter", 1e-12, [models](Rng& rng, Accum& acc) {
        std::size_t per_model = (200 + models.size() - 1) / models.size();
        for (const auto& ws : models) {
            for (std::size_t i = 0; i < per_model; ++i) {
                LieElement x = random_lie_element(rng, ws);
                if (i % 5 == 0)
                    for (auto& tj : x.t) tj *= 1e-7; // exercise the series branch
                double s1 = rng.uniform(-1.5, 1.5), s2 = rng.uniform(-1.5, 1.5);
                GroupElement lhs = group_exp(x, s1 + s2, ws);
                GroupElement rhs =
                    group_multiply(group_exp(x, s1, ws), group_exp(x, s2, ws), ws);
                acc.record(group_distance(lhs, rhs) / group_scale(lhs));
            }
        }
    });

    v.add_check("group-associativity", 1e-13, [models](Rng& rng, Accum& acc) {
        std::size_t per_model = (500 + models.size() - 1) / models.size();
        for (const auto& ws : models)
            for (std::size_t i = 0; i < per_model; ++i) {
                GroupElement a = random_group_element(rng, ws);
                GroupElement b = random_group_element(rng, ws);
                GroupElement c = random_group_element(rng, ws);
                GroupElement lhs = group_multiply(group_multiply(a, b, ws), c, ws);
                GroupElement rhs = group_multiply(a, group_multiply(b, c, ws), ws);
                acc.record(group_distance(lhs, rhs) / group_scale(lhs));
            }
    });

    v.add_check("group-action-composition", 1e-13, [models](Rng& rng, Accum& acc) {
        for (const auto& ws : models)
            for (int i = 0; i < 10; ++i) {
                GroupElement g1 = random_group_element(rng, ws);
                GroupElement g2 = random_group_element(rng, ws);
                cvec z = rng.complex_normal_vec(ws.n);
                cvec lhs = act_on_Cn(group_multiply(g1, g2, ws), z, ws);
                cvec rhs = act_on_Cn(g1, act_on_Cn(g2, z, ws), ws);
                for (std::size_t k = 0; k < ws.n; ++k) acc.record(std::abs(lhs[k] - rhs[k]));
            }
    });

    v.add_check("group-adjoint-coadjoint-duality", 1e-10, [models](Rng& rng, Accum& acc) {
        std::size_t per_model = (200 + models.size() - 1) / models.size();
        for (const auto& ws : models)
            for (std::size_t i = 0; i < per_model; ++i) {
                GroupElement g = random_group_element(rng, ws);
                Covector xi;
                xi.s = rng.uniform_vec(ws.m, -2.0, 2.0);
                xi.v = rng.complex_normal_vec(ws.n);
                xi.d = rng.uniform(-2.0, 2.0);
                LieElement x = random_lie_element(rng, ws);
                double lhs = pairing(coadjoint(g, xi, ws), x);
                double rhs = pairing(xi, adjoint(group_inverse(g, ws), x, ws));
                acc.record(std::abs(lhs - rhs));
                // the central slot is invariant
                acc.record(std::abs(coadjoint(g, xi, ws).d - xi.d));
            }
    });

    v.add_check("group-exp-bracket-consistency", 20.0, [models](Rng& rng, Accum& acc) {
        // residual of exp(sX)exp(sY)exp(-sX)exp(-sY) vs s^2 [X,Y], scaled by s^-3
        for (const auto& ws : models) {
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
                acc.record(group_distance(comm, expected) / (s * s * s));
            }
        }
    });
}

// ---------------------------------------------------------------------------
// suite: gaussian
// ---------------------------------------------------------------------------

namespace verify_detail {

inline GaussianIntegralSpec random_integrable_spec(Rng& rng, std::size_t n) {
    for (;;) {
        GaussianIntegralSpec spec;
        double gamma = rng.uniform(0.5, 1.2);
        auto rand_sym = [&](double scale) {
            CMat m(n, n);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = i; j < n; ++j) {
                    cplx val(scale * rng.uniform(-1.0, 1.0), scale * rng.uniform(-1.0, 1.0));
                    m(i, j) = val;
                    m(j, i) = val;
                }
            return m;
        };
        spec.A = rand_sym(0.12);
        spec.D = rand_sym(0.12);
        spec.B = CMat::identity(n, cplx(gamma, 0.0));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                spec.B(i, j) += cplx(0.12 * rng.uniform(-1.0, 1.0), 0.12 * rng.uniform(-1.0, 1.0));
        spec.u = rng.complex_normal_vec(n, 0.5);
        spec.v = rng.complex_normal_vec(n, 0.5);
        if (min_real_symmetric_part_eigenvalue(spec.block_n()) > 0.3) return spec;
    }
}

inline cplx spec_integral_by_quadrature(const GaussianIntegralSpec& spec, int order) {
    std::size_t n = spec.dim();
    double lambda = min_real_symmetric_part_eigenvalue(spec.block_n());
    QuadratureGrid grid(order, lambda);
    cplx mu_value = grid.integrate_Cn(n, [&](const cvec& w) {
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
    });
    return mu_value * std::pow(2.0 * M_PI / lambda, static_cast<double>(n));
}

} // namespace verify_detail

inline void register_gaussian_suite(VerifyRunner& v) {
    using namespace verify_detail;
    const Config cfg = v.config();

    v.add_check("gaussian-lemma-quadrature-n1", 1e-8, [cfg](Rng& rng, Accum& acc) {
        for (int i = 0; i < 25; ++i) {
            GaussianIntegralSpec spec = random_integrable_spec(rng, 1);
            cplx closed = gaussian_integral(spec);
            cplx quad = spec_integral_by_quadrature(spec, cfg.quad_order_n1);
            acc.record(std::abs(closed - quad) / std::abs(closed));
        }
    });

    v.add_check("gaussian-lemma-quadrature-n2", 1e-7, [cfg](Rng& rng, Accum& acc) {
        for (int i = 0; i < 25; ++i) {
            GaussianIntegralSpec spec = random_integrable_spec(rng, 2);
            cplx closed = gaussian_integral(spec);
            cplx quad = spec_integral_by_quadrature(spec, cfg.quad_order_n2);
            acc.record(std::abs(closed - quad) / std::abs(closed));
        }
    });

    v.add_check("gaussian-compose-associativity", 1e-10, [](Rng& rng, Accum& acc) {
        for (int i = 0; i < 60; ++i) {
            std::size_t n = 1 + (i % 2);
            double lambda = (i % 3 == 0) ? 0.7 : ((i % 3 == 1) ? 1.0 : 2.0);
            GaussianKernelOp a = random_trace_class_kernel(rng, n, lambda);
            GaussianKernelOp b = random_trace_class_kernel(rng, n, lambda);
            GaussianKernelOp c = random_trace_class_kernel(rng, n, lambda);
            acc.record(kernel_param_distance(gk_compose(gk_compose(a, b), c),
                                             gk_compose(a, gk_compose(b, c))));
        }
    });

    v.add_check("gaussian-trace-cyclicity", 1e-10, [](Rng& rng, Accum& acc) {
        for (int i = 0; i < 60; ++i) {
            std::size_t n = 1 + (i % 2);
            double lambda = (i % 3 == 0) ? 0.7 : ((i % 3 == 1) ? 1.0 : 2.0);
            GaussianKernelOp a = random_trace_class_kernel(rng, n, lambda);
            GaussianKernelOp b = random_trace_class_kernel(rng, n, lambda);
            cplx t12 = gk_trace(gk_compose(a, b));
            cplx t21 = gk_trace(gk_compose(b, a));
            acc.record(std::abs(t12 - t21) / std::max(1.0, std::abs(t12)));
        }
    });

    v.add_check("gaussian-closure-pointwise", 1e-7, [cfg](Rng& rng, Accum& acc) {
        for (int i = 0; i < 4; ++i) {
            double lambda = (i % 3 == 0) ? 0.7 : ((i % 3 == 1) ? 1.0 : 2.0);
            GaussianKernelOp k1 = random_trace_class_kernel(rng, 1, lambda);
            GaussianKernelOp k2 = random_trace_class_kernel(rng, 1, lambda);
            GaussianKernelOp k12 = gk_compose(k1, k2);
            QuadratureGrid grid(cfg.quad_order_n1, lambda);
            for (int pt = 0; pt < 10; ++pt) {
                cvec z = rng.complex_normal_vec(1, 0.7), w = rng.complex_normal_vec(1, 0.7);
                cplx numeric = grid.integrate_Cn(1, [&](const cvec& u) {
                    return gk_evaluate(k1, z, u) * gk_evaluate(k2, u, w);
                });
                cplx closed = gk_evaluate(k12, z, w);
                acc.record(std::abs(closed - numeric) / std::abs(closed));
            }
        }
    });
}

// ---------------------------------------------------------------------------
// suite: representation
// ---------------------------------------------------------------------------

inline void register_representation_suite(VerifyRunner& v) {
    using namespace verify_detail;
    const auto models = v.models();
    const Config cfg = v.config();

    v.add_check("pi-kernel-homomorphism", 1e-10, [models](Rng& rng, Accum& acc) {
        std::size_t per_model = (200 + models.size() - 1) / models.size();
        for (const auto& ws : models)
            for (std::size_t i = 0; i < per_model; ++i) {
                GroupElement g1 = random_group_element(rng, ws);
                GroupElement g2 = random_group_element(rng, ws);
                GaussianKernelOp lhs = gk_compose(pi_kernel(g1, ws), pi_kernel(g2, ws));
                GaussianKernelOp rhs = pi_kernel(group_multiply(g1, g2, ws), ws);
                acc.record(kernel_param_distance(lhs, rhs));
            }
    });

    v.add_check("pi-unitarity", 1e-10, [models](Rng& rng, Accum& acc) {
        for (const auto& ws : models)
            for (int i = 0; i < 15; ++i) {
                GroupElement g = random_group_element(rng, ws);
                acc.record(kernel_param_distance(gk_adjoint(pi_kernel(g, ws)),
                                                 pi_kernel(group_inverse(g, ws), ws)));
            }
    });

    v.add_check("rho-sigma-factorization", 1e-12, [models](Rng& rng, Accum& acc) {
        for (const auto& ws : models)
            for (int i = 0; i < 15; ++i) {
                GroupElement g = random_group_element(rng, ws);
                GaussianKernelOp composed =
                    gk_compose(rho_kernel(g.z0, g.c0, ws), sigma_kernel(g.t, ws));
                acc.record(kernel_param_distance(pi_kernel(g, ws), composed));
            }
    });

    v.add_check("sigma-diagonal-matrix", 1e-12, [models](Rng& rng, Accum& acc) {
        for (const auto& ws : models) {
            FockBasisSpec spec{ws.n, ws.lambda, 4};
            auto t = rng.uniform_vec(ws.m, -2.0, 2.0);
            FockMatrix mat = kernel_to_matrix(sigma_kernel(t, ws), spec);
            for (std::size_t i = 0; i < mat.basis.size(); ++i)
                for (std::size_t j = 0; j < mat.basis.size(); ++j) {
                    cplx expect(0.0, 0.0);
                    if (i == j) {
                        double phase = 0.0;
                        for (std::size_t k = 0; k < ws.n; ++k)
                            phase -= ws.alpha_of(t, k) * mat.basis[i][k];
                        expect = ws.chi(t) * std::polar(1.0, phase);
                    }
                    acc.record(std::abs(mat.entries(i, j) - expect));
                }
        }
    });

    v.add_check("dpi-commutator", 1e-11, [models](Rng& rng, Accum& acc) {
        for (const auto& ws : models)
            for (int i = 0; i < 10; ++i) {
                LieElement x = random_lie_element(rng, ws);
                LieElement y = random_lie_element(rng, ws);
                DiffOp lhs = diffop_commutator(dpi_symbolic(x, ws), dpi_symbolic(y, ws));
                DiffOp rhs = dpi_symbolic(lie_bracket(x, y, ws), ws);
                acc.record(lhs.max_coeff_distance(rhs));
            }
    });

    v.add_check("mehler-conjugation-oracle", 1e-6, [models](Rng& rng, Accum& acc) {
        // n = 1 models with lambda <= 1.3: the oscillation of the Mehler kernel
        // grows like lambda csc(alpha), which fixed grids cannot resolve near the
        // singular set. The oracle caches B h_p on the grid, then each t costs one
        // pass over the grid per sample point.
        for (const auto& ws : models) {
            if (ws.n != 1 || ws.lambda > 1.3) continue;
            QuadratureGrid grid(72, ws.lambda);
            auto flat = grid.flatten_Cn(1);
            std::size_t np = flat.points.size();
            for (int p = 0; p < 2; ++p) {
                auto hp = [&](const rvec& x) {
                    return cplx(hermite_function_1d(p, x[0], ws.lambda), 0.0);
                };
                cvec bphi(np);
                for (std::size_t j = 0; j < np; ++j)
                    bphi[j] = bargmann_apply(hp, flat.points[j], ws, grid);
                int done = 0;
                while (done < 10) {
                    GroupElement g;
                    if (!random_admissible(rng, ws, true, 0.5, g)) break;
                    SchrodingerGaussianKernel k = mehler_kernel(g.t, ws);
                    for (int pt = 0; pt < 10; ++pt) {
                        rvec x = {rng.uniform(-1.2, 1.2)};
                        cplx oracle(0.0, 0.0);
                        for (std::size_t j = 0; j < np; ++j) {
                            cvec tv = ws.torus_act(g.t, flat.points[j]);
                            oracle += flat.weights[j] * std::conj(bargmann_weight(tv, x, ws)) *
                                      bphi[j];
                        }
                        oracle *= ws.chi(g.t);
                        cplx direct = grid.integrate_Rn(1, [&](const rvec& y) {
                            return k.evaluate(x, y) * hp(y);
                        }, std::sqrt(0.5 * ws.lambda));
                        acc.record(std::abs(oracle - direct) /
                                   std::max(1.0, std::abs(direct)));
                    }
                    ++done;
                }
            }
        }
    });

    v.add_check("mehler-hermite-diagonal", 1e-7, [models](Rng& rng, Accum& acc) {
        for (const auto& ws : models) {
            if (ws.n != 1 || ws.lambda > 1.3) continue;
            QuadratureGrid grid(72, ws.lambda);
            double half_scale = std::sqrt(0.5 * ws.lambda);
            GroupElement g;
            if (!random_admissible(rng, ws, true, 0.5, g)) continue;
            SchrodingerGaussianKernel k = mehler_kernel(g.t, ws);
            for (int p = 0; p <= 3; ++p)
                for (int q = 0; q <= 3; ++q) {
                    auto hq = [&](const rvec& y) {
                        return cplx(hermite_function_1d(q, y[0], ws.lambda), 0.0);
                    };
                    cplx entry = grid.integrate_Rn(1, [&](const rvec& x) {
                        cplx applied = grid.integrate_Rn(
                            1, [&](const rvec& y) { return k.evaluate(x, y) * hq(y); },
                            half_scale);
                        return cplx(hermite_function_1d(p, x[0], ws.lambda), 0.0) * applied;
                    });
                    cplx expect(0.0, 0.0);
                    if (p == q) {
                        double phase = -ws.alpha_of(g.t, 0) * p;
                        expect = ws.chi(g.t) * std::polar(1.0, phase);
                    }
                    acc.record(std::abs(entry - expect));
                }
        }
    });

    v.add_check("pi-prime-conjugation-oracle", 1e-6, [models](Rng& rng, Accum& acc) {
        // oracle: B^{-1} [pi(g) B h_p] by quadrature, with the pi(g) action applied
        // through its explicit affine-action form and the substitution z = t.v + z0 that
        // keeps every evaluation of B h_p on the cached grid
        for (const auto& ws : models) {
            if (ws.n != 1 || ws.lambda > 1.3) continue;
            QuadratureGrid grid(96, ws.lambda);
            auto flat = grid.flatten_Cn(1);
            std::size_t np = flat.points.size();
            for (int p = 0; p < 2; ++p) {
                auto hp = [&](const rvec& x) {
                    return cplx(hermite_function_1d(p, x[0], ws.lambda), 0.0);
                };
                cvec bphi(np);
                for (std::size_t j = 0; j < np; ++j)
                    bphi[j] = bargmann_apply(hp, flat.points[j], ws, grid);
                int done = 0;
                while (done < 10) {
                    GroupElement g;
                    if (!random_admissible(rng, ws, true, 0.5, g)) break;
                    ++done;
                    SchrodingerGaussianKernel k = pi_prime_kernel(g, ws);
                    double l = ws.lambda;
                    double z02 = std::norm(g.z0[0]);
                    for (int pt = 0; pt < 5; ++pt) {
                        rvec x = {rng.uniform(-1.0, 1.0)};
                        cplx oracle(0.0, 0.0);
                        for (std::size_t j = 0; j < np; ++j) {
                            cvec tv = ws.torus_act(g.t, flat.points[j]);
                            cvec z = {tv[0] + g.z0[0]};
                            cplx act = std::exp(cplx(0.0, l * g.c0) +
                                                0.5 * l * std::conj(g.z0[0]) * z[0] -
                                                cplx(0.25 * l * z02, 0.0));
                            // measure ratio from the substitution z = t.v + z0
                            cplx ratio = std::exp(
                                cplx(-0.5 * l * (std::norm(z[0]) - std::norm(flat.points[j][0])),
                                     0.0));
                            oracle += flat.weights[j] * std::conj(bargmann_weight(z, x, ws)) *
                                      act * ratio * bphi[j];
                        }
                        oracle *= ws.chi(g.t);
                        cplx direct = grid.integrate_Rn(1, [&](const rvec& y) {
                            return k.evaluate(x, y) * hp(y);
                        }, std::sqrt(0.5 * ws.lambda));
                        acc.record(std::abs(oracle - direct) /
                                   std::max(1.0, std::abs(direct)));
                    }
                }
            }
        }
    });

    v.add_check("mehler-composition", 1e-8, [models](Rng& rng, Accum& acc) {
        for (const auto& ws : models) {
            for (int i = 0; i < 6; ++i) {
                GroupElement g1, g2;
                if (!random_admissible(rng, ws, true, 0.1, g1)) break;
                if (!random_admissible(rng, ws, true, 0.1, g2)) break;
                std::vector<double> t12(ws.m);
                for (std::size_t j = 0; j < ws.m; ++j) t12[j] = g1.t[j] + g2.t[j];
                bool ok = true;
                for (std::size_t k = 0; k < ws.n; ++k)
                    if (lattice_distance(ws.alpha_of(t12, k), 0.0, M_PI) < 0.1) ok = false;
                if (!ok) continue;
                SchrodingerGaussianKernel lhs =
                    schro_compose(mehler_kernel(g1.t, ws), mehler_kernel(g2.t, ws));
                SchrodingerGaussianKernel rhs = mehler_kernel(t12, ws);
                for (int pt = 0; pt < 3; ++pt) {
                    rvec x(ws.n), y(ws.n);
                    for (std::size_t k = 0; k < ws.n; ++k) {
                        x[k] = rng.uniform(-1.0, 1.0);
                        y[k] = rng.uniform(-1.0, 1.0);
                    }
                    acc.record(std::abs(lhs.evaluate(x, y) - rhs.evaluate(x, y)));
                }
            }
        }
    });

    v.add_check("pi-prime-adjoint-law", 1e-9, [models](Rng& rng, Accum& acc) {
        for (const auto& ws : models) {
            for (int i = 0; i < 6; ++i) {
                GroupElement g;
                if (!random_admissible(rng, ws, true, 0.05, g)) break;
                SchrodingerGaussianKernel adj = schro_adjoint(pi_prime_kernel(g, ws));
                SchrodingerGaussianKernel inv = pi_prime_kernel(group_inverse(g, ws), ws);
                acc.record(std::abs(adj.c - inv.c) / std::abs(inv.c));
                acc.record((adj.P - inv.P).max_abs());
                acc.record((adj.R - inv.R).max_abs());
                acc.record((adj.S - inv.S).max_abs());
            }
        }
    });
}

// ---------------------------------------------------------------------------
// suite: correspondences
// ---------------------------------------------------------------------------

inline void register_correspondences_suite(VerifyRunner& v) {
    using namespace verify_detail;
    const auto models = v.models();
    const Config cfg = v.config();

    v.add_check("w0-pi-trace-vs-closed", 1e-10, [models](Rng& rng, Accum& acc) {
        std::size_t per_model = (100 + models.size() - 1) / models.size();
        for (const auto& ws : models)
            for (std::size_t i = 0; i < per_model; ++i) {
                GroupElement g;
                if (!random_admissible(rng, ws, false, 1e-3, g)) break;
                cvec z = rng.complex_normal_vec(ws.n);
                cplx trace_form = weyl0_symbol_trace(pi_kernel(g, ws), z, ws);
                cplx closed = weyl0_pi_closed_det(g, z, ws);
                acc.record(std::abs(trace_form - closed) / std::max(1.0, std::abs(closed)));
            }
    });

    v.add_check("w0-pi-closed-forms-agree", 1e-12, [models](Rng& rng, Accum& acc) {
        std::size_t per_model = (100 + models.size() - 1) / models.size();
        for (const auto& ws : models)
            for (std::size_t i = 0; i < per_model; ++i) {
                GroupElement g;
                if (!random_admissible(rng, ws, false, 1e-3, g)) break;
                cvec z = rng.complex_normal_vec(ws.n);
                cplx det_form = weyl0_pi_closed_det(g, z, ws);
                cplx factored = weyl0_pi_closed_factored(g, z, ws);
                acc.record(std::abs(det_form - factored) / std::max(1.0, std::abs(det_form)));
            }
    });

    v.add_check("w0-pi-integral-form", 1e-7, [models, cfg](Rng& rng, Accum& acc) {
        for (const auto& ws : models) {
            if (ws.lambda > 1.5) continue; // keep integrands inside the shared grid range
            int samples_per_model = (ws.n == 1) ? 4 : 1;
            QuadratureGrid grid(cfg.quad_order(ws.n), ws.lambda);
            for (int i = 0; i < samples_per_model; ++i) {
                GroupElement g;
                if (!random_admissible(rng, ws, false, 0.35, g)) break;
                GaussianKernelOp pk = pi_kernel(g, ws);
                cvec z = rng.complex_normal_vec(ws.n, 0.6);
                cplx integral = weyl0_symbol_integral(
                    [&](const cvec& zz, const cvec& ww) { return gk_evaluate(pk, zz, ww); }, z,
                    ws, grid);
                cplx closed = weyl0_pi_closed_det(g, z, ws);
                acc.record(std::abs(integral - closed) / std::max(1.0, std::abs(closed)));
            }
        }
    });

    v.add_check("w0-apq-closed-vs-integral", 1e-8, [models, cfg](Rng& rng, Accum& acc) {
        for (const auto& ws : models) {
            if (ws.lambda > 1.5) continue;
            QuadratureGrid grid(cfg.quad_order(ws.n), ws.lambda);
            auto indices = multi_indices_up_to(ws.n, 3);
            if (ws.n == 1) {
                for (const auto& p : indices)
                    for (const auto& q : indices) {
                        cvec z = rng.complex_normal_vec(1, 0.7);
                        cplx closed = weyl0_apq_closed(p, q, z, ws);
                        cplx integral = weyl0_symbol_integral(
                            [&](const cvec& zz, const cvec& ww) {
                                return apq_kernel_value(p, q, ws.lambda, zz, ww);
                            },
                            z, ws, grid);
                        acc.record(std::abs(closed - integral) /
                                   std::max(1.0, std::abs(closed)));
                    }
            } else {
                // representative pairs at n = 2; the grid has order^4 nodes
                for (int i = 0; i < 6; ++i) {
                    const MultiIndex& p = indices[rng.next_u64() % indices.size()];
                    const MultiIndex& q = indices[rng.next_u64() % indices.size()];
                    cvec z = rng.complex_normal_vec(2, 0.6);
                    cplx closed = weyl0_apq_closed(p, q, z, ws);
                    cplx integral = weyl0_symbol_integral(
                        [&](const cvec& zz, const cvec& ww) {
                            return apq_kernel_value(p, q, ws.lambda, zz, ww);
                        },
                        z, ws, grid);
                    acc.record(std::abs(closed - integral) / std::max(1.0, std::abs(closed)));
                }
                break; // one n = 2 model suffices for the reduced sample
            }
        }
    });

    v.add_check("covariance-berezin", 1e-9, [models](Rng& rng, Accum& acc) {
        std::size_t per_model = (50 + models.size() - 1) / models.size();
        for (const auto& ws : models)
            for (std::size_t i = 0; i < per_model; ++i) {
                GroupElement g = random_group_element(rng, ws);
                GroupElement gp = random_group_element(rng, ws);
                GaussianKernelOp a = pi_kernel(gp, ws);
                GaussianKernelOp conj_a = gk_compose(
                    gk_compose(pi_kernel(group_inverse(g, ws), ws), a), pi_kernel(g, ws));
                cvec z = rng.complex_normal_vec(ws.n);
                cplx lhs = berezin_symbol(conj_a, z);
                cplx rhs = berezin_symbol(a, act_on_Cn(g, z, ws));
                acc.record(std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
            }
    });

    v.add_check("covariance-weyl0", 1e-9, [models](Rng& rng, Accum& acc) {
        std::size_t per_model = (50 + models.size() - 1) / models.size();
        for (const auto& ws : models)
            for (std::size_t i = 0; i < per_model; ++i) {
                GroupElement g = random_group_element(rng, ws);
                GaussianKernelOp a = random_trace_class_kernel(rng, ws.n, ws.lambda);
                GaussianKernelOp conj_a = gk_compose(
                    gk_compose(pi_kernel(group_inverse(g, ws), ws), a), pi_kernel(g, ws));
                cvec z = rng.complex_normal_vec(ws.n);
                cplx lhs = weyl0_symbol_trace(conj_a, z, ws);
                cplx rhs = weyl0_symbol_trace(a, act_on_Cn(g, z, ws), ws);
                acc.record(std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
            }
    });

    v.add_check("sw-unit", 1e-12, [models](Rng& rng, Accum& acc) {
        for (const auto& ws : models)
            for (int i = 0; i < 10; ++i) {
                cvec z = rng.complex_normal_vec(ws.n);
                acc.record(std::abs(gk_trace(omega0_kernel(z, ws)) - cplx(1.0, 0.0)));
            }
    });

    v.add_check("sw-reality", 1e-12, [models](Rng& rng, Accum& acc) {
        for (const auto& ws : models)
            for (int i = 0; i < 10; ++i) {
                GaussianKernelOp a = random_trace_class_kernel(rng, ws.n, ws.lambda);
                // symmetrize to a self-adjoint operator: W_0 must be real
                GaussianKernelOp sym = gk_compose(a, gk_adjoint(a));
                cvec z = rng.complex_normal_vec(ws.n);
                acc.record(std::abs(weyl0_symbol_trace(sym, z, ws).imag()));
                // and the conjugation identity on a generic kernel
                cplx w_star = weyl0_symbol_trace(gk_adjoint(a), z, ws);
                cplx w = weyl0_symbol_trace(a, z, ws);
                acc.record(std::abs(w_star - std::conj(w)));
            }
    });

    v.add_check("sw-traciality", 1e-7, [models, cfg](Rng& rng, Accum& acc) {
        int pairs_done = 0;
        for (const auto& ws : models) {
            if (ws.n != 1 || pairs_done >= 18) continue;
            QuadratureGrid grid(cfg.quad_order_n1, ws.lambda);
            std::vector<GaussianKernelOp> ops;
            ops.push_back(GaussianKernelOp::coherent_projector(cvec(1, cplx(0.0, 0.0)), ws.lambda));
            ops.push_back(
                GaussianKernelOp::coherent_projector(rng.complex_normal_vec(1, 0.7), ws.lambda));
            GroupElement g;
            if (random_admissible(rng, ws, false, 0.3, g)) {
                ops.push_back(gk_compose(gk_compose(pi_kernel(g, ws), ops[0]),
                                         pi_kernel(group_inverse(g, ws), ws)));
            }
            for (std::size_t i = 0; i < ops.size(); ++i)
                for (std::size_t j = i; j < ops.size(); ++j) {
                    Weyl0SymbolClosure wi(ops[i], ws), wj(ops[j], ws);
                    cplx lhs = grid.integrate_Cn(1, [&](const cvec& z) {
                        return wi(z) * wj(z) *
                               std::exp(cplx(0.5 * ws.lambda * std::norm(z[0]), 0.0));
                    });
                    cplx rhs = gk_trace(gk_compose(ops[i], ops[j]));
                    acc.record(std::abs(lhs - rhs));
                    ++pairs_done;
                }
        }
        // the exact pair: coherent projector against itself at lambda = 1
        WeightSystem ws(1, 1, {{1.0}}, {0.0}, 1.0);
        QuadratureGrid grid(cfg.quad_order_n1, 1.0);
        GaussianKernelOp p0 = GaussianKernelOp::coherent_projector({cplx(0.0, 0.0)}, 1.0);
        Weyl0SymbolClosure w0(p0, ws);
        cplx lhs = grid.integrate_Cn(
            1, [&](const cvec& z) { return w0(z) * w0(z) * std::exp(cplx(0.5 * std::norm(z[0]), 0.0)); });
        acc.record(std::abs(lhs - cplx(1.0, 0.0)));
        acc.record(std::abs(gk_trace(gk_compose(p0, p0)) - cplx(1.0, 0.0)));
    });

    v.add_check("w1-direct-vs-fock", 1e-9, [models](Rng& rng, Accum& acc) {
        for (const auto& ws : models) {
            if (ws.n != 1) continue;
            GroupElement g;
            if (!random_admissible(rng, ws, true, 0.2, g)) continue;
            bool weyl_ok = true;
            for (std::size_t k = 0; k < ws.n; ++k)
                if (lattice_distance(ws.alpha_of(g.t, k), M_PI, 2.0 * M_PI) < 0.2) weyl_ok = false;
            if (!weyl_ok) continue;
            SchrodingerGaussianKernel kp = pi_prime_kernel(g, ws);
            GaussianKernelOp pk = pi_kernel(g, ws);
            for (int pt = 0; pt < 4; ++pt) {
                rvec x = {rng.uniform(-1.0, 1.0)}, y = {rng.uniform(-1.0, 1.0)};
                cplx direct = weyl1_direct(kp, x, y, ws);
                cplx fock = weyl0_symbol_trace(pk, {cplx(x[0], y[0])}, ws);
                acc.record(std::abs(direct - fock) / std::max(1.0, std::abs(fock)));
            }
        }
    });
}

// ---------------------------------------------------------------------------
// suite: orbit
// ---------------------------------------------------------------------------

inline void register_orbit_suite(VerifyRunner& v) {
    using namespace verify_detail;
    const auto models = v.models();

    v.add_check("psi-pairing-identity", 1e-12, [models](Rng& rng, Accum& acc) {
        std::size_t per_model = (100 + models.size() - 1) / models.size();
        for (const auto& ws : models)
            for (std::size_t i = 0; i < per_model; ++i) {
                LieElement x = random_lie_element(rng, ws);
                // i<psi(z), X> as a polynomial must match the W_0(dpi(X)) display
                PolyZ from_pairing(ws.n);
                {
                    cplx c0 = ws.dchi(x.t) + cplx(0.0, ws.lambda * x.c);
                    for (std::size_t k = 0; k < ws.n; ++k) {
                        double a = ws.alpha_of(x.t, k);
                        c0 += cplx(0.0, 0.5 * a);
                        MultiIndex zk(ws.n), zbk(ws.n);
                        zk[k] = 1;
                        zbk[k] = 1;
                        from_pairing.add_term(zk, zbk, cplx(0.0, -0.5 * a * ws.lambda));
                        from_pairing.add_term(zk, MultiIndex(ws.n),
                                              0.5 * ws.lambda * std::conj(x.u[k]));
                        from_pairing.add_term(MultiIndex(ws.n), zbk,
                                              -0.5 * ws.lambda * x.u[k]);
                    }
                    from_pairing.add_term(MultiIndex(ws.n), MultiIndex(ws.n), c0);
                }
                acc.record(from_pairing.max_coeff_distance(weyl0_dpi_poly(x, ws)));

                // and pointwise through the actual covector pairing
                cvec z = rng.complex_normal_vec(ws.n);
                cplx lhs = cplx(0.0, 1.0) * pairing(psi_map(z, ws), x);
                acc.record(std::abs(lhs - weyl0_dpi(x, z, ws)) /
                           std::max(1.0, std::abs(lhs)));
            }
    });

    v.add_check("psi-equivariance", 1e-9, [models](Rng& rng, Accum& acc) {
        std::size_t per_model = (200 + models.size() - 1) / models.size();
        for (const auto& ws : models)
            for (std::size_t i = 0; i < per_model; ++i) {
                GroupElement g = random_group_element(rng, ws);
                cvec z = rng.complex_normal_vec(ws.n);
                acc.record(psi_equivariance_check(g, z, ws));
            }
    });

    v.add_check("w0-prime-round-trip", 1e-12, [models](Rng& rng, Accum& acc) {
        for (const auto& ws : models)
            for (int i = 0; i < 10; ++i) {
                GaussianKernelOp a = random_trace_class_kernel(rng, ws.n, ws.lambda);
                cvec z = rng.complex_normal_vec(ws.n);
                cplx lhs = w0_prime(a, psi_map(z, ws), ws);
                cplx rhs = weyl0_symbol_trace(a, z, ws);
                acc.record(std::abs(lhs - rhs) / std::max(1.0, std::abs(rhs)));
            }
    });
}

// ---------------------------------------------------------------------------
// suite: star
// ---------------------------------------------------------------------------

namespace verify_detail {

inline PolyXY random_polyxy(Rng& rng, std::size_t n, int max_degree, int max_terms) {
    PolyXY f(n);
    int terms = 1 + static_cast<int>(rng.uniform() * max_terms);
    for (int t = 0; t < terms; ++t) {
        MultiIndex p(n), q(n);
        int budget = static_cast<int>(rng.uniform() * (max_degree + 1));
        for (int d = 0; d < budget; ++d) {
            std::size_t slot = static_cast<std::size_t>(rng.uniform() * 2 * n);
            if (slot < n)
                p[slot] += 1;
            else
                q[slot - n] += 1;
        }
        f.add_term(p, q,
                   cplx(std::floor(rng.uniform(-4.0, 5.0)), std::floor(rng.uniform(-4.0, 5.0))));
    }
    return f;
}

inline PolyZ abs_z_power(std::size_t n, int j) {
    PolyZ base(n);
    for (std::size_t k = 0; k < n; ++k) {
        MultiIndex zk(n), zbk(n);
        zk[k] = 1;
        zbk[k] = 1;
        base.add_term(zk, zbk, cplx(1.0, 0.0));
    }
    PolyZ out = PolyZ::constant(n, cplx(1.0, 0.0));
    for (int e = 0; e < j; ++e) out = out * base;
    return out;
}

} // namespace verify_detail

inline void register_star_suite(VerifyRunner& v) {
    using namespace verify_detail;
    const auto models = v.models();

    v.add_check("moyal-associativity", 1e-12, [](Rng& rng, Accum& acc) {
        for (int i = 0; i < 100; ++i) {
            std::size_t n = 1 + (i % 2);
            PolyXY f = random_polyxy(rng, n, 4, 4);
            PolyXY g = random_polyxy(rng, n, 4, 4);
            PolyXY h = random_polyxy(rng, n, 4, 4);
            PolyXY lhs = moyal(moyal(f, g), h);
            PolyXY rhs = moyal(f, moyal(g, h));
            double scale = 1.0;
            for (const auto& [key, c] : lhs.terms()) scale = std::max(scale, std::abs(c));
            acc.record(lhs.max_coeff_distance(rhs) / scale);
        }
    });

    v.add_check("weyl-functoriality", 1e-12, [](Rng& rng, Accum& acc) {
        for (int i = 0; i < 100; ++i) {
            std::size_t n = 1 + (i % 2);
            PolyXY f = random_polyxy(rng, n, 4, 4);
            PolyXY g = random_polyxy(rng, n, 4, 4);
            DiffOp lhs = weyl_quantize_poly(moyal(f, g));
            DiffOp rhs = diffop_compose(weyl_quantize_poly(f), weyl_quantize_poly(g));
            double scale = 1.0;
            for (const auto& [key, c] : rhs.terms()) scale = std::max(scale, std::abs(c));
            acc.record(lhs.max_coeff_distance(rhs) / scale);
        }
    });

    v.add_check("w1-weyl-scaling", 1e-10, [models](Rng& rng, Accum& acc) {
        for (const auto& ws : models) {
            for (int i = 0; i < 2; ++i) {
                PolyXY f = random_polyxy(rng, ws.n, 4, 5);
                PolyXY lhs = weyl1_of_weyl_quantized(f, ws);
                PolyXY rhs(ws.n);
                for (const auto& [key, c] : f.terms())
                    rhs.add_term(key.p, key.q, c * std::pow(ws.lambda, key.q.degree()));
                acc.record(lhs.max_coeff_distance(rhs));
            }
        }
    });

    v.add_check("gaussian-star-expansion", 1e-10, [models](Rng& rng, Accum& acc) {
        const int total_degree = 6;
        const int m_pts = 32;
        const double radius = 0.35;
        for (const auto& ws_model : models) {
            if (ws_model.n != 1) continue;
            const double lambda = ws_model.lambda;
            WeightSystem ws(1, 1, {{1.0}}, {0.0}, lambda);
            std::vector<std::vector<PolyZ>> lhs(total_degree + 1);
            for (int j = 0; j <= total_degree; ++j) {
                lhs[j].resize(total_degree + 1 - j);
                for (int l = 0; l + j <= total_degree; ++l) {
                    double sign = ((j + l) % 2 == 0) ? 1.0 : -1.0;
                    lhs[j][l] = star0(abs_z_power(1, j), abs_z_power(1, l), ws) *
                                cplx(sign / (factorial(j) * factorial(l)), 0.0);
                }
            }
            cvec z = rng.complex_normal_vec(1, 0.8);
            double z2 = std::norm(z[0]);
            auto closed = [&](cplx u, cplx vv) {
                cplx denom = cplx(1.0, 0.0) + u * vv / (lambda * lambda);
                return std::exp(-(u + vv) / denom * z2) / denom;
            };
            for (int j = 0; j <= total_degree; ++j)
                for (int l = 0; l + j <= total_degree; ++l) {
                    cplx coeff(0.0, 0.0);
                    for (int aa = 0; aa < m_pts; ++aa)
                        for (int bb = 0; bb < m_pts; ++bb) {
                            double ta = 2.0 * M_PI * aa / m_pts, tb = 2.0 * M_PI * bb / m_pts;
                            coeff += closed(std::polar(radius, ta), std::polar(radius, tb)) *
                                     std::polar(1.0, -j * ta - l * tb);
                        }
                    coeff /= static_cast<double>(m_pts) * m_pts * std::pow(radius, j + l);
                    cplx from_star = lhs[j][l].evaluate(z);
                    acc.record(std::abs(coeff - from_star) / std::max(1.0, std::abs(from_star)));
                }
            break; // lambda sweep is covered through the model list's first n=1 model
        }
        // the pinned instance u = v = 1, lambda = 1
        WeightSystem ws1(1, 1, {{1.0}}, {0.0}, 1.0);
        GaussianStarProduct g = gaussian_star0({cplx(1.0, 0.0)}, {cplx(1.0, 0.0)}, ws1);
        acc.record(std::abs(g.prefactor - cplx(0.5, 0.0)));
        acc.record(std::abs(g.exponent[0] - cplx(1.0, 0.0)));
    });

    v.add_check("star-exp-series-match", 1e-9, [](Rng& rng, Accum& acc) {
        const cplx I(0.0, 1.0);
        for (double lambda : {1.0, 0.7}) {
            WeightSystem ws(1, 1, {{1.0}}, {0.0}, lambda);
            double c0 = rng.uniform(-1.0, 1.0);
            cvec a = rng.complex_normal_vec(1, 0.5);
            rvec b = {rng.uniform(0.3, 1.0)};
            PolyZ p = star_exp_quadratic(c0, a, b, 1);
            const int order = 8;
            FormalSeries<PolyZ> series = star_exp_series_star0(p, order, ws);
            auto closed_in_s = [&](cplx s, const cvec& z) {
                cplx w = s * b[0] / lambda;
                cplx e = I * s * c0;
                cplx val = 1.0 / std::cos(w);
                cplx tanw = std::tan(w);
                e += I * lambda * std::norm(a[0]) * (-s / (lambda * b[0]) + tanw / (b[0] * b[0]));
                cvec zz = z;
                e += I * lambda * std::norm(zz[0]) * tanw;
                e += (lambda / b[0]) * tanw * (zz[0] * std::conj(a[0]) - a[0] * std::conj(zz[0]));
                return val * std::exp(e);
            };
            for (int pt = 0; pt < 2; ++pt) {
                cvec z = rng.complex_normal_vec(1, 0.8);
                const int m_pts = 64;
                const double radius = 0.4;
                for (int k = 0; k <= order; ++k) {
                    cplx coeff(0.0, 0.0);
                    for (int j = 0; j < m_pts; ++j) {
                        double theta = 2.0 * M_PI * j / m_pts;
                        coeff += closed_in_s(std::polar(radius, theta), z) *
                                 std::polar(1.0, -k * theta);
                    }
                    coeff /= static_cast<double>(m_pts) * std::pow(radius, k);
                    cplx from_series = series.coefficients[k].evaluate(z);
                    acc.record(std::abs(coeff - from_series) /
                               std::max(1.0, std::abs(from_series)));
                }
            }
        }
    });

    v.add_check("star-exp-pure-quadratic", 1e-12, [models](Rng& rng, Accum& acc) {
        for (const auto& ws_model : models) {
            if (ws_model.n != 1) continue;
            WeightSystem ws(1, 1, {{1.0}}, {0.0}, ws_model.lambda);
            for (int i = 0; i < 5; ++i) {
                double b = rng.uniform(0.2, 1.2) * (i % 2 ? 1.0 : -1.0);
                cvec z = rng.complex_normal_vec(1);
                cplx value = star_exp_closed(0.0, {cplx(0.0, 0.0)}, {b}, z, ws);
                cplx expect =
                    std::exp(cplx(0.0, ws.lambda * std::norm(z[0]) * std::tan(b / ws.lambda))) /
                    std::cos(b / ws.lambda);
                acc.record(std::abs(value - expect) / std::abs(expect));
            }
        }
    });
}

inline const std::vector<std::string>& all_suite_names() {
    static const std::vector<std::string> names = {"group",           "gaussian", "representation",
                                                   "correspondences", "orbit",    "star"};
    return names;
}

inline SuiteReport run_suite(const std::string& name, const Config& cfg) {
    VerifyRunner runner(cfg);
    if (name == "group")
        register_group_suite(runner);
    else if (name == "gaussian")
        register_gaussian_suite(runner);
    else if (name == "representation")
        register_representation_suite(runner);
    else if (name == "correspondences" || name == "sw-axioms")
        register_correspondences_suite(runner);
    else if (name == "orbit")
        register_orbit_suite(runner);
    else if (name == "star")
        register_star_suite(runner);
    else
        throw config_error("unknown suite '" + name + "'");
    SuiteReport report;
    report.suite = name;
    if (name == "sw-axioms") {
        // focused view: the four Stratonovich-Weyl axiom checks
        for (const auto& c : runner.run()) {
            if (c.name.rfind("sw-", 0) == 0 || c.name.rfind("covariance-", 0) == 0)
                report.checks.push_back(c);
        }
    } else {
        report.checks = runner.run();
    }
    for (const auto& c : report.checks) report.pass = report.pass && c.pass;
    return report;
}

} // namespace fockweyl
