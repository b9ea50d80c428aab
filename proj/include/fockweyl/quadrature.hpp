#pragma once

#include <cmath>
#include <complex>
#include <functional>
#include <vector>

#include "fockweyl/errors.hpp"

namespace fockweyl {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;
using rvec = std::vector<double>;

/// Gauss-Hermite nodes and weights for int f(x) e^{-x^2} dx, by Newton iteration
/// on the scaled Hermite recurrence.
struct GaussHermiteRule {
    rvec nodes;
    rvec weights;

    explicit GaussHermiteRule(int order) {
        if (order < 1) throw error("GaussHermiteRule: order >= 1 required");
        nodes.resize(order);
        weights.resize(order);
        const double pim4 = 0.7511255444649425; // pi^{-1/4}
        const int maxit = 100;
        int m = (order + 1) / 2;
        double z = 0.0;
        for (int i = 0; i < m; ++i) {
            if (i == 0)
                z = std::sqrt(2.0 * order + 1.0) - 1.85575 * std::pow(2.0 * order + 1.0, -0.16667);
            else if (i == 1)
                z -= 1.14 * std::pow(static_cast<double>(order), 0.426) / z;
            else if (i == 2)
                z = 1.86 * z - 0.86 * nodes[0];
            else if (i == 3)
                z = 1.91 * z - 0.91 * nodes[1];
            else
                z = 2.0 * z - nodes[i - 2];
            double pp = 0.0;
            for (int it = 0; it < maxit; ++it) {
                double p1 = pim4, p2 = 0.0;
                for (int j = 0; j < order; ++j) {
                    double p3 = p2;
                    p2 = p1;
                    p1 = z * std::sqrt(2.0 / (j + 1.0)) * p2 - std::sqrt(j / (j + 1.0)) * p3;
                }
                pp = std::sqrt(2.0 * order) * p2;
                double z1 = z;
                z = z1 - p1 / pp;
                if (std::abs(z - z1) <= 1e-15) break;
            }
            nodes[i] = z;
            nodes[order - 1 - i] = -z;
            weights[i] = 2.0 / (pp * pp);
            weights[order - 1 - i] = weights[i];
        }
    }
};

/// Tensor Gauss-Hermite grid for the measures of this library. Exact for
/// polynomial integrands of degree <= 2*order-1 per real axis.
class QuadratureGrid {
public:
    QuadratureGrid(int order, double lambda) : order_(order), lambda_(lambda), rule_(order) {}

    int order() const { return order_; }
    double lambda() const { return lambda_; }

    /// int_{C^n} f(w) e^{-lambda|w|^2/2} dmu_lambda(w),
    /// dmu_lambda = (lambda/2pi)^n dm. Nodes scale as w = sqrt(2/lambda)(xi + i eta).
    cplx integrate_Cn(std::size_t n, const std::function<cplx(const cvec&)>& f) const {
        double scale = std::sqrt(2.0 / lambda_);
        std::size_t axes = 2 * n;
        std::vector<int> idx(axes, 0);
        cvec w(n);
        cplx sum(0.0, 0.0);
        for (;;) {
            double wt = 1.0;
            for (std::size_t a = 0; a < axes; ++a) wt *= rule_.weights[idx[a]];
            for (std::size_t k = 0; k < n; ++k)
                w[k] = cplx(scale * rule_.nodes[idx[2 * k]], scale * rule_.nodes[idx[2 * k + 1]]);
            sum += wt * f(w);
            std::size_t a = 0;
            for (; a < axes; ++a) {
                if (++idx[a] < order_) break;
                idx[a] = 0;
            }
            if (a == axes) break;
        }
        return sum * std::pow(M_PI, -static_cast<double>(n));
    }

    /// int_{R^n} f(x) dx for Gaussian-dominated f; nodes scale as x = xi/s with
    /// s = sqrt(lambda) by default (matched to integrands decaying like e^{-lambda x^2}).
    cplx integrate_Rn(std::size_t n, const std::function<cplx(const rvec&)>& f,
                      double scale_override = 0.0) const {
        double s = (scale_override > 0.0) ? scale_override : std::sqrt(lambda_);
        rvec total_weight(order_);
        for (int i = 0; i < order_; ++i)
            total_weight[i] = rule_.weights[i] * std::exp(rule_.nodes[i] * rule_.nodes[i]) / s;
        std::vector<int> idx(n, 0);
        rvec x(n);
        cplx sum(0.0, 0.0);
        for (;;) {
            double wt = 1.0;
            for (std::size_t a = 0; a < n; ++a) {
                wt *= total_weight[idx[a]];
                x[a] = rule_.nodes[idx[a]] / s;
            }
            sum += wt * f(x);
            std::size_t a = 0;
            for (; a < n; ++a) {
                if (++idx[a] < order_) break;
                idx[a] = 0;
            }
            if (a == n) break;
        }
        return sum;
    }

    const GaussHermiteRule& rule() const { return rule_; }

    /// Flattened C^n grid: points with combined weights such that
    /// int f e^{-lambda|w|^2/2} dmu_lambda = sum_j weights[j] f(points[j]).
    struct FlatGridCn {
        std::vector<cvec> points;
        rvec weights;
    };

    FlatGridCn flatten_Cn(std::size_t n) const {
        FlatGridCn flat;
        double scale = std::sqrt(2.0 / lambda_);
        double mu_norm = std::pow(M_PI, -static_cast<double>(n));
        std::vector<int> idx(2 * n, 0);
        for (;;) {
            double wt = mu_norm;
            cvec w(n);
            for (std::size_t a = 0; a < 2 * n; ++a) wt *= rule_.weights[idx[a]];
            for (std::size_t k = 0; k < n; ++k)
                w[k] = cplx(scale * rule_.nodes[idx[2 * k]], scale * rule_.nodes[idx[2 * k + 1]]);
            flat.points.push_back(std::move(w));
            flat.weights.push_back(wt);
            std::size_t a = 0;
            for (; a < 2 * n; ++a) {
                if (++idx[a] < order_) break;
                idx[a] = 0;
            }
            if (a == 2 * n) break;
        }
        return flat;
    }

private:
    int order_;
    double lambda_;
    GaussHermiteRule rule_;
};

} // namespace fockweyl
