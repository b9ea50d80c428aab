#pragma once

#include <cmath>
#include <complex>
#include <vector>

#include "fockweyl/errors.hpp"

namespace fockweyl {

using cplx = std::complex<double>;
using cvec = std::vector<cplx>;
using rvec = std::vector<double>;

/// Dense complex matrix, row-major. Sized for the small systems of this library
/// (Gaussian quadratic forms, truncated Fock bases).
class CMat {
public:
    CMat() = default;
    CMat(std::size_t rows, std::size_t cols, cplx fill = cplx(0.0, 0.0))
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static CMat identity(std::size_t n, cplx scale = cplx(1.0, 0.0)) {
        CMat m(n, n);
        for (std::size_t i = 0; i < n; ++i) m(i, i) = scale;
        return m;
    }

    static CMat diagonal(const cvec& d) {
        CMat m(d.size(), d.size());
        for (std::size_t i = 0; i < d.size(); ++i) m(i, i) = d[i];
        return m;
    }

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }

    cplx operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }
    cplx& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }

    CMat operator+(const CMat& o) const {
        check_shape(o);
        CMat r = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
        return r;
    }
    CMat operator-(const CMat& o) const {
        check_shape(o);
        CMat r = *this;
        for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
        return r;
    }
    CMat operator*(cplx s) const {
        CMat r = *this;
        for (auto& x : r.data_) x *= s;
        return r;
    }
    CMat operator*(const CMat& o) const {
        if (cols_ != o.rows_) throw dimension_mismatch("CMat: product shape mismatch");
        CMat r(rows_, o.cols_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t k = 0; k < cols_; ++k) {
                cplx aik = (*this)(i, k);
                if (aik == cplx(0.0, 0.0)) continue;
                for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
            }
        return r;
    }

    cvec operator*(const cvec& v) const {
        if (cols_ != v.size()) throw dimension_mismatch("CMat: vector shape mismatch");
        cvec r(rows_, cplx(0.0, 0.0));
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r[i] += (*this)(i, j) * v[j];
        return r;
    }

    CMat transpose() const {
        CMat r(cols_, rows_);
        for (std::size_t i = 0; i < rows_; ++i)
            for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
        return r;
    }

    CMat conj() const {
        CMat r = *this;
        for (auto& x : r.data_) x = std::conj(x);
        return r;
    }

    CMat adjoint() const { return conj().transpose(); }

    double max_abs() const {
        double m = 0.0;
        for (const auto& x : data_) m = std::max(m, std::abs(x));
        return m;
    }

    double frobenius() const {
        double s = 0.0;
        for (const auto& x : data_) s += std::norm(x);
        return std::sqrt(s);
    }

    cplx trace() const {
        cplx t(0.0, 0.0);
        for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
        return t;
    }

private:
    void check_shape(const CMat& o) const {
        if (rows_ != o.rows_ || cols_ != o.cols_)
            throw dimension_mismatch("CMat: shape mismatch");
    }
    std::size_t rows_ = 0, cols_ = 0;
    cvec data_;
};

/// LU decomposition with partial pivoting. Returns determinant; fills inverse on request.
/// Throws singular_m when a pivot collapses below tiny.
inline cplx lu_det(const CMat& a, CMat* inverse = nullptr) {
    std::size_t n = a.rows();
    if (n != a.cols()) throw dimension_mismatch("lu_det: square matrix required");
    CMat lu = a;
    std::vector<std::size_t> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = i;
    cplx det(1.0, 0.0);
    double scale = std::max(a.max_abs(), 1e-300);
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t piv = col;
        double best = std::abs(lu(col, col));
        for (std::size_t r = col + 1; r < n; ++r) {
            double v = std::abs(lu(r, col));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (best < 1e-300 * scale) throw singular_m("lu_det: singular matrix");
        if (piv != col) {
            for (std::size_t j = 0; j < n; ++j) std::swap(lu(piv, j), lu(col, j));
            std::swap(perm[piv], perm[col]);
            det = -det;
        }
        det *= lu(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            cplx f = lu(r, col) / lu(col, col);
            lu(r, col) = f;
            for (std::size_t j = col + 1; j < n; ++j) lu(r, j) -= f * lu(col, j);
        }
    }
    if (inverse) {
        *inverse = CMat(n, n);
        for (std::size_t rhs = 0; rhs < n; ++rhs) {
            cvec x(n, cplx(0.0, 0.0));
            for (std::size_t i = 0; i < n; ++i) {
                cplx b = (perm[i] == rhs) ? cplx(1.0, 0.0) : cplx(0.0, 0.0);
                for (std::size_t j = 0; j < i; ++j) b -= lu(i, j) * x[j];
                x[i] = b;
            }
            for (std::size_t ii = n; ii-- > 0;) {
                cplx b = x[ii];
                for (std::size_t j = ii + 1; j < n; ++j) b -= lu(ii, j) * x[j];
                x[ii] = b / lu(ii, ii);
            }
            for (std::size_t i = 0; i < n; ++i) (*inverse)(i, rhs) = x[i];
        }
    }
    return det;
}

inline CMat inverse(const CMat& a) {
    CMat inv;
    lu_det(a, &inv);
    return inv;
}

/// 1-norm condition estimate via explicit inverse; the matrices here are tiny.
inline double condition_estimate(const CMat& a) {
    auto one_norm = [](const CMat& m) {
        double best = 0.0;
        for (std::size_t j = 0; j < m.cols(); ++j) {
            double s = 0.0;
            for (std::size_t i = 0; i < m.rows(); ++i) s += std::abs(m(i, j));
            best = std::max(best, s);
        }
        return best;
    };
    CMat inv;
    lu_det(a, &inv);
    return one_norm(a) * one_norm(inv);
}

/// Eigenvalues of a real symmetric matrix by cyclic Jacobi rotations, ascending.
inline rvec symmetric_eigenvalues(const CMat& s) {
    std::size_t n = s.rows();
    if (n != s.cols()) throw dimension_mismatch("symmetric_eigenvalues: square required");
    std::vector<double> a(n * n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i * n + j] = 0.5 * (s(i, j).real() + s(j, i).real());
    for (int sweep = 0; sweep < 100; ++sweep) {
        double off = 0.0;
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = i + 1; j < n; ++j) off += a[i * n + j] * a[i * n + j];
        if (off < 1e-300) break;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) {
                double apq = a[p * n + q];
                if (std::abs(apq) < 1e-300) continue;
                double app = a[p * n + p], aqq = a[q * n + q];
                double theta = 0.5 * (aqq - app) / apq;
                double t = (theta >= 0 ? 1.0 : -1.0) /
                           (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                double c = 1.0 / std::sqrt(t * t + 1.0);
                double sn = t * c;
                for (std::size_t k = 0; k < n; ++k) {
                    double akp = a[k * n + p], akq = a[k * n + q];
                    a[k * n + p] = c * akp - sn * akq;
                    a[k * n + q] = sn * akp + c * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    double apk = a[p * n + k], aqk = a[q * n + k];
                    a[p * n + k] = c * apk - sn * aqk;
                    a[q * n + k] = sn * apk + c * aqk;
                }
            }
    }
    rvec eig(n);
    for (std::size_t i = 0; i < n; ++i) eig[i] = a[i * n + i];
    std::sort(eig.begin(), eig.end());
    return eig;
}

inline double min_real_symmetric_part_eigenvalue(const CMat& m) {
    std::size_t n = m.rows();
    CMat sym(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            sym(i, j) = cplx(0.5 * (m(i, j).real() + m(j, i).real()), 0.0);
    return symmetric_eigenvalues(sym).front();
}

/// Square root of det(theta) on the branch continuous along theta + s*I, s: large -> 0.
/// This is the unique branch that is positive for real positive definite matrices,
/// valid whenever Re(theta) is positive semidefinite and theta is invertible. It can
/// differ by a sign from the principal square root of the full determinant.
inline cplx continuous_sqrt_det(const CMat& theta) {
    std::size_t n = theta.rows();
    double norm = std::max(theta.max_abs(), 1e-30);
    double s0 = norm * static_cast<double>(n + 2) * 4.0;
    auto det_at = [&](double s) {
        CMat m = theta;
        for (std::size_t i = 0; i < n; ++i) m(i, i) += s;
        return lu_det(m);
    };
    cplx d0 = det_at(s0);
    // eigenvalues of theta + s0*I cluster near s0; total argument is small
    double arg = std::arg(d0);
    // walk s down to zero, accumulating the argument increment of det
    double s_hi = s0;
    cplx d_prev = d0;
    while (s_hi > 0.0) {
        double s_lo = (s_hi > norm * 1e-14) ? s_hi * 0.5 : 0.0;
        for (;;) {
            cplx d_next = det_at(s_lo);
            cplx ratio = d_next / d_prev;
            double dphi = std::arg(ratio);
            if (std::abs(dphi) < 1.5 || s_hi - s_lo < norm * 1e-300) {
                arg += dphi;
                d_prev = d_next;
                s_hi = s_lo;
                break;
            }
            s_lo = 0.5 * (s_hi + s_lo);
        }
    }
    double mag = std::sqrt(std::abs(d_prev));
    return std::polar(mag, 0.5 * arg);
}

} // namespace fockweyl
