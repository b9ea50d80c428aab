#pragma once

#include <stdexcept>
#include <string>

namespace fockweyl {

/// Base class for all library errors.
class error : public std::runtime_error {
public:
    explicit error(const std::string& what) : std::runtime_error(what) {}
};

class dimension_mismatch : public error {
public:
    explicit dimension_mismatch(const std::string& what) : error(what) {}
};

/// Re(N) of a Gaussian integral is not positive definite.
class not_integrable : public error {
public:
    explicit not_integrable(const std::string& what) : error(what) {}
};

/// The coefficient matrix M of a Gaussian integral is singular or near-singular.
class singular_m : public error {
public:
    explicit singular_m(const std::string& what) : error(what) {}
};

/// Diagonal Gaussian integral of a kernel diverges.
class not_trace_class : public error {
public:
    explicit not_trace_class(const std::string& what) : error(what) {}
};

/// Input lies within the guard distance of a forbidden parameter set.
class domain_error : public error {
public:
    explicit domain_error(const std::string& what) : error(what) {}
};

/// Covector does not lie on the coadjoint orbit chart.
class off_orbit : public error {
public:
    explicit off_orbit(const std::string& what) : error(what) {}
};

class order_too_large : public error {
public:
    explicit order_too_large(const std::string& what) : error(what) {}
};

/// Some b_k vanishes; the closed-form star exponential does not apply.
class degenerate_b : public error {
public:
    explicit degenerate_b(const std::string& what) : error(what) {}
};

/// 1 + u_k v_k / lambda^2 vanishes in the Gaussian star product.
class singular_product : public error {
public:
    explicit singular_product(const std::string& what) : error(what) {}
};

class config_error : public error {
public:
    explicit config_error(const std::string& what) : error(what) {}
};

} // namespace fockweyl
