#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace fockweyl {

/// Deterministic generator with portable output. Distributions are implemented
/// in-library so reports are reproducible across standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed ? seed : 0x9e3779b97f4a7c15ull) {}

    /// Derive an independent stream, e.g. one per named check.
    static Rng for_check(std::uint64_t seed, const std::string& name) {
        std::uint64_t h = 1469598103934665603ull;
        for (char ch : name) {
            h ^= static_cast<unsigned char>(ch);
            h *= 1099511628211ull;
        }
        return Rng(seed ^ h);
    }

    std::uint64_t next_u64() {
        // splitmix64
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ull);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
        return z ^ (z >> 31);
    }

    /// Uniform in [0,1).
    double uniform() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

    /// Standard normal via Box-Muller.
    double normal() {
        double u1 = uniform(), u2 = uniform();
        u1 = std::max(u1, 1e-300);
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }

    /// Complex Gaussian: independent N(0, sigma^2) real and imaginary parts.
    std::complex<double> complex_normal(double sigma = 1.0) {
        return {sigma * normal(), sigma * normal()};
    }

    std::vector<double> uniform_vec(std::size_t len, double lo, double hi) {
        std::vector<double> v(len);
        for (auto& x : v) x = uniform(lo, hi);
        return v;
    }

    std::vector<std::complex<double>> complex_normal_vec(std::size_t len, double sigma = 1.0) {
        std::vector<std::complex<double>> v(len);
        for (auto& x : v) x = complex_normal(sigma);
        return v;
    }

private:
    std::uint64_t state_;
};

} // namespace fockweyl
