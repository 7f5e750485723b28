#pragma once

#include <cmath>
#include <cstdint>
#include <random>

#include "bubbletile/errors.hpp"

namespace bubbletile {

// splitmix64 step, used to mix seeds. Distinct streams (per tile, per run)
// are derived from one user seed so a scenario is reproducible from a single
// integer.
inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t base, std::uint64_t stream) {
    return splitmix64(splitmix64(base) ^ splitmix64(~stream));
}

// Gaussian (and heavy-tailed) variates on top of mt19937_64.
//
// std::normal_distribution is implementation defined, which would make
// recorded runs differ between standard libraries. Box-Muller on explicitly
// constructed uniforms is pinned down everywhere.
class GaussianStream {
public:
    explicit GaussianStream(std::uint64_t seed) : eng_(seed) {}

    // Uniform on (0,1), never exactly 0 or 1.
    double uniform() {
        return (static_cast<double>(eng_() >> 11) + 0.5) * 0x1p-53;
    }

    double normal() {
        if (has_spare_) {
            has_spare_ = false;
            return spare_;
        }
        double u1 = uniform();
        double u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double a = 2.0 * M_PI * u2;
        spare_ = r * std::sin(a);
        has_spare_ = true;
        return r * std::cos(a);
    }

    // Student t with 3 degrees of freedom, scaled by 1/sqrt(3) so the result
    // has unit variance. Used for heavy-tailed disturbance models.
    double student_t3() {
        double z = normal();
        double c1 = normal();
        double c2 = normal();
        double c3 = normal();
        double chi2 = c1 * c1 + c2 * c2 + c3 * c3;
        if (chi2 < 1e-12) chi2 = 1e-12;
        double t = z * std::sqrt(3.0 / chi2);
        return t / std::sqrt(3.0);
    }

private:
    std::mt19937_64 eng_;
    double spare_ = 0.0;
    bool has_spare_ = false;
};

} // namespace bubbletile
