#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace linsep {

/// Deterministic random stream. mt19937_64 output is pinned by the standard,
/// but the std distributions are not, so all conversions are done by hand to
/// keep streams byte-identical across platforms and standard libraries.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    /// Uniform on [0, 1), 53-bit resolution.
    double unit() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }

    double uniform(double lo, double hi) { return lo + (hi - lo) * unit(); }

    /// -1 or +1 with equal probability.
    int sign() { return (engine_() & 1u) ? 1 : -1; }

    /// Integer uniform on [0, n).
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

    /// Standard normal via Box-Muller on the hand-rolled uniform.
    double gaussian() {
        // 1 - unit() lies in (0, 1], keeping the log argument positive.
        double u1 = 1.0 - unit();
        double u2 = unit();
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586476925286766559 * u2);
    }

    /// Uniform direction on the unit sphere in `dim` dimensions.
    std::vector<double> unit_sphere(int dim) {
        std::vector<double> v(dim);
        double n2 = 0.0;
        do {
            n2 = 0.0;
            for (auto& x : v) {
                x = gaussian();
                n2 += x * x;
            }
        } while (n2 == 0.0);
        double inv = 1.0 / std::sqrt(n2);
        for (auto& x : v) x *= inv;
        return v;
    }

    /// Uniform point in the closed ball of the given radius.
    std::vector<double> in_ball(int dim, double radius) {
        auto v = unit_sphere(dim);
        double r = radius * std::pow(unit(), 1.0 / dim);
        for (auto& x : v) x *= r;
        return v;
    }

private:
    std::mt19937_64 engine_;
};

}  // namespace linsep
