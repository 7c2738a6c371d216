#include "ceig/random.hpp"

#include <cmath>
#include <numbers>

namespace ceig {

double SplitMix64::gaussian() noexcept
{
    if (has_spare_) {
        has_spare_ = false;
        return spare_;
    }
    const double u1 = 1.0 - uniform();  // (0, 1]
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double phi = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(phi);
    has_spare_ = true;
    return r * std::cos(phi);
}

Vector SplitMix64::unit_vector(std::size_t n)
{
    Vector v(n);
    for (;;) {
        double s = 0.0;
        for (double& x : v) {
            x = gaussian();
            s += x * x;
        }
        if (s > 1e-300) {
            const double inv = 1.0 / std::sqrt(s);
            for (double& x : v) x *= inv;
            return v;
        }
    }
}

} // namespace ceig
