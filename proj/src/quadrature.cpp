#include "nclab/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "nclab/errors.hpp"

namespace nclab {

// Newton iteration on the orthonormal Hermite recurrence, with the usual
// asymptotic initial guesses for the largest roots and extrapolation from the
// previous roots for the rest. Roots are symmetric, so only half are found.
GaussHermiteRule::GaussHermiteRule(int n) {
    if (n < 1 || n > 200) throw InvalidParams("Gauss-Hermite order must be in [1, 200], got " + std::to_string(n));
    const double pim4 = 1.0 / std::pow(std::numbers::pi, 0.25);
    const int half = (n + 1) / 2;
    std::vector<double> x(static_cast<std::size_t>(n)), w(static_cast<std::size_t>(n));
    const double dn = static_cast<double>(n);

    double z = 0.0;
    for (int i = 0; i < half; ++i) {
        if (i == 0) {
            z = std::sqrt(2.0 * dn + 1.0) - 1.85575 * std::pow(2.0 * dn + 1.0, -0.16667);
        } else if (i == 1) {
            z -= 1.14 * std::pow(dn, 0.426) / z;
        } else if (i == 2) {
            z = 1.86 * z - 0.86 * x[0];
        } else if (i == 3) {
            z = 1.91 * z - 0.91 * x[1];
        } else {
            z = 2.0 * z - x[static_cast<std::size_t>(i - 2)];
        }

        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p1 = pim4;
            double p2 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p3 = p2;
                p2 = p1;
                const double dj = static_cast<double>(j);
                p1 = z * std::sqrt(2.0 / (dj + 1.0)) * p2 - std::sqrt(dj / (dj + 1.0)) * p3;
            }
            pp = std::sqrt(2.0 * dn) * p2;
            const double z1 = z;
            z = z1 - p1 / pp;
            if (std::abs(z - z1) <= 1e-15 * std::max(1.0, std::abs(z))) break;
        }
        const auto lo = static_cast<std::size_t>(i);
        const auto hi = static_cast<std::size_t>(n - 1 - i);
        x[lo] = z;
        x[hi] = -z;
        w[lo] = w[hi] = 2.0 / (pp * pp);
    }

    nodes.assign(x.rbegin(), x.rend());
    weights.assign(w.rbegin(), w.rend());
    if (n % 2 == 1) nodes[static_cast<std::size_t>(n / 2)] = 0.0;
}

}  // namespace nclab
