#include "repeater/keyrate.hpp"

#include <algorithm>
#include <cmath>

namespace qrep {

double binary_entropy(double q) noexcept
{
    if (q <= 0.0 || q >= 1.0) return 0.0;
    return -q * std::log2(q) - (1.0 - q) * std::log2(1.0 - q);
}

double secure_fraction(double q) noexcept
{
    // Above one half the binary entropy turns back down; no key there.
    if (q >= 0.5) return 0.0;
    return std::max(1.0 - 2.0 * binary_entropy(q), 0.0);
}

double secure_fraction_threshold()
{
    static const double root = [] {
        double lo = 0.01, hi = 0.5;  // 1 - 2h is positive at lo, negative at hi
        for (int i = 0; i < 200 && hi - lo > 1e-16; ++i) {
            const double mid = 0.5 * (lo + hi);
            if (1.0 - 2.0 * binary_entropy(mid) > 0.0) lo = mid;
            else hi = mid;
        }
        return 0.5 * (lo + hi);
    }();
    return root;
}

}  // namespace qrep
