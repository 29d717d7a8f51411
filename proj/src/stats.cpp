#include "xrego/stats.hpp"

#include <cmath>
#include <stdexcept>

namespace xrego {

WilsonInterval wilson95(long long successes, long long trials) {
    if (trials <= 0 || successes < 0 || successes > trials) {
        throw std::invalid_argument("wilson95: need 0 <= successes <= trials, trials > 0");
    }
    constexpr double z = 1.959963984540054;
    const double n = static_cast<double>(trials);
    const double p = static_cast<double>(successes) / n;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / n;
    WilsonInterval w;
    w.center = (p + z2 / (2.0 * n)) / denom;
    w.half_width = z * std::sqrt(p * (1.0 - p) / n + z2 / (4.0 * n * n)) / denom;
    w.lower = std::max(0.0, w.center - w.half_width);
    w.upper = std::min(1.0, w.center + w.half_width);
    return w;
}

double normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

}  // namespace xrego
