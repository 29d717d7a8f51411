#pragma once

namespace xrego {

struct WilsonInterval {
    double lower = 0.0;
    double upper = 1.0;
    double center = 0.0;
    double half_width = 0.0;
};

// Wilson 95% score interval for a binomial proportion. Behaves sensibly at
// the boundaries, which matters when the estimated probability is tiny.
WilsonInterval wilson95(long long successes, long long trials);

// Standard normal CDF.
double normal_cdf(double x);

}  // namespace xrego
