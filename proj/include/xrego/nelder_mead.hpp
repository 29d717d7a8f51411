#pragma once

#include <functional>

#include "xrego/rand_geometry.hpp"

namespace xrego {

struct NelderMeadOptions {
    double reflection = 1.0;
    double expansion = 2.0;
    double contraction = 0.5;
    double shrink = 0.5;
    double initial_edge = 0.1;
    double f_tol = 1e-8;   // stop when the simplex f-spread falls below this
    double x_tol = 1e-8;   // or when the simplex diameter does
    int max_iters = 0;     // 0 -> 500 * dim
};

struct NelderMeadResult {
    Vector x;
    double f = 0.0;
    int iters = 0;
    int evals = 0;
    bool converged = false;  // false means the iteration cap truncated the descent
};

// Classic simplex descent. Tolerates +inf objective values (extreme
// barrier), which simply lose every ordering comparison.
NelderMeadResult nelder_mead(const std::function<double(const Vector&)>& f, const Vector& x0,
                             const NelderMeadOptions& opts = {});

}  // namespace xrego
