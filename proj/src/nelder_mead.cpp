#include "xrego/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <vector>

namespace xrego {

namespace {

double guard(double v) {
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
}

}  // namespace

NelderMeadResult nelder_mead(const std::function<double(const Vector&)>& f, const Vector& x0,
                             const NelderMeadOptions& opts) {
    const int n = static_cast<int>(x0.size());
    const int max_iters = opts.max_iters > 0 ? opts.max_iters : 500 * n;

    std::vector<Vector> simplex(n + 1, x0);
    std::vector<double> fv(n + 1);
    int evals = 0;
    auto eval = [&](const Vector& x) {
        ++evals;
        return guard(f(x));
    };
    for (int i = 1; i <= n; ++i) simplex[i](i - 1) += opts.initial_edge;
    for (int i = 0; i <= n; ++i) fv[i] = eval(simplex[i]);

    std::vector<int> order(n + 1);
    std::iota(order.begin(), order.end(), 0);
    auto sort_simplex = [&] {
        std::stable_sort(order.begin(), order.end(),
                         [&](int a, int b) { return fv[a] < fv[b]; });
    };

    int iters = 0;
    bool converged = false;
    for (; iters < max_iters; ++iters) {
        sort_simplex();
        const int best = order[0], worst = order[n], second_worst = order[n - 1];

        const double spread = fv[worst] - fv[best];
        double diameter = 0.0;
        for (int i = 1; i <= n; ++i) {
            diameter = std::max(diameter, (simplex[order[i]] - simplex[best]).norm());
        }
        if (spread < opts.f_tol || diameter < opts.x_tol) {
            converged = true;
            break;
        }

        Vector centroid = Vector::Zero(n);
        for (int i = 0; i <= n; ++i) {
            if (i != worst) centroid += simplex[i];
        }
        centroid /= n;

        const Vector reflected = centroid + opts.reflection * (centroid - simplex[worst]);
        const double f_ref = eval(reflected);

        if (f_ref < fv[best]) {
            const Vector expanded = centroid + opts.expansion * (reflected - centroid);
            const double f_exp = eval(expanded);
            if (f_exp < f_ref) {
                simplex[worst] = expanded;
                fv[worst] = f_exp;
            } else {
                simplex[worst] = reflected;
                fv[worst] = f_ref;
            }
        } else if (f_ref < fv[second_worst]) {
            simplex[worst] = reflected;
            fv[worst] = f_ref;
        } else {
            const bool outside = f_ref < fv[worst];
            const Vector pivot = outside ? reflected : simplex[worst];
            const Vector contracted = centroid + opts.contraction * (pivot - centroid);
            const double f_con = eval(contracted);
            if (f_con < (outside ? f_ref : fv[worst])) {
                simplex[worst] = contracted;
                fv[worst] = f_con;
            } else {
                for (int i = 0; i <= n; ++i) {
                    if (i == best) continue;
                    simplex[i] = simplex[best] + opts.shrink * (simplex[i] - simplex[best]);
                    fv[i] = eval(simplex[i]);
                }
            }
        }
    }

    sort_simplex();
    NelderMeadResult result;
    result.x = simplex[order[0]];
    result.f = fv[order[0]];
    result.iters = iters;
    result.evals = evals;
    result.converged = converged;
    return result;
}

}  // namespace xrego
