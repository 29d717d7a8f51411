#include "xrego/verify_mc.hpp"

#include <cmath>
#include <functional>
#include <stdexcept>
#include <thread>

namespace xrego {

namespace {

// Deterministic parallel trial counter: each trial derives its own
// substream, so the hit count is independent of scheduling.
long long count_hits(long long trials, int jobs,
                     const std::function<bool(std::uint64_t)>& hit) {
    if (trials < 100) throw std::invalid_argument("monte carlo: trials must be >= 100");
    const int n_threads = std::max(1, jobs);
    if (n_threads == 1) {
        long long hits = 0;
        for (long long t = 0; t < trials; ++t) {
            if (hit(static_cast<std::uint64_t>(t))) ++hits;
        }
        return hits;
    }
    std::vector<long long> partial(static_cast<std::size_t>(n_threads), 0);
    std::vector<std::thread> workers;
    workers.reserve(static_cast<std::size_t>(n_threads));
    for (int w = 0; w < n_threads; ++w) {
        workers.emplace_back([&, w] {
            long long local = 0;
            for (long long t = w; t < trials; t += n_threads) {
                if (hit(static_cast<std::uint64_t>(t))) ++local;
            }
            partial[static_cast<std::size_t>(w)] = local;
        });
    }
    for (auto& th : workers) th.join();
    long long hits = 0;
    for (long long v : partial) hits += v;
    return hits;
}

McEstimate package(long long hits, long long trials, double tau_bound, double exact) {
    McEstimate est;
    est.p_hat = static_cast<double>(hits) / static_cast<double>(trials);
    est.ci = wilson95(hits, trials);
    est.trials = trials;
    est.tau = tau_bound;
    est.exact = exact;
    est.violation = est.ci.upper < tau_bound;
    return est;
}

}  // namespace

McEstimate estimate_hit_probability(const McConfig& cfg) {
    if (cfg.radius <= 0.0) throw std::invalid_argument("estimate_hit_probability: radius <= 0");
    if (cfg.p.size() != cfg.D || cfg.x_star.size() != cfg.D) {
        throw std::invalid_argument("estimate_hit_probability: point dimension mismatch");
    }
    if (cfg.d < 1 || cfg.d > cfg.D) {
        throw std::invalid_argument("estimate_hit_probability: need 1 <= d <= D");
    }
    const long long hits = count_hits(cfg.trials, cfg.jobs, [&](std::uint64_t t) {
        const Matrix A = gen_gaussian(cfg.rng.derive(t), cfg.D, cfg.d);
        return affine_subspace_distance(A, cfg.p, cfg.x_star).distance <= cfg.radius;
    });

    const double dist = (cfg.x_star - cfg.p).norm();
    double tau_bound = 1.0;
    double exact = 1.0;
    if (cfg.d < cfg.D) {
        tau_bound = tau_pointwise(cfg.radius, 1.0, dist, cfg.d, cfg.D).tau;
        if (dist > cfg.radius) {
            const double alpha = std::asin(std::min(1.0, cfg.radius / dist));
            exact = crofton_tail(cfg.D, cfg.d, {cfg.D, alpha});
        }
    }
    return package(hits, cfg.trials, tau_bound, exact);
}

McEstimate estimate_led_hit_probability(const McConfig& cfg, const Matrix& U) {
    if (U.cols() != cfg.D) {
        throw std::invalid_argument("estimate_led_hit_probability: U must be d_e x D");
    }
    const int d_e = static_cast<int>(U.rows());
    if ((U * U.transpose() - Matrix::Identity(d_e, d_e)).norm() > 1e-10) {
        throw std::invalid_argument("estimate_led_hit_probability: U rows must be orthonormal");
    }
    const Vector p_eff = U * cfg.p;
    const Vector x_eff = U * cfg.x_star;
    const long long hits = count_hits(cfg.trials, cfg.jobs, [&](std::uint64_t t) {
        const Matrix A = gen_gaussian(cfg.rng.derive(t), cfg.D, cfg.d);
        const Matrix B = U * A;  // d_e x d Gaussian
        return affine_subspace_distance(B, p_eff, x_eff).distance <= cfg.radius;
    });

    const double dist = (x_eff - p_eff).norm();
    const double tau_bound = tau_led(cfg.radius, 1.0, dist, cfg.d, d_e).tau;
    double exact = 1.0;
    if (cfg.d < d_e && dist > cfg.radius) {
        const double alpha = std::asin(std::min(1.0, cfg.radius / dist));
        exact = crofton_tail(d_e, cfg.d, {d_e, alpha});
    }
    return package(hits, cfg.trials, tau_bound, exact);
}

McEstimate estimate_cone_ray_probability(int D, int d, double alpha, long long trials,
                                         const RngState& rng, int jobs) {
    if (!(alpha > 0.0) || !(alpha < 1.5707963267948966)) {
        throw std::invalid_argument("estimate_cone_ray_probability: alpha must lie in (0, pi/2)");
    }
    if (d < 1 || d >= D) {
        throw std::invalid_argument("estimate_cone_ray_probability: need 1 <= d < D");
    }
    const double cos_alpha = std::cos(alpha);
    const long long hits = count_hits(trials, jobs, [&](std::uint64_t t) {
        const Matrix A = gen_gaussian(rng.derive(t), D, d);
        if (d == 1) {
            return std::abs(A(0, 0)) / A.col(0).norm() >= cos_alpha;
        }
        // max over y of (Ay)_1 / ||Ay|| is the norm of the projection of
        // e_1 onto range(A); with Q an orthonormal basis from a thin QR,
        // that is the norm of the first row of Q.
        Eigen::HouseholderQR<Matrix> qr(A);
        const Matrix thin_q = qr.householderQ() * Matrix::Identity(D, d);
        return thin_q.row(0).norm() >= cos_alpha;
    });
    const double exact = crofton_tail(D, d, {D, alpha});
    const double tau_bound = tau(std::sin(alpha), d, D).tau;
    return package(hits, trials, tau_bound, exact);
}

std::vector<GridRow> bound_consistency_grid(long long trials_per_point, const RngState& rng,
                                            int jobs) {
    std::vector<GridRow> rows;
    std::uint64_t stream = 0;
    for (int D : {3, 5, 10, 20}) {
        for (int d : {1, 2, 3}) {
            if (d >= D) continue;
            for (double r : {0.2, 0.5, 0.8}) {
                McConfig cfg;
                cfg.trials = trials_per_point;
                cfg.D = D;
                cfg.d = d;
                cfg.p = Vector::Zero(D);
                cfg.x_star = Vector::Zero(D);
                cfg.x_star(0) = 2.0;
                cfg.radius = 2.0 * r;  // so that r_p = radius / distance = r
                cfg.rng = rng.derive(stream++);
                cfg.jobs = jobs;
                rows.push_back({D, d, r, estimate_hit_probability(cfg)});
            }
        }
    }
    return rows;
}

}  // namespace xrego
