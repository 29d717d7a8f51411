#pragma once

#include <vector>

#include "xrego/conic_bounds.hpp"
#include "xrego/rand_geometry.hpp"
#include "xrego/stats.hpp"

namespace xrego {

struct McConfig {
    long long trials = 10000;
    int D = 2;
    int d = 1;
    double radius = 1.0;  // eps / L
    Vector p;
    Vector x_star;
    RngState rng;
    int jobs = 1;
};

struct McEstimate {
    double p_hat = 0.0;
    WilsonInterval ci;
    long long trials = 0;
    double tau = 0.0;              // lower bound compared against
    double exact = 0.0;            // Crofton value; the estimate's true mean
    bool violation = false;        // ci.upper < tau
    long long inconclusive = 0;    // trials the hit test could not classify
};

// Frequency of p + range(A) meeting the ball B_radius(x*), A Gaussian D x d.
// Compared against tau(r_p, d, D); the Crofton tail is the exact value.
McEstimate estimate_hit_probability(const McConfig& cfg);

// Same experiment projected onto a d_e-dimensional effective subspace with
// orthonormal row basis U (d_e x D); compared against tau_led.
McEstimate estimate_led_hit_probability(const McConfig& cfg, const Matrix& U);

// Frequency of range(A) sharing a ray with Circ_D(alpha). The per-trial
// test is exact: the subspace meets the cone iff the norm of the projection
// of e_1 onto range(A) reaches cos(alpha).
McEstimate estimate_cone_ray_probability(int D, int d, double alpha, long long trials,
                                         const RngState& rng, int jobs = 1);

struct GridRow {
    int D = 0;
    int d = 0;
    double r = 0.0;
    McEstimate est;
};

// The bound-consistency suite: D in {3,5,10,20}, d in {1,2,3} (d < D),
// r in {0.2, 0.5, 0.8}, distance 2 and radius 2r.
std::vector<GridRow> bound_consistency_grid(long long trials_per_point, const RngState& rng,
                                            int jobs = 1);

}  // namespace xrego
