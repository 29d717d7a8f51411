#pragma once

#include <string>
#include <vector>

namespace xrego {

// Circular cone Circ_D(alpha) = { x : x_1 >= ||x|| cos(alpha) }.
struct CircularCone {
    int ambient_dim;    // D >= 2
    double half_angle;  // alpha in [0, pi/2]
};

// The D+1 conic intrinsic volumes of a cone, carried both in linear and in
// log space. They form a discrete probability distribution on {0..D}; for a
// cone that is not a subspace, Gauss-Bonnet makes the even- and odd-index
// sums both equal 1/2.
struct IntrinsicVolumeVector {
    std::vector<double> values;      // v_0 .. v_D
    std::vector<double> log_values;  // natural logs (-inf allowed)

    double sum() const;
    double even_sum() const;
    double odd_sum() const;
};

enum class BoundKind { pointwise, uniform, led, uniform_sampling };

// A probability lower bound, always exact in log space; the linear value is
// materialized only when it is representable (log10 > -300).
struct BoundReport {
    double tau = 0.0;
    double log10_tau = 0.0;
    BoundKind kind = BoundKind::pointwise;
    // inputs echoed
    double r = 0.0;       // radius ratio actually used
    int d = 0;            // embedding dimension
    int ambient = 0;      // D, or d_e for the led bound
    double epsilon = 0.0;
    double lipschitz = 0.0;
    double distance = 0.0;  // ||x*-p|| or R_max, when applicable
    bool certain = false;   // p inside the ball of epsilon-minimizers
    bool vacuous_risk = false;  // uniform-sampling bound with eps/L > 1
    std::string note;
};

struct CrossoverReport {
    double delta0 = 0.0;       // sqrt(2 D / (pi e))
    double distance = 0.0;     // ||x* - p||
    double log10_ratio = 0.0;  // log10 tau(r_p,d,D) - log10 tau_us
    bool embedding_favored = false;
};

struct ConvergenceParams {
    double xi = 0.0;
    double tau_lb = 0.0;
    double rho_lb = 0.0;
    long long k_xi = 0;  // ceil(|log(1-xi)| / (tau_lb rho_lb)), natural log
};

// k-th intrinsic volume of Circ_D(alpha) in log space. Boundary alphas
// within 1e-9 of pi/2 are routed to the analytic half-space limit.
double log_circ_intrinsic_volume(int D, double alpha, int k);
double circ_intrinsic_volume(int D, double alpha, int k);
IntrinsicVolumeVector circ_intrinsic_volumes(int D, double alpha);

// v_k of a d-dimensional linear subspace of R^D: 1 iff k == d.
int subspace_intrinsic_volume(int D, int d, int k);

// Exact Crofton intersection probability 2 h_{D-d+1} of a uniformly rotated
// d-subspace with the cone; the alternating-index tail sum is accumulated
// largest term first.
double crofton_tail(int D, int d, const CircularCone& cone);

// Natural log of the same quantity; stays finite where the linear value
// underflows (narrow cones in high dimension).
double log_crofton_tail(int D, int d, const CircularCone& cone);

// The closed-form lower bound tau(r,d,D) on embedding success probability;
// equals 2 v_{D-d+1}(Circ_D(arcsin r)). Requires 0 < r < 1, 1 <= d < D.
BoundReport tau(double r, int d, int D);

// tau at r_p = eps / (L ||x*-p||). Distances inside the ball give tau = 1.
BoundReport tau_pointwise(double eps, double L, double dist_x_star_p, int d, int D);

// tau at r_min = eps / (L R_max), uniform over all p within R_max of x*.
BoundReport tau_uniform(double eps, double L, double R_max, int d, int D);

// log10 of the leading asymptotic term D^{(d-2)/2} r^{D-d}; order of
// magnitude only, constants suppressed.
double tau_asymptotic_log10(double r, int d, int D);

// Uniform-sampling success bound on X = [-1,1]^D: ball volume over 2^D.
BoundReport tau_us(double eps, double L, int D);

// Embedding-vs-uniform-sampling comparison at a given ||x*-p||.
CrossoverReport crossover(double eps, double L, double dist, int d, int D);

// Embedding success bound for objectives with effective dimension d_e;
// tau = 1 when d >= d_e, otherwise tau(r_eff, d, d_e). Ambient-dimension
// free by construction.
BoundReport tau_led(double eps, double L, double dist_or_rmax, int d, int d_e);

// Number of embeddings guaranteeing success probability >= xi.
ConvergenceParams k_xi(double xi, double tau_lb, double rho_lb);

// Lower bound on P[success within k embeddings]: 1-(1-tau rho)^k below
// k_max, never below rho_at_kmax from k_max on (when provided).
double success_curve(long long k, double tau_lb, double rho_lb,
                     long long k_max = 0, double rho_at_kmax = 0.0);

}  // namespace xrego
