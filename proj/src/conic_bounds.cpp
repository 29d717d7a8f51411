#include "xrego/conic_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

#include "xrego/specfun.hpp"

namespace xrego {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLog10Floor = -300.0;  // below this, the linear value stays 0
constexpr double kHalfSpaceBand = 1e-9;

double materialize(double log_tau_natural) {
    const double log10_tau = log_tau_natural / std::numbers::ln10;
    if (log10_tau <= kLog10Floor) return 0.0;
    return std::min(1.0, std::exp(log_tau_natural));
}

void check_cone_args(int D, double alpha) {
    if (D < 2) throw std::invalid_argument("circular cone: D must be >= 2");
    if (!(alpha > 0.0) || !(alpha < std::numbers::pi / 2)) {
        throw std::invalid_argument("circular cone: alpha must lie in (0, pi/2)");
    }
}

// Natural-log tau; the linear/log10 packaging happens in tau().
double log_tau(double r, int d, int D) {
    if (!(r > 0.0) || !(r < 1.0)) throw std::invalid_argument("tau: r must lie in (0,1)");
    if (d < 1 || d >= D) throw std::invalid_argument("tau: need 1 <= d < D");
    const double half = (D - 2) / 2.0;
    if (d == 1) {
        return std::log(static_cast<double>(D - 1)) +
               specfun::log_binomial(half, (D - 1) / 2.0) +
               specfun::log_sin_power_integral(std::asin(r), D - 2);
    }
    double v = specfun::log_binomial(half, (D - d) / 2.0) + (D - d) * std::log(r);
    if (d != 2) v += ((d - 2) / 2.0) * std::log1p(-r * r);
    return v;
}

BoundReport package(double log_tau_natural, BoundKind kind) {
    BoundReport rep;
    rep.kind = kind;
    rep.log10_tau = log_tau_natural / std::numbers::ln10;
    rep.tau = materialize(log_tau_natural);
    return rep;
}

BoundReport certain_report(BoundKind kind, const char* note) {
    BoundReport rep;
    rep.kind = kind;
    rep.tau = 1.0;
    rep.log10_tau = 0.0;
    rep.certain = true;
    rep.note = note;
    return rep;
}

}  // namespace

double IntrinsicVolumeVector::sum() const {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
}

double IntrinsicVolumeVector::even_sum() const {
    double s = 0.0;
    for (std::size_t k = 0; k < values.size(); k += 2) s += values[k];
    return s;
}

double IntrinsicVolumeVector::odd_sum() const {
    double s = 0.0;
    for (std::size_t k = 1; k < values.size(); k += 2) s += values[k];
    return s;
}

double log_circ_intrinsic_volume(int D, double alpha, int k) {
    check_cone_args(D, alpha);
    if (k < 0 || k > D) throw std::invalid_argument("intrinsic volume: k out of range");
    if (alpha >= std::numbers::pi / 2 - kHalfSpaceBand) {
        // Half-space limit: all mass sits on v_{D-1} = v_D = 1/2.
        return (k >= D - 1) ? std::log(0.5) : -kInf;
    }
    const double a = (D - 1) / 2.0;
    const double s = std::sin(alpha);
    const double c = std::cos(alpha);
    if (k == 0) {
        return std::log(0.5) + specfun::log_ibeta(c * c, a, 0.5);
    }
    if (k == D) {
        return std::log(0.5) + specfun::log_ibeta(s * s, a, 0.5);
    }
    return std::log(0.5) + specfun::log_binomial((D - 2) / 2.0, (k - 1) / 2.0) +
           (k - 1) * std::log(s) + (D - k - 1) * std::log(c);
}

double circ_intrinsic_volume(int D, double alpha, int k) {
    return std::exp(log_circ_intrinsic_volume(D, alpha, k));
}

IntrinsicVolumeVector circ_intrinsic_volumes(int D, double alpha) {
    IntrinsicVolumeVector iv;
    iv.values.resize(D + 1);
    iv.log_values.resize(D + 1);
    for (int k = 0; k <= D; ++k) {
        iv.log_values[k] = log_circ_intrinsic_volume(D, alpha, k);
        iv.values[k] = std::exp(iv.log_values[k]);
    }
    return iv;
}

int subspace_intrinsic_volume(int D, int d, int k) {
    if (d < 0 || d > D || k < 0 || k > D) {
        throw std::invalid_argument("subspace_intrinsic_volume: indices out of range");
    }
    return k == d ? 1 : 0;
}

double log_crofton_tail(int D, int d, const CircularCone& cone) {
    if (cone.ambient_dim != D) {
        throw std::invalid_argument("crofton_tail: cone dimension mismatch");
    }
    if (d < 1 || d >= D) throw std::invalid_argument("crofton_tail: need 1 <= d < D");
    // h_{D-d+1} = v_{D-d+1} + v_{D-d+3} + ... up to v_D (d odd) or v_{D-1}
    // (d even). Summed through log-sum-exp anchored at the leading term.
    const int last = (d % 2 == 1) ? D : D - 1;
    double max_log = -kInf;
    std::vector<double> logs;
    for (int k = D - d + 1; k <= last; k += 2) {
        const double lv = log_circ_intrinsic_volume(D, cone.half_angle, k);
        logs.push_back(lv);
        max_log = std::max(max_log, lv);
    }
    if (max_log == -kInf) return -kInf;
    double acc = 0.0;
    for (double lv : logs) acc += std::exp(lv - max_log);
    return std::min(0.0, std::log(2.0) + max_log + std::log(acc));
}

double crofton_tail(int D, int d, const CircularCone& cone) {
    return std::exp(log_crofton_tail(D, d, cone));
}

BoundReport tau(double r, int d, int D) {
    BoundReport rep = package(log_tau(r, d, D), BoundKind::pointwise);
    rep.r = r;
    rep.d = d;
    rep.ambient = D;
    return rep;
}

BoundReport tau_pointwise(double eps, double L, double dist_x_star_p, int d, int D) {
    if (eps <= 0.0 || L <= 0.0) throw std::invalid_argument("tau_pointwise: eps, L must be positive");
    if (d < 1 || d >= D) throw std::invalid_argument("tau_pointwise: need 1 <= d < D");
    BoundReport rep;
    if (dist_x_star_p <= eps / L) {
        rep = certain_report(BoundKind::pointwise, "p inside ball: success certain");
    } else {
        double r = eps / (L * dist_x_star_p);
        r = std::min(r, 1.0 - 1e-12);
        rep = tau(r, d, D);
    }
    rep.kind = BoundKind::pointwise;
    rep.d = d;
    rep.ambient = D;
    rep.epsilon = eps;
    rep.lipschitz = L;
    rep.distance = dist_x_star_p;
    return rep;
}

BoundReport tau_uniform(double eps, double L, double R_max, int d, int D) {
    BoundReport rep = tau_pointwise(eps, L, R_max, d, D);
    rep.kind = BoundKind::uniform;
    return rep;
}

double tau_asymptotic_log10(double r, int d, int D) {
    if (!(r > 0.0) || !(r < 1.0)) throw std::invalid_argument("tau_asymptotic: r in (0,1)");
    if (d < 1 || d >= D) throw std::invalid_argument("tau_asymptotic: need 1 <= d < D");
    return ((d - 2) / 2.0) * std::log10(static_cast<double>(D)) + (D - d) * std::log10(r);
}

BoundReport tau_us(double eps, double L, int D) {
    if (eps <= 0.0 || L <= 0.0) throw std::invalid_argument("tau_us: eps, L must be positive");
    if (D < 1) throw std::invalid_argument("tau_us: D must be >= 1");
    const double log_t = (D / 2.0) * std::log(std::numbers::pi) - D * std::log(2.0) -
                         std::lgamma(D / 2.0 + 1.0) + D * std::log(eps / L);
    BoundReport rep = package(log_t, BoundKind::uniform_sampling);
    rep.d = 0;
    rep.ambient = D;
    rep.epsilon = eps;
    rep.lipschitz = L;
    rep.r = eps / L;
    if (eps / L > 1.0) {
        rep.vacuous_risk = true;
        rep.note = "eps/L > 1: ball is not contained in [-1,1]^D";
    }
    return rep;
}

CrossoverReport crossover(double eps, double L, double dist, int d, int D) {
    const BoundReport emb = tau_pointwise(eps, L, dist, d, D);
    const BoundReport us = tau_us(eps, L, D);
    CrossoverReport rep;
    rep.delta0 = std::sqrt(2.0 * D / (std::numbers::pi * std::numbers::e));
    rep.distance = dist;
    rep.log10_ratio = emb.log10_tau - us.log10_tau;
    rep.embedding_favored = rep.log10_ratio > 0.0;
    return rep;
}

BoundReport tau_led(double eps, double L, double dist_or_rmax, int d, int d_e) {
    if (eps <= 0.0 || L <= 0.0) throw std::invalid_argument("tau_led: eps, L must be positive");
    if (d < 1 || d_e < 1) throw std::invalid_argument("tau_led: dimensions must be >= 1");
    BoundReport rep;
    if (d >= d_e) {
        rep = certain_report(BoundKind::led, "d >= d_e: one embedding succeeds almost surely");
    } else if (dist_or_rmax <= eps / L) {
        rep = certain_report(BoundKind::led, "p inside ball: success certain");
    } else {
        double r = eps / (L * dist_or_rmax);
        r = std::min(r, 1.0 - 1e-12);
        rep = package(log_tau(r, d, d_e), BoundKind::led);
        rep.r = r;
    }
    rep.kind = BoundKind::led;
    rep.d = d;
    rep.ambient = d_e;
    rep.epsilon = eps;
    rep.lipschitz = L;
    rep.distance = dist_or_rmax;
    return rep;
}

ConvergenceParams k_xi(double xi, double tau_lb, double rho_lb) {
    if (!(xi > 0.0) || !(xi < 1.0)) throw std::invalid_argument("k_xi: xi must lie in (0,1)");
    if (!(tau_lb > 0.0) || tau_lb > 1.0 || !(rho_lb > 0.0) || rho_lb > 1.0) {
        throw std::invalid_argument("k_xi: tau_lb, rho_lb must lie in (0,1]");
    }
    ConvergenceParams params;
    params.xi = xi;
    params.tau_lb = tau_lb;
    params.rho_lb = rho_lb;
    params.k_xi = static_cast<long long>(std::ceil(std::abs(std::log1p(-xi)) / (tau_lb * rho_lb)));
    return params;
}

double success_curve(long long k, double tau_lb, double rho_lb,
                     long long k_max, double rho_at_kmax) {
    if (k < 1) throw std::invalid_argument("success_curve: k must be >= 1");
    const double base = -std::expm1(static_cast<double>(k) * std::log1p(-tau_lb * rho_lb));
    if (k_max > 0 && k >= k_max) return std::max(base, rho_at_kmax);
    return base;
}

}  // namespace xrego
