#pragma once

#include <atomic>
#include <functional>
#include <memory>
#include <string>

#include "xrego/problems.hpp"
#include "xrego/stats.hpp"

namespace xrego {

// The reduced problem min_y f(A y + p) with A y + p constrained to the
// feasible set of the objective. Infeasible points evaluate to +inf
// (extreme barrier) without touching f, so the counter tracks full-space
// f invocations exactly. y = 0 is always feasible because p is.
class ReducedProblem {
  public:
    ReducedProblem(Objective obj, Matrix A, Vector p);

    double operator()(const Vector& y) const;
    Vector lift(const Vector& y) const { return A_ * y + p_; }

    int reduced_dim() const { return static_cast<int>(A_.cols()); }
    int ambient_dim() const { return static_cast<int>(A_.rows()); }
    const Matrix& embedding() const { return A_; }
    const Vector& anchor() const { return p_; }
    const Objective& objective() const { return *obj_; }

    long long evals() const { return counter_->load(); }

  private:
    std::shared_ptr<const Objective> obj_;
    Matrix A_;
    Vector p_;
    std::shared_ptr<std::atomic<long long>> counter_;
};

ReducedProblem make_reduced(Objective obj, Matrix A, Vector p);

enum class SolverKind { local, cheap_multistart, expensive_multistart };

struct SolverSpec {
    SolverKind kind = SolverKind::expensive_multistart;
    double start_halfwidth = 1.0;  // multistart box [-w, w]^d
    int max_iters_per_start = 0;   // 0 -> 500 * d
    double tolerance = 1e-8;

    int num_starts(int d) const;
};

std::string to_string(SolverKind kind);
SolverKind solver_kind_from_string(const std::string& s);

struct SolverOutcome {
    Vector y_best;
    double f_best = 0.0;
    Vector x_best;
    double f_anchor = 0.0;  // f(p), the value at y = 0
    long long evals = 0;
    int starts_used = 0;
    bool truncated = false;  // some descent hit its iteration cap
};

// Multistart simplex descent: y = 0 first, then starts drawn uniformly in
// the start box, one at a time from the stream (so a larger spec's start
// set extends a smaller one's). Deterministic given rng.
SolverOutcome solve(const ReducedProblem& rp, const SolverSpec& spec, const RngState& rng);

struct TrialProblem {
    ReducedProblem problem;
    double f_min = 0.0;  // known optimum of the reduced problem
};

struct SuccessEstimate {
    double rho_hat = 0.0;
    WilsonInterval ci;
    long long trials = 0;
};

// Empirical solver success probability: the fraction of trials whose
// achieved value lands within lambda of the known reduced optimum.
SuccessEstimate measure_solver_success(
    const std::function<TrialProblem(std::uint64_t)>& family, const SolverSpec& spec,
    long long trials, double lambda, const RngState& rng);

}  // namespace xrego
