#include "xrego/subsolve.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "xrego/nelder_mead.hpp"

namespace xrego {

ReducedProblem::ReducedProblem(Objective obj, Matrix A, Vector p)
    : obj_(std::make_shared<const Objective>(std::move(obj))),
      A_(std::move(A)),
      p_(std::move(p)),
      counter_(std::make_shared<std::atomic<long long>>(0)) {
    if (A_.rows() != obj_->dim || p_.size() != obj_->dim) {
        throw std::invalid_argument("make_reduced: embedding/anchor dimension mismatch");
    }
    if (!obj_->feasible(p_)) {
        throw std::invalid_argument("make_reduced: anchor p must be feasible");
    }
}

double ReducedProblem::operator()(const Vector& y) const {
    const Vector x = A_ * y + p_;
    if (!obj_->feasible(x)) return std::numeric_limits<double>::infinity();
    counter_->fetch_add(1, std::memory_order_relaxed);
    return obj_->evaluate(x);
}

ReducedProblem make_reduced(Objective obj, Matrix A, Vector p) {
    return ReducedProblem(std::move(obj), std::move(A), std::move(p));
}

int SolverSpec::num_starts(int d) const {
    switch (kind) {
        case SolverKind::local:
            return 1;
        case SolverKind::cheap_multistart:
            return std::min(100, 2 * d);
        case SolverKind::expensive_multistart:
            return std::min(200, 10 * d);
    }
    return 1;
}

std::string to_string(SolverKind kind) {
    switch (kind) {
        case SolverKind::local:
            return "local";
        case SolverKind::cheap_multistart:
            return "cheap-multistart";
        case SolverKind::expensive_multistart:
            return "expensive-multistart";
    }
    return "local";
}

SolverKind solver_kind_from_string(const std::string& s) {
    if (s == "local") return SolverKind::local;
    if (s == "cheap-multistart") return SolverKind::cheap_multistart;
    if (s == "expensive-multistart") return SolverKind::expensive_multistart;
    throw std::invalid_argument("unknown solver kind: " + s);
}

SolverOutcome solve(const ReducedProblem& rp, const SolverSpec& spec, const RngState& rng) {
    const int d = rp.reduced_dim();
    const int n_starts = std::max(1, spec.num_starts(d));
    const long long evals_before = rp.evals();

    NelderMeadOptions nm;
    nm.f_tol = spec.tolerance;
    nm.x_tol = spec.tolerance;
    nm.max_iters = spec.max_iters_per_start;

    auto eng = rng.engine();
    std::uniform_real_distribution<double> unif(-spec.start_halfwidth, spec.start_halfwidth);

    auto fn = [&rp](const Vector& y) { return rp(y); };

    SolverOutcome out;
    out.f_anchor = rp(Vector::Zero(d));
    out.f_best = std::numeric_limits<double>::infinity();
    for (int s = 0; s < n_starts; ++s) {
        Vector y0 = Vector::Zero(d);
        if (s > 0) {
            for (int i = 0; i < d; ++i) y0(i) = unif(eng);
        }
        const NelderMeadResult res = nelder_mead(fn, y0, nm);
        if (!res.converged) out.truncated = true;
        if (res.f < out.f_best) {
            out.f_best = res.f;
            out.y_best = res.x;
        }
        ++out.starts_used;
    }
    // y = 0 is itself a candidate; descents can only have improved on it,
    // but a truncated run on a pathological surface must not end above it.
    if (out.f_anchor < out.f_best) {
        out.f_best = out.f_anchor;
        out.y_best = Vector::Zero(d);
    }
    out.x_best = rp.lift(out.y_best);
    out.evals = rp.evals() - evals_before;
    return out;
}

SuccessEstimate measure_solver_success(
    const std::function<TrialProblem(std::uint64_t)>& family, const SolverSpec& spec,
    long long trials, double lambda, const RngState& rng) {
    if (trials < 1) throw std::invalid_argument("measure_solver_success: trials must be >= 1");
    long long hits = 0;
    for (long long t = 0; t < trials; ++t) {
        const TrialProblem trial = family(static_cast<std::uint64_t>(t));
        const SolverOutcome out = solve(trial.problem, spec, rng.derive(static_cast<std::uint64_t>(t)));
        if (out.f_best <= trial.f_min + lambda) ++hits;
    }
    SuccessEstimate est;
    est.rho_hat = static_cast<double>(hits) / static_cast<double>(trials);
    est.ci = wilson95(hits, trials);
    est.trials = trials;
    return est;
}

}  // namespace xrego
