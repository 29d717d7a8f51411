#include "xrego/xrego.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

#include "xrego/rand_geometry.hpp"

namespace xrego {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

Vector uniform_box_point(std::mt19937_64& eng, int dim) {
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    Vector p(dim);
    for (int i = 0; i < dim; ++i) p(i) = unif(eng);
    return p;
}

Vector clamp_to_box(Vector p) {
    for (int i = 0; i < p.size(); ++i) p(i) = std::clamp(p(i), -1.0, 1.0);
    return p;
}

}  // namespace

std::string to_string(PKind kind) {
    switch (kind) {
        case PKind::fixed:
            return "fixed";
        case PKind::adaptive_best:
            return "adaptive-best";
        case PKind::fixed_then_resample:
            return "fixed-then-resample";
        case PKind::adaptive_then_resample:
            return "adaptive-then-resample";
    }
    return "fixed";
}

PKind p_kind_from_string(const std::string& s) {
    if (s == "fixed") return PKind::fixed;
    if (s == "adaptive-best") return PKind::adaptive_best;
    if (s == "fixed-then-resample") return PKind::fixed_then_resample;
    if (s == "adaptive-then-resample") return PKind::adaptive_then_resample;
    throw std::invalid_argument("unknown p strategy: " + s);
}

std::optional<int> check_stagnation(std::span<const double> per_embedding_f, double gamma) {
    for (std::size_t k = 1; k < per_embedding_f.size(); ++k) {
        if (std::abs(per_embedding_f[k] - per_embedding_f[k - 1]) <= gamma) {
            return static_cast<int>(k) + 1;  // trace is 1-indexed in k
        }
    }
    return std::nullopt;
}

bool check_local_stop(std::span<const double> best_f, int n_stop, double gamma) {
    if (n_stop < 1) throw std::invalid_argument("check_local_stop: n_stop must be >= 1");
    const std::size_t k = best_f.size();
    if (k < static_cast<std::size_t>(n_stop)) return false;
    return best_f[k - static_cast<std::size_t>(n_stop)] - best_f[k - 1] <= gamma;
}

Vector next_p(const PStrategy& strategy, const PState& state, std::mt19937_64& eng) {
    switch (strategy.kind) {
        case PKind::fixed:
            return state.p_prev;
        case PKind::adaptive_best:
            return state.x_opt;
        case PKind::fixed_then_resample:
            if (!state.past_stagnation) return state.p_prev;
            return uniform_box_point(eng, state.ambient_dim);
        case PKind::adaptive_then_resample:
            if (!state.past_stagnation) return state.x_opt;
            if (std::abs(state.f_x_k - state.f_p_prev) > strategy.resample_trigger) {
                return state.x_k;
            }
            return uniform_box_point(eng, state.ambient_dim);
    }
    return state.p_prev;
}

XregoResult run_xrego(const Objective& obj, const PStrategy& strategy,
                      const DimensionSchedule& schedule, const SolverSpec& spec,
                      const StopConfig& stop, const RngState& rng) {
    const int D = obj.dim;
    if (schedule.d < 1 || schedule.d >= D) {
        throw std::invalid_argument("run_xrego: initial dimension must lie in [1, D-1]");
    }
    const int max_embeddings =
        stop.max_embeddings > 0 ? std::min(stop.max_embeddings, D) : D;

    Vector p;
    if (strategy.p0) {
        p = *strategy.p0;
        if (p.size() != D) throw std::invalid_argument("run_xrego: p0 dimension mismatch");
        if (!obj.feasible(p)) throw std::invalid_argument("run_xrego: p0 must be feasible");
    } else if (strategy.kind == PKind::fixed || strategy.kind == PKind::fixed_then_resample) {
        auto eng = rng.derive(0).engine();
        p = uniform_box_point(eng, D);
    } else {
        p = Vector::Zero(D);
    }

    const bool local_mode = spec.kind == SolverKind::local;
    XregoResult result;
    result.f_opt = kInf;
    int d = schedule.d;

    for (int k = 1; k <= max_embeddings; ++k) {
        const RngState emb = rng.derive(static_cast<std::uint64_t>(k));
        const Matrix A = gen_gaussian(emb.derive(0), D, d);
        const ReducedProblem rp = make_reduced(obj, A, p);
        const SolverOutcome out = solve(rp, spec, emb.derive(1));

        const double f_k = std::isnan(out.f_best) ? kInf : out.f_best;
        if (k == 1 || f_k < result.f_opt) {
            result.f_opt = f_k;
            result.x_opt = out.x_best;
        }
        result.total_evals += out.evals;
        result.embeddings = k;

        RunRecord rec;
        rec.k = k;
        rec.d = d;
        rec.p = p;
        rec.f_x = f_k;
        rec.f_xopt = result.f_opt;
        rec.evals_embedding = out.evals;
        rec.evals_cumulative = result.total_evals;
        if (!result.k_f && k >= 2 &&
            std::abs(f_k - result.trace.back().f_x) <= stop.gamma) {
            result.k_f = k;
            rec.stagnation = true;
        }
        result.trace.push_back(std::move(rec));

        // termination
        if (stop.stop_at_target && obj.f_star &&
            result.f_opt <= *obj.f_star + stop.target_eps) {
            break;
        }
        if (result.k_f) {
            if (!local_mode) break;
            if (k > *result.k_f && k >= stop.n_stop) {
                std::vector<double> bests;
                bests.reserve(result.trace.size());
                for (const auto& r : result.trace) bests.push_back(r.f_xopt);
                if (check_local_stop(bests, stop.n_stop, stop.gamma)) break;
            }
        }
        if (stop.max_evals > 0 && result.total_evals >= stop.max_evals) break;
        if (k == max_embeddings) break;

        // anchor update
        PState state;
        state.x_k = out.x_best;
        state.f_x_k = f_k;
        state.p_prev = p;
        state.f_p_prev = out.f_anchor;
        state.x_opt = result.x_opt;
        state.k = k;
        state.past_stagnation = result.k_f.has_value();
        state.ambient_dim = D;
        auto eng = emb.derive(2).engine();
        p = next_p(strategy, state, eng);
        if (!obj.feasible(p)) p = clamp_to_box(std::move(p));

        // dimension update
        if (schedule.kind == DimensionSchedule::Kind::increasing) {
            if (local_mode && result.k_f) {
                d = std::max(1, *result.k_f - 1);  // freeze at the estimate
            } else {
                d = std::min(d + 1, D - 1);
            }
        }
    }

    if (result.k_f) result.d_e_est = *result.k_f - 1;
    if (obj.f_star) result.success = result.f_opt <= *obj.f_star + stop.target_eps;
    return result;
}

}  // namespace xrego
