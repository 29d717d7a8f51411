#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "xrego/subsolve.hpp"

namespace xrego {

// Anchor-selection rule for the sequence p^0, p^1, ...
//   fixed:                  p^k = p0 for every embedding
//   adaptive_best:          p^k = best point found so far
//   fixed_then_resample:    fixed until stagnation, then resampled uniformly
//                           in [-1,1]^D at every embedding
//   adaptive_then_resample: adaptive until stagnation, afterwards resampled
//                           whenever the last embedding made no significant
//                           progress over its anchor
enum class PKind { fixed, adaptive_best, fixed_then_resample, adaptive_then_resample };

struct PStrategy {
    PKind kind = PKind::adaptive_best;
    std::optional<Vector> p0;        // default: origin (adaptive kinds) or a
                                     // uniform draw in [-1,1]^D made once (fixed kinds)
    double resample_trigger = 1e-5;  // progress threshold for the adaptive resample rule
};

std::string to_string(PKind kind);
PKind p_kind_from_string(const std::string& s);

struct DimensionSchedule {
    enum class Kind { constant, increasing };
    Kind kind = Kind::increasing;
    int d = 1;  // the constant dimension, or the starting dimension d_lb

    static DimensionSchedule constant(int d) { return {Kind::constant, d}; }
    static DimensionSchedule increasing(int d_lb) { return {Kind::increasing, d_lb}; }
};

struct StopConfig {
    double gamma = 1e-5;      // stagnation threshold on consecutive embedding values
    int n_stop = 3;           // window for the local-solver stopping rule
    int max_embeddings = 0;   // 0 -> D (never more than D)
    long long max_evals = 0;  // 0 -> unlimited
    // Instrumentation-only early exit at |f_opt - f*| <= target_eps; off by
    // default and never alters recorded traces when off.
    bool stop_at_target = false;
    double target_eps = 1e-3;
};

struct RunRecord {
    int k = 0;
    int d = 0;
    Vector p;                 // anchor the embedding was drawn at
    double f_x = 0.0;         // value achieved by this embedding
    double f_xopt = 0.0;      // running best
    long long evals_embedding = 0;
    long long evals_cumulative = 0;
    bool stagnation = false;  // this k triggered the stagnation criterion
};

struct XregoResult {
    Vector x_opt;
    double f_opt = 0.0;
    std::optional<int> k_f;       // first stagnation index
    std::optional<int> d_e_est;   // k_f - 1 when defined
    int embeddings = 0;
    long long total_evals = 0;
    std::vector<RunRecord> trace;
    std::optional<bool> success;  // f_opt within target_eps of a known f*
};

// Smallest k >= 2 with |f(x^k) - f(x^{k-1})| <= gamma, over the
// per-embedding achieved values (not the running bests).
std::optional<int> check_stagnation(std::span<const double> per_embedding_f, double gamma);

// True iff the best value improved by at most gamma over the last n_stop
// embeddings: f(x_opt^{k-n_stop+1}) - f(x_opt^k) <= gamma.
bool check_local_stop(std::span<const double> best_f, int n_stop, double gamma);

// State handed to the anchor rule after embedding k.
struct PState {
    Vector x_k;          // this embedding's best point
    double f_x_k = 0.0;  // and its value
    Vector p_prev;
    double f_p_prev = 0.0;
    Vector x_opt;
    int k = 0;
    bool past_stagnation = false;  // k_f has been reached
    int ambient_dim = 0;
};

Vector next_p(const PStrategy& strategy, const PState& state, std::mt19937_64& eng);

// Algorithm driver: per embedding draws a Gaussian D x d^k matrix, solves
// the reduced problem through `spec`, updates the anchor and the dimension,
// and applies the stopping rules. Fully reproducible given rng.
XregoResult run_xrego(const Objective& obj, const PStrategy& strategy,
                      const DimensionSchedule& schedule, const SolverSpec& spec,
                      const StopConfig& stop, const RngState& rng);

}  // namespace xrego
