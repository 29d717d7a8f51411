#pragma once

#include <optional>
#include <string>
#include <vector>

#include "xrego/xrego.hpp"

namespace xrego {

inline constexpr int kSchemaVersion = 1;

struct AlgorithmConfig {
    std::string id;
    PKind strategy = PKind::adaptive_best;
    DimensionSchedule schedule = DimensionSchedule::increasing(1);
    SolverSpec solver;
};

struct ExperimentConfig {
    std::vector<std::string> problem_names;  // empty -> the whole suite
    std::vector<int> dims;
    std::vector<AlgorithmConfig> algorithms;
    int seeds = 3;
    double epsilon = 1e-3;  // success threshold against known f*
    double gamma = 1e-5;
    int n_stop = 3;
    int max_embeddings = 0;
    long long max_evals = 0;
    std::uint64_t suite_seed = 42;  // fixes the hidden rotations
    std::uint64_t base_seed = 1;    // per-cell randomness
    std::string output = "records.jsonl";
};

// Strict parse: unknown keys anywhere in the document are rejected.
ExperimentConfig parse_experiment_config(const std::string& json_text);
ExperimentConfig load_experiment_config(const std::string& path);

struct CellResult {
    std::string problem;
    int D = 0;
    int d_e = 0;
    double f_star = 0.0;
    std::string algorithm;
    int seed = 0;
    bool failed = false;
    std::string error;
    double f_opt = 0.0;
    std::optional<long long> n_f;  // evaluations to success; nullopt = never
    std::optional<int> k_f;
    std::optional<int> d_e_est;
    int embeddings = 0;
    long long evals = 0;
    bool success = false;

    std::string key() const;  // identity for resume matching
};

std::string to_json_line(const CellResult& cell);
CellResult cell_from_json_line(const std::string& line);

std::vector<CellResult> load_records(const std::string& path);

// Executes every (problem x algorithm x seed) cell not already present in
// the output file, appending one record per cell as it completes. Returns
// the full record set (old and new). Cell execution order never affects
// results; a work pool of `jobs` threads shares the cell list.
std::vector<CellResult> run_experiment(const ExperimentConfig& cfg, int jobs = 1);

// One cell, exposed for the single-run CLI path. When `full` is given the
// complete driver result (including the trace) is copied out.
CellResult run_cell(const Objective& obj, const AlgorithmConfig& algo, int seed,
                    const ExperimentConfig& cfg, XregoResult* full = nullptr);

// Canonical structured record for a full run, trace included; identical
// runs serialize byte-for-byte identically.
std::string xrego_result_json(const XregoResult& res);

}  // namespace xrego
