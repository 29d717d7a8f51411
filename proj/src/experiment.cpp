#include "xrego/experiment.hpp"

#include <atomic>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "xrego/problems.hpp"

namespace xrego {

namespace {

using nlohmann::json;

void require_keys(const json& obj, const char* where, std::initializer_list<const char*> allowed) {
    for (auto it = obj.begin(); it != obj.end(); ++it) {
        bool known = false;
        for (const char* k : allowed) {
            if (it.key() == k) {
                known = true;
                break;
            }
        }
        if (!known) {
            throw std::invalid_argument(std::string("config: unknown key '") + it.key() +
                                        "' in " + where);
        }
    }
}

SolverSpec parse_solver(const json& j) {
    require_keys(j, "solver", {"kind", "start_halfwidth", "max_iters_per_start", "tolerance"});
    SolverSpec spec;
    spec.kind = solver_kind_from_string(j.at("kind").get<std::string>());
    if (j.contains("start_halfwidth")) spec.start_halfwidth = j["start_halfwidth"].get<double>();
    if (j.contains("max_iters_per_start")) {
        spec.max_iters_per_start = j["max_iters_per_start"].get<int>();
    }
    if (j.contains("tolerance")) spec.tolerance = j["tolerance"].get<double>();
    return spec;
}

DimensionSchedule parse_schedule(const json& j) {
    require_keys(j, "schedule", {"kind", "d"});
    const auto kind = j.at("kind").get<std::string>();
    const int d = j.value("d", 1);
    if (kind == "constant") return DimensionSchedule::constant(d);
    if (kind == "increasing") return DimensionSchedule::increasing(d);
    throw std::invalid_argument("config: unknown schedule kind '" + kind + "'");
}

}  // namespace

ExperimentConfig parse_experiment_config(const std::string& json_text) {
    json j;
    try {
        j = json::parse(json_text);
    } catch (const json::parse_error& e) {
        throw std::invalid_argument(std::string("config: invalid JSON: ") + e.what());
    }
    require_keys(j, "top level",
                 {"schema_version", "problems", "algorithms", "seeds", "epsilon", "gamma",
                  "n_stop", "max_embeddings", "max_evals", "suite_seed", "base_seed", "output"});
    if (j.value("schema_version", kSchemaVersion) != kSchemaVersion) {
        throw std::invalid_argument("config: unsupported schema_version");
    }
    ExperimentConfig cfg;
    if (j.contains("problems")) {
        const json& p = j["problems"];
        require_keys(p, "problems", {"names", "dims"});
        if (p.contains("names")) {
            for (const auto& n : p["names"]) cfg.problem_names.push_back(n.get<std::string>());
        }
        if (p.contains("dims")) {
            for (const auto& d : p["dims"]) cfg.dims.push_back(d.get<int>());
        }
    }
    if (cfg.dims.empty()) cfg.dims.push_back(100);
    if (!j.contains("algorithms") || j["algorithms"].empty()) {
        throw std::invalid_argument("config: at least one algorithm is required");
    }
    std::set<std::string> ids;
    for (const auto& a : j["algorithms"]) {
        require_keys(a, "algorithm", {"id", "strategy", "schedule", "solver"});
        AlgorithmConfig algo;
        algo.id = a.at("id").get<std::string>();
        if (!ids.insert(algo.id).second) {
            throw std::invalid_argument("config: duplicate algorithm id '" + algo.id + "'");
        }
        algo.strategy = p_kind_from_string(a.at("strategy").get<std::string>());
        if (a.contains("schedule")) algo.schedule = parse_schedule(a["schedule"]);
        if (a.contains("solver")) algo.solver = parse_solver(a["solver"]);
        cfg.algorithms.push_back(std::move(algo));
    }
    cfg.seeds = j.value("seeds", 3);
    cfg.epsilon = j.value("epsilon", 1e-3);
    cfg.gamma = j.value("gamma", 1e-5);
    cfg.n_stop = j.value("n_stop", 3);
    cfg.max_embeddings = j.value("max_embeddings", 0);
    cfg.max_evals = j.value("max_evals", static_cast<long long>(0));
    cfg.suite_seed = j.value("suite_seed", static_cast<std::uint64_t>(42));
    cfg.base_seed = j.value("base_seed", static_cast<std::uint64_t>(1));
    cfg.output = j.value("output", std::string("records.jsonl"));
    if (cfg.seeds < 1) throw std::invalid_argument("config: seeds must be >= 1");
    return cfg;
}

ExperimentConfig load_experiment_config(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("config: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_experiment_config(ss.str());
}

std::string CellResult::key() const {
    return problem + "|" + std::to_string(D) + "|" + algorithm + "|" + std::to_string(seed);
}

std::string to_json_line(const CellResult& cell) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["problem"] = cell.problem;
    j["D"] = cell.D;
    j["d_e"] = cell.d_e;
    j["f_star"] = cell.f_star;
    j["algorithm"] = cell.algorithm;
    j["seed"] = cell.seed;
    j["failed"] = cell.failed;
    if (cell.failed) j["error"] = cell.error;
    j["f_opt"] = cell.f_opt;
    if (cell.n_f) {
        j["N_f"] = *cell.n_f;
    } else {
        j["N_f"] = nullptr;
    }
    if (cell.k_f) j["k_f"] = *cell.k_f;
    if (cell.d_e_est) j["d_e_est"] = *cell.d_e_est;
    j["embeddings"] = cell.embeddings;
    j["evals"] = cell.evals;
    j["success"] = cell.success;
    return j.dump();
}

CellResult cell_from_json_line(const std::string& line) {
    const json j = json::parse(line);
    if (j.value("schema_version", 0) != kSchemaVersion) {
        throw std::invalid_argument("record: unsupported schema_version");
    }
    CellResult cell;
    cell.problem = j.at("problem").get<std::string>();
    cell.D = j.at("D").get<int>();
    cell.d_e = j.value("d_e", 0);
    cell.f_star = j.value("f_star", 0.0);
    cell.algorithm = j.at("algorithm").get<std::string>();
    cell.seed = j.at("seed").get<int>();
    cell.failed = j.value("failed", false);
    cell.error = j.value("error", std::string());
    cell.f_opt = j.value("f_opt", 0.0);
    if (j.contains("N_f") && !j["N_f"].is_null()) cell.n_f = j["N_f"].get<long long>();
    if (j.contains("k_f")) cell.k_f = j["k_f"].get<int>();
    if (j.contains("d_e_est")) cell.d_e_est = j["d_e_est"].get<int>();
    cell.embeddings = j.value("embeddings", 0);
    cell.evals = j.value("evals", static_cast<long long>(0));
    cell.success = j.value("success", false);
    return cell;
}

std::vector<CellResult> load_records(const std::string& path) {
    std::vector<CellResult> out;
    std::ifstream in(path);
    if (!in) return out;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        out.push_back(cell_from_json_line(line));
    }
    return out;
}

std::string xrego_result_json(const XregoResult& res) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["f_opt"] = res.f_opt;
    j["x_opt"] = std::vector<double>(res.x_opt.data(), res.x_opt.data() + res.x_opt.size());
    if (res.k_f) j["k_f"] = *res.k_f;
    if (res.d_e_est) j["d_e_est"] = *res.d_e_est;
    j["embeddings"] = res.embeddings;
    j["total_evals"] = res.total_evals;
    if (res.success) j["success"] = *res.success;
    json trace = json::array();
    for (const auto& rec : res.trace) {
        trace.push_back({{"k", rec.k},
                         {"d", rec.d},
                         {"f_x", rec.f_x},
                         {"f_xopt", rec.f_xopt},
                         {"evals_embedding", rec.evals_embedding},
                         {"evals_cumulative", rec.evals_cumulative},
                         {"stagnation", rec.stagnation}});
    }
    j["trace"] = trace;
    return j.dump();
}

CellResult run_cell(const Objective& obj, const AlgorithmConfig& algo, int seed,
                    const ExperimentConfig& cfg, XregoResult* full) {
    CellResult cell;
    cell.problem = obj.name;
    cell.D = obj.dim;
    cell.d_e = obj.effective_dim.value_or(0);
    cell.f_star = obj.f_star.value_or(0.0);
    cell.algorithm = algo.id;
    cell.seed = seed;

    StopConfig stop;
    stop.gamma = cfg.gamma;
    stop.n_stop = cfg.n_stop;
    stop.max_embeddings = cfg.max_embeddings;
    stop.max_evals = cfg.max_evals;
    stop.target_eps = cfg.epsilon;

    const RngState rng{cfg.base_seed, fnv1a(cell.key())};
    try {
        PStrategy strategy;
        strategy.kind = algo.strategy;
        const XregoResult res = run_xrego(obj, strategy, algo.schedule, algo.solver, stop, rng);
        if (full) *full = res;
        cell.f_opt = res.f_opt;
        cell.k_f = res.k_f;
        cell.d_e_est = res.d_e_est;
        cell.embeddings = res.embeddings;
        cell.evals = res.total_evals;
        cell.success = res.success.value_or(false);
        if (obj.f_star) {
            for (const auto& rec : res.trace) {
                if (rec.f_xopt <= *obj.f_star + cfg.epsilon) {
                    cell.n_f = rec.evals_cumulative;
                    break;
                }
            }
        }
    } catch (const std::exception& e) {
        cell.failed = true;
        cell.error = e.what();
    }
    return cell;
}

std::vector<CellResult> run_experiment(const ExperimentConfig& cfg, int jobs) {
    // materialize the problem set (shared rotations across all cells)
    std::vector<Objective> objectives;
    for (int D : cfg.dims) {
        std::vector<std::string> skipped;
        auto all = suite(D, RngState{cfg.suite_seed, 0}, &skipped);
        for (auto& obj : all) {
            if (!cfg.problem_names.empty() &&
                std::find(cfg.problem_names.begin(), cfg.problem_names.end(), obj.name) ==
                    cfg.problem_names.end()) {
                continue;
            }
            objectives.push_back(std::move(obj));
        }
    }

    std::vector<CellResult> done = load_records(cfg.output);
    std::set<std::string> seen;
    for (const auto& cell : done) seen.insert(cell.key());

    struct Cell {
        const Objective* obj;
        const AlgorithmConfig* algo;
        int seed;
    };
    std::vector<Cell> todo;
    for (const auto& obj : objectives) {
        for (const auto& algo : cfg.algorithms) {
            for (int s = 0; s < cfg.seeds; ++s) {
                CellResult probe;
                probe.problem = obj.name;
                probe.D = obj.dim;
                probe.algorithm = algo.id;
                probe.seed = s;
                if (!seen.count(probe.key())) todo.push_back({&obj, &algo, s});
            }
        }
    }
    if (todo.empty()) return done;

    std::ofstream out(cfg.output, std::ios::app);
    if (!out) throw std::runtime_error("cannot open output file " + cfg.output);
    std::mutex sink;
    std::atomic<std::size_t> next{0};
    const int n_threads = std::max(1, jobs);

    auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= todo.size()) return;
            const Cell& c = todo[i];
            CellResult cell = run_cell(*c.obj, *c.algo, c.seed, cfg);
            std::lock_guard<std::mutex> lock(sink);
            out << to_json_line(cell) << "\n";
            out.flush();
            done.push_back(std::move(cell));
        }
    };
    if (n_threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(n_threads));
        for (int t = 0; t < n_threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return done;
}

}  // namespace xrego
