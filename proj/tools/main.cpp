#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <numbers>
#include <sstream>

#include "xrego/conic_bounds.hpp"
#include "xrego/experiment.hpp"
#include "xrego/problems.hpp"
#include "xrego/profiles.hpp"
#include "xrego/verify_mc.hpp"
#include "xrego/xrego.hpp"

using nlohmann::json;
using namespace xrego;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

std::map<std::string, double> parse_kv(const std::vector<std::string>& args) {
    std::map<std::string, double> kv;
    for (const auto& a : args) {
        const auto eq = a.find('=');
        if (eq == std::string::npos) {
            throw CLI::ValidationError("expected key=value, got '" + a + "'");
        }
        kv[a.substr(0, eq)] = std::stod(a.substr(eq + 1));
    }
    return kv;
}

double need(const std::map<std::string, double>& kv, const std::string& key) {
    const auto it = kv.find(key);
    if (it == kv.end()) throw CLI::ValidationError("missing parameter '" + key + "'");
    return it->second;
}

json bound_to_json(const BoundReport& rep) {
    json j;
    j["tau"] = rep.tau;
    j["log10_tau"] = rep.log10_tau;
    switch (rep.kind) {
        case BoundKind::pointwise: j["kind"] = "pointwise"; break;
        case BoundKind::uniform: j["kind"] = "uniform"; break;
        case BoundKind::led: j["kind"] = "led"; break;
        case BoundKind::uniform_sampling: j["kind"] = "uniform-sampling"; break;
    }
    j["r"] = rep.r;
    j["d"] = rep.d;
    j["ambient"] = rep.ambient;
    if (rep.certain) j["certain"] = true;
    if (rep.vacuous_risk) j["vacuous_risk"] = true;
    if (!rep.note.empty()) j["note"] = rep.note;
    return j;
}

void print_value(const std::string& format, double value, const json& full) {
    if (format == "json") {
        std::cout << full.dump(2) << "\n";
    } else if (format == "csv") {
        std::cout << "value\n" << std::setprecision(17) << value << "\n";
    } else {
        std::cout << std::setprecision(10) << value << "\n";
    }
}

json mc_to_json(const McEstimate& est) {
    json j;
    j["p_hat"] = est.p_hat;
    j["wilson95_lower"] = est.ci.lower;
    j["wilson95_upper"] = est.ci.upper;
    j["trials"] = est.trials;
    j["tau"] = est.tau;
    j["exact"] = est.exact;
    j["verdict"] = est.violation ? "violation" : "consistent";
    j["inconclusive"] = est.inconclusive;
    return j;
}

int cmd_bounds(const std::string& mode, const std::map<std::string, double>& kv,
               const std::string& format) {
    const double eps = kv.count("eps") ? kv.at("eps") : 1.0;
    const double L = kv.count("L") ? kv.at("L") : 1.0;
    if (mode == "tau") {
        const auto rep = tau(need(kv, "r"), static_cast<int>(need(kv, "d")),
                             static_cast<int>(need(kv, "D")));
        print_value(format, rep.tau, bound_to_json(rep));
    } else if (mode == "tau-pointwise") {
        const auto rep = tau_pointwise(eps, L, need(kv, "dist"), static_cast<int>(need(kv, "d")),
                                       static_cast<int>(need(kv, "D")));
        print_value(format, rep.tau, bound_to_json(rep));
    } else if (mode == "tau-uniform") {
        const auto rep = tau_uniform(eps, L, need(kv, "Rmax"), static_cast<int>(need(kv, "d")),
                                     static_cast<int>(need(kv, "D")));
        print_value(format, rep.tau, bound_to_json(rep));
    } else if (mode == "tau-us") {
        const auto rep = tau_us(eps, L, static_cast<int>(need(kv, "D")));
        print_value(format, rep.tau, bound_to_json(rep));
    } else if (mode == "tau-led") {
        const auto rep = tau_led(eps, L, need(kv, "dist"), static_cast<int>(need(kv, "d")),
                                 static_cast<int>(need(kv, "de")));
        print_value(format, rep.tau, bound_to_json(rep));
    } else if (mode == "asymptotic") {
        const double v = tau_asymptotic_log10(need(kv, "r"), static_cast<int>(need(kv, "d")),
                                              static_cast<int>(need(kv, "D")));
        print_value(format, v, json{{"log10_leading_term", v}});
    } else if (mode == "crossover") {
        const auto rep = crossover(eps, L, need(kv, "dist"), static_cast<int>(need(kv, "d")),
                                   static_cast<int>(need(kv, "D")));
        json j{{"delta0", rep.delta0},
               {"distance", rep.distance},
               {"log10_ratio", rep.log10_ratio},
               {"regime", rep.embedding_favored ? "embedding-favored" : "uniform-favored"}};
        if (format == "json") {
            std::cout << j.dump(2) << "\n";
        } else {
            std::cout << "delta0 " << rep.delta0 << "\n"
                      << "log10_ratio " << rep.log10_ratio << "\n"
                      << "regime " << (rep.embedding_favored ? "embedding-favored"
                                                             : "uniform-favored")
                      << "\n";
        }
    } else if (mode == "kxi") {
        const auto params = k_xi(need(kv, "xi"), need(kv, "tau"), need(kv, "rho"));
        print_value(format, static_cast<double>(params.k_xi),
                    json{{"k_xi", params.k_xi},
                         {"xi", params.xi},
                         {"tau_lb", params.tau_lb},
                         {"rho_lb", params.rho_lb}});
    } else {
        throw CLI::ValidationError("unknown bounds mode '" + mode + "'");
    }
    return kExitOk;
}

int cmd_suite(int D, std::uint64_t seed, const std::string& format, const std::string& out_path) {
    std::vector<std::string> skipped;
    const auto objs = suite(D, RngState{seed, 0}, &skipped);
    json manifest = json::array();
    for (const auto& obj : objs) {
        manifest.push_back({{"name", obj.name},
                            {"D", obj.dim},
                            {"d_e", *obj.effective_dim},
                            {"f_star", *obj.f_star},
                            {"lipschitz_estimate", *obj.lipschitz_estimate},
                            {"seed", obj.seed}});
    }
    std::ostringstream body;
    if (format == "json") {
        body << json{{"schema_version", kSchemaVersion},
                     {"suite_seed", seed},
                     {"skipped", skipped},
                     {"problems", manifest}}
                    .dump(2)
             << "\n";
    } else if (format == "csv") {
        body << "name,D,d_e,f_star,seed\n";
        for (const auto& row : manifest) {
            body << row["name"].get<std::string>() << "," << row["D"] << "," << row["d_e"] << ","
                 << row["f_star"] << "," << row["seed"] << "\n";
        }
    } else {
        body << "name              D     d_e  f_star\n";
        for (const auto& row : manifest) {
            body << std::left << std::setw(18) << row["name"].get<std::string>() << std::setw(6)
                 << row["D"].get<int>() << std::setw(5) << row["d_e"].get<int>()
                 << row["f_star"].get<double>() << "\n";
        }
        for (const auto& name : skipped) body << "skipped: " << name << " (d_e > D)\n";
    }
    if (out_path.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream out(out_path);
        out << body.str();
    }
    return kExitOk;
}

int cmd_run(const std::string& problem, int D, const std::string& strategy,
            const std::string& schedule_kind, int schedule_d, const std::string& solver,
            int seed, std::uint64_t suite_seed, double epsilon, int max_embeddings,
            const std::string& format) {
    std::vector<std::string> skipped;
    const auto objs = suite(D, RngState{suite_seed, 0}, &skipped);
    const Objective* obj = nullptr;
    for (const auto& o : objs) {
        if (o.name == problem) obj = &o;
    }
    if (!obj) throw CLI::ValidationError("problem '" + problem + "' not in the suite at D=" +
                                         std::to_string(D));

    AlgorithmConfig algo;
    algo.id = strategy + "/" + schedule_kind + "/" + solver;
    algo.strategy = p_kind_from_string(strategy);
    algo.schedule = schedule_kind == "constant" ? DimensionSchedule::constant(schedule_d)
                                                : DimensionSchedule::increasing(schedule_d);
    algo.solver.kind = solver_kind_from_string(solver);

    ExperimentConfig cfg;
    cfg.epsilon = epsilon;
    cfg.max_embeddings = max_embeddings;
    XregoResult full;
    const CellResult cell = run_cell(*obj, algo, seed, cfg, &full);
    if (format == "json") {
        json j = json::parse(to_json_line(cell));
        j["trace"] = json::parse(xrego_result_json(full))["trace"];
        std::cout << j.dump() << "\n";
    } else {
        std::cout << "problem    " << cell.problem << " (D=" << cell.D << ", d_e=" << cell.d_e
                  << ")\n"
                  << "f_star     " << cell.f_star << "\n"
                  << "f_opt      " << cell.f_opt << "\n"
                  << "embeddings " << cell.embeddings << "\n"
                  << "evals      " << cell.evals << "\n"
                  << "d_e_est    " << (cell.d_e_est ? std::to_string(*cell.d_e_est) : "none")
                  << "\n"
                  << "N_f        " << (cell.n_f ? std::to_string(*cell.n_f) : "inf") << "\n"
                  << "success    " << (cell.success ? "yes" : "no") << "\n";
    }
    return cell.failed ? kExitRuntime : kExitOk;
}

int cmd_verify(const std::string& grid, long long trials, std::uint64_t seed, int jobs,
               const std::string& format, const std::string& out_path) {
    if (grid != "default") throw CLI::ValidationError("unknown grid '" + grid + "'");
    const auto rows = bound_consistency_grid(trials, RngState{seed, 0}, jobs);
    int violations = 0;
    json jrows = json::array();
    std::ostringstream table;
    table << "  D  d    r        tau      p_hat   [wilson95]          exact    verdict\n";
    for (const auto& row : rows) {
        if (row.est.violation) ++violations;
        json j = mc_to_json(row.est);
        j["D"] = row.D;
        j["d"] = row.d;
        j["r"] = row.r;
        jrows.push_back(j);
        table << std::setw(3) << row.D << std::setw(3) << row.d << std::setw(5) << row.r << "  "
              << std::scientific << std::setprecision(3) << std::setw(10) << row.est.tau
              << std::setw(11) << row.est.p_hat << "  [" << row.est.ci.lower << ", "
              << row.est.ci.upper << "]" << std::setw(11) << row.est.exact << std::defaultfloat
              << "  " << (row.est.violation ? "VIOLATION" : "consistent") << "\n";
    }
    table << (violations == 0 ? "all bounds consistent\n"
                              : std::to_string(violations) + " violations\n");
    std::ostringstream body;
    if (format == "json") {
        body << json{{"schema_version", kSchemaVersion},
                     {"trials_per_point", trials},
                     {"violations", violations},
                     {"rows", jrows}}
                    .dump(2)
             << "\n";
    } else if (format == "csv") {
        body << "D,d,r,tau,p_hat,wilson_lower,wilson_upper,exact,verdict\n";
        for (const auto& j : jrows) {
            body << j["D"] << "," << j["d"] << "," << j["r"] << "," << j["tau"] << ","
                 << j["p_hat"] << "," << j["wilson95_lower"] << "," << j["wilson95_upper"] << ","
                 << j["exact"] << "," << j["verdict"].get<std::string>() << "\n";
        }
    } else {
        body << table.str();
    }
    if (out_path.empty()) {
        std::cout << body.str();
    } else {
        std::ofstream out(out_path);
        out << body.str();
        std::cout << (violations == 0 ? "all bounds consistent\n"
                                      : std::to_string(violations) + " violations\n");
    }
    return violations == 0 ? kExitOk : kExitRuntime;
}

int cmd_profile(const std::string& records_path, const std::string& out_csv,
                const std::string& out_svg, const std::string& format) {
    const auto records = load_records(records_path);
    if (records.empty()) {
        throw CLI::ValidationError("no records found in '" + records_path + "'");
    }
    const auto set = performance_profile(records);
    if (!out_csv.empty()) {
        std::ofstream out(out_csv);
        out << profile_csv(set);
    }
    if (!out_svg.empty()) {
        std::ofstream out(out_svg);
        out << profile_svg(set);
    }
    if (format == "json") {
        json j;
        j["problem_count"] = set.problem_count;
        j["excluded_problems"] = set.excluded_problems;
        json curves = json::array();
        for (const auto& c : set.curves) {
            curves.push_back({{"algorithm", c.algorithm},
                              {"alpha", c.alpha},
                              {"pi", c.pi},
                              {"solved_fraction", c.solved_fraction}});
        }
        j["curves"] = curves;
        std::cout << j.dump(2) << "\n";
    } else if (out_csv.empty() && out_svg.empty()) {
        std::cout << profile_csv(set);
    } else {
        std::cout << "profiles over " << set.problem_count << " problems";
        for (const auto& c : set.curves) {
            std::cout << "  " << c.algorithm << ": solved " << c.solved_fraction;
        }
        std::cout << "\n";
    }
    return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"random-embedding global optimization toolkit"};
    app.require_subcommand(1);
    std::string format = "text";
    app.add_option("--format", format, "output format")
        ->check(CLI::IsMember({"text", "json", "csv"}));

    // bounds
    auto* bounds = app.add_subcommand("bounds", "closed-form probability bounds");
    std::string bounds_mode;
    std::vector<std::string> bounds_kv;
    bounds->add_flag_callback("--tau", [&] { bounds_mode = "tau"; });
    bounds->add_flag_callback("--tau-pointwise", [&] { bounds_mode = "tau-pointwise"; });
    bounds->add_flag_callback("--tau-uniform", [&] { bounds_mode = "tau-uniform"; });
    bounds->add_flag_callback("--tau-us", [&] { bounds_mode = "tau-us"; });
    bounds->add_flag_callback("--tau-led", [&] { bounds_mode = "tau-led"; });
    bounds->add_flag_callback("--crossover", [&] { bounds_mode = "crossover"; });
    bounds->add_flag_callback("--kxi", [&] { bounds_mode = "kxi"; });
    bounds->add_flag_callback("--asymptotic", [&] { bounds_mode = "asymptotic"; });
    bounds->add_option("params", bounds_kv, "key=value parameters (r d D eps L dist Rmax de xi tau rho)");

    // suite
    auto* suite_cmd = app.add_subcommand("suite", "emit the benchmark problem manifest");
    int suite_D = 100;
    std::uint64_t suite_seed = 42;
    std::string suite_out;
    suite_cmd->add_option("--D", suite_D, "ambient dimension")->required();
    suite_cmd->add_option("--seed", suite_seed, "suite seed (fixes hidden rotations)");
    suite_cmd->add_option("--out", suite_out, "write to file instead of stdout");

    // run
    auto* run_cmd = app.add_subcommand("run", "run one algorithm on one problem");
    std::string run_problem, run_strategy = "adaptive-best", run_schedule = "increasing",
                run_solver = "expensive-multistart";
    int run_D = 100, run_schedule_d = 1, run_seed = 0, run_max_embeddings = 0;
    std::uint64_t run_suite_seed = 42;
    double run_epsilon = 1e-3;
    run_cmd->add_option("--problem", run_problem, "problem name")->required();
    run_cmd->add_option("--D", run_D, "ambient dimension");
    run_cmd->add_option("--strategy", run_strategy, "anchor strategy")
        ->check(CLI::IsMember({"fixed", "adaptive-best", "fixed-then-resample",
                               "adaptive-then-resample"}));
    run_cmd->add_option("--schedule", run_schedule, "dimension schedule")
        ->check(CLI::IsMember({"constant", "increasing"}));
    run_cmd->add_option("--d", run_schedule_d, "constant dimension or d_lb");
    run_cmd->add_option("--solver", run_solver, "subsolver kind")
        ->check(CLI::IsMember({"local", "cheap-multistart", "expensive-multistart"}));
    run_cmd->add_option("--seed", run_seed, "cell seed");
    run_cmd->add_option("--suite-seed", run_suite_seed, "suite seed");
    run_cmd->add_option("--epsilon", run_epsilon, "success tolerance vs known f*");
    run_cmd->add_option("--max-embeddings", run_max_embeddings, "cap on embeddings (0 = D)");

    // experiment
    auto* exp_cmd = app.add_subcommand("experiment", "run a full experiment from a config file");
    std::string exp_config, exp_out_override;
    int exp_jobs = 1;
    exp_cmd->add_option("--config", exp_config, "JSON config path")->required();
    exp_cmd->add_option("--jobs", exp_jobs, "worker threads");
    exp_cmd->add_option("--out", exp_out_override, "override the config's output path");

    // profile
    auto* prof_cmd = app.add_subcommand("profile", "performance profiles from records");
    std::string prof_records, prof_csv, prof_svg;
    prof_cmd->add_option("--records", prof_records, "records.jsonl path")->required();
    prof_cmd->add_option("--out", prof_csv, "CSV output path");
    prof_cmd->add_option("--svg", prof_svg, "SVG output path");

    // verify
    auto* verify_cmd = app.add_subcommand("verify", "Monte-Carlo verification of the bounds");
    std::string verify_grid = "default", verify_out;
    long long verify_trials = 20000;
    std::uint64_t verify_seed = 2024;
    int verify_jobs = 1;
    verify_cmd->add_option("--grid", verify_grid, "grid name");
    verify_cmd->add_option("--trials", verify_trials, "trials per grid point");
    verify_cmd->add_option("--seed", verify_seed, "rng seed");
    verify_cmd->add_option("--jobs", verify_jobs, "worker threads");
    verify_cmd->add_option("--out", verify_out, "write the table to a file");

    for (auto* sub : app.get_subcommands({})) sub->fallthrough();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (bounds->parsed()) {
            if (bounds_mode.empty()) {
                std::cerr << "bounds: choose a mode (--tau, --tau-us, --tau-led, --crossover, "
                             "--kxi, --asymptotic, --tau-pointwise, --tau-uniform)\n";
                return kExitConfig;
            }
            return cmd_bounds(bounds_mode, parse_kv(bounds_kv), format);
        }
        if (suite_cmd->parsed()) return cmd_suite(suite_D, suite_seed, format, suite_out);
        if (run_cmd->parsed()) {
            return cmd_run(run_problem, run_D, run_strategy, run_schedule, run_schedule_d,
                           run_solver, run_seed, run_suite_seed, run_epsilon,
                           run_max_embeddings, format);
        }
        if (exp_cmd->parsed()) {
            auto cfg = load_experiment_config(exp_config);
            if (!exp_out_override.empty()) cfg.output = exp_out_override;
            const auto records = run_experiment(cfg, exp_jobs);
            std::cout << records.size() << " records in " << cfg.output << "\n";
            return kExitOk;
        }
        if (prof_cmd->parsed()) return cmd_profile(prof_records, prof_csv, prof_svg, format);
        if (verify_cmd->parsed()) {
            return cmd_verify(verify_grid, verify_trials, verify_seed, verify_jobs, format,
                              verify_out);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    } catch (const std::invalid_argument& e) {
        std::cerr << e.what() << "\n";
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << e.what() << "\n";
        return kExitRuntime;
    }
    return kExitConfig;
}
