#include "xrego/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <sstream>

namespace xrego {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Lower median with unsolved cells pushed to +inf.
double median_cost(std::vector<double> costs) {
    std::sort(costs.begin(), costs.end());
    return costs[(costs.size() - 1) / 2];
}

}  // namespace

std::vector<double> default_alpha_grid(const std::vector<CellResult>& records) {
    const ProfileSet set = performance_profile(records, {1.0});
    std::set<double> grid{1.0};
    for (const auto& curve : set.curves) {
        for (double r : curve.ratios) {
            if (std::isfinite(r)) grid.insert(r);
        }
    }
    return {grid.begin(), grid.end()};
}

ProfileSet performance_profile(const std::vector<CellResult>& records,
                               std::vector<double> alpha_grid) {
    // (problem|D) -> algorithm -> per-seed costs
    std::map<std::string, std::map<std::string, std::vector<double>>> table;
    std::set<std::string> algorithms;
    for (const auto& cell : records) {
        const std::string pkey = cell.problem + "|" + std::to_string(cell.D);
        const double cost =
            (!cell.failed && cell.n_f) ? static_cast<double>(*cell.n_f) : kInf;
        table[pkey][cell.algorithm].push_back(cost);
        algorithms.insert(cell.algorithm);
    }

    ProfileSet set;
    std::map<std::string, std::map<std::string, double>> ratios;  // problem -> algo -> ratio
    for (const auto& [pkey, by_algo] : table) {
        double best = kInf;
        std::map<std::string, double> costs;
        for (const auto& algo : algorithms) {
            const auto it = by_algo.find(algo);
            const double cost = it == by_algo.end() ? kInf : median_cost(it->second);
            costs[algo] = cost;
            best = std::min(best, cost);
        }
        if (!std::isfinite(best)) {
            set.excluded_problems.push_back(pkey);
            continue;
        }
        for (const auto& [algo, cost] : costs) ratios[pkey][algo] = cost / best;
        ++set.problem_count;
    }

    if (alpha_grid.empty()) {
        std::set<double> grid{1.0};
        for (const auto& [pkey, by_algo] : ratios) {
            for (const auto& [algo, r] : by_algo) {
                if (std::isfinite(r)) grid.insert(r);
            }
        }
        alpha_grid.assign(grid.begin(), grid.end());
    }
    std::sort(alpha_grid.begin(), alpha_grid.end());

    for (const auto& algo : algorithms) {
        ProfileCurve curve;
        curve.algorithm = algo;
        curve.alpha = alpha_grid;
        for (const auto& [pkey, by_algo] : ratios) curve.ratios.push_back(by_algo.at(algo));
        std::sort(curve.ratios.begin(), curve.ratios.end());
        const double n = static_cast<double>(set.problem_count);
        for (double a : alpha_grid) {
            const auto solved = std::upper_bound(curve.ratios.begin(), curve.ratios.end(), a);
            curve.pi.push_back(n == 0.0 ? 0.0
                                        : static_cast<double>(solved - curve.ratios.begin()) / n);
        }
        long long finite = 0;
        for (double r : curve.ratios) {
            if (std::isfinite(r)) ++finite;
        }
        curve.solved_fraction = n == 0.0 ? 0.0 : static_cast<double>(finite) / n;
        set.curves.push_back(std::move(curve));
    }
    return set;
}

std::string profile_csv(const ProfileSet& set) {
    std::ostringstream out;
    out << "# schema_version=1\n";
    out << "alpha";
    for (const auto& curve : set.curves) out << "," << curve.algorithm;
    out << "\n";
    if (set.curves.empty()) return out.str();
    const auto& grid = set.curves.front().alpha;
    for (std::size_t i = 0; i < grid.size(); ++i) {
        out << grid[i];
        for (const auto& curve : set.curves) out << "," << curve.pi[i];
        out << "\n";
    }
    out << "inf";
    for (const auto& curve : set.curves) out << "," << curve.solved_fraction;
    out << "\n";
    return out.str();
}

std::string profile_svg(const ProfileSet& set) {
    constexpr int width = 640, height = 440;
    constexpr int ml = 60, mr = 20, mt = 20, mb = 50;
    const double plot_w = width - ml - mr;
    const double plot_h = height - mt - mb;

    double alpha_max = 2.0;
    for (const auto& curve : set.curves) {
        for (double r : curve.ratios) {
            if (std::isfinite(r)) alpha_max = std::max(alpha_max, r);
        }
    }
    const double log_max = std::log10(alpha_max) * 1.05 + 1e-9;
    auto xpix = [&](double a) { return ml + plot_w * std::log10(std::max(1.0, a)) / log_max; };
    auto ypix = [&](double p) { return mt + plot_h * (1.0 - p); };

    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                   "#ff7f0e", "#8c564b", "#17becf", "#7f7f7f"};
    std::ostringstream out;
    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << width << "' height='" << height
        << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    out << "<line x1='" << ml << "' y1='" << mt + plot_h << "' x2='" << ml + plot_w << "' y2='"
        << mt + plot_h << "' stroke='black'/>\n";
    out << "<line x1='" << ml << "' y1='" << mt << "' x2='" << ml << "' y2='" << mt + plot_h
        << "' stroke='black'/>\n";
    for (double p = 0.0; p <= 1.0001; p += 0.25) {
        out << "<text x='" << ml - 8 << "' y='" << ypix(p) + 4
            << "' font-size='11' text-anchor='end'>" << p << "</text>\n";
    }
    out << "<text x='" << ml + plot_w / 2 << "' y='" << height - 12
        << "' font-size='12' text-anchor='middle'>performance ratio alpha (log scale)</text>\n";
    out << "<text x='14' y='" << mt + plot_h / 2
        << "' font-size='12' transform='rotate(-90 14 " << mt + plot_h / 2
        << ")' text-anchor='middle'>fraction of problems solved</text>\n";

    int ci = 0;
    for (const auto& curve : set.curves) {
        const char* color = colors[ci % 8];
        std::ostringstream path;
        double prev_pi = 0.0;
        path << "M" << xpix(1.0) << " " << ypix(0.0);
        for (std::size_t i = 0; i < curve.alpha.size(); ++i) {
            path << " L" << xpix(curve.alpha[i]) << " " << ypix(prev_pi);
            path << " L" << xpix(curve.alpha[i]) << " " << ypix(curve.pi[i]);
            prev_pi = curve.pi[i];
        }
        path << " L" << xpix(alpha_max) << " " << ypix(prev_pi);
        out << "<path d='" << path.str() << "' fill='none' stroke='" << color
            << "' stroke-width='1.6'/>\n";
        out << "<text x='" << ml + plot_w - 6 << "' y='" << mt + 16 + 16 * ci
            << "' font-size='12' text-anchor='end' fill='" << color << "'>" << curve.algorithm
            << "</text>\n";
        ++ci;
    }
    out << "</svg>\n";
    return out.str();
}

}  // namespace xrego
