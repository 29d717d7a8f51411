#pragma once

#include <string>
#include <vector>

#include "xrego/experiment.hpp"

namespace xrego {

struct ProfileCurve {
    std::string algorithm;
    std::vector<double> ratios;  // sorted per-problem cost ratios; inf = unsolved
    std::vector<double> alpha;   // evaluation grid
    std::vector<double> pi;      // pi(alpha), nondecreasing
    double solved_fraction = 0.0;  // pi at alpha = inf
};

struct ProfileSet {
    std::vector<ProfileCurve> curves;
    std::vector<std::string> excluded_problems;  // solved by no algorithm
    int problem_count = 0;
};

// Dolan-More performance profiles. Per (problem, D) the cost of an
// algorithm is the median over seeds of N_f (infinite when most seeds
// failed); per problem the ratios are against the best algorithm. Profiles
// are a pure function of the records.
ProfileSet performance_profile(const std::vector<CellResult>& records,
                               std::vector<double> alpha_grid = {});

std::vector<double> default_alpha_grid(const std::vector<CellResult>& records);

std::string profile_csv(const ProfileSet& set);
std::string profile_svg(const ProfileSet& set);

}  // namespace xrego
