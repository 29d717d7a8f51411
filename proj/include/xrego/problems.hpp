#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "xrego/rand_geometry.hpp"

namespace xrego {

struct Interval {
    double lo = -1.0;
    double hi = 1.0;
};

// A low-dimensional benchmark objective with known global minimum, as listed
// in the problem table. Coordinates live in `domain`.
struct BaseFunction {
    std::string name;
    int dim = 0;  // d_e
    std::vector<Interval> domain;
    std::function<double(const Vector&)> evaluate;
    double f_star = 0.0;
    std::vector<Vector> minimizers;  // may be empty
};

// The 18 benchmark rows, alphabetical.
const std::vector<BaseFunction>& base_suite();
const BaseFunction& find_base(const std::string& name);

// Affine change of variables mapping [-1,1]^d onto the original box.
// f* is unchanged and minimizers are mapped along.
BaseFunction scale_to_unit_box(const BaseFunction& base);

// A D-dimensional objective, either unconstrained or box-constrained, with
// optional metadata about a hidden effective subspace.
struct Objective {
    std::string name;
    int dim = 0;  // D
    enum class Domain { real_space, unit_box };
    Domain domain = Domain::real_space;
    std::function<double(const Vector&)> evaluate;

    std::optional<double> f_star;
    std::optional<int> effective_dim;
    std::optional<Matrix> effective_basis;  // d_e x D, orthonormal rows
    std::optional<Vector> minimizer;        // representative with zero constant part
    std::optional<double> lipschitz_estimate;
    std::uint64_t seed = 0;

    bool feasible(const Vector& x) const;
};

// f(x) = g(Q x) with g(u) = base(u_{1:d_e}): the base function padded with
// D - d_e inert coordinates and hidden behind a Haar rotation. The base must
// already live on the unit box.
Objective make_low_effdim(const BaseFunction& scaled_base, int D, const RngState& rng);
// Deterministic-rotation variant (used with Q = I in tests).
Objective make_low_effdim(const BaseFunction& scaled_base, int D, const Matrix& Q,
                          std::uint64_t seed = 0);

// Sampled max gradient-norm estimate by central differences; reporting-only.
double estimate_lipschitz(const BaseFunction& scaled_base, int samples, const RngState& rng);

// An orthonormal basis (columns) of the orthogonal complement of the row
// space of U; spans the constant subspace of a generated objective.
Matrix complement_basis(const Matrix& U);

// One generated Objective per table row at ambient dimension D. Rows whose
// d_e exceeds D are skipped and reported through `skipped`.
std::vector<Objective> suite(int D, const RngState& rng,
                             std::vector<std::string>* skipped = nullptr);

}  // namespace xrego
