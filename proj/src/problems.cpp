#include "xrego/problems.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace xrego {

namespace {

using std::numbers::pi;

Vector vec(std::initializer_list<double> xs) {
    Vector v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v(i++) = x;
    return v;
}

std::vector<Interval> box(int dim, double lo, double hi) {
    return std::vector<Interval>(static_cast<std::size_t>(dim), Interval{lo, hi});
}

double beale(const Vector& x) {
    const double a = 1.5 - x(0) + x(0) * x(1);
    const double b = 2.25 - x(0) + x(0) * x(1) * x(1);
    const double c = 2.625 - x(0) + x(0) * x(1) * x(1) * x(1);
    return a * a + b * b + c * c;
}

double branin(const Vector& x) {
    constexpr double a = 1.0;
    const double b = 5.1 / (4.0 * pi * pi);
    const double c = 5.0 / pi;
    constexpr double r = 6.0;
    constexpr double s = 10.0;
    const double t = 1.0 / (8.0 * pi);
    const double u = x(1) - b * x(0) * x(0) + c * x(0) - r;
    return a * u * u + s * (1.0 - t) * std::cos(x(0)) + s;
}

double brent(const Vector& x) {
    return (x(0) + 10.0) * (x(0) + 10.0) + (x(1) + 10.0) * (x(1) + 10.0) +
           std::exp(-x(0) * x(0) - x(1) * x(1));
}

double easom(const Vector& x) {
    const double dx = x(0) - pi, dy = x(1) - pi;
    return -std::cos(x(0)) * std::cos(x(1)) * std::exp(-(dx * dx + dy * dy));
}

double goldstein_price(const Vector& x) {
    const double x1 = x(0), x2 = x(1);
    const double p = x1 + x2 + 1.0;
    const double q = 2.0 * x1 - 3.0 * x2;
    return (1.0 + p * p * (19.0 - 14.0 * x1 + 3.0 * x1 * x1 - 14.0 * x2 + 6.0 * x1 * x2 +
                           3.0 * x2 * x2)) *
           (30.0 + q * q * (18.0 - 32.0 * x1 + 12.0 * x1 * x1 + 48.0 * x2 - 36.0 * x1 * x2 +
                            27.0 * x2 * x2));
}

constexpr double kHartAlpha[4] = {1.0, 1.2, 3.0, 3.2};
constexpr double kHart3A[4][3] = {{3, 10, 30}, {0.1, 10, 35}, {3, 10, 30}, {0.1, 10, 35}};
constexpr double kHart3P[4][3] = {{0.3689, 0.1170, 0.2673},
                                  {0.4699, 0.4387, 0.7470},
                                  {0.1091, 0.8732, 0.5547},
                                  {0.0381, 0.5743, 0.8828}};
constexpr double kHart6A[4][6] = {{10, 3, 17, 3.5, 1.7, 8},
                                  {0.05, 10, 17, 0.1, 8, 14},
                                  {3, 3.5, 1.7, 10, 17, 8},
                                  {17, 8, 0.05, 10, 0.1, 14}};
constexpr double kHart6P[4][6] = {{0.1312, 0.1696, 0.5569, 0.0124, 0.8283, 0.5886},
                                  {0.2329, 0.4135, 0.8307, 0.3736, 0.1004, 0.9991},
                                  {0.2348, 0.1451, 0.3522, 0.2883, 0.3047, 0.6650},
                                  {0.4047, 0.8828, 0.8732, 0.5743, 0.1091, 0.0381}};

template <int N>
double hartmann(const Vector& x, const double A[4][N], const double P[4][N]) {
    double acc = 0.0;
    for (int i = 0; i < 4; ++i) {
        double e = 0.0;
        for (int j = 0; j < N; ++j) {
            const double d = x(j) - P[i][j];
            e += A[i][j] * d * d;
        }
        acc -= kHartAlpha[i] * std::exp(-e);
    }
    return acc;
}

double levy(const Vector& x) {
    const int d = static_cast<int>(x.size());
    auto w = [&](int i) { return 1.0 + (x(i) - 1.0) / 4.0; };
    const double s0 = std::sin(pi * w(0));
    double acc = s0 * s0;
    for (int i = 0; i < d - 1; ++i) {
        const double wi = w(i);
        const double s = std::sin(pi * wi + 1.0);
        acc += (wi - 1.0) * (wi - 1.0) * (1.0 + 10.0 * s * s);
    }
    const double wd = w(d - 1);
    const double sd = std::sin(2.0 * pi * wd);
    return acc + (wd - 1.0) * (wd - 1.0) * (1.0 + sd * sd);
}

double perm4(const Vector& x) {
    constexpr double beta = 0.5;
    const int d = 4;
    double acc = 0.0;
    for (int i = 1; i <= d; ++i) {
        double inner = 0.0;
        for (int j = 1; j <= d; ++j) {
            inner += (std::pow(j, i) + beta) * (std::pow(x(j - 1) / j, i) - 1.0);
        }
        acc += inner * inner;
    }
    return acc;
}

double rosenbrock(const Vector& x) {
    double acc = 0.0;
    for (int i = 0; i + 1 < x.size(); ++i) {
        const double a = x(i + 1) - x(i) * x(i);
        const double b = x(i) - 1.0;
        acc += 100.0 * a * a + b * b;
    }
    return acc;
}

constexpr double kShekelC[4][10] = {{4, 1, 8, 6, 3, 2, 5, 8, 6, 7},
                                    {4, 1, 8, 6, 7, 9, 3, 1, 2, 3.6},
                                    {4, 1, 8, 6, 3, 2, 5, 8, 6, 7},
                                    {4, 1, 8, 6, 7, 9, 3, 1, 2, 3.6}};
constexpr double kShekelBeta[10] = {0.1, 0.2, 0.2, 0.4, 0.4, 0.6, 0.3, 0.7, 0.5, 0.5};

double shekel(const Vector& x, int m) {
    double acc = 0.0;
    for (int i = 0; i < m; ++i) {
        double denom = kShekelBeta[i];
        for (int j = 0; j < 4; ++j) {
            const double d = x(j) - kShekelC[j][i];
            denom += d * d;
        }
        acc -= 1.0 / denom;
    }
    return acc;
}

double shubert(const Vector& x) {
    double s1 = 0.0, s2 = 0.0;
    for (int i = 1; i <= 5; ++i) {
        s1 += i * std::cos((i + 1.0) * x(0) + i);
        s2 += i * std::cos((i + 1.0) * x(1) + i);
    }
    return s1 * s2;
}

double six_hump_camel(const Vector& x) {
    const double x1 = x(0), x2 = x(1);
    return (4.0 - 2.1 * x1 * x1 + x1 * x1 * x1 * x1 / 3.0) * x1 * x1 + x1 * x2 +
           (-4.0 + 4.0 * x2 * x2) * x2 * x2;
}

double styblinski_tang(const Vector& x) {
    double acc = 0.0;
    for (int i = 0; i < x.size(); ++i) {
        const double v = x(i);
        acc += v * v * v * v - 16.0 * v * v + 5.0 * v;
    }
    return 0.5 * acc;
}

double trid(const Vector& x) {
    double acc = 0.0;
    for (int i = 0; i < x.size(); ++i) acc += (x(i) - 1.0) * (x(i) - 1.0);
    for (int i = 1; i < x.size(); ++i) acc -= x(i) * x(i - 1);
    return acc;
}

double zettl(const Vector& x) {
    const double q = x(0) * x(0) + x(1) * x(1) - 2.0 * x(0);
    return q * q + 0.25 * x(0);
}

std::vector<BaseFunction> build_suite() {
    std::vector<BaseFunction> s;
    s.push_back({"beale", 2, box(2, -4.5, 4.5), beale, 0.0, {vec({3.0, 0.5})}});
    s.push_back({"branin",
                 2,
                 {Interval{-5, 10}, Interval{0, 15}},
                 branin,
                 0.39788735772973816,
                 {vec({pi, 2.275}), vec({-pi, 12.275}), vec({9.42478, 2.475})}});
    s.push_back({"brent", 2, box(2, -10, 10), brent, 0.0, {vec({-10.0, -10.0})}});
    s.push_back({"easom", 2, box(2, -100, 100), easom, -1.0, {vec({pi, pi})}});
    s.push_back(
        {"goldstein_price", 2, box(2, -2, 2), goldstein_price, 3.0, {vec({0.0, -1.0})}});
    s.push_back({"hartmann3",
                 3,
                 box(3, 0, 1),
                 [](const Vector& x) { return hartmann<3>(x, kHart3A, kHart3P); },
                 -3.862779787332663,
                 {vec({0.114588881225, 0.555648895474, 0.852546984217})}});
    s.push_back({"hartmann6",
                 6,
                 box(6, 0, 1),
                 [](const Vector& x) { return hartmann<6>(x, kHart6A, kHart6P); },
                 -3.3223680114155147,
                 {vec({0.201689509094, 0.150010693541, 0.476873972925, 0.275332427522,
                       0.31165161724, 0.657300534554})}});
    s.push_back({"levy6", 6, box(6, -10, 10), levy, 0.0, {Vector::Ones(6)}});
    s.push_back({"perm4", 4, box(4, -4, 4), perm4, 0.0, {vec({1.0, 2.0, 3.0, 4.0})}});
    s.push_back({"rosenbrock7", 7, box(7, -5, 10), rosenbrock, 0.0, {Vector::Ones(7)}});
    s.push_back({"shekel5",
                 4,
                 box(4, 0, 10),
                 [](const Vector& x) { return shekel(x, 5); },
                 -10.153199679058229,
                 {vec({4.000037152377, 4.000133278658, 4.000037151058, 4.00013327709})}});
    s.push_back({"shekel7",
                 4,
                 box(4, 0, 10),
                 [](const Vector& x) { return shekel(x, 7); },
                 -10.402915336777745,
                 {vec({4.000572818167, 3.999606207067, 4.000572821117, 3.9996062104})}});
    s.push_back({"shekel10",
                 4,
                 box(4, 0, 10),
                 [](const Vector& x) { return shekel(x, 10); },
                 -10.53644315348353,
                 {vec({4.000746866659, 3.999509480868, 4.000746866998, 3.999509482242})}});
    s.push_back({"shubert",
                 2,
                 box(2, -10, 10),
                 shubert,
                 -186.73090883102387,
                 {vec({-1.425128427983, -0.800321098211})}});
    s.push_back({"six_hump_camel",
                 2,
                 {Interval{-3, 3}, Interval{-2, 2}},
                 six_hump_camel,
                 -1.0316284534898774,
                 {vec({0.089842008935, -0.712656403019}),
                  vec({-0.089842008935, 0.712656403019})}});
    s.push_back({"styblinski_tang8", 8, box(8, -5, 5), styblinski_tang, -313.32932563017136,
                 {Vector::Constant(8, -2.90353401818596)}});
    s.push_back({"trid5", 5, box(5, -25, 25), trid, -30.0, {vec({5.0, 8.0, 9.0, 8.0, 5.0})}});
    s.push_back({"zettl", 2, box(2, -5, 5), zettl, -0.003791237220468898,
                 {vec({-0.0298959852079, 0.0})}});
    return s;
}

bool on_unit_box(const std::vector<Interval>& domain) {
    for (const auto& iv : domain) {
        if (iv.lo != -1.0 || iv.hi != 1.0) return false;
    }
    return true;
}

}  // namespace

const std::vector<BaseFunction>& base_suite() {
    static const std::vector<BaseFunction> s = build_suite();
    return s;
}

const BaseFunction& find_base(const std::string& name) {
    for (const auto& b : base_suite()) {
        if (b.name == name) return b;
    }
    throw std::invalid_argument("unknown base function: " + name);
}

BaseFunction scale_to_unit_box(const BaseFunction& base) {
    if (on_unit_box(base.domain)) return base;
    Vector lo(base.dim), span(base.dim);
    for (int i = 0; i < base.dim; ++i) {
        const auto& iv = base.domain[static_cast<std::size_t>(i)];
        if (!(iv.hi > iv.lo)) {
            throw std::invalid_argument("scale_to_unit_box: degenerate interval in " + base.name);
        }
        lo(i) = iv.lo;
        span(i) = iv.hi - iv.lo;
    }
    BaseFunction scaled;
    scaled.name = base.name;
    scaled.dim = base.dim;
    scaled.domain = box(base.dim, -1.0, 1.0);
    scaled.f_star = base.f_star;
    auto inner = base.evaluate;
    scaled.evaluate = [inner, lo, span](const Vector& y) {
        const Vector x = lo.array() + (y.array() + 1.0) * 0.5 * span.array();
        return inner(x);
    };
    for (const auto& m : base.minimizers) {
        scaled.minimizers.push_back((2.0 * (m - lo).array() / span.array() - 1.0).matrix());
    }
    return scaled;
}

bool Objective::feasible(const Vector& x) const {
    if (domain == Domain::real_space) return true;
    return (x.array() >= -1.0).all() && (x.array() <= 1.0).all();
}

Objective make_low_effdim(const BaseFunction& scaled_base, int D, const Matrix& Q,
                          std::uint64_t seed) {
    if (D < scaled_base.dim) {
        throw std::invalid_argument("make_low_effdim: D smaller than effective dimension");
    }
    if (!on_unit_box(scaled_base.domain)) {
        throw std::invalid_argument("make_low_effdim: base must be scaled to the unit box");
    }
    if (Q.rows() != D || Q.cols() != D) {
        throw std::invalid_argument("make_low_effdim: rotation must be D x D");
    }
    const int de = scaled_base.dim;
    const Matrix U = Q.topRows(de);

    Objective obj;
    obj.name = scaled_base.name;
    obj.dim = D;
    obj.domain = Objective::Domain::real_space;
    obj.f_star = scaled_base.f_star;
    obj.effective_dim = de;
    obj.effective_basis = U;
    obj.seed = seed;
    auto inner = scaled_base.evaluate;
    obj.evaluate = [inner, U](const Vector& x) { return inner(U * x); };
    if (!scaled_base.minimizers.empty()) {
        obj.minimizer = U.transpose() * scaled_base.minimizers.front();
    }
    return obj;
}

Objective make_low_effdim(const BaseFunction& scaled_base, int D, const RngState& rng) {
    Objective obj = make_low_effdim(scaled_base, D, gen_haar_orthogonal(rng, D), rng.stream);
    obj.lipschitz_estimate = estimate_lipschitz(scaled_base, 1000, rng.derive(1));
    return obj;
}

double estimate_lipschitz(const BaseFunction& scaled_base, int samples, const RngState& rng) {
    const int d = scaled_base.dim;
    auto eng = rng.engine();
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    constexpr double h = 1e-6;
    double best = 0.0;
    Vector x(d);
    for (int s = 0; s < samples; ++s) {
        for (int i = 0; i < d; ++i) x(i) = unif(eng);
        double norm2 = 0.0;
        for (int i = 0; i < d; ++i) {
            Vector xp = x, xm = x;
            xp(i) += h;
            xm(i) -= h;
            const double g = (scaled_base.evaluate(xp) - scaled_base.evaluate(xm)) / (2.0 * h);
            norm2 += g * g;
        }
        best = std::max(best, std::sqrt(norm2));
    }
    return best;
}

Matrix complement_basis(const Matrix& U) {
    const Eigen::Index de = U.rows();
    const Eigen::Index D = U.cols();
    // Columns of the full Q from a QR of U^T beyond the first de span the
    // orthogonal complement of the row space.
    Eigen::HouseholderQR<Matrix> qr(U.transpose());
    const Matrix full = qr.householderQ();
    return full.rightCols(D - de);
}

std::vector<Objective> suite(int D, const RngState& rng, std::vector<std::string>* skipped) {
    std::vector<Objective> out;
    for (const auto& base : base_suite()) {
        if (base.dim > D) {
            if (skipped) skipped->push_back(base.name);
            continue;
        }
        const BaseFunction scaled = scale_to_unit_box(base);
        out.push_back(make_low_effdim(scaled, D, rng.derive(fnv1a(base.name))));
    }
    return out;
}

}  // namespace xrego
