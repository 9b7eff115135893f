#include "gwv/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>

namespace gwv {

namespace {

// Gauss 7 / Kronrod 15 abscissae and weights on [-1, 1] (QUADPACK dqk15
// constants). The Gauss nodes are kXgk[1], kXgk[3], kXgk[5] and the center.
constexpr double kXgk[8] = {
    0.99145537112081263920685469752633,
    0.94910791234275852452618968404785,
    0.86486442335976907278971278864093,
    0.74153118559939443986386477328079,
    0.58608723546769113029414483825873,
    0.40584515137739716690660641207696,
    0.20778495500789846760068940377324,
    0.0,
};
constexpr double kWgk[8] = {
    0.02293532201052922496373200805897,
    0.06309209262997855329070066318920,
    0.10479001032225018383987632254152,
    0.14065325971552591874518959051024,
    0.16900472663926790282658342659855,
    0.19035057806478540991325640242101,
    0.20443294007529889241416199923465,
    0.20948214108472782801299917489171,
};
constexpr double kWg[4] = {
    0.12948496616886969327061143267908,
    0.27970539148927666790146777142378,
    0.38183005050511894495036977548898,
    0.41795918367346938775510204081633,
};

struct Segment {
    double a, b, value, error;
    bool operator<(const Segment& o) const { return error < o.error; }
};

Segment evaluate_gk15(const std::function<double(double)>& f, double a, double b) {
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    const double f_center = f(center);
    double res_gauss = f_center * kWg[3];
    double res_kronrod = f_center * kWgk[7];
    double resabs = std::abs(f_center) * kWgk[7];
    double fval[7][2];
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kXgk[i];
        fval[i][0] = f(center - dx);
        fval[i][1] = f(center + dx);
        const double pair_sum = fval[i][0] + fval[i][1];
        res_kronrod += kWgk[i] * pair_sum;
        resabs += kWgk[i] * (std::abs(fval[i][0]) + std::abs(fval[i][1]));
        if (i % 2 == 1) res_gauss += kWg[(i - 1) / 2] * pair_sum;
    }
    const double mean = res_kronrod * 0.5;
    double resasc = kWgk[7] * std::abs(f_center - mean);
    for (int i = 0; i < 7; ++i)
        resasc += kWgk[i] * (std::abs(fval[i][0] - mean) + std::abs(fval[i][1] - mean));

    const double value = res_kronrod * half;
    resabs *= std::abs(half);
    resasc *= std::abs(half);
    double err = std::abs((res_kronrod - res_gauss) * half);
    if (resasc != 0.0 && err != 0.0)
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    const double eps = std::numeric_limits<double>::epsilon();
    const double tiny = std::numeric_limits<double>::min();
    if (resabs > tiny / (50.0 * eps)) err = std::max(err, 50.0 * eps * resabs);
    return {a, b, value, err};
}

}  // namespace

void validate(const QuadratureConfig& quad) {
    if (!(quad.rel_tol > 0.0) || !(quad.rel_tol < 1.0))
        throw DomainError("quadrature config: rel_tol must lie in (0, 1)");
    if (quad.max_evals < 1000)
        throw DomainError("quadrature config: max_evals must be >= 1000");
}

QuadratureConfig make_quadrature_config(QuadMethod method, double rel_tol, long max_evals,
                                        std::uint64_t seed) {
    QuadratureConfig q{method, rel_tol, max_evals, seed};
    validate(q);
    return q;
}

IntegralEstimate integrate_1d(const std::function<double(double)>& f, double a, double b,
                              double rel_tol, long max_evals) {
    if (!(rel_tol > 0.0) || !(rel_tol < 1.0))
        throw DomainError("integrate_1d: rel_tol must lie in (0, 1)");
    if (a == b) return {0.0, 0.0, 0};

    long evals = 15;
    Segment first = evaluate_gk15(f, a, b);
    double total_value = first.value;
    double total_error = first.error;
    std::priority_queue<Segment> active;
    active.push(first);

    const double eps = std::numeric_limits<double>::epsilon();
    for (;;) {
        if (total_error <= rel_tol * std::abs(total_value) || active.empty())
            return {total_value, total_error, evals};
        if (evals + 30 > max_evals)
            throw ConvergenceError("integrate_1d: evaluation budget exhausted at rel. error " +
                                       std::to_string(total_error /
                                                      std::max(std::abs(total_value), 1e-300)),
                                   total_value, total_error, evals);
        const Segment worst = active.top();
        active.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        const double scale = std::max({std::abs(worst.a), std::abs(worst.b), 1.0});
        if (!(worst.b - worst.a > 64.0 * eps * scale) || !(worst.a < mid && mid < worst.b))
            continue;  // roundoff-limited: freeze this segment's contribution
        const Segment left = evaluate_gk15(f, worst.a, mid);
        const Segment right = evaluate_gk15(f, mid, worst.b);
        evals += 30;
        total_value += left.value + right.value - worst.value;
        total_error += left.error + right.error - worst.error;
        active.push(left);
        active.push(right);
    }
}

IntegralEstimate integrate_2d(const std::function<double(double, double)>& f, double x1, double x2,
                              const std::function<double(double)>& ylo,
                              const std::function<double(double)>& yhi, double rel_tol,
                              long max_evals) {
    long inner_evals = 0;
    const double inner_tol = std::max(rel_tol * 0.1, 4.0 * std::numeric_limits<double>::epsilon());
    auto outer_integrand = [&](double x) {
        const double lo = ylo(x);
        const double hi = yhi(x);
        if (!(hi > lo)) return 0.0;
        const long remaining = max_evals - inner_evals;
        if (remaining < 1000)
            throw ConvergenceError("integrate_2d: evaluation budget exhausted in inner integrals",
                                   std::numeric_limits<double>::quiet_NaN(),
                                   std::numeric_limits<double>::infinity(), inner_evals);
        const IntegralEstimate inner = integrate_1d([&f, x](double y) { return f(x, y); }, lo, hi,
                                                    inner_tol, remaining);
        inner_evals += inner.evals;
        return inner.value;
    };
    const IntegralEstimate outer = integrate_1d(outer_integrand, x1, x2, rel_tol, max_evals);
    return {outer.value, outer.uncertainty, outer.evals + inner_evals};
}

namespace {

std::uint64_t splitmix64(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t counter) {
    const std::uint64_t keyed = seed ^ (0x9E3779B97F4A7C15ULL * (counter + 1));
    return static_cast<double>(splitmix64(keyed) >> 11) * 0x1.0p-53;
}

IntegralEstimate mc_integrate(const std::function<double(double, double)>& f, const Box& box,
                              long n_samples, std::uint64_t seed) {
    if (n_samples < 1) throw DomainError("mc_integrate: need at least one sample");
    if (!(box.x2 > box.x1) || !(box.y2 > box.y1))
        throw DomainError("mc_integrate: degenerate bounding box");
    const double area = (box.x2 - box.x1) * (box.y2 - box.y1);
    double sum = 0.0;
    double sum_sq = 0.0;
    for (long i = 0; i < n_samples; ++i) {
        const auto c = static_cast<std::uint64_t>(i);
        const double x = box.x1 + counter_uniform(seed, 2 * c) * (box.x2 - box.x1);
        const double y = box.y1 + counter_uniform(seed, 2 * c + 1) * (box.y2 - box.y1);
        const double v = f(x, y);
        sum += v;
        sum_sq += v * v;
    }
    const double n = static_cast<double>(n_samples);
    const double mean = sum / n;
    const double variance = std::max(0.0, sum_sq / n - mean * mean);
    return {area * mean, area * std::sqrt(variance / n), n_samples};
}

}  // namespace gwv
