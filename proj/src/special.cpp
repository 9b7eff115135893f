#include "gwv/special.hpp"

#include <cmath>
#include <numbers>

#include "gwv/errors.hpp"
#include "gwv/quadrature.hpp"

namespace gwv {

double beta_function(double a, double b) {
    if (!(a > 0.0) || !(b > 0.0)) throw DomainError("beta_function: arguments must be > 0");
    return std::exp(std::lgamma(a) + std::lgamma(b) - std::lgamma(a + b));
}

double beta_by_quadrature(double m, double n, double rel_tol) {
    if (!(m > 0.0) || !(n > 0.0)) throw DomainError("beta_by_quadrature: arguments must be > 0");
    const double ps = 2.0 * m - 1.0;
    const double pc = 2.0 * n - 1.0;
    auto integrand = [ps, pc](double th) {
        return std::pow(std::sin(th), ps) * std::pow(std::cos(th), pc);
    };
    return 2.0 * integrate_1d(integrand, 0.0, std::numbers::pi / 2.0, rel_tol, 4000000).value;
}

double arctan_profile_integral(double rel_tol) {
    auto integrand = [](double s) {
        const double s2 = s * s;
        return std::atan(std::sqrt(std::max(0.0, 1.0 / (s2 * s2) - 1.0)));
    };
    return integrate_1d(integrand, 0.0, 1.0, rel_tol, 4000000).value;
}

double fit_loglog_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size() || x.size() < 2)
        throw DomainError("fit_loglog_slope: need two samples of equal length");
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0))
            throw DomainError("fit_loglog_slope: samples must be positive");
        const double lx = std::log(x[i]);
        const double ly = std::log(y[i]);
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double n = static_cast<double>(x.size());
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) throw DomainError("fit_loglog_slope: degenerate abscissae");
    return (n * sxy - sx * sy) / denom;
}

}  // namespace gwv
