#include "conic/fitting.hpp"

#include "conic/errors.hpp"

#include <cmath>
#include <vector>

namespace conic {

PowerLawFit fit_power_law(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw DomainError("fit_power_law: size mismatch");
    std::vector<double> lx, ly;
    lx.reserve(x.size());
    ly.reserve(y.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        if (!(x[i] > 0.0) || !(y[i] > 0.0)) {
            throw DomainError("fit_power_law: samples must be positive");
        }
        lx.push_back(std::log(x[i]));
        ly.push_back(std::log(y[i]));
    }
    const std::size_t n = lx.size();
    if (n < 2) throw DomainError("fit_power_law: need at least two samples");
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
    }
    if (!(sxx > 0.0)) throw DomainError("fit_power_law: abscissae are identical");

    PowerLawFit fit;
    fit.exponent = sxy / sxx;
    fit.log_prefactor = my - fit.exponent * mx;
    fit.points = n;
    double ss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = ly[i] - (fit.log_prefactor + fit.exponent * lx[i]);
        ss += r * r;
    }
    fit.rms_log_residual = std::sqrt(ss / static_cast<double>(n));
    return fit;
}

double observed_order(std::span<const double> errors) {
    std::vector<double> level(errors.size());
    for (std::size_t i = 0; i < errors.size(); ++i) level[i] = std::ldexp(1.0, -static_cast<int>(i));
    // error ~ C h^p with h halving per level.
    return fit_power_law(level, errors).exponent;
}

} // namespace conic
