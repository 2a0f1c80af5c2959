#pragma once

#include <cmath>
#include <numbers>
#include <span>

namespace phasemet {

inline constexpr double two_pi = 2.0 * std::numbers::pi;

/// Representative of x in (center - period/2, center + period/2].
inline double wrap_into(double x, double center, double period = two_pi) {
    double r = std::remainder(x - center, period);
    if (r <= -0.5 * period) r += period;
    return center + r;
}

/// (-pi, pi]
inline double wrap_symmetric(double x) { return wrap_into(x, 0.0); }

/// [0, 2*pi)
inline double wrap_positive(double x) {
    double r = std::fmod(x, two_pi);
    if (r < 0.0) r += two_pi;
    if (r >= two_pi) r = 0.0;
    return r;
}

double circular_mean(std::span<const double> angles);
double circular_variance(std::span<const double> angles);

/// Kahan-compensated sum.
double stable_sum(std::span<const double> xs);

}  // namespace phasemet
