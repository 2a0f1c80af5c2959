#include "phasemet/angles.hpp"

namespace phasemet {

double circular_mean(std::span<const double> angles) {
    double c = 0.0, s = 0.0;
    for (double a : angles) {
        c += std::cos(a);
        s += std::sin(a);
    }
    return std::atan2(s, c);
}

double circular_variance(std::span<const double> angles) {
    if (angles.empty()) return 0.0;
    double c = 0.0, s = 0.0;
    for (double a : angles) {
        c += std::cos(a);
        s += std::sin(a);
    }
    const double n = static_cast<double>(angles.size());
    const double r = std::sqrt(c * c + s * s) / n;
    return 1.0 - r;
}

double stable_sum(std::span<const double> xs) {
    double sum = 0.0, comp = 0.0;
    for (double x : xs) {
        const double y = x - comp;
        const double t = sum + y;
        comp = (t - sum) - y;
        sum = t;
    }
    return sum;
}

}  // namespace phasemet
