#include "phasemet/infotheory.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "phasemet/angles.hpp"

namespace phasemet {

double shannon_entropy(const IntegerDistribution& dist) {
    double h = 0.0, comp = 0.0;
    for (double p : dist.probs()) {
        if (p <= 0.0) continue;
        const double x = -p * std::log(p);
        const double y = x - comp;
        const double t = h + y;
        comp = (t - h) - y;
        h = t;
    }
    return h;
}

double max_entropy_bound(double variance) {
    if (!(variance >= 0.0)) throw std::invalid_argument("max_entropy_bound: variance < 0");
    return 0.5 * std::log(two_pi * std::numbers::e * (variance + 1.0 / 12.0));
}

JointHistogram::JointHistogram(int bins_phi_, int bins_est_)
    : bins_phi(bins_phi_), bins_est(bins_est_) {
    if (bins_phi < 1 || bins_est < 1)
        throw std::invalid_argument("JointHistogram: bins must be >= 1");
    counts.assign(static_cast<std::size_t>(bins_phi) * static_cast<std::size_t>(bins_est), 0);
}

void JointHistogram::add(int phi_bin, int est_bin) {
    if (phi_bin < 0 || phi_bin >= bins_phi || est_bin < 0 || est_bin >= bins_est)
        throw std::out_of_range("JointHistogram::add: bin out of range");
    ++counts[static_cast<std::size_t>(phi_bin) * static_cast<std::size_t>(bins_est) +
             static_cast<std::size_t>(est_bin)];
    ++total;
}

std::uint64_t JointHistogram::at(int phi_bin, int est_bin) const {
    return counts[static_cast<std::size_t>(phi_bin) * static_cast<std::size_t>(bins_est) +
                  static_cast<std::size_t>(est_bin)];
}

double mutual_information(const JointHistogram& hist) {
    if (hist.total < 1) throw std::invalid_argument("mutual_information: empty histogram");
    if (hist.bins_phi <= 1 || hist.bins_est <= 1) return 0.0;

    std::vector<double> row(static_cast<std::size_t>(hist.bins_phi), 0.0);
    std::vector<double> col(static_cast<std::size_t>(hist.bins_est), 0.0);
    const double total = static_cast<double>(hist.total);
    for (int i = 0; i < hist.bins_phi; ++i)
        for (int j = 0; j < hist.bins_est; ++j) {
            const double c = static_cast<double>(hist.at(i, j));
            row[static_cast<std::size_t>(i)] += c;
            col[static_cast<std::size_t>(j)] += c;
        }

    double info = 0.0;
    for (int i = 0; i < hist.bins_phi; ++i) {
        if (row[static_cast<std::size_t>(i)] == 0.0) continue;
        for (int j = 0; j < hist.bins_est; ++j) {
            const double c = static_cast<double>(hist.at(i, j));
            if (c == 0.0) continue;
            const double joint = c / total;
            const double product =
                (row[static_cast<std::size_t>(i)] / total) * (col[static_cast<std::size_t>(j)] / total);
            info += joint * std::log(joint / product);
        }
    }
    return std::max(info, 0.0);
}

}  // namespace phasemet
