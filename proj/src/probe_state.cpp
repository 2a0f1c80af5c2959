#include "phasemet/probe_state.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>
#include <string>

namespace phasemet {

namespace {

void check_alpha(double alpha) {
    if (!(alpha > 0.0)) throw std::invalid_argument("probe state: alpha must be positive");
    if (alpha < min_alpha)
        throw std::invalid_argument("probe state: alpha below minimum 1e-3");
}

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

// Mode-2 photon PMF of (|a>|0> + |0>|a>)/sqrt(2(1+e^{-a^2})):
//   p_m = (q_m + delta_{m0} (1 + 2 q_0)) / (2 (1 + e^{-a^2}))
// with q_m the Poisson weights of |a>.
IntegerDistribution ecs_mode2_pmf(double alpha) {
    const double a2 = alpha * alpha;
    const double q0 = std::exp(-a2);
    const double norm = 2.0 * (1.0 + q0);
    const IntegerDistribution pois = IntegerDistribution::poisson(a2);

    const long hi = pois.max_value();
    std::vector<double> p(static_cast<std::size_t>(hi) + 1, 0.0);
    for (long m = pois.min_value(); m <= hi; ++m)
        p[static_cast<std::size_t>(m)] = pois.prob_at(m) / norm;
    p[0] += (1.0 + 2.0 * q0) / norm;
    return IntegerDistribution(0, std::move(p), pois.truncation_mass() / norm);
}

// Total photon PMF of the same state: p_s = (q_s + delta_{s0} q_0) / (1 + e^{-a^2}).
IntegerDistribution ecs_total_pmf(double alpha) {
    const double a2 = alpha * alpha;
    const double q0 = std::exp(-a2);
    const double norm = 1.0 + q0;
    const IntegerDistribution pois = IntegerDistribution::poisson(a2);

    const long hi = pois.max_value();
    std::vector<double> p(static_cast<std::size_t>(hi) + 1, 0.0);
    for (long m = pois.min_value(); m <= hi; ++m)
        p[static_cast<std::size_t>(m)] = pois.prob_at(m) / norm;
    p[0] += q0 / norm;
    return IntegerDistribution(0, std::move(p), pois.truncation_mass() / norm);
}

}  // namespace

ProbeState ProbeState::noon(int n) {
    if (n < 1) throw std::invalid_argument("noon: n must be >= 1");
    ProbeState s;
    s.kind_ = Kind::Noon;
    s.n_ = n;
    return s;
}

ProbeState ProbeState::ecs(double alpha) {
    check_alpha(alpha);
    ProbeState s;
    s.kind_ = Kind::Ecs;
    s.alpha_ = alpha;
    return s;
}

ProbeState ProbeState::coherent_pair(double alpha) {
    check_alpha(alpha);
    ProbeState s;
    s.kind_ = Kind::CoherentPair;
    s.alpha_ = alpha;
    return s;
}

ProbeState ProbeState::single_coherent(double alpha) {
    check_alpha(alpha);
    ProbeState s;
    s.kind_ = Kind::SingleCoherent;
    s.alpha_ = alpha;
    return s;
}

ProbeState ProbeState::multicomponent(std::vector<Part> parts) {
    if (parts.empty()) throw std::invalid_argument("multi: parts must be nonempty");
    for (const Part& part : parts) {
        if (part.copies < 1) throw std::invalid_argument("multi: copies must be >= 1");
        if (part.state.kind() == Kind::Multicomponent)
            throw std::invalid_argument("multi: nesting is not allowed");
    }
    ProbeState s;
    s.kind_ = Kind::Multicomponent;
    s.parts_ = std::move(parts);
    return s;
}

int ProbeState::noon_n() const {
    if (kind_ != Kind::Noon) throw std::logic_error("noon_n: not a noon state");
    return n_;
}

double ProbeState::alpha() const {
    if (kind_ != Kind::Ecs && kind_ != Kind::CoherentPair && kind_ != Kind::SingleCoherent)
        throw std::logic_error("alpha: state has no amplitude parameter");
    return alpha_;
}

const std::vector<ProbeState::Part>& ProbeState::parts() const {
    if (kind_ != Kind::Multicomponent) throw std::logic_error("parts: not a multicomponent");
    return parts_;
}

IntegerDistribution generator_distribution(const ProbeState& state, Generator generator,
                                           int power, long eigenvalue_ceiling) {
    IntegerDistribution base = [&]() -> IntegerDistribution {
        switch (state.kind()) {
            case ProbeState::Kind::Noon: {
                const int n = state.noon_n();
                if (n > eigenvalue_ceiling)
                    throw std::invalid_argument("noon: n exceeds eigenvalue ceiling");
                if (generator == Generator::NTotal)
                    return IntegerDistribution::point_mass(n);
                std::vector<double> p(static_cast<std::size_t>(n) + 1, 0.0);
                p.front() = 0.5;
                p.back() = 0.5;
                return IntegerDistribution(0, std::move(p), 0.0);
            }
            case ProbeState::Kind::Ecs: {
                const double a2 = state.alpha() * state.alpha();
                if (a2 + 11.0 * std::sqrt(a2) + 50.0 > static_cast<double>(eigenvalue_ceiling))
                    throw std::invalid_argument("ecs: support exceeds eigenvalue ceiling");
                return generator == Generator::N2 ? ecs_mode2_pmf(state.alpha())
                                                  : ecs_total_pmf(state.alpha());
            }
            case ProbeState::Kind::CoherentPair: {
                const double a2 = state.alpha() * state.alpha();
                const double lambda = generator == Generator::N2 ? a2 : 2.0 * a2;
                if (lambda + 11.0 * std::sqrt(lambda) + 50.0 >
                    static_cast<double>(eigenvalue_ceiling))
                    throw std::invalid_argument("cohpair: support exceeds eigenvalue ceiling");
                return IntegerDistribution::poisson(lambda);
            }
            case ProbeState::Kind::SingleCoherent: {
                const double lambda = state.alpha() * state.alpha();
                if (lambda + 11.0 * std::sqrt(lambda) + 50.0 >
                    static_cast<double>(eigenvalue_ceiling))
                    throw std::invalid_argument("single: support exceeds eigenvalue ceiling");
                return IntegerDistribution::poisson(lambda);
            }
            case ProbeState::Kind::Multicomponent: {
                bool first = true;
                IntegerDistribution acc = IntegerDistribution::point_mass(0);
                for (const auto& part : state.parts()) {
                    const IntegerDistribution d =
                        generator_distribution(part.state, generator, 1, eigenvalue_ceiling);
                    for (int c = 0; c < part.copies; ++c) {
                        acc = first ? d : convolve(acc, d, eigenvalue_ceiling);
                        first = false;
                    }
                }
                return acc;
            }
        }
        throw std::logic_error("generator_distribution: unknown state kind");
    }();
    if (power != 1) base = power_relabel(base, power, eigenvalue_ceiling);
    return base;
}

double mean_total_photons(const ProbeState& state) {
    switch (state.kind()) {
        case ProbeState::Kind::Noon:
            return static_cast<double>(state.noon_n());
        case ProbeState::Kind::Ecs: {
            const double a2 = state.alpha() * state.alpha();
            return a2 / (1.0 + std::exp(-a2));
        }
        case ProbeState::Kind::CoherentPair:
            return 2.0 * state.alpha() * state.alpha();
        case ProbeState::Kind::SingleCoherent:
            return state.alpha() * state.alpha();
        case ProbeState::Kind::Multicomponent: {
            double total = 0.0;
            for (const auto& part : state.parts())
                total += static_cast<double>(part.copies) * mean_total_photons(part.state);
            return total;
        }
    }
    throw std::logic_error("mean_total_photons: unknown state kind");
}

double generator_variance(const ProbeState& state, Generator generator) {
    if (state.kind() == ProbeState::Kind::Multicomponent) {
        double total = 0.0;
        for (const auto& part : state.parts())
            total += static_cast<double>(part.copies) * generator_variance(part.state, generator);
        return total;
    }
    return generator_distribution(state, generator).variance();
}

namespace {

double parse_value(std::string_view text) {
    const std::string s(text);
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(s, &used);
    } catch (const std::exception&) {
        throw std::invalid_argument("probe state: bad number '" + s + "'");
    }
    if (used != s.size()) throw std::invalid_argument("probe state: bad number '" + s + "'");
    return v;
}

std::string_view strip(std::string_view s) {
    while (!s.empty() && s.front() == ' ') s.remove_prefix(1);
    while (!s.empty() && s.back() == ' ') s.remove_suffix(1);
    return s;
}

double single_param(std::string_view body, std::string_view key, std::string_view what) {
    const std::string expect = std::string(key) + "=";
    const auto b = strip(body);
    if (b.substr(0, expect.size()) != expect)
        throw std::invalid_argument(std::string(what) + ": expected '" + expect + "<value>'");
    return parse_value(b.substr(expect.size()));
}

}  // namespace

ProbeState parse_probe_state(std::string_view spec) {
    const auto s = strip(spec);
    const auto colon = s.find(':');
    if (colon == std::string_view::npos)
        throw std::invalid_argument("probe state: missing ':' in '" + std::string(s) + "'");
    const auto tag = s.substr(0, colon);
    const auto body = s.substr(colon + 1);

    if (tag == "noon") {
        const double n = single_param(body, "n", "noon");
        if (n != std::floor(n)) throw std::invalid_argument("noon: n must be an integer");
        return ProbeState::noon(static_cast<int>(n));
    }
    if (tag == "ecs") return ProbeState::ecs(single_param(body, "alpha", "ecs"));
    if (tag == "cohpair") return ProbeState::coherent_pair(single_param(body, "alpha", "cohpair"));
    if (tag == "single") return ProbeState::single_coherent(single_param(body, "alpha", "single"));
    if (tag == "multi") {
        auto b = strip(body);
        if (b.size() < 2 || b.front() != '[' || b.back() != ']')
            throw std::invalid_argument("multi: expected bracketed part list");
        b = b.substr(1, b.size() - 2);
        std::vector<ProbeState::Part> parts;
        while (!b.empty()) {
            auto comma = b.find(',');
            auto item = strip(comma == std::string_view::npos ? b : b.substr(0, comma));
            b = comma == std::string_view::npos ? std::string_view{} : b.substr(comma + 1);
            if (item.empty()) throw std::invalid_argument("multi: empty part");
            int copies = 1;
            const auto x = item.rfind(" x");
            if (x != std::string_view::npos) {
                const double c = parse_value(item.substr(x + 2));
                if (c != std::floor(c) || c < 1)
                    throw std::invalid_argument("multi: copies must be a positive integer");
                copies = static_cast<int>(c);
                item = strip(item.substr(0, x));
            }
            parts.push_back({parse_probe_state(item), copies});
        }
        return ProbeState::multicomponent(std::move(parts));
    }
    throw std::invalid_argument("probe state: unknown tag '" + std::string(tag) + "'");
}

std::string to_spec_string(const ProbeState& state) {
    switch (state.kind()) {
        case ProbeState::Kind::Noon:
            return "noon:n=" + std::to_string(state.noon_n());
        case ProbeState::Kind::Ecs:
            return "ecs:alpha=" + format_number(state.alpha());
        case ProbeState::Kind::CoherentPair:
            return "cohpair:alpha=" + format_number(state.alpha());
        case ProbeState::Kind::SingleCoherent:
            return "single:alpha=" + format_number(state.alpha());
        case ProbeState::Kind::Multicomponent: {
            std::string out = "multi:[";
            bool first = true;
            for (const auto& part : state.parts()) {
                if (!first) out += ",";
                first = false;
                out += to_spec_string(part.state) + " x" + std::to_string(part.copies);
            }
            return out + "]";
        }
    }
    throw std::logic_error("to_spec_string: unknown state kind");
}

}  // namespace phasemet
