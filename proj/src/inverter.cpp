#include "pwm_spectra/inverter.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace pwm_spectra {

namespace {

constexpr double kEdgeResolution = 1e-12;  // [s]
constexpr int kPiecesPerHalfCycle = 4;

bool is_whole(double value, double tol) {
    return std::fabs(value - std::round(value)) <= tol * std::max(1.0, std::fabs(value));
}

}  // namespace

void validate(const InverterConfig& cfg) {
    const auto finite = [](double v) { return std::isfinite(v); };
    if (!finite(cfg.u_dc_link) || !finite(cfg.u_ab_co_rms) || !finite(cfg.f_network) ||
        !finite(cfg.phi_network) || !finite(cfg.f_carrier) || !finite(cfg.phi_carrier)) {
        throw ConfigError("inverter: all parameters must be finite");
    }
    if (cfg.u_dc_link <= 0.0) {
        throw ConfigError("inverter: u_dc_link must be positive");
    }
    if (cfg.u_ab_co_rms < 0.0) {
        throw ConfigError("inverter: u_ab_co_rms must be non-negative");
    }
    if (cfg.f_network <= 0.0) {
        throw ConfigError("inverter: f_network must be positive");
    }
    if (cfg.f_carrier <= cfg.f_network) {
        throw ConfigError("inverter: f_carrier must exceed f_network");
    }
    const double m = std::sqrt(2.0) * cfg.u_ab_co_rms / cfg.u_dc_link;
    if (m > 1.0) {
        throw ConfigError("inverter: overmodulation, M = " + std::to_string(m) + " > 1");
    }
}

double modulation_index(const InverterConfig& cfg) {
    validate(cfg);
    return std::sqrt(2.0) * cfg.u_ab_co_rms / cfg.u_dc_link;
}

SampledWaveform make_waveform(const std::vector<double>& times, std::vector<double> values) {
    if (times.size() != values.size()) {
        throw ConfigError("waveform: times and values differ in length");
    }
    if (times.size() < 2) {
        throw ConfigError("waveform: need at least two samples");
    }
    const double span = times.back() - times.front();
    const double dt = span / static_cast<double>(times.size() - 1);
    if (!(dt > 0.0)) {
        throw ConfigError("waveform: times must be increasing");
    }
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double expected = times.front() + dt * static_cast<double>(i);
        if (std::fabs(times[i] - expected) > 1e-9 * dt + 1e-15 * std::fabs(expected)) {
            throw ConfigError("waveform: non-uniform sampling at index " + std::to_string(i));
        }
    }
    return SampledWaveform{1.0 / dt, times.front(), std::move(values)};
}

std::vector<double> time_grid(double start, double sample_rate, std::size_t count) {
    std::vector<double> t(count);
    for (std::size_t i = 0; i < count; ++i) {
        t[i] = start + static_cast<double>(i) / sample_rate;
    }
    return t;
}

double triangular_carrier(double theta) {
    double r = std::fmod(theta, kTwoPi);
    if (r < 0.0) {
        r += kTwoPi;
    }
    const double dist = std::min(r, kTwoPi - r);  // distance to nearest peak, in [0, pi]
    return 1.0 - 2.0 * dist / kPi;
}

LegEdges leg_switching_edges(const InverterConfig& cfg, int leg_sign, double duration) {
    const double m = modulation_index(cfg);
    const double wn = cfg.omega_network();
    const double wc = cfg.omega_carrier();
    const double sign = leg_sign >= 0 ? 1.0 : -1.0;

    const auto comparator = [&](double t) {
        return sign * m * std::cos(wn * t + cfg.phi_network) - triangular_carrier(wc * t + cfg.phi_carrier);
    };
    const auto high = [&](double t) { return comparator(t) > 0.0; };

    LegEdges out;
    // Carrier extremes sit at theta = j*pi; the carrier is linear between them.
    const double half = kPi / wc;
    const long first = static_cast<long>(std::floor(cfg.phi_carrier / kPi));
    const double t_first = (static_cast<double>(first) * kPi - cfg.phi_carrier) / wc;
    std::vector<double> knots;
    knots.push_back(0.0);
    for (long j = 1;; ++j) {
        const double tj = t_first + static_cast<double>(j) * half;
        if (tj >= duration) {
            break;
        }
        if (tj <= 0.0) {
            continue;
        }
        const double prev = knots.back();
        for (int p = 1; p < kPiecesPerHalfCycle; ++p) {
            const double tp = prev + (tj - prev) * p / kPiecesPerHalfCycle;
            knots.push_back(tp);
        }
        knots.push_back(tj);
    }
    {
        const double prev = knots.back();
        for (int p = 1; p <= kPiecesPerHalfCycle; ++p) {
            knots.push_back(prev + (duration - prev) * p / kPiecesPerHalfCycle);
        }
    }

    bool state = high(0.0);
    if (comparator(0.0) == 0.0) {
        state = high(0.5 * (knots[0] + knots[1]));
    }
    out.initial_high = state;
    bool left = state;
    for (std::size_t i = 0; i + 1 < knots.size(); ++i) {
        const double a = knots[i];
        const double b = knots[i + 1];
        const bool right = high(b);
        if (right != left) {
            double lo = a;
            double hi = b;
            while (hi - lo > kEdgeResolution) {
                const double mid = 0.5 * (lo + hi);
                if (high(mid) == left) {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            const double te = 0.5 * (lo + hi);
            if (te < duration) {
                out.edges.push_back({te, right});
            }
        }
        left = right;
    }
    return out;
}

double min_sample_rate(const InverterConfig& cfg) { return 50.0 * cfg.f_carrier; }

SampledWaveform simulate_hbridge(const InverterConfig& cfg, double duration, double sample_rate) {
    validate(cfg);
    if (!(duration > 0.0) || !is_whole(duration * cfg.f_network, 1e-9)) {
        throw ConfigError("simulate: duration must be a positive whole number of fundamental periods");
    }
    if (!(sample_rate >= min_sample_rate(cfg))) {
        throw ConfigError("simulate: sample rate " + std::to_string(sample_rate) + " Hz below floor " +
                          std::to_string(min_sample_rate(cfg)) + " Hz (50 x f_carrier)");
    }
    const double count_exact = duration * sample_rate;
    if (!is_whole(count_exact, 1e-9)) {
        throw ConfigError("simulate: duration * sample_rate must be a whole number of samples");
    }
    const auto count = static_cast<std::size_t>(std::llround(count_exact));

    const double half_dc = 0.5 * cfg.u_dc_link;
    SampledWaveform w{sample_rate, 0.0, std::vector<double>(count)};
    for (int leg : {+1, -1}) {
        const LegEdges legs = leg_switching_edges(cfg, leg, duration);
        bool state = legs.initial_high;
        std::size_t next = 0;
        for (std::size_t i = 0; i < count; ++i) {
            const double t = w.time_at(i);
            while (next < legs.edges.size() && legs.edges[next].time <= t) {
                state = legs.edges[next].rising;
                ++next;
            }
            const double u = state ? half_dc : -half_dc;
            w.samples[i] += leg > 0 ? u : -u;
        }
    }
    return w;
}

}  // namespace pwm_spectra
