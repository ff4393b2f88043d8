#include "pwm_spectra/double_fourier.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pwm_spectra/bessel.hpp"

namespace pwm_spectra {

void validate(const TruncationSpec& trunc) {
    if (trunc.m_max < 1) {
        throw ConfigError("truncation: m_max must be >= 1, got " + std::to_string(trunc.m_max));
    }
    if (trunc.n_half_width && *trunc.n_half_width < 1) {
        throw ConfigError("truncation: n_half_width must be >= 1");
    }
}

int adaptive_half_width(double modulation, int m) {
    return static_cast<int>(std::ceil((m * kPi * modulation + 40.0) / 2.0));
}

int half_width_for_band(const TruncationSpec& trunc, double modulation, int m) {
    return trunc.n_half_width ? *trunc.n_half_width : adaptive_half_width(modulation, m);
}

double SpectralComponent::rms() const { return amplitude / std::sqrt(2.0); }

int alternating_sign(int m, int n) {
    const long e = static_cast<long>(m) + n - 1;
    return (e % 2 == 0) ? 1 : -1;
}

double component_coefficient(const InverterConfig& cfg, int m, int n) {
    const double mod = modulation_index(cfg);
    const double scale = 2.0 * cfg.u_dc_link / kPi;
    return scale * bessel_j(2 * n - 1, m * kPi * mod) / (m * alternating_sign(m, n));
}

double wrap_phase(double phase) {
    double r = std::remainder(phase, kTwoPi);  // [-pi, pi]
    if (r <= -kPi) {
        r += kTwoPi;
    }
    return r;
}

double fundamental_waveform(const InverterConfig& cfg, double t) {
    const double mod = modulation_index(cfg);
    return cfg.u_dc_link * mod * std::cos(cfg.omega_network() * t + cfg.phi_network);
}

std::vector<SpectralComponent> component_table(const InverterConfig& cfg, const TruncationSpec& trunc) {
    validate(trunc);
    const double mod = modulation_index(cfg);
    const double prune = 1e-14 * cfg.u_dc_link;

    std::vector<SpectralComponent> table;
    for (int m = 1; m <= trunc.m_max; ++m) {
        const int width = half_width_for_band(trunc, mod, m);
        for (int n = -width + 1; n <= width; ++n) {
            const double c = component_coefficient(cfg, m, n);
            if (std::fabs(c) < prune || c == 0.0) {
                continue;
            }
            SpectralComponent sc;
            sc.m = m;
            sc.n = n;
            sc.frequency = 2.0 * m * cfg.f_carrier + (2.0 * n - 1.0) * cfg.f_network;
            sc.amplitude = std::fabs(c);
            double phase = 2.0 * m * cfg.phi_carrier + (2.0 * n - 1.0) * cfg.phi_network;
            if (c < 0.0) {
                phase += kPi;
            }
            if (sc.frequency < 0.0) {
                sc.frequency = -sc.frequency;
                phase = -phase;
                sc.folded = true;
            }
            sc.phase = wrap_phase(phase);
            table.push_back(sc);
        }
    }
    std::stable_sort(table.begin(), table.end(), [](const SpectralComponent& a, const SpectralComponent& b) {
        if (a.frequency != b.frequency) {
            return a.frequency < b.frequency;
        }
        if (a.m != b.m) {
            return a.m < b.m;
        }
        return a.n < b.n;
    });
    return table;
}

double band_sum_original(const InverterConfig& cfg, int m, int half_width, double t) {
    const double mod = modulation_index(cfg);
    const double carrier = 2.0 * m * (cfg.omega_carrier() * t + cfg.phi_carrier);
    const double network = cfg.omega_network() * t + cfg.phi_network;
    double sum = 0.0;
    for (int n = -half_width + 1; n <= half_width; ++n) {
        const double sideband = 2.0 * n - 1.0;
        const double j = bessel_j(2 * n - 1, m * kPi * mod);
        sum += j / (m * alternating_sign(m, n)) * std::cos(carrier + sideband * network);
    }
    return sum;
}

OriginalSeries::OriginalSeries(const InverterConfig& cfg, const TruncationSpec& trunc) : cfg_(cfg) {
    validate(trunc);
    const double mod = modulation_index(cfg);
    for (int m = 1; m <= trunc.m_max; ++m) {
        const int width = half_width_for_band(trunc, mod, m);
        for (int n = -width + 1; n <= width; ++n) {
            terms_.push_back({m, n, component_coefficient(cfg, m, n)});
        }
    }
}

double OriginalSeries::operator()(double t) const {
    const double carrier = cfg_.omega_carrier() * t + cfg_.phi_carrier;
    const double network = cfg_.omega_network() * t + cfg_.phi_network;
    double sum = 0.0;
    for (const Term& term : terms_) {
        sum += term.coefficient * std::cos(2.0 * term.m * carrier + (2.0 * term.n - 1.0) * network);
    }
    return sum;
}

double shd_original(const InverterConfig& cfg, const TruncationSpec& trunc, double t) {
    return OriginalSeries(cfg, trunc)(t);
}

SampledWaveform synthesize_total(const InverterConfig& cfg, const TruncationSpec& trunc,
                                 const std::vector<double>& times) {
    const OriginalSeries shd(cfg, trunc);
    std::vector<double> values(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        values[i] = fundamental_waveform(cfg, times[i]) + shd(times[i]);
    }
    return make_waveform(times, std::move(values));
}

}  // namespace pwm_spectra
