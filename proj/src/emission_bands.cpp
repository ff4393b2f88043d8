#include "pwm_spectra/emission_bands.hpp"

#include <cmath>
#include <string>

#include "pwm_spectra/bessel.hpp"

namespace pwm_spectra {

namespace {

void require_order(int value, const char* name) {
    if (value < 1) {
        throw ConfigError(std::string("emission band: ") + name + " must be >= 1");
    }
}

double scale(const InverterConfig& cfg) { return 2.0 * cfg.u_dc_link / kPi; }

double band_angle(const InverterConfig& cfg, int m, double t) {
    return 2.0 * m * (cfg.omega_carrier() * t + cfg.phi_carrier);
}

double network_angle(const InverterConfig& cfg, double t) { return cfg.omega_network() * t + cfg.phi_network; }

}  // namespace

double band_harmonic_coefficient(double modulation, int m, int k) {
    return bessel_j(2 * k - 1, m * kPi * modulation) / alternating_sign(m, k);
}

double psi(const InverterConfig& cfg, int m, int k_max, double t) {
    require_order(m, "m");
    require_order(k_max, "k_max");
    const double mod = modulation_index(cfg);
    const double beta = network_angle(cfg, t);
    double sum = 0.0;
    for (int k = 1; k <= k_max; ++k) {
        sum += band_harmonic_coefficient(mod, m, k) / m * std::cos((2.0 * k - 1.0) * beta);
    }
    // sqrt2 cos(alpha) * sqrt2 cos(nu beta) collapses to 2 cos(alpha) cos(nu beta).
    return 2.0 * std::cos(band_angle(cfg, m, t)) * sum;
}

double shd_reformulated(const InverterConfig& cfg, const TruncationSpec& trunc, double t) {
    return BandSeries(cfg, trunc)(t);
}

EmissionBand band_decomposition(const InverterConfig& cfg, int m, int k_max) {
    require_order(m, "m");
    require_order(k_max, "k_max");
    const double mod = modulation_index(cfg);

    EmissionBand band;
    band.m = m;
    band.center_frequency = 2.0 * m * cfg.f_carrier;
    band.center_phase = 2.0 * m * cfg.phi_carrier;
    band.harmonics.reserve(static_cast<std::size_t>(k_max));
    double sum_sq = 0.0;
    for (int k = 1; k <= k_max; ++k) {
        BandHarmonic h;
        h.k = k;
        h.nu = 2 * k - 1;
        h.signed_coefficient = band_harmonic_coefficient(mod, m, k);
        h.rms_contribution = scale(cfg) / m * std::fabs(h.signed_coefficient);
        sum_sq += h.signed_coefficient * h.signed_coefficient;
        band.harmonics.push_back(h);
    }
    band.rms = scale(cfg) / m * std::sqrt(sum_sq);
    return band;
}

std::vector<EmissionBand> emission_bands(const InverterConfig& cfg, const TruncationSpec& trunc) {
    validate(trunc);
    const double mod = modulation_index(cfg);
    std::vector<EmissionBand> bands;
    bands.reserve(static_cast<std::size_t>(trunc.m_max));
    for (int m = 1; m <= trunc.m_max; ++m) {
        bands.push_back(band_decomposition(cfg, m, half_width_for_band(trunc, mod, m)));
    }
    return bands;
}

double band_modulation_amplitude(const InverterConfig& cfg, int m, int k_max, double t) {
    return BandSeries(cfg, m, k_max).modulation_amplitude(t);
}

ComplexPhasorSample pseudo_phasor(const InverterConfig& cfg, int m, int k_max, double t) {
    const double amplitude = band_modulation_amplitude(cfg, m, k_max, t);
    return {t, std::polar(1.0, band_angle(cfg, m, t)) * amplitude};
}

ComplexPhasorSample rms_phasor(const InverterConfig& cfg, int m, int k_max, double t) {
    const double rms = band_decomposition(cfg, m, k_max).rms;
    return {t, std::polar(rms, band_angle(cfg, m, t))};
}

double harmonic_waveform(const InverterConfig& cfg, int m, int k, double t) {
    require_order(m, "m");
    require_order(k, "k");
    const double mod = modulation_index(cfg);
    const double nu = 2.0 * k - 1.0;
    return scale(cfg) / m * std::sqrt(2.0) * std::cos(band_angle(cfg, m, t)) * band_harmonic_coefficient(mod, m, k) *
           std::sqrt(2.0) * std::cos(nu * network_angle(cfg, t));
}

double harmonic_envelope(const InverterConfig& cfg, int m, int k, double t) {
    require_order(m, "m");
    require_order(k, "k");
    const double mod = modulation_index(cfg);
    const double nu = 2.0 * k - 1.0;
    return std::sqrt(2.0) * scale(cfg) / m * band_harmonic_coefficient(mod, m, k) * std::sqrt(2.0) *
           std::cos(nu * network_angle(cfg, t));
}

BandSeries::BandSeries(const InverterConfig& cfg, const TruncationSpec& trunc) : cfg_(cfg) {
    validate(trunc);
    const double mod = modulation_index(cfg);
    for (int m = 1; m <= trunc.m_max; ++m) {
        add_band(mod, m, half_width_for_band(trunc, mod, m));
    }
}

BandSeries::BandSeries(const InverterConfig& cfg, int m, int k_max) : cfg_(cfg) {
    require_order(m, "m");
    require_order(k_max, "k_max");
    add_band(modulation_index(cfg), m, k_max);
}

void BandSeries::add_band(double modulation, int m, int k_max) {
    Band band{m, {}};
    band.coefficients.reserve(static_cast<std::size_t>(k_max));
    for (int k = 1; k <= k_max; ++k) {
        band.coefficients.push_back(band_harmonic_coefficient(modulation, m, k));
    }
    bands_.push_back(std::move(band));
}

double BandSeries::operator()(double t) const {
    const double beta = network_angle(cfg_, t);
    double total = 0.0;
    for (const Band& band : bands_) {
        double sum = 0.0;
        for (std::size_t i = 0; i < band.coefficients.size(); ++i) {
            sum += band.coefficients[i] * std::cos((2.0 * static_cast<double>(i) + 1.0) * beta);
        }
        total += 2.0 * std::cos(band_angle(cfg_, band.m, t)) * sum / band.m;
    }
    return scale(cfg_) * total;
}

double BandSeries::modulation_amplitude(double t) const {
    const double beta = network_angle(cfg_, t);
    double total = 0.0;
    for (const Band& band : bands_) {
        double sum = 0.0;
        for (std::size_t i = 0; i < band.coefficients.size(); ++i) {
            sum += band.coefficients[i] * std::cos((2.0 * static_cast<double>(i) + 1.0) * beta);
        }
        total += 2.0 * scale(cfg_) / band.m * sum;
    }
    return total;
}

}  // namespace pwm_spectra
