#pragma once

#include <set>
#include <string>

#include "pwm_spectra/double_fourier.hpp"
#include "pwm_spectra/inverter.hpp"

namespace pwm_spectra {

struct SimulationSettings {
    int duration_periods = 1;
    double sample_rate_hz = 5'000'050.0;  // 100001 samples per 50 Hz period

    double duration(const InverterConfig& cfg) const { return duration_periods / cfg.f_network; }
};

/// A reproducible run: inverter operating point, truncation, simulation
/// grid and the artifacts to write. Defaults reproduce the 1 kHz / 400 V /
/// 230 V / 50 Hz example.
struct Scenario {
    InverterConfig inverter;
    TruncationSpec truncation;
    SimulationSettings simulation;
    int figure_points = 2000;  // time points per fundamental period in figure2 output
    std::set<std::string> outputs{"waveform", "spectrum", "bands", "components", "figure2"};

    bool wants(const std::string& artifact) const { return outputs.count(artifact) != 0; }
};

/// Parses the flat "key = value" scenario format. '#' starts a comment;
/// unknown keys, duplicate keys and malformed values are ConfigErrors.
///
///   u_dc_link, u_ab_co_rms, f_network, phi_network, f_carrier, phi_carrier
///   m_max, n_half_width (integer or "auto")
///   duration_periods, sample_rate_hz, figure_points
///   outputs (comma list of waveform, spectrum, bands, components, figure2)
Scenario parse_scenario(const std::string& text);

/// Reads and parses a scenario file; a missing file is a ConfigError naming the path.
Scenario load_scenario(const std::string& path);

/// Checks every field against its type's invariants, including the
/// simulation sample-rate floor and whole-sample period.
void validate(const Scenario& s);

}  // namespace pwm_spectra
