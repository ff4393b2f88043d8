#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pwm_spectra/double_fourier.hpp"
#include "pwm_spectra/emission_bands.hpp"
#include "pwm_spectra/signal_analysis.hpp"

namespace pwm_spectra {

// Text output is locale-independent: '.' decimal point, ',' delimiter,
// header row, '\n' line endings, 17 significant digits.

std::string format_number(double value);

/// m,n,frequency_hz,amplitude_v_peak,rms_v,phase_rad
void write_components_csv(std::ostream& os, const std::vector<SpectralComponent>& table);
std::vector<SpectralComponent> read_components_csv(std::istream& is);

std::string components_to_json(const std::vector<SpectralComponent>& table);
std::vector<SpectralComponent> components_from_json(const std::string& text);

/// [{ m, center_frequency_hz, rms_v, harmonics: [{ k, nu, signed_coefficient, rms_contribution_v }] }]
std::string bands_to_json(const std::vector<EmissionBand>& bands);
std::vector<EmissionBand> bands_from_json(const std::string& text);

/// frequency_hz,rms_v,phase_rad
void write_spectrum_csv(std::ostream& os, const SpectrumBins& s);

/// time_s,u_ab_v
void write_waveform_csv(std::ostream& os, const SampledWaveform& w);

}  // namespace pwm_spectra
