#pragma once

#include <complex>
#include <vector>

#include "pwm_spectra/inverter.hpp"

namespace pwm_spectra {

struct SpectrumBin {
    double frequency = 0.0;  // [Hz], exact bin center
    double rms = 0.0;        // [V]
    double phase = 0.0;      // [rad], cosine phase referred to t = 0
};

/// One-sided RMS spectrum with bin_width = sample_rate / N.
struct SpectrumBins {
    double bin_width = 0.0;
    std::vector<SpectrumBin> bins;
};

/// Rectangular-window DFT of the full record (no zero padding; any length).
/// A tone A cos(2 pi f t + phi) on a bin shows up as rms A / sqrt2, phase phi.
SpectrumBins dft_spectrum(const SampledWaveform& w);

/// sqrt of the summed bin power in [2 m f_c - f_c, 2 m f_c + f_c).
/// Throws ConfigError if the window reaches past Nyquist.
double band_rms_from_spectrum(const SpectrumBins& s, int m, const InverterConfig& cfg);

/// Analytic signal x + i H{x} by the frequency-domain method.
std::vector<std::complex<double>> analytic_signal(const SampledWaveform& w);

/// |analytic_signal| on the same time axis. Requires at least 64 samples.
SampledWaveform hilbert_envelope(const SampledWaveform& w);

double waveform_rms(const SampledWaveform& w);

/// Peak amplitude of the component in phase with cos(2 pi f t + phase),
/// i.e. (2/N) sum x_i cos(2 pi f t_i + phase).
double correlate_cosine(const SampledWaveform& w, double frequency, double phase);

}  // namespace pwm_spectra
