#pragma once

#include <complex>
#include <vector>

#include "pwm_spectra/double_fourier.hpp"
#include "pwm_spectra/inverter.hpp"

namespace pwm_spectra {

// Emission band m is the sideband cluster around 2 m f_c. Each band is a
// single carrier 2 m (w_c t + phi_c), amplitude-modulated by a real signal
// that contains only odd harmonics nu = 2k - 1 of the network frequency:
//
//   band_m(t) = (2 U_DC / pi) (1/m) sqrt2 cos(2m[w_c t + phi_c])
//               * sum_k  J_{2k-1}(m pi M) / (-1)^(m+k-1) * sqrt2 cos(nu [w_N t + phi_N])

/// One modulation harmonic nu = 2k - 1 of an emission band.
struct BandHarmonic {
    int k = 0;
    int nu = 0;
    double signed_coefficient = 0.0;  // J_{2k-1}(m pi M) / (-1)^(m+k-1)
    double rms_contribution = 0.0;    // (2 U_DC / pi) (1/m) |signed_coefficient| [V]
};

struct EmissionBand {
    int m = 0;
    double center_frequency = 0.0;  // 2 m f_c [Hz]
    double center_phase = 0.0;      // 2 m phi_c [rad], unwrapped
    double rms = 0.0;               // [V]
    std::vector<BandHarmonic> harmonics;
};

struct ComplexPhasorSample {
    double time = 0.0;
    std::complex<double> value;
};

/// J_{2k-1}(m pi M) / (-1)^(m+k-1).
double band_harmonic_coefficient(double modulation, int m, int k);

/// Psi(m, t) in the band form, k = 1..k_max (dimensionless).
double psi(const InverterConfig& cfg, int m, int k_max, double t);

/// (2 U_DC / pi) * sum over m of Psi(m, t), with per-band half widths from trunc [V].
double shd_reformulated(const InverterConfig& cfg, const TruncationSpec& trunc, double t);

/// RMS and modulation harmonics of band m truncated at k_max.
EmissionBand band_decomposition(const InverterConfig& cfg, int m, int k_max);

/// Band list m = 1..m_max, each with its own half width from trunc.
std::vector<EmissionBand> emission_bands(const InverterConfig& cfg, const TruncationSpec& trunc);

/// Real amplitude-modulation factor of band m in volts:
/// (4 U_DC / (m pi)) * sum_k signed_coefficient_k * cos(nu [w_N t + phi_N]).
double band_modulation_amplitude(const InverterConfig& cfg, int m, int k_max, double t);

/// Analytic signal of band m: modulation amplitude times exp(i 2m [w_c t + phi_c]).
ComplexPhasorSample pseudo_phasor(const InverterConfig& cfg, int m, int k_max, double t);

/// Constant-magnitude rotating phasor: band RMS times exp(i 2m [w_c t + phi_c]).
ComplexPhasorSample rms_phasor(const InverterConfig& cfg, int m, int k_max, double t);

/// Single modulation harmonic nu = 2k - 1 of band m [V].
double harmonic_waveform(const InverterConfig& cfg, int m, int k, double t);

/// Signed envelope of harmonic_waveform: the same expression with the band
/// carrier removed. Peak magnitude (4 U_DC / (m pi)) |J_{2k-1}(m pi M)|.
double harmonic_envelope(const InverterConfig& cfg, int m, int k, double t);

/// Band-form synthesizer with coefficients evaluated once.
class BandSeries {
public:
    BandSeries(const InverterConfig& cfg, const TruncationSpec& trunc);
    /// Only band m, truncated at k_max.
    BandSeries(const InverterConfig& cfg, int m, int k_max);

    /// Supraharmonic voltage at t [V].
    double operator()(double t) const;

    /// Summed modulation amplitude of the bands held; meaningful for a
    /// single-band series [V].
    double modulation_amplitude(double t) const;

private:
    struct Band {
        int m;
        std::vector<double> coefficients;  // signed, index k - 1
    };
    void add_band(double modulation, int m, int k_max);

    InverterConfig cfg_;
    std::vector<Band> bands_;
};

}  // namespace pwm_spectra
