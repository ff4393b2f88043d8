#pragma once

#include <optional>
#include <vector>

#include "pwm_spectra/inverter.hpp"

namespace pwm_spectra {

/// Truncation of the carrier-group / sideband double sum.
///
/// n runs over [-n_half_width + 1, n_half_width], which pairs n with
/// -n + 1 and maps onto k = 1..n_half_width of the band form. When
/// n_half_width is empty each band m uses adaptive_half_width(M, m).
struct TruncationSpec {
    int m_max = 20;
    std::optional<int> n_half_width;
};

void validate(const TruncationSpec& trunc);

/// K = ceil((m*pi*M + 40) / 2): |J_{2K-1}(m*pi*M)| is below 1e-14 from here on.
int adaptive_half_width(double modulation, int m);

/// Half width actually used for band m under trunc.
int half_width_for_band(const TruncationSpec& trunc, double modulation, int m);

/// One sideband line a*cos(2*pi*f*t + phase) of the output voltage.
struct SpectralComponent {
    int m = 0;
    int n = 0;
    double frequency = 0.0;  // [Hz], >= 0 after folding
    double amplitude = 0.0;  // [V peak], >= 0
    double phase = 0.0;      // [rad] in (-pi, pi]
    bool folded = false;     // true when the unfolded frequency was negative

    double rms() const;
};

/// (-1)^(m+n-1) as an exact +-1.
int alternating_sign(int m, int n);

/// Signed coefficient (2 U_DC / pi) * J_{2n-1}(m pi M) / (m (-1)^(m+n-1)).
double component_coefficient(const InverterConfig& cfg, int m, int n);

/// Wraps an angle into (-pi, pi].
double wrap_phase(double phase);

/// U_DC * M * cos(w_N t + phi_N).
double fundamental_waveform(const InverterConfig& cfg, double t);

/// Every (m, n) line in range with amplitude >= 1e-14 * U_DC, sorted by
/// frequency (ties by m, then n). Negative-frequency lines are folded.
std::vector<SpectralComponent> component_table(const InverterConfig& cfg, const TruncationSpec& trunc);

/// Inner sum over n in [-half_width + 1, half_width] for a single carrier
/// group m, written in the original sideband form (dimensionless; the
/// 2 U_DC / pi factor is not applied).
double band_sum_original(const InverterConfig& cfg, int m, int half_width, double t);

/// Truncated original double sum with its Bessel coefficients evaluated
/// once; call operator() for the supraharmonic voltage at time t [V].
class OriginalSeries {
public:
    OriginalSeries(const InverterConfig& cfg, const TruncationSpec& trunc);

    double operator()(double t) const;

private:
    struct Term {
        int m;
        int n;
        double coefficient;  // includes 2 U_DC / pi and the sign
    };
    InverterConfig cfg_;
    std::vector<Term> terms_;
};

/// Supraharmonic part evaluated as the truncated original double sum [V].
double shd_original(const InverterConfig& cfg, const TruncationSpec& trunc, double t);

/// Fundamental plus shd_original on a uniform time axis.
SampledWaveform synthesize_total(const InverterConfig& cfg, const TruncationSpec& trunc,
                                 const std::vector<double>& times);

}  // namespace pwm_spectra
