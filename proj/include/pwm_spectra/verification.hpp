#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "pwm_spectra/scenario.hpp"
#include "pwm_spectra/signal_analysis.hpp"

namespace pwm_spectra {

struct CheckResult {
    std::string id;
    std::string description;
    double measured = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    std::string detail;
};

struct VerificationReport {
    std::vector<CheckResult> checks;
    /// Mean carrier-phase offset of the simulated bands relative to the
    /// rms_phasor angle 2 m phi_c [rad].
    double phase_offset = 0.0;

    bool all_passed() const;
};

/// Phase of the simulated band m relative to the analytic band model:
/// arg of sum over the band's sideband bins of X_sim * conj(X_model).
/// Zero means the simulated carrier sits exactly at 2 m (w_c t + phi_c).
double band_phase_offset(const SpectrumBins& simulated, const InverterConfig& cfg, int m);

/// Runs every cross-check between the simulated bridge, the original
/// double Fourier series and the band form for the scenario.
VerificationReport run_verification(const Scenario& scenario);

void print_report(std::ostream& os, const VerificationReport& report);

}  // namespace pwm_spectra
