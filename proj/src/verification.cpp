#include "pwm_spectra/verification.hpp"

#include <boost/math/special_functions/bessel.hpp>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdio>
#include <ostream>

#include "pwm_spectra/bessel.hpp"
#include "pwm_spectra/double_fourier.hpp"
#include "pwm_spectra/emission_bands.hpp"
#include "pwm_spectra/serialization.hpp"

namespace pwm_spectra {

namespace {

double relative(double value, double reference, double floor) {
    return std::fabs(value - reference) / std::max(std::fabs(reference), floor);
}

CheckResult make_check(std::string id, std::string description, double measured, double tolerance,
                       std::string detail = {}) {
    CheckResult c;
    c.id = std::move(id);
    c.description = std::move(description);
    c.measured = measured;
    c.tolerance = tolerance;
    c.passed = std::isfinite(measured) && measured <= tolerance;
    c.detail = std::move(detail);
    return c;
}

CheckResult check_pairing(const InverterConfig& cfg) {
    double worst = 0.0;
    for (int m = 1; m <= 10; ++m) {
        for (int k_max : {1, 2, 5, 25}) {
            for (int i = 0; i < 64; ++i) {
                const double t = cfg.period() * i / 64.0;
                worst = std::max(worst, std::fabs(band_sum_original(cfg, m, k_max, t) - psi(cfg, m, k_max, t)));
            }
        }
    }
    return make_check("pairing_identity", "original n-sum equals paired k-sum (units of 2 U_DC / pi)", worst, 1e-12);
}

CheckResult check_reconstruction(const Scenario& sc, const SampledWaveform& sim) {
    const InverterConfig& cfg = sc.inverter;
    const BandSeries shd(cfg, sc.truncation);
    double sum = 0.0;
    for (std::size_t i = 0; i < sim.size(); ++i) {
        const double t = sim.time_at(i);
        const double r = sim.samples[i] - fundamental_waveform(cfg, t) - shd(t);
        sum += r * r;
    }
    const double residual = std::sqrt(sum / static_cast<double>(sim.size())) / cfg.u_dc_link;
    return make_check("oracle_reconstruction",
                      "RMS(sim - fundamental - band form, m <= " + std::to_string(sc.truncation.m_max) + ") / U_DC",
                      residual, 5e-3);
}

CheckResult check_band_rms(const Scenario& sc, const SpectrumBins& spec) {
    const InverterConfig& cfg = sc.inverter;
    const double mod = modulation_index(cfg);
    double worst = 0.0;
    std::string detail;
    for (int m = 1; m <= 5; ++m) {
        const double analytic = band_decomposition(cfg, m, adaptive_half_width(mod, m)).rms;
        const double measured = band_rms_from_spectrum(spec, m, cfg);
        const double err = relative(measured, analytic, 1e-9 * cfg.u_dc_link);
        worst = std::max(worst, err);
        detail += "m=" + std::to_string(m) + ": " + format_number(err) + (m < 5 ? "; " : "");
    }
    return make_check("band_rms_fft", "band RMS vs FFT band power, m = 1..5 (relative)", worst, 1e-3, detail);
}

std::vector<CheckResult> check_power(const Scenario& sc, const SampledWaveform& sim) {
    const InverterConfig& cfg = sc.inverter;
    const double mod = modulation_index(cfg);
    const double ms = std::pow(waveform_rms(sim), 2);
    const double duty = cfg.u_dc_link * cfg.u_dc_link * 2.0 * mod / kPi;
    const double floor = 1e-12 * cfg.u_dc_link * cfg.u_dc_link;

    double books = std::pow(cfg.u_dc_link * mod, 2) / 2.0;
    for (const auto& band : emission_bands(cfg, sc.truncation)) {
        books += band.rms * band.rms;
    }
    return {make_check("mean_square_duty", "sim mean square vs U_DC^2 2M/pi (relative)", relative(ms, duty, floor), 5e-3),
            make_check("power_bookkeeping",
                       "fundamental + sum of band powers (m <= " + std::to_string(sc.truncation.m_max) +
                           ") vs sim mean square (relative)",
                       relative(books, ms, floor), 5e-3)};
}

CheckResult check_hilbert(const Scenario& sc) {
    const InverterConfig& cfg = sc.inverter;
    const double mod = modulation_index(cfg);
    const BandSeries band(cfg, 1, adaptive_half_width(mod, 1));
    const auto count = static_cast<std::size_t>(std::llround(sc.simulation.sample_rate_hz / cfg.f_network));
    SampledWaveform w{sc.simulation.sample_rate_hz, 0.0, std::vector<double>(count)};
    std::vector<double> amplitude(count);
    for (std::size_t i = 0; i < count; ++i) {
        const double t = w.time_at(i);
        w.samples[i] = band(t);
        amplitude[i] = std::fabs(band.modulation_amplitude(t));
    }
    const auto env = hilbert_envelope(w);
    const std::size_t margin = count / 10;
    double err = 0.0;
    double ref = 0.0;
    for (std::size_t i = margin; i < count - margin; ++i) {
        err += std::pow(env.samples[i] - amplitude[i], 2);
        ref += amplitude[i] * amplitude[i];
    }
    const double rel = ref > 0.0 ? std::sqrt(err / ref) : std::sqrt(err);
    return make_check("hilbert_pseudo_phasor", "|analytic signal| vs pseudo-phasor amplitude, band 1 (relative RMS)",
                      rel, 1e-2);
}

CheckResult check_fundamental(const InverterConfig& cfg, const SampledWaveform& sim) {
    const double mod = modulation_index(cfg);
    const double peak = correlate_cosine(sim, cfg.f_network, cfg.phi_network);
    const double expected = cfg.u_dc_link * mod;
    return make_check("fundamental_amplitude",
                      "correlated fundamental peak vs U_DC M = " + format_number(expected) + " V (relative)",
                      relative(peak, expected, 1e-9 * cfg.u_dc_link), 2e-3, "measured " + format_number(peak) + " V");
}

std::vector<CheckResult> check_figure2(const Scenario& sc) {
    const InverterConfig& cfg = sc.inverter;
    const double mod = modulation_index(cfg);
    const int points = sc.figure_points;
    const double dt = cfg.period() / points;

    double dominance = 0.0;
    double peak_err = 0.0;
    for (int k = 1; k <= 3; ++k) {
        for (int i = 0; i < points; ++i) {
            const double t = i * dt;
            dominance = std::max(dominance, std::fabs(harmonic_waveform(cfg, 1, k, t)) -
                                                std::fabs(harmonic_envelope(cfg, 1, k, t)));
        }
        // cos(nu [w_N t + phi_N]) = 1 at this instant.
        const double t_peak = -cfg.phi_network / cfg.omega_network();
        const double expected =
            4.0 * cfg.u_dc_link / kPi * std::fabs(boost::math::cyl_bessel_j(2 * k - 1, kPi * mod));
        peak_err = std::max(peak_err, relative(std::fabs(harmonic_envelope(cfg, 1, k, t_peak)), expected,
                                               1e-12 * cfg.u_dc_link));
    }

    // Odd-only modulation: Fourier-analyze one period of the band-1 amplitude.
    const BandSeries band(cfg, 1, adaptive_half_width(mod, 1));
    SampledWaveform a{points / cfg.period(), 0.0, std::vector<double>(static_cast<std::size_t>(points))};
    for (int i = 0; i < points; ++i) {
        a.samples[static_cast<std::size_t>(i)] = band.modulation_amplitude(i * dt);
    }
    const auto spec = dft_spectrum(a);
    double even = 0.0;
    double total = 0.0;
    for (std::size_t h = 0; h < spec.bins.size(); ++h) {
        const double p = spec.bins[h].rms * spec.bins[h].rms;
        total += p;
        if (h % 2 == 0) {
            even += p;
        }
    }
    const double even_rel = total > 0.0 ? std::sqrt(even / total) : 0.0;

    return {make_check("figure2_envelope_dominance", "max(|waveform| - |envelope|), k = 1..3 (V)", dominance,
                       1e-9 * cfg.u_dc_link),
            make_check("figure2_envelope_peak", "envelope peak vs (4 U_DC / pi) |J_{2k-1}(pi M)| (relative)",
                       peak_err, 1e-12),
            make_check("odd_harmonics_only", "even-harmonic content of band-1 modulation (relative)", even_rel, 1e-10)};
}

CheckResult check_bessel() {
    double parity = 0.0;
    double recurrence = 0.0;
    double normalization = 0.0;
    double spot = 0.0;
    for (int i = 0; i <= 100; ++i) {
        const double x = 0.5 * i;
        for (int n = 0; n <= 60; ++n) {
            const double sign = (n % 2 == 0) ? 1.0 : -1.0;
            if (bessel_j(-n, x) != sign * bessel_j(n, x)) {
                parity = 1.0;
            }
            if (x > 0.0 && n >= 1) {
                const double jn = bessel_j(n, x);
                const double res = std::fabs(bessel_j(n - 1, x) + bessel_j(n + 1, x) - 2.0 * n / x * jn);
                recurrence = std::max(recurrence, res / std::max(1.0, std::fabs(jn)));
            }
            if (x > 0.0 && n <= 50) {
                const double ref = boost::math::cyl_bessel_j(n, x);
                if (std::fabs(ref) > 1e-200) {
                    // Skip points within 1e-6 of a zero, where relative error has no meaning.
                    if (std::fabs(ref) > 1e-6) {
                        spot = std::max(spot, std::fabs(bessel_j(n, x) - ref) / std::fabs(ref));
                    }
                }
            }
        }
        const int top = static_cast<int>(x) + 40;
        double sum = std::pow(bessel_j(0, x), 2);
        for (int n = 1; n <= top; ++n) {
            sum += 2.0 * std::pow(bessel_j(n, x), 2);
        }
        normalization = std::max(normalization, std::fabs(sum - 1.0));
    }
    const double worst = std::max({parity, recurrence / 1e-10, normalization / 1e-10, spot / 1e-12});
    return make_check("bessel_suite", "parity, recurrence, normalization, spot values (worst ratio to tolerance)",
                      worst, 1.0,
                      "parity " + std::string(parity == 0.0 ? "exact" : "BROKEN") + "; recurrence " +
                          format_number(recurrence) + "; normalization " + format_number(normalization) +
                          "; spot " + format_number(spot));
}

CheckResult check_phase(const Scenario& sc, double& mean_offset) {
    std::vector<double> offsets;
    for (double shift : {0.0, kPi / 6.0, kPi / 3.0}) {
        InverterConfig cfg = sc.inverter;
        cfg.phi_carrier += shift;
        const auto sim = simulate_hbridge(cfg, sc.simulation.duration(cfg), sc.simulation.sample_rate_hz);
        const auto spec = dft_spectrum(sim);
        for (int m = 1; m <= 5; ++m) {
            offsets.push_back(band_phase_offset(spec, cfg, m));
        }
    }
    std::complex<double> acc;
    for (double o : offsets) {
        acc += std::polar(1.0, o);
    }
    mean_offset = std::arg(acc);
    double spread = 0.0;
    for (double o : offsets) {
        spread = std::max(spread, std::fabs(wrap_phase(o - mean_offset)));
    }
    return make_check("phase_convention", "spread of band phase offsets over m = 1..5 and 3 carrier phases (rad)",
                      spread, 2e-3, "constant offset " + format_number(mean_offset) + " rad");
}

}  // namespace

bool VerificationReport::all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

double band_phase_offset(const SpectrumBins& simulated, const InverterConfig& cfg, int m) {
    TruncationSpec single{m, std::nullopt};
    std::complex<double> cross;
    for (const auto& c : component_table(cfg, single)) {
        if (c.m != m) {
            continue;
        }
        const double idx = c.frequency / simulated.bin_width;
        const auto k = static_cast<std::size_t>(std::llround(idx));
        if (std::fabs(idx - static_cast<double>(k)) > 1e-6 || k >= simulated.bins.size()) {
            continue;
        }
        const auto& bin = simulated.bins[k];
        cross += std::polar(bin.rms, bin.phase) * std::conj(std::polar(c.rms(), c.phase));
    }
    return std::arg(cross);
}

VerificationReport run_verification(const Scenario& scenario) {
    validate(scenario);
    const InverterConfig& cfg = scenario.inverter;
    const auto sim = simulate_hbridge(cfg, scenario.simulation.duration(cfg), scenario.simulation.sample_rate_hz);
    const auto spec = dft_spectrum(sim);

    VerificationReport report;
    report.checks.push_back(check_pairing(cfg));
    report.checks.push_back(check_reconstruction(scenario, sim));
    report.checks.push_back(check_band_rms(scenario, spec));
    for (auto& c : check_power(scenario, sim)) {
        report.checks.push_back(std::move(c));
    }
    report.checks.push_back(check_hilbert(scenario));
    report.checks.push_back(check_fundamental(cfg, sim));
    for (auto& c : check_figure2(scenario)) {
        report.checks.push_back(std::move(c));
    }
    report.checks.push_back(check_bessel());
    report.checks.push_back(check_phase(scenario, report.phase_offset));
    return report;
}

void print_report(std::ostream& os, const VerificationReport& report) {
    std::size_t width = 0;
    for (const auto& c : report.checks) {
        width = std::max(width, c.id.size());
    }
    for (const auto& c : report.checks) {
        char line[160];
        std::snprintf(line, sizeof line, "[%s] %-*s measured %-12.4e limit %-10.3e ", c.passed ? "PASS" : "FAIL",
                      static_cast<int>(width), c.id.c_str(), c.measured, c.tolerance);
        os << line << c.description;
        if (!c.detail.empty()) {
            os << " (" << c.detail << ")";
        }
        os << '\n';
    }
    std::size_t passed = 0;
    for (const auto& c : report.checks) {
        passed += c.passed ? 1 : 0;
    }
    os << "phase offset (sim vs 2 m phi_c): " << format_number(report.phase_offset) << " rad\n";
    os << passed << "/" << report.checks.size() << " checks passed\n";
}

}  // namespace pwm_spectra
