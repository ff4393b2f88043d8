#include <gtest/gtest.h>

#include <boost/math/special_functions/bessel.hpp>

#include <cmath>
#include <complex>

#include "pwm_spectra/double_fourier.hpp"
#include "pwm_spectra/emission_bands.hpp"
#include "pwm_spectra/signal_analysis.hpp"
#include "series_oracle.hpp"

using namespace pwm_spectra;

namespace {

InverterConfig zero_modulation() {
    InverterConfig cfg;
    cfg.u_ab_co_rms = 0.0;
    return cfg;
}

InverterConfig shifted() {
    InverterConfig cfg;
    cfg.phi_network = 0.35;
    cfg.phi_carrier = -0.8;
    return cfg;
}

double scale(const InverterConfig& cfg) { return 2.0 * cfg.u_dc_link / kPi; }

}  // namespace

TEST(Psi, ZeroModulation) {
    for (double t : {0.0, 0.0031, 0.017}) {
        EXPECT_EQ(psi(zero_modulation(), 1, 20, t), 0.0);
    }
}

TEST(Psi, VanishesAtCarrierZeroCrossing) {
    const InverterConfig cfg;
    for (int m = 1; m <= 6; ++m) {
        // w_c t + phi_c = pi / (4m) puts the band carrier at cos(pi / 2).
        const double t = (kPi / (4.0 * m) - cfg.phi_carrier) / cfg.omega_carrier();
        EXPECT_NEAR(psi(cfg, m, 20, t), 0.0, 1e-15);
    }
}

TEST(Psi, PairingIdentityAgainstOriginalSum) {
    for (const InverterConfig& cfg : {InverterConfig{}, shifted()}) {
        for (int m = 1; m <= 10; ++m) {
            for (int k_max : {1, 2, 5, 20, 25}) {
                for (int i = 0; i < 64; ++i) {
                    const double t = cfg.period() * i / 64.0;
                    const double original = band_sum_original(cfg, m, k_max, t);
                    EXPECT_NEAR(psi(cfg, m, k_max, t), original, 1e-12) << "m=" << m << " K=" << k_max;
                }
            }
        }
    }
}

TEST(ShdReformulated, ZeroAndEquivalence) {
    EXPECT_EQ(shd_reformulated(zero_modulation(), TruncationSpec{}, 0.004), 0.0);
    const InverterConfig cfg = shifted();
    const TruncationSpec adaptive{};
    for (int i = 0; i < 40; ++i) {
        const double t = cfg.period() * i / 40.0;
        EXPECT_NEAR(shd_reformulated(cfg, adaptive, t), shd_original(cfg, adaptive, t), 1e-9 * cfg.u_dc_link);
    }
}

TEST(BandDecomposition, ZeroModulation) {
    const auto band = band_decomposition(zero_modulation(), 3, 10);
    EXPECT_EQ(band.rms, 0.0);
    for (const auto& h : band.harmonics) {
        EXPECT_EQ(h.signed_coefficient, 0.0);
        EXPECT_EQ(h.rms_contribution, 0.0);
    }
}

TEST(BandDecomposition, Figure2FirstBand) {
    const InverterConfig cfg;
    const double x = kPi * modulation_index(cfg);
    double sum_sq = 0.0;
    for (int k = 1; k <= 40; ++k) {
        sum_sq += std::pow(oracle::bessel_series(2 * k - 1, x), 2);
    }
    const double expected = scale(cfg) * std::sqrt(sum_sq);
    EXPECT_NEAR(expected, 136.01578976981982, 1e-10);

    const auto band = band_decomposition(cfg, 1, adaptive_half_width(modulation_index(cfg), 1));
    EXPECT_NEAR(band.rms, expected, 1e-12 * expected);
    EXPECT_DOUBLE_EQ(band.center_frequency, 2000.0);
    EXPECT_EQ(band.harmonics.size(), 22u);
    for (const auto& h : band.harmonics) {
        EXPECT_EQ(h.nu, 2 * h.k - 1);
        EXPECT_EQ(h.nu % 2, 1);
        EXPECT_DOUBLE_EQ(h.rms_contribution, scale(cfg) * std::fabs(h.signed_coefficient));
    }
    // Signs alternate with (-1)^(m+k-1) on top of the Bessel sign.
    EXPECT_LT(band.harmonics[0].signed_coefficient, 0.0);
    EXPECT_GT(band.harmonics[1].signed_coefficient, 0.0);
}

TEST(BandDecomposition, MatchesClosedFormOddBesselPowerSum) {
    // sum_k J_{2k-1}(x)^2 = (1 - J_0(2x)) / 4.
    for (double u : {20.0, 120.0, 230.0, 282.0}) {
        InverterConfig cfg;
        cfg.u_ab_co_rms = u;
        const double mod = modulation_index(cfg);
        for (int m = 1; m <= 20; ++m) {
            const double x = m * kPi * mod;
            const double closed = scale(cfg) / m * std::sqrt((1.0 - boost::math::cyl_bessel_j(0, 2.0 * x)) / 4.0);
            const double rms = band_decomposition(cfg, m, adaptive_half_width(mod, m)).rms;
            EXPECT_NEAR(rms, closed, 1e-12 * scale(cfg)) << "u=" << u << " m=" << m;
        }
    }
}

TEST(BandDecomposition, DoublingOrderScaling) {
    const InverterConfig cfg;
    const double mod = modulation_index(cfg);
    const auto b1 = band_decomposition(cfg, 1, 40);
    const auto b2 = band_decomposition(cfg, 2, 40);
    double s1 = 0.0;
    double s2 = 0.0;
    for (int k = 1; k <= 40; ++k) {
        s1 += std::pow(boost::math::cyl_bessel_j(2 * k - 1, kPi * mod), 2);
        s2 += std::pow(boost::math::cyl_bessel_j(2 * k - 1, 2 * kPi * mod), 2);
    }
    EXPECT_NEAR(b2.rms / b1.rms, 0.5 * std::sqrt(s2) / std::sqrt(s1), 1e-12);
    EXPECT_LT(b2.rms, b1.rms);
}

TEST(BandRms, NeutralityOfCarrierModulation) {
    // 2 m f_c / f_N = 40 m: one period of the band waveform integrates to the closed-form RMS.
    const InverterConfig cfg = shifted();
    const double mod = modulation_index(cfg);
    for (int m = 1; m <= 6; ++m) {
        const int k_max = adaptive_half_width(mod, m);
        const BandSeries band(cfg, m, k_max);
        const std::size_t n = 20000;
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sum += std::pow(band(cfg.period() * i / n), 2);
        }
        const double integrated = std::sqrt(sum / n);
        EXPECT_NEAR(integrated / band_decomposition(cfg, m, k_max).rms, 1.0, 1e-3) << "m=" << m;
    }
}

TEST(PseudoPhasor, RealPartIsBandWaveform) {
    const InverterConfig cfg = shifted();
    for (int m : {1, 2, 5}) {
        for (int i = 0; i < 50; ++i) {
            const double t = cfg.period() * i / 50.0;
            const auto p = pseudo_phasor(cfg, m, 20, t);
            const double band = scale(cfg) * psi(cfg, m, 20, t);
            EXPECT_NEAR(p.value.real(), band, 1e-12 * std::max(1.0, std::fabs(band)) + 1e-12);
            EXPECT_EQ(p.time, t);
        }
    }
}

TEST(PseudoPhasor, RotatesAtBandFrequency) {
    const InverterConfig cfg;
    const int m = 2;
    const double t0 = 0.0011;
    const double dt = 3e-6;
    const auto a = pseudo_phasor(cfg, m, 25, t0);
    const auto b = pseudo_phasor(cfg, m, 25, t0 + dt);
    ASSERT_GT(a.value.real() * a.value.real() + a.value.imag() * a.value.imag(), 0.0);
    const double amp_a = band_modulation_amplitude(cfg, m, 25, t0);
    const double amp_b = band_modulation_amplitude(cfg, m, 25, t0 + dt);
    ASSERT_GT(amp_a * amp_b, 0.0);  // same sign over the step
    const double step = std::arg(b.value / a.value);
    EXPECT_NEAR(step, std::remainder(2.0 * m * cfg.omega_carrier() * dt, kTwoPi), 1e-9);
}

TEST(PseudoPhasor, MeanPowerIsTwiceBandPower) {
    const InverterConfig cfg = shifted();
    const double mod = modulation_index(cfg);
    for (int m : {1, 3}) {
        const int k_max = adaptive_half_width(mod, m);
        // Trapezoid over one period of a periodic integrand.
        const std::size_t n = 4096;
        double sum = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            sum += std::norm(pseudo_phasor(cfg, m, k_max, cfg.period() * i / n).value);
        }
        const double rms = band_decomposition(cfg, m, k_max).rms;
        EXPECT_NEAR((sum / n) / (2.0 * rms * rms), 1.0, 1e-6) << "m=" << m;
    }
}

TEST(PseudoPhasor, MatchesNumericalAnalyticSignal) {
    const InverterConfig cfg = shifted();
    const double mod = modulation_index(cfg);
    const BandSeries band(cfg, 1, adaptive_half_width(mod, 1));
    const std::size_t n = 40000;
    SampledWaveform w{n * cfg.f_network, 0.0, std::vector<double>(n)};
    for (std::size_t i = 0; i < n; ++i) {
        w.samples[i] = band(w.time_at(i));
    }
    const auto z = analytic_signal(w);
    double err = 0.0;
    double ref = 0.0;
    for (std::size_t i = n / 10; i < n - n / 10; ++i) {
        const auto p = pseudo_phasor(cfg, 1, adaptive_half_width(mod, 1), w.time_at(i)).value;
        err += std::norm(z[i] - p);
        ref += std::norm(p);
    }
    EXPECT_LT(std::sqrt(err / ref), 1e-9);
}

TEST(RmsPhasor, ConstantMagnitudeAndPhase) {
    const InverterConfig cfg;
    const auto band = band_decomposition(cfg, 1, 22);
    for (int i = 0; i < 30; ++i) {
        const double t = 0.0007 * i;
        EXPECT_NEAR(std::abs(rms_phasor(cfg, 1, 22, t).value), band.rms, 1e-12 * band.rms);
    }
    const auto at0 = rms_phasor(cfg, 1, 22, 0.0).value;
    EXPECT_GT(at0.real(), 0.0);
    EXPECT_EQ(at0.imag(), 0.0);
    EXPECT_EQ(std::abs(rms_phasor(zero_modulation(), 4, 22, 0.001).value), 0.0);
}

TEST(HarmonicWaveform, SumsToBandWaveform) {
    const InverterConfig cfg = shifted();
    for (int m : {1, 2, 4}) {
        for (int i = 0; i < 40; ++i) {
            const double t = cfg.period() * i / 40.0;
            double sum = 0.0;
            for (int k = 1; k <= 20; ++k) {
                sum += harmonic_waveform(cfg, m, k, t);
            }
            const double band = scale(cfg) * psi(cfg, m, 20, t);
            EXPECT_NEAR(sum, band, 1e-12 * std::max(1.0, std::fabs(band)));
        }
    }
    EXPECT_EQ(harmonic_waveform(zero_modulation(), 1, 1, 0.003), 0.0);
}

TEST(HarmonicEnvelope, BoundsWaveformAndPeaks) {
    const InverterConfig cfg;
    const double mod = modulation_index(cfg);
    const double frozen[] = {246.04689330521344, 115.50902062088699, 10.934558940783794};
    for (int k = 1; k <= 3; ++k) {
        const double peak = 4.0 * cfg.u_dc_link / kPi * std::fabs(oracle::bessel_series(2 * k - 1, kPi * mod));
        EXPECT_NEAR(peak, frozen[k - 1], 1e-10);
        double observed = 0.0;
        for (int i = 0; i <= 4000; ++i) {
            const double t = cfg.period() * i / 4000.0;
            const double w = harmonic_waveform(cfg, 1, k, t);
            const double e = harmonic_envelope(cfg, 1, k, t);
            EXPECT_LE(std::fabs(w), std::fabs(e) + 1e-9 * cfg.u_dc_link);
            observed = std::max(observed, std::fabs(e));
        }
        EXPECT_NEAR(observed, peak, 1e-12 * peak);
    }
    // nu = 1 modulation crosses zero at a quarter period.
    EXPECT_NEAR(harmonic_envelope(cfg, 1, 1, 1.0 / (4.0 * cfg.f_network)), 0.0, 1e-12);
}

TEST(BandModulation, ContainsOnlyOddHarmonics) {
    const InverterConfig cfg = shifted();
    const double mod = modulation_index(cfg);
    for (int m : {1, 2, 7}) {
        const std::size_t n = 2048;
        SampledWaveform a{n * cfg.f_network, 0.0, std::vector<double>(n)};
        for (std::size_t i = 0; i < n; ++i) {
            a.samples[i] = band_modulation_amplitude(cfg, m, adaptive_half_width(mod, m), a.time_at(i));
        }
        const auto spec = dft_spectrum(a);
        double even = 0.0;
        double total = 0.0;
        for (std::size_t h = 0; h < spec.bins.size(); ++h) {
            total += spec.bins[h].rms * spec.bins[h].rms;
            even += (h % 2 == 0) ? spec.bins[h].rms * spec.bins[h].rms : 0.0;
        }
        EXPECT_LT(std::sqrt(even / total), 1e-10) << "m=" << m;
    }
}

TEST(EmissionBands, ListFollowsTruncation) {
    const InverterConfig cfg;
    const auto bands = emission_bands(cfg, TruncationSpec{7, std::nullopt});
    ASSERT_EQ(bands.size(), 7u);
    const double mod = modulation_index(cfg);
    for (std::size_t i = 0; i < bands.size(); ++i) {
        const int m = static_cast<int>(i) + 1;
        EXPECT_EQ(bands[i].m, m);
        EXPECT_EQ(static_cast<int>(bands[i].harmonics.size()), adaptive_half_width(mod, m));
        EXPECT_GT(bands[i].rms, 0.0);
        if (i > 0) {
            EXPECT_LT(bands[i].rms, bands[i - 1].rms);
        }
    }
    EXPECT_THROW(band_decomposition(cfg, 0, 5), ConfigError);
    EXPECT_THROW(harmonic_envelope(cfg, 1, 0, 0.0), ConfigError);
}
