#include <gtest/gtest.h>

#include <clocale>
#include <cmath>
#include <limits>
#include <random>
#include <sstream>

#include "pwm_spectra/serialization.hpp"

using namespace pwm_spectra;

namespace {

std::vector<SpectralComponent> random_table(unsigned seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    std::vector<SpectralComponent> t;
    for (int i = 0; i < 60; ++i) {
        SpectralComponent c;
        c.m = 1 + i % 9;
        c.n = i % 13 - 6;
        c.frequency = 1e4 * std::fabs(u(gen));
        c.amplitude = std::pow(10.0, 6.0 * u(gen));
        c.phase = kPi * u(gen);
        c.folded = (i % 7) == 0;
        t.push_back(c);
    }
    t.back().amplitude = std::numeric_limits<double>::denorm_min();
    return t;
}

}  // namespace

TEST(FormatNumber, RoundTripsAndIsLocaleFree) {
    for (double v : {0.0, -0.0, 1.0, 0.1, 1.0 / 3.0, 123.02344665260672, 1e-300, 6.02e23, -kPi}) {
        const std::string s = format_number(v);
        EXPECT_EQ(s.find(','), std::string::npos);
        EXPECT_EQ(std::stod(s), v) << s;
    }
    EXPECT_EQ(format_number(2.5), "2.5");
}

TEST(ComponentsCsv, RoundTripIsBitExact) {
    const auto table = random_table(11);
    std::stringstream ss;
    write_components_csv(ss, table);
    const std::string text = ss.str();
    EXPECT_EQ(text.rfind("m,n,frequency_hz,amplitude_v_peak,rms_v,phase_rad\n", 0), 0u);
    const auto back = read_components_csv(ss);
    ASSERT_EQ(back.size(), table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        EXPECT_EQ(back[i].m, table[i].m);
        EXPECT_EQ(back[i].n, table[i].n);
        EXPECT_EQ(back[i].frequency, table[i].frequency);
        EXPECT_EQ(back[i].amplitude, table[i].amplitude);
        EXPECT_EQ(back[i].phase, table[i].phase);
    }
    std::stringstream again;
    write_components_csv(again, back);
    EXPECT_EQ(again.str(), text);
}

TEST(ComponentsCsv, RejectsMalformedInput) {
    std::stringstream bad_header("m;n\n1;2\n");
    EXPECT_ANY_THROW(read_components_csv(bad_header));
    std::stringstream bad_row("m,n,frequency_hz,amplitude_v_peak,rms_v,phase_rad\n1,2,x,1,1,0\n");
    EXPECT_ANY_THROW(read_components_csv(bad_row));
}

TEST(ComponentsJson, RoundTripIsBitExact) {
    const auto table = random_table(5);
    const std::string text = components_to_json(table);
    const auto back = components_from_json(text);
    ASSERT_EQ(back.size(), table.size());
    for (std::size_t i = 0; i < table.size(); ++i) {
        EXPECT_EQ(back[i].m, table[i].m);
        EXPECT_EQ(back[i].n, table[i].n);
        EXPECT_EQ(back[i].frequency, table[i].frequency);
        EXPECT_EQ(back[i].amplitude, table[i].amplitude);
        EXPECT_EQ(back[i].phase, table[i].phase);
        EXPECT_EQ(back[i].folded, table[i].folded);
    }
    EXPECT_EQ(components_to_json(back), text);
}

TEST(BandsJson, RoundTripIsBitExact) {
    const InverterConfig cfg;
    const auto bands = emission_bands(cfg, TruncationSpec{});
    const std::string text = bands_to_json(bands);
    const auto back = bands_from_json(text);
    ASSERT_EQ(back.size(), bands.size());
    for (std::size_t i = 0; i < bands.size(); ++i) {
        EXPECT_EQ(back[i].m, bands[i].m);
        EXPECT_EQ(back[i].center_frequency, bands[i].center_frequency);
        EXPECT_EQ(back[i].rms, bands[i].rms);
        ASSERT_EQ(back[i].harmonics.size(), bands[i].harmonics.size());
        for (std::size_t j = 0; j < bands[i].harmonics.size(); ++j) {
            EXPECT_EQ(back[i].harmonics[j].k, bands[i].harmonics[j].k);
            EXPECT_EQ(back[i].harmonics[j].nu, bands[i].harmonics[j].nu);
            EXPECT_EQ(back[i].harmonics[j].signed_coefficient, bands[i].harmonics[j].signed_coefficient);
            EXPECT_EQ(back[i].harmonics[j].rms_contribution, bands[i].harmonics[j].rms_contribution);
        }
    }
    EXPECT_EQ(bands_to_json(back), text);
    EXPECT_EQ(bands_to_json(emission_bands(cfg, TruncationSpec{})), text);
    EXPECT_ANY_THROW(bands_from_json("{not json"));
}

TEST(SpectrumAndWaveformCsv, HeadersAndRows) {
    SampledWaveform w{4.0, 0.0, {1.0, 0.0, -1.0, 0.0}};
    std::stringstream ws;
    write_waveform_csv(ws, w);
    EXPECT_EQ(ws.str(), "time_s,u_ab_v\n0,1\n0.25,0\n0.5,-1\n0.75,0\n");

    std::stringstream ss;
    write_spectrum_csv(ss, dft_spectrum(w));
    std::string line;
    std::getline(ss, line);
    EXPECT_EQ(line, "frequency_hz,rms_v,phase_rad");
    int rows = 0;
    while (std::getline(ss, line)) {
        ++rows;
    }
    EXPECT_EQ(rows, 3);
}

TEST(FormatNumber, IgnoresGlobalLocale) {
    const char* previous = std::setlocale(LC_NUMERIC, nullptr);
    const std::string saved = previous ? previous : "C";
    if (std::setlocale(LC_NUMERIC, "de_DE.UTF-8") == nullptr) {
        GTEST_SKIP() << "de_DE locale not installed";
    }
    const std::string s = format_number(0.5);
    std::setlocale(LC_NUMERIC, saved.c_str());
    EXPECT_EQ(s, "0.5");
}
