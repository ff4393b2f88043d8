#include "pwm_spectra/serialization.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"

namespace pwm_spectra {

namespace {

using nlohmann::json;

std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream ss(line);
    while (std::getline(ss, field, ',')) {
        fields.push_back(field);
    }
    return fields;
}

double parse_number(const std::string& text) {
    double v = 0.0;
    const auto r = std::from_chars(text.data(), text.data() + text.size(), v);
    if (r.ec != std::errc() || r.ptr != text.data() + text.size()) {
        throw std::runtime_error("csv: bad number '" + text + "'");
    }
    return v;
}

}  // namespace

std::string format_number(double value) {
    char buf[40];
    const auto r = std::to_chars(buf, buf + sizeof buf, value, std::chars_format::general, 17);
    return std::string(buf, r.ptr);
}

void write_components_csv(std::ostream& os, const std::vector<SpectralComponent>& table) {
    os << "m,n,frequency_hz,amplitude_v_peak,rms_v,phase_rad\n";
    for (const auto& c : table) {
        os << c.m << ',' << c.n << ',' << format_number(c.frequency) << ',' << format_number(c.amplitude) << ','
           << format_number(c.rms()) << ',' << format_number(c.phase) << '\n';
    }
}

std::vector<SpectralComponent> read_components_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line != "m,n,frequency_hz,amplitude_v_peak,rms_v,phase_rad") {
        throw std::runtime_error("csv: unexpected component header");
    }
    std::vector<SpectralComponent> table;
    while (std::getline(is, line)) {
        if (line.empty()) {
            continue;
        }
        const auto f = split(line);
        if (f.size() != 6) {
            throw std::runtime_error("csv: expected 6 fields, got " + std::to_string(f.size()));
        }
        SpectralComponent c;
        c.m = std::stoi(f[0]);
        c.n = std::stoi(f[1]);
        c.frequency = parse_number(f[2]);
        c.amplitude = parse_number(f[3]);
        c.phase = parse_number(f[5]);
        table.push_back(c);
    }
    return table;
}

std::string components_to_json(const std::vector<SpectralComponent>& table) {
    json arr = json::array();
    for (const auto& c : table) {
        arr.push_back({{"m", c.m},
                       {"n", c.n},
                       {"frequency_hz", c.frequency},
                       {"amplitude_v_peak", c.amplitude},
                       {"rms_v", c.rms()},
                       {"phase_rad", c.phase},
                       {"folded", c.folded}});
    }
    return arr.dump(2) + "\n";
}

std::vector<SpectralComponent> components_from_json(const std::string& text) {
    const json arr = json::parse(text);
    std::vector<SpectralComponent> table;
    for (const auto& j : arr) {
        SpectralComponent c;
        c.m = j.at("m").get<int>();
        c.n = j.at("n").get<int>();
        c.frequency = j.at("frequency_hz").get<double>();
        c.amplitude = j.at("amplitude_v_peak").get<double>();
        c.phase = j.at("phase_rad").get<double>();
        c.folded = j.value("folded", false);
        table.push_back(c);
    }
    return table;
}

std::string bands_to_json(const std::vector<EmissionBand>& bands) {
    json arr = json::array();
    for (const auto& b : bands) {
        json harmonics = json::array();
        for (const auto& h : b.harmonics) {
            harmonics.push_back({{"k", h.k},
                                 {"nu", h.nu},
                                 {"signed_coefficient", h.signed_coefficient},
                                 {"rms_contribution_v", h.rms_contribution}});
        }
        arr.push_back({{"m", b.m},
                       {"center_frequency_hz", b.center_frequency},
                       {"rms_v", b.rms},
                       {"harmonics", std::move(harmonics)}});
    }
    return arr.dump(2) + "\n";
}

std::vector<EmissionBand> bands_from_json(const std::string& text) {
    const json arr = json::parse(text);
    std::vector<EmissionBand> bands;
    for (const auto& j : arr) {
        EmissionBand b;
        b.m = j.at("m").get<int>();
        b.center_frequency = j.at("center_frequency_hz").get<double>();
        b.rms = j.at("rms_v").get<double>();
        for (const auto& jh : j.at("harmonics")) {
            BandHarmonic h;
            h.k = jh.at("k").get<int>();
            h.nu = jh.at("nu").get<int>();
            h.signed_coefficient = jh.at("signed_coefficient").get<double>();
            h.rms_contribution = jh.at("rms_contribution_v").get<double>();
            b.harmonics.push_back(h);
        }
        bands.push_back(std::move(b));
    }
    return bands;
}

void write_spectrum_csv(std::ostream& os, const SpectrumBins& s) {
    os << "frequency_hz,rms_v,phase_rad\n";
    for (const auto& b : s.bins) {
        os << format_number(b.frequency) << ',' << format_number(b.rms) << ',' << format_number(b.phase) << '\n';
    }
}

void write_waveform_csv(std::ostream& os, const SampledWaveform& w) {
    os << "time_s,u_ab_v\n";
    for (std::size_t i = 0; i < w.samples.size(); ++i) {
        os << format_number(w.time_at(i)) << ',' << format_number(w.samples[i]) << '\n';
    }
}

}  // namespace pwm_spectra
