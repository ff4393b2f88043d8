#include "pwm_spectra/scenario.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

namespace pwm_spectra {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double to_double(const std::string& key, const std::string& v) {
    double d = 0.0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), d);
    if (v.empty() || r.ec != std::errc() || r.ptr != v.data() + v.size() || !std::isfinite(d)) {
        throw ConfigError("scenario: " + key + " expects a number, got '" + v + "'");
    }
    return d;
}

int to_int(const std::string& key, const std::string& v) {
    int i = 0;
    const auto r = std::from_chars(v.data(), v.data() + v.size(), i);
    if (v.empty() || r.ec != std::errc() || r.ptr != v.data() + v.size()) {
        throw ConfigError("scenario: " + key + " expects an integer, got '" + v + "'");
    }
    return i;
}

const std::set<std::string>& known_outputs() {
    static const std::set<std::string> names{"waveform", "spectrum", "bands", "components", "figure2"};
    return names;
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
    Scenario s;
    using Setter = std::function<void(const std::string&, const std::string&)>;
    const std::map<std::string, Setter> setters{
        {"u_dc_link", [&](auto& k, auto& v) { s.inverter.u_dc_link = to_double(k, v); }},
        {"u_ab_co_rms", [&](auto& k, auto& v) { s.inverter.u_ab_co_rms = to_double(k, v); }},
        {"f_network", [&](auto& k, auto& v) { s.inverter.f_network = to_double(k, v); }},
        {"phi_network", [&](auto& k, auto& v) { s.inverter.phi_network = to_double(k, v); }},
        {"f_carrier", [&](auto& k, auto& v) { s.inverter.f_carrier = to_double(k, v); }},
        {"phi_carrier", [&](auto& k, auto& v) { s.inverter.phi_carrier = to_double(k, v); }},
        {"m_max", [&](auto& k, auto& v) { s.truncation.m_max = to_int(k, v); }},
        {"n_half_width",
         [&](auto& k, auto& v) {
             if (v == "auto") {
                 s.truncation.n_half_width.reset();
             } else {
                 s.truncation.n_half_width = to_int(k, v);
             }
         }},
        {"duration_periods", [&](auto& k, auto& v) { s.simulation.duration_periods = to_int(k, v); }},
        {"sample_rate_hz", [&](auto& k, auto& v) { s.simulation.sample_rate_hz = to_double(k, v); }},
        {"figure_points", [&](auto& k, auto& v) { s.figure_points = to_int(k, v); }},
        {"outputs",
         [&](auto&, auto& v) {
             s.outputs.clear();
             std::istringstream ss(v);
             std::string item;
             while (std::getline(ss, item, ',')) {
                 item = trim(item);
                 if (!known_outputs().count(item)) {
                     throw ConfigError("scenario: unknown output '" + item + "'");
                 }
                 s.outputs.insert(item);
             }
         }},
    };

    std::set<std::string> seen;
    std::istringstream in(text);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("scenario: line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const auto it = setters.find(key);
        if (it == setters.end()) {
            throw ConfigError("scenario: line " + std::to_string(line_no) + ": unknown key '" + key + "'");
        }
        if (!seen.insert(key).second) {
            throw ConfigError("scenario: line " + std::to_string(line_no) + ": duplicate key '" + key + "'");
        }
        it->second(key, value);
    }
    return s;
}

Scenario load_scenario(const std::string& path) {
    std::ifstream f(path);
    if (!f) {
        throw ConfigError("scenario: cannot open config file '" + path + "'");
    }
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse_scenario(ss.str());
}

void validate(const Scenario& s) {
    validate(s.inverter);
    validate(s.truncation);
    if (s.simulation.duration_periods < 1) {
        throw ConfigError("scenario: duration_periods must be >= 1");
    }
    if (!(s.simulation.sample_rate_hz >= min_sample_rate(s.inverter))) {
        throw ConfigError("scenario: sample_rate_hz below floor of 50 x f_carrier");
    }
    const double per_period = s.simulation.sample_rate_hz / s.inverter.f_network;
    if (std::fabs(per_period - std::round(per_period)) > 1e-9 * per_period) {
        throw ConfigError("scenario: sample_rate_hz must give a whole number of samples per period");
    }
    if (s.figure_points < 2) {
        throw ConfigError("scenario: figure_points must be >= 2");
    }
}

}  // namespace pwm_spectra
