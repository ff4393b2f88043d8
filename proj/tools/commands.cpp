#include "commands.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "json.hpp"
#include "pwm_spectra/double_fourier.hpp"
#include "pwm_spectra/emission_bands.hpp"
#include "pwm_spectra/inverter.hpp"
#include "pwm_spectra/scenario.hpp"
#include "pwm_spectra/serialization.hpp"
#include "pwm_spectra/signal_analysis.hpp"
#include "pwm_spectra/verification.hpp"

namespace pwm_spectra::cli {

namespace {

namespace fs = std::filesystem;

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct CommonOptions {
    std::string config;
    std::string out_dir = ".";
    std::optional<int> m_max;
    std::optional<double> sample_rate;
    std::optional<int> periods;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config, "Scenario file (key = value)");
    cmd->add_option("--out", opts.out_dir, "Output directory")->capture_default_str();
    cmd->add_option("--m-max", opts.m_max, "Highest emission band / carrier group");
    cmd->add_option("--sample-rate", opts.sample_rate, "Simulation sample rate [Hz]");
    cmd->add_option("--periods", opts.periods, "Simulated fundamental periods");
}

Scenario resolve_scenario(const CommonOptions& opts) {
    Scenario s = opts.config.empty() ? Scenario{} : load_scenario(opts.config);
    if (opts.m_max) {
        s.truncation.m_max = *opts.m_max;
    }
    if (opts.sample_rate) {
        s.simulation.sample_rate_hz = *opts.sample_rate;
    }
    if (opts.periods) {
        s.simulation.duration_periods = *opts.periods;
    }
    validate(s);
    return s;
}

fs::path prepare_dir(const std::string& dir) {
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) {
        throw IoError("cannot create output directory '" + dir + "'" + (ec ? ": " + ec.message() : ""));
    }
    return fs::path(dir);
}

void write_file(const fs::path& path, const std::function<void(std::ostream&)>& body) {
    std::ofstream f(path, std::ios::binary);
    if (!f) {
        throw IoError("cannot write '" + path.string() + "'");
    }
    body(f);
    f.flush();
    if (!f) {
        throw IoError("write failed for '" + path.string() + "'");
    }
}

SampledWaveform simulate(const Scenario& s) {
    return simulate_hbridge(s.inverter, s.simulation.duration(s.inverter), s.simulation.sample_rate_hz);
}

// Band-1 curves of the example figure: harmonics k = 1..3 and the k = 1..5 partial sum.
void write_figure2(const Scenario& s, const fs::path& dir, std::ostream& out) {
    const InverterConfig& cfg = s.inverter;
    const int points = s.figure_points;
    std::vector<double> times(static_cast<std::size_t>(points) + 1);
    for (int i = 0; i <= points; ++i) {
        times[static_cast<std::size_t>(i)] = cfg.period() * i / points;
    }

    struct Curve {
        std::vector<double> waveform;
        std::vector<double> envelope;
    };
    std::vector<Curve> curves;
    for (int k = 1; k <= 3; ++k) {
        Curve c;
        for (double t : times) {
            c.waveform.push_back(harmonic_waveform(cfg, 1, k, t));
            c.envelope.push_back(harmonic_envelope(cfg, 1, k, t));
        }
        curves.push_back(std::move(c));
    }
    Curve sum;
    for (double t : times) {
        double w = 0.0;
        double e = 0.0;
        for (int k = 1; k <= 5; ++k) {
            w += harmonic_waveform(cfg, 1, k, t);
            e += harmonic_envelope(cfg, 1, k, t);
        }
        sum.waveform.push_back(w);
        sum.envelope.push_back(e);
    }

    const auto write_curve = [&](const std::string& name, const Curve& c) {
        write_file(dir / name, [&](std::ostream& os) {
            os << "time_s,waveform_v,envelope_v,abs_envelope_v\n";
            for (std::size_t i = 0; i < times.size(); ++i) {
                os << format_number(times[i]) << ',' << format_number(c.waveform[i]) << ','
                   << format_number(c.envelope[i]) << ',' << format_number(std::fabs(c.envelope[i])) << '\n';
            }
        });
    };
    for (int k = 1; k <= 3; ++k) {
        write_curve("fig2_harmonic_k" + std::to_string(k) + ".csv", curves[static_cast<std::size_t>(k - 1)]);
    }
    write_curve("fig2_partial_sum_k1_5.csv", sum);

    write_file(dir / "fig2_all.csv", [&](std::ostream& os) {
        os << "time_s,k1_waveform_v,k1_envelope_v,k2_waveform_v,k2_envelope_v,k3_waveform_v,k3_envelope_v,"
              "sum_k1_5_waveform_v,sum_k1_5_envelope_v\n";
        for (std::size_t i = 0; i < times.size(); ++i) {
            os << format_number(times[i]);
            for (const auto& c : curves) {
                os << ',' << format_number(c.waveform[i]) << ',' << format_number(c.envelope[i]);
            }
            os << ',' << format_number(sum.waveform[i]) << ',' << format_number(sum.envelope[i]) << '\n';
        }
    });

    nlohmann::ordered_json schema;
    schema["description"] = "Emission band m = 1: modulation harmonics nu = 2k - 1 and their signed envelopes";
    schema["time_axis"] = "one fundamental period, " + std::to_string(points + 1) + " points including both ends";
    schema["files"]["fig2_harmonic_k{1,2,3}.csv"] = {
        {"time_s", "time [s]"},
        {"waveform_v", "single harmonic of band 1 [V]"},
        {"envelope_v", "signed envelope (band carrier removed) [V]"},
        {"abs_envelope_v", "magnitude of envelope_v [V]"}};
    schema["files"]["fig2_partial_sum_k1_5.csv"] = {
        {"time_s", "time [s]"},
        {"waveform_v", "sum of harmonics k = 1..5 [V]"},
        {"envelope_v", "sum of signed envelopes k = 1..5 [V]"},
        {"abs_envelope_v", "magnitude of envelope_v [V]"}};
    schema["files"]["fig2_all.csv"] = "all of the above side by side; columns <curve>_waveform_v, <curve>_envelope_v";
    write_file(dir / "fig2_schema.json", [&](std::ostream& os) { os << schema.dump(2) << '\n'; });
    out << "figure2: wrote 5 CSV files and fig2_schema.json to " << dir.string() << '\n';
}

int cmd_figure2(const CommonOptions& opts, std::ostream& out) {
    const Scenario s = resolve_scenario(opts);
    const fs::path dir = prepare_dir(opts.out_dir);
    if (!s.wants("figure2")) {
        out << "figure2: not in scenario outputs, nothing written\n";
        return kOk;
    }
    write_figure2(s, dir, out);
    return kOk;
}

int cmd_bands(const CommonOptions& opts, std::ostream& out) {
    const Scenario s = resolve_scenario(opts);
    const fs::path dir = prepare_dir(opts.out_dir);
    if (s.wants("bands")) {
        const auto bands = emission_bands(s.inverter, s.truncation);
        write_file(dir / "bands.json", [&](std::ostream& os) { os << bands_to_json(bands); });
        out << "bands: " << bands.size() << " emission bands -> " << (dir / "bands.json").string() << '\n';
    }
    if (s.wants("components")) {
        const auto table = component_table(s.inverter, s.truncation);
        write_file(dir / "components.csv", [&](std::ostream& os) { write_components_csv(os, table); });
        out << "bands: " << table.size() << " spectral components -> " << (dir / "components.csv").string() << '\n';
    }
    return kOk;
}

int cmd_spectrum(const CommonOptions& opts, std::ostream& out) {
    const Scenario s = resolve_scenario(opts);
    const fs::path dir = prepare_dir(opts.out_dir);
    if (s.wants("spectrum")) {
        const auto spec = dft_spectrum(simulate(s));
        write_file(dir / "spectrum.csv", [&](std::ostream& os) { write_spectrum_csv(os, spec); });
        out << "spectrum: " << spec.bins.size() << " bins of " << format_number(spec.bin_width) << " Hz -> "
            << (dir / "spectrum.csv").string() << '\n';
    }
    return kOk;
}

int cmd_simulate(const CommonOptions& opts, std::ostream& out) {
    const Scenario s = resolve_scenario(opts);
    const fs::path dir = prepare_dir(opts.out_dir);
    if (s.wants("waveform")) {
        const auto w = simulate(s);
        write_file(dir / "waveform.csv", [&](std::ostream& os) { write_waveform_csv(os, w); });
        out << "simulate: " << w.size() << " samples -> " << (dir / "waveform.csv").string() << '\n';
    }
    return kOk;
}

int cmd_verify(const CommonOptions& opts, std::ostream& out) {
    const Scenario s = resolve_scenario(opts);
    const auto report = run_verification(s);
    print_report(out, report);
    return report.all_passed() ? kOk : kCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Supraharmonic emission spectra of a naturally sampled H-bridge PWM inverter"};
    app.require_subcommand(1);

    CommonOptions opts;
    std::function<int(const CommonOptions&, std::ostream&)> action;
    const auto add = [&](const char* name, const char* help, int (*fn)(const CommonOptions&, std::ostream&)) {
        CLI::App* cmd = app.add_subcommand(name, help);
        add_common(cmd, opts);
        cmd->callback([&action, fn] { action = fn; });
    };
    add("figure2", "Band-1 harmonic waveforms and envelopes (k = 1..3, partial sum k = 1..5)", cmd_figure2);
    add("bands", "Emission band RMS table (bands.json) and sideband table (components.csv)", cmd_bands);
    add("spectrum", "RMS spectrum of the simulated bridge voltage (spectrum.csv)", cmd_spectrum);
    add("simulate", "Simulated bridge voltage samples (waveform.csv)", cmd_simulate);
    add("verify", "Cross-check simulation, original series and band form", cmd_verify);

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << '\n';
        return kConfigError;
    }

    try {
        return action(opts, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const IoError& e) {
        err << "io error: " << e.what() << '\n';
        return kIoError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kIoError;
    }
}

}  // namespace pwm_spectra::cli
