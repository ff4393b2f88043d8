#pragma once

#include <stdexcept>
#include <vector>

namespace pwm_spectra {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// Operating point of a single-phase H-bridge with a split DC link.
struct InverterConfig {
    double u_dc_link = 400.0;    // full DC link voltage [V]
    double u_ab_co_rms = 230.0;  // intended fundamental output [V rms]
    double f_network = 50.0;     // [Hz]
    double phi_network = 0.0;    // [rad]
    double f_carrier = 1000.0;   // [Hz]
    double phi_carrier = 0.0;    // [rad]

    double omega_network() const { return kTwoPi * f_network; }
    double omega_carrier() const { return kTwoPi * f_carrier; }
    double period() const { return 1.0 / f_network; }
};

/// Throws ConfigError on a non-physical configuration or overmodulation.
void validate(const InverterConfig& cfg);

/// M = sqrt(2) * U_ab,CO / U_DC. Throws ConfigError when M > 1.
double modulation_index(const InverterConfig& cfg);

struct SampledWaveform {
    double sample_rate = 0.0;
    double start_time = 0.0;
    std::vector<double> samples;

    std::size_t size() const { return samples.size(); }
    double time_at(std::size_t i) const { return start_time + static_cast<double>(i) / sample_rate; }
};

/// Builds a waveform from explicit timestamps; throws ConfigError when the
/// times are not uniformly spaced (relative spacing jitter above 1e-9).
SampledWaveform make_waveform(const std::vector<double>& times, std::vector<double> values);

/// Uniform time grid t_i = start + i / sample_rate, i < count.
std::vector<double> time_grid(double start, double sample_rate, std::size_t count);

/// Unit triangular carrier, 2*pi periodic and even: +1 at 0, -1 at pi.
double triangular_carrier(double theta);

/// One comparator transition of a bridge leg.
struct SwitchingEdge {
    double time;
    bool rising;  // leg goes from -U_DC/2 to +U_DC/2
};

struct LegEdges {
    bool initial_high = false;  // state at the start of the interval
    std::vector<SwitchingEdge> edges;
};

/// Switching instants of one leg on [0, duration); leg_sign = +1 for leg a
/// (reference +M cos) and -1 for leg b. Instants are bisected to 1e-12 s.
LegEdges leg_switching_edges(const InverterConfig& cfg, int leg_sign, double duration);

/// Lowest sample rate accepted by simulate_hbridge.
double min_sample_rate(const InverterConfig& cfg);

/// Naturally sampled bipolar-carrier H-bridge output u_ab = u_a - u_b.
///
/// duration must be a whole number of fundamental periods and
/// duration * sample_rate a whole number of samples. Throws ConfigError
/// on overmodulation, a sample rate below min_sample_rate, or a bad duration.
SampledWaveform simulate_hbridge(const InverterConfig& cfg, double duration, double sample_rate);

}  // namespace pwm_spectra
