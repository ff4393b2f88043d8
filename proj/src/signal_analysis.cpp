#include "pwm_spectra/signal_analysis.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <string>

namespace pwm_spectra {

namespace {

// FFTW planning touches global state; execution on distinct plans does not.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

struct FftwBuffer {
    explicit FftwBuffer(std::size_t n) : data(fftw_alloc_complex(n)), size(n) {}
    ~FftwBuffer() { fftw_free(data); }
    FftwBuffer(const FftwBuffer&) = delete;
    FftwBuffer& operator=(const FftwBuffer&) = delete;

    fftw_complex* data;
    std::size_t size;
};

class Plan {
public:
    Plan(FftwBuffer& in, FftwBuffer& out, int sign) {
        std::lock_guard lock(planner_mutex());
        plan_ = fftw_plan_dft_1d(static_cast<int>(in.size), in.data, out.data, sign, FFTW_ESTIMATE);
    }
    ~Plan() {
        std::lock_guard lock(planner_mutex());
        fftw_destroy_plan(plan_);
    }
    Plan(const Plan&) = delete;
    Plan& operator=(const Plan&) = delete;

    void execute() const { fftw_execute(plan_); }

private:
    fftw_plan plan_;
};

void require_samples(const SampledWaveform& w, std::size_t minimum, const char* what) {
    if (!(w.sample_rate > 0.0) || !std::isfinite(w.sample_rate)) {
        throw ConfigError(std::string(what) + ": sample rate must be positive and finite");
    }
    if (w.samples.size() < minimum) {
        throw ConfigError(std::string(what) + ": need at least " + std::to_string(minimum) + " samples");
    }
}

// Forward transform of a real record, scaled by 1/N.
std::vector<std::complex<double>> forward(const SampledWaveform& w) {
    const std::size_t n = w.samples.size();
    FftwBuffer in(n);
    FftwBuffer out(n);
    const Plan plan(in, out, FFTW_FORWARD);
    for (std::size_t i = 0; i < n; ++i) {
        in.data[i][0] = w.samples[i];
        in.data[i][1] = 0.0;
    }
    plan.execute();
    std::vector<std::complex<double>> x(n);
    const double inv = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        x[i] = {out.data[i][0] * inv, out.data[i][1] * inv};
    }
    return x;
}

}  // namespace

SpectrumBins dft_spectrum(const SampledWaveform& w) {
    require_samples(w, 1, "dft_spectrum");
    const std::size_t n = w.samples.size();
    const auto x = forward(w);

    SpectrumBins s;
    s.bin_width = w.sample_rate / static_cast<double>(n);
    const std::size_t last = n / 2;
    s.bins.reserve(last + 1);
    for (std::size_t k = 0; k <= last; ++k) {
        const bool unpaired = (k == 0) || (n % 2 == 0 && k == last);
        SpectrumBin b;
        b.frequency = static_cast<double>(k) * s.bin_width;
        b.rms = std::abs(x[k]) * (unpaired ? 1.0 : std::sqrt(2.0));
        // Refer the phase to t = 0 rather than the first sample.
        const double shift = kTwoPi * b.frequency * w.start_time;
        b.phase = std::remainder(std::arg(x[k]) - shift, kTwoPi);
        s.bins.push_back(b);
    }
    return s;
}

double band_rms_from_spectrum(const SpectrumBins& s, int m, const InverterConfig& cfg) {
    if (m < 1) {
        throw ConfigError("band_rms_from_spectrum: m must be >= 1");
    }
    const double lo = (2.0 * m - 1.0) * cfg.f_carrier;
    const double hi = (2.0 * m + 1.0) * cfg.f_carrier;
    if (s.bins.empty() || hi > s.bins.back().frequency + 0.5 * s.bin_width) {
        throw ConfigError("band_rms_from_spectrum: band " + std::to_string(m) + " window exceeds Nyquist");
    }
    // Bin centers are multiples of bin_width; compare in bin units to avoid
    // rounding a center that sits exactly on an edge.
    const double lo_bin = lo / s.bin_width;
    const double hi_bin = hi / s.bin_width;
    double power = 0.0;
    for (std::size_t k = 0; k < s.bins.size(); ++k) {
        const double kb = static_cast<double>(k);
        if (kb >= lo_bin - 1e-9 && kb < hi_bin - 1e-9) {
            power += s.bins[k].rms * s.bins[k].rms;
        }
    }
    return std::sqrt(power);
}

std::vector<std::complex<double>> analytic_signal(const SampledWaveform& w) {
    require_samples(w, 64, "analytic_signal");
    const std::size_t n = w.samples.size();
    FftwBuffer buf(n);
    FftwBuffer spec(n);
    const Plan fwd(buf, spec, FFTW_FORWARD);
    const Plan inv(spec, buf, FFTW_BACKWARD);
    for (std::size_t i = 0; i < n; ++i) {
        buf.data[i][0] = w.samples[i];
        buf.data[i][1] = 0.0;
    }
    fwd.execute();
    // Keep DC (and Nyquist for even n), double positive, zero negative frequencies.
    const std::size_t half = (n + 1) / 2;
    for (std::size_t k = 1; k < n; ++k) {
        double factor = 0.0;
        if (k < half) {
            factor = 2.0;
        } else if (n % 2 == 0 && k == n / 2) {
            factor = 1.0;
        }
        spec.data[k][0] *= factor;
        spec.data[k][1] *= factor;
    }
    inv.execute();
    std::vector<std::complex<double>> z(n);
    const double scale = 1.0 / static_cast<double>(n);
    for (std::size_t i = 0; i < n; ++i) {
        z[i] = {buf.data[i][0] * scale, buf.data[i][1] * scale};
    }
    return z;
}

SampledWaveform hilbert_envelope(const SampledWaveform& w) {
    const auto z = analytic_signal(w);
    SampledWaveform env{w.sample_rate, w.start_time, std::vector<double>(z.size())};
    for (std::size_t i = 0; i < z.size(); ++i) {
        env.samples[i] = std::abs(z[i]);
    }
    return env;
}

double waveform_rms(const SampledWaveform& w) {
    if (w.samples.empty()) {
        throw ConfigError("waveform_rms: empty waveform");
    }
    double sum = 0.0;
    for (double v : w.samples) {
        sum += v * v;
    }
    return std::sqrt(sum / static_cast<double>(w.samples.size()));
}

double correlate_cosine(const SampledWaveform& w, double frequency, double phase) {
    require_samples(w, 1, "correlate_cosine");
    double sum = 0.0;
    for (std::size_t i = 0; i < w.samples.size(); ++i) {
        sum += w.samples[i] * std::cos(kTwoPi * frequency * w.time_at(i) + phase);
    }
    return 2.0 * sum / static_cast<double>(w.samples.size());
}

}  // namespace pwm_spectra
