#include "scamper/pmu_sim.hpp"

#include <cmath>
#include <numbers>
#include <random>

namespace scamper {

namespace {

// Box-Muller over the raw engine, so the draw sequence does not depend
// on the standard library's normal_distribution internals.
class Gaussian {
public:
    explicit Gaussian(std::uint64_t seed) : rng_(seed) {}

    double operator()(double sigma) {
        if (have_spare_) {
            have_spare_ = false;
            return spare_ * sigma;
        }
        double u1, u2;
        do {
            u1 = uniform();
        } while (u1 <= 0.0);
        u2 = uniform();
        double r = std::sqrt(-2.0 * std::log(u1));
        double theta = 2.0 * std::numbers::pi * u2;
        spare_ = r * std::sin(theta);
        have_spare_ = true;
        return r * std::cos(theta) * sigma;
    }

private:
    double uniform() {
        return static_cast<double>(rng_() >> 11) * 0x1.0p-53;
    }

    std::mt19937_64 rng_;
    double spare_ = 0.0;
    bool have_spare_ = false;
};

} // namespace

std::vector<SimFrame> generate_stream(const SimConfig& cfg) {
    cfg.stream.validate();
    if (cfg.duration <= 0.0)
        throw OutOfRange("duration must be positive");
    if (cfg.phasor_noise_sigma < 0.0 || cfg.timestamp_jitter_sigma < 0.0)
        throw OutOfRange("noise sigmas must be non-negative");

    const std::uint32_t rate = cfg.stream.update_rate;
    const std::uint32_t timebase = cfg.stream.timebase;
    const auto count = static_cast<std::size_t>(cfg.duration * rate);
    Gaussian noise(cfg.rng_seed);

    std::vector<SimFrame> out;
    out.reserve(count);
    std::int64_t prev_ticks = -1;
    for (std::size_t i = 0; i < count; ++i) {
        double offset = static_cast<double>(i) / rate; // relative to start_soc
        // embedded timestamp in integer ticks, monotonicity enforced
        std::int64_t ticks = static_cast<std::int64_t>(cfg.start_soc) * timebase +
                             std::llround((offset + noise(cfg.timestamp_jitter_sigma)) * timebase);
        if (ticks <= prev_ticks)
            ticks = prev_ticks + 1;
        prev_ticks = ticks;

        DataFrame f;
        f.id_code = cfg.stream.id_code;
        f.soc = static_cast<std::uint32_t>(ticks / timebase);
        f.fracsec = static_cast<std::uint32_t>(ticks % timebase);

        double angle = std::fmod(2.0 * std::numbers::pi * cfg.frequency * offset,
                                 2.0 * std::numbers::pi);
        if (angle >= std::numbers::pi)
            angle -= 2.0 * std::numbers::pi;
        for (const auto& pmu : cfg.stream.pmus) {
            PmuBlock blk;
            for (std::size_t p = 0; p < pmu.phasor_count; ++p) {
                double mag = cfg.phasor_magnitude * (1.0 + noise(cfg.phasor_noise_sigma));
                if (pmu.phasor_format == PhasorFormat::float32_polar) {
                    blk.phasors.push_back({static_cast<float>(mag), static_cast<float>(angle)});
                } else {
                    blk.phasors.push_back({static_cast<float>(mag * std::cos(angle)),
                                           static_cast<float>(mag * std::sin(angle))});
                }
            }
            blk.freq = static_cast<float>(cfg.frequency);
            blk.dfreq = 0.0f;
            blk.analogs.assign(pmu.analog_count, 0.0f);
            blk.digitals.assign(pmu.digital_word_count, 0);
            f.pmu_blocks.push_back(std::move(blk));
        }
        finalize_frame(f, cfg.stream);

        SimFrame rec;
        // arrival = embedded time + independent jitter
        double embedded_offset =
            static_cast<double>(ticks - static_cast<std::int64_t>(cfg.start_soc) * timebase) /
            timebase;
        std::int64_t arrival =
            static_cast<std::int64_t>(cfg.start_soc) * 1'000'000 +
            std::llround((embedded_offset + noise(cfg.timestamp_jitter_sigma)) * 1e6);
        rec.arrival_micros = static_cast<std::uint64_t>(arrival);
        rec.frame = std::move(f);
        out.push_back(std::move(rec));
    }
    return out;
}

std::vector<CaptureRecord> to_capture(std::span<const SimFrame> frames,
                                      const StreamConfig& config) {
    std::vector<CaptureRecord> out;
    out.reserve(frames.size());
    for (const auto& sf : frames)
        out.push_back({sf.arrival_micros, serialize_frame(sf.frame, config)});
    return out;
}

} // namespace scamper
