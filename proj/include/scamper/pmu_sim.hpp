#pragma once

// Synthetic C37.118 data-stream generator: steady-state rotating phasor
// with multiplicative noise, Gaussian timestamp jitter on both the
// embedded time and the wire-arrival time. Deterministic per seed.

#include <cstdint>
#include <span>
#include <vector>

#include "scamper/c37_codec.hpp"
#include "scamper/capture_io.hpp"

namespace scamper {

struct SimConfig {
    StreamConfig stream;
    double duration = 10.0;              // seconds
    std::uint32_t start_soc = 1'700'000'000;
    double phasor_magnitude = 120.0;     // volts
    double phasor_noise_sigma = 1e-4;    // relative
    double frequency = 60.0;             // Hz
    double timestamp_jitter_sigma = 50e-6; // seconds
    std::uint64_t rng_seed = 1;
};

struct SimFrame {
    std::uint64_t arrival_micros = 0; // microseconds since Unix epoch
    DataFrame frame;
};

// Emits floor(duration * update_rate) frames. Embedded timestamps are
// strictly increasing (jitter clamped to at least one tick of progress);
// every frame carries a valid CRC.
std::vector<SimFrame> generate_stream(const SimConfig& cfg);

// Serializes simulator output into capture records.
std::vector<CaptureRecord> to_capture(std::span<const SimFrame> frames,
                                      const StreamConfig& config);

} // namespace scamper
