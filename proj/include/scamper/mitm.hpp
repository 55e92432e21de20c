#pragma once

// In-transit adversary transforms: false data injection on phasor values
// (with CRC fix-up) and verbatim replay of earlier stream segments. The
// adversary is C37.118-aware but unaware of the covert integrity layer.
//
// Frames are selected by wire-arrival time relative to the first record,
// which is what an in-line adversary actually observes; the FRACSEC field
// of a protected stream may carry covert bits and does not decode to a
// wall-clock offset.

#include <cstdint>
#include <span>
#include <vector>

#include "scamper/c37_codec.hpp"
#include "scamper/capture_io.hpp"

namespace scamper {

enum class AttackKind { none, fdi, replay };
enum class PerturbKind { multiplicative, additive };

struct AttackSpec {
    AttackKind kind = AttackKind::none;
    double t_start = 0.0; // seconds relative to stream start, half-open [t_start, t_end)
    double t_end = 0.0;
    std::size_t pmu_index = 0;
    std::size_t phasor_index = 0;
    PerturbKind perturbation = PerturbKind::multiplicative;
    double magnitude = 1.05;
    double source_start = 0.0; // replay only
    double source_end = 0.0;
};

// Perturbs the targeted phasor of every frame arriving within the active
// interval and recomputes CHK; all other bytes pass through untouched.
// Throws TargetOutOfRange when the target indices do not exist.
std::vector<CaptureRecord> apply_fdi(std::span<const CaptureRecord> stream,
                                     const AttackSpec& spec, const StreamConfig& config);

// Replaces the frames arriving within the active interval with a verbatim
// copy of the frames from the source interval; the arrival schedule keeps
// the original times. Throws IntervalMismatch when the frame counts
// differ.
std::vector<CaptureRecord> apply_replay(std::span<const CaptureRecord> stream,
                                        const AttackSpec& spec, const StreamConfig& config);

// Dispatch on spec.kind; `none` copies the stream through.
std::vector<CaptureRecord> apply_attack(std::span<const CaptureRecord> stream,
                                        const AttackSpec& spec, const StreamConfig& config);

} // namespace scamper
