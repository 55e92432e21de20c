#pragma once

// Covert bitstream embedding in the overprovisioned FRACSEC field.
//
// Two carrier modes exist, keyed to the stream's TIMEBASE:
//   high-bits: TIMEBASE caps the valid FRACSEC range below 2^24, so the
//              top bits can never occur in compliant traffic and are free
//              carrier space (4 bits at TIMEBASE 1e6).
//   low-bits:  at TIMEBASE 0xFFFFFF every raw value is valid, but the
//              bottom bits are below real-world clock accuracy and act
//              as noise.

#include <cstdint>
#include <span>
#include <vector>

#include "scamper/c37_codec.hpp"

namespace scamper {

enum class PlanMode { low_bits, high_bits };

struct BitPlan {
    PlanMode mode = PlanMode::high_bits;
    unsigned k = 4; // covert bits per frame

    // 24-bit mask of the covert positions.
    std::uint32_t mask() const {
        std::uint32_t bits = (1u << k) - 1;
        return mode == PlanMode::high_bits ? bits << (24 - k) : bits;
    }
    unsigned shift() const { return mode == PlanMode::high_bits ? 24 - k : 0; }
    bool operator==(const BitPlan&) const = default;
};

const char* plan_mode_name(PlanMode m);

// Validates the static k budget (high-bits: k <= 4, low-bits: k <= 8).
// Throws KTooLarge.
BitPlan make_plan(PlanMode mode, unsigned k);

// Number of FRACSEC top bits that can never be set in compliant traffic
// (max valid raw value is timebase - 1).
unsigned unused_high_bits(std::uint32_t timebase);

// Picks the carrier mode for a timebase: high-bits when the unused top
// bits cover k, low-bits otherwise. Throws KTooLarge when k exceeds the
// budget of the selected mode.
BitPlan plan_for_timebase(std::uint32_t timebase, unsigned k);

// Replaces the plan's covert positions of frame.fracsec with `bits`
// (bits < 2^k) and recomputes CHK. Everything else is byte-identical.
DataFrame embed_bits(const DataFrame& frame, std::uint32_t bits, const BitPlan& plan,
                     const StreamConfig& config);

std::uint32_t extract_bits(const DataFrame& frame, const BitPlan& plan);

struct CovertMessage {
    std::vector<std::uint8_t> payload; // bit order is fixed MSB-first
    bool operator==(const CovertMessage&) const = default;
};

// Splits the MSB-first payload bitstream into k-bit chunks (last chunk
// zero-padded on the right) and embeds chunk i into frames[i]. Frames
// beyond the message pass through untouched. Throws InsufficientFrames.
std::vector<DataFrame> encode_message(const CovertMessage& msg, std::span<const DataFrame> frames,
                                      const BitPlan& plan, const StreamConfig& config);

// Inverse of encode_message for a known payload length.
CovertMessage decode_message(std::span<const DataFrame> frames, const BitPlan& plan,
                             std::size_t byte_len);

// Raw channel bandwidth in bits per second: k bits per frame at n frames
// per second.
std::uint64_t channel_capacity(unsigned k, std::uint32_t frames_per_second);

// Worst-case shift of the standard-decoded timestamp, in seconds.
// High-bits carriers cost nothing once the reader masks the unused top
// bits; low-bits carriers shift the value by at most 2^k - 1 ticks.
double distortion_bound(const BitPlan& plan, std::uint32_t timebase);

} // namespace scamper
