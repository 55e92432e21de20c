#pragma once

// IEEE C37.118 data-frame codec: byte-exact parse/serialize, CRC-16,
// and FRACSEC <-> fractional-second conversion.
//
// Only data frames are handled. Stream shape (PMU count, channel counts,
// number formats) comes from a StreamConfig sidecar rather than from
// CFG frames.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scamper/errors.hpp"

namespace scamper {

// SYNC word for a data frame: lead-in 0xAA, frame type bits 6-4 = 000,
// version nibble 1.
inline constexpr std::uint16_t kSyncData = 0xAA01;
inline constexpr std::uint32_t kFracsecMax = 0xFFFFFF;
inline constexpr std::size_t kHeaderSize = 14; // SYNC..FRACSEC inclusive
inline constexpr std::size_t kChkSize = 2;
inline constexpr std::size_t kSocOffset = 6;
inline constexpr std::size_t kTimeFlagsOffset = 10;
inline constexpr std::size_t kFracsecOffset = 11; // 3 bytes, big-endian

enum class PhasorFormat { int16_rect, float32_rect, float32_polar };
enum class NumberFormat { int16, float32 };

struct PmuConfig {
    std::size_t phasor_count = 0;
    std::size_t analog_count = 0;
    std::size_t digital_word_count = 0;
    PhasorFormat phasor_format = PhasorFormat::float32_polar;
    NumberFormat analog_format = NumberFormat::float32;
    NumberFormat freq_format = NumberFormat::float32;

    std::size_t block_size() const;
};

struct StreamConfig {
    std::uint16_t id_code = 1;
    std::uint32_t timebase = 1'000'000; // ticks per second, 1..0xFFFFFF
    std::uint32_t update_rate = 60;     // frames per second
    std::vector<PmuConfig> pmus;

    // Total serialized frame length implied by this config.
    std::size_t frame_size() const;

    // Throws ConfigMismatch if any invariant is violated (timebase range,
    // update_rate >= 1, pmus non-empty, frame size beyond 16 bits).
    void validate() const;
};

// One phasor as carried on the wire: (re, im) for rectangular formats,
// (magnitude, angle-in-radians) for polar. Stored as float so float32
// wire values round-trip bit-exactly.
struct PhasorValue {
    float a = 0.0f;
    float b = 0.0f;
    bool operator==(const PhasorValue&) const = default;
};

struct PmuBlock {
    std::uint16_t stat = 0;
    std::vector<PhasorValue> phasors;
    float freq = 0.0f;
    float dfreq = 0.0f;
    std::vector<float> analogs;
    std::vector<std::uint16_t> digitals;
    bool operator==(const PmuBlock&) const = default;
};

struct DataFrame {
    std::uint16_t sync = kSyncData;
    std::uint16_t frame_size = 0; // recomputed on serialize
    std::uint16_t id_code = 0;
    std::uint32_t soc = 0;        // seconds since Unix epoch
    std::uint8_t time_flags = 0;  // leap/time-quality byte, carried opaquely
    std::uint32_t fracsec = 0;    // 24-bit, units of 1/timebase seconds
    std::vector<PmuBlock> pmu_blocks;
    std::uint16_t chk = 0;        // recomputed on serialize
    bool operator==(const DataFrame&) const = default;
};

// CRC-16/CCITT-FALSE: poly 0x1021, init 0xFFFF, no reflection, no xorout.
std::uint16_t compute_crc(std::span<const std::uint8_t> bytes);

// round(t * timebase), half-up. Throws OutOfRange unless 0 <= t < 1 and
// 1 <= timebase <= 0xFFFFFF.
std::uint32_t fracsec_encode(double t, std::uint32_t timebase);

// raw / timebase. No masking; callers mask covert bits first when needed.
double fracsec_decode(std::uint32_t raw, std::uint32_t timebase);

enum class FrameError { none, bad_sync, size_mismatch, bad_crc };

const char* frame_error_name(FrameError e);

struct ParseResult {
    FrameError error = FrameError::none;
    // Present on success and on bad_crc (forensic decode of tampered
    // traffic); absent when the structure itself is unusable.
    std::optional<DataFrame> frame;
    std::uint16_t crc_expected = 0; // valid when error == bad_crc
    std::uint16_t crc_found = 0;
    std::string message;

    bool ok() const { return error == FrameError::none; }
};

// Decodes one data frame. Never throws on malformed input; the error is
// carried in the result.
ParseResult parse_frame(std::span<const std::uint8_t> bytes, const StreamConfig& config);

// Convenience wrapper that throws scamper::Error on any parse failure.
DataFrame parse_frame_strict(std::span<const std::uint8_t> bytes, const StreamConfig& config);

// Emits big-endian bytes with FRAMESIZE and CHK freshly computed.
// Throws ConfigMismatch when block shapes disagree with the config.
std::vector<std::uint8_t> serialize_frame(const DataFrame& frame, const StreamConfig& config);

// Recomputes frame.frame_size and frame.chk in place so the struct
// matches its own serialization.
void finalize_frame(DataFrame& frame, const StreamConfig& config);

} // namespace scamper
