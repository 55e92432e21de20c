#pragma once

// Windowed cryptographic data-integrity layer carried over the covert
// channel. The sender hashes each window of N = ceil(h/k) frames and
// emits the digest bits, k per frame, across the following window; the
// verifier recomputes the hash per window and checks the bits it
// collects one window later. A machine-in-the-middle that alters any
// covered byte breaks the comparison for the containing window.
//
// Hash input per window: the concatenated canonical payloads of its
// frames, then an 8-byte big-endian copy of the window's first-frame
// SOC (the low-resolution timestamp that, with the verifier-side
// monotonicity check, makes verbatim replays detectable).

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "scamper/ascon.hpp"
#include "scamper/covert_channel.hpp"

namespace scamper {

struct IntegrityParams {
    unsigned hash_bits = 128; // h, positive multiple of 8
    BitPlan plan;

    unsigned window_len() const { return (hash_bits + plan.k - 1) / plan.k; } // N
    void validate() const;
};

// Serialized frame bytes with the covert FRACSEC positions and the CHK
// field forced to zero: everything a MITM could usefully tamper with is
// covered, while the embedded hash bits themselves are not.
std::vector<std::uint8_t> canonical_payload(const DataFrame& frame, const BitPlan& plan,
                                            const StreamConfig& config);

// Big-endian 64-bit encoding of the window's first-frame SOC.
std::array<std::uint8_t, 8> window_counter_bytes(std::uint64_t window_first_soc);

// FRACSEC with covert positions cleared when they fall outside the valid
// value range (high-bits mode); low-bits values are left as transmitted.
std::uint32_t timestamp_fracsec(std::uint32_t fracsec, const BitPlan& plan);

enum class VerdictStatus { ok, hash_mismatch, replay_suspected, unverifiable_bootstrap, incomplete };

const char* verdict_status_name(VerdictStatus s);

struct WindowVerdict {
    std::uint64_t window_index = 0; // 1-based
    VerdictStatus status = VerdictStatus::ok;
    std::uint32_t first_soc = 0;
    std::uint32_t first_fracsec = 0; // timestamp_fracsec ticks
    std::uint32_t last_soc = 0;
    std::uint32_t last_fracsec = 0;
    double first_time = 0.0; // soc + fracsec/timebase
    double last_time = 0.0;
    bool operator==(const WindowVerdict&) const = default;
};

class IntegritySender {
public:
    IntegritySender(IntegrityParams params, StreamConfig config);

    // Embeds the next k digest bits into the frame and accounts for it in
    // the current window. Frames must arrive in stream order.
    DataFrame ingest(const DataFrame& frame);

    std::uint64_t windows_completed() const { return windows_completed_; }

private:
    IntegrityParams params_;
    StreamConfig config_;
    std::vector<std::uint8_t> pending_digest_; // all-zero until the first boundary
    std::vector<std::uint8_t> buffer_;
    unsigned frames_in_window_ = 0;
    std::uint32_t window_first_soc_ = 0;
    std::uint64_t windows_completed_ = 0;
};

class IntegrityVerifier {
public:
    IntegrityVerifier(IntegrityParams params, StreamConfig config);

    // Returns a verdict at window boundaries: the bootstrap notice for
    // window 1, otherwise the attestation of the previous window -- or a
    // replay flag for the window just completed when its start time does
    // not advance past everything seen before.
    std::optional<WindowVerdict> ingest(const DataFrame& frame);

    // Call once at stream end. Resolves the last complete window from
    // whatever digest bits arrived (a differing prefix still convicts)
    // and marks the trailing partial window, if any, as incomplete.
    std::vector<WindowVerdict> finish();

    std::uint64_t windows_completed() const { return windows_completed_; }

private:
    struct Span {
        std::uint32_t first_soc = 0, first_frac = 0;
        std::uint32_t last_soc = 0, last_frac = 0;
    };

    WindowVerdict make_verdict(std::uint64_t index, VerdictStatus status, const Span& span) const;

    IntegrityParams params_;
    StreamConfig config_;
    std::vector<std::uint8_t> buffer_;
    std::vector<std::uint8_t> collected_bits_; // bit-packed, MSB-first
    unsigned collected_count_ = 0;
    std::optional<std::vector<std::uint8_t>> expected_; // H' of previous window
    std::optional<std::pair<std::uint32_t, std::uint32_t>> high_water_; // max window start
    unsigned frames_in_window_ = 0;
    Span current_;
    Span previous_;
    std::uint64_t windows_completed_ = 0;
    std::uint64_t replay_flagged_ = 0; // window index already reported at its own boundary
};

} // namespace scamper
