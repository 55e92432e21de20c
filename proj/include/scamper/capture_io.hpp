#pragma once

// Capture file format and TCP bridge.
//
// File layout: magic "SCAP", version octet 0x01, then per record an
// 8-octet big-endian arrival time (microseconds since Unix epoch), a
// 4-octet big-endian frame length, and the frame bytes.

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "scamper/errors.hpp"

namespace scamper {

struct CaptureRecord {
    std::uint64_t arrival_micros = 0;
    std::vector<std::uint8_t> frame_bytes;
    bool operator==(const CaptureRecord&) const = default;
};

void write_capture(const std::string& path, std::span<const CaptureRecord> records);
std::vector<CaptureRecord> read_capture(const std::string& path);

// Reassembles C37.118 frames from an arbitrary byte stream, using the
// FRAMESIZE field to delimit. Feed returns every frame completed by the
// chunk; partial tail bytes are kept for the next feed.
class FrameSegmenter {
public:
    // Throws SegmentationError when the stream cannot be a frame boundary
    // (wrong lead-in byte or an implausible FRAMESIZE).
    std::vector<std::vector<std::uint8_t>> feed(std::span<const std::uint8_t> chunk);

    std::size_t pending_bytes() const { return buf_.size(); }

private:
    std::vector<std::uint8_t> buf_;
};

enum class Pacing { as_recorded, max_speed };

// Sends the records' frame bytes back-to-back over one TCP connection.
// as_recorded pacing sleeps to reproduce the recorded inter-arrival gaps.
// Throws ConnectionFailed.
void tcp_send(const std::string& endpoint, std::span<const CaptureRecord> records, Pacing pacing);

// Accepts one connection on the listening endpoint and collects frames
// until the peer closes or `duration` seconds elapse (0 = until close).
// Arrival stamps come from the local clock.
std::vector<CaptureRecord> tcp_receive(const std::string& endpoint, double duration);

} // namespace scamper
