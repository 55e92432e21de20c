#include "scamper/covert_channel.hpp"

#include <algorithm>
#include <bit>
#include <string>

namespace scamper {

namespace {

constexpr unsigned kMaxHighBits = 4;
constexpr unsigned kMaxLowBits = 8;

// Bit i (MSB-first across the whole payload) of the message, 0 when past
// the end: the final partial chunk is zero-padded on the right.
std::uint32_t chunk_at(std::span<const std::uint8_t> payload, std::size_t chunk, unsigned k) {
    std::size_t total_bits = payload.size() * 8;
    std::uint32_t v = 0;
    for (unsigned j = 0; j < k; ++j) {
        std::size_t bit = chunk * k + j;
        unsigned b = 0;
        if (bit < total_bits)
            b = (payload[bit / 8] >> (7 - bit % 8)) & 1u;
        v = v << 1 | b;
    }
    return v;
}

} // namespace

const char* plan_mode_name(PlanMode m) {
    return m == PlanMode::high_bits ? "high-bits" : "low-bits";
}

BitPlan make_plan(PlanMode mode, unsigned k) {
    unsigned cap = mode == PlanMode::high_bits ? kMaxHighBits : kMaxLowBits;
    if (k < 1 || k > cap)
        throw KTooLarge("k=" + std::to_string(k) + " outside 1.." + std::to_string(cap) +
                        " for " + plan_mode_name(mode) + " mode");
    return BitPlan{mode, k};
}

unsigned unused_high_bits(std::uint32_t timebase) {
    // Max valid raw value is timebase - 1 (fraction < 1 second).
    unsigned used = std::bit_width(timebase - 1);
    return 24 - used;
}

BitPlan plan_for_timebase(std::uint32_t timebase, unsigned k) {
    if (timebase < 1 || timebase > kFracsecMax)
        throw OutOfRange("timebase out of range: " + std::to_string(timebase));
    if (k < 1)
        throw KTooLarge("k must be >= 1");
    unsigned unused = unused_high_bits(timebase);
    if (unused == 0)
        return make_plan(PlanMode::low_bits, k); // only noise bits are usable
    unsigned budget = std::min(unused, kMaxHighBits);
    if (k > budget)
        throw KTooLarge("k=" + std::to_string(k) + " exceeds the " + std::to_string(budget) +
                        "-bit high-bits budget at timebase " + std::to_string(timebase));
    return BitPlan{PlanMode::high_bits, k};
}

DataFrame embed_bits(const DataFrame& frame, std::uint32_t bits, const BitPlan& plan,
                     const StreamConfig& config) {
    if (bits >> plan.k)
        throw OutOfRange("covert value " + std::to_string(bits) + " does not fit in k=" +
                         std::to_string(plan.k) + " bits");
    DataFrame out = frame;
    out.fracsec = (frame.fracsec & ~plan.mask()) | (bits << plan.shift());
    finalize_frame(out, config);
    return out;
}

std::uint32_t extract_bits(const DataFrame& frame, const BitPlan& plan) {
    return (frame.fracsec & plan.mask()) >> plan.shift();
}

std::vector<DataFrame> encode_message(const CovertMessage& msg, std::span<const DataFrame> frames,
                                      const BitPlan& plan, const StreamConfig& config) {
    std::size_t total_bits = msg.payload.size() * 8;
    std::size_t needed = (total_bits + plan.k - 1) / plan.k;
    if (frames.size() < needed)
        throw InsufficientFrames("message needs " + std::to_string(needed) + " frames, got " +
                                 std::to_string(frames.size()));
    std::vector<DataFrame> out;
    out.reserve(frames.size());
    for (std::size_t i = 0; i < frames.size(); ++i) {
        if (i < needed)
            out.push_back(embed_bits(frames[i], chunk_at(msg.payload, i, plan.k), plan, config));
        else
            out.push_back(frames[i]);
    }
    return out;
}

CovertMessage decode_message(std::span<const DataFrame> frames, const BitPlan& plan,
                             std::size_t byte_len) {
    std::size_t needed = (byte_len * 8 + plan.k - 1) / plan.k;
    if (frames.size() < needed)
        throw InsufficientFrames("decoding " + std::to_string(byte_len) + " bytes needs " +
                                 std::to_string(needed) + " frames, got " +
                                 std::to_string(frames.size()));
    CovertMessage msg;
    msg.payload.assign(byte_len, 0);
    std::size_t bit = 0;
    for (std::size_t i = 0; i < needed; ++i) {
        std::uint32_t chunk = extract_bits(frames[i], plan);
        for (unsigned j = 0; j < plan.k && bit < byte_len * 8; ++j, ++bit) {
            unsigned b = (chunk >> (plan.k - 1 - j)) & 1u;
            msg.payload[bit / 8] = static_cast<std::uint8_t>(msg.payload[bit / 8] |
                                                             (b << (7 - bit % 8)));
        }
    }
    return msg;
}

std::uint64_t channel_capacity(unsigned k, std::uint32_t frames_per_second) {
    return static_cast<std::uint64_t>(k) * frames_per_second;
}

double distortion_bound(const BitPlan& plan, std::uint32_t timebase) {
    if (plan.mode == PlanMode::high_bits)
        return 0.0;
    return static_cast<double>((1u << plan.k) - 1) / static_cast<double>(timebase);
}

} // namespace scamper
