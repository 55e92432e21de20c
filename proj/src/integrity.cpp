#include "scamper/integrity.hpp"

#include <string>

#include "scamper/bytes.hpp"

namespace scamper {

namespace {

// Digest bit j (MSB-first), 0 past the end: the tail of the final k-bit
// chunk is zero-padded when k does not divide h.
std::uint32_t digest_chunk(const std::vector<std::uint8_t>& digest, unsigned chunk, unsigned k,
                           unsigned h) {
    std::uint32_t v = 0;
    for (unsigned j = 0; j < k; ++j) {
        unsigned bit = chunk * k + j;
        unsigned b = bit < h ? (digest[bit / 8] >> (7 - bit % 8)) & 1u : 0u;
        v = v << 1 | b;
    }
    return v;
}

std::vector<std::uint8_t> window_hash(const std::vector<std::uint8_t>& buffer,
                                      std::uint32_t first_soc, unsigned h) {
    AsconXof128 x;
    x.update(buffer);
    x.update(window_counter_bytes(first_soc));
    return x.finish(h);
}

} // namespace

void IntegrityParams::validate() const {
    if (hash_bits == 0 || hash_bits % 8 != 0)
        throw OutOfRange("hash_bits must be a positive multiple of 8, got " +
                         std::to_string(hash_bits));
}

std::vector<std::uint8_t> canonical_payload(const DataFrame& frame, const BitPlan& plan,
                                            const StreamConfig& config) {
    auto bytes = serialize_frame(frame, config);
    std::uint32_t m = plan.mask();
    bytes[kFracsecOffset] &= static_cast<std::uint8_t>(~(m >> 16));
    bytes[kFracsecOffset + 1] &= static_cast<std::uint8_t>(~(m >> 8));
    bytes[kFracsecOffset + 2] &= static_cast<std::uint8_t>(~m);
    bytes[bytes.size() - 2] = 0;
    bytes[bytes.size() - 1] = 0;
    return bytes;
}

std::array<std::uint8_t, 8> window_counter_bytes(std::uint64_t window_first_soc) {
    std::array<std::uint8_t, 8> out;
    store_u64_be(window_first_soc, out.data());
    return out;
}

std::uint32_t timestamp_fracsec(std::uint32_t fracsec, const BitPlan& plan) {
    if (plan.mode == PlanMode::high_bits)
        return fracsec & ~plan.mask();
    return fracsec;
}

const char* verdict_status_name(VerdictStatus s) {
    switch (s) {
    case VerdictStatus::ok: return "ok";
    case VerdictStatus::hash_mismatch: return "hash-mismatch";
    case VerdictStatus::replay_suspected: return "replay-suspected";
    case VerdictStatus::unverifiable_bootstrap: return "unverifiable-bootstrap";
    case VerdictStatus::incomplete: return "incomplete";
    }
    return "?";
}

IntegritySender::IntegritySender(IntegrityParams params, StreamConfig config)
    : params_(params), config_(std::move(config)) {
    params_.validate();
    config_.validate();
    pending_digest_.assign(params_.hash_bits / 8, 0); // bootstrap: all-zero bits
}

DataFrame IntegritySender::ingest(const DataFrame& frame) {
    if (frames_in_window_ == 0)
        window_first_soc_ = frame.soc;
    std::uint32_t chunk =
        digest_chunk(pending_digest_, frames_in_window_, params_.plan.k, params_.hash_bits);
    DataFrame protected_frame = embed_bits(frame, chunk, params_.plan, config_);
    auto canonical = canonical_payload(protected_frame, params_.plan, config_);
    buffer_.insert(buffer_.end(), canonical.begin(), canonical.end());
    ++frames_in_window_;
    if (frames_in_window_ == params_.window_len()) {
        pending_digest_ = window_hash(buffer_, window_first_soc_, params_.hash_bits);
        buffer_.clear();
        frames_in_window_ = 0;
        ++windows_completed_;
    }
    return protected_frame;
}

IntegrityVerifier::IntegrityVerifier(IntegrityParams params, StreamConfig config)
    : params_(params), config_(std::move(config)) {
    params_.validate();
    config_.validate();
}

WindowVerdict IntegrityVerifier::make_verdict(std::uint64_t index, VerdictStatus status,
                                              const Span& span) const {
    WindowVerdict v;
    v.window_index = index;
    v.status = status;
    v.first_soc = span.first_soc;
    v.first_fracsec = span.first_frac;
    v.last_soc = span.last_soc;
    v.last_fracsec = span.last_frac;
    v.first_time = span.first_soc + fracsec_decode(span.first_frac, config_.timebase);
    v.last_time = span.last_soc + fracsec_decode(span.last_frac, config_.timebase);
    return v;
}

std::optional<WindowVerdict> IntegrityVerifier::ingest(const DataFrame& frame) {
    std::uint32_t ts_frac = timestamp_fracsec(frame.fracsec, params_.plan);
    if (frames_in_window_ == 0) {
        current_.first_soc = frame.soc;
        current_.first_frac = ts_frac;
    }
    current_.last_soc = frame.soc;
    current_.last_frac = ts_frac;

    std::uint32_t chunk = extract_bits(frame, params_.plan);
    for (unsigned j = 0; j < params_.plan.k; ++j) {
        if (collected_count_ % 8 == 0)
            collected_bits_.push_back(0);
        unsigned b = (chunk >> (params_.plan.k - 1 - j)) & 1u;
        collected_bits_.back() = static_cast<std::uint8_t>(
            collected_bits_.back() | (b << (7 - collected_count_ % 8)));
        ++collected_count_;
    }
    auto canonical = canonical_payload(frame, params_.plan, config_);
    buffer_.insert(buffer_.end(), canonical.begin(), canonical.end());
    ++frames_in_window_;
    if (frames_in_window_ < params_.window_len())
        return std::nullopt;

    // window boundary
    std::uint64_t index = ++windows_completed_;
    std::optional<WindowVerdict> verdict;
    auto start = std::make_pair(current_.first_soc, current_.first_frac);
    if (index == 1) {
        verdict = make_verdict(1, VerdictStatus::unverifiable_bootstrap, current_);
    } else if (high_water_ && start <= *high_water_) {
        // Window start did not advance: a replayed or time-shifted
        // segment, reported for the window just received.
        verdict = make_verdict(index, VerdictStatus::replay_suspected, current_);
        replay_flagged_ = index;
    } else {
        bool match = true;
        for (unsigned bit = 0; bit < params_.hash_bits; ++bit) {
            unsigned got = (collected_bits_[bit / 8] >> (7 - bit % 8)) & 1u;
            unsigned want = ((*expected_)[bit / 8] >> (7 - bit % 8)) & 1u;
            if (got != want) {
                match = false;
                break;
            }
        }
        verdict = make_verdict(index - 1, match ? VerdictStatus::ok : VerdictStatus::hash_mismatch,
                               previous_);
    }

    expected_ = window_hash(buffer_, current_.first_soc, params_.hash_bits);
    if (!high_water_ || start > *high_water_)
        high_water_ = start;
    previous_ = current_;
    buffer_.clear();
    collected_bits_.clear();
    collected_count_ = 0;
    frames_in_window_ = 0;
    return verdict;
}

std::vector<WindowVerdict> IntegrityVerifier::finish() {
    std::vector<WindowVerdict> out;
    std::uint64_t n = windows_completed_;
    if (n >= 1 && replay_flagged_ != n) {
        // Attestation of the last complete window from the digest prefix
        // received so far. Any differing bit convicts; agreement on a
        // partial prefix is inconclusive.
        bool mismatch = false;
        unsigned usable = std::min(collected_count_, params_.hash_bits);
        for (unsigned bit = 0; bit < usable; ++bit) {
            unsigned got = (collected_bits_[bit / 8] >> (7 - bit % 8)) & 1u;
            unsigned want = ((*expected_)[bit / 8] >> (7 - bit % 8)) & 1u;
            if (got != want) {
                mismatch = true;
                break;
            }
        }
        out.push_back(make_verdict(n, mismatch ? VerdictStatus::hash_mismatch
                                               : VerdictStatus::incomplete,
                                   previous_));
    }
    if (frames_in_window_ > 0)
        out.push_back(make_verdict(n + 1, VerdictStatus::incomplete, current_));
    return out;
}

} // namespace scamper
