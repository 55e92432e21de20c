#include "scamper/ascon.hpp"

#include <bit>
#include <cstring>
#include <stdexcept>

namespace scamper {

namespace {

// Ascon-XOF128 initialization vector, loaded into word 0 of the state.
constexpr std::uint64_t kXof128Iv = 0x0000080000CC0003ULL;

constexpr std::uint8_t kRoundConstants[12] = {0xF0, 0xE1, 0xD2, 0xC3, 0xB4, 0xA5,
                                              0x96, 0x87, 0x78, 0x69, 0x5A, 0x4B};

inline std::uint64_t ror(std::uint64_t x, int n) { return std::rotr(x, n); }

void permute12(std::uint64_t s[5]) {
    for (std::uint8_t rc : kRoundConstants) {
        s[2] ^= rc;
        // substitution layer
        s[0] ^= s[4];
        s[4] ^= s[3];
        s[2] ^= s[1];
        std::uint64_t t0 = s[0] ^ (~s[1] & s[2]);
        std::uint64_t t1 = s[1] ^ (~s[2] & s[3]);
        std::uint64_t t2 = s[2] ^ (~s[3] & s[4]);
        std::uint64_t t3 = s[3] ^ (~s[4] & s[0]);
        std::uint64_t t4 = s[4] ^ (~s[0] & s[1]);
        t1 ^= t0;
        t0 ^= t4;
        t3 ^= t2;
        t2 = ~t2;
        // linear diffusion layer
        s[0] = t0 ^ ror(t0, 19) ^ ror(t0, 28);
        s[1] = t1 ^ ror(t1, 61) ^ ror(t1, 39);
        s[2] = t2 ^ ror(t2, 1) ^ ror(t2, 6);
        s[3] = t3 ^ ror(t3, 10) ^ ror(t3, 17);
        s[4] = t4 ^ ror(t4, 7) ^ ror(t4, 41);
    }
}

// SP 800-232 interprets rate words little-endian.
inline std::uint64_t load64_le(const std::uint8_t* p) {
    std::uint64_t v = 0;
    for (int i = 7; i >= 0; --i)
        v = v << 8 | p[i];
    return v;
}

inline void store64_le(std::uint64_t v, std::uint8_t* p) {
    for (int i = 0; i < 8; ++i) {
        p[i] = static_cast<std::uint8_t>(v);
        v >>= 8;
    }
}

} // namespace

AsconXof128::AsconXof128() : state_{kXof128Iv, 0, 0, 0, 0}, pending_{} {
    permute12(state_);
}

void AsconXof128::absorb_block() {
    state_[0] ^= load64_le(pending_);
    permute12(state_);
    pending_len_ = 0;
}

void AsconXof128::update(std::span<const std::uint8_t> data) {
    for (std::uint8_t b : data) {
        pending_[pending_len_++] = b;
        if (pending_len_ == 8)
            absorb_block();
    }
}

std::vector<std::uint8_t> AsconXof128::finish(unsigned out_bits) {
    if (out_bits == 0 || out_bits % 8 != 0)
        throw std::invalid_argument("ascon_xof128 output length must be a positive multiple of 8 bits");
    // pad: single 1 bit in the byte after the message, then permute
    std::memset(pending_ + pending_len_, 0, 8 - pending_len_);
    state_[0] ^= load64_le(pending_);
    state_[0] ^= std::uint64_t{0x01} << (8 * pending_len_);
    permute12(state_);

    std::vector<std::uint8_t> out(out_bits / 8);
    std::size_t off = 0;
    while (off < out.size()) {
        std::uint8_t block[8];
        store64_le(state_[0], block);
        std::size_t n = std::min<std::size_t>(8, out.size() - off);
        std::memcpy(out.data() + off, block, n);
        off += n;
        if (off < out.size())
            permute12(state_);
    }
    return out;
}

std::vector<std::uint8_t> ascon_xof128(std::span<const std::uint8_t> data, unsigned out_bits) {
    AsconXof128 x;
    x.update(data);
    return x.finish(out_bits);
}

} // namespace scamper
