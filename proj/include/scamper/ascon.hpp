#pragma once

// Ascon-XOF128 (NIST SP 800-232): 320-bit sponge, 64-bit rate,
// 12-round permutation, arbitrary-length output.

#include <cstdint>
#include <span>
#include <vector>

namespace scamper {

// out_bits must be a positive multiple of 8.
std::vector<std::uint8_t> ascon_xof128(std::span<const std::uint8_t> data, unsigned out_bits);

// Incremental variant for hashing scattered buffers without concatenation.
class AsconXof128 {
public:
    AsconXof128();
    void update(std::span<const std::uint8_t> data);
    // Finishes absorbing and emits out_bits/8 octets. The object must not
    // be reused afterwards.
    std::vector<std::uint8_t> finish(unsigned out_bits);

private:
    void absorb_block();

    std::uint64_t state_[5];
    std::uint8_t pending_[8];
    std::size_t pending_len_ = 0;
};

} // namespace scamper
