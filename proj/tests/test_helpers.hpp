#pragma once

// Shared test-only helpers: independent oracles and random generators.
// Everything here must stay independent of the library code paths it is
// used to check.

#include <cstdint>
#include <random>
#include <span>
#include <vector>

#include "scamper/c37_codec.hpp"

namespace scamper::test {

// Bit-serial CRC-16/CCITT-FALSE oracle (poly 0x1021, init 0xFFFF, no
// reflection, no final xor): plain polynomial long division, one message
// bit at a time. Independent of the table-driven library implementation.
inline std::uint16_t crc_oracle(std::span<const std::uint8_t> bytes) {
    std::uint16_t crc = 0xFFFF;
    for (std::uint8_t byte : bytes) {
        for (int i = 7; i >= 0; --i) {
            unsigned feed = ((byte >> i) & 1u) ^ (crc >> 15);
            crc = static_cast<std::uint16_t>(crc << 1);
            if (feed)
                crc ^= 0x1021;
        }
    }
    return crc;
}

class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    std::uint64_t u64() { return eng_(); }
    std::uint32_t u32(std::uint32_t lo, std::uint32_t hi) { // inclusive
        return lo + static_cast<std::uint32_t>(eng_() % (static_cast<std::uint64_t>(hi) - lo + 1));
    }
    std::size_t index(std::size_t n) { return static_cast<std::size_t>(eng_() % n); }
    bool coin() { return (eng_() & 1) != 0; }
    float finite_float() {
        // uniform magnitude across a few decades, always finite
        float mag = static_cast<float>(u32(0, 1'000'000)) / 16.0f;
        return coin() ? mag : -mag;
    }

    std::mt19937_64& engine() { return eng_; }

private:
    std::mt19937_64 eng_;
};

inline PmuConfig random_pmu_config(Rng& rng) {
    PmuConfig pmu;
    pmu.phasor_count = rng.index(4);
    pmu.analog_count = rng.index(3);
    pmu.digital_word_count = rng.index(3);
    switch (rng.index(3)) {
    case 0: pmu.phasor_format = PhasorFormat::int16_rect; break;
    case 1: pmu.phasor_format = PhasorFormat::float32_rect; break;
    default: pmu.phasor_format = PhasorFormat::float32_polar; break;
    }
    pmu.analog_format = rng.coin() ? NumberFormat::int16 : NumberFormat::float32;
    pmu.freq_format = rng.coin() ? NumberFormat::int16 : NumberFormat::float32;
    return pmu;
}

inline StreamConfig random_stream_config(Rng& rng) {
    StreamConfig cfg;
    cfg.id_code = static_cast<std::uint16_t>(rng.u32(0, 0xFFFF));
    cfg.timebase = rng.coin() ? 1'000'000 : 0xFFFFFF;
    cfg.update_rate = rng.u32(1, 120);
    std::size_t pmu_count = 1 + rng.index(3);
    for (std::size_t i = 0; i < pmu_count; ++i)
        cfg.pmus.push_back(random_pmu_config(rng));
    return cfg;
}

// Random frame matching the config. Numeric values are chosen so that
// serialization is lossless for the wire format in use.
inline DataFrame random_frame(Rng& rng, const StreamConfig& cfg) {
    DataFrame f;
    f.id_code = cfg.id_code;
    f.soc = rng.u32(0, 0xFFFFFFFF);
    f.time_flags = static_cast<std::uint8_t>(rng.u32(0, 0xFF));
    f.fracsec = rng.u32(0, kFracsecMax);
    for (const auto& pmu : cfg.pmus) {
        PmuBlock blk;
        blk.stat = static_cast<std::uint16_t>(rng.u32(0, 0xFFFF));
        auto number = [&](NumberFormat fmt) {
            return fmt == NumberFormat::int16
                       ? static_cast<float>(static_cast<std::int16_t>(rng.u32(0, 0xFFFF)))
                       : rng.finite_float();
        };
        for (std::size_t p = 0; p < pmu.phasor_count; ++p) {
            if (pmu.phasor_format == PhasorFormat::int16_rect)
                blk.phasors.push_back({number(NumberFormat::int16), number(NumberFormat::int16)});
            else
                blk.phasors.push_back({rng.finite_float(), rng.finite_float()});
        }
        blk.freq = number(pmu.freq_format);
        blk.dfreq = number(pmu.freq_format);
        for (std::size_t a = 0; a < pmu.analog_count; ++a)
            blk.analogs.push_back(number(pmu.analog_format));
        for (std::size_t d = 0; d < pmu.digital_word_count; ++d)
            blk.digitals.push_back(static_cast<std::uint16_t>(rng.u32(0, 0xFFFF)));
        f.pmu_blocks.push_back(std::move(blk));
    }
    finalize_frame(f, cfg);
    return f;
}

// Single-PMU float32-polar config used by most pipeline tests.
inline StreamConfig polar_config(std::uint32_t timebase = 1'000'000,
                                 std::uint32_t update_rate = 10) {
    StreamConfig cfg;
    cfg.id_code = 7734;
    cfg.timebase = timebase;
    cfg.update_rate = update_rate;
    PmuConfig pmu;
    pmu.phasor_count = 1;
    pmu.analog_count = 0;
    pmu.digital_word_count = 0;
    pmu.phasor_format = PhasorFormat::float32_polar;
    cfg.pmus.push_back(pmu);
    return cfg;
}

} // namespace scamper::test
