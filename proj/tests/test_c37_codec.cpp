#include <doctest.h>

#include <cstring>

#include "scamper/c37_codec.hpp"
#include "test_helpers.hpp"

using namespace scamper;
using test::crc_oracle;
using test::Rng;

namespace {

std::vector<std::uint8_t> ascii(const char* s) {
    return {reinterpret_cast<const std::uint8_t*>(s),
            reinterpret_cast<const std::uint8_t*>(s) + std::strlen(s)};
}

void push_f32(std::vector<std::uint8_t>& v, float f) {
    std::uint32_t bits;
    std::memcpy(&bits, &f, sizeof(bits));
    v.push_back(static_cast<std::uint8_t>(bits >> 24));
    v.push_back(static_cast<std::uint8_t>(bits >> 16));
    v.push_back(static_cast<std::uint8_t>(bits >> 8));
    v.push_back(static_cast<std::uint8_t>(bits));
}

} // namespace

TEST_CASE("crc16 ccitt-false check string") {
    auto msg = ascii("123456789");
    CHECK(crc_oracle(msg) == 0x29B1); // standard check value
    CHECK(compute_crc(msg) == 0x29B1);
}

TEST_CASE("crc16 empty input is the init value") {
    CHECK(compute_crc({}) == 0xFFFF);
    CHECK(crc_oracle({}) == 0xFFFF);
}

TEST_CASE("crc16 table implementation agrees with bitwise oracle") {
    Rng rng(0xC0FFEE);
    for (int trial = 0; trial < 200; ++trial) {
        std::vector<std::uint8_t> data(rng.index(64));
        for (auto& b : data)
            b = static_cast<std::uint8_t>(rng.u32(0, 255));
        CHECK(compute_crc(data) == crc_oracle(data));
    }
}

TEST_CASE("crc16 appending the checksum gives a fixed residue") {
    Rng rng(0xBEEF);
    // residue of CCITT-FALSE when the big-endian CRC is appended,
    // established with the bitwise oracle and constant across inputs
    std::vector<std::uint8_t> probe = ascii("probe");
    std::uint16_t c = crc_oracle(probe);
    probe.push_back(static_cast<std::uint8_t>(c >> 8));
    probe.push_back(static_cast<std::uint8_t>(c));
    const std::uint16_t residue = crc_oracle(probe);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::uint8_t> data(rng.index(40));
        for (auto& b : data)
            b = static_cast<std::uint8_t>(rng.u32(0, 255));
        std::uint16_t crc = crc_oracle(data);
        data.push_back(static_cast<std::uint8_t>(crc >> 8));
        data.push_back(static_cast<std::uint8_t>(crc));
        CHECK(crc_oracle(data) == residue);
        CHECK(compute_crc(data) == residue);
    }
}

TEST_CASE("parse_frame decodes a hand-built single-PMU frame") {
    // 1 PMU, float32-polar, 1 phasor, 0 analogs, 0 digitals, float32 freq:
    // 14-byte header + (2 + 8 + 4 + 4) block + 2-byte CHK = 34 bytes
    StreamConfig cfg = test::polar_config();

    std::vector<std::uint8_t> bytes = {
        0xAA, 0x01,             // SYNC: data frame, version 1
        0x00, 0x22,             // FRAMESIZE = 34
        0x1E, 0x36,             // STREAM_ID = 7734
        0x65, 0x53, 0xF1, 0x00, // SOC = 1700000000
        0x00,                   // leap/time-quality flags
        0x07, 0xA1, 0x20,       // FRACSEC = 500000
        0x00, 0x00,             // STAT_FLAG
    };
    push_f32(bytes, 120.5f);  // phasor magnitude
    push_f32(bytes, -0.25f);  // phasor angle
    push_f32(bytes, 60.01f);  // FREQ
    push_f32(bytes, -0.002f); // DFREQ
    std::uint16_t crc = crc_oracle(bytes);
    bytes.push_back(static_cast<std::uint8_t>(crc >> 8));
    bytes.push_back(static_cast<std::uint8_t>(crc));
    REQUIRE(bytes.size() == 34);

    ParseResult res = parse_frame(bytes, cfg);
    REQUIRE(res.ok());
    const DataFrame& f = *res.frame;
    CHECK(f.sync == 0xAA01);
    CHECK(f.frame_size == 34);
    CHECK(f.id_code == 7734);
    CHECK(f.soc == 1'700'000'000);
    CHECK(f.time_flags == 0);
    CHECK(f.fracsec == 500'000);
    REQUIRE(f.pmu_blocks.size() == 1);
    CHECK(f.pmu_blocks[0].stat == 0);
    REQUIRE(f.pmu_blocks[0].phasors.size() == 1);
    CHECK(f.pmu_blocks[0].phasors[0].a == 120.5f);
    CHECK(f.pmu_blocks[0].phasors[0].b == -0.25f);
    CHECK(f.pmu_blocks[0].freq == 60.01f);
    CHECK(f.pmu_blocks[0].dfreq == -0.002f);
    CHECK(f.chk == crc);

    // re-serialization reproduces the input bytes exactly
    CHECK(serialize_frame(f, cfg) == bytes);
}

TEST_CASE("parse_frame rejects a non-data SYNC word") {
    StreamConfig cfg = test::polar_config();
    Rng rng(7);
    auto bytes = serialize_frame(test::random_frame(rng, cfg), cfg);
    SUBCASE("wrong lead-in byte") { bytes[0] = 0xAB; }
    SUBCASE("command frame type bits") { bytes[1] = 0x41; }
    CHECK(parse_frame(bytes, cfg).error == FrameError::bad_sync);
}

TEST_CASE("parse_frame reports size mismatches") {
    StreamConfig cfg = test::polar_config();
    Rng rng(8);
    auto bytes = serialize_frame(test::random_frame(rng, cfg), cfg);
    SUBCASE("FRAMESIZE disagrees with buffer") { bytes[3] ^= 0x01; }
    SUBCASE("buffer truncated") { bytes.pop_back(); }
    SUBCASE("config implies another size") {
        cfg.pmus[0].analog_count = 2; // frame was built without analogs
    }
    CHECK(parse_frame(bytes, cfg).error == FrameError::size_mismatch);
}

TEST_CASE("parse_frame flags corruption and still decodes for forensics") {
    StreamConfig cfg = test::polar_config();
    Rng rng(9);
    DataFrame f = test::random_frame(rng, cfg);
    auto bytes = serialize_frame(f, cfg);
    bytes[8] ^= 0xFF; // corrupt one SOC byte
    ParseResult res = parse_frame(bytes, cfg);
    CHECK(res.error == FrameError::bad_crc);
    CHECK(res.crc_found == f.chk);
    CHECK(res.crc_expected == crc_oracle({bytes.data(), bytes.size() - 2}));
    REQUIRE(res.frame.has_value()); // forensic decode of the tampered frame
    CHECK(res.frame->soc != f.soc);
}

TEST_CASE("serialize/parse round trip over random frames") {
    Rng rng(0x5EED);
    for (int trial = 0; trial < 300; ++trial) {
        StreamConfig cfg = test::random_stream_config(rng);
        DataFrame f = test::random_frame(rng, cfg);
        auto bytes = serialize_frame(f, cfg);
        CHECK(bytes.size() == cfg.frame_size());
        CHECK(compute_crc({bytes.data(), bytes.size() - 2}) ==
              static_cast<std::uint16_t>(bytes[bytes.size() - 2] << 8 | bytes.back()));
        ParseResult res = parse_frame(bytes, cfg);
        REQUIRE(res.ok());
        CHECK(*res.frame == f);
        // byte-exact in the other direction
        CHECK(serialize_frame(*res.frame, cfg) == bytes);
    }
}

TEST_CASE("any single bit flip is detected") {
    Rng rng(0xF11B);
    for (int trial = 0; trial < 300; ++trial) {
        StreamConfig cfg = test::random_stream_config(rng);
        auto bytes = serialize_frame(test::random_frame(rng, cfg), cfg);
        std::size_t bit = rng.index(bytes.size() * 8);
        bytes[bit / 8] ^= static_cast<std::uint8_t>(1u << (bit % 8));
        ParseResult res = parse_frame(bytes, cfg);
        CHECK_FALSE(res.ok());
        // structural fields trip their own checks first; everything else
        // must be caught by the CRC
        std::size_t byte = bit / 8;
        if (byte >= 4 && byte < bytes.size() - 2)
            CHECK(res.error == FrameError::bad_crc);
    }
}

TEST_CASE("serialize_frame recomputes a stale CHK") {
    StreamConfig cfg = test::polar_config();
    Rng rng(11);
    DataFrame f = test::random_frame(rng, cfg);
    std::uint16_t good = f.chk;
    f.chk = static_cast<std::uint16_t>(~good);
    auto bytes = serialize_frame(f, cfg);
    CHECK(static_cast<std::uint16_t>(bytes[bytes.size() - 2] << 8 | bytes.back()) == good);
}

TEST_CASE("serialize_frame rejects block shapes that disagree with config") {
    StreamConfig cfg = test::polar_config();
    Rng rng(12);
    DataFrame f = test::random_frame(rng, cfg);
    SUBCASE("missing block") { f.pmu_blocks.clear(); }
    SUBCASE("extra phasor") { f.pmu_blocks[0].phasors.push_back({1.0f, 2.0f}); }
    SUBCASE("missing digitals") { f.pmu_blocks[0].digitals.push_back(1); }
    CHECK_THROWS_AS(serialize_frame(f, cfg), ConfigMismatch);
}

TEST_CASE("two-PMU frame length follows the block-size sum") {
    StreamConfig cfg;
    cfg.id_code = 2;
    cfg.timebase = 1'000'000;
    cfg.update_rate = 30;
    PmuConfig a;
    a.phasor_count = 2;
    a.analog_count = 1;
    a.digital_word_count = 1;
    a.phasor_format = PhasorFormat::float32_polar; // 2 + 2*8 + 4 + 4 + 4 + 2 = 32
    PmuConfig b;
    b.phasor_count = 3;
    b.analog_count = 0;
    b.digital_word_count = 2;
    b.phasor_format = PhasorFormat::int16_rect;
    b.freq_format = NumberFormat::int16; // 2 + 3*4 + 2 + 2 + 0 + 4 = 22
    cfg.pmus = {a, b};
    CHECK(a.block_size() == 32);
    CHECK(b.block_size() == 22);
    CHECK(cfg.frame_size() == 14 + 32 + 22 + 2);
    Rng rng(13);
    CHECK(serialize_frame(test::random_frame(rng, cfg), cfg).size() == 14 + 32 + 22 + 2);
}

TEST_CASE("fracsec_encode rounds half-up") {
    CHECK(fracsec_encode(0.0, 1'000'000) == 0);
    CHECK(fracsec_encode(0.0, 0xFFFFFF) == 0);
    CHECK(fracsec_encode(0.5, 1'000'000) == 500'000);
    // exact .5 ties at a power-of-two timebase round up
    CHECK(fracsec_encode(0.5 / (1 << 20), 1 << 20) == 1);
    CHECK(fracsec_encode(1.5 / (1 << 20), 1 << 20) == 2);
    CHECK(fracsec_encode(0.9999999, 1'000'000) == 1'000'000);
}

TEST_CASE("one tick at the default timebase is about 59.6 ns") {
    double tick = fracsec_decode(1, 0xFFFFFF);
    CHECK(tick == doctest::Approx(59.6e-9).epsilon(0.01));
}

TEST_CASE("fracsec_encode validates its domain") {
    CHECK_THROWS_AS(fracsec_encode(-0.1, 1'000'000), OutOfRange);
    CHECK_THROWS_AS(fracsec_encode(1.0, 1'000'000), OutOfRange);
    CHECK_THROWS_AS(fracsec_encode(0.5, 0), OutOfRange);
    CHECK_THROWS_AS(fracsec_encode(0.5, 0x1000000), OutOfRange);
}

TEST_CASE("fracsec_decode inverts encode within half a tick") {
    CHECK(fracsec_decode(0, 1'000'000) == 0.0);
    CHECK(fracsec_decode(500'000, 1'000'000) == 0.5);
    Rng rng(14);
    for (int trial = 0; trial < 500; ++trial) {
        std::uint32_t timebase = rng.coin() ? 1'000'000 : 0xFFFFFF;
        double t = static_cast<double>(rng.u32(0, 999'999'999)) / 1e9;
        double back = fracsec_decode(fracsec_encode(t, timebase), timebase);
        CHECK(std::abs(back - t) <= 0.5 / timebase + 1e-15);
    }
}

TEST_CASE("StreamConfig validation") {
    StreamConfig cfg = test::polar_config();
    CHECK_NOTHROW(cfg.validate());
    SUBCASE("timebase zero") { cfg.timebase = 0; }
    SUBCASE("timebase above 24 bits") { cfg.timebase = 0x1000000; }
    SUBCASE("zero rate") { cfg.update_rate = 0; }
    SUBCASE("no PMUs") { cfg.pmus.clear(); }
    SUBCASE("frame size overflows FRAMESIZE") { cfg.pmus[0].phasor_count = 9000; }
    CHECK_THROWS_AS(cfg.validate(), ConfigMismatch);
}
