#include "scamper/c37_codec.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "scamper/bytes.hpp"

namespace scamper {

namespace {

constexpr std::array<std::uint16_t, 256> make_crc_table() {
    std::array<std::uint16_t, 256> table{};
    for (int n = 0; n < 256; ++n) {
        std::uint16_t crc = static_cast<std::uint16_t>(n << 8);
        for (int bit = 0; bit < 8; ++bit)
            crc = (crc & 0x8000) ? static_cast<std::uint16_t>((crc << 1) ^ 0x1021)
                                 : static_cast<std::uint16_t>(crc << 1);
        table[static_cast<std::size_t>(n)] = crc;
    }
    return table;
}

constexpr auto kCrcTable = make_crc_table();

std::size_t number_size(NumberFormat f) {
    return f == NumberFormat::int16 ? 2 : 4;
}

std::int16_t to_i16(float v) {
    double r = std::llround(static_cast<double>(v));
    r = std::clamp(r, static_cast<double>(std::numeric_limits<std::int16_t>::min()),
                   static_cast<double>(std::numeric_limits<std::int16_t>::max()));
    return static_cast<std::int16_t>(r);
}

void write_number(ByteWriter& w, NumberFormat f, float v) {
    if (f == NumberFormat::int16)
        w.i16(to_i16(v));
    else
        w.f32(v);
}

float read_number(ByteReader& r, NumberFormat f) {
    return f == NumberFormat::int16 ? static_cast<float>(r.i16()) : r.f32();
}

} // namespace

std::size_t PmuConfig::block_size() const {
    std::size_t phasor_size = phasor_format == PhasorFormat::int16_rect ? 4 : 8;
    std::size_t freq_size = number_size(freq_format);
    return 2 + phasor_count * phasor_size + 2 * freq_size +
           analog_count * number_size(analog_format) + digital_word_count * 2;
}

std::size_t StreamConfig::frame_size() const {
    std::size_t n = kHeaderSize + kChkSize;
    for (const auto& pmu : pmus)
        n += pmu.block_size();
    return n;
}

void StreamConfig::validate() const {
    if (timebase < 1 || timebase > kFracsecMax)
        throw ConfigMismatch("timebase out of range: " + std::to_string(timebase));
    if (update_rate < 1)
        throw ConfigMismatch("update_rate must be >= 1");
    if (pmus.empty())
        throw ConfigMismatch("config must describe at least one PMU");
    if (frame_size() > 0xFFFF)
        throw ConfigMismatch("frame size exceeds 16-bit FRAMESIZE field");
}

std::uint16_t compute_crc(std::span<const std::uint8_t> bytes) {
    std::uint16_t crc = 0xFFFF;
    for (std::uint8_t b : bytes)
        crc = static_cast<std::uint16_t>((crc << 8) ^ kCrcTable[((crc >> 8) ^ b) & 0xFF]);
    return crc;
}

std::uint32_t fracsec_encode(double t, std::uint32_t timebase) {
    if (timebase < 1 || timebase > kFracsecMax)
        throw OutOfRange("timebase out of range: " + std::to_string(timebase));
    if (!(t >= 0.0 && t < 1.0))
        throw OutOfRange("fractional time not in [0,1): " + std::to_string(t));
    return static_cast<std::uint32_t>(std::floor(t * timebase + 0.5));
}

double fracsec_decode(std::uint32_t raw, std::uint32_t timebase) {
    if (timebase < 1)
        throw OutOfRange("timebase must be >= 1");
    return static_cast<double>(raw) / static_cast<double>(timebase);
}

const char* frame_error_name(FrameError e) {
    switch (e) {
    case FrameError::none: return "none";
    case FrameError::bad_sync: return "BadSync";
    case FrameError::size_mismatch: return "SizeMismatch";
    case FrameError::bad_crc: return "BadCrc";
    }
    return "?";
}

std::vector<std::uint8_t> serialize_frame(const DataFrame& frame, const StreamConfig& config) {
    if (frame.pmu_blocks.size() != config.pmus.size())
        throw ConfigMismatch("frame has " + std::to_string(frame.pmu_blocks.size()) +
                             " PMU blocks, config describes " + std::to_string(config.pmus.size()));
    for (std::size_t i = 0; i < config.pmus.size(); ++i) {
        const auto& blk = frame.pmu_blocks[i];
        const auto& pmu = config.pmus[i];
        if (blk.phasors.size() != pmu.phasor_count || blk.analogs.size() != pmu.analog_count ||
            blk.digitals.size() != pmu.digital_word_count)
            throw ConfigMismatch("PMU block " + std::to_string(i) +
                                 " channel counts disagree with config");
    }

    std::size_t total = config.frame_size();
    ByteWriter w(total);
    w.u16(frame.sync);
    w.u16(static_cast<std::uint16_t>(total));
    w.u16(frame.id_code);
    w.u32(frame.soc);
    w.u8(frame.time_flags);
    w.u24(frame.fracsec & kFracsecMax);
    for (std::size_t i = 0; i < config.pmus.size(); ++i) {
        const auto& blk = frame.pmu_blocks[i];
        const auto& pmu = config.pmus[i];
        w.u16(blk.stat);
        for (const auto& ph : blk.phasors) {
            if (pmu.phasor_format == PhasorFormat::int16_rect) {
                w.i16(to_i16(ph.a));
                w.i16(to_i16(ph.b));
            } else {
                w.f32(ph.a);
                w.f32(ph.b);
            }
        }
        write_number(w, pmu.freq_format, blk.freq);
        write_number(w, pmu.freq_format, blk.dfreq);
        for (float v : blk.analogs)
            write_number(w, pmu.analog_format, v);
        for (std::uint16_t d : blk.digitals)
            w.u16(d);
    }
    w.u16(compute_crc(w.data()));
    return w.take();
}

void finalize_frame(DataFrame& frame, const StreamConfig& config) {
    auto bytes = serialize_frame(frame, config);
    frame.frame_size = static_cast<std::uint16_t>(bytes.size());
    frame.chk = static_cast<std::uint16_t>(bytes[bytes.size() - 2] << 8 | bytes.back());
}

ParseResult parse_frame(std::span<const std::uint8_t> bytes, const StreamConfig& config) {
    ParseResult res;
    if (bytes.size() < kHeaderSize + kChkSize) {
        res.error = FrameError::size_mismatch;
        res.message = "buffer shorter than minimum frame";
        return res;
    }
    if (bytes[0] != 0xAA || (bytes[1] & 0x70) != 0x00) {
        res.error = FrameError::bad_sync;
        res.message = "first bytes are not a data-frame SYNC word";
        return res;
    }
    std::size_t expected = config.frame_size();
    std::size_t declared = static_cast<std::size_t>(bytes[2]) << 8 | bytes[3];
    if (declared != bytes.size() || declared != expected) {
        res.error = FrameError::size_mismatch;
        res.message = "FRAMESIZE " + std::to_string(declared) + ", buffer " +
                      std::to_string(bytes.size()) + ", config implies " + std::to_string(expected);
        return res;
    }

    DataFrame f;
    ByteReader r(bytes);
    f.sync = r.u16();
    f.frame_size = r.u16();
    f.id_code = r.u16();
    f.soc = r.u32();
    f.time_flags = r.u8();
    f.fracsec = r.u24();
    for (const auto& pmu : config.pmus) {
        PmuBlock blk;
        blk.stat = r.u16();
        blk.phasors.reserve(pmu.phasor_count);
        for (std::size_t p = 0; p < pmu.phasor_count; ++p) {
            PhasorValue ph;
            if (pmu.phasor_format == PhasorFormat::int16_rect) {
                ph.a = static_cast<float>(r.i16());
                ph.b = static_cast<float>(r.i16());
            } else {
                ph.a = r.f32();
                ph.b = r.f32();
            }
            blk.phasors.push_back(ph);
        }
        blk.freq = read_number(r, pmu.freq_format);
        blk.dfreq = read_number(r, pmu.freq_format);
        blk.analogs.reserve(pmu.analog_count);
        for (std::size_t a = 0; a < pmu.analog_count; ++a)
            blk.analogs.push_back(read_number(r, pmu.analog_format));
        blk.digitals.reserve(pmu.digital_word_count);
        for (std::size_t d = 0; d < pmu.digital_word_count; ++d)
            blk.digitals.push_back(r.u16());
        f.pmu_blocks.push_back(std::move(blk));
    }
    f.chk = r.u16();

    std::uint16_t want = compute_crc(bytes.first(bytes.size() - kChkSize));
    if (want != f.chk) {
        res.error = FrameError::bad_crc;
        res.crc_expected = want;
        res.crc_found = f.chk;
        res.message = "CHK mismatch: expected " + std::to_string(want) + ", found " +
                      std::to_string(f.chk);
        res.frame = std::move(f); // forensic decode
        return res;
    }
    res.frame = std::move(f);
    return res;
}

DataFrame parse_frame_strict(std::span<const std::uint8_t> bytes, const StreamConfig& config) {
    ParseResult res = parse_frame(bytes, config);
    if (!res.ok())
        throw Error(std::string(frame_error_name(res.error)) + ": " + res.message);
    return *std::move(res.frame);
}

} // namespace scamper
