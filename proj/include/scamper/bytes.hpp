#pragma once

// Big-endian byte packing helpers. The C37.118 wire format is network
// byte order throughout, so everything here is explicitly big-endian.

#include <cstdint>
#include <cstring>
#include <span>
#include <vector>

namespace scamper {

class ByteWriter {
public:
    explicit ByteWriter(std::size_t reserve = 0) { buf_.reserve(reserve); }

    void u8(std::uint8_t v) { buf_.push_back(v); }

    void u16(std::uint16_t v) {
        buf_.push_back(static_cast<std::uint8_t>(v >> 8));
        buf_.push_back(static_cast<std::uint8_t>(v));
    }

    void u24(std::uint32_t v) {
        buf_.push_back(static_cast<std::uint8_t>(v >> 16));
        buf_.push_back(static_cast<std::uint8_t>(v >> 8));
        buf_.push_back(static_cast<std::uint8_t>(v));
    }

    void u32(std::uint32_t v) {
        u16(static_cast<std::uint16_t>(v >> 16));
        u16(static_cast<std::uint16_t>(v));
    }

    void u64(std::uint64_t v) {
        u32(static_cast<std::uint32_t>(v >> 32));
        u32(static_cast<std::uint32_t>(v));
    }

    void i16(std::int16_t v) { u16(static_cast<std::uint16_t>(v)); }

    void f32(float v) {
        std::uint32_t bits;
        std::memcpy(&bits, &v, sizeof(bits));
        u32(bits);
    }

    void raw(std::span<const std::uint8_t> bytes) {
        buf_.insert(buf_.end(), bytes.begin(), bytes.end());
    }

    std::size_t size() const { return buf_.size(); }
    std::vector<std::uint8_t> take() { return std::move(buf_); }
    std::vector<std::uint8_t>& data() { return buf_; }

private:
    std::vector<std::uint8_t> buf_;
};

class ByteReader {
public:
    explicit ByteReader(std::span<const std::uint8_t> data) : data_(data) {}

    std::uint8_t u8() { return data_[pos_++]; }

    std::uint16_t u16() {
        std::uint16_t v = static_cast<std::uint16_t>(data_[pos_] << 8 | data_[pos_ + 1]);
        pos_ += 2;
        return v;
    }

    std::uint32_t u24() {
        std::uint32_t v = static_cast<std::uint32_t>(data_[pos_]) << 16 |
                          static_cast<std::uint32_t>(data_[pos_ + 1]) << 8 |
                          static_cast<std::uint32_t>(data_[pos_ + 2]);
        pos_ += 3;
        return v;
    }

    std::uint32_t u32() {
        std::uint32_t hi = u16();
        return hi << 16 | u16();
    }

    std::uint64_t u64() {
        std::uint64_t hi = u32();
        return hi << 32 | u32();
    }

    std::int16_t i16() { return static_cast<std::int16_t>(u16()); }

    float f32() {
        std::uint32_t bits = u32();
        float v;
        std::memcpy(&v, &bits, sizeof(v));
        return v;
    }

    std::size_t pos() const { return pos_; }
    std::size_t remaining() const { return data_.size() - pos_; }

private:
    std::span<const std::uint8_t> data_;
    std::size_t pos_ = 0;
};

inline void store_u64_be(std::uint64_t v, std::uint8_t out[8]) {
    for (int i = 7; i >= 0; --i) {
        out[i] = static_cast<std::uint8_t>(v);
        v >>= 8;
    }
}

} // namespace scamper
