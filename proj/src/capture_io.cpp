#include "scamper/capture_io.hpp"

#include <arpa/inet.h>
#include <netdb.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <fstream>
#include <thread>

#include "scamper/bytes.hpp"

namespace scamper {

namespace {

constexpr char kMagic[4] = {'S', 'C', 'A', 'P'};
constexpr std::uint8_t kVersion = 0x01;
constexpr std::size_t kMinFrameSize = 16; // header + CHK

std::uint64_t now_micros() {
    return static_cast<std::uint64_t>(
        std::chrono::duration_cast<std::chrono::microseconds>(
            std::chrono::system_clock::now().time_since_epoch())
            .count());
}

struct Endpoint {
    std::string host;
    std::string port;
};

Endpoint split_endpoint(const std::string& endpoint) {
    auto colon = endpoint.rfind(':');
    if (colon == std::string::npos || colon == 0 || colon + 1 == endpoint.size())
        throw ConnectionFailed("endpoint must be host:port, got '" + endpoint + "'");
    return {endpoint.substr(0, colon), endpoint.substr(colon + 1)};
}

class Socket {
public:
    explicit Socket(int fd = -1) : fd_(fd) {}
    ~Socket() {
        if (fd_ >= 0)
            ::close(fd_);
    }
    Socket(Socket&& other) noexcept : fd_(other.fd_) { other.fd_ = -1; }
    Socket& operator=(Socket&& other) noexcept {
        if (this != &other) {
            if (fd_ >= 0)
                ::close(fd_);
            fd_ = other.fd_;
            other.fd_ = -1;
        }
        return *this;
    }
    Socket(const Socket&) = delete;
    Socket& operator=(const Socket&) = delete;
    int get() const { return fd_; }

private:
    int fd_;
};

Socket connect_to(const Endpoint& ep) {
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    addrinfo* res = nullptr;
    if (::getaddrinfo(ep.host.c_str(), ep.port.c_str(), &hints, &res) != 0)
        throw ConnectionFailed("cannot resolve " + ep.host + ":" + ep.port);
    Socket sock;
    for (addrinfo* ai = res; ai; ai = ai->ai_next) {
        int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
        if (fd < 0)
            continue;
        if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) {
            sock = Socket(fd);
            break;
        }
        ::close(fd);
    }
    ::freeaddrinfo(res);
    if (sock.get() < 0)
        throw ConnectionFailed("cannot connect to " + ep.host + ":" + ep.port);
    return sock;
}

void send_all(int fd, std::span<const std::uint8_t> data) {
    std::size_t off = 0;
    while (off < data.size()) {
        ssize_t n = ::send(fd, data.data() + off, data.size() - off, 0);
        if (n < 0) {
            if (errno == EINTR)
                continue;
            throw ConnectionFailed(std::string("send failed: ") + std::strerror(errno));
        }
        off += static_cast<std::size_t>(n);
    }
}

} // namespace

void write_capture(const std::string& path, std::span<const CaptureRecord> records) {
    std::ofstream f(path, std::ios::binary | std::ios::trunc);
    if (!f)
        throw CaptureError("cannot open " + path + " for writing");
    f.write(kMagic, sizeof(kMagic));
    f.put(static_cast<char>(kVersion));
    for (const auto& rec : records) {
        std::uint8_t head[12];
        store_u64_be(rec.arrival_micros, head);
        std::uint32_t len = static_cast<std::uint32_t>(rec.frame_bytes.size());
        head[8] = static_cast<std::uint8_t>(len >> 24);
        head[9] = static_cast<std::uint8_t>(len >> 16);
        head[10] = static_cast<std::uint8_t>(len >> 8);
        head[11] = static_cast<std::uint8_t>(len);
        f.write(reinterpret_cast<const char*>(head), sizeof(head));
        f.write(reinterpret_cast<const char*>(rec.frame_bytes.data()),
                static_cast<std::streamsize>(rec.frame_bytes.size()));
    }
    if (!f)
        throw CaptureError("write failed for " + path);
}

std::vector<CaptureRecord> read_capture(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw CaptureError("cannot open " + path);
    char magic[4];
    f.read(magic, sizeof(magic));
    if (f.gcount() != sizeof(magic) || std::memcmp(magic, kMagic, sizeof(kMagic)) != 0)
        throw BadMagic("not a capture file: " + path);
    int version = f.get();
    if (version == std::char_traits<char>::eof())
        throw BadMagic("capture file truncated before version octet");
    if (version != kVersion)
        throw UnsupportedVersion("capture version " + std::to_string(version) +
                                 " not supported");
    std::vector<CaptureRecord> records;
    for (std::size_t index = 0;; ++index) {
        std::uint8_t head[12];
        f.read(reinterpret_cast<char*>(head), sizeof(head));
        if (f.gcount() == 0 && f.eof())
            break;
        if (f.gcount() != sizeof(head))
            throw TruncatedRecord("record " + std::to_string(index) + " truncated in header",
                                  index);
        CaptureRecord rec;
        for (int i = 0; i < 8; ++i)
            rec.arrival_micros = rec.arrival_micros << 8 | head[i];
        std::uint32_t len = static_cast<std::uint32_t>(head[8]) << 24 |
                            static_cast<std::uint32_t>(head[9]) << 16 |
                            static_cast<std::uint32_t>(head[10]) << 8 | head[11];
        rec.frame_bytes.resize(len);
        f.read(reinterpret_cast<char*>(rec.frame_bytes.data()), len);
        if (f.gcount() != static_cast<std::streamsize>(len))
            throw TruncatedRecord("record " + std::to_string(index) + " truncated in body",
                                  index);
        records.push_back(std::move(rec));
    }
    return records;
}

std::vector<std::vector<std::uint8_t>> FrameSegmenter::feed(std::span<const std::uint8_t> chunk) {
    buf_.insert(buf_.end(), chunk.begin(), chunk.end());
    std::vector<std::vector<std::uint8_t>> frames;
    std::size_t pos = 0;
    while (buf_.size() - pos >= 4) {
        if (buf_[pos] != 0xAA)
            throw SegmentationError("stream position not at a frame boundary (lead-in byte " +
                                    std::to_string(buf_[pos]) + ")");
        std::size_t frame_size = static_cast<std::size_t>(buf_[pos + 2]) << 8 | buf_[pos + 3];
        if (frame_size < kMinFrameSize)
            throw SegmentationError("FRAMESIZE " + std::to_string(frame_size) +
                                    " below minimum frame length");
        if (buf_.size() - pos < frame_size)
            break;
        frames.emplace_back(buf_.begin() + static_cast<std::ptrdiff_t>(pos),
                            buf_.begin() + static_cast<std::ptrdiff_t>(pos + frame_size));
        pos += frame_size;
    }
    buf_.erase(buf_.begin(), buf_.begin() + static_cast<std::ptrdiff_t>(pos));
    return frames;
}

void tcp_send(const std::string& endpoint, std::span<const CaptureRecord> records, Pacing pacing) {
    Socket sock = connect_to(split_endpoint(endpoint));
    auto wall_start = std::chrono::steady_clock::now();
    std::uint64_t first_arrival = records.empty() ? 0 : records.front().arrival_micros;
    for (const auto& rec : records) {
        if (pacing == Pacing::as_recorded && rec.arrival_micros > first_arrival) {
            auto due = wall_start +
                       std::chrono::microseconds(rec.arrival_micros - first_arrival);
            std::this_thread::sleep_until(due);
        }
        send_all(sock.get(), rec.frame_bytes);
    }
}

std::vector<CaptureRecord> tcp_receive(const std::string& endpoint, double duration) {
    Endpoint ep = split_endpoint(endpoint);
    addrinfo hints{};
    hints.ai_family = AF_UNSPEC;
    hints.ai_socktype = SOCK_STREAM;
    hints.ai_flags = AI_PASSIVE;
    addrinfo* res = nullptr;
    if (::getaddrinfo(ep.host.c_str(), ep.port.c_str(), &hints, &res) != 0)
        throw ConnectionFailed("cannot resolve listen endpoint " + endpoint);
    Socket listener;
    for (addrinfo* ai = res; ai; ai = ai->ai_next) {
        int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
        if (fd < 0)
            continue;
        int one = 1;
        ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof(one));
        if (::bind(fd, ai->ai_addr, ai->ai_addrlen) == 0 && ::listen(fd, 1) == 0) {
            listener = Socket(fd);
            break;
        }
        ::close(fd);
    }
    ::freeaddrinfo(res);
    if (listener.get() < 0)
        throw ConnectionFailed("cannot listen on " + endpoint);

    Socket conn(::accept(listener.get(), nullptr, nullptr));
    if (conn.get() < 0)
        throw ConnectionFailed(std::string("accept failed: ") + std::strerror(errno));

    auto deadline = std::chrono::steady_clock::now() +
                    std::chrono::duration_cast<std::chrono::steady_clock::duration>(
                        std::chrono::duration<double>(duration));
    std::vector<CaptureRecord> records;
    FrameSegmenter segmenter;
    std::uint8_t chunk[4096];
    for (;;) {
        if (duration > 0.0) {
            auto remaining = deadline - std::chrono::steady_clock::now();
            if (remaining <= std::chrono::steady_clock::duration::zero())
                break;
            timeval tv{};
            auto us = std::chrono::duration_cast<std::chrono::microseconds>(remaining).count();
            tv.tv_sec = us / 1'000'000;
            tv.tv_usec = us % 1'000'000;
            ::setsockopt(conn.get(), SOL_SOCKET, SO_RCVTIMEO, &tv, sizeof(tv));
        }
        ssize_t n = ::recv(conn.get(), chunk, sizeof(chunk), 0);
        if (n < 0) {
            if (errno == EINTR)
                continue;
            if (errno == EAGAIN || errno == EWOULDBLOCK)
                break; // duration elapsed
            throw ConnectionFailed(std::string("recv failed: ") + std::strerror(errno));
        }
        if (n == 0)
            break; // peer closed
        std::uint64_t stamp = now_micros();
        for (auto& frame : segmenter.feed({chunk, static_cast<std::size_t>(n)}))
            records.push_back({stamp, std::move(frame)});
    }
    if (segmenter.pending_bytes() > 0)
        throw SegmentationError("connection ended mid-frame with " +
                                std::to_string(segmenter.pending_bytes()) + " stray bytes");
    return records;
}

} // namespace scamper
