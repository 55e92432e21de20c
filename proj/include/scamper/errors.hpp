#pragma once

#include <stdexcept>
#include <string>

namespace scamper {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// c37_codec
class OutOfRange : public Error {
public:
    using Error::Error;
};
class ConfigMismatch : public Error {
public:
    using Error::Error;
};

// covert_channel
class KTooLarge : public Error {
public:
    using Error::Error;
};
class InsufficientFrames : public Error {
public:
    using Error::Error;
};

// mitm
class TargetOutOfRange : public Error {
public:
    using Error::Error;
};
class IntervalMismatch : public Error {
public:
    using Error::Error;
};

// capture_io
class CaptureError : public Error {
public:
    using Error::Error;
};
class BadMagic : public CaptureError {
public:
    using CaptureError::CaptureError;
};
class UnsupportedVersion : public CaptureError {
public:
    using CaptureError::CaptureError;
};
class TruncatedRecord : public CaptureError {
public:
    TruncatedRecord(const std::string& msg, std::size_t record_index)
        : CaptureError(msg), record_index(record_index) {}
    std::size_t record_index;
};
class ConnectionFailed : public Error {
public:
    using Error::Error;
};
class SegmentationError : public Error {
public:
    using Error::Error;
};

} // namespace scamper
