#pragma once

// Measurement artifacts: inter-sample-time series, histogram/eCDF tables,
// and verdict report serialization (CSV and JSON).

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "scamper/capture_io.hpp"
#include "scamper/covert_channel.hpp"
#include "scamper/integrity.hpp"

namespace scamper {

enum class TimeSource { embedded, arrival };

// Differences of consecutive timestamps. For the embedded source the
// timestamp is soc + fracsec/timebase with covert high-bit positions
// masked first (when a plan is given); for the arrival source it is the
// capture arrival time.
std::vector<double> inter_sample_times(std::span<const CaptureRecord> stream, TimeSource source,
                                       const StreamConfig& config,
                                       const std::optional<BitPlan>& plan = std::nullopt);

struct HistogramTable {
    struct Bin {
        double lo = 0.0;
        double hi = 0.0;
        std::size_t count = 0;
    };
    std::vector<Bin> bins;                        // equal width over [min, max]
    std::vector<std::pair<double, double>> ecdf;  // sorted (value, rank/n)
};

HistogramTable histogram_and_ecdf(std::span<const double> samples, std::size_t bin_count);

std::string histogram_to_json(const HistogramTable& table);

enum class ReportFormat { csv, json };

// One record per verdict. CSV columns are fixed as
// "window,status,first_soc,last_soc" with SOC+fraction second values;
// JSON additionally carries the raw SOC and FRACSEC fields.
std::string emit_report(std::span<const WindowVerdict> verdicts, ReportFormat format);

// Inverse of the JSON emitter.
std::vector<WindowVerdict> parse_report_json(const std::string& text);

} // namespace scamper
