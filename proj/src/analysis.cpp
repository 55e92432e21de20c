#include "scamper/analysis.hpp"

#include <algorithm>
#include <cstdio>

#include <json.hpp>

namespace scamper {

namespace {

std::string format_seconds(double t) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.6f", t);
    return buf;
}

VerdictStatus status_from_name(const std::string& name) {
    for (VerdictStatus s : {VerdictStatus::ok, VerdictStatus::hash_mismatch,
                            VerdictStatus::replay_suspected, VerdictStatus::unverifiable_bootstrap,
                            VerdictStatus::incomplete}) {
        if (name == verdict_status_name(s))
            return s;
    }
    throw Error("unknown verdict status '" + name + "'");
}

} // namespace

std::vector<double> inter_sample_times(std::span<const CaptureRecord> stream, TimeSource source,
                                       const StreamConfig& config,
                                       const std::optional<BitPlan>& plan) {
    if (stream.size() < 2)
        throw OutOfRange("inter-sample times need at least 2 frames");
    std::vector<double> out;
    out.reserve(stream.size() - 1);
    if (source == TimeSource::arrival) {
        for (std::size_t i = 1; i < stream.size(); ++i)
            out.push_back((static_cast<double>(stream[i].arrival_micros) -
                           static_cast<double>(stream[i - 1].arrival_micros)) /
                          1e6);
        return out;
    }
    double prev = 0.0;
    for (std::size_t i = 0; i < stream.size(); ++i) {
        DataFrame f = parse_frame_strict(stream[i].frame_bytes, config);
        std::uint32_t frac = plan ? timestamp_fracsec(f.fracsec, *plan) : f.fracsec;
        double t = static_cast<double>(f.soc) + fracsec_decode(frac, config.timebase);
        if (i > 0)
            out.push_back(t - prev);
        prev = t;
    }
    return out;
}

HistogramTable histogram_and_ecdf(std::span<const double> samples, std::size_t bin_count) {
    if (samples.empty())
        throw OutOfRange("histogram needs at least one sample");
    if (bin_count == 0)
        throw OutOfRange("bin count must be positive");
    HistogramTable table;
    auto [lo_it, hi_it] = std::minmax_element(samples.begin(), samples.end());
    double lo = *lo_it, hi = *hi_it;
    if (lo == hi) {
        // degenerate: all samples equal, one occupied bin
        table.bins.push_back({lo, hi, samples.size()});
    } else {
        double width = (hi - lo) / static_cast<double>(bin_count);
        table.bins.resize(bin_count);
        for (std::size_t b = 0; b < bin_count; ++b) {
            table.bins[b].lo = lo + width * static_cast<double>(b);
            table.bins[b].hi = b + 1 == bin_count ? hi : lo + width * static_cast<double>(b + 1);
        }
        for (double v : samples) {
            auto b = static_cast<std::size_t>((v - lo) / width);
            if (b >= bin_count)
                b = bin_count - 1; // v == hi
            ++table.bins[b].count;
        }
    }
    std::vector<double> sorted(samples.begin(), samples.end());
    std::sort(sorted.begin(), sorted.end());
    table.ecdf.reserve(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        table.ecdf.emplace_back(sorted[i],
                                static_cast<double>(i + 1) / static_cast<double>(sorted.size()));
    return table;
}

std::string histogram_to_json(const HistogramTable& table) {
    nlohmann::json j;
    j["histogram"] = nlohmann::json::array();
    for (const auto& bin : table.bins)
        j["histogram"].push_back({{"lo", bin.lo}, {"hi", bin.hi}, {"count", bin.count}});
    j["ecdf"] = nlohmann::json::array();
    for (const auto& [value, p] : table.ecdf)
        j["ecdf"].push_back({{"value", value}, {"p", p}});
    return j.dump(2);
}

std::string emit_report(std::span<const WindowVerdict> verdicts, ReportFormat format) {
    if (format == ReportFormat::csv) {
        std::string out = "window,status,first_soc,last_soc\n";
        for (const auto& v : verdicts) {
            out += std::to_string(v.window_index);
            out += ',';
            out += verdict_status_name(v.status);
            out += ',';
            out += format_seconds(v.first_time);
            out += ',';
            out += format_seconds(v.last_time);
            out += '\n';
        }
        return out;
    }
    nlohmann::json j = nlohmann::json::array();
    for (const auto& v : verdicts) {
        j.push_back({{"window", v.window_index},
                     {"status", verdict_status_name(v.status)},
                     {"first_soc", v.first_soc},
                     {"first_fracsec", v.first_fracsec},
                     {"last_soc", v.last_soc},
                     {"last_fracsec", v.last_fracsec},
                     {"first_time", v.first_time},
                     {"last_time", v.last_time}});
    }
    return j.dump(2) + "\n";
}

std::vector<WindowVerdict> parse_report_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    std::vector<WindowVerdict> out;
    for (const auto& item : j) {
        WindowVerdict v;
        v.window_index = item.at("window").get<std::uint64_t>();
        v.status = status_from_name(item.at("status").get<std::string>());
        v.first_soc = item.at("first_soc").get<std::uint32_t>();
        v.first_fracsec = item.at("first_fracsec").get<std::uint32_t>();
        v.last_soc = item.at("last_soc").get<std::uint32_t>();
        v.last_fracsec = item.at("last_fracsec").get<std::uint32_t>();
        v.first_time = item.at("first_time").get<double>();
        v.last_time = item.at("last_time").get<double>();
        out.push_back(v);
    }
    return out;
}

} // namespace scamper
