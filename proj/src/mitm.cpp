#include "scamper/mitm.hpp"

#include <string>

namespace scamper {

namespace {

bool in_interval(const CaptureRecord& rec, std::uint64_t first_arrival, double lo, double hi) {
    double t = static_cast<double>(rec.arrival_micros - first_arrival) / 1e6;
    return t >= lo && t < hi;
}

} // namespace

std::vector<CaptureRecord> apply_fdi(std::span<const CaptureRecord> stream,
                                     const AttackSpec& spec, const StreamConfig& config) {
    std::vector<CaptureRecord> out(stream.begin(), stream.end());
    if (stream.empty())
        return out;
    if (spec.pmu_index >= config.pmus.size() ||
        spec.phasor_index >= config.pmus[spec.pmu_index].phasor_count)
        throw TargetOutOfRange("no phasor " + std::to_string(spec.phasor_index) + " in PMU " +
                               std::to_string(spec.pmu_index));
    std::uint64_t first = stream.front().arrival_micros;
    for (auto& rec : out) {
        if (!in_interval(rec, first, spec.t_start, spec.t_end))
            continue;
        ParseResult parsed = parse_frame(rec.frame_bytes, config);
        if (!parsed.frame)
            throw Error("unparseable frame in FDI interval: " + parsed.message);
        DataFrame frame = *std::move(parsed.frame);
        PhasorValue& ph = frame.pmu_blocks[spec.pmu_index].phasors[spec.phasor_index];
        if (spec.perturbation == PerturbKind::multiplicative) {
            // scale the magnitude; for rectangular formats both components
            ph.a = static_cast<float>(ph.a * spec.magnitude);
            if (config.pmus[spec.pmu_index].phasor_format != PhasorFormat::float32_polar)
                ph.b = static_cast<float>(ph.b * spec.magnitude);
        } else {
            ph.a = static_cast<float>(ph.a + spec.magnitude);
        }
        rec.frame_bytes = serialize_frame(frame, config);
    }
    return out;
}

std::vector<CaptureRecord> apply_replay(std::span<const CaptureRecord> stream,
                                        const AttackSpec& spec, const StreamConfig& config) {
    (void)config;
    std::vector<CaptureRecord> out(stream.begin(), stream.end());
    if (stream.empty())
        return out;
    std::uint64_t first = stream.front().arrival_micros;
    std::vector<std::size_t> source, target;
    for (std::size_t i = 0; i < stream.size(); ++i) {
        if (in_interval(stream[i], first, spec.source_start, spec.source_end))
            source.push_back(i);
        if (in_interval(stream[i], first, spec.t_start, spec.t_end))
            target.push_back(i);
    }
    if (source.size() != target.size())
        throw IntervalMismatch("replay source has " + std::to_string(source.size()) +
                               " frames, target " + std::to_string(target.size()));
    for (std::size_t i = 0; i < target.size(); ++i)
        out[target[i]].frame_bytes = stream[source[i]].frame_bytes;
    return out;
}

std::vector<CaptureRecord> apply_attack(std::span<const CaptureRecord> stream,
                                        const AttackSpec& spec, const StreamConfig& config) {
    switch (spec.kind) {
    case AttackKind::fdi: return apply_fdi(stream, spec, config);
    case AttackKind::replay: return apply_replay(stream, spec, config);
    case AttackKind::none: return {stream.begin(), stream.end()};
    }
    throw Error("unknown attack kind");
}

} // namespace scamper
