#include "scamper/sidecar.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace scamper {

namespace {

std::string slurp(const std::string& path) {
    std::ifstream f(path);
    if (!f)
        throw Error("cannot open " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

PhasorFormat phasor_format_from(const std::string& name) {
    if (name == "int16-rectangular")
        return PhasorFormat::int16_rect;
    if (name == "float32-rectangular")
        return PhasorFormat::float32_rect;
    if (name == "float32-polar")
        return PhasorFormat::float32_polar;
    throw Error("unknown phasor_format '" + name + "'");
}

NumberFormat number_format_from(const std::string& name) {
    if (name == "int16")
        return NumberFormat::int16;
    if (name == "float32")
        return NumberFormat::float32;
    throw Error("unknown number format '" + name + "'");
}

PlanMode plan_mode_from(const std::string& name) {
    if (name == "low-bits")
        return PlanMode::low_bits;
    if (name == "high-bits")
        return PlanMode::high_bits;
    throw Error("unknown plan mode '" + name + "'");
}

} // namespace

const char* phasor_format_name(PhasorFormat f) {
    switch (f) {
    case PhasorFormat::int16_rect: return "int16-rectangular";
    case PhasorFormat::float32_rect: return "float32-rectangular";
    case PhasorFormat::float32_polar: return "float32-polar";
    }
    return "?";
}

const char* number_format_name(NumberFormat f) {
    return f == NumberFormat::int16 ? "int16" : "float32";
}

Sidecar parse_sidecar(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    Sidecar sc;
    sc.stream.id_code = j.at("id_code").get<std::uint16_t>();
    sc.stream.timebase = j.at("timebase").get<std::uint32_t>();
    sc.stream.update_rate = j.at("update_rate").get<std::uint32_t>();
    for (const auto& p : j.at("pmus")) {
        PmuConfig pmu;
        pmu.phasor_count = p.at("phasor_count").get<std::size_t>();
        pmu.analog_count = p.at("analog_count").get<std::size_t>();
        pmu.digital_word_count = p.at("digital_word_count").get<std::size_t>();
        pmu.phasor_format = phasor_format_from(p.at("phasor_format").get<std::string>());
        pmu.analog_format = number_format_from(p.at("analog_format").get<std::string>());
        pmu.freq_format = number_format_from(p.at("freq_format").get<std::string>());
        sc.stream.pmus.push_back(pmu);
    }
    sc.stream.validate();
    if (j.contains("plan")) {
        const auto& p = j.at("plan");
        sc.plan = make_plan(plan_mode_from(p.at("mode").get<std::string>()),
                            p.at("k").get<unsigned>());
    }
    sc.sim.stream = sc.stream;
    if (j.contains("sim")) {
        const auto& s = j.at("sim");
        if (s.contains("duration"))
            sc.sim.duration = s.at("duration").get<double>();
        if (s.contains("start_soc"))
            sc.sim.start_soc = s.at("start_soc").get<std::uint32_t>();
        if (s.contains("phasor_magnitude"))
            sc.sim.phasor_magnitude = s.at("phasor_magnitude").get<double>();
        if (s.contains("phasor_noise_sigma"))
            sc.sim.phasor_noise_sigma = s.at("phasor_noise_sigma").get<double>();
        if (s.contains("frequency"))
            sc.sim.frequency = s.at("frequency").get<double>();
        if (s.contains("timestamp_jitter_sigma"))
            sc.sim.timestamp_jitter_sigma = s.at("timestamp_jitter_sigma").get<double>();
        if (s.contains("rng_seed"))
            sc.sim.rng_seed = s.at("rng_seed").get<std::uint64_t>();
    }
    return sc;
}

Sidecar load_sidecar(const std::string& path) { return parse_sidecar(slurp(path)); }

AttackSpec parse_attack_spec(const std::string& json_text) {
    nlohmann::json j = nlohmann::json::parse(json_text);
    AttackSpec spec;
    std::string kind = j.at("kind").get<std::string>();
    if (kind == "fdi")
        spec.kind = AttackKind::fdi;
    else if (kind == "replay")
        spec.kind = AttackKind::replay;
    else if (kind == "none")
        spec.kind = AttackKind::none;
    else
        throw Error("unknown attack kind '" + kind + "'");
    if (j.contains("t_start"))
        spec.t_start = j.at("t_start").get<double>();
    if (j.contains("t_end"))
        spec.t_end = j.at("t_end").get<double>();
    if (j.contains("pmu_index"))
        spec.pmu_index = j.at("pmu_index").get<std::size_t>();
    if (j.contains("phasor_index"))
        spec.phasor_index = j.at("phasor_index").get<std::size_t>();
    if (j.contains("perturbation")) {
        const auto& p = j.at("perturbation");
        std::string type = p.at("type").get<std::string>();
        if (type == "multiplicative")
            spec.perturbation = PerturbKind::multiplicative;
        else if (type == "additive")
            spec.perturbation = PerturbKind::additive;
        else
            throw Error("unknown perturbation type '" + type + "'");
        spec.magnitude = p.at("magnitude").get<double>();
    }
    if (j.contains("source_start"))
        spec.source_start = j.at("source_start").get<double>();
    if (j.contains("source_end"))
        spec.source_end = j.at("source_end").get<double>();
    return spec;
}

AttackSpec load_attack_spec(const std::string& path) { return parse_attack_spec(slurp(path)); }

} // namespace scamper
