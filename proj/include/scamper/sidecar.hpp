#pragma once

// JSON sidecar carrying the out-of-band stream description (TIMEBASE,
// channel counts, formats, update rate), the covert bit plan, and
// optional simulator parameters. Attack specs use a separate file.

#include <optional>
#include <string>

#include "scamper/covert_channel.hpp"
#include "scamper/mitm.hpp"
#include "scamper/pmu_sim.hpp"

namespace scamper {

struct Sidecar {
    StreamConfig stream;
    std::optional<BitPlan> plan;
    SimConfig sim; // sim.stream mirrors `stream`
};

Sidecar parse_sidecar(const std::string& json_text);
Sidecar load_sidecar(const std::string& path);

AttackSpec parse_attack_spec(const std::string& json_text);
AttackSpec load_attack_spec(const std::string& path);

const char* phasor_format_name(PhasorFormat f);
const char* number_format_name(NumberFormat f);

} // namespace scamper
