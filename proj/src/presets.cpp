#include "timebin/presets.hpp"

#include <stdexcept>

namespace timebin {

namespace {

Scenario base_scenario() {
    Scenario s;
    s.phases = {0.0, 0.0, 0.0};
    s.signal_channel = {8.0, 0.0, 0.2, {0.08, 4e-5, 4e6}};
    s.idler_channel = {8.0, 0.0, 0.2, {0.07, 5e-5, 4e6}};
    s.frames = 10'000'000;
    s.seed = 1;
    return s;
}

} // namespace

Scenario preset_scenario(const std::string& name) {
    Scenario s = base_scenario();
    if (name == "uncooled") {
        s.brightness = {0.02, 0.03, 0.04};
    } else if (name == "cooled") {
        s.brightness = {0.04, 0.01, 0.02};
    } else if (name == "distributed-60km") {
        s.brightness = {0.04, 0.01, 0.02};
        s.signal_channel.fiber_length_km = 30.0;
        s.idler_channel.fiber_length_km = 30.0;
    } else {
        throw std::invalid_argument("unknown preset '" + name + "'");
    }
    return s;
}

const std::vector<std::string>& preset_names() {
    static const std::vector<std::string> names = {"uncooled", "cooled",
                                                   "distributed-60km"};
    return names;
}

} // namespace timebin
