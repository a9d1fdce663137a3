#pragma once

#include <string>
#include <vector>

#include "timebin/montecarlo.hpp"

namespace timebin {

/// Named experiment presets:
///   uncooled          mu_c = 0.02, noise 0.03/0.04, back to back
///   cooled            mu_c = 0.04, noise 0.01/0.02, back to back
///   distributed-60km  cooled source plus 30 km of 0.2 dB/km fiber per arm
/// All share mu_s = 0.05, mu_i = 0.06, 8 dB fixed loss per arm, detector
/// efficiencies 8%/7%, dark counts 4e-5/5e-5 per gate, 4 MHz gates.
/// Throws std::invalid_argument for an unknown name.
Scenario preset_scenario(const std::string& name);

const std::vector<std::string>& preset_names();

} // namespace timebin
