#pragma once

#include <string>
#include <string_view>

#include "timebin/montecarlo.hpp"

namespace timebin {

/// Parses the scenario file format:
///
///   # comment
///   [source]
///   mu_c = 0.04
///   mu_noise_signal = 0.01          # or the raman-reference alternative
///   mu_noise_idler = 0.02
///   [phases]
///   phi = 0.0
///   theta_s = 0.0
///   theta_i = 0.0
///   [signal] / [idler]
///   fixed_loss_db, fiber_length_km, fiber_loss_db_per_km, efficiency,
///   dark_per_gate
///   [run]
///   frames, seed, gate_rate_hz
///
/// The [source] noise may instead be given as a measured reference scaled to
/// an operating temperature via the Raman occupancy factors:
///   noise_ref_signal, noise_ref_idler, noise_ref_temperature_k,
///   temperature_k, detuning_ghz
/// (signal scales as the anti-Stokes sideband, idler as the Stokes one).
///
/// Unknown sections or keys are rejected with file/line diagnostics
/// (parse_error); value-level invariant violations raise invariant_error.
Scenario parse_scenario_text(std::string_view text, const std::string& origin);
Scenario load_scenario_file(const std::string& path);

/// Serializes a scenario back into the file format above.
std::string scenario_to_text(const Scenario& s);

} // namespace timebin
