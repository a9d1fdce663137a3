#include "timebin/link.hpp"

#include <cmath>
#include <stdexcept>

#include "timebin/errors.hpp"

namespace timebin {

void DetectorParams::validate() const {
    if (!(efficiency_eta >= 0.0 && efficiency_eta <= 1.0))
        throw invariant_error("detector: efficiency must be in [0,1]");
    if (!(dark_count_per_gate >= 0.0 && dark_count_per_gate < 1.0))
        throw invariant_error("detector: dark count per gate must be in [0,1)");
    if (!(gate_rate_hz > 0.0))
        throw invariant_error("detector: gate rate must be > 0 Hz");
}

void ChannelParams::validate() const {
    if (!(fixed_loss_db >= 0.0))
        throw invariant_error("channel: fixed loss must be >= 0 dB");
    if (!(fiber_length_km >= 0.0))
        throw invariant_error("channel: fiber length must be >= 0 km");
    if (!(fiber_loss_db_per_km >= 0.0))
        throw invariant_error("channel: fiber loss must be >= 0 dB/km");
    detector.validate();
}

double transmittance(const ChannelParams& c) {
    c.validate();
    const double total_db = c.fixed_loss_db + c.fiber_length_km * c.fiber_loss_db_per_km;
    return c.detector.efficiency_eta * std::pow(10.0, -total_db / 10.0);
}

void FrequencyPlan::validate() const {
    if (!(pump_hz > 0.0))
        throw invariant_error("frequency plan: pump frequency must be > 0");
    if (!(offset_hz >= 0.0 && offset_hz < pump_hz))
        throw invariant_error("frequency plan: offset must be in [0, pump)");
}

} // namespace timebin
