#pragma once

namespace timebin {

/// Gated single-photon detector: binary click per gated slot, no photon
/// number resolution, independent dark-count Bernoulli trial per slot.
struct DetectorParams {
    double efficiency_eta = 0.0;      // in [0,1]
    double dark_count_per_gate = 0.0; // in [0,1)
    double gate_rate_hz = 0.0;        // > 0

    void validate() const;
    bool operator==(const DetectorParams&) const = default;
};

/// Per-arm loss budget from source to detector.
struct ChannelParams {
    double fixed_loss_db = 0.0;       // lumped filter + interferometer loss
    double fiber_length_km = 0.0;
    double fiber_loss_db_per_km = 0.0;
    DetectorParams detector;

    void validate() const;
    bool operator==(const ChannelParams&) const = default;
};

/// End-to-end transmittance including detector efficiency:
/// eta * 10^{-(fixed_dB + km * dB_per_km)/10}.
double transmittance(const ChannelParams& c);

/// Signal/idler channel placement around the pump. The signal and idler
/// frequencies are derived accessors, so 2*pump = signal + idler holds by
/// construction.
struct FrequencyPlan {
    double pump_hz = 0.0;
    double offset_hz = 0.0;

    double signal_hz() const { return pump_hz + offset_hz; }
    double idler_hz() const { return pump_hz - offset_hz; }
    void validate() const;
};

} // namespace timebin
