#pragma once

#include <array>
#include <cstdint>

#include "timebin/interference.hpp"
#include "timebin/link.hpp"
#include "timebin/rates.hpp"

namespace timebin {

/// Complete description of one simulated experiment run.
struct Scenario {
    SourceBrightness brightness;
    PhaseConfig phases;
    ChannelParams signal_channel;
    ChannelParams idler_channel;
    std::uint64_t frames = 0;
    std::uint64_t seed = 1;

    /// Throws invariant_error / std::domain_error on invalid configuration.
    /// Both detectors must share one gate rate (the qubit frame rate).
    void validate() const;

    double gate_rate_hz() const { return signal_channel.detector.gate_rate_hz; }
    bool operator==(const Scenario&) const = default;
};

/// Singles and coincidence counts. Coincidences form the start-stop slot-pair
/// histogram: cell (j,k) counts frames in which the signal detector
/// registered output slot j and the idler detector output slot k. Per-slot
/// singles are kept alongside the totals so that every coincidence cell can
/// be bounded by its own slot's singles.
struct TallyCounters {
    std::uint64_t singles_signal = 0;
    std::uint64_t singles_idler = 0;
    std::array<std::uint64_t, 3> singles_signal_by_slot{};
    std::array<std::uint64_t, 3> singles_idler_by_slot{};
    std::array<std::array<std::uint64_t, 3>, 3> coincidences{};
    std::uint64_t frames_run = 0;

    /// slot arguments are 1-based.
    std::uint64_t coincidence(int slot_s, int slot_i) const {
        return coincidences[slot_s - 1][slot_i - 1];
    }
    TallyCounters& operator+=(const TallyCounters& other);
    bool operator==(const TallyCounters&) const = default;
};

/// Gate-by-gate stochastic simulation. Per frame, in fixed draw order:
///   1. pair count N ~ Poisson(2 mu_c), the mean pairs per two-pulse frame;
///   2. each pair draws a cell of joint_outcome_distribution, then each
///      photon is thinned by its channel transmittance;
///   3. per channel and per pump pulse slot {1,2}, noise photons
///      ~ Poisson(mu_n) are routed through single_photon_distribution and
///      thinned independently;
///   4. dark-count Bernoulli(d) per detector per output slot {1,2,3};
///   5. a detector registers a slot when at least one photon or dark event
///      lands on port a in that slot (port-b light is discarded; only port-a
///      detectors exist);
///   6. registered slots increment singles, and every registered
///      (signal slot, idler slot) pair increments the coincidence matrix.
/// Frame randomness is a pure function of (seed, frame index), so tallies
/// are bit-identical for any worker count. n_threads <= 0 picks the
/// hardware concurrency.
TallyCounters simulate(const Scenario& s, int n_threads = 0);

/// count / frames_run * gate_rate_hz for one slot pair (1-based).
double coincidence_rate_hz(const TallyCounters& t, int slot_s, int slot_i,
                           double gate_rate_hz);

} // namespace timebin
