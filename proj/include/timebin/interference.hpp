#pragma once

#include <array>

namespace timebin {

/// The three free phases of the fringe: pump relative phase phi (= 2*phi_p)
/// and the two analyzer interferometer phases. All operations are 2*pi
/// periodic in each field and depend on theta_s, theta_i only through their
/// sum.
struct PhaseConfig {
    double phi = 0.0;
    double theta_s = 0.0;
    double theta_i = 0.0;

    void validate() const; // all fields finite
    bool operator==(const PhaseConfig&) const = default;

    double theta_total() const { return theta_s + theta_i; }
};

enum class Port : int { a = 0, b = 1 };

/// One photon's detection outcome behind an analyzer: output time slot
/// (1..3; input slots 1..2 spread to 3 output slots) and output port.
struct SingleOutcome {
    int slot = 1; // 1..3
    Port port = Port::a;

    static constexpr int cell_count = 6;
    int index() const { return (slot - 1) * 2 + static_cast<int>(port); }
    static SingleOutcome from_index(int i);
    bool operator==(const SingleOutcome&) const = default;
};

/// Probability over the six (slot, port) cells of one photon.
class SingleOutcomeDistribution {
public:
    double probability(SingleOutcome o) const { return p_[o.index()]; }
    double& cell(int index) { return p_[index]; }
    double cell(int index) const { return p_[index]; }
    double total() const;

private:
    std::array<double, SingleOutcome::cell_count> p_{};
};

/// Joint probability over the 36 (signal outcome, idler outcome) cells of
/// one entangled pair after both analyzers. Entries may be zero; the total
/// is 1 up to rounding because probabilities are squared amplitudes of a
/// normalized state, never hand-entered.
class JointOutcomeDistribution {
public:
    static constexpr int cell_count = 36;

    static int index(SingleOutcome s, SingleOutcome i) {
        return s.index() * SingleOutcome::cell_count + i.index();
    }
    double probability(SingleOutcome s, SingleOutcome i) const { return p_[index(s, i)]; }
    double& cell(int index) { return p_[index]; }
    double cell(int index) const { return p_[index]; }
    double total() const;

    SingleOutcomeDistribution signal_marginal() const;
    SingleOutcomeDistribution idler_marginal() const;

    const std::array<double, cell_count>& cells() const { return p_; }

private:
    std::array<double, cell_count> p_{};
};

/// Action of one 1-bit-delay analyzer on a photon in input slot k (1 or 2):
/// four outcomes (k,a), (k,b), (k+1,a), (k+1,b), each with probability 1/4.
/// The interferometer phase enters amplitudes only as a unit-modulus factor,
/// so single-photon probabilities are phase independent.
SingleOutcomeDistribution single_photon_distribution(int input_slot, double theta);

/// Full two-photon outcome distribution of one pair. Amplitudes of the
/// entangled superposition are propagated through both analyzers and squared
/// at the end; the slot-2 coincident cells carry the interference term
/// |e^{i(theta_s+theta_i)} +/- e^{i phi}|^2 / 32.
JointOutcomeDistribution joint_outcome_distribution(const PhaseConfig& pc);

/// Probability of the (slot 2, slot 2) coincidence for the given ports:
/// (1 + cos(theta_s+theta_i - phi))/16 for equal ports and
/// (1 - cos(theta_s+theta_i - phi))/16 for unequal ports. Reads the cell of
/// joint_outcome_distribution so the two agree bit for bit.
double coincidence_probability_slot2(const PhaseConfig& pc, Port port_s, Port port_i);

} // namespace timebin
