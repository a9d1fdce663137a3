#include "timebin/interference.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

namespace timebin {

namespace {

using cd = std::complex<double>;

struct BranchTerm {
    int slot;
    Port port;
    cd amplitude; // unit modulus; the common 1/2 magnitude is applied at the boundary
};

// Analyzer action on input slot k, common factor 1/2 taken out:
//   |k> -> 1/2 (|k,a> - |k,b> + e^{i theta}|k+1,a> + e^{i theta}|k+1,b>)
std::array<BranchTerm, 4> analyzer_branches(int input_slot, double theta) {
    if (input_slot != 1 && input_slot != 2)
        throw std::domain_error("interference: input slot must be 1 or 2");
    const cd delayed = std::polar(1.0, theta);
    return {{{input_slot, Port::a, cd{1.0, 0.0}},
             {input_slot, Port::b, cd{-1.0, 0.0}},
             {input_slot + 1, Port::a, delayed},
             {input_slot + 1, Port::b, delayed}}};
}

} // namespace

void PhaseConfig::validate() const {
    if (!std::isfinite(phi) || !std::isfinite(theta_s) || !std::isfinite(theta_i))
        throw std::domain_error("phases: all phases must be finite");
}

SingleOutcome SingleOutcome::from_index(int i) {
    return {i / 2 + 1, static_cast<Port>(i % 2)};
}

double SingleOutcomeDistribution::total() const {
    double sum = 0.0;
    for (double v : p_) sum += v;
    return sum;
}

double JointOutcomeDistribution::total() const {
    double sum = 0.0;
    for (double v : p_) sum += v;
    return sum;
}

SingleOutcomeDistribution JointOutcomeDistribution::signal_marginal() const {
    SingleOutcomeDistribution m;
    for (int s = 0; s < SingleOutcome::cell_count; ++s)
        for (int i = 0; i < SingleOutcome::cell_count; ++i)
            m.cell(s) += p_[s * SingleOutcome::cell_count + i];
    return m;
}

SingleOutcomeDistribution JointOutcomeDistribution::idler_marginal() const {
    SingleOutcomeDistribution m;
    for (int s = 0; s < SingleOutcome::cell_count; ++s)
        for (int i = 0; i < SingleOutcome::cell_count; ++i)
            m.cell(i) += p_[s * SingleOutcome::cell_count + i];
    return m;
}

SingleOutcomeDistribution single_photon_distribution(int input_slot, double theta) {
    SingleOutcomeDistribution dist;
    for (const auto& term : analyzer_branches(input_slot, theta))
        dist.cell(SingleOutcome{term.slot, term.port}.index()) +=
            0.25 * std::norm(term.amplitude);
    return dist;
}

JointOutcomeDistribution joint_outcome_distribution(const PhaseConfig& pc) {
    pc.validate();

    // |Psi> = 1/sqrt(2) (|1>_s |1>_i + e^{i phi} |2>_s |2>_i); tensor each
    // component through both analyzers and accumulate amplitudes. The two
    // components overlap only in the (slot 2, slot 2) cells, where the
    // interference term lives; non-coincident cells come out of the same
    // tensor products rather than a hand-written list. Every term shares the
    // magnitude 1/(4 sqrt 2), so probabilities are norm(amp) / 32, an exact
    // power-of-two scaling.
    struct Component {
        int slot;
        cd prefactor; // unit modulus
    };
    const Component components[2] = {
        {1, cd{1.0, 0.0}},
        {2, std::polar(1.0, pc.phi)},
    };

    std::array<cd, JointOutcomeDistribution::cell_count> amps{};
    for (const auto& comp : components) {
        const auto signal = analyzer_branches(comp.slot, pc.theta_s);
        const auto idler = analyzer_branches(comp.slot, pc.theta_i);
        for (const auto& st : signal)
            for (const auto& it : idler) {
                const int idx = JointOutcomeDistribution::index({st.slot, st.port},
                                                                {it.slot, it.port});
                amps[idx] += comp.prefactor * st.amplitude * it.amplitude;
            }
    }

    JointOutcomeDistribution dist;
    for (int idx = 0; idx < JointOutcomeDistribution::cell_count; ++idx)
        dist.cell(idx) = std::norm(amps[idx]) / 32.0;
    return dist;
}

double coincidence_probability_slot2(const PhaseConfig& pc, Port port_s, Port port_i) {
    return joint_outcome_distribution(pc).probability({2, port_s}, {2, port_i});
}

} // namespace timebin
