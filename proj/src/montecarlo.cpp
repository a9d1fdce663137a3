#include "timebin/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

#include "timebin/errors.hpp"
#include "timebin/rng.hpp"

namespace timebin {

void Scenario::validate() const {
    brightness.validate();
    phases.validate();
    signal_channel.validate();
    idler_channel.validate();
    if (frames < 1)
        throw invariant_error("scenario: frames must be >= 1");
    if (signal_channel.detector.gate_rate_hz != idler_channel.detector.gate_rate_hz)
        throw invariant_error("scenario: detectors must share one gate rate");
}

TallyCounters& TallyCounters::operator+=(const TallyCounters& other) {
    singles_signal += other.singles_signal;
    singles_idler += other.singles_idler;
    for (int j = 0; j < 3; ++j) {
        singles_signal_by_slot[j] += other.singles_signal_by_slot[j];
        singles_idler_by_slot[j] += other.singles_idler_by_slot[j];
        for (int k = 0; k < 3; ++k)
            coincidences[j][k] += other.coincidences[j][k];
    }
    frames_run += other.frames_run;
    return *this;
}

namespace {

// Cumulative distribution over the 36 joint cells, decoded to 1-based output
// slots with a port-a flag per side. Cells are kept in index order so draws
// are reproducible regardless of which cells are zero.
struct JointSampler {
    std::array<double, JointOutcomeDistribution::cell_count> cdf{};
    struct Cell {
        int slot_s;
        int slot_i;
        bool port_a_s;
        bool port_a_i;
    };
    std::array<Cell, JointOutcomeDistribution::cell_count> cells{};

    explicit JointSampler(const JointOutcomeDistribution& dist) {
        double cum = 0.0;
        for (int idx = 0; idx < JointOutcomeDistribution::cell_count; ++idx) {
            const auto s = SingleOutcome::from_index(idx / SingleOutcome::cell_count);
            const auto i = SingleOutcome::from_index(idx % SingleOutcome::cell_count);
            cum += dist.cell(idx);
            cdf[idx] = cum;
            cells[idx] = {s.slot, i.slot, s.port == Port::a, i.port == Port::a};
        }
        cdf.back() = 1.0; // guard against rounding shortfall
    }

    const Cell& draw(double u) const {
        int idx = 0;
        while (u >= cdf[idx]) ++idx;
        return cells[idx];
    }
};

// Same idea for one noise photon behind an analyzer.
struct SingleSampler {
    std::array<double, SingleOutcome::cell_count> cdf{};
    struct Cell {
        int slot;
        bool port_a;
    };
    std::array<Cell, SingleOutcome::cell_count> cells{};

    explicit SingleSampler(const SingleOutcomeDistribution& dist) {
        double cum = 0.0;
        for (int idx = 0; idx < SingleOutcome::cell_count; ++idx) {
            const auto o = SingleOutcome::from_index(idx);
            cum += dist.cell(idx);
            cdf[idx] = cum;
            cells[idx] = {o.slot, o.port == Port::a};
        }
        cdf.back() = 1.0;
    }

    const Cell& draw(double u) const {
        int idx = 0;
        while (u >= cdf[idx]) ++idx;
        return cells[idx];
    }
};

struct SimTables {
    double alpha_s, alpha_i;
    double d_s, d_i;
    double lambda_pairs, exp_neg_pairs;   // Poisson mean 2 mu_c per frame
    double mu_ns, exp_neg_ns;             // per-pulse noise means
    double mu_ni, exp_neg_ni;
    JointSampler joint;
    SingleSampler noise_s[2]; // signal analyzer, input pulse slots 1 and 2
    SingleSampler noise_i[2];

    explicit SimTables(const Scenario& s)
        : alpha_s(transmittance(s.signal_channel)),
          alpha_i(transmittance(s.idler_channel)),
          d_s(s.signal_channel.detector.dark_count_per_gate),
          d_i(s.idler_channel.detector.dark_count_per_gate),
          lambda_pairs(2.0 * s.brightness.mu_c),
          exp_neg_pairs(std::exp(-lambda_pairs)),
          mu_ns(s.brightness.mu_ns),
          exp_neg_ns(std::exp(-mu_ns)),
          mu_ni(s.brightness.mu_ni),
          exp_neg_ni(std::exp(-mu_ni)),
          joint(joint_outcome_distribution(s.phases)),
          noise_s{SingleSampler(single_photon_distribution(1, s.phases.theta_s)),
                  SingleSampler(single_photon_distribution(2, s.phases.theta_s))},
          noise_i{SingleSampler(single_photon_distribution(1, s.phases.theta_i)),
                  SingleSampler(single_photon_distribution(2, s.phases.theta_i))} {}
};

// One gated frame. The draw order is fixed and every branch consumes a
// deterministic number of uniforms given the drawn counts, so a frame is a
// pure function of its RNG stream.
inline void run_frame(FrameRng& rng, const SimTables& t, TallyCounters& tally) {
    bool sig[3] = {false, false, false};
    bool idl[3] = {false, false, false};

    const int n_pairs = rng.poisson(t.lambda_pairs, t.exp_neg_pairs);
    for (int n = 0; n < n_pairs; ++n) {
        const auto& cell = t.joint.draw(rng.uniform());
        const bool s_kept = rng.uniform() < t.alpha_s;
        const bool i_kept = rng.uniform() < t.alpha_i;
        if (cell.port_a_s && s_kept) sig[cell.slot_s - 1] = true;
        if (cell.port_a_i && i_kept) idl[cell.slot_i - 1] = true;
    }

    for (int pulse = 0; pulse < 2; ++pulse) {
        const int n_noise = rng.poisson(t.mu_ns, t.exp_neg_ns);
        for (int n = 0; n < n_noise; ++n) {
            const auto& cell = t.noise_s[pulse].draw(rng.uniform());
            const bool kept = rng.uniform() < t.alpha_s;
            if (cell.port_a && kept) sig[cell.slot - 1] = true;
        }
    }
    for (int pulse = 0; pulse < 2; ++pulse) {
        const int n_noise = rng.poisson(t.mu_ni, t.exp_neg_ni);
        for (int n = 0; n < n_noise; ++n) {
            const auto& cell = t.noise_i[pulse].draw(rng.uniform());
            const bool kept = rng.uniform() < t.alpha_i;
            if (cell.port_a && kept) idl[cell.slot - 1] = true;
        }
    }

    for (int j = 0; j < 3; ++j)
        if (rng.uniform() < t.d_s) sig[j] = true;
    for (int j = 0; j < 3; ++j)
        if (rng.uniform() < t.d_i) idl[j] = true;

    for (int j = 0; j < 3; ++j) {
        if (sig[j]) {
            ++tally.singles_signal;
            ++tally.singles_signal_by_slot[j];
        }
        if (idl[j]) {
            ++tally.singles_idler;
            ++tally.singles_idler_by_slot[j];
        }
    }
    for (int j = 0; j < 3; ++j) {
        if (!sig[j]) continue;
        for (int k = 0; k < 3; ++k)
            if (idl[k]) ++tally.coincidences[j][k];
    }
}

TallyCounters run_range(const Scenario& s, const SimTables& t,
                        std::uint64_t first, std::uint64_t last) {
    TallyCounters tally;
    for (std::uint64_t frame = first; frame < last; ++frame) {
        FrameRng rng(s.seed, frame);
        run_frame(rng, t, tally);
    }
    tally.frames_run = last - first;
    return tally;
}

} // namespace

TallyCounters simulate(const Scenario& s, int n_threads) {
    s.validate();
    const SimTables tables(s);

    unsigned workers = n_threads > 0 ? static_cast<unsigned>(n_threads)
                                     : std::max(1u, std::thread::hardware_concurrency());
    workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, s.frames));

    if (workers == 1)
        return run_range(s, tables, 0, s.frames);

    // Contiguous frame ranges per worker; any partition gives identical
    // tallies because frame randomness depends only on (seed, frame index)
    // and the merge is commutative addition.
    std::vector<TallyCounters> partial(workers);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    const std::uint64_t base = s.frames / workers;
    const std::uint64_t extra = s.frames % workers;
    std::uint64_t first = 0;
    for (unsigned w = 0; w < workers; ++w) {
        const std::uint64_t count = base + (w < extra ? 1 : 0);
        const std::uint64_t last = first + count;
        pool.emplace_back([&, w, first, last] { partial[w] = run_range(s, tables, first, last); });
        first = last;
    }
    for (auto& th : pool) th.join();

    TallyCounters total;
    for (const auto& p : partial) total += p;
    return total;
}

double coincidence_rate_hz(const TallyCounters& t, int slot_s, int slot_i,
                           double gate_rate_hz) {
    if (t.frames_run < 1)
        throw invariant_error("tally: no frames run");
    return static_cast<double>(t.coincidence(slot_s, slot_i)) /
           static_cast<double>(t.frames_run) * gate_rate_hz;
}

} // namespace timebin
