// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// criterion fails. Statistical checks use fixed seeds so reruns are
// deterministic.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <unistd.h>
#include <vector>

#include "subprocess.hpp"
#include "timebin/errors.hpp"
#include "timebin/fringe.hpp"
#include "timebin/fringe_io.hpp"
#include "timebin/interference.hpp"
#include "timebin/montecarlo.hpp"
#include "timebin/presets.hpp"
#include "timebin/raman.hpp"
#include "timebin/rates.hpp"

using namespace timebin;
using std::numbers::pi;
namespace fs = std::filesystem;

namespace {

const std::string kCli = TIMEBIN_CLI_PATH;

struct Checker {
    std::vector<std::string> problems;

    void require(bool ok, const std::string& what) {
        if (!ok) problems.push_back(what);
    }
    void in_range(double x, double lo, double hi, const std::string& what) {
        std::ostringstream msg;
        msg << what << " = " << x << " not in [" << lo << ", " << hi << "]";
        require(x >= lo && x <= hi, msg.str());
    }
    void close(double x, double target, double tol, const std::string& what) {
        std::ostringstream msg;
        msg << what << " = " << x << " differs from " << target << " by more than " << tol;
        require(std::abs(x - target) <= tol, msg.str());
    }
};

int g_failures = 0;

void criterion(int id, const std::string& title, const std::function<void(Checker&)>& body) {
    Checker check;
    try {
        body(check);
    } catch (const std::exception& e) {
        check.problems.push_back(std::string("exception: ") + e.what());
    }
    if (check.problems.empty()) {
        std::printf("[PASS] criterion %d: %s\n", id, title.c_str());
    } else {
        ++g_failures;
        std::printf("[FAIL] criterion %d: %s\n", id, title.c_str());
        for (const auto& p : check.problems) std::printf("       - %s\n", p.c_str());
    }
    std::fflush(stdout);
}

double preset_visibility(const std::string& name) {
    const Scenario s = preset_scenario(name);
    const double alpha_s = transmittance(s.signal_channel);
    const double alpha_i = transmittance(s.idler_channel);
    return visibility(correlated_rate(s.brightness.mu_c, alpha_s, alpha_i),
                      accidental_rate(s.brightness, alpha_s, alpha_i,
                                      s.signal_channel.detector.dark_count_per_gate,
                                      s.idler_channel.detector.dark_count_per_gate));
}

double preset_accidental(const std::string& name) {
    const Scenario s = preset_scenario(name);
    return accidental_rate(s.brightness, transmittance(s.signal_channel),
                           transmittance(s.idler_channel),
                           s.signal_channel.detector.dark_count_per_gate,
                           s.idler_channel.detector.dark_count_per_gate);
}

fs::path work_dir() {
    static const fs::path dir = [] {
        fs::path d = fs::temp_directory_path() /
                     ("timebin_acceptance_" + std::to_string(::getpid()));
        fs::create_directories(d);
        return d;
    }();
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

} // namespace

int main() {
    criterion(1, "Raman cooling ratios 0.29 / 0.24 at 400 GHz", [](Checker& check) {
        const RamanParams cold{1e-5, 500.0, 2e-5, 400e9, 77.0};
        const RamanParams warm{1e-5, 500.0, 2e-5, 400e9, 293.0};
        check.close(stokes_mean(cold) / stokes_mean(warm), 0.29, 0.005,
                    "n_s(77)/n_s(293)");
        check.close(anti_stokes_mean(cold) / anti_stokes_mean(warm), 0.24, 0.005,
                    "n_as(77)/n_as(293)");
    });

    criterion(2, "constructive slot-2 coincidence probability is exactly 1/8",
              [](Checker& check) {
        const auto dist = joint_outcome_distribution({0.0, 0.0, 0.0});
        check.require(dist.probability({2, Port::a}, {2, Port::a}) == 0.125,
                      "(2a,2a) cell at theta = phi is not exactly 1/8");
        std::mt19937 gen(2026);
        std::uniform_real_distribution<double> phase(-4.0 * pi, 4.0 * pi);
        for (int i = 0; i < 1000; ++i) {
            const PhaseConfig pc{phase(gen), phase(gen), phase(gen)};
            const double total = joint_outcome_distribution(pc).total();
            if (std::abs(total - 1.0) > 1e-12) {
                check.require(false, "distribution total deviates from 1 by > 1e-12");
                break;
            }
        }
    });

    criterion(3, "60-km distribution: visibility, peak rate, singles", [](Checker& check) {
        const Scenario s = preset_scenario("distributed-60km");
        const double alpha_s = transmittance(s.signal_channel);
        const double alpha_i = transmittance(s.idler_channel);
        const double r_c = correlated_rate(s.brightness.mu_c, alpha_s, alpha_i);
        const double r_acc = preset_accidental("distributed-60km");
        check.in_range(visibility(r_c, r_acc), 0.70, 0.78, "visibility (measured 75.8%)");
        const double peak_hz = (r_c + r_acc) * s.gate_rate_hz();
        check.in_range(peak_hz, 0.2, 0.5, "peak coincidence rate Hz (measured ~0.3)");
        const double singles_hz =
            singles_rate(s.brightness.mu_signal(), alpha_s,
                         s.signal_channel.detector.dark_count_per_gate, s.gate_rate_hz());
        check.in_range(singles_hz, 430.0 / 2.0, 430.0 * 2.0,
                       "signal singles Hz (measured ~430, factor-2 bound)");
    });

    criterion(4, "cooling improves visibility; fringe minima coincide", [](Checker& check) {
        const double v_uncooled = preset_visibility("uncooled");
        const double v_cooled = preset_visibility("cooled");
        check.in_range(v_cooled, 0.78, 0.88, "cooled visibility (measured 80.0%)");
        check.in_range(v_uncooled, 0.62, 0.76, "uncooled visibility (measured 64.7%)");
        check.require(v_uncooled < v_cooled, "uncooled visibility not below cooled");
        const double min_u = preset_accidental("uncooled");
        const double min_c = preset_accidental("cooled");
        check.require(std::abs(min_u - min_c) <= 0.05 * std::max(min_u, min_c),
                      "analytic fringe minima differ by more than 5%");

        // Monte Carlo confirmation at the fringe extremes. V from
        // (max-min)/(max+min); the seeds are fixed.
        const std::uint64_t frames = 600'000'000;
        const auto extremes = [&](const std::string& name,
                                  std::uint64_t seed) -> std::array<double, 2> {
            Scenario s = preset_scenario(name);
            s.frames = frames;
            s.seed = seed;
            const double peak =
                static_cast<double>(simulate(s, 0).coincidence(2, 2));
            s.phases.theta_i = pi; // theta_total = phi + pi
            s.seed = seed + 1;
            const double trough =
                static_cast<double>(simulate(s, 0).coincidence(2, 2));
            return {peak, trough};
        };
        const auto [peak_u, trough_u] = extremes("uncooled", 101);
        const auto [peak_c, trough_c] = extremes("cooled", 201);
        const double vhat_u = (peak_u - trough_u) / (peak_u + trough_u);
        const double vhat_c = (peak_c - trough_c) / (peak_c + trough_c);
        check.require(vhat_u < vhat_c, "Monte Carlo visibilities not ordered");
        // Peaks must separate decisively; troughs must agree within noise.
        check.require(peak_c - peak_u > 4.0 * std::sqrt(peak_c + peak_u),
                      "cooled Monte Carlo peak not above uncooled by 4 sigma");
        check.require(std::abs(trough_c - trough_u) <=
                          4.0 * std::sqrt(trough_c + trough_u),
                      "Monte Carlo troughs differ by more than 4 sigma");
        check.close(vhat_u, preset_visibility("uncooled"), 0.1, "MC uncooled visibility");
        check.close(vhat_c, preset_visibility("cooled"), 0.1, "MC cooled visibility");
    });

    criterion(5, "Monte Carlo matches the analytic fringe (12 points x 1e7 frames)",
              [](Checker& check) {
        const auto t0 = std::chrono::steady_clock::now();
        Scenario s = preset_scenario("cooled");
        s.frames = 10'000'000;
        s.seed = 424242;
        const auto thetas = sweep_grid(12, 0.0, 2.0 * pi);
        const FringeCurve mc = sweep(s, thetas, SweepMode::montecarlo, 0);
        const FringeCurve an = sweep(s, thetas, SweepMode::analytic);
        for (std::size_t j = 0; j < thetas.size(); ++j) {
            const double expected =
                an.points[j].coincidence_per_frame * static_cast<double>(s.frames);
            const double count =
                mc.points[j].coincidence_per_frame * static_cast<double>(s.frames);
            std::ostringstream what;
            what << "point " << j << " count " << count << " vs expected " << expected;
            check.require(std::abs(count - expected) <= 4.0 * std::sqrt(expected),
                          what.str() + " beyond 4 sigma");
        }
        const VisibilityFit fit = fit_visibility(mc);
        check.close(fit.visibility, preset_visibility("cooled"),
                    3.0 * fit.sigma_visibility, "fitted V vs analytic");
        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const double frames_total = 12.0 * static_cast<double>(s.frames);
        std::printf("       (criterion 5 throughput: %.2e frames/minute, %.1f s total)\n",
                    frames_total / seconds * 60.0, seconds);
        check.require(seconds <= 300.0, "runtime exceeded the 5-minute budget");
    });

    criterion(6, "inverse mu_c estimation brackets and round trip", [](Checker& check) {
        const Scenario s = preset_scenario("cooled");
        const double alpha_s = transmittance(s.signal_channel);
        const double alpha_i = transmittance(s.idler_channel);
        const double d_s = s.signal_channel.detector.dark_count_per_gate;
        const double d_i = s.idler_channel.detector.dark_count_per_gate;
        const double mu_cooled = estimate_mu_c(0.800, 0.05, 0.06, alpha_s, alpha_i, d_s, d_i);
        check.in_range(mu_cooled, 0.03, 0.05, "mu_c from V=0.800 (paper ~0.04)");
        const double mu_uncooled =
            estimate_mu_c(0.647, 0.05, 0.06, alpha_s, alpha_i, d_s, d_i);
        check.in_range(mu_uncooled, 0.012, 0.022, "mu_c from V=0.647 (paper ~0.02)");
        for (const double v : {0.800, 0.647}) {
            const double mu = estimate_mu_c(v, 0.05, 0.06, alpha_s, alpha_i, d_s, d_i);
            const double v_back =
                visibility(correlated_rate(mu, alpha_s, alpha_i),
                           accidental_rate(0.05, 0.06, alpha_s, alpha_i, d_s, d_i));
            check.close(v_back, v, 1e-9, "forward model at the estimate");
        }
    });

    criterion(7, "Bell threshold logic", [](Checker& check) {
        check.require(bell_violation_margin(0.758) > 0.0,
                      "V = 0.758 should exceed the Bell threshold");
        check.require(bell_violation_margin(0.647) < 0.0,
                      "V = 0.647 should stay below the Bell threshold");
    });

    criterion(8, "byte-identical outputs across runs and TIMEBIN_SIM_THREADS",
              [](Checker& check) {
        const fs::path dir = work_dir();
        const std::string base = " sweep --preset cooled --points 12 --mode montecarlo "
                                 "--frames 100000 --seed 9 --csv ";
        std::string first_csv, first_json;
        for (const int threads : {1, 4, 8, 1}) {
            const fs::path csv = dir / ("det_" + std::to_string(threads) + ".csv");
            const auto res = testutil::run_command(
                "TIMEBIN_SIM_THREADS=" + std::to_string(threads) + " " + kCli + base +
                testutil::quoted(csv.string()));
            check.require(res.exit_code == 0, "sweep run failed");
            if (res.exit_code != 0) return;
            if (first_csv.empty()) {
                first_csv = slurp(csv);
                first_json = res.output;
                check.require(!first_csv.empty(), "empty CSV output");
            } else {
                check.require(slurp(csv) == first_csv,
                              "CSV differs at TIMEBIN_SIM_THREADS=" +
                                  std::to_string(threads));
                check.require(res.output == first_json,
                              "JSON differs at TIMEBIN_SIM_THREADS=" +
                                  std::to_string(threads));
            }
        }
    });

    criterion(9, "property suites: fit round trip, scale invariance, multiplicativity, "
                 "small-mu limit", [](Checker& check) {
        const auto t0 = std::chrono::steady_clock::now();
        std::mt19937 gen(909);

        // Fringe fit round trip at 1e-9.
        std::uniform_real_distribution<double> offset(1e-3, 10.0);
        std::uniform_real_distribution<double> vis(0.0, 0.99);
        std::uniform_real_distribution<double> phase(0.0, 2.0 * pi);
        for (int i = 0; i < 100; ++i) {
            const double c = offset(gen), v = vis(gen), t0_ = phase(gen);
            FringeCurve curve;
            for (int j = 0; j < 12; ++j) {
                const double theta = 2.0 * pi * j / 12.0;
                curve.points.push_back(
                    {theta, c * (1.0 + v * std::cos(theta - t0_)), 0.0, 0.0, 0.0});
            }
            const VisibilityFit fit = fit_visibility(curve);
            if (std::abs(fit.visibility - v) > 1e-9 || std::abs(fit.offset - c) > 1e-9 * c) {
                check.require(false, "fit round trip missed 1e-9");
                break;
            }
        }

        // Visibility scale invariance.
        std::uniform_real_distribution<double> rate(1e-9, 1e-3);
        std::uniform_real_distribution<double> scale(1e-6, 1e6);
        for (int i = 0; i < 200; ++i) {
            const double rc = rate(gen), racc = rate(gen), k = scale(gen);
            if (std::abs(visibility(k * rc, k * racc) - visibility(rc, racc)) >
                1e-12 * visibility(rc, racc)) {
                check.require(false, "visibility scale invariance violated");
                break;
            }
        }

        // Transmittance multiplicativity.
        std::uniform_real_distribution<double> loss(0.0, 20.0);
        std::uniform_real_distribution<double> eta(0.01, 1.0);
        for (int i = 0; i < 200; ++i) {
            const double l1 = loss(gen), l2 = loss(gen), e = eta(gen);
            const double whole = transmittance({l1 + l2, 0.0, 0.0, {e, 0.0, 4e6}});
            const double split = transmittance({l1, 0.0, 0.0, {e, 0.0, 4e6}}) *
                                 transmittance({l2, 0.0, 0.0, {1.0, 0.0, 4e6}});
            if (std::abs(whole - split) > 1e-12 * whole) {
                check.require(false, "transmittance multiplicativity violated");
                break;
            }
        }

        // Multi-pair accidentals vanish faster than correlated counts.
        double prev = 0.0;
        for (int k = 0; k <= 20; ++k) {
            const double mc = 0.1 * std::pow(2.0, -k);
            const double v = visibility(
                correlated_rate(mc, 0.0126791, 0.0110943),
                accidental_rate(mc, mc, 0.0126791, 0.0110943, 0.0, 0.0));
            if (v <= prev || v >= 1.0) {
                check.require(false, "V(mu_c -> 0) not monotone toward 1");
                break;
            }
            prev = v;
        }
        check.require(prev > 0.9999, "V(mu_c -> 0) limit not reached");

        const double seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        check.require(seconds < 120.0, "property suite exceeded 2 minutes");
    });

    if (g_failures == 0) {
        std::printf("acceptance: all criteria passed\n");
        return 0;
    }
    std::printf("acceptance: %d criterion(s) failed\n", g_failures);
    return 1;
}
