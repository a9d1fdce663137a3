#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "timebin/errors.hpp"
#include "timebin/fringe.hpp"
#include "timebin/fringe_io.hpp"
#include "timebin/montecarlo.hpp"
#include "timebin/presets.hpp"
#include "timebin/raman.hpp"
#include "timebin/rates.hpp"
#include "timebin/scenario_io.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitArgs = 2;      // argument or parse error
constexpr int kExitInvariant = 3; // invariant violation
constexpr int kExitDegenerate = 4;

using ordered_json = nlohmann::ordered_json;

// Numbers go out with 12 significant digits: rounded before insertion so the
// serialized text is stable regardless of how the value was computed.
double round12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return std::strtod(buf, nullptr);
}

std::string fmt_cell(double x, int precision) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.*g", precision, x);
    return buf;
}

int threads_from_env() {
    const char* raw = std::getenv("TIMEBIN_SIM_THREADS");
    if (raw == nullptr || *raw == '\0') return 0;
    char* end = nullptr;
    const long v = std::strtol(raw, &end, 10);
    if (end == raw || *end != '\0' || v < 1)
        throw timebin::parse_error("TIMEBIN_SIM_THREADS must be a positive integer");
    return static_cast<int>(v);
}

struct ScenarioSource {
    std::string file;
    std::string preset;

    timebin::Scenario load() const {
        if (!preset.empty() && !file.empty())
            throw timebin::parse_error("give either a scenario file or --preset, not both");
        if (!preset.empty()) {
            try {
                return timebin::preset_scenario(preset);
            } catch (const std::invalid_argument& e) {
                throw timebin::parse_error(e.what());
            }
        }
        if (!file.empty()) return timebin::load_scenario_file(file);
        throw timebin::parse_error("a scenario file or --preset is required");
    }
};

struct RamanArgs {
    std::vector<double> temps;
    double nu_ghz = 400.0;
    std::optional<double> ref_temp;
    double gain_g = 1e-5;  // 1/m
    double length_m = 500.0;
    double loss_alpha = 0.0; // 1/m
    std::string format = "table";
};

int run_raman(const RamanArgs& a) {
    try {
        const double nu = a.nu_ghz * 1e9;
        const double t_ref = a.ref_temp.value_or(a.temps.back());
        const auto params = [&](double t) {
            return timebin::RamanParams{a.gain_g, a.length_m, a.loss_alpha, nu, t};
        };
        const double ns_ref = timebin::stokes_mean(params(t_ref));
        const double nas_ref = timebin::anti_stokes_mean(params(t_ref));

        const bool csv = a.format == "csv";
        const char* header_cols[5] = {"temperature_k", "n_stokes", "n_anti_stokes",
                                      "ratio_stokes", "ratio_anti_stokes"};
        if (csv) {
            for (int c = 0; c < 5; ++c) std::cout << (c ? "," : "") << header_cols[c];
            std::cout << "\n";
        } else {
            std::printf("%-14s %-14s %-14s %-14s %-14s\n", header_cols[0], header_cols[1],
                        header_cols[2], header_cols[3], header_cols[4]);
        }
        for (const double t : a.temps) {
            const double ns = timebin::stokes_mean(params(t));
            const double nas = timebin::anti_stokes_mean(params(t));
            const double cells[5] = {t, ns, nas, ns / ns_ref, nas / nas_ref};
            if (csv) {
                for (int c = 0; c < 5; ++c)
                    std::cout << (c ? "," : "") << fmt_cell(cells[c], 9);
                std::cout << "\n";
            } else {
                for (int c = 0; c < 5; ++c)
                    std::printf("%-14s ", fmt_cell(cells[c], 6).c_str());
                std::printf("\n");
            }
        }
        return kExitOk;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitArgs;
    }
}

int run_analytic(const ScenarioSource& src) {
    const timebin::Scenario s = src.load();
    s.validate();
    const double alpha_s = timebin::transmittance(s.signal_channel);
    const double alpha_i = timebin::transmittance(s.idler_channel);
    const double d_s = s.signal_channel.detector.dark_count_per_gate;
    const double d_i = s.idler_channel.detector.dark_count_per_gate;
    const double gate = s.gate_rate_hz();

    const double r_c = timebin::correlated_rate(s.brightness.mu_c, alpha_s, alpha_i);
    const double r_acc = timebin::accidental_rate(s.brightness, alpha_s, alpha_i, d_s, d_i);
    const double v = timebin::visibility(r_c, r_acc);

    ordered_json out;
    out["r_c_hz"] = round12(r_c * gate);
    out["r_acc_hz"] = round12(r_acc * gate);
    out["visibility"] = round12(v);
    out["bell_margin"] = round12(timebin::bell_violation_margin(v));
    out["singles_signal_hz"] =
        round12(timebin::singles_rate(s.brightness.mu_signal(), alpha_s, d_s, gate));
    out["singles_idler_hz"] =
        round12(timebin::singles_rate(s.brightness.mu_idler(), alpha_i, d_i, gate));
    out["mu_s"] = round12(s.brightness.mu_signal());
    out["mu_i"] = round12(s.brightness.mu_idler());
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

struct SweepArgs {
    ScenarioSource src;
    int points = 24;
    std::string mode = "analytic";
    double theta_min = 0.0;
    double theta_max = 2.0 * 3.14159265358979323846;
    std::string csv_path;
    std::string json_path;
    std::optional<std::uint64_t> frames;
    std::optional<std::uint64_t> seed;
};

int run_sweep(const SweepArgs& a) {
    if (a.points < 5)
        throw timebin::parse_error("--points must be >= 5");
    timebin::Scenario s = a.src.load();
    if (a.frames) s.frames = *a.frames;
    if (a.seed) s.seed = *a.seed;

    const auto mode = a.mode == "montecarlo" ? timebin::SweepMode::montecarlo
                                             : timebin::SweepMode::analytic;
    const auto thetas = timebin::sweep_grid(a.points, a.theta_min, a.theta_max);
    const timebin::FringeCurve curve = timebin::sweep(s, thetas, mode, threads_from_env());

    std::ofstream csv(a.csv_path, std::ios::binary);
    if (!csv)
        throw timebin::parse_error(a.csv_path + ": cannot open for writing");
    timebin::write_fringe_csv(csv, curve);
    csv.close();

    const timebin::VisibilityFit fit = timebin::fit_visibility(curve);
    ordered_json out;
    out["visibility"] = round12(fit.visibility);
    out["theta0_rad"] = round12(fit.theta0);
    out["offset_per_frame"] = round12(fit.offset);
    out["fit_sigma_v"] = round12(fit.sigma_visibility);
    const std::string dumped = out.dump(2) + "\n";
    if (!a.json_path.empty()) {
        std::ofstream js(a.json_path, std::ios::binary);
        if (!js)
            throw timebin::parse_error(a.json_path + ": cannot open for writing");
        js << dumped;
    }
    std::cout << dumped;
    return kExitOk;
}

int run_estimate(const ScenarioSource& src, double v) {
    if (!(v > 0.0 && v < 1.0))
        throw timebin::parse_error("--visibility must be in (0,1)");
    const timebin::Scenario s = src.load();
    const double alpha_s = timebin::transmittance(s.signal_channel);
    const double alpha_i = timebin::transmittance(s.idler_channel);
    const double mu_hat = timebin::estimate_mu_c(
        v, s.brightness.mu_signal(), s.brightness.mu_idler(), alpha_s, alpha_i,
        s.signal_channel.detector.dark_count_per_gate,
        s.idler_channel.detector.dark_count_per_gate);
    ordered_json out;
    out["mu_c_hat"] = round12(mu_hat);
    std::cout << out.dump(2) << "\n";
    return kExitOk;
}

int run_preset(const std::string& name, bool list) {
    if (list) {
        for (const auto& n : timebin::preset_names()) std::cout << n << "\n";
        return kExitOk;
    }
    try {
        std::cout << timebin::scenario_to_text(timebin::preset_scenario(name));
        return kExitOk;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitArgs;
    }
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Time-bin entangled photon-pair link simulator"};
    app.require_subcommand(1);

    RamanArgs raman;
    auto* cmd_raman = app.add_subcommand(
        "raman", "Stokes/anti-Stokes noise photon numbers vs temperature");
    cmd_raman->add_option("--temps", raman.temps, "temperatures (K)")
        ->required()
        ->delimiter(',');
    cmd_raman->add_option("--nu-ghz", raman.nu_ghz, "pump-channel detuning (GHz)");
    cmd_raman->add_option("--ref-temp", raman.ref_temp,
                          "reference temperature for ratio columns (default: last listed)");
    cmd_raman->add_option("--gain-g", raman.gain_g, "Raman gain coefficient (1/m)");
    cmd_raman->add_option("--length-m", raman.length_m, "fiber length (m)");
    cmd_raman->add_option("--loss-alpha", raman.loss_alpha, "fiber loss (1/m)");
    cmd_raman->add_option("--format", raman.format, "table or csv")
        ->check(CLI::IsMember({"table", "csv"}));

    ScenarioSource analytic_src;
    auto* cmd_analytic =
        app.add_subcommand("analytic", "Closed-form rates and visibility for a scenario");
    cmd_analytic->add_option("scenario", analytic_src.file, "scenario file");
    cmd_analytic->add_option("--preset", analytic_src.preset, "named preset scenario");

    SweepArgs sweep;
    auto* cmd_sweep =
        app.add_subcommand("sweep", "Phase sweep of the coincidence fringe, CSV + fit");
    cmd_sweep->add_option("scenario", sweep.src.file, "scenario file");
    cmd_sweep->add_option("--preset", sweep.src.preset, "named preset scenario");
    cmd_sweep->add_option("--points", sweep.points, "number of sweep points (>= 5)");
    cmd_sweep->add_option("--mode", sweep.mode, "analytic or montecarlo")
        ->check(CLI::IsMember({"analytic", "montecarlo"}));
    cmd_sweep->add_option("--theta-min", sweep.theta_min, "sweep start (rad)");
    cmd_sweep->add_option("--theta-max", sweep.theta_max, "sweep end (rad, exclusive)");
    cmd_sweep->add_option("--csv", sweep.csv_path, "output CSV path")->required();
    cmd_sweep->add_option("--json", sweep.json_path, "also write the JSON summary here");
    cmd_sweep->add_option("--frames", sweep.frames, "override frames per point");
    cmd_sweep->add_option("--seed", sweep.seed, "override scenario seed");

    ScenarioSource estimate_src;
    double estimate_v = 0.0;
    auto* cmd_estimate =
        app.add_subcommand("estimate", "Estimate mu_c from a measured visibility");
    cmd_estimate->add_option("scenario", estimate_src.file, "scenario file");
    cmd_estimate->add_option("--preset", estimate_src.preset, "named preset scenario");
    cmd_estimate->add_option("--visibility", estimate_v, "measured visibility in (0,1)")
        ->required();

    std::string preset_name;
    bool preset_list = false;
    auto* cmd_preset = app.add_subcommand("preset", "Print a preset as a scenario file");
    cmd_preset->add_option("name", preset_name, "preset name");
    cmd_preset->add_flag("--list", preset_list, "list preset names");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitArgs;
    }

    try {
        if (cmd_raman->parsed()) return run_raman(raman);
        if (cmd_analytic->parsed()) return run_analytic(analytic_src);
        if (cmd_sweep->parsed()) return run_sweep(sweep);
        if (cmd_estimate->parsed()) return run_estimate(estimate_src, estimate_v);
        if (cmd_preset->parsed()) {
            if (!preset_list && preset_name.empty()) {
                std::cerr << "error: preset name or --list required\n";
                return kExitArgs;
            }
            return run_preset(preset_name, preset_list);
        }
    } catch (const timebin::parse_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitArgs;
    } catch (const timebin::invariant_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const timebin::degenerate_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDegenerate;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInvariant;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return kExitOk;
}
