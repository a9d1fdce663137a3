#include "timebin/scenario_io.hpp"

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "timebin/errors.hpp"
#include "timebin/raman.hpp"

namespace timebin {

namespace {

struct Entry {
    std::string value;
    int line;
};

// section -> key -> (value, line)
using Sections = std::map<std::string, std::map<std::string, Entry>>;

std::string trim(std::string_view v) {
    std::size_t b = 0, e = v.size();
    while (b < e && std::isspace(static_cast<unsigned char>(v[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(v[e - 1]))) --e;
    return std::string(v.substr(b, e - b));
}

[[noreturn]] void fail(const std::string& origin, int line, const std::string& msg) {
    throw parse_error(origin + ":" + std::to_string(line) + ": " + msg);
}

Sections tokenize(std::string_view text, const std::string& origin) {
    static const std::set<std::string> known_sections = {"source", "phases", "signal",
                                                         "idler", "run"};
    Sections sections;
    std::string current;
    int lineno = 0;
    std::istringstream in{std::string(text)};
    std::string raw;
    while (std::getline(in, raw)) {
        ++lineno;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        const std::string line = trim(raw);
        if (line.empty()) continue;

        if (line.front() == '[') {
            if (line.back() != ']')
                fail(origin, lineno, "malformed section header '" + line + "'");
            current = trim(line.substr(1, line.size() - 2));
            if (!known_sections.count(current))
                fail(origin, lineno, "unknown section [" + current + "]");
            sections[current]; // noteable even when empty
            continue;
        }

        const std::size_t eq = line.find('=');
        if (eq == std::string::npos)
            fail(origin, lineno, "expected 'key = value', got '" + line + "'");
        if (current.empty())
            fail(origin, lineno, "key outside any [section]");
        const std::string key = trim(std::string_view(line).substr(0, eq));
        const std::string value = trim(std::string_view(line).substr(eq + 1));
        if (key.empty() || value.empty())
            fail(origin, lineno, "empty key or value");
        auto [it, inserted] = sections[current].emplace(key, Entry{value, lineno});
        if (!inserted)
            fail(origin, lineno, "duplicate key '" + key + "' in [" + current + "]");
    }
    return sections;
}

class SectionReader {
public:
    SectionReader(Sections& all, std::string name, const std::string& origin)
        : origin_(origin), name_(std::move(name)) {
        const auto it = all.find(name_);
        if (it == all.end())
            throw parse_error(origin_ + ": missing section [" + name_ + "]");
        entries_ = &it->second;
    }

    bool has(const std::string& key) const { return entries_->count(key) > 0; }

    double number(const std::string& key) {
        const Entry& e = lookup(key);
        const char* begin = e.value.c_str();
        char* end = nullptr;
        const double v = std::strtod(begin, &end);
        if (end == begin || *end != '\0')
            fail(origin_, e.line, "bad number '" + e.value + "' for key '" + key + "'");
        return v;
    }

    std::uint64_t count(const std::string& key) {
        const Entry& e = lookup(key);
        const char* begin = e.value.c_str();
        char* end = nullptr;
        const unsigned long long v = std::strtoull(begin, &end, 10);
        if (end == begin || *end != '\0' || e.value.front() == '-')
            fail(origin_, e.line, "bad count '" + e.value + "' for key '" + key + "'");
        return v;
    }

    // Every key must have been consumed by the time parsing ends.
    void finish(const std::set<std::string>& known) const {
        for (const auto& [key, entry] : *entries_)
            if (!known.count(key))
                fail(origin_, entry.line, "unknown key '" + key + "' in [" + name_ + "]");
    }

private:
    const Entry& lookup(const std::string& key) const {
        const auto it = entries_->find(key);
        if (it == entries_->end())
            throw parse_error(origin_ + ": missing key '" + key + "' in [" + name_ + "]");
        return it->second;
    }

    const std::string& origin_;
    std::string name_;
    const std::map<std::string, Entry>* entries_;
};

ChannelParams read_channel(Sections& all, const std::string& name,
                           const std::string& origin) {
    SectionReader sec(all, name, origin);
    sec.finish({"fixed_loss_db", "fiber_length_km", "fiber_loss_db_per_km", "efficiency",
                "dark_per_gate"});
    ChannelParams c;
    c.fixed_loss_db = sec.number("fixed_loss_db");
    c.fiber_length_km = sec.number("fiber_length_km");
    c.fiber_loss_db_per_km = sec.number("fiber_loss_db_per_km");
    c.detector.efficiency_eta = sec.number("efficiency");
    c.detector.dark_count_per_gate = sec.number("dark_per_gate");
    return c;
}

std::string fmt12(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

} // namespace

Scenario parse_scenario_text(std::string_view text, const std::string& origin) {
    Sections sections = tokenize(text, origin);
    for (const auto& name : {"source", "phases", "signal", "idler", "run"})
        if (!sections.count(name))
            throw parse_error(origin + ": missing section [" + std::string(name) + "]");

    Scenario s;

    SectionReader source(sections, "source", origin);
    source.finish({"mu_c", "mu_noise_signal", "mu_noise_idler", "noise_ref_signal",
                   "noise_ref_idler", "noise_ref_temperature_k", "temperature_k",
                   "detuning_ghz"});
    s.brightness.mu_c = source.number("mu_c");
    const bool direct = source.has("mu_noise_signal") || source.has("mu_noise_idler");
    const bool scaled = source.has("noise_ref_signal") || source.has("noise_ref_idler") ||
                        source.has("noise_ref_temperature_k") ||
                        source.has("temperature_k") || source.has("detuning_ghz");
    if (direct && scaled)
        throw parse_error(origin +
                          ": [source] mixes direct noise levels with a raman reference");
    if (direct) {
        s.brightness.mu_ns = source.number("mu_noise_signal");
        s.brightness.mu_ni = source.number("mu_noise_idler");
    } else if (scaled) {
        const double nu = source.number("detuning_ghz") * 1e9;
        const double t_ref = source.number("noise_ref_temperature_k");
        const double t_new = source.number("temperature_k");
        try {
            // The signal channel sits above the pump (anti-Stokes band), the
            // idler below it (Stokes band).
            s.brightness.mu_ns = scale_noise_to_temperature(
                source.number("noise_ref_signal"), t_ref, t_new, nu, RamanSide::anti_stokes);
            s.brightness.mu_ni = scale_noise_to_temperature(
                source.number("noise_ref_idler"), t_ref, t_new, nu, RamanSide::stokes);
        } catch (const std::domain_error& e) {
            throw invariant_error(origin + ": " + e.what());
        }
    } else {
        throw parse_error(origin + ": [source] needs mu_noise_signal/mu_noise_idler or a "
                                   "raman reference");
    }

    SectionReader phases(sections, "phases", origin);
    phases.finish({"phi", "theta_s", "theta_i"});
    s.phases.phi = phases.number("phi");
    s.phases.theta_s = phases.number("theta_s");
    s.phases.theta_i = phases.number("theta_i");

    s.signal_channel = read_channel(sections, "signal", origin);
    s.idler_channel = read_channel(sections, "idler", origin);

    SectionReader run(sections, "run", origin);
    run.finish({"frames", "seed", "gate_rate_hz"});
    s.frames = run.count("frames");
    s.seed = run.count("seed");
    const double gate = run.number("gate_rate_hz");
    s.signal_channel.detector.gate_rate_hz = gate;
    s.idler_channel.detector.gate_rate_hz = gate;

    try {
        s.validate();
    } catch (const invariant_error& e) {
        throw invariant_error(origin + ": " + e.what());
    } catch (const std::domain_error& e) {
        throw invariant_error(origin + ": " + e.what());
    }
    return s;
}

Scenario load_scenario_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw parse_error(path + ": cannot open scenario file");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_scenario_text(buf.str(), path);
}

std::string scenario_to_text(const Scenario& s) {
    std::ostringstream out;
    out << "# timebin-sim scenario\n";
    out << "[source]\n";
    out << "mu_c = " << fmt12(s.brightness.mu_c) << "\n";
    out << "mu_noise_signal = " << fmt12(s.brightness.mu_ns) << "\n";
    out << "mu_noise_idler = " << fmt12(s.brightness.mu_ni) << "\n\n";
    out << "[phases]\n";
    out << "phi = " << fmt12(s.phases.phi) << "\n";
    out << "theta_s = " << fmt12(s.phases.theta_s) << "\n";
    out << "theta_i = " << fmt12(s.phases.theta_i) << "\n\n";
    const auto channel = [&out](const char* name, const ChannelParams& c) {
        out << "[" << name << "]\n";
        out << "fixed_loss_db = " << fmt12(c.fixed_loss_db) << "\n";
        out << "fiber_length_km = " << fmt12(c.fiber_length_km) << "\n";
        out << "fiber_loss_db_per_km = " << fmt12(c.fiber_loss_db_per_km) << "\n";
        out << "efficiency = " << fmt12(c.detector.efficiency_eta) << "\n";
        out << "dark_per_gate = " << fmt12(c.detector.dark_count_per_gate) << "\n\n";
    };
    channel("signal", s.signal_channel);
    channel("idler", s.idler_channel);
    out << "[run]\n";
    out << "frames = " << s.frames << "\n";
    out << "seed = " << s.seed << "\n";
    out << "gate_rate_hz = " << fmt12(s.gate_rate_hz()) << "\n";
    return out.str();
}

} // namespace timebin
