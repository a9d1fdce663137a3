#include "timebin/fringe_io.hpp"

#include <array>
#include <cstdio>
#include <cstdlib>
#include <istream>
#include <ostream>
#include <sstream>

#include "timebin/errors.hpp"

namespace timebin {

namespace {

constexpr const char* kHeader =
    "theta_rad,coincidence_per_frame,sigma,singles_signal_hz,singles_idler_hz";

std::string fmt9(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.9g", x);
    return buf;
}

double parse_double(const std::string& token, const std::string& origin, int line) {
    const char* begin = token.c_str();
    char* end = nullptr;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0')
        throw parse_error(origin + ":" + std::to_string(line) + ": bad number '" + token + "'");
    return v;
}

} // namespace

void write_fringe_csv(std::ostream& out, const FringeCurve& curve) {
    out << kHeader << "\n";
    for (const auto& p : curve.points)
        out << fmt9(p.theta_rad) << ',' << fmt9(p.coincidence_per_frame) << ','
            << fmt9(p.sigma) << ',' << fmt9(p.singles_signal_hz) << ','
            << fmt9(p.singles_idler_hz) << "\n";
}

std::string fringe_to_csv(const FringeCurve& curve) {
    std::ostringstream out;
    write_fringe_csv(out, curve);
    return out.str();
}

FringeCurve parse_fringe_csv(std::istream& in, const std::string& origin) {
    std::string line;
    if (!std::getline(in, line) || line != kHeader)
        throw parse_error(origin + ":1: expected header '" + kHeader + "'");

    FringeCurve curve;
    int lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::array<std::string, 5> fields;
        std::size_t start = 0;
        for (int f = 0; f < 5; ++f) {
            const std::size_t comma = line.find(',', start);
            const bool last = f == 4;
            if (last != (comma == std::string::npos))
                throw parse_error(origin + ":" + std::to_string(lineno) +
                                  ": expected 5 comma-separated fields");
            fields[static_cast<std::size_t>(f)] =
                line.substr(start, last ? std::string::npos : comma - start);
            start = comma + 1;
        }
        curve.points.push_back({parse_double(fields[0], origin, lineno),
                                parse_double(fields[1], origin, lineno),
                                parse_double(fields[2], origin, lineno),
                                parse_double(fields[3], origin, lineno),
                                parse_double(fields[4], origin, lineno)});
    }
    curve.validate();
    return curve;
}

FringeCurve parse_fringe_csv_text(const std::string& text, const std::string& origin) {
    std::istringstream in(text);
    return parse_fringe_csv(in, origin);
}

} // namespace timebin
