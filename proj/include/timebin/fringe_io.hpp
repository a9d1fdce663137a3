#pragma once

#include <iosfwd>
#include <string>

#include "timebin/fringe.hpp"

namespace timebin {

/// CSV with mandatory header
/// theta_rad,coincidence_per_frame,sigma,singles_signal_hz,singles_idler_hz
/// LF line endings, 9 significant digits.
void write_fringe_csv(std::ostream& out, const FringeCurve& curve);
std::string fringe_to_csv(const FringeCurve& curve);

/// Parses CSV produced by write_fringe_csv. Throws parse_error on a missing
/// or wrong header, malformed row, or bad number; `origin` names the source
/// in diagnostics.
FringeCurve parse_fringe_csv(std::istream& in, const std::string& origin);
FringeCurve parse_fringe_csv_text(const std::string& text, const std::string& origin);

} // namespace timebin
