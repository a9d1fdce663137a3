#include "timebin/rates.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "timebin/errors.hpp"

namespace timebin {

void SourceBrightness::validate() const {
    if (!(mu_c >= 0.0) || !(mu_ns >= 0.0) || !(mu_ni >= 0.0))
        throw invariant_error("source: photon numbers must be >= 0");
}

namespace {

void check_unit_interval(double x, const char* what) {
    if (!(x >= 0.0 && x <= 1.0))
        throw std::domain_error(std::string("rates: ") + what + " must be in [0,1]");
}

} // namespace

double correlated_rate(double mu_c, double alpha_s, double alpha_i) {
    if (mu_c < 0.0)
        throw std::domain_error("rates: mu_c must be >= 0");
    check_unit_interval(alpha_s, "alpha_s");
    check_unit_interval(alpha_i, "alpha_i");
    return mu_c / 4.0 * alpha_s * alpha_i;
}

double accidental_rate(double mu_s, double mu_i, double alpha_s, double alpha_i,
                       double d_s, double d_i) {
    if (mu_s < 0.0 || mu_i < 0.0)
        throw std::domain_error("rates: channel totals must be >= 0");
    check_unit_interval(alpha_s, "alpha_s");
    check_unit_interval(alpha_i, "alpha_i");
    check_unit_interval(d_s, "d_s");
    check_unit_interval(d_i, "d_i");
    return (mu_s * alpha_s / 2.0 + d_s) * (mu_i * alpha_i / 2.0 + d_i);
}

double accidental_rate(const SourceBrightness& b, double alpha_s, double alpha_i,
                       double d_s, double d_i) {
    b.validate();
    return accidental_rate(b.mu_signal(), b.mu_idler(), alpha_s, alpha_i, d_s, d_i);
}

double visibility(double r_c, double r_acc) {
    if (r_c < 0.0 || r_acc < 0.0)
        throw std::domain_error("rates: rates must be >= 0");
    if (r_c == 0.0 && r_acc == 0.0)
        throw degenerate_error("rates: visibility undefined for zero rates");
    return r_c / (r_c + 2.0 * r_acc);
}

double bell_violation_margin(double v) {
    if (!(v >= 0.0 && v <= 1.0))
        throw std::domain_error("rates: visibility must be in [0,1]");
    return v - 1.0 / std::sqrt(2.0);
}

double estimate_mu_c(double v_measured, double mu_s, double mu_i,
                     double alpha_s, double alpha_i, double d_s, double d_i) {
    if (!(v_measured > 0.0 && v_measured < 1.0))
        throw std::domain_error("rates: measured visibility must be in (0,1)");
    if (!(mu_s > 0.0 && mu_i > 0.0))
        throw std::domain_error("rates: channel totals must be > 0");

    // mu_s and mu_i are the measured totals; the accidental rate is held
    // fixed at them while mu_c varies, which makes V strictly monotone in
    // mu_c and bisection safe.
    const double r_acc = accidental_rate(mu_s, mu_i, alpha_s, alpha_i, d_s, d_i);
    if (r_acc <= 0.0)
        throw degenerate_error(
            "rates: visibility carries no mu_c information without accidentals");

    const auto model_v = [&](double mu_c) {
        return visibility(correlated_rate(mu_c, alpha_s, alpha_i), r_acc);
    };

    double lo = 0.0, hi = 1.0;
    if (model_v(hi) < v_measured)
        throw degenerate_error("rates: visibility unattainable for mu_c in [0,1]");
    // 64 halvings take the bracket far below the 1e-12 absolute target.
    for (int i = 0; i < 64; ++i) {
        const double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        (model_v(mid) < v_measured ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
}

double singles_rate(double mu_x, double alpha_x, double d_x, double gate_rate_hz) {
    if (mu_x < 0.0 || alpha_x < 0.0 || d_x < 0.0 || gate_rate_hz < 0.0)
        throw std::domain_error("rates: singles inputs must be >= 0");
    return (mu_x * alpha_x + d_x) * gate_rate_hz;
}

} // namespace timebin
