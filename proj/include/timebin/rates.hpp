#pragma once

namespace timebin {

/// Per-pulse source brightness. Channel totals mu_s = mu_c + mu_ns and
/// mu_i = mu_c + mu_ni are derived, never stored.
struct SourceBrightness {
    double mu_c = 0.0;  // mean correlated pairs per pulse
    double mu_ns = 0.0; // mean noise photons per pulse, signal channel
    double mu_ni = 0.0; // mean noise photons per pulse, idler channel

    double mu_signal() const { return mu_c + mu_ns; }
    double mu_idler() const { return mu_c + mu_ni; }
    void validate() const;
    bool operator==(const SourceBrightness&) const = default;
};

/// Correlated coincidence probability per qubit frame at the constructive
/// peak: (mu_c/4) * alpha_s * alpha_i.
double correlated_rate(double mu_c, double alpha_s, double alpha_i);

/// Accidental coincidence probability per frame, exact product form:
/// (mu_s alpha_s / 2 + d_s) * (mu_i alpha_i / 2 + d_i).
double accidental_rate(double mu_s, double mu_i, double alpha_s, double alpha_i,
                       double d_s, double d_i);
double accidental_rate(const SourceBrightness& b, double alpha_s, double alpha_i,
                       double d_s, double d_i);

/// Fringe contrast R_c / (R_c + 2 R_acc); equals (max-min)/(max+min) of
/// R(theta) = R_acc + (R_c/2)(1 + cos(theta - phi)).
/// Throws degenerate_error when both rates are zero.
double visibility(double r_c, double r_acc);

/// v - 1/sqrt(2); positive means the two-photon interference threshold for a
/// Bell-inequality violation is exceeded.
double bell_violation_margin(double v);

/// Inverts the fringe model for mu_c given a measured visibility, holding the
/// measured channel totals mu_s, mu_i fixed. Bisection on mu_c in [0,1];
/// visibility is monotone in mu_c so the root is unique. Throws
/// degenerate_error when the target visibility is unattainable in [0,1].
double estimate_mu_c(double v_measured, double mu_s, double mu_i,
                     double alpha_s, double alpha_i, double d_s, double d_i);

/// Mean singles rate of one channel: (mu_x alpha_x + d_x) * gate_rate. Two
/// pulses per frame, each reaching the port-a detector with probability 1/2,
/// plus one dark-count opportunity per gate.
double singles_rate(double mu_x, double alpha_x, double d_x, double gate_rate_hz);

} // namespace timebin
