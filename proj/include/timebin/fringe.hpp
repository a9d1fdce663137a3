#pragma once

#include <span>
#include <string>
#include <vector>

#include "timebin/montecarlo.hpp"

namespace timebin {

struct FringePoint {
    double theta_rad = 0.0;             // total analyzer phase theta_s + theta_i
    double coincidence_per_frame = 0.0; // slot-(2,2) probability per frame
    double sigma = 0.0;                 // statistical error, same units; 0 for analytic points
    double singles_signal_hz = 0.0;
    double singles_idler_hz = 0.0;

    bool operator==(const FringePoint&) const = default;
};

/// One fringe: >= 5 points with strictly increasing thetas.
struct FringeCurve {
    std::vector<FringePoint> points;
    std::string metadata;

    void validate() const;
    bool operator==(const FringeCurve&) const = default;
};

enum class SweepMode { analytic, montecarlo };

/// Phase sweep of the slot-(2,2) coincidence probability. The sweep varies
/// theta_i so that theta_s + theta_i equals each requested theta. Analytic
/// mode evaluates R_acc + (R_c/2)(1 + cos(theta - phi)) with sigma = 0;
/// montecarlo mode runs simulate() per point with a seed derived from
/// (scenario seed, point index), so points are order-independent and may run
/// with any worker count.
FringeCurve sweep(const Scenario& s, std::span<const double> thetas, SweepMode mode,
                  int n_threads = 0);

struct VisibilityFit {
    double visibility = 0.0; // in [0,1]
    double theta0 = 0.0;     // phase of the fringe maximum
    double offset = 0.0;     // fitted mean level C
    double sigma_visibility = 0.0;
};

/// Least-squares fit of y(theta) = C (1 + V cos(theta - theta0)) via the
/// linear basis y = C + A cos(theta) + B sin(theta); V = sqrt(A^2+B^2)/C.
/// Points are weighted by 1/sigma^2 when every sigma is positive, equally
/// otherwise; sigma_visibility is propagated from the point sigmas.
/// Throws degenerate_error on fewer than 3 points, a singular design
/// (e.g. all thetas equal modulo 2 pi), or a non-positive fitted offset.
VisibilityFit fit_visibility(const FringeCurve& curve);

/// Equally spaced sweep grid: n points from theta_min, stepping
/// (theta_max - theta_min)/n, endpoint exclusive.
std::vector<double> sweep_grid(int n, double theta_min, double theta_max);

} // namespace timebin
