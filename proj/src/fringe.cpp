#include "timebin/fringe.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "timebin/errors.hpp"
#include "timebin/rng.hpp"

namespace timebin {

void FringeCurve::validate() const {
    if (points.size() < 5)
        throw invariant_error("fringe: a curve needs at least 5 points");
    for (std::size_t j = 0; j < points.size(); ++j) {
        if (!(points[j].sigma >= 0.0))
            throw invariant_error("fringe: sigmas must be >= 0");
        if (j > 0 && !(points[j].theta_rad > points[j - 1].theta_rad))
            throw invariant_error("fringe: thetas must be strictly increasing");
    }
}

namespace {

using Mat3 = std::array<std::array<double, 3>, 3>;
using Vec3 = std::array<double, 3>;

// Gaussian elimination with partial pivoting; throws on a singular system.
Vec3 solve3(Mat3 m, Vec3 b) {
    double scale = 0.0;
    for (const auto& row : m)
        for (double v : row) scale = std::max(scale, std::abs(v));
    if (scale == 0.0)
        throw degenerate_error("fit: singular design matrix");

    for (int col = 0; col < 3; ++col) {
        int pivot = col;
        for (int r = col + 1; r < 3; ++r)
            if (std::abs(m[r][col]) > std::abs(m[pivot][col])) pivot = r;
        if (std::abs(m[pivot][col]) < 1e-12 * scale)
            throw degenerate_error("fit: singular design matrix");
        std::swap(m[col], m[pivot]);
        std::swap(b[col], b[pivot]);
        for (int r = col + 1; r < 3; ++r) {
            const double f = m[r][col] / m[col][col];
            for (int c = col; c < 3; ++c) m[r][c] -= f * m[col][c];
            b[r] -= f * b[col];
        }
    }
    Vec3 x{};
    for (int r = 2; r >= 0; --r) {
        double acc = b[r];
        for (int c = r + 1; c < 3; ++c) acc -= m[r][c] * x[c];
        x[r] = acc / m[r][r];
    }
    return x;
}

Mat3 invert3(const Mat3& m) {
    Mat3 inv{};
    for (int col = 0; col < 3; ++col) {
        Vec3 e{};
        e[col] = 1.0;
        const Vec3 x = solve3(m, e);
        for (int r = 0; r < 3; ++r) inv[r][col] = x[r];
    }
    return inv;
}

} // namespace

VisibilityFit fit_visibility(const FringeCurve& curve) {
    const auto& pts = curve.points;
    const std::size_t n = pts.size();
    if (n < 3)
        throw degenerate_error("fit: at least 3 points required");

    // Weight by 1/sigma^2 when every point carries a statistical error;
    // otherwise treat all points equally and propagate whatever sigmas exist
    // through the unweighted solution (all-zero sigmas then give sigma_V = 0).
    const bool weighted = std::all_of(pts.begin(), pts.end(),
                                      [](const FringePoint& p) { return p.sigma > 0.0; });

    Mat3 m{};
    Vec3 rhs{};
    for (const auto& p : pts) {
        const double w = weighted ? 1.0 / (p.sigma * p.sigma) : 1.0;
        const Vec3 x = {1.0, std::cos(p.theta_rad), std::sin(p.theta_rad)};
        for (int r = 0; r < 3; ++r) {
            rhs[r] += w * x[r] * p.coincidence_per_frame;
            for (int c = 0; c < 3; ++c) m[r][c] += w * x[r] * x[c];
        }
    }

    const Vec3 params = solve3(m, rhs); // C, A, B
    const double offset = params[0], a = params[1], b = params[2];
    if (!(offset > 0.0))
        throw degenerate_error("fit: non-positive fringe offset");

    const double amplitude = std::hypot(a, b);
    const double v = std::min(1.0, amplitude / offset);
    const double theta0 = std::atan2(b, a);

    // Parameter covariance: inverse normal matrix when weighted, sandwich
    // form (X^T X)^-1 X^T Sigma X (X^T X)^-1 otherwise.
    const Mat3 minv = invert3(m);
    Mat3 cov{};
    if (weighted) {
        cov = minv;
    } else {
        Mat3 mid{};
        for (const auto& p : pts) {
            const double s2 = p.sigma * p.sigma;
            const Vec3 x = {1.0, std::cos(p.theta_rad), std::sin(p.theta_rad)};
            for (int r = 0; r < 3; ++r)
                for (int c = 0; c < 3; ++c) mid[r][c] += s2 * x[r] * x[c];
        }
        for (int r = 0; r < 3; ++r)
            for (int c = 0; c < 3; ++c) {
                double acc = 0.0;
                for (int i = 0; i < 3; ++i)
                    for (int j = 0; j < 3; ++j)
                        acc += minv[r][i] * mid[i][j] * minv[j][c];
                cov[r][c] = acc;
            }
    }

    Vec3 grad;
    if (amplitude > 0.0) {
        grad = {-amplitude / (offset * offset), a / (offset * amplitude),
                b / (offset * amplitude)};
    } else {
        grad = {0.0, 1.0 / offset, 1.0 / offset}; // flat-curve limit
    }
    double var_v = 0.0;
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c) var_v += grad[r] * cov[r][c] * grad[c];
    const double sigma_v = var_v > 0.0 ? std::sqrt(var_v) : 0.0;

    return {v, theta0, offset, sigma_v};
}

std::vector<double> sweep_grid(int n, double theta_min, double theta_max) {
    if (n < 1)
        throw invariant_error("sweep: need at least one point");
    if (!(theta_max > theta_min))
        throw invariant_error("sweep: theta range must be increasing");
    std::vector<double> thetas(static_cast<std::size_t>(n));
    const double step = (theta_max - theta_min) / n;
    for (int j = 0; j < n; ++j) thetas[static_cast<std::size_t>(j)] = theta_min + step * j;
    return thetas;
}

FringeCurve sweep(const Scenario& s, std::span<const double> thetas, SweepMode mode,
                  int n_threads) {
    s.validate();
    if (thetas.empty())
        throw invariant_error("sweep: empty theta list");
    for (std::size_t j = 1; j < thetas.size(); ++j)
        if (!(thetas[j] > thetas[j - 1]))
            throw invariant_error("sweep: thetas must be strictly increasing");

    const double alpha_s = transmittance(s.signal_channel);
    const double alpha_i = transmittance(s.idler_channel);
    const double d_s = s.signal_channel.detector.dark_count_per_gate;
    const double d_i = s.idler_channel.detector.dark_count_per_gate;
    const double gate = s.gate_rate_hz();

    FringeCurve curve;
    curve.points.reserve(thetas.size());

    if (mode == SweepMode::analytic) {
        const double r_c = correlated_rate(s.brightness.mu_c, alpha_s, alpha_i);
        const double r_acc = accidental_rate(s.brightness, alpha_s, alpha_i, d_s, d_i);
        const double sig_s = singles_rate(s.brightness.mu_signal(), alpha_s, d_s, gate);
        const double sig_i = singles_rate(s.brightness.mu_idler(), alpha_i, d_i, gate);
        for (const double theta : thetas) {
            const double y = r_acc + r_c / 2.0 * (1.0 + std::cos(theta - s.phases.phi));
            curve.points.push_back({theta, y, 0.0, sig_s, sig_i});
        }
        curve.metadata = "mode=analytic";
    } else {
        // Each point gets its own seed derived from (scenario seed, point
        // index); results do not depend on evaluation order.
        for (std::size_t j = 0; j < thetas.size(); ++j) {
            Scenario point = s;
            point.phases.theta_i = thetas[j] - s.phases.theta_s;
            point.seed = mix64(s.seed ^ mix64(static_cast<std::uint64_t>(j) + 1));
            const TallyCounters tally = simulate(point, n_threads);
            const double frames = static_cast<double>(tally.frames_run);
            const double count = static_cast<double>(tally.coincidence(2, 2));
            curve.points.push_back(
                {thetas[j], count / frames, std::sqrt(count) / frames,
                 static_cast<double>(tally.singles_signal) / frames * gate,
                 static_cast<double>(tally.singles_idler) / frames * gate});
        }
        std::ostringstream meta;
        meta << "mode=montecarlo frames=" << s.frames << " seed=" << s.seed;
        curve.metadata = meta.str();
    }

    curve.validate();
    return curve;
}

} // namespace timebin
