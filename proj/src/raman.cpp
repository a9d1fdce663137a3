#include "timebin/raman.hpp"

#include <cmath>
#include <stdexcept>

#include "timebin/constants.hpp"

namespace timebin {

namespace {

// Phonon occupancy factors of the two sidebands; x = h nu / (k_B T).
double stokes_factor(double x) { return 1.0 / -std::expm1(-x); }
double anti_stokes_factor(double x) { return 1.0 / std::expm1(x); }

double thermal_x(double nu, double temperature) {
    if (temperature <= 0.0)
        throw std::domain_error("raman: temperature must be > 0 K");
    if (nu <= 0.0)
        throw std::domain_error("raman: detuning must be > 0 Hz");
    return characteristic_temperature(nu) / temperature;
}

} // namespace

void RamanParams::validate() const {
    if (gain_g < 0.0)
        throw std::domain_error("raman: gain_g must be >= 0");
    if (length_L <= 0.0)
        throw std::domain_error("raman: length_L must be > 0");
    if (loss_alpha < 0.0)
        throw std::domain_error("raman: loss_alpha must be >= 0");
    thermal_x(detuning_nu, temperature_T); // checks nu and T
}

double characteristic_temperature(double detuning_nu) {
    return constants::planck_h * detuning_nu / constants::boltzmann_kb;
}

double stokes_mean(const RamanParams& p) {
    p.validate();
    const double prefactor = p.gain_g * (p.length_L * std::exp(-p.loss_alpha * p.length_L));
    return prefactor * stokes_factor(thermal_x(p.detuning_nu, p.temperature_T));
}

double anti_stokes_mean(const RamanParams& p) {
    p.validate();
    const double prefactor = p.gain_g * (p.length_L * std::exp(-p.loss_alpha * p.length_L));
    return prefactor * anti_stokes_factor(thermal_x(p.detuning_nu, p.temperature_T));
}

double scale_noise_to_temperature(double mu_ref, double t_ref, double t_new,
                                  double nu, RamanSide side) {
    if (mu_ref < 0.0)
        throw std::domain_error("raman: mu_ref must be >= 0");
    const double x_ref = thermal_x(nu, t_ref);
    const double x_new = thermal_x(nu, t_new);
    const double factor = side == RamanSide::stokes
                              ? stokes_factor(x_new) / stokes_factor(x_ref)
                              : anti_stokes_factor(x_new) / anti_stokes_factor(x_ref);
    return mu_ref * factor;
}

} // namespace timebin
