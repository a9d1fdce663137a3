#pragma once

namespace timebin {

/// Fiber and pump parameters of the spontaneous Raman noise model.
struct RamanParams {
    double gain_g = 0.0;       // per-meter gain coefficient, proportional to pump power (1/m)
    double length_L = 0.0;     // fiber length (m)
    double loss_alpha = 0.0;   // fiber loss coefficient (1/m), assumed temperature-independent
    double detuning_nu = 0.0;  // pump-to-channel frequency offset (Hz)
    double temperature_T = 0.0;// absolute temperature (K)

    /// Throws std::domain_error if any field is out of range.
    void validate() const;
};

/// h*nu/k_B, the temperature scale of the phonon occupancy (K).
double characteristic_temperature(double detuning_nu);

/// Mean Stokes photons per pulse: g L e^{-aL} / (1 - exp(-h nu / k_B T)).
double stokes_mean(const RamanParams& p);

/// Mean anti-Stokes photons per pulse: g L e^{-aL} / (exp(h nu / k_B T) - 1).
double anti_stokes_mean(const RamanParams& p);

enum class RamanSide { stokes, anti_stokes };

/// Rescales a measured noise level from T_ref to T_new using the phonon
/// occupancy factor of the chosen sideband. Identity when T_new == T_ref.
double scale_noise_to_temperature(double mu_ref, double t_ref, double t_new,
                                  double nu, RamanSide side);

} // namespace timebin
