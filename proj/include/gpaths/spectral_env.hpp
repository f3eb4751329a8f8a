#pragma once

#include <limits>
#include <string>
#include <string_view>

namespace gpaths {

enum class SpectrumKind { Ohmic, SuperOhmic, WhiteNoise };

std::string_view to_string(SpectrumKind kind);
/// Accepts the config spellings `ohmic`, `superohmic`, `white`.
SpectrumKind parse_spectrum_kind(std::string_view name);

/// Bath spectral density j(omega) with a cutoff frequency.
struct SpectralDensity {
    SpectrumKind kind = SpectrumKind::Ohmic;
    double omega_c = 1.0;
    double prefactor = 1.0;

    void validate() const;
};

/// Local thermal bath seen by each oscillator. Temperature is stored as the
/// thermal occupation at the system frequency; beta is derived from it.
struct Environment {
    double omega0 = 1.0;
    double alpha = 0.1;
    double n_thermal = 0.0;

    /// Builds the environment from an inverse temperature (infinity allowed).
    static Environment from_beta(double omega0, double alpha, double beta);

    /// Inverse temperature; +infinity for a vacuum bath.
    double beta() const;
    void validate() const;
};

inline constexpr double kInfinity = std::numeric_limits<double>::infinity();

/// j(omega) for the three supported families (omega >= 0).
double evaluate_j(const SpectralDensity& spec, double omega);

/// coth(omega beta / 2); 1 at zero temperature. Throws SingularPointError at omega = 0.
double thermal_weight(const Environment& env, double omega);

/// Bose occupation 1 / (exp(beta omega) - 1); 0 for beta = infinity.
double thermal_occupation(double beta, double omega);

/// j(omega) coth(omega beta / 2) including its omega -> 0 limit where it is
/// finite (Ohmic, super-Ohmic). White noise diverges there and throws.
double thermal_spectral_weight(const SpectralDensity& spec, const Environment& env, double omega);

}  // namespace gpaths
