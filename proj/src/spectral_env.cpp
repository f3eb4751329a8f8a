#include "gpaths/spectral_env.hpp"

#include <cmath>
#include <string>

#include "gpaths/errors.hpp"

namespace gpaths {

namespace {
constexpr const char* kModule = "spectral_env";
}

std::string_view to_string(SpectrumKind kind) {
    switch (kind) {
        case SpectrumKind::Ohmic: return "ohmic";
        case SpectrumKind::SuperOhmic: return "superohmic";
        case SpectrumKind::WhiteNoise: return "white";
    }
    return "unknown";
}

SpectrumKind parse_spectrum_kind(std::string_view name) {
    if (name == "ohmic") return SpectrumKind::Ohmic;
    if (name == "superohmic" || name == "super-ohmic") return SpectrumKind::SuperOhmic;
    if (name == "white" || name == "whitenoise") return SpectrumKind::WhiteNoise;
    throw ConfigError(kModule, "unknown spectrum '" + std::string(name) +
                                   "' (expected ohmic|superohmic|white)");
}

void SpectralDensity::validate() const {
    if (!(omega_c > 0.0) || !std::isfinite(omega_c))
        throw ConfigError(kModule, "omega_c must be > 0");
    if (!(prefactor > 0.0) || !std::isfinite(prefactor))
        throw ConfigError(kModule, "j_prefactor must be > 0");
}

Environment Environment::from_beta(double omega0, double alpha, double beta) {
    Environment env{omega0, alpha, thermal_occupation(beta, omega0)};
    env.validate();
    return env;
}

double Environment::beta() const {
    if (n_thermal == 0.0) return kInfinity;
    return std::log1p(1.0 / n_thermal) / omega0;
}

void Environment::validate() const {
    if (!(omega0 > 0.0) || !std::isfinite(omega0))
        throw ConfigError(kModule, "omega0 must be > 0");
    // alpha = 0 is kept legal: it is the decoupled reference channel.
    if (!(alpha >= 0.0) || !std::isfinite(alpha))
        throw ConfigError(kModule, "alpha must be >= 0");
    if (!(n_thermal >= 0.0) || !std::isfinite(n_thermal))
        throw ConfigError(kModule, "n_T must be >= 0");
}

double evaluate_j(const SpectralDensity& spec, double omega) {
    if (!(omega >= 0.0)) throw DomainError(kModule, "evaluate_j requires omega >= 0");
    const double wc = spec.omega_c;
    switch (spec.kind) {
        case SpectrumKind::Ohmic:
            return spec.prefactor * omega * wc * wc / (omega * omega + wc * wc);
        case SpectrumKind::SuperOhmic:
            return spec.prefactor * omega * omega * wc / (omega * omega + wc * wc);
        case SpectrumKind::WhiteNoise:
            return spec.prefactor * wc;
    }
    return 0.0;
}

double thermal_weight(const Environment& env, double omega) {
    if (omega == 0.0) throw SingularPointError(kModule, "coth(omega beta / 2) is singular at omega = 0");
    if (!(omega > 0.0)) throw DomainError(kModule, "thermal_weight requires omega > 0");
    const double beta = env.beta();
    if (std::isinf(beta)) return 1.0;
    return 1.0 / std::tanh(0.5 * omega * beta);
}

double thermal_occupation(double beta, double omega) {
    if (!(omega > 0.0)) throw DomainError(kModule, "thermal_occupation requires omega > 0");
    if (!(beta > 0.0)) throw DomainError(kModule, "thermal_occupation requires beta > 0");
    if (std::isinf(beta)) return 0.0;
    return 1.0 / std::expm1(beta * omega);
}

double thermal_spectral_weight(const SpectralDensity& spec, const Environment& env, double omega) {
    if (omega > 0.0) return evaluate_j(spec, omega) * thermal_weight(env, omega);
    if (omega < 0.0) throw DomainError(kModule, "thermal_spectral_weight requires omega >= 0");

    const double beta = env.beta();
    switch (spec.kind) {
        case SpectrumKind::Ohmic:
            // j ~ prefactor * omega and coth(x) ~ 1/x.
            return std::isinf(beta) ? 0.0 : spec.prefactor * 2.0 / beta;
        case SpectrumKind::SuperOhmic:
            return 0.0;
        case SpectrumKind::WhiteNoise:
            if (std::isinf(beta)) return spec.prefactor * spec.omega_c;
            throw SingularPointError(kModule, "white-noise thermal weight diverges at omega = 0; use an IR cutoff");
    }
    return 0.0;
}

}  // namespace gpaths
