#pragma once

#include <json.hpp>

#include "gpaths/dynamics.hpp"
#include "gpaths/gaussian_core.hpp"
#include "gpaths/paths.hpp"

namespace gpaths {

void to_json(nlohmann::json& j, const SymmetricCMd& cm);
void from_json(const nlohmann::json& j, SymmetricCMd& cm);

void to_json(nlohmann::json& j, const PathPoint& p);
void from_json(const nlohmann::json& j, PathPoint& p);

/// {"reachable": true, "gamma_m_t", "n_T"} or {"reachable": false, "violated"};
/// secular decisions carry "delta_gamma" in place of "n_T".
nlohmann::json reachability_json(const Reachability& r, bool secular = false);

nlohmann::json universality_json(const UniversalityReport& rep);

}  // namespace gpaths
