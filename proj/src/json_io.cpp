#include "gpaths/json_io.hpp"

namespace gpaths {

void to_json(nlohmann::json& j, const SymmetricCMd& cm) { j = {{"a", cm.a}, {"c", cm.c}}; }

void from_json(const nlohmann::json& j, SymmetricCMd& cm) {
    j.at("a").get_to(cm.a);
    j.at("c").get_to(cm.c);
}

void to_json(nlohmann::json& j, const PathPoint& p) {
    j = {{"t", p.t}, {"mu", p.mu}, {"lambda", p.lambda}, {"discord", p.discord}};
}

void from_json(const nlohmann::json& j, PathPoint& p) {
    j.at("t").get_to(p.t);
    j.at("mu").get_to(p.mu);
    j.at("lambda").get_to(p.lambda);
    j.at("discord").get_to(p.discord);
}

nlohmann::json reachability_json(const Reachability& r, bool secular) {
    if (!r.reachable) return {{"reachable", false}, {"violated", r.violated}};
    nlohmann::json j = {{"reachable", true}, {"gamma_m_t", r.gamma_m_t}};
    if (secular)
        j["delta_gamma"] = r.delta_gamma;
    else
        j["n_T"] = r.n_thermal;
    return j;
}

namespace {

nlohmann::json source_json(const PathSource& s) {
    return {{"spectrum", s.spectrum},
            {"n_T", s.n_thermal},
            {"mode", std::string(to_string(s.mode))},
            {"initial", s.initial},
            {"r0", s.initial_sts.r},
            {"nu0", s.initial_sts.nu_thermal}};
}

}  // namespace

nlohmann::json universality_json(const UniversalityReport& rep) {
    nlohmann::json j = {{"reference", source_json(rep.reference)},
                        {"candidate", source_json(rep.candidate)},
                        {"max_discord_deviation", rep.max_discord_deviation},
                        {"max_purity_deviation", rep.max_purity_deviation},
                        {"matched_fraction", rep.matched_fraction},
                        {"matched_points", rep.matched_points},
                        {"tolerance", rep.tolerance},
                        {"within_tolerance", rep.within_tolerance}};
    j["max_deviation"] = rep.max_deviation ? nlohmann::json(*rep.max_deviation) : nlohmann::json(nullptr);
    return j;
}

}  // namespace gpaths
