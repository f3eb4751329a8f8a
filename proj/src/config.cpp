#include "gpaths/config.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "gpaths/errors.hpp"

namespace gpaths {

namespace {

constexpr const char* kModule = "config";

std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r");
    return s.substr(first, last - first + 1);
}

double to_double(std::string_view key, std::string_view value) {
    double out = 0.0;
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end || !std::isfinite(out))
        throw ConfigError(kModule, "key '" + std::string(key) + "': expected a number, got '" + std::string(value) + "'");
    return out;
}

std::size_t to_count(std::string_view key, std::string_view value) {
    long long out = 0;
    const auto* end = value.data() + value.size();
    const auto [ptr, ec] = std::from_chars(value.data(), end, out);
    if (ec != std::errc() || ptr != end)
        throw ConfigError(kModule, "key '" + std::string(key) + "': expected an integer, got '" + std::string(value) + "'");
    if (out < 0) throw ConfigError(kModule, "key '" + std::string(key) + "' must be non-negative");
    return static_cast<std::size_t>(out);
}

const std::set<std::string, std::less<>> kKnownKeys = {
    "spectrum", "omega_c", "omega0", "alpha", "n_T", "j_prefactor", "ir_cutoff", "r0", "nu0",
    "t_max", "n_samples", "t_step", "s_step", "omega_max", "abs_tol", "rel_tol", "mode",
    "output_dir", "sweep_spectra", "r0_list"};

const char* const kRequiredKeys[] = {"spectrum", "omega_c", "alpha", "n_T", "r0", "nu0", "t_max", "mode"};

}  // namespace

std::vector<double> parse_double_list(std::string_view text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        const auto comma = text.find(',', pos);
        const auto item = trim(text.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos));
        if (item.empty()) throw ConfigError(kModule, "empty entry in list '" + std::string(text) + "'");
        out.push_back(to_double("list", item));
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    return out;
}

void RunConfig::validate() const {
    spectrum.validate();
    environment.validate();
    if (!(r0 >= 0.0)) throw ConfigError(kModule, "r0 must be >= 0");
    if (!(nu0 >= 0.0)) throw ConfigError(kModule, "nu0 must be >= 0");
    if (!(t_max > 0.0)) throw ConfigError(kModule, "t_max must be > 0");
    if (n_samples < 2) throw ConfigError(kModule, "n_samples must be >= 2");
    quadrature.validate(spectrum, environment);
    for (double r : r0_list)
        if (!(r >= 0.0)) throw ConfigError(kModule, "r0_list entries must be >= 0");
}

RunConfig parse_config(std::string_view text) {
    std::map<std::string, std::string, std::less<>> kv;
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        auto eol = text.find('\n', pos);
        if (eol == std::string_view::npos) eol = text.size();
        std::string_view line = text.substr(pos, eol - pos);
        pos = eol + 1;
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string_view::npos)
            throw ConfigError(kModule, "line " + std::to_string(line_no) + ": expected 'key = value'");
        const std::string key(trim(line.substr(0, eq)));
        const std::string value(trim(line.substr(eq + 1)));
        if (!kKnownKeys.contains(key)) throw ConfigError(kModule, "unknown key '" + key + "'");
        if (value.empty()) throw ConfigError(kModule, "key '" + key + "' has no value");
        if (kv.contains(key)) throw ConfigError(kModule, "duplicate key '" + key + "'");
        kv.emplace(key, value);
    }
    for (const char* key : kRequiredKeys)
        if (!kv.contains(key)) throw ConfigError(kModule, std::string("missing required key '") + key + "'");

    auto num = [&](const char* key) { return to_double(key, kv.at(key)); };
    auto opt = [&](const char* key, double fallback) { return kv.contains(key) ? num(key) : fallback; };

    RunConfig cfg;
    cfg.spectrum.kind = parse_spectrum_kind(kv.at("spectrum"));
    cfg.spectrum.omega_c = num("omega_c");
    cfg.spectrum.prefactor = opt("j_prefactor", 1.0);
    cfg.environment.omega0 = opt("omega0", 1.0);
    cfg.environment.alpha = num("alpha");
    cfg.environment.n_thermal = num("n_T");
    cfg.r0 = num("r0");
    cfg.nu0 = num("nu0");
    cfg.t_max = num("t_max");
    cfg.mode = parse_evolution_mode(kv.at("mode"));
    if (kv.contains("n_samples")) cfg.n_samples = to_count("n_samples", kv.at("n_samples"));
    cfg.quadrature.t_step = opt("t_step", 0.01);
    cfg.quadrature.s_step = opt("s_step", cfg.quadrature.t_step);
    cfg.quadrature.omega_max = opt("omega_max", 0.0);
    cfg.quadrature.abs_tol = opt("abs_tol", cfg.quadrature.abs_tol);
    cfg.quadrature.rel_tol = opt("rel_tol", cfg.quadrature.rel_tol);
    cfg.quadrature.ir_cutoff = opt("ir_cutoff", cfg.quadrature.ir_cutoff);
    if (kv.contains("output_dir")) cfg.output_dir = kv.at("output_dir");

    if (kv.contains("sweep_spectra")) {
        std::string_view list = kv.at("sweep_spectra");
        std::size_t p = 0;
        while (p <= list.size()) {
            const auto comma = list.find(',', p);
            cfg.sweep_spectra.push_back(
                parse_spectrum_kind(trim(list.substr(p, comma == std::string_view::npos ? std::string_view::npos : comma - p))));
            if (comma == std::string_view::npos) break;
            p = comma + 1;
        }
    } else {
        cfg.sweep_spectra = {cfg.spectrum.kind};
    }
    cfg.r0_list = kv.contains("r0_list") ? parse_double_list(kv.at("r0_list")) : std::vector<double>{cfg.r0};

    cfg.validate();
    return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError(kModule, "cannot open config file '" + path.string() + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace gpaths
