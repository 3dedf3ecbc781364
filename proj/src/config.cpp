#include "fanomech/config.hpp"
#include "fanomech/errors.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <utility>

namespace fanomech {

namespace {

struct KeyBinding {
    const char* key;
    double* slot;
};

std::vector<KeyBinding> bindings(Config& cfg) {
    SystemParams& p = cfg.params;
    return {
        {"plasmon.omega_p", &p.plasmon.omega_p},
        {"plasmon.gamma_p", &p.plasmon.gamma_p},
        {"plasmon.eps_drive", &p.plasmon.eps_drive},
        {"emitter.omega_qe", &p.emitter.omega_qe},
        {"emitter.gamma_qe", &p.emitter.gamma_qe},
        {"emitter.f_coupling", &p.emitter.f_coupling},
        {"emitter.inversion_y", &p.emitter.inversion_y},
        {"mech.omega_m", &p.mech.omega_m},
        {"mech.gamma_m", &p.mech.gamma_m},
        {"mech.n_bar", &p.mech.n_bar},
        {"mech.g_single", &p.mech.g_single},
        {"mech.x_zpf_fm", &p.mech.x_zpf_fm},
        {"drive.omega", &p.drive.omega},
        {"scaling.reference_ev", &p.reference_ev},
        {"voltage.kappa_mev_per_v", &cfg.voltage.kappa_mev_per_v},
        {"voltage.omega_qe_0_ev", &cfg.voltage.omega_qe_0_ev},
    };
}

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) {
        ++b;
    }
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) {
        --e;
    }
    return s.substr(b, e - b);
}

double parse_number(const std::string& value, const std::string& key, const std::string& context) {
    const std::string v = trim(value);
    if (v.empty()) {
        throw ConfigError(context + "empty value for key '" + key + "'");
    }
    char* end = nullptr;
    const double parsed = std::strtod(v.c_str(), &end);
    if (end == nullptr || *end != '\0') {
        throw ConfigError(context + "cannot parse value '" + v + "' for key '" + key + "'");
    }
    return parsed;
}

} // namespace

std::vector<std::string> config_keys() {
    Config tmp;
    std::vector<std::string> keys;
    for (const auto& b : bindings(tmp)) {
        keys.emplace_back(b.key);
    }
    return keys;
}

void set_config_key(Config& cfg, const std::string& key, const std::string& value,
                    const std::string& context) {
    const std::string k = trim(key);
    for (const auto& b : bindings(cfg)) {
        if (k == b.key) {
            *b.slot = parse_number(value, k, context);
            return;
        }
    }
    throw ConfigError(context + "unknown config key '" + k + "'");
}

Config load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open config file: " + path);
    }

    Config cfg;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const std::size_t hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        const std::string stripped = trim(line);
        if (stripped.empty()) {
            continue;
        }
        const std::size_t eq = stripped.find('=');
        std::ostringstream ctx;
        ctx << path << ":" << line_no << ": ";
        if (eq == std::string::npos) {
            throw ConfigError(ctx.str() + "expected 'section.key = value', got '" + stripped + "'");
        }
        set_config_key(cfg, stripped.substr(0, eq), stripped.substr(eq + 1), ctx.str());
    }
    return cfg;
}

void apply_overrides(Config& cfg, const std::vector<std::string>& overrides) {
    for (const auto& kv : overrides) {
        const std::size_t eq = kv.find('=');
        if (eq == std::string::npos) {
            throw ConfigError("--set expects key=value, got '" + kv + "'");
        }
        set_config_key(cfg, kv.substr(0, eq), kv.substr(eq + 1), "--set: ");
    }
}

} // namespace fanomech
