// config.hpp — flat key-value configuration ingestion.
//
// Format: one `section.key = value` per line, `#` starts a comment, blank
// lines ignored. Keys mirror the parameter field paths (e.g. plasmon.gamma_p).
// Unknown keys are hard errors. A later line overrides an earlier one.
#pragma once

#include "fanomech/params.hpp"

#include <string>
#include <vector>

namespace fanomech {

struct Config {
    SystemParams params = default_params();
    VoltageMap voltage;
};

// All recognized configuration keys, in a stable order.
std::vector<std::string> config_keys();

// Set a single key on a config. Throws ConfigError for unknown keys or
// unparseable values; `context` is prepended to error messages.
void set_config_key(Config& cfg, const std::string& key, const std::string& value,
                    const std::string& context = {});

// Parse a config file from disk. Throws IoError if unreadable, ConfigError on
// bad content. Values are applied on top of library defaults.
Config load_config_file(const std::string& path);

// Parse `key=value` override strings (CLI `--set`); applied after file values.
void apply_overrides(Config& cfg, const std::vector<std::string>& overrides);

} // namespace fanomech
