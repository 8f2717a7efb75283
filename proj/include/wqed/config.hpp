#ifndef WQED_CONFIG_HPP
#define WQED_CONFIG_HPP

#include <map>
#include <string>

#include "wqed/scenarios.hpp"

namespace wqed {

// Flat key-value configuration with [sections]; all physical inputs are in
// units of the qubit frequency and its inverse wavevector. Lines starting
// with '#' are comments. Keys live under [run], [params], [pulse] and the
// scenario sections [manipulation] / [detection].
struct ConfigFile {
    std::map<std::string, std::string> values; // "section.key" -> text

    static ConfigFile parse_text(const std::string& text);
    static ConfigFile load(const std::string& path);

    bool has(const std::string& key) const { return values.count(key) > 0; }
    std::string get(const std::string& key, const std::string& fallback = "") const;
    double get_number(const std::string& key, double fallback) const;

    std::string canonical_text() const; // sorted, normalized re-render
};

// Build a scenario configuration; throws InvalidInput with a field-level
// message on malformed values.
ScenarioConfig scenario_from_config(const ConfigFile& file, ScenarioKind kind);

} // namespace wqed

#endif
