#include "wqed/manifest.hpp"

#include <fstream>

#include <json.hpp>

#include "wqed/common.hpp"

namespace wqed {

void RunManifest::write(const std::string& path) const {
    nlohmann::json j;
    j["command"] = command;
    j["config"] = config_text;
    j["engine"] = engine;
    j["grid_nodes"] = grid_nodes;
    j["oracle_modes"] = oracle_modes;
    j["threads"] = threads;
    j["wall_seconds"] = wall_seconds;
    nlohmann::json files = nlohmann::json::object();
    for (const auto& [name, digest] : digests) {
        char hex[20];
        std::snprintf(hex, sizeof(hex), "%016llx", (unsigned long long)digest);
        files[name] = hex;
    }
    j["fnv1a64"] = files;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("manifest: cannot write '" + path + "'");
    out << j.dump(2) << '\n';
}

std::string RunManifest::embedded_config(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("manifest: cannot read '" + path + "'");
    nlohmann::json j;
    in >> j;
    if (!j.contains("config")) throw InvalidInput("manifest: no embedded config");
    return j["config"].get<std::string>();
}

} // namespace wqed
