#ifndef WQED_MANIFEST_HPP
#define WQED_MANIFEST_HPP

#include <string>
#include <vector>

namespace wqed {

// Reproducibility record written beside every output set: the resolved
// configuration, the numerical settings in force, and digests of the files
// produced. Re-running with the embedded configuration reproduces the CSV
// bytes exactly.
struct RunManifest {
    std::string command;
    std::string config_text;  // canonical resolved configuration
    std::string engine;
    int grid_nodes = 0;
    int oracle_modes = 0;
    int threads = 0;
    double wall_seconds = 0.0;
    std::vector<std::pair<std::string, uint64_t>> digests;

    void write(const std::string& path) const;
    // extract the embedded configuration from a manifest file
    static std::string embedded_config(const std::string& path);
};

} // namespace wqed

#endif
