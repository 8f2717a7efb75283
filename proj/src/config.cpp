#include "wqed/config.hpp"

#include <fstream>
#include <sstream>

namespace wqed {

namespace {

std::string trim(const std::string& s) {
    const auto a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    const auto b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

std::vector<double> parse_list(const std::string& text, const std::string& key) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        tok = trim(tok);
        if (tok.empty()) continue;
        try {
            size_t used = 0;
            out.push_back(std::stod(tok, &used));
            if (used != tok.size()) throw std::invalid_argument(tok);
        } catch (const std::exception&) {
            throw InvalidInput("config: field '" + key + "' has a bad number '" + tok + "'");
        }
    }
    return out;
}

} // namespace

ConfigFile ConfigFile::parse_text(const std::string& text) {
    ConfigFile cfg;
    std::stringstream ss(text);
    std::string line, section = "run";
    int lineno = 0;
    while (std::getline(ss, line)) {
        ++lineno;
        line = trim(line);
        if (line.empty() || line[0] == '#') continue;
        if (line.front() == '[' && line.back() == ']') {
            section = trim(line.substr(1, line.size() - 2));
            if (section.empty())
                throw InvalidInput("config: empty section name at line " +
                                   std::to_string(lineno));
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw InvalidInput("config: expected key = value at line " +
                               std::to_string(lineno));
        const std::string key = trim(line.substr(0, eq));
        if (key.empty())
            throw InvalidInput("config: empty key at line " + std::to_string(lineno));
        cfg.values[section + "." + key] = trim(line.substr(eq + 1));
    }
    return cfg;
}

ConfigFile ConfigFile::load(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InvalidInput("config: cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_text(buf.str());
}

std::string ConfigFile::get(const std::string& key, const std::string& fallback) const {
    const auto it = values.find(key);
    return it == values.end() ? fallback : it->second;
}

double ConfigFile::get_number(const std::string& key, double fallback) const {
    const auto it = values.find(key);
    if (it == values.end()) return fallback;
    try {
        size_t used = 0;
        const double v = std::stod(it->second, &used);
        if (used != it->second.size()) throw std::invalid_argument(it->second);
        return v;
    } catch (const std::exception&) {
        throw InvalidInput("config: field '" + key + "' has a bad number '" + it->second +
                           "'");
    }
}

std::string ConfigFile::canonical_text() const {
    std::string out;
    std::string section;
    for (const auto& [k, v] : values) { // std::map iterates sorted
        const auto dot = k.find('.');
        const std::string sec = k.substr(0, dot);
        if (sec != section) {
            section = sec;
            out += "[" + section + "]\n";
        }
        out += k.substr(dot + 1) + " = " + v + "\n";
    }
    return out;
}

ScenarioConfig scenario_from_config(const ConfigFile& f, ScenarioKind kind) {
    ScenarioConfig cfg;
    cfg.scenario = kind;

    const double gamma = f.get_number("params.gamma", 0.01);
    const double omega_q = f.get_number("params.omega_q", 1.0);
    const double v_g = f.get_number("params.v_g", 1.0);
    if (!(gamma > 0.0))
        throw InvalidInput("config: params.gamma must be > 0");
    if (!(gamma < omega_q))
        throw InvalidInput("config: params.gamma must stay below params.omega_q");
    cfg.params = PhysicalParams(omega_q, gamma, v_g);

    const double default_mu =
        (kind == ScenarioKind::detection) ? omega_q / 3000.0 : gamma / 2.0;
    cfg.mu = f.get_number("pulse.mu", default_mu);
    if (!(cfg.mu > 0.0)) throw InvalidInput("config: pulse.mu must be > 0");
    cfg.omega = f.get_number("pulse.omega", 1.0);
    cfg.x0 = f.get_number("pulse.x0", 0.0);

    const std::string engine = f.get("run.engine", "analytic");
    if (engine == "analytic") cfg.engine = EngineKind::analytic;
    else if (engine == "oracle") cfg.engine = EngineKind::oracle;
    else if (engine == "both") cfg.engine = EngineKind::both;
    else throw InvalidInput("config: run.engine must be analytic|oracle|both");

    cfg.samples = int(f.get_number("run.samples", 900));
    if (cfg.samples < 8) throw InvalidInput("config: run.samples too small");
    cfg.horizon = f.get_number("run.horizon", 14.0);
    cfg.grid_nodes = int(f.get_number("run.grid", 512));
    if (cfg.grid_nodes < 64) throw InvalidInput("config: run.grid too small");
    cfg.oracle_modes = int(f.get_number("run.oracle_modes", 0));

    if (f.has("manipulation.delta_scan"))
        for (double d : parse_list(f.get("manipulation.delta_scan"), "manipulation.delta_scan"))
            cfg.delta_scan.push_back(d / gamma); // configured in units of 1/gamma
    if (f.has("detection.xi"))
        for (double x : parse_list(f.get("detection.xi"), "detection.xi"))
            cfg.xi_grid.push_back({x, 0.0});
    if (f.has("detection.gamma_grid"))
        for (double g : parse_list(f.get("detection.gamma_grid"), "detection.gamma_grid"))
            cfg.gamma_grid.push_back(g);
    if (f.has("detection.mu_grid"))
        for (double m : parse_list(f.get("detection.mu_grid"), "detection.mu_grid"))
            cfg.mu_grid.push_back(m);
    return cfg;
}

} // namespace wqed
