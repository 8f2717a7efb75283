#include "wqed/csvio.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>

namespace wqed {

std::string format_number(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_trace_csv(const std::string& path, const LabeledTrace& lt, double gamma) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("csv: cannot write '" + path + "'");
    out << "t_gamma,rho_gs,rho_plus,rho_minus,rho_beta,competitor,concurrence\n";
    const auto tg = lt.t_gamma(gamma);
    size_t clamped = 0;
    auto prob = [&](double v) {
        if (v < -1e-10 || v > 1.0 + 1e-10)
            throw NumericsError("csv: probability escapes [0,1] in '" + path + "'");
        if (v < 0.0 || v > 1.0) {
            ++clamped;
            v = std::clamp(v, 0.0, 1.0);
        }
        return format_number(v);
    };
    for (size_t i = 0; i < lt.trace.size(); ++i) {
        const auto& p = lt.trace.pops[i];
        out << format_number(tg[i]) << ',' << prob(p.rho_gs) << ',' << prob(p.rho_plus)
            << ',' << prob(p.rho_minus) << ',' << prob(p.rho_beta) << ','
            << format_number(lt.trace.competitor[i]) << ','
            << prob(lt.trace.concurrence[i]) << '\n';
    }
    if (clamped > 0)
        std::cerr << path << ": clamped " << clamped
                  << " round-off excursions into [0,1]\n";
}

void write_summary_csv(const std::string& path, const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("csv: cannot write '" + path + "'");
    for (size_t i = 0; i < header.size(); ++i)
        out << header[i] << (i + 1 < header.size() ? ',' : '\n');
    for (const auto& row : rows) {
        for (size_t i = 0; i < row.size(); ++i)
            out << format_number(row[i]) << (i + 1 < row.size() ? ',' : '\n');
    }
}

uint64_t fnv1a_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InvalidInput("digest: cannot read '" + path + "'");
    uint64_t h = 1469598103934665603ull;
    char c;
    while (in.get(c)) {
        h ^= uint64_t(uint8_t(c));
        h *= 1099511628211ull;
    }
    return h;
}

} // namespace wqed
