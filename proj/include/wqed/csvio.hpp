#ifndef WQED_CSVIO_HPP
#define WQED_CSVIO_HPP

#include <string>
#include <vector>

#include "wqed/scenarios.hpp"

namespace wqed {

// Deterministic number formatting: 17 significant digits, '.' decimal point.
std::string format_number(double v);

// trace.csv: t_gamma, rho_gs, rho_plus, rho_minus, rho_beta, competitor, concurrence
void write_trace_csv(const std::string& path, const LabeledTrace& lt, double gamma);

// generic summary table
void write_summary_csv(const std::string& path, const std::vector<std::string>& header,
                       const std::vector<std::vector<double>>& rows);

uint64_t fnv1a_file(const std::string& path);

} // namespace wqed

#endif
