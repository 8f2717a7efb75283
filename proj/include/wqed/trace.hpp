#ifndef WQED_TRACE_HPP
#define WQED_TRACE_HPP

#include <vector>

#include "wqed/concurrence.hpp"

namespace wqed {

// Time series of qubit populations, the concurrence and its competing term
// 2 sqrt(rho_ee rho_gg). Times are in raw internal units; drivers report
// gamma * (t - arrival) alongside.
struct ConcurrenceTrace {
    std::vector<double> times;
    std::vector<QubitBasisPopulations> pops;
    std::vector<double> concurrence;
    std::vector<double> competitor;

    size_t size() const { return times.size(); }

    double peak_concurrence() const {
        double peak = 0.0;
        for (double c : concurrence) peak = std::max(peak, c);
        return peak;
    }
};

} // namespace wqed

#endif
