#ifndef WQED_COMMON_HPP
#define WQED_COMMON_HPP

#include <complex>
#include <stdexcept>
#include <string>

namespace wqed {

using cplx = std::complex<double>;
inline constexpr cplx I{0.0, 1.0};
inline constexpr double PI = 3.14159265358979323846;

// Bad user input (config values, malformed initial states).
class InvalidInput : public std::invalid_argument {
public:
    explicit InvalidInput(const std::string& msg) : std::invalid_argument(msg) {}
};

// A numerical contract was violated (coverage, convergence, tolerance).
class NumericsError : public std::runtime_error {
public:
    explicit NumericsError(const std::string& msg) : std::runtime_error(msg) {}
};

} // namespace wqed

#endif
