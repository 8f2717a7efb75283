#ifndef WQED_SVG_HPP
#define WQED_SVG_HPP

#include <string>
#include <vector>

namespace wqed {

struct SvgSeries {
    std::string label;
    std::string color;
    std::vector<double> x, y;
};

// Minimal static line plot; a convenience artifact, the CSV is the contract.
void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& xlabel, const std::string& ylabel,
                    const std::vector<SvgSeries>& series);

} // namespace wqed

#endif
