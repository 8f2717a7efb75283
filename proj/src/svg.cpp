#include "wqed/svg.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>

#include "wqed/common.hpp"

namespace wqed {

void write_svg_plot(const std::string& path, const std::string& title,
                    const std::string& xlabel, const std::string& ylabel,
                    const std::vector<SvgSeries>& series) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw InvalidInput("svg: cannot write '" + path + "'");

    double xlo = 1e300, xhi = -1e300, ylo = 1e300, yhi = -1e300;
    for (const auto& s : series)
        for (size_t i = 0; i < s.x.size(); ++i) {
            xlo = std::min(xlo, s.x[i]);
            xhi = std::max(xhi, s.x[i]);
            ylo = std::min(ylo, s.y[i]);
            yhi = std::max(yhi, s.y[i]);
        }
    if (!(xhi > xlo)) xhi = xlo + 1.0;
    if (!(yhi > ylo)) yhi = ylo + 1.0;
    ylo = std::min(ylo, 0.0);
    yhi += 0.05 * (yhi - ylo);

    const double W = 760, H = 480, ml = 70, mr = 20, mt = 40, mb = 55;
    auto px = [&](double x) { return ml + (x - xlo) / (xhi - xlo) * (W - ml - mr); };
    auto py = [&](double y) { return H - mb - (y - ylo) / (yhi - ylo) * (H - mt - mb); };

    out << "<svg xmlns='http://www.w3.org/2000/svg' width='" << W << "' height='" << H
        << "' viewBox='0 0 " << W << " " << H << "'>\n";
    out << "<rect width='100%' height='100%' fill='white'/>\n";
    out << "<text x='" << W / 2 << "' y='24' text-anchor='middle' font-size='16'>" << title
        << "</text>\n";
    // frame and ticks
    out << "<rect x='" << ml << "' y='" << mt << "' width='" << W - ml - mr << "' height='"
        << H - mt - mb << "' fill='none' stroke='black'/>\n";
    for (int i = 0; i <= 5; ++i) {
        const double x = xlo + (xhi - xlo) * i / 5.0;
        const double y = ylo + (yhi - ylo) * i / 5.0;
        char lab[32];
        std::snprintf(lab, sizeof(lab), "%.3g", x);
        out << "<text x='" << px(x) << "' y='" << H - mb + 18
            << "' text-anchor='middle' font-size='11'>" << lab << "</text>\n";
        std::snprintf(lab, sizeof(lab), "%.3g", y);
        out << "<text x='" << ml - 8 << "' y='" << py(y) + 4
            << "' text-anchor='end' font-size='11'>" << lab << "</text>\n";
    }
    out << "<text x='" << W / 2 << "' y='" << H - 12
        << "' text-anchor='middle' font-size='13'>" << xlabel << "</text>\n";
    out << "<text x='16' y='" << H / 2 << "' text-anchor='middle' font-size='13' "
        << "transform='rotate(-90 16 " << H / 2 << ")'>" << ylabel << "</text>\n";

    int legend_row = 0;
    for (const auto& s : series) {
        out << "<polyline fill='none' stroke='" << s.color << "' stroke-width='1.5' points='";
        for (size_t i = 0; i < s.x.size(); ++i)
            out << px(s.x[i]) << ',' << py(s.y[i]) << ' ';
        out << "'/>\n";
        if (!s.label.empty()) {
            const double lx = ml + 12, ly = mt + 16 + 16 * legend_row++;
            out << "<line x1='" << lx << "' y1='" << ly - 4 << "' x2='" << lx + 22
                << "' y2='" << ly - 4 << "' stroke='" << s.color << "' stroke-width='2'/>\n";
            out << "<text x='" << lx + 28 << "' y='" << ly << "' font-size='12'>" << s.label
                << "</text>\n";
        }
    }
    out << "</svg>\n";
}

} // namespace wqed
