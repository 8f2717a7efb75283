#include "wqed/kgrid.hpp"

#include <cmath>

namespace wqed {

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(PI * (i + 0.75) / (n + 0.5));
        double pp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                const double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * z * p1 - j * p2) / (j + 1.0);
            }
            pp = n * (z * p0 - p1) / (z * z - 1.0);
            const double dz = p0 / pp;
            z -= dz;
            if (std::abs(dz) < 1e-15) break;
        }
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * pp * pp);
    }
}

KGrid KGrid::tan_mapped(double center, double scale, int n_nodes, double edge_cut,
                        int panel_order) {
    if (n_nodes < panel_order) panel_order = std::max(2, n_nodes);
    if (!(scale > 0.0)) throw InvalidInput("KGrid: scale must be > 0");
    if (!(edge_cut > 0.0 && edge_cut < 0.5)) throw InvalidInput("KGrid: bad edge_cut");
    const int panels = std::max(1, n_nodes / panel_order);

    std::vector<double> gx, gw;
    gauss_legendre(panel_order, gx, gw);

    KGrid grid;
    grid.center = center;
    grid.scale = scale;
    const double u_lo = -PI / 2.0 + edge_cut;
    const double u_hi = PI / 2.0 - edge_cut;
    const double du = (u_hi - u_lo) / panels;
    grid.nodes.reserve(panels * panel_order);
    grid.weights.reserve(panels * panel_order);
    for (int p = 0; p < panels; ++p) {
        const double mid = u_lo + (p + 0.5) * du;
        for (int g = 0; g < panel_order; ++g) {
            const double u = mid + 0.5 * du * gx[g];
            const double cu = std::cos(u);
            grid.nodes.push_back(center + scale * std::tan(u));
            grid.weights.push_back(0.5 * du * gw[g] * scale / (cu * cu));
        }
    }
    return grid;
}

} // namespace wqed
