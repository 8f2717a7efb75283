#ifndef WQED_KGRID_HPP
#define WQED_KGRID_HPP

#include <memory>
#include <vector>

#include "wqed/common.hpp"

namespace wqed {

// Quadrature grid in wavevector space approximating \int dk. Nodes follow the
// substitution k = center + scale * tan(u) with Gauss-Legendre panels uniform
// in u, so Lorentzian-type integrands are captured out to |k - center| of
// order scale / edge_cut while most nodes sit within a few linewidths.
struct KGrid {
    std::vector<double> nodes;   // strictly increasing
    std::vector<double> weights; // positive, sum approximates the mapped dk
    double center = 0.0;
    double scale = 1.0;

    static KGrid tan_mapped(double center, double scale, int n_nodes,
                            double edge_cut = 1e-8, int panel_order = 16);

    int size() const { return int(nodes.size()); }
};

// Tensor-product grid for the two-excitation coefficient matrices; both axes
// share the same one-dimensional rule.
struct KGrid2 {
    std::shared_ptr<const KGrid> axis;

    explicit KGrid2(std::shared_ptr<const KGrid> ax) : axis(std::move(ax)) {
        if (!axis || axis->size() < 2) throw InvalidInput("KGrid2: missing axis grid");
        for (int i = 1; i < axis->size(); ++i)
            if (!(axis->nodes[i] > axis->nodes[i - 1]))
                throw InvalidInput("KGrid2: nodes must increase strictly");
    }

    int size() const { return axis->size(); }
};

// Gauss-Legendre nodes and weights on [-1, 1].
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

} // namespace wqed

#endif
