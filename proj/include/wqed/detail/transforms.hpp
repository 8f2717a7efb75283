#ifndef WQED_DETAIL_TRANSFORMS_HPP
#define WQED_DETAIL_TRANSFORMS_HPP

#include <variant>

#include "wqed/expsum.hpp"
#include "wqed/params.hpp"
#include "wqed/wavepacket.hpp"

namespace wqed::detail {

// Spectral rank factors of the scenario initial states. Every projection
// coefficient this project needs is a short sum of products of these, so all
// momentum integrals reduce to the three transform flavours below, each a
// closed-form piecewise exponential in the retarded coordinate eta = x - v_g t.

// coeff * psi~(k) of a folded pulse (front offset must be >= 0)
struct PulseFactor {
    cplx coeff;
    double mu;
    double omega;
    double front;
};

// coeff / c^-(k), the qubit-line factor of a prepared single excitation
struct LineFactor {
    cplx coeff;
};

using RankFactor = std::variant<PulseFactor, LineFactor>;

RankFactor scale_factor(const RankFactor& f, cplx s);

// E[f](eta)  = \int dk f(k) e^{i k eta}
// Ec[f](eta) = \int dk f(k) e^{i k eta} / c^+(k)
// Et[f](eta) = \int dk f(k) e^{i k eta} c^-(k)/c^+(k)
// zscale bounds |eta| for degeneracy-safe pole handling.
PiecewiseExp transform_plain(const PhysicalParams& p, const RankFactor& f, double zscale);
PiecewiseExp transform_invc(const PhysicalParams& p, const RankFactor& f, double zscale);
PiecewiseExp transform_trans(const PhysicalParams& p, const RankFactor& f, double zscale);

// f(k) sampled at a wavevector node (for dense-grid coefficient matrices)
cplx factor_value(const PhysicalParams& p, const RankFactor& f, double k);

} // namespace wqed::detail

#endif
