#include "wqed/concurrence.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

namespace wqed {

namespace {

using Mat4 = Eigen::Matrix4cd;

Mat4 to_eigen(const TwoQubitDensityMatrix& rho) {
    Mat4 m;
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) m(r, c) = rho(r, c);
    return m;
}

// Basis change {gg, +, -, ee} -> computational {gg, ge, eg, ee}.
Mat4 basis_to_computational() {
    const double s = 1.0 / std::sqrt(2.0);
    Mat4 u = Mat4::Zero();
    u(0, 0) = 1.0;          // |gg>
    u(2, 1) = s; u(1, 1) = s;   // |+> = (|eg> + |ge>)/sqrt2, rows ordered {gg, ge, eg, ee}
    u(2, 2) = s; u(1, 2) = -s;  // |-> = (|eg> - |ge>)/sqrt2
    u(3, 3) = 1.0;          // |ee>
    return u;
}

} // namespace

void TwoQubitDensityMatrix::validate(double herm_tol, double trace_tol, double psd_tol) const {
    const Mat4 m = to_eigen(*this);
    if ((m - m.adjoint()).cwiseAbs().maxCoeff() > herm_tol)
        throw InvalidInput("TwoQubitDensityMatrix: not Hermitian within tolerance");
    if (std::abs(m.trace() - 1.0) > trace_tol)
        throw InvalidInput("TwoQubitDensityMatrix: trace departs from 1");
    Eigen::SelfAdjointEigenSolver<Mat4> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
    if (es.eigenvalues().minCoeff() < -psd_tol)
        throw InvalidInput("TwoQubitDensityMatrix: not positive semidefinite");
}

void QubitBasisPopulations::validate(double tol) const {
    const double pops[4] = {rho_gs, rho_plus, rho_minus, rho_beta};
    for (double p : pops)
        if (p < -tol || p > 1.0 + tol)
            throw InvalidInput("QubitBasisPopulations: population outside [0,1]");
    const double sum = rho_gs + rho_plus + rho_minus + rho_beta;
    if (std::abs(sum - 1.0) > 1e-6)
        throw InvalidInput("QubitBasisPopulations: populations do not sum to 1");
    if (std::norm(coh_pm) > rho_plus * rho_minus + tol)
        throw InvalidInput("QubitBasisPopulations: |coh_pm|^2 exceeds rho_+ rho_-");
}

double wootters_concurrence(const TwoQubitDensityMatrix& rho) {
    rho.validate(1e-10, 1e-10, 1e-8);
    static const Mat4 u = basis_to_computational();
    const Mat4 r = u * to_eigen(rho) * u.adjoint();

    Mat4 flip = Mat4::Zero(); // sigma_y x sigma_y
    flip(0, 3) = -1.0;
    flip(1, 2) = 1.0;
    flip(2, 1) = 1.0;
    flip(3, 0) = -1.0;
    const Mat4 rt = flip * r.conjugate() * flip;

    Eigen::ComplexEigenSolver<Mat4> es(r * rt, false);
    std::array<double, 4> lam{};
    for (int i = 0; i < 4; ++i) lam[i] = std::sqrt(std::max(0.0, es.eigenvalues()(i).real()));
    std::sort(lam.begin(), lam.end(), std::greater<>());
    const double c = lam[0] - lam[1] - lam[2] - lam[3];
    return std::clamp(c, 0.0, 1.0);
}

double x_state_concurrence(const QubitBasisPopulations& pops, double precond_tol) {
    if (std::abs(pops.rho_minus) > precond_tol || std::abs(pops.coh_pm) > precond_tol)
        throw InvalidInput("x_state_concurrence: requires rho_minus = 0 and coh_pm = 0");
    const double c = pops.rho_plus -
                     2.0 * std::sqrt(std::max(0.0, pops.rho_beta) * std::max(0.0, pops.rho_gs));
    return std::max(0.0, c);
}

double xi_concurrence(cplx xi) {
    const double m = std::abs(xi);
    if (std::isinf(m)) return 0.0;
    return 2.0 * m / (1.0 + m * m);
}

TwoQubitDensityMatrix assemble_density_matrix(const QubitBasisPopulations& pops) {
    pops.validate();
    TwoQubitDensityMatrix rho;
    rho(0, 0) = pops.rho_gs;
    rho(1, 1) = pops.rho_plus;
    rho(2, 2) = pops.rho_minus;
    rho(3, 3) = pops.rho_beta;
    rho(1, 2) = pops.coh_pm;
    rho(2, 1) = std::conj(pops.coh_pm);
    rho.validate(1e-12, 1e-9, 1e-9);
    return rho;
}

} // namespace wqed
