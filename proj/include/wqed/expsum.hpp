#ifndef WQED_EXPSUM_HPP
#define WQED_EXPSUM_HPP

#include <vector>

#include "wqed/common.hpp"

namespace wqed {

// One term c * z^p * e^{r z} with z = x - anchor of the owning segment.
struct ExpTerm {
    cplx c;
    cplx r;
    int p = 0;
};

// Piecewise sum of polynomial-times-exponential terms on half-open segments
// [lo, hi), zero elsewhere. Closed under addition, multiplication, conjugation
// and one-sided exponential convolution, with exact integrals, which is what
// the spectral dynamics of exponential wavepackets on Lorentzian lines needs.
//
// Coefficients are kept against a finite per-segment anchor so magnitudes stay
// near the physical scale even on long segments.
class PiecewiseExp {
public:
    struct Segment {
        double lo;
        double hi;
        double anchor;
        std::vector<ExpTerm> terms;
    };

    PiecewiseExp() = default;

    static PiecewiseExp single(double lo, double hi, cplx c, cplx r, int p = 0);

    // Terms for C (e^{r1 z} - e^{r2 z}) / (r1 - r2), switching to a series
    // around the mean rate once |r1 - r2| * zscale is small enough that the
    // two-exponential form would cancel badly.
    static std::vector<ExpTerm> exp_difference(cplx C, cplx r1, cplx r2, double zscale);

    void add_segment(double lo, double hi, double anchor, std::vector<ExpTerm> terms);

    bool empty() const { return segs_.empty(); }
    const std::vector<Segment>& segments() const { return segs_; }
    double support_lo() const;
    double support_hi() const;

    cplx value(double x) const;
    cplx integral(double a, double b) const; // bounds may be +-inf
    cplx integral_all() const;

    PiecewiseExp scaled(cplx f) const;
    PiecewiseExp conjugate() const;
    // multiply by the global factor c e^{r x} (x absolute, not anchored)
    PiecewiseExp times_global_exp(cplx c, cplx r) const;
    // g(x) = \int_0^inf e^{-kappa tau} f(x + tau) dtau, Re kappa > 0
    PiecewiseExp filtered_tail(cplx kappa) const;
    // F(x) = \int_base^x f for x >= base (zero below base), kept as a
    // piecewise exponential so ordered double integrals stay closed-form
    PiecewiseExp prefix(double base) const;

    friend PiecewiseExp operator+(const PiecewiseExp& a, const PiecewiseExp& b);
    friend PiecewiseExp operator*(const PiecewiseExp& a, const PiecewiseExp& b);

private:
    std::vector<Segment> segs_; // sorted, disjoint
};

// \int_{z0}^{z1} z^p e^{r z} dz with stable small-|r (z1-z0)| handling;
// infinite bounds require decay of the integrand on that side.
cplx int_pow_exp(int p, cplx r, double z0, double z1);

// Prefix integrals F(x) = \int_{-inf}^{x} f for repeated queries.
class CumulativeIntegral {
public:
    CumulativeIntegral() = default;
    explicit CumulativeIntegral(PiecewiseExp f);
    cplx operator()(double x) const;
    cplx total() const;

private:
    PiecewiseExp f_;
    std::vector<cplx> prefix_; // integral of f over (-inf, segment lo)
    cplx total_{0.0, 0.0};
};

} // namespace wqed

#endif
