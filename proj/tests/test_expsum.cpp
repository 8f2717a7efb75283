#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "wqed/expsum.hpp"

using namespace wqed;

namespace {

constexpr double INF = std::numeric_limits<double>::infinity();

// Gauss-Legendre brute-force quadrature of f over [a, b], split at the
// function's breakpoints so panels never straddle a discontinuity.
cplx quad(const PiecewiseExp& f, double a, double b, int panels = 400) {
    static const double xg[4] = {-0.8611363115940526, -0.3399810435848563,
                                 0.3399810435848563, 0.8611363115940526};
    static const double wg[4] = {0.3478548451374538, 0.6521451548625461,
                                 0.6521451548625461, 0.3478548451374538};
    std::vector<double> cuts{a, b};
    for (const auto& s : f.segments()) {
        if (s.lo > a && s.lo < b) cuts.push_back(s.lo);
        if (s.hi > a && s.hi < b) cuts.push_back(s.hi);
    }
    std::sort(cuts.begin(), cuts.end());
    cplx sum = 0.0;
    for (size_t c = 0; c + 1 < cuts.size(); ++c) {
        const double h = (cuts[c + 1] - cuts[c]) / panels;
        for (int ppp = 0; ppp < panels; ++ppp) {
            const double lo = cuts[c] + ppp * h;
            for (int g = 0; g < 4; ++g)
                sum += 0.5 * h * wg[g] * f.value(lo + 0.5 * h * (1.0 + xg[g]));
        }
    }
    return sum;
}

} // namespace

TEST_CASE("int_pow_exp matches quadrature across regimes") {
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    for (int trial = 0; trial < 200; ++trial) {
        const int p = trial % 5;
        const cplx r{0.3 * U(rng), 2.0 * U(rng)};
        const double z0 = 3.0 * U(rng);
        const double z1 = z0 + 0.001 + 2.0 * std::abs(U(rng));
        const cplx exact = int_pow_exp(p, r, z0, z1);
        // simple high-order quadrature oracle
        cplx q = 0.0;
        const int n = 20000;
        const double h = (z1 - z0) / n;
        for (int i = 0; i < n; ++i) {
            const double z = z0 + (i + 0.5) * h;
            cplx zp = 1.0;
            for (int j = 0; j < p; ++j) zp *= z;
            q += h * zp * std::exp(r * z);
        }
        CHECK(std::abs(exact - q) < 1e-8 * (1.0 + std::abs(exact)));
    }
}

TEST_CASE("int_pow_exp tiny-rate stability") {
    const cplx near0{1e-14, -3e-15};
    const cplx exact = int_pow_exp(3, near0, 1.0, 2.0);
    CHECK(std::abs(exact - (16.0 - 1.0) / 4.0) < 1e-10);
    const cplx inf_tail = int_pow_exp(2, cplx{-0.5, 1.0}, 4.0, INF);
    cplx q = 0.0;
    const int n = 1200000;
    for (int i = 0; i < n; ++i) {
        const double z = 4.0 + (i + 0.5) * 1e-4;
        q += 1e-4 * z * z * std::exp(cplx{-0.5, 1.0} * z);
    }
    CHECK(std::abs(inf_tail - q) < 1e-7);
}

TEST_CASE("algebra: sums and products agree with pointwise evaluation") {
    PiecewiseExp f = PiecewiseExp::single(-INF, -2.0, {1.0, 0.5}, {0.05, 1.3});
    f.add_segment(-2.0, 3.0, -2.0, {{{0.3, -0.2}, {-0.1, 0.7}, 1}});
    PiecewiseExp g = PiecewiseExp::single(-4.0, 10.0, {0.2, -1.0}, {-0.02, -0.4}, 2);

    PiecewiseExp s = f + g;
    PiecewiseExp m = f * g;
    for (double x : {-7.0, -3.9, -2.5, -2.0, -1.0, 0.0, 2.9, 3.5, 9.0, 12.0}) {
        CHECK(std::abs(s.value(x) - (f.value(x) + g.value(x))) < 1e-12);
        CHECK(std::abs(m.value(x) - f.value(x) * g.value(x)) < 1e-12);
    }
    CHECK(std::abs(m.integral(-6.0, 8.0) - quad(m, -6.0, 8.0, 3000)) < 1e-9);
}

TEST_CASE("conjugate and global exponential factors") {
    PiecewiseExp f = PiecewiseExp::single(0.0, 5.0, {0.7, 0.1}, {-0.3, 2.0}, 1);
    PiecewiseExp c = f.conjugate();
    PiecewiseExp e = f.times_global_exp({2.0, 0.0}, {-0.1, -0.5});
    for (double x : {0.5, 2.0, 4.9}) {
        CHECK(std::abs(c.value(x) - std::conj(f.value(x))) < 1e-14);
        CHECK(std::abs(e.value(x) -
                       2.0 * f.value(x) * std::exp(cplx{-0.1, -0.5} * x)) < 1e-12);
    }
}

TEST_CASE("exp_difference stays stable through near degeneracy") {
    const cplx r1{-0.013, 1.0};
    // moderate separations: direct two-exponential reference is trustworthy
    for (double eps : {1.0, 1e-2}) {
        const cplx r2 = r1 + cplx{eps * 0.3, -eps};
        auto terms = PiecewiseExp::exp_difference({1.0, 0.0}, r1, r2, 2000.0);
        PiecewiseExp f;
        f.add_segment(-2000.0, 0.0, 0.0, terms);
        for (double z : {-1500.0, -200.0, -1.0, -1e-4}) {
            const cplx ref = (std::exp(r1 * z) - std::exp(r2 * z)) / (r1 - r2);
            CHECK(std::abs(f.value(z) - ref) < 1e-9 * (1.0 + std::abs(ref)));
        }
    }
    // near and exact degeneracy: compare against the confluent limit, whose
    // departure is bounded by the next series order
    PiecewiseExp f0;
    f0.add_segment(-2000.0, 0.0, 0.0,
                   PiecewiseExp::exp_difference({1.0, 0.0}, r1, r1, 2000.0));
    for (double z : {-1500.0, -200.0, -1.0}) {
        CHECK(std::abs(f0.value(z) - double(z) * std::exp(r1 * z)) <
              1e-12 * std::abs(z * std::exp(r1 * z)));
    }
    for (double eps : {1e-6, 1e-9, 1e-12}) {
        const cplx r2 = r1 + cplx{eps * 0.3, -eps};
        PiecewiseExp f;
        f.add_segment(-2000.0, 0.0, 0.0,
                      PiecewiseExp::exp_difference({1.0, 0.0}, r1, r2, 2000.0));
        for (double z : {-1500.0, -200.0, -1.0}) {
            const cplx lim = f0.value(z);
            const double budget = 0.6 * std::abs(r1 - r2) * z * z * std::abs(std::exp(r1 * z)) +
                                  1e-12 * std::abs(lim);
            CHECK(std::abs(f.value(z) - lim) < budget + 1e-300);
        }
    }
}

TEST_CASE("filtered_tail equals direct convolution") {
    PiecewiseExp f = PiecewiseExp::single(-30.0, -10.0, {1.0, -0.3}, {0.08, 0.9});
    f.add_segment(-10.0, -4.0, -10.0, {{{-0.5, 0.2}, {-0.05, -1.1}, 1}});
    // gap [-4, 2), then a decaying tail to +inf
    f.add_segment(2.0, INF, 2.0, {{{0.4, 0.1}, {-0.2, 0.3}, 0}});

    const cplx kappa{0.07, 1.7};
    PiecewiseExp g = f.filtered_tail(kappa);

    auto direct = [&](double x) {
        cplx sum = 0.0;
        const double h = 2e-3;
        for (int i = 0; i < 40000; ++i) {
            const double tau = (i + 0.5) * h;
            sum += h * std::exp(-kappa * tau) * f.value(x + tau);
        }
        return sum;
    };
    for (double x : {-50.0, -25.0, -10.5, -7.0, -4.0, -1.0, 1.9, 2.5, 10.0}) {
        const cplx want = direct(x);
        CHECK(std::abs(g.value(x) - want) < 2e-5 * (1.0 + std::abs(want)));
    }
}

TEST_CASE("prefix keeps running integrals closed-form") {
    PiecewiseExp f = PiecewiseExp::single(-8.0, -3.0, {1.2, 0.4}, {0.1, 0.9}, 1);
    f.add_segment(-1.0, 5.0, -1.0, {{{-0.3, 0.8}, {-1e-9, 0.35}, 0}}); // near-zero rate path
    f.add_segment(5.0, INF, 5.0, {{{0.2, 0.0}, {-0.4, 1.3}, 2}});
    const double base = -6.0;
    PiecewiseExp F = f.prefix(base);
    for (double x : {-7.0, -5.5, -3.0, -2.0, -0.5, 2.0, 5.0, 9.0, 30.0}) {
        const cplx want = (x <= base) ? cplx{0.0} : f.integral(base, x);
        CHECK(std::abs(F.value(x) - want) < 1e-11 * (1.0 + std::abs(want)));
    }
    // product of prefix with another function integrates correctly (ordered
    // double integral collapse)
    PiecewiseExp g = PiecewiseExp::single(-4.0, 7.0, {0.5, -0.2}, {-0.15, -0.8});
    const cplx lhs = (g * F).integral(base, INF);
    // brute force ordered integral over g's support
    cplx rhs = 0.0;
    const int n = 120000;
    {
        const double lo = -4.0, hi = 7.0;
        const double h = (hi - lo) / n;
        for (int i = 0; i < n; ++i) {
            const double x2 = lo + (i + 0.5) * h;
            rhs += h * g.value(x2) * f.integral(base, x2);
        }
    }
    CHECK(std::abs(lhs - rhs) < 2e-6 * (1.0 + std::abs(lhs)));
}

TEST_CASE("cumulative integral prefix queries") {
    PiecewiseExp f = PiecewiseExp::single(-INF, -1.0, {2.0, 0.3}, {0.12, 0.8});
    f.add_segment(-1.0, 6.0, -1.0, {{{0.4, 0.0}, {-0.25, -0.6}, 2}});
    CumulativeIntegral F(f);
    for (double x : {-20.0, -1.0, 0.0, 3.0, 6.0, 9.0}) {
        const cplx want = f.integral(-INF, x);
        CHECK(std::abs(F(x) - want) < 1e-10 * (1.0 + std::abs(want)));
    }
    CHECK(std::abs(F.total() - f.integral_all()) < 1e-12);
}
