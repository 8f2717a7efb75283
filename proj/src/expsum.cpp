#include "wqed/expsum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace wqed {

namespace {

constexpr double INF = std::numeric_limits<double>::infinity();
constexpr double PRUNE_EPS = 1e-280;

double binom(int n, int k) {
    double b = 1.0;
    for (int j = 0; j < k; ++j) b = b * double(n - j) / double(j + 1);
    return b;
}

cplx ipow(double z, int p) {
    double v = 1.0;
    for (int j = 0; j < p; ++j) v *= z;
    return v;
}

// S_j(r, d) = \int_0^d s^j e^{r s} ds by series, valid for small |r d|.
cplx series_sj(int j, cplx r, double d) {
    cplx sum = 0.0;
    cplx rn = 1.0; // r^n / n!
    double dn = ipow(d, j + 1).real();
    cplx term;
    for (int n = 0; n < 64; ++n) {
        term = rn * dn / double(j + n + 1);
        sum += term;
        if (std::abs(term) < 1e-20 * (std::abs(sum) + 1e-300)) break;
        rn *= r / double(n + 1);
        dn *= d;
    }
    return sum;
}

// Antiderivative of z^p e^{r z}: e^{r z} * sum_j (-1)^j p!/(p-j)! z^{p-j} / r^{j+1}.
cplx antideriv(int p, cplx r, double z) {
    cplx poly = 0.0;
    cplx fac = 1.0 / r;
    double perm = 1.0; // p!/(p-j)!
    for (int j = 0; j <= p; ++j) {
        poly += perm * fac * ipow(z, p - j);
        perm *= double(p - j);
        fac *= -1.0 / r;
    }
    return std::exp(r * z) * poly;
}

void merge_terms(std::vector<ExpTerm>& terms) {
    std::vector<ExpTerm> out;
    for (const auto& t : terms) {
        if (std::abs(t.c) < PRUNE_EPS) continue;
        bool merged = false;
        for (auto& o : out) {
            if (o.p == t.p && std::abs(o.r - t.r) <= 1e-13 * (1.0 + std::abs(o.r))) {
                o.c += t.c;
                merged = true;
                break;
            }
        }
        if (!merged) out.push_back(t);
    }
    out.erase(std::remove_if(out.begin(), out.end(),
                             [](const ExpTerm& t) { return std::abs(t.c) < PRUNE_EPS; }),
              out.end());
    terms = std::move(out);
}

std::vector<ExpTerm> reanchor(const std::vector<ExpTerm>& terms, double from, double to) {
    if (from == to) return terms;
    const double d = to - from; // z_old = z_new + d
    std::vector<ExpTerm> out;
    for (const auto& t : terms) {
        const cplx e = t.c * std::exp(t.r * d);
        for (int j = 0; j <= t.p; ++j)
            out.push_back({e * binom(t.p, j) * ipow(d, t.p - j), t.r, j});
    }
    merge_terms(out);
    return out;
}

cplx eval_terms(const std::vector<ExpTerm>& terms, double z) {
    cplx v = 0.0;
    for (const auto& t : terms) v += t.c * ipow(z, t.p) * std::exp(t.r * z);
    return v;
}

double pick_anchor(double lo, double hi) {
    if (std::isfinite(lo)) return lo;
    if (std::isfinite(hi)) return hi;
    return 0.0;
}

// Anchor for a derived segment: the finite endpoint that keeps every
// re-anchored coefficient representable (long segments can span hundreds of
// e-folds, so moving a term across the wrong way underflows it away).
double choose_anchor(double lo, double hi,
                     std::initializer_list<const PiecewiseExp::Segment*> sources) {
    auto cost = [&](double cand) {
        double worst = 0.0;
        for (const auto* s : sources)
            for (const auto& t : s->terms)
                worst = std::max(worst, std::abs(t.r.real()) * std::abs(cand - s->anchor));
        return worst;
    };
    const bool flo = std::isfinite(lo), fhi = std::isfinite(hi);
    if (flo && fhi) return cost(lo) <= cost(hi) ? lo : hi;
    if (flo) return lo;
    if (fhi) return hi;
    return 0.0;
}

} // namespace

cplx int_pow_exp(int p, cplx r, double z0, double z1) {
    if (z0 == z1) return 0.0;
    if (z1 == INF) {
        if (!(r.real() < 0.0)) throw NumericsError("int_pow_exp: divergent toward +inf");
        return -antideriv(p, r, z0);
    }
    if (z0 == -INF) {
        if (!(r.real() > 0.0)) throw NumericsError("int_pow_exp: divergent toward -inf");
        return antideriv(p, r, z1);
    }
    const double d = z1 - z0;
    const double thresh = std::max(0.8, 0.3 * double(p));
    if (std::abs(r) * std::abs(d) < thresh) {
        // shifted series around z0
        cplx sum = 0.0;
        for (int j = 0; j <= p; ++j)
            sum += binom(p, j) * ipow(z0, p - j) * series_sj(j, r, d);
        return std::exp(r * z0) * sum;
    }
    return antideriv(p, r, z1) - antideriv(p, r, z0);
}

PiecewiseExp PiecewiseExp::single(double lo, double hi, cplx c, cplx r, int p) {
    PiecewiseExp f;
    f.add_segment(lo, hi, pick_anchor(lo, hi), {{c, r, p}});
    return f;
}

std::vector<ExpTerm> PiecewiseExp::exp_difference(cplx C, cplx r1, cplx r2, double zscale) {
    const cplx d = r1 - r2;
    if (std::abs(d) * std::max(zscale, 1.0) > 4.0) {
        return {{C / d, r1, 0}, {-C / d, r2, 0}};
    }
    // (e^{r1 z} - e^{r2 z})/(r1-r2) = z e^{rm z} sum_n (w z)^{2n} / (2n+1)! 4^{-n},
    // rm the mean rate, w = (r1-r2)/2
    const cplx rm = 0.5 * (r1 + r2);
    const cplx w = 0.5 * d;
    std::vector<ExpTerm> out;
    double fact = 1.0; // (2n+1)!
    cplx wpow = 1.0;
    for (int n = 0; n <= 14; ++n) {
        out.push_back({C * wpow / fact, rm, 2 * n + 1});
        wpow *= w * w;
        fact *= double(2 * n + 2) * double(2 * n + 3);
        if (std::abs(wpow) * ipow(zscale, 2 * n + 2).real() / fact < 1e-20) break;
    }
    return out;
}

void PiecewiseExp::add_segment(double lo, double hi, double anchor, std::vector<ExpTerm> terms) {
    if (!(lo < hi)) throw InvalidInput("PiecewiseExp: empty segment");
    if (!std::isfinite(anchor)) throw InvalidInput("PiecewiseExp: anchor must be finite");
    merge_terms(terms);
    if (terms.empty()) return;
    Segment s{lo, hi, anchor, std::move(terms)};
    auto it = std::lower_bound(segs_.begin(), segs_.end(), s,
                               [](const Segment& a, const Segment& b) { return a.lo < b.lo; });
    if (it != segs_.end() && s.hi > it->lo)
        throw InvalidInput("PiecewiseExp: overlapping segment");
    if (it != segs_.begin() && std::prev(it)->hi > s.lo)
        throw InvalidInput("PiecewiseExp: overlapping segment");
    segs_.insert(it, std::move(s));
}

double PiecewiseExp::support_lo() const { return segs_.empty() ? INF : segs_.front().lo; }
double PiecewiseExp::support_hi() const { return segs_.empty() ? -INF : segs_.back().hi; }

cplx PiecewiseExp::value(double x) const {
    for (const auto& s : segs_) {
        if (x < s.lo) return 0.0;
        if (x < s.hi) return eval_terms(s.terms, x - s.anchor);
    }
    return 0.0;
}

cplx PiecewiseExp::integral(double a, double b) const {
    if (!(a < b)) return 0.0;
    cplx sum = 0.0;
    for (const auto& s : segs_) {
        const double lo = std::max(a, s.lo);
        const double hi = std::min(b, s.hi);
        if (!(lo < hi)) continue;
        const double z0 = std::isfinite(lo) ? lo - s.anchor : -INF;
        const double z1 = std::isfinite(hi) ? hi - s.anchor : INF;
        for (const auto& t : s.terms) sum += t.c * int_pow_exp(t.p, t.r, z0, z1);
    }
    return sum;
}

cplx PiecewiseExp::integral_all() const { return integral(-INF, INF); }

PiecewiseExp PiecewiseExp::scaled(cplx f) const {
    PiecewiseExp out = *this;
    for (auto& s : out.segs_)
        for (auto& t : s.terms) t.c *= f;
    return out;
}

PiecewiseExp PiecewiseExp::conjugate() const {
    PiecewiseExp out = *this;
    for (auto& s : out.segs_)
        for (auto& t : s.terms) {
            t.c = std::conj(t.c);
            t.r = std::conj(t.r);
        }
    return out;
}

PiecewiseExp PiecewiseExp::times_global_exp(cplx c, cplx r) const {
    PiecewiseExp out = *this;
    for (auto& s : out.segs_) {
        const cplx at_anchor = c * std::exp(r * s.anchor);
        for (auto& t : s.terms) {
            t.c *= at_anchor;
            t.r += r;
        }
    }
    return out;
}

PiecewiseExp operator+(const PiecewiseExp& a, const PiecewiseExp& b) {
    // collect breakpoints of both supports
    std::vector<double> cuts;
    for (const auto* f : {&a, &b})
        for (const auto& s : f->segs_) {
            cuts.push_back(s.lo);
            cuts.push_back(s.hi);
        }
    std::sort(cuts.begin(), cuts.end());
    cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
    PiecewiseExp out;
    for (size_t i = 0; i + 1 < cuts.size(); ++i) {
        const double lo = cuts[i], hi = cuts[i + 1];
        if (!(lo < hi)) continue;
        std::vector<const PiecewiseExp::Segment*> overlapping;
        for (const auto* f : {&a, &b})
            for (const auto& s : f->segs_)
                if (s.lo <= lo && hi <= s.hi) overlapping.push_back(&s);
        if (overlapping.empty()) continue;
        double anchor = pick_anchor(lo, hi);
        if (overlapping.size() == 1)
            anchor = choose_anchor(lo, hi, {overlapping[0]});
        else
            anchor = choose_anchor(lo, hi, {overlapping[0], overlapping[1]});
        std::vector<ExpTerm> terms;
        for (const auto* s : overlapping) {
            auto re = reanchor(s->terms, s->anchor, anchor);
            terms.insert(terms.end(), re.begin(), re.end());
        }
        if (!terms.empty()) out.add_segment(lo, hi, anchor, std::move(terms));
    }
    return out;
}

PiecewiseExp operator*(const PiecewiseExp& a, const PiecewiseExp& b) {
    PiecewiseExp out;
    for (const auto& sa : a.segs_)
        for (const auto& sb : b.segs_) {
            const double lo = std::max(sa.lo, sb.lo);
            const double hi = std::min(sa.hi, sb.hi);
            if (!(lo < hi)) continue;
            const double anchor = choose_anchor(lo, hi, {&sa, &sb});
            const auto ta = reanchor(sa.terms, sa.anchor, anchor);
            const auto tb = reanchor(sb.terms, sb.anchor, anchor);
            std::vector<ExpTerm> terms;
            terms.reserve(ta.size() * tb.size());
            for (const auto& x : ta)
                for (const auto& y : tb) terms.push_back({x.c * y.c, x.r + y.r, x.p + y.p});
            out.add_segment(lo, hi, anchor, std::move(terms));
        }
    return out;
}

PiecewiseExp PiecewiseExp::filtered_tail(cplx kappa) const {
    if (!(kappa.real() > 0.0))
        throw InvalidInput("filtered_tail: kernel must decay (Re kappa > 0)");
    PiecewiseExp out;
    if (segs_.empty()) return out;

    // tail values g(x) = \int_x^inf e^{-kappa (y-x)} f(y) dy at segment starts,
    // accumulated right to left
    const int n = int(segs_.size());
    std::vector<cplx> tail_at_lo(n, cplx{0.0, 0.0});
    cplx tail = 0.0; // g at hi of the current segment
    for (int s = n - 1; s >= 0; --s) {
        const auto& seg = segs_[s];
        if (s + 1 < n) {
            // decay across the gap [seg.hi, segs_[s+1].lo)
            const double gap = segs_[s + 1].lo - seg.hi;
            tail = tail_at_lo[s + 1] * std::exp(-kappa * gap);
        }
        if (std::isfinite(seg.lo)) {
            cplx own = 0.0;
            const double zlo = seg.lo - seg.anchor;
            const double zhi = std::isfinite(seg.hi) ? seg.hi - seg.anchor : INF;
            for (const auto& t : seg.terms)
                own += t.c * std::exp(kappa * zlo) * int_pow_exp(t.p, t.r - kappa, zlo, zhi);
            const double len = seg.hi - seg.lo;
            tail_at_lo[s] =
                own + (std::isfinite(len) ? std::exp(-kappa * len) * tail : cplx{0.0});
        }
        // a segment unbounded below can only be the first; its tail seed is
        // never consumed
    }

    // leading segment: pure decaying tail below the support
    if (std::isfinite(segs_.front().lo) && std::abs(tail_at_lo[0]) > PRUNE_EPS) {
        const double lo0 = segs_.front().lo;
        out.add_segment(-INF, lo0, lo0, {{tail_at_lo[0], kappa, 0}});
    }

    for (int s = 0; s < n; ++s) {
        const auto& seg = segs_[s];
        const double A = seg.anchor;
        const double H = std::isfinite(seg.hi) ? seg.hi - A : INF;
        std::vector<ExpTerm> terms;
        // own contribution: for each input term, e^{kappa z} (F(H) - F(z)),
        // F the antiderivative of z^p e^{(r-kappa) z}
        for (const auto& t : seg.terms) {
            const cplx rho = t.r - kappa;
            const double zmax = std::isfinite(H)
                                    ? std::max(std::abs(seg.lo - A), std::abs(H))
                                    : INF;
            const double thresh = std::max(0.8, 0.3 * double(t.p));
            if (std::isfinite(zmax) && std::abs(rho) * zmax < thresh) {
                // series: \int_z^H s^p e^{rho s} ds = sum_n rho^n/n! (H^{p+n+1}-z^{p+n+1})/(p+n+1)
                cplx rn = 1.0;
                for (int nn = 0; nn <= 40; ++nn) {
                    const int q = t.p + nn + 1;
                    const cplx cn = rn / double(q);
                    terms.push_back({t.c * cn * ipow(H, q), kappa, 0});
                    terms.push_back({-t.c * cn, kappa, q});
                    const double mag = std::abs(rn) * ipow(zmax, q).real();
                    rn *= rho / double(nn + 1);
                    if (mag * std::abs(rho) * zmax / double(nn + 1) < 1e-20 * (1.0 + mag)) break;
                }
            } else {
                if (!std::isfinite(H) && !(rho.real() < 0.0))
                    throw NumericsError("filtered_tail: divergent tail");
                const cplx FH = std::isfinite(H) ? antideriv(t.p, rho, H) : cplx{0.0};
                terms.push_back({t.c * FH, kappa, 0});
                // -e^{kappa z} F(z) = -e^{r z} * poly(z)
                cplx fac = 1.0 / rho;
                double perm = 1.0;
                for (int j = 0; j <= t.p; ++j) {
                    terms.push_back({-t.c * perm * fac, t.r, t.p - j});
                    perm *= double(t.p - j);
                    fac *= -1.0 / rho;
                }
            }
        }
        // tail beyond this segment
        if (std::isfinite(seg.hi)) {
            cplx tnext = (s + 1 < n) ? tail_at_lo[s + 1] : cplx{0.0};
            if (s + 1 < n) tnext *= std::exp(-kappa * (segs_[s + 1].lo - seg.hi));
            if (std::abs(tnext) > PRUNE_EPS)
                terms.push_back({tnext * std::exp(-kappa * H), kappa, 0});
        }
        if (!terms.empty()) out.add_segment(seg.lo, seg.hi, A, std::move(terms));
        // gap after this segment decays toward the next support
        if (s + 1 < n && seg.hi < segs_[s + 1].lo && std::isfinite(seg.hi)) {
            const cplx gnext = tail_at_lo[s + 1];
            const double glo = seg.hi, ghi = segs_[s + 1].lo;
            if (std::abs(gnext) > PRUNE_EPS)
                out.add_segment(glo, ghi, ghi,
                                {{gnext, kappa, 0}}); // e^{-kappa (ghi - x)} g(ghi)
        }
    }
    return out;
}

PiecewiseExp PiecewiseExp::prefix(double base) const {
    PiecewiseExp out;
    cplx acc = 0.0;
    double cursor = base;
    for (const auto& seg : segs_) {
        if (seg.hi <= base) continue;
        const double lo = std::max(seg.lo, base);
        // constant plateau across any gap before this segment
        if (lo > cursor && std::abs(acc) > PRUNE_EPS)
            out.add_segment(cursor, lo, cursor, {{acc, 0.0, 0}});
        if (lo > cursor) cursor = lo;

        // re-anchor clipped segments so exponentials stay representable
        const double A = (lo > seg.anchor && lo - seg.anchor > 1e3) ? lo : seg.anchor;
        const auto seg_terms = (A == seg.anchor) ? seg.terms : reanchor(seg.terms, seg.anchor, A);
        const double z0 = lo - A;
        const double zhi = std::isfinite(seg.hi) ? seg.hi - A : INF;
        std::vector<ExpTerm> terms;
        if (std::abs(acc) > PRUNE_EPS) terms.push_back({acc, 0.0, 0});
        for (const auto& t : seg_terms) {
            const double zmax = std::isfinite(zhi) ? std::max(std::abs(z0), std::abs(zhi))
                                                   : INF;
            const double thresh = std::max(0.8, 0.3 * double(t.p));
            if (std::isfinite(zmax) && std::abs(t.r) * zmax < thresh) {
                // series: \int_{z0}^{z} s^p e^{rs} ds as polynomials in z
                cplx rn = 1.0;
                for (int nn = 0; nn <= 40; ++nn) {
                    const int q = t.p + nn + 1;
                    const cplx cn = t.c * rn / double(q);
                    terms.push_back({cn, 0.0, q});
                    terms.push_back({-cn * ipow(z0, q), 0.0, 0});
                    const double mag = std::abs(rn) * ipow(zmax, q).real();
                    rn *= t.r / double(nn + 1);
                    if (mag * std::abs(t.r) * zmax / double(nn + 1) < 1e-20 * (1.0 + mag))
                        break;
                }
            } else {
                // F(z) - F(z0), F the antiderivative
                cplx fac = 1.0 / t.r;
                double perm = 1.0;
                for (int j = 0; j <= t.p; ++j) {
                    terms.push_back({t.c * perm * fac, t.r, t.p - j});
                    perm *= double(t.p - j);
                    fac *= -1.0 / t.r;
                }
                terms.push_back({-t.c * antideriv(t.p, t.r, z0), 0.0, 0});
            }
        }
        out.add_segment(lo, seg.hi, A, std::move(terms));
        cursor = seg.hi;
        for (const auto& t : seg_terms) acc += t.c * int_pow_exp(t.p, t.r, z0, zhi);
    }
    if (std::isfinite(cursor) && std::abs(acc) > PRUNE_EPS)
        out.add_segment(cursor, INF, cursor, {{acc, 0.0, 0}});
    return out;
}

CumulativeIntegral::CumulativeIntegral(PiecewiseExp f) : f_(std::move(f)) {
    const auto& segs = f_.segments();
    prefix_.resize(segs.size() + 1, cplx{0.0, 0.0});
    for (size_t s = 0; s < segs.size(); ++s) {
        const double z0 = std::isfinite(segs[s].lo) ? segs[s].lo - segs[s].anchor : -INF;
        const double z1 = std::isfinite(segs[s].hi) ? segs[s].hi - segs[s].anchor : INF;
        cplx v = 0.0;
        for (const auto& t : segs[s].terms) v += t.c * int_pow_exp(t.p, t.r, z0, z1);
        prefix_[s + 1] = prefix_[s] + v;
    }
    total_ = prefix_.back();
}

cplx CumulativeIntegral::operator()(double x) const {
    const auto& segs = f_.segments();
    cplx acc = 0.0;
    for (size_t s = 0; s < segs.size(); ++s) {
        if (x <= segs[s].lo) return acc;
        if (x < segs[s].hi) {
            const double z0 = std::isfinite(segs[s].lo) ? segs[s].lo - segs[s].anchor : -INF;
            cplx v = 0.0;
            for (const auto& t : segs[s].terms)
                v += t.c * int_pow_exp(t.p, t.r, z0, x - segs[s].anchor);
            return acc + v;
        }
        acc = prefix_[s + 1];
    }
    return acc;
}

cplx CumulativeIntegral::total() const { return total_; }

} // namespace wqed
