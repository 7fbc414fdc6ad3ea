#pragma once

// Hyperbolic structures on the once-punctured torus in trace coordinates,
// simple length spectra, and the metrics built from them.
//
// A point of Teichmuller space is a Markov triple (x, y, z) = traces of the
// curves 0/1, 1/0, 1/1. Internally each trace t is carried as the half
// length h with t = 2 cosh(h): thin surfaces have traces within 1e-9 of 2
// and long curves have traces beyond the range of double, and both ends
// stay accurate this way.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "conelab/curvesys.hpp"

namespace conelab {

namespace numeric {

/// acosh(1 + w), accurate for small w.
inline double acosh1p(double w) { return std::log1p(w + std::sqrt(w * (w + 2.0))); }

/// acosh(v) given log(v), for v >= 1.
inline double acosh_from_log(double log_v) {
    if (log_v > 20.0) return log_v + std::log1p(std::sqrt(-std::expm1(-2.0 * log_v)));
    return acosh1p(std::expm1(log_v));
}

/// log(2 cosh(h)) for h >= 0.
inline double log_trace(double h) { return h + std::log1p(std::exp(-2.0 * h)); }

/// Fricke step in half-length form: returns n with
///   cosh(n) = 2 cosh(a) cosh(b) - cosh(c),
/// i.e. tr(PQ) = tr(P) tr(Q) - tr(PQ^-1).
inline double fricke_step(double a, double b, double c) {
    const double s = a + b;
    const double d = std::abs(a - b);
    if (s < 20.0) {
        const double ss = std::sinh(0.5 * s), sd = std::sinh(0.5 * d), sc = std::sinh(0.5 * c);
        const double w = 2.0 * (ss * ss + sd * sd - sc * sc);
        if (!(w > 0.0)) throw std::domain_error("trace recursion left the hyperbolic range");
        return acosh1p(w);
    }
    const double W = 1.0 + std::exp(-2.0 * s) + std::exp(d - s) + std::exp(-d - s) - std::exp(c - s) -
                     std::exp(-c - s);
    if (!(W > 0.0)) throw std::domain_error("trace recursion left the hyperbolic range");
    const double log_cosh = s - std::numbers::ln2 + std::log(W);
    if (!(log_cosh > 0.0)) throw std::domain_error("trace recursion left the hyperbolic range");
    return acosh_from_log(log_cosh);
}

/// log(cosh(u)).
inline double log_cosh(double u) {
    const double a = std::abs(u);
    if (a > 20.0) return a - std::numbers::ln2 + std::log1p(std::exp(-2.0 * a));
    const double sh = std::sinh(0.5 * a);
    return std::log1p(2.0 * sh * sh);
}

/// log(sinh(u)) for u > 0.
inline double log_sinh(double u) {
    if (u > 20.0) return u - std::numbers::ln2 + std::log1p(-std::exp(-2.0 * u));
    return std::log(std::sinh(u));
}

/// asinh(v) given log(v).
inline double asinh_from_log(double log_v) {
    if (log_v > 20.0) return log_v + std::log1p(std::sqrt(1.0 + std::exp(-2.0 * log_v)));
    return std::asinh(std::exp(log_v));
}

}  // namespace numeric

/// Marked hyperbolic structure on S_{1,1} as a Markov triple.
///
/// A point produced by act() keeps the structure it came from as its base
/// plus the accumulated mapping class, and measures slopes on the base.
class TraceCoord {
public:
    /// From traces; each must exceed 2 and the triple must satisfy
    /// x^2 + y^2 + z^2 = xyz to relative tolerance 1e-9.
    static TraceCoord from_traces(double x, double y, double z) {
        if (!(x > 2.0 && y > 2.0 && z > 2.0))
            throw std::invalid_argument("TraceCoord: traces must exceed 2");
        TraceCoord t(std::acosh(0.5 * x), std::acosh(0.5 * y), std::acosh(0.5 * z));
        if (!(t.markov_residual() <= 1e-9))
            throw std::invalid_argument("TraceCoord: not a Markov triple");
        return t;
    }

    /// From half lengths of 0/1, 1/0, 1/1; no Markov check.
    static TraceCoord from_half_lengths(double hx, double hy, double hz) {
        if (!(hx > 0.0 && hy > 0.0 && hz > 0.0))
            throw std::invalid_argument("TraceCoord: half lengths must be positive");
        return TraceCoord(hx, hy, hz);
    }

    double x() const { return 2.0 * std::cosh(h_[0]); }
    double y() const { return 2.0 * std::cosh(h_[1]); }
    double z() const { return 2.0 * std::cosh(h_[2]); }

    double hx() const { return h_[0]; }
    double hy() const { return h_[1]; }
    double hz() const { return h_[2]; }

    /// |x^2 + y^2 + z^2 - xyz| / (xyz), evaluated in log space.
    double markov_residual() const {
        const double lx = numeric::log_trace(h_[0]), ly = numeric::log_trace(h_[1]),
                     lz = numeric::log_trace(h_[2]);
        const double r = std::exp(lx - ly - lz) + std::exp(ly - lx - lz) + std::exp(lz - lx - ly) - 1.0;
        return std::abs(r);
    }

    const MappingClass& marking() const { return marking_; }
    bool unmarked() const { return marking_ == MappingClass::identity(); }
    /// The structure this point was moved from; *this == act(marking(), base()).
    TraceCoord base() const { return TraceCoord(base_[0], base_[1], base_[2]); }

private:
    friend TraceCoord act(const MappingClass& m, const TraceCoord& T);
    friend TraceCoord dehn_twist(const TraceCoord& T, std::int64_t k);

    TraceCoord(double hx, double hy, double hz) : h_{hx, hy, hz}, base_{hx, hy, hz} {}
    double h_[3];
    double base_[3];
    MappingClass marking_;
};

/// Fenchel-Nielsen coordinates for the pants curve 0/1.
struct FNPoint {
    double length = 1.0;
    double twist = 0.0;
};

/// Distance estimate with the enumeration knobs that produced it.
struct MetricBracket {
    double lower = 0.0;
    double upper = std::numeric_limits<double>::infinity();
    std::int64_t enum_height = 0;
    int orbit_radius = -1;  // -1 when no orbit search was involved
};

/// Point on the zero-twist locus y = z with the curve 0/1 of length l.
inline TraceCoord zero_twist_point(double l) {
    if (!(l > 0.0) || !std::isfinite(l)) throw std::invalid_argument("zero_twist_point: length must be positive");
    const double hx = 0.5 * l;
    // y = x / sqrt(x - 2) = cosh(l/2) / sinh(l/4); store acosh(y / 2).
    const double log_half_y = std::log(std::cosh(hx)) - std::log(2.0 * std::sinh(0.25 * l));
    const double hy = numeric::acosh_from_log(log_half_y);
    return TraceCoord::from_half_lengths(hx, hy, hy);
}

/// Curves 1/j meeting 0/1 once have cosh(h_j) = coth(hx) cosh(sigma + (j - 1/2) hx);
/// sigma is the twist parameter, zero exactly when y = z.
inline double twist_parameter(const TraceCoord& T) {
    const double d = 0.5 * (T.hz() - T.hy());
    if (d == 0.0) return 0.0;
    // cosh hz - cosh hy = 2 sinh(sigma) sinh(hx / 2) coth(hx)
    const double log_sinh_sigma = numeric::log_sinh(0.5 * (T.hz() + T.hy())) + numeric::log_sinh(std::abs(d)) +
                                  std::numbers::ln2 + numeric::log_cosh(0.5 * T.hx()) - numeric::log_cosh(T.hx());
    return std::copysign(numeric::asinh_from_log(log_sinh_sigma), d);
}

/// Half length acosh(coth(hx) cosh(u)) of a curve in the pencil above.
inline double pencil_half_length(double hx, double u) {
    const double log_coth = std::log1p(2.0 / std::expm1(2.0 * hx));
    return numeric::acosh_from_log(log_coth + numeric::log_cosh(u));
}

/// Half length of the slope -1/1.
inline double minus_diagonal_half_length(const TraceCoord& T) {
    return pencil_half_length(T.hx(), twist_parameter(T) - 1.5 * T.hx());
}

/// Half length of the geodesic with slope s, by Stern-Brocot descent from
/// the marked triple.
inline double half_length_of_slope(const TraceCoord& T, const Slope& s) {
    if (!T.unmarked()) return half_length_of_slope(T.base(), apply_mapping_class(T.marking().inverse(), s));
    if (s.p() == 0) return T.hx();
    if (s.q() == 0) return T.hy();
    struct Node {
        std::int64_t p, q;
        double h;
    };
    Node L, R, M;
    if (s.p() > 0) {
        L = {0, 1, T.hx()};
        R = {1, 0, T.hy()};
        M = {1, 1, T.hz()};
    } else {
        L = {-1, 0, T.hy()};
        R = {0, 1, T.hx()};
        M = {-1, 1, minus_diagonal_half_length(T)};
    }
    while (!(M.p == s.p() && M.q == s.q())) {
        // Compare p/q with the mediant; denominators are positive.
        if (s.p() * M.q < M.p * s.q()) {
            Node next{L.p + M.p, L.q + M.q, numeric::fricke_step(L.h, M.h, R.h)};
            R = M;
            M = next;
        } else {
            Node next{M.p + R.p, M.q + R.q, numeric::fricke_step(M.h, R.h, L.h)};
            L = M;
            M = next;
        }
    }
    return M.h;
}

/// Trace of the primitive class with slope s (may be +inf for very long curves).
inline double trace_of_slope(const TraceCoord& T, const Slope& s) {
    return 2.0 * std::cosh(half_length_of_slope(T, s));
}

/// Hyperbolic length from a trace: 2 acosh(t / 2).
inline double length_from_trace(double t) {
    if (!(t > 2.0)) throw std::domain_error("length_from_trace: trace must exceed 2");
    return 2.0 * std::acosh(0.5 * t);
}

inline double length_of_slope(const TraceCoord& T, const Slope& s) { return 2.0 * half_length_of_slope(T, s); }

/// Mapping class action: the length function of m.T is s -> l_T(m^-1 s).
///
/// dehn_twist(T, k) equals act(MappingClass::twist_a().pow(-k), T).
inline TraceCoord act(const MappingClass& m, const TraceCoord& T) {
    const MappingClass total = m * T.marking();
    TraceCoord out = T.base();
    if (total == MappingClass::identity()) return out;
    const MappingClass inv = total.inverse();
    // images of the basis vectors (0,1) and (1,0)
    const std::int64_t ap = inv.b(), aq = inv.d();
    const std::int64_t bp = inv.a(), bq = inv.c();
    const TraceCoord base = T.base();
    out.h_[0] = half_length_of_slope(base, Slope(ap, aq));
    out.h_[1] = half_length_of_slope(base, Slope(bp, bq));
    out.h_[2] = half_length_of_slope(base, Slope(ap + bp, aq + bq));
    out.marking_ = total;
    return out;
}

/// k-fold Dehn twist about 0/1: (x, y, z) -> (x, z, xz - y); negative k
/// applies the inverse (x, y, z) -> (x, xy - z, y). Same point as
/// act(MappingClass::twist_a().pow(-k), T); on an unmarked T the triple
/// comes from the closed form in the twist parameter.
inline TraceCoord dehn_twist(const TraceCoord& T, std::int64_t k) {
    if (k == 0) return T;
    TraceCoord out = act(MappingClass::twist_a().pow(-k), T);
    if (T.unmarked()) {
        const double hx = T.hx();
        const double sigma = twist_parameter(T) + static_cast<double>(k) * hx;
        out.h_[1] = pencil_half_length(hx, sigma - 0.5 * hx);
        out.h_[2] = pencil_half_length(hx, sigma + 0.5 * hx);
    }
    return out;
}

/// Half lengths of every slope of height <= Q for one structure.
///
/// Unmarked points are filled by a single pass over the Stern-Brocot tree,
/// one Fricke step per slope; marked points descend on their base. Lookups
/// of taller slopes fall back to descent.
class Spectrum {
public:
    Spectrum(const TraceCoord& T, std::int64_t Q)
        : T_(T), Q_(Q), table_(static_cast<std::size_t>((2 * Q + 1) * (Q + 1)),
                               std::numeric_limits<double>::quiet_NaN()) {
        if (Q < 1) throw std::invalid_argument("Spectrum: height must be at least 1");
        slopes_ = enumerate_slopes(Q);
        if (T.unmarked()) {
            put(0, 1, T.hx());
            put(1, 0, T.hy());
            fill(0, 1, T.hx(), 1, 0, T.hy(), 1, 1, T.hz());
            fill(-1, 0, T.hy(), 0, 1, T.hx(), -1, 1, minus_diagonal_half_length(T));
        } else {
            for (const auto& s : slopes_) put(s.p(), s.q(), half_length_of_slope(T, s));
        }
        half_.reserve(slopes_.size());
        for (const auto& s : slopes_) half_.push_back(table_[index(s.p(), s.q())]);
    }

    const TraceCoord& point() const { return T_; }
    std::int64_t height() const { return Q_; }
    /// Slopes in enumerate_slopes order, with matching half lengths.
    const std::vector<Slope>& slopes() const { return slopes_; }
    const std::vector<double>& half_lengths() const { return half_; }

    double half_length(const Slope& s) const {
        if (s.height() <= Q_) return table_[index(s.p(), s.q())];
        return half_length_of_slope(T_, s);
    }

private:
    std::size_t index(std::int64_t p, std::int64_t q) const {
        return static_cast<std::size_t>((p + Q_) * (Q_ + 1) + q);
    }
    void put(std::int64_t p, std::int64_t q, double h) { table_[index(p, q)] = h; }

    // Mediant (pm, qm) of (pl, ql) and (pr, qr); descendants only grow.
    void fill(std::int64_t pl, std::int64_t ql, double hl, std::int64_t pr, std::int64_t qr, double hr,
              std::int64_t pm, std::int64_t qm, double hm) {
        if (std::max(std::abs(pm), qm) > Q_) return;
        put(pm, qm, hm);
        fill(pl, ql, hl, pm, qm, hm, pl + pm, ql + qm, numeric::fricke_step(hl, hm, hr));
        fill(pm, qm, hm, pr, qr, hr, pm + pr, qm + qr, numeric::fricke_step(hm, hr, hl));
    }

    TraceCoord T_;
    std::int64_t Q_;
    std::vector<double> table_;
    std::vector<Slope> slopes_;
    std::vector<double> half_;
};

/// Thurston's two directed distances restricted to slopes of height <= Q:
/// first = 1/2 log sup l2/l1, second = 1/2 log sup l1/l2.
inline std::pair<double, double> thurston_asym(const Spectrum& s1, const Spectrum& s2) {
    if (s1.height() != s2.height()) throw std::invalid_argument("thurston_asym: spectra of different heights");
    double up = -std::numeric_limits<double>::infinity(), down = up;
    const auto& h1 = s1.half_lengths();
    const auto& h2 = s2.half_lengths();
    for (std::size_t i = 0; i < h1.size(); ++i) {
        const double r = std::log(h2[i]) - std::log(h1[i]);
        up = std::max(up, r);
        down = std::max(down, -r);
    }
    return {0.5 * up, 0.5 * down};
}

inline std::pair<double, double> thurston_asym(const TraceCoord& T1, const TraceCoord& T2, std::int64_t Q) {
    return thurston_asym(Spectrum(T1, Q), Spectrum(T2, Q));
}

/// Length-spectra distance over slopes of height <= Q. The enumerated max
/// is a lower bound; no upper bound is certified.
inline MetricBracket length_spectra_distance(const Spectrum& s1, const Spectrum& s2) {
    const auto [d1, d2] = thurston_asym(s1, s2);
    return {std::max(d1, d2), std::numeric_limits<double>::infinity(), s1.height(), -1};
}

inline MetricBracket length_spectra_distance(const TraceCoord& T1, const TraceCoord& T2, std::int64_t Q) {
    return length_spectra_distance(Spectrum(T1, Q), Spectrum(T2, Q));
}

/// lower(Q) - lower(Q / 2): how much the estimate still moved in the last doubling.
inline double stabilization_gap(const TraceCoord& T1, const TraceCoord& T2, std::int64_t Q) {
    const std::int64_t half = std::max<std::int64_t>(1, Q / 2);
    return length_spectra_distance(T1, T2, Q).lower - length_spectra_distance(T1, T2, half).lower;
}

/// Distance in the upper half plane with ds^2 = (dx^2 + dy^2) / (4 y^2).
inline double h2_distance(std::pair<double, double> p, std::pair<double, double> q) {
    if (!(p.second > 0.0) || !(q.second > 0.0))
        throw std::invalid_argument("h2_distance: points must lie in the upper half plane");
    // 1/2 acosh(1 + r^2 / (2 y_p y_q)) == asinh(r / (2 sqrt(y_p y_q)))
    const double r = std::hypot(p.first - q.first, p.second - q.second);
    return std::asinh(r / (2.0 * std::sqrt(p.second * q.second)));
}

enum class TwistConvention {
    dehn_count,  // one Dehn twist moves theta by 1
    length,      // one Dehn twist moves theta by the pants curve length
};

/// Fenchel-Nielsen coordinates of T relative to the pants curve 0/1; the
/// zero-twist locus is y = z.
inline FNPoint fn_coordinates(const TraceCoord& T, TwistConvention conv = TwistConvention::dehn_count) {
    const double hx = T.hx();
    const double turns = twist_parameter(T) / hx;
    return {2.0 * hx, conv == TwistConvention::dehn_count ? turns : turns * 2.0 * hx};
}

/// Product-region estimate of the Teichmuller distance between two points
/// of the thin part: the sup over pants curves of the H^2 distance between
/// (twist, 1/length) pairs. Agrees with the true distance up to an additive
/// constant depending only on eps0.
inline double minsky_teich_estimate(std::span<const FNPoint> fn1, std::span<const FNPoint> fn2, double eps0) {
    if (fn1.size() != fn2.size() || fn1.empty())
        throw std::invalid_argument("minsky_teich_estimate: coordinate lists must be nonempty and of equal size");
    double best = 0.0;
    for (std::size_t i = 0; i < fn1.size(); ++i) {
        for (const auto* f : {&fn1[i], &fn2[i]})
            if (!(f->length > 0.0) || f->length > eps0)
                throw std::domain_error("minsky_teich_estimate: pants curve outside the thin part");
        best = std::max(best, h2_distance({fn1[i].twist, 1.0 / fn1[i].length}, {fn2[i].twist, 1.0 / fn2[i].length}));
    }
    return best;
}

}  // namespace conelab
