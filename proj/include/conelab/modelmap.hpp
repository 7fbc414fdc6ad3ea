#pragma once

// The model map from the cone ray V(S_{1,1}) = [0, inf) into moduli space,
// its coarse inverse (short-pants projection), and length-spectra distance
// on moduli space via a finite orbit search.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "conelab/curvesys.hpp"
#include "conelab/hypgeom.hpp"

namespace conelab {

/// Length threshold below which two simple closed geodesics are disjoint.
/// Any value below the collar bound 2 asinh(1) works; 0.5 leaves margin.
inline constexpr double epsilon0() { return 0.5; }

/// Coordinate on the quotient ray V(S_{1,1}).
struct ModelPoint {
    double x = 0.0;
};

inline ModelPoint model_point(double x) {
    if (!(x >= 0.0) || !std::isfinite(x)) throw std::invalid_argument("model point: coordinate must be finite and nonnegative");
    return {x};
}

/// Zero-twist structure whose curve 0/1 has length eps0 * exp(-x).
inline TraceCoord psi(ModelPoint p) {
    if (!(p.x >= 0.0)) throw std::invalid_argument("psi: coordinate must be nonnegative");
    return zero_twist_point(epsilon0() * std::exp(-p.x));
}

inline TraceCoord psi(double x) { return psi(model_point(x)); }

/// Half width of the embedded collar around a geodesic of length l.
inline double collar_half_width(double l) { return std::asinh(1.0 / std::sinh(0.5 * l)); }

struct BersProjection {
    ModelPoint point;
    Slope systole{0, 1};
    double systole_length = 0.0;
    /// Smallest enumeration height that provably contains the systole.
    std::int64_t required_height = 1;
    bool certified = false;
};

/// Projects T to the ray through its shortest curve: x = log(eps0 / l) if
/// the systole has length l <= eps0, else 0.
///
/// Slopes taller than Q cross 0/1 or 1/0 more than Q times, so they are
/// longer than (Q + 1) times the narrower full collar width; that bound
/// certifies the search.
inline BersProjection bers_project(const TraceCoord& T, std::int64_t Q) {
    const Spectrum spec(T, Q);
    BersProjection out;
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < spec.slopes().size(); ++i) {
        if (spec.half_lengths()[i] < best) {
            best = spec.half_lengths()[i];
            out.systole = spec.slopes()[i];
        }
    }
    out.systole_length = 2.0 * best;
    const double crossing =
        2.0 * std::min(collar_half_width(2.0 * T.hx()), collar_half_width(2.0 * T.hy()));
    out.required_height = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(out.systole_length / crossing)));
    out.certified = Q >= out.required_height;
    const double l = out.systole_length;
    out.point = {l <= epsilon0() ? std::log(epsilon0() / l) : 0.0};
    return out;
}

struct OrbitDistance {
    MetricBracket bracket;
    MappingClass argmin;
    std::size_t argmin_index = 0;
};

namespace detail {

// 1/2 max |log l1(s) - log l_{phi T2}(s)|; stops once the running value
// reaches `bound` and returns what it has (then >= bound).
inline double orbit_candidate(const Spectrum& s1, const Spectrum& s2, const MappingClass& phi, double bound) {
    const MappingClass inv = phi.inverse();
    const bool identity = inv == MappingClass::identity();
    const auto& slopes = s1.slopes();
    const auto& h1 = s1.half_lengths();
    double worst = 0.0;
    for (std::size_t i = 0; i < slopes.size(); ++i) {
        const double h2 = identity ? s2.half_lengths()[i] : s2.half_length(apply_mapping_class(inv, slopes[i]));
        worst = std::max(worst, std::abs(std::log(h1[i]) - std::log(h2)));
        if (0.5 * worst >= bound) break;
    }
    return 0.5 * worst;
}

}  // namespace detail

/// min over phi in `group` of the length-spectra lower bound between T1 and
/// phi.T2. Candidates are scanned in order and cut off once they reach the
/// running minimum; a cut-off candidate cannot be strictly smaller, so the
/// value is the exact minimum and ties keep the earliest index.
inline OrbitDistance orbit_ls_distance(const Spectrum& s1, const Spectrum& s2, std::span<const MappingClass> group) {
    if (group.empty()) throw std::invalid_argument("orbit_ls_distance: empty mapping class set");
    if (s1.height() != s2.height()) throw std::invalid_argument("orbit_ls_distance: spectra of different heights");
    OrbitDistance out;
    double best = detail::orbit_candidate(s1, s2, group[0], std::numeric_limits<double>::infinity());
    std::size_t arg = 0;
    for (std::size_t i = 1; i < group.size(); ++i) {
        const double v = detail::orbit_candidate(s1, s2, group[i], best);
        if (v < best) {
            best = v;
            arg = i;
        }
    }
    out.bracket = {best, std::numeric_limits<double>::infinity(), s1.height(), -1};
    out.argmin = group[arg];
    out.argmin_index = arg;
    return out;
}

/// Length-spectra distance on moduli space, searching phi over the word
/// ball of radius R. Nonincreasing in R, nondecreasing in Q.
inline OrbitDistance moduli_ls_distance(const TraceCoord& T1, const TraceCoord& T2, std::int64_t Q, int R) {
    if (Q < 1) throw std::invalid_argument("moduli_ls_distance: height must be at least 1");
    const auto ball = mapping_class_ball(R);
    auto out = orbit_ls_distance(Spectrum(T1, Q), Spectrum(T2, Q), ball);
    out.bracket.orbit_radius = R;
    return out;
}

}  // namespace conelab
