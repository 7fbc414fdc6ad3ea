#pragma once

// Simple closed curves on the once-punctured torus, encoded as slopes, and
// the SL(2,Z) mapping class group acting on them.

#include <algorithm>
#include <array>
#include <cstdint>
#include <cstdlib>
#include <numeric>
#include <ostream>
#include <set>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace conelab {

/// Topological type S_{g,n}; complexity is the number of curves in a pants
/// decomposition.
class SurfaceKind {
public:
    SurfaceKind(int genus, int punctures) : genus_(genus), punctures_(punctures) {
        if (genus < 0 || punctures < 0)
            throw std::invalid_argument("SurfaceKind: genus and punctures must be nonnegative");
        if (complexity() < 1)
            throw std::invalid_argument("SurfaceKind: complexity 3g-3+n must be at least 1");
    }

    static SurfaceKind once_punctured_torus() { return {1, 1}; }

    int genus() const { return genus_; }
    int punctures() const { return punctures_; }
    int complexity() const { return 3 * genus_ - 3 + punctures_; }

    bool operator==(const SurfaceKind&) const = default;

private:
    int genus_;
    int punctures_;
};

/// Isotopy class of an essential simple closed curve on S_{1,1}.
///
/// A slope p/q stands for the homology class p[B] + q[A] up to sign, with A
/// the curve 0/1 and B the curve 1/0. Always stored in canonical form:
/// gcd(|p|, q) = 1 and q > 0, except for the horizontal class (1, 0).
class Slope {
public:
    Slope(std::int64_t p, std::int64_t q) {
        if (p == 0 && q == 0)
            throw std::invalid_argument("slope: (0, 0) is not a curve");
        const std::int64_t g = std::gcd(p, q);
        p /= g;
        q /= g;
        if (q < 0 || (q == 0 && p < 0)) {
            p = -p;
            q = -q;
        }
        p_ = p;
        q_ = q;
    }

    std::int64_t p() const { return p_; }
    std::int64_t q() const { return q_; }
    std::int64_t height() const { return std::max(std::abs(p_), q_); }

    auto operator<=>(const Slope&) const = default;

private:
    std::int64_t p_ = 1;
    std::int64_t q_ = 0;
};

inline Slope slope_canonicalize(std::int64_t p, std::int64_t q) { return Slope(p, q); }

inline std::ostream& operator<<(std::ostream& os, const Slope& s) {
    return os << s.p() << '/' << s.q();
}

/// Geometric intersection number; on S_{1,1} it is |det| of the two classes.
inline std::int64_t intersection_number(const Slope& a, const Slope& b) {
    return std::abs(a.p() * b.q() - b.p() * a.q());
}

/// All canonical slopes of height max(|p|, q) <= max_height.
///
/// Ordered by height, then q, then p, so the list for Q is a prefix of the
/// list for Q + 1.
inline std::vector<Slope> enumerate_slopes(std::int64_t max_height) {
    if (max_height < 1)
        throw std::invalid_argument("enumerate_slopes: height must be positive");
    std::vector<Slope> out;
    out.emplace_back(1, 0);
    for (std::int64_t h = 1; h <= max_height; ++h) {
        // Slopes of height exactly h: either q == h with |p| <= h, or |p| == h with q < h.
        std::vector<std::pair<std::int64_t, std::int64_t>> shell;
        for (std::int64_t q = 1; q <= h; ++q) {
            if (q == h) {
                for (std::int64_t p = -h; p <= h; ++p)
                    if (std::gcd(p, q) == 1) shell.emplace_back(q, p);
            } else {
                if (std::gcd(h, q) == 1) {
                    shell.emplace_back(q, -h);
                    shell.emplace_back(q, h);
                }
            }
        }
        std::sort(shell.begin(), shell.end());
        for (auto [q, p] : shell) out.emplace_back(p, q);
    }
    return out;
}

/// Orientation-preserving mapping class of S_{1,1}: an element of
/// PSL(2,Z) acting on column vectors (p, q).
class MappingClass {
public:
    MappingClass() = default;

    MappingClass(std::int64_t a, std::int64_t b, std::int64_t c, std::int64_t d) : m_{a, b, c, d} {
        if (a * d - b * c != 1)
            throw std::invalid_argument("MappingClass: determinant must be 1");
        // M and -M act identically; keep the one whose first nonzero entry is positive.
        for (auto v : m_) {
            if (v == 0) continue;
            if (v < 0)
                for (auto& e : m_) e = -e;
            break;
        }
    }

    static MappingClass identity() { return {}; }
    static MappingClass s() { return {0, -1, 1, 0}; }
    static MappingClass t() { return {1, 1, 0, 1}; }
    static MappingClass t_inv() { return {1, -1, 0, 1}; }
    /// The Dehn twist about 0/1 sending 1/0 to 1/1.
    static MappingClass twist_a() { return {1, 0, 1, 1}; }

    std::int64_t a() const { return m_[0]; }
    std::int64_t b() const { return m_[1]; }
    std::int64_t c() const { return m_[2]; }
    std::int64_t d() const { return m_[3]; }

    MappingClass operator*(const MappingClass& o) const {
        return {a() * o.a() + b() * o.c(), a() * o.b() + b() * o.d(),
                c() * o.a() + d() * o.c(), c() * o.b() + d() * o.d()};
    }

    MappingClass inverse() const { return {d(), -b(), -c(), a()}; }

    MappingClass pow(std::int64_t k) const {
        MappingClass base = k < 0 ? inverse() : *this;
        MappingClass out;
        for (std::int64_t i = 0; i < std::abs(k); ++i) out = out * base;
        return out;
    }

    auto operator<=>(const MappingClass&) const = default;

private:
    std::array<std::int64_t, 4> m_{1, 0, 0, 1};
};

inline std::ostream& operator<<(std::ostream& os, const MappingClass& m) {
    return os << "[[" << m.a() << ',' << m.b() << "],[" << m.c() << ',' << m.d() << "]]";
}

inline Slope apply_mapping_class(const MappingClass& m, const Slope& s) {
    return {m.a() * s.p() + m.b() * s.q(), m.c() * s.p() + m.d() * s.q()};
}

/// Projective classes of words of length <= radius in S, T and their
/// inverses, in breadth-first order (generators tried as S, S^-1, T, T^-1).
inline std::vector<MappingClass> mapping_class_ball(int radius) {
    if (radius < 0)
        throw std::invalid_argument("mapping_class_ball: radius must be nonnegative");
    const std::array<MappingClass, 4> gens{MappingClass::s(), MappingClass::s().inverse(),
                                           MappingClass::t(), MappingClass::t_inv()};
    std::vector<MappingClass> ball{MappingClass::identity()};
    std::set<MappingClass> seen(ball.begin(), ball.end());
    std::size_t frontier_begin = 0;
    for (int r = 0; r < radius; ++r) {
        const std::size_t frontier_end = ball.size();
        for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
            for (const auto& g : gens) {
                MappingClass w = ball[i] * g;
                if (seen.insert(w).second) ball.push_back(w);
            }
        }
        frontier_begin = frontier_end;
    }
    return ball;
}

}  // namespace conelab
