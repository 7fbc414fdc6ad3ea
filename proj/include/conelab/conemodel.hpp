#pragma once

// Cone over a finite simplicial complex. Each maximal simplex of dimension
// d - 1 spans an orthant R^d_{>=0} carrying half the sup metric; the cone
// point (all coordinates zero) is shared by every orthant. Distances are
// path lengths through chains of orthants.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "conelab/linprog.hpp"

namespace conelab {

using SimplexId = std::size_t;
using VertexId = std::size_t;

/// Finite complex given by its maximal simplices, all with d vertices.
class ConeComplexSpec {
public:
    ConeComplexSpec(std::vector<std::string> labels, std::vector<std::vector<VertexId>> simplices)
        : labels_(std::move(labels)), simplices_(std::move(simplices)) {
        if (simplices_.empty()) throw std::invalid_argument("cone complex: no maximal simplices");
        dim_ = simplices_.front().size();
        if (dim_ == 0) throw std::invalid_argument("cone complex: empty simplex");
        std::vector<bool> used(labels_.size(), false);
        std::vector<std::vector<VertexId>> sorted;
        for (const auto& s : simplices_) {
            if (s.size() != dim_)
                throw std::invalid_argument("cone complex: maximal simplices must all have " +
                                            std::to_string(dim_) + " vertices");
            auto key = s;
            std::sort(key.begin(), key.end());
            if (std::adjacent_find(key.begin(), key.end()) != key.end())
                throw std::invalid_argument("cone complex: repeated vertex inside a simplex");
            for (auto v : key) {
                if (v >= labels_.size()) throw std::invalid_argument("cone complex: vertex index out of range");
                used[v] = true;
            }
            sorted.push_back(std::move(key));
        }
        auto check = sorted;
        std::sort(check.begin(), check.end());
        if (std::adjacent_find(check.begin(), check.end()) != check.end())
            throw std::invalid_argument("cone complex: duplicate maximal simplex");
        for (std::size_t v = 0; v < used.size(); ++v)
            if (!used[v]) throw std::invalid_argument("cone complex: vertex '" + labels_[v] + "' lies in no simplex");
        sorted_ = std::move(sorted);
    }

    std::size_t dimension() const { return dim_; }
    std::size_t num_simplices() const { return simplices_.size(); }
    std::size_t num_vertices() const { return labels_.size(); }
    const std::vector<std::string>& labels() const { return labels_; }
    const std::vector<VertexId>& simplex(SimplexId s) const { return simplices_.at(s); }
    const std::vector<std::vector<VertexId>>& simplices() const { return simplices_; }

    /// Position of vertex v within simplex s, if present.
    std::optional<std::size_t> slot(SimplexId s, VertexId v) const {
        const auto& verts = simplices_.at(s);
        auto it = std::find(verts.begin(), verts.end(), v);
        if (it == verts.end()) return std::nullopt;
        return static_cast<std::size_t>(it - verts.begin());
    }

    /// Vertices common to both simplices, in the order they appear in a.
    std::vector<VertexId> shared_face(SimplexId a, SimplexId b) const {
        std::vector<VertexId> out;
        for (auto v : simplices_.at(a))
            if (slot(b, v)) out.push_back(v);
        return out;
    }

    /// Index of the maximal simplex with exactly this vertex set.
    std::optional<SimplexId> find_simplex(std::vector<VertexId> verts) const {
        std::sort(verts.begin(), verts.end());
        for (std::size_t i = 0; i < sorted_.size(); ++i)
            if (sorted_[i] == verts) return i;
        return std::nullopt;
    }

private:
    std::vector<std::string> labels_;
    std::vector<std::vector<VertexId>> simplices_;
    std::vector<std::vector<VertexId>> sorted_;
    std::size_t dim_ = 0;
};

/// A point of the cone: nonnegative coordinates in one maximal orthant,
/// indexed by that simplex's vertex order.
struct ConePoint {
    SimplexId simplex = 0;
    std::vector<double> coords;

    bool is_apex() const {
        return std::all_of(coords.begin(), coords.end(), [](double c) { return c == 0.0; });
    }
};

/// Vertex -> coordinate map of the positive part of p.
inline std::map<VertexId, double> support(const ConePoint& p, const ConeComplexSpec& cc) {
    std::map<VertexId, double> out;
    const auto& verts = cc.simplex(p.simplex);
    for (std::size_t i = 0; i < verts.size(); ++i)
        if (p.coords[i] > 0.0) out.emplace(verts[i], p.coords[i]);
    return out;
}

/// Same geometric point, possibly written in different orthants.
inline bool equivalent(const ConePoint& a, const ConePoint& b, const ConeComplexSpec& cc) {
    return support(a, cc) == support(b, cc);
}

inline void validate_point(const ConePoint& p, const ConeComplexSpec& cc) {
    if (p.simplex >= cc.num_simplices())
        throw std::invalid_argument("cone point: simplex id out of range");
    if (p.coords.size() != cc.dimension())
        throw std::invalid_argument("cone point: coordinate count does not match the complex dimension");
    for (double c : p.coords)
        if (!(c >= 0.0) || !std::isfinite(c))
            throw std::invalid_argument("cone point: coordinates must be finite and nonnegative");
}

/// Half the sup distance between two points of one orthant.
inline double orthant_distance(std::span<const double> u, std::span<const double> v) {
    if (u.size() != v.size()) throw std::invalid_argument("orthant_distance: dimension mismatch");
    double m = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i) m = std::max(m, std::abs(u[i] - v[i]));
    return 0.5 * m;
}

/// Length of the route x -> apex -> y.
inline double apex_route_bound(const ConePoint& x, const ConePoint& y) {
    auto top = [](const std::vector<double>& c) {
        return c.empty() ? 0.0 : *std::max_element(c.begin(), c.end());
    };
    return 0.5 * (top(x.coords) + top(y.coords));
}

/// Sequence of distinct orthants. Transition j goes from simplices[j] to
/// simplices[j + 1] through their common face, or only through the apex
/// when via_apex[j] is set (always the case when the face is empty).
struct Chain {
    std::vector<SimplexId> simplices;
    std::vector<bool> via_apex;

    bool operator==(const Chain&) const = default;
};

/// Every simple chain from `from` to `to` with at most max_len simplices.
///
/// Depth-first in increasing simplex id; a transition through a nonempty
/// shared face is listed before its apex-only twin.
inline std::vector<Chain> chain_enumerate(const ConeComplexSpec& cc, SimplexId from, SimplexId to,
                                          std::size_t max_len) {
    if (from >= cc.num_simplices() || to >= cc.num_simplices())
        throw std::invalid_argument("chain_enumerate: simplex id out of range");
    std::vector<Chain> out;
    if (from == to) {
        out.push_back({{from}, {}});
        return out;
    }
    Chain cur{{from}, {}};
    std::vector<bool> used(cc.num_simplices(), false);
    used[from] = true;
    auto dfs = [&](auto&& self) -> void {
        if (cur.simplices.size() >= max_len) return;
        const SimplexId last = cur.simplices.back();
        for (SimplexId next = 0; next < cc.num_simplices(); ++next) {
            if (used[next]) continue;
            const bool has_face = !cc.shared_face(last, next).empty();
            for (int variant = 0; variant < (has_face ? 2 : 1); ++variant) {
                cur.simplices.push_back(next);
                cur.via_apex.push_back(!has_face || variant == 1);
                if (next == to) {
                    out.push_back(cur);
                } else {
                    used[next] = true;
                    self(self);
                    used[next] = false;
                }
                cur.simplices.pop_back();
                cur.via_apex.pop_back();
            }
        }
    };
    dfs(dfs);
    return out;
}

struct PathWitness {
    std::vector<SimplexId> chain;
    std::vector<bool> via_apex;
    /// crossing_points[j] sits on the face between chain[j] and chain[j + 1],
    /// written in the coordinates of chain[j + 1].
    std::vector<ConePoint> crossing_points;
    double total_length = 0.0;
};

struct PathResult {
    double value = 0.0;
    PathWitness witness;
};

namespace detail {

// Shortest length along one chain, as a linear program in the crossing
// coordinates plus one epigraph variable per traversed orthant.
inline std::optional<PathResult> solve_chain(const ConePoint& x, const ConePoint& y,
                                             const ConeComplexSpec& cc, const Chain& chain, double eps) {
    const std::size_t m = chain.simplices.size();
    if (m == 1) {
        PathResult r;
        r.value = orthant_distance(x.coords, y.coords);
        r.witness = {chain.simplices, {}, {}, r.value};
        return r;
    }
    // Crossing variables: faces[j] lists the vertices free at crossing j.
    std::vector<std::vector<VertexId>> faces(m - 1);
    std::vector<std::size_t> offset(m - 1, 0);
    std::size_t nvars = 0;
    for (std::size_t j = 0; j + 1 < m; ++j) {
        if (!chain.via_apex[j]) faces[j] = cc.shared_face(chain.simplices[j], chain.simplices[j + 1]);
        offset[j] = nvars;
        nvars += faces[j].size();
    }
    const std::size_t t0 = nvars;
    nvars += m;

    // Coordinate of vertex v at waypoint k (0 = x, m = y, else crossing k-1):
    // either a constant or a variable index.
    struct Term {
        double constant = 0.0;
        std::optional<std::size_t> var;
    };
    auto waypoint = [&](std::size_t k, VertexId v) -> Term {
        if (k == 0) {
            auto s = cc.slot(x.simplex, v);
            return {s ? x.coords[*s] : 0.0, std::nullopt};
        }
        if (k == m) {
            auto s = cc.slot(y.simplex, v);
            return {s ? y.coords[*s] : 0.0, std::nullopt};
        }
        const auto& f = faces[k - 1];
        auto it = std::find(f.begin(), f.end(), v);
        if (it == f.end()) return {0.0, std::nullopt};
        return {0.0, offset[k - 1] + static_cast<std::size_t>(it - f.begin())};
    };

    std::vector<std::vector<double>> A;
    std::vector<double> b;
    for (std::size_t j = 0; j < m; ++j) {
        for (VertexId v : cc.simplex(chain.simplices[j])) {
            const Term a = waypoint(j, v), c = waypoint(j + 1, v);
            // 0.5 * (a - c) <= t_j  and  0.5 * (c - a) <= t_j
            for (double sign : {1.0, -1.0}) {
                std::vector<double> row(nvars, 0.0);
                if (a.var) row[*a.var] += 0.5 * sign;
                if (c.var) row[*c.var] -= 0.5 * sign;
                row[t0 + j] = -1.0;
                b.push_back(-0.5 * sign * (a.constant - c.constant));
                A.push_back(std::move(row));
            }
        }
    }
    std::vector<double> cost(nvars, 0.0);
    for (std::size_t j = 0; j < m; ++j) cost[t0 + j] = 1.0;

    const auto sol = lp::minimize(A, b, cost, eps);
    if (sol.status != lp::Status::optimal) return std::nullopt;

    PathResult r;
    r.value = std::max(0.0, sol.objective);
    r.witness.chain = chain.simplices;
    r.witness.via_apex = chain.via_apex;
    for (std::size_t j = 0; j + 1 < m; ++j) {
        ConePoint p{chain.simplices[j + 1], std::vector<double>(cc.dimension(), 0.0)};
        for (std::size_t i = 0; i < faces[j].size(); ++i)
            p.coords[*cc.slot(p.simplex, faces[j][i])] = std::max(0.0, sol.x[offset[j] + i]);
        r.witness.crossing_points.push_back(std::move(p));
    }
    r.witness.total_length = r.value;
    return r;
}

}  // namespace detail

/// Path-metric distance, minimized over all simple chains of length
/// <= max_len (default: number of maximal simplices). Ties go to the first
/// chain in chain_enumerate order.
inline PathResult path_distance(const ConePoint& x, const ConePoint& y, const ConeComplexSpec& cc,
                                double tol = 1e-10, std::optional<std::size_t> max_len = std::nullopt) {
    if (!(tol > 0.0)) throw std::invalid_argument("path_distance: tol must be positive");
    validate_point(x, cc);
    validate_point(y, cc);
    if (equivalent(x, y, cc)) {
        PathResult r;
        r.witness.chain = {x.simplex};
        return r;
    }
    const std::size_t len = max_len.value_or(cc.num_simplices());
    std::optional<PathResult> best;
    for (const auto& chain : chain_enumerate(cc, x.simplex, y.simplex, std::max<std::size_t>(len, 1))) {
        auto r = detail::solve_chain(x, y, cc, chain, std::min(tol, 1e-9));
        if (r && (!best || r->value < best->value)) best = std::move(r);
    }
    if (!best) throw std::runtime_error("path_distance: no chain could be solved");
    return *best;
}

/// Distance on the single ray V(S_{1,1}).
inline double quotient_ray_distance_s11(double x, double y) {
    if (!(x >= 0.0) || !(y >= 0.0))
        throw std::invalid_argument("quotient_ray_distance_s11: coordinates must be nonnegative");
    return 0.5 * std::abs(x - y);
}

/// Simplicial automorphism as a vertex permutation: vertex v goes to image[v].
using VertexMap = std::vector<VertexId>;

inline void validate_automorphism(const VertexMap& phi, const ConeComplexSpec& cc) {
    if (phi.size() != cc.num_vertices())
        throw std::invalid_argument("automorphism: vertex map has the wrong size");
    std::vector<bool> hit(phi.size(), false);
    for (auto v : phi) {
        if (v >= phi.size() || hit[v]) throw std::invalid_argument("automorphism: not a permutation");
        hit[v] = true;
    }
    for (const auto& s : cc.simplices()) {
        std::vector<VertexId> img;
        for (auto v : s) img.push_back(phi[v]);
        if (!cc.find_simplex(img)) throw std::invalid_argument("automorphism: a maximal simplex is not mapped to one");
    }
}

inline ConePoint apply_automorphism(const VertexMap& phi, const ConePoint& p, const ConeComplexSpec& cc) {
    const auto& verts = cc.simplex(p.simplex);
    std::vector<VertexId> img;
    for (auto v : verts) img.push_back(phi[v]);
    const SimplexId target = cc.find_simplex(img).value();
    ConePoint out{target, std::vector<double>(cc.dimension(), 0.0)};
    for (std::size_t i = 0; i < verts.size(); ++i) out.coords[*cc.slot(target, phi[verts[i]])] = p.coords[i];
    return out;
}

/// Minimum of path_distance(x, phi(y)) over the supplied automorphisms.
inline double quotient_distance(const ConePoint& x, const ConePoint& y, const ConeComplexSpec& cc,
                                std::span<const VertexMap> orbit_maps, double tol = 1e-10) {
    if (orbit_maps.empty()) throw std::invalid_argument("quotient_distance: no orbit maps supplied");
    for (const auto& phi : orbit_maps) validate_automorphism(phi, cc);
    double best = std::numeric_limits<double>::infinity();
    for (const auto& phi : orbit_maps)
        best = std::min(best, path_distance(x, apply_automorphism(phi, y, cc), cc, tol).value);
    return best;
}

}  // namespace conelab
