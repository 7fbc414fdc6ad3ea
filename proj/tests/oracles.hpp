#pragma once

// Reference computations for the tests. None of this calls the recursion,
// enumeration or LP code it is compared against.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numeric>
#include <queue>
#include <random>
#include <set>
#include <utility>
#include <vector>

namespace oracle {

using ld = long double;
using i64 = std::int64_t;

// ---------------------------------------------------------------- SL(2, R)

struct Mat {
    ld a, b, c, d;
};

inline Mat mul(const Mat& x, const Mat& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
}
inline Mat inv(const Mat& m) { return {m.d, -m.b, -m.c, m.a}; }
inline ld tr(const Mat& m) { return m.a + m.d; }

// Holonomy of a generating pair: A for the slope 0/1, B for 1/0.
struct Rep {
    Mat A, B;
};

// tr A = x, tr B = y, tr AB = z with A upper triangular and B = [[0, -1/c], [c, y]].
inline Rep rep_from_traces(ld x, ld y, ld z) {
    const ld lam = (x + std::sqrt(x * x - 4)) / 2;
    const Mat A{lam, 1, 0, 1 / lam};
    const ld c = z - y / lam;
    const Mat B{0, -1 / c, c, y};
    return {A, B};
}

inline ld commutator_trace(const Rep& r) {
    return tr(mul(mul(r.A, r.B), mul(inv(r.A), inv(r.B))));
}

// Word of the canonical slope p/q: walk the Farey tree multiplying the
// left neighbour by the right one.
inline Mat word(const Rep& r, i64 p, i64 q) {
    if (q == 0) return r.B;
    if (p == 0) return r.A;
    Mat L = p > 0 ? r.A : inv(r.B), R = p > 0 ? r.B : r.A;
    i64 pl = p > 0 ? 0 : -1, ql = p > 0 ? 1 : 0, pr = p > 0 ? 1 : 0, qr = p > 0 ? 0 : 1;
    for (;;) {
        const i64 pm = pl + pr, qm = ql + qr;
        const Mat M = mul(L, R);
        if (pm == p && qm == q) return M;
        if (p * qm < pm * q) {
            R = M, pr = pm, qr = qm;
        } else {
            L = M, pl = pm, ql = qm;
        }
    }
}

inline ld length_from_trace(ld t) { return 2 * std::acosh(std::fabs(t) / 2); }

// Canonical slopes of height <= Q, straight from the definition.
inline std::set<std::pair<i64, i64>> slopes_bruteforce(i64 Q) {
    std::set<std::pair<i64, i64>> out;
    for (i64 p = -Q; p <= Q; ++p)
        for (i64 q = 0; q <= Q; ++q)
            if (std::gcd(std::abs(p), q) == 1 && (q > 0 || p == 1)) out.insert({p, q});
    return out;
}

// Every slope length of height <= Q, one matrix product per slope.
inline std::map<std::pair<i64, i64>, ld> length_table(const Rep& r, i64 Q) {
    std::map<std::pair<i64, i64>, ld> out;
    out[{0, 1}] = length_from_trace(tr(r.A));
    out[{1, 0}] = length_from_trace(tr(r.B));
    auto rec = [&](auto&& self, i64 pl, i64 ql, const Mat& L, i64 pr, i64 qr, const Mat& R) -> void {
        const i64 pm = pl + pr, qm = ql + qr;
        if (std::max(std::abs(pm), qm) > Q) return;
        const Mat M = mul(L, R);
        out[{pm, qm}] = length_from_trace(tr(M));
        self(self, pl, ql, L, pm, qm, M);
        self(self, pm, qm, M, pr, qr, R);
    };
    rec(rec, 0, 1, r.A, 1, 0, r.B);
    rec(rec, -1, 0, inv(r.B), 0, 1, r.A);
    return out;
}

// y = z solves the Markov equation as y^2 (x - 2) = x^2.
inline Rep zero_twist_rep(ld l) {
    const ld x = 2 * std::cosh(l / 2);
    const ld s = 2 * std::sinh(l / 4);  // sqrt(x - 2)
    const ld y = x / s;
    return rep_from_traces(x, y, y);
}

// Random Markov triple with x, y in [lo, hi] and z the larger root.
template <class Rng>
std::array<double, 3> random_markov(Rng& rng, double lo = 2.5, double hi = 8.0) {
    std::uniform_real_distribution<double> U(lo, hi);
    for (;;) {
        const double x = U(rng), y = U(rng);
        const double disc = x * x * y * y - 4 * (x * x + y * y);
        if (disc < 0) continue;
        return {x, y, (x * y + std::sqrt(disc)) / 2};
    }
}

// ------------------------------------------------------------ mapping classes

using IMat = std::array<i64, 4>;  // a b c d

inline IMat imul(const IMat& x, const IMat& y) {
    return {x[0] * y[0] + x[1] * y[2], x[0] * y[1] + x[1] * y[3], x[2] * y[0] + x[3] * y[2],
            x[2] * y[1] + x[3] * y[3]};
}

inline IMat projective(IMat m) {
    for (i64 v : m) {
        if (v == 0) continue;
        if (v < 0)
            for (auto& e : m) e = -e;
        break;
    }
    return m;
}

// All products of at most R letters from S^{+-1}, T^{+-1}, modulo sign.
inline std::vector<IMat> word_ball(int R) {
    const IMat gens[4] = {{0, -1, 1, 0}, {0, 1, -1, 0}, {1, 1, 0, 1}, {1, -1, 0, 1}};
    std::set<IMat> seen{{1, 0, 0, 1}};
    std::vector<IMat> frontier{{1, 0, 0, 1}};
    for (int r = 0; r < R; ++r) {
        std::vector<IMat> next;
        for (const auto& m : frontier)
            for (const auto& g : gens) {
                const IMat w = projective(imul(m, g));
                if (seen.insert(w).second) next.push_back(w);
            }
        frontier = std::move(next);
    }
    return {seen.begin(), seen.end()};
}

inline std::pair<i64, i64> canon(i64 p, i64 q) {
    if (q < 0 || (q == 0 && p < 0)) return {-p, -q};
    return {p, q};
}

// l_{m.T}(s) = l_T(m^-1 s), each evaluated from its own word.
inline ld acted_length(const IMat& m, const Rep& r, std::pair<i64, i64> s) {
    const auto [p, q] = canon(m[3] * s.first - m[1] * s.second, -m[2] * s.first + m[0] * s.second);
    return length_from_trace(tr(word(r, p, q)));
}

inline ld ls_lower(const std::map<std::pair<i64, i64>, ld>& a, const std::map<std::pair<i64, i64>, ld>& b) {
    ld worst = 0;
    for (const auto& [s, la] : a) worst = std::max(worst, std::fabs(std::log(la) - std::log(b.at(s))));
    return worst / 2;
}

// min over the word ball of the enumerated length-spectra distance.
inline ld moduli_ls(const Rep& r1, const Rep& r2, i64 Q, int R) {
    const auto t1 = length_table(r1, Q);
    ld best = std::numeric_limits<ld>::infinity();
    for (const auto& m : word_ball(R)) {
        ld worst = 0;
        for (const auto& [s, la] : t1) {
            worst = std::max(worst, std::fabs(std::log(la) - std::log(acted_length(m, r2, s))));
            if (worst / 2 >= best) break;
        }
        best = std::min(best, worst / 2);
    }
    return best;
}

// ------------------------------------------------------------- cone complexes

// Number of chains: orderings of distinct simplices from -> ... -> to, each
// step through a nonempty common face counting twice (face or apex).
inline std::size_t chain_count(const std::vector<std::vector<std::size_t>>& simplices, std::size_t from,
                               std::size_t to, std::size_t max_len) {
    if (from == to) return 1;
    auto shares = [&](std::size_t i, std::size_t j) {
        for (auto v : simplices[i])
            if (std::count(simplices[j].begin(), simplices[j].end(), v)) return true;
        return false;
    };
    std::vector<std::size_t> others;
    for (std::size_t s = 0; s < simplices.size(); ++s)
        if (s != from && s != to) others.push_back(s);
    std::size_t total = 0;
    for (std::size_t mask = 0; mask < (std::size_t{1} << others.size()); ++mask) {
        std::vector<std::size_t> mid;
        for (std::size_t i = 0; i < others.size(); ++i)
            if (mask >> i & 1) mid.push_back(others[i]);
        if (mid.size() + 2 > max_len) continue;
        do {
            std::vector<std::size_t> seq{from};
            seq.insert(seq.end(), mid.begin(), mid.end());
            seq.push_back(to);
            std::size_t ways = 1;
            for (std::size_t k = 0; k + 1 < seq.size(); ++k) ways *= shares(seq[k], seq[k + 1]) ? 2 : 1;
            total += ways;
        } while (std::next_permutation(mid.begin(), mid.end()));
    }
    return total;
}

// Shortest paths through a cone complex whose crossings are restricted to
// grid points (spacing `step`, coordinates in [0, cap]) of the faces shared
// by two maximal simplices. Points are dense vectors over all vertices.
// Any path may be used, not only simple chains. Returns the distance from
// `source` to each target.
inline std::vector<double> grid_path_distances(const std::vector<std::vector<std::size_t>>& simplices,
                                               std::size_t nv, const std::vector<double>& source,
                                               const std::vector<std::vector<double>>& targets, double step,
                                               double cap) {
    std::vector<std::vector<double>> nodes{source};
    nodes.insert(nodes.end(), targets.begin(), targets.end());
    nodes.push_back(std::vector<double>(nv, 0.0));

    const int ticks = static_cast<int>(std::lround(cap / step));
    std::set<std::vector<int>> seen;
    for (std::size_t i = 0; i < simplices.size(); ++i)
        for (std::size_t j = i + 1; j < simplices.size(); ++j) {
            std::vector<std::size_t> face;
            for (auto v : simplices[i])
                if (std::count(simplices[j].begin(), simplices[j].end(), v)) face.push_back(v);
            std::vector<int> idx(face.size(), 0);
            for (;;) {
                std::vector<int> key(nv, 0);
                for (std::size_t k = 0; k < face.size(); ++k) key[face[k]] = idx[k];
                if (seen.insert(key).second) {
                    std::vector<double> p(nv, 0.0);
                    for (std::size_t v = 0; v < nv; ++v) p[v] = key[v] * step;
                    nodes.push_back(std::move(p));
                }
                std::size_t k = 0;
                while (k < idx.size() && idx[k] == ticks) idx[k++] = 0;
                if (k == idx.size()) break;
                ++idx[k];
            }
        }

    // Orthants containing each node's support.
    std::vector<std::uint32_t> home(nodes.size(), 0);
    for (std::size_t n = 0; n < nodes.size(); ++n)
        for (std::size_t s = 0; s < simplices.size(); ++s) {
            bool inside = true;
            for (std::size_t v = 0; v < nv && inside; ++v)
                if (nodes[n][v] > 0 && !std::count(simplices[s].begin(), simplices[s].end(), v)) inside = false;
            if (inside) home[n] |= std::uint32_t{1} << s;
        }

    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> dist(nodes.size(), inf);
    std::vector<bool> done(nodes.size(), false);
    dist[0] = 0;
    for (;;) {
        std::size_t u = nodes.size();
        for (std::size_t n = 0; n < nodes.size(); ++n)
            if (!done[n] && dist[n] < inf && (u == nodes.size() || dist[n] < dist[u])) u = n;
        if (u == nodes.size()) break;
        done[u] = true;
        for (std::size_t n = 0; n < nodes.size(); ++n) {
            if (done[n] || !(home[u] & home[n])) continue;
            double m = 0;
            for (std::size_t v = 0; v < nv; ++v) m = std::max(m, std::fabs(nodes[u][v] - nodes[n][v]));
            dist[n] = std::min(dist[n], dist[u] + m / 2);
        }
    }
    return {dist.begin() + 1, dist.begin() + 1 + static_cast<std::ptrdiff_t>(targets.size())};
}

// ------------------------------------------------------------ random inputs

struct RandomComplex {
    std::vector<std::vector<std::size_t>> simplices;
    std::size_t nv = 0;
    std::size_t d = 0;
};

// At most max_simplices distinct d-subsets, d <= max_dim, unused vertices
// dropped and the rest relabelled 0..nv-1.
template <class Rng>
RandomComplex random_complex(Rng& rng, std::size_t max_simplices = 5, std::size_t max_dim = 3) {
    RandomComplex out;
    out.d = 1 + rng() % max_dim;
    const std::size_t pool = out.d + 1 + rng() % 4;
    const std::size_t want = 1 + rng() % max_simplices;
    std::set<std::vector<std::size_t>> chosen;
    for (int tries = 0; chosen.size() < want && tries < 200; ++tries) {
        std::vector<std::size_t> v(pool);
        std::iota(v.begin(), v.end(), 0);
        std::shuffle(v.begin(), v.end(), rng);
        v.resize(out.d);
        std::sort(v.begin(), v.end());
        chosen.insert(v);
    }
    std::map<std::size_t, std::size_t> relabel;
    for (const auto& s : chosen)
        for (auto v : s) relabel.emplace(v, 0);
    for (auto& [from, to] : relabel) to = out.nv++;
    for (auto s : chosen) {
        for (auto& v : s) v = relabel[v];
        out.simplices.push_back(s);
    }
    return out;
}

// ---------------------------------------------------------------- H^2

// Length of the geodesic arc for ds^2 = (dx^2 + dy^2) / (4 y^2), by
// composite Simpson along the vertical line or semicircle.
inline double h2_integrated(double px, double py, double qx, double qy, int n = 20000) {
    auto simpson = [n](auto f, double a, double b) {
        const double h = (b - a) / n;
        double s = f(a) + f(b);
        for (int i = 1; i < n; ++i) s += f(a + i * h) * (i % 2 ? 4 : 2);
        return s * h / 3;
    };
    if (px == qx) return std::fabs(simpson([](double y) { return 1 / (2 * y); }, py, qy));
    const double c = ((qx * qx + qy * qy) - (px * px + py * py)) / (2 * (qx - px));
    const double a = std::atan2(py, px - c), b = std::atan2(qy, qx - c);
    return std::fabs(simpson([](double t) { return 1 / (2 * std::sin(t)); }, a, b));
}

}  // namespace oracle
