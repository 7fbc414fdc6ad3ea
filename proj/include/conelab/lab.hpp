#pragma once

// Experiment harness: almost-isometry sweeps on V(S_{1,1}), the
// Teichmuller comparison, the Dehn-twist divergence sequence, and
// deterministic CSV reports.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <exception>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <set>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "conelab/conemodel.hpp"
#include "conelab/curvesys.hpp"
#include "conelab/hypgeom.hpp"
#include "conelab/modelmap.hpp"

namespace conelab::lab {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SweepConfig {
    double grid_min = 0.0;
    double grid_max = 8.0;
    double grid_step = 0.5;
    std::int64_t height = 200;
    int orbit_radius = 6;
    double tol = 1e-10;
    std::string output_path;

    /// Allowed excess of d_L over the Teichmuller estimate before a pair is
    /// listed as a violation.
    double c_slack = 1.0;
    unsigned threads = 1;
    TwistConvention twist_convention = TwistConvention::dehn_count;

    // Divergence schedule: curve length eps0 * base^-n, twist count
    // round(coeff * 2^(n * exponent)).
    int n_max = 12;
    double eps_base = 2.0;
    double twist_coeff = 1.0;
    double twist_exponent = 0.5;

    // Single pair for `dist`.
    double x = 0.0;
    double y = 0.0;

    void validate() const {
        auto fail = [](const std::string& m) { throw ConfigError(m); };
        if (!(grid_min >= 0.0)) fail("grid-min must be >= 0");
        if (!(grid_step > 0.0)) fail("grid-step must be > 0");
        if (!(grid_max >= grid_min)) fail("grid-max must be >= grid-min");
        if (height < 1) fail("height must be >= 1");
        if (orbit_radius < 0) fail("orbit-radius must be >= 0");
        if (!(tol > 0.0)) fail("tol must be > 0");
        if (!(c_slack >= 0.0)) fail("c-slack must be >= 0");
        if (threads < 1) fail("threads must be >= 1");
        if (n_max < 1) fail("n-max must be >= 1");
        if (!(eps_base > 1.0)) fail("eps-base must be > 1");
        if (!(twist_coeff >= 0.0)) fail("twist-coeff must be >= 0");
        if (!(x >= 0.0) || !(y >= 0.0)) fail("x and y must be >= 0");
    }
};

namespace detail {

inline double parse_double(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return d;
    } catch (const std::exception&) {
        throw ConfigError("'" + key + "': expected a number, got '" + v + "'");
    }
}

inline long long parse_int(const std::string& key, const std::string& v) {
    try {
        std::size_t pos = 0;
        const long long i = std::stoll(v, &pos);
        if (pos != v.size()) throw std::invalid_argument(v);
        return i;
    } catch (const std::exception&) {
        throw ConfigError("'" + key + "': expected an integer, got '" + v + "'");
    }
}

inline std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) return "";
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

}  // namespace detail

/// Applies one `key = value` setting; keys match the CLI flag names.
inline void apply_setting(SweepConfig& cfg, const std::string& key, const std::string& value) {
    using detail::parse_double;
    using detail::parse_int;
    if (key == "grid-min") cfg.grid_min = parse_double(key, value);
    else if (key == "grid-max") cfg.grid_max = parse_double(key, value);
    else if (key == "grid-step") cfg.grid_step = parse_double(key, value);
    else if (key == "height") cfg.height = parse_int(key, value);
    else if (key == "orbit-radius") cfg.orbit_radius = static_cast<int>(parse_int(key, value));
    else if (key == "tol") cfg.tol = parse_double(key, value);
    else if (key == "out") cfg.output_path = value;
    else if (key == "c-slack") cfg.c_slack = parse_double(key, value);
    else if (key == "threads") {
        const long long t = parse_int(key, value);
        if (t < 1) throw ConfigError("'threads' must be >= 1");
        cfg.threads = static_cast<unsigned>(t);
    } else if (key == "twist-convention") {
        if (value == "dehn") cfg.twist_convention = TwistConvention::dehn_count;
        else if (value == "length") cfg.twist_convention = TwistConvention::length;
        else throw ConfigError("'twist-convention' must be 'dehn' or 'length'");
    } else if (key == "n-max") cfg.n_max = static_cast<int>(parse_int(key, value));
    else if (key == "eps-base") cfg.eps_base = parse_double(key, value);
    else if (key == "twist-coeff") cfg.twist_coeff = parse_double(key, value);
    else if (key == "twist-exponent") cfg.twist_exponent = parse_double(key, value);
    else if (key == "x") cfg.x = parse_double(key, value);
    else if (key == "y") cfg.y = parse_double(key, value);
    else throw ConfigError("unknown setting '" + key + "'");
}

/// Reads `key = value` lines; '#' starts a comment.
inline void apply_config_stream(SweepConfig& cfg, std::istream& in, const std::string& origin = "config") {
    std::string line;
    for (int lineno = 1; std::getline(in, line); ++lineno) {
        if (auto hash = line.find('#'); hash != std::string::npos) line.erase(hash);
        line = detail::trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected 'key = value'");
        try {
            apply_setting(cfg, detail::trim(line.substr(0, eq)), detail::trim(line.substr(eq + 1)));
        } catch (const ConfigError& e) {
            throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + e.what());
        }
    }
}

inline void apply_config_file(SweepConfig& cfg, const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file '" + path + "'");
    apply_config_stream(cfg, in, path);
}

inline std::vector<double> grid_points(const SweepConfig& cfg) {
    std::vector<double> out;
    const double slack = 1e-9 * cfg.grid_step;
    for (std::int64_t i = 0;; ++i) {
        const double v = cfg.grid_min + static_cast<double>(i) * cfg.grid_step;
        if (v > cfg.grid_max + slack) break;
        out.push_back(v);
    }
    return out;
}

/// Runs body(i) for i in [0, n) on `threads` workers with a fixed striding.
/// Each index is handled exactly once; callers write results by index.
inline void parallel_for(std::size_t n, unsigned threads, const std::function<void(std::size_t)>& body) {
    if (threads <= 1 || n < 2) {
        for (std::size_t i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> pool;
    std::vector<std::exception_ptr> errors(threads);
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back([&, t] {
            try {
                for (std::size_t i = t; i < n; i += threads) body(i);
            } catch (...) {
                errors[t] = std::current_exception();
            }
        });
    }
    for (auto& th : pool) th.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

struct SweepRow {
    double x = 0.0, y = 0.0;
    double d_V = 0.0;
    double d_L_lower = 0.0;
    double d_T_est = 0.0;
    double delta = 0.0;
    std::size_t orbit_argmin = 0;  // index into mapping_class_ball(R)
};

struct Undercut {
    double x, y, amount;
};

struct SweepSummary {
    double max_delta = 0.0;
    double max_delta_far = 0.0;   // rows with d_V >= 2
    double max_delta_near = 0.0;  // rows with d_V < 2
    double delta_slope = 0.0;     // least-squares slope of delta against d_V
    double max_undercut = 0.0;
    std::vector<Undercut> undercuts;
    std::vector<SweepRow> violations;  // d_L_lower > d_T_est + c_slack
};

/// Pure function of the rows.
inline SweepSummary summarize_sweep(const std::vector<SweepRow>& rows, double c_slack) {
    SweepSummary s;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (const auto& r : rows) {
        s.max_delta = std::max(s.max_delta, r.delta);
        if (r.d_V >= 2.0) s.max_delta_far = std::max(s.max_delta_far, r.delta);
        else s.max_delta_near = std::max(s.max_delta_near, r.delta);
        const double under = r.d_V - r.d_L_lower;
        if (under > 1e-6) {
            s.undercuts.push_back({r.x, r.y, under});
            s.max_undercut = std::max(s.max_undercut, under);
        }
        if (r.d_L_lower > r.d_T_est + c_slack) s.violations.push_back(r);
        sx += r.d_V;
        sy += r.delta;
        sxx += r.d_V * r.d_V;
        sxy += r.d_V * r.delta;
    }
    const double n = static_cast<double>(rows.size());
    const double var = n * sxx - sx * sx;
    if (rows.size() >= 2 && var > 0.0) s.delta_slope = (n * sxy - sx * sy) / var;
    return s;
}

struct SweepReport {
    std::vector<SweepRow> rows;
    SweepSummary summary;
};

/// Teichmuller-side estimate between two model points: the product-region
/// formula on their (twist, 1/length) coordinates.
inline double teich_estimate(const TraceCoord& a, const TraceCoord& b, TwistConvention conv) {
    const FNPoint fa = fn_coordinates(a, conv), fb = fn_coordinates(b, conv);
    return minsky_teich_estimate(std::span(&fa, 1), std::span(&fb, 1), epsilon0());
}

/// One row per ordered grid pair (x major, y minor).
inline std::vector<SweepRow> sweep_rows(const SweepConfig& cfg) {
    cfg.validate();
    const auto grid = grid_points(cfg);
    const auto ball = mapping_class_ball(cfg.orbit_radius);
    std::vector<TraceCoord> points;
    for (double g : grid) points.push_back(psi(g));
    std::vector<std::optional<Spectrum>> spectra(grid.size());
    parallel_for(grid.size(), cfg.threads, [&](std::size_t i) { spectra[i].emplace(points[i], cfg.height); });

    std::vector<SweepRow> rows(grid.size() * grid.size());
    parallel_for(rows.size(), cfg.threads, [&](std::size_t k) {
        const std::size_t i = k / grid.size(), j = k % grid.size();
        SweepRow r;
        r.x = grid[i];
        r.y = grid[j];
        r.d_V = quotient_ray_distance_s11(r.x, r.y);
        const auto od = orbit_ls_distance(*spectra[i], *spectra[j], ball);
        r.d_L_lower = od.bracket.lower;
        r.orbit_argmin = od.argmin_index;
        r.d_T_est = teich_estimate(points[i], points[j], cfg.twist_convention);
        r.delta = std::abs(r.d_V - r.d_L_lower);
        rows[k] = r;
    });
    return rows;
}

inline SweepReport sweep_almost_isometry(const SweepConfig& cfg) {
    SweepReport rep;
    rep.rows = sweep_rows(cfg);
    rep.summary = summarize_sweep(rep.rows, cfg.c_slack);
    return rep;
}

struct TeichSummary {
    double max_gap = 0.0;              // max of d_T_est - d_L_lower
    double max_zero_twist_error = 0.0; // max |d_T_est - d_V|
    bool zero_twist_exact = true;      // error <= 1e-12
    std::vector<SweepRow> violations;  // d_L_lower > d_T_est + c_slack
};

inline TeichSummary summarize_teich(const std::vector<SweepRow>& rows, double c_slack) {
    TeichSummary s;
    s.max_gap = rows.empty() ? 0.0 : -std::numeric_limits<double>::infinity();
    for (const auto& r : rows) {
        s.max_gap = std::max(s.max_gap, r.d_T_est - r.d_L_lower);
        s.max_zero_twist_error = std::max(s.max_zero_twist_error, std::abs(r.d_T_est - r.d_V));
        if (r.d_L_lower > r.d_T_est + c_slack) s.violations.push_back(r);
    }
    s.zero_twist_exact = s.max_zero_twist_error <= 1e-12;
    return s;
}

struct TeichReport {
    std::vector<SweepRow> rows;
    TeichSummary summary;
};

inline TeichReport sweep_teich_comparison(const SweepConfig& cfg) {
    TeichReport rep;
    rep.rows = sweep_rows(cfg);
    rep.summary = summarize_teich(rep.rows, cfg.c_slack);
    return rep;
}

struct DivergenceRow {
    int n = 0;
    double length = 0.0;      // of the curve 0/1 on both X_n and Y_n
    std::int64_t twists = 0;  // Y_n = dehn_twist(X_n, twists)
    double d_ls_lower = 0.0;  // on Teichmuller space, no orbit search
    double teich_est = 0.0;
    double ratio = 0.0;       // teich_est / d_ls_lower; NaN when both vanish
    double moduli_lower = 0.0;
};

struct DivergenceReport {
    std::vector<DivergenceRow> rows;
};

inline std::int64_t divergence_twists(const SweepConfig& cfg, int n) {
    return static_cast<std::int64_t>(std::llround(cfg.twist_coeff * std::exp2(n * cfg.twist_exponent)));
}

/// X_n = zero-twist point with short curve eps0 * base^-n, Y_n its k_n-fold
/// Dehn twist. The moduli column searches the ball of radius R together
/// with the twist powers up to |k_n|, so Y_n's orbit always contains X_n.
inline DivergenceReport divergence_sequence(const SweepConfig& cfg) {
    cfg.validate();
    DivergenceReport rep;
    rep.rows.resize(static_cast<std::size_t>(cfg.n_max));
    const auto ball = mapping_class_ball(cfg.orbit_radius);
    parallel_for(rep.rows.size(), cfg.threads, [&](std::size_t idx) {
        const int n = static_cast<int>(idx) + 1;
        DivergenceRow r;
        r.n = n;
        r.length = epsilon0() * std::pow(cfg.eps_base, -n);
        r.twists = divergence_twists(cfg, n);
        const TraceCoord X = zero_twist_point(r.length);
        const TraceCoord Y = dehn_twist(X, r.twists);
        const Spectrum sx(X, cfg.height), sy(Y, cfg.height);
        r.d_ls_lower = length_spectra_distance(sx, sy).lower;

        const double shift = cfg.twist_convention == TwistConvention::dehn_count
                                 ? static_cast<double>(r.twists)
                                 : static_cast<double>(r.twists) * r.length;
        const FNPoint fx{r.length, 0.0}, fy{r.length, shift};
        r.teich_est = minsky_teich_estimate(std::span(&fx, 1), std::span(&fy, 1), epsilon0());
        r.ratio = r.d_ls_lower > 0.0 ? r.teich_est / r.d_ls_lower
                                     : (r.teich_est == 0.0 ? std::numeric_limits<double>::quiet_NaN()
                                                           : std::numeric_limits<double>::infinity());

        std::vector<MappingClass> group = ball;
        std::set<MappingClass> have(ball.begin(), ball.end());
        // largest powers first: twist_a^k_n matches exactly and then cuts the rest short
        for (std::int64_t j = std::abs(r.twists); j >= 1; --j)
            for (std::int64_t sgn : {1, -1}) {
                const auto g = MappingClass::twist_a().pow(sgn * j);
                if (have.insert(g).second) group.push_back(g);
            }
        r.moduli_lower = orbit_ls_distance(sx, sy, group).bracket.lower;
        rep.rows[idx] = r;
    });
    return rep;
}

// ---------------------------------------------------------------------------
// Report emission

/// 12 significant digits; inf and nan spelled out.
inline std::string format_number(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    std::string s = buf;
    return s == "-0" ? "0" : s;
}

inline std::string config_line(const SweepConfig& cfg) {
    std::ostringstream os;
    os << "# config grid_min=" << format_number(cfg.grid_min) << " grid_max=" << format_number(cfg.grid_max)
       << " grid_step=" << format_number(cfg.grid_step) << " height=" << cfg.height
       << " orbit_radius=" << cfg.orbit_radius << " tol=" << format_number(cfg.tol)
       << " c_slack=" << format_number(cfg.c_slack) << " eps0=" << format_number(epsilon0())
       << " twist_convention=" << (cfg.twist_convention == TwistConvention::dehn_count ? "dehn" : "length") << '\n';
    return os.str();
}

inline std::string render_sweep(const SweepConfig& cfg, const SweepReport& rep) {
    std::ostringstream os;
    const auto& s = rep.summary;
    os << "# conelab sweep: almost-isometry of the model map for the length-spectra metric\n" << config_line(cfg);
    os << "# summary rows=" << rep.rows.size() << " max_delta=" << format_number(s.max_delta)
       << " max_delta_dV_ge_2=" << format_number(s.max_delta_far)
       << " max_delta_dV_lt_2=" << format_number(s.max_delta_near)
       << " delta_slope=" << format_number(s.delta_slope) << " max_undercut=" << format_number(s.max_undercut)
       << '\n';
    os << "# undercuts " << s.undercuts.size() << '\n';
    for (const auto& u : s.undercuts)
        os << "#   x=" << format_number(u.x) << " y=" << format_number(u.y) << " amount=" << format_number(u.amount)
           << '\n';
    os << "# violations " << s.violations.size() << '\n';
    for (const auto& v : s.violations)
        os << "#   x=" << format_number(v.x) << " y=" << format_number(v.y)
           << " d_L_lower=" << format_number(v.d_L_lower) << " d_T_est=" << format_number(v.d_T_est) << '\n';
    os << "x,y,d_V,d_L_lower,d_T_est,delta\n";
    for (const auto& r : rep.rows)
        os << format_number(r.x) << ',' << format_number(r.y) << ',' << format_number(r.d_V) << ','
           << format_number(r.d_L_lower) << ',' << format_number(r.d_T_est) << ',' << format_number(r.delta) << '\n';
    return os.str();
}

inline std::string render_teich(const SweepConfig& cfg, const TeichReport& rep) {
    std::ostringstream os;
    const auto& s = rep.summary;
    os << "# conelab compare: Teichmuller estimate against length-spectra lower bound\n" << config_line(cfg);
    os << "# summary rows=" << rep.rows.size() << " max_gap=" << format_number(s.max_gap)
       << " max_zero_twist_error=" << format_number(s.max_zero_twist_error)
       << " zero_twist_exact=" << (s.zero_twist_exact ? "yes" : "no") << '\n';
    os << "# violations " << s.violations.size() << '\n';
    for (const auto& v : s.violations)
        os << "#   x=" << format_number(v.x) << " y=" << format_number(v.y)
           << " d_L_lower=" << format_number(v.d_L_lower) << " d_T_est=" << format_number(v.d_T_est) << '\n';
    os << "x,y,d_V,d_L_lower,d_T_est,gap\n";
    for (const auto& r : rep.rows)
        os << format_number(r.x) << ',' << format_number(r.y) << ',' << format_number(r.d_V) << ','
           << format_number(r.d_L_lower) << ',' << format_number(r.d_T_est) << ','
           << format_number(r.d_T_est - r.d_L_lower) << '\n';
    return os.str();
}

inline std::string render_divergence(const SweepConfig& cfg, const DivergenceReport& rep) {
    std::ostringstream os;
    os << "# conelab diverge: Dehn-twist sequence in the thin part\n" << config_line(cfg);
    os << "# schedule n_max=" << cfg.n_max << " eps_base=" << format_number(cfg.eps_base)
       << " twist_coeff=" << format_number(cfg.twist_coeff)
       << " twist_exponent=" << format_number(cfg.twist_exponent) << '\n';
    os << "n,length,twists,d_ls_lower,teich_est,ratio,moduli_lower\n";
    for (const auto& r : rep.rows)
        os << r.n << ',' << format_number(r.length) << ',' << r.twists << ',' << format_number(r.d_ls_lower) << ','
           << format_number(r.teich_est) << ',' << format_number(r.ratio) << ','
           << format_number(r.moduli_lower) << '\n';
    return os.str();
}

/// Writes text to path (byte for byte); failures name the path.
inline void emit_report(const std::string& text, const std::string& path) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open report file '" + path + "' for writing");
    out << text;
    out.flush();
    if (!out) throw std::runtime_error("failed writing report file '" + path + "'");
}

}  // namespace conelab::lab
