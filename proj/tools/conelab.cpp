// conelab: command-line driver for the cone-model experiments.
//
// Exit codes: 0 success, 2 configuration error, 3 property violations
// (the report is still written).

#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "conelab/conelab.hpp"

namespace {

constexpr int kConfigError = 2;
constexpr int kViolation = 3;

using conelab::lab::SweepConfig;

// Flags shared by every subcommand; all of them can also come from --config.
const std::vector<std::pair<std::string, std::string>> kSettings = {
    {"grid-min", "smallest grid coordinate"},
    {"grid-max", "largest grid coordinate"},
    {"grid-step", "grid spacing"},
    {"height", "slope enumeration height Q"},
    {"orbit-radius", "mapping class word radius R"},
    {"tol", "path solver tolerance"},
    {"out", "output file (default: stdout)"},
    {"c-slack", "allowed excess of d_L over the Teichmuller estimate"},
    {"threads", "worker threads"},
    {"twist-convention", "twist units for the Teichmuller estimate: dehn | length"},
    {"n-max", "divergence sequence length"},
    {"eps-base", "divergence: short curve length eps0 * base^-n"},
    {"twist-coeff", "divergence: k_n = round(coeff * 2^(n * exponent))"},
    {"twist-exponent", "divergence: k_n = round(coeff * 2^(n * exponent))"},
};

struct Command {
    explicit Command(CLI::App* a) : app(a) {}
    CLI::App* app;
    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    std::string config_path;
    CLI::Option* config_opt = nullptr;
};

void add_settings(Command& cmd, const std::vector<std::string>& extra = {}) {
    for (const auto& [key, help] : kSettings) cmd.options[key] = cmd.app->add_option("--" + key, cmd.values[key], help);
    for (const auto& key : extra) cmd.options[key] = cmd.app->add_option("--" + key, cmd.values[key]);
    cmd.config_opt = cmd.app->add_option("--config", cmd.config_path, "key = value settings file; flags override it");
}

SweepConfig resolve(const Command& cmd) {
    SweepConfig cfg;
    if (cmd.config_opt->count() > 0) conelab::lab::apply_config_file(cfg, cmd.config_path);
    for (const auto& [key, opt] : cmd.options)
        if (opt->count() > 0) conelab::lab::apply_setting(cfg, key, cmd.values.at(key));
    cfg.validate();
    return cfg;
}

void write_output(const SweepConfig& cfg, const std::string& text) {
    if (cfg.output_path.empty()) std::cout << text;
    else conelab::lab::emit_report(text, cfg.output_path);
}

std::vector<double> parse_list(const std::string& s) {
    std::vector<double> out;
    std::stringstream ss(s);
    for (std::string item; std::getline(ss, item, ',');) {
        try {
            out.push_back(std::stod(item));
        } catch (const std::exception&) {
            throw conelab::lab::ConfigError("expected a comma-separated list of numbers, got '" + s + "'");
        }
    }
    return out;
}

// "SIMPLEX:c1,c2,..." with SIMPLEX a zero-based index.
conelab::ConePoint parse_cone_point(const std::string& s) {
    const auto colon = s.find(':');
    if (colon == std::string::npos) throw conelab::lab::ConfigError("cone point must look like 'simplex:c1,c2,...'");
    conelab::ConePoint p;
    try {
        p.simplex = std::stoul(s.substr(0, colon));
    } catch (const std::exception&) {
        throw conelab::lab::ConfigError("bad simplex index in '" + s + "'");
    }
    p.coords = parse_list(s.substr(colon + 1));
    return p;
}

int run_dist(const SweepConfig& cfg) {
    using namespace conelab;
    const auto X = psi(cfg.x), Y = psi(cfg.y);
    const double dV = quotient_ray_distance_s11(cfg.x, cfg.y);
    const auto dL = moduli_ls_distance(X, Y, cfg.height, cfg.orbit_radius);
    const double dls = length_spectra_distance(X, Y, cfg.height).lower;
    const double dT = lab::teich_estimate(X, Y, cfg.twist_convention);
    std::ostringstream os;
    os << lab::config_line(cfg) << "x,y,d_V,d_L_lower,d_ls_lower,d_T_est\n"
       << lab::format_number(cfg.x) << ',' << lab::format_number(cfg.y) << ',' << lab::format_number(dV) << ','
       << lab::format_number(dL.bracket.lower) << ',' << lab::format_number(dls) << ',' << lab::format_number(dT)
       << '\n';
    write_output(cfg, os.str());
    return 0;
}

int run_sweep(const SweepConfig& cfg) {
    const auto rep = conelab::lab::sweep_almost_isometry(cfg);
    write_output(cfg, conelab::lab::render_sweep(cfg, rep));
    const bool bad = !rep.summary.violations.empty() || rep.summary.max_undercut > 0.05;
    return bad ? kViolation : 0;
}

int run_compare(const SweepConfig& cfg) {
    const auto rep = conelab::lab::sweep_teich_comparison(cfg);
    write_output(cfg, conelab::lab::render_teich(cfg, rep));
    const bool bad = !rep.summary.violations.empty() || !rep.summary.zero_twist_exact;
    return bad ? kViolation : 0;
}

int run_diverge(const SweepConfig& cfg) {
    const auto rep = conelab::lab::divergence_sequence(cfg);
    write_output(cfg, conelab::lab::render_divergence(cfg, rep));
    for (const auto& r : rep.rows)
        if (r.moduli_lower > 1e-9) return kViolation;
    return 0;
}

int run_project(const SweepConfig& cfg, const std::string& traces, double length, long long twists) {
    using namespace conelab;
    TraceCoord T = traces.empty() ? zero_twist_point(length) : [&] {
        const auto v = parse_list(traces);
        if (v.size() != 3) throw lab::ConfigError("--traces needs exactly three values");
        try {
            return TraceCoord::from_traces(v[0], v[1], v[2]);
        } catch (const std::invalid_argument& e) {
            throw lab::ConfigError(e.what());
        }
    }();
    T = dehn_twist(T, twists);
    const auto b = bers_project(T, cfg.height);
    std::ostringstream os;
    os << "# conelab project height=" << cfg.height << '\n'
       << "model_x,systole_p,systole_q,systole_length,required_height,certified\n"
       << lab::format_number(b.point.x) << ',' << b.systole.p() << ',' << b.systole.q() << ','
       << lab::format_number(b.systole_length) << ',' << b.required_height << ',' << (b.certified ? "yes" : "no")
       << '\n';
    write_output(cfg, os.str());
    return 0;
}

int run_cone(const SweepConfig& cfg, const std::string& complex_path, const std::string& from, const std::string& to) {
    using namespace conelab;
    ConeComplexSpec cc = [&] {
        try {
            return load_cone_complex(complex_path);
        } catch (const std::exception& e) {
            throw lab::ConfigError(complex_path + ": " + e.what());
        }
    }();
    const ConePoint x = parse_cone_point(from), y = parse_cone_point(to);
    PathResult r;
    try {
        r = path_distance(x, y, cc, cfg.tol);
    } catch (const std::invalid_argument& e) {
        throw lab::ConfigError(e.what());
    }
    std::ostringstream os;
    os << "# conelab cone complex=" << complex_path << '\n'
       << "distance,apex_bound,chain\n"
       << lab::format_number(r.value) << ',' << lab::format_number(apex_route_bound(x, y)) << ',';
    for (std::size_t i = 0; i < r.witness.chain.size(); ++i) {
        if (i > 0) os << (r.witness.via_apex[i - 1] ? " *" : " -") << ' ';
        os << r.witness.chain[i];
    }
    os << '\n';
    write_output(cfg, os.str());
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"conelab: cone model, length spectra and Teichmuller estimates on the once-punctured torus"};
    app.require_subcommand(1);

    Command dist{app.add_subcommand("dist", "distances between the model points x and y")};
    add_settings(dist, {"x", "y"});
    Command sweep{app.add_subcommand("sweep", "almost-isometry sweep over a grid of model points")};
    add_settings(sweep);
    Command compare{app.add_subcommand("compare", "Teichmuller estimate against d_L over a grid")};
    add_settings(compare);
    Command diverge{app.add_subcommand("diverge", "Dehn-twist divergence sequence")};
    add_settings(diverge);

    Command project{app.add_subcommand("project", "short-pants projection of a trace triple")};
    add_settings(project);
    std::string traces;
    double length = conelab::epsilon0();
    long long twists = 0;
    project.app->add_option("--traces", traces, "Markov triple x,y,z (default: zero-twist point of --length)");
    project.app->add_option("--length", length, "length of the curve 0/1 on the zero-twist locus");
    project.app->add_option("--twist", twists, "Dehn twists about 0/1 applied before projecting");

    Command cone{app.add_subcommand("cone", "path distance in a cone complex file")};
    add_settings(cone);
    std::string complex_path, from, to;
    cone.app->add_option("--complex", complex_path, "complex file")->required();
    cone.app->add_option("--from", from, "start point 'simplex:c1,c2,...'")->required();
    cone.app->add_option("--to", to, "end point 'simplex:c1,c2,...'")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kConfigError;
    }

    try {
        if (*dist.app) return run_dist(resolve(dist));
        if (*sweep.app) return run_sweep(resolve(sweep));
        if (*compare.app) return run_compare(resolve(compare));
        if (*diverge.app) return run_diverge(resolve(diverge));
        if (*project.app) return run_project(resolve(project), traces, length, twists);
        if (*cone.app) return run_cone(resolve(cone), complex_path, from, to);
    } catch (const conelab::lab::ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kConfigError;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 0;
}
