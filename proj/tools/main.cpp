#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "gwv/config.hpp"
#include "gwv/current.hpp"
#include "gwv/errors.hpp"
#include "gwv/regions.hpp"
#include "gwv/serialize.hpp"
#include "gwv/special.hpp"
#include "gwv/spinor.hpp"
#include "gwv/transition.hpp"
#include "gwv/units.hpp"

namespace {

using namespace gwv;

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitDomain = 3;
constexpr int kExitConvergence = 4;

struct GlobalFlags {
    std::string units;
    std::string config_path;
    std::string format;
    std::string out_path;
    std::uint64_t seed = 0;
    double rel_tol = 0.0;
    long max_evals = 0;
    int degeneracy = 0;
    std::string quad;
    int threads = 0;
};

// defaults < config file < explicit flags
RunConfig assemble_config(const GlobalFlags& g, const CLI::App& app) {
    RunConfig cfg;
    if (app.count("--config") > 0) cfg = load_config(g.config_path, cfg);
    if (app.count("--units") > 0) cfg.units_preset = g.units;
    if (app.count("--format") > 0) cfg.output_format = g.format;
    if (app.count("--out") > 0) cfg.output_path = g.out_path;
    if (app.count("--seed") > 0) cfg.quad.seed = g.seed;
    if (app.count("--rel-tol") > 0) cfg.quad.rel_tol = g.rel_tol;
    if (app.count("--max-evals") > 0) cfg.quad.max_evals = g.max_evals;
    if (app.count("--degeneracy") > 0) cfg.degeneracy = g.degeneracy;
    if (app.count("--threads") > 0) cfg.threads = g.threads;
    if (app.count("--quad") > 0)
        cfg.quad.method = g.quad == "mc" ? QuadMethod::MonteCarlo : QuadMethod::AdaptivePolar;
    validate(cfg.quad);
    if (cfg.degeneracy < 1) throw ConfigError("degeneracy must be >= 1");
    if (cfg.threads < 1) throw ConfigError("threads must be >= 1");
    return cfg;
}

void emit(const RunConfig& cfg, const std::string& artifact) {
    if (cfg.output_path.empty()) {
        std::cout << artifact;
        return;
    }
    std::ofstream out(cfg.output_path, std::ios::binary);
    if (!out) throw ConfigError("cannot open output path: " + cfg.output_path);
    out << artifact;
}

std::string format_or(const RunConfig& cfg, const char* fallback) {
    return cfg.output_format.empty() ? fallback : cfg.output_format;
}

std::string key_value_csv(const std::vector<std::pair<std::string, std::string>>& fields) {
    std::vector<std::string> header, row;
    for (const auto& [k, v] : fields) {
        header.push_back(k);
        row.push_back(v);
    }
    return csv_join(header) + "\n" + csv_join(row) + "\n";
}

std::string render_flat(const RunConfig& cfg, const char* default_format,
                        const std::vector<std::pair<std::string, std::string>>& fields,
                        const std::vector<std::string>& string_valued) {
    if (format_or(cfg, default_format) == "csv") return key_value_csv(fields);
    JsonWriter w;
    for (const auto& [k, v] : fields) {
        const bool is_string =
            std::find(string_valued.begin(), string_valued.end(), k) != string_valued.end();
        if (is_string)
            w.field(k, std::string_view(v));
        else
            w.field_raw(k, v);
    }
    return w.str() + "\n";
}

// ---- subcommand option blocks -------------------------------------------

struct WeakValueOpts {
    double theta_pre = 0.0, theta_post = 0.0, px = 0.0, py = 0.0;
};

struct TransitionOpts {
    double px = 0.0, py = 0.0, eps = 0.0;
};

struct RegionsOpts {
    double eps = 0.0, tbal = 0.0;
    int grid = 0;
    bool boundaries = false;
    int n = 64;
};

struct SingleOpts {
    double eps = 0.0, tbal = 0.0, length = 0.0;
};

struct SweepOpts {
    double eps_min = 0.0, eps_max = 0.0, tbal_min = 0.0, tbal_max = 0.0;
    int eps_steps = 1, tbal_steps = 1;
    bool log_spacing = false;
};

struct PropagatorOpts {
    double px = 0.0, py = 0.0;
    double theta_pre = 0.0, theta_post = 0.0;
    double t_min = 0.0, t_max = 0.0;
    int steps = 9;
};

std::string run_weak_value(const RunConfig& cfg, const WeakValueOpts& o, bool theta_mode,
                           bool momentum_mode) {
    if (theta_mode == momentum_mode)
        throw ConfigError(
            "weak-value needs either --theta-pre/--theta-post or --px (selection-rule mode)");
    const WeakVelocity w = theta_mode ? weak_value_closed_form(o.theta_pre, o.theta_post)
                                      : selected_weak_velocity({o.px, o.py});
    std::vector<std::pair<std::string, std::string>> fields = {
        {"sigma_x_w", format_g17(w.sigma_x_w)},
        {"sigma_y_w", format_g17(w.sigma_y_w)},
        {"overlap_re", format_g17(w.overlap.real())},
        {"overlap_im", format_g17(w.overlap.imag())},
    };
    return render_flat(cfg, "json", fields, {});
}

std::string run_transition(const RunConfig& cfg, const UnitSystem& units,
                           const TransitionOpts& o) {
    const TransitionKinematics k = kinematics({{o.px, o.py}, units, o.eps});
    std::vector<std::pair<std::string, std::string>> fields = {
        {"delta_E", format_g17(k.delta_E)},   {"delta_px", format_g17(k.delta_px)},
        {"delta_t", format_g17(k.delta_t)},   {"delta_x", format_g17(k.delta_x)},
        {"v_g", format_g17(k.v_g)},           {"T", format_g17(k.T)},
    };
    return render_flat(cfg, "json", fields, {});
}

std::string run_regions(const RunConfig& cfg, const UnitSystem& units, const RegionsOpts& o) {
    const RegionConfig rc = make_region_config(units, o.eps, o.tbal);
    const bool csv = format_or(cfg, "csv") == "csv";
    std::string out;
    if (o.boundaries) {
        const auto pts = sample_boundaries(rc, o.n);
        if (csv) {
            out = "p_x,p_y,curve\n";
            for (const auto& b : pts)
                out += csv_join({format_g17(b.px), format_g17(b.py), to_string(b.curve)}) + "\n";
        } else {
            out = "[";
            for (std::size_t i = 0; i < pts.size(); ++i) {
                JsonWriter w;
                w.field("p_x", pts[i].px);
                w.field("p_y", pts[i].py);
                w.field("curve", std::string_view(to_string(pts[i].curve)));
                out += (i ? "," : "") + w.str();
            }
            out += "]\n";
        }
        return out;
    }
    if (o.grid < 1) throw ConfigError("regions: --grid must be >= 1 (or use --boundaries)");
    // Extent chosen to frame the interesting curves for any t_bal/t_c.
    const double r_med = std::max(std::min(rc.r_B, rc.r_F),
                                  std::min(std::max(rc.r_B, rc.r_F), std::sqrt(rc.k_V)));
    const double extent = 1.2 * r_med;
    std::vector<MomentumPoint> grid_points;
    for (int i = 0; i < o.grid; ++i) {
        const double px = o.grid == 1 ? 0.0 : extent * i / (o.grid - 1);
        for (int j = 0; j < o.grid; ++j) {
            const double py = o.grid == 1 ? 0.0 : -extent + 2.0 * extent * j / (o.grid - 1);
            grid_points.push_back({px, py});
        }
    }
    if (csv) {
        out = "p_x,p_y,in_V,in_B,in_F,klass\n";
        for (const auto& p : grid_points) {
            const RegionLabel l = classify(p, rc);
            out += csv_join({format_g17(p.px), format_g17(p.py), l.in_V ? "1" : "0",
                             l.in_B ? "1" : "0", l.in_F ? "1" : "0", to_string(l.klass)}) +
                   "\n";
        }
    } else {
        out = "[";
        bool first = true;
        for (const auto& p : grid_points) {
            const RegionLabel l = classify(p, rc);
            JsonWriter w;
            w.field("p_x", p.px);
            w.field("p_y", p.py);
            w.field("in_V", l.in_V);
            w.field("in_B", l.in_B);
            w.field("in_F", l.in_F);
            w.field("klass", std::string_view(to_string(l.klass)));
            out += (first ? "" : ",") + w.str();
            first = false;
        }
        out += "]\n";
    }
    return out;
}

double resolve_tbal(const UnitSystem& units, const SingleOpts& o, bool has_tbal, bool has_length) {
    if (has_tbal == has_length)
        throw ConfigError("provide exactly one of --tbal or --L (t_bal = L/v_f)");
    return has_tbal ? o.tbal : o.length / units.v_f;
}

std::string run_conductivity(const RunConfig& cfg, const UnitSystem& units, const SingleOpts& o,
                             bool has_tbal, bool has_length) {
    const double tbal = resolve_tbal(units, o, has_tbal, has_length);
    const RegionConfig rc = make_region_config(units, o.eps, tbal);
    QuadratureConfig quad = cfg.quad;
    if (quad.method != QuadMethod::MonteCarlo) quad.method = QuadMethod::AdaptivePolar;
    const double g = cfg.degeneracy;
    const double power = quasi_ohmic_power(rc, quad) * g;
    const double sigma = power / (o.eps * o.eps);
    std::vector<std::pair<std::string, std::string>> fields = {
        {"epsilon", format_g17(o.eps)},
        {"t_bal", format_g17(tbal)},
        {"t_c", format_g17(rc.t_c)},
        {"power_O", format_g17(power)},
        {"sigma_O", format_g17(sigma)},
        {"regime", tbal / rc.t_c < 0.3 ? "quasi-ohmic"
                                       : (tbal / rc.t_c > 3.0 ? "schwinger" : "crossover")},
        {"model_extension", tbal > rc.t_c ? "true" : "false"},
        {"degeneracy", std::to_string(cfg.degeneracy)},
    };
    return render_flat(cfg, "json", fields, {"regime"});
}

std::string run_schwinger_rate(const RunConfig& cfg, const UnitSystem& units, const SingleOpts& o,
                               bool has_tbal, bool has_length) {
    const double tbal = resolve_tbal(units, o, has_tbal, has_length);
    const RegionConfig rc = make_region_config(units, o.eps, tbal);
    QuadratureConfig quad = cfg.quad;
    if (quad.method != QuadMethod::MonteCarlo) quad.method = QuadMethod::CartesianStrip;
    const double rate = schwinger_region_rate(rc, quad);
    const double reference = schwinger_reference_rate(0.0, o.eps, units);
    const double asymptotic = schwinger_asymptotic_rate(o.eps, units);
    const double g = cfg.degeneracy;
    std::vector<std::pair<std::string, std::string>> fields = {
        {"epsilon", format_g17(o.eps)},
        {"t_bal", format_g17(tbal)},
        {"t_c", format_g17(rc.t_c)},
        {"rate_S", format_g17(rate * g)},
        {"carrier_density", format_g17(rate * tbal * g)},
        {"reference_rate", format_g17(reference)},
        {"asymptotic_rate", format_g17(asymptotic)},
        {"ratio_to_reference", format_g17(rate / reference)},
        {"degeneracy", std::to_string(cfg.degeneracy)},
    };
    return render_flat(cfg, "json", fields, {});
}

std::string sweep_csv(const std::vector<CurrentResult>& rows, int degeneracy) {
    const double g = degeneracy;
    std::string out = "eps,t_bal,t_c,power_O,sigma_O,rate_S,n,j_quasi,j_schwinger,j_total,regime";
    if (degeneracy != 1) out += ",degeneracy";
    out += "\n";
    for (const auto& r : rows) {
        std::vector<std::string> cells = {
            format_g17(r.epsilon),          format_g17(r.t_bal),
            format_g17(r.t_c),              format_g17(r.power_O * g),
            format_g17(r.sigma_O * g),      format_g17(r.rate_S * g),
            format_g17(r.carrier_density * g), format_g17(r.j_quasi * g),
            format_g17(r.j_schwinger * g),  format_g17(r.j_total * g),
            r.regime,
        };
        if (degeneracy != 1) cells.push_back(std::to_string(degeneracy));
        out += csv_join(cells) + "\n";
    }
    return out;
}

std::string sweep_json(const std::vector<CurrentResult>& rows, int degeneracy) {
    const double g = degeneracy;
    std::string out = "[";
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        JsonWriter w;
        w.field("eps", r.epsilon);
        w.field("t_bal", r.t_bal);
        w.field("t_c", r.t_c);
        w.field("power_O", r.power_O * g);
        w.field("sigma_O", r.sigma_O * g);
        w.field("rate_S", r.rate_S * g);
        w.field("n", r.carrier_density * g);
        w.field("j_quasi", r.j_quasi * g);
        w.field("j_schwinger", r.j_schwinger * g);
        w.field("j_total", r.j_total * g);
        w.field("regime", std::string_view(r.regime));
        w.field("model_extension", r.o_region_extended);
        w.field("degeneracy", static_cast<long>(degeneracy));
        if (!r.error_message.empty()) w.field("error", std::string_view(r.error_message));
        out += (i ? "," : "") + w.str();
    }
    return out + "]\n";
}

std::string run_sweep(const RunConfig& cfg, const UnitSystem& units, const SweepOpts& o) {
    const auto eps_grid = o.log_spacing ? geometric_grid(o.eps_min, o.eps_max, o.eps_steps)
                                        : linear_grid(o.eps_min, o.eps_max, o.eps_steps);
    const auto tbal_grid = o.log_spacing ? geometric_grid(o.tbal_min, o.tbal_max, o.tbal_steps)
                                         : linear_grid(o.tbal_min, o.tbal_max, o.tbal_steps);
    const auto rows = sweep(eps_grid, tbal_grid, units, cfg.quad, cfg.threads);
    return format_or(cfg, "csv") == "csv" ? sweep_csv(rows, cfg.degeneracy)
                                          : sweep_json(rows, cfg.degeneracy);
}

std::string run_verify_propagator(const RunConfig& cfg, const UnitSystem& units,
                                  const PropagatorOpts& o, bool has_angles) {
    const MomentumPoint p{o.px, o.py};
    if (!(momentum_norm(p) > 0.0)) throw DomainError("verify-propagator: |p| must be > 0");
    const double theta_pre = has_angles ? o.theta_pre : std::atan2(o.py, -o.px);
    const double theta_post = has_angles ? o.theta_post : std::atan2(o.py, o.px);
    const double t_scale = units.hbar / energy(p, units);
    const double t_min = o.t_min > 0.0 ? o.t_min : 1e-4 * t_scale;
    const double t_max = o.t_max > 0.0 ? o.t_max : 1e-2 * t_scale;
    if (o.steps < 2) throw ConfigError("verify-propagator: --steps must be >= 2");
    const auto times = geometric_grid(t_min, t_max, o.steps);
    const auto samples = verify_weak_propagator(p, theta_pre, theta_post, times, units);

    std::vector<double> ts, errs;
    for (const auto& s : samples) {
        if (s.abs_error > 0.0) {
            ts.push_back(s.t);
            errs.push_back(s.abs_error);
        }
    }
    const double slope = ts.size() >= 2 ? fit_loglog_slope(ts, errs) : 0.0;

    if (format_or(cfg, "json") == "csv") {
        std::string out = "t,error\n";
        for (const auto& s : samples)
            out += csv_join({format_g17(s.t), format_g17(s.abs_error)}) + "\n";
        return out;
    }
    std::string arr = "[";
    for (std::size_t i = 0; i < samples.size(); ++i) {
        JsonWriter w;
        w.field("t", samples[i].t);
        w.field("error", samples[i].abs_error);
        arr += (i ? "," : "") + w.str();
    }
    arr += "]";
    JsonWriter w;
    w.field("theta_pre", theta_pre);
    w.field("theta_post", theta_post);
    w.field("slope", slope);
    w.field_raw("samples", arr);
    return w.str() + "\n";
}

std::string run_crossover_time(const RunConfig& cfg, const UnitSystem& units, double eps) {
    std::vector<std::pair<std::string, std::string>> fields = {
        {"epsilon", format_g17(eps)},
        {"t_c", format_g17(crossover_time(units, eps))},
    };
    return render_flat(cfg, "json", fields, {});
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"weak-value model of the electric current in graphene"};
    app.require_subcommand(1);

    GlobalFlags g;
    app.add_option("--units", g.units, "unit preset")->check(CLI::IsMember({"natural", "si"}));
    app.add_option("--config", g.config_path, "flat key=value config file");
    app.add_option("--format", g.format, "output format")->check(CLI::IsMember({"csv", "json"}));
    app.add_option("--out", g.out_path, "output path (default: stdout)");
    app.add_option("--seed", g.seed, "Monte Carlo seed");
    app.add_option("--rel-tol", g.rel_tol, "quadrature relative tolerance");
    app.add_option("--max-evals", g.max_evals, "quadrature budget / MC sample count");
    app.add_option("--degeneracy", g.degeneracy, "channel multiplier applied at serialization");
    app.add_option("--quad", g.quad, "integration method")
        ->check(CLI::IsMember({"adaptive", "mc"}));
    app.add_option("--threads", g.threads, "sweep worker threads");

    WeakValueOpts wv;
    auto* wv_cmd = app.add_subcommand("weak-value", "chirality weak values");
    wv_cmd->fallthrough();
    auto* wv_tp = wv_cmd->add_option("--theta-pre", wv.theta_pre, "pre-selection angle (valence)");
    auto* wv_tq = wv_cmd->add_option("--theta-post", wv.theta_post,
                                     "post-selection angle (conduction)");
    auto* wv_px = wv_cmd->add_option("--px", wv.px, "final p_x (selection-rule mode)");
    wv_cmd->add_option("--py", wv.py, "final p_y (selection-rule mode)");

    TransitionOpts tr;
    auto* tr_cmd = app.add_subcommand("transition", "creation-transition kinematics");
    tr_cmd->fallthrough();
    tr_cmd->add_option("--px", tr.px, "final p_x")->required();
    tr_cmd->add_option("--py", tr.py, "final p_y");
    tr_cmd->add_option("--eps", tr.eps, "field strength")->required();

    RegionsOpts rg;
    auto* rg_cmd = app.add_subcommand("regions", "momentum-space region classification");
    rg_cmd->fallthrough();
    rg_cmd->add_option("--eps", rg.eps, "field strength")->required();
    rg_cmd->add_option("--tbal", rg.tbal, "ballistic time")->required();
    rg_cmd->add_option("--grid", rg.grid, "N x N classification grid");
    rg_cmd->add_flag("--boundaries", rg.boundaries, "emit boundary curves instead of a grid");
    rg_cmd->add_option("--n", rg.n, "points per boundary curve");

    SingleOpts cd;
    auto* cd_cmd = app.add_subcommand("conductivity", "quasi-Ohmic power and conductivity");
    cd_cmd->fallthrough();
    cd_cmd->add_option("--eps", cd.eps, "field strength")->required();
    auto* cd_tb = cd_cmd->add_option("--tbal", cd.tbal, "ballistic time");
    auto* cd_len = cd_cmd->add_option("--L", cd.length, "sample size; t_bal = L/v_f");

    SingleOpts sr;
    auto* sr_cmd = app.add_subcommand("schwinger-rate", "S-region carrier creation rate");
    sr_cmd->fallthrough();
    sr_cmd->add_option("--eps", sr.eps, "field strength")->required();
    auto* sr_tb = sr_cmd->add_option("--tbal", sr.tbal, "ballistic time");
    auto* sr_len = sr_cmd->add_option("--L", sr.length, "sample size; t_bal = L/v_f");

    SweepOpts sw;
    auto* sw_cmd = app.add_subcommand("sweep", "current over an (eps, t_bal) grid");
    sw_cmd->fallthrough();
    sw_cmd->add_option("--eps-min", sw.eps_min)->required();
    sw_cmd->add_option("--eps-max", sw.eps_max)->required();
    sw_cmd->add_option("--eps-steps", sw.eps_steps)->required();
    sw_cmd->add_option("--tbal-min", sw.tbal_min)->required();
    sw_cmd->add_option("--tbal-max", sw.tbal_max)->required();
    sw_cmd->add_option("--tbal-steps", sw.tbal_steps)->required();
    sw_cmd->add_flag("--log", sw.log_spacing, "geometric grid spacing");

    PropagatorOpts pg;
    auto* pg_cmd = app.add_subcommand("verify-propagator",
                                      "weak-value factorization error vs exact evolution");
    pg_cmd->fallthrough();
    pg_cmd->add_option("--px", pg.px, "momentum p_x")->required();
    pg_cmd->add_option("--py", pg.py, "momentum p_y");
    auto* pg_tp = pg_cmd->add_option("--theta-pre", pg.theta_pre);
    auto* pg_tq = pg_cmd->add_option("--theta-post", pg.theta_post);
    pg_cmd->add_option("--t-min", pg.t_min, "default 1e-4 * hbar/E");
    pg_cmd->add_option("--t-max", pg.t_max, "default 1e-2 * hbar/E");
    pg_cmd->add_option("--steps", pg.steps, "number of times (log-spaced)");

    double ct_eps = 0.0;
    auto* ct_cmd = app.add_subcommand("crossover-time", "t_c = sqrt(hbar/(e eps v_f))");
    ct_cmd->fallthrough();
    ct_cmd->add_option("--eps", ct_eps, "field strength")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        const RunConfig cfg = assemble_config(g, app);
        const UnitSystem units = resolve_units(cfg);
        std::string artifact;
        if (wv_cmd->parsed()) {
            const bool theta_mode = wv_tp->count() > 0 && wv_tq->count() > 0;
            const bool momentum_mode = wv_px->count() > 0;
            artifact = run_weak_value(cfg, wv, theta_mode, momentum_mode);
        } else if (tr_cmd->parsed()) {
            artifact = run_transition(cfg, units, tr);
        } else if (rg_cmd->parsed()) {
            artifact = run_regions(cfg, units, rg);
        } else if (cd_cmd->parsed()) {
            artifact = run_conductivity(cfg, units, cd, cd_tb->count() > 0, cd_len->count() > 0);
        } else if (sr_cmd->parsed()) {
            artifact = run_schwinger_rate(cfg, units, sr, sr_tb->count() > 0, sr_len->count() > 0);
        } else if (sw_cmd->parsed()) {
            artifact = run_sweep(cfg, units, sw);
        } else if (pg_cmd->parsed()) {
            const bool has_angles = pg_tp->count() > 0 && pg_tq->count() > 0;
            artifact = run_verify_propagator(cfg, units, pg, has_angles);
        } else if (ct_cmd->parsed()) {
            artifact = run_crossover_time(cfg, units, ct_eps);
        }
        emit(cfg, artifact);
        return kExitOk;
    } catch (const ConfigError& e) {
        std::cerr << "error: usage: " << e.what() << "\n";
        return kExitUsage;
    } catch (const ConvergenceError& e) {
        std::cerr << "error: convergence: " << e.what()
                  << " best=" << format_g17(e.best_estimate)
                  << " bound=" << format_g17(e.error_bound) << " evals=" << e.evals << "\n";
        return kExitConvergence;
    } catch (const DomainError& e) {
        std::cerr << "error: domain: " << e.what() << "\n";
        return kExitDomain;
    } catch (const std::exception& e) {
        std::cerr << "error: internal: " << e.what() << "\n";
        return 1;
    }
}
