#include "vml/cli/commands.hpp"

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <json.hpp>

#include "vml/cli/config_file.hpp"
#include "vml/cli/csv.hpp"
#include "vml/cli/presets.hpp"
#include "vml/cli/verify.hpp"
#include "vml/diagnostics/decay.hpp"
#include "vml/error.hpp"
#include "vml/evolve/initial_data.hpp"
#include "vml/evolve/run.hpp"
#include "vml/evolve/stepper.hpp"
#include "vml/evolve/y0.hpp"
#include "vml/landau/coercivity.hpp"
#include "vml/landau/sigma_cache.hpp"

namespace vml {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct ConfigArgs {
    std::string config_path;
    std::string preset_name;
    std::vector<std::string> overrides;
    long long seed = -1;

    void add_to(CLI::App* app) {
        app->add_option("--config", config_path, "config file (run.cfg format)");
        app->add_option("--preset", preset_name, "start from a named preset");
        app->add_option("--set", overrides, "override key=value (repeatable)");
        app->add_option("--seed", seed, "initial-data seed");
    }

    RunConfig resolve() const {
        RunConfig c = preset_name.empty() ? RunConfig{} : preset(preset_name);
        if (!config_path.empty()) c = load_config(config_path, c);
        for (const auto& o : overrides) apply_override(c, o);
        if (seed >= 0) c.seed = static_cast<std::uint64_t>(seed);
        c.validate();
        return c;
    }
};

void write_file(const fs::path& p, const std::string& text) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw IoError("cannot write " + p.string());
    out << text;
    if (!out) throw IoError("write failed: " + p.string());
}

json lyapunov_json(const LyapunovSummary& l) {
    json j = json::object();
    for (std::size_t i = 0; i < l.names.size(); ++i)
        j[l.names[i]] = {{"flags", l.flags[i]}, {"worst_ratio", l.worst_ratio[i]}};
    j["steps"] = l.steps;
    return j;
}

int simulate(const ConfigArgs& args, const std::string& out_dir, const std::string& resume,
             const std::string& cache_dir) {
    const RunConfig c = args.resolve();
    const fs::path out(out_dir);
    fs::create_directories(out);
    write_file(out / "manifest.cfg", write_manifest(c));

    std::ofstream csv(out / "diagnostics.csv", std::ios::binary);
    if (!csv) throw IoError("cannot write " + (out / "diagnostics.csv").string());
    csv << kCsvSchema << '\n' << csv_header() << '\n';

    RunOptions opt;
    opt.checkpoint_dir = (out / "checkpoints").string();
    opt.resume = resume;
    opt.cache_dir = cache_dir;
    opt.keep_reports = false;
    opt.on_report = [&](const FunctionalReport& r) { csv << csv_row(r) << '\n' << std::flush; };

    const auto t0 = std::chrono::steady_clock::now();
    json rep;
    try {
        const RunResult res = run(c, opt);
        rep["status"] = "ok";
        rep["backend"] = res.backend;
        rep["steps"] = res.steps;
        rep["t_end"] = res.final_state.t;
        rep["x_sup"] = res.x_sup;
        rep["lyapunov"] = lyapunov_json(res.lyapunov);
    } catch (const NonFiniteState& e) {
        rep["status"] = "non-finite";
        rep["message"] = e.what();
        rep["last_good_step"] = e.step();
        rep["last_good"] = (fs::path(opt.checkpoint_dir) / "last_good.bin").string();
        write_file(out / "report.json", rep.dump(2) + "\n");
        std::cerr << "vml: " << e.what() << "; last good state at step " << e.step() << " written to "
                  << rep["last_good"].get<std::string>() << '\n';
        return kExitNonFinite;
    }
    rep["seconds"] = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    write_file(out / "report.json", rep.dump(2) + "\n");
    std::cout << "simulate: " << rep["steps"] << " steps, backend " << rep["backend"].get<std::string>()
              << ", output in " << out.string() << '\n';
    return kExitOk;
}

int verify(const std::string& suite, int jobs, const std::string& json_path) {
    const VerifyReport rep = run_verify(suite, jobs);
    std::cout << rep.summary();
    if (!json_path.empty()) write_file(json_path, rep.json() + "\n");
    return rep.pass() ? kExitOk : kExitFailure;
}

int fit_decay(const std::string& csv_path, const std::string& column, const std::vector<double>& window, int k,
              double s, double tol, double threshold, const std::string& json_path) {
    const CsvTable t = read_csv(csv_path);
    const auto time = t.column("t");
    const auto E = t.column(column);
    DecayFit f;
    if (window.empty())
        f = auto_decay_fit(time, E, k, s, 4.0, 8, threshold);
    else if (window.size() == 2)
        f = decay_fit(time, E, window[0], window[1], k, s, threshold);
    else
        throw ConfigError("--window takes two values t0 t1");
    double late = NAN;
    try {
        late = late_exponential_rate(time, E);
    } catch (const DomainError&) {
    }
    const bool met = f.reliable && std::abs(f.exponent - f.target) <= tol;
    std::printf("column        %s\n", column.c_str());
    std::printf("window        [%g, %g] (%d points)\n", f.t0, f.t1, f.points);
    std::printf("exponent      %.6f\n", f.exponent);
    std::printf("residual      %.3e (%s)\n", f.residual, f.reliable ? "reliable" : "above threshold");
    std::printf("target        %.6f = -(k+s), k=%d, s=%g\n", f.target, k, s);
    std::printf("late rate     %.6g (exponential, last quarter)\n", late);
    std::printf("verdict       %s (tolerance %g)\n", met ? "target met" : "target not met", tol);
    std::printf("%s\n", kTorusCaveat);
    if (!json_path.empty()) {
        json j{{"column", column},     {"t0", f.t0},         {"t1", f.t1},
               {"points", f.points},   {"exponent", f.exponent}, {"residual", f.residual},
               {"reliable", f.reliable}, {"target", f.target}, {"late_rate", std::isfinite(late) ? json(late) : json()},
               {"met", met},           {"caveat", kTorusCaveat}};
        write_file(json_path, j.dump(2) + "\n");
    }
    return met ? kExitOk : kExitFailure;
}

int norms(const ConfigArgs& args, const std::string& cache_dir) {
    const RunConfig c = args.resolve();
    const auto ctx = make_context(c, cache_dir);
    const PhaseState s = make_initial_state(*ctx);
    const FunctionalReport r = compute_report(s, *ctx, 0);
    json j{{"Y0", y0_functional(s, *ctx)},
           {"E_N", r.E_N},
           {"E_k", r.E_k},
           {"D_k", r.D_k},
           {"E_Nl", r.E_Nl},
           {"D_Nl", r.D_Nl},
           {"Ebar_top", r.Ebar_top},
           {"hs", {r.hs_f, r.hs_E, r.hs_B}},
           {"gauss", r.gauss},
           {"div_B", r.div_B},
           {"backend", to_string(resolve_solver(*ctx, s))}};
    std::cout << j.dump(2) << '\n';
    return kExitOk;
}

int tables(int n_v, double v_max, double gamma, const std::string& cache_dir, bool coercivity) {
    const auto t0 = std::chrono::steady_clock::now();
    const VelocityGrid g(n_v, v_max);
    const auto t = build_collision_tables(g, gamma);
    const double build = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    json j{{"n_v", n_v}, {"v_max", v_max}, {"gamma", gamma}, {"build_seconds", build}};
    const std::size_t centre = g.index(n_v / 2, n_v / 2, n_v / 2);
    j["sigma_11_near_origin"] = t->sigma()[centre];
    if (!cache_dir.empty()) {
        fs::create_directories(cache_dir);
        const std::string path = (fs::path(cache_dir) / sigma_cache_name(n_v, v_max, gamma)).string();
        save_sigma_cache(path, *t);
        j["cache"] = path;
    }
    if (coercivity) {
        const Projection proj(g);
        const auto rep = coercivity_gap(*t, proj, 100);
        j["coercivity_min"] = rep.min_ratio;
        j["coercivity_median"] = rep.median_ratio;
    }
    std::cout << j.dump(2) << '\n';
    return kExitOk;
}

}  // namespace

int cli_main(int argc, char** argv) {
    CLI::App app{"vml: perturbative two-species Vlasov-Maxwell-Landau simulator"};
    app.require_subcommand(1);

    ConfigArgs sim_args, norm_args;
    std::string out_dir = "vml-out", resume, cache_dir;
    auto* sim = app.add_subcommand("simulate", "integrate a configuration and write manifest, CSV and report");
    sim_args.add_to(sim);
    sim->add_option("--out", out_dir, "output directory");
    sim->add_option("--resume", resume, "continue from a checkpoint");
    sim->add_option("--cache", cache_dir, "sigma table cache directory");

    std::string suite = "all", verify_json;
    int jobs = 1;
    auto* ver = app.add_subcommand("verify", "run property suites");
    ver->add_option("suite", suite, "operator, projection, maxwell, transforms or all");
    ver->add_option("--jobs", jobs, "suites run concurrently");
    ver->add_option("--json", verify_json, "write the JSON report here");

    std::string csv_path, column = "E_k_0", fit_json;
    std::vector<double> window;
    int k = 0;
    double s = 0.5, tol = 0.3, threshold = kDefaultResidualThreshold;
    auto* fit = app.add_subcommand("fit-decay", "fit a power law to a diagnostics column");
    fit->add_option("csv", csv_path, "diagnostics CSV")->required();
    fit->add_option("--column", column, "column to fit");
    fit->add_option("--window", window, "t0 t1 (default: automatic)")->expected(2);
    fit->add_option("--k", k, "derivative order k of the target -(k+s)");
    fit->add_option("--s", s, "negative Sobolev index s");
    fit->add_option("--tol", tol, "allowed |exponent - target|");
    fit->add_option("--residual", threshold, "RMS log-residual threshold");
    fit->add_option("--json", fit_json, "write the fit as JSON");

    auto* nrm = app.add_subcommand("norms", "functionals of the initial data");
    norm_args.add_to(nrm);
    nrm->add_option("--cache", cache_dir, "sigma table cache directory");

    int tn = 16;
    double tv = 6.0, tg = -3.0;
    bool coerc = false;
    std::string tcache;
    auto* tab = app.add_subcommand("tables", "build (and cache) collision tables");
    tab->add_option("--n-v", tn, "velocity points per axis");
    tab->add_option("--v-max", tv, "velocity box half-width");
    tab->add_option("--gamma", tg, "kernel exponent");
    tab->add_option("--cache", tcache, "write the sigma table to this directory");
    tab->add_flag("--coercivity", coerc, "also sample the coercivity gap");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitUsage;
    }

    try {
        if (sim->parsed()) return simulate(sim_args, out_dir, resume, cache_dir);
        if (ver->parsed()) return verify(suite, jobs, verify_json);
        if (fit->parsed()) return fit_decay(csv_path, column, window, k, s, tol, threshold, fit_json);
        if (nrm->parsed()) return norms(norm_args, cache_dir);
        if (tab->parsed()) return tables(tn, tv, tg, tcache, coerc);
    } catch (const ConfigError& e) {
        std::cerr << "vml: config error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const DomainError& e) {
        std::cerr << "vml: " << e.what() << '\n';
        return kExitUsage;
    } catch (const IoError& e) {
        std::cerr << "vml: i/o error: " << e.what() << '\n';
        return kExitIo;
    } catch (const ConvergenceError& e) {
        std::cerr << "vml: " << e.what() << " after " << e.iterations() << " iterations (residual " << e.residual()
                  << ")\n";
        return kExitConvergence;
    } catch (const std::exception& e) {
        std::cerr << "vml: " << e.what() << '\n';
        return kExitFailure;
    }
    return kExitUsage;
}

}  // namespace vml
