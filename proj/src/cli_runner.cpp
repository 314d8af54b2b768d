#include "qagap/cli_runner.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <sstream>

#include "qagap/analysis.hpp"
#include "qagap/catalyst_opt.hpp"
#include "qagap/errors.hpp"
#include "qagap/parallel.hpp"
#include "qagap/spectral.hpp"

namespace qagap {

namespace {

using nlohmann::json;
namespace fs = std::filesystem;

constexpr const char* kVersion = "0.1.0";

std::string utc_now() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", std::gmtime(&t));
    return buf;
}

std::string timestamp_slug() {
    const auto t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y%m%d-%H%M%S", std::gmtime(&t));
    return buf;
}

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

class Run {
public:
    Run(std::string command, json config, fs::path out_dir)
        : command_(std::move(command)), config_(std::move(config)), dir_(std::move(out_dir)) {
        fs::create_directories(dir_);
        started_ = utc_now();
        clock_start_ = std::chrono::steady_clock::now();
    }

    const json& config() const { return config_; }
    const fs::path& dir() const { return dir_; }

    std::ofstream open_csv(const std::string& name, const std::string& header) {
        std::ofstream f(dir_ / name);
        if (!f) throw ConfigError("cannot write " + (dir_ / name).string());
        f << header << "\n";
        outputs_.push_back(name);
        return f;
    }

    void write_json(const std::string& name, const json& j) {
        std::ofstream f(dir_ / name);
        f << j.dump(2) << "\n";
        outputs_.push_back(name);
    }

    void write_plot_script(const std::string& name, const std::string& body) {
        fs::create_directories(dir_ / "plots");
        const std::string rel = std::string("plots/") + name;
        std::ofstream f(dir_ / rel);
        f << body;
        outputs_.push_back(rel);
    }

    void timing(const std::string& key, double seconds) { timings_[key] = seconds; }
    void fail(const std::string& what) { failures_.push_back(what); }
    bool ok() const { return failures_.empty(); }

    int finish() {
        json manifest;
        manifest["command"] = command_;
        manifest["tool_version"] = kVersion;
        manifest["resolved_config"] = config_;
        manifest["started"] = started_;
        manifest["finished"] = utc_now();
        manifest["elapsed_seconds"] =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - clock_start_)
                .count();
        manifest["outputs"] = outputs_;
        manifest["timings"] = timings_;
        manifest["tolerances"] = {{"solver_residual", 1e-12},
                                  {"refine_interval", 1e-6},
                                  {"crossing_tol", 1e-13}};
        if (!failures_.empty()) manifest["failures"] = failures_;
        std::ofstream f(dir_ / "manifest.json");
        f << manifest.dump(2) << "\n";
        std::cout << dir_.string() << "\n";
        return failures_.empty() ? 0 : 1;
    }

private:
    std::string command_;
    json config_;
    fs::path dir_;
    std::string started_;
    std::chrono::steady_clock::time_point clock_start_;
    std::vector<std::string> outputs_;
    json timings_ = json::object();
    std::vector<std::string> failures_;
};

ModelSpec model_from(const json& config) {
    if (!config.contains("model")) throw ConfigError("config needs a 'model' object");
    return model_spec_from_json_string(config.at("model").dump());
}

// family configs leave n unset; instantiate with the first swept size
ModelSpec family_from(const json& config, int first_n) {
    if (!config.contains("model")) throw ConfigError("config needs a 'model' object");
    json m = config.at("model");
    if (!m.contains("n")) m["n"] = first_n;
    return model_spec_from_json_string(m.dump());
}

GapCurveOptions curve_options(const json& config) {
    GapCurveOptions opts;
    opts.grid_points = config.value("grid_points", opts.grid_points);
    opts.detect_depth = config.value("detect_depth", opts.detect_depth);
    opts.kink_tol = config.value("kink_tol", opts.kink_tol);
    opts.refine_interval = config.value("refine_interval", opts.refine_interval);
    return opts;
}

std::vector<int> sizes_from(const json& config) {
    std::vector<int> sizes;
    if (config.contains("sizes")) {
        for (const auto& v : config.at("sizes")) sizes.push_back(v.get<int>());
    } else if (config.contains("n_from")) {
        const int from = config.at("n_from").get<int>();
        const int to = config.at("n_to").get<int>();
        const int step = config.value("n_step", 2);
        for (int n = from; n <= to; n += step) sizes.push_back(n);
    }
    if (sizes.empty()) throw ConfigError("config needs 'sizes' or 'n_from'/'n_to'");
    return sizes;
}

const char* kGapCurvePlot = R"PY(#!/usr/bin/env python3
"""Plot a gap curve CSV produced by qagap gap-curve."""
import csv, sys, pathlib
import matplotlib.pyplot as plt

path = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "../gap_curve.csv")
s, gap = [], []
with open(path) as f:
    for row in csv.DictReader(f):
        s.append(float(row["s"]))
        gap.append(float(row["gap"]))
plt.semilogy(s, gap)
plt.xlabel("s")
plt.ylabel("gap")
plt.tight_layout()
plt.savefig("gap_curve.png", dpi=160)
)PY";

const char* kSweepPlot = R"PY(#!/usr/bin/env python3
"""Plot minimum-gap scaling from qagap size-sweep output."""
import csv, sys, pathlib
import matplotlib.pyplot as plt

path = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "../sweep.csv")
n, d = [], []
with open(path) as f:
    for row in csv.DictReader(f):
        n.append(float(row["n"]))
        d.append(float(row["min_gap"]))
fig, (ax1, ax2) = plt.subplots(1, 2, figsize=(8, 3.2))
ax1.semilogy(n, d, "o-")
ax1.set_xlabel("n")
ax1.set_ylabel("min gap")
ax2.loglog(n, d, "o-")
ax2.set_xlabel("n")
plt.tight_layout()
plt.savefig("sweep.png", dpi=160)
)PY";

const char* kPotentialPlot = R"PY(#!/usr/bin/env python3
"""Contour plot of the semiclassical potential surface."""
import csv, sys, pathlib
import numpy as np
import matplotlib.pyplot as plt

path = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "../potential.csv")
rows = list(csv.DictReader(open(path)))
z1 = sorted({float(r["z1"]) for r in rows})
z2 = sorted({float(r["z2"]) for r in rows})
v = np.zeros((len(z1), len(z2)))
for r in rows:
    v[z1.index(float(r["z1"])), z2.index(float(r["z2"]))] = float(r["value"])
plt.contourf(z2, z1, v, levels=40)
plt.colorbar(label="V")
plt.xlabel("z2")
plt.ylabel("z1")
plt.tight_layout()
plt.savefig("potential.png", dpi=160)
)PY";

const char* kNoisePlot = R"PY(#!/usr/bin/env python3
"""Plot noisy minimum-gap percentiles with bootstrap intervals."""
import csv, sys, pathlib, collections
import matplotlib.pyplot as plt

path = pathlib.Path(sys.argv[1] if len(sys.argv) > 1 else "../noise.csv")
data = collections.defaultdict(list)
with open(path) as f:
    for row in csv.DictReader(f):
        data[float(row["level"])].append(
            (int(row["n"]), float(row["value"]), float(row["ci_low"]), float(row["ci_high"])))
for level, rows in sorted(data.items()):
    rows.sort()
    n = [r[0] for r in rows]
    v = [r[1] for r in rows]
    lo = [r[1] - r[2] for r in rows]
    hi = [r[3] - r[1] for r in rows]
    plt.errorbar(n, v, yerr=[lo, hi], marker="o", capsize=3, label=f"{level:g}%")
plt.yscale("log")
plt.xlabel("n")
plt.ylabel("min gap")
plt.legend()
plt.tight_layout()
plt.savefig("noise.png", dpi=160)
)PY";

int cmd_gap_curve(Run& run, int threads) {
    (void)threads;
    const ModelSpec spec = model_from(run.config());
    const GapCurveOptions opts = curve_options(run.config());
    const auto t0 = std::chrono::steady_clock::now();
    const GapCurve curve = gap_curve(spec, opts);
    run.timing("gap_curve",
               std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());

    auto csv = run.open_csv("gap_curve.csv", "s,gap,e0,sector");
    for (const auto& p : curve.samples)
        csv << fmt(p.s) << ',' << fmt(p.gap) << ',' << fmt(p.e0) << ',' << curve.sector << "\n";
    auto mcsv = run.open_csv("minima.csv", "s,gap,refinement_width,level_crossing");
    for (const auto& m : curve.minima)
        mcsv << fmt(m.s) << ',' << fmt(m.gap) << ',' << fmt(m.refinement_width) << ','
             << (m.level_crossing ? 1 : 0) << "\n";

    if (run.config().contains("profile_at")) {
        auto pcsv = run.open_csv("profiles.csv", "s,index,label,amplitude");
        for (const auto& sv : run.config().at("profile_at")) {
            const double s = sv.get<double>();
            const WavefunctionProfile prof = ground_profile(spec, s);
            for (Eigen::Index i = 0; i < prof.amplitudes.size(); ++i)
                pcsv << fmt(s) << ',' << i << ',' << prof.basis_labels[static_cast<std::size_t>(i)]
                     << ',' << fmt(prof.amplitudes[i]) << "\n";
        }
    }

    json summary;
    summary["sector"] = curve.sector;
    summary["warnings"] = curve.warnings;
    if (const LocalMinimum* g = curve.global_minimum()) {
        summary["min_gap"] = g->gap;
        summary["s_at_min"] = g->s;
    }
    run.write_json("summary.json", summary);
    run.write_plot_script("plot_gap_curve.py", kGapCurvePlot);
    return 0;
}

LambdaScanOptions scan_options(const json& config) {
    LambdaScanOptions opts;
    opts.lambda_min = config.value("lambda_min", opts.lambda_min);
    opts.lambda_max = config.value("lambda_max", opts.lambda_max);
    opts.coarse_step = config.value("coarse_step", opts.coarse_step);
    if (config.contains("refine_steps")) {
        opts.refine_steps.clear();
        for (const auto& v : config.at("refine_steps"))
            opts.refine_steps.push_back(v.get<double>());
    }
    opts.extend_range = config.value("extend_range", opts.extend_range);
    opts.curve = curve_options(config);
    return opts;
}

int cmd_size_sweep(Run& run, int threads) {
    const json& config = run.config();
    const std::vector<int> sizes = sizes_from(config);
    ModelSpec family = family_from(config, sizes.front());
    const bool optimize = config.value("optimize_lambda", false);

    struct Row {
        int n = 0;
        double lambda = 0.0, uncertainty = 0.0, dmin = 0.0, s_at = 0.0;
        int deep_minima = 0;
        std::string error;
        double seconds = 0.0;
    };
    std::vector<Row> rows(sizes.size());
    std::mutex log_mutex;

    parallel_for(static_cast<int>(sizes.size()), threads, [&](int k) {
        Row& row = rows[static_cast<std::size_t>(k)];
        row.n = sizes[static_cast<std::size_t>(k)];
        const auto t0 = std::chrono::steady_clock::now();
        try {
            ModelSpec spec = family;
            spec.n = row.n;
            if (spec.kind == ModelKind::RingIsing && config.contains("instance_pattern")) {
                char buf[512];
                std::snprintf(buf, sizeof buf,
                              config.at("instance_pattern").get<std::string>().c_str(), row.n);
                spec.instance = read_instance_file(buf);
                spec.instance_path = buf;
            }
            if (optimize) {
                const LambdaScan scan = optimize_lambda(spec, scan_options(config));
                row.lambda = scan.lambda_opt;
                row.uncertainty = scan.uncertainty;
                row.dmin = scan.min_gap_at_opt;
                row.s_at = scan.s_at_opt;
            } else {
                row.lambda = spec.lambda;
                const MinGapResult mg = min_gap(spec, curve_options(config));
                row.dmin = mg.gap;
                row.s_at = mg.s;
                for (const auto& m : mg.curve.minima)
                    if (m.gap < 10.0 * mg.gap || m.gap < 0.1) ++row.deep_minima;
            }
        } catch (const std::exception& e) {
            row.error = e.what();
        }
        row.seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::lock_guard<std::mutex> lock(log_mutex);
        std::cerr << "  n=" << row.n << " done in " << row.seconds << "s\n";
    });

    auto csv = run.open_csv("sweep.csv",
                            "n,lambda,lambda_uncertainty,min_gap,s_at_min,local_minima");
    std::vector<double> fit_n, fit_g;
    for (const auto& row : rows) {
        if (!row.error.empty()) {
            run.fail("n=" + std::to_string(row.n) + ": " + row.error);
            continue;
        }
        csv << row.n << ',' << fmt(row.lambda) << ',' << fmt(row.uncertainty) << ','
            << fmt(row.dmin) << ',' << fmt(row.s_at) << ',' << row.deep_minima << "\n";
        run.timing("n" + std::to_string(row.n), row.seconds);
        if (row.dmin > 0.0) {
            fit_n.push_back(row.n);
            fit_g.push_back(row.dmin);
        }
    }

    if (config.value("fit", true) && fit_n.size() >= 4) {
        const FitResult fit = fit_scaling(fit_n, fit_g);
        json fj;
        fj["exp"] = {{"prefactor", fit.exp_prefactor},
                     {"rate", fit.exp_rate},
                     {"rss", fit.exp_rss}};
        fj["poly"] = {{"prefactor", fit.poly_prefactor},
                      {"exponent", fit.poly_exponent},
                      {"rss", fit.poly_rss}};
        fj["preferred"] = fit.preferred;
        run.write_json("fit.json", fj);
    }
    run.write_plot_script("plot_sweep.py", kSweepPlot);
    return 0;
}

int cmd_lambda_scan(Run& run, int threads) {
    (void)threads;
    const ModelSpec family = model_from(run.config());
    const LambdaScan scan = optimize_lambda(family, scan_options(run.config()));
    auto csv = run.open_csv("scan.csv", "lambda,min_gap");
    for (std::size_t i = 0; i < scan.lambdas.size(); ++i)
        csv << fmt(scan.lambdas[i]) << ',' << fmt(scan.min_gaps[i]) << "\n";
    json j;
    j["lambda_opt"] = scan.lambda_opt;
    j["uncertainty"] = scan.uncertainty;
    j["min_gap"] = scan.min_gap_at_opt;
    j["s_at_opt"] = scan.s_at_opt;
    j["degenerate"] = scan.degenerate;
    j["range_extended"] = scan.range_extended;
    run.write_json("scan.json", j);
    return 0;
}

int cmd_potential(Run& run, int threads) {
    (void)threads;
    const json& config = run.config();
    const double s = config.at("s").get<double>();
    const double lambda = config.value("lambda", 0.0);
    const double h1 = config.value("h1", 1.0);
    const double h2 = config.value("h2", 0.49);
    const int resolution = config.value("resolution", 129);
    const PotentialSurface surf = surface_minima(s, lambda, h1, h2, resolution);

    auto csv = run.open_csv("potential.csv", "z1,z2,value");
    for (int i = 0; i < surf.resolution; ++i)
        for (int j = 0; j < surf.resolution; ++j) {
            const double z1 = -1.0 + 2.0 * i / (surf.resolution - 1);
            const double z2 = -1.0 + 2.0 * j / (surf.resolution - 1);
            csv << fmt(z1) << ',' << fmt(z2) << ','
                << fmt(surf.values[static_cast<std::size_t>(i) * surf.resolution + j]) << "\n";
        }
    json j;
    j["double_minimum"] = surf.double_minimum;
    j["barrier"] = surf.barrier;
    j["minima"] = json::array();
    for (const auto& m : surf.minima)
        j["minima"].push_back({{"z1", m.z1}, {"z2", m.z2}, {"value", m.value}});
    run.write_json("potential.json", j);
    run.write_plot_script("plot_potential.py", kPotentialPlot);
    return 0;
}

int cmd_pt(Run& run, int threads) {
    (void)threads;
    const json& config = run.config();
    const IsingInstance inst = read_instance_file(config.at("instance").get<std::string>());
    const double lambda = config.value("lambda", -1.0);
    const PTReport report = first_order_pt(inst, lambda);

    json j;
    j["lambda"] = lambda;
    j["ground_energy"] = report.ground_energy;
    j["excited_energy"] = report.excited_energy;
    j["ground_basis"] = report.ground_basis;
    j["excited_basis"] = report.excited_basis;
    j["excited_orbit_sizes"] = report.excited_orbit_sizes;
    j["ground_eigenvalues"] = std::vector<double>(
        report.ground_eigenvalues.data(),
        report.ground_eigenvalues.data() + report.ground_eigenvalues.size());
    j["excited_eigenvalues"] = std::vector<double>(
        report.excited_eigenvalues.data(),
        report.excited_eigenvalues.data() + report.excited_eigenvalues.size());
    json vecs = json::array();
    for (Eigen::Index c = 0; c < report.excited_eigenvectors.cols(); ++c) {
        json col = json::array();
        for (Eigen::Index r = 0; r < report.excited_eigenvectors.rows(); ++r)
            col.push_back(report.excited_eigenvectors(r, c));
        vecs.push_back(col);
    }
    j["excited_eigenvectors"] = vecs;
    j["crossing_estimate"] = report.crossing_estimate;
    j["ambiguous"] = report.ambiguous;
    run.write_json("pt.json", j);
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_noise(Run& run, int threads) {
    const json& config = run.config();
    const std::vector<int> sizes = sizes_from(config);
    ModelSpec family = family_from(config, sizes.front());

    NoiseEnsembleOptions opts;
    opts.sigma = config.value("sigma", opts.sigma);
    opts.realizations = config.value("realizations", opts.realizations);
    opts.bootstrap = config.value("bootstrap", opts.bootstrap);
    opts.seed = config.value("seed", opts.seed);
    opts.grid_points = config.value("grid_points", opts.grid_points);
    if (config.contains("percentiles")) {
        opts.percentile_levels.clear();
        for (const auto& v : config.at("percentiles"))
            opts.percentile_levels.push_back(v.get<double>());
    }
    opts.threads = threads;

    const NoiseEnsembleStats stats = noise_ensemble(family, sizes, opts);

    auto csv = run.open_csv("noise.csv", "n,level,value,ci_low,ci_high");
    auto rcsv = run.open_csv("realizations.csv", "n,realization,min_gap");
    json j;
    j["sigma"] = opts.sigma;
    j["realizations"] = opts.realizations;
    j["bootstrap"] = opts.bootstrap;
    j["seed"] = opts.seed;
    j["noiseless"] = json::object();
    for (const auto& row : stats.sizes) {
        for (std::size_t lv = 0; lv < opts.percentile_levels.size(); ++lv)
            csv << row.n << ',' << fmt(opts.percentile_levels[lv]) << ','
                << fmt(row.percentiles[lv]) << ',' << fmt(row.ci_low[lv]) << ','
                << fmt(row.ci_high[lv]) << "\n";
        for (std::size_t r = 0; r < row.min_gaps.size(); ++r)
            rcsv << row.n << ',' << r << ',' << fmt(row.min_gaps[r]) << "\n";
        j["noiseless"][std::to_string(row.n)] = row.noiseless_min_gap;
    }
    run.write_json("noise.json", j);
    run.write_plot_script("plot_noise.py", kNoisePlot);
    return 0;
}

int cmd_crossing(Run& run, int threads) {
    (void)threads;
    const ModelSpec spec = model_from(run.config());
    const GapCurveOptions opts = curve_options(run.config());
    const std::vector<double> grid = uniform_grid(run.config().value("grid_points", 801));
    const std::vector<CrossingPoint> prof = sector_crossing_profile(spec, grid, opts);
    auto csv = run.open_csv("crossing.csv", "s,sector_minus_global");
    for (const auto& p : prof) csv << fmt(p.s) << ',' << fmt(p.sector_minus_global) << "\n";
    json j;
    j["nonzero_intervals"] = count_nonzero_intervals(prof);
    run.write_json("crossing.json", j);
    return 0;
}

int cmd_fit(Run& run, int threads) {
    (void)threads;
    const json& config = run.config();
    std::vector<double> ns, gaps;
    if (config.contains("points")) {
        for (const auto& p : config.at("points")) {
            ns.push_back(p.at(0).get<double>());
            gaps.push_back(p.at(1).get<double>());
        }
    } else if (config.contains("input_csv")) {
        std::ifstream f(config.at("input_csv").get<std::string>());
        if (!f) throw ConfigError("cannot open input_csv");
        std::string line;
        std::getline(f, line);
        std::vector<std::string> cols;
        {
            std::istringstream hs(line);
            std::string c;
            while (std::getline(hs, c, ',')) cols.push_back(c);
        }
        std::size_t gap_col = 1;
        for (std::size_t i = 0; i < cols.size(); ++i)
            if (cols[i] == "min_gap" || cols[i] == "gap") gap_col = i;
        while (std::getline(f, line)) {
            std::istringstream ls(line);
            std::string cell;
            std::vector<std::string> cells;
            while (std::getline(ls, cell, ',')) cells.push_back(cell);
            if (cells.size() <= gap_col) continue;
            ns.push_back(std::stod(cells[0]));
            gaps.push_back(std::stod(cells[gap_col]));
        }
    } else {
        throw ConfigError("fit needs 'points' or 'input_csv'");
    }
    const FitResult fit = fit_scaling(ns, gaps);
    json j;
    j["exp"] = {{"prefactor", fit.exp_prefactor}, {"rate", fit.exp_rate}, {"rss", fit.exp_rss}};
    j["poly"] = {{"prefactor", fit.poly_prefactor},
                 {"exponent", fit.poly_exponent},
                 {"rss", fit.poly_rss}};
    j["preferred"] = fit.preferred;
    run.write_json("fit.json", j);
    std::cout << j.dump(2) << "\n";
    return 0;
}

int cmd_validate_instance(Run& run, int threads) {
    (void)threads;
    const std::string path = run.config().at("instance").get<std::string>();
    const IsingInstance inst = read_instance_file(path);
    const InstanceDiagnostics d = validate_instance(inst);
    json j;
    j["instance"] = path;
    j["ok"] = d.ok;
    j["violations"] = d.violations;
    j["notes"] = d.notes;
    j["ground_degeneracy"] = d.ground_degeneracy;
    j["ground_energy"] = d.ground_energy;
    j["first_excited_gap"] = d.first_excited_gap;
    j["first_excited_degeneracy"] = d.first_excited_degeneracy;
    json gs = json::array();
    for (std::uint64_t g : d.ground_states) {
        std::string b(static_cast<std::size_t>(inst.n), '0');
        for (int i = 0; i < inst.n; ++i)
            if ((g >> i) & 1) b[static_cast<std::size_t>(i)] = '1';
        gs.push_back(b);
    }
    j["ground_states"] = gs;
    run.write_json("validation.json", j);
    std::cout << j.dump(2) << "\n";
    if (!d.ok) run.fail("instance validation failed");
    return 0;
}

json apply_overrides(json config, const std::vector<std::string>& sets) {
    for (const std::string& kv : sets) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos) throw ConfigError("override must be key=value: " + kv);
        const std::string path = kv.substr(0, eq);
        const std::string value = kv.substr(eq + 1);
        json* node = &config;
        std::istringstream ps(path);
        std::string part;
        std::vector<std::string> parts;
        while (std::getline(ps, part, '.')) parts.push_back(part);
        for (std::size_t i = 0; i + 1 < parts.size(); ++i) node = &(*node)[parts[i]];
        json parsed;
        try {
            parsed = json::parse(value);
        } catch (...) {
            parsed = value;
        }
        (*node)[parts.back()] = parsed;
    }
    return config;
}

}  // namespace

int run_cli(const std::vector<std::string>& args) {
    CLI::App app{"spectral-gap toolkit for catalyzed adiabatic interpolations"};
    app.set_version_flag("--version", kVersion);
    app.require_subcommand(1);

    std::string config_path, out_dir;
    int threads = 1;
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::vector<std::string> sets;

    app.add_option("--config", config_path, "JSON config file (or a manifest to re-run)");
    app.add_option("--out", out_dir, "output directory (default runs/<timestamp>-<command>)");
    app.add_option("--threads", threads, "worker pool size for independent jobs");
    app.add_option("--seed", seed, "seed override for noise ensembles")
        ->each([&seed_given](const std::string&) { seed_given = true; });
    app.add_option("--set", sets, "config override as dotted.key=value (repeatable)");

    struct Command {
        const char* name;
        const char* help;
        int (*fn)(Run&, int);
    };
    const Command commands[] = {
        {"gap-curve", "gap along the interpolation with refined minima", cmd_gap_curve},
        {"size-sweep", "minimum gap vs n with optional lambda optimization", cmd_size_sweep},
        {"lambda-scan", "maximize the minimum gap over the catalyst strength",
         cmd_lambda_scan},
        {"potential", "semiclassical potential surface and its minima", cmd_potential},
        {"pt", "first-order perturbation theory at s=1 for a ring instance", cmd_pt},
        {"noise", "noisy-field ensembles of the minimum gap", cmd_noise},
        {"crossing", "sector ground energy against the global ground energy", cmd_crossing},
        {"fit", "exponential and polynomial scaling fits", cmd_fit},
        {"validate-instance", "structural and degeneracy checks on an instance file",
         cmd_validate_instance},
    };
    for (const auto& c : commands) app.add_subcommand(c.name, c.help)->fallthrough();

    std::vector<const char*> argv;
    argv.push_back("qagap");
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), const_cast<char**>(argv.data()));
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    try {
        json config = json::object();
        if (!config_path.empty()) {
            std::ifstream f(config_path);
            if (!f) throw ConfigError("cannot open config: " + config_path);
            config = json::parse(f);
            if (config.contains("resolved_config"))
                config = config.at("resolved_config");  // manifest re-run
        }
        config = apply_overrides(std::move(config), sets);
        if (seed_given) config["seed"] = seed;

        for (const auto& c : commands) {
            if (!app.get_subcommand(c.name)->parsed()) continue;
            const fs::path dir = out_dir.empty()
                                     ? fs::path("runs") / (timestamp_slug() + "-" + c.name)
                                     : fs::path(out_dir);
            Run run(c.name, config, dir);
            try {
                c.fn(run, threads);
            } catch (const std::exception& e) {
                run.fail(e.what());
            }
            return run.finish();
        }
        throw ConfigError("no subcommand selected");
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

}  // namespace qagap
