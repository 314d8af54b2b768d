#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qagap/analysis.hpp"
#include "qagap/catalyst_opt.hpp"
#include "qagap/spectral.hpp"

namespace py = pybind11;
using namespace qagap;

namespace {

ModelSpec spec_from_json(const std::string& text) { return model_spec_from_json_string(text); }

GapCurveOptions curve_opts(int grid_points, int detect_depth) {
    GapCurveOptions opts;
    if (grid_points > 0) opts.grid_points = grid_points;
    if (detect_depth >= 0) opts.detect_depth = detect_depth;
    return opts;
}

}  // namespace

PYBIND11_MODULE(_qagap, m) {
    m.doc() = "spectral gaps of catalyzed adiabatic interpolations";

    py::class_<LocalMinimum>(m, "LocalMinimum")
        .def_readonly("s", &LocalMinimum::s)
        .def_readonly("gap", &LocalMinimum::gap)
        .def_readonly("refinement_width", &LocalMinimum::refinement_width)
        .def_readonly("level_crossing", &LocalMinimum::level_crossing);

    py::class_<GapCurve>(m, "GapCurve")
        .def_readonly("sector", &GapCurve::sector)
        .def_readonly("minima", &GapCurve::minima)
        .def_readonly("warnings", &GapCurve::warnings)
        .def_property_readonly("s", [](const GapCurve& c) {
            std::vector<double> v;
            for (const auto& p : c.samples) v.push_back(p.s);
            return v;
        })
        .def_property_readonly("gap", [](const GapCurve& c) {
            std::vector<double> v;
            for (const auto& p : c.samples) v.push_back(p.gap);
            return v;
        })
        .def_property_readonly("e0", [](const GapCurve& c) {
            std::vector<double> v;
            for (const auto& p : c.samples) v.push_back(p.e0);
            return v;
        });

    m.def(
        "gap_curve",
        [](const std::string& spec_json, int grid_points, int detect_depth) {
            return gap_curve(spec_from_json(spec_json), curve_opts(grid_points, detect_depth));
        },
        py::arg("spec_json"), py::arg("grid_points") = 0, py::arg("detect_depth") = -1);

    m.def(
        "min_gap",
        [](const std::string& spec_json, int grid_points) {
            const MinGapResult r =
                min_gap(spec_from_json(spec_json), curve_opts(grid_points, -1));
            return py::make_tuple(r.s, r.gap);
        },
        py::arg("spec_json"), py::arg("grid_points") = 0);

    m.def(
        "ground_profile",
        [](const std::string& spec_json, double s) {
            const WavefunctionProfile prof = ground_profile(spec_from_json(spec_json), s);
            return py::make_tuple(prof.basis_labels, Vector(prof.amplitudes));
        },
        py::arg("spec_json"), py::arg("s"));

    m.def(
        "count_nodes",
        [](const Vector& amplitudes, double neutral_tol) {
            WavefunctionProfile prof;
            prof.amplitudes = amplitudes;
            return count_nodes(prof, neutral_tol);
        },
        py::arg("amplitudes"), py::arg("neutral_tol") = 1e-12);

    m.def(
        "hamming_weight_expectation",
        [](const std::string& spec_json, double s) {
            return hamming_weight_expectation(spec_from_json(spec_json), s);
        },
        py::arg("spec_json"), py::arg("s"));

    m.def(
        "sector_crossing_profile",
        [](const std::string& spec_json, int grid_points) {
            const auto prof =
                sector_crossing_profile(spec_from_json(spec_json), uniform_grid(grid_points));
            std::vector<double> s, d;
            for (const auto& p : prof) {
                s.push_back(p.s);
                d.push_back(p.sector_minus_global);
            }
            return py::make_tuple(s, d);
        },
        py::arg("spec_json"), py::arg("grid_points") = 801);

    m.def(
        "optimize_lambda",
        [](const std::string& spec_json, double lambda_min, double lambda_max,
           double coarse_step) {
            LambdaScanOptions opts;
            opts.lambda_min = lambda_min;
            opts.lambda_max = lambda_max;
            opts.coarse_step = coarse_step;
            const LambdaScan scan = optimize_lambda(spec_from_json(spec_json), opts);
            py::dict out;
            out["lambda_opt"] = scan.lambda_opt;
            out["uncertainty"] = scan.uncertainty;
            out["min_gap"] = scan.min_gap_at_opt;
            out["lambdas"] = scan.lambdas;
            out["min_gaps"] = scan.min_gaps;
            return out;
        },
        py::arg("spec_json"), py::arg("lambda_min") = 0.0, py::arg("lambda_max") = 5.0,
        py::arg("coarse_step") = 0.25);

    m.def("villain_potential", &villain_potential, py::arg("z1"), py::arg("z2"), py::arg("s"),
          py::arg("lambda_"), py::arg("h1") = 1.0, py::arg("h2") = 0.49);

    m.def(
        "surface_minima",
        [](double s, double lambda, double h1, double h2, int resolution) {
            const PotentialSurface surf = surface_minima(s, lambda, h1, h2, resolution);
            py::dict out;
            out["double_minimum"] = surf.double_minimum;
            out["barrier"] = surf.barrier;
            py::list minima;
            for (const auto& mn : surf.minima)
                minima.append(py::make_tuple(mn.z1, mn.z2, mn.value));
            out["minima"] = minima;
            return out;
        },
        py::arg("s"), py::arg("lambda_"), py::arg("h1") = 1.0, py::arg("h2") = 0.49,
        py::arg("resolution") = 129);

    m.def(
        "first_order_pt",
        [](const std::string& instance_path, double lambda) {
            const PTReport r = first_order_pt(read_instance_file(instance_path), lambda);
            py::dict out;
            out["ground_energy"] = r.ground_energy;
            out["excited_energy"] = r.excited_energy;
            out["excited_basis"] = r.excited_basis;
            out["excited_orbit_sizes"] = r.excited_orbit_sizes;
            out["ground_eigenvalues"] = Vector(r.ground_eigenvalues);
            out["excited_eigenvalues"] = Vector(r.excited_eigenvalues);
            out["excited_eigenvectors"] = DenseMatrix(r.excited_eigenvectors);
            out["crossing_estimate"] = r.crossing_estimate;
            return out;
        },
        py::arg("instance_path"), py::arg("lambda_"));

    m.def(
        "fit_scaling",
        [](const std::vector<double>& n, const std::vector<double>& gaps) {
            const FitResult fit = fit_scaling(n, gaps);
            py::dict out;
            out["exp_prefactor"] = fit.exp_prefactor;
            out["exp_rate"] = fit.exp_rate;
            out["poly_prefactor"] = fit.poly_prefactor;
            out["poly_exponent"] = fit.poly_exponent;
            out["preferred"] = fit.preferred;
            return out;
        },
        py::arg("n"), py::arg("gaps"));

    m.def(
        "validate_instance",
        [](const std::string& path) {
            const InstanceDiagnostics d = validate_instance(read_instance_file(path));
            py::dict out;
            out["ok"] = d.ok;
            out["violations"] = d.violations;
            out["ground_degeneracy"] = d.ground_degeneracy;
            out["first_excited_degeneracy"] = d.first_excited_degeneracy;
            out["first_excited_gap"] = d.first_excited_gap;
            return out;
        },
        py::arg("path"));

    m.def(
        "noise_ensemble",
        [](const std::string& spec_json, const std::vector<int>& sizes, double sigma,
           int realizations, std::uint64_t seed, int bootstrap, int grid_points) {
            NoiseEnsembleOptions opts;
            opts.sigma = sigma;
            opts.realizations = realizations;
            opts.seed = seed;
            opts.bootstrap = bootstrap;
            opts.grid_points = grid_points;
            const NoiseEnsembleStats stats =
                noise_ensemble(spec_from_json(spec_json), sizes, opts);
            py::list rows;
            for (const auto& row : stats.sizes) {
                py::dict r;
                r["n"] = row.n;
                r["min_gaps"] = row.min_gaps;
                r["percentiles"] = row.percentiles;
                r["ci_low"] = row.ci_low;
                r["ci_high"] = row.ci_high;
                r["noiseless_min_gap"] = row.noiseless_min_gap;
                rows.append(r);
            }
            return rows;
        },
        py::arg("spec_json"), py::arg("sizes"), py::arg("sigma") = 1e-2,
        py::arg("realizations") = 100, py::arg("seed") = 0, py::arg("bootstrap") = 200,
        py::arg("grid_points") = 101);
}
