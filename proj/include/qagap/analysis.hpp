#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "qagap/ising.hpp"
#include "qagap/model_spec.hpp"
#include "qagap/operator_matrix.hpp"

namespace qagap {

/// Semiclassical potential of the two-spin model over magnetization
/// densities z = 2M/(n/2) in [-1, 1]^2.
double villain_potential(double z1, double z2, double s, double lambda, double h1 = 1.0,
                         double h2 = 0.49);

struct PotentialMinimum {
    double z1, z2, value;
};

struct PotentialSurface {
    int resolution = 0;
    double s = 0.0, lambda = 0.0, h1 = 1.0, h2 = 0.49;
    std::vector<double> values;  // row-major over (z1, z2)
    std::vector<PotentialMinimum> minima;  // ascending by value
    bool double_minimum = false;
    double barrier = 0.0;  // saddle height above the lower of two minima
};

/// Grid scan plus coordinate-descent polish; classifies single-minimum vs
/// barrier-separated landscapes and reports the connecting saddle height.
PotentialSurface surface_minima(double s, double lambda, double h1, double h2,
                                int resolution = 129);

struct PTReport {
    double ground_energy = 0.0;
    double excited_energy = 0.0;
    std::vector<std::string> ground_basis;    // bitstrings, x1..xn convention
    std::vector<std::string> excited_basis;
    std::vector<int> excited_orbit_sizes;
    DenseMatrix ground_matrix;    // V projected on the ground manifold
    DenseMatrix excited_matrix;
    Vector ground_eigenvalues;
    Vector excited_eigenvalues;
    DenseMatrix excited_eigenvectors;  // columns, ascending eigenvalue
    double crossing_estimate = 0.0;    // first-order s where levels meet; 0 if none
    bool ambiguous = false;            // near-degeneracy within 10x tolerance
};

/// First-order degenerate perturbation theory at s = 1 for the ring model,
/// with V = -sum sigma^x + lambda sum_<ij> sigma^x sigma^x projected on the
/// in-sector ground and first-excited manifolds.
PTReport first_order_pt(const IsingInstance& instance, double lambda);

struct FitResult {
    std::vector<double> n_values;
    std::vector<double> gaps;
    double exp_prefactor = 0.0, exp_rate = 0.0;    // a * exp(-b n)
    double poly_prefactor = 0.0, poly_exponent = 0.0;  // a * n^-b
    double exp_rss = 0.0, poly_rss = 0.0;          // on log-transformed data
    std::string preferred;  // "exp" | "poly" | "indistinguishable"
};

/// Least squares of log(gap) against n (exponential) and log n (polynomial);
/// preference requires a residual ratio above 4.
FitResult fit_scaling(const std::vector<double>& n_values, const std::vector<double>& gaps);

struct NoiseEnsembleOptions {
    double sigma = 1e-2;
    int realizations = 1000;
    std::uint64_t seed = 0;
    int bootstrap = 1000;
    std::vector<double> percentile_levels = {5, 25, 50, 75, 95};
    int grid_points = 101;  // ensemble gap curves run on a lighter grid
    int threads = 1;        // realizations are independent jobs
};

struct NoiseSizeStats {
    int n = 0;
    std::vector<double> min_gaps;            // one per realization
    std::vector<double> percentiles;         // per requested level
    std::vector<double> ci_low, ci_high;     // 95% bootstrap intervals
    double noiseless_min_gap = 0.0;          // sigma = 0 reference, same path
};

struct NoiseEnsembleStats {
    NoiseEnsembleOptions options;
    std::vector<NoiseSizeStats> sizes;
};

/// Seed-deterministic ensembles of noisy minimum gaps in the full 2^n space.
NoiseEnsembleStats noise_ensemble(const ModelSpec& family, const std::vector<int>& sizes,
                                  const NoiseEnsembleOptions& opts);

/// Linear-interpolation percentile (level in [0, 100]) of a sample.
double percentile(std::vector<double> sample, double level);

}  // namespace qagap
