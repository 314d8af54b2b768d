#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "qagap/hamiltonians.hpp"
#include "qagap/model_spec.hpp"
#include "qagap/operator_matrix.hpp"

namespace qagap {

struct SolverOptions {
    Eigen::Index dense_threshold = 4096;  // dense path at or below this dimension
    double residual_tol = 1e-12;          // relative to the operator norm estimate
    int max_iteration_factor = 10;        // Krylov cap: factor * sqrt(dim) block steps
    bool force_iterative = false;
    bool force_dense = false;
    bool want_vectors = true;
    const DenseMatrix* warm_start = nullptr;  // dim x k seed block for the Krylov path
};

struct LowestTwo {
    double e0 = 0.0;
    double e1 = 0.0;
    Vector ground;   // sign convention: largest-magnitude amplitude positive
    Vector excited;
    int iterations = 0;  // 0 on the dense path
    double gap() const { return e1 - e0; }
};

/// Two smallest eigenvalues of a real symmetric operator. Dense
/// diagonalization at or below opts.dense_threshold, block Lanczos (block 2,
/// full reorthogonalization) above. Throws ConvergenceError when the Krylov
/// iteration exhausts its budget with residuals above tolerance.
LowestTwo lowest_two(const LinearMap& op, const SolverOptions& opts = {});

struct LocalMinimum {
    double s = 0.0;
    double gap = 0.0;
    double refinement_width = 0.0;
    bool level_crossing = false;  // gap below 1e-13: crossing, not avoided
};

struct GapSample {
    double s;
    double gap;
    double e0;
};

struct GapCurveOptions {
    int grid_points = 401;
    bool ring_tail_subgrid = true;  // extra geometric points on [0.9, 1]
    int detect_depth = 2;           // recursive zoom levels inside flagged windows
    double kink_tol = 0.25;         // slope-change threshold flagging hidden dips
    int submesh = 9;
    double refine_interval = 1e-6;  // guaranteed bracket width before adaptive stop
    double crossing_tol = 1e-13;
    Eigen::Index curve_dense_limit = 600;  // iterative path above this during sweeps
    std::vector<double> seed_windows;      // extra candidate centers (lambda scans)
    SolverOptions solver;
};

struct GapCurve {
    ModelSpec model;
    std::string sector;
    std::vector<GapSample> samples;
    std::vector<LocalMinimum> minima;  // ascending in s
    std::vector<std::string> warnings;

    const LocalMinimum* global_minimum() const;
};

GapCurve gap_curve(const ModelSpec& spec, const GapCurveOptions& opts = {});
GapCurve gap_curve(const ModelSpec& spec, const std::vector<double>& grid,
                   const GapCurveOptions& opts = {});

/// Golden-section refinement of a bracketed minimum of `f'. The bracket
/// (left, mid, right) must satisfy f(mid) < min(f(left), f(right)).
/// Shrinks to opts-width 1e-6 and keeps going while the minimum value still
/// improves, down to a floor near machine resolution, so that exponentially
/// narrow avoided crossings are resolved to their true depth.
LocalMinimum refine_minimum(const std::function<double(double)>& f, double left,
                            double mid, double right, double guaranteed_width = 1e-6);

LocalMinimum refine_minimum(const ModelSpec& spec, double left, double mid, double right,
                            const GapCurveOptions& opts = {});

struct MinGapResult {
    double s = 0.0;
    double gap = 0.0;
    GapCurve curve;
};

MinGapResult min_gap(const ModelSpec& spec, const GapCurveOptions& opts = {});

struct WavefunctionProfile {
    std::vector<std::string> basis_labels;
    Vector amplitudes;  // unit norm, sign convention applied
    bool sign_convention_applied = true;
};

/// Ground-state profile at interpolation point u; p-even profiles are
/// expanded from the parity sector back to the full Dicke axis so node
/// counts run over M = -n/2..n/2.
WavefunctionProfile ground_profile(const ModelSpec& spec, double u);

/// Strict sign changes between consecutive amplitudes; entries below the
/// neutral tolerance in magnitude are sign-neutral (the sign carries across
/// them). The default 1e-12 counts every resolvable node; pass a visibility
/// scale (relative to the peak amplitude) to reproduce plotted node counts.
int count_nodes(const WavefunctionProfile& profile, double neutral_tol = 1e-12);

/// <HW> = n/2 - <E0| Sz_total |E0> in the evolution sector.
double hamming_weight_expectation(const ModelSpec& spec, double u);

struct CrossingPoint {
    double s;
    double sector_minus_global;  // E0_sector - E0_parent, clipped at zero
};

/// E0(sector) - E0(parent space) along the interpolation; requires a model
/// whose evolution sector is a strict subspace (p even, or ring-ising).
std::vector<CrossingPoint> sector_crossing_profile(const ModelSpec& spec,
                                                   const std::vector<double>& grid,
                                                   const GapCurveOptions& opts = {});

/// Number of maximal runs with difference above `tol'.
int count_nonzero_intervals(const std::vector<CrossingPoint>& profile, double tol = 1e-10);

std::vector<double> uniform_grid(int points);
std::vector<double> default_grid(const ModelSpec& spec, const GapCurveOptions& opts);

}  // namespace qagap
