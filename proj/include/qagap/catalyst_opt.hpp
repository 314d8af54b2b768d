#pragma once

#include <vector>

#include "qagap/spectral.hpp"

namespace qagap {

struct LambdaScanOptions {
    double lambda_min = 0.0;
    double lambda_max = 5.0;
    double coarse_step = 0.25;
    std::vector<double> refine_steps = {0.1, 0.025};
    bool extend_range = true;     // grow lambda_max while the argmax hugs it
    double extend_limit = 20.0;
    GapCurveOptions curve;
};

struct LambdaScan {
    ModelSpec family;             // lambda field ignored
    std::vector<double> lambdas;  // every evaluated point, sorted
    std::vector<double> min_gaps; // Delta_min(lambda), same order
    double lambda_opt = 0.0;
    double min_gap_at_opt = 0.0;
    double uncertainty = 0.0;     // half step at the finest refinement level
    double s_at_opt = 0.0;
    bool degenerate = false;      // every scanned gap was zero
    bool range_extended = false;
};

/// Maximize Delta_min over lambda: coarse scan, then local refinement around
/// every coarse local maximum. Minima windows found at one lambda seed the
/// search at its neighbors, so narrow dips stay visible across the scan.
LambdaScan optimize_lambda(const ModelSpec& family, const LambdaScanOptions& opts = {});

struct LambdaTrendRow {
    int n;
    double lambda_opt;
    double uncertainty;
    double min_gap;
};

struct LambdaTrend {
    std::vector<LambdaTrendRow> rows;
    bool strictly_increasing = false;
    bool plateau = false;  // bounded variation over the largest sizes
};

LambdaTrend lambda_opt_trend(const ModelSpec& family, const std::vector<int>& sizes,
                             const LambdaScanOptions& opts = {});

}  // namespace qagap
