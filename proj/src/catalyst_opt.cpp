#include "qagap/catalyst_opt.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qagap/errors.hpp"

namespace qagap {

namespace {

struct Eval {
    double gap;
    double s;
    std::vector<double> minima_s;
};

class ScanDriver {
public:
    ScanDriver(const ModelSpec& family, const LambdaScanOptions& opts)
        : family_(family), opts_(opts) {}

    const Eval& at(double lambda) {
        const double key = std::round(lambda * 1e9) / 1e9;
        auto it = cache_.find(key);
        if (it != cache_.end()) return it->second;

        ModelSpec spec = family_;
        spec.lambda = key;
        if (spec.kind == ModelKind::PSpinAltInterp) spec.lambda_star = key;
        GapCurveOptions copts = opts_.curve;
        copts.seed_windows = seed_windows_;
        const MinGapResult r = min_gap(spec, copts);

        Eval e;
        e.gap = r.gap;
        e.s = r.s;
        for (const auto& m : r.curve.minima) e.minima_s.push_back(m.s);
        seed_windows_ = e.minima_s;
        return cache_.emplace(key, std::move(e)).first->second;
    }

    const std::map<double, Eval>& cache() const { return cache_; }

private:
    ModelSpec family_;
    LambdaScanOptions opts_;
    std::vector<double> seed_windows_;
    std::map<double, Eval> cache_;
};

}  // namespace

LambdaScan optimize_lambda(const ModelSpec& family, const LambdaScanOptions& opts) {
    if (!(opts.coarse_step > 0.0)) throw InvalidModelError("coarse step must be positive");
    if (!(opts.lambda_max > opts.lambda_min))
        throw InvalidModelError("lambda range must be non-empty");

    ScanDriver driver(family, opts);
    LambdaScan scan;
    scan.family = family;

    double lo = opts.lambda_min;
    double hi = opts.lambda_max;

    // coarse pass, scanning upward so each lambda seeds the next
    std::vector<double> coarse;
    for (double l = lo; l <= hi + 1e-12; l += opts.coarse_step) coarse.push_back(l);
    for (double l : coarse) driver.at(l);

    auto argmax_of = [&driver](const std::vector<double>& ls) {
        double best_l = ls.front();
        double best_g = -1.0;
        for (double l : ls) {
            const double g = driver.at(l).gap;
            if (g > best_g + 1e-300) {
                best_g = g;
                best_l = l;
            }
        }
        return std::pair<double, double>(best_l, best_g);
    };

    while (opts.extend_range && hi < opts.extend_limit &&
           argmax_of(coarse).first >= hi - 0.5 * opts.coarse_step) {
        const double new_hi = std::min(opts.extend_limit, hi + 10 * opts.coarse_step);
        for (double l = hi + opts.coarse_step; l <= new_hi + 1e-12; l += opts.coarse_step)
            coarse.push_back(l);
        hi = new_hi;
        scan.range_extended = true;
        for (double l : coarse) driver.at(l);
    }

    // refine around every coarse local maximum, not only the global one
    std::vector<double> centers;
    for (std::size_t i = 0; i < coarse.size(); ++i) {
        const double g = driver.at(coarse[i]).gap;
        const double gl = i > 0 ? driver.at(coarse[i - 1]).gap : -1.0;
        const double gr = i + 1 < coarse.size() ? driver.at(coarse[i + 1]).gap : -1.0;
        if (g >= gl && g >= gr) centers.push_back(coarse[i]);
    }

    double finest = opts.coarse_step;
    for (double step : opts.refine_steps) {
        std::vector<double> next_centers;
        for (double c : centers) {
            std::vector<double> local;
            for (double l = std::max(lo, c - finest); l <= std::min(hi, c + finest) + 1e-12;
                 l += step)
                local.push_back(std::round(l * 1e9) / 1e9);
            for (double l : local) driver.at(l);
            next_centers.push_back(argmax_of(local).first);
        }
        centers = next_centers;
        std::sort(centers.begin(), centers.end());
        centers.erase(std::unique(centers.begin(), centers.end()), centers.end());
        finest = step;
    }

    double best_l = lo, best_g = -1.0;
    for (const auto& [l, e] : driver.cache()) {
        if (e.gap > best_g + 1e-12 * std::max(1.0, best_g)) {
            best_g = e.gap;
            best_l = l;  // ties break toward smaller lambda by map order
        }
        scan.lambdas.push_back(l);
        scan.min_gaps.push_back(e.gap);
    }

    scan.lambda_opt = best_l;
    scan.min_gap_at_opt = best_g;
    scan.s_at_opt = driver.at(best_l).s;
    scan.uncertainty = 0.5 * finest;
    scan.degenerate = best_g <= 0.0;
    return scan;
}

LambdaTrend lambda_opt_trend(const ModelSpec& family, const std::vector<int>& sizes,
                             const LambdaScanOptions& opts) {
    if (sizes.size() < 3) throw InvalidModelError("lambda_opt_trend needs at least 3 sizes");
    LambdaTrend trend;
    for (int n : sizes) {
        ModelSpec spec = family;
        spec.n = n;
        const LambdaScan scan = optimize_lambda(spec, opts);
        trend.rows.push_back({n, scan.lambda_opt, scan.uncertainty, scan.min_gap_at_opt});
    }
    trend.strictly_increasing = true;
    for (std::size_t i = 1; i < trend.rows.size(); ++i)
        trend.strictly_increasing =
            trend.strictly_increasing && trend.rows[i].lambda_opt > trend.rows[i - 1].lambda_opt;
    if (trend.rows.size() >= 3) {
        const auto& a = trend.rows[trend.rows.size() - 3];
        const auto& b = trend.rows[trend.rows.size() - 2];
        const auto& c = trend.rows[trend.rows.size() - 1];
        const double span = std::max({a.lambda_opt, b.lambda_opt, c.lambda_opt}) -
                            std::min({a.lambda_opt, b.lambda_opt, c.lambda_opt});
        const double mean = (a.lambda_opt + b.lambda_opt + c.lambda_opt) / 3.0;
        trend.plateau = span <= std::max(0.05 * std::abs(mean),
                                         2.0 * (a.uncertainty + b.uncertainty + c.uncertainty));
    }
    return trend;
}

}  // namespace qagap
