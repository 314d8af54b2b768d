#include "qagap/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>

#include "qagap/errors.hpp"

namespace qagap {

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

Vector pseudo_random_vector(Eigen::Index dim, std::uint64_t stream) {
    Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        const std::uint64_t h = mix64(stream ^ static_cast<std::uint64_t>(i));
        v[i] = (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53 - 0.5;
    }
    return v;
}

void apply_sign_convention(Vector& v) {
    Eigen::Index imax = 0;
    double best = -1.0;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        const double a = std::abs(v[i]);
        if (a > best + 1e-300 && a > best) {
            best = a;
            imax = i;
        }
    }
    if (v[imax] < 0.0) v = -v;
}

LowestTwo dense_lowest_two(const DenseMatrix& h, bool want_vectors) {
    LowestTwo out;
    if (want_vectors) {
        Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h);
        out.e0 = es.eigenvalues()[0];
        out.e1 = h.rows() > 1 ? es.eigenvalues()[1] : es.eigenvalues()[0];
        out.ground = es.eigenvectors().col(0);
        out.excited = h.rows() > 1 ? Vector(es.eigenvectors().col(1)) : out.ground;
        apply_sign_convention(out.ground);
    } else {
        Eigen::SelfAdjointEigenSolver<DenseMatrix> es(h, Eigen::EigenvaluesOnly);
        out.e0 = es.eigenvalues()[0];
        out.e1 = h.rows() > 1 ? es.eigenvalues()[1] : es.eigenvalues()[0];
    }
    return out;
}

DenseMatrix materialize(const LinearMap& op) {
    const Eigen::Index d = op.dim();
    DenseMatrix m(d, d);
    Vector e = Vector::Zero(d), col(d);
    for (Eigen::Index j = 0; j < d; ++j) {
        e[j] = 1.0;
        op.apply(e, col);
        m.col(j) = col;
        e[j] = 0.0;
    }
    return m;
}

LowestTwo block_lanczos(const LinearMap& op, const SolverOptions& opts) {
    const Eigen::Index d = op.dim();
    const int max_steps =
        std::max(24, static_cast<int>(opts.max_iteration_factor * std::sqrt(double(d))));
    const Eigen::Index max_basis = std::min<Eigen::Index>(d, 2 * max_steps + 2);

    DenseMatrix Q(d, max_basis), HQ(d, max_basis);
    DenseMatrix T = DenseMatrix::Zero(max_basis, max_basis);
    Eigen::Index m = 0;
    double norm_est = 0.0;

    auto add_vector = [&](Vector v) -> bool {
        for (int pass = 0; pass < 2; ++pass)
            if (m > 0) v -= Q.leftCols(m) * (Q.leftCols(m).transpose() * v);
        const double norm = v.norm();
        if (norm < 1e-8) return false;
        Q.col(m) = v / norm;
        Vector hv(d);
        op.apply(Q.col(m), hv);
        HQ.col(m) = hv;
        norm_est = std::max(norm_est, hv.norm());
        const Vector tcol = Q.leftCols(m + 1).transpose() * hv;
        T.block(0, m, m + 1, 1) = tcol;
        T.block(m, 0, 1, m + 1) = tcol.transpose();
        ++m;
        return true;
    };

    // seed block: warm start when provided, deterministic pseudo-random fill
    std::uint64_t stream = 0x7c3a9d22u ^ (static_cast<std::uint64_t>(d) << 20);
    if (opts.warm_start && opts.warm_start->rows() == d) {
        for (Eigen::Index c = 0; c < opts.warm_start->cols() && m < 2; ++c)
            add_vector(opts.warm_start->col(c));
    }
    while (m < std::min<Eigen::Index>(2, d)) add_vector(pseudo_random_vector(d, stream++));

    LowestTwo out;
    int steps = 0;
    Eigen::Index block_lo = 0;

    while (true) {
        ++steps;
        // expand with H applied to the newest block
        const Eigen::Index hi = m;
        for (Eigen::Index c = block_lo; c < hi && m < max_basis; ++c) {
            if (!add_vector(HQ.col(c)))
                add_vector(pseudo_random_vector(d, stream++));
        }
        block_lo = hi;

        Eigen::SelfAdjointEigenSolver<DenseMatrix> es(
            DenseMatrix(0.5 * (T.topLeftCorner(m, m) + T.topLeftCorner(m, m).transpose())));
        const double tol = opts.residual_tol * std::max(norm_est, 1e-30);

        bool converged = m >= 2;
        double res[2] = {0.0, 0.0};
        for (Eigen::Index k = 0; k < std::min<Eigen::Index>(2, m) && converged; ++k) {
            const Vector y = es.eigenvectors().col(k);
            const Vector r = HQ.leftCols(m) * y - es.eigenvalues()[k] * (Q.leftCols(m) * y);
            res[k] = r.norm();
            converged = converged && res[k] <= tol;
        }
        const bool exhausted = steps >= max_steps || m >= max_basis || m >= d;
        if (converged || exhausted) {
            if (!converged && m < d)
                throw ConvergenceError("Krylov iteration exhausted its budget", res[0], res[1]);
            out.e0 = es.eigenvalues()[0];
            out.e1 = m > 1 ? es.eigenvalues()[1] : es.eigenvalues()[0];
            if (opts.want_vectors) {
                out.ground = Q.leftCols(m) * es.eigenvectors().col(0);
                out.excited =
                    m > 1 ? Vector(Q.leftCols(m) * es.eigenvectors().col(1)) : out.ground;
                out.ground.normalize();
                out.excited.normalize();
                apply_sign_convention(out.ground);
            }
            out.iterations = steps;
            return out;
        }
    }
}

}  // namespace

LowestTwo lowest_two(const LinearMap& op, const SolverOptions& opts) {
    const Eigen::Index d = op.dim();
    if (d < 2) throw InvalidModelError("lowest_two needs dimension >= 2");
    const bool dense_path =
        !opts.force_iterative && (opts.force_dense || d <= opts.dense_threshold);
    if (dense_path) {
        if (const DenseMatrix* m = op.dense()) return dense_lowest_two(*m, opts.want_vectors);
        return dense_lowest_two(materialize(op), opts.want_vectors);
    }
    return block_lanczos(op, opts);
}

std::vector<double> uniform_grid(int points) {
    std::vector<double> g(static_cast<std::size_t>(points));
    for (int i = 0; i < points; ++i)
        g[static_cast<std::size_t>(i)] = static_cast<double>(i) / (points - 1);
    return g;
}

std::vector<double> default_grid(const ModelSpec& spec, const GapCurveOptions& opts) {
    std::vector<double> g = uniform_grid(opts.grid_points);
    if (spec.kind == ModelKind::RingIsing && opts.ring_tail_subgrid) {
        // perturbative crossings cluster near s = 1
        const double lo = 5e-4, hi = 0.1;
        const int extra = 24;
        for (int k = 0; k < extra; ++k)
            g.push_back(1.0 - hi * std::pow(lo / hi, double(k) / (extra - 1)));
        std::sort(g.begin(), g.end());
        g.erase(std::unique(g.begin(), g.end(),
                            [](double a, double b) { return std::abs(a - b) < 1e-12; }),
                g.end());
    }
    return g;
}

const LocalMinimum* GapCurve::global_minimum() const {
    const LocalMinimum* best = nullptr;
    for (const auto& m : minima)
        if (!best || m.gap < best->gap) best = &m;
    return best;
}

namespace {

/// Golden-section descent into [a, b] without a bracket requirement: shrinks
/// to the guaranteed width and keeps going while the value still improves so
/// that exponentially narrow dips are resolved to their floor.
LocalMinimum golden_descend(const std::function<double(double)>& f, double a, double b,
                            double guaranteed_width) {
    constexpr double inv_phi = 0.6180339887498949;
    double c = b - inv_phi * (b - a);
    double dpt = a + inv_phi * (b - a);
    double fc = f(c), fd = f(dpt);
    double best_s = fc < fd ? c : dpt;
    double best_f = std::min(fc, fd);
    int stall = 0;
    const double floor_width = 3e-15;
    while (b - a > floor_width) {
        if (fc < fd) {
            b = dpt;
            dpt = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = dpt;
            fc = fd;
            dpt = a + inv_phi * (b - a);
            fd = f(dpt);
        }
        const double cur = std::min(fc, fd);
        if (cur < best_f) {
            stall = cur < best_f * (1.0 - 1e-3) ? 0 : stall + 1;
            best_f = cur;
            best_s = fc < fd ? c : dpt;
        } else {
            ++stall;
        }
        if (b - a < guaranteed_width && stall > 12) break;
    }
    LocalMinimum out;
    out.s = best_s;
    out.gap = best_f;
    out.refinement_width = b - a;
    if (out.gap < 1e-13) {
        out.level_crossing = true;
        out.gap = std::max(out.gap, 0.0);
    }
    return out;
}

}  // namespace

LocalMinimum refine_minimum(const std::function<double(double)>& f, double left,
                            double mid, double right, double guaranteed_width) {
    const double fl = f(left), fm = f(mid), fr = f(right);
    if (!(fm < fl && fm < fr))
        throw InvalidModelError("refine_minimum: bracket violation, f(mid) must be lowest");
    return golden_descend(f, left, right, guaranteed_width);
}

namespace {

/// One sequential sweep evaluator with warm-start chaining.
class CurveEvaluator {
public:
    CurveEvaluator(const EvolutionModel& model, const GapCurveOptions& opts)
        : model_(model), opts_(opts) {
        iterative_ = model.dim() > opts.curve_dense_limit;
    }

    double gap(double u) {
        const LowestTwo p = pair(u);
        return p.e1 - p.e0;
    }

    LowestTwo pair(double u) {
        auto it = cache_.find(u);
        if (it != cache_.end()) return it->second;
        const LinearMap& op = model_.at(u);
        SolverOptions s = opts_.solver;
        if (iterative_) {
            s.force_iterative = true;
            s.want_vectors = true;
            if (warm_.cols() == 2 && warm_.rows() == model_.dim()) s.warm_start = &warm_;
        } else {
            s.force_dense = true;
            s.want_vectors = false;
        }
        LowestTwo r = lowest_two(op, s);
        if (iterative_) {
            warm_.resize(model_.dim(), 2);
            warm_.col(0) = r.ground;
            warm_.col(1) = r.excited;
            r.ground.resize(0);  // curves only keep scalars; profiles query separately
            r.excited.resize(0);
        }
        cache_.emplace(u, r);
        return r;
    }

    double e0(double u) { return pair(u).e0; }

private:
    const EvolutionModel& model_;
    const GapCurveOptions& opts_;
    bool iterative_ = false;
    DenseMatrix warm_;
    std::map<double, LowestTwo> cache_;
};

void detect_minima(const std::function<double(double)>& f, const std::vector<double>& grid,
                   const std::vector<double>& values, int depth, const GapCurveOptions& opts,
                   std::vector<LocalMinimum>& out) {
    const std::size_t m = grid.size();
    std::vector<char> flagged(m, 0);  // flag of interval [i, i+1]
    for (std::size_t i = 1; i + 1 < m; ++i) {
        const bool locmin = values[i] < values[i - 1] && values[i] < values[i + 1];
        const double sl = (values[i] - values[i - 1]) / (grid[i] - grid[i - 1]);
        const double sr = (values[i + 1] - values[i]) / (grid[i + 1] - grid[i]);
        const bool kink =
            std::abs(sr - sl) > opts.kink_tol * std::max({std::abs(sl), std::abs(sr), 1e-300});
        if (locmin || kink) {
            flagged[i - 1] = 1;
            flagged[i] = 1;
        }
    }
    for (std::size_t i = 0; i + 1 < m; ++i) {
        if (!flagged[i]) continue;
        if (depth > 0) {
            std::vector<double> sub(static_cast<std::size_t>(opts.submesh));
            std::vector<double> sval(sub.size());
            for (std::size_t k = 0; k < sub.size(); ++k) {
                sub[k] = grid[i] + (grid[i + 1] - grid[i]) * double(k) / (sub.size() - 1);
                sval[k] = k == 0 ? values[i]
                                 : (k + 1 == sub.size() ? values[i + 1] : f(sub[k]));
            }
            detect_minima(f, sub, sval, depth - 1, opts, out);
        } else {
            out.push_back(golden_descend(f, grid[i], grid[i + 1], opts.refine_interval));
        }
    }
}

}  // namespace

GapCurve gap_curve(const ModelSpec& spec, const std::vector<double>& grid,
                   const GapCurveOptions& opts) {
    if (grid.size() < 2) throw InvalidModelError("gap_curve needs at least 2 grid points");
    for (std::size_t i = 0; i + 1 < grid.size(); ++i)
        if (!(grid[i] < grid[i + 1]) || grid[i] < 0.0 || grid[i + 1] > 1.0)
            throw InvalidModelError("gap_curve grid must be strictly increasing within [0,1]");

    const EvolutionModel model(spec);
    CurveEvaluator eval(model, opts);

    GapCurve curve;
    curve.model = spec;
    curve.sector = model.sector_label();
    if (model.sector_warning())
        curve.warnings.push_back("p even without parity sector: using full Dicke basis");

    std::vector<double> values;
    values.reserve(grid.size());
    for (double u : grid) {
        LowestTwo p = eval.pair(u);
        curve.samples.push_back({u, p.e1 - p.e0, p.e0});
        values.push_back(p.e1 - p.e0);
    }

    auto f = [&eval](double u) { return eval.gap(u); };
    std::vector<LocalMinimum> found;
    detect_minima(f, grid, values, opts.detect_depth, opts, found);

    // externally seeded windows (neighboring lambda points in a scan)
    for (double s0 : opts.seed_windows) {
        auto it = std::lower_bound(grid.begin(), grid.end(), s0);
        std::size_t i = it == grid.begin() ? 0 : static_cast<std::size_t>(it - grid.begin()) - 1;
        const std::size_t lo = i > 1 ? i - 1 : 0;
        const std::size_t hi = std::min(grid.size() - 1, i + 2);
        std::vector<double> sub(grid.begin() + static_cast<std::ptrdiff_t>(lo),
                                grid.begin() + static_cast<std::ptrdiff_t>(hi) + 1);
        std::vector<double> sval;
        for (double u : sub) sval.push_back(f(u));
        detect_minima(f, sub, sval, 1, opts, found);
    }

    // always probe the raw grid argmin so a boundary-hugging minimum survives
    const std::size_t imin = static_cast<std::size_t>(
        std::min_element(values.begin(), values.end()) - values.begin());
    if (imin > 0 && imin + 1 < grid.size() && values[imin] < values[imin - 1] &&
        values[imin] < values[imin + 1]) {
        found.push_back(
            refine_minimum(f, grid[imin - 1], grid[imin], grid[imin + 1], opts.refine_interval));
    } else {
        LocalMinimum edge;
        edge.s = grid[imin];
        edge.gap = values[imin];
        edge.refinement_width = imin + 1 < grid.size() ? grid[imin + 1] - grid[imin]
                                                       : grid[imin] - grid[imin - 1];
        edge.level_crossing = edge.gap < opts.crossing_tol;
        found.push_back(edge);
    }

    std::sort(found.begin(), found.end(),
              [](const LocalMinimum& a, const LocalMinimum& b) { return a.s < b.s; });
    // candidates descend into single grid intervals, so one physical dip can
    // leave shoulder echoes in its neighbors; keep a candidate only when a
    // genuine barrier separates it from the previous one
    for (const auto& c : found) {
        if (curve.minima.empty()) {
            curve.minima.push_back(c);
            continue;
        }
        LocalMinimum& prev = curve.minima.back();
        bool separated = c.s - prev.s > 2e-6;
        if (separated) {
            double barrier = 0.0;
            for (int k = 1; k <= 6; ++k)
                barrier = std::max(barrier, f(prev.s + k * (c.s - prev.s) / 7.0));
            separated = barrier > 1.15 * std::max(prev.gap, c.gap) + 1e-15;
        }
        if (separated)
            curve.minima.push_back(c);
        else if (c.gap < prev.gap)
            prev = c;
    }

    // continuity sanity check (warning only)
    double med = 0.0;
    {
        std::vector<double> jumps;
        for (std::size_t i = 0; i + 1 < values.size(); ++i)
            jumps.push_back(std::abs(values[i + 1] - values[i]));
        std::vector<double> sorted = jumps;
        std::sort(sorted.begin(), sorted.end());
        med = sorted.empty() ? 0.0 : sorted[sorted.size() / 2];
        for (std::size_t i = 0; i < jumps.size(); ++i)
            if (jumps[i] > 50.0 * (med + 1e-6) && jumps[i] > 0.5) {
                curve.warnings.push_back("gap jump at s=" + std::to_string(grid[i]) +
                                         " exceeds the continuity estimate");
                break;
            }
    }
    return curve;
}

GapCurve gap_curve(const ModelSpec& spec, const GapCurveOptions& opts) {
    return gap_curve(spec, default_grid(spec, opts), opts);
}

LocalMinimum refine_minimum(const ModelSpec& spec, double left, double mid, double right,
                            const GapCurveOptions& opts) {
    const EvolutionModel model(spec);
    CurveEvaluator eval(model, opts);
    auto f = [&eval](double u) { return eval.gap(u); };
    return refine_minimum(f, left, mid, right, opts.refine_interval);
}

MinGapResult min_gap(const ModelSpec& spec, const GapCurveOptions& opts) {
    MinGapResult out;
    out.curve = gap_curve(spec, opts);
    const LocalMinimum* best = out.curve.global_minimum();
    if (!best) throw ConvergenceError("no minima located on the gap curve", 0, 0);
    out.s = best->s;
    out.gap = best->gap;
    return out;
}

WavefunctionProfile ground_profile(const ModelSpec& spec, double u) {
    const EvolutionModel model(spec);
    SolverOptions so;
    so.want_vectors = true;
    const LowestTwo p = lowest_two(model.at(u), so);

    WavefunctionProfile prof;
    const bool parity_expanded =
        (spec.kind == ModelKind::PSpin || spec.kind == ModelKind::PSpinAltInterp) &&
        spec.p % 2 == 0 && !(spec.noise && spec.noise->sigma > 0.0);
    if (parity_expanded) {
        // sector amplitudes c_|M| map to (c/sqrt2) at +-M, c at M = 0
        const DickeBasis basis(spec.n);
        const int S = spec.n / 2;
        prof.amplitudes = Vector::Zero(basis.dim());
        for (int k = 0; k < static_cast<int>(p.ground.size()); ++k) {
            const double c = p.ground[k];
            if (k == 0)
                prof.amplitudes[S] = c;
            else {
                prof.amplitudes[S + k] = c / std::sqrt(2.0);
                prof.amplitudes[S - k] = c / std::sqrt(2.0);
            }
        }
        for (int i = 0; i < basis.dim(); ++i) {
            char buf[32];
            std::snprintf(buf, sizeof buf, "M=%g", basis.m(i));
            prof.basis_labels.push_back(buf);
        }
    } else {
        prof.amplitudes = p.ground;
        prof.basis_labels = model.basis_labels();
    }
    apply_sign_convention(prof.amplitudes);
    return prof;
}

int count_nodes(const WavefunctionProfile& profile, double neutral_tol) {
    const double tol = neutral_tol;
    int nodes = 0;
    int last_sign = 0;
    for (Eigen::Index i = 0; i < profile.amplitudes.size(); ++i) {
        const double a = profile.amplitudes[i];
        if (std::abs(a) < tol) continue;
        const int sign = a > 0.0 ? 1 : -1;
        if (last_sign != 0 && sign != last_sign) ++nodes;
        last_sign = sign;
    }
    return nodes;
}

double hamming_weight_expectation(const ModelSpec& spec, double u) {
    const EvolutionModel model(spec);
    SolverOptions so;
    so.want_vectors = true;
    const LowestTwo p = lowest_two(model.at(u), so);
    const std::vector<double> mag = model.magnetization_diagonal();
    double mz = 0.0;
    for (Eigen::Index i = 0; i < p.ground.size(); ++i)
        mz += p.ground[i] * p.ground[i] * mag[static_cast<std::size_t>(i)];
    return 0.5 * spec.n - mz;
}

std::vector<CrossingPoint> sector_crossing_profile(const ModelSpec& spec,
                                                   const std::vector<double>& grid,
                                                   const GapCurveOptions& opts) {
    spec.validate();
    if (spec.noise && spec.noise->sigma > 0.0)
        throw InvalidModelError("sector crossing profiles are a noiseless diagnostic");
    std::vector<CrossingPoint> out;
    out.reserve(grid.size());

    SolverOptions so = opts.solver;
    so.want_vectors = false;

    switch (spec.kind) {
        case ModelKind::PSpin:
        case ModelKind::PSpinAltInterp: {
            if (spec.p % 2 != 0)
                throw InvalidModelError("p odd has no strict parity subsector");
            const DickeBasis basis(spec.n);
            const ParitySector plus(basis, +1);
            for (double u : grid) {
                const OperatorMatrix full =
                    spec.kind == ModelKind::PSpin ? build_pspin(spec, u)
                                                  : build_pspin_alt(spec, 3.0 * u);
                const OperatorMatrix sect = project_parity(full, plus);
                const double e_full = lowest_two(full, so).e0;
                const double e_sect = lowest_two(sect, so).e0;
                out.push_back({u, std::max(0.0, e_sect - e_full)});
            }
            break;
        }
        case ModelKind::RingIsing: {
            std::vector<OrbitBasis> bases;
            for (int cp : {+1, -1})
                for (int cr : {+1, -1})
                    bases.emplace_back(*spec.instance, SectorCharacter{cp, cr});
            for (double u : grid) {
                double e_evo = 0.0, e_glob = 1e300;
                for (std::size_t k = 0; k < bases.size(); ++k) {
                    if (bases[k].dim() == 0) continue;
                    RingSectorOp op(bases[k], spec.lambda, u);
                    double e;
                    if (bases[k].dim() == 1) {
                        Vector unit = Vector::Ones(1), hv(1);
                        op.apply(unit, hv);
                        e = hv[0];
                    } else {
                        e = lowest_two(op, so).e0;
                    }
                    if (k == 0) e_evo = e;
                    e_glob = std::min(e_glob, e);
                }
                out.push_back({u, std::max(0.0, e_evo - e_glob)});
            }
            break;
        }
        default:
            throw InvalidModelError("model has no strict symmetry subsector");
    }
    return out;
}

int count_nonzero_intervals(const std::vector<CrossingPoint>& profile, double tol) {
    int count = 0;
    bool inside = false;
    for (const auto& p : profile) {
        const bool above = p.sector_minus_global > tol;
        if (above && !inside) ++count;
        inside = above;
    }
    return count;
}

}  // namespace qagap
