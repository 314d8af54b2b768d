#include "qagap/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "qagap/errors.hpp"
#include "qagap/parallel.hpp"
#include "qagap/spectral.hpp"

namespace qagap {

double villain_potential(double z1, double z2, double s, double lambda, double h1,
                         double h2) {
    if (std::abs(z1) > 1.0 || std::abs(z2) > 1.0)
        throw InvalidModelError("villain potential arguments must satisfy |z| <= 1");
    if (s < 0.0 || s > 1.0)
        throw InvalidModelError("villain potential needs s in [0, 1]");
    const double t1 = std::sqrt(1.0 - z1 * z1);
    const double t2 = std::sqrt(1.0 - z2 * z2);
    return -0.5 * (1.0 - s) * (t1 + t2) -
           s * (0.5 * (h1 * z1 - h2 * z2) + 0.25 * (z1 * z1 + z2 * z2 + z1 * z2)) +
           0.5 * lambda * s * (1.0 - s) * t1 * t2;
}

namespace {

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
        std::iota(parent.begin(), parent.end(), 0);
    }
    int find(int a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    }
    void unite(int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); }
};

}  // namespace

PotentialSurface surface_minima(double s, double lambda, double h1, double h2,
                                int resolution) {
    if (resolution < 64) throw InvalidModelError("surface resolution must be >= 64");
    PotentialSurface surf;
    surf.resolution = resolution;
    surf.s = s;
    surf.lambda = lambda;
    surf.h1 = h1;
    surf.h2 = h2;

    const int r = resolution;
    auto z = [r](int i) { return -1.0 + 2.0 * i / (r - 1); };
    surf.values.resize(static_cast<std::size_t>(r) * r);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j)
            surf.values[static_cast<std::size_t>(i) * r + j] =
                villain_potential(z(i), z(j), s, lambda, h1, h2);

    auto at = [&](int i, int j) { return surf.values[static_cast<std::size_t>(i) * r + j]; };

    // grid-local minima, polished by clamped coordinate descent
    std::vector<PotentialMinimum> minima;
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) {
            const double v = at(i, j);
            bool lowest = true;
            for (int di = -1; di <= 1 && lowest; ++di)
                for (int dj = -1; dj <= 1 && lowest; ++dj) {
                    if (di == 0 && dj == 0) continue;
                    const int a = i + di, b = j + dj;
                    if (a < 0 || b < 0 || a >= r || b >= r) continue;
                    lowest = v <= at(a, b);
                }
            if (!lowest) continue;
            double z1 = z(i), z2 = z(j), step = 2.0 / (r - 1);
            double best = v;
            while (step > 1e-10) {
                bool moved = false;
                for (const auto& [d1, d2] : std::initializer_list<std::pair<double, double>>{
                         {step, 0.0}, {-step, 0.0}, {0.0, step}, {0.0, -step}}) {
                    const double a = std::clamp(z1 + d1, -1.0, 1.0);
                    const double b = std::clamp(z2 + d2, -1.0, 1.0);
                    const double w = villain_potential(a, b, s, lambda, h1, h2);
                    if (w < best - 1e-18) {
                        best = w;
                        z1 = a;
                        z2 = b;
                        moved = true;
                    }
                }
                if (!moved) step *= 0.5;
            }
            minima.push_back({z1, z2, best});
        }
    }
    std::sort(minima.begin(), minima.end(),
              [](const PotentialMinimum& a, const PotentialMinimum& b) {
                  return a.value < b.value;
              });
    // merge duplicates that polished into the same basin
    for (const auto& m : minima) {
        bool dup = false;
        for (const auto& kept : surf.minima)
            dup = dup || (std::abs(kept.z1 - m.z1) < 1e-4 && std::abs(kept.z2 - m.z2) < 1e-4);
        if (!dup) surf.minima.push_back(m);
    }

    if (surf.minima.size() >= 2) {
        // minimax path level between the two lowest minima: sweep cells in
        // ascending value, union neighbors, stop when the basins join
        std::vector<int> order(static_cast<std::size_t>(r) * r);
        std::iota(order.begin(), order.end(), 0);
        std::sort(order.begin(), order.end(),
                  [&](int a, int b) { return surf.values[static_cast<std::size_t>(a)] < surf.values[static_cast<std::size_t>(b)]; });
        auto cell_of = [&](const PotentialMinimum& m) {
            const int i = static_cast<int>(std::lround((m.z1 + 1.0) * (r - 1) / 2.0));
            const int j = static_cast<int>(std::lround((m.z2 + 1.0) * (r - 1) / 2.0));
            return i * r + j;
        };
        const int ca = cell_of(surf.minima[0]);
        const int cb = cell_of(surf.minima[1]);
        UnionFind uf(r * r);
        std::vector<char> active(static_cast<std::size_t>(r) * r, 0);
        double saddle = surf.minima[1].value;
        for (int cell : order) {
            active[static_cast<std::size_t>(cell)] = 1;
            const int i = cell / r, j = cell % r;
            for (const auto& [di, dj] :
                 std::initializer_list<std::pair<int, int>>{{1, 0}, {-1, 0}, {0, 1}, {0, -1}}) {
                const int a = i + di, b = j + dj;
                if (a < 0 || b < 0 || a >= r || b >= r) continue;
                if (active[static_cast<std::size_t>(a * r + b)]) uf.unite(cell, a * r + b);
            }
            if (uf.find(ca) == uf.find(cb)) {
                saddle = surf.values[static_cast<std::size_t>(cell)];
                break;
            }
        }
        surf.barrier = saddle - surf.minima[0].value;
        // barrier-separated means the saddle clears the higher minimum too
        surf.double_minimum = saddle - surf.minima[1].value > 1e-6;
    }
    return surf;
}

PTReport first_order_pt(const IsingInstance& instance, double lambda) {
    const InstanceDiagnostics diag = validate_instance(instance);
    if (!diag.ok) throw InvalidModelError("first_order_pt needs a valid instance");

    constexpr double kDegenTol = 1e-10;
    OrbitBasis basis(instance, SectorCharacter{+1, +1});
    const auto& energies = basis.rep_ising_energy();
    const Eigen::Index dim = basis.dim();

    std::vector<Eigen::Index> order(static_cast<std::size_t>(dim));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](Eigen::Index a, Eigen::Index b) { return energies[static_cast<std::size_t>(a)] < energies[static_cast<std::size_t>(b)]; });

    PTReport report;
    report.ground_energy = energies[static_cast<std::size_t>(order[0])];
    std::vector<Eigen::Index> ground, excited;
    std::size_t k = 0;
    for (; k < order.size(); ++k) {
        const double e = energies[static_cast<std::size_t>(order[k])];
        if (e - report.ground_energy < kDegenTol)
            ground.push_back(order[k]);
        else
            break;
    }
    if (k >= order.size()) throw InvalidModelError("instance spectrum has a single level");
    report.excited_energy = energies[static_cast<std::size_t>(order[k])];
    for (; k < order.size(); ++k) {
        const double e = energies[static_cast<std::size_t>(order[k])];
        if (e - report.excited_energy < kDegenTol) excited.push_back(order[k]);
        else break;
    }
    if (k < order.size() &&
        energies[static_cast<std::size_t>(order[k])] - report.excited_energy < 10.0 * kDegenTol)
        report.ambiguous = true;

    auto bitstring = [&](std::uint64_t rep) {
        std::string b(static_cast<std::size_t>(instance.n), '0');
        for (int i = 0; i < instance.n; ++i)
            if ((rep >> i) & 1) b[static_cast<std::size_t>(i)] = '1';
        return b;
    };

    auto project = [&](const std::vector<Eigen::Index>& manifold) {
        const auto msize = static_cast<Eigen::Index>(manifold.size());
        DenseMatrix v(msize, msize);
        Vector e = Vector::Zero(dim), ve(dim);
        for (Eigen::Index c = 0; c < msize; ++c) {
            e[manifold[static_cast<std::size_t>(c)]] = 1.0;
            basis.apply_terms(-1.0, 0.0, lambda, e, ve);
            for (Eigen::Index rr = 0; rr < msize; ++rr)
                v(rr, c) = ve[manifold[static_cast<std::size_t>(rr)]];
            e[manifold[static_cast<std::size_t>(c)]] = 0.0;
        }
        return DenseMatrix(0.5 * (v + v.transpose()));
    };

    for (Eigen::Index idx : ground)
        report.ground_basis.push_back(bitstring(basis.representatives()[static_cast<std::size_t>(idx)]));
    for (Eigen::Index idx : excited) {
        report.excited_basis.push_back(bitstring(basis.representatives()[static_cast<std::size_t>(idx)]));
        report.excited_orbit_sizes.push_back(basis.orbit_size(idx));
    }

    report.ground_matrix = project(ground);
    report.excited_matrix = project(excited);

    Eigen::SelfAdjointEigenSolver<DenseMatrix> esg(report.ground_matrix);
    Eigen::SelfAdjointEigenSolver<DenseMatrix> ese(report.excited_matrix);
    report.ground_eigenvalues = esg.eigenvalues();
    report.excited_eigenvalues = ese.eigenvalues();
    report.excited_eigenvectors = ese.eigenvectors();

    // levels E(s) = s E0 + s(1-s) mu to first order; they meet where
    // (1-s)(mu_e - mu_g) = E_g - E_e
    const double mu_g = report.ground_eigenvalues[0];
    const double mu_e = report.excited_eigenvalues[0];
    if (mu_g - mu_e > 1e-12) {
        const double one_minus_s =
            (report.excited_energy - report.ground_energy) / (mu_g - mu_e);
        if (one_minus_s > 0.0 && one_minus_s < 1.0)
            report.crossing_estimate = 1.0 - one_minus_s;
    }
    return report;
}

FitResult fit_scaling(const std::vector<double>& n_values, const std::vector<double>& gaps) {
    if (n_values.size() != gaps.size() || n_values.size() < 4)
        throw InvalidModelError("fit_scaling needs at least 4 (n, gap) pairs");
    for (double g : gaps)
        if (!(g > 0.0)) throw InvalidModelError("fit_scaling needs positive gaps");

    FitResult fit;
    fit.n_values = n_values;
    fit.gaps = gaps;

    auto least_squares = [&](bool log_n) {
        double sx = 0, sy = 0, sxx = 0, sxy = 0;
        const auto m = static_cast<double>(gaps.size());
        for (std::size_t i = 0; i < gaps.size(); ++i) {
            const double x = log_n ? std::log(n_values[i]) : n_values[i];
            const double y = std::log(gaps[i]);
            sx += x;
            sy += y;
            sxx += x * x;
            sxy += x * y;
        }
        const double slope = (m * sxy - sx * sy) / (m * sxx - sx * sx);
        const double intercept = (sy - slope * sx) / m;
        double rss = 0;
        for (std::size_t i = 0; i < gaps.size(); ++i) {
            const double x = log_n ? std::log(n_values[i]) : n_values[i];
            const double ry = std::log(gaps[i]) - (intercept + slope * x);
            rss += ry * ry;
        }
        return std::array<double, 3>{slope, intercept, rss};
    };

    const auto [be, ae, rss_e] = least_squares(false);
    const auto [bp, ap, rss_p] = least_squares(true);
    fit.exp_rate = -be;
    fit.exp_prefactor = std::exp(ae);
    fit.poly_exponent = -bp;
    fit.poly_prefactor = std::exp(ap);
    fit.exp_rss = rss_e;
    fit.poly_rss = rss_p;

    constexpr double kPreferRatio = 4.0;
    if (rss_p > kPreferRatio * rss_e)
        fit.preferred = "exp";
    else if (rss_e > kPreferRatio * rss_p)
        fit.preferred = "poly";
    else
        fit.preferred = "indistinguishable";
    return fit;
}

double percentile(std::vector<double> sample, double level) {
    if (sample.empty()) throw InvalidModelError("percentile of an empty sample");
    std::sort(sample.begin(), sample.end());
    const double pos = level / 100.0 * (static_cast<double>(sample.size()) - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = static_cast<std::size_t>(std::ceil(pos));
    const double frac = pos - static_cast<double>(lo);
    return sample[lo] * (1.0 - frac) + sample[hi] * frac;
}

namespace {

std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

}  // namespace

NoiseEnsembleStats noise_ensemble(const ModelSpec& family, const std::vector<int>& sizes,
                                  const NoiseEnsembleOptions& opts) {
    if (opts.sigma < 0.0) throw InvalidModelError("sigma must be >= 0");
    if (opts.realizations < 1) throw InvalidModelError("need at least one realization");
    for (int n : sizes)
        if (n > 14) throw ResourceError("noise ensembles use the dense full-space path; n <= 14");

    NoiseEnsembleStats stats;
    stats.options = opts;

    GapCurveOptions copts;
    copts.grid_points = opts.grid_points;
    copts.detect_depth = 1;

    for (int n : sizes) {
        NoiseSizeStats row;
        row.n = n;

        ModelSpec base = family;
        base.n = n;
        if (base.kind == ModelKind::RingIsing && base.instance && base.instance->n != n)
            throw InvalidModelError("noise ensemble: instance size disagrees with n");

        {
            ModelSpec noiseless = base;
            noiseless.noise.reset();
            row.noiseless_min_gap = min_gap(noiseless, copts).gap;
        }

        row.min_gaps.resize(static_cast<std::size_t>(opts.realizations));
        parallel_for(opts.realizations, opts.threads, [&](int r) {
            ModelSpec spec = base;
            spec.noise = NoiseSpec{opts.sigma, opts.seed, static_cast<std::uint32_t>(r)};
            row.min_gaps[static_cast<std::size_t>(r)] = min_gap(spec, copts).gap;
        });

        for (double level : opts.percentile_levels)
            row.percentiles.push_back(percentile(row.min_gaps, level));

        // 95% bootstrap intervals around each percentile
        const auto R = static_cast<std::uint64_t>(opts.realizations);
        std::vector<std::vector<double>> boot(
            opts.percentile_levels.size());
        std::vector<double> resample(static_cast<std::size_t>(opts.realizations));
        for (int b = 0; b < opts.bootstrap; ++b) {
            for (int r = 0; r < opts.realizations; ++r) {
                const std::uint64_t h = mix64(opts.seed ^ mix64(0xb00757ull + static_cast<std::uint64_t>(b)) ^
                                              mix64(static_cast<std::uint64_t>(r) + (static_cast<std::uint64_t>(n) << 32)));
                resample[static_cast<std::size_t>(r)] =
                    row.min_gaps[static_cast<std::size_t>(h % R)];
            }
            for (std::size_t lv = 0; lv < opts.percentile_levels.size(); ++lv)
                boot[lv].push_back(percentile(resample, opts.percentile_levels[lv]));
        }
        for (std::size_t lv = 0; lv < opts.percentile_levels.size(); ++lv) {
            row.ci_low.push_back(percentile(boot[lv], 2.5));
            row.ci_high.push_back(percentile(boot[lv], 97.5));
        }
        stats.sizes.push_back(std::move(row));
    }
    return stats;
}

}  // namespace qagap
