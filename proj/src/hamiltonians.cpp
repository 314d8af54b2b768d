#include "qagap/hamiltonians.hpp"

#include <bit>
#include <cmath>

#include "qagap/errors.hpp"

namespace qagap {

namespace {

void require_noiseless(const ModelSpec& spec) {
    if (spec.noise && spec.noise->sigma > 0.0)
        throw InvalidModelError(
            "noisy models break the permutation symmetry; build them in the "
            "full 2^n space instead of a reduced basis");
}

DenseMatrix pspin_dicke_matrix(const ModelSpec& spec, double s, double problem_weight,
                               double catalyst_weight) {
    const DickeBasis basis(spec.n);
    const CollectiveOps ops = build_collective_ops(basis);
    const DenseMatrix& sx = ops.sx.dense_storage();
    const int d = basis.dim();

    DenseMatrix h = (-2.0 * (1.0 - s)) * sx;
    if (catalyst_weight != 0.0) h.noalias() += catalyst_weight * (sx * sx);
    const double scale = problem_weight / std::pow(static_cast<double>(spec.n), spec.p - 1);
    for (int i = 0; i < d; ++i)
        h(i, i) -= scale * std::pow(2.0 * basis.m(i), spec.p);
    // the builders above are symmetric by construction; make it elementwise exact
    for (int i = 0; i < d; ++i)
        for (int j = i + 1; j < d; ++j) h(j, i) = h(i, j);
    return h;
}

}  // namespace

OperatorMatrix build_pspin(const ModelSpec& spec, double s) {
    spec.validate();
    require_noiseless(spec);
    if (spec.kind != ModelKind::PSpin)
        throw InvalidModelError("build_pspin expects kind = p-spin");
    const double cat = 4.0 * spec.lambda * s * (1.0 - s) / spec.n;
    return OperatorMatrix(pspin_dicke_matrix(spec, s, s, cat), "dicke");
}

OperatorMatrix build_pspin(const ModelSpec& spec, double s, const ParitySector& sector) {
    if (spec.p % 2 != 0)
        throw InvalidModelError("parity sectors only exist for p even");
    return project_parity(build_pspin(spec, s), sector);
}

SchedulePoint alt_interp_schedule(const ModelSpec& spec, double t) {
    if (t < 0.0 || t > 3.0)
        throw InvalidModelError("alt-interp path parameter must lie in [0, 3]");
    const double ls = spec.lambda_star;
    if (t <= 1.0) return {0.0, t * ls};
    if (t <= 2.0) return {t - 1.0, ls};
    return {1.0, ls + (t - 2.0) * (1.0 - ls)};
}

OperatorMatrix build_pspin_alt(const ModelSpec& spec, double t) {
    spec.validate();
    require_noiseless(spec);
    if (spec.kind != ModelKind::PSpinAltInterp)
        throw InvalidModelError("build_pspin_alt expects kind = p-spin-alt-interp");
    const SchedulePoint pt = alt_interp_schedule(spec, t);
    const double cat = 4.0 * spec.alt_alpha * pt.s * (1.0 - pt.lambda_instantaneous) / spec.n;
    DenseMatrix h = pspin_dicke_matrix(spec, pt.s, pt.s * pt.lambda_instantaneous, cat);
    return OperatorMatrix(std::move(h), "dicke");
}

OperatorMatrix build_pspin_alt(const ModelSpec& spec, double t, const ParitySector& sector) {
    if (spec.p % 2 != 0)
        throw InvalidModelError("parity sectors only exist for p even");
    return project_parity(build_pspin_alt(spec, t), sector);
}

namespace {

OperatorMatrix two_spin_common(const ModelSpec& spec, double s, bool alt_catalyst) {
    spec.validate();
    require_noiseless(spec);
    const ProductDickeBasis basis(spec.n);
    const ProductOps ops = build_product_ops(basis);
    const SparseMatrix& s1x = ops.s1x.sparse_storage();
    const SparseMatrix& s2x = ops.s2x.sparse_storage();
    const SparseMatrix& s1z = ops.s1z.sparse_storage();
    const SparseMatrix& s2z = ops.s2z.sparse_storage();

    SparseMatrix h = SparseMatrix((-2.0 * (1.0 - s)) * (s1x + s2x));
    h += SparseMatrix((-2.0 * s * spec.h1) * s1z);
    h += SparseMatrix((2.0 * s * spec.h2) * s2z);
    h += SparseMatrix((-4.0 * s / spec.n) *
                      SparseMatrix(SparseMatrix(s1z * s1z) + SparseMatrix(s2z * s2z) +
                                   SparseMatrix(s1z * s2z)));
    const double w = 4.0 * spec.lambda * s * (1.0 - s) / spec.n;
    if (w != 0.0) {
        if (alt_catalyst) {
            SparseMatrix sum = s1x + s2x;
            h += SparseMatrix(w * SparseMatrix(sum * sum));
        } else {
            h += SparseMatrix((2.0 * w) * SparseMatrix(s1x * s2x));
        }
    }
    h.prune(0.0);
    h.makeCompressed();
    return OperatorMatrix(std::move(h), "product-dicke");
}

}  // namespace

OperatorMatrix build_two_spin(const ModelSpec& spec, double s) {
    if (spec.kind != ModelKind::TwoSpin)
        throw InvalidModelError("build_two_spin expects kind = two-spin");
    return two_spin_common(spec, s, false);
}

OperatorMatrix build_two_spin_alt_catalyst(const ModelSpec& spec, double s) {
    if (spec.kind != ModelKind::TwoSpinAltCatalyst)
        throw InvalidModelError(
            "build_two_spin_alt_catalyst expects kind = two-spin-alt-catalyst");
    return two_spin_common(spec, s, true);
}

RingSectorOp build_ring_ising(const ModelSpec& spec, const OrbitBasis& basis, double s) {
    spec.validate();
    require_noiseless(spec);
    if (spec.kind != ModelKind::RingIsing)
        throw InvalidModelError("build_ring_ising expects kind = ring-ising");
    return RingSectorOp(basis, spec.lambda, s);
}

namespace {

// counter-based generator: every draw is a pure function of its key
std::uint64_t mix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

double uniform01(std::uint64_t h) {
    return (static_cast<double>(h >> 11) + 0.5) * 0x1.0p-53;
}

}  // namespace

std::vector<double> noise_fields(const NoiseSpec& noise, int n) {
    std::vector<double> fields(static_cast<std::size_t>(n), 0.0);
    if (noise.sigma == 0.0) return fields;
    for (int i = 0; i < n; ++i) {
        const std::uint64_t key =
            mix64(noise.seed ^ mix64((std::uint64_t(noise.realization) << 32) |
                                     std::uint64_t(static_cast<std::uint32_t>(i))));
        const double u1 = uniform01(mix64(key));
        const double u2 = uniform01(mix64(key ^ 0xd1b54a32d192ed03ull));
        fields[static_cast<std::size_t>(i)] =
            noise.sigma * std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }
    return fields;
}

FullSpaceOp::FullSpaceOp(const ModelSpec& spec, double s) : n_(spec.n) {
    spec.validate();
    if (spec.n > 26) throw ResourceError("full-space operators limited to n <= 26");
    if (spec.kind == ModelKind::PSpinAltInterp)
        throw InvalidModelError("full-space path does not support the alt-interp schedule");
    const std::uint64_t dim = 1ull << n_;
    diag_.assign(dim, 0.0);

    const std::vector<double> dh =
        spec.noise ? noise_fields(*spec.noise, n_) : std::vector<double>(n_, 0.0);

    drv_ = -(1.0 - s);
    cat_all_pairs_ = 0.0;

    switch (spec.kind) {
        case ModelKind::PSpin: {
            const double scale = s / std::pow(static_cast<double>(n_), spec.p - 1);
            cat_all_pairs_ = spec.lambda * s * (1.0 - s) / n_;
            for (std::uint64_t x = 0; x < dim; ++x) {
                const int mz = n_ - 2 * std::popcount(x);
                double e = -scale * std::pow(static_cast<double>(mz), spec.p);
                for (int i = 0; i < n_; ++i)
                    e -= s * dh[static_cast<std::size_t>(i)] * (((x >> i) & 1) ? -1.0 : 1.0);
                diag_[x] = e;
            }
            break;
        }
        case ModelKind::TwoSpin:
        case ModelKind::TwoSpinAltCatalyst: {
            const int half = n_ / 2;
            const std::uint64_t mask1 = (1ull << half) - 1;
            const double catw = spec.lambda * s * (1.0 - s) / n_;
            if (spec.kind == ModelKind::TwoSpinAltCatalyst) {
                // (4 lam s(1-s)/n)(S1x+S2x)^2 = (lam s(1-s)/n)(sum_all sigma^x)^2
                cat_all_pairs_ = catw;
            } else {
                // (8 lam s(1-s)/n) S1x S2x = (2 lam s(1-s)/n) sum_{i in G1, j in G2} sx_i sx_j
                cat_edge_w_ = 2.0 * catw;
                for (int i = 0; i < half; ++i)
                    for (int j = half; j < n_; ++j) cat_edges_.emplace_back(i, j);
            }
            for (std::uint64_t x = 0; x < dim; ++x) {
                const int pc1 = std::popcount(x & mask1);
                const int pc2 = std::popcount(x >> half);
                const double m1 = 0.5 * (half - 2 * pc1);
                const double m2 = 0.5 * (half - 2 * pc2);
                double e = -s * (2.0 * spec.h1 * m1 - 2.0 * spec.h2 * m2 +
                                 (4.0 / n_) * (m1 * m1 + m2 * m2 + m1 * m2));
                for (int i = 0; i < n_; ++i)
                    e -= s * dh[static_cast<std::size_t>(i)] * (((x >> i) & 1) ? -1.0 : 1.0);
                diag_[x] = e;
            }
            break;
        }
        case ModelKind::RingIsing: {
            cat_edge_w_ = spec.lambda * s * (1.0 - s);
            for (const auto& e : spec.instance->edges) cat_edges_.emplace_back(e.i, e.j);
            for (std::uint64_t x = 0; x < dim; ++x) {
                double e = s * spec.instance->ising_energy(x);
                for (int i = 0; i < n_; ++i)
                    e += s * dh[static_cast<std::size_t>(i)] * (((x >> i) & 1) ? -1.0 : 1.0);
                diag_[x] = e;
            }
            break;
        }
        default:
            break;
    }
}

void FullSpaceOp::apply(const Vector& x, Vector& y) const {
    const std::uint64_t dim = 1ull << n_;
    y.resize(static_cast<Eigen::Index>(dim));
    for (std::uint64_t k = 0; k < dim; ++k) y[static_cast<Eigen::Index>(k)] = diag_[k] * x[static_cast<Eigen::Index>(k)];

    if (cat_all_pairs_ != 0.0) {
        // catalyst c*(sum sigma^x)^2 applied as c*A(A x), A = sum sigma^x;
        // diag_ excludes the catalyst so A(A x) supplies its own c*n diagonal
        if (scratch_.size() != x.size()) scratch_.resize(x.size());
        scratch_.setZero();
        for (std::uint64_t k = 0; k < dim; ++k) {
            const double v = x[static_cast<Eigen::Index>(k)];
            for (int i = 0; i < n_; ++i) scratch_[static_cast<Eigen::Index>(k ^ (1ull << i))] += v;
        }
        for (std::uint64_t k = 0; k < dim; ++k) {
            const double v = scratch_[static_cast<Eigen::Index>(k)];
            for (int i = 0; i < n_; ++i)
                y[static_cast<Eigen::Index>(k ^ (1ull << i))] += cat_all_pairs_ * v;
        }
    }

    if (drv_ != 0.0) {
        for (std::uint64_t k = 0; k < dim; ++k) {
            const double v = drv_ * x[static_cast<Eigen::Index>(k)];
            for (int i = 0; i < n_; ++i) y[static_cast<Eigen::Index>(k ^ (1ull << i))] += v;
        }
    }
    if (cat_edge_w_ != 0.0) {
        for (std::uint64_t k = 0; k < dim; ++k) {
            const double v = cat_edge_w_ * x[static_cast<Eigen::Index>(k)];
            for (const auto& [i, j] : cat_edges_)
                y[static_cast<Eigen::Index>(k ^ (1ull << i) ^ (1ull << j))] += v;
        }
    }
}

SparseMatrix FullSpaceOp::materialize() const {
    if (n_ > 14) throw ResourceError("materialize() limited to n <= 14");
    const std::uint64_t dim = 1ull << n_;
    std::vector<Eigen::Triplet<double>> trip;
    for (std::uint64_t k = 0; k < dim; ++k) {
        const auto row = static_cast<int>(k);
        // (sum sigma^x)^2 carries a c*n diagonal on top of the i != j flips
        trip.emplace_back(row, row, diag_[k] + cat_all_pairs_ * n_);
        if (drv_ != 0.0)
            for (int i = 0; i < n_; ++i)
                trip.emplace_back(row, static_cast<int>(k ^ (1ull << i)), drv_);
        if (cat_all_pairs_ != 0.0)
            for (int i = 0; i < n_; ++i)
                for (int j = 0; j < n_; ++j)
                    if (i != j)
                        trip.emplace_back(row, static_cast<int>(k ^ (1ull << i) ^ (1ull << j)),
                                          cat_all_pairs_);
        if (cat_edge_w_ != 0.0)
            for (const auto& [i, j] : cat_edges_)
                trip.emplace_back(row, static_cast<int>(k ^ (1ull << i) ^ (1ull << j)),
                                  cat_edge_w_);
    }
    SparseMatrix m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
    m.setFromTriplets(trip.begin(), trip.end());
    return m;
}

EvolutionModel::EvolutionModel(const ModelSpec& spec) : spec_(spec) {
    spec_.validate();
    const bool noisy = spec_.noise && spec_.noise->sigma > 0.0;
    if (noisy) {
        if (spec_.n > 20)
            throw ResourceError("noisy models are built in the full 2^n space; n <= 20");
        dim_ = Eigen::Index(1) << spec_.n;
        sector_label_ = "full";
        return;
    }
    switch (spec_.kind) {
        case ModelKind::PSpin:
        case ModelKind::PSpinAltInterp:
            dicke_ = std::make_shared<DickeBasis>(spec_.n);
            if (spec_.p % 2 == 0) {
                parity_ = std::make_shared<ParitySector>(*dicke_, +1);
                dim_ = parity_->dim();
                sector_label_ = "S'+";
            } else {
                dim_ = dicke_->dim();
                sector_label_ = "S";
            }
            break;
        case ModelKind::TwoSpin:
        case ModelKind::TwoSpinAltCatalyst:
            dim_ = ProductDickeBasis(spec_.n).dim();
            sector_label_ = "product-dicke";
            break;
        case ModelKind::RingIsing:
            orbit_ = std::make_shared<OrbitBasis>(*spec_.instance, SectorCharacter{+1, +1});
            dim_ = orbit_->dim();
            sector_label_ = "S''";
            break;
    }
}

const LinearMap& EvolutionModel::at(double u) const {
    const bool noisy = spec_.noise && spec_.noise->sigma > 0.0;
    if (noisy) {
        current_ = std::make_shared<FullSpaceOp>(spec_, u);
        return *current_;
    }
    switch (spec_.kind) {
        case ModelKind::PSpin:
            current_ = std::make_shared<OperatorMatrix>(
                parity_ ? build_pspin(spec_, u, *parity_) : build_pspin(spec_, u));
            break;
        case ModelKind::PSpinAltInterp:
            current_ = std::make_shared<OperatorMatrix>(
                parity_ ? build_pspin_alt(spec_, 3.0 * u, *parity_)
                        : build_pspin_alt(spec_, 3.0 * u));
            break;
        case ModelKind::TwoSpin:
            current_ = std::make_shared<OperatorMatrix>(build_two_spin(spec_, u));
            break;
        case ModelKind::TwoSpinAltCatalyst:
            current_ = std::make_shared<OperatorMatrix>(build_two_spin_alt_catalyst(spec_, u));
            break;
        case ModelKind::RingIsing:
            current_ = std::make_shared<RingSectorOp>(build_ring_ising(spec_, *orbit_, u));
            break;
    }
    return *current_;
}

namespace {
std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%g", v);
    return buf;
}
}  // namespace

std::vector<std::string> EvolutionModel::basis_labels() const {
    std::vector<std::string> labels;
    labels.reserve(static_cast<std::size_t>(dim_));
    const bool noisy = spec_.noise && spec_.noise->sigma > 0.0;
    if (noisy) {
        for (Eigen::Index k = 0; k < dim_; ++k) {
            std::string b(static_cast<std::size_t>(spec_.n), '0');
            for (int i = 0; i < spec_.n; ++i)
                if ((static_cast<std::uint64_t>(k) >> i) & 1) b[static_cast<std::size_t>(i)] = '1';
            labels.push_back(b);
        }
        return labels;
    }
    switch (spec_.kind) {
        case ModelKind::PSpin:
        case ModelKind::PSpinAltInterp:
            if (parity_) {
                for (Eigen::Index k = 0; k < dim_; ++k)
                    labels.push_back("|M|=" + num(parity_->abs_m(static_cast<int>(k))));
            } else {
                for (Eigen::Index k = 0; k < dim_; ++k)
                    labels.push_back("M=" + num(dicke_->m(static_cast<int>(k))));
            }
            break;
        case ModelKind::TwoSpin:
        case ModelKind::TwoSpinAltCatalyst: {
            const ProductDickeBasis basis(spec_.n);
            for (Eigen::Index k = 0; k < dim_; ++k)
                labels.push_back("(" + num(basis.m1(static_cast<int>(k))) + "," +
                                 num(basis.m2(static_cast<int>(k))) + ")");
            break;
        }
        case ModelKind::RingIsing:
            for (std::uint64_t rep : orbit_->representatives()) {
                std::string b(static_cast<std::size_t>(spec_.n), '0');
                for (int i = 0; i < spec_.n; ++i)
                    if ((rep >> i) & 1) b[static_cast<std::size_t>(i)] = '1';
                labels.push_back(b);
            }
            break;
    }
    return labels;
}

std::vector<double> EvolutionModel::magnetization_diagonal() const {
    std::vector<double> diag(static_cast<std::size_t>(dim_), 0.0);
    const bool noisy = spec_.noise && spec_.noise->sigma > 0.0;
    if (noisy) {
        for (std::uint64_t k = 0; k < (1ull << spec_.n); ++k)
            diag[k] = 0.5 * (spec_.n - 2 * std::popcount(k));
        return diag;
    }
    switch (spec_.kind) {
        case ModelKind::PSpin:
        case ModelKind::PSpinAltInterp:
            if (!parity_)
                for (Eigen::Index k = 0; k < dim_; ++k)
                    diag[static_cast<std::size_t>(k)] = dicke_->m(static_cast<int>(k));
            // in the parity sector <Sz> vanishes identically; zeros are exact
            break;
        case ModelKind::TwoSpin:
        case ModelKind::TwoSpinAltCatalyst: {
            const ProductDickeBasis basis(spec_.n);
            for (Eigen::Index k = 0; k < dim_; ++k)
                diag[static_cast<std::size_t>(k)] =
                    basis.m1(static_cast<int>(k)) + basis.m2(static_cast<int>(k));
            break;
        }
        case ModelKind::RingIsing:
            // P-symmetric sector: <sigma^z_i> = 0 identically
            break;
    }
    return diag;
}

}  // namespace qagap
