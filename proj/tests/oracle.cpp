#include "oracle.hpp"

#include <bit>
#include <cmath>
#include <stdexcept>

#include "qagap/hamiltonians.hpp"

namespace oracle {

namespace {

int popcount(std::uint64_t x) { return std::popcount(x); }

// sum over i of sigma^x_i as off-diagonal bit flips
void add_transverse(Matrix& h, int n, double w) {
    const std::uint64_t dim = 1ull << n;
    for (std::uint64_t k = 0; k < dim; ++k)
        for (int i = 0; i < n; ++i) h(static_cast<long>(k ^ (1ull << i)), static_cast<long>(k)) += w;
}

void add_xx_pair(Matrix& h, std::uint64_t dim, int i, int j, double w) {
    for (std::uint64_t k = 0; k < dim; ++k)
        h(static_cast<long>(k ^ (1ull << i) ^ (1ull << j)), static_cast<long>(k)) += w;
}

double z_of(std::uint64_t k, int i) { return ((k >> i) & 1) ? -1.0 : 1.0; }

}  // namespace

Matrix full_hamiltonian(const qagap::ModelSpec& spec, double s) {
    using qagap::ModelKind;
    const int n = spec.n;
    if (n > 14) throw std::runtime_error("oracle limited to n <= 14");
    const std::uint64_t dim = 1ull << n;
    Matrix h = Matrix::Zero(static_cast<long>(dim), static_cast<long>(dim));

    std::vector<double> dh(static_cast<std::size_t>(n), 0.0);
    if (spec.noise) dh = qagap::noise_fields(*spec.noise, n);

    switch (spec.kind) {
        case ModelKind::PSpin: {
            add_transverse(h, n, -(1.0 - s));
            const double scale = s / std::pow(double(n), spec.p - 1);
            for (std::uint64_t k = 0; k < dim; ++k) {
                double mz = 0.0, noise = 0.0;
                for (int i = 0; i < n; ++i) {
                    mz += z_of(k, i);
                    noise += dh[std::size_t(i)] * z_of(k, i);
                }
                h(long(k), long(k)) += -scale * std::pow(mz, spec.p) - s * noise;
            }
            const double c = spec.lambda * s * (1.0 - s) / n;
            for (std::uint64_t k = 0; k < dim; ++k) h(long(k), long(k)) += c * n;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (i != j) add_xx_pair(h, dim, i, j, c);
            break;
        }
        case ModelKind::PSpinAltInterp: {
            // s here is the path fraction u in [0,1]; t = 3u
            const qagap::SchedulePoint pt = qagap::alt_interp_schedule(spec, 3.0 * s);
            add_transverse(h, n, -(1.0 - pt.s));
            const double scale = pt.s * pt.lambda_instantaneous / std::pow(double(n), spec.p - 1);
            for (std::uint64_t k = 0; k < dim; ++k) {
                double mz = 0.0;
                for (int i = 0; i < n; ++i) mz += z_of(k, i);
                h(long(k), long(k)) += -scale * std::pow(mz, spec.p);
            }
            const double c = spec.alt_alpha * pt.s * (1.0 - pt.lambda_instantaneous) / n;
            for (std::uint64_t k = 0; k < dim; ++k) h(long(k), long(k)) += c * n;
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    if (i != j) add_xx_pair(h, dim, i, j, c);
            break;
        }
        case ModelKind::TwoSpin:
        case ModelKind::TwoSpinAltCatalyst: {
            add_transverse(h, n, -(1.0 - s));  // -2(1-s)(S1x+S2x)
            const int half = n / 2;
            for (std::uint64_t k = 0; k < dim; ++k) {
                double m1 = 0.0, m2 = 0.0, noise = 0.0;
                for (int i = 0; i < half; ++i) m1 += 0.5 * z_of(k, i);
                for (int i = half; i < n; ++i) m2 += 0.5 * z_of(k, i);
                for (int i = 0; i < n; ++i) noise += dh[std::size_t(i)] * z_of(k, i);
                h(long(k), long(k)) +=
                    -s * (2.0 * spec.h1 * m1 - 2.0 * spec.h2 * m2 +
                          (4.0 / n) * (m1 * m1 + m2 * m2 + m1 * m2)) -
                    s * noise;
            }
            if (spec.kind == ModelKind::TwoSpin) {
                // (8 lam s(1-s)/n) S1x S2x puts 2 lam s(1-s)/n on each cross pair
                const double w = 2.0 * spec.lambda * s * (1.0 - s) / n;
                for (int i = 0; i < half; ++i)
                    for (int j = half; j < n; ++j) add_xx_pair(h, dim, i, j, w);
            } else {
                const double c = spec.lambda * s * (1.0 - s) / n;
                for (std::uint64_t k = 0; k < dim; ++k) h(long(k), long(k)) += c * n;
                for (int i = 0; i < n; ++i)
                    for (int j = 0; j < n; ++j)
                        if (i != j) add_xx_pair(h, dim, i, j, c);
            }
            break;
        }
        case ModelKind::RingIsing: {
            add_transverse(h, n, -(1.0 - s));
            for (std::uint64_t k = 0; k < dim; ++k) {
                double e = 0.0, noise = 0.0;
                for (const auto& ed : spec.instance->edges)
                    e += ed.weight * z_of(k, ed.i) * z_of(k, ed.j);
                for (int i = 0; i < n; ++i) noise += dh[std::size_t(i)] * z_of(k, i);
                h(long(k), long(k)) += s * e + s * noise;
            }
            const double c = spec.lambda * s * (1.0 - s);
            for (const auto& ed : spec.instance->edges) add_xx_pair(h, dim, ed.i, ed.j, c);
            break;
        }
    }
    return h;
}

Matrix dicke_embedding(int n) {
    const std::uint64_t dim = 1ull << n;
    Matrix v = Matrix::Zero(long(dim), n + 1);
    std::vector<double> log_fact(static_cast<std::size_t>(n) + 1, 0.0);
    for (int i = 2; i <= n; ++i)
        log_fact[std::size_t(i)] = log_fact[std::size_t(i - 1)] + std::log(double(i));
    for (std::uint64_t k = 0; k < dim; ++k) {
        const int ones = popcount(k);  // number of |1> = down spins
        const int col = n - ones;      // M = n/2 - ones, ascending index M + n/2
        const double log_binom =
            log_fact[std::size_t(n)] - log_fact[std::size_t(ones)] - log_fact[std::size_t(n - ones)];
        v(long(k), col) = std::exp(-0.5 * log_binom);
    }
    return v;
}

Matrix product_dicke_embedding(int n) {
    const int half = n / 2;
    const Matrix vg = dicke_embedding(half);
    const int g = half + 1;
    const std::uint64_t dim = 1ull << n;
    const std::uint64_t mask = (1ull << half) - 1;
    Matrix v = Matrix::Zero(long(dim), g * g);
    for (std::uint64_t k = 0; k < dim; ++k) {
        const std::uint64_t k1 = k & mask;
        const std::uint64_t k2 = k >> half;
        for (int c1 = 0; c1 < g; ++c1) {
            const double a = vg(long(k1), c1);
            if (a == 0.0) continue;
            for (int c2 = 0; c2 < g; ++c2) {
                const double b = vg(long(k2), c2);
                if (b != 0.0) v(long(k), c1 * g + c2) += a * b;
            }
        }
    }
    return v;
}

Matrix sector_embedding(const qagap::IsingInstance& inst, int flip_char, int swap_char) {
    const int n = inst.n;
    const std::uint64_t dim = 1ull << n;
    Matrix proj = Matrix::Zero(long(dim), long(dim));
    for (std::uint64_t k = 0; k < dim; ++k) {
        const std::uint64_t imgs[4] = {k, inst.apply_flip(k), inst.apply_swap(k),
                                       inst.apply_flip(inst.apply_swap(k))};
        const double chars[4] = {1.0, double(flip_char), double(swap_char),
                                 double(flip_char) * swap_char};
        for (int g = 0; g < 4; ++g) proj(long(imgs[g]), long(k)) += 0.25 * chars[g];
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(proj);
    // projector eigenvalues are 0/1; keep the unit eigenspace
    std::vector<long> keep;
    for (long i = 0; i < es.eigenvalues().size(); ++i)
        if (es.eigenvalues()[i] > 0.5) keep.push_back(i);
    Matrix basis(long(dim), static_cast<long>(keep.size()));
    for (std::size_t c = 0; c < keep.size(); ++c)
        basis.col(static_cast<long>(c)) = es.eigenvectors().col(keep[c]);
    return basis;
}

Vector eigenvalues(const Matrix& m) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(m, Eigen::EigenvaluesOnly);
    return es.eigenvalues();
}

bool spectrum_contained(const Vector& sub, const Vector& super, double tol) {
    long j = 0;
    for (long i = 0; i < sub.size(); ++i) {
        while (j < super.size() && super[j] < sub[i] - tol) ++j;
        if (j >= super.size() || std::abs(super[j] - sub[i]) > tol) return false;
        ++j;
    }
    return true;
}

}  // namespace oracle
