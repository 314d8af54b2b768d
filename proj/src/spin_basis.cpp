#include "qagap/spin_basis.hpp"

#include <cmath>

#include "qagap/errors.hpp"

namespace qagap {

namespace {
constexpr double kReflectionTol = 1e-12;
}

DickeBasis::DickeBasis(int n_qubits) : n(n_qubits), S(0.5 * n_qubits) {
    if (n < 1) throw InvalidModelError("DickeBasis requires n >= 1");
    m_values.reserve(static_cast<std::size_t>(n) + 1);
    for (int i = 0; i <= n; ++i) m_values.push_back(-S + i);
}

ProductDickeBasis::ProductDickeBasis(int n_qubits) : n(n_qubits) {
    if (n < 4 || n % 4 != 0)
        throw InvalidModelError("ProductDickeBasis requires n divisible by 4");
    S1 = S2 = 0.25 * n;
}

double ProductDickeBasis::m1(int i) const { return -S1 + i / group_dim(); }
double ProductDickeBasis::m2(int i) const { return -S2 + i % group_dim(); }

ParitySector::ParitySector(const DickeBasis& parent, int eig)
    : n(parent.n), eigenvalue(eig) {
    if (eig != 1 && eig != -1)
        throw InvalidModelError("parity eigenvalue must be +1 or -1");
    if (n % 2 != 0)
        throw InvalidModelError("parity sectors are defined for even n");
}

int ParitySector::dim() const { return eigenvalue == 1 ? n / 2 + 1 : n / 2; }

double ParitySector::abs_m(int i) const {
    return eigenvalue == 1 ? static_cast<double>(i) : static_cast<double>(i + 1);
}

CollectiveOps build_collective_ops(const DickeBasis& basis) {
    const int d = basis.dim();
    const double S = basis.S;
    DenseMatrix sx = DenseMatrix::Zero(d, d);
    DenseMatrix sz = DenseMatrix::Zero(d, d);
    for (int i = 0; i < d; ++i) sz(i, i) = basis.m(i);
    for (int i = 0; i + 1 < d; ++i) {
        const double m = basis.m(i);
        const double v = 0.5 * std::sqrt(S * (S + 1) - m * (m + 1));
        sx(i, i + 1) = v;
        sx(i + 1, i) = v;
    }
    return {OperatorMatrix(std::move(sx), "dicke"), OperatorMatrix(std::move(sz), "dicke")};
}

ProductOps build_product_ops(const ProductDickeBasis& basis) {
    const int g = basis.group_dim();
    const int d = basis.dim();
    const double S = basis.S1;

    auto off = [S](int i) {
        const double m = -S + i;
        return 0.5 * std::sqrt(S * (S + 1) - m * (m + 1));
    };

    std::vector<Eigen::Triplet<double>> t1x, t1z, t2x, t2z;
    t1x.reserve(2 * static_cast<std::size_t>(d));
    t2x.reserve(2 * static_cast<std::size_t>(d));
    for (int i1 = 0; i1 < g; ++i1) {
        for (int i2 = 0; i2 < g; ++i2) {
            const int row = basis.index(i1, i2);
            t1z.emplace_back(row, row, -S + i1);
            t2z.emplace_back(row, row, -S + i2);
            if (i1 + 1 < g) {
                const double v = off(i1);
                t1x.emplace_back(row, basis.index(i1 + 1, i2), v);
                t1x.emplace_back(basis.index(i1 + 1, i2), row, v);
            }
            if (i2 + 1 < g) {
                const double v = off(i2);
                t2x.emplace_back(row, basis.index(i1, i2 + 1), v);
                t2x.emplace_back(basis.index(i1, i2 + 1), row, v);
            }
        }
    }
    auto make = [d](std::vector<Eigen::Triplet<double>>& t) {
        SparseMatrix m(d, d);
        m.setFromTriplets(t.begin(), t.end());
        return OperatorMatrix(std::move(m), "product-dicke");
    };
    return {make(t1x), make(t1z), make(t2x), make(t2z)};
}

double reflection_commutator_residual(const OperatorMatrix& op) {
    const DenseMatrix m = op.to_dense();
    const Eigen::Index d = m.rows();
    double r = 0.0;
    // reflection: index i -> d-1-i
    for (Eigen::Index i = 0; i < d; ++i)
        for (Eigen::Index j = 0; j < d; ++j)
            r = std::max(r, std::abs(m(i, j) - m(d - 1 - i, d - 1 - j)));
    return r;
}

OperatorMatrix project_parity(const OperatorMatrix& op, const ParitySector& sector) {
    const DenseMatrix m = op.to_dense();
    const int n = sector.n;
    if (m.rows() != n + 1)
        throw InvalidModelError("operator dimension does not match sector parent basis");

    const double residual = reflection_commutator_residual(op);
    if (residual > kReflectionTol)
        throw SymmetryViolationError("operator does not commute with the M -> -M reflection",
                                     residual);

    const int S = n / 2;  // index of M = 0 in the parent basis
    const int d = sector.dim();
    DenseMatrix out(d, d);
    // +1 sector vectors: u_0 = |0>, u_k = (|k> + |-k>)/sqrt(2), k = 1..S
    // -1 sector vectors: u_k = (|k> - |-k>)/sqrt(2), k = 1..S
    auto idx = [&](int k) { return sector.eigenvalue == 1 ? k : k + 1; };
    for (int a = 0; a < d; ++a) {
        const int ka = idx(a);
        for (int b = 0; b < d; ++b) {
            const int kb = idx(b);
            double v;
            if (ka == 0 && kb == 0)
                v = m(S, S);
            else if (ka == 0)
                v = std::sqrt(2.0) * m(S, S + kb);
            else if (kb == 0)
                v = std::sqrt(2.0) * m(S + ka, S);
            else
                v = m(S + ka, S + kb) +
                    static_cast<double>(sector.eigenvalue) * m(S + ka, S - kb);
            out(a, b) = v;
        }
    }
    // enforce exact elementwise symmetry against rounding in the fold
    for (int a = 0; a < d; ++a)
        for (int b = a + 1; b < d; ++b) {
            const double v = 0.5 * (out(a, b) + out(b, a));
            out(a, b) = v;
            out(b, a) = v;
        }
    return OperatorMatrix(std::move(out),
                          sector.eigenvalue == 1 ? "dicke-parity+" : "dicke-parity-");
}

}  // namespace qagap
