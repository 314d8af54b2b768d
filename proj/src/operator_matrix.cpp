#include "qagap/operator_matrix.hpp"

namespace qagap {

double OperatorMatrix::symmetry_residual() const {
    if (is_dense()) {
        const DenseMatrix& m = dense_storage();
        return (m - m.transpose()).cwiseAbs().maxCoeff();
    }
    SparseMatrix t = SparseMatrix(sparse_storage().transpose());
    SparseMatrix d = sparse_storage() - t;
    double r = 0.0;
    for (int k = 0; k < d.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(d, k); it; ++it)
            r = std::max(r, std::abs(it.value()));
    return r;
}

double OperatorMatrix::inf_norm() const {
    if (is_dense()) return dense_storage().cwiseAbs().rowwise().sum().maxCoeff();
    const SparseMatrix& m = sparse_storage();
    double best = 0.0;
    for (int k = 0; k < m.outerSize(); ++k) {
        double row = 0.0;
        for (SparseMatrix::InnerIterator it(m, k); it; ++it) row += std::abs(it.value());
        best = std::max(best, row);
    }
    return best;
}

double OperatorMatrix::max_abs_offdiag() const {
    double r = 0.0;
    if (is_dense()) {
        const DenseMatrix& m = dense_storage();
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j)
                if (i != j) r = std::max(r, std::abs(m(i, j)));
        return r;
    }
    const SparseMatrix& m = sparse_storage();
    for (int k = 0; k < m.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(m, k); it; ++it)
            if (it.row() != it.col()) r = std::max(r, std::abs(it.value()));
    return r;
}

}  // namespace qagap
