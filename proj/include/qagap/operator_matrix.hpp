#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <string>
#include <variant>

namespace qagap {

using DenseMatrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Vector = Eigen::VectorXd;

/// Abstract real symmetric operator: the eigensolvers only need dim() and
/// apply(). dense() returns a pointer when a dense view is cheaply available.
class LinearMap {
public:
    virtual ~LinearMap() = default;
    virtual Eigen::Index dim() const = 0;
    virtual void apply(const Vector& x, Vector& y) const = 0;
    virtual const DenseMatrix* dense() const { return nullptr; }

    Vector operator()(const Vector& x) const {
        Vector y(dim());
        apply(x, y);
        return y;
    }
};

/// Real symmetric matrix in a named basis, stored dense or sparse-by-rows.
class OperatorMatrix final : public LinearMap {
public:
    OperatorMatrix() = default;
    OperatorMatrix(DenseMatrix m, std::string basis)
        : storage_(std::move(m)), basis_(std::move(basis)) {}
    OperatorMatrix(SparseMatrix m, std::string basis)
        : storage_(std::move(m)), basis_(std::move(basis)) {}

    Eigen::Index dim() const override {
        if (is_dense()) return std::get<DenseMatrix>(storage_).rows();
        return std::get<SparseMatrix>(storage_).rows();
    }

    bool is_dense() const { return std::holds_alternative<DenseMatrix>(storage_); }

    const DenseMatrix& dense_storage() const { return std::get<DenseMatrix>(storage_); }
    const SparseMatrix& sparse_storage() const { return std::get<SparseMatrix>(storage_); }

    DenseMatrix to_dense() const {
        if (is_dense()) return dense_storage();
        return DenseMatrix(sparse_storage());
    }

    void apply(const Vector& x, Vector& y) const override {
        if (is_dense())
            y.noalias() = dense_storage() * x;
        else
            y.noalias() = sparse_storage() * x;
    }

    const DenseMatrix* dense() const override {
        return is_dense() ? &dense_storage() : nullptr;
    }

    const std::string& basis() const { return basis_; }

    /// Largest |entry| mismatch against the transpose; 0 for symmetric storage.
    double symmetry_residual() const;

    /// Infinity norm (max absolute row sum), used as a cheap ||H|| estimate.
    double inf_norm() const;

    double max_abs_offdiag() const;

private:
    std::variant<DenseMatrix, SparseMatrix> storage_;
    std::string basis_;
};

}  // namespace qagap
