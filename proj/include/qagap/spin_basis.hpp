#pragma once

#include <vector>

#include "qagap/operator_matrix.hpp"

namespace qagap {

/// Permutation-symmetric basis |S,M> for n qubits, S = n/2.
/// M runs from -n/2 to n/2 in ascending order (index 0 is M = -S).
struct DickeBasis {
    explicit DickeBasis(int n_qubits);

    int n;
    double S;
    std::vector<double> m_values;

    int dim() const { return n + 1; }
    double m(int i) const { return m_values[static_cast<std::size_t>(i)]; }
};

/// Product of two Dicke bases |M1> x |M2| with S1 = S2 = n/4, requiring n
/// divisible by 4. Ordering is row-major in (M1, M2), each ascending.
struct ProductDickeBasis {
    explicit ProductDickeBasis(int n_qubits);

    int n;
    double S1, S2;

    int group_dim() const { return n / 2 + 1; }
    int dim() const { return group_dim() * group_dim(); }
    double m1(int i) const;
    double m2(int i) const;
    int index(int i1, int i2) const { return i1 * group_dim() + i2; }
};

/// Parity (P = prod sigma^x) eigensector of a Dicke basis. Basis vectors are
/// (|S,M> + eig*|S,-M>)/sqrt(2) for M > 0, plus |S,0> in the +1 sector,
/// ordered by ascending |M|.
struct ParitySector {
    ParitySector(const DickeBasis& parent, int eigenvalue);

    int n;
    int eigenvalue;  // +1 or -1

    int dim() const;
    /// |M| value of sector basis vector i.
    double abs_m(int i) const;
};

struct CollectiveOps {
    OperatorMatrix sx;
    OperatorMatrix sz;
};

struct ProductOps {
    OperatorMatrix s1x, s1z, s2x, s2z;
};

/// Sx (tridiagonal) and Sz (diagonal) in the Dicke basis, with
/// <S,M+-1|Sx|S,M> = 0.5*sqrt(S(S+1) - M(M+-1)).
CollectiveOps build_collective_ops(const DickeBasis& basis);

/// Group operators S1/S2 acting on the product basis as (op x id) / (id x op).
ProductOps build_product_ops(const ProductDickeBasis& basis);

/// Restrict an operator to a parity sector. The operator must commute with
/// the M -> -M reflection to 1e-12 (max norm), else SymmetryViolationError.
OperatorMatrix project_parity(const OperatorMatrix& op, const ParitySector& sector);

/// Max-norm residual of [reflection, op]; the project_parity precondition.
double reflection_commutator_residual(const OperatorMatrix& op);

}  // namespace qagap
