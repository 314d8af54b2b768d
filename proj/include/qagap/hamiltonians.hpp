#pragma once

#include <memory>

#include "qagap/model_spec.hpp"
#include "qagap/operator_matrix.hpp"
#include "qagap/spin_basis.hpp"

namespace qagap {

/// H(s) = -2(1-s) Sx - (s/n^{p-1}) (2 Sz)^p + (4 lambda s(1-s)/n) Sx^2 in the
/// full Dicke basis.
OperatorMatrix build_pspin(const ModelSpec& spec, double s);

/// Same, restricted to a parity sector (only valid for p even).
OperatorMatrix build_pspin(const ModelSpec& spec, double s, const ParitySector& sector);

/// Interpolation with the problem-weighted schedule
/// H_alpha(s,lam) = -2(1-s) Sx - (s lam/n^{p-1}) (2 Sz)^p + (4 alpha s(1-lam)/n) Sx^2
/// traversed along the three-leg path (0,0)->(0,l*)->(1,l*)->(1,1); t in [0,3].
OperatorMatrix build_pspin_alt(const ModelSpec& spec, double t);
OperatorMatrix build_pspin_alt(const ModelSpec& spec, double t, const ParitySector& sector);

/// (s, lambda) reached after fraction t of the alt-interp path.
struct SchedulePoint {
    double s;
    double lambda_instantaneous;
};
SchedulePoint alt_interp_schedule(const ModelSpec& spec, double t);

/// H(s) of the 2-local large-spin tunneling model in the product-Dicke basis.
OperatorMatrix build_two_spin(const ModelSpec& spec, double s);

/// Variant with the catalyst 2 S1x S2x replaced by (S1x + S2x)^2.
OperatorMatrix build_two_spin_alt_catalyst(const ModelSpec& spec, double s);

/// Ring-Ising action in one symmetry sector of {P, ring swap}.
RingSectorOp build_ring_ising(const ModelSpec& spec, const OrbitBasis& basis, double s);

/// Gaussian longitudinal fields delta_h_i, deterministic per
/// (seed, realization, spin); sigma = 0 yields exact zeros.
std::vector<double> noise_fields(const NoiseSpec& noise, int n);

/// Matrix-free H(s) over the full 2^n computational basis, with optional
/// noise fields added to the problem Hamiltonian. Used for noisy models
/// (where the symmetry reduction is invalid) and as a cross-check path.
class FullSpaceOp final : public LinearMap {
public:
    FullSpaceOp(const ModelSpec& spec, double s);

    Eigen::Index dim() const override { return static_cast<Eigen::Index>(diag_.size()); }
    void apply(const Vector& x, Vector& y) const override;

    /// Explicit sparse matrix (n <= 14); entries match apply() exactly.
    SparseMatrix materialize() const;

private:
    int n_;
    double drv_;              // single-flip coefficient
    double cat_all_pairs_;    // sigma^x sigma^x coefficient over all pairs
    std::vector<std::pair<int, int>> cat_edges_;  // explicit pair list (ring kind)
    double cat_edge_w_ = 0.0;
    std::vector<double> diag_;
    mutable Vector scratch_;
};

/// Evolution-sector operator factory used by the spectral layer: builds the
/// model's H(s) in its default evolution subspace (S' for p even, S for p odd,
/// the product basis for the two-spin kinds, the (+1,+1) orbit sector for
/// ring-ising, the full 2^n space when noise is present).
class EvolutionModel {
public:
    explicit EvolutionModel(const ModelSpec& spec);

    const ModelSpec& spec() const { return spec_; }
    Eigen::Index dim() const { return dim_; }
    std::string sector_label() const { return sector_label_; }
    /// True when a p-even model was requested without a parity sector.
    bool sector_warning() const { return sector_warning_; }

    /// Operator at interpolation parameter u in [0,1] (the alt-interp path is
    /// traversed with t = 3u). The returned pointer stays valid until the
    /// next call on this object.
    const LinearMap& at(double u) const;

    /// Basis labels for wavefunction profiles, in basis order.
    std::vector<std::string> basis_labels() const;

    /// Ground-space observable hook: diagonal of (S1z + S2z) / Sz-type
    /// magnetization in the evolution basis; empty if undefined.
    std::vector<double> magnetization_diagonal() const;

    const OrbitBasis* orbit_basis() const { return orbit_.get(); }

private:
    ModelSpec spec_;
    Eigen::Index dim_ = 0;
    std::string sector_label_;
    bool sector_warning_ = false;
    std::shared_ptr<DickeBasis> dicke_;
    std::shared_ptr<ParitySector> parity_;
    std::shared_ptr<OrbitBasis> orbit_;
    mutable std::shared_ptr<LinearMap> current_;
};

}  // namespace qagap
