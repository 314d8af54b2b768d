#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "qagap/operator_matrix.hpp"

namespace qagap {

/// Edge-weighted Ising graph on two swappable rings. Spins are 0-based; bit i
/// of a basis state holds spin i, bit value 0 meaning sigma^z eigenvalue +1.
struct IsingInstance {
    struct Edge {
        int i, j;
        double weight;
    };

    int n = 0;
    std::vector<Edge> edges;
    std::vector<int> ring_swap;  // order-2 permutation exchanging the rings
    std::string provenance;      // free-form construction note

    double ising_energy(std::uint64_t state) const;
    std::uint64_t apply_swap(std::uint64_t state) const;
    std::uint64_t apply_flip(std::uint64_t state) const {
        return state ^ ((n == 64) ? ~0ull : ((1ull << n) - 1));
    }
};

/// Line-oriented instance file: `n <int>`, `swap <n ints>`, `edge i j J`
/// (J accepts decimals or fractions like -1/2), `#` comments.
IsingInstance read_instance(std::istream& in);
IsingInstance read_instance_file(const std::string& path);
void write_instance(const IsingInstance& inst, std::ostream& out);

/// The two-ring family used throughout: per ring a cycle of unit
/// ferromagnetic couplings except the two half-strength edges flanking the
/// ring's center spin, a unit ferromagnetic rung joining the two centers and
/// a 5/6 antiferromagnetic rung joining the two anchors (spins 0 and n/2).
IsingInstance canonical_two_ring(int n);

struct InstanceDiagnostics {
    bool ok = true;
    std::vector<std::string> violations;
    std::vector<std::string> notes;
    int ground_degeneracy = 0;
    double ground_energy = 0.0;
    double first_excited_gap = 0.0;
    int first_excited_degeneracy = 0;
    std::vector<std::uint64_t> ground_states;
};

/// Structural checks (simple graph, involution, swap-invariant edge set,
/// canonical weight family) plus, for n <= 20, the s=1 degeneracy contract.
InstanceDiagnostics validate_instance(const IsingInstance& inst);

/// Character sector of the group {1, P, R, PR}; P = global flip, R = ring swap.
struct SectorCharacter {
    int flip = 1;  // +1 or -1 under P
    int swap = 1;  // +1 or -1 under R
};

/// Orbit-reduced basis for one character sector. Holds per-state lookup
/// tables so the matrix-free action below touches each neighbor in O(1).
class OrbitBasis {
public:
    static constexpr int kDefaultMaxQubits = 26;

    OrbitBasis(const IsingInstance& inst, SectorCharacter sector,
               int max_qubits = kDefaultMaxQubits);

    Eigen::Index dim() const { return static_cast<Eigen::Index>(reps_.size()); }
    SectorCharacter sector() const { return sector_; }
    const IsingInstance& instance() const { return inst_; }
    const std::vector<std::uint64_t>& representatives() const { return reps_; }
    int orbit_size(Eigen::Index k) const { return sizes_[static_cast<std::size_t>(k)]; }
    std::uint64_t total_states() const { return 1ull << inst_.n; }

    /// Sector index of the orbit containing `state', or -1 if the orbit's
    /// symmetrized sum vanishes in this sector.
    std::int64_t sector_index(std::uint64_t state) const {
        std::uint32_t v = index_[state];
        return v == kDropped ? -1 : static_cast<std::int64_t>(v);
    }
    /// Character of the group element carrying the representative to `state'.
    double sign(std::uint64_t state) const { return sign_[state]; }

    /// y = (wd * driver + wi * ising_diag + wc * catalyst) x restricted to the
    /// sector, with driver = -sum sigma^x reinterpreted per caller weights:
    /// driver term contributes wd per single flip, catalyst wc per coupled
    /// double flip and the diagonal wi * E_ising(rep).
    void apply_terms(double wd, double wi, double wc, const Vector& x, Vector& y) const;

    const std::vector<double>& rep_ising_energy() const { return rep_energy_; }

private:
    static constexpr std::uint32_t kDropped = 0xffffffffu;

    IsingInstance inst_;
    SectorCharacter sector_;
    std::vector<std::uint64_t> reps_;
    std::vector<int> sizes_;
    std::vector<double> rep_energy_;
    std::vector<std::uint32_t> index_;  // state -> sector index (or dropped)
    std::vector<float> sign_;           // state -> character of carrying element
    std::vector<double> sqrt_size_;     // per sector index
};

/// H(s) = -(1-s) sum sigma^x + s sum J sigma^z sigma^z
///        + lambda s (1-s) sum_<ij> sigma^x sigma^x, acting in the sector.
class RingSectorOp final : public LinearMap {
public:
    RingSectorOp(const OrbitBasis& basis, double lambda, double s)
        : basis_(&basis), wd_(-(1.0 - s)), wi_(s), wc_(lambda * s * (1.0 - s)) {}

    Eigen::Index dim() const override { return basis_->dim(); }
    void apply(const Vector& x, Vector& y) const override {
        basis_->apply_terms(wd_, wi_, wc_, x, y);
    }

private:
    const OrbitBasis* basis_;
    double wd_, wi_, wc_;
};

}  // namespace qagap
