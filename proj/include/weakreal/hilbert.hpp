// Finite-dimensional complex Hilbert-space core: labeled tensor-product
// bases, kets, Hermitian operators, projectors, and unitaries.
//
// All types are immutable after construction and safe to share across
// threads. Storage is dense; every space in scope has dimension <= 729.

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace weakreal {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

constexpr double kHermitianTol = 1e-12;
constexpr double kOrthogonalityTol = 1e-12;
constexpr double kEigenGroupTol = 1e-9;
constexpr double kReconstructTol = 1e-10;

/// One tensor factor: an id plus the names of its local basis states.
struct Subsystem {
    std::string id;
    std::vector<std::string> states;

    int dim() const { return static_cast<int>(states.size()); }
    bool operator==(const Subsystem& o) const { return id == o.id && states == o.states; }
};

/// Ordered list of subsystems; basis indices are row-major in this order.
class ProductSpace {
  public:
    ProductSpace() = default;
    explicit ProductSpace(std::vector<Subsystem> parts);

    /// Convenience: a single unlabeled d-level system with states "0".."d-1".
    static ProductSpace single(int dim, const std::string& id = "sys");

    const std::vector<Subsystem>& parts() const { return parts_; }
    int dim() const { return dim_; }
    int num_subsystems() const { return static_cast<int>(parts_.size()); }

    /// Row-major flat index from one local state index per subsystem.
    int flat_index(const std::vector<int>& locals) const;
    /// Inverse of flat_index.
    std::vector<int> multi_index(int flat) const;

    /// Human-readable label of a basis state, e.g. "L+,R-".
    std::string label(int flat) const;
    /// Flat index of the basis state with the given local state names.
    int index_of(const std::vector<std::string>& state_names) const;

    bool operator==(const ProductSpace& o) const { return parts_ == o.parts_; }
    bool operator!=(const ProductSpace& o) const { return !(*this == o); }

  private:
    std::vector<Subsystem> parts_;
    int dim_{0};
};

/// Complex amplitude vector over a labeled product basis.
/// May be stored unnormalized; the zero vector is rejected.
class Ket {
  public:
    Ket(ProductSpace space, Vector amplitudes, bool normalized = false);

    static Ket basis_state(const ProductSpace& space, int index);

    const ProductSpace& space() const { return space_; }
    const Vector& amplitudes() const { return amps_; }
    bool normalized() const { return normalized_; }
    int dim() const { return static_cast<int>(amps_.size()); }

    double norm() const { return amps_.norm(); }
    Ket normalize() const;
    Ket scaled(cplx factor) const { return Ket(space_, amps_ * factor, false); }

  private:
    ProductSpace space_;
    Vector amps_;
    bool normalized_;
};

/// <a|b> with a conjugated.
inline cplx inner(const Ket& a, const Ket& b) { return a.amplitudes().dot(b.amplitudes()); }

class Projector;

/// Hermitian matrix with an optional cached eigensystem.
class HermitianOperator {
  public:
    explicit HermitianOperator(Matrix m);

    const Matrix& matrix() const { return m_; }
    int dim() const { return static_cast<int>(m_.rows()); }

    static HermitianOperator pauli_x();
    static HermitianOperator pauli_y();
    static HermitianOperator pauli_z();

  private:
    Matrix m_;
};

/// Orthogonal projector. Construction is either from a set of basis
/// indices (support-diagonal) or from a generating ket (rank 1).
class Projector {
  public:
    static Projector from_support(int dim, std::vector<int> support);
    static Projector from_ket(const Ket& k);
    /// Sum of mutually orthogonal rank-1 generating kets.
    static Projector from_kets(const std::vector<Ket>& kets);
    /// From an explicit idempotent Hermitian matrix.
    static Projector from_matrix(Matrix m);

    const Matrix& matrix() const { return m_; }
    int rank() const { return rank_; }
    int dim() const { return static_cast<int>(m_.rows()); }
    /// Basis-index support; present only for support-diagonal projectors.
    const std::optional<std::vector<int>>& support() const { return support_; }

  private:
    Projector(Matrix m, int rank, std::optional<std::vector<int>> support);
    Matrix m_;
    int rank_;
    std::optional<std::vector<int>> support_;
};

class UnitaryMap {
  public:
    explicit UnitaryMap(Matrix m, std::optional<double> time_parameter = std::nullopt);

    const Matrix& matrix() const { return m_; }
    std::optional<double> time_parameter() const { return t_; }
    int dim() const { return static_cast<int>(m_.rows()); }

  private:
    Matrix m_;
    std::optional<double> t_;
};

/// Time-parameterized unitary family U(t); U(0) = I, U(-t) = U(t)^dagger.
using UnitaryFamily = std::function<UnitaryMap(double)>;

/// Kronecker product of kets in declared subsystem order.
/// Rejects duplicate subsystem ids.
Ket tensor(const std::vector<Ket>& kets);

/// Sum of mutually orthogonal projectors; rank is the sum of ranks.
Projector coarse_grain(const std::vector<Projector>& projectors);

struct EigenSystem {
    std::vector<double> eigenvalues;     // distinct, ascending
    std::vector<Projector> projectors;   // one per distinct eigenvalue
};

/// Spectral decomposition with degenerate eigenvalues grouped into a
/// single higher-rank projector (grouping tolerance 1e-9 on the gap).
EigenSystem eigendecompose(const HermitianOperator& op);

/// Check that {projectors} is a complete orthogonal family on dim.
bool is_complete_orthogonal_family(const std::vector<Projector>& projectors, int dim,
                                   double tol = kOrthogonalityTol);

}  // namespace weakreal
