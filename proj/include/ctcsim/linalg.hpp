#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace ctcsim {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Index = Eigen::Index;

// Numerical tolerances shared by the validity checks. The defaults are the
// values every module assumes; the CLI may override them per run.
struct Tolerances {
  double norm = 1e-10;       // |‖v‖ − 1| and |Tr ρ − 1|
  double hermitian = 1e-10;  // max |ρ_ij − conj(ρ_ji)|
  double psd = 1e-9;         // −λ_min(ρ)
  double unitary = 1e-10;    // max-entry norm of U†U − I
  double distinct = 1e-9;    // pairwise fidelity must stay below 1 − distinct
};

inline constexpr double kTolGramSchmidt = 1e-10;
// Above this level of lost orthogonality a second projection pass is made.
inline constexpr double kReorthogonalizeThreshold = 1e-8;

class DensityMatrix;

/// Normalized pure state of dimension dim().
class StateVector {
 public:
  explicit StateVector(Vector amplitudes, const Tolerances& tol = {});

  static StateVector basis(Index dim, Index index);

  const Vector& amplitudes() const noexcept { return amplitudes_; }
  Index dim() const noexcept { return amplitudes_.size(); }
  Complex operator[](Index i) const { return amplitudes_(i); }

  /// |ψ⟩⟨ψ| as a density matrix.
  DensityMatrix projector() const;

 private:
  Vector amplitudes_;
};

/// Hermitian, unit-trace, positive semidefinite matrix.
class DensityMatrix {
 public:
  explicit DensityMatrix(Matrix entries, const Tolerances& tol = {});

  static DensityMatrix maximally_mixed(Index dim);

  const Matrix& matrix() const noexcept { return entries_; }
  Index dim() const noexcept { return entries_.rows(); }

 private:
  Matrix entries_;
};

class UnitaryMatrix {
 public:
  explicit UnitaryMatrix(Matrix entries, const Tolerances& tol = {});

  static UnitaryMatrix identity(Index dim);

  const Matrix& matrix() const noexcept { return entries_; }
  Index dim() const noexcept { return entries_.rows(); }
  UnitaryMatrix adjoint() const;

 private:
  Matrix entries_;
};

/// N distinct (not necessarily orthogonal) states in an N-dimensional space.
class StateSet {
 public:
  explicit StateSet(std::vector<StateVector> states, const Tolerances& tol = {});

  std::size_t size() const noexcept { return states_.size(); }
  Index dim() const noexcept { return static_cast<Index>(states_.size()); }
  const StateVector& operator[](std::size_t i) const { return states_.at(i); }
  std::span<const StateVector> states() const noexcept { return states_; }
  auto begin() const noexcept { return states_.begin(); }
  auto end() const noexcept { return states_.end(); }

 private:
  std::vector<StateVector> states_;
};

// ---------------------------------------------------------------------------
// Validity reports. These never throw; the typed constructors above throw a
// ValidationError built from the first failing check.

struct InvariantCheck {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
};

struct ValidityReport {
  std::string kind;
  std::vector<InvariantCheck> checks;

  bool ok() const noexcept;
  /// First failing check rendered as "kind: name (residual r > tol t)".
  std::string first_failure() const;
};

ValidityReport validate_state(const Vector& amplitudes, const Tolerances& tol = {});
ValidityReport validate_density(const Matrix& entries, const Tolerances& tol = {});
ValidityReport validate_unitary(const Matrix& entries, const Tolerances& tol = {});
ValidityReport validate_state_set(std::span<const Vector> states, const Tolerances& tol = {});

ValidityReport validate(const StateVector& v, const Tolerances& tol = {});
ValidityReport validate(const DensityMatrix& rho, const Tolerances& tol = {});
ValidityReport validate(const UnitaryMatrix& u, const Tolerances& tol = {});
ValidityReport validate(const StateSet& set, const Tolerances& tol = {});

// ---------------------------------------------------------------------------
// Dense operations.

// Kronecker product, first factor is the slow index:
// result(i*p + k, j*q + l) = a(i, j) * b(k, l) for b of shape p×q.
Matrix tensor_product(const Matrix& a, const Matrix& b);

enum class Subsystem { first, second };

// Reduced matrix of the kept subsystem of a (dim_a·dim_b)-square operator
// laid out as tensor_product(A, B).
Matrix partial_trace(const Matrix& m, Index dim_a, Index dim_b, Subsystem keep);

/// Unitary whose column 0 is `first`. The remaining columns come from modified
/// Gram–Schmidt over `candidates` in order (near-dependent vectors skipped),
/// then over the standard basis until the basis is complete.
UnitaryMatrix unitary_from_first_column(const StateVector& first,
                                        std::span<const StateVector> candidates);

double state_fidelity(const StateVector& a, const StateVector& b);

double max_entry_norm(const Matrix& m);

// -Tr ρ log ρ in nats; eigenvalues below zero are clamped.
double von_neumann_entropy(const Matrix& rho);

// Smallest eigenvalue of the Hermitian part of m.
double min_hermitian_eigenvalue(const Matrix& m);

Matrix outer(const Vector& v);

}  // namespace ctcsim
