#include "ctcsim/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ctcsim/errors.hpp"

namespace ctcsim {

namespace {

InvariantCheck make_check(std::string name, double residual, double tolerance) {
  return {std::move(name), residual <= tolerance, residual, tolerance};
}

void throw_if_invalid(const ValidityReport& report) {
  if (report.ok()) return;
  for (const auto& c : report.checks) {
    if (c.passed) continue;
    if (c.name == "dimension") throw DimensionError(report.first_failure());
    if (c.name == "norm") throw NormalizationError(report.first_failure());
    break;
  }
  throw ValidationError(report.first_failure());
}

bool square(const Matrix& m) { return m.rows() == m.cols() && m.rows() > 0; }

// One modified Gram–Schmidt sweep of v against the accepted columns.
void project_out(const std::vector<Vector>& basis, Vector& v) {
  for (const auto& q : basis) v -= q.dot(v) * q;
}

// Appends the orthonormalized residual of v to basis unless it is
// numerically dependent on what is already there.
void try_extend(std::vector<Vector>& basis, Vector v) {
  project_out(basis, v);
  double r = v.norm();
  if (r < kTolGramSchmidt) return;
  double loss = 0.0;
  for (const auto& q : basis) loss = std::max(loss, std::abs(q.dot(v)) / r);
  if (loss > kReorthogonalizeThreshold) {
    project_out(basis, v);
    r = v.norm();
    if (r < kTolGramSchmidt) return;
  }
  basis.push_back(v / r);
}

}  // namespace

// --- validity ---------------------------------------------------------------

bool ValidityReport::ok() const noexcept {
  return std::all_of(checks.begin(), checks.end(),
                     [](const InvariantCheck& c) { return c.passed; });
}

std::string ValidityReport::first_failure() const {
  for (const auto& c : checks) {
    if (c.passed) continue;
    std::ostringstream os;
    os << kind << ": " << c.name << " invariant violated (residual " << c.residual
       << " > tolerance " << c.tolerance << ")";
    return os.str();
  }
  return {};
}

ValidityReport validate_state(const Vector& amplitudes, const Tolerances& tol) {
  ValidityReport report{"StateVector", {}};
  if (amplitudes.size() == 0) {
    report.checks.push_back({"dimension", false, 1.0, 0.0});
    return report;
  }
  report.checks.push_back({"dimension", true, 0.0, 0.0});
  report.checks.push_back(make_check("norm", std::abs(amplitudes.norm() - 1.0), tol.norm));
  return report;
}

ValidityReport validate_density(const Matrix& entries, const Tolerances& tol) {
  ValidityReport report{"DensityMatrix", {}};
  if (!square(entries)) {
    report.checks.push_back({"dimension", false, 1.0, 0.0});
    return report;
  }
  report.checks.push_back({"dimension", true, 0.0, 0.0});
  report.checks.push_back(
      make_check("hermitian", max_entry_norm(entries - entries.adjoint()), tol.hermitian));
  report.checks.push_back(make_check("trace", std::abs(entries.trace() - Complex(1.0)), tol.norm));
  double lambda_min = min_hermitian_eigenvalue(entries);
  report.checks.push_back(make_check("psd", std::max(0.0, -lambda_min), tol.psd));
  return report;
}

ValidityReport validate_unitary(const Matrix& entries, const Tolerances& tol) {
  ValidityReport report{"UnitaryMatrix", {}};
  if (!square(entries)) {
    report.checks.push_back({"dimension", false, 1.0, 0.0});
    return report;
  }
  report.checks.push_back({"dimension", true, 0.0, 0.0});
  Matrix gram = entries.adjoint() * entries;
  gram -= Matrix::Identity(entries.rows(), entries.cols());
  report.checks.push_back(make_check("unitarity", max_entry_norm(gram), tol.unitary));
  return report;
}

ValidityReport validate_state_set(std::span<const Vector> states, const Tolerances& tol) {
  ValidityReport report{"StateSet", {}};
  const auto n = static_cast<Index>(states.size());
  bool dims_ok = n > 0 && std::all_of(states.begin(), states.end(),
                                      [n](const Vector& v) { return v.size() == n; });
  report.checks.push_back({"dimension", dims_ok, dims_ok ? 0.0 : 1.0, 0.0});
  if (!dims_ok) return report;

  double worst_norm = 0.0;
  for (const auto& v : states) worst_norm = std::max(worst_norm, std::abs(v.norm() - 1.0));
  report.checks.push_back(make_check("norm", worst_norm, tol.norm));

  // Residual is the largest pairwise fidelity; it must stay below 1 − distinct.
  double worst_overlap = 0.0;
  for (std::size_t i = 0; i < states.size(); ++i)
    for (std::size_t j = i + 1; j < states.size(); ++j)
      worst_overlap = std::max(worst_overlap, std::norm(states[i].dot(states[j])));
  report.checks.push_back(
      {"distinct", worst_overlap < 1.0 - tol.distinct, worst_overlap, 1.0 - tol.distinct});
  return report;
}

ValidityReport validate(const StateVector& v, const Tolerances& tol) {
  return validate_state(v.amplitudes(), tol);
}
ValidityReport validate(const DensityMatrix& rho, const Tolerances& tol) {
  return validate_density(rho.matrix(), tol);
}
ValidityReport validate(const UnitaryMatrix& u, const Tolerances& tol) {
  return validate_unitary(u.matrix(), tol);
}
ValidityReport validate(const StateSet& set, const Tolerances& tol) {
  std::vector<Vector> raw;
  raw.reserve(set.size());
  for (const auto& s : set) raw.push_back(s.amplitudes());
  return validate_state_set(raw, tol);
}

// --- typed values -----------------------------------------------------------

StateVector::StateVector(Vector amplitudes, const Tolerances& tol)
    : amplitudes_(std::move(amplitudes)) {
  throw_if_invalid(validate_state(amplitudes_, tol));
}

StateVector StateVector::basis(Index dim, Index index) {
  if (dim < 1 || index < 0 || index >= dim)
    throw DimensionError("basis index out of range");
  Vector v = Vector::Zero(dim);
  v(index) = 1.0;
  return StateVector(std::move(v));
}

DensityMatrix StateVector::projector() const { return DensityMatrix(outer(amplitudes_)); }

DensityMatrix::DensityMatrix(Matrix entries, const Tolerances& tol) : entries_(std::move(entries)) {
  throw_if_invalid(validate_density(entries_, tol));
}

DensityMatrix DensityMatrix::maximally_mixed(Index dim) {
  if (dim < 1) throw DimensionError("dimension must be positive");
  return DensityMatrix(Matrix::Identity(dim, dim) / static_cast<double>(dim));
}

UnitaryMatrix::UnitaryMatrix(Matrix entries, const Tolerances& tol) : entries_(std::move(entries)) {
  throw_if_invalid(validate_unitary(entries_, tol));
}

UnitaryMatrix UnitaryMatrix::identity(Index dim) {
  if (dim < 1) throw DimensionError("dimension must be positive");
  return UnitaryMatrix(Matrix::Identity(dim, dim));
}

UnitaryMatrix UnitaryMatrix::adjoint() const { return UnitaryMatrix(entries_.adjoint()); }

StateSet::StateSet(std::vector<StateVector> states, const Tolerances& tol)
    : states_(std::move(states)) {
  throw_if_invalid(validate(*this, tol));
}

// --- operations -------------------------------------------------------------

Matrix tensor_product(const Matrix& a, const Matrix& b) {
  const Index p = b.rows(), q = b.cols();
  Matrix out(a.rows() * p, a.cols() * q);
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out.block(i * p, j * q, p, q) = a(i, j) * b;
  return out;
}

Matrix partial_trace(const Matrix& m, Index dim_a, Index dim_b, Subsystem keep) {
  if (dim_a < 1 || dim_b < 1 || m.rows() != dim_a * dim_b || m.cols() != dim_a * dim_b) {
    std::ostringstream os;
    os << "partial_trace: " << m.rows() << "x" << m.cols() << " operator does not split as "
       << dim_a << " x " << dim_b;
    throw DimensionError(os.str());
  }
  if (keep == Subsystem::first) {
    Matrix out(dim_a, dim_a);
    for (Index i = 0; i < dim_a; ++i)
      for (Index j = 0; j < dim_a; ++j) out(i, j) = m.block(i * dim_b, j * dim_b, dim_b, dim_b).trace();
    return out;
  }
  Matrix out = Matrix::Zero(dim_b, dim_b);
  for (Index i = 0; i < dim_a; ++i) out += m.block(i * dim_b, i * dim_b, dim_b, dim_b);
  return out;
}

UnitaryMatrix unitary_from_first_column(const StateVector& first,
                                        std::span<const StateVector> candidates) {
  const Index d = first.dim();
  for (const auto& c : candidates)
    if (c.dim() != d) throw DimensionError("unitary_from_first_column: candidate dimension mismatch");

  std::vector<Vector> basis;
  basis.reserve(static_cast<std::size_t>(d));
  basis.push_back(first.amplitudes());
  for (const auto& c : candidates) {
    if (static_cast<Index>(basis.size()) == d) break;
    try_extend(basis, c.amplitudes());
  }
  for (Index e = 0; e < d && static_cast<Index>(basis.size()) < d; ++e)
    try_extend(basis, Vector::Unit(d, e));

  Matrix u(d, d);
  for (Index c = 0; c < d; ++c) u.col(c) = basis[static_cast<std::size_t>(c)];
  // Column 0 is copied verbatim so U|0⟩ reproduces `first` bit for bit.
  return UnitaryMatrix(std::move(u));
}

double state_fidelity(const StateVector& a, const StateVector& b) {
  if (a.dim() != b.dim()) throw DimensionError("state_fidelity: dimension mismatch");
  return std::min(1.0, std::norm(a.amplitudes().dot(b.amplitudes())));
}

double max_entry_norm(const Matrix& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

double von_neumann_entropy(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es((rho + rho.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Index i = 0; i < es.eigenvalues().size(); ++i) {
    double p = es.eigenvalues()(i);
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

double min_hermitian_eigenvalue(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> es((m + m.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

Matrix outer(const Vector& v) { return v * v.adjoint(); }

}  // namespace ctcsim
