#include "ctcsim/dctc.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <vector>

#include "ctcsim/errors.hpp"

namespace ctcsim::dctc {

namespace {

// Feasibility slack used when walking along a direction inside the PSD cone.
constexpr double kPsdSlack = 1e-13;

Index ctc_dim(Index total, Index cr) {
  if (cr < 1 || total % cr != 0) {
    std::ostringstream os;
    os << "unitary of dimension " << total << " is not conformable with a CR system of dimension "
       << cr;
    throw DimensionError(os.str());
  }
  return total / cr;
}

Matrix joint_evolution(const Matrix& u, const Matrix& rho_cr, const Matrix& sigma) {
  const Index dcr = rho_cr.rows();
  const Index d = ctc_dim(u.rows(), dcr);
  if (sigma.rows() != d || sigma.cols() != d)
    throw DimensionError("CTC state dimension does not match the unitary");
  return u * tensor_product(rho_cr, sigma) * u.adjoint();
}

Matrix unvec(const Vector& v, Index d) {
  return Eigen::Map<const Matrix>(v.data(), d, d);
}

Vector vec(const Matrix& m) {
  return Eigen::Map<const Vector>(m.data(), m.size());
}

Matrix normalized_hermitian(Matrix a) {
  a = (a + a.adjoint()) / 2.0;
  return a / a.trace().real();
}

// Orthonormal (Frobenius) Hermitian basis of a †-closed subspace given by
// complex basis vectors `span` (columns, column-stacked d×d matrices).
std::vector<Matrix> hermitian_basis(const Matrix& span, Index d) {
  std::vector<Matrix> basis;
  auto push = [&](Matrix h) {
    for (const auto& b : basis) h -= (b.adjoint() * h).trace().real() * b;
    for (const auto& b : basis) h -= (b.adjoint() * h).trace().real() * b;
    double n = h.norm();
    if (n > kNullSpaceCutoff) basis.push_back(h / n);
  };
  for (Index c = 0; c < span.cols(); ++c) {
    Matrix a = unvec(span.col(c), d);
    push((a + a.adjoint()) / 2.0);
    push((a - a.adjoint()) / Complex(0.0, 2.0));
  }
  return basis;
}

// Largest s ≥ 0 with rho + s·dir still PSD, searched on [0, bound].
double feasible_extent(const Matrix& rho, const Matrix& dir, double bound) {
  auto feasible = [&](double s) { return min_hermitian_eigenvalue(rho + s * dir) >= -kPsdSlack; };
  if (feasible(bound)) return bound;
  double lo = 0.0, hi = bound;
  for (int it = 0; it < 80; ++it) {
    double mid = 0.5 * (lo + hi);
    (feasible(mid) ? lo : hi) = mid;
  }
  return lo;
}

// Golden-section maximum of a concave function on [a, b].
template <typename F>
double golden_max(F&& f, double a, double b) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - inv_phi * (b - a), e = a + inv_phi * (b - a);
  double fc = f(c), fe = f(e);
  for (int it = 0; it < 200 && b - a > 1e-13; ++it) {
    if (fc < fe) {
      a = c;
      c = e;
      fc = fe;
      e = a + inv_phi * (b - a);
      fe = f(e);
    } else {
      b = e;
      e = c;
      fe = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    }
  }
  return 0.5 * (a + b);
}

Matrix max_entropy_point(const Eigen::JacobiSVD<Matrix>& svd, Index k, Index d) {
  Matrix right = svd.matrixV().rightCols(k);
  Matrix left = svd.matrixU().rightCols(k);

  // Spectral projection of I/d onto the fixed space. Peripheral eigenvalues of
  // a CPTP map are semisimple, so left†·right is invertible and the projection
  // coincides with the Cesàro mean of the map, which preserves positivity.
  Vector mixed = vec(Matrix::Identity(d, d) / static_cast<double>(d));
  Matrix gram = left.adjoint() * right;
  Vector start = right * gram.fullPivLu().solve(left.adjoint() * mixed);
  Matrix rho = normalized_hermitian(unvec(start, d));

  std::vector<Matrix> herm = hermitian_basis(right, d);
  const auto m = static_cast<Index>(herm.size());
  if (m < 2) return rho;

  // Traceless directions inside the fixed space.
  Eigen::VectorXd traces(m);
  for (Index i = 0; i < m; ++i) traces(i) = herm[static_cast<std::size_t>(i)].trace().real();
  Eigen::HouseholderQR<Eigen::MatrixXd> qr(traces);
  Eigen::MatrixXd q = qr.householderQ();
  std::vector<Matrix> directions;
  for (Index j = 1; j < m; ++j) {
    Matrix dir = Matrix::Zero(d, d);
    for (Index i = 0; i < m; ++i) dir += q(i, j) * herm[static_cast<std::size_t>(i)];
    directions.push_back((dir + dir.adjoint()) / 2.0);
  }

  double entropy = von_neumann_entropy(rho);
  for (int sweep = 0; sweep < 500; ++sweep) {
    const double before = entropy;
    for (const auto& dir : directions) {
      Eigen::SelfAdjointEigenSolver<Matrix> es(dir, Eigen::EigenvaluesOnly);
      const double lo_eig = es.eigenvalues().minCoeff();
      const double hi_eig = es.eigenvalues().maxCoeff();
      if (hi_eig - lo_eig < kNullSpaceCutoff) continue;
      double up = lo_eig < 0.0 ? feasible_extent(rho, dir, 1.0 / -lo_eig) : 0.0;
      double down = hi_eig > 0.0 ? feasible_extent(rho, -dir, 1.0 / hi_eig) : 0.0;
      auto along = [&](double s) { return von_neumann_entropy(rho + s * dir); };
      double s = golden_max(along, -down, up);
      double candidate = along(s);
      if (candidate > entropy) {
        rho += s * dir;
        entropy = candidate;
      }
    }
    if (entropy - before < kEntropyStep) break;
  }
  return normalized_hermitian(rho);
}

}  // namespace

Matrix apply_ctc_channel(const Matrix& u, const Matrix& rho_cr, const Matrix& sigma) {
  Matrix joint = joint_evolution(u, rho_cr, sigma);
  return partial_trace(joint, rho_cr.rows(), sigma.rows(), Subsystem::second);
}

Matrix apply_output_channel(const Matrix& u, const Matrix& rho_cr, const Matrix& sigma) {
  Matrix joint = joint_evolution(u, rho_cr, sigma);
  return partial_trace(joint, rho_cr.rows(), sigma.rows(), Subsystem::first);
}

DensityMatrix ctc_map(const UnitaryMatrix& u, const DensityMatrix& rho_cr,
                      const DensityMatrix& sigma) {
  return DensityMatrix(apply_ctc_channel(u.matrix(), rho_cr.matrix(), sigma.matrix()));
}

DensityMatrix output_state(const UnitaryMatrix& u, const DensityMatrix& rho_cr,
                           const DensityMatrix& sigma) {
  return DensityMatrix(apply_output_channel(u.matrix(), rho_cr.matrix(), sigma.matrix()));
}

Matrix superoperator_matrix(const UnitaryMatrix& u, const DensityMatrix& rho_cr) {
  const Index d = ctc_dim(u.dim(), rho_cr.dim());
  Matrix l(d * d, d * d);
  Matrix unit = Matrix::Zero(d, d);
  for (Index b = 0; b < d; ++b) {
    for (Index a = 0; a < d; ++a) {
      unit(a, b) = 1.0;
      l.col(a + b * d) = vec(apply_ctc_channel(u.matrix(), rho_cr.matrix(), unit));
      unit(a, b) = 0.0;
    }
  }
  return l;
}

double consistency_residual(const UnitaryMatrix& u, const DensityMatrix& rho_cr,
                            const DensityMatrix& sigma) {
  return max_entry_norm(sigma.matrix() - apply_ctc_channel(u.matrix(), rho_cr.matrix(), sigma.matrix()));
}

FixedPointResult fixed_point(const UnitaryMatrix& u, const DensityMatrix& rho_cr,
                             FixedPointPolicy policy) {
  const Index d = ctc_dim(u.dim(), rho_cr.dim());
  Matrix shifted = superoperator_matrix(u, rho_cr);
  shifted -= Matrix::Identity(d * d, d * d);

  Eigen::JacobiSVD<Matrix> svd(shifted, Eigen::ComputeFullU | Eigen::ComputeFullV);
  const auto& sv = svd.singularValues();
  Index k = 0;
  while (k < sv.size() && sv(sv.size() - 1 - k) < kNullSpaceCutoff) ++k;
  if (k == 0) {
    std::ostringstream os;
    os << "no eigenvalue-1 eigenvector: smallest singular value of L - I is "
       << sv(sv.size() - 1);
    throw NoFixedPointNumerical(os.str());
  }
  const auto space_dim = static_cast<std::size_t>(k);

  Matrix candidate;
  if (k == 1) {
    Matrix a = unvec(svd.matrixV().col(d * d - 1), d);
    const Complex tr = a.trace();
    if (std::abs(tr) < kNullSpaceCutoff)
      throw NoFixedPointNumerical("fixed-point eigenvector has vanishing trace");
    // Dividing by the trace removes the eigenvector's arbitrary phase.
    candidate = normalized_hermitian(a / tr);
  } else if (policy == FixedPointPolicy::require_unique) {
    std::ostringstream os;
    os << "self-consistency condition has a " << k << "-dimensional fixed-point space";
    throw NonUniqueFixedPoint(os.str(), space_dim);
  } else {
    candidate = max_entropy_point(svd, k, d);
  }

  const double lambda_min = min_hermitian_eigenvalue(candidate);
  if (lambda_min < -Tolerances{}.psd) {
    std::ostringstream os;
    os << "fixed-point candidate is not positive semidefinite (min eigenvalue " << lambda_min << ")";
    throw NoFixedPointNumerical(os.str());
  }
  const double residual =
      max_entry_norm(candidate - apply_ctc_channel(u.matrix(), rho_cr.matrix(), candidate));
  if (residual > kTolFixedPoint) {
    std::ostringstream os;
    os << "fixed-point residual " << residual << " exceeds " << kTolFixedPoint;
    throw NoFixedPointNumerical(os.str());
  }
  return {DensityMatrix(std::move(candidate)), residual, space_dim, space_dim == 1};
}

}  // namespace ctcsim::dctc
