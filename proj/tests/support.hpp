#pragma once

// Seeded generators and independent oracles shared by the unit and
// acceptance suites. Nothing here calls into the code paths it checks.

#include <cmath>
#include <cstdint>
#include <random>
#include <vector>

#include "ctcsim/dctc.hpp"
#include "ctcsim/linalg.hpp"

namespace ctcsim::testing {

inline const double kInvSqrt2 = 1.0 / std::sqrt(2.0);

inline Vector gaussian_vector(Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 1.0);
  Vector v(d);
  for (Index i = 0; i < d; ++i) v(i) = Complex(g(rng), g(rng));
  return v;
}

inline StateVector random_state(Index d, std::mt19937_64& rng) {
  Vector v = gaussian_vector(d, rng);
  return StateVector(v / v.norm());
}

// Full-rank random density matrix G G† / Tr.
inline DensityMatrix random_density(Index d, std::mt19937_64& rng) {
  Matrix g(d, d);
  for (Index c = 0; c < d; ++c) g.col(c) = gaussian_vector(d, rng);
  Matrix rho = g * g.adjoint();
  rho = (rho + rho.adjoint()) / 2.0;
  return DensityMatrix(rho / rho.trace().real());
}

// Haar unitary: QR of a Ginibre matrix with the R-diagonal phases removed.
inline UnitaryMatrix haar_unitary(Index d, std::mt19937_64& rng) {
  Matrix g(d, d);
  for (Index c = 0; c < d; ++c) g.col(c) = gaussian_vector(d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Index i = 0; i < d; ++i) q.col(i) *= r(i, i) / std::abs(r(i, i));
  return UnitaryMatrix(q);
}

inline StateSet random_state_set(Index n, std::mt19937_64& rng) {
  std::vector<StateVector> states;
  for (Index i = 0; i < n; ++i) states.push_back(random_state(n, rng));
  return StateSet(std::move(states));
}

inline StateVector ket(std::initializer_list<Complex> amps) {
  Vector v(static_cast<Index>(amps.size()));
  Index i = 0;
  for (auto a : amps) v(i++) = a;
  return StateVector(v);
}

inline Matrix hadamard() {
  Matrix h(2, 2);
  h << 1, 1, 1, -1;
  return h * kInvSqrt2;
}

inline Matrix pauli_x() {
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  return x;
}

// Entrywise Kronecker product straight from the index formula.
inline Matrix kron_oracle(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      for (Index k = 0; k < b.rows(); ++k)
        for (Index l = 0; l < b.cols(); ++l) out(i * b.rows() + k, j * b.cols() + l) = a(i, j) * b(k, l);
  return out;
}

// (|0⟩⟨0| ⊗ I + |1⟩⟨1| ⊗ H) · SWAP written out by hand.
inline Matrix paper_distinguisher() {
  Matrix c = Matrix::Zero(4, 4);
  c.block(0, 0, 2, 2) = Matrix::Identity(2, 2);
  c.block(2, 2, 2, 2) = hadamard();
  Matrix swap = Matrix::Zero(4, 4);
  swap(0, 0) = swap(3, 3) = 1.0;
  swap(1, 2) = swap(2, 1) = 1.0;
  return c * swap;
}

struct PowerIteration {
  Matrix sigma;
  bool converged = false;
  int iterations = 0;
};

// Damped iteration σ ← (σ + M(σ))/2 from I/d, M evaluated by explicit
// conjugation and block tracing.
inline PowerIteration power_iteration(const Matrix& u, const Matrix& rho_cr, int max_iter = 200000,
                                      double tol = 1e-14) {
  const Index dcr = rho_cr.rows();
  const Index d = u.rows() / dcr;
  PowerIteration out{Matrix::Identity(d, d) / static_cast<double>(d), false, 0};
  for (int it = 0; it < max_iter; ++it) {
    Matrix joint = u * kron_oracle(rho_cr, out.sigma) * u.adjoint();
    Matrix mapped = Matrix::Zero(d, d);
    for (Index i = 0; i < dcr; ++i) mapped += joint.block(i * d, i * d, d, d);
    Matrix next = (out.sigma + mapped) / 2.0;
    double step = (next - out.sigma).cwiseAbs().maxCoeff();
    out.sigma = next;
    out.iterations = it + 1;
    if (step < tol) {
      out.converged = true;
      break;
    }
  }
  return out;
}

// Largest entry deviation between two columns after removing the best phase.
inline double phase_aligned_deviation(const Vector& a, const Vector& b) {
  Complex overlap = b.dot(a);
  Complex phase = std::abs(overlap) > 0 ? overlap / std::abs(overlap) : Complex(1.0);
  return (a - phase * b).cwiseAbs().maxCoeff();
}

}  // namespace ctcsim::testing
