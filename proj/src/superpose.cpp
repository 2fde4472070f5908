#include "ctcsim/superpose.hpp"

#include <cmath>
#include <sstream>

#include "ctcsim/errors.hpp"

namespace ctcsim::superpose {

namespace {

void check_index(const StateSet& states, std::size_t i, const char* what) {
  if (i >= states.size()) {
    std::ostringstream os;
    os << what << " index " << i << " out of range for a set of " << states.size() << " states";
    throw DimensionError(os.str());
  }
}

Vector combination(const StateSet& states, std::size_t i, std::size_t j, const SuperpositionSpec& spec) {
  check_index(states, i, "first");
  check_index(states, j, "second");
  return spec.alpha() * states[i].amplitudes() + spec.beta() * states[j].amplitudes();
}

}  // namespace

SuperpositionSpec::SuperpositionSpec(Complex alpha, Complex beta) : alpha_(alpha), beta_(beta) {
  if (alpha == Complex(0.0) && beta == Complex(0.0))
    throw ValidationError("SuperpositionSpec: alpha and beta are both zero");
  if (!std::isfinite(std::abs(alpha)) || !std::isfinite(std::abs(beta)))
    throw ValidationError("SuperpositionSpec: amplitudes must be finite");
}

double gamma(const StateSet& states, std::size_t i, std::size_t j, const SuperpositionSpec& spec) {
  return combination(states, i, j, spec).norm();
}

StateVector build_omega(const StateSet& states, std::size_t i, std::size_t j,
                        const SuperpositionSpec& spec) {
  Vector v = combination(states, i, j, spec);
  const double g = v.norm();
  if (g < kTolGamma) {
    std::ostringstream os;
    os << "amplitudes cancel for (" << i << ", " << j << "): normalizer " << g << " < " << kTolGamma;
    throw DegenerateSuperposition(os.str());
  }
  return StateVector(v / g);
}

UnitaryMatrix swap_zero_with(Index dim, std::size_t i) {
  const auto ii = static_cast<Index>(i);
  if (ii >= dim) throw DimensionError("swap_zero_with: index out of range");
  Matrix p = Matrix::Identity(dim, dim);
  if (ii != 0) p.col(0).swap(p.col(ii));
  return UnitaryMatrix(std::move(p));
}

UnitaryMatrix build_u_ij(const StateSet& states, std::size_t i, std::size_t j,
                         const SuperpositionSpec& spec, const std::vector<UnitaryMatrix>& uks) {
  check_index(states, i, "first");
  check_index(states, j, "second");
  if (i == j) {
    if (uks.size() != states.size() || uks[i].dim() != states.dim())
      throw DimensionError("build_u_ij: U_k list does not match the state set");
    return UnitaryMatrix(uks[i].matrix().adjoint() * swap_zero_with(states.dim(), i).matrix());
  }
  return unitary_from_first_column(build_omega(states, i, j, spec), states.states());
}

UnitaryMatrix build_u_prime(const StateSet& states, const SuperpositionSpec& spec,
                            const std::vector<UnitaryMatrix>& uks) {
  const Index n = states.dim();
  Matrix big = Matrix::Zero(n * n * n, n * n * n);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const auto ui = static_cast<std::size_t>(i), uj = static_cast<std::size_t>(j);
      try {
        const Index offset = (i * n + j) * n;
        big.block(offset, offset, n, n) = build_u_ij(states, ui, uj, spec, uks).matrix();
      } catch (const DegenerateSuperposition& e) {
        std::ostringstream os;
        os << "block (" << i << ", " << j << "): " << e.what();
        throw DegenerateSuperposition(os.str());
      }
    }
  }
  return UnitaryMatrix(std::move(big));
}

ProtocolReport run_protocol(const brun::DistinguisherBundle& bundle, const UnitaryMatrix& u_prime,
                            std::size_t m, std::size_t n, const SuperpositionSpec& spec) {
  const StateSet& states = bundle.state_set;
  check_index(states, m, "m");
  check_index(states, n, "n");
  const Index dim = states.dim();
  if (u_prime.dim() != dim * dim * dim) throw DimensionError("run_protocol: U' has the wrong dimension");

  // Two separate CTC systems, one per unknown input.
  const auto first = brun::distinguish(bundle, states[m]);
  const auto second = brun::distinguish(bundle, states[n]);

  Matrix ancilla0 = outer(Vector::Unit(dim, 0));
  Matrix joint = tensor_product(tensor_product(first.rho_out.matrix(), second.rho_out.matrix()), ancilla0);
  joint = u_prime.matrix() * joint * u_prime.matrix().adjoint();
  Matrix reduced = partial_trace(joint, dim * dim, dim, Subsystem::second);

  Eigen::SelfAdjointEigenSolver<Matrix> es((reduced + reduced.adjoint()) / 2.0);
  const double second_eig = dim > 1 ? es.eigenvalues()(dim - 2) : 0.0;
  if (second_eig > kTolPurity) {
    std::ostringstream os;
    os << "ancilla is not pure: second eigenvalue " << second_eig << " > " << kTolPurity;
    throw PurityLoss(os.str());
  }
  Vector dominant = es.eigenvectors().col(dim - 1);
  StateVector ancilla(dominant / dominant.norm());
  StateVector expected = build_omega(states, m, n, spec);

  return {spec,
          m,
          n,
          ancilla,
          expected,
          state_fidelity(ancilla, expected),
          {first.residual, second.residual},
          {first.decoded, second.decoded},
          std::max(0.0, second_eig),
          brun::condition_report(states, bundle.uks)};
}

ProtocolReport run_protocol(const StateSet& states, std::size_t m, std::size_t n,
                            const SuperpositionSpec& spec, std::uint64_t rng_seed) {
  check_index(states, m, "m");
  check_index(states, n, "n");
  auto bundle = brun::build_distinguisher(states, rng_seed);
  auto u_prime = build_u_prime(states, spec, bundle.uks);
  return run_protocol(bundle, u_prime, m, n, spec);
}

}  // namespace ctcsim::superpose
