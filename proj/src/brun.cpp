#include "ctcsim/brun.hpp"

#include <cmath>
#include <random>
#include <sstream>

#include "ctcsim/errors.hpp"

namespace ctcsim::brun {

namespace {

std::vector<StateVector> haar_candidates(Index d, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  std::vector<StateVector> out;
  out.reserve(static_cast<std::size_t>(d));
  for (Index c = 0; c < d; ++c) {
    Vector v(d);
    for (Index i = 0; i < d; ++i) v(i) = Complex(gauss(rng), gauss(rng));
    out.emplace_back(v / v.norm());
  }
  return out;
}

double min_overlap(const StateSet& states, const Matrix& uk) {
  double worst = 1.0;
  for (std::size_t j = 0; j < states.size(); ++j)
    worst = std::min(worst, std::abs((uk * states[j].amplitudes())(static_cast<Index>(j))));
  return worst;
}

}  // namespace

UnitaryMatrix build_uk(const StateSet& states, std::size_t k, std::uint64_t rng_seed) {
  const Index d = states.dim();
  if (k >= states.size()) throw DimensionError("build_uk: index out of range");
  const auto kk = static_cast<Index>(k);

  std::seed_seq seq{static_cast<std::uint32_t>(rng_seed), static_cast<std::uint32_t>(rng_seed >> 32),
                    static_cast<std::uint32_t>(k)};
  std::mt19937_64 rng(seq);

  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    std::vector<StateVector> candidates;
    if (attempt > 0) candidates = haar_candidates(d, rng);
    Matrix v = unitary_from_first_column(states[k], candidates).matrix();
    // Move ψ_k from column 0 to column k.
    if (kk != 0) v.col(0).swap(v.col(kk));
    Matrix uk = v.adjoint();
    if (min_overlap(states, uk) > kTolCondition2) return UnitaryMatrix(std::move(uk));
  }
  std::ostringstream os;
  os << "no U_" << k << " satisfying the overlap condition after " << kMaxAttempts << " attempts";
  throw Condition2Exhausted(os.str());
}

ConditionReport condition_report(const StateSet& states, const std::vector<UnitaryMatrix>& uks) {
  const Index n = states.dim();
  if (static_cast<Index>(uks.size()) != n)
    throw DimensionError("condition_report: need one U_k per state");
  for (const auto& u : uks)
    if (u.dim() != n) throw DimensionError("condition_report: U_k dimension mismatch");

  ConditionReport report;
  report.overlaps.resize(n, n);
  for (Index j = 0; j < n; ++j)
    for (Index k = 0; k < n; ++k)
      report.overlaps(j, k) = std::abs(
          (uks[static_cast<std::size_t>(k)].matrix() * states[static_cast<std::size_t>(j)].amplitudes())(j));
  report.min_overlap = report.overlaps.minCoeff();
  for (Index k = 0; k < n; ++k) {
    Vector image = uks[static_cast<std::size_t>(k)].matrix() * states[static_cast<std::size_t>(k)].amplitudes();
    report.condition1_deviation.push_back((image - Vector::Unit(n, k)).norm());
  }
  return report;
}

Matrix controlled_unitary(const std::vector<UnitaryMatrix>& uks) {
  const auto n = static_cast<Index>(uks.size());
  if (n == 0) throw DimensionError("controlled_unitary: empty list");
  const Index d = uks.front().dim();
  Matrix c = Matrix::Zero(n * d, n * d);
  for (Index k = 0; k < n; ++k) {
    const auto& u = uks[static_cast<std::size_t>(k)].matrix();
    if (u.rows() != d) throw DimensionError("controlled_unitary: U_k dimension mismatch");
    c.block(k * d, k * d, d, d) = u;
  }
  return c;
}

UnitaryMatrix swap_unitary(Index d) {
  Matrix s = Matrix::Zero(d * d, d * d);
  for (Index a = 0; a < d; ++a)
    for (Index b = 0; b < d; ++b) s(b * d + a, a * d + b) = 1.0;
  return UnitaryMatrix(std::move(s));
}

DistinguisherBundle build_distinguisher(const StateSet& states, std::uint64_t rng_seed) {
  std::vector<UnitaryMatrix> uks;
  uks.reserve(states.size());
  for (std::size_t k = 0; k < states.size(); ++k) uks.push_back(build_uk(states, k, rng_seed));

  // SWAP acts first, so it sits rightmost.
  UnitaryMatrix total(controlled_unitary(uks) * swap_unitary(states.dim()).matrix());
  double cond2 = condition_report(states, uks).min_overlap;
  return {states, std::move(uks), std::move(total), cond2};
}

DistinguishResult distinguish(const DistinguisherBundle& bundle, const StateVector& input,
                              dctc::FixedPointPolicy policy) {
  const Index n = bundle.state_set.dim();
  if (input.dim() != n) throw DimensionError("distinguish: input dimension mismatch");

  double best = 0.0;
  for (const auto& s : bundle.state_set) best = std::max(best, state_fidelity(s, input));

  DensityMatrix rho_cr = input.projector();
  auto fp = dctc::fixed_point(bundle.total, rho_cr, policy);
  DensityMatrix rho_out = dctc::output_state(bundle.total, rho_cr, fp.fixed_point);

  Eigen::VectorXd diag = rho_out.matrix().diagonal().real();
  Index decoded = 0;
  diag.maxCoeff(&decoded);

  return {fp.fixed_point,
          rho_out,
          static_cast<std::size_t>(decoded),
          diag(decoded),
          fp.residual,
          fp.fixed_space_dim,
          fp.unique,
          best >= 1.0 - kTolInputMatch};
}

}  // namespace ctcsim::brun
