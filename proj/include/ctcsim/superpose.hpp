#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "ctcsim/brun.hpp"
#include "ctcsim/linalg.hpp"

// Deterministic superposition of two unknown members ψ_m, ψ_n of a known set.
//
// Two independent CTC distinguishers turn ψ_m and ψ_n into |m⟩ and |n⟩. The
// block-diagonal unitary U′ = Σ_{i,j} |i⟩⟨i| ⊗ |j⟩⟨j| ⊗ U^{i,j} then writes
// ω = γ⁻¹(α ψ_i + β ψ_j) onto an ancilla prepared in |0⟩.
namespace ctcsim::superpose {

inline constexpr double kTolGamma = 1e-9;
// Second eigenvalue of the reduced ancilla state allowed before PurityLoss.
inline constexpr double kTolPurity = 1e-6;

class SuperpositionSpec {
 public:
  SuperpositionSpec(Complex alpha, Complex beta);

  Complex alpha() const noexcept { return alpha_; }
  Complex beta() const noexcept { return beta_; }

 private:
  Complex alpha_;
  Complex beta_;
};

struct ProtocolReport {
  SuperpositionSpec spec;
  std::size_t m = 0;
  std::size_t n = 0;
  StateVector ancilla_state;
  StateVector expected;
  double fidelity = 0.0;
  std::pair<double, double> fixed_point_residuals;
  std::pair<std::size_t, std::size_t> decoded_indices;
  // Diagnostics beyond the core report.
  double ancilla_second_eigenvalue = 0.0;
  brun::ConditionReport conditions;
};

/// ‖α ψ_i + β ψ_j‖, the normalizer of ω.
double gamma(const StateSet& states, std::size_t i, std::size_t j, const SuperpositionSpec& spec);

StateVector build_omega(const StateSet& states, std::size_t i, std::size_t j,
                        const SuperpositionSpec& spec);

// Permutation matrix exchanging basis vectors 0 and i (identity for i = 0).
UnitaryMatrix swap_zero_with(Index dim, std::size_t i);

/// U^{i,j}. Off the diagonal: Gram–Schmidt completion of ω over ψ_0..ψ_{N−1}.
/// On the diagonal: U_i† P_i, which sends |0⟩ to ψ_i.
UnitaryMatrix build_u_ij(const StateSet& states, std::size_t i, std::size_t j,
                         const SuperpositionSpec& spec, const std::vector<UnitaryMatrix>& uks);

UnitaryMatrix build_u_prime(const StateSet& states, const SuperpositionSpec& spec,
                            const std::vector<UnitaryMatrix>& uks);

ProtocolReport run_protocol(const StateSet& states, std::size_t m, std::size_t n,
                            const SuperpositionSpec& spec, std::uint64_t rng_seed);

// Same protocol against an existing distinguisher and U′; used by sweeps that
// share the construction across (m, n) pairs.
ProtocolReport run_protocol(const brun::DistinguisherBundle& bundle, const UnitaryMatrix& u_prime,
                            std::size_t m, std::size_t n, const SuperpositionSpec& spec);

}  // namespace ctcsim::superpose
