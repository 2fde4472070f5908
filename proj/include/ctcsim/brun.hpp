#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "ctcsim/dctc.hpp"
#include "ctcsim/linalg.hpp"

// Perfect discrimination of N distinct states in N dimensions with one
// Deutsch CTC. The interaction is a SWAP of CR and CTC followed by the
// CR-controlled unitary C = Σ_k |k⟩⟨k| ⊗ U_k, where
//   (1) U_k|ψ_k⟩ = |k⟩
//   (2) ⟨j|U_k|ψ_j⟩ ≠ 0 for every j, k.
// Condition (2) makes |j⟩⟨j| the only consistent CTC state for input ψ_j.
namespace ctcsim::brun {

inline constexpr double kTolCondition2 = 1e-6;
inline constexpr double kTolCondition1 = 1e-9;
inline constexpr int kMaxAttempts = 64;
// distinguish() flags inputs whose best fidelity to the set is below 1 − this.
inline constexpr double kTolInputMatch = 1e-8;

struct DistinguisherBundle {
  StateSet state_set;
  std::vector<UnitaryMatrix> uks;
  UnitaryMatrix total;  // (Σ_k |k⟩⟨k| ⊗ U_k) · SWAP on CR ⊗ CTC
  double condition2_min = 0.0;
};

struct ConditionReport {
  Eigen::MatrixXd overlaps;               // overlaps(j, k) = |⟨j|U_k|ψ_j⟩|
  double min_overlap = 0.0;
  std::vector<double> condition1_deviation;  // ‖U_k|ψ_k⟩ − |k⟩‖ per k
};

struct DistinguishResult {
  DensityMatrix rho_ctc;
  DensityMatrix rho_out;
  std::size_t decoded = 0;
  double fidelity_to_basis = 0.0;
  double residual = 0.0;
  std::size_t fixed_space_dim = 0;
  bool unique = false;
  bool input_in_set = true;
};

/// U_k with U_k|ψ_k⟩ = |k⟩ and every overlap |⟨j|U_k|ψ_j⟩| > kTolCondition2.
///
/// The first attempt completes ψ_k to a unitary V over the standard basis;
/// later attempts complete it over Haar-random vectors drawn from a generator
/// seeded with (rng_seed, k, attempt). ψ_k sits in column k of V and the
/// result is V†. Throws Condition2Exhausted after kMaxAttempts.
UnitaryMatrix build_uk(const StateSet& states, std::size_t k, std::uint64_t rng_seed);

ConditionReport condition_report(const StateSet& states, const std::vector<UnitaryMatrix>& uks);

// Σ_k |k⟩⟨k| ⊗ U_k
Matrix controlled_unitary(const std::vector<UnitaryMatrix>& uks);

// SWAP on C^d ⊗ C^d.
UnitaryMatrix swap_unitary(Index d);

DistinguisherBundle build_distinguisher(const StateSet& states, std::uint64_t rng_seed);

/// Runs the bundle's interaction with ρ_CR = |input⟩⟨input| and reads the
/// decoded index off the CR output. Under require_unique, throws
/// NonUniqueFixedPoint when the CTC state is not pinned down.
DistinguishResult distinguish(const DistinguisherBundle& bundle, const StateVector& input,
                              dctc::FixedPointPolicy policy = dctc::FixedPointPolicy::require_unique);

}  // namespace ctcsim::brun
