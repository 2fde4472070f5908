#pragma once

#include <cstddef>

#include "ctcsim/linalg.hpp"

// Deutsch closed-timelike-curve model. A chronology-respecting (CR) system in
// state ρ_CR meets a CTC system in state σ through a unitary U acting on
// CR ⊗ CTC (CR first). The CTC state must be a fixed point of
//
//     σ ↦ Tr_CR[U (ρ_CR ⊗ σ) U†]
//
// and the CR system leaves in Tr_CTC[U (ρ_CR ⊗ σ) U†].
namespace ctcsim::dctc {

inline constexpr double kTolFixedPoint = 1e-8;
// Singular values of L − I below this count towards the fixed-point space.
inline constexpr double kNullSpaceCutoff = 1e-9;
// The max-entropy search stops once a sweep gains less than this.
inline constexpr double kEntropyStep = 1e-10;

enum class FixedPointPolicy { require_unique, max_entropy };

struct FixedPointResult {
  DensityMatrix fixed_point;
  double residual = 0.0;             // ‖σ* − M(σ*)‖, max-entry
  std::size_t fixed_space_dim = 0;   // dimension of the eigenvalue-1 eigenspace
  bool unique = false;
};

DensityMatrix ctc_map(const UnitaryMatrix& u, const DensityMatrix& rho_cr,
                      const DensityMatrix& sigma);

DensityMatrix output_state(const UnitaryMatrix& u, const DensityMatrix& rho_cr,
                           const DensityMatrix& sigma);

/// Matrix L of the self-consistency map acting on column-stacked σ:
/// vec(ctc_map(σ)) = L · vec(σ). Size d²×d² with d the CTC dimension.
Matrix superoperator_matrix(const UnitaryMatrix& u, const DensityMatrix& rho_cr);

/// Solves the self-consistency condition spectrally.
///
/// The eigenvalue-1 eigenspace of L is the null space of L − I, read off an
/// SVD with cutoff kNullSpaceCutoff. A one-dimensional space yields the unique
/// solution directly. A larger space either raises NonUniqueFixedPoint
/// (require_unique) or is searched for its maximum-entropy density matrix
/// (max_entropy), starting from the spectral projection of I/d.
FixedPointResult fixed_point(const UnitaryMatrix& u, const DensityMatrix& rho_cr,
                             FixedPointPolicy policy = FixedPointPolicy::require_unique);

double consistency_residual(const UnitaryMatrix& u, const DensityMatrix& rho_cr,
                            const DensityMatrix& sigma);

// Raw channel actions, linear in sigma. No validation beyond dimensions.
Matrix apply_ctc_channel(const Matrix& u, const Matrix& rho_cr, const Matrix& sigma);
Matrix apply_output_channel(const Matrix& u, const Matrix& rho_cr, const Matrix& sigma);

}  // namespace ctcsim::dctc
