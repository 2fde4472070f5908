#include <doctest.h>

#include "ctcsim/brun.hpp"
#include "ctcsim/errors.hpp"
#include "support.hpp"

using namespace ctcsim;
using namespace ctcsim::brun;
using namespace ctcsim::testing;

namespace {

StateSet zero_minus() { return StateSet({StateVector::basis(2, 0), ket({kInvSqrt2, -kInvSqrt2})}); }
StateSet zero_one() { return StateSet({StateVector::basis(2, 0), StateVector::basis(2, 1)}); }

}  // namespace

TEST_SUITE("brun") {

TEST_CASE("build_uk on the two-state examples") {
  auto basis = zero_one();
  auto u0 = build_uk(basis, 0, 0);
  CHECK(max_entry_norm(u0.matrix() - Matrix::Identity(2, 2)) == 0.0);

  auto set = zero_minus();
  CHECK(max_entry_norm(build_uk(set, 0, 0).matrix() - Matrix::Identity(2, 2)) == 0.0);
  auto u1 = build_uk(set, 1, 0);
  CHECK(max_entry_norm(u1.matrix() - hadamard()) <= 1e-15);

  CHECK_THROWS_AS(build_uk(set, 2, 0), DimensionError);
}

TEST_CASE("build_uk satisfies both conditions on random sets") {
  std::mt19937_64 rng(7);
  auto set = random_state_set(3, rng);
  std::vector<UnitaryMatrix> uks;
  for (std::size_t k = 0; k < 3; ++k) uks.push_back(build_uk(set, k, 7));
  auto report = condition_report(set, uks);
  CHECK(report.min_overlap > kTolCondition2);
  for (double dev : report.condition1_deviation) CHECK(dev <= kTolCondition1);
}

TEST_CASE("build_uk retries when the standard completion violates condition (2)") {
  // ψ_1 = |1⟩ completes to the identity, which sends ψ_0 = |2⟩ entirely onto |2⟩
  // and leaves ⟨0|U_1|ψ_0⟩ = 0; a random completion is needed.
  Vector psi2(3);
  psi2 << 0.6, 0.0, 0.8;
  StateSet set({StateVector::basis(3, 2), StateVector::basis(3, 1), StateVector(psi2)});
  auto u1 = build_uk(set, 1, 99);
  CHECK(max_entry_norm(u1.matrix() - Matrix::Identity(3, 3)) > 1e-3);
  std::vector<UnitaryMatrix> uks{build_uk(set, 0, 99), u1, build_uk(set, 2, 99)};
  auto report = condition_report(set, uks);
  CHECK(report.min_overlap > kTolCondition2);
  for (double dev : report.condition1_deviation) CHECK(dev <= kTolCondition1);

  auto again = build_uk(set, 1, 99);
  CHECK(max_entry_norm(again.matrix() - u1.matrix()) == 0.0);
}

TEST_CASE("condition_report tables") {
  auto basis = zero_one();
  std::vector<UnitaryMatrix> ids{UnitaryMatrix::identity(2), UnitaryMatrix::identity(2)};
  auto r = condition_report(basis, ids);
  CHECK(r.overlaps.minCoeff() == 1.0);
  CHECK(r.overlaps.maxCoeff() == 1.0);

  auto set = zero_minus();
  std::vector<UnitaryMatrix> uks{UnitaryMatrix::identity(2), UnitaryMatrix(hadamard())};
  r = condition_report(set, uks);
  CHECK(r.overlaps(0, 0) == doctest::Approx(1.0));
  CHECK(r.overlaps(0, 1) == doctest::Approx(kInvSqrt2));
  CHECK(r.overlaps(1, 0) == doctest::Approx(kInvSqrt2));
  CHECK(r.overlaps(1, 1) == doctest::Approx(1.0));
  CHECK(r.min_overlap == doctest::Approx(kInvSqrt2));

  std::vector<UnitaryMatrix> short_list{UnitaryMatrix::identity(2)};
  CHECK_THROWS_AS(condition_report(set, short_list), DimensionError);
}

TEST_CASE("build_distinguisher") {
  auto bundle = build_distinguisher(zero_minus(), 0);
  CHECK(max_entry_norm(bundle.total.matrix() - paper_distinguisher()) <= 1e-12);
  CHECK(bundle.condition2_min == doctest::Approx(kInvSqrt2));

  auto basis = build_distinguisher(zero_one(), 0);
  CHECK(max_entry_norm(basis.total.matrix() - swap_unitary(2).matrix()) == 0.0);

  std::mt19937_64 rng(4);
  auto set = random_state_set(4, rng);
  auto b = build_distinguisher(set, 4);
  CHECK(validate(b.total).ok());
  Matrix recomposed = controlled_unitary(b.uks) * swap_unitary(4).matrix();
  CHECK(max_entry_norm(b.total.matrix() - recomposed) <= 1e-12);
  CHECK(b.condition2_min > kTolCondition2);

  auto twin = build_distinguisher(set, 4);
  CHECK(max_entry_norm(twin.total.matrix() - b.total.matrix()) == 0.0);
}

TEST_CASE("distinguish") {
  auto bundle = build_distinguisher(zero_minus(), 0);
  auto res = distinguish(bundle, bundle.state_set[1]);
  CHECK(res.decoded == 1);
  CHECK(res.unique);
  CHECK(max_entry_norm(res.rho_out.matrix() - outer(Vector::Unit(2, 1))) <= 1e-8);
  CHECK(max_entry_norm(res.rho_ctc.matrix() - outer(Vector::Unit(2, 1))) <= 1e-8);
  CHECK(res.fidelity_to_basis >= 1.0 - 1e-8);
  CHECK(res.input_in_set);

  auto basis = build_distinguisher(zero_one(), 0);
  CHECK(distinguish(basis, StateVector::basis(2, 0)).decoded == 0);

  auto outside = distinguish(bundle, ket({kInvSqrt2, Complex(0.0, kInvSqrt2)}));
  CHECK_FALSE(outside.input_in_set);

  std::mt19937_64 rng(3);
  auto set = random_state_set(3, rng);
  auto b3 = build_distinguisher(set, 3);
  for (std::size_t j = 0; j < 3; ++j) CHECK(distinguish(b3, set[j]).decoded == j);
}

TEST_CASE("condition (2) violation shows up as a non-unique fixed point") {
  StateSet basis({StateVector::basis(3, 0), StateVector::basis(3, 1), StateVector::basis(3, 2)});
  Matrix swap02 = Matrix::Zero(3, 3);
  swap02(1, 1) = swap02(0, 2) = swap02(2, 0) = 1.0;
  Matrix swap01 = Matrix::Zero(3, 3);
  swap01(2, 2) = swap01(0, 1) = swap01(1, 0) = 1.0;
  std::vector<UnitaryMatrix> uks{UnitaryMatrix::identity(3), UnitaryMatrix(swap02), UnitaryMatrix(swap01)};
  auto report = condition_report(basis, uks);
  CHECK(report.min_overlap == 0.0);
  DistinguisherBundle bundle{basis, uks, UnitaryMatrix(controlled_unitary(uks) * swap_unitary(3).matrix()),
                             report.min_overlap};
  try {
    distinguish(bundle, basis[0]);
    FAIL("expected NonUniqueFixedPoint");
  } catch (const NonUniqueFixedPoint& e) {
    CHECK(e.fixed_space_dim() == 2);
  }
}

TEST_CASE("swap_unitary exchanges factors") {
  std::mt19937_64 rng(9);
  auto a = random_state(3, rng);
  auto b = random_state(3, rng);
  Vector ab = kron_oracle(a.amplitudes(), b.amplitudes());
  Vector ba = kron_oracle(b.amplitudes(), a.amplitudes());
  CHECK((swap_unitary(3).matrix() * ab - ba).cwiseAbs().maxCoeff() <= 1e-15);
}

}  // TEST_SUITE
