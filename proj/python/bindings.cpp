// Python bindings. Matrices and vectors travel as complex NumPy arrays; the
// typed wrappers validate them on entry exactly as the C++ API does.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <string>
#include <vector>

#include "ctcsim/brun.hpp"
#include "ctcsim/dctc.hpp"
#include "ctcsim/errors.hpp"
#include "ctcsim/superpose.hpp"

namespace py = pybind11;
using namespace ctcsim;

namespace {

dctc::FixedPointPolicy policy_from(const std::string& name) {
  if (name == "require_unique") return dctc::FixedPointPolicy::require_unique;
  if (name == "max_entropy") return dctc::FixedPointPolicy::max_entropy;
  throw ValidationError("unknown policy '" + name + "' (expected require_unique or max_entropy)");
}

StateSet make_set(const std::vector<Vector>& states) {
  std::vector<StateVector> typed;
  for (const auto& s : states) typed.emplace_back(s);
  return StateSet(std::move(typed));
}

std::vector<Matrix> matrices(const std::vector<UnitaryMatrix>& us) {
  std::vector<Matrix> out;
  for (const auto& u : us) out.push_back(u.matrix());
  return out;
}

py::dict fixed_point_dict(const dctc::FixedPointResult& r) {
  py::dict d;
  d["fixed_point"] = r.fixed_point.matrix();
  d["residual"] = r.residual;
  d["fixed_space_dim"] = r.fixed_space_dim;
  d["unique"] = r.unique;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Deutsch CTC fixed points, state discrimination and superposition";

  // Base classes first: pybind11 tries translators newest-first.
  static py::exception<Error> error(m, "Error");
  static py::exception<ValidationError> validation(m, "ValidationError", error.ptr());
  static py::exception<ProtocolError> protocol(m, "ProtocolError", error.ptr());
  static py::exception<NoFixedPointNumerical> no_fp(m, "NoFixedPointNumerical", protocol.ptr());
  static py::exception<NonUniqueFixedPoint> non_unique(m, "NonUniqueFixedPoint", protocol.ptr());
  static py::exception<Condition2Exhausted> exhausted(m, "Condition2Exhausted", protocol.ptr());
  static py::exception<DegenerateSuperposition> degenerate(m, "DegenerateSuperposition", protocol.ptr());
  static py::exception<PurityLoss> purity(m, "PurityLoss", protocol.ptr());
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const NonUniqueFixedPoint& e) {
      py::object exc = py::reinterpret_borrow<py::object>(non_unique.ptr())(e.what());
      exc.attr("fixed_space_dim") = e.fixed_space_dim();
      PyErr_SetObject(non_unique.ptr(), exc.ptr());
    } catch (const NoFixedPointNumerical& e) {
      py::set_error(no_fp, e.what());
    } catch (const Condition2Exhausted& e) {
      py::set_error(exhausted, e.what());
    } catch (const DegenerateSuperposition& e) {
      py::set_error(degenerate, e.what());
    } catch (const PurityLoss& e) {
      py::set_error(purity, e.what());
    } catch (const ProtocolError& e) {
      py::set_error(protocol, e.what());
    } catch (const ValidationError& e) {
      py::set_error(validation, e.what());
    } catch (const Error& e) {
      py::set_error(error, e.what());
    }
  });

  m.def(
      "ctc_map",
      [](const Matrix& u, const Matrix& rho_cr, const Matrix& sigma) {
        return dctc::ctc_map(UnitaryMatrix(u), DensityMatrix(rho_cr), DensityMatrix(sigma)).matrix();
      },
      py::arg("u"), py::arg("rho_cr"), py::arg("sigma"), "Tr_CR[U (rho_cr ⊗ sigma) U†]");
  m.def(
      "output_state",
      [](const Matrix& u, const Matrix& rho_cr, const Matrix& sigma) {
        return dctc::output_state(UnitaryMatrix(u), DensityMatrix(rho_cr), DensityMatrix(sigma)).matrix();
      },
      py::arg("u"), py::arg("rho_cr"), py::arg("sigma"), "Tr_CTC[U (rho_cr ⊗ sigma) U†]");
  m.def(
      "superoperator_matrix",
      [](const Matrix& u, const Matrix& rho_cr) {
        return dctc::superoperator_matrix(UnitaryMatrix(u), DensityMatrix(rho_cr));
      },
      py::arg("u"), py::arg("rho_cr"));
  m.def(
      "fixed_point",
      [](const Matrix& u, const Matrix& rho_cr, const std::string& policy) {
        return fixed_point_dict(dctc::fixed_point(UnitaryMatrix(u), DensityMatrix(rho_cr), policy_from(policy)));
      },
      py::arg("u"), py::arg("rho_cr"), py::arg("policy") = "require_unique",
      "Self-consistent CTC state; returns fixed_point, residual, fixed_space_dim, unique.");

  m.def(
      "build_distinguisher",
      [](const std::vector<Vector>& states, std::uint64_t seed) {
        auto bundle = brun::build_distinguisher(make_set(states), seed);
        py::dict d;
        d["uks"] = matrices(bundle.uks);
        d["total"] = bundle.total.matrix();
        d["condition2_min"] = bundle.condition2_min;
        return d;
      },
      py::arg("states"), py::arg("seed") = 0);
  m.def(
      "distinguish",
      [](const std::vector<Vector>& states, const Vector& input, std::uint64_t seed, const std::string& policy) {
        auto bundle = brun::build_distinguisher(make_set(states), seed);
        auto r = brun::distinguish(bundle, StateVector(input), policy_from(policy));
        py::dict d;
        d["decoded"] = r.decoded;
        d["rho_ctc"] = r.rho_ctc.matrix();
        d["rho_out"] = r.rho_out.matrix();
        d["fidelity_to_basis"] = r.fidelity_to_basis;
        d["residual"] = r.residual;
        d["fixed_space_dim"] = r.fixed_space_dim;
        d["unique"] = r.unique;
        d["input_in_set"] = r.input_in_set;
        return d;
      },
      py::arg("states"), py::arg("input"), py::arg("seed") = 0, py::arg("policy") = "require_unique");

  m.def(
      "superpose",
      [](const std::vector<Vector>& states, std::size_t i, std::size_t j, Complex alpha, Complex beta,
         std::uint64_t seed) {
        auto r = superpose::run_protocol(make_set(states), i, j, superpose::SuperpositionSpec(alpha, beta), seed);
        py::dict d;
        d["ancilla_state"] = r.ancilla_state.amplitudes();
        d["expected"] = r.expected.amplitudes();
        d["fidelity"] = r.fidelity;
        d["fixed_point_residuals"] = r.fixed_point_residuals;
        d["decoded_indices"] = r.decoded_indices;
        d["ancilla_second_eigenvalue"] = r.ancilla_second_eigenvalue;
        return d;
      },
      py::arg("states"), py::arg("m"), py::arg("n"), py::arg("alpha"), py::arg("beta"), py::arg("seed") = 0,
      "Runs the superposition protocol on members m and n of the set.");
  m.def(
      "build_u_prime",
      [](const std::vector<Vector>& states, Complex alpha, Complex beta, std::uint64_t seed) {
        auto set = make_set(states);
        auto bundle = brun::build_distinguisher(set, seed);
        return superpose::build_u_prime(set, superpose::SuperpositionSpec(alpha, beta), bundle.uks).matrix();
      },
      py::arg("states"), py::arg("alpha"), py::arg("beta"), py::arg("seed") = 0);
  m.def(
      "gamma",
      [](const std::vector<Vector>& states, std::size_t i, std::size_t j, Complex alpha, Complex beta) {
        return superpose::gamma(make_set(states), i, j, superpose::SuperpositionSpec(alpha, beta));
      },
      py::arg("states"), py::arg("i"), py::arg("j"), py::arg("alpha"), py::arg("beta"));
}
