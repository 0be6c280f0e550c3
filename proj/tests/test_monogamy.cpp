#include <catch2/catch_amalgamated.hpp>

#include <qmono/monogamy.hpp>

#include "helpers.hpp"

using namespace qmono;
using Catch::Approx;

namespace {

ComplexMatrix random_unitary(Eigen::Index n, Rng& rng) {
  ComplexMatrix a = ComplexMatrix::Zero(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    a(i, i) = Complex(0.0, rng.gaussian());
    for (Eigen::Index j = i + 1; j < n; ++j) {
      const Complex v = rng.complex_gaussian();
      a(i, j) = v;
      a(j, i) = Complex(-v.real(), v.imag());
    }
  }
  return unitary_from_generator(a);
}

}  // namespace

TEST_CASE("antisymmetric state is a certified violation at every focus") {
  const std::vector<MonogamyReport> reports =
      audit_all_foci(antisymmetric_qutrit());
  REQUIRE(reports.size() == 3);
  for (int f = 0; f < 3; ++f) {
    const MonogamyReport& r = reports[static_cast<size_t>(f)];
    REQUIRE(r.focus == f);
    REQUIRE(r.verdict == Verdict::violated_certified);
    REQUIRE(r.c2_focus_b.value_sq == 1.0);
    REQUIRE(r.c2_focus_c.value_sq == 1.0);
    REQUIRE(r.c2_focus_b.certainty == Certainty::exact);
    REQUIRE(r.c2_focus_c.certainty == Certainty::exact);
    REQUIRE(r.c2_focus_b.method == "antisym-support");
    REQUIRE(r.c2_focus_rest.value_sq == Approx(4.0 / 3.0).margin(1e-9));
    REQUIRE(r.c2_focus_rest.certainty == Certainty::exact);
    REQUIRE(r.tangle == Approx(-2.0 / 3.0).margin(1e-9));
    REQUIRE(r.margin == Approx(2.0 / 3.0).margin(1e-9));
    REQUIRE(r.tolerance == kMonogamyTol);
  }
}

TEST_CASE("certified verdicts only ever store exact or lower-bound pair "
          "values") {
  for (const MonogamyReport& r : audit_all_foci(antisymmetric_qutrit())) {
    REQUIRE(r.verdict == Verdict::violated_certified);
    REQUIRE(r.c2_focus_b.certainty != Certainty::upper_estimate);
    REQUIRE(r.c2_focus_c.certainty != Certainty::upper_estimate);
  }
}

TEST_CASE("qutrit ghz satisfies the pairwise budget") {
  const MonogamyReport r = audit(ghz(3), 0);
  REQUIRE(r.verdict == Verdict::satisfied);
  REQUIRE(r.c2_focus_rest.value_sq == Approx(4.0 / 3.0).margin(1e-9));
  REQUIRE(r.c2_focus_b.value_sq <= 1e-6);
  REQUIRE(r.c2_focus_c.value_sq <= 1e-6);
  REQUIRE(r.c2_focus_b.certainty == Certainty::upper_estimate);
  REQUIRE(r.c2_focus_b.method == "convex-roof");
  REQUIRE(r.tangle == Approx(4.0 / 3.0).margin(1e-6));
  REQUIRE(r.margin == Approx(-4.0 / 3.0).margin(1e-6));
}

TEST_CASE("qubit ghz routes pairs through the Wootters formula") {
  const MonogamyReport r = audit(ghz(2), 0);
  REQUIRE(r.verdict == Verdict::satisfied);
  REQUIRE(r.c2_focus_b.method == "wootters");
  REQUIRE(r.c2_focus_b.value_sq == 0.0);
  REQUIRE(r.c2_focus_c.value_sq == 0.0);
  REQUIRE(r.c2_focus_rest.value_sq == Approx(1.0).margin(1e-9));
  REQUIRE(r.tangle == Approx(1.0).margin(1e-9));
}

TEST_CASE("pair slots follow partner index order") {
  // |0>_A (x) Bell_BC: the focus-1 pairs are C^2(B|A) = 0 and C^2(B|C) = 1.
  ComplexVector amps = ComplexVector::Zero(8);
  amps[0] = amps[3] = 1.0;
  const PureState psi = test_helpers::make_pure({2, 2, 2}, amps);
  const MonogamyReport r = audit(psi, 1);
  REQUIRE(r.c2_focus_b.value_sq == Approx(0.0).margin(1e-12));
  REQUIRE(r.c2_focus_c.value_sq == Approx(1.0).margin(1e-12));
  REQUIRE(r.c2_focus_rest.value_sq == Approx(1.0).margin(1e-12));
  REQUIRE(r.verdict == Verdict::satisfied);
  REQUIRE(r.margin == Approx(0.0).margin(1e-9));
}

TEST_CASE("product states report zeros everywhere") {
  const MonogamyReport r = audit(basis_state({2, 2, 2}, {0, 0, 0}), 2);
  REQUIRE(r.verdict == Verdict::satisfied);
  REQUIRE(r.c2_focus_rest.value_sq == Approx(0.0).margin(1e-12));
  REQUIRE(r.c2_focus_b.value_sq == Approx(0.0).margin(1e-12));
  REQUIRE(r.c2_focus_c.value_sq == Approx(0.0).margin(1e-12));
  REQUIRE(r.tangle == Approx(0.0).margin(1e-9));
}

TEST_CASE("audit validates arity and focus") {
  REQUIRE_THROWS_WITH(audit(antisym_basis(AntisymBasis::x), 0),
                      Catch::Matchers::ContainsSubstring("WrongArity"));
  REQUIRE_THROWS_AS(audit(ghz(2), 3), ValidationError);
  REQUIRE_THROWS_AS(audit(ghz(2), -1), ValidationError);
}

TEST_CASE("three-tangle oracle values") {
  REQUIRE(three_tangle_qubits(ghz(2)) == Approx(1.0).margin(1e-9));
  REQUIRE(three_tangle_qubits(w_state()) == Approx(0.0).margin(1e-8));
  REQUIRE(three_tangle_qubits(basis_state({2, 2, 2}, {0, 0, 0})) ==
          Approx(0.0).margin(1e-12));
}

TEST_CASE("three-tangle validates dims and focus") {
  REQUIRE_THROWS_WITH(three_tangle_qubits(antisymmetric_qutrit()),
                      Catch::Matchers::ContainsSubstring("WrongDims"));
  REQUIRE_THROWS_AS(three_tangle_qubits(ghz(2), 5), ValidationError);
}

TEST_CASE("three-tangle is focus independent and nonnegative on qubits") {
  for (int t = 0; t < 30; ++t) {
    const PureState psi =
        haar_random_pure({2, 2, 2}, 900 + static_cast<std::uint64_t>(t));
    const double t0 = three_tangle_qubits(psi, 0);
    const double t1 = three_tangle_qubits(psi, 1);
    const double t2 = three_tangle_qubits(psi, 2);
    REQUIRE(t1 == Approx(t0).margin(1e-8));
    REQUIRE(t2 == Approx(t0).margin(1e-8));
    REQUIRE(t0 >= -1e-8);
  }
}

TEST_CASE("local unitaries preserve the audited values") {
  // Rotating the antisymmetric state hides it from the subspace certifier,
  // so pairs fall back to roof estimates; the numbers must not move even
  // though the verdict drops from certified to heuristic.
  Rng rng(31);
  PureState psi = antisymmetric_qutrit();
  for (int sub = 0; sub < 3; ++sub) {
    psi = test_helpers::apply_single(psi, sub, random_unitary(3, rng));
  }
  const RoofConfig cheap{0, 2, 300, 1e-8, 1};
  for (const MonogamyReport& r : audit_all_foci(psi, cheap)) {
    REQUIRE(r.verdict == Verdict::violated_heuristic);
    REQUIRE(r.c2_focus_b.value_sq == Approx(1.0).margin(1e-7));
    REQUIRE(r.c2_focus_c.value_sq == Approx(1.0).margin(1e-7));
    REQUIRE(r.c2_focus_rest.value_sq == Approx(4.0 / 3.0).margin(1e-7));
    REQUIRE(r.margin == Approx(2.0 / 3.0).margin(1e-6));
  }
}
