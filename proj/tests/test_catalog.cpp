#include <catch2/catch_amalgamated.hpp>

#include <qmono/catalog.hpp>
#include <qmono/concurrence.hpp>

#include "helpers.hpp"

using namespace qmono;
using Catch::Approx;
using test_helpers::swap_subsystems;

TEST_CASE("antisymmetric qutrit amplitudes carry the stated signs") {
  const PureState psi = antisymmetric_qutrit();
  REQUIRE(psi.dims == Dims{3, 3, 3});
  const double a = 1.0 / std::sqrt(6.0);
  auto at = [&](int i, int j, int k) {
    return psi.amplitudes[(i * 3 + j) * 3 + k];
  };
  // Kets |123>, |231>, |312> positive; |132>, |213>, |321> negative
  // (labels shifted to 0-based indices).
  REQUIRE(at(0, 1, 2).real() == Approx(a).margin(1e-15));
  REQUIRE(at(1, 2, 0).real() == Approx(a).margin(1e-15));
  REQUIRE(at(2, 0, 1).real() == Approx(a).margin(1e-15));
  REQUIRE(at(0, 2, 1).real() == Approx(-a).margin(1e-15));
  REQUIRE(at(1, 0, 2).real() == Approx(-a).margin(1e-15));
  REQUIRE(at(2, 1, 0).real() == Approx(-a).margin(1e-15));

  int nonzero = 0;
  for (Eigen::Index g = 0; g < psi.dim(); ++g) {
    if (std::abs(psi.amplitudes[g]) > 1e-15) ++nonzero;
  }
  REQUIRE(nonzero == 6);
}

TEST_CASE("antisymmetric qutrit negates under any subsystem swap") {
  const PureState psi = antisymmetric_qutrit();
  for (auto [a, b] : {std::pair{0, 1}, {1, 2}, {0, 2}}) {
    const PureState swapped = swap_subsystems(psi, a, b);
    REQUIRE((swapped.amplitudes + psi.amplitudes).cwiseAbs().maxCoeff() <=
            1e-15);
  }
}

TEST_CASE("antisymmetric basis states") {
  const double r = 1.0 / std::sqrt(2.0);
  const PureState x = antisym_basis(AntisymBasis::x);
  REQUIRE(x.dims == Dims{3, 3});
  REQUIRE(x.amplitudes[1 * 3 + 2].real() == Approx(r));   // |23> term
  REQUIRE(x.amplitudes[2 * 3 + 1].real() == Approx(-r));  // -|32> term

  const PureState y = antisym_basis(AntisymBasis::y);
  REQUIRE(y.amplitudes[2 * 3 + 0].real() == Approx(r));   // |31> term
  REQUIRE(y.amplitudes[0 * 3 + 2].real() == Approx(-r));  // -|13> term

  const PureState z = antisym_basis(AntisymBasis::z);
  REQUIRE(z.amplitudes[0 * 3 + 1].real() == Approx(r));   // |12> term
  REQUIRE(z.amplitudes[1 * 3 + 0].real() == Approx(-r));  // -|21> term

  // Each has reduced spectrum {1/2, 1/2, 0}.
  for (AntisymBasis which :
       {AntisymBasis::x, AntisymBasis::y, AntisymBasis::z}) {
    const DensityMatrix reduced =
        partial_trace(density_from_pure(antisym_basis(which)), {0});
    const EigResult eig = hermitian_eig(reduced.matrix);
    REQUIRE(eig.eigenvalues[0] == Approx(0.5).margin(1e-12));
    REQUIRE(eig.eigenvalues[1] == Approx(0.5).margin(1e-12));
    REQUIRE(eig.eigenvalues[2] == Approx(0.0).margin(1e-12));
  }
}

TEST_CASE("every pair reduction of the antisymmetric state is the flat "
          "antisymmetric mixture") {
  const DensityMatrix rho = density_from_pure(antisymmetric_qutrit());
  ComplexMatrix mixture = ComplexMatrix::Zero(9, 9);
  for (AntisymBasis which :
       {AntisymBasis::x, AntisymBasis::y, AntisymBasis::z}) {
    mixture += density_from_pure(antisym_basis(which)).matrix / 3.0;
  }
  for (const std::vector<int>& keep :
       {std::vector<int>{0, 1}, {0, 2}, {1, 2}}) {
    const DensityMatrix pair = partial_trace(rho, keep);
    REQUIRE((pair.matrix - mixture).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("single-party reduction of the antisymmetric state is I/3") {
  const DensityMatrix rho = density_from_pure(antisymmetric_qutrit());
  const DensityMatrix a = partial_trace(rho, {0});
  REQUIRE((a.matrix - ComplexMatrix::Identity(3, 3) / 3.0)
              .cwiseAbs()
              .maxCoeff() <= 1e-12);
}

TEST_CASE("ghz amplitudes and validation") {
  const PureState g3 = ghz(3);
  const double r3 = 1.0 / std::sqrt(3.0);
  for (int i = 0; i < 3; ++i) {
    REQUIRE(g3.amplitudes[(i * 3 + i) * 3 + i].real() ==
            Approx(r3).margin(1e-15));
  }

  const PureState g2 = ghz(2);
  REQUIRE(g2.amplitudes[0].real() == Approx(1.0 / std::sqrt(2.0)));
  REQUIRE(g2.amplitudes[7].real() == Approx(1.0 / std::sqrt(2.0)));

  for (int d = 2; d <= 5; ++d) {
    REQUIRE(ghz(d).amplitudes.norm() == Approx(1.0).margin(1e-12));
  }
  REQUIRE_THROWS_AS(ghz(1), ValidationError);
}

TEST_CASE("ghz focus-to-rest concurrence is 2(1 - 1/d)") {
  for (int d = 2; d <= 4; ++d) {
    const double expected = 2.0 * (1.0 - 1.0 / d);
    REQUIRE(pure_concurrence_sq(ghz(d), BipartiteSplit({0}, {1, 2})).value_sq ==
            Approx(expected).margin(1e-9));
  }
}

TEST_CASE("w state amplitudes and oracle values") {
  const PureState w = w_state();
  const double r = 1.0 / std::sqrt(3.0);
  for (int idx : {1, 2, 4}) {
    REQUIRE(w.amplitudes[idx].real() == Approx(r).margin(1e-15));
  }

  const DensityMatrix rho = density_from_pure(w);
  for (const std::vector<int>& keep : {std::vector<int>{0, 1}, {0, 2}}) {
    REQUIRE(wootters_concurrence(partial_trace(rho, keep)).value_sq ==
            Approx(4.0 / 9.0).margin(1e-9));
  }
  REQUIRE(pure_concurrence_sq_purity(w, BipartiteSplit({0}, {1, 2})).value_sq ==
          Approx(8.0 / 9.0).margin(1e-9));
}

TEST_CASE("haar_random_pure is deterministic and normalized") {
  const PureState a = haar_random_pure({3, 3}, 19);
  const PureState b = haar_random_pure({3, 3}, 19);
  REQUIRE((a.amplitudes - b.amplitudes).norm() == 0.0);
  REQUIRE(a.amplitudes.norm() == Approx(1.0).margin(1e-12));
  const PureState c = haar_random_pure({3, 3}, 20);
  REQUIRE((a.amplitudes - c.amplitudes).norm() > 1e-3);
}

TEST_CASE("haar mean reduced purity matches the known average") {
  // For dims {da, db} the Haar average of Tr(rho_a^2) is (da+db)/(da*db+1).
  double sum = 0.0;
  const int samples = 1000;
  for (int t = 0; t < samples; ++t) {
    const PureState psi =
        haar_random_pure({3, 3}, 5000 + static_cast<std::uint64_t>(t));
    sum += purity(partial_trace(density_from_pure(psi), {0}));
  }
  REQUIRE(sum / samples == Approx(0.6).margin(0.02));
}

TEST_CASE("random_mixed shapes and determinism") {
  const DensityMatrix pure_like = random_mixed({2, 2}, 1, 3);
  REQUIRE(purity(pure_like) == Approx(1.0).margin(1e-10));

  const DensityMatrix full = random_mixed({2, 2}, 4, 3);
  REQUIRE(full.matrix.trace().real() == Approx(1.0).margin(1e-12));
  const EigResult eig = hermitian_eig(full.matrix);
  REQUIRE(eig.eigenvalues.minCoeff() > 1e-6);

  const DensityMatrix again = random_mixed({2, 2}, 4, 3);
  REQUIRE((full.matrix - again.matrix).cwiseAbs().maxCoeff() == 0.0);

  REQUIRE_THROWS_AS(random_mixed({2, 2}, 0, 1), ValidationError);
  REQUIRE_THROWS_AS(random_mixed({2, 2}, 5, 1), ValidationError);
}
