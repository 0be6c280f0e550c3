// Catalog of named states plus seeded random-state generation.
#pragma once

#include "rng.hpp"
#include "state.hpp"

namespace qmono {

// Totally antisymmetric three-qutrit state: the six permutations of |012>
// with the sign of the permutation, normalized by 1/sqrt(6).
inline PureState antisymmetric_qutrit() {
  const Dims dims{3, 3, 3};
  ComplexVector amps = ComplexVector::Zero(27);
  const double c = 1.0 / std::sqrt(6.0);
  const int perm[6][4] = {
      // {i, j, k, sign}
      {0, 1, 2, +1}, {0, 2, 1, -1}, {1, 2, 0, +1},
      {1, 0, 2, -1}, {2, 0, 1, +1}, {2, 1, 0, -1},
  };
  for (const auto& p : perm) {
    amps[(p[0] * 3 + p[1]) * 3 + p[2]] = Complex(c * p[3], 0.0);
  }
  return PureState(dims, std::move(amps));
}

enum class AntisymBasis { x, y, z };

// Two-qutrit antisymmetric basis vectors:
//   |x> = (|12> - |21>)/sqrt(2)
//   |y> = (|20> - |02>)/sqrt(2)
//   |z> = (|01> - |10>)/sqrt(2)
inline PureState antisym_basis(AntisymBasis which) {
  const Dims dims{3, 3};
  int plus = 0;
  int minus = 0;
  switch (which) {
    case AntisymBasis::x: plus = 1 * 3 + 2; minus = 2 * 3 + 1; break;
    case AntisymBasis::y: plus = 2 * 3 + 0; minus = 0 * 3 + 2; break;
    case AntisymBasis::z: plus = 0 * 3 + 1; minus = 1 * 3 + 0; break;
  }
  ComplexVector amps = ComplexVector::Zero(9);
  const double c = 1.0 / std::sqrt(2.0);
  amps[plus] = Complex(c, 0.0);
  amps[minus] = Complex(-c, 0.0);
  return PureState(dims, std::move(amps));
}

// (1/sqrt(d)) sum_i |iii>
inline PureState ghz(int d) {
  if (d < 2) {
    throw ValidationError("ghz: DimensionTooSmall, need d >= 2");
  }
  const Dims dims{d, d, d};
  ComplexVector amps = ComplexVector::Zero(dim_product(dims));
  const double c = 1.0 / std::sqrt(static_cast<double>(d));
  for (int i = 0; i < d; ++i) {
    amps[(static_cast<Eigen::Index>(i) * d + i) * d + i] = Complex(c, 0.0);
  }
  return PureState(dims, std::move(amps));
}

// (|001> + |010> + |100>)/sqrt(3)
inline PureState w_state() {
  const Dims dims{2, 2, 2};
  ComplexVector amps = ComplexVector::Zero(8);
  const double c = 1.0 / std::sqrt(3.0);
  amps[1] = Complex(c, 0.0);
  amps[2] = Complex(c, 0.0);
  amps[4] = Complex(c, 0.0);
  return PureState(dims, std::move(amps));
}

// Haar-random pure state: independent complex Gaussian amplitudes,
// normalized. Deterministic per seed.
inline PureState haar_random_pure(const Dims& dims, std::uint64_t seed) {
  detail::require_dims(dims, "haar_random_pure");
  Rng rng(seed);
  ComplexVector amps(dim_product(dims));
  for (Eigen::Index i = 0; i < amps.size(); ++i) {
    amps[i] = rng.complex_gaussian();
  }
  amps /= amps.norm();
  return PureState(dims, std::move(amps));
}

// rho = G G† / Tr(G G†) with G a (prod dims) x rank complex Gaussian matrix.
inline DensityMatrix random_mixed(const Dims& dims, int rank,
                                  std::uint64_t seed) {
  detail::require_dims(dims, "random_mixed");
  const Eigen::Index d = dim_product(dims);
  if (rank < 1 || rank > d) {
    std::ostringstream msg;
    msg << "random_mixed: RankInvalid, rank " << rank << " not in [1, " << d
        << "]";
    throw ValidationError(msg.str());
  }
  Rng rng(seed);
  ComplexMatrix g(d, rank);
  for (Eigen::Index i = 0; i < d; ++i) {
    for (int j = 0; j < rank; ++j) {
      g(i, j) = rng.complex_gaussian();
    }
  }
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix(dims, std::move(rho));
}

}  // namespace qmono
