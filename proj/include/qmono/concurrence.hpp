// Exact concurrence computations: the SO(M) x SO(N) generator form for any
// bipartite cut of a pure state, the reduced-purity form used as its
// independent cross-check, and the Wootters two-qubit mixed-state formula.
#pragma once

#include <cstdint>
#include <string>

#include "state.hpp"

namespace qmono {

// Antisymmetric generator basis of SO(m): generator (i, j) with i < j has
// +1 at (i, j) and -1 at (j, i). Count m(m-1)/2, ordered lexicographically.
struct GeneratorSet {
  int dim = 0;
  std::vector<ComplexMatrix> generators;
};

inline GeneratorSet so_generators(int m) {
  if (m < 2) {
    throw ValidationError(
        "so_generators: DimensionTooSmall, need dimension >= 2");
  }
  GeneratorSet set;
  set.dim = m;
  set.generators.reserve(static_cast<size_t>(m) * (m - 1) / 2);
  for (int i = 0; i < m; ++i) {
    for (int j = i + 1; j < m; ++j) {
      ComplexMatrix g = ComplexMatrix::Zero(m, m);
      g(i, j) = Complex(1.0, 0.0);
      g(j, i) = Complex(-1.0, 0.0);
      set.generators.push_back(std::move(g));
    }
  }
  return set;
}

enum class Certainty { exact, lower_bound, upper_estimate };

inline const char* certainty_name(Certainty c) {
  switch (c) {
    case Certainty::exact: return "exact";
    case Certainty::lower_bound: return "lower_bound";
    case Certainty::upper_estimate: return "upper_estimate";
  }
  return "unknown";
}

struct OptimizerMeta {
  std::int64_t iterations = 0;
  int restarts = 0;
  std::uint64_t seed = 0;

  bool empty() const { return iterations == 0 && restarts == 0; }
};

struct ConcurrenceResult {
  double value_sq = 0.0;
  Certainty certainty = Certainty::exact;
  OptimizerMeta meta;
  std::string method;
};

// Squared concurrence of a pure state over the given cut,
// C^2 = sum_{a,b} |<psi| L_a (x) L_b |psi*>|^2.
inline ConcurrenceResult pure_concurrence_sq(const PureState& psi,
                                             const BipartiteSplit& split) {
  validate_split(split, psi.subsystems());
  const auto [m, n] = split_dims(psi.dims, split);
  const ComplexMatrix psi_conj =
      split_matrix(psi, split).conjugate();
  const GeneratorSet left = so_generators(static_cast<int>(m));
  const GeneratorSet right = so_generators(static_cast<int>(n));

  double total = 0.0;
  for (const ComplexMatrix& la : left.generators) {
    const ComplexMatrix partial = la * psi_conj;  // M x N
    for (const ComplexMatrix& lb : right.generators) {
      const Complex c = psi_conj.cwiseProduct(partial * lb.transpose()).sum();
      total += std::norm(c);
    }
  }
  return {total, Certainty::exact, {}, "generator"};
}

// Same quantity through the reduced state: C^2 = 2 (1 - Tr rho_left^2).
// Deliberately routed through density_from_pure / partial_trace so it stays
// an independent cross-check of the generator form.
inline ConcurrenceResult pure_concurrence_sq_purity(
    const PureState& psi, const BipartiteSplit& split) {
  validate_split(split, psi.subsystems());
  const DensityMatrix reduced =
      partial_trace(density_from_pure(psi), split.left);
  const double value = 2.0 * (1.0 - purity(reduced));
  return {std::max(value, 0.0), Certainty::exact, {}, "purity"};
}

// Wootters concurrence of a two-qubit mixed state. The eigenvalues of the
// non-Hermitian product rho*rho_tilde are taken from the similar Hermitian
// form sqrt(rho) rho_tilde sqrt(rho).
inline ConcurrenceResult wootters_concurrence(const DensityMatrix& rho) {
  if (rho.dims != Dims{2, 2}) {
    throw ValidationError(
        "wootters_concurrence: WrongDims, requires dims [2,2]");
  }
  const ComplexMatrix y = so_generators(2).generators[0];
  ComplexMatrix flip = ComplexMatrix::Zero(4, 4);
  for (int a = 0; a < 2; ++a)
    for (int b = 0; b < 2; ++b)
      for (int c = 0; c < 2; ++c)
        for (int d = 0; d < 2; ++d)
          flip(a * 2 + b, c * 2 + d) = y(a, c) * y(b, d);

  const ComplexMatrix root = matrix_sqrt_psd(rho.matrix);
  const ComplexMatrix inner =
      root * flip * rho.matrix.conjugate() * flip * root;
  const EigResult eig = hermitian_eig((inner + inner.adjoint()) / 2.0);

  double lambda[4];
  for (int i = 0; i < 4; ++i) {
    const double ev = eig.eigenvalues[i];
    lambda[i] = ev > kSqrtEigenvalueClamp ? std::sqrt(ev) : 0.0;
  }
  const double c = std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
  return {c * c, Certainty::exact, {}, "wootters"};
}

}  // namespace qmono
