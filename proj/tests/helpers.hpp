// Shared helpers for the test binaries.
#pragma once

#include <qmono/catalog.hpp>
#include <qmono/state.hpp>

namespace test_helpers {

using qmono::Complex;
using qmono::ComplexMatrix;
using qmono::ComplexVector;
using qmono::Dims;
using qmono::PureState;

inline ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

// Normalized state from raw amplitudes.
inline PureState make_pure(const Dims& dims, ComplexVector amps) {
  return PureState(dims, amps / amps.norm());
}

// Apply a unitary to one subsystem, identity elsewhere.
inline PureState apply_single(const PureState& psi, int sub,
                              const ComplexMatrix& u) {
  const int k = psi.subsystems();
  std::vector<Eigen::Index> stride(k, 1);
  for (int s = k - 2; s >= 0; --s) stride[s] = stride[s + 1] * psi.dims[s + 1];

  const Eigen::Index d = psi.dims[sub];
  ComplexVector out = ComplexVector::Zero(psi.dim());
  for (Eigen::Index g = 0; g < psi.dim(); ++g) {
    const Eigen::Index digit = (g / stride[sub]) % d;
    const Eigen::Index base = g - digit * stride[sub];
    for (Eigen::Index target = 0; target < d; ++target) {
      out[base + target * stride[sub]] += u(target, digit) * psi.amplitudes[g];
    }
  }
  return PureState(psi.dims, std::move(out));
}

// Exchange two subsystems of equal dimension.
inline PureState swap_subsystems(const PureState& psi, int a, int b) {
  const int k = psi.subsystems();
  std::vector<Eigen::Index> stride(k, 1);
  for (int s = k - 2; s >= 0; --s) stride[s] = stride[s + 1] * psi.dims[s + 1];

  ComplexVector out(psi.dim());
  for (Eigen::Index g = 0; g < psi.dim(); ++g) {
    const Eigen::Index da = (g / stride[a]) % psi.dims[a];
    const Eigen::Index db = (g / stride[b]) % psi.dims[b];
    const Eigen::Index swapped =
        g - da * stride[a] - db * stride[b] + db * stride[a] + da * stride[b];
    out[swapped] = psi.amplitudes[g];
  }
  return PureState(psi.dims, std::move(out));
}

}  // namespace test_helpers
