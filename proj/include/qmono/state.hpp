// Multipartite qudit states: pure amplitude vectors and density matrices
// with declared subsystem dimensions, plus the reshaping operations every
// entanglement measure needs (tensor product, partial trace, conjugation,
// bipartite reshapes).
//
// Index convention: subsystems are big-endian, the first subsystem varies
// slowest. For dims {d0,d1,d2} the ket |i0 i1 i2> sits at amplitude index
// (i0*d1 + i1)*d2 + i2. Basis labels are 0-based. Files use the same order.
#pragma once

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>
#include <utility>
#include <vector>

#include "linalg.hpp"

namespace qmono {

inline constexpr double kStateNormTol = 1e-10;
inline constexpr double kDensityPsdTol = -1e-9;

using Dims = std::vector<int>;

inline Eigen::Index dim_product(const Dims& dims) {
  Eigen::Index d = 1;
  for (int s : dims) d *= s;
  return d;
}

namespace detail {

inline void require_dims(const Dims& dims, const char* what) {
  if (dims.empty()) {
    throw ValidationError(std::string(what) + ": dims must be non-empty");
  }
  for (int d : dims) {
    if (d < 2) {
      std::ostringstream msg;
      msg << what << ": every subsystem dimension must be >= 2, got " << d;
      throw ValidationError(msg.str());
    }
  }
}

// Big-endian strides of each subsystem in the flat index.
inline std::vector<Eigen::Index> strides(const Dims& dims) {
  std::vector<Eigen::Index> out(dims.size(), 1);
  for (int s = static_cast<int>(dims.size()) - 2; s >= 0; --s) {
    out[s] = out[s + 1] * dims[s + 1];
  }
  return out;
}

}  // namespace detail

struct PureState {
  Dims dims;
  ComplexVector amplitudes;

  PureState(Dims dims_, ComplexVector amplitudes_)
      : dims(std::move(dims_)), amplitudes(std::move(amplitudes_)) {
    detail::require_dims(dims, "PureState");
    if (amplitudes.size() != dim_product(dims)) {
      std::ostringstream msg;
      msg << "PureState: amplitude count " << amplitudes.size()
          << " does not match product of dims " << dim_product(dims);
      throw ValidationError(msg.str());
    }
    if (!amplitudes.allFinite()) {
      throw ValidationError("PureState: NonFinite amplitude");
    }
    const double norm = amplitudes.norm();
    if (std::abs(norm - 1.0) > kStateNormTol) {
      std::ostringstream msg;
      msg << "PureState: norm invariant violated, ||amplitudes||_2 = " << norm
          << " (must be 1 within " << kStateNormTol << ")";
      throw ValidationError(msg.str());
    }
  }

  Eigen::Index dim() const { return amplitudes.size(); }
  int subsystems() const { return static_cast<int>(dims.size()); }
};

struct DensityMatrix {
  Dims dims;
  ComplexMatrix matrix;

  DensityMatrix(Dims dims_, ComplexMatrix matrix_)
      : dims(std::move(dims_)), matrix(std::move(matrix_)) {
    detail::require_dims(dims, "DensityMatrix");
    const Eigen::Index d = dim_product(dims);
    if (matrix.rows() != d || matrix.cols() != d) {
      std::ostringstream msg;
      msg << "DensityMatrix: matrix side " << matrix.rows() << "x"
          << matrix.cols() << " does not match product of dims " << d;
      throw ValidationError(msg.str());
    }
    if (!all_finite(matrix)) {
      throw ValidationError("DensityMatrix: NonFinite entry");
    }
    const double asym = (matrix - matrix.adjoint()).cwiseAbs().maxCoeff();
    if (asym > kHermitianTol) {
      std::ostringstream msg;
      msg << "DensityMatrix: hermiticity invariant violated, |rho - rho†| = "
          << asym << " (tolerance " << kHermitianTol << ")";
      throw ValidationError(msg.str());
    }
    const double tr = matrix.trace().real();
    if (std::abs(tr - 1.0) > kStateNormTol ||
        std::abs(matrix.trace().imag()) > kStateNormTol) {
      std::ostringstream msg;
      msg << "DensityMatrix: trace invariant violated, trace = " << tr
          << " (must be 1 within " << kStateNormTol << ")";
      throw ValidationError(msg.str());
    }
    Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
        (matrix + matrix.adjoint()) / 2.0, Eigen::EigenvaluesOnly);
    const double min_eig = solver.eigenvalues().minCoeff();
    if (min_eig < kDensityPsdTol) {
      std::ostringstream msg;
      msg << "DensityMatrix: positivity invariant violated, min eigenvalue "
          << min_eig << " (floor " << kDensityPsdTol << ")";
      throw ValidationError(msg.str());
    }
  }

  Eigen::Index dim() const { return matrix.rows(); }
  int subsystems() const { return static_cast<int>(dims.size()); }
};

// Two-block partition of subsystem indices; sides are kept sorted.
struct BipartiteSplit {
  std::vector<int> left;
  std::vector<int> right;

  BipartiteSplit(std::vector<int> left_, std::vector<int> right_)
      : left(std::move(left_)), right(std::move(right_)) {
    std::sort(left.begin(), left.end());
    std::sort(right.begin(), right.end());
    if (left.empty() || right.empty()) {
      throw ValidationError("BipartiteSplit: both sides must be non-empty");
    }
  }
};

inline void validate_split(const BipartiteSplit& split, int subsystems) {
  std::set<int> seen;
  for (const auto* side : {&split.left, &split.right}) {
    for (int s : *side) {
      if (s < 0 || s >= subsystems) {
        std::ostringstream msg;
        msg << "BipartiteSplit: subsystem index " << s << " out of range [0, "
            << subsystems << ")";
        throw ValidationError(msg.str());
      }
      if (!seen.insert(s).second) {
        std::ostringstream msg;
        msg << "BipartiteSplit: subsystem index " << s << " appears twice";
        throw ValidationError(msg.str());
      }
    }
  }
  if (static_cast<int>(seen.size()) != subsystems) {
    throw ValidationError(
        "BipartiteSplit: sides must cover every subsystem exactly once");
  }
}

// Product dimensions (M, N) of the two blocks.
inline std::pair<Eigen::Index, Eigen::Index> split_dims(
    const Dims& dims, const BipartiteSplit& split) {
  Eigen::Index m = 1;
  Eigen::Index n = 1;
  for (int s : split.left) m *= dims[s];
  for (int s : split.right) n *= dims[s];
  return {m, n};
}

// --------------------------------------------------------------------------
// Construction helpers
// --------------------------------------------------------------------------

// |i0 i1 ...> with the given digits.
inline PureState basis_state(const Dims& dims, const std::vector<int>& digits) {
  detail::require_dims(dims, "basis_state");
  if (digits.size() != dims.size()) {
    throw ValidationError("basis_state: one digit per subsystem required");
  }
  Eigen::Index index = 0;
  for (size_t s = 0; s < dims.size(); ++s) {
    if (digits[s] < 0 || digits[s] >= dims[s]) {
      throw ValidationError("basis_state: digit out of range");
    }
    index = index * dims[s] + digits[s];
  }
  ComplexVector amps = ComplexVector::Zero(dim_product(dims));
  amps[index] = Complex(1.0, 0.0);
  return PureState(dims, std::move(amps));
}

// Normalized linear combination of same-shape states.
inline PureState superpose(
    const std::vector<std::pair<Complex, PureState>>& terms) {
  if (terms.empty()) {
    throw ValidationError("superpose: at least one term required");
  }
  const Dims& dims = terms.front().second.dims;
  ComplexVector amps = ComplexVector::Zero(terms.front().second.dim());
  for (const auto& [coeff, state] : terms) {
    if (state.dims != dims) {
      throw ValidationError("superpose: all terms must share dims");
    }
    amps += coeff * state.amplitudes;
  }
  const double norm = amps.norm();
  if (norm < 1e-14) {
    throw ValidationError("superpose: terms cancel to the zero vector");
  }
  return PureState(dims, amps / norm);
}

// --------------------------------------------------------------------------
// Operations
// --------------------------------------------------------------------------

inline PureState tensor(const PureState& a, const PureState& b) {
  Dims dims = a.dims;
  dims.insert(dims.end(), b.dims.begin(), b.dims.end());
  ComplexVector amps(a.dim() * b.dim());
  for (Eigen::Index i = 0; i < a.dim(); ++i) {
    amps.segment(i * b.dim(), b.dim()) = a.amplitudes[i] * b.amplitudes;
  }
  return PureState(std::move(dims), std::move(amps));
}

inline DensityMatrix density_from_pure(const PureState& psi) {
  return DensityMatrix(psi.dims,
                       psi.amplitudes * psi.amplitudes.adjoint());
}

inline PureState conjugate(const PureState& psi) {
  return PureState(psi.dims, psi.amplitudes.conjugate());
}

inline double purity(const DensityMatrix& rho) {
  // Tr(rho^2) = ||rho||_F^2 for Hermitian rho.
  return rho.matrix.squaredNorm();
}

// Trace out every subsystem not in `keep`. Implemented with index
// arithmetic over multi-indices; O(D^2) time, no permutation matrices.
inline DensityMatrix partial_trace(const DensityMatrix& rho,
                                   const std::vector<int>& keep_in) {
  std::vector<int> keep = keep_in;
  std::sort(keep.begin(), keep.end());
  keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
  if (keep.size() != keep_in.size()) {
    throw ValidationError("partial_trace: duplicate subsystem in keep");
  }
  if (keep.empty()) {
    throw ValidationError("partial_trace: EmptyKeep, nothing to keep");
  }
  for (int s : keep) {
    if (s < 0 || s >= rho.subsystems()) {
      throw ValidationError("partial_trace: keep index out of range");
    }
  }
  if (static_cast<int>(keep.size()) == rho.subsystems()) {
    throw ValidationError("partial_trace: FullKeep, nothing to trace out");
  }

  std::vector<int> traced;
  for (int s = 0; s < rho.subsystems(); ++s) {
    if (!std::binary_search(keep.begin(), keep.end(), s)) traced.push_back(s);
  }

  const auto stride = detail::strides(rho.dims);
  // Flat offsets contributed by every multi-index over a subsystem list.
  auto offsets = [&](const std::vector<int>& subs) {
    Eigen::Index count = 1;
    for (int s : subs) count *= rho.dims[s];
    std::vector<Eigen::Index> out(count, 0);
    for (Eigen::Index idx = 0; idx < count; ++idx) {
      Eigen::Index rest = idx;
      for (auto it = subs.rbegin(); it != subs.rend(); ++it) {
        const Eigen::Index digit = rest % rho.dims[*it];
        rest /= rho.dims[*it];
        out[idx] += digit * stride[*it];
      }
    }
    return out;
  };

  const auto keep_off = offsets(keep);
  const auto traced_off = offsets(traced);
  const Eigen::Index dk = static_cast<Eigen::Index>(keep_off.size());

  ComplexMatrix reduced = ComplexMatrix::Zero(dk, dk);
  for (Eigen::Index a = 0; a < dk; ++a) {
    for (Eigen::Index b = 0; b < dk; ++b) {
      Complex sum(0.0, 0.0);
      for (Eigen::Index t : traced_off) {
        sum += rho.matrix(keep_off[a] + t, keep_off[b] + t);
      }
      reduced(a, b) = sum;
    }
  }

  Dims kept_dims;
  for (int s : keep) kept_dims.push_back(rho.dims[s]);
  return DensityMatrix(std::move(kept_dims), std::move(reduced));
}

// --------------------------------------------------------------------------
// Bipartite reshapes
// --------------------------------------------------------------------------

namespace detail {

// Block indices (l, r) of every flat index g under the split; each block
// orders its subsystems by original index, big-endian.
struct BlockIndexMaps {
  std::vector<Eigen::Index> left;
  std::vector<Eigen::Index> right;
};

inline BlockIndexMaps block_index_maps(const Dims& dims,
                                       const BipartiteSplit& split) {
  const int k = static_cast<int>(dims.size());
  std::vector<char> on_left(k, 0);
  for (int s : split.left) on_left[s] = 1;

  // Strides within each block.
  std::vector<Eigen::Index> bstride(k, 0);
  Eigen::Index lacc = 1;
  Eigen::Index racc = 1;
  for (int s = k - 1; s >= 0; --s) {
    if (on_left[s]) {
      bstride[s] = lacc;
      lacc *= dims[s];
    } else {
      bstride[s] = racc;
      racc *= dims[s];
    }
  }

  const Eigen::Index total = dim_product(dims);
  BlockIndexMaps maps;
  maps.left.resize(total);
  maps.right.resize(total);
  for (Eigen::Index g = 0; g < total; ++g) {
    Eigen::Index rest = g;
    Eigen::Index l = 0;
    Eigen::Index r = 0;
    for (int s = k - 1; s >= 0; --s) {
      const Eigen::Index digit = rest % dims[s];
      rest /= dims[s];
      if (on_left[s]) {
        l += digit * bstride[s];
      } else {
        r += digit * bstride[s];
      }
    }
    maps.left[g] = l;
    maps.right[g] = r;
  }
  return maps;
}

}  // namespace detail

// Amplitudes reshaped into the M x N matrix of the split.
inline ComplexMatrix split_matrix(const ComplexVector& amplitudes,
                                  const Dims& dims,
                                  const BipartiteSplit& split) {
  const auto [m, n] = split_dims(dims, split);
  const auto maps = detail::block_index_maps(dims, split);
  ComplexMatrix out(m, n);
  for (Eigen::Index g = 0; g < amplitudes.size(); ++g) {
    out(maps.left[g], maps.right[g]) = amplitudes[g];
  }
  return out;
}

inline ComplexMatrix split_matrix(const PureState& psi,
                                  const BipartiteSplit& split) {
  validate_split(split, psi.subsystems());
  return split_matrix(psi.amplitudes, psi.dims, split);
}

// Operator acting as `on_left` on the left block and `on_right` on the
// right block, expressed in the flat global basis.
inline ComplexMatrix block_operator(const Dims& dims,
                                    const BipartiteSplit& split,
                                    const ComplexMatrix& on_left,
                                    const ComplexMatrix& on_right) {
  const auto [m, n] = split_dims(dims, split);
  if (on_left.rows() != m || on_left.cols() != m || on_right.rows() != n ||
      on_right.cols() != n) {
    throw ValidationError("block_operator: operator sides must match blocks");
  }
  const auto maps = detail::block_index_maps(dims, split);
  const Eigen::Index total = dim_product(dims);
  ComplexMatrix out(total, total);
  for (Eigen::Index g = 0; g < total; ++g) {
    for (Eigen::Index h = 0; h < total; ++h) {
      out(g, h) = on_left(maps.left[g], maps.left[h]) *
                  on_right(maps.right[g], maps.right[h]);
    }
  }
  return out;
}

}  // namespace qmono
