// Dense complex linear-algebra kernels. Every other module goes through this
// surface, so the floating-point contracts live here: tolerances are module
// constants, matrices stay small (side <= ~100), and all functions are pure.
#pragma once

#include <Eigen/Dense>
#include <complex>
#include <sstream>

#include "errors.hpp"

namespace qmono {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Contract tolerances. Inputs here never exceed side 100, so these are
// attainable with plain double precision.
inline constexpr double kHermitianTol = 1e-10;      // max |h - h†| admitted
inline constexpr double kReconstructTol = 1e-9;     // ||V Λ V† - h||_max
inline constexpr double kPsdEigenvalueFloor = -1e-8;  // below this: not PSD
inline constexpr double kSqrtEigenvalueClamp = 1e-12;  // treat as exact zero before sqrt

struct EigResult {
  RealVector eigenvalues;      // descending
  ComplexMatrix eigenvectors;  // orthonormal columns, col(i) <-> eigenvalues[i]
};

inline bool all_finite(const ComplexMatrix& m) {
  return m.allFinite();
}

namespace detail {

inline void require_finite(const ComplexMatrix& m, const char* op) {
  if (!all_finite(m)) {
    throw NumericError(std::string(op) + ": NonFinite entry in input matrix");
  }
}

inline void require_square(const ComplexMatrix& m, const char* op) {
  if (m.rows() != m.cols()) {
    std::ostringstream msg;
    msg << op << ": matrix must be square, got " << m.rows() << "x" << m.cols();
    throw ValidationError(msg.str());
  }
}

}  // namespace detail

// Eigendecomposition of a Hermitian matrix. Eigenvalues descending,
// eigenvector columns orthonormal.
inline EigResult hermitian_eig(const ComplexMatrix& h) {
  detail::require_finite(h, "hermitian_eig");
  detail::require_square(h, "hermitian_eig");
  const double asym = (h - h.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTol) {
    std::ostringstream msg;
    msg << "hermitian_eig: NotHermitian, asymmetry " << asym << " exceeds "
        << kHermitianTol;
    throw NumericError(msg.str());
  }
  // Symmetrize to remove rounding-level asymmetry before factorizing.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver((h + h.adjoint()) / 2.0);
  if (solver.info() != Eigen::Success) {
    throw NumericError("hermitian_eig: eigensolver failed to converge");
  }
  EigResult out;
  out.eigenvalues = solver.eigenvalues().reverse();
  out.eigenvectors = solver.eigenvectors().rowwise().reverse();
  return out;
}

// Singular values of any finite matrix, non-negative and descending.
inline RealVector singular_values(const ComplexMatrix& m) {
  detail::require_finite(m, "singular_values");
  Eigen::JacobiSVD<ComplexMatrix> svd(m);
  return svd.singularValues();
}

// PSD square root via eigendecomposition. Rounding-level negative
// eigenvalues are clamped to zero; anything below the floor is an error.
inline ComplexMatrix matrix_sqrt_psd(const ComplexMatrix& h) {
  EigResult eig = hermitian_eig(h);
  RealVector roots(eig.eigenvalues.size());
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    const double ev = eig.eigenvalues[i];
    if (ev < kPsdEigenvalueFloor) {
      std::ostringstream msg;
      msg << "matrix_sqrt_psd: NotPSD, eigenvalue " << ev << " below "
          << kPsdEigenvalueFloor;
      throw NumericError(msg.str());
    }
    roots[i] = ev > kSqrtEigenvalueClamp ? std::sqrt(ev) : 0.0;
  }
  return eig.eigenvectors * roots.asDiagonal() *
         eig.eigenvectors.adjoint();
}

// exp(a) for anti-Hermitian a, computed through the Hermitian matrix -i*a
// rather than a power series; exact at these sizes.
inline ComplexMatrix unitary_from_generator(const ComplexMatrix& a) {
  detail::require_finite(a, "unitary_from_generator");
  detail::require_square(a, "unitary_from_generator");
  const double asym = (a + a.adjoint()).cwiseAbs().maxCoeff();
  if (asym > kHermitianTol) {
    std::ostringstream msg;
    msg << "unitary_from_generator: NotAntiHermitian, |a + a†| reaches "
        << asym;
    throw NumericError(msg.str());
  }
  const Complex minus_i(0.0, -1.0);
  ComplexMatrix herm = minus_i * a;
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> solver(
      (herm + herm.adjoint()) / 2.0);
  if (solver.info() != Eigen::Success) {
    throw NumericError("unitary_from_generator: eigensolver failed");
  }
  ComplexVector phases(solver.eigenvalues().size());
  for (Eigen::Index i = 0; i < phases.size(); ++i) {
    phases[i] = std::exp(Complex(0.0, solver.eigenvalues()[i]));
  }
  return solver.eigenvectors() * phases.asDiagonal() *
         solver.eigenvectors().adjoint();
}

}  // namespace qmono
