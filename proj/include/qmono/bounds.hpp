// Mixed-state squared-concurrence estimation. Three routes with different
// certainty:
//   lower_bound_sq      — singular-value gap of a phase-weighted sum of
//                         correlation-tensor blocks; valid lower bound for
//                         every unit phase vector, so the best candidate
//                         found is reported.
//   lower_bound_2xM_sq  — analytic sub-concurrence sum for cuts with a
//                         dimension-2 block; no optimization involved.
//   convex_roof_sq      — ensemble-decomposition minimizer; an upper
//                         estimate of the convex roof.
// antisym_exact_sq certifies the one family where the roof is flat: states
// supported inside the two-qutrit antisymmetric subspace.
#pragma once

#include <limits>
#include <optional>
#include <sstream>

#include "catalog.hpp"
#include "concurrence.hpp"
#include "rng.hpp"
#include "state.hpp"

namespace qmono {

// Eigenvalues above this count toward the support rank.
inline constexpr double kRankCutoff = 1e-12;
// Singular-value gaps below this are numerical noise, not entanglement.
inline constexpr double kGapNoiseFloor = 1e-12;
// Support-projection residual admitted by the antisymmetric certifier.
inline constexpr double kAntisymResidualTol = 1e-10;

struct PhaseVector {
  ComplexVector z;  // unit Euclidean norm, indexed by generator pairs
};

// Blocks A^{ab}_{mn} = <Phi_m| L_a (x) L_b |Phi_n*> over the subnormalized
// eigenvector ensemble Phi_m = sqrt(mu_m) |chi_m> of rho. Each block is
// symmetric because L_a (x) L_b is a symmetric matrix.
struct CorrelationTensor {
  Eigen::Index rank = 0;
  int pairs_left = 0;
  int pairs_right = 0;
  std::vector<ComplexMatrix> blocks;  // index a * pairs_right + b

  Eigen::Index pair_count() const {
    return static_cast<Eigen::Index>(blocks.size());
  }
};

struct RoofConfig {
  Eigen::Index ensemble_size = 0;  // 0: use 2 * rank
  int restarts = 8;
  int max_iters = 2000;
  double step_tolerance = 1e-8;  // stop once the proposal step shrinks below
  std::uint64_t seed = 1;
};

// Subnormalized eigenvectors sqrt(mu_m)|chi_m> spanning the support of rho.
inline std::vector<ComplexVector> support_vectors(const DensityMatrix& rho) {
  const EigResult eig = hermitian_eig(rho.matrix);
  std::vector<ComplexVector> out;
  for (Eigen::Index i = 0; i < eig.eigenvalues.size(); ++i) {
    if (eig.eigenvalues[i] > kRankCutoff) {
      out.push_back(std::sqrt(eig.eigenvalues[i]) * eig.eigenvectors.col(i));
    }
  }
  return out;
}

inline CorrelationTensor correlation_tensor(const DensityMatrix& rho,
                                            const BipartiteSplit& split) {
  validate_split(split, rho.subsystems());
  const auto [m, n] = split_dims(rho.dims, split);
  const auto support = support_vectors(rho);
  const Eigen::Index rank = static_cast<Eigen::Index>(support.size());

  // Conjugated support vectors in block shape.
  std::vector<ComplexMatrix> conj_shapes;
  conj_shapes.reserve(rank);
  for (const ComplexVector& phi : support) {
    conj_shapes.push_back(
        split_matrix(phi.conjugate(), rho.dims, split));
  }

  const GeneratorSet left = so_generators(static_cast<int>(m));
  const GeneratorSet right = so_generators(static_cast<int>(n));

  CorrelationTensor ct;
  ct.rank = rank;
  ct.pairs_left = static_cast<int>(left.generators.size());
  ct.pairs_right = static_cast<int>(right.generators.size());
  ct.blocks.reserve(static_cast<size_t>(ct.pairs_left) * ct.pairs_right);

  for (const ComplexMatrix& la : left.generators) {
    std::vector<ComplexMatrix> transformed;  // L_a G_n L_b^T, built per b
    transformed.reserve(rank);
    for (const ComplexMatrix& gn : conj_shapes) {
      transformed.push_back(la * gn);
    }
    for (const ComplexMatrix& lb : right.generators) {
      ComplexMatrix block(rank, rank);
      for (Eigen::Index p = 0; p < rank; ++p) {
        const ComplexMatrix full = transformed[p] * lb.transpose();
        for (Eigen::Index q = 0; q <= p; ++q) {
          const Complex val = conj_shapes[q].cwiseProduct(full).sum();
          block(q, p) = val;
          block(p, q) = val;  // symmetric by construction
        }
      }
      ct.blocks.push_back(std::move(block));
    }
  }
  return ct;
}

namespace detail {

// gap(z) = lambda_1 - sum_{i>1} lambda_i for the singular values of
// sum_p z_p A^p. Any unit z makes max(0, gap)^2 a valid lower bound.
struct GapObjective {
  const CorrelationTensor* tensor;
  mutable std::int64_t evaluations = 0;

  ComplexMatrix weighted_sum(const ComplexVector& z) const {
    ComplexMatrix mz =
        ComplexMatrix::Zero(tensor->rank, tensor->rank);
    for (Eigen::Index p = 0; p < z.size(); ++p) {
      mz.noalias() += z[p] * tensor->blocks[static_cast<size_t>(p)];
    }
    return mz;
  }

  double operator()(const ComplexVector& z) const {
    ++evaluations;
    const RealVector sv = singular_values(weighted_sum(z));
    return 2.0 * sv[0] - sv.sum();
  }
};

// One step of the SVD-subgradient alignment: with M(z) = U S V†, the phase
// vector maximizing Re Tr[G† M(z')] for G = u1 v1† - sum_{i>1} ui vi† is
// z'_p = conj(Tr[G† A^p]) normalized. Exact for rank-1 tensors.
inline std::optional<ComplexVector> alignment_step(
    const CorrelationTensor& ct, const ComplexMatrix& mz) {
  Eigen::JacobiSVD<ComplexMatrix> svd(
      mz, Eigen::ComputeFullU | Eigen::ComputeFullV);
  ComplexMatrix g = svd.matrixU().col(0) * svd.matrixV().col(0).adjoint();
  for (Eigen::Index i = 1; i < ct.rank; ++i) {
    g -= svd.matrixU().col(i) * svd.matrixV().col(i).adjoint();
  }
  ComplexVector t(ct.pair_count());
  for (Eigen::Index p = 0; p < t.size(); ++p) {
    t[p] = g.conjugate()
               .cwiseProduct(ct.blocks[static_cast<size_t>(p)])
               .sum();
  }
  const double norm = t.norm();
  if (norm < 1e-300) return std::nullopt;
  return ComplexVector(t.conjugate() / norm);
}

}  // namespace detail

// Singular-value-gap lower bound on the squared concurrence, with the
// phase vector optimized by restarts + alignment + coordinate phase ascent.
inline ConcurrenceResult lower_bound_sq(const DensityMatrix& rho,
                                        const BipartiteSplit& split,
                                        int restarts, std::uint64_t seed) {
  if (restarts < 1) {
    throw ValidationError("lower_bound_sq: restarts must be >= 1");
  }
  const CorrelationTensor ct = correlation_tensor(rho, split);
  const Eigen::Index pairs = ct.pair_count();

  detail::GapObjective gap{&ct};
  double best_gap = -std::numeric_limits<double>::infinity();

  constexpr int kAlignIters = 40;
  constexpr int kPhasePasses = 30;
  constexpr int kPhaseGrid = 12;
  constexpr double kImprovementTol = 1e-9;

  for (int restart = 0; restart < restarts; ++restart) {
    ComplexVector z(pairs);
    if (restart == 0) {
      z.setConstant(Complex(1.0 / std::sqrt(static_cast<double>(pairs)), 0.0));
    } else {
      Rng rng(mix_seed(seed, static_cast<std::uint64_t>(restart)));
      for (Eigen::Index p = 0; p < pairs; ++p) {
        z[p] = rng.complex_gaussian();
      }
      z /= z.norm();
    }
    double current = gap(z);
    best_gap = std::max(best_gap, current);

    // Alignment fixed-point polish.
    for (int it = 0; it < kAlignIters; ++it) {
      const auto next = detail::alignment_step(ct, gap.weighted_sum(z));
      if (!next) break;
      const double value = gap(*next);
      best_gap = std::max(best_gap, value);
      if (value <= current + 1e-12) break;
      current = value;
      z = *next;
    }

    // Coordinate-wise phase ascent: rotate each coordinate's phase to the
    // best grid angle, then shrink the bracket around it.
    for (int pass = 0; pass < kPhasePasses; ++pass) {
      const double before = current;
      for (Eigen::Index p = 0; p < pairs; ++p) {
        if (std::abs(z[p]) < 1e-15) continue;
        const double mag = std::abs(z[p]);
        double best_angle = std::arg(z[p]);
        double best_value = current;
        auto probe = [&](double angle) {
          ComplexVector zc = z;
          zc[p] = std::polar(mag, angle);
          const double value = gap(zc);
          if (value > best_value) {
            best_value = value;
            best_angle = angle;
          }
        };
        for (int k = 0; k < kPhaseGrid; ++k) {
          probe(2.0 * M_PI * k / kPhaseGrid);
        }
        double width = 2.0 * M_PI / kPhaseGrid;
        for (int refine = 0; refine < 3; ++refine) {
          const double center = best_angle;
          probe(center - width / 3.0);
          probe(center + width / 3.0);
          width /= 3.0;
        }
        if (best_value > current) {
          z[p] = std::polar(mag, best_angle);
          current = best_value;
        }
      }
      best_gap = std::max(best_gap, current);
      if (current - before < kImprovementTol) break;
    }
  }

  // Gaps below the singular-value noise floor are exact zeros for every
  // practical purpose; reporting them as such keeps separable states at 0.
  const double clamped = best_gap > kGapNoiseFloor ? best_gap : 0.0;
  ConcurrenceResult result;
  result.value_sq = clamped * clamped;
  result.certainty = Certainty::lower_bound;
  result.meta = {gap.evaluations, restarts, seed};
  result.method = "phase-optimized-gap";
  return result;
}

// Analytic lower bound for cuts with a dimension-2 block: sum over level
// pairs (i < j) of max(0, l1 - l2 - l3 - l4)^2, the l's being square roots
// of the four largest eigenvalues of sqrt(rho) S rho* S sqrt(rho) with
// S the flip Y (x) L^{(ij)}. No optimization involved.
inline ConcurrenceResult lower_bound_2xM_sq(const DensityMatrix& rho,
                                            const BipartiteSplit& split) {
  validate_split(split, rho.subsystems());
  const auto [m, n] = split_dims(rho.dims, split);
  const bool qubit_left = (m == 2);
  if (!qubit_left && n != 2) {
    throw ValidationError(
        "lower_bound_2xM_sq: WrongDims, one block must have dimension 2");
  }
  const Eigen::Index other = qubit_left ? n : m;

  const ComplexMatrix y = so_generators(2).generators[0];
  const GeneratorSet gens = so_generators(static_cast<int>(other));
  const ComplexMatrix root = matrix_sqrt_psd(rho.matrix);
  const ComplexMatrix rho_conj = rho.matrix.conjugate();

  double total = 0.0;
  for (const ComplexMatrix& level : gens.generators) {
    const ComplexMatrix flip =
        qubit_left ? block_operator(rho.dims, split, y, level)
                   : block_operator(rho.dims, split, level, y);
    const ComplexMatrix inner = root * (flip * rho_conj * flip) * root;
    const EigResult eig = hermitian_eig((inner + inner.adjoint()) / 2.0);
    double lambda[4] = {0.0, 0.0, 0.0, 0.0};
    for (int i = 0; i < 4 && i < eig.eigenvalues.size(); ++i) {
      const double ev = eig.eigenvalues[i];
      lambda[i] = ev > kSqrtEigenvalueClamp ? std::sqrt(ev) : 0.0;
    }
    const double c =
        std::max(0.0, lambda[0] - lambda[1] - lambda[2] - lambda[3]);
    total += c * c;
  }
  ConcurrenceResult result;
  result.value_sq = total;
  result.certainty = Certainty::lower_bound;
  result.method = "subconcurrence-sum";
  return result;
}

// Ensemble average of C^2 for the decomposition induced by an isometry
// (orthonormal columns; rows index ensemble members) on the support.
inline double ensemble_average_csq(const ComplexMatrix& support,
                                   const ComplexMatrix& isometry,
                                   const Dims& dims,
                                   const BipartiteSplit& split) {
  const auto [m, n] = split_dims(dims, split);
  const auto maps = detail::block_index_maps(dims, split);
  const ComplexMatrix members = support * isometry.transpose();

  double total = 0.0;
  ComplexMatrix shape(m, n);
  for (Eigen::Index i = 0; i < members.cols(); ++i) {
    for (Eigen::Index g = 0; g < members.rows(); ++g) {
      shape(maps.left[g], maps.right[g]) = members(g, i);
    }
    const double weight = shape.squaredNorm();
    if (weight < 1e-14) continue;
    const double purity_unnorm = (shape * shape.adjoint()).squaredNorm();
    total += 2.0 * (weight * weight - purity_unnorm) / weight;
  }
  return total;
}

// Convex-roof upper estimate for the squared concurrence. Decompositions
// are parameterized by isometries exp(a).leftCols(rank) over anti-Hermitian
// a and minimized by adaptive random perturbation descent: propose a
// Gaussian step, accept on improvement, halve the step after 20 consecutive
// rejections.
inline ConcurrenceResult convex_roof_sq(const DensityMatrix& rho,
                                        const BipartiteSplit& split,
                                        const RoofConfig& cfg) {
  validate_split(split, rho.subsystems());
  const auto support_list = support_vectors(rho);
  const Eigen::Index rank = static_cast<Eigen::Index>(support_list.size());
  const Eigen::Index ensemble =
      cfg.ensemble_size > 0 ? cfg.ensemble_size : 2 * rank;
  if (ensemble < rank) {
    std::ostringstream msg;
    msg << "convex_roof_sq: ConfigInvalid, ensemble_size " << ensemble
        << " below support rank " << rank;
    throw ValidationError(msg.str());
  }
  if (cfg.restarts < 1) {
    throw ValidationError("convex_roof_sq: ConfigInvalid, restarts must be >= 1");
  }

  ComplexMatrix support(rho.dim(), rank);
  for (Eigen::Index i = 0; i < rank; ++i) support.col(i) = support_list[i];

  // Real parameter layout for an anti-Hermitian ensemble x ensemble matrix:
  // diagonal imaginary parts, then (re, im) per upper off-diagonal entry.
  const Eigen::Index param_count = ensemble * ensemble;
  auto to_generator = [&](const RealVector& params) {
    ComplexMatrix a = ComplexMatrix::Zero(ensemble, ensemble);
    Eigen::Index at = 0;
    for (Eigen::Index i = 0; i < ensemble; ++i) {
      a(i, i) = Complex(0.0, params[at++]);
    }
    for (Eigen::Index i = 0; i < ensemble; ++i) {
      for (Eigen::Index j = i + 1; j < ensemble; ++j) {
        const double re = params[at++];
        const double im = params[at++];
        a(i, j) = Complex(re, im);
        a(j, i) = Complex(-re, im);
      }
    }
    return a;
  };

  auto evaluate = [&](const RealVector& params) {
    const ComplexMatrix u = unitary_from_generator(to_generator(params));
    return ensemble_average_csq(support, u.leftCols(rank), rho.dims, split);
  };

  double best = std::numeric_limits<double>::infinity();
  std::int64_t total_iters = 0;

  for (int restart = 0; restart < cfg.restarts; ++restart) {
    Rng rng(mix_seed(cfg.seed, static_cast<std::uint64_t>(restart)));
    RealVector params = RealVector::Zero(param_count);
    if (restart > 0) {
      for (Eigen::Index i = 0; i < param_count; ++i) {
        params[i] = rng.gaussian();
      }
    }
    double current = evaluate(params);
    double sigma = 0.5;
    int rejects = 0;
    for (int iter = 0; iter < cfg.max_iters; ++iter) {
      RealVector proposal = params;
      for (Eigen::Index i = 0; i < param_count; ++i) {
        proposal[i] += sigma * rng.gaussian();
      }
      const double value = evaluate(proposal);
      ++total_iters;
      if (value < current) {
        params = std::move(proposal);
        current = value;
        rejects = 0;
      } else if (++rejects >= 20) {
        sigma *= 0.5;
        rejects = 0;
        if (sigma < cfg.step_tolerance) break;
      }
    }
    best = std::min(best, current);
  }

  ConcurrenceResult result;
  result.value_sq = std::max(best, 0.0);
  result.certainty = Certainty::upper_estimate;
  result.meta = {total_iters, cfg.restarts, cfg.seed};
  result.method = "convex-roof";
  return result;
}

// Exact certifier for two-qutrit states supported inside the antisymmetric
// subspace span{|x>,|y>,|z>}: every pure state there has C^2 = 1, so every
// decomposition averages to 1 and the roof is exactly 1.
inline std::optional<ConcurrenceResult> antisym_exact_sq(
    const DensityMatrix& rho, const BipartiteSplit& split) {
  validate_split(split, rho.subsystems());
  if (rho.dims != Dims{3, 3}) return std::nullopt;

  ComplexMatrix projector = ComplexMatrix::Zero(9, 9);
  for (AntisymBasis which :
       {AntisymBasis::x, AntisymBasis::y, AntisymBasis::z}) {
    const PureState basis = antisym_basis(which);
    projector += basis.amplitudes * basis.amplitudes.adjoint();
  }
  const double residual =
      (rho.matrix - projector * rho.matrix * projector).cwiseAbs().maxCoeff();
  if (residual >= kAntisymResidualTol) return std::nullopt;
  return ConcurrenceResult{1.0, Certainty::exact, {}, "antisym-support"};
}

}  // namespace qmono
