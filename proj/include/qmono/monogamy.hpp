// Tripartite monogamy audits. For a focus subsystem F with partners P, Q the
// report compares C^2(F|P) + C^2(F|Q) against the exact pure-cut C^2(F|PQ)
// and classifies the outcome. Violation is only certified when both pairwise
// values are exact or true lower bounds; convex-roof estimates are upper
// bounds and can at most flag a heuristic violation.
#pragma once

#include "bounds.hpp"

namespace qmono {

inline constexpr double kMonogamyTol = 1e-6;

enum class Verdict {
  satisfied,
  violated_heuristic,
  violated_certified,
  inconclusive,
};

inline const char* verdict_name(Verdict v) {
  switch (v) {
    case Verdict::satisfied: return "satisfied";
    case Verdict::violated_heuristic: return "violated_heuristic";
    case Verdict::violated_certified: return "violated_certified";
    case Verdict::inconclusive: return "inconclusive";
  }
  return "unknown";
}

struct MonogamyReport {
  int focus = 0;
  ConcurrenceResult c2_focus_b;     // pair with the smaller partner index
  ConcurrenceResult c2_focus_c;     // pair with the larger partner index
  ConcurrenceResult c2_focus_rest;  // exact pure cut focus | rest
  double tangle = 0.0;              // c2_focus_rest - c2_focus_b - c2_focus_c
  Verdict verdict = Verdict::satisfied;
  double margin = 0.0;  // pairwise sum - c2_focus_rest, from stored values
  double tolerance = kMonogamyTol;
};

namespace detail {

struct PairEstimate {
  ConcurrenceResult lower;
  ConcurrenceResult upper;
  bool exact = false;  // lower and upper coincide and are exact
};

// Best applicable method per pair, in priority order: Wootters for two
// qubits, the antisymmetric-support certifier for two qutrits, otherwise a
// convex-roof upper estimate alongside the best available lower bound.
inline PairEstimate pair_concurrence_sq(const DensityMatrix& pair_rho,
                                        const BipartiteSplit& cut,
                                        const RoofConfig& cfg) {
  PairEstimate out;
  if (pair_rho.dims == Dims{2, 2}) {
    const ConcurrenceResult exact = wootters_concurrence(pair_rho);
    out.lower = exact;
    out.upper = exact;
    out.exact = true;
    return out;
  }
  if (const auto exact = antisym_exact_sq(pair_rho, cut)) {
    out.lower = *exact;
    out.upper = *exact;
    out.exact = true;
    return out;
  }
  out.lower = lower_bound_sq(pair_rho, cut, cfg.restarts, cfg.seed);
  const auto [m, n] = split_dims(pair_rho.dims, cut);
  if (m == 2 || n == 2) {
    const ConcurrenceResult analytic = lower_bound_2xM_sq(pair_rho, cut);
    if (analytic.value_sq > out.lower.value_sq) out.lower = analytic;
  }
  out.upper = convex_roof_sq(pair_rho, cut, cfg);
  return out;
}

}  // namespace detail

inline MonogamyReport audit(const PureState& psi, int focus,
                            const RoofConfig& cfg = {},
                            double tolerance = kMonogamyTol) {
  if (psi.subsystems() != 3) {
    std::ostringstream msg;
    msg << "audit: WrongArity, need exactly 3 subsystems, got "
        << psi.subsystems();
    throw ValidationError(msg.str());
  }
  if (focus < 0 || focus > 2) {
    throw ValidationError("audit: focus must be 0, 1, or 2");
  }

  std::vector<int> partners;
  for (int s = 0; s < 3; ++s) {
    if (s != focus) partners.push_back(s);
  }

  MonogamyReport report;
  report.focus = focus;
  report.tolerance = tolerance;
  report.c2_focus_rest =
      pure_concurrence_sq(psi, BipartiteSplit({focus}, partners));

  const DensityMatrix rho = density_from_pure(psi);
  auto estimate_pair = [&](int partner) {
    const DensityMatrix pair_rho = partial_trace(rho, {focus, partner});
    const int focus_pos = focus < partner ? 0 : 1;
    const BipartiteSplit cut({focus_pos}, {1 - focus_pos});
    return detail::pair_concurrence_sq(pair_rho, cut, cfg);
  };
  const detail::PairEstimate b = estimate_pair(partners[0]);
  const detail::PairEstimate c = estimate_pair(partners[1]);

  const double rest_sq = report.c2_focus_rest.value_sq;
  const double lower_sum = b.lower.value_sq + c.lower.value_sq;
  const double upper_sum = b.upper.value_sq + c.upper.value_sq;

  if (lower_sum > rest_sq + tolerance) {
    report.verdict = Verdict::violated_certified;
    report.c2_focus_b = b.lower;
    report.c2_focus_c = c.lower;
  } else if (upper_sum > rest_sq + tolerance) {
    report.verdict = Verdict::violated_heuristic;
    report.c2_focus_b = b.upper;
    report.c2_focus_c = c.upper;
  } else {
    report.verdict = Verdict::satisfied;
    report.c2_focus_b = b.upper;
    report.c2_focus_c = c.upper;
  }
  report.margin = report.c2_focus_b.value_sq + report.c2_focus_c.value_sq -
                  rest_sq;
  report.tangle = -report.margin;
  return report;
}

inline std::vector<MonogamyReport> audit_all_foci(
    const PureState& psi, const RoofConfig& cfg = {},
    double tolerance = kMonogamyTol) {
  std::vector<MonogamyReport> reports;
  for (int focus = 0; focus < 3; ++focus) {
    reports.push_back(audit(psi, focus, cfg, tolerance));
  }
  return reports;
}

// Three-tangle for three qubits: exact pure cut minus exact Wootters
// pairwise squared concurrences. Non-negative for qubit inputs.
inline double three_tangle_qubits(const PureState& psi, int focus = 0) {
  if (psi.dims != Dims{2, 2, 2}) {
    throw ValidationError(
        "three_tangle_qubits: WrongDims, need dims [2,2,2]");
  }
  if (focus < 0 || focus > 2) {
    throw ValidationError("three_tangle_qubits: focus must be 0, 1, or 2");
  }
  std::vector<int> partners;
  for (int s = 0; s < 3; ++s) {
    if (s != focus) partners.push_back(s);
  }
  const DensityMatrix rho = density_from_pure(psi);
  const double rest_sq =
      pure_concurrence_sq(psi, BipartiteSplit({focus}, partners)).value_sq;
  double pair_sum = 0.0;
  for (int partner : partners) {
    pair_sum +=
        wootters_concurrence(partial_trace(rho, {focus, partner})).value_sq;
  }
  return rest_sq - pair_sum;
}

}  // namespace qmono
