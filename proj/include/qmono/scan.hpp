// Randomized scan over tripartite pure states for monogamy-violation
// candidates. Samples are keyed by (seed, index), so records are
// reproducible and order-independent; pairwise values use cheap optimizer
// settings during the scan and refine() re-audits a candidate with an
// escalated budget.
#pragma once

#include <cstdio>
#include <cstring>

#include "monogamy.hpp"

namespace qmono {

inline constexpr int kScanRestarts = 2;
inline constexpr int kScanMaxIters = 300;
inline constexpr int kRefineRestarts = 4 * kScanRestarts;
inline constexpr int kRefineMaxIters = 4 * kScanMaxIters;

struct ScanConfig {
  Dims dims;  // three subsystem dimensions
  int samples = 100;
  std::uint64_t seed = 1;
  double margin_threshold = 1e-6;
  RoofConfig roof_cfg{0, kScanRestarts, kScanMaxIters, 1e-8, 1};
};

struct ScanRecord {
  int seed_offset = 0;     // sample index within the scan
  std::string state_hash;  // digest of the sampled amplitudes
  std::vector<MonogamyReport> reports;  // one per focus
  double best_margin = 0.0;  // max over foci of (pairwise sum - pure cut)
  bool candidate = false;    // best_margin above the configured threshold
};

// FNV-1a over the raw amplitude bytes, real then imaginary per entry.
inline std::string state_hash(const PureState& psi) {
  std::uint64_t h = 1469598103934665603ULL;
  auto mix = [&h](double value) {
    std::uint64_t bits = 0;
    std::memcpy(&bits, &value, sizeof(bits));
    for (int byte = 0; byte < 8; ++byte) {
      h ^= (bits >> (8 * byte)) & 0xffULL;
      h *= 1099511628211ULL;
    }
  };
  for (Eigen::Index i = 0; i < psi.amplitudes.size(); ++i) {
    mix(psi.amplitudes[i].real());
    mix(psi.amplitudes[i].imag());
  }
  char buf[32];
  std::snprintf(buf, sizeof(buf), "fnv1a64:%016llx",
                static_cast<unsigned long long>(h));
  return buf;
}

namespace detail {

inline ScanRecord scan_record(const PureState& psi, int offset,
                              const ScanConfig& cfg) {
  RoofConfig roof = cfg.roof_cfg;
  roof.seed = mix_seed(cfg.seed, 2 * static_cast<std::uint64_t>(offset) + 1);
  ScanRecord record;
  record.seed_offset = offset;
  record.state_hash = state_hash(psi);
  record.reports = audit_all_foci(psi, roof);
  record.best_margin = -std::numeric_limits<double>::infinity();
  for (const MonogamyReport& report : record.reports) {
    record.best_margin = std::max(record.best_margin, report.margin);
  }
  record.candidate = record.best_margin > cfg.margin_threshold;
  return record;
}

}  // namespace detail

// Audits cfg.samples Haar-random pure states over cfg.dims and returns the
// records sorted by descending best_margin (ties by sample index). An
// injected state, when given, replaces sample 0 so a known candidate can be
// pushed through the same pipeline.
inline std::vector<ScanRecord> scan(
    const ScanConfig& cfg,
    const std::optional<PureState>& injected = std::nullopt) {
  detail::require_dims(cfg.dims, "scan");
  if (cfg.dims.size() != 3) {
    throw ValidationError("scan: dims must name exactly 3 subsystems");
  }
  if (cfg.samples < 1) {
    throw ValidationError("scan: samples must be >= 1");
  }
  if (cfg.margin_threshold < 0.0) {
    throw ValidationError("scan: margin_threshold must be >= 0");
  }
  if (injected && injected->dims != cfg.dims) {
    throw ValidationError("scan: injected state dims do not match scan dims");
  }

  std::vector<ScanRecord> records;
  records.reserve(static_cast<size_t>(cfg.samples));
  for (int i = 0; i < cfg.samples; ++i) {
    const PureState psi =
        (i == 0 && injected)
            ? *injected
            : haar_random_pure(cfg.dims,
                               mix_seed(cfg.seed,
                                        2 * static_cast<std::uint64_t>(i)));
    records.push_back(detail::scan_record(psi, i, cfg));
  }
  std::sort(records.begin(), records.end(),
            [](const ScanRecord& a, const ScanRecord& b) {
              if (a.best_margin != b.best_margin) {
                return a.best_margin > b.best_margin;
              }
              return a.seed_offset < b.seed_offset;
            });
  return records;
}

// Re-audit with restarts and iterations escalated to at least four times the
// scan defaults; a loose heuristic flag either survives with a tighter
// estimate or drops back to satisfied.
inline MonogamyReport refine(const PureState& psi, int focus,
                             const RoofConfig& cfg = {}) {
  RoofConfig escalated = cfg;
  escalated.restarts = std::max(cfg.restarts, kRefineRestarts);
  escalated.max_iters = std::max(cfg.max_iters, kRefineMaxIters);
  return audit(psi, focus, escalated);
}

}  // namespace qmono
