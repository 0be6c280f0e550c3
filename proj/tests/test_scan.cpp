#include <catch2/catch_amalgamated.hpp>

#include <qmono/scan.hpp>

using namespace qmono;
using Catch::Approx;

namespace {

ScanConfig qubit_scan(int samples) {
  ScanConfig cfg;
  cfg.dims = {2, 2, 2};
  cfg.samples = samples;
  cfg.seed = 5;
  return cfg;
}

}  // namespace

TEST_CASE("state_hash is stable, labeled, and collision-averse") {
  const std::string h = state_hash(antisymmetric_qutrit());
  REQUIRE(h == state_hash(antisymmetric_qutrit()));
  REQUIRE(h.substr(0, 8) == "fnv1a64:");
  REQUIRE(h.size() == 24);
  REQUIRE(h != state_hash(ghz(3)));
}

TEST_CASE("qubit triples never produce candidates") {
  const std::vector<ScanRecord> records = scan(qubit_scan(30));
  REQUIRE(records.size() == 30);
  for (const ScanRecord& rec : records) {
    REQUIRE_FALSE(rec.candidate);
    REQUIRE(rec.best_margin <= 1e-6);
    REQUIRE(rec.reports.size() == 3);
    for (const MonogamyReport& report : rec.reports) {
      REQUIRE(report.verdict == Verdict::satisfied);
    }
  }
}

TEST_CASE("scan results are reproducible from the config alone") {
  const std::vector<ScanRecord> a = scan(qubit_scan(12));
  const std::vector<ScanRecord> b = scan(qubit_scan(12));
  REQUIRE(a.size() == b.size());
  for (size_t i = 0; i < a.size(); ++i) {
    REQUIRE(a[i].seed_offset == b[i].seed_offset);
    REQUIRE(a[i].state_hash == b[i].state_hash);
    REQUIRE(a[i].best_margin == b[i].best_margin);
    REQUIRE(a[i].candidate == b[i].candidate);
    for (size_t f = 0; f < 3; ++f) {
      REQUIRE(a[i].reports[f].verdict == b[i].reports[f].verdict);
      REQUIRE(a[i].reports[f].c2_focus_b.value_sq ==
              b[i].reports[f].c2_focus_b.value_sq);
      REQUIRE(a[i].reports[f].c2_focus_c.value_sq ==
              b[i].reports[f].c2_focus_c.value_sq);
      REQUIRE(a[i].reports[f].margin == b[i].reports[f].margin);
    }
  }
}

TEST_CASE("records come back sorted by descending best margin") {
  const std::vector<ScanRecord> records = scan(qubit_scan(20));
  for (size_t i = 1; i < records.size(); ++i) {
    REQUIRE(records[i - 1].best_margin >= records[i].best_margin);
  }
}

TEST_CASE("an injected violation leads the scan") {
  ScanConfig cfg;
  cfg.dims = {3, 3, 3};
  cfg.samples = 3;
  cfg.seed = 9;
  const std::vector<ScanRecord> records = scan(cfg, antisymmetric_qutrit());
  REQUIRE(records.size() == 3);

  const ScanRecord& top = records.front();
  REQUIRE(top.seed_offset == 0);
  REQUIRE(top.state_hash == state_hash(antisymmetric_qutrit()));
  REQUIRE(top.candidate);
  REQUIRE(top.best_margin == Approx(2.0 / 3.0).margin(1e-9));
  for (const MonogamyReport& report : top.reports) {
    REQUIRE(report.verdict == Verdict::violated_certified);
  }

  double recomputed = -std::numeric_limits<double>::infinity();
  for (const MonogamyReport& report : top.reports) {
    recomputed = std::max(recomputed, report.margin);
  }
  REQUIRE(top.best_margin == recomputed);
}

TEST_CASE("scan validates its configuration") {
  ScanConfig bad_dims;
  bad_dims.dims = {3, 3};
  REQUIRE_THROWS_AS(scan(bad_dims), ValidationError);

  ScanConfig bad_samples = qubit_scan(0);
  REQUIRE_THROWS_AS(scan(bad_samples), ValidationError);

  ScanConfig bad_threshold = qubit_scan(3);
  bad_threshold.margin_threshold = -1.0;
  REQUIRE_THROWS_AS(scan(bad_threshold), ValidationError);

  ScanConfig mismatched = qubit_scan(3);
  REQUIRE_THROWS_WITH(scan(mismatched, antisymmetric_qutrit()),
                      Catch::Matchers::ContainsSubstring("dims"));
}

TEST_CASE("refine escalates the optimizer budget") {
  const RoofConfig cheap{0, 2, 300, 1e-8, 1};

  const MonogamyReport certified = refine(antisymmetric_qutrit(), 0, cheap);
  REQUIRE(certified.verdict == Verdict::violated_certified);
  REQUIRE(certified.margin == Approx(2.0 / 3.0).margin(1e-9));

  const MonogamyReport settled = refine(ghz(3), 0, cheap);
  REQUIRE(settled.verdict == Verdict::satisfied);
  REQUIRE(settled.c2_focus_b.meta.restarts == kRefineRestarts);
  REQUIRE(settled.c2_focus_b.value_sq <= 1e-6);
  REQUIRE(settled.c2_focus_c.value_sq <= 1e-6);
}
