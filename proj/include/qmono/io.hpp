// JSON serialization for states, results, reports, and scan records, plus
// the scan summary CSV. State files keep full-precision amplitudes so a
// save/load round trip is exact; result documents round every value to 12
// significant digits.
//
// State file format: {"kind":"pure"|"density", "dims":[...],
// "amplitudes":[[re,im],...]} or {"matrix":[[[re,im],...],...]}, amplitudes
// ordered big-endian over subsystems (first subsystem slowest).
#pragma once

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>
#include <variant>

#include <json.hpp>

#include "scan.hpp"

namespace qmono {

using Json = nlohmann::json;
using AnyState = std::variant<PureState, DensityMatrix>;

// Nearest double to the 12-significant-digit decimal rendering of v.
inline double round12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return std::strtod(buf, nullptr);
}

// --------------------------------------------------------------------------
// States
// --------------------------------------------------------------------------

inline Json complex_to_json(const Complex& c) {
  return Json::array({c.real(), c.imag()});
}

inline Json state_to_json(const PureState& psi) {
  Json amplitudes = Json::array();
  for (Eigen::Index i = 0; i < psi.amplitudes.size(); ++i) {
    amplitudes.push_back(complex_to_json(psi.amplitudes[i]));
  }
  return Json{{"kind", "pure"}, {"dims", psi.dims},
              {"amplitudes", std::move(amplitudes)}};
}

inline Json state_to_json(const DensityMatrix& rho) {
  Json matrix = Json::array();
  for (Eigen::Index r = 0; r < rho.matrix.rows(); ++r) {
    Json row = Json::array();
    for (Eigen::Index c = 0; c < rho.matrix.cols(); ++c) {
      row.push_back(complex_to_json(rho.matrix(r, c)));
    }
    matrix.push_back(std::move(row));
  }
  return Json{{"kind", "density"}, {"dims", rho.dims},
              {"matrix", std::move(matrix)}};
}

inline Json state_to_json(const AnyState& state) {
  return std::visit([](const auto& s) { return state_to_json(s); }, state);
}

namespace detail {

inline Complex complex_from_json(const Json& j, const char* what) {
  if (!j.is_array() || j.size() != 2 || !j[0].is_number() ||
      !j[1].is_number()) {
    throw ValidationError(std::string(what) +
                          ": each complex entry must be [re, im]");
  }
  return {j[0].get<double>(), j[1].get<double>()};
}

inline Dims dims_from_json(const Json& j) {
  if (!j.is_array() || j.empty()) {
    throw ValidationError("state document: \"dims\" must be a non-empty array");
  }
  Dims dims;
  for (const Json& el : j) {
    if (!el.is_number_integer()) {
      throw ValidationError("state document: dims entries must be integers");
    }
    dims.push_back(el.get<int>());
  }
  return dims;
}

}  // namespace detail

inline AnyState state_from_json(const Json& j) {
  if (!j.is_object()) {
    throw ValidationError("state document: top level must be an object");
  }
  if (!j.contains("kind") || !j["kind"].is_string()) {
    throw ValidationError("state document: missing string field \"kind\"");
  }
  if (!j.contains("dims")) {
    throw ValidationError("state document: missing field \"dims\"");
  }
  const Dims dims = detail::dims_from_json(j["dims"]);
  const Eigen::Index d = dim_product(dims);
  const std::string kind = j["kind"].get<std::string>();

  if (kind == "pure") {
    if (!j.contains("amplitudes") || !j["amplitudes"].is_array()) {
      throw ValidationError(
          "state document: kind \"pure\" requires an \"amplitudes\" array");
    }
    const Json& amps = j["amplitudes"];
    if (static_cast<Eigen::Index>(amps.size()) != d) {
      std::ostringstream msg;
      msg << "state document: expected " << d << " amplitudes, got "
          << amps.size();
      throw ValidationError(msg.str());
    }
    ComplexVector v(d);
    for (Eigen::Index i = 0; i < d; ++i) {
      v[i] = detail::complex_from_json(amps[static_cast<size_t>(i)],
                                       "amplitudes");
    }
    return PureState(dims, std::move(v));
  }
  if (kind == "density") {
    if (!j.contains("matrix") || !j["matrix"].is_array()) {
      throw ValidationError(
          "state document: kind \"density\" requires a \"matrix\" array");
    }
    const Json& rows = j["matrix"];
    if (static_cast<Eigen::Index>(rows.size()) != d) {
      std::ostringstream msg;
      msg << "state document: expected " << d << " matrix rows, got "
          << rows.size();
      throw ValidationError(msg.str());
    }
    ComplexMatrix m(d, d);
    for (Eigen::Index r = 0; r < d; ++r) {
      const Json& row = rows[static_cast<size_t>(r)];
      if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != d) {
        throw ValidationError("state document: matrix rows must have one "
                              "[re, im] entry per column");
      }
      for (Eigen::Index c = 0; c < d; ++c) {
        m(r, c) = detail::complex_from_json(row[static_cast<size_t>(c)],
                                            "matrix");
      }
    }
    return DensityMatrix(dims, std::move(m));
  }
  throw ValidationError(
      "state document: \"kind\" must be \"pure\" or \"density\"");
}

inline Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ValidationError("cannot open file: " + path);
  }
  try {
    Json j;
    in >> j;
    return j;
  } catch (const Json::parse_error& e) {
    throw ValidationError("invalid JSON in " + path + ": " + e.what());
  }
}

inline AnyState load_state_file(const std::string& path) {
  return state_from_json(read_json_file(path));
}

// --------------------------------------------------------------------------
// Results and reports
// --------------------------------------------------------------------------

inline Json result_to_json(const ConcurrenceResult& r) {
  Json j{{"value_sq", round12(r.value_sq)},
         {"certainty", certainty_name(r.certainty)},
         {"method", r.method}};
  if (!r.meta.empty()) {
    j["meta"] = Json{{"iterations", r.meta.iterations},
                     {"restarts", r.meta.restarts},
                     {"seed", r.meta.seed},
                     {"rng", kRngAlgorithm}};
  }
  return j;
}

inline Json report_to_json(const MonogamyReport& rep) {
  return Json{{"focus", rep.focus},
              {"c2_focus_b", result_to_json(rep.c2_focus_b)},
              {"c2_focus_c", result_to_json(rep.c2_focus_c)},
              {"c2_focus_rest", result_to_json(rep.c2_focus_rest)},
              {"tangle", round12(rep.tangle)},
              {"verdict", verdict_name(rep.verdict)},
              {"margin", round12(rep.margin)},
              {"tolerance", round12(rep.tolerance)}};
}

inline Json record_to_json(const ScanRecord& rec) {
  Json reports = Json::array();
  for (const MonogamyReport& rep : rec.reports) {
    reports.push_back(report_to_json(rep));
  }
  return Json{{"seed_offset", rec.seed_offset},
              {"state_hash", rec.state_hash},
              {"best_margin", round12(rec.best_margin)},
              {"candidate", rec.candidate},
              {"reports", std::move(reports)}};
}

inline std::string dims_label(const Dims& dims) {
  std::string out;
  for (size_t i = 0; i < dims.size(); ++i) {
    if (i > 0) out += 'x';
    out += std::to_string(dims[i]);
  }
  return out;
}

// One-row summary: dims, samples, candidates, max_margin.
inline std::string scan_summary_csv(const ScanConfig& cfg,
                                    const std::vector<ScanRecord>& records) {
  int candidates = 0;
  double max_margin = -std::numeric_limits<double>::infinity();
  for (const ScanRecord& rec : records) {
    if (rec.candidate) ++candidates;
    max_margin = std::max(max_margin, rec.best_margin);
  }
  char margin_buf[40];
  std::snprintf(margin_buf, sizeof(margin_buf), "%.12g", max_margin);
  std::string out = "dims,samples,candidates,max_margin\n";
  out += dims_label(cfg.dims) + "," + std::to_string(cfg.samples) + "," +
         std::to_string(candidates) + "," + margin_buf + "\n";
  return out;
}

inline void write_text_file(const std::string& path,
                            const std::string& content) {
  std::ofstream out(path);
  if (!out) {
    throw ValidationError("cannot write file: " + path);
  }
  out << content;
}

}  // namespace qmono
