// qmono: entanglement measures, bounds, and monogamy audits for qudits.
//
// Subcommands:
//   eval   exact squared concurrence of a pure state over a cut
//   bound  lower bound for a mixed state (phase-optimized or analytic 2xM)
//   roof   convex-roof upper estimate for a mixed state
//   audit  per-focus monogamy report for a tripartite pure state
//   state  emit a catalog state as a JSON document
//   scan   randomized search for monogamy-violation candidates
//
// Exit codes: 0 success, 2 invalid input, 3 numeric failure.
#include <cstdlib>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <qmono/qmono.hpp>

namespace {

using namespace qmono;

std::uint64_t env_default_seed() {
  const char* env = std::getenv("QMONO_SEED");
  if (env == nullptr || *env == '\0') return 1;
  char* end = nullptr;
  const unsigned long long value = std::strtoull(env, &end, 10);
  if (end == nullptr || *end != '\0') {
    throw ValidationError("QMONO_SEED must be a non-negative integer");
  }
  return value;
}

std::string fmt12(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

Dims parse_dims(const std::string& csv) {
  if (csv.empty()) {
    throw ValidationError("dims must be a comma-separated list, e.g. 3,3,3");
  }
  Dims dims;
  std::string token;
  std::istringstream in(csv);
  while (std::getline(in, token, ',')) {
    try {
      size_t used = 0;
      const int d = std::stoi(token, &used);
      if (used != token.size()) throw std::invalid_argument(token);
      dims.push_back(d);
    } catch (const std::exception&) {
      throw ValidationError("dims entry '" + token + "' is not an integer");
    }
  }
  detail::require_dims(dims, "dims");
  return dims;
}

int parse_subsystem_label(char ch) {
  if (ch >= '0' && ch <= '9') return ch - '0';
  if (ch >= 'A' && ch <= 'Z') return ch - 'A';
  if (ch >= 'a' && ch <= 'z') return ch - 'a';
  throw ValidationError(std::string("invalid subsystem label '") + ch +
                        "' (use A,B,C or 0,1,2)");
}

BipartiteSplit parse_split(const std::string& text, int subsystems) {
  const auto colon = text.find(':');
  if (colon == std::string::npos ||
      text.find(':', colon + 1) != std::string::npos) {
    throw ValidationError("split must look like A:BC or 0:12");
  }
  auto side = [](const std::string& part) {
    std::vector<int> out;
    for (char ch : part) out.push_back(parse_subsystem_label(ch));
    return out;
  };
  BipartiteSplit split(side(text.substr(0, colon)),
                       side(text.substr(colon + 1)));
  validate_split(split, subsystems);
  return split;
}

int parse_focus(const std::string& text) {
  if (text.size() != 1) {
    throw ValidationError("focus must be a single label: A,B,C or 0,1,2");
  }
  return parse_subsystem_label(text[0]);
}

std::string split_label(const BipartiteSplit& split) {
  auto side = [](const std::vector<int>& subs) {
    std::string out;
    for (int s : subs) out += static_cast<char>('0' + s);
    return out;
  };
  return side(split.left) + ":" + side(split.right);
}

// Input selection shared by the evaluating subcommands.
struct InputOptions {
  std::string state_name;
  std::string file;
  int ghz_dim = 3;
  std::string dims_csv;
  int rank = 1;
};

void add_input_options(CLI::App* cmd, InputOptions& opt) {
  auto* state =
      cmd->add_option("--state", opt.state_name,
                      "catalog state: antisym3, ghz, w, basis_x, basis_y, "
                      "basis_z, haar_pure, random_mixed");
  auto* file = cmd->add_option("--file", opt.file,
                               "path to a state JSON document");
  state->excludes(file);
  file->excludes(state);
  cmd->add_option("--d", opt.ghz_dim, "local dimension for ghz")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--dims", opt.dims_csv,
                  "subsystem dimensions for haar_pure / random_mixed, "
                  "e.g. 3,3");
  cmd->add_option("--rank", opt.rank, "rank for random_mixed")
      ->check(CLI::PositiveNumber);
}

AnyState make_catalog_state(const InputOptions& opt, std::uint64_t seed) {
  const std::string& name = opt.state_name;
  if (name == "antisym3") return antisymmetric_qutrit();
  if (name == "ghz") return ghz(opt.ghz_dim);
  if (name == "w") return w_state();
  if (name == "basis_x") return antisym_basis(AntisymBasis::x);
  if (name == "basis_y") return antisym_basis(AntisymBasis::y);
  if (name == "basis_z") return antisym_basis(AntisymBasis::z);
  if (name == "haar_pure") {
    if (opt.dims_csv.empty()) {
      throw ValidationError("state haar_pure requires --dims");
    }
    return haar_random_pure(parse_dims(opt.dims_csv), seed);
  }
  if (name == "random_mixed") {
    if (opt.dims_csv.empty()) {
      throw ValidationError("state random_mixed requires --dims");
    }
    return random_mixed(parse_dims(opt.dims_csv), opt.rank, seed);
  }
  throw ValidationError(
      "unknown state '" + name +
      "' (expected antisym3, ghz, w, basis_x, basis_y, basis_z, haar_pure, "
      "random_mixed)");
}

AnyState resolve_input(const InputOptions& opt, std::uint64_t seed) {
  if (opt.state_name.empty() == opt.file.empty()) {
    throw ValidationError("exactly one of --state or --file is required");
  }
  if (!opt.file.empty()) return load_state_file(opt.file);
  return make_catalog_state(opt, seed);
}

const PureState& require_pure(const AnyState& state, const char* context) {
  if (const auto* psi = std::get_if<PureState>(&state)) return *psi;
  throw ValidationError(std::string(context) + " requires a pure state");
}

DensityMatrix as_density(const AnyState& state) {
  if (const auto* psi = std::get_if<PureState>(&state)) {
    return density_from_pure(*psi);
  }
  return std::get<DensityMatrix>(state);
}

const Dims& state_dims(const AnyState& state) {
  return std::visit([](const auto& s) -> const Dims& { return s.dims; },
                    state);
}

void emit(const std::string& content, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    write_text_file(out_path, content);
  }
}

std::string render_result_text(const ConcurrenceResult& r) {
  std::string out;
  out += "value_sq   " + fmt12(round12(r.value_sq)) + "\n";
  out += "certainty  " + std::string(certainty_name(r.certainty)) + "\n";
  out += "method     " + r.method + "\n";
  if (!r.meta.empty()) {
    out += "optimizer  iterations=" + std::to_string(r.meta.iterations) +
           " restarts=" + std::to_string(r.meta.restarts) +
           " seed=" + std::to_string(r.meta.seed) + "\n";
  }
  return out;
}

std::string render_result(const ConcurrenceResult& r, const Dims& dims,
                          const BipartiteSplit& split,
                          const std::string& format) {
  if (format == "json") {
    Json doc{{"dims", dims},
             {"split", split_label(split)},
             {"result", result_to_json(r)}};
    return doc.dump(2) + "\n";
  }
  if (format == "csv") {
    return "value_sq,certainty,method\n" + fmt12(round12(r.value_sq)) + "," +
           certainty_name(r.certainty) + "," + r.method + "\n";
  }
  return render_result_text(r);
}

std::string render_reports(const std::vector<MonogamyReport>& reports,
                           const std::string& format) {
  if (format == "json") {
    Json arr = Json::array();
    for (const MonogamyReport& rep : reports) {
      arr.push_back(report_to_json(rep));
    }
    return Json{{"reports", std::move(arr)}}.dump(2) + "\n";
  }
  if (format == "csv") {
    std::string out =
        "focus,c2_focus_b,c2_focus_c,c2_focus_rest,tangle,margin,verdict\n";
    for (const MonogamyReport& rep : reports) {
      out += std::to_string(rep.focus) + "," +
             fmt12(round12(rep.c2_focus_b.value_sq)) + "," +
             fmt12(round12(rep.c2_focus_c.value_sq)) + "," +
             fmt12(round12(rep.c2_focus_rest.value_sq)) + "," +
             fmt12(round12(rep.tangle)) + "," + fmt12(round12(rep.margin)) +
             "," + verdict_name(rep.verdict) + "\n";
    }
    return out;
  }
  std::string out;
  for (const MonogamyReport& rep : reports) {
    out += "focus " + std::to_string(rep.focus) + " (" +
           static_cast<char>('A' + rep.focus) + std::string(")\n");
    auto line = [&](const char* label, const ConcurrenceResult& r) {
      out += std::string("  ") + label + "  " + fmt12(round12(r.value_sq)) +
             "  [" + certainty_name(r.certainty) + ", " + r.method + "]\n";
    };
    line("c2_focus_b   ", rep.c2_focus_b);
    line("c2_focus_c   ", rep.c2_focus_c);
    line("c2_focus_rest", rep.c2_focus_rest);
    out += "  tangle         " + fmt12(round12(rep.tangle)) + "\n";
    out += "  margin         " + fmt12(round12(rep.margin)) + "\n";
    out += "  verdict        " + std::string(verdict_name(rep.verdict)) +
           "\n";
  }
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    CLI::App app{
        "entanglement measures, bounds, and monogamy audits for qudits"};
    app.require_subcommand(1);
    const std::uint64_t default_seed = env_default_seed();

    auto add_format = [](CLI::App* cmd, std::string& format) {
      cmd->add_option("--format", format, "output format")
          ->check(CLI::IsMember({"json", "text", "csv"}))
          ->capture_default_str();
    };

    // eval ------------------------------------------------------------
    auto* eval_cmd =
        app.add_subcommand("eval", "exact pure-state squared concurrence");
    InputOptions eval_in;
    std::string eval_split;
    std::string eval_format = "json";
    std::string eval_out;
    std::uint64_t eval_seed = default_seed;
    add_input_options(eval_cmd, eval_in);
    eval_cmd->add_option("--split", eval_split, "cut, e.g. A:BC or 0:12")
        ->required();
    eval_cmd->add_option("--seed", eval_seed, "seed for random catalog states");
    add_format(eval_cmd, eval_format);
    eval_cmd->add_option("--out", eval_out, "write output to file");
    eval_cmd->callback([&] {
      const AnyState input = resolve_input(eval_in, eval_seed);
      const PureState& psi = require_pure(input, "eval");
      const BipartiteSplit split = parse_split(eval_split, psi.subsystems());
      const ConcurrenceResult r = pure_concurrence_sq(psi, split);
      emit(render_result(r, psi.dims, split, eval_format), eval_out);
    });

    // bound -----------------------------------------------------------
    auto* bound_cmd = app.add_subcommand(
        "bound", "squared-concurrence lower bound for a mixed state");
    InputOptions bound_in;
    std::string bound_split;
    std::string bound_format = "json";
    std::string bound_out;
    std::uint64_t bound_seed = default_seed;
    int bound_restarts = 8;
    bool bound_analytic = false;
    add_input_options(bound_cmd, bound_in);
    bound_cmd->add_option("--split", bound_split, "cut, e.g. A:BC or 0:12")
        ->required();
    bound_cmd->add_option("--restarts", bound_restarts,
                          "phase-vector optimizer restarts")
        ->check(CLI::PositiveNumber);
    bound_cmd->add_option("--seed", bound_seed, "optimizer seed");
    bound_cmd->add_flag("--analytic", bound_analytic,
                        "use the optimization-free 2xM bound (one block must "
                        "have dimension 2)");
    add_format(bound_cmd, bound_format);
    bound_cmd->add_option("--out", bound_out, "write output to file");
    bound_cmd->callback([&] {
      const AnyState input = resolve_input(bound_in, bound_seed);
      const DensityMatrix rho = as_density(input);
      const BipartiteSplit split = parse_split(bound_split, rho.subsystems());
      const ConcurrenceResult r =
          bound_analytic ? lower_bound_2xM_sq(rho, split)
                         : lower_bound_sq(rho, split, bound_restarts,
                                          bound_seed);
      emit(render_result(r, rho.dims, split, bound_format), bound_out);
    });

    // roof ------------------------------------------------------------
    auto* roof_cmd = app.add_subcommand(
        "roof", "convex-roof upper estimate for a mixed state");
    InputOptions roof_in;
    std::string roof_split;
    std::string roof_format = "json";
    std::string roof_out;
    RoofConfig roof_cfg;
    roof_cfg.seed = default_seed;
    add_input_options(roof_cmd, roof_in);
    roof_cmd->add_option("--split", roof_split, "cut, e.g. A:BC or 0:12")
        ->required();
    roof_cmd->add_option("--restarts", roof_cfg.restarts, "optimizer restarts")
        ->check(CLI::PositiveNumber);
    roof_cmd->add_option("--max-iters", roof_cfg.max_iters,
                         "optimizer iterations per restart")
        ->check(CLI::NonNegativeNumber);
    roof_cmd->add_option("--ensemble-size", roof_cfg.ensemble_size,
                         "decomposition size (0: twice the rank)")
        ->check(CLI::NonNegativeNumber);
    roof_cmd->add_option("--seed", roof_cfg.seed, "optimizer seed");
    add_format(roof_cmd, roof_format);
    roof_cmd->add_option("--out", roof_out, "write output to file");
    roof_cmd->callback([&] {
      const AnyState input = resolve_input(roof_in, roof_cfg.seed);
      const DensityMatrix rho = as_density(input);
      const BipartiteSplit split = parse_split(roof_split, rho.subsystems());
      const ConcurrenceResult r = convex_roof_sq(rho, split, roof_cfg);
      emit(render_result(r, rho.dims, split, roof_format), roof_out);
    });

    // audit -----------------------------------------------------------
    auto* audit_cmd = app.add_subcommand(
        "audit", "monogamy report for a tripartite pure state");
    InputOptions audit_in;
    std::string audit_focus;
    bool audit_all = false;
    std::string audit_format = "json";
    std::string audit_out;
    RoofConfig audit_cfg;
    audit_cfg.seed = default_seed;
    add_input_options(audit_cmd, audit_in);
    auto* focus_opt = audit_cmd->add_option("--focus", audit_focus,
                                            "focus subsystem: A,B,C or 0,1,2");
    auto* all_opt = audit_cmd->add_flag("--all-foci", audit_all,
                                        "report every focus");
    focus_opt->excludes(all_opt);
    all_opt->excludes(focus_opt);
    audit_cmd->add_option("--restarts", audit_cfg.restarts,
                          "optimizer restarts")
        ->check(CLI::PositiveNumber);
    audit_cmd->add_option("--max-iters", audit_cfg.max_iters,
                          "optimizer iterations per restart")
        ->check(CLI::NonNegativeNumber);
    audit_cmd->add_option("--ensemble-size", audit_cfg.ensemble_size,
                          "decomposition size (0: twice the rank)")
        ->check(CLI::NonNegativeNumber);
    audit_cmd->add_option("--seed", audit_cfg.seed, "optimizer seed");
    add_format(audit_cmd, audit_format);
    audit_cmd->add_option("--out", audit_out, "write output to file");
    audit_cmd->callback([&] {
      const AnyState input = resolve_input(audit_in, audit_cfg.seed);
      const PureState& psi = require_pure(input, "audit");
      if (!audit_all && audit_focus.empty()) {
        throw ValidationError("audit requires --focus or --all-foci");
      }
      std::vector<MonogamyReport> reports;
      if (audit_all) {
        reports = audit_all_foci(psi, audit_cfg);
      } else {
        reports.push_back(audit(psi, parse_focus(audit_focus), audit_cfg));
      }
      emit(render_reports(reports, audit_format), audit_out);
    });

    // state -----------------------------------------------------------
    auto* state_cmd =
        app.add_subcommand("state", "emit a catalog state as JSON");
    InputOptions state_in;
    std::string state_out;
    std::uint64_t state_seed = default_seed;
    state_cmd->add_option("--name", state_in.state_name,
                          "catalog state: antisym3, ghz, w, basis_x, basis_y, "
                          "basis_z, haar_pure, random_mixed")
        ->required();
    state_cmd->add_option("--d", state_in.ghz_dim, "local dimension for ghz")
        ->check(CLI::PositiveNumber);
    state_cmd->add_option("--dims", state_in.dims_csv,
                          "subsystem dimensions for haar_pure / random_mixed");
    state_cmd->add_option("--rank", state_in.rank, "rank for random_mixed")
        ->check(CLI::PositiveNumber);
    state_cmd->add_option("--seed", state_seed, "seed for random states");
    state_cmd->add_option("--out", state_out, "write output to file");
    state_cmd->callback([&] {
      const AnyState state = make_catalog_state(state_in, state_seed);
      emit(state_to_json(state).dump(2) + "\n", state_out);
    });

    // scan ------------------------------------------------------------
    auto* scan_cmd = app.add_subcommand(
        "scan", "randomized search for monogamy-violation candidates");
    ScanConfig scan_cfg;
    std::string scan_dims_csv;
    std::string scan_inject;
    std::string scan_format = "json";
    std::string scan_out;
    std::string scan_summary_out;
    scan_cfg.seed = default_seed;
    scan_cmd->add_option("--dims", scan_dims_csv,
                         "three subsystem dimensions, e.g. 3,3,3")
        ->required();
    scan_cmd->add_option("--samples", scan_cfg.samples, "number of samples")
        ->check(CLI::PositiveNumber);
    scan_cmd->add_option("--seed", scan_cfg.seed, "scan seed");
    scan_cmd->add_option("--margin-threshold", scan_cfg.margin_threshold,
                         "candidate flag threshold");
    scan_cmd->add_option("--restarts", scan_cfg.roof_cfg.restarts,
                         "optimizer restarts per pairwise estimate")
        ->check(CLI::PositiveNumber);
    scan_cmd->add_option("--max-iters", scan_cfg.roof_cfg.max_iters,
                         "optimizer iterations per restart")
        ->check(CLI::NonNegativeNumber);
    scan_cmd->add_option("--ensemble-size", scan_cfg.roof_cfg.ensemble_size,
                         "decomposition size (0: twice the rank)")
        ->check(CLI::NonNegativeNumber);
    scan_cmd->add_option("--inject", scan_inject,
                         "catalog pure state injected as sample 0");
    add_format(scan_cmd, scan_format);
    scan_cmd->add_option("--out", scan_out,
                         "write JSON-lines records to file");
    scan_cmd->add_option("--summary-out", scan_summary_out,
                         "write the summary CSV to file");
    scan_cmd->callback([&] {
      scan_cfg.dims = parse_dims(scan_dims_csv);
      std::optional<PureState> injected;
      if (!scan_inject.empty()) {
        InputOptions opt;
        opt.state_name = scan_inject;
        opt.dims_csv = scan_dims_csv;
        injected = require_pure(make_catalog_state(opt, scan_cfg.seed),
                                "scan --inject");
      }
      const std::vector<ScanRecord> records = scan(scan_cfg, injected);
      const std::string summary = scan_summary_csv(scan_cfg, records);
      std::string body;
      if (scan_format == "json") {
        for (const ScanRecord& rec : records) {
          body += record_to_json(rec).dump() + "\n";
        }
      } else if (scan_format == "csv") {
        body = summary;
      } else {
        int candidates = 0;
        for (const ScanRecord& rec : records) {
          if (rec.candidate) ++candidates;
        }
        body = "scan dims " + dims_label(scan_cfg.dims) + " samples " +
               std::to_string(scan_cfg.samples) + " candidates " +
               std::to_string(candidates) + "\n";
        const size_t shown = std::min<size_t>(records.size(), 5);
        for (size_t i = 0; i < shown; ++i) {
          body += "  offset " + std::to_string(records[i].seed_offset) +
                  "  best_margin " + fmt12(round12(records[i].best_margin)) +
                  (records[i].candidate ? "  CANDIDATE" : "") + "\n";
        }
      }
      emit(body, scan_out);
      if (!scan_summary_out.empty()) {
        write_text_file(scan_summary_out, summary);
      }
    });

    try {
      app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
      const int code = app.exit(e);
      return code == 0 ? 0 : 2;
    }
    return 0;
  } catch (const qmono::ValidationError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const qmono::NumericError& e) {
    std::cerr << "numeric error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 3;
  }
}
