// lapsep: separability and entanglement of graph density matrices.
//
//   lapsep analyze --file g.txt --json
//   lapsep analyze --family star --rows 2 --cols 2
//   lapsep decompose --family complete --rows 2 --cols 2
//   lapsep enumerate --rows 2 --cols 3 --workers 8 --out sweep.csv
//   lapsep counterexample --json
//   lapsep table4 --csv
//
// Exit codes: 0 success, 2 input error, 3 internal assertion failure.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <thread>

#include "CLI11.hpp"
#include "json.hpp"
#include "lapsep/criteria.hpp"
#include "lapsep/decomposer.hpp"
#include "lapsep/errors.hpp"
#include "lapsep/harness.hpp"
#include "lapsep/measures.hpp"

namespace {

constexpr int kInputError = 2;
constexpr int kInternalError = 3;

struct Selector {
  std::string file;
  std::string family;
  int rows = 0;
  int cols = 0;
};

struct Common {
  std::optional<double> tol;
  std::string log_base = "2";
};

void add_selector(CLI::App* cmd, Selector& sel) {
  auto* file = cmd->add_option("--file", sel.file, "Edge-list file");
  auto* fam = cmd->add_option("--family", sel.family,
                              "complete | star | crisscross | tallymark(s) | nearest_point_sample");
  file->excludes(fam);
  cmd->add_option("--rows", sel.rows, "Rows p (factor A dimension)");
  cmd->add_option("--cols", sel.cols, "Columns q (factor B dimension)");
}

void add_common(CLI::App* cmd, Common& common) {
  cmd->add_option("--tol", common.tol, "Floating tolerance (default 1e-9, or LAPSEP_TOL)");
  cmd->add_option("--log-base", common.log_base, "Entropy base for E_f: 2 or e")->check(CLI::IsMember({"2", "e"}));
}

double resolve_tol(const Common& common) {
  if (common.tol) return *common.tol;
  if (const char* env = std::getenv("LAPSEP_TOL")) {
    try {
      std::size_t used = 0;
      const double value = std::stod(env, &used);
      if (used == std::string(env).size() && value > 0) return value;
    } catch (const std::exception&) {
    }
    throw lapsep::Error(lapsep::ErrorCode::ParseError, std::string("LAPSEP_TOL='") + env + "' is not a positive number");
  }
  return lapsep::kDefaultTolerance;
}

lapsep::LogBase resolve_base(const Common& common) {
  return common.log_base == "e" ? lapsep::LogBase::Natural : lapsep::LogBase::Two;
}

lapsep::ArrayedGraph select_graph(const Selector& sel) {
  if (!sel.file.empty()) {
    auto parsed = lapsep::parse_graph_file(sel.file);
    for (const auto& w : parsed.warnings) std::cerr << "lapsep: warning: " << w << "\n";
    return std::move(parsed.graph);
  }
  if (sel.family.empty())
    throw lapsep::Error(lapsep::ErrorCode::ParseError, "pass --file PATH or --family NAME --rows P --cols Q");
  if (sel.rows < 1 || sel.cols < 1)
    throw lapsep::Error(lapsep::ErrorCode::ParseError, "--family needs positive --rows and --cols");
  return lapsep::family(sel.family, sel.rows, sel.cols);
}

void print_text(const lapsep::GraphRecord& r) {
  const auto& c = r.criteria;
  const auto& m = r.measures;
  std::cout << "graph " << r.id << " on " << r.shape.p << "x" << r.shape.q << " array, " << r.edges.size()
            << " edges\n";
  std::cout << "  degree-criterion      " << (c.degree_criterion ? "holds" : "fails") << "\n";
  std::cout << "  PPT                   " << (c.ppt.holds ? "holds" : "fails") << " (min eigenvalue "
            << c.ppt.min_eigenvalue << (c.ppt.exact ? ", exact check" : "") << ")\n";
  std::cout << "  realignment norm      " << c.realignment.trace_norm
            << (c.realignment.flags_entangled ? " (entangled)" : "") << "\n";
  std::cout << "  verdict               " << lapsep::verdict_name(c.verdict) << "\n";
  if (m.concurrence_exact) std::cout << "  concurrence           " << *m.concurrence_exact << "\n";
  std::cout << "  concurrence bound     " << lapsep::to_string(m.concurrence_upper_bound) << " (n1=" << m.matched
            << ", n2=" << m.unmatched << ")\n";
  if (m.entanglement_of_formation)
    std::cout << "  E_f (log " << lapsep::log_base_name(m.entropy_base) << ")           "
              << *m.entanglement_of_formation << "\n";
  std::cout << "  log negativity        " << m.logarithmic_negativity << "\n";
  std::cout << "  degree discrepancy    " << m.degree_discrepancy_norm << "\n";
  if (r.class_id) std::cout << "  class id              " << *r.class_id << "\n";
}

int run_analyze(const Selector& sel, const Common& common, bool as_json, bool as_csv) {
  const auto g = select_graph(sel);
  const auto record = lapsep::analyze(g, {resolve_tol(common), resolve_base(common)});
  if (as_json) std::cout << lapsep::to_json(record, 2) << "\n";
  else if (as_csv) std::cout << lapsep::csv_header() << "\n" << lapsep::to_csv_row(record) << "\n";
  else print_text(record);
  return 0;
}

int run_decompose(const Selector& sel, const Common& common, bool matched_only) {
  const auto g = select_graph(sel);
  const double tol = resolve_tol(common);
  lapsep::SeparableDecomposition dec;
  if (matched_only) {
    dec = lapsep::decompose_matched_subgraph(g, tol);
  } else if (g.p() == 1 || g.q() == 1) {
    dec = lapsep::decompose_matched_subgraph(g, tol);
  } else if (g.p() == 2 || g.q() == 2) {
    dec = lapsep::decompose_2xq(g, tol);
  } else {
    const auto report = lapsep::verdict(g, tol);
    if (!report.decomposition)
      throw lapsep::Error(lapsep::ErrorCode::NotTwoByQ,
                          "no constructive decomposition for this graph (verdict " +
                              std::string(lapsep::verdict_name(report.verdict)) +
                              "); --matched decomposes the matched subgraph");
    dec = *report.decomposition;
  }
  std::cout << lapsep::to_json(dec, 2) << "\n";
  return 0;
}

int run_enumerate(int rows, int cols, const std::string& out_path, unsigned workers, bool allow_large,
                  bool as_json, const Common& common) {
  const lapsep::ArrayShape shape{rows, cols};
  if (rows < 1 || cols < 1) throw lapsep::Error(lapsep::ErrorCode::ParseError, "--rows and --cols must be positive");
  const auto records = lapsep::analyze_all(shape, {resolve_tol(common), resolve_base(common)}, workers, allow_large);

  std::ofstream file;
  if (!out_path.empty()) {
    file.open(out_path, std::ios::binary);
    if (!file) throw lapsep::Error(lapsep::ErrorCode::ParseError, "cannot write " + out_path);
  }
  std::ostream& out = out_path.empty() ? std::cout : file;
  if (!as_json) out << lapsep::csv_header() << "\n";
  std::size_t entangled = 0, certified = 0;
  for (const auto& r : records) {
    out << (as_json ? lapsep::to_json(r) : lapsep::to_csv_row(r)) << "\n";
    entangled += r.criteria.verdict != lapsep::Verdict::SeparableCertified;
    certified += r.criteria.verdict == lapsep::Verdict::SeparableCertified;
  }
  std::cerr << "lapsep: " << records.size() << " graphs, " << certified << " separable, " << entangled
            << " entangled or undecided\n";
  return 0;
}

int run_counterexample(bool as_json, const Common& common) {
  const double tol = resolve_tol(common);
  const auto g = lapsep::counterexample_graph();
  const auto record = lapsep::analyze(g, {tol, resolve_base(common)});
  const auto pt = lapsep::partial_transpose_matrix(lapsep::density_matrix(g), g.shape());
  const auto cert = lapsep::exact_psd_check(pt);
  const double closed_form = (4.0 * std::sqrt(2.0) + 2.0 * std::sqrt(3.0)) / 8.0;
  if (as_json) {
    auto j = nlohmann::json::parse(lapsep::to_json(record));
    j["exact_ppt_certificate"] = cert.psd ? "PSD" : "NOT_PSD";
    j["realignment_closed_form"] = closed_form;
    std::cout << j.dump(2) << "\n";
  } else {
    print_text(record);
    std::cout << "  exact PPT certificate " << (cert.psd ? "PSD" : "NOT_PSD") << "\n";
    std::cout << "  closed form norm      " << closed_form << "\n";
  }
  const bool ok = record.criteria.degree_criterion && cert.psd &&
                  record.criteria.verdict == lapsep::Verdict::EntangledPptRealignment;
  if (!ok) {
    std::cerr << "lapsep: error[AssertionFailure]: counterexample is not certified as bound entangled\n";
    return kInternalError;
  }
  return 0;
}

int run_table4(bool as_csv, bool as_json, const Common& common) {
  const auto report = lapsep::table4_report(resolve_tol(common));
  if (as_csv) {
    std::cout << lapsep::to_csv(report);
  } else if (as_json) {
    std::cout << lapsep::to_json(report, 2) << "\n";
  } else {
    std::cout << "isomorphism classes of non-empty graphs on 4 vertices: " << report.classes.size() << "\n";
    std::cout << "class id  edges  labelings  entangled  concurrence\n";
    for (const auto& c : report.classes) {
      std::printf("%-8s  %5zu  %9zu  %9zu  %s\n", c.class_id.c_str(), c.edges, c.labelings, c.entangled_labelings,
                  c.concurrence ? std::to_string(*c.concurrence).c_str() : "-");
    }
    std::fflush(stdout);
    for (const auto& a : report.assertions)
      std::cout << (a.passed ? "[PASS] " : "[FAIL] ") << a.name << ": " << a.detail << "\n";
  }
  if (!report.all_passed()) {
    for (const auto& a : report.assertions)
      if (!a.passed) std::cerr << "lapsep: error[AssertionFailure]: " << a.name << ": " << a.detail << "\n";
    return kInternalError;
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Separability criteria, decompositions and entanglement measures for graph density matrices"};
  app.require_subcommand(1);

  Selector sel;
  Common common;
  bool as_json = false, as_csv = false, matched_only = false, allow_large = false;
  std::string out_path;
  unsigned workers = std::max(1U, std::thread::hardware_concurrency());

  auto* analyze = app.add_subcommand("analyze", "Criteria and measures for one graph");
  add_selector(analyze, sel);
  add_common(analyze, common);
  auto* json_flag = analyze->add_flag("--json", as_json, "Emit a JSON record");
  analyze->add_flag("--csv", as_csv, "Emit a CSV header and row")->excludes(json_flag);

  auto* decompose = app.add_subcommand("decompose", "Explicit separable decomposition as JSON");
  add_selector(decompose, sel);
  add_common(decompose, common);
  decompose->add_flag("--matched", matched_only, "Decompose the matched-edge subgraph instead");

  int rows = 0, cols = 0;
  auto* enumerate = app.add_subcommand("enumerate", "Analyse every labeled graph on a p x q array");
  enumerate->add_option("--rows", rows, "Rows p")->required();
  enumerate->add_option("--cols", cols, "Columns q")->required();
  enumerate->add_option("--out", out_path, "Output file (default stdout)");
  enumerate->add_option("--workers", workers, "Worker threads")->check(CLI::PositiveNumber);
  enumerate->add_flag("--allow-large", allow_large, "Permit arrays beyond 2x3 (up to 28 vertex pairs)");
  enumerate->add_flag("--json", as_json, "Emit JSON lines instead of CSV");
  add_common(enumerate, common);

  auto* counterexample = app.add_subcommand("counterexample", "Certify the 3x3 bound-entangled graph");
  counterexample->add_flag("--json", as_json, "Emit JSON");
  add_common(counterexample, common);

  auto* table4 = app.add_subcommand("table4", "Reproduce the 4-vertex concurrence table");
  auto* csv_flag = table4->add_flag("--csv", as_csv, "Emit CSV");
  table4->add_flag("--json", as_json, "Emit JSON")->excludes(csv_flag);
  add_common(table4, common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputError;
  }

  try {
    if (*analyze) return run_analyze(sel, common, as_json, as_csv);
    if (*decompose) return run_decompose(sel, common, matched_only);
    if (*enumerate) return run_enumerate(rows, cols, out_path, workers, allow_large, as_json, common);
    if (*counterexample) return run_counterexample(as_json, common);
    if (*table4) return run_table4(as_csv, as_json, common);
  } catch (const lapsep::Error& e) {
    std::cerr << "lapsep: error[" << lapsep::error_code_name(e.code()) << "]: " << e.what() << "\n";
    return e.code() == lapsep::ErrorCode::AssertionFailure ? kInternalError : kInputError;
  } catch (const std::exception& e) {
    std::cerr << "lapsep: error[AssertionFailure]: " << e.what() << "\n";
    return kInternalError;
  }
  return kInputError;
}
