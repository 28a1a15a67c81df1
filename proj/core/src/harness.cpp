#include "lapsep/harness.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "json.hpp"
#include "lapsep/errors.hpp"
#include "lapsep/parallel.hpp"

namespace lapsep {

using nlohmann::json;

// ---- input ------------------------------------------------------------------

namespace {

std::string strip_comment(std::string_view line) {
  const auto hash = line.find('#');
  return std::string(line.substr(0, hash));
}

bool blank(const std::string& s) {
  return std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); });
}

std::vector<long long> parse_integers(const std::string& s, std::size_t line_no) {
  std::istringstream in(s);
  std::vector<long long> out;
  std::string token;
  while (in >> token) {
    std::size_t used = 0;
    long long value = 0;
    try {
      value = std::stoll(token, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != token.size())
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": '" + token + "' is not an integer");
    out.push_back(value);
  }
  return out;
}

}  // namespace

ParsedGraph parse_graph_text(std::string_view text) {
  std::optional<ArrayShape> shape;
  std::vector<Edge> edges;
  std::vector<std::string> warnings;
  std::set<std::pair<std::size_t, std::size_t>> seen;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = std::min(text.find('\n', pos), text.size());
    const std::string line = strip_comment(text.substr(pos, end - pos));
    ++line_no;
    pos = end + 1;
    if (blank(line)) continue;

    const auto values = parse_integers(line, line_no);
    if (!shape) {
      if (values.size() != 2)
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 'p q'");
      if (values[0] < 1 || values[1] < 1 || values[0] > 64 || values[1] > 64)
        throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": array dimensions must be in 1..64");
      shape = ArrayShape{static_cast<int>(values[0]), static_cast<int>(values[1])};
      continue;
    }
    if (values.size() != 4)
      throw Error(ErrorCode::ParseError, "line " + std::to_string(line_no) + ": expected 'k1 l1 k2 l2'");
    auto narrow = [](long long v) {
      return static_cast<int>(std::clamp<long long>(v, -1, 1 << 20));
    };
    Edge e;
    try {
      e = make_edge(*shape, {narrow(values[0]), narrow(values[1])}, {narrow(values[2]), narrow(values[3])});
    } catch (const Error& err) {
      throw Error(err.code(), "line " + std::to_string(line_no) + ": " + err.what());
    }
    const auto key = std::make_pair(vertex_index(*shape, e.a), vertex_index(*shape, e.b));
    if (!seen.insert(key).second) {
      warnings.push_back("line " + std::to_string(line_no) + ": duplicate edge " + to_string(e) + " ignored");
      continue;
    }
    edges.push_back(e);
  }
  if (!shape) throw Error(ErrorCode::ParseError, "missing 'p q' header line");
  if (edges.empty()) throw Error(ErrorCode::EmptyEdgeSet, "file lists no edges");
  return {ArrayedGraph(*shape, edges), std::move(warnings)};
}

ParsedGraph parse_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::ParseError, "cannot open " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_graph_text(buffer.str());
}

ArrayedGraph counterexample_graph() {
  return build_graph(3, 3,
                     {{{1, 1}, {2, 3}}, {{1, 2}, {3, 1}}, {{1, 3}, {3, 2}}, {{2, 1}, {3, 3}}});
}

namespace {

void require(bool ok, const std::string& what) {
  if (!ok) throw Error(ErrorCode::OutOfBounds, what);
}

ArrayedGraph tally_mark(int p, int q, int s) {
  require(p >= 2, "tally-mark needs at least two rows");
  require(s >= 2 && s <= q, "tally-mark size must lie in 2..q");
  std::vector<Edge> edges;
  for (int t = 1; t <= s; ++t) edges.push_back({{1, t}, {2, t % s + 1}});
  return ArrayedGraph({p, q}, edges);
}

}  // namespace

ArrayedGraph family(std::string_view raw, int p, int q) {
  require(p >= 1 && q >= 1, "array dimensions must be positive");
  std::string name(raw);
  std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
  const ArrayShape shape{p, q};
  const std::size_t n = shape.dim();

  if (name == "complete") {
    require(n >= 2, "complete graph needs two vertices");
    std::vector<Edge> edges;
    for (std::size_t t = 0; t < pair_count(shape); ++t) edges.push_back(pair_at(shape, t));
    return ArrayedGraph(shape, edges);
  }
  if (name == "star") {
    require(n >= 2, "star needs two vertices");
    std::vector<Edge> edges;
    for (std::size_t v = 2; v <= n; ++v) edges.push_back({{1, 1}, vertex_at(shape, v)});
    return ArrayedGraph(shape, edges);
  }
  if (name == "crisscross" || name == "criss-cross") {
    require(p >= 2 && q >= 2, "criss-cross needs a 2x2 sub-array");
    return build_graph(p, q, {{{1, 1}, {2, 2}}, {{1, 2}, {2, 1}}});
  }
  if (name.starts_with("tallymark") || name.starts_with("tally-mark")) {
    std::string rest = name.substr(name.starts_with("tallymark") ? 9 : 10);
    if (rest.empty()) return tally_mark(p, q, q);
    if (rest.front() == '(' && rest.back() == ')') rest = rest.substr(1, rest.size() - 2);
    else if (rest.front() == ':') rest = rest.substr(1);
    if (rest.empty() || !std::all_of(rest.begin(), rest.end(), [](unsigned char c) { return std::isdigit(c); }) ||
        rest.size() > 6)
      throw Error(ErrorCode::UnknownFamily, "cannot read tally-mark size from '" + std::string(raw) + "'");
    return tally_mark(p, q, std::stoi(rest));
  }
  if (name == "nearest_point_sample" || name == "nearest-point" || name == "nearest_point") {
    // Every lattice edge of length 1 or sqrt(2).
    std::vector<Edge> edges;
    for (std::size_t t = 0; t < pair_count(shape); ++t) {
      const Edge e = pair_at(shape, t);
      if (std::abs(e.a.row - e.b.row) <= 1 && std::abs(e.a.col - e.b.col) <= 1) edges.push_back(e);
    }
    require(!edges.empty(), "nearest point graph needs two vertices");
    return ArrayedGraph(shape, edges);
  }
  throw Error(ErrorCode::UnknownFamily, "unknown family '" + std::string(raw) + "'");
}

// ---- enumeration and isomorphism classes -----------------------------------

std::uint64_t labeled_graph_count(ArrayShape shape, bool allow_large) {
  const std::size_t pairs = pair_count(shape);
  const std::size_t cap = allow_large ? kMaxEnumerationPairs : kDefaultEnumerationPairs;
  if (pairs > cap)
    throw Error(ErrorCode::TooLarge, std::to_string(pairs) + " vertex pairs exceed the enumeration cap of " +
                                         std::to_string(cap) + (allow_large ? "" : " (pass the override to raise it)"));
  return (std::uint64_t{1} << pairs) - 1;
}

std::uint64_t canonical_form(const ArrayedGraph& g, std::size_t max_vertices) {
  const std::size_t n = g.vertex_count();
  if (n > max_vertices)
    throw Error(ErrorCode::TooLarge, "canonical form by brute force is limited to " + std::to_string(max_vertices) +
                                         " vertices");
  // rank[u][v] for 0-based u != v.
  std::vector<std::vector<std::size_t>> rank(n, std::vector<std::size_t>(n, 0));
  for (std::size_t u = 0; u < n; ++u)
    for (std::size_t v = u + 1; v < n; ++v) {
      const std::size_t r = u * n - u * (u + 1) / 2 + (v - u - 1);
      rank[u][v] = rank[v][u] = r;
    }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (const auto& e : g.edges()) edges.emplace_back(vertex_index(g.shape(), e.a) - 1, vertex_index(g.shape(), e.b) - 1);

  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::uint64_t best = ~std::uint64_t{0};
  do {
    std::uint64_t mask = 0;
    for (const auto& [u, v] : edges) mask |= std::uint64_t{1} << rank[perm[u]][perm[v]];
    best = std::min(best, mask);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::string canonical_id(const ArrayedGraph& g, std::size_t max_vertices) {
  return mask_to_hex(g.shape(), canonical_form(g, max_vertices));
}

// ---- per-graph records -----------------------------------------------------

GraphRecord analyze(const ArrayedGraph& g, const AnalysisOptions& options) {
  GraphRecord record;
  record.id = graph_id_hex(g);
  record.shape = g.shape();
  record.edges = g.edges();
  record.criteria = verdict(g, options.tol);
  record.measures = measure_report(g, options.tol, options.entropy_base);
  if (g.vertex_count() <= options.max_class_vertices) record.class_id = canonical_id(g, options.max_class_vertices);
  record.tol = options.tol;
  return record;
}

std::vector<GraphRecord> analyze_all(ArrayShape shape, const AnalysisOptions& options, unsigned workers,
                                     bool allow_large) {
  const std::uint64_t count = labeled_graph_count(shape, allow_large);
  return parallel_map(count, workers,
                      [&](std::uint64_t i) { return analyze(graph_from_mask(shape, i + 1), options); });
}

namespace {

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json edges_json(const std::vector<Edge>& edges) {
  json out = json::array();
  for (const auto& e : edges) out.push_back({e.a.row, e.a.col, e.b.row, e.b.col});
  return out;
}

json vector_json(const std::vector<Complex>& v) {
  json out = json::array();
  for (const auto& z : v) out.push_back({z.real(), z.imag()});
  return out;
}

json decomposition_json(const SeparableDecomposition& dec) {
  json terms = json::array();
  for (const auto& t : dec.terms) {
    char weight[64];
    std::snprintf(weight, sizeof weight, "%.17g", t.weight.get_d());
    terms.push_back({{"weight", weight},
                     {"weight_exact", to_string(t.weight)},
                     {"a", vector_json(t.a.materialize())},
                     {"b", vector_json(t.b.materialize())},
                     {"provenance", t.provenance.to_string()}});
  }
  return {{"p", dec.shape.p},
          {"q", dec.shape.q},
          {"residual", dec.reconstruction_residual},
          {"weight_sum", to_string(dec.weight_sum())},
          {"terms", std::move(terms)}};
}

json record_json(const GraphRecord& r) {
  const auto& c = r.criteria;
  const auto& m = r.measures;
  json out = {
      {"id", r.id},
      {"p", r.shape.p},
      {"q", r.shape.q},
      {"edges", edges_json(r.edges)},
      {"degree_criterion", c.degree_criterion},
      {"ppt_min_eig", c.ppt.min_eigenvalue},
      {"ppt_holds", c.ppt.holds},
      {"ppt_exact", c.ppt.exact},
      {"realignment_trace_norm", c.realignment.trace_norm},
      {"realignment_flags_entangled", c.realignment.flags_entangled},
      {"line_sum_symmetric_blocks", c.line_sum.blocks_line_sum_symmetric},
      {"verdict", std::string(verdict_name(c.verdict))},
      {"concurrence", optional_number(m.concurrence_exact)},
      {"concurrence_bound", to_string(m.concurrence_upper_bound)},
      {"ef", optional_number(m.entanglement_of_formation)},
      {"ef_log_base", std::string(log_base_name(m.entropy_base))},
      {"ln", m.logarithmic_negativity},
      {"en", m.degree_discrepancy_norm},
      {"n1", m.matched},
      {"n2", m.unmatched},
      {"maximally_entangled", m.maximally_entangled ? json(*m.maximally_entangled) : json(nullptr)},
      {"class_id", r.class_id ? json(*r.class_id) : json(nullptr)},
      {"tol", r.tol},
  };
  return out;
}

std::string fixed12(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string fixed12(const std::optional<double>& v) { return v ? fixed12(*v) : std::string(); }

}  // namespace

std::string to_json(const GraphRecord& record, int indent) { return record_json(record).dump(indent); }

std::string to_json(const SeparableDecomposition& dec, int indent) { return decomposition_json(dec).dump(indent); }

std::string csv_header() {
  return "id,p,q,edges,degree_criterion,ppt_min_eig,realignment_trace_norm,verdict,concurrence,concurrence_bound,"
         "ef,ln,en,n1,n2,class_id";
}

std::string to_csv_row(const GraphRecord& r) {
  std::string edges;
  for (const auto& e : r.edges) {
    if (!edges.empty()) edges += ';';
    edges += std::to_string(e.a.row) + " " + std::to_string(e.a.col) + " " + std::to_string(e.b.row) + " " +
             std::to_string(e.b.col);
  }
  const auto& c = r.criteria;
  const auto& m = r.measures;
  std::string row;
  row += r.id + ",";
  row += std::to_string(r.shape.p) + "," + std::to_string(r.shape.q) + ",";
  row += edges + ",";
  row += std::string(c.degree_criterion ? "true" : "false") + ",";
  row += fixed12(c.ppt.min_eigenvalue) + ",";
  row += fixed12(c.realignment.trace_norm) + ",";
  row += std::string(verdict_name(c.verdict)) + ",";
  row += fixed12(m.concurrence_exact) + ",";
  row += to_string(m.concurrence_upper_bound) + ",";
  row += fixed12(m.entanglement_of_formation) + ",";
  row += fixed12(m.logarithmic_negativity) + ",";
  row += fixed12(m.degree_discrepancy_norm) + ",";
  row += std::to_string(m.matched) + "," + std::to_string(m.unmatched) + ",";
  row += r.class_id.value_or("");
  return row;
}

// ---- reproduction of the 4-vertex concurrence table ------------------------

std::size_t Table4Report::entangled_classes() const {
  return static_cast<std::size_t>(
      std::count_if(classes.begin(), classes.end(), [](const ClassSummary& c) { return c.entangled_labelings > 0; }));
}

bool Table4Report::all_passed() const {
  return std::all_of(assertions.begin(), assertions.end(), [](const AssertionResult& a) { return a.passed; });
}

Table4Report table4_report(double tol) {
  constexpr double kValueTol = 1e-9;
  const ArrayShape shape{2, 2};

  struct Labeling {
    std::string id;
    std::size_t edges;
    Verdict verdict;
    double concurrence;
    std::size_t n1, n2;
  };
  std::map<std::string, std::vector<Labeling>> by_class;
  for (const auto& g : enumerate_labeled_graphs(shape)) {
    const auto criteria = verdict(g, tol);
    const auto classes = classify_edges(g);
    by_class[canonical_id(g)].push_back({graph_id_hex(g), g.edge_count(), criteria.verdict,
                                         wootters_concurrence(density_matrix(g), tol), classes.matched,
                                         classes.unmatched});
  }

  Table4Report report;
  bool unique_concurrence = true;
  bool one_over_m = true;
  bool single_unmatched = true;
  bool bound_achieved = true;
  bool npt_iff_positive = true;
  std::string first_problem;
  auto note = [&](const std::string& s) {
    if (first_problem.empty()) first_problem = s;
  };

  for (const auto& [class_id, labelings] : by_class) {
    ClassSummary summary;
    summary.class_id = class_id;
    summary.edges = labelings.front().edges;
    summary.labelings = labelings.size();
    summary.example_id = labelings.front().id;
    summary.verdict_label_independent = std::all_of(labelings.begin(), labelings.end(), [&](const Labeling& l) {
      return l.verdict == labelings.front().verdict;
    });
    for (const auto& l : labelings) {
      const bool entangled = l.verdict == Verdict::EntangledNpt;
      if (entangled != (l.concurrence > kValueTol)) {
        npt_iff_positive = false;
        note("labeling " + l.id + ": verdict and concurrence disagree");
      }
      if (!entangled) continue;
      ++summary.entangled_labelings;
      if (!summary.concurrence) summary.concurrence = l.concurrence;
      if (std::abs(*summary.concurrence - l.concurrence) > kValueTol) {
        unique_concurrence = false;
        note("class " + class_id + ": labelings have different concurrences");
      }
      if (std::abs(l.concurrence * static_cast<double>(l.edges) - 1.0) > kValueTol) {
        one_over_m = false;
        note("labeling " + l.id + ": C*m = " + std::to_string(l.concurrence * static_cast<double>(l.edges)));
      }
      if (l.n2 != 1) {
        single_unmatched = false;
        note("labeling " + l.id + ": n2 = " + std::to_string(l.n2));
      }
      const double bound = static_cast<double>(l.n2) / static_cast<double>(l.n1 + l.n2);
      if (std::abs(bound - l.concurrence) > kValueTol) {
        bound_achieved = false;
        note("labeling " + l.id + ": bound not achieved");
      }
    }
    report.classes.push_back(std::move(summary));
  }

  std::vector<double> found;
  for (const auto& c : report.classes)
    if (c.concurrence) found.push_back(*c.concurrence);
  std::sort(found.begin(), found.end());
  const std::vector<double> expected{1.0 / 5, 1.0 / 4, 1.0 / 3, 1.0 / 3, 1.0 / 3, 1.0 / 2, 1.0};
  bool multiset = found.size() == expected.size();
  for (std::size_t i = 0; multiset && i < found.size(); ++i)
    multiset = std::abs(found[i] - expected[i]) <= kValueTol;
  std::string found_text;
  for (double v : found) found_text += (found_text.empty() ? "" : ", ") + fixed12(v);

  const auto complete_id = canonical_id(family("complete", 2, 2));
  const auto star_id = canonical_id(family("star", 2, 2));
  bool families_independent = true;
  for (const auto& c : report.classes)
    if ((c.class_id == complete_id || c.class_id == star_id) && !c.verdict_label_independent)
      families_independent = false;

  auto add = [&](std::string name, bool passed, std::string detail) {
    report.assertions.push_back({std::move(name), passed, std::move(detail)});
  };
  add("seven_entangled_classes", report.entangled_classes() == 7,
      std::to_string(report.entangled_classes()) + " classes admit entangled labelings");
  add("concurrence_multiset", multiset, "found {" + found_text + "}");
  add("concurrence_unique_per_class", unique_concurrence, unique_concurrence ? "ok" : first_problem);
  add("concurrence_is_one_over_edges", one_over_m, one_over_m ? "ok" : first_problem);
  add("entangled_have_single_unmatched_edge", single_unmatched, single_unmatched ? "ok" : first_problem);
  add("upper_bound_achieved", bound_achieved, bound_achieved ? "ok" : first_problem);
  add("npt_iff_positive_concurrence", npt_iff_positive, npt_iff_positive ? "ok" : first_problem);
  add("complete_and_star_label_independent", families_independent, families_independent ? "ok" : "labeling matters");
  return report;
}

std::string to_json(const Table4Report& report, int indent) {
  json classes = json::array();
  for (const auto& c : report.classes)
    classes.push_back({{"class_id", c.class_id},
                       {"edges", c.edges},
                       {"labelings", c.labelings},
                       {"entangled_labelings", c.entangled_labelings},
                       {"concurrence", optional_number(c.concurrence)},
                       {"verdict_label_independent", c.verdict_label_independent},
                       {"example_id", c.example_id}});
  json assertions = json::array();
  for (const auto& a : report.assertions)
    assertions.push_back({{"name", a.name}, {"passed", a.passed}, {"detail", a.detail}});
  return json{{"p", 2},
              {"q", 2},
              {"labeled_graphs", 63},
              {"nonempty_classes", report.classes.size()},
              {"entangled_classes", report.entangled_classes()},
              {"classes", std::move(classes)},
              {"assertions", std::move(assertions)},
              {"all_passed", report.all_passed()}}
      .dump(indent);
}

std::string to_csv(const Table4Report& report) {
  std::string out = "class_id,edges,labelings,entangled_labelings,concurrence,verdict_label_independent,example_id\n";
  for (const auto& c : report.classes) {
    out += c.class_id + "," + std::to_string(c.edges) + "," + std::to_string(c.labelings) + "," +
           std::to_string(c.entangled_labelings) + "," + fixed12(c.concurrence) + "," +
           (c.verdict_label_independent ? "true" : "false") + "," + c.example_id + "\n";
  }
  return out;
}

}  // namespace lapsep
