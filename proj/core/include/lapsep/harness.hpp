#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ranges>
#include <string>
#include <string_view>
#include <vector>

#include "lapsep/criteria.hpp"
#include "lapsep/decomposer.hpp"
#include "lapsep/graph.hpp"
#include "lapsep/measures.hpp"

namespace lapsep {

// ---- input ------------------------------------------------------------------

struct ParsedGraph {
  ArrayedGraph graph;
  std::vector<std::string> warnings;
};

// Edge-list format: first content line "p q", then one "k1 l1 k2 l2" per edge
// (1-based); '#' starts a comment. Errors carry the offending line number.
ParsedGraph parse_graph_text(std::string_view text);
ParsedGraph parse_graph_file(const std::filesystem::path& path);

// 3x3 graph with edges {(1,1),(2,3)}, {(1,2),(3,1)}, {(1,3),(3,2)},
// {(2,1),(3,3)}; vertex (2,2) is isolated. PPT but entangled.
ArrayedGraph counterexample_graph();

// complete | star | crisscross | tallymark(s) | nearest_point_sample.
// Star is centred at (1,1); the tally-mark sits on rows 1,2 and columns
// 1..s (s defaults to q). Throws UnknownFamily, or OutOfBounds when the
// array is too small for the family.
ArrayedGraph family(std::string_view name, int p, int q);

// ---- enumeration and isomorphism classes -----------------------------------

inline constexpr std::size_t kDefaultEnumerationPairs = 15;  // 2x3
inline constexpr std::size_t kMaxEnumerationPairs = 28;

// 2^(pq(pq-1)/2) - 1. Throws TooLarge beyond the default cap unless
// allow_large, and beyond kMaxEnumerationPairs always.
std::uint64_t labeled_graph_count(ArrayShape shape, bool allow_large = false);

// Every non-empty labeled graph on the array in increasing mask order.
inline auto enumerate_labeled_graphs(ArrayShape shape, bool allow_large = false) {
  const std::uint64_t count = labeled_graph_count(shape, allow_large);
  return std::views::iota(std::uint64_t{1}, count + 1) |
         std::views::transform([shape](std::uint64_t mask) { return graph_from_mask(shape, mask); });
}

inline constexpr std::size_t kDefaultCanonicalVertices = 6;

// Minimum enumeration mask over all vertex relabelings (brute force).
// Throws TooLarge when pq exceeds max_vertices.
std::uint64_t canonical_form(const ArrayedGraph& g, std::size_t max_vertices = kDefaultCanonicalVertices);
std::string canonical_id(const ArrayedGraph& g, std::size_t max_vertices = kDefaultCanonicalVertices);

// ---- per-graph records -----------------------------------------------------

struct AnalysisOptions {
  double tol = kDefaultTolerance;
  LogBase entropy_base = LogBase::Two;
  std::size_t max_class_vertices = kDefaultCanonicalVertices;
};

struct GraphRecord {
  std::string id;
  ArrayShape shape;
  std::vector<Edge> edges;
  CriteriaReport criteria;
  MeasureReport measures;
  std::optional<std::string> class_id;  // absent when the array is too large
  double tol = kDefaultTolerance;
};

GraphRecord analyze(const ArrayedGraph& g, const AnalysisOptions& options = {});

// Records for every labeled graph on the array, in mask order.
std::vector<GraphRecord> analyze_all(ArrayShape shape, const AnalysisOptions& options, unsigned workers,
                                     bool allow_large = false);

// Floats in JSON use the shortest round-trip form; rationals are "num/den".
std::string to_json(const GraphRecord& record, int indent = -1);
std::string to_json(const SeparableDecomposition& dec, int indent = -1);
// CSV floats use 12 significant digits.
std::string csv_header();
std::string to_csv_row(const GraphRecord& record);

// ---- reproduction of the 4-vertex concurrence table ------------------------

struct ClassSummary {
  std::string class_id;
  std::size_t edges = 0;
  std::size_t labelings = 0;
  std::size_t entangled_labelings = 0;
  std::optional<double> concurrence;  // shared by every entangled labeling
  bool verdict_label_independent = false;
  std::string example_id;
};

struct AssertionResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct Table4Report {
  std::vector<ClassSummary> classes;  // non-empty graphs, by class id
  std::vector<AssertionResult> assertions;

  std::size_t entangled_classes() const;
  bool all_passed() const;
};

Table4Report table4_report(double tol = kDefaultTolerance);
std::string to_json(const Table4Report& report, int indent = -1);
std::string to_csv(const Table4Report& report);

}  // namespace lapsep
