#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "lapsep/exact_matrix.hpp"
#include "lapsep/shape.hpp"

namespace lapsep {

// Vertex (k, l) of a p x q array, 1-based: row k labels factor A, column l
// labels factor B.
struct Vertex {
  int row = 1;
  int col = 1;

  friend bool operator==(const Vertex&, const Vertex&) = default;
};

// Row-major: (k - 1) * q + l, in 1..pq.
std::size_t vertex_index(ArrayShape shape, Vertex v);
Vertex vertex_at(ArrayShape shape, std::size_t index);

// Unordered pair stored with index(a) < index(b).
struct Edge {
  Vertex a;
  Vertex b;

  friend bool operator==(const Edge&, const Edge&) = default;
};

std::string to_string(const Edge& e);

enum class Locality { RowLocal, ColumnLocal, Cross };

struct EdgeClass {
  Locality locality = Locality::Cross;
  bool matched = false;
  Edge partner;

  bool separable() const noexcept { return locality != Locality::Cross; }
};

// Loop-free labeled graph with a non-empty edge set on a p x q array.
// Immutable once built; edges are kept sorted by (index(a), index(b)).
class ArrayedGraph {
 public:
  // Duplicate edges collapse. Bad endpoints throw OutOfBounds/LoopEdge; no edges throws EmptyEdgeSet.
  ArrayedGraph(ArrayShape shape, std::span<const Edge> edges);

  ArrayShape shape() const noexcept { return shape_; }
  int p() const noexcept { return shape_.p; }
  int q() const noexcept { return shape_.q; }
  std::size_t vertex_count() const noexcept { return shape_.dim(); }
  const std::vector<Edge>& edges() const noexcept { return edges_; }
  std::size_t edge_count() const noexcept { return edges_.size(); }
  bool has_edge(const Edge& e) const;
  // Degree-sum d_G = 2|E|.
  std::size_t degree_sum() const noexcept { return 2 * edges_.size(); }

  friend bool operator==(const ArrayedGraph&, const ArrayedGraph&) = default;

 private:
  ArrayShape shape_;
  std::vector<Edge> edges_;
};

Edge make_edge(ArrayShape shape, Vertex a, Vertex b);
ArrayedGraph build_graph(ArrayShape shape, std::span<const Edge> edges);
ArrayedGraph build_graph(int p, int q, std::initializer_list<std::pair<Vertex, Vertex>> edges);

RationalSymmetricMatrix adjacency_matrix(const ArrayedGraph& g);
RationalSymmetricMatrix degree_matrix(const ArrayedGraph& g);
RationalSymmetricMatrix laplacian(const ArrayedGraph& g);
// L(G) / d_G; trace exactly one.
RationalSymmetricMatrix density_matrix(const ArrayedGraph& g);

// {(i,j),(k,l)} -> {(i,l),(k,j)}. Identity on row- and column-local edges.
Edge partial_transpose_edge(const Edge& e, ArrayShape shape);
ArrayedGraph partial_transpose_graph(const ArrayedGraph& g);

Locality locality_of(const Edge& e) noexcept;

struct EdgeClassification {
  std::vector<std::pair<Edge, EdgeClass>> edges;  // in edge order
  std::size_t matched = 0;                        // n1
  std::size_t unmatched = 0;                      // n2
};

EdgeClassification classify_edges(const ArrayedGraph& g);

// perm[i - 1] is the new label of vertex i (labels 1..pq). Throws NotABijection.
ArrayedGraph apply_vertex_permutation(const ArrayedGraph& g, std::span<const std::size_t> perm);

// Exchange the roles of the two factors: (k, l) on p x q becomes (l, k) on q x p.
ArrayedGraph swap_factors(const ArrayedGraph& g);

// --- bitmask encoding ------------------------------------------------------
// Vertex pairs (a, b), a < b, are ordered lexicographically by index. The
// enumeration mask has bit t (value 2^t) set iff the t-th pair is an edge, so
// increasing masks start from the edge {v1, v2}. The hex id writes the same
// bits as a string whose most significant bit is pair 0.

std::size_t pair_count(ArrayShape shape) noexcept;
std::size_t pair_rank(ArrayShape shape, const Edge& e);
Edge pair_at(ArrayShape shape, std::size_t rank);

// Requires pair_count(shape) <= 64.
std::uint64_t edge_mask(const ArrayedGraph& g);
ArrayedGraph graph_from_mask(ArrayShape shape, std::uint64_t mask);

std::string graph_id_hex(const ArrayedGraph& g);
ArrayedGraph graph_from_hex(ArrayShape shape, const std::string& hex);
std::string mask_to_hex(ArrayShape shape, std::uint64_t mask);

}  // namespace lapsep
