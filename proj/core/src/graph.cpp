#include "lapsep/graph.hpp"

#include <algorithm>
#include <cctype>
#include <string>
#include <utility>

#include "lapsep/errors.hpp"

namespace lapsep {

namespace {

bool in_bounds(ArrayShape shape, Vertex v) {
  return v.row >= 1 && v.row <= shape.p && v.col >= 1 && v.col <= shape.q;
}

std::string vertex_string(Vertex v) { return "(" + std::to_string(v.row) + "," + std::to_string(v.col) + ")"; }

bool edge_less(ArrayShape shape, const Edge& x, const Edge& y) {
  const auto xa = vertex_index(shape, x.a), ya = vertex_index(shape, y.a);
  if (xa != ya) return xa < ya;
  return vertex_index(shape, x.b) < vertex_index(shape, y.b);
}

void add_edge_laplacian(RationalSymmetricMatrix& m, std::size_t a, std::size_t b) {
  m.at(a, a) += 1;
  m.at(b, b) += 1;
  m.at(a, b) -= 1;
}

}  // namespace

std::size_t vertex_index(ArrayShape shape, Vertex v) {
  if (!in_bounds(shape, v))
    throw Error(ErrorCode::OutOfBounds, "vertex " + vertex_string(v) + " outside " + std::to_string(shape.p) + "x" +
                                            std::to_string(shape.q) + " array");
  return static_cast<std::size_t>(v.row - 1) * static_cast<std::size_t>(shape.q) + static_cast<std::size_t>(v.col);
}

Vertex vertex_at(ArrayShape shape, std::size_t index) {
  if (index < 1 || index > shape.dim())
    throw Error(ErrorCode::OutOfBounds, "vertex index " + std::to_string(index) + " outside 1.." +
                                            std::to_string(shape.dim()));
  const auto zero = index - 1;
  return {static_cast<int>(zero / static_cast<std::size_t>(shape.q)) + 1,
          static_cast<int>(zero % static_cast<std::size_t>(shape.q)) + 1};
}

std::string to_string(const Edge& e) { return "{" + vertex_string(e.a) + "," + vertex_string(e.b) + "}"; }

Edge make_edge(ArrayShape shape, Vertex a, Vertex b) {
  const auto ia = vertex_index(shape, a);
  const auto ib = vertex_index(shape, b);
  if (ia == ib) throw Error(ErrorCode::LoopEdge, "loop at vertex " + vertex_string(a));
  return ia < ib ? Edge{a, b} : Edge{b, a};
}

ArrayedGraph::ArrayedGraph(ArrayShape shape, std::span<const Edge> edges) : shape_(shape) {
  if (shape.p < 1 || shape.q < 1)
    throw Error(ErrorCode::OutOfBounds, "array dimensions must be positive");
  if (edges.empty()) throw Error(ErrorCode::EmptyEdgeSet, "a graph needs at least one edge");
  edges_.reserve(edges.size());
  for (const auto& e : edges) edges_.push_back(make_edge(shape, e.a, e.b));
  std::sort(edges_.begin(), edges_.end(), [&](const Edge& x, const Edge& y) { return edge_less(shape, x, y); });
  edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
}

bool ArrayedGraph::has_edge(const Edge& e) const {
  const Edge c = make_edge(shape_, e.a, e.b);
  return std::binary_search(edges_.begin(), edges_.end(), c,
                            [&](const Edge& x, const Edge& y) { return edge_less(shape_, x, y); });
}

ArrayedGraph build_graph(ArrayShape shape, std::span<const Edge> edges) { return ArrayedGraph(shape, edges); }

ArrayedGraph build_graph(int p, int q, std::initializer_list<std::pair<Vertex, Vertex>> edges) {
  std::vector<Edge> list;
  for (const auto& [a, b] : edges) list.push_back({a, b});
  return ArrayedGraph({p, q}, list);
}

RationalSymmetricMatrix adjacency_matrix(const ArrayedGraph& g) {
  RationalSymmetricMatrix m(g.vertex_count());
  for (const auto& e : g.edges()) m.at(vertex_index(g.shape(), e.a) - 1, vertex_index(g.shape(), e.b) - 1) = 1;
  return m;
}

RationalSymmetricMatrix degree_matrix(const ArrayedGraph& g) {
  RationalSymmetricMatrix m(g.vertex_count());
  for (const auto& e : g.edges()) {
    m.at(vertex_index(g.shape(), e.a) - 1, vertex_index(g.shape(), e.a) - 1) += 1;
    m.at(vertex_index(g.shape(), e.b) - 1, vertex_index(g.shape(), e.b) - 1) += 1;
  }
  return m;
}

RationalSymmetricMatrix laplacian(const ArrayedGraph& g) {
  RationalSymmetricMatrix m(g.vertex_count());
  for (const auto& e : g.edges())
    add_edge_laplacian(m, vertex_index(g.shape(), e.a) - 1, vertex_index(g.shape(), e.b) - 1);
  return m;
}

RationalSymmetricMatrix density_matrix(const ArrayedGraph& g) {
  return laplacian(g).scaled(ratio(1, g.degree_sum()));
}

Edge partial_transpose_edge(const Edge& e, ArrayShape shape) {
  return make_edge(shape, {e.a.row, e.b.col}, {e.b.row, e.a.col});
}

ArrayedGraph partial_transpose_graph(const ArrayedGraph& g) {
  std::vector<Edge> out;
  out.reserve(g.edge_count());
  for (const auto& e : g.edges()) out.push_back(partial_transpose_edge(e, g.shape()));
  return ArrayedGraph(g.shape(), out);
}

Locality locality_of(const Edge& e) noexcept {
  if (e.a.row == e.b.row) return Locality::RowLocal;
  if (e.a.col == e.b.col) return Locality::ColumnLocal;
  return Locality::Cross;
}

EdgeClassification classify_edges(const ArrayedGraph& g) {
  EdgeClassification out;
  out.edges.reserve(g.edge_count());
  for (const auto& e : g.edges()) {
    EdgeClass c;
    c.locality = locality_of(e);
    c.partner = partial_transpose_edge(e, g.shape());
    c.matched = g.has_edge(c.partner);
    (c.matched ? out.matched : out.unmatched) += 1;
    out.edges.emplace_back(e, c);
  }
  return out;
}

ArrayedGraph apply_vertex_permutation(const ArrayedGraph& g, std::span<const std::size_t> perm) {
  const std::size_t n = g.vertex_count();
  if (perm.size() != n)
    throw Error(ErrorCode::NotABijection, "permutation has " + std::to_string(perm.size()) + " entries, expected " +
                                              std::to_string(n));
  std::vector<bool> seen(n + 1, false);
  for (auto image : perm) {
    if (image < 1 || image > n || seen[image])
      throw Error(ErrorCode::NotABijection, "permutation is not a bijection on 1.." + std::to_string(n));
    seen[image] = true;
  }
  std::vector<Edge> out;
  out.reserve(g.edge_count());
  for (const auto& e : g.edges())
    out.push_back({vertex_at(g.shape(), perm[vertex_index(g.shape(), e.a) - 1]),
                   vertex_at(g.shape(), perm[vertex_index(g.shape(), e.b) - 1])});
  return ArrayedGraph(g.shape(), out);
}

ArrayedGraph swap_factors(const ArrayedGraph& g) {
  std::vector<Edge> out;
  out.reserve(g.edge_count());
  for (const auto& e : g.edges()) out.push_back({{e.a.col, e.a.row}, {e.b.col, e.b.row}});
  return ArrayedGraph(g.shape().swapped(), out);
}

std::size_t pair_count(ArrayShape shape) noexcept {
  const auto n = shape.dim();
  return n * (n - 1) / 2;
}

std::size_t pair_rank(ArrayShape shape, const Edge& e) {
  const Edge c = make_edge(shape, e.a, e.b);
  const std::size_t n = shape.dim();
  const std::size_t i = vertex_index(shape, c.a) - 1;
  const std::size_t j = vertex_index(shape, c.b) - 1;
  return i * n - i * (i + 1) / 2 + (j - i - 1);
}

Edge pair_at(ArrayShape shape, std::size_t rank) {
  const std::size_t n = shape.dim();
  if (rank >= pair_count(shape)) throw Error(ErrorCode::OutOfBounds, "pair rank " + std::to_string(rank));
  std::size_t i = 0;
  while (rank >= n - 1 - i) {
    rank -= n - 1 - i;
    ++i;
  }
  const std::size_t j = i + 1 + rank;
  return {vertex_at(shape, i + 1), vertex_at(shape, j + 1)};
}

std::uint64_t edge_mask(const ArrayedGraph& g) {
  if (pair_count(g.shape()) > 64) throw Error(ErrorCode::TooLarge, "more than 64 vertex pairs do not fit a mask");
  std::uint64_t mask = 0;
  for (const auto& e : g.edges()) mask |= std::uint64_t{1} << pair_rank(g.shape(), e);
  return mask;
}

ArrayedGraph graph_from_mask(ArrayShape shape, std::uint64_t mask) {
  const std::size_t pairs = pair_count(shape);
  if (pairs > 64) throw Error(ErrorCode::TooLarge, "more than 64 vertex pairs do not fit a mask");
  if (pairs < 64 && (mask >> pairs) != 0) throw Error(ErrorCode::OutOfBounds, "mask has bits beyond the last pair");
  std::vector<Edge> edges;
  for (std::size_t t = 0; t < pairs; ++t)
    if ((mask >> t) & 1U) edges.push_back(pair_at(shape, t));
  return ArrayedGraph(shape, edges);
}

namespace {

std::string bits_to_hex(const std::vector<bool>& bits) {
  // bits[0] is the most significant; pad on the left to whole nibbles.
  const std::size_t width = (bits.size() + 3) / 4;
  const std::size_t pad = width * 4 - bits.size();
  std::string out(width, '0');
  for (std::size_t t = 0; t < bits.size(); ++t) {
    if (!bits[t]) continue;
    const std::size_t pos = pad + t;
    const int nibble = static_cast<int>(pos / 4);
    const int shift = 3 - static_cast<int>(pos % 4);
    int value = std::isdigit(static_cast<unsigned char>(out[nibble])) ? out[nibble] - '0' : out[nibble] - 'a' + 10;
    value |= 1 << shift;
    out[nibble] = "0123456789abcdef"[value];
  }
  return out;
}

}  // namespace

std::string graph_id_hex(const ArrayedGraph& g) {
  std::vector<bool> bits(pair_count(g.shape()), false);
  for (const auto& e : g.edges()) bits[pair_rank(g.shape(), e)] = true;
  return bits_to_hex(bits);
}

std::string mask_to_hex(ArrayShape shape, std::uint64_t mask) {
  std::vector<bool> bits(pair_count(shape), false);
  for (std::size_t t = 0; t < bits.size() && t < 64; ++t) bits[t] = (mask >> t) & 1U;
  return bits_to_hex(bits);
}

ArrayedGraph graph_from_hex(ArrayShape shape, const std::string& hex) {
  const std::size_t pairs = pair_count(shape);
  const std::size_t width = (pairs + 3) / 4;
  if (hex.size() != width) throw Error(ErrorCode::ParseError, "graph id '" + hex + "' should have " +
                                                                  std::to_string(width) + " hex digits");
  const std::size_t pad = width * 4 - pairs;
  std::vector<Edge> edges;
  for (std::size_t pos = 0; pos < width * 4; ++pos) {
    const char ch = static_cast<char>(std::tolower(static_cast<unsigned char>(hex[pos / 4])));
    int value;
    if (ch >= '0' && ch <= '9') value = ch - '0';
    else if (ch >= 'a' && ch <= 'f') value = ch - 'a' + 10;
    else throw Error(ErrorCode::ParseError, "graph id '" + hex + "' is not hexadecimal");
    if (!((value >> (3 - pos % 4)) & 1)) continue;
    if (pos < pad) throw Error(ErrorCode::ParseError, "graph id '" + hex + "' sets padding bits");
    edges.push_back(pair_at(shape, pos - pad));
  }
  return ArrayedGraph(shape, edges);
}

}  // namespace lapsep
