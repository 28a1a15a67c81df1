#include "lapsep/decomposer.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>

#include "lapsep/criteria.hpp"
#include "lapsep/errors.hpp"

namespace lapsep {

Complex PhaseEntry::value() const {
  const int num = ((numerator % denominator) + denominator) % denominator;
  if (num == 0) return {1.0, 0.0};
  if (2 * num == denominator) return {-1.0, 0.0};
  return std::polar(1.0, 2.0 * std::numbers::pi * num / denominator);
}

std::vector<Complex> PhaseVector::materialize() const {
  std::vector<Complex> v(dim);
  const double norm = 1.0 / std::sqrt(static_cast<double>(entries.size()));
  for (const auto& e : entries) v[e.index] = norm * e.value();
  return v;
}

std::vector<Complex> PhaseVector::materialize_conjugate() const {
  auto v = materialize();
  for (auto& z : v) z = std::conj(z);
  return v;
}

std::string Provenance::to_string() const {
  switch (source) {
    case TermSource::LocalEdge: return "local-edge " + lapsep::to_string(edge);
    case TermSource::VerticalEdge: return "vertical-edge " + lapsep::to_string(edge);
    case TermSource::Cycle: {
      std::string s = transposed ? "cycle cols (" : "cycle rows (";
      s += std::to_string(row_a) + "," + std::to_string(row_b) + (transposed ? ") rows [" : ") cols [");
      for (std::size_t t = 0; t < cycle.size(); ++t) s += (t ? "," : "") + std::to_string(cycle[t]);
      return s + "] phase " + std::to_string(phase);
    }
  }
  return "unknown";
}

Rational SeparableDecomposition::weight_sum() const {
  Rational s = 0;
  for (const auto& t : terms) s += t.weight;
  return s;
}

ComplexDenseMatrix SeparableDecomposition::reconstruct() const {
  const std::size_t n = shape.dim();
  ComplexDenseMatrix out(n, n);
  for (const auto& t : terms) {
    const auto a = t.a.materialize();
    const auto b = t.b.materialize();
    const auto v = kron(std::span<const Complex>(a), std::span<const Complex>(b));
    const double w = t.weight.get_d();
    for (std::size_t i = 0; i < n; ++i) {
      if (v[i] == Complex{}) continue;
      for (std::size_t j = 0; j < n; ++j) out(i, j) += w * v[i] * std::conj(v[j]);
    }
  }
  return out;
}

std::vector<int> CrossAdjacency::row_sums() const {
  std::vector<int> s(n.size(), 0);
  for (std::size_t j = 0; j < n.size(); ++j) s[j] = std::accumulate(n[j].begin(), n[j].end(), 0);
  return s;
}

std::vector<int> CrossAdjacency::column_sums() const {
  std::vector<int> s(n.size(), 0);
  for (const auto& row : n)
    for (std::size_t l = 0; l < row.size(); ++l) s[l] += row[l];
  return s;
}

bool CrossAdjacency::line_sum_symmetric() const { return row_sums() == column_sums(); }

CrossAdjacency cross_adjacency(const ArrayedGraph& g) {
  if (g.p() != 2) throw Error(ErrorCode::NotTwoByQ, "cross adjacency needs a 2 x q array");
  const auto q = static_cast<std::size_t>(g.q());
  CrossAdjacency out;
  out.n.assign(q, std::vector<int>(q, 0));
  for (const auto& e : g.edges()) {
    if (e.a.row == e.b.row) continue;
    // Canonical order puts the row-1 endpoint first.
    if (e.a.col == e.b.col) out.vertical.push_back(e.a.col);
    else out.n[e.a.col - 1][e.b.col - 1] = 1;
  }
  std::sort(out.vertical.begin(), out.vertical.end());
  return out;
}

RationalSymmetricMatrix BlockSplit::x3_top() const {
  const std::size_t q = l3.dim() / 2;
  RationalSymmetricMatrix out(q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j <= i; ++j) out.at(i, j) = l3(i, j);
  return out;
}

RationalSymmetricMatrix BlockSplit::x3_bottom() const {
  const std::size_t q = l3.dim() / 2;
  RationalSymmetricMatrix out(q);
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j <= i; ++j) out.at(i, j) = l3(q + i, q + j);
  return out;
}

std::vector<std::vector<Rational>> BlockSplit::x4() const {
  const std::size_t q = l3.dim() / 2;
  std::vector<std::vector<Rational>> out(q, std::vector<Rational>(q));
  for (std::size_t i = 0; i < q; ++i)
    for (std::size_t j = 0; j < q; ++j) out[i][j] = l3(i, q + j);
  return out;
}

BlockSplit split_blocks_2xq(const ArrayedGraph& g) {
  if (g.p() != 2) throw Error(ErrorCode::NotTwoByQ, "block split needs a 2 x q array");
  if (!degree_criterion(g)) throw Error(ErrorCode::DegreeCriterionViolated, "graph fails the degree-criterion");
  const std::size_t n = g.vertex_count();
  BlockSplit out{RationalSymmetricMatrix(n), RationalSymmetricMatrix(n), RationalSymmetricMatrix(n)};
  for (const auto& e : g.edges()) {
    auto& part = e.a.row != e.b.row ? out.l3 : (e.a.row == 1 ? out.l1 : out.l2);
    const auto a = vertex_index(g.shape(), e.a) - 1;
    const auto b = vertex_index(g.shape(), e.b) - 1;
    part.at(a, a) += 1;
    part.at(b, b) += 1;
    part.at(a, b) -= 1;
  }
  return out;
}

std::vector<std::vector<int>> cycle_peel(const std::vector<std::vector<int>>& n) {
  const std::size_t size = n.size();
  std::vector<std::vector<int>> rem = n;
  std::vector<int> out_degree(size, 0), in_degree(size, 0);
  for (std::size_t j = 0; j < size; ++j) {
    if (rem[j].size() != size) throw Error(ErrorCode::DimensionMismatch, "cross adjacency must be square");
    for (std::size_t l = 0; l < size; ++l) {
      if (rem[j][l] != 0 && rem[j][l] != 1)
        throw Error(ErrorCode::NotLineSumSymmetric, "cross adjacency entries must be 0 or 1");
      if (j == l && rem[j][l] != 0)
        throw Error(ErrorCode::NotLineSumSymmetric, "cross adjacency must have a zero diagonal");
      out_degree[j] += rem[j][l];
      in_degree[l] += rem[j][l];
    }
  }
  if (out_degree != in_degree)
    throw Error(ErrorCode::NotLineSumSymmetric, "row sums differ from column sums");

  std::vector<std::vector<int>> cycles;
  for (;;) {
    const auto first = std::find_if(out_degree.begin(), out_degree.end(), [](int d) { return d > 0; });
    if (first == out_degree.end()) break;
    const auto start = static_cast<std::size_t>(first - out_degree.begin());

    std::vector<std::size_t> path{start};
    std::vector<int> position(size, -1);
    position[start] = 0;
    std::size_t current = start;
    while (out_degree[current] > 0) {
      std::size_t next = 0;
      while (rem[current][next] == 0) ++next;
      rem[current][next] = 0;
      --out_degree[current];
      if (position[next] >= 0) {
        const auto from = static_cast<std::size_t>(position[next]);
        std::vector<int> cycle;
        for (std::size_t t = from; t < path.size(); ++t) cycle.push_back(static_cast<int>(path[t]) + 1);
        std::rotate(cycle.begin(), std::min_element(cycle.begin(), cycle.end()), cycle.end());
        cycles.push_back(std::move(cycle));
        for (std::size_t t = from + 1; t < path.size(); ++t) position[path[t]] = -1;
        path.resize(from + 1);
      } else {
        position[next] = static_cast<int>(path.size());
        path.push_back(next);
      }
      current = next;
    }
    // A walk in a balanced digraph can only stall where it started.
    if (path.size() != 1)
      throw Error(ErrorCode::AssertionFailure, "cycle walk stalled away from its start");
  }
  std::sort(cycles.begin(), cycles.end());
  return cycles;
}

std::vector<std::vector<int>> cycle_peel(const CrossAdjacency& n) { return cycle_peel(n.n); }

namespace {

PhaseEntry reduced(std::size_t index, int numerator, int denominator) {
  numerator = ((numerator % denominator) + denominator) % denominator;
  const int g = std::gcd(numerator, denominator);
  return {index, numerator / g, denominator / g};
}

Rational two_over(std::size_t degree_sum) { return ratio(2, degree_sum); }

}  // namespace

std::vector<ProductTerm> tally_mark_terms(ArrayShape shape, int row_a, int row_b, const std::vector<int>& cycle,
                                          std::size_t degree_sum) {
  const int s = static_cast<int>(cycle.size());
  if (s < 2) throw Error(ErrorCode::DegenerateCycle, "a tally-mark needs at least two columns");
  if (row_a == row_b || row_a < 1 || row_b < 1 || row_a > shape.p || row_b > shape.p)
    throw Error(ErrorCode::DegenerateCycle, "tally-mark rows must be two distinct rows of the array");
  if (std::set<int>(cycle.begin(), cycle.end()).size() != cycle.size())
    throw Error(ErrorCode::DegenerateCycle, "tally-mark columns must be distinct");
  for (int c : cycle)
    if (c < 1 || c > shape.q) throw Error(ErrorCode::DegenerateCycle, "tally-mark column out of range");
  if (degree_sum == 0) throw Error(ErrorCode::DegenerateCycle, "degree sum must be positive");

  std::vector<ProductTerm> terms;
  terms.reserve(cycle.size());
  for (int k = 0; k < s; ++k) {
    ProductTerm term;
    term.weight = two_over(degree_sum);
    // |r1> - w^{-k}|r2>, with -w^{-k} = exp(2 pi i (s - 2k) / 2s).
    term.a.dim = static_cast<std::size_t>(shape.p);
    term.a.entries = {reduced(static_cast<std::size_t>(row_a - 1), 0, 1),
                      reduced(static_cast<std::size_t>(row_b - 1), s - 2 * k, 2 * s)};
    std::sort(term.a.entries.begin(), term.a.entries.end(),
              [](const PhaseEntry& x, const PhaseEntry& y) { return x.index < y.index; });
    term.b.dim = static_cast<std::size_t>(shape.q);
    for (int t = 0; t < s; ++t)
      term.b.entries.push_back(reduced(static_cast<std::size_t>(cycle[static_cast<std::size_t>(t)] - 1), k * t, s));
    term.provenance.source = TermSource::Cycle;
    term.provenance.row_a = row_a;
    term.provenance.row_b = row_b;
    term.provenance.cycle = cycle;
    term.provenance.phase = k;
    terms.push_back(std::move(term));
  }
  return terms;
}

ProductTerm local_edge_term(ArrayShape shape, const Edge& e, std::size_t degree_sum) {
  const Edge c = make_edge(shape, e.a, e.b);
  ProductTerm term;
  term.weight = two_over(degree_sum);
  term.a.dim = static_cast<std::size_t>(shape.p);
  term.b.dim = static_cast<std::size_t>(shape.q);
  term.provenance.edge = c;
  switch (locality_of(c)) {
    case Locality::RowLocal:
      term.a.entries = {{static_cast<std::size_t>(c.a.row - 1), 0, 1}};
      term.b.entries = {{static_cast<std::size_t>(c.a.col - 1), 0, 1}, {static_cast<std::size_t>(c.b.col - 1), 1, 2}};
      term.provenance.source = TermSource::LocalEdge;
      break;
    case Locality::ColumnLocal:
      term.a.entries = {{static_cast<std::size_t>(c.a.row - 1), 0, 1}, {static_cast<std::size_t>(c.b.row - 1), 1, 2}};
      term.b.entries = {{static_cast<std::size_t>(c.a.col - 1), 0, 1}};
      term.provenance.source = TermSource::VerticalEdge;
      break;
    case Locality::Cross:
      throw Error(ErrorCode::EdgeNotSeparableLocal, to_string(c) + " joins different rows and columns");
  }
  return term;
}

namespace {

void finish(SeparableDecomposition& dec, const RationalSymmetricMatrix& rho, double tol) {
  dec.reconstruction_residual = (to_complex(rho) - dec.reconstruct()).frobenius_norm();
  if (dec.weight_sum() != 1 || dec.reconstruction_residual > tol)
    throw Error(ErrorCode::AssertionFailure,
                "decomposition does not reconstruct the state (residual " +
                    std::to_string(dec.reconstruction_residual) + ")");
}

SeparableDecomposition decompose_two_rows(const ArrayedGraph& g, double tol) {
  if (!degree_criterion(g))
    throw Error(ErrorCode::DegreeCriterionViolated, "graph fails the degree-criterion, so it is entangled");
  SeparableDecomposition dec;
  dec.shape = g.shape();
  const std::size_t d = g.degree_sum();
  for (const auto& e : g.edges())
    if (locality_of(e) != Locality::Cross) dec.terms.push_back(local_edge_term(g.shape(), e, d));
  for (const auto& cycle : cycle_peel(cross_adjacency(g)))
    for (auto& term : tally_mark_terms(g.shape(), 1, 2, cycle, d)) dec.terms.push_back(std::move(term));
  finish(dec, density_matrix(g), tol);
  return dec;
}

Vertex swapped(Vertex v) { return {v.col, v.row}; }

}  // namespace

SeparableDecomposition decompose_2xq(const ArrayedGraph& g, double tol) {
  if (g.p() == 2) return decompose_two_rows(g, tol);
  if (g.q() != 2) throw Error(ErrorCode::NotTwoByQ, "one factor must have dimension two");

  // Decompose on the transposed array and swap each term's factors back.
  const auto canonical = decompose_two_rows(swap_factors(g), tol);
  SeparableDecomposition dec;
  dec.shape = g.shape();
  dec.reconstruction_residual = canonical.reconstruction_residual;
  for (const auto& t : canonical.terms) {
    ProductTerm term{t.weight, t.b, t.a, t.provenance};
    if (term.provenance.source == TermSource::Cycle) {
      term.provenance.transposed = true;
    } else {
      term.provenance.edge = make_edge(g.shape(), swapped(t.provenance.edge.a), swapped(t.provenance.edge.b));
      term.provenance.source =
          locality_of(term.provenance.edge) == Locality::RowLocal ? TermSource::LocalEdge : TermSource::VerticalEdge;
    }
    dec.terms.push_back(std::move(term));
  }
  finish(dec, density_matrix(g), tol);
  return dec;
}

SeparableDecomposition decompose_matched_subgraph(const ArrayedGraph& g, double tol) {
  const auto classes = classify_edges(g);
  std::vector<Edge> matched;
  for (const auto& [e, c] : classes.edges)
    if (c.matched) matched.push_back(e);
  if (matched.empty()) throw Error(ErrorCode::NoMatchedEdges, "graph has no matched edges");

  const ArrayedGraph sub(g.shape(), matched);
  const std::size_t d = sub.degree_sum();
  SeparableDecomposition dec;
  dec.shape = g.shape();
  std::vector<bool> done(matched.size(), false);
  for (std::size_t k = 0; k < matched.size(); ++k) {
    const Edge& e = matched[k];
    if (locality_of(e) != Locality::Cross) {
      dec.terms.push_back(local_edge_term(g.shape(), e, d));
      continue;
    }
    if (done[k]) continue;
    // Cross matched edges come in criss-cross pairs {e, partner(e)}.
    const Edge partner = partial_transpose_edge(e, g.shape());
    const auto it = std::find(matched.begin(), matched.end(), partner);
    done[static_cast<std::size_t>(it - matched.begin())] = true;
    std::vector<int> cycle{std::min(e.a.col, e.b.col), std::max(e.a.col, e.b.col)};
    for (auto& term : tally_mark_terms(g.shape(), e.a.row, e.b.row, cycle, d)) dec.terms.push_back(std::move(term));
  }
  finish(dec, density_matrix(sub), tol);
  return dec;
}

DecompositionCheck verify_decomposition(const ComplexDenseMatrix& rho, const SeparableDecomposition& dec,
                                        double tol) {
  DecompositionCheck check;
  check.residual = (rho - dec.reconstruct()).frobenius_norm();
  for (const auto& t : dec.terms)
    if (sgn(t.weight) < 0) check.weights_nonnegative = false;
  check.weights_sum_to_one = std::abs(dec.weight_sum().get_d() - 1.0) <= 1e-12;
  const RangeOracle oracle(rho, dec.shape, tol);
  for (const auto& t : dec.terms) {
    const auto a = t.a.materialize();
    const auto b = t.b.materialize();
    const auto r = oracle.query(a, b);
    if (!r.in_range_of_rho || !r.in_range_of_rho_pt) ++check.range_failures;
  }
  return check;
}

DecompositionCheck verify_decomposition(const RationalSymmetricMatrix& rho, const SeparableDecomposition& dec,
                                        double tol) {
  return verify_decomposition(to_complex(rho), dec, tol);
}

}  // namespace lapsep
