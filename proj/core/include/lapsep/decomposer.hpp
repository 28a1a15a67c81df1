#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "lapsep/dense_linalg.hpp"
#include "lapsep/exact_matrix.hpp"
#include "lapsep/graph.hpp"

namespace lapsep {

// Coefficient exp(2*pi*i * numerator / denominator) on basis vector |index>.
struct PhaseEntry {
  std::size_t index = 0;  // 0-based
  int numerator = 0;
  int denominator = 1;

  Complex value() const;
  friend bool operator==(const PhaseEntry&, const PhaseEntry&) = default;
};

// Unit vector (1/sqrt(m)) * sum of m unit-modulus phase entries on distinct
// basis vectors. Phases stay exact until materialize() is called.
struct PhaseVector {
  std::size_t dim = 0;
  std::vector<PhaseEntry> entries;

  std::vector<Complex> materialize() const;
  std::vector<Complex> materialize_conjugate() const;
  friend bool operator==(const PhaseVector&, const PhaseVector&) = default;
};

enum class TermSource { LocalEdge, VerticalEdge, Cycle };

struct Provenance {
  TermSource source = TermSource::LocalEdge;
  Edge edge;                // LocalEdge / VerticalEdge
  int row_a = 0, row_b = 0; // Cycle: the two rows (1-based)
  std::vector<int> cycle;   // Cycle: columns i_1..i_s (1-based)
  int phase = 0;            // Cycle: k in 0..s-1
  bool transposed = false;  // Cycle: built on the factor-swapped array

  std::string to_string() const;
  friend bool operator==(const Provenance&, const Provenance&) = default;
};

// weight * P[a (x) b]
struct ProductTerm {
  Rational weight;
  PhaseVector a;  // dim p
  PhaseVector b;  // dim q
  Provenance provenance;

  friend bool operator==(const ProductTerm&, const ProductTerm&) = default;
};

struct SeparableDecomposition {
  ArrayShape shape;
  std::vector<ProductTerm> terms;
  double reconstruction_residual = 0.0;

  Rational weight_sum() const;
  ComplexDenseMatrix reconstruct() const;
};

// Cross edges {(1,j),(2,l)} with j != l of a 2 x q graph; N[j][l] = 1 iff
// present. Vertical edges {(1,j),(2,j)} are listed separately.
struct CrossAdjacency {
  std::vector<std::vector<int>> n;   // q x q, 0-based, zero diagonal
  std::vector<int> vertical;         // 1-based columns, ascending

  std::size_t size() const noexcept { return n.size(); }
  std::vector<int> row_sums() const;
  std::vector<int> column_sums() const;
  bool line_sum_symmetric() const;
};

CrossAdjacency cross_adjacency(const ArrayedGraph& g);

// Laplacian split L(G) = L1 + L2 + L3 for a 2 x q graph: L1 from row-1 edges,
// L2 from row-2 edges, L3 from edges between the rows (vertical included).
struct BlockSplit {
  RationalSymmetricMatrix l1, l2, l3;

  // q x q blocks of L3 = [[X3, X4], [X4^T, X3']].
  RationalSymmetricMatrix x3_top() const;
  RationalSymmetricMatrix x3_bottom() const;
  std::vector<std::vector<Rational>> x4() const;
};

// Requires p == 2 and the degree-criterion. Throws NotTwoByQ or
// DegreeCriterionViolated.
BlockSplit split_blocks_2xq(const ArrayedGraph& g);

// Peel N into simple directed cycles (1-based columns). Each walk starts at
// the smallest column with remaining out-degree and always takes the
// smallest successor; a revisited column closes a cycle. Cycles are rotated
// to start at their minimum and returned sorted.
std::vector<std::vector<int>> cycle_peel(const CrossAdjacency& n);
std::vector<std::vector<int>> cycle_peel(const std::vector<std::vector<int>>& n);

// s terms for the tally-mark {(r1,i_t),(r2,i_{t+1})}: with w = exp(2 pi i/s),
// term k has a ~ |r1> - w^{-k}|r2>, b ~ sum_t w^{kt}|i_t>, weight 2/d.
std::vector<ProductTerm> tally_mark_terms(ArrayShape shape, int row_a, int row_b, const std::vector<int>& cycle,
                                          std::size_t degree_sum);

// Single product term for a row-local or column-local edge, weight 2/d.
ProductTerm local_edge_term(ArrayShape shape, const Edge& e, std::size_t degree_sum);

// Constructive decomposition for p == 2 (or q == 2, via factor swap).
SeparableDecomposition decompose_2xq(const ArrayedGraph& g, double tol = kDefaultTolerance);

// Decomposition of the density matrix of (V, E1), E1 the matched edges.
SeparableDecomposition decompose_matched_subgraph(const ArrayedGraph& g, double tol = kDefaultTolerance);

struct DecompositionCheck {
  double residual = 0.0;
  bool weights_nonnegative = true;
  bool weights_sum_to_one = true;
  std::size_t range_failures = 0;  // terms failing either range condition

  bool ok(double tol) const {
    return residual <= tol && weights_nonnegative && weights_sum_to_one && range_failures == 0;
  }
};

DecompositionCheck verify_decomposition(const RationalSymmetricMatrix& rho, const SeparableDecomposition& dec,
                                        double tol = kDefaultTolerance);
DecompositionCheck verify_decomposition(const ComplexDenseMatrix& rho, const SeparableDecomposition& dec,
                                        double tol = kDefaultTolerance);

}  // namespace lapsep
