#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "lapsep/decomposer.hpp"
#include "lapsep/harness.hpp"
#include "oracle.hpp"

using namespace lapsep;

namespace {

ArrayedGraph star22() { return build_graph(2, 2, {{{1, 1}, {1, 2}}, {{1, 1}, {2, 1}}, {{1, 1}, {2, 2}}}); }

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "no lapsep::Error thrown";
  return ErrorCode::AssertionFailure;
}

void expect_vector(const PhaseVector& v, std::vector<Complex> expected) {
  const auto got = v.materialize();
  ASSERT_EQ(got.size(), expected.size());
  for (std::size_t i = 0; i < got.size(); ++i) EXPECT_LT(std::abs(got[i] - expected[i]), 1e-15) << i;
}

// Independent reconstruction from materialized vectors.
oracle::CMat rebuild(const SeparableDecomposition& dec) {
  const int n = dec.shape.p * dec.shape.q;
  oracle::CMat out = oracle::CMat::Zero(n, n);
  for (const auto& t : dec.terms) {
    const auto a = t.a.materialize(), b = t.b.materialize();
    Eigen::VectorXcd v(n);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) v[static_cast<Eigen::Index>(i * b.size() + j)] = a[i] * b[j];
    out += t.weight.get_d() * v * v.adjoint();
  }
  return out;
}

}  // namespace

TEST(SplitBlocks, OnlyRowLocal) {
  const auto s = split_blocks_2xq(build_graph(2, 3, {{{1, 1}, {1, 3}}, {{2, 2}, {2, 3}}}));
  EXPECT_EQ(s.l3, RationalSymmetricMatrix(6));
}

TEST(SplitBlocks, CrissCross) {
  const auto g = family("crisscross", 2, 2);
  const auto s = split_blocks_2xq(g);
  EXPECT_EQ(s.l1, RationalSymmetricMatrix(4));
  EXPECT_EQ(s.l2, RationalSymmetricMatrix(4));
  EXPECT_EQ(s.x3_top(), RationalSymmetricMatrix::identity(2));
  EXPECT_EQ(s.x3_bottom(), RationalSymmetricMatrix::identity(2));
  EXPECT_EQ(s.x4(), (std::vector<std::vector<Rational>>{{0, -1}, {-1, 0}}));
  EXPECT_EQ(s.l1 + s.l2 + s.l3, laplacian(g));
}

TEST(SplitBlocks, VerticalEdge) {
  const auto s = split_blocks_2xq(build_graph(2, 3, {{{1, 2}, {2, 2}}}));
  EXPECT_EQ(s.x3_top(), RationalSymmetricMatrix::diagonal({0, 1, 0}));
  EXPECT_EQ(s.x4(), (std::vector<std::vector<Rational>>{{0, 0, 0}, {0, -1, 0}, {0, 0, 0}}));
}

TEST(SplitBlocks, Errors) {
  EXPECT_EQ(code_of([] { split_blocks_2xq(star22()); }), ErrorCode::DegreeCriterionViolated);
  EXPECT_EQ(code_of([] { split_blocks_2xq(family("complete", 3, 3)); }), ErrorCode::NotTwoByQ);
}

TEST(CrossAdjacency, Examples) {
  const auto cc = cross_adjacency(family("crisscross", 2, 2));
  EXPECT_EQ(cc.n, (std::vector<std::vector<int>>{{0, 1}, {1, 0}}));
  EXPECT_TRUE(cc.vertical.empty());

  const auto tm = cross_adjacency(family("tallymark(3)", 2, 3));
  EXPECT_EQ(tm.n, (std::vector<std::vector<int>>{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}));
  EXPECT_TRUE(tm.line_sum_symmetric());

  EXPECT_EQ(code_of([] { cross_adjacency(family("complete", 3, 2)); }), ErrorCode::NotTwoByQ);
}

TEST(CrossAdjacency, LineSumSymmetryIffDegreeCriterion) {
  for (const auto& g : enumerate_labeled_graphs({2, 3}))
    ASSERT_EQ(cross_adjacency(g).line_sum_symmetric(), degree_criterion(g)) << graph_id_hex(g);
}

TEST(CyclePeel, Examples) {
  EXPECT_EQ(cycle_peel(std::vector<std::vector<int>>{{0, 1}, {1, 0}}), (std::vector<std::vector<int>>{{1, 2}}));
  EXPECT_EQ(cycle_peel(std::vector<std::vector<int>>{{0, 1, 0}, {0, 0, 1}, {1, 0, 0}}),
            (std::vector<std::vector<int>>{{1, 2, 3}}));
  // 2-cycle on {4,5} plus 3-cycle 1->3->2->1.
  const std::vector<std::vector<int>> n{
      {0, 0, 1, 0, 0}, {1, 0, 0, 0, 0}, {0, 1, 0, 0, 0}, {0, 0, 0, 0, 1}, {0, 0, 0, 1, 0}};
  const auto cycles = cycle_peel(n);
  EXPECT_EQ(cycles, (std::vector<std::vector<int>>{{1, 3, 2}, {4, 5}}));
}

TEST(CyclePeel, RejectsUnbalanced) {
  EXPECT_EQ(code_of([] { cycle_peel(std::vector<std::vector<int>>{{0, 1}, {0, 0}}); }),
            ErrorCode::NotLineSumSymmetric);
}

TEST(TallyMark, TwoCycleVectors) {
  const auto terms = tally_mark_terms({2, 2}, 1, 2, {1, 2}, 4);
  ASSERT_EQ(terms.size(), 2u);
  const double r = 1 / std::sqrt(2.0);
  EXPECT_EQ(terms[0].weight, Rational(1, 2));
  EXPECT_EQ(terms[1].weight, Rational(1, 2));
  expect_vector(terms[0].a, {r, -r});
  expect_vector(terms[0].b, {r, r});
  expect_vector(terms[1].a, {r, r});
  expect_vector(terms[1].b, {r, -r});

  SeparableDecomposition dec{{2, 2}, terms, 0.0};
  const auto g = family("crisscross", 2, 2);
  EXPECT_LT((rebuild(dec) - oracle::density(2, 2, oracle::edges_of(g)).cast<Complex>()).norm(), 1e-15);
}

TEST(TallyMark, ThreeCycleReconstructs) {
  const auto terms = tally_mark_terms({2, 3}, 1, 2, {1, 2, 3}, 6);
  ASSERT_EQ(terms.size(), 3u);
  for (const auto& t : terms) EXPECT_EQ(t.weight, Rational(1, 3));
  SeparableDecomposition dec{{2, 3}, terms, 0.0};
  const auto g = family("tallymark(3)", 2, 3);
  EXPECT_LT((rebuild(dec) - oracle::density(2, 3, oracle::edges_of(g)).cast<Complex>()).norm(), 1e-12);
}

TEST(TallyMark, WeightBookkeeping) {
  for (int s = 2; s <= 6; ++s) {
    std::vector<int> cycle(static_cast<std::size_t>(s));
    std::iota(cycle.begin(), cycle.end(), 1);
    Rational total = 0;
    for (const auto& t : tally_mark_terms({2, 6}, 1, 2, cycle, 20)) total += t.weight;
    EXPECT_EQ(total, Rational(2 * s) / 20);
  }
}

TEST(TallyMark, Degenerate) {
  EXPECT_EQ(code_of([] { tally_mark_terms({2, 3}, 1, 2, {2}, 4); }), ErrorCode::DegenerateCycle);
  EXPECT_EQ(code_of([] { tally_mark_terms({2, 3}, 1, 2, {1, 1}, 4); }), ErrorCode::DegenerateCycle);
}

TEST(LocalEdgeTerm, Examples) {
  const double r = 1 / std::sqrt(2.0);
  const auto row = local_edge_term({2, 2}, make_edge({2, 2}, {1, 1}, {1, 2}), 2);
  EXPECT_EQ(row.weight, 1);
  expect_vector(row.a, {1.0, 0.0});
  expect_vector(row.b, {r, -r});
  SeparableDecomposition dec{{2, 2}, {row}, 0.0};
  EXPECT_LT((rebuild(dec) - oracle::density(2, 2, {{1, 1, 1, 2}}).cast<Complex>()).norm(), 1e-15);

  const auto vert = local_edge_term({2, 3}, make_edge({2, 3}, {1, 3}, {2, 3}), 2);
  expect_vector(vert.a, {r, -r});
  expect_vector(vert.b, {0.0, 0.0, 1.0});
  EXPECT_EQ(vert.provenance.source, TermSource::VerticalEdge);

  EXPECT_EQ(code_of([] { local_edge_term({2, 2}, make_edge({2, 2}, {1, 1}, {2, 2}), 2); }),
            ErrorCode::EdgeNotSeparableLocal);
}

TEST(LocalEdgeTerm, InRangeOfBoth) {
  const auto g = build_graph(2, 3, {{{1, 1}, {1, 3}}, {{1, 2}, {2, 3}}, {{1, 3}, {2, 2}}});
  const auto t = local_edge_term(g.shape(), g.edges()[0], g.degree_sum());
  const auto r = range_membership(to_complex(density_matrix(g)), g.shape(), t.a.materialize(), t.b.materialize());
  EXPECT_TRUE(r.in_range_of_rho);
  EXPECT_TRUE(r.in_range_of_rho_pt);
}

TEST(Decompose2xq, Examples) {
  const auto cc = decompose_2xq(family("crisscross", 2, 2));
  EXPECT_EQ(cc.terms.size(), 2u);
  EXPECT_LT(cc.reconstruction_residual, 1e-12);

  const auto k4g = family("complete", 2, 2);
  const auto k4 = decompose_2xq(k4g);
  EXPECT_EQ(k4.weight_sum(), 1);
  EXPECT_LT(k4.reconstruction_residual, 1e-12);
  EXPECT_LT((rebuild(k4) - oracle::density(2, 2, oracle::edges_of(k4g)).cast<Complex>()).norm(), 1e-12);

  EXPECT_EQ(code_of([] { decompose_2xq(star22()); }), ErrorCode::DegreeCriterionViolated);
  EXPECT_EQ(code_of([] { decompose_2xq(family("complete", 3, 3)); }), ErrorCode::NotTwoByQ);
}

TEST(Decompose2xq, SwappedFactorsReconstruct) {
  const auto g = swap_factors(family("complete", 2, 4));
  const auto dec = decompose_2xq(g);
  EXPECT_EQ(dec.shape, (ArrayShape{4, 2}));
  EXPECT_LT((rebuild(dec) - oracle::density(4, 2, oracle::edges_of(g)).cast<Complex>()).norm(), 1e-12);
  EXPECT_TRUE(verify_decomposition(density_matrix(g), dec).ok(1e-9));
}

TEST(MatchedSubgraph, Star) {
  const auto dec = decompose_matched_subgraph(star22());
  EXPECT_EQ(dec.terms.size(), 2u);
  EXPECT_LT(dec.reconstruction_residual, 1e-12);
  const auto sub = build_graph(2, 2, {{{1, 1}, {1, 2}}, {{1, 1}, {2, 1}}});
  EXPECT_LT((rebuild(dec) - oracle::density(2, 2, oracle::edges_of(sub)).cast<Complex>()).norm(), 1e-12);
}

TEST(MatchedSubgraph, EmbeddedCrissCross) {
  const auto g = build_graph(3, 3, {{{1, 1}, {3, 2}}, {{1, 2}, {3, 1}}});
  const auto dec = decompose_matched_subgraph(g);
  ASSERT_EQ(dec.terms.size(), 2u);
  for (const auto& t : dec.terms) {
    EXPECT_EQ(t.provenance.row_a, 1);
    EXPECT_EQ(t.provenance.row_b, 3);
  }
  EXPECT_LT(dec.reconstruction_residual, 1e-12);
}

TEST(MatchedSubgraph, FullyMatchedEqualsWholeGraph) {
  const auto g = family("tallymark(2)", 2, 3);
  const auto a = decompose_matched_subgraph(g);
  EXPECT_LT((rebuild(a) - oracle::density(2, 3, oracle::edges_of(g)).cast<Complex>()).norm(), 1e-12);
  EXPECT_EQ(code_of([] { decompose_matched_subgraph(build_graph(2, 2, {{{1, 1}, {2, 2}}})); }),
            ErrorCode::NoMatchedEdges);
}

TEST(Verify, DetectsPerturbation) {
  const auto g = family("complete", 2, 3);
  auto dec = decompose_2xq(g);
  EXPECT_TRUE(verify_decomposition(density_matrix(g), dec).ok(1e-9));
  dec.terms[0].a.entries[0].index = 1 - dec.terms[0].a.entries[0].index;
  const auto check = verify_decomposition(density_matrix(g), dec);
  EXPECT_GT(check.residual, 1e-3);
  EXPECT_FALSE(check.ok(1e-9));
}

TEST(Verify, RationalAndComplexInputsAgree) {
  for (const auto& g : enumerate_labeled_graphs({2, 2})) {
    if (!degree_criterion(g)) continue;
    const auto dec = decompose_2xq(g);
    const auto exact = verify_decomposition(density_matrix(g), dec);
    const auto floating = verify_decomposition(to_complex(density_matrix(g)), dec);
    EXPECT_EQ(exact.ok(1e-9), floating.ok(1e-9));
    EXPECT_TRUE(exact.ok(1e-9)) << graph_id_hex(g);
  }
}
