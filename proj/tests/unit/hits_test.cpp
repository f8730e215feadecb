// Copyright 2026 The warmrec Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <gtest/gtest.h>

#include <numeric>
#include <random>

#include "oracles.hpp"
#include "warmrec/hits.hpp"

namespace warmrec {
namespace {

CandidateGraph graph_of(std::vector<Page> nodes, const std::vector<std::pair<Page, Page>>& edges) {
  CandidateGraph g(std::move(nodes));
  for (const auto& [from, to] : edges) g.add_edge(*g.index_of(from), *g.index_of(to));
  return g;
}

oracle::Matrix dense(const CandidateGraph& g) {
  oracle::Matrix a(g.size(), std::vector<double>(g.size(), 0.0));
  for (std::size_t i = 0; i < g.size(); ++i)
    for (std::size_t j = 0; j < g.size(); ++j) a[i][j] = g.edge(i, j) ? 1.0 : 0.0;
  return a;
}

TEST(CandidateGraph, BuiltFromSiteLinks) {
  SiteMap site;
  site.add_link("b", "a");
  site.add_link("a", "b");
  site.add_link("a", "outside");
  auto g = build_candidate_graph({"b", "a"}, site);
  EXPECT_EQ(g.nodes(), (std::vector<Page>{"a", "b"}));
  EXPECT_TRUE(g.edge(0, 1));
  EXPECT_TRUE(g.edge(1, 0));
  EXPECT_EQ(g.edge_count(), 2u);

  auto empty = build_candidate_graph({"x", "y"}, site);
  EXPECT_EQ(empty.edge_count(), 0u);
}

TEST(CandidateGraph, NoSelfLoopsOrDuplicates) {
  CandidateGraph g({"b", "a", "b"});
  EXPECT_EQ(g.size(), 2u);
  g.add_edge(0, 0);
  g.add_edge(0, 1);
  g.add_edge(0, 1);
  EXPECT_FALSE(g.edge(0, 0));
  EXPECT_EQ(g.edge_count(), 1u);
}

TEST(Hits, SingleEdge) {
  auto s = hits_iterate(graph_of({"a", "b"}, {{"a", "b"}}));
  EXPECT_DOUBLE_EQ(s.hub_of("a"), 1.0);
  EXPECT_DOUBLE_EQ(s.hub_of("b"), 0.0);
  EXPECT_DOUBLE_EQ(s.authority_of("a"), 0.0);
  EXPECT_DOUBLE_EQ(s.authority_of("b"), 1.0);
  EXPECT_TRUE(s.converged);
}

TEST(Hits, CompleteBipartiteIsUniform) {
  auto s = hits_iterate(
      graph_of({"a", "b", "c", "d"}, {{"a", "c"}, {"a", "d"}, {"b", "c"}, {"b", "d"}}));
  EXPECT_DOUBLE_EQ(s.hub_of("a"), 0.5);
  EXPECT_DOUBLE_EQ(s.hub_of("b"), 0.5);
  EXPECT_DOUBLE_EQ(s.authority_of("c"), 0.5);
  EXPECT_DOUBLE_EQ(s.authority_of("d"), 0.5);
  EXPECT_DOUBLE_EQ(s.dominant_eigenvalue_estimate, 4.0);
}

TEST(Hits, NoEdgesGivesUniformWithoutIterating) {
  auto s = hits_iterate(CandidateGraph({"a", "b", "c", "d"}));
  EXPECT_EQ(s.iterations_used, 0u);
  for (double h : s.hub) EXPECT_DOUBLE_EQ(h, 0.25);
  for (double a : s.authority) EXPECT_DOUBLE_EQ(a, 0.25);
  EXPECT_EQ(s.primitive, Primitivity::kNotPrimitive);
}

TEST(Hits, BadInputsRejected) {
  EXPECT_THROW(hits_iterate(CandidateGraph{}), ConfigError);
  HitsOptions o;
  o.tolerance = 0;
  EXPECT_THROW(hits_iterate(CandidateGraph({"a"}), o), ConfigError);
  HitsOptions wrong;
  wrong.initial_hub = {1.0};
  EXPECT_THROW(hits_iterate(graph_of({"a", "b"}, {{"a", "b"}}), wrong), ConfigError);
}

TEST(Hits, TenNodeRandomPrimitiveMatchesDenseEigenvector) {
  std::mt19937_64 rng(2024);
  std::bernoulli_distribution coin(0.45);
  for (int attempt = 0; attempt < 100; ++attempt) {
    std::vector<Page> nodes;
    for (int i = 0; i < 10; ++i) nodes.push_back("n" + std::to_string(i));
    CandidateGraph g(nodes);
    for (std::size_t i = 0; i < 10; ++i)
      for (std::size_t j = 0; j < 10; ++j)
        if (i != j && coin(rng)) g.add_edge(i, j);
    if (is_primitive_product(g) != Primitivity::kPrimitive) continue;

    auto s = hits_iterate(g);
    auto hub = oracle::dominant_eigenvector(oracle::times_transpose(dense(g)));
    auto auth = oracle::dominant_eigenvector(oracle::transpose_times(dense(g)));
    EXPECT_LT(oracle::l1_distance(s.hub, hub.vector), 1e-8);
    EXPECT_LT(oracle::l1_distance(s.authority, auth.vector), 1e-8);
    EXPECT_NEAR(s.dominant_eigenvalue_estimate, auth.lambda1, 1e-8 * auth.lambda1);
    return;
  }
  FAIL() << "no primitive graph drawn";
}

TEST(Primitivity, Examples) {
  EXPECT_EQ(is_primitive_product(CandidateGraph({"a", "b", "c"})), Primitivity::kNotPrimitive);
  auto complete = graph_of({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}, {"b", "a"}, {"b", "c"},
                                             {"c", "a"}, {"c", "b"}});
  EXPECT_EQ(is_primitive_product(complete), Primitivity::kPrimitive);
  auto split = graph_of({"a", "b", "c", "d"}, {{"a", "b"}, {"c", "d"}});
  EXPECT_EQ(is_primitive_product(split), Primitivity::kNotPrimitive);
  EXPECT_EQ(is_primitive_product(complete, 2), Primitivity::kUnchecked);
  EXPECT_STREQ(to_string(Primitivity::kUnchecked), "unchecked");
}

TEST(Primitivity, CompleteGraphSquareIsPositive) {
  // A^t A for K3 without loops: diagonal 2, off-diagonal 1; already positive.
  auto complete = graph_of({"a", "b", "c"}, {{"a", "b"}, {"a", "c"}, {"b", "a"}, {"b", "c"},
                                             {"c", "a"}, {"c", "b"}});
  auto ata = oracle::transpose_times(dense(complete));
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) EXPECT_EQ(ata[i][j], i == j ? 2.0 : 1.0);
}

TEST(Hits, VectorsAreProbabilistic) {
  auto g = graph_of({"a", "b", "c", "d"}, {{"a", "b"}, {"b", "c"}, {"c", "a"}, {"d", "a"}});
  auto s = hits_iterate(g);
  EXPECT_NEAR(std::accumulate(s.hub.begin(), s.hub.end(), 0.0), 1.0, 1e-12);
  EXPECT_NEAR(std::accumulate(s.authority.begin(), s.authority.end(), 0.0), 1.0, 1e-12);
  for (double x : s.hub) EXPECT_GE(x, 0.0);
}

TEST(Hits, RayleighQuotient) {
  auto g = graph_of({"a", "b"}, {{"a", "b"}});
  std::vector<double> x = {0.0, 1.0};
  EXPECT_DOUBLE_EQ(rayleigh_quotient_ata(g, x), 1.0);
}

}  // namespace
}  // namespace warmrec
