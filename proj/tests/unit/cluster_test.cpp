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

#include <cmath>

#include "fixtures.hpp"
#include "warmrec/cluster.hpp"

namespace warmrec {
namespace {

using testing::make_log;
using testing::unit_weights;
using testing::weights_of;

PageUsageVector vec(const Page& p, std::map<std::string, double> occ) { return {p, std::move(occ)}; }

TEST(UsageVectors, PresenceMapping) {
  auto log = make_log({{"a", "b"}, {"b"}, {"a"}});
  auto vectors = build_usage_vectors(log, weights_of({{"a", 0.5}, {"b", 1.0}}), {"a", "b", "z"});
  ASSERT_EQ(vectors.size(), 3u);
  EXPECT_EQ(vectors[0].page, "a");
  EXPECT_EQ(vectors[0].occurrence, (std::map<std::string, double>{{"s1", 0.5}, {"s3", 0.5}}));
  EXPECT_TRUE(vectors[2].occurrence.empty());
}

TEST(UsageVectors, ZeroWeightPagesHaveEmptyVectors) {
  auto log = make_log({{"a", "b"}});
  auto vectors = build_usage_vectors(log, weights_of({{"a", 0.0}, {"b", 1.0}}));
  EXPECT_TRUE(vectors[0].occurrence.empty());
  for (const auto& v : vectors) {
    for (const auto& [_, w] : v.occurrence) {
      EXPECT_GT(w, 0.0);
      EXPECT_LE(w, 1.0);
    }
  }
}

TEST(Cosine, Examples) {
  auto a = vec("a", {{"s1", 0.5}});
  auto b = vec("b", {{"s1", 0.5}, {"s2", 0.5}});
  EXPECT_NEAR(cosine_similarity(a, b), 1.0 / std::sqrt(2.0), 1e-15);
  EXPECT_EQ(cosine_similarity(b, b), 1.0);
  EXPECT_EQ(cosine_similarity(a, vec("c", {{"s9", 1.0}})), 0.0);
  EXPECT_EQ(cosine_similarity(a, vec("e", {})), 0.0);
}

TEST(Cosine, IdenticalSupportsAreOne) {
  auto log = make_log({{"a", "b"}, {"c"}, {"b", "a"}});
  auto v = build_usage_vectors(log, weights_of({{"a", 0.3}, {"b", 0.9}, {"c", 1}}));
  EXPECT_EQ(cosine_similarity(v[0], v[1]), 1.0);
}

TEST(Agglomerative, ThresholdZeroMergesAllNonEmpty) {
  std::vector<PageUsageVector> v = {vec("a", {{"s1", 1}}), vec("b", {{"s2", 1}}),
                                    vec("c", {{"s3", 0.5}}), vec("z", {})};
  auto c = agglomerative_cluster(v, 0.0);
  ASSERT_EQ(c.clusters.size(), 2u);
  EXPECT_EQ(c.clusters[0], (PageSet{"a", "b", "c"}));
  EXPECT_EQ(c.clusters[1], PageSet{"z"});
}

TEST(Agglomerative, ThresholdOneMergesOnlyIdenticalSupports) {
  std::vector<PageUsageVector> v = {vec("a", {{"s1", 0.2}, {"s2", 0.2}}),
                                    vec("b", {{"s1", 0.7}, {"s2", 0.7}}),
                                    vec("c", {{"s1", 0.7}})};
  auto c = agglomerative_cluster(v, 1.0);
  EXPECT_EQ(c.clusters, (std::vector<PageSet>{{"a", "b"}, {"c"}}));
  EXPECT_THROW(agglomerative_cluster(v, 1.01), ConfigError);
  EXPECT_THROW(agglomerative_cluster(v, -0.1), ConfigError);
}

TEST(Agglomerative, RecoversTwoSeparatedGroups) {
  auto log = make_log({{"a", "b", "c"}, {"a", "b"}, {"b", "c"}, {"x", "y", "z"},
                       {"x", "z"}, {"y", "z"}, {"a", "c"}, {"x", "y"}});
  auto weights = unit_weights({"a", "b", "c", "x", "y", "z"});
  auto c = agglomerative_cluster(build_usage_vectors(log, weights), 0.3);
  EXPECT_EQ(c.clusters, (std::vector<PageSet>{{"a", "b", "c"}, {"x", "y", "z"}}));
  EXPECT_EQ(c.cluster_of("y"), (PageSet{"x", "y", "z"}));
  EXPECT_EQ(c.cluster_of("nobody"), PageSet{"nobody"});
}

TEST(Agglomerative, AverageLinkageNotSingleLinkage) {
  // a~b strongly, c similar to b only; average of (a,c),(b,c) falls below 0.5
  std::vector<PageUsageVector> v = {vec("a", {{"s1", 1}, {"s2", 1}}),
                                    vec("b", {{"s1", 1}, {"s2", 1}, {"s3", 1}}),
                                    vec("c", {{"s3", 1}})};
  // cos(a,b)=0.816, cos(b,c)=0.577, cos(a,c)=0 -> average 0.289 after a+b merge
  auto c = agglomerative_cluster(v, 0.5);
  EXPECT_EQ(c.clusters, (std::vector<PageSet>{{"a", "b"}, {"c"}}));
}

TEST(Agglomerative, RejectsDuplicatePages) {
  std::vector<PageUsageVector> v = {vec("a", {{"s1", 1}}), vec("a", {{"s2", 1}})};
  EXPECT_THROW(agglomerative_cluster(v, 0.5), Error);
}

TEST(Clustering, ReindexDetectsOverlap) {
  Clustering c;
  c.clusters = {{"b", "c"}, {"a"}};
  c.reindex();
  EXPECT_EQ(c.clusters[0], PageSet{"a"});
  EXPECT_EQ(c.assignment.at("c"), 1u);
  c.clusters = {{"a", "b"}, {"b"}};
  EXPECT_THROW(c.reindex(), DataError);
}

}  // namespace
}  // namespace warmrec
