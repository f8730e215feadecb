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

// Usage-pattern clustering of pages: pages that occur together across
// sessions end up in the same cluster, independent of their content.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "warmrec/logparse.hpp"
#include "warmrec/pageweight.hpp"

namespace warmrec {

inline constexpr double kDefaultClusterThreshold = 0.5;

/// Sparse vector over sessions. A session key is present iff the page was
/// visited in that session with a positive weight.
struct PageUsageVector {
  Page page;
  std::map<std::string, double> occurrence;
};

struct Clustering {
  /// Each cluster is a page set; clusters are ordered by their smallest page.
  std::vector<PageSet> clusters;
  std::map<Page, std::size_t> assignment;

  /// Members of the cluster holding `page`, or {page} if unassigned.
  PageSet cluster_of(const Page& page) const;

  /// Rebuilds `assignment` from `clusters` after sorting them canonically.
  /// Throws DataError if clusters overlap.
  void reindex();

  bool operator==(const Clustering&) const = default;
};

/// One vector per page of `universe` (log pages when empty). Pages with zero
/// weight or never visited get an empty vector.
std::vector<PageUsageVector> build_usage_vectors(const SessionLog& log,
                                                 const PageWeightTable& weights,
                                                 const PageSet& universe = {});

/// Cosine over the shared session dimensions; 0 if either vector is empty.
double cosine_similarity(const PageUsageVector& a, const PageUsageVector& b);

/// Average-linkage agglomerative clustering. The closest pair of clusters
/// (ties: lexicographically smallest pair of cluster minima) is merged while
/// its average similarity is >= threshold. Pages with empty vectors stay
/// singletons. Throws ConfigError if threshold is outside [0, 1].
Clustering agglomerative_cluster(const std::vector<PageUsageVector>& vectors, double threshold);

}  // namespace warmrec
