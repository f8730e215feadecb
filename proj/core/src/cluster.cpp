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

#include "warmrec/cluster.hpp"

#include <algorithm>
#include <cmath>

namespace warmrec {

PageSet Clustering::cluster_of(const Page& page) const {
  auto it = assignment.find(page);
  if (it == assignment.end()) return {page};
  return clusters.at(it->second);
}

void Clustering::reindex() {
  std::erase_if(clusters, [](const PageSet& c) { return c.empty(); });
  std::sort(clusters.begin(), clusters.end(),
            [](const PageSet& a, const PageSet& b) { return *a.begin() < *b.begin(); });
  assignment.clear();
  for (std::size_t i = 0; i < clusters.size(); ++i) {
    for (const auto& p : clusters[i]) {
      if (!assignment.emplace(p, i).second) {
        throw DataError("page " + p + " appears in more than one cluster");
      }
    }
  }
}

std::vector<PageUsageVector> build_usage_vectors(const SessionLog& log,
                                                 const PageWeightTable& weights,
                                                 const PageSet& universe) {
  const PageSet& pages = universe.empty() ? log.page_universe : universe;
  std::map<Page, PageUsageVector> by_page;
  for (const auto& p : pages) by_page[p].page = p;
  for (const auto& s : log.sessions) {
    for (const auto& v : s.visits) {
      auto it = by_page.find(v.page);
      if (it == by_page.end()) continue;
      double w = weights.weight(v.page);
      if (w > 0.0) it->second.occurrence[s.session_id] = w;
    }
  }
  std::vector<PageUsageVector> out;
  out.reserve(by_page.size());
  for (auto& [_, vec] : by_page) out.push_back(std::move(vec));
  return out;
}

double cosine_similarity(const PageUsageVector& a, const PageUsageVector& b) {
  if (a.occurrence.empty() || b.occurrence.empty()) return 0.0;
  double dot = 0.0, na = 0.0, nb = 0.0;
  for (const auto& [_, x] : a.occurrence) na += x * x;
  for (const auto& [_, y] : b.occurrence) nb += y * y;
  auto ia = a.occurrence.begin();
  auto ib = b.occurrence.begin();
  while (ia != a.occurrence.end() && ib != b.occurrence.end()) {
    if (ia->first < ib->first) {
      ++ia;
    } else if (ib->first < ia->first) {
      ++ib;
    } else {
      dot += ia->second * ib->second;
      ++ia;
      ++ib;
    }
  }
  if (na <= 0.0 || nb <= 0.0) return 0.0;
  double c = dot / (std::sqrt(na) * std::sqrt(nb));
  // Proportional vectors must compare equal to 1 for threshold 1.
  if (std::abs(c - 1.0) < 1e-12) return 1.0;
  return std::clamp(c, 0.0, 1.0);
}

Clustering agglomerative_cluster(const std::vector<PageUsageVector>& vectors, double threshold) {
  if (!(threshold >= 0.0 && threshold <= 1.0)) {
    throw ConfigError("cluster threshold must be in [0, 1]");
  }
  std::vector<const PageUsageVector*> sorted;
  sorted.reserve(vectors.size());
  for (const auto& v : vectors) sorted.push_back(&v);
  std::sort(sorted.begin(), sorted.end(),
            [](const PageUsageVector* a, const PageUsageVector* b) { return a->page < b->page; });
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    if (sorted[i]->page == sorted[i - 1]->page) {
      throw DataError("duplicate usage vector for page " + sorted[i]->page);
    }
  }

  const std::size_t n = sorted.size();
  // Cluster id == index of its lexicographically smallest member, so id order
  // is the tie-breaking order.
  std::vector<std::vector<std::size_t>> members(n);
  std::vector<bool> active(n, false);
  for (std::size_t i = 0; i < n; ++i) {
    members[i] = {i};
    active[i] = !sorted[i]->occurrence.empty();
  }
  // link[i][j] = sum of pairwise similarities between clusters i and j.
  std::vector<std::vector<double>> link(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    if (!active[i]) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (!active[j]) continue;
      link[i][j] = link[j][i] = cosine_similarity(*sorted[i], *sorted[j]);
    }
  }

  while (true) {
    double best = -1.0;
    std::size_t bi = n, bj = n;
    for (std::size_t i = 0; i < n; ++i) {
      if (!active[i]) continue;
      for (std::size_t j = i + 1; j < n; ++j) {
        if (!active[j]) continue;
        double avg = link[i][j] /
                     static_cast<double>(members[i].size() * members[j].size());
        if (avg > best) {
          best = avg;
          bi = i;
          bj = j;
        }
      }
    }
    if (bi == n || best < threshold) break;
    // Merge bj into bi (bi < bj keeps the smaller minimum as the id).
    for (std::size_t k = 0; k < n; ++k) {
      if (!active[k] || k == bi || k == bj) continue;
      link[bi][k] += link[bj][k];
      link[k][bi] = link[bi][k];
    }
    members[bi].insert(members[bi].end(), members[bj].begin(), members[bj].end());
    members[bj].clear();
    active[bj] = false;
  }

  Clustering out;
  for (std::size_t i = 0; i < n; ++i) {
    if (members[i].empty()) continue;
    PageSet cluster;
    for (auto m : members[i]) cluster.insert(sorted[m]->page);
    out.clusters.push_back(std::move(cluster));
  }
  out.reindex();
  return out;
}

}  // namespace warmrec
