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

// HITS hub/authority scoring over a candidate subgraph.
//
// With adjacency A (A[i][j] = 1 iff i links to j) the alternating updates
//
//   v <- A^t u        (authority)
//   u <- A v          (hub)
//
// starting from u = 1 are the power method on A^t A for v and A A^t for u.
// Both vectors are L1-normalized after every step, so when the products are
// primitive they converge to the unique probabilistic dominant eigenvectors.

#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "warmrec/logparse.hpp"

namespace warmrec {

inline constexpr double kDefaultHitsTolerance = 1e-10;
inline constexpr std::size_t kDefaultHitsMaxIterations = 1000;

/// Dense 0/1 adjacency over an ordered node list. No self loops.
class CandidateGraph {
 public:
  CandidateGraph() = default;
  /// Nodes are sorted and deduplicated.
  explicit CandidateGraph(std::vector<Page> nodes);

  const std::vector<Page>& nodes() const { return nodes_; }
  std::size_t size() const { return nodes_.size(); }
  bool edge(std::size_t from, std::size_t to) const { return adj_[from * nodes_.size() + to] != 0; }
  /// Self loops are ignored.
  void add_edge(std::size_t from, std::size_t to);
  std::size_t edge_count() const { return edges_; }
  std::optional<std::size_t> index_of(const Page& page) const;

 private:
  std::vector<Page> nodes_;
  std::vector<std::uint8_t> adj_;
  std::size_t edges_ = 0;
};

enum class Primitivity { kPrimitive, kNotPrimitive, kUnchecked };

const char* to_string(Primitivity p);

struct HitsOptions {
  double tolerance = kDefaultHitsTolerance;
  std::size_t max_iterations = kDefaultHitsMaxIterations;
  /// Starting hub vector; all ones when empty. Must be nonnegative with a
  /// positive sum and match the node count.
  std::vector<double> initial_hub;
  /// Graphs above this size skip the primitivity check.
  std::size_t primitivity_check_limit = 256;
};

struct HitsScores {
  std::vector<Page> nodes;
  std::vector<double> hub;        // sums to 1
  std::vector<double> authority;  // sums to 1
  std::size_t iterations_used = 0;
  bool converged = false;
  /// Rayleigh quotient of A^t A at the final authority vector.
  double dominant_eigenvalue_estimate = 0.0;
  Primitivity primitive = Primitivity::kUnchecked;

  double hub_of(const Page& page) const;
  double authority_of(const Page& page) const;
};

/// Nodes are the candidate pages in lexicographic order; (i, j) is an edge
/// iff j is an outlink of i in the site map.
CandidateGraph build_candidate_graph(const PageSet& candidate_pages, const SiteMap& site);

/// A graph without edges yields uniform scores with iterations_used = 0.
HitsScores hits_iterate(const CandidateGraph& graph, const HitsOptions& options = {});

/// True iff both A^t A and A A^t are primitive, checked through boolean
/// powers up to the node count. kUnchecked above `limit` nodes.
Primitivity is_primitive_product(const CandidateGraph& graph, std::size_t limit = 256);

/// Rayleigh quotient x^t (A^t A) x / x^t x.
double rayleigh_quotient_ata(const CandidateGraph& graph, std::span<const double> x);

}  // namespace warmrec
