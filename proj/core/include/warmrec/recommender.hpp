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

// Online recommendation pipeline.
//
//   1. score every rule against the active session and keep the best
//      n heads (match score x weighted confidence),
//   2. extend the seed with the usage clusters of its heads,
//   3. rank the candidate subgraph by HITS hub score,
//   4. add TF-IDF relevance to the session text and fuse the three scores.
//
// Match score of rule body B against session weights s, global weights r:
//
//   D = sum_{i in B} (2 (s_i - r_i))^2 / (s_i + r_i)
//   M = 1 - sqrt(D / |B|) / 4          (clamped to [0, 1])

#pragma once

#include <span>
#include <string>
#include <vector>

#include "warmrec/model.hpp"

namespace warmrec {

/// Session vector: the global weight of every visited page, absent when 0.
struct ActiveSession {
  std::vector<Page> pages;  // visited pages known to the model, in order
  PageSet visited;          // every requested page, known or not
  std::map<Page, double> weights;
  std::vector<Page> unknown_pages;

  /// Pages the weight table does not know are kept in `visited` (never
  /// recommended) and listed in `unknown_pages`.
  static ActiveSession from_pages(std::span<const Page> pages, const PageWeightTable& weights);
  double weight(const Page& page) const;
};

enum class DissimilarityForm {
  kSquareOfDoubled,  // (2 (s - r))^2
  kDoubledSquare,    // 2 (s - r)^2
};

struct ScoredRule {
  WeightedRule rule;
  double match_score = 0.0;
  double rec_score = 0.0;  // match_score * wconf
};

enum class Provenance { kSeed, kClusterExtension };

const char* to_string(Provenance p);

struct Recommendation {
  Page page;
  double rec_score = 0.0;
  double hub_score = 0.0;  // batch-normalized to max 1
  double authority_score = 0.0;
  double text_score = 0.0;
  double final_score = 0.0;
  Provenance provenance = Provenance::kSeed;
  bool has_text = false;
};

struct RecommendationTrace {
  std::vector<ScoredRule> seed;
  std::vector<Page> candidates;
  std::size_t graph_edges = 0;
  std::size_t hits_iterations = 0;
  bool hits_converged = false;
  Primitivity primitive = Primitivity::kUnchecked;
  double dominant_eigenvalue = 0.0;
  std::vector<Page> unknown_pages;
  std::vector<std::string> diagnostics;
};

struct RecommendationSet {
  /// Sorted by final_score desc, then page.
  std::vector<Recommendation> items;
  RecommendationTrace trace;

  std::vector<Page> pages() const;
};

struct RecommendOptions {
  std::size_t n = 5;
  /// Seed set size override; 0 uses n.
  std::size_t seed_size = 0;

  std::size_t seed_count() const { return seed_size == 0 ? n : seed_size; }
  FusionWeights fusion;
  HitsOptions hits;
  DissimilarityForm form = DissimilarityForm::kSquareOfDoubled;

  /// Options matching a trained model's parameters.
  static RecommendOptions from_config(const Config& config);
};

double dissimilarity(const ActiveSession& session, const WeightedRule& rule,
                     const PageWeightTable& weights,
                     DissimilarityForm form = DissimilarityForm::kSquareOfDoubled);

double match_score(const ActiveSession& session, const WeightedRule& rule,
                   const PageWeightTable& weights,
                   DissimilarityForm form = DissimilarityForm::kSquareOfDoubled);

/// Best-scoring rule per head, for heads outside the session; top `n` by
/// rec_score, ties by head.
std::vector<ScoredRule> seed_recommendations(
    const ActiveSession& session, const RuleBase& rules, const PageWeightTable& weights,
    std::size_t n, DissimilarityForm form = DissimilarityForm::kSquareOfDoubled);

/// Seed heads plus every page sharing a cluster with a seed head, minus
/// the session's pages.
PageSet extend_with_clusters(std::span<const ScoredRule> seed, const Clustering& clustering,
                             const PageSet& session_pages);

/// Concatenated token counts of the session pages that have documents.
TermCounts session_query(const ActiveSession& session, const TfIdfIndex& index);

RecommendationSet recommend(const ActiveSession& session, const ModelBundle& model,
                            const RecommendOptions& options);

/// Rule-only ranking: the seed heads ordered by rec_score, first n.
RecommendationSet recommend_rules_only(const ActiveSession& session, const ModelBundle& model,
                                       const RecommendOptions& options);

/// Deterministic JSON rendering shared by the CLI and the HTTP service.
std::string to_json(const RecommendationSet& set);

}  // namespace warmrec
