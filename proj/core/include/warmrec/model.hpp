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

// Configuration, offline training and the persisted model bundle.

#pragma once

#include <string>
#include <string_view>

#include "warmrec/cluster.hpp"
#include "warmrec/hits.hpp"
#include "warmrec/logparse.hpp"
#include "warmrec/pageweight.hpp"
#include "warmrec/textmine.hpp"
#include "warmrec/warm.hpp"

namespace warmrec {

inline constexpr int kModelFormatVersion = 1;

/// Weights of the final score: hub * w.hub + text * w.text + rec * w.rec.
struct FusionWeights {
  double hub = 1.0 / 3.0;
  double text = 1.0 / 3.0;
  double rec = 1.0 / 3.0;

  bool operator==(const FusionWeights&) const = default;
};

struct Config {
  double session_timeout_seconds = kDefaultSessionTimeoutSeconds;
  MiningParams mining;
  double cluster_threshold = kDefaultClusterThreshold;
  double hits_tolerance = kDefaultHitsTolerance;
  std::size_t hits_max_iterations = kDefaultHitsMaxIterations;
  FusionWeights fusion;
  std::size_t top_n = 5;
  /// Number of rule heads forming the seed set; 0 means the requested n.
  std::size_t seed_size = 0;
  /// Fraction of each evaluation session that is observed.
  double prefix_fraction = 0.5;

  /// Throws ConfigError naming the first offending field.
  void validate() const;
  bool operator==(const Config&) const = default;
};

/// Parses a JSON config object; absent keys keep their defaults, unknown keys
/// are rejected. Throws ConfigError.
Config parse_config(std::string_view json_text, Config base = {});
std::string config_to_json(const Config& config);

struct ModelBundle {
  int format_version = kModelFormatVersion;
  Config params;
  PageWeightTable page_weights;
  RuleBase rules;
  Clustering clustering;
  SiteMap sitemap;
  TfIdfIndex tfidf;
  std::size_t session_count = 0;

  bool operator==(const ModelBundle&) const = default;
};

/// Runs page statistics, page weights, rule mining, clustering and text
/// indexing. Throws DataError("empty usage data") without sessions.
ModelBundle train_model(const SessionLog& log, const SiteMap& site, const DocumentCorpus& corpus,
                        const Config& config);

/// Versioned JSON. Output is deterministic for equal bundles.
std::string serialize_model(const ModelBundle& model);
/// Throws DataError on malformed input or a format version mismatch.
ModelBundle deserialize_model(std::string_view json_text);

void save_model(const ModelBundle& model, const std::string& path);
ModelBundle load_model(const std::string& path);

}  // namespace warmrec
