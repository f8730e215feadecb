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

// Seeded generator of usage logs, site maps and page texts with known
// structure, for fixtures and end-to-end checks.

#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "warmrec/logparse.hpp"

namespace warmrec {

struct RuleBlueprint {
  PageSet body;
  Page head;
  /// Chance that a session containing the body also gets the head.
  double probability = 1.0;
};

struct SynthSpec {
  /// Co-visit groups. Each session draws one group and visits a subset.
  std::vector<std::vector<Page>> cluster_blueprint;
  std::vector<RuleBlueprint> rule_blueprint;
  /// Extra terms injected into a page's text. Group pages also get their
  /// group's topic terms.
  std::map<Page, std::vector<std::string>> text_blueprint;
  /// Pages present in the site and corpus but never visited, mapped to the
  /// group whose links and topic they share.
  std::map<Page, std::size_t> cold_pages;
  /// Total page count; pages beyond the named ones are "/bgNNN" background
  /// pages reachable only through noise.
  std::size_t page_count = 0;
  std::size_t session_count = 100;
  double noise = 0.0;
  double visit_probability = 0.7;
  std::size_t min_session_length = 2;
  double link_probability = 0.3;
  std::size_t topic_terms_per_group = 4;
  std::uint64_t rng_seed = 1;

  /// Throws ConfigError on inconsistent blueprints.
  void validate() const;
};

/// `group_count` groups of `group_size` pages named "/g<i>/p<j>".
std::vector<std::vector<Page>> make_groups(std::size_t group_count, std::size_t group_size);

struct GroundTruth {
  std::vector<RuleBlueprint> rules;
  std::vector<PageSet> clusters;
  /// Session id -> pages of the group the session was drawn from.
  std::map<std::string, PageSet> relevance;
  /// Group index -> topic terms.
  std::vector<std::vector<std::string>> topic_terms;
};

struct SynthOutput {
  SessionLog log;
  SiteMap site;
  std::map<Page, std::string> texts;
  GroundTruth truth;
};

SynthOutput generate(const SynthSpec& spec);

/// JSON spec: groups | (group_count, group_size), rules, text, cold_pages,
/// page_count, session_count, noise, visit_probability, min_session_length,
/// link_probability, topic_terms_per_group, rng_seed.
SynthSpec parse_synth_spec(std::string_view json_text);

std::string ground_truth_to_json(const GroundTruth& truth);
std::string texts_to_json(const std::map<Page, std::string>& texts);

/// Writes log.csv, sitemap.json, docs.json and ground_truth.json into `dir`.
void write_synth_output(const SynthOutput& out, const std::string& dir);

}  // namespace warmrec
