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

// Offline precision / coverage evaluation over held-out sessions.

#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "warmrec/recommender.hpp"

namespace warmrec {

struct EvalCase {
  std::string session_id;
  std::vector<Page> observed_prefix;
  PageSet holdout;  // disjoint from the prefix pages
};

/// Observes the first floor(len * prefix_fraction) visits (at least one, at
/// most len - 1); the remaining pages not already observed form the holdout.
/// Sessions that would yield an empty holdout are skipped.
std::vector<EvalCase> make_eval_cases(const SessionLog& log, double prefix_fraction);

/// |relevant n recommended| / |recommended|; nullopt if nothing recommended.
std::optional<double> precision(const PageSet& recommended, const PageSet& relevant);

/// |relevant n recommended| / |relevant|; nullopt if nothing is relevant.
std::optional<double> coverage(const PageSet& recommended, const PageSet& relevant);

enum class EvalMode { kHybrid, kRulesOnly };

struct EvalRow {
  std::size_t n = 0;
  double precision_pct = 0.0;
  double coverage_pct = 0.0;
  std::size_t precision_cases = 0;  // cases with a defined precision
  std::size_t coverage_cases = 0;

  bool operator==(const EvalRow&) const = default;
};

struct EvalCaseDetail {
  std::string session_id;
  std::size_t n = 0;
  std::vector<Page> recommended;
  std::size_t hits = 0;
  std::optional<double> precision;
  std::optional<double> coverage;

  bool operator==(const EvalCaseDetail&) const = default;
};

struct EvalReport {
  std::vector<EvalRow> rows;
  std::vector<EvalCaseDetail> details;
  std::size_t case_count = 0;

  bool operator==(const EvalReport&) const = default;
};

/// For each case the ranking is computed once at max(n_values); each n uses
/// its length-n prefix. Throws ConfigError on empty cases or n_values.
EvalReport evaluate(const ModelBundle& model, std::span<const EvalCase> cases,
                    std::span<const std::size_t> n_values, EvalMode mode = EvalMode::kHybrid);

/// `n,precision_pct,coverage_pct` with a header line.
std::string report_to_csv(const EvalReport& report);
std::string report_to_json(const EvalReport& report);

}  // namespace warmrec
