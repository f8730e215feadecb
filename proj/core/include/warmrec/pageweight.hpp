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

// Quantitative page weights from dwell time and visit frequency.
//
//   duration(p)  = (dwell(p)/size(p)) / max_q (dwell(q)/size(q))
//   frequency(p) = visits(p) / sum_q visits(q) / indegree(p)
//   weight(p)    = 2 f d / (f + d)        (harmonic mean, 0 when f + d = 0)

#pragma once

#include <map>

#include "warmrec/logparse.hpp"

namespace warmrec {

struct PageScore {
  double duration = 0.0;
  double frequency = 0.0;
  double weight = 0.0;

  bool operator==(const PageScore&) const = default;
};

class PageWeightTable {
 public:
  PageWeightTable() = default;
  explicit PageWeightTable(std::map<Page, PageScore> scores) : scores_(std::move(scores)) {}

  /// Weight of `page`, 0 for unknown pages.
  double weight(const Page& page) const;
  bool contains(const Page& page) const { return scores_.contains(page); }
  const std::map<Page, PageScore>& scores() const { return scores_; }
  std::size_t size() const { return scores_.size(); }
  /// Largest weight over all pages (0 for an empty table).
  double max_weight() const;

  bool operator==(const PageWeightTable&) const = default;

 private:
  std::map<Page, PageScore> scores_;
};

using PageStatsMap = std::map<Page, PageStats>;

/// Throws DataError on empty stats.
std::map<Page, double> duration_score(const PageStatsMap& stats);

/// Throws DataError("empty usage data") when the total visit count is 0.
std::map<Page, double> frequency_score(const PageStatsMap& stats);

double page_weight(double frequency, double duration);

PageWeightTable compute_page_weights(const PageStatsMap& stats);

}  // namespace warmrec
