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

#include "warmrec/pageweight.hpp"

#include <algorithm>

namespace warmrec {

double PageWeightTable::weight(const Page& page) const {
  auto it = scores_.find(page);
  return it == scores_.end() ? 0.0 : it->second.weight;
}

double PageWeightTable::max_weight() const {
  double best = 0.0;
  for (const auto& [_, s] : scores_) best = std::max(best, s.weight);
  return best;
}

std::map<Page, double> duration_score(const PageStatsMap& stats) {
  if (stats.empty()) throw DataError("empty usage data");
  std::map<Page, double> ratio;
  double max_ratio = 0.0;
  for (const auto& [page, st] : stats) {
    double r = st.total_dwell_seconds / static_cast<double>(std::max<std::int64_t>(st.size_bytes, 1));
    ratio[page] = r;
    max_ratio = std::max(max_ratio, r);
  }
  for (auto& [_, r] : ratio) r = max_ratio > 0.0 ? r / max_ratio : 0.0;
  return ratio;
}

std::map<Page, double> frequency_score(const PageStatsMap& stats) {
  std::size_t total = 0;
  for (const auto& [_, st] : stats) total += st.visit_count;
  if (total == 0) throw DataError("empty usage data");
  std::map<Page, double> out;
  for (const auto& [page, st] : stats) {
    double share = static_cast<double>(st.visit_count) / static_cast<double>(total);
    out[page] = share / static_cast<double>(std::max<std::size_t>(st.indegree, 1));
  }
  return out;
}

double page_weight(double frequency, double duration) {
  double denom = frequency + duration;
  if (denom <= 0.0) return 0.0;
  return 2.0 * frequency * duration / denom;
}

PageWeightTable compute_page_weights(const PageStatsMap& stats) {
  auto freq = frequency_score(stats);
  auto dur = duration_score(stats);
  std::map<Page, PageScore> scores;
  for (const auto& [page, _] : stats) {
    double f = freq.at(page);
    double d = dur.at(page);
    scores[page] = PageScore{d, f, page_weight(f, d)};
  }
  return PageWeightTable(std::move(scores));
}

}  // namespace warmrec
