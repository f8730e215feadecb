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

#include "warmrec/eval.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace warmrec {

namespace {

std::size_t intersection_size(const PageSet& a, const PageSet& b) {
  std::size_t n = 0;
  for (const auto& p : a) n += b.contains(p) ? 1 : 0;
  return n;
}

}  // namespace

std::vector<EvalCase> make_eval_cases(const SessionLog& log, double prefix_fraction) {
  if (!(prefix_fraction > 0.0 && prefix_fraction < 1.0)) {
    throw ConfigError("prefix_fraction must be in (0, 1)");
  }
  std::vector<EvalCase> cases;
  for (const auto& s : log.sessions) {
    const std::size_t len = s.visits.size();
    if (len < 2) continue;
    auto k = static_cast<std::size_t>(std::floor(static_cast<double>(len) * prefix_fraction));
    k = std::clamp<std::size_t>(k, 1, len - 1);
    EvalCase c;
    c.session_id = s.session_id;
    PageSet seen;
    for (std::size_t i = 0; i < k; ++i) {
      c.observed_prefix.push_back(s.visits[i].page);
      seen.insert(s.visits[i].page);
    }
    for (std::size_t i = k; i < len; ++i) {
      if (!seen.contains(s.visits[i].page)) c.holdout.insert(s.visits[i].page);
    }
    if (!c.holdout.empty()) cases.push_back(std::move(c));
  }
  return cases;
}

std::optional<double> precision(const PageSet& recommended, const PageSet& relevant) {
  if (recommended.empty()) return std::nullopt;
  return static_cast<double>(intersection_size(recommended, relevant)) /
         static_cast<double>(recommended.size());
}

std::optional<double> coverage(const PageSet& recommended, const PageSet& relevant) {
  if (relevant.empty()) return std::nullopt;
  return static_cast<double>(intersection_size(recommended, relevant)) /
         static_cast<double>(relevant.size());
}

EvalReport evaluate(const ModelBundle& model, std::span<const EvalCase> cases,
                    std::span<const std::size_t> n_values, EvalMode mode) {
  if (cases.empty()) throw ConfigError("no evaluation cases");
  if (n_values.empty()) throw ConfigError("no n values");
  if (std::find(n_values.begin(), n_values.end(), std::size_t{0}) != n_values.end()) {
    throw ConfigError("n values must be positive");
  }
  const std::size_t max_n = *std::max_element(n_values.begin(), n_values.end());

  auto options = RecommendOptions::from_config(model.params);
  options.n = max_n;

  std::vector<std::vector<Page>> rankings;
  rankings.reserve(cases.size());
  for (const auto& c : cases) {
    auto session = ActiveSession::from_pages(c.observed_prefix, model.page_weights);
    auto set = mode == EvalMode::kHybrid ? recommend(session, model, options)
                                         : recommend_rules_only(session, model, options);
    rankings.push_back(set.pages());
  }

  EvalReport report;
  report.case_count = cases.size();
  for (std::size_t n : n_values) {
    EvalRow row;
    row.n = n;
    double precision_sum = 0.0, coverage_sum = 0.0;
    for (std::size_t i = 0; i < cases.size(); ++i) {
      const auto& ranking = rankings[i];
      EvalCaseDetail d;
      d.session_id = cases[i].session_id;
      d.n = n;
      d.recommended.assign(ranking.begin(), ranking.begin() + std::min(n, ranking.size()));
      PageSet rec(d.recommended.begin(), d.recommended.end());
      d.hits = intersection_size(rec, cases[i].holdout);
      d.precision = precision(rec, cases[i].holdout);
      d.coverage = coverage(rec, cases[i].holdout);
      if (d.precision) {
        precision_sum += *d.precision;
        ++row.precision_cases;
      }
      if (d.coverage) {
        coverage_sum += *d.coverage;
        ++row.coverage_cases;
      }
      report.details.push_back(std::move(d));
    }
    if (row.precision_cases > 0) {
      row.precision_pct = 100.0 * precision_sum / static_cast<double>(row.precision_cases);
    }
    if (row.coverage_cases > 0) {
      row.coverage_pct = 100.0 * coverage_sum / static_cast<double>(row.coverage_cases);
    }
    report.rows.push_back(row);
  }
  return report;
}

std::string report_to_csv(const EvalReport& report) {
  std::ostringstream out;
  out << "n,precision_pct,coverage_pct\n";
  for (const auto& r : report.rows) {
    out << r.n << ',' << nlohmann::json(r.precision_pct).dump() << ','
        << nlohmann::json(r.coverage_pct).dump() << '\n';
  }
  return out.str();
}

std::string report_to_json(const EvalReport& report) {
  using json = nlohmann::json;
  json rows = json::array();
  for (const auto& r : report.rows) {
    rows.push_back({{"n", r.n},
                    {"precision_pct", r.precision_pct},
                    {"coverage_pct", r.coverage_pct},
                    {"precision_cases", r.precision_cases},
                    {"coverage_cases", r.coverage_cases},
                    {"excluded_precision", report.case_count - r.precision_cases},
                    {"excluded_coverage", report.case_count - r.coverage_cases}});
  }
  json details = json::array();
  for (const auto& d : report.details) {
    details.push_back({{"session_id", d.session_id},
                       {"n", d.n},
                       {"recommended", d.recommended},
                       {"hits", d.hits},
                       {"precision", d.precision ? json(*d.precision) : json(nullptr)},
                       {"coverage", d.coverage ? json(*d.coverage) : json(nullptr)}});
  }
  return json{{"case_count", report.case_count}, {"rows", std::move(rows)},
              {"details", std::move(details)}}
      .dump(2);
}

}  // namespace warmrec
