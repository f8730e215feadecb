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

#include "oracles.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace warmrec::oracle {

namespace {

bool contains_all(const PageSet& session, const PageSet& items) {
  return std::includes(session.begin(), session.end(), items.begin(), items.end());
}

std::vector<PageSet> session_sets(const SessionLog& log) {
  std::vector<PageSet> out;
  for (const auto& s : log.sessions) {
    PageSet p;
    for (const auto& v : s.visits) p.insert(v.page);
    out.push_back(std::move(p));
  }
  return out;
}

std::size_t count_containing(const std::vector<PageSet>& sessions, const PageSet& items) {
  return static_cast<std::size_t>(std::count_if(
      sessions.begin(), sessions.end(), [&](const PageSet& s) { return contains_all(s, items); }));
}

}  // namespace

std::map<PageSet, double> enumerate_weighted_itemsets(const SessionLog& log,
                                                      const std::map<Page, double>& weight,
                                                      std::size_t max_size) {
  const auto sessions = session_sets(log);
  PageSet universe;
  for (const auto& s : sessions) universe.insert(s.begin(), s.end());
  const std::vector<Page> pages(universe.begin(), universe.end());
  if (pages.size() > 20) throw std::invalid_argument("oracle limited to 20 pages");

  std::map<PageSet, double> out;
  for (std::uint32_t mask = 1; mask < (1u << pages.size()); ++mask) {
    PageSet items;
    for (std::size_t i = 0; i < pages.size(); ++i) {
      if (mask & (1u << i)) items.insert(pages[i]);
    }
    if (items.size() > max_size) continue;
    double total = 0.0;
    bool seen = false;
    for (const auto& s : sessions) {
      if (!contains_all(s, items)) continue;
      seen = true;
      double sum = 0.0;
      for (const auto& p : items) {
        auto it = weight.find(p);
        sum += it == weight.end() ? 0.0 : it->second;
      }
      total += sum / static_cast<double>(items.size());
    }
    if (seen) out[items] = total / static_cast<double>(sessions.size());
  }
  return out;
}

std::map<PageSet, double> filter_support(const std::map<PageSet, double>& all, double min_support) {
  std::map<PageSet, double> out;
  for (const auto& [items, s] : all) {
    if (s >= min_support) out[items] = s;
  }
  return out;
}

std::vector<Rule> enumerate_rules(const std::map<PageSet, double>& frequent,
                                  const std::map<PageSet, double>& all, double min_conf) {
  std::vector<Rule> out;
  for (const auto& [items, s] : frequent) {
    if (items.size() < 2) continue;
    for (const auto& head : items) {
      PageSet body = items;
      body.erase(head);
      const double sb = all.at(body);
      if (sb <= 0.0) continue;
      const double conf = std::min(1.0, s / sb);
      if (conf >= min_conf) out.push_back({body, head, s, conf});
    }
  }
  return out;
}

std::map<PageSet, double> classic_apriori(const SessionLog& log, double min_support,
                                          std::size_t max_size) {
  const auto sessions = session_sets(log);
  const double n = static_cast<double>(sessions.size());
  std::map<PageSet, double> frequent;

  std::vector<PageSet> level;
  PageSet universe;
  for (const auto& s : sessions) universe.insert(s.begin(), s.end());
  for (const auto& p : universe) {
    double sup = static_cast<double>(count_containing(sessions, {p})) / n;
    if (sup >= min_support) {
      frequent[{p}] = sup;
      level.push_back({p});
    }
  }
  for (std::size_t k = 2; k <= max_size && !level.empty(); ++k) {
    std::set<PageSet> candidates;
    for (std::size_t i = 0; i < level.size(); ++i) {
      for (std::size_t j = i + 1; j < level.size(); ++j) {
        PageSet u = level[i];
        u.insert(level[j].begin(), level[j].end());
        if (u.size() != k) continue;
        bool all_frequent = true;
        for (const auto& p : u) {
          PageSet sub = u;
          sub.erase(p);
          if (!frequent.contains(sub)) {
            all_frequent = false;
            break;
          }
        }
        if (all_frequent) candidates.insert(u);
      }
    }
    level.clear();
    for (const auto& c : candidates) {
      const std::size_t count = count_containing(sessions, c);
      double sup = static_cast<double>(count) / n;
      if (count > 0 && sup >= min_support) {
        frequent[c] = sup;
        level.push_back(c);
      }
    }
  }
  return frequent;
}

std::vector<Rule> classic_rules(const SessionLog& log, const std::map<PageSet, double>& frequent,
                                double min_conf) {
  const auto sessions = session_sets(log);
  std::vector<Rule> out;
  for (const auto& [items, s] : frequent) {
    if (items.size() < 2) continue;
    for (const auto& head : items) {
      PageSet body = items;
      body.erase(head);
      const double conf = static_cast<double>(count_containing(sessions, items)) /
                          static_cast<double>(count_containing(sessions, body));
      if (conf >= min_conf) out.push_back({body, head, s, conf});
    }
  }
  return out;
}

Eigen1 dominant_eigenvector(const Matrix& symmetric) {
  const auto n = static_cast<Eigen::Index>(symmetric.size());
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = symmetric[i][j];
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m);
  if (solver.info() != Eigen::Success) throw std::runtime_error("eigensolver failed");
  // eigenvalues come in increasing order
  Eigen::VectorXd v = solver.eigenvectors().col(n - 1);
  if (v.sum() < 0) v = -v;
  Eigen1 out;
  out.lambda1 = solver.eigenvalues()(n - 1);
  out.lambda2 = n > 1 ? solver.eigenvalues()(n - 2) : 0.0;
  double sum = v.sum();
  for (Eigen::Index i = 0; i < n; ++i) out.vector.push_back(v(i) / sum);
  return out;
}

Matrix transpose_times(const Matrix& a) {
  const std::size_t n = a.size();
  Matrix out(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) out[i][j] += a[k][i] * a[k][j];
  return out;
}

Matrix times_transpose(const Matrix& a) {
  const std::size_t n = a.size();
  Matrix out(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) out[i][j] += a[i][k] * a[j][k];
  return out;
}

double l1_distance(const std::vector<double>& a, const std::vector<double>& b) {
  if (a.size() != b.size()) throw std::invalid_argument("size mismatch");
  double d = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::abs(a[i] - b[i]);
  return d;
}

}  // namespace warmrec::oracle
