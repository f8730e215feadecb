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

// Reference implementations used to check the library. They share no code
// with it beyond plain data types and favour obviousness over speed.

#pragma once

#include <map>
#include <string>
#include <vector>

#include "warmrec/logparse.hpp"

namespace warmrec::oracle {

struct Rule {
  PageSet body;
  Page head;
  double support = 0.0;
  double confidence = 0.0;
};

/// Every itemset of size <= max_size over the log's pages that occurs in at
/// least one session, with support = sum over containing sessions of the
/// mean weight of its pages, divided by the session count.
std::map<PageSet, double> enumerate_weighted_itemsets(const SessionLog& log,
                                                      const std::map<Page, double>& weight,
                                                      std::size_t max_size);

/// Filters by min_support, then forms every single-head rule with
/// confidence min(1, s(Z) / s(Z - p)) >= min_conf (bodies with zero support
/// give no rule).
std::map<PageSet, double> filter_support(const std::map<PageSet, double>& all, double min_support);
std::vector<Rule> enumerate_rules(const std::map<PageSet, double>& frequent,
                                  const std::map<PageSet, double>& all, double min_conf);

/// Textbook Apriori with unweighted counts: level-wise join, full subset
/// prune. Returns frequent itemsets and their support fractions.
std::map<PageSet, double> classic_apriori(const SessionLog& log, double min_support,
                                          std::size_t max_size);
std::vector<Rule> classic_rules(const SessionLog& log, const std::map<PageSet, double>& frequent,
                                double min_conf);

using Matrix = std::vector<std::vector<double>>;

/// Eigenvector of the largest eigenvalue of a symmetric matrix, made
/// nonnegative and scaled to sum 1, via a dense self-adjoint solver. Also
/// reports the two largest eigenvalues.
struct Eigen1 {
  std::vector<double> vector;
  double lambda1 = 0.0;
  double lambda2 = 0.0;
};
Eigen1 dominant_eigenvector(const Matrix& symmetric);

Matrix transpose_times(const Matrix& a);  // A^t A
Matrix times_transpose(const Matrix& a);  // A A^t

double l1_distance(const std::vector<double>& a, const std::vector<double>& b);

}  // namespace warmrec::oracle
