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

// Weighted association rule mining (weight-extended Apriori).
//
// Weighted support of an itemset X over N sessions:
//
//   wsupport(X) = sum_{s contains X} mean_{p in X} weight(p) / N
//               = fraction(X) * mean_weight(X)
//
// Mean weight is not anti-monotone, so level-wise pruning uses the bound
// fraction(X) * max_weight, which is. Exact thresholds are applied after
// counting.

#pragma once

#include <cstddef>
#include <map>
#include <vector>

#include "warmrec/logparse.hpp"
#include "warmrec/pageweight.hpp"

namespace warmrec {

struct MiningParams {
  double min_wsupport = 0.1;
  double min_wconf = 0.5;
  std::size_t max_itemset_size = 5;

  /// Thresholds must lie in [0, 1]; max_itemset_size >= 1.
  void validate() const;
  bool operator==(const MiningParams&) const = default;
};

struct WeightedItemset {
  PageSet items;
  std::size_t session_count = 0;
  double wsupport = 0.0;

  bool operator==(const WeightedItemset&) const = default;
};

struct MiningResult {
  /// Itemsets with wsupport >= min_wsupport, ordered by (size, items).
  std::vector<WeightedItemset> itemsets;
  /// Every candidate that survived the bound prune, keyed by items. Contains
  /// all subsets of every frequent itemset.
  std::map<PageSet, WeightedItemset> counted;
  std::size_t session_total = 0;
};

struct WeightedRule {
  PageSet body;
  Page head;
  double wsupport = 0.0;  // of body + head
  double wconf = 0.0;

  bool operator==(const WeightedRule&) const = default;
};

struct RuleBase {
  /// Sorted by (wconf desc, wsupport desc, body, head).
  std::vector<WeightedRule> rules;

  bool operator==(const RuleBase&) const = default;
};

/// Weighted support of a single itemset by direct scan of the log.
double wsupport(const PageSet& itemset, const SessionLog& log, const PageWeightTable& weights);

MiningResult mine_weighted_itemsets(const SessionLog& log, const PageWeightTable& weights,
                                    const MiningParams& params);

/// Emits (Z \ {p}) => p for every mined Z with |Z| >= 2 and p in Z, with
/// wconf = min(1, wsupport(Z) / wsupport(Z \ {p})). Bodies of zero weighted
/// support produce no rule.
RuleBase generate_rules(const MiningResult& mined, const MiningParams& params);

/// Canonical rule order used by RuleBase.
bool rule_order(const WeightedRule& a, const WeightedRule& b);

}  // namespace warmrec
