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

#include "warmrec/warm.hpp"

#include <algorithm>
#include <bit>
#include <cassert>
#include <cstdint>
#include <set>
#include <tuple>

namespace warmrec {

namespace {

// Session-membership bitmap of one itemset.
class TidSet {
 public:
  explicit TidSet(std::size_t sessions) : words_((sessions + 63) / 64, 0) {}

  void set(std::size_t i) { words_[i / 64] |= std::uint64_t{1} << (i % 64); }

  TidSet intersect(const TidSet& other) const {
    TidSet out(0);
    out.words_.resize(words_.size());
    for (std::size_t w = 0; w < words_.size(); ++w) out.words_[w] = words_[w] & other.words_[w];
    return out;
  }

  std::size_t count() const {
    std::size_t n = 0;
    for (auto w : words_) n += static_cast<std::size_t>(std::popcount(w));
    return n;
  }

 private:
  std::vector<std::uint64_t> words_;
};

using Itemset = std::vector<std::size_t>;  // sorted page indices

struct Level {
  std::vector<Itemset> items;
  std::vector<TidSet> tids;
};

double weighted_support(std::size_t count, double weight_sum, std::size_t size,
                        std::size_t sessions) {
  double mean = weight_sum / static_cast<double>(size);
  return static_cast<double>(count) * mean / static_cast<double>(sessions);
}

}  // namespace

void MiningParams::validate() const {
  if (!(min_wsupport >= 0.0 && min_wsupport <= 1.0)) {
    throw ConfigError("min_wsupport must be in [0, 1]");
  }
  if (!(min_wconf >= 0.0 && min_wconf <= 1.0)) throw ConfigError("min_wconf must be in [0, 1]");
  if (max_itemset_size < 1) throw ConfigError("max_itemset_size must be positive");
}

double wsupport(const PageSet& itemset, const SessionLog& log, const PageWeightTable& weights) {
  if (itemset.empty()) throw ConfigError("wsupport of an empty itemset");
  if (log.sessions.empty()) return 0.0;
  std::size_t count = 0;
  for (const auto& s : log.sessions) {
    auto pages = s.pages();
    if (std::includes(pages.begin(), pages.end(), itemset.begin(), itemset.end())) ++count;
  }
  double sum = 0.0;
  for (const auto& p : itemset) sum += weights.weight(p);
  return weighted_support(count, sum, itemset.size(), log.sessions.size());
}

MiningResult mine_weighted_itemsets(const SessionLog& log, const PageWeightTable& weights,
                                    const MiningParams& params) {
  params.validate();
  MiningResult result;
  const std::size_t n_sessions = log.sessions.size();
  result.session_total = n_sessions;
  if (n_sessions == 0) return result;

  std::vector<Page> pages(log.page_universe.begin(), log.page_universe.end());
  std::map<Page, std::size_t> index;
  for (std::size_t i = 0; i < pages.size(); ++i) index[pages[i]] = i;

  std::vector<double> page_w(pages.size());
  double max_w = 0.0;
  for (std::size_t i = 0; i < pages.size(); ++i) {
    page_w[i] = weights.weight(pages[i]);
    max_w = std::max(max_w, page_w[i]);
  }
  // Slack keeps the bound valid against rounding in the mean.
  const double bound_w = max_w * (1.0 + 1e-12);

  std::vector<TidSet> page_tids(pages.size(), TidSet(n_sessions));
  for (std::size_t s = 0; s < n_sessions; ++s) {
    for (const auto& v : log.sessions[s].visits) page_tids[index.at(v.page)].set(s);
  }

  auto passes_bound = [&](std::size_t count) {
    if (count == 0) return false;
    double fraction = static_cast<double>(count) / static_cast<double>(n_sessions);
    return fraction * bound_w >= params.min_wsupport;
  };

  auto record = [&](const Itemset& items, std::size_t count) {
    WeightedItemset ws;
    double sum = 0.0;
    for (auto i : items) {
      ws.items.insert(pages[i]);
      sum += page_w[i];
    }
    ws.session_count = count;
    ws.wsupport = weighted_support(count, sum, items.size(), n_sessions);
    if (ws.wsupport >= params.min_wsupport) result.itemsets.push_back(ws);
    result.counted.emplace(ws.items, std::move(ws));
  };

  Level level;
  for (std::size_t i = 0; i < pages.size(); ++i) {
    std::size_t count = page_tids[i].count();
    if (!passes_bound(count)) continue;
    level.items.push_back({i});
    level.tids.push_back(page_tids[i]);
    record(level.items.back(), count);
  }

  for (std::size_t k = 1; k < params.max_itemset_size && level.items.size() > 1; ++k) {
    std::set<Itemset> survivors(level.items.begin(), level.items.end());
    Level next;
    // level.items is lexicographically sorted, so itemsets sharing a (k-1)
    // prefix are contiguous.
    for (std::size_t a = 0; a < level.items.size(); ++a) {
      const Itemset& left = level.items[a];
      for (std::size_t b = a + 1; b < level.items.size(); ++b) {
        const Itemset& right = level.items[b];
        if (!std::equal(left.begin(), left.end() - 1, right.begin())) break;
        Itemset cand = left;
        cand.push_back(right.back());

        bool closed = true;
        for (std::size_t drop = 0; drop + 2 < cand.size() && closed; ++drop) {
          Itemset sub;
          for (std::size_t j = 0; j < cand.size(); ++j) {
            if (j != drop) sub.push_back(cand[j]);
          }
          closed = survivors.contains(sub);
        }
        if (!closed) continue;

        TidSet tids = level.tids[a].intersect(page_tids[right.back()]);
        std::size_t count = tids.count();
        if (!passes_bound(count)) continue;
        record(cand, count);
        next.items.push_back(std::move(cand));
        next.tids.push_back(std::move(tids));
      }
    }
    level = std::move(next);
  }

  std::sort(result.itemsets.begin(), result.itemsets.end(),
            [](const WeightedItemset& a, const WeightedItemset& b) {
              return std::forward_as_tuple(a.items.size(), a.items) <
                     std::forward_as_tuple(b.items.size(), b.items);
            });
  return result;
}

bool rule_order(const WeightedRule& a, const WeightedRule& b) {
  if (a.wconf != b.wconf) return a.wconf > b.wconf;
  if (a.wsupport != b.wsupport) return a.wsupport > b.wsupport;
  if (a.body != b.body) return a.body < b.body;
  return a.head < b.head;
}

RuleBase generate_rules(const MiningResult& mined, const MiningParams& params) {
  params.validate();
  RuleBase base;
  for (const auto& z : mined.itemsets) {
    if (z.items.size() < 2) continue;
    for (const auto& head : z.items) {
      PageSet body = z.items;
      body.erase(head);
      auto it = mined.counted.find(body);
      // Every subset of a frequent itemset passes the anti-monotone bound.
      assert(it != mined.counted.end());
      if (it == mined.counted.end()) continue;
      const auto& b = it->second;
      assert(b.session_count >= z.session_count);
      if (b.wsupport <= 0.0) continue;
      double conf = std::min(1.0, z.wsupport / b.wsupport);
      if (conf < params.min_wconf) continue;
      base.rules.push_back(WeightedRule{std::move(body), head, z.wsupport, conf});
    }
  }
  std::sort(base.rules.begin(), base.rules.end(), rule_order);
  return base;
}

}  // namespace warmrec
