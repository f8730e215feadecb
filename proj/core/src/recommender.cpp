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

#include "warmrec/recommender.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"

namespace warmrec {

namespace {

using json = nlohmann::json;

bool by_final_score(const Recommendation& a, const Recommendation& b) {
  if (a.final_score != b.final_score) return a.final_score > b.final_score;
  return a.page < b.page;
}

}  // namespace

ActiveSession ActiveSession::from_pages(std::span<const Page> pages,
                                        const PageWeightTable& weights) {
  ActiveSession s;
  for (const auto& raw : pages) {
    Page page = normalize_url(raw);
    if (page.empty()) continue;
    s.visited.insert(page);
    if (!weights.contains(page)) {
      if (std::find(s.unknown_pages.begin(), s.unknown_pages.end(), page) ==
          s.unknown_pages.end()) {
        s.unknown_pages.push_back(page);
      }
      continue;
    }
    s.pages.push_back(page);
    double w = weights.weight(page);
    if (w > 0.0) s.weights[page] = w;
  }
  return s;
}

double ActiveSession::weight(const Page& page) const {
  auto it = weights.find(page);
  return it == weights.end() ? 0.0 : it->second;
}

const char* to_string(Provenance p) {
  return p == Provenance::kSeed ? "seed" : "cluster-extension";
}

std::vector<Page> RecommendationSet::pages() const {
  std::vector<Page> out;
  out.reserve(items.size());
  for (const auto& r : items) out.push_back(r.page);
  return out;
}

RecommendOptions RecommendOptions::from_config(const Config& config) {
  RecommendOptions o;
  o.n = config.top_n;
  o.seed_size = config.seed_size;
  o.fusion = config.fusion;
  o.hits.tolerance = config.hits_tolerance;
  o.hits.max_iterations = config.hits_max_iterations;
  return o;
}

double dissimilarity(const ActiveSession& session, const WeightedRule& rule,
                     const PageWeightTable& weights, DissimilarityForm form) {
  double d = 0.0;
  for (const auto& page : rule.body) {
    double s = session.weight(page);
    double r = weights.weight(page);
    double denom = s + r;
    if (denom <= 0.0) continue;
    double diff = s - r;
    double numer = form == DissimilarityForm::kSquareOfDoubled ? (2.0 * diff) * (2.0 * diff)
                                                               : 2.0 * diff * diff;
    d += numer / denom;
  }
  return d;
}

double match_score(const ActiveSession& session, const WeightedRule& rule,
                   const PageWeightTable& weights, DissimilarityForm form) {
  if (rule.body.empty()) throw ConfigError("match_score of a rule with an empty body");
  double d = dissimilarity(session, rule, weights, form);
  double m = static_cast<double>(rule.body.size());
  return std::clamp(1.0 - std::sqrt(d / m) / 4.0, 0.0, 1.0);
}

std::vector<ScoredRule> seed_recommendations(const ActiveSession& session, const RuleBase& rules,
                                             const PageWeightTable& weights, std::size_t n,
                                             DissimilarityForm form) {
  if (n == 0) throw ConfigError("seed size must be positive");
  std::map<Page, ScoredRule> best;
  for (const auto& rule : rules.rules) {
    if (session.visited.contains(rule.head)) continue;
    double m = match_score(session, rule, weights, form);
    ScoredRule scored{rule, m, m * rule.wconf};
    auto [it, inserted] = best.emplace(rule.head, scored);
    // Strictly greater keeps the earliest rule in RuleBase order on ties.
    if (!inserted && scored.rec_score > it->second.rec_score) it->second = std::move(scored);
  }
  std::vector<ScoredRule> out;
  out.reserve(best.size());
  for (auto& [_, s] : best) out.push_back(std::move(s));
  std::stable_sort(out.begin(), out.end(), [](const ScoredRule& a, const ScoredRule& b) {
    if (a.rec_score != b.rec_score) return a.rec_score > b.rec_score;
    return a.rule.head < b.rule.head;
  });
  if (out.size() > n) out.resize(n);
  return out;
}

PageSet extend_with_clusters(std::span<const ScoredRule> seed, const Clustering& clustering,
                             const PageSet& session_pages) {
  PageSet out;
  for (const auto& s : seed) {
    out.insert(s.rule.head);
    auto mates = clustering.cluster_of(s.rule.head);
    out.insert(mates.begin(), mates.end());
  }
  for (const auto& p : session_pages) out.erase(p);
  return out;
}

TermCounts session_query(const ActiveSession& session, const TfIdfIndex& index) {
  TermCounts query;
  for (const auto& page : session.pages) {
    if (const auto* terms = index.terms_of(page)) {
      for (const auto& [term, count] : *terms) query[term] += count;
    }
  }
  return query;
}

RecommendationSet recommend(const ActiveSession& session, const ModelBundle& model,
                            const RecommendOptions& options) {
  if (options.n == 0) throw ConfigError("n must be positive");
  RecommendationSet out;
  auto& trace = out.trace;
  trace.unknown_pages = session.unknown_pages;
  for (const auto& p : session.unknown_pages) {
    trace.diagnostics.push_back("unknown page ignored: " + p);
  }

  trace.seed = seed_recommendations(session, model.rules, model.page_weights,
                                    options.seed_count(), options.form);
  if (model.rules.rules.empty()) trace.diagnostics.push_back("empty rule base");

  PageSet candidates = extend_with_clusters(trace.seed, model.clustering, session.visited);
  trace.candidates.assign(candidates.begin(), candidates.end());
  if (candidates.empty()) {
    trace.diagnostics.push_back("empty candidate set");
    return out;
  }

  auto graph = build_candidate_graph(candidates, model.sitemap);
  auto hits = hits_iterate(graph, options.hits);
  trace.graph_edges = graph.edge_count();
  trace.hits_iterations = hits.iterations_used;
  trace.hits_converged = hits.converged;
  trace.primitive = hits.primitive;
  trace.dominant_eigenvalue = hits.dominant_eigenvalue_estimate;

  // A graph without edges carries no link information: hub component 0.
  double max_hub = 0.0;
  if (graph.edge_count() > 0) {
    max_hub = *std::max_element(hits.hub.begin(), hits.hub.end());
  } else {
    trace.diagnostics.push_back("candidate graph has no links");
  }

  const auto& nodes = graph.nodes();
  auto query = session_query(session, model.tfidf);
  auto text = tfidf_scores(model.tfidf, nodes, query);

  std::map<Page, double> seed_rec;
  for (const auto& s : trace.seed) seed_rec[s.rule.head] = s.rec_score;

  out.items.reserve(nodes.size());
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    Recommendation r;
    r.page = nodes[i];
    auto it = seed_rec.find(r.page);
    r.provenance = it == seed_rec.end() ? Provenance::kClusterExtension : Provenance::kSeed;
    r.rec_score = it == seed_rec.end() ? 0.0 : it->second;
    r.hub_score = max_hub > 0.0 ? hits.hub[i] / max_hub : 0.0;
    r.authority_score = hits.authority[i];
    r.text_score = text[i];
    r.has_text = model.tfidf.has_document(r.page);
    r.final_score = options.fusion.hub * r.hub_score + options.fusion.text * r.text_score +
                    options.fusion.rec * r.rec_score;
    out.items.push_back(std::move(r));
  }
  std::sort(out.items.begin(), out.items.end(), by_final_score);
  if (out.items.size() > options.n) out.items.resize(options.n);
  return out;
}

RecommendationSet recommend_rules_only(const ActiveSession& session, const ModelBundle& model,
                                       const RecommendOptions& options) {
  if (options.n == 0) throw ConfigError("n must be positive");
  RecommendationSet out;
  out.trace.unknown_pages = session.unknown_pages;
  out.trace.seed = seed_recommendations(session, model.rules, model.page_weights,
                                        std::max(options.seed_count(), options.n), options.form);
  for (const auto& s : out.trace.seed) {
    out.trace.candidates.push_back(s.rule.head);
    if (out.items.size() >= options.n) continue;
    Recommendation r;
    r.page = s.rule.head;
    r.rec_score = s.rec_score;
    r.final_score = s.rec_score;
    r.has_text = model.tfidf.has_document(r.page);
    out.items.push_back(std::move(r));
  }
  std::sort(out.trace.candidates.begin(), out.trace.candidates.end());
  if (out.items.empty()) out.trace.diagnostics.push_back("empty candidate set");
  return out;
}

std::string to_json(const RecommendationSet& set) {
  json items = json::array();
  for (const auto& r : set.items) {
    items.push_back({{"page", r.page},
                     {"final_score", r.final_score},
                     {"rec_score", r.rec_score},
                     {"hub_score", r.hub_score},
                     {"authority_score", r.authority_score},
                     {"text_score", r.text_score},
                     {"provenance", to_string(r.provenance)},
                     {"has_text", r.has_text}});
  }
  json seed = json::array();
  for (const auto& s : set.trace.seed) {
    seed.push_back({{"body", s.rule.body},
                    {"head", s.rule.head},
                    {"wconf", s.rule.wconf},
                    {"wsupport", s.rule.wsupport},
                    {"match_score", s.match_score},
                    {"rec_score", s.rec_score}});
  }
  json trace = {
      {"seed", std::move(seed)},
      {"candidates", set.trace.candidates},
      {"graph_edges", set.trace.graph_edges},
      {"hits_iterations", set.trace.hits_iterations},
      {"hits_converged", set.trace.hits_converged},
      {"primitive", to_string(set.trace.primitive)},
      {"dominant_eigenvalue", set.trace.dominant_eigenvalue},
      {"unknown_pages", set.trace.unknown_pages},
      {"diagnostics", set.trace.diagnostics},
  };
  return json{{"recommendations", std::move(items)}, {"trace", std::move(trace)}}.dump(2);
}

}  // namespace warmrec
