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

#include "warmrec/model.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "json.hpp"

namespace warmrec {

namespace {

using json = nlohmann::json;

json config_json(const Config& c) {
  return {
      {"session_timeout_seconds", c.session_timeout_seconds},
      {"min_wsupport", c.mining.min_wsupport},
      {"min_wconf", c.mining.min_wconf},
      {"max_itemset_size", c.mining.max_itemset_size},
      {"cluster_threshold", c.cluster_threshold},
      {"hits_tolerance", c.hits_tolerance},
      {"hits_max_iterations", c.hits_max_iterations},
      {"fusion_weights", {c.fusion.hub, c.fusion.text, c.fusion.rec}},
      {"top_n", c.top_n},
      {"seed_size", c.seed_size},
      {"prefix_fraction", c.prefix_fraction},
  };
}

template <typename T>
T number_field(const json& j, const char* key) {
  const auto& v = j.at(key);
  if (!v.is_number()) throw ConfigError(std::string(key) + " must be a number");
  if constexpr (std::is_integral_v<T>) {
    if (!v.is_number_integer() || v.get<long long>() < 0) {
      throw ConfigError(std::string(key) + " must be a nonnegative integer");
    }
  }
  return v.get<T>();
}

Config config_from(const json& j, Config c) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  for (const auto& [key, value] : j.items()) {
    if (key == "session_timeout_seconds") {
      c.session_timeout_seconds = number_field<double>(j, "session_timeout_seconds");
    } else if (key == "min_wsupport") {
      c.mining.min_wsupport = number_field<double>(j, "min_wsupport");
    } else if (key == "min_wconf") {
      c.mining.min_wconf = number_field<double>(j, "min_wconf");
    } else if (key == "max_itemset_size") {
      c.mining.max_itemset_size = number_field<std::size_t>(j, "max_itemset_size");
    } else if (key == "cluster_threshold") {
      c.cluster_threshold = number_field<double>(j, "cluster_threshold");
    } else if (key == "hits_tolerance") {
      c.hits_tolerance = number_field<double>(j, "hits_tolerance");
    } else if (key == "hits_max_iterations") {
      c.hits_max_iterations = number_field<std::size_t>(j, "hits_max_iterations");
    } else if (key == "fusion_weights") {
      if (!value.is_array() || value.size() != 3 ||
          !std::all_of(value.begin(), value.end(), [](const json& x) { return x.is_number(); })) {
        throw ConfigError("fusion_weights must be an array of three numbers [hub, text, rec]");
      }
      c.fusion = {value[0].get<double>(), value[1].get<double>(), value[2].get<double>()};
    } else if (key == "top_n") {
      c.top_n = number_field<std::size_t>(j, "top_n");
    } else if (key == "seed_size") {
      c.seed_size = number_field<std::size_t>(j, "seed_size");
    } else if (key == "prefix_fraction") {
      c.prefix_fraction = number_field<double>(j, "prefix_fraction");
    } else {
      throw ConfigError("unknown config key '" + key + "'");
    }
  }
  c.validate();
  return c;
}

json sitemap_json(const SiteMap& site) { return json::parse(sitemap_to_json(site)); }

template <typename T>
T get_or_throw(const json& j, const char* key) {
  if (!j.contains(key)) throw DataError(std::string("model: missing field '") + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw DataError(std::string("model: bad field '") + key + "': " + e.what());
  }
}

}  // namespace

void Config::validate() const {
  if (!(session_timeout_seconds > 0.0)) throw ConfigError("session_timeout_seconds must be > 0");
  mining.validate();
  if (!(cluster_threshold >= 0.0 && cluster_threshold <= 1.0)) {
    throw ConfigError("cluster_threshold must be in [0, 1]");
  }
  if (!(hits_tolerance > 0.0)) throw ConfigError("hits_tolerance must be > 0");
  if (hits_max_iterations < 1) throw ConfigError("hits_max_iterations must be >= 1");
  if (!(fusion.hub >= 0.0 && fusion.text >= 0.0 && fusion.rec >= 0.0)) {
    throw ConfigError("fusion_weights must be nonnegative");
  }
  if (std::abs(fusion.hub + fusion.text + fusion.rec - 1.0) > 1e-9) {
    throw ConfigError("fusion_weights must sum to 1");
  }
  if (top_n < 1) throw ConfigError("top_n must be >= 1");
  if (!(prefix_fraction > 0.0 && prefix_fraction < 1.0)) {
    throw ConfigError("prefix_fraction must be in (0, 1)");
  }
}

Config parse_config(std::string_view json_text, Config base) {
  json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded()) throw ConfigError("config is not valid JSON");
  return config_from(j, std::move(base));
}

std::string config_to_json(const Config& config) { return config_json(config).dump(2); }

ModelBundle train_model(const SessionLog& log, const SiteMap& site, const DocumentCorpus& corpus,
                        const Config& config) {
  config.validate();
  if (log.sessions.empty()) throw DataError("empty usage data");

  ModelBundle model;
  model.params = config;
  model.sitemap = site;
  model.session_count = log.sessions.size();
  model.page_weights = compute_page_weights(page_stats(log, site));

  auto mined = mine_weighted_itemsets(log, model.page_weights, config.mining);
  model.rules = generate_rules(mined, config.mining);

  PageSet universe = log.page_universe;
  universe.insert(site.pages.begin(), site.pages.end());
  auto vectors = build_usage_vectors(log, model.page_weights, universe);
  model.clustering = agglomerative_cluster(vectors, config.cluster_threshold);

  model.tfidf = build_index(corpus);
  return model;
}

std::string serialize_model(const ModelBundle& model) {
  json weights = json::object();
  for (const auto& [page, s] : model.page_weights.scores()) {
    weights[page] = {{"duration", s.duration}, {"frequency", s.frequency}, {"weight", s.weight}};
  }
  json rules = json::array();
  for (const auto& r : model.rules.rules) {
    rules.push_back({{"body", r.body}, {"head", r.head}, {"wsupport", r.wsupport},
                     {"wconf", r.wconf}});
  }
  json clusters = json::array();
  for (const auto& c : model.clustering.clusters) clusters.push_back(c);
  json docs = json::object();
  for (const auto& [page, counts] : model.tfidf.corpus().docs) docs[page] = counts;

  json out = {
      {"format_version", model.format_version},
      {"params", config_json(model.params)},
      {"session_count", model.session_count},
      {"page_weights", std::move(weights)},
      {"rules", std::move(rules)},
      {"clusters", std::move(clusters)},
      {"sitemap", sitemap_json(model.sitemap)},
      {"tfidf", {{"doc_count", model.tfidf.doc_count()},
                 {"docs", std::move(docs)},
                 {"idf", model.tfidf.idf_table()}}},
  };
  return out.dump(1);
}

ModelBundle deserialize_model(std::string_view json_text) {
  json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw DataError("model: not a JSON object");
  int version = get_or_throw<int>(j, "format_version");
  if (version != kModelFormatVersion) {
    throw DataError("model: format_version " + std::to_string(version) + " is not supported (expected " +
                    std::to_string(kModelFormatVersion) + ")");
  }

  ModelBundle model;
  model.format_version = version;
  try {
    model.params = config_from(j.at("params"), Config{});
  } catch (const ConfigError& e) {
    throw DataError(std::string("model: params: ") + e.what());
  } catch (const json::exception& e) {
    throw DataError(std::string("model: params: ") + e.what());
  }
  model.session_count = get_or_throw<std::size_t>(j, "session_count");

  try {
    std::map<Page, PageScore> scores;
    for (const auto& [page, s] : j.at("page_weights").items()) {
      scores[page] = PageScore{s.at("duration").get<double>(), s.at("frequency").get<double>(),
                               s.at("weight").get<double>()};
    }
    model.page_weights = PageWeightTable(std::move(scores));

    for (const auto& r : j.at("rules")) {
      WeightedRule rule;
      rule.body = r.at("body").get<PageSet>();
      rule.head = r.at("head").get<Page>();
      rule.wsupport = r.at("wsupport").get<double>();
      rule.wconf = r.at("wconf").get<double>();
      if (rule.body.empty() || rule.body.contains(rule.head)) {
        throw DataError("model: rule with empty body or head inside body");
      }
      model.rules.rules.push_back(std::move(rule));
    }

    for (const auto& c : j.at("clusters")) model.clustering.clusters.push_back(c.get<PageSet>());
    model.clustering.reindex();

    model.sitemap = parse_sitemap_json(j.at("sitemap").dump());

    DocumentCorpus corpus;
    for (const auto& [page, counts] : j.at("tfidf").at("docs").items()) {
      corpus.docs[page] = counts.get<TermCounts>();
    }
    model.tfidf = build_index(corpus);
  } catch (const json::exception& e) {
    throw DataError(std::string("model: ") + e.what());
  }
  return model;
}

void save_model(const ModelBundle& model, const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path);
  out << serialize_model(model) << '\n';
  if (!out) throw IoError("write failed: " + path);
}

ModelBundle load_model(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open model " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return deserialize_model(ss.str());
}

}  // namespace warmrec
