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

#include "warmrec/synthgen.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>

#include "json.hpp"

namespace warmrec {

namespace {

using json = nlohmann::json;

// mt19937_64 output is fixed by the standard; the distributions below are
// hand-rolled so that streams are identical across standard libraries.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }
  std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }

  template <typename T>
  void shuffle(std::vector<T>& v) {
    for (std::size_t i = v.size(); i > 1; --i) std::swap(v[i - 1], v[below(i)]);
  }

 private:
  std::mt19937_64 engine_;
};

std::string padded(std::size_t value, int width) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%0*zu", width, value);
  return buf;
}

const std::vector<std::string>& filler_words() {
  static const std::vector<std::string> kWords = {"page", "site", "home", "news", "info",
                                                  "contact", "welcome", "menu", "link", "more"};
  return kWords;
}

void write_text(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
}

}  // namespace

void SynthSpec::validate() const {
  PageSet seen;
  for (const auto& g : cluster_blueprint) {
    if (g.empty()) throw ConfigError("synth: empty group");
    for (const auto& p : g) {
      if (p.empty()) throw ConfigError("synth: empty page name");
      if (!seen.insert(p).second) throw ConfigError("synth: page " + p + " in two groups");
    }
  }
  if (cluster_blueprint.empty() && session_count > 0) {
    throw ConfigError("synth: at least one group is required");
  }
  for (const auto& r : rule_blueprint) {
    if (r.body.empty()) throw ConfigError("synth: rule with empty body");
    if (r.body.contains(r.head)) throw ConfigError("synth: rule head " + r.head + " inside its own body");
    if (!(r.probability >= 0.0 && r.probability <= 1.0)) {
      throw ConfigError("synth: rule probability must be in [0, 1]");
    }
  }
  for (const auto& [page, group] : cold_pages) {
    if (group >= cluster_blueprint.size()) throw ConfigError("synth: cold page " + page + " refers to a missing group");
    if (seen.contains(page)) throw ConfigError("synth: cold page " + page + " is also a group page");
  }
  auto unit = [](double x) { return x >= 0.0 && x <= 1.0; };
  if (!unit(noise) || !unit(visit_probability) || !unit(link_probability)) {
    throw ConfigError("synth: probabilities must be in [0, 1]");
  }
}

std::vector<std::vector<Page>> make_groups(std::size_t group_count, std::size_t group_size) {
  std::vector<std::vector<Page>> groups(group_count);
  for (std::size_t g = 0; g < group_count; ++g) {
    for (std::size_t j = 0; j < group_size; ++j) {
      groups[g].push_back("/g" + std::to_string(g) + "/p" + std::to_string(j));
    }
  }
  return groups;
}

SynthOutput generate(const SynthSpec& spec) {
  spec.validate();
  Rng rng(spec.rng_seed);
  SynthOutput out;
  auto& truth = out.truth;
  truth.rules = spec.rule_blueprint;

  // Page universe: groups, rule pages, cold pages, then background pages.
  PageSet named;
  for (const auto& g : spec.cluster_blueprint) named.insert(g.begin(), g.end());
  for (const auto& r : spec.rule_blueprint) {
    named.insert(r.body.begin(), r.body.end());
    named.insert(r.head);
  }
  std::vector<Page> background;
  for (std::size_t i = 0; named.size() + background.size() + spec.cold_pages.size() < spec.page_count;
       ++i) {
    Page p = "/bg" + padded(i, 3);
    if (!named.contains(p)) background.push_back(p);
  }
  std::vector<Page> visitable(named.begin(), named.end());
  visitable.insert(visitable.end(), background.begin(), background.end());

  for (const auto& p : visitable) out.site.add_page(p, 1000 + static_cast<std::int64_t>(rng.below(4000)));
  for (const auto& [p, _] : spec.cold_pages) {
    out.site.add_page(p, 1000 + static_cast<std::int64_t>(rng.below(4000)));
  }

  // Links: dense inside groups (cold pages included), sparse elsewhere.
  std::vector<std::vector<Page>> linked_groups = spec.cluster_blueprint;
  for (const auto& [p, g] : spec.cold_pages) linked_groups[g].push_back(p);
  for (const auto& g : linked_groups) {
    for (const auto& from : g) {
      for (const auto& to : g) {
        if (from != to && rng.bernoulli(spec.link_probability)) out.site.add_link(from, to);
      }
    }
  }
  for (const auto& from : background) {
    const auto& to = visitable[rng.below(visitable.size())];
    out.site.add_link(from, to);
  }

  // Text: topic terms per group, filler, one unique token per page.
  truth.topic_terms.resize(spec.cluster_blueprint.size());
  for (std::size_t g = 0; g < spec.cluster_blueprint.size(); ++g) {
    for (std::size_t k = 0; k < spec.topic_terms_per_group; ++k) {
      truth.topic_terms[g].push_back("topic" + std::to_string(g) + "term" + std::to_string(k));
    }
    truth.clusters.emplace_back(spec.cluster_blueprint[g].begin(), spec.cluster_blueprint[g].end());
  }
  auto page_text = [&](const Page& page, const std::vector<std::string>* topic) {
    std::string text;
    std::size_t fillers = 2 + rng.below(4);
    for (std::size_t i = 0; i < fillers; ++i) {
      text += filler_words()[rng.below(filler_words().size())] + " ";
    }
    if (topic) {
      for (const auto& term : *topic) {
        std::size_t reps = 1 + rng.below(3);
        for (std::size_t r = 0; r < reps; ++r) text += term + " ";
      }
    }
    if (auto it = spec.text_blueprint.find(page); it != spec.text_blueprint.end()) {
      for (const auto& term : it->second) text += term + " ";
    }
    std::string unique;
    for (char c : page) {
      if (std::isalnum(static_cast<unsigned char>(c))) unique.push_back(c);
    }
    text += "uid" + unique;
    return text;
  };
  std::map<Page, std::size_t> group_of;
  for (std::size_t g = 0; g < spec.cluster_blueprint.size(); ++g) {
    for (const auto& p : spec.cluster_blueprint[g]) group_of[p] = g;
  }
  for (const auto& p : visitable) {
    auto it = group_of.find(p);
    out.texts[p] = page_text(p, it == group_of.end() ? nullptr : &truth.topic_terms[it->second]);
  }
  for (const auto& [p, g] : spec.cold_pages) out.texts[p] = page_text(p, &truth.topic_terms[g]);

  // Per-page mean dwell, so that weights differ between pages.
  std::map<Page, double> base_dwell;
  for (const auto& p : visitable) base_dwell[p] = 20.0 + static_cast<double>(rng.below(100));

  double clock = 0.0;
  for (std::size_t i = 0; i < spec.session_count; ++i) {
    std::size_t g = rng.below(spec.cluster_blueprint.size());
    const auto& group = spec.cluster_blueprint[g];
    std::vector<Page> pages;
    for (const auto& p : group) {
      if (rng.bernoulli(spec.visit_probability)) pages.push_back(p);
    }
    std::size_t want = std::min(spec.min_session_length, group.size());
    while (pages.size() < want) {
      const auto& p = group[rng.below(group.size())];
      if (std::find(pages.begin(), pages.end(), p) == pages.end()) pages.push_back(p);
    }

    for (const auto& r : spec.rule_blueprint) {
      PageSet have(pages.begin(), pages.end());
      bool body_present = std::includes(have.begin(), have.end(), r.body.begin(), r.body.end());
      if (body_present && !have.contains(r.head) && rng.bernoulli(r.probability)) {
        pages.push_back(r.head);
      }
    }

    if (spec.noise > 0.0) {
      std::vector<Page> kept;
      for (const auto& p : pages) {
        if (!rng.bernoulli(spec.noise)) kept.push_back(p);
      }
      if (kept.empty()) kept.push_back(pages.front());
      pages = std::move(kept);
      if (rng.bernoulli(spec.noise)) {
        const auto& extra = visitable[rng.below(visitable.size())];
        if (std::find(pages.begin(), pages.end(), extra) == pages.end()) pages.push_back(extra);
      }
    }
    rng.shuffle(pages);

    Session s;
    s.session_id = "s" + padded(i + 1, 5);
    for (const auto& p : pages) {
      double dwell = base_dwell[p] * (0.5 + rng.uniform());
      s.visits.push_back({p, clock, dwell});
      clock += dwell;
    }
    clock += 4000.0;  // session gap beyond the default timeout
    for (const auto& v : s.visits) out.log.page_universe.insert(v.page);
    truth.relevance[s.session_id] = PageSet(group.begin(), group.end());
    out.log.sessions.push_back(std::move(s));
  }
  return out;
}

SynthSpec parse_synth_spec(std::string_view json_text) {
  json j = json::parse(json_text, nullptr, false);
  if (j.is_discarded() || !j.is_object()) throw ConfigError("synth spec: not a JSON object");
  SynthSpec spec;
  try {
    if (j.contains("groups")) {
      spec.cluster_blueprint = j.at("groups").get<std::vector<std::vector<Page>>>();
    } else {
      spec.cluster_blueprint =
          make_groups(j.value("group_count", std::size_t{3}), j.value("group_size", std::size_t{5}));
    }
    for (const auto& r : j.value("rules", json::array())) {
      spec.rule_blueprint.push_back({r.at("body").get<PageSet>(), r.at("head").get<Page>(),
                                     r.value("probability", 1.0)});
    }
    if (j.contains("text")) {
      spec.text_blueprint = j.at("text").get<std::map<Page, std::vector<std::string>>>();
    }
    if (j.contains("cold_pages")) {
      spec.cold_pages = j.at("cold_pages").get<std::map<Page, std::size_t>>();
    }
    spec.page_count = j.value("page_count", spec.page_count);
    spec.session_count = j.value("session_count", spec.session_count);
    spec.noise = j.value("noise", spec.noise);
    spec.visit_probability = j.value("visit_probability", spec.visit_probability);
    spec.min_session_length = j.value("min_session_length", spec.min_session_length);
    spec.link_probability = j.value("link_probability", spec.link_probability);
    spec.topic_terms_per_group = j.value("topic_terms_per_group", spec.topic_terms_per_group);
    spec.rng_seed = j.value("rng_seed", spec.rng_seed);
  } catch (const json::exception& e) {
    throw ConfigError(std::string("synth spec: ") + e.what());
  }
  spec.validate();
  return spec;
}

std::string ground_truth_to_json(const GroundTruth& truth) {
  json rules = json::array();
  for (const auto& r : truth.rules) {
    rules.push_back({{"body", r.body}, {"head", r.head}, {"probability", r.probability}});
  }
  return json{{"rules", std::move(rules)},
              {"clusters", truth.clusters},
              {"relevance", truth.relevance},
              {"topic_terms", truth.topic_terms}}
      .dump(2);
}

std::string texts_to_json(const std::map<Page, std::string>& texts) {
  return json(texts).dump(2);
}

void write_synth_output(const SynthOutput& out, const std::string& dir) {
  namespace fs = std::filesystem;
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec) throw IoError("cannot create " + dir);
  {
    std::ofstream log(fs::path(dir) / "log.csv", std::ios::binary | std::ios::trunc);
    if (!log) throw IoError("cannot write log.csv in " + dir);
    write_session_csv(log, out.log);
  }
  write_text(fs::path(dir) / "sitemap.json", sitemap_to_json(out.site) + "\n");
  write_text(fs::path(dir) / "docs.json", texts_to_json(out.texts) + "\n");
  write_text(fs::path(dir) / "ground_truth.json", ground_truth_to_json(out.truth) + "\n");
}

}  // namespace warmrec
