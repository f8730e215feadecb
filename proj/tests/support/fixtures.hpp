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

// Small builders shared by the test suites.

#pragma once

#include <filesystem>
#include <fstream>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "warmrec/model.hpp"

namespace warmrec::testing {

/// Sessions "s1".."sN", one visit every 10 s with dwell 10 s.
inline SessionLog make_log(const std::vector<std::vector<Page>>& sessions) {
  SessionLog log;
  for (std::size_t i = 0; i < sessions.size(); ++i) {
    Session s;
    s.session_id = "s" + std::to_string(i + 1);
    double t = 0.0;
    for (const auto& p : sessions[i]) {
      s.visits.push_back({p, t, 10.0});
      t += 10.0;
      log.page_universe.insert(p);
    }
    log.sessions.push_back(std::move(s));
  }
  return log;
}

/// A weight table holding the given weights (duration = frequency = weight).
inline PageWeightTable weights_of(const std::map<Page, double>& weights) {
  std::map<Page, PageScore> scores;
  for (const auto& [p, w] : weights) scores[p] = {w, w, w};
  return PageWeightTable(std::move(scores));
}

inline PageWeightTable unit_weights(const PageSet& pages) {
  std::map<Page, double> w;
  for (const auto& p : pages) w[p] = 1.0;
  return weights_of(w);
}

/// Random log over pages "a".."h" (first `pages` letters).
inline SessionLog random_log(std::mt19937_64& rng, std::size_t pages, std::size_t sessions) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::vector<std::vector<Page>> raw;
  for (std::size_t s = 0; s < sessions; ++s) {
    std::vector<Page> visit;
    const double density = 0.2 + 0.6 * u(rng);
    for (std::size_t p = 0; p < pages; ++p) {
      if (u(rng) < density) visit.push_back(std::string(1, static_cast<char>('a' + p)));
    }
    if (visit.empty()) visit.push_back(std::string(1, static_cast<char>('a' + rng() % pages)));
    raw.push_back(std::move(visit));
  }
  return make_log(raw);
}

class TempDir {
 public:
  TempDir() {
    static std::mt19937_64 rng{std::random_device{}()};
    path_ = std::filesystem::temp_directory_path() / ("warmrec-test-" + std::to_string(rng()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  std::string file(const std::string& name) const { return (path_ / name).string(); }
  std::string write(const std::string& name, const std::string& content) const {
    std::ofstream(path_ / name, std::ios::binary) << content;
    return file(name);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

}  // namespace warmrec::testing
